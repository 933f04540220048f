//! Finite truncations of simplicial sets, simplicial groups and
//! bisimplicial sets: nerves, the codiagonal `∇`, classifying spaces
//! `W̄ = ∇B`, Moore homotopy groups, and the fibration attached to an
//! abelian extension of simplicial groups.
//!
//! Homotopy or homology in degree `k` is only reported when level `k + 1`
//! is present.

mod bisimplicial;
mod compare;
mod fibration;
mod group;
pub mod samples;
mod set;

pub use bisimplicial::{
    bisimplicial_from_faces, codiagonal_map, external_product, BisimplicialMap, Cell, Codiagonal, TruncatedBisimplicialSet,
};
pub use compare::{diag_vs_codiag, DiagonalComparison};
pub use fibration::{fibration_data, FibrationData, FibrationReport, PullbackLevel, SimplicialExtension};
pub use group::{
    dold_kan, moore_homotopy, moore_orders, nerve, nerve_within, pi0, wbar, wbar_group, ClassifyingSpace, FiniteChainComplex,
    Pi0, SimplicialGroupHom, SimplicialProduct, TruncatedSimplicialGroup,
};
pub use set::{
    mapping_cone_homology, HomologyGroup, NormalizedChains, SimplicialMap, SimplicialSetData, TruncatedSimplicialSet, LEVEL_LIMIT,
};

/// Default truncation level.
pub const DEFAULT_TRUNCATION: usize = 4;
