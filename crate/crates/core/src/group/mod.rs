//! Finite groups given by multiplication tables, their subgroups,
//! homomorphisms and modules.

mod abelian;
pub mod catalog;
mod construct;
mod finite;
mod hom;
mod module;
mod subgroup;

pub use abelian::AbelianDecomposition;
pub use construct::{direct_product, quotient, semidirect_product, Quotient, SemidirectProduct};
pub use finite::{FiniteGroup, GroupRef};
pub use hom::{are_isomorphic, enumerate_homs, enumerate_homs_with, homs_mod_conjugacy, GroupHom, HomClass};
pub(crate) use hom::same_group;
pub use module::GModule;
pub use subgroup::{commutator_subgroup, lower_central_series, Subgroup};
