//! Group cohomology with finite coefficients, extensions and lifts.

mod bar;
mod complex;
mod extension;
mod group_cohomology;

pub(crate) use bar::{check_degree, differential_columns};
pub use bar::{bar_complex, cell_count, cell_index, cell_tuple, coboundary, is_cocycle, normalize_full_table, BarComplex, Cochain};
pub use complex::{CohomologyData, DegreeProblem, SparseColumn};
pub use extension::{extension_class, extension_from_cocycle, split_extension, torsor_action, Extension};
pub use group_cohomology::{cohomology, pullback_class, pullback_cochain, CohomologyGroup};
