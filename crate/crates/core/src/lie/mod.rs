//! Free-Lie dimension counts on weighted generators, and the weight
//! bookkeeping for cohomology of `SL₂(ℤ)` with coefficients in `V_m`.

mod graded;
mod hall;
mod modular;

pub use graded::{colie_weights, generating_function_holds, magnus_graded, GradedSpace};
pub use hall::{hall_basis, witt_rank, Bracket, HallElement, HallSet};
pub use modular::{dim_cusp_forms, dim_eisenstein, dim_modular_forms, ls_weight_report, modular_h1, LsWeightReport};
