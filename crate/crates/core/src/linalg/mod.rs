//! Exact linear algebra over ℤ/N and ℤ.

pub mod integer;
pub mod modular;
pub mod subquotient;

pub use modular::{gcd, lcm, Howell, SpanSolver};
pub use subquotient::{enumerate_mixed_radix, generated_order, Subquotient};
