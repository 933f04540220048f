//! Lifting obstructions for homomorphisms of finite groups.
//!
//! The crate computes group cohomology of finite groups with finite
//! coefficients, obstruction classes for lifting homomorphisms through
//! abelian extensions, lower-central-series towers with their first-page
//! tables, toy local-global systems with compactly supported cohomology,
//! graded free-Lie dimension counts, and finite simplicial models of
//! classifying spaces.

pub mod arith;
pub mod budget;
pub mod cohomology;
pub mod corpus;
pub mod error;
pub mod group;
pub mod lie;
pub mod linalg;
pub mod simplicial;
pub mod tower;

pub use budget::Budget;
pub use error::{Error, Result};
