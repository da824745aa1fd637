//! Algebraic relations among solutions of linear differential and difference
//! systems over `C(x)`.
//!
//! The crate represents the Picard-Vessiot ring `K[X, 1/W]` of a system
//! `v(y) = A y`, its group actions, and the invariant-theoretic machinery that
//! recovers the relation ideal from the invariants it contains.

pub mod algebra;
pub mod cli;
pub mod error;
pub mod invariants;
pub mod linalg;
pub mod poly;
pub mod pv;
pub mod relations;
pub mod tensor;

pub use error::{Error, Result};
