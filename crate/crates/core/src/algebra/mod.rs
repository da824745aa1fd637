//! Exact arithmetic for the constants field `C`, univariate polynomials over `C`,
//! and the coefficient field `K = C(x)` together with the operator `v`.

pub mod constants;
pub mod ratfunc;
pub mod unipoly;

pub use constants::{rational, ConstElem, ConstField};
pub use ratfunc::{apply_v, is_constant, OperatorKind, RatFunc};
pub use unipoly::UniPoly;
