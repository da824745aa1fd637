//! Sparse multivariate polynomials over `K` in the matrix variables `X[i][j]`
//! and auxiliary variables, with a Gröbner-basis engine.

pub mod det;
pub mod groebner;
pub mod ideal;
pub mod monomial;
pub mod multipoly;

pub use det::{det, wronskian};
pub use groebner::{buchberger, divide_exact, GroebnerBasis, MonomialOrder};
pub use ideal::{ideal_membership, normal_form, radical_membership, saturate_by};
pub use monomial::{monomials_of_degree, Monomial, VarId, VarSpace};
pub use multipoly::{poly_arith, substitute_linear, MultiPoly, PolyOp};
