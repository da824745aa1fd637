//! Relations among solutions: evaluating invariants modulo `I`, building the
//! generators `P_i - f_i`, verifying the radical equality, and producing
//! explicit certificates for powers of elements of `I`.

pub mod certificate;
pub mod context;
pub mod theorem;

pub use certificate::{constructive_certificate, Certificate, CertificateTerm};
pub use context::PVContext;
pub use theorem::{
    corollary_generators, evaluate_invariant, invariant_membership_exact, verify_theorem, GeneratorVerdict,
    TheoremReport,
};

#[cfg(test)]
pub(crate) mod fixtures {
    use crate::algebra::{ConstField, OperatorKind, RatFunc};
    use crate::invariants::GroupSpec;
    use crate::linalg::Matrix;
    use crate::poly::MultiPoly;
    use crate::pv::{GroupElement, IdealPresentation, LinearSystem};

    use super::PVContext;

    /// `y' = y / (2x)`, `I = <X^2 - x>`, `G = {1, -1}`.
    pub fn kummer() -> PVContext {
        let f = ConstField::rationals();
        let x = RatFunc::x(&f);
        let a = (&RatFunc::from_int(&f, 2) * &x).inv().unwrap();
        let sys = LinearSystem::new(OperatorKind::Derivation, Matrix::from_rows(vec![vec![a]])).unwrap();
        let s = sys.space();
        let xx = MultiPoly::x(s, &f, 1, 1);
        let ideal = IdealPresentation::from_polys(s, &f, vec![&xx.pow(2) - &MultiPoly::constant(s, x)]);
        let g = GroupSpec::finite(vec![GroupElement::identity(1, &f), GroupElement::scalar(1, f.from_int(-1))]).unwrap();
        PVContext::new(sys, ideal, g).unwrap()
    }

    /// `Y' = diag(i, -i) Y` over `Q(i)`, `I = <X12, X21, X11 X22 - 1>`, the
    /// torus `diag(t, 1/t)`.
    pub fn torus() -> PVContext {
        let f = ConstField::gaussian();
        let th = RatFunc::from_const(f.theta());
        let z = RatFunc::zero(&f);
        let a = Matrix::from_rows(vec![vec![th.clone(), z.clone()], vec![z, -&th]]);
        let sys = LinearSystem::new(OperatorKind::Derivation, a).unwrap();
        let s = sys.space();
        let v = |i, j| MultiPoly::x(s, &f, i, j);
        let one = MultiPoly::one(s, &f);
        let ideal = IdealPresentation::from_polys(s, &f, vec![v(1, 2), v(2, 1), &(&v(1, 1) * &v(2, 2)) - &one]);
        let g = GroupSpec::torus(&f, vec![vec![1, -1]]).unwrap();
        PVContext::new(sys, ideal, g).unwrap()
    }

    /// `y(x+1) = -y(x)`, `I = <X^2 - 1>`, `G = {1, -1}`.
    pub fn difference() -> PVContext {
        let f = ConstField::rationals();
        let a = Matrix::from_rows(vec![vec![RatFunc::from_int(&f, -1)]]);
        let sys = LinearSystem::new(OperatorKind::Shift, a).unwrap();
        let s = sys.space();
        let xx = MultiPoly::x(s, &f, 1, 1);
        let ideal = IdealPresentation::from_polys(s, &f, vec![&xx.pow(2) - &MultiPoly::one(s, &f)]);
        let g = GroupSpec::finite(vec![GroupElement::identity(1, &f), GroupElement::scalar(1, f.from_int(-1))]).unwrap();
        PVContext::new(sys, ideal, g).unwrap()
    }
}
