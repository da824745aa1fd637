use crate::algebra::{apply_v, ConstField, OperatorKind, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{wronskian, MultiPoly, VarId, VarSpace};

use super::localized::LocalizedPoly;

const SELF_CHECK_MAX_N: usize = 4;

/// The system `v(y) = A y` over `K`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearSystem {
    kind: OperatorKind,
    a: Matrix<RatFunc>,
    /// `tr(A)` for a derivation, `det(A)` for the shift: `v(W) = w_factor * W`.
    w_factor: RatFunc,
}

impl LinearSystem {
    /// Validates shape and, for the shift, invertibility of `A`.
    pub fn new(kind: OperatorKind, a: Matrix<RatFunc>) -> Result<Self> {
        if !a.is_square() {
            return Err(Error::DimensionMismatch {
                expected: a.nrows(),
                found: a.ncols(),
            });
        }
        let w_factor = match kind {
            OperatorKind::Derivation => a.trace(),
            OperatorKind::Shift => a.det(),
        };
        if kind == OperatorKind::Shift && w_factor.is_zero() {
            return Err(Error::Singular);
        }
        let sys = LinearSystem { kind, a, w_factor };
        // W has n! terms; the self-check stays cheap only for small n
        if sys.n() <= SELF_CHECK_MAX_N {
            let w = wronskian(sys.space(), sys.field());
            assert_eq!(poly_apply_v(&w, &sys), w.scale(&sys.w_factor), "v(W) must equal {} * W", sys.w_factor);
        }
        Ok(sys)
    }

    pub fn n(&self) -> usize {
        self.a.nrows()
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn matrix(&self) -> &Matrix<RatFunc> {
        &self.a
    }

    pub fn field(&self) -> &ConstField {
        self.a.any_entry().field()
    }

    pub fn space(&self) -> VarSpace {
        VarSpace::new(self.n())
    }

    /// The scalar `c` with `v(W) = c * W`.
    pub fn wronskian_factor(&self) -> &RatFunc {
        &self.w_factor
    }

    /// `(A X)[i][j] = sum_k a[i][k] X[k][j]`.
    pub fn ax_entry(&self, space: VarSpace, i: usize, j: usize) -> MultiPoly {
        let field = self.field();
        let mut out = MultiPoly::zero(space, field);
        for k in 1..=self.n() {
            let a = self.a.get(i - 1, k - 1);
            if !a.is_zero() {
                out = &out + &MultiPoly::x(space, field, k, j).scale(a);
            }
        }
        out
    }
}

/// `v` on a polynomial in the matrix variables (auxiliary variables are
/// treated as constants).
pub fn poly_apply_v(p: &MultiPoly, sys: &LinearSystem) -> MultiPoly {
    let space = p.space();
    assert_eq!(space.n, sys.n(), "polynomial and system have different dimensions");
    let kind = sys.kind();
    let coeffwise = p.map_coeffs(|c| apply_v(c, kind));
    match kind {
        OperatorKind::Derivation => {
            let mut out = coeffwise;
            for i in 1..=sys.n() {
                for j in 1..=sys.n() {
                    let idx = space.index(VarId::Matrix { i, j }).unwrap();
                    let d = p.partial_derivative(idx);
                    if !d.is_zero() {
                        out = &out + &(&d * &sys.ax_entry(space, i, j));
                    }
                }
            }
            out
        }
        OperatorKind::Shift => {
            let images = (1..=sys.n())
                .flat_map(|i| (1..=sys.n()).map(move |j| (i, j)))
                .map(|(i, j)| (VarId::Matrix { i, j }, sys.ax_entry(space, i, j)))
                .collect();
            coeffwise.substitute(&images)
        }
    }
}

/// `v` on `K[X, 1/W]`. For `P = N / W^k`, a derivation gives
/// `(v(N) - k tr(A) N) / W^k` and the shift gives `v(N) / (det(A)^k W^k)`.
pub fn pv_apply_v(p: &LocalizedPoly, sys: &LinearSystem) -> Result<LocalizedPoly> {
    if p.n() != sys.n() {
        return Err(Error::DimensionMismatch {
            expected: sys.n(),
            found: p.n(),
        });
    }
    let k = p.wexp();
    let vn = poly_apply_v(p.numerator(), sys);
    let num = match sys.kind() {
        OperatorKind::Derivation => {
            if k == 0 {
                vn
            } else {
                let c = sys.wronskian_factor().scale(&sys.field().from_int(k as i64));
                &vn - &p.numerator().scale(&c)
            }
        }
        OperatorKind::Shift => vn.scale(&sys.wronskian_factor().pow(-(k as i64))?),
    };
    Ok(LocalizedPoly::new(num, k))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn one_by_one(kind: OperatorKind, a: RatFunc) -> LinearSystem {
        LinearSystem::new(kind, Matrix::from_rows(vec![vec![a]])).unwrap()
    }

    #[test]
    fn derivation_examples() {
        let f = ConstField::rationals();
        let x = RatFunc::x(&f);
        let a = (&RatFunc::from_int(&f, 2) * &x).inv().unwrap();
        let sys = one_by_one(OperatorKind::Derivation, a);
        let s = sys.space();
        let xx = MultiPoly::x(s, &f, 1, 1);
        let p = LocalizedPoly::from_poly(&xx * &xx);
        let vp = pv_apply_v(&p, &sys).unwrap();
        assert_eq!(vp.numerator(), &(&xx * &xx).scale(&x.inv().unwrap()));

        let q = LocalizedPoly::from_poly(xx.scale(&x));
        let three_halves = RatFunc::from_const(f.from_rational(crate::algebra::rational(3, 2)));
        assert_eq!(pv_apply_v(&q, &sys).unwrap().numerator(), &xx.scale(&three_halves));
    }

    #[test]
    fn shift_example() {
        let f = ConstField::rationals();
        let sys = one_by_one(OperatorKind::Shift, RatFunc::from_int(&f, -1));
        let xx = MultiPoly::x(sys.space(), &f, 1, 1);
        let p = LocalizedPoly::from_poly(&xx * &xx);
        assert_eq!(pv_apply_v(&p, &sys).unwrap(), p);
    }

    #[test]
    fn derivation_through_inverse_wronskian() {
        // v(1/W) = -tr(A)/W
        let f = ConstField::rationals();
        let x = RatFunc::x(&f);
        let sys = one_by_one(OperatorKind::Derivation, x.clone());
        let p = LocalizedPoly::new(MultiPoly::one(sys.space(), &f), 1);
        let vp = pv_apply_v(&p, &sys).unwrap();
        assert_eq!(vp, LocalizedPoly::new(MultiPoly::constant(sys.space(), -x), 1));
    }

    #[test]
    fn wronskian_factor_matches_v_of_w() {
        let f = ConstField::rationals();
        let x = RatFunc::x(&f);
        let a = Matrix::from_rows(vec![
            vec![x.clone(), RatFunc::from_int(&f, 2)],
            vec![RatFunc::one(&f), &x + &RatFunc::from_int(&f, 3)],
        ]);
        for kind in [OperatorKind::Derivation, OperatorKind::Shift] {
            let sys = LinearSystem::new(kind, a.clone()).unwrap();
            let w = wronskian(sys.space(), &f);
            assert_eq!(poly_apply_v(&w, &sys), w.scale(sys.wronskian_factor()));
        }
    }

    #[test]
    fn singular_shift_rejected() {
        let f = ConstField::rationals();
        let r = LinearSystem::new(OperatorKind::Shift, Matrix::from_rows(vec![vec![RatFunc::zero(&f)]]));
        assert_eq!(r, Err(Error::Singular));
    }

    #[test]
    fn dimension_mismatch() {
        let f = ConstField::rationals();
        let sys = one_by_one(OperatorKind::Derivation, RatFunc::one(&f));
        let p = LocalizedPoly::from_poly(MultiPoly::x(VarSpace::new(2), &f, 1, 1));
        assert!(matches!(pv_apply_v(&p, &sys), Err(Error::DimensionMismatch { .. })));
    }
}
