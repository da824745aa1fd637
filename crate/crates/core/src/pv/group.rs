use std::collections::BTreeMap;
use std::fmt;

use crate::algebra::{ConstElem, ConstField, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{MultiPoly, VarId, VarSpace};

use super::localized::LocalizedPoly;

/// An element of `GL_n(C)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupElement(Matrix<ConstElem>);

impl GroupElement {
    pub fn new(g: Matrix<ConstElem>) -> Result<Self> {
        if !g.is_square() {
            return Err(Error::DimensionMismatch {
                expected: g.nrows(),
                found: g.ncols(),
            });
        }
        if g.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(GroupElement(g))
    }

    pub fn from_ints(field: &ConstField, rows: &[&[i64]]) -> Result<Self> {
        Self::new(Matrix::from_rows(
            rows.iter().map(|r| r.iter().map(|&v| field.from_int(v)).collect()).collect(),
        ))
    }

    pub fn identity(n: usize, field: &ConstField) -> Self {
        GroupElement(Matrix::identity(n, &field.one()))
    }

    pub fn scalar(n: usize, c: ConstElem) -> Self {
        GroupElement(Matrix::diagonal(&vec![c; n]))
    }

    pub fn diagonal(entries: &[ConstElem]) -> Self {
        GroupElement(Matrix::diagonal(entries))
    }

    pub fn n(&self) -> usize {
        self.0.nrows()
    }

    pub fn field(&self) -> &ConstField {
        self.0.any_entry().field()
    }

    pub fn matrix(&self) -> &Matrix<ConstElem> {
        &self.0
    }

    pub fn entry(&self, i: usize, j: usize) -> &ConstElem {
        self.0.get(i, j)
    }

    pub fn det(&self) -> ConstElem {
        self.0.det()
    }

    pub fn mul(&self, o: &GroupElement) -> GroupElement {
        GroupElement(self.0.mul(&o.0))
    }

    pub fn inverse(&self) -> GroupElement {
        GroupElement(self.0.inverse().expect("group elements are invertible"))
    }

    pub fn is_identity(&self) -> bool {
        self.0 == Matrix::identity(self.n(), &self.field().one())
    }
}

impl fmt::Display for GroupElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self
            .0
            .rows()
            .iter()
            .map(|r| r.iter().map(ToString::to_string).collect::<Vec<_>>().join(", "))
            .collect();
        write!(f, "{}", rows.join("; "))
    }
}

/// Linear substitution `X[i][j] -> sum c X[k][l]` over all matrix variables.
fn substitution(
    space: VarSpace,
    field: &ConstField,
    image: impl Fn(usize, usize) -> Vec<(usize, usize, ConstElem)>,
) -> BTreeMap<VarId, MultiPoly> {
    let n = space.n;
    let mut out = BTreeMap::new();
    for i in 1..=n {
        for j in 1..=n {
            let mut p = MultiPoly::zero(space, field);
            for (k, l, c) in image(i, j) {
                if !c.is_zero() {
                    p = &p + &MultiPoly::x(space, field, k, l).scale(&RatFunc::from_const(c));
                }
            }
            out.insert(VarId::Matrix { i, j }, p);
        }
    }
    out
}

/// `P^g`: `X[i][j] -> sum_k X[i][k] g[k][j]`.
pub fn right_action_poly(p: &MultiPoly, g: &GroupElement) -> MultiPoly {
    let space = p.space();
    assert_eq!(space.n, g.n(), "group element and polynomial have different dimensions");
    let images = substitution(space, p.field(), |i, j| {
        (1..=space.n).map(|k| (i, k, g.entry(k - 1, j - 1).clone())).collect()
    });
    p.substitute(&images)
}

/// `^g P`: `X[i][j] -> sum_k g[k][i] X[k][j]`.
pub fn left_action_poly(g: &GroupElement, p: &MultiPoly) -> MultiPoly {
    let space = p.space();
    assert_eq!(space.n, g.n(), "group element and polynomial have different dimensions");
    let images = substitution(space, p.field(), |i, j| {
        (1..=space.n).map(|k| (k, j, g.entry(k - 1, i - 1).clone())).collect()
    });
    p.substitute(&images)
}

fn det_correction(p: &LocalizedPoly, g: &GroupElement) -> RatFunc {
    let d = g.det().pow(-(p.wexp() as i64)).expect("det(g) is nonzero");
    RatFunc::from_const(d)
}

/// `P^g` on `K[X, 1/W]`, using `W^g = det(g) W`.
pub fn right_action(p: &LocalizedPoly, g: &GroupElement) -> LocalizedPoly {
    let num = right_action_poly(p.numerator(), g).scale(&det_correction(p, g));
    LocalizedPoly::new(num, p.wexp())
}

/// `^g P` on `K[X, 1/W]`, using `^g W = det(g) W`.
pub fn left_action(g: &GroupElement, p: &LocalizedPoly) -> LocalizedPoly {
    let num = left_action_poly(g, p.numerator()).scale(&det_correction(p, g));
    LocalizedPoly::new(num, p.wexp())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::wronskian;

    #[test]
    fn torus_scales_first_column() {
        let f = ConstField::rationals();
        let s = VarSpace::new(2);
        let g = GroupElement::diagonal(&[f.from_int(2), f.from_rational(crate::algebra::rational(1, 2))]);
        let x11 = LocalizedPoly::from_poly(MultiPoly::x(s, &f, 1, 1));
        assert_eq!(right_action(&x11, &g), x11.scale(&RatFunc::from_int(&f, 2)));
    }

    #[test]
    fn wronskian_picks_up_determinant() {
        let f = ConstField::rationals();
        let s = VarSpace::new(2);
        let g = GroupElement::from_ints(&f, &[&[1, 2], &[3, 4]]).unwrap();
        let w = LocalizedPoly::from_poly(wronskian(s, &f));
        let dg = RatFunc::from_const(g.det());
        assert_eq!(right_action(&w, &g), w.scale(&dg));
        assert_eq!(left_action(&g, &w), w.scale(&dg));
        let winv = LocalizedPoly::w_power(s, &f, -1);
        assert_eq!(right_action(&winv, &g), winv.scale(&dg.inv().unwrap()));
    }

    #[test]
    fn composition_laws() {
        let f = ConstField::rationals();
        let s = VarSpace::new(2);
        let g = GroupElement::from_ints(&f, &[&[1, 2], &[0, 1]]).unwrap();
        let h = GroupElement::from_ints(&f, &[&[3, 0], &[1, 1]]).unwrap();
        let p = LocalizedPoly::new(&MultiPoly::x(s, &f, 1, 1) * &MultiPoly::x(s, &f, 2, 1).pow(2), 1);
        // substitution semantics: (P^g)^h = P^(hg), ^g(^h P) = ^(gh) P
        assert_eq!(right_action(&right_action(&p, &g), &h), right_action(&p, &h.mul(&g)));
        assert_eq!(left_action(&g, &left_action(&h, &p)), left_action(&g.mul(&h), &p));
        assert_eq!(left_action(&g, &right_action(&p, &h)), right_action(&left_action(&g, &p), &h));
    }

    #[test]
    fn one_dimensional_left_action() {
        let f = ConstField::rationals();
        let s = VarSpace::new(1);
        let g = GroupElement::scalar(1, f.from_int(5));
        let x = LocalizedPoly::from_poly(MultiPoly::x(s, &f, 1, 1));
        assert_eq!(left_action(&g, &x), x.scale(&RatFunc::from_int(&f, 5)));
    }

    #[test]
    fn singular_rejected() {
        let f = ConstField::rationals();
        assert_eq!(GroupElement::from_ints(&f, &[&[1, 2], &[2, 4]]), Err(Error::Singular));
    }
}
