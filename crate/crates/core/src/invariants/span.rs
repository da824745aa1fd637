use std::collections::BTreeSet;

use crate::algebra::{ConstField, RatFunc};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MultiPoly, VarSpace};
use crate::pv::LocalizedPoly;

/// A finite-dimensional `K`-subspace of `W^-k K[X]` for a fixed `k`, kept in
/// reduced echelon form alongside the inserted basis.
#[derive(Clone, Debug)]
pub struct LocSpan {
    wexp: u32,
    basis: Vec<LocalizedPoly>,
    echelon: Vec<(Monomial, MultiPoly)>,
}

impl LocSpan {
    pub fn new(wexp: u32) -> Self {
        LocSpan {
            wexp,
            basis: Vec::new(),
            echelon: Vec::new(),
        }
    }

    /// Span of the smallest common `W`-exponent of `items`, with `items`
    /// inserted greedily.
    pub fn spanning(items: &[LocalizedPoly]) -> Self {
        let k = items.iter().map(LocalizedPoly::wexp).max().unwrap_or(0);
        let mut s = LocSpan::new(k);
        for p in items {
            s.insert(p);
        }
        s
    }

    pub fn wexp(&self) -> u32 {
        self.wexp
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn basis(&self) -> &[LocalizedPoly] {
        &self.basis
    }

    fn lift(&self, p: &LocalizedPoly) -> MultiPoly {
        p.numerator_over(self.wexp)
    }

    fn reduce_poly(&self, p: MultiPoly) -> MultiPoly {
        let mut r = p;
        for (m, e) in &self.echelon {
            let c = r.coeff(m);
            if !c.is_zero() {
                r = &r - &e.scale(&c);
            }
        }
        r
    }

    /// Panics if `p` has a larger `W`-exponent than the span.
    pub fn contains(&self, p: &LocalizedPoly) -> bool {
        self.reduce_poly(self.lift(p)).is_zero()
    }

    /// Adds `p` if it is independent; returns whether it was added.
    pub fn insert(&mut self, p: &LocalizedPoly) -> bool {
        let r = self.reduce_poly(self.lift(p));
        let Some((m, c)) = r.leading() else {
            return false;
        };
        let m = m.clone();
        let r = r.scale(&c.inv().unwrap());
        for (_, e) in &mut self.echelon {
            let c = e.coeff(&m);
            if !c.is_zero() {
                *e = &*e - &r.scale(&c);
            }
        }
        self.echelon.push((m, r));
        self.basis.push(p.clone());
        true
    }

    /// Coordinates of `p` in the inserted basis, if `p` lies in the span.
    pub fn coordinates(&self, p: &LocalizedPoly) -> Option<Vec<RatFunc>> {
        coordinates(&self.basis, p, self.wexp)
    }
}

/// Coordinates of `p` with respect to the independent list `basis`, all read
/// over `W^-k`.
pub fn coordinates(basis: &[LocalizedPoly], p: &LocalizedPoly, k: u32) -> Option<Vec<RatFunc>> {
    if basis.is_empty() {
        return p.is_zero().then(Vec::new);
    }
    let cols: Vec<MultiPoly> = basis.iter().map(|b| b.numerator_over(k)).collect();
    let target = p.numerator_over(k);
    let monos: Vec<&Monomial> = cols
        .iter()
        .chain(std::iter::once(&target))
        .flat_map(|c| c.terms().keys())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if monos.is_empty() {
        let field = p.field();
        return Some(vec![RatFunc::zero(field); basis.len()]);
    }
    let a = Matrix::from_fn(monos.len(), cols.len(), |r, c| cols[c].coeff(monos[r]));
    let b: Vec<RatFunc> = monos.iter().map(|m| target.coeff(m)).collect();
    a.solve(&b)
}

/// `sum c_i b_i`.
pub fn combine(basis: &[LocalizedPoly], coeffs: &[RatFunc], space: VarSpace, field: &ConstField) -> LocalizedPoly {
    basis
        .iter()
        .zip(coeffs)
        .filter(|(_, c)| !c.is_zero())
        .fold(LocalizedPoly::zero(space, field), |acc, (b, c)| acc.add(&b.scale(c)))
}
