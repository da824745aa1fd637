//! Buchberger's algorithm over `K = C(x)` with normal-strategy pair selection.

use std::cmp::Ordering;

use crate::algebra::{ConstField, RatFunc};

use super::monomial::{Monomial, VarSpace};
use super::multipoly::MultiPoly;

/// Monomial orders used by the engine.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Graded reverse lexicographic, variable 0 largest.
    Grevlex,
    /// Block order: the last `k` variables form a block compared first
    /// (grevlex inside each block), eliminating them.
    EliminateLast(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => a.grevlex_cmp(b),
            MonomialOrder::EliminateLast(k) => {
                let split = a.0.len() - k;
                let (ha, ta) = a.0.split_at(split);
                let (hb, tb) = b.0.split_at(split);
                Monomial(ta.to_vec())
                    .grevlex_cmp(&Monomial(tb.to_vec()))
                    .then_with(|| Monomial(ha.to_vec()).grevlex_cmp(&Monomial(hb.to_vec())))
            }
        }
    }
}

/// Terms sorted by decreasing monomial under a fixed order.
#[derive(Clone, Debug)]
pub(crate) struct SortedPoly {
    pub(crate) terms: Vec<(Monomial, RatFunc)>,
}

impl SortedPoly {
    pub(crate) fn from_poly(p: &MultiPoly, order: MonomialOrder) -> Self {
        let mut terms: Vec<(Monomial, RatFunc)> =
            p.terms().iter().map(|(m, c)| (m.clone(), c.clone())).collect();
        if order == MonomialOrder::Grevlex {
            terms.reverse();
        } else {
            terms.sort_by(|a, b| order.cmp(&b.0, &a.0));
        }
        SortedPoly { terms }
    }

    pub(crate) fn to_poly(&self, space: VarSpace, field: &ConstField) -> MultiPoly {
        MultiPoly::from_terms(space, field, self.terms.iter().cloned())
    }

    fn lm(&self) -> &Monomial {
        &self.terms[0].0
    }

    fn lc(&self) -> &RatFunc {
        &self.terms[0].1
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn monic(mut self) -> Self {
        if let Some((_, lc)) = self.terms.first() {
            if !lc.is_one() {
                let inv = lc.inv().unwrap();
                for (_, c) in &mut self.terms {
                    *c = &*c * &inv;
                }
            }
        }
        self
    }
}

/// `p[start..] - c * m * g`, merged in order.
fn sub_scaled(
    p: &[(Monomial, RatFunc)],
    c: &RatFunc,
    m: &Monomial,
    g: &[(Monomial, RatFunc)],
    order: MonomialOrder,
) -> Vec<(Monomial, RatFunc)> {
    let mut out = Vec::with_capacity(p.len() + g.len());
    let mut i = 0;
    let mut gi = g.iter().map(|(gm, gc)| (gm.mul(m), gc * c)).peekable();
    while i < p.len() || gi.peek().is_some() {
        let ord = match (p.get(i), gi.peek()) {
            (Some(a), Some(b)) => order.cmp(&a.0, &b.0),
            (Some(_), None) => Ordering::Greater,
            (None, Some(_)) => Ordering::Less,
            (None, None) => unreachable!(),
        };
        match ord {
            Ordering::Greater => {
                out.push(p[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let (bm, bc) = gi.next().unwrap();
                out.push((bm, -bc));
            }
            Ordering::Equal => {
                let (bm, bc) = gi.next().unwrap();
                let v = &p[i].1 - &bc;
                if !v.is_zero() {
                    out.push((bm, v));
                }
                i += 1;
            }
        }
    }
    out
}

/// Full reduction of `p` by `basis`; returns the remainder.
pub(crate) fn reduce(p: SortedPoly, basis: &[SortedPoly], order: MonomialOrder) -> SortedPoly {
    let mut cur = p.terms;
    let mut start = 0;
    let mut rem = Vec::new();
    while start < cur.len() {
        let (lm, lc) = &cur[start];
        match basis.iter().find(|g| g.lm().divides(lm)) {
            Some(g) => {
                let q = lm.div(g.lm());
                let c = if g.lc().is_one() { lc.clone() } else { lc / g.lc() };
                cur = sub_scaled(&cur[start..], &c, &q, &g.terms, order);
                start = 0;
            }
            None => {
                rem.push(cur[start].clone());
                start += 1;
            }
        }
    }
    SortedPoly { terms: rem }
}

/// Exact quotient `p / d`, if `d` divides `p`.
pub fn divide_exact(p: &MultiPoly, d: &MultiPoly) -> Option<MultiPoly> {
    assert!(!d.is_zero(), "division by the zero polynomial");
    let order = MonomialOrder::Grevlex;
    let ds = SortedPoly::from_poly(d, order);
    let mut cur = SortedPoly::from_poly(p, order).terms;
    let mut quot = MultiPoly::zero(p.space(), p.field());
    while !cur.is_empty() {
        let (lm, lc) = &cur[0];
        if !ds.lm().divides(lm) {
            return None;
        }
        let q = lm.div(ds.lm());
        let c = lc / ds.lc();
        quot.add_term(q.clone(), c.clone());
        cur = sub_scaled(&cur, &c, &q, &ds.terms, order);
    }
    Some(quot)
}

/// Reduced Gröbner basis: monic, inter-reduced, sorted by increasing leading
/// monomial.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    space: VarSpace,
    field: ConstField,
    order: MonomialOrder,
    gens: Vec<MultiPoly>,
    sorted: Vec<SortedPoly>,
}

impl PartialEq for GroebnerBasis {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.space == other.space && self.gens == other.gens
    }
}

impl GroebnerBasis {
    pub fn gens(&self) -> &[MultiPoly] {
        &self.gens
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn field(&self) -> &ConstField {
        &self.field
    }

    /// True when the basis is `{1}`.
    pub fn is_unit(&self) -> bool {
        self.gens.len() == 1 && self.gens[0].as_constant().is_some_and(|c| !c.is_zero())
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        assert_eq!(p.space(), self.space, "polynomial and basis live in different spaces");
        if p.is_zero() {
            return p.clone();
        }
        reduce(SortedPoly::from_poly(p, self.order), &self.sorted, self.order).to_poly(self.space, &self.field)
    }

    pub fn contains(&self, p: &MultiPoly) -> bool {
        self.normal_form(p).is_zero()
    }

    /// S-polynomial of two basis elements (exposed for invariant checks).
    pub fn s_polynomial(&self, i: usize, j: usize) -> MultiPoly {
        s_poly(&self.sorted[i], &self.sorted[j], self.order).to_poly(self.space, &self.field)
    }
}

fn s_poly(a: &SortedPoly, b: &SortedPoly, order: MonomialOrder) -> SortedPoly {
    let l = a.lm().lcm(b.lm());
    let ma = l.div(a.lm());
    let mb = l.div(b.lm());
    let ca = a.lc().inv().unwrap();
    let cb = b.lc().inv().unwrap();
    let left: Vec<(Monomial, RatFunc)> = a.terms.iter().map(|(m, c)| (m.mul(&ma), c * &ca)).collect();
    SortedPoly {
        terms: sub_scaled(&left, &cb, &mb, &b.terms, order),
    }
}

struct Pair {
    i: usize,
    j: usize,
    lcm: Monomial,
}

/// Computes the reduced Gröbner basis of the ideal generated by `gens`.
///
/// Pairs are processed by the normal strategy: smallest lcm degree first, ties
/// broken by the generator indices `(i, j)`. Product and chain criteria skip
/// pairs that cannot contribute. Panics if `gens` is empty.
pub fn buchberger(gens: &[MultiPoly], order: MonomialOrder) -> GroebnerBasis {
    let space = gens[0].space();
    let field = gens[0].field().clone();
    let mut basis: Vec<SortedPoly> = Vec::new();
    let mut pairs: Vec<Pair> = Vec::new();

    let add = |p: SortedPoly, basis: &mut Vec<SortedPoly>, pairs: &mut Vec<Pair>| {
        let k = basis.len();
        for (i, g) in basis.iter().enumerate() {
            pairs.push(Pair {
                i,
                j: k,
                lcm: g.lm().lcm(p.lm()),
            });
        }
        basis.push(p);
    };

    for g in gens {
        assert_eq!(g.space(), space, "generators live in different spaces");
        if !g.is_zero() {
            add(SortedPoly::from_poly(g, order).monic(), &mut basis, &mut pairs);
        }
    }
    let unit = |basis: &[SortedPoly]| basis.iter().any(|g| g.lm().is_one());

    while !pairs.is_empty() && !unit(&basis) {
        let pos = pairs
            .iter()
            .enumerate()
            .min_by(|(_, a), (_, b)| {
                a.lcm
                    .degree()
                    .cmp(&b.lcm.degree())
                    .then(a.i.cmp(&b.i))
                    .then(a.j.cmp(&b.j))
            })
            .map(|(k, _)| k)
            .unwrap();
        let pair = pairs.swap_remove(pos);
        let (gi, gj) = (&basis[pair.i], &basis[pair.j]);
        if gi.lm().coprime(gj.lm()) {
            continue;
        }
        let pending = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            pairs.iter().any(|p| p.i == a && p.j == b)
        };
        let chain = (0..basis.len()).any(|k| {
            k != pair.i
                && k != pair.j
                && basis[k].lm().divides(&pair.lcm)
                && !pending(pair.i, k)
                && !pending(pair.j, k)
        });
        if chain {
            continue;
        }
        let s = s_poly(gi, gj, order);
        let r = reduce(s, &basis, order);
        if !r.is_zero() {
            add(r.monic(), &mut basis, &mut pairs);
        }
    }

    finalize(basis, order, space, field)
}

fn finalize(mut basis: Vec<SortedPoly>, order: MonomialOrder, space: VarSpace, field: ConstField) -> GroebnerBasis {
    if unit(&basis) {
        let one = SortedPoly {
            terms: vec![(Monomial::one(space.nvars()), RatFunc::one(&field))],
        };
        return build(vec![one], order, space, field);
    }
    basis.sort_by(|a, b| order.cmp(a.lm(), b.lm()));
    let mut minimal: Vec<SortedPoly> = Vec::new();
    for g in basis {
        if !minimal.iter().any(|h| h.lm().divides(g.lm())) {
            minimal.push(g);
        }
    }
    let mut reduced = Vec::with_capacity(minimal.len());
    for k in 0..minimal.len() {
        let others: Vec<SortedPoly> = minimal
            .iter()
            .enumerate()
            .filter(|&(i, _)| i != k)
            .map(|(_, g)| g.clone())
            .collect();
        let g = &minimal[k];
        let tail = SortedPoly {
            terms: g.terms[1..].to_vec(),
        };
        let mut terms = vec![g.terms[0].clone()];
        terms.extend(reduce(tail, &others, order).terms);
        reduced.push(SortedPoly { terms }.monic());
    }
    build(reduced, order, space, field)
}

fn unit(basis: &[SortedPoly]) -> bool {
    basis.iter().any(|g| g.lm().is_one())
}

fn build(sorted: Vec<SortedPoly>, order: MonomialOrder, space: VarSpace, field: ConstField) -> GroebnerBasis {
    let gens = sorted.iter().map(|g| g.to_poly(space, &field)).collect();
    GroebnerBasis {
        space,
        field,
        order,
        gens,
        sorted,
    }
}

