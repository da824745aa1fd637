use std::collections::BTreeMap;

use crate::algebra::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{Monomial, MultiPoly};
use crate::pv::{right_action, LocalizedPoly};

use super::group_spec::{GroupSpec, Sampler};
use super::span::{combine, LocSpan};

/// Consecutive non-growing samples before a sampled span counts as stable.
const STABLE_RUN: usize = 5;
/// Fresh samples that must land in a stabilized span.
const VERIFY_SAMPLES: usize = 20;
/// Sampling rounds before giving up.
const MAX_ROUNDS: usize = 3;

/// Torus weight of a monomial: one entry per weight row.
fn monomial_weight(m: &Monomial, n: usize, weights: &[Vec<i64>]) -> Vec<i64> {
    weights
        .iter()
        .map(|w| {
            (0..n * n)
                .map(|idx| m.0[idx] as i64 * w[idx % n])
                .sum()
        })
        .collect()
}

/// Weight components of `p` under a diagonal torus, keyed by weight.
pub fn torus_components(p: &LocalizedPoly, weights: &[Vec<i64>]) -> BTreeMap<Vec<i64>, LocalizedPoly> {
    let n = p.n();
    let mut parts: BTreeMap<Vec<i64>, MultiPoly> = BTreeMap::new();
    for (m, c) in p.numerator().terms() {
        parts
            .entry(monomial_weight(m, n, weights))
            .or_insert_with(|| MultiPoly::zero(p.space(), p.field()))
            .add_term(m.clone(), c.clone());
    }
    parts
        .into_iter()
        .map(|(w, num)| (w, LocalizedPoly::new(num, p.wexp())))
        .collect()
}

/// A basis of the `K`-span of `{Q^g : g in G}` with `Q` first.
pub fn orbit_span(q: &LocalizedPoly, g: &GroupSpec, seed: u64) -> Result<Vec<LocalizedPoly>> {
    assert_eq!(q.n(), g.n(), "group and polynomial have different dimensions");
    if q.is_zero() {
        return Err(Error::Precondition("orbit of the zero polynomial".into()));
    }
    let mut span = LocSpan::new(q.wexp());
    span.insert(q);
    match g {
        GroupSpec::FiniteList(elems) => {
            for h in elems {
                span.insert(&right_action(q, h));
            }
        }
        GroupSpec::DiagonalTorus { weights, .. } => {
            for part in torus_components(q, weights).values() {
                span.insert(part);
            }
        }
        GroupSpec::FullSL { .. } | GroupSpec::FullGL { .. } => {
            let mut sampler = Sampler::new(seed);
            let mut verified = false;
            for _ in 0..MAX_ROUNDS {
                let mut run = 0;
                while run < STABLE_RUN {
                    let h = sampler.element(g);
                    if span.insert(&right_action(q, &h)) {
                        run = 0;
                    } else {
                        run += 1;
                    }
                }
                let mut grew = false;
                for _ in 0..VERIFY_SAMPLES {
                    let h = sampler.element(g);
                    grew |= span.insert(&right_action(q, &h));
                }
                if !grew {
                    verified = true;
                    break;
                }
            }
            if !verified {
                return Err(Error::Sampling {
                    seed,
                    what: "orbit span did not stabilize".into(),
                });
            }
        }
    }
    Ok(span.basis().to_vec())
}

/// Matrix of `b -> b^g` on `basis` (columns are coordinates of images).
fn representation(basis: &[LocalizedPoly], k: u32, g: &crate::pv::GroupElement) -> Result<Matrix<RatFunc>> {
    let cols: Vec<Vec<RatFunc>> = basis
        .iter()
        .map(|b| {
            super::span::coordinates(basis, &right_action(b, g), k)
                .ok_or_else(|| Error::NotStable("ambient space is not G-stable".into()))
        })
        .collect::<Result<_>>()?;
    Ok(Matrix::from_fn(basis.len(), basis.len(), |r, c| cols[c][r].clone()))
}

/// A `G`-stable complement of `sub` inside `ambient`.
pub fn stable_complement(ambient: &[LocalizedPoly], sub: &[LocalizedPoly], g: &GroupSpec) -> Result<Vec<LocalizedPoly>> {
    if matches!(g, GroupSpec::FullSL { .. } | GroupSpec::FullGL { .. }) {
        return Err(Error::Unsupported(
            "stable complements are computed for finite groups and tori only".into(),
        ));
    }
    let k = ambient.iter().chain(sub).map(LocalizedPoly::wexp).max().unwrap_or(0);
    let mut sub_span = LocSpan::new(k);
    for p in sub {
        sub_span.insert(p);
    }
    let gens = g.generators();
    for h in &gens {
        for p in sub_span.basis() {
            if !sub_span.contains(&right_action(p, h)) {
                return Err(Error::NotStable("subspace is not G-stable".into()));
            }
        }
    }
    let mut full = sub_span.clone();
    let mut extra = Vec::new();
    for p in ambient {
        if full.insert(p) {
            extra.push(p.clone());
        }
    }
    for h in &gens {
        for p in full.basis() {
            if !full.contains(&right_action(p, h)) {
                return Err(Error::NotStable("ambient space is not G-stable".into()));
            }
        }
    }
    if extra.is_empty() {
        return Ok(Vec::new());
    }
    match g {
        GroupSpec::FiniteList(elems) => {
            let basis = full.basis().to_vec();
            let d = basis.len();
            let s = sub_span.dim();
            let field = basis[0].field().clone();
            let zero = RatFunc::zero(&field);
            let one = RatFunc::one(&field);
            let pi0 = Matrix::from_fn(d, d, |r, c| if r == c && r < s { one.clone() } else { zero.clone() });
            let mut avg = Matrix::from_fn(d, d, |_, _| zero.clone());
            for h in elems {
                let rho = representation(&basis, k, h)?;
                let rho_inv = rho.inverse().ok_or(Error::Singular)?;
                avg = avg.add(&rho.mul(&pi0).mul(&rho_inv));
            }
            let pi = avg.scale(&RatFunc::from_int(&field, elems.len() as i64).inv()?);
            let comp = Matrix::identity(d, &one).sub(&pi);
            let space = basis[0].space();
            Ok((s..d)
                .map(|c| {
                    let coeffs: Vec<RatFunc> = (0..d).map(|r| comp.get(r, c).clone()).collect();
                    combine(&basis, &coeffs, space, &field)
                })
                .collect())
        }
        GroupSpec::DiagonalTorus { weights, .. } => {
            let mut by_weight: BTreeMap<Vec<i64>, (LocSpan, Vec<LocalizedPoly>)> = BTreeMap::new();
            for p in sub_span.basis() {
                for (w, part) in torus_components(p, weights) {
                    by_weight.entry(w).or_insert_with(|| (LocSpan::new(k), Vec::new())).0.insert(&part);
                }
            }
            let mut out = Vec::new();
            for p in full.basis() {
                for (w, part) in torus_components(p, weights) {
                    let (span, added) = by_weight.entry(w).or_insert_with(|| (LocSpan::new(k), Vec::new()));
                    if span.insert(&part) {
                        added.push(part);
                    }
                }
            }
            for (_, (_, added)) in by_weight {
                out.extend(added);
            }
            Ok(out)
        }
        GroupSpec::FullSL { .. } | GroupSpec::FullGL { .. } => unreachable!(),
    }
}
