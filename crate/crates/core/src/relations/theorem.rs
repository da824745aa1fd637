use crate::algebra::RatFunc;
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::ideal::basis_of;
use crate::poly::{radical_membership, wronskian, Monomial, MultiPoly};
use crate::pv::{IdealPresentation, LocalizedPoly};

use super::context::PVContext;

/// The `f` in `K` with `P - f` in `I`, for a `G`-invariant `P`.
pub fn evaluate_invariant(p: &LocalizedPoly, ctx: &PVContext) -> Result<RatFunc> {
    if !ctx.is_invariant(p) {
        return Err(Error::NotInvariant);
    }
    ctx.ideal().residue_in_k(p).ok_or_else(|| {
        Error::NotInGroundField(ctx.ideal().normal_form(p.numerator()).to_string())
    })
}

/// `P_i - f_i` for each invariant generator.
pub fn corollary_generators(invariants: &[MultiPoly], ctx: &PVContext) -> Result<Vec<LocalizedPoly>> {
    invariants
        .iter()
        .map(|p| {
            let lp = LocalizedPoly::from_poly(p.clone());
            let f = evaluate_invariant(&lp, ctx)?;
            Ok(lp.sub(&LocalizedPoly::constant(p.space(), f)))
        })
        .collect()
}

/// Verdicts for one generator `g` of `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GeneratorVerdict {
    pub generator: LocalizedPoly,
    /// `g` lies in the radical of `<P_i - f_i>`.
    pub in_radical: bool,
    /// `g` lies in `<P_i - f_i>` itself.
    pub in_ideal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TheoremReport {
    pub relations: Vec<LocalizedPoly>,
    /// Membership of each `P_i - f_i` in `I`.
    pub relations_in_i: Vec<bool>,
    pub generators: Vec<GeneratorVerdict>,
}

impl TheoremReport {
    /// `<P_i - f_i>` is contained in `I`.
    pub fn verdict_a(&self) -> bool {
        self.relations_in_i.iter().all(|&b| b)
    }

    /// `I` is contained in the radical of `<P_i - f_i>`.
    pub fn verdict_b(&self) -> bool {
        self.generators.iter().all(|g| g.in_radical)
    }

    /// `I` is generated by `P_i - f_i` without taking a radical.
    pub fn verdict_c(&self) -> bool {
        self.generators.iter().all(|g| g.in_ideal)
    }

    /// The first generator of `I` outside `<P_i - f_i>`.
    pub fn exact_generation_witness(&self) -> Option<&LocalizedPoly> {
        self.generators.iter().find(|g| !g.in_ideal).map(|g| &g.generator)
    }
}

/// Checks `I = rad <P_i - f_i>` inside `K[X, 1/W]`, and whether the radical is
/// needed.
///
/// Radical membership in the localization is tested as membership of `W g` in
/// the radical of the polynomial ideal; exact membership uses the
/// `W`-saturation.
pub fn verify_theorem(ctx: &PVContext, invariants: &[MultiPoly]) -> Result<TheoremReport> {
    let relations = corollary_generators(invariants, ctx)?;
    let relations_in_i = relations.iter().map(|r| ctx.ideal().contains(r)).collect();
    let space = ctx.ideal().space();
    let field = ctx.ideal().field().clone();
    let nums: Vec<MultiPoly> = relations.iter().map(|r| r.numerator().clone()).collect();
    let generated = IdealPresentation::new(space, &field, relations.clone());
    let w = wronskian(space, &field);
    let generators = ctx
        .ideal()
        .gens()
        .iter()
        .map(|g| {
            let wg = &w * g.numerator();
            let in_radical = if nums.is_empty() {
                g.is_zero()
            } else {
                radical_membership(&wg, &nums)
            };
            GeneratorVerdict {
                generator: g.clone(),
                in_radical,
                in_ideal: generated.contains(g),
            }
        })
        .collect();
    Ok(TheoremReport {
        relations,
        relations_in_i,
        generators,
    })
}

/// Exponent vectors `alpha` with `sum alpha_i deg_i = d`.
fn exponent_vectors(degs: &[u32], d: u32) -> Vec<Vec<u32>> {
    fn rec(degs: &[u32], left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if cur.len() == degs.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let dg = degs[cur.len()];
        let max = left.checked_div(dg).unwrap_or(0);
        for e in 0..=max {
            cur.push(e);
            rec(degs, left - e * dg, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(degs, d, &mut Vec::new(), &mut out);
    out
}

/// Decides `Q` in `<P_i - f_i>` for a `G`-invariant polynomial `Q` by
/// stripping homogeneous top parts: each top part is written as a
/// `K`-combination of products of the (homogeneous) invariant generators, and
/// the matching combination of `prod P^alpha - prod f^alpha` is subtracted.
pub fn invariant_membership_exact(q: &MultiPoly, ctx: &PVContext, invariants: &[MultiPoly]) -> Result<bool> {
    let lq = LocalizedPoly::from_poly(q.clone());
    if !ctx.is_invariant(&lq) {
        return Err(Error::NotInvariant);
    }
    if invariants.iter().any(|p| !p.is_homogeneous() || p.is_zero()) {
        return Err(Error::Precondition("invariant generators must be nonzero and homogeneous".into()));
    }
    let space = q.space();
    let field = q.field().clone();
    let fs: Vec<RatFunc> = invariants
        .iter()
        .map(|p| evaluate_invariant(&LocalizedPoly::from_poly(p.clone()), ctx))
        .collect::<Result<_>>()?;
    let degs: Vec<u32> = invariants.iter().map(|p| p.total_degree().unwrap()).collect();
    let mut cur = q.clone();
    while let Some(d) = cur.total_degree().filter(|&d| d > 0) {
        let top = cur.homogeneous_part(d);
        let alphas = exponent_vectors(&degs, d);
        let prods: Vec<MultiPoly> = alphas
            .iter()
            .map(|a| {
                invariants
                    .iter()
                    .zip(a)
                    .fold(MultiPoly::one(space, &field), |acc, (p, &e)| &acc * &p.pow(e))
            })
            .collect();
        let insufficient = || Error::GeneratorInsufficiency(format!("degree-{d} part {top} is not generated"));
        if prods.is_empty() {
            return Err(insufficient());
        }
        let monos: Vec<&Monomial> = prods
            .iter()
            .chain(std::iter::once(&top))
            .flat_map(|p| p.terms().keys())
            .collect::<std::collections::BTreeSet<_>>()
            .into_iter()
            .collect();
        let a = Matrix::from_fn(monos.len(), prods.len(), |r, c| prods[c].coeff(monos[r]));
        let b: Vec<RatFunc> = monos.iter().map(|m| top.coeff(m)).collect();
        let coeffs = a.solve(&b).ok_or_else(insufficient)?;
        for ((alpha, prod), c) in alphas.iter().zip(&prods).zip(&coeffs) {
            if c.is_zero() {
                continue;
            }
            let fval = fs
                .iter()
                .zip(alpha)
                .fold(RatFunc::one(&field), |acc, (f, &e)| &acc * &f.pow(e as i64).unwrap());
            let rel = prod - &MultiPoly::constant(space, fval);
            cur = &cur - &rel.scale(c);
        }
    }
    let rel_nums: Vec<MultiPoly> = invariants
        .iter()
        .zip(&fs)
        .map(|(p, f)| p - &MultiPoly::constant(space, f.clone()))
        .collect();
    Ok(basis_of(&rel_nums, space, &field).contains(&cur))
}
