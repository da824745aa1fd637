use crate::algebra::RatFunc;
use crate::error::{Error, Result};
use crate::poly::ideal::proportional;
use crate::poly::wronskian;
use crate::pv::{left_action, right_action, GroupElement, LocalizedPoly};

use super::group_spec::{GroupSpec, Sampler};
use super::span::LocSpan;

/// Records `P^g = det(g)^N P` on a set of generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelInvariantWitness {
    pub n_exp: i64,
    pub lambda: RatFunc,
}

/// Writes `p = lambda W^N` if possible.
pub fn as_lambda_w_power(p: &LocalizedPoly) -> Option<(RatFunc, i64)> {
    if p.is_zero() {
        return None;
    }
    if p.wexp() > 0 {
        return p.numerator().as_constant().map(|c| (c, -(p.wexp() as i64)));
    }
    let n = p.n() as u32;
    let d = p.numerator().total_degree()?;
    if d % n != 0 {
        return None;
    }
    let wm = wronskian(p.space(), p.field()).pow(d / n);
    proportional(p.numerator(), &wm).map(|l| (l, (d / n) as i64))
}

fn exponent_candidates(bound: i64) -> impl Iterator<Item = i64> {
    std::iter::once(0).chain((1..=bound).flat_map(|k| [k, -k]))
}

/// A witness if every generator scales `p` by `det(g)^N` for one common `N`
/// (the first in the order `0, 1, -1, 2, -2, ..`).
pub fn is_relative_invariant(p: &LocalizedPoly, gens: &[GroupElement]) -> Option<RelInvariantWitness> {
    if p.is_zero() {
        return None;
    }
    let mut scales = Vec::with_capacity(gens.len());
    for g in gens {
        let c = proportional(right_action(p, g).numerator(), p.numerator())?;
        scales.push((g.det(), c.as_const()?));
    }
    let bound = p.numerator().total_degree().unwrap_or(0) as i64 + p.wexp() as i64 + 1;
    let n_exp = exponent_candidates(bound).find(|&e| scales.iter().all(|(d, c)| d.pow(e).as_ref() == Some(c)))?;
    let m = n_exp + p.wexp() as i64;
    let (_, lc) = p.numerator().leading()?;
    let lambda = if m >= 0 {
        let wm = wronskian(p.space(), p.field()).pow(m as u32);
        lc / wm.leading().unwrap().1
    } else {
        lc.clone()
    };
    Some(RelInvariantWitness { n_exp, lambda })
}

/// Checks the witness against generators of `GL_n(C)` and the decomposition
/// `P = lambda W^N`, returning `(lambda, N)`.
pub fn fmt_normalize(p: &LocalizedPoly, witness: &RelInvariantWitness) -> Result<(RatFunc, i64)> {
    let gl = GroupSpec::gl(p.n(), p.field()).generators();
    for g in &gl {
        let expected = p.scale(&RatFunc::from_const(
            g.det().pow(witness.n_exp).ok_or(Error::DivisionByZero)?,
        ));
        if right_action(p, g) != expected {
            return Err(Error::FmtViolation(format!(
                "P^g differs from det(g)^{} P for g = [{g}]",
                witness.n_exp
            )));
        }
    }
    match as_lambda_w_power(p) {
        Some((lambda, n)) if n == witness.n_exp && lambda == witness.lambda => Ok((lambda, n)),
        _ => Err(Error::FmtViolation(format!("{p} is not lambda*W^{}", witness.n_exp))),
    }
}

/// Output of the determinant construction over left translates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropositionOutcome {
    pub gs: Vec<GroupElement>,
    pub lambda: RatFunc,
    pub n_exp: i64,
    /// `m[i][j] = ^{g_i} P_j`.
    pub matrix: Vec<Vec<LocalizedPoly>>,
    pub det: LocalizedPoly,
}

/// Attempts at drawing `g_2..g_r` before giving up.
const MAX_ATTEMPTS: usize = 64;
/// Random elements used to spot-check right stability of the span.
const STABILITY_PROBES: usize = 3;

/// Determinant of a square matrix over `K[X, 1/W]`.
pub fn det_localized(m: &[Vec<LocalizedPoly>]) -> LocalizedPoly {
    let r = m.len();
    let k = m.iter().flatten().map(LocalizedPoly::wexp).max().unwrap_or(0);
    let nums: Vec<Vec<_>> = m.iter().map(|row| row.iter().map(|p| p.numerator_over(k)).collect()).collect();
    LocalizedPoly::new(crate::poly::det(&nums), k * r as u32)
}

fn translate_matrix(ps: &[LocalizedPoly], gs: &[GroupElement]) -> Vec<Vec<LocalizedPoly>> {
    gs.iter().map(|g| ps.iter().map(|p| left_action(g, p)).collect()).collect()
}

/// Verifies `det(^{g_i} P_j) = lambda W^N` for the given `gs`.
pub fn proposition_with(ps: &[LocalizedPoly], gs: &[GroupElement]) -> Result<PropositionOutcome> {
    if gs.len() != ps.len() {
        return Err(Error::DimensionMismatch {
            expected: ps.len(),
            found: gs.len(),
        });
    }
    let matrix = translate_matrix(ps, gs);
    let det = det_localized(&matrix);
    if det.is_zero() {
        return Err(Error::Singular);
    }
    let (lambda, n_exp) = as_lambda_w_power(&det)
        .ok_or_else(|| Error::InvariantTheoryViolation(format!("determinant {det} is not lambda*W^N")))?;
    Ok(PropositionOutcome {
        gs: gs.to_vec(),
        lambda,
        n_exp,
        matrix,
        det,
    })
}

/// Finds `g_1 = e, g_2, .., g_r` with `det(^{g_i} P_j)` nonzero and checks
/// that it equals `lambda W^N`.
pub fn proposition_gs(ps: &[LocalizedPoly], seed: u64) -> Result<PropositionOutcome> {
    let Some(first) = ps.first() else {
        return Err(Error::Precondition("empty family".into()));
    };
    let (n, field) = (first.n(), first.field().clone());
    let span = LocSpan::spanning(ps);
    if span.dim() != ps.len() {
        return Err(Error::Precondition("the family is linearly dependent".into()));
    }
    let mut sampler = Sampler::new(seed);
    for _ in 0..STABILITY_PROBES {
        let g = sampler.gl(n, &field);
        if ps.iter().any(|p| !span.contains(&right_action(p, &g))) {
            return Err(Error::Precondition("the span is not stable under the right action".into()));
        }
    }
    for _ in 0..MAX_ATTEMPTS {
        let mut gs = vec![GroupElement::identity(n, &field)];
        gs.extend((1..ps.len()).map(|_| sampler.gl(n, &field)));
        match proposition_with(ps, &gs) {
            Err(Error::Singular) => continue,
            other => return other,
        }
    }
    Err(Error::Sampling {
        seed,
        what: "left-translate determinant stayed zero".into(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ConstField;
    use crate::poly::{MultiPoly, VarSpace};

    #[test]
    fn witnesses() {
        let f = ConstField::rationals();
        let s = VarSpace::new(2);
        let gl = GroupSpec::gl(2, &f).generators();
        let w3 = LocalizedPoly::w_power(s, &f, 3).scale(&RatFunc::from_int(&f, 5));
        let wit = is_relative_invariant(&w3, &gl).unwrap();
        assert_eq!(wit.n_exp, 3);
        assert_eq!(fmt_normalize(&w3, &wit), Ok((RatFunc::from_int(&f, 5), 3)));
        let xw = LocalizedPoly::w_power(s, &f, 1).scale(&RatFunc::x(&f));
        let wit = is_relative_invariant(&xw, &gl).unwrap();
        assert_eq!(fmt_normalize(&xw, &wit), Ok((RatFunc::x(&f), 1)));
        let x11 = LocalizedPoly::from_poly(MultiPoly::x(s, &f, 1, 1));
        assert_eq!(is_relative_invariant(&x11, &gl), None);
        let w1 = LocalizedPoly::w_power(s, &f, 1).add(&LocalizedPoly::one(s, &f));
        assert_eq!(is_relative_invariant(&w1, &gl), None);
        let fake = RelInvariantWitness {
            n_exp: 1,
            lambda: RatFunc::one(&f),
        };
        assert!(matches!(fmt_normalize(&w1, &fake), Err(Error::FmtViolation(_))));

        let s1 = VarSpace::new(1);
        let x2 = LocalizedPoly::from_poly(MultiPoly::x(s1, &f, 1, 1).pow(2));
        let c = GroupElement::scalar(1, f.from_int(3));
        assert_eq!(is_relative_invariant(&x2, &[c]).unwrap().n_exp, 2);
        let winv = LocalizedPoly::w_power(s, &f, -2).scale(&RatFunc::x(&f));
        let wit = is_relative_invariant(&winv, &gl).unwrap();
        assert_eq!(fmt_normalize(&winv, &wit), Ok((RatFunc::x(&f), -2)));
    }

    #[test]
    fn proposition_examples() {
        let f = ConstField::rationals();
        let s = VarSpace::new(1);
        let x = MultiPoly::x(s, &f, 1, 1);
        let ps = vec![LocalizedPoly::from_poly(x.pow(4)), LocalizedPoly::from_poly(x.pow(2))];
        let gs = vec![GroupElement::identity(1, &f), GroupElement::scalar(1, f.from_int(2))];
        let out = proposition_with(&ps, &gs).unwrap();
        assert_eq!((out.lambda, out.n_exp), (RatFunc::from_int(&f, -12), 6));
        let sampled = proposition_gs(&ps, 1).unwrap();
        assert!(sampled.gs[0].is_identity());
        assert_eq!(sampled.n_exp, 6);

        let s2 = VarSpace::new(2);
        let w = LocalizedPoly::w_power(s2, &f, 1);
        let out = proposition_gs(&[w], 0).unwrap();
        assert_eq!((out.lambda, out.n_exp), (RatFunc::one(&f), 1));

        let x1 = LocalizedPoly::from_poly(x.clone());
        let dep = proposition_gs(&[x1.clone(), x1.scale(&RatFunc::from_int(&f, 2))], 0);
        assert!(matches!(dep, Err(Error::Precondition(_))));
    }
}
