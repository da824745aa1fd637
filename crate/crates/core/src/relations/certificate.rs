use crate::algebra::RatFunc;
use crate::error::{Error, Result};
use crate::invariants::fmt::det_localized;
use crate::invariants::{n0_for_group, orbit_span, proposition_gs, stable_complement, GroupSpec, LocSpan};
use crate::pv::{left_action, GroupElement, LocalizedPoly};

use super::context::PVContext;
use super::theorem::evaluate_invariant;

/// One summand `coeff * invariant` of a certificate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertificateTerm {
    pub coeff: LocalizedPoly,
    pub invariant: LocalizedPoly,
}

/// `Q^N0 = sum coeff_i * invariant_i` with every invariant `G`-invariant and in `I`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub q: LocalizedPoly,
    pub n0: u64,
    pub f: RatFunc,
    /// 1-based row indices `k_1 < .. < k_t`; empty for the invariant short-circuit.
    pub k_indices: Vec<usize>,
    pub terms: Vec<CertificateTerm>,
    pub seed: u64,
    /// The left translates `g_1 = e, .., g_r`; empty for the short-circuit.
    pub gs: Vec<GroupElement>,
}

impl Certificate {
    /// `sum coeff_i * invariant_i`.
    pub fn expand(&self) -> LocalizedPoly {
        self.terms.iter().fold(LocalizedPoly::zero(self.q.space(), self.q.field()), |acc, t| {
            acc.add(&t.coeff.mul(&t.invariant))
        })
    }

    /// Re-expands the identity and re-checks invariance and membership of
    /// every invariant.
    pub fn check(&self, ctx: &PVContext) -> Result<()> {
        if self.expand() != self.q.pow(self.n0 as u32) {
            return Err(Error::Unsound("the terms do not sum to Q^N0".into()));
        }
        for (i, t) in self.terms.iter().enumerate() {
            if !ctx.is_invariant(&t.invariant) {
                return Err(Error::Unsound(format!("term {} is not G-invariant", i + 1)));
            }
            if !ctx.ideal().contains(&t.invariant) {
                return Err(Error::Unsound(format!("term {} is not in I", i + 1)));
            }
        }
        Ok(())
    }
}

/// All `d`-fold products of `items`, indexed by non-decreasing tuples in
/// lexicographic order (so the first is `items[0]^d`).
fn products(items: &[LocalizedPoly], d: u64) -> Vec<LocalizedPoly> {
    fn rec(items: &[LocalizedPoly], start: usize, left: u64, acc: LocalizedPoly, out: &mut Vec<LocalizedPoly>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for i in start..items.len() {
            rec(items, i, left - 1, acc.mul(&items[i]), out);
        }
    }
    let mut out = Vec::new();
    if let Some(first) = items.first() {
        rec(items, 0, d, LocalizedPoly::one(first.space(), first.field()), &mut out);
    }
    out
}

/// Increasing `t`-subsets of `0..r` in lexicographic order.
fn subsets(r: usize, t: usize) -> Vec<Vec<usize>> {
    fn rec(r: usize, t: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == t {
            out.push(cur.clone());
            return;
        }
        for i in start..r {
            cur.push(i);
            rec(r, t, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(r, t, 0, &mut Vec::new(), &mut out);
    out
}

fn minor(m: &[Vec<LocalizedPoly>], rows: &[usize], cols: std::ops::Range<usize>) -> LocalizedPoly {
    if rows.is_empty() {
        let p = &m[0][0];
        return LocalizedPoly::one(p.space(), p.field());
    }
    let sub: Vec<Vec<LocalizedPoly>> = rows.iter().map(|&i| m[i][cols.clone()].to_vec()).collect();
    det_localized(&sub)
}

/// `G`-stable basis of a space containing the `G`-stable subspace `sub`,
/// listing `sub` first.
fn adapted_basis(sub: &[LocalizedPoly], ambient: &[LocalizedPoly], g: &GroupSpec) -> Result<Vec<LocalizedPoly>> {
    let mut out = sub.to_vec();
    out.extend(stable_complement(ambient, sub, g)?);
    Ok(out)
}

/// Writes a power of `Q` in `I` as a combination of `G`-invariants lying in `I`.
///
/// Follows the construction through orbit spaces, their `N0`-fold products,
/// the determinant of left translates, its Laplace expansion along the first
/// `t` columns, and the vanishing determinant with a repeated first column.
/// Every certificate is checked before it is returned.
pub fn constructive_certificate(q: &LocalizedPoly, ctx: &PVContext, seed: u64) -> Result<Certificate> {
    if !ctx.ideal().contains(q) {
        return Err(Error::Precondition("Q is not in I".into()));
    }
    let g = ctx.group();
    let n0 = n0_for_group(g).map_err(Error::at("determinant group exponent"))?;
    let space = q.space();
    let field = q.field().clone();

    if ctx.is_invariant(q) {
        let cert = Certificate {
            q: q.clone(),
            n0,
            f: RatFunc::zero(&field),
            k_indices: Vec::new(),
            terms: vec![CertificateTerm {
                coeff: q.pow(n0 as u32 - 1),
                invariant: q.clone(),
            }],
            seed,
            gs: Vec::new(),
        };
        cert.check(ctx)?;
        return Ok(cert);
    }

    let step = Error::at;
    let gl = GroupSpec::gl(space.n, &field);
    let q_g = orbit_span(q, g, seed).map_err(step("orbit span under G"))?;
    let q_gl = orbit_span(q, &gl, seed).map_err(step("orbit span under GL"))?;
    let qs = adapted_basis(&q_g, &q_gl, g).map_err(step("G-stable complement of the orbit space"))?;
    let t0 = q_g.len();

    let prod_g = products(&qs[..t0], n0);
    let sub = LocSpan::spanning(&prod_g).basis().to_vec();
    let prod_all = products(&qs, n0);
    let ps = adapted_basis(&sub, &prod_all, g).map_err(step("G-stable complement of the product space"))?;
    debug_assert_eq!(ps[0], q.pow(n0 as u32));
    let (t, r) = (sub.len(), ps.len());

    let prop = proposition_gs(&ps, seed).map_err(step("determinant of left translates"))?;
    let n_exp = prop.n_exp;
    for h in g.generators() {
        let d = h.det().pow(n_exp).expect("group elements are invertible");
        if !d.is_one() {
            return Err(step("determinant exponent")(Error::InvariantTheoryViolation(format!(
                "det(g)^{n_exp} = {d} for a generator of G"
            ))));
        }
    }
    if t >= r {
        return Err(step("column expansion")(Error::InvariantTheoryViolation(
            "W^N would lie in I".into(),
        )));
    }

    let m = &prop.matrix;
    let p_of = |rows: &[usize]| minor(m, rows, 0..t);
    let q_of = |rows: &[usize]| {
        let comp: Vec<usize> = (0..r).filter(|i| !rows.contains(i)).collect();
        let sign_exp: usize = rows.iter().map(|i| i + 1).sum::<usize>() + t * (t + 1) / 2;
        let d = minor(m, &comp, t..r);
        if sign_exp % 2 == 1 { d.neg() } else { d }
    };

    let mut found = None;
    for k in subsets(r, t).into_iter().filter(|k| !k.contains(&0)) {
        let qk = q_of(&k);
        let pq = p_of(&k).mul(&qk);
        if !ctx.ideal().contains(&pq) {
            found = Some((k, qk, pq));
            break;
        }
    }
    let (k, qk, pq) = found.ok_or_else(|| {
        step("index set search")(Error::InvariantTheoryViolation("every P_k Q_k with 1 not in k lies in I".into()))
    })?;
    let f = evaluate_invariant(&pq, ctx).map_err(step("evaluation of P_k Q_k"))?;
    if f.is_zero() {
        return Err(step("evaluation of P_k Q_k")(Error::InvariantTheoryViolation(
            "f vanishes although P_k Q_k is not in I".into(),
        )));
    }
    let inv_f = f.inv()?;

    let qn = q.pow(n0 as u32);
    let mut rows = vec![0];
    rows.extend(&k);
    let mut terms = vec![CertificateTerm {
        coeff: qn.scale(&-&inv_f),
        invariant: pq.sub(&LocalizedPoly::constant(space, f.clone())),
    }];
    for s in 1..=t {
        let ks: Vec<usize> = rows.iter().enumerate().filter(|&(i, _)| i != s).map(|(_, &v)| v).collect();
        let sign = if s % 2 == 1 { inv_f.clone() } else { -&inv_f };
        terms.push(CertificateTerm {
            coeff: left_action(&prop.gs[rows[s]], &qn).scale(&sign),
            invariant: p_of(&ks).mul(&qk),
        });
    }
    let cert = Certificate {
        q: q.clone(),
        n0,
        f,
        k_indices: k.iter().map(|i| i + 1).collect(),
        terms,
        seed,
        gs: prop.gs,
    };
    cert.check(ctx)?;
    Ok(cert)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ConstField;
    use crate::poly::{wronskian, MultiPoly};
    use crate::relations::fixtures;

    #[test]
    fn kummer_certificate() {
        let k = fixtures::kummer();
        let f = ConstField::rationals();
        let s = k.ideal().space();
        let xx = MultiPoly::x(s, &f, 1, 1);
        let q = LocalizedPoly::from_poly(&xx.pow(3) - &(&xx * &MultiPoly::constant(s, RatFunc::x(&f))));
        let cert = constructive_certificate(&q, &k, 7).unwrap();
        assert_eq!(cert.n0, 2);
        assert_eq!(cert.gs.len(), 3);
        assert_eq!(cert.k_indices.len(), 1);
        assert!(!cert.f.is_zero());
        assert_eq!(cert.expand(), q.pow(2));
        assert!(cert.check(&k).is_ok());
        assert_eq!(constructive_certificate(&q, &k, 7).unwrap(), cert);
    }

    #[test]
    fn invariant_short_circuit() {
        let k = fixtures::kummer();
        let f = ConstField::rationals();
        let s = k.ideal().space();
        let q = LocalizedPoly::from_poly(&MultiPoly::x(s, &f, 1, 1).pow(2) - &MultiPoly::constant(s, RatFunc::x(&f)));
        let cert = constructive_certificate(&q, &k, 0).unwrap();
        assert_eq!(cert.n0, 2);
        assert_eq!(cert.terms.len(), 1);
        assert_eq!(cert.terms[0].coeff, q);

        let t = fixtures::torus();
        let ts = t.ideal().space();
        let tf = t.ideal().field().clone();
        let q = LocalizedPoly::from_poly(&wronskian(ts, &tf) - &MultiPoly::one(ts, &tf));
        let cert = constructive_certificate(&q, &t, 0).unwrap();
        assert_eq!(cert.n0, 1);
        assert!(cert.k_indices.is_empty());
    }

    #[test]
    fn torus_certificate_for_a_non_invariant() {
        let t = fixtures::torus();
        let ts = t.ideal().space();
        let tf = t.ideal().field().clone();
        let q = LocalizedPoly::from_poly(MultiPoly::x(ts, &tf, 1, 2));
        let cert = constructive_certificate(&q, &t, 3).unwrap();
        assert_eq!(cert.n0, 1);
        assert_eq!(cert.k_indices, vec![2]);
        assert!(cert.check(&t).is_ok());
    }

    #[test]
    fn rejects_non_members_and_tampering() {
        let k = fixtures::kummer();
        let f = ConstField::rationals();
        let s = k.ideal().space();
        let xx = LocalizedPoly::from_poly(MultiPoly::x(s, &f, 1, 1));
        assert!(matches!(constructive_certificate(&xx, &k, 0), Err(Error::Precondition(_))));

        let q = LocalizedPoly::from_poly(&MultiPoly::x(s, &f, 1, 1).pow(2) - &MultiPoly::constant(s, RatFunc::x(&f)));
        let mut cert = constructive_certificate(&q, &k, 0).unwrap();
        cert.terms[0].coeff = cert.terms[0].coeff.add(&LocalizedPoly::one(s, &f));
        assert!(matches!(cert.check(&k), Err(Error::Unsound(_))));
    }
}
