//! Shared test support: fixtures, seeded random inputs, and a brute-force
//! ideal membership oracle that uses plain linear algebra on coefficient
//! vectors instead of Gröbner bases.
#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use galrel::algebra::{ConstField, OperatorKind, RatFunc};
use galrel::cli::Problem;
use galrel::linalg::Matrix;
use galrel::poly::{Monomial, MultiPoly, VarSpace};
use galrel::pv::{GroupElement, LinearSystem};
use galrel::relations::PVContext;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(format!("{name}.gr"))
}

pub fn fixture_text(name: &str) -> String {
    std::fs::read_to_string(fixture_path(name)).expect("fixture exists")
}

pub fn problem(name: &str) -> Problem {
    Problem::parse(&fixture_text(name)).expect("fixture parses")
}

pub fn context(p: &Problem) -> PVContext {
    PVContext::new(p.system.clone(), p.ideal_presentation(), p.group.clone()).expect("fixture hypotheses hold")
}

pub const FIXTURES: [&str; 4] = ["kummer", "torus", "difference", "kummer_tampered"];

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small element of `K`: an integer, sometimes times `x` or over `x + 1`.
pub fn random_k(r: &mut ChaCha8Rng, f: &ConstField) -> RatFunc {
    let c = RatFunc::from_int(f, r.gen_range(-3..=3));
    match r.gen_range(0..6) {
        0 => &c * &RatFunc::x(f),
        1 => &c / &(&RatFunc::x(f) + &RatFunc::one(f)),
        _ => c,
    }
}

pub fn random_nonzero_k(r: &mut ChaCha8Rng, f: &ConstField) -> RatFunc {
    loop {
        let c = random_k(r, f);
        if !c.is_zero() {
            return c;
        }
    }
}

/// Random polynomial in the first `nvars` variables of `space`, with up to
/// `terms` terms of degree at most `deg`.
pub fn random_poly(r: &mut ChaCha8Rng, space: VarSpace, f: &ConstField, nvars: usize, deg: u32, terms: usize) -> MultiPoly {
    let mut p = MultiPoly::zero(space, f);
    for _ in 0..r.gen_range(1..=terms) {
        let mut e = vec![0u32; space.nvars()];
        let d = r.gen_range(0..=deg);
        for _ in 0..d {
            e[r.gen_range(0..nvars)] += 1;
        }
        p.add_term(Monomial(e), random_k(r, f));
    }
    p
}

pub fn random_system(r: &mut ChaCha8Rng, n: usize, kind: OperatorKind, f: &ConstField) -> LinearSystem {
    loop {
        let a = Matrix::from_fn(n, n, |_, _| random_k(r, f));
        if let Ok(s) = LinearSystem::new(kind, a) {
            return s;
        }
    }
}

pub fn random_group_element(r: &mut ChaCha8Rng, n: usize, f: &ConstField) -> GroupElement {
    loop {
        let m = Matrix::from_fn(n, n, |_, _| f.from_int(r.gen_range(-3..=3)));
        if let Ok(g) = GroupElement::new(m) {
            return g;
        }
    }
}

/// Exponent vectors in `nvars` variables of total degree at most `d`.
fn monomials_up_to(nvars: usize, d: u32) -> Vec<Vec<u32>> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pos == cur.len() {
            out.push(cur.clone());
            return;
        }
        for e in 0..=left {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

fn times_monomial(p: &MultiPoly, e: &[u32]) -> BTreeMap<Vec<u32>, RatFunc> {
    p.terms()
        .iter()
        .map(|(m, c)| (m.0.iter().zip(e).map(|(a, b)| a + b).collect(), c.clone()))
        .collect()
}

/// Is `rhs` in the column span of `cols`? Plain Gaussian elimination.
fn in_span(cols: &[BTreeMap<Vec<u32>, RatFunc>], rhs: &BTreeMap<Vec<u32>, RatFunc>, f: &ConstField) -> bool {
    let rows: Vec<Vec<u32>> = cols
        .iter()
        .chain(std::iter::once(rhs))
        .flat_map(|c| c.keys().cloned())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let zero = RatFunc::zero(f);
    // augmented matrix, one row per monomial
    let mut m: Vec<Vec<RatFunc>> = rows
        .iter()
        .map(|mono| {
            cols.iter()
                .chain(std::iter::once(rhs))
                .map(|c| c.get(mono).cloned().unwrap_or_else(|| zero.clone()))
                .collect()
        })
        .collect();
    let ncols = cols.len();
    let mut r = 0;
    for c in 0..ncols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else {
            continue;
        };
        m.swap(p, r);
        let inv = m[r][c].inv().unwrap();
        for v in m[r].iter_mut().skip(c) {
            *v = &*v * &inv;
        }
        let pivot = m[r].clone();
        for (i, row) in m.iter_mut().enumerate() {
            if i != r && !row[c].is_zero() {
                let factor = row[c].clone();
                for (v, p) in row.iter_mut().zip(&pivot).skip(c) {
                    *v = &*v - &(&factor * p);
                }
            }
        }
        r += 1;
    }
    m[r..].iter().all(|row| row[ncols].is_zero())
}

/// Searches for `p = sum h_i g_i` with every `h_i g_i` of degree at most
/// `bound`, with `h_i` in the first `nvars` variables. A `true` answer is a
/// proof of membership; `false` only rules out certificates up to `bound`.
pub fn bounded_membership(p: &MultiPoly, gens: &[MultiPoly], nvars: usize, bound: u32) -> bool {
    let f = p.field().clone();
    let total = p.space().nvars();
    let mut cols = Vec::new();
    for g in gens.iter().filter(|g| !g.is_zero()) {
        let dg = g.total_degree().unwrap();
        if dg > bound {
            continue;
        }
        for e in monomials_up_to(nvars, bound - dg) {
            let mut full = e.clone();
            full.resize(total, 0);
            cols.push(times_monomial(g, &full));
        }
    }
    let rhs: BTreeMap<Vec<u32>, RatFunc> = p.terms().iter().map(|(m, c)| (m.0.clone(), c.clone())).collect();
    if rhs.is_empty() {
        return true;
    }
    in_span(&cols, &rhs, &f)
}

/// Some `p^k` with `k <= max_power` passes [`bounded_membership`].
pub fn bounded_radical_membership(p: &MultiPoly, gens: &[MultiPoly], nvars: usize, max_power: u32, slack: u32) -> bool {
    (1..=max_power).any(|k| {
        let pk = p.pow(k);
        let bound = pk.total_degree().unwrap_or(0) + slack;
        bounded_membership(&pk, gens, nvars, bound)
    })
}

/// Prints the acceptance line and returns the verdict.
pub fn report(id: u32, name: &str, pass: bool, detail: &str) -> bool {
    println!("[{}] criterion {id:>2} {name}: {detail}", if pass { "PASS" } else { "FAIL" });
    pass
}
