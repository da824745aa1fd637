use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use crate::algebra::{ConstField, RatFunc};
use crate::error::{Error, Result};

use super::monomial::{Monomial, VarId, VarSpace};

/// Sparse polynomial over `K` in the variables of a [`VarSpace`].
///
/// Terms are keyed by exponent vector; no zero coefficient is ever stored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiPoly {
    space: VarSpace,
    field: ConstField,
    terms: BTreeMap<Monomial, RatFunc>,
}

/// Ring operation selector for [`poly_arith`].
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyOp {
    Add,
    Sub,
    Mul,
}

/// Checked ring arithmetic; fails when the operands live in different spaces.
pub fn poly_arith(a: &MultiPoly, b: &MultiPoly, op: PolyOp) -> Result<MultiPoly> {
    if a.space != b.space {
        return Err(Error::DimensionMismatch {
            expected: a.space.nvars(),
            found: b.space.nvars(),
        });
    }
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    Ok(match op {
        PolyOp::Add => a + b,
        PolyOp::Sub => a - b,
        PolyOp::Mul => a * b,
    })
}

impl MultiPoly {
    pub fn zero(space: VarSpace, field: &ConstField) -> Self {
        MultiPoly {
            space,
            field: field.clone(),
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(space: VarSpace, c: RatFunc) -> Self {
        let field = c.field().clone();
        Self::term(space, &field, Monomial::one(space.nvars()), c)
    }

    pub fn one(space: VarSpace, field: &ConstField) -> Self {
        Self::constant(space, RatFunc::one(field))
    }

    pub fn term(space: VarSpace, field: &ConstField, m: Monomial, c: RatFunc) -> Self {
        debug_assert_eq!(m.0.len(), space.nvars());
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MultiPoly {
            space,
            field: field.clone(),
            terms,
        }
    }

    /// The variable `v`; panics if `v` is outside the space.
    pub fn var(space: VarSpace, field: &ConstField, v: VarId) -> Self {
        let idx = space.index(v).expect("variable outside the ambient space");
        Self::term(space, field, Monomial::var(space.nvars(), idx), RatFunc::one(field))
    }

    /// `X[i][j]`, 1-based.
    pub fn x(space: VarSpace, field: &ConstField, i: usize, j: usize) -> Self {
        Self::var(space, field, VarId::Matrix { i, j })
    }

    pub fn from_terms(
        space: VarSpace,
        field: &ConstField,
        terms: impl IntoIterator<Item = (Monomial, RatFunc)>,
    ) -> Self {
        let mut p = Self::zero(space, field);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn field(&self) -> &ConstField {
        &self.field
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, RatFunc> {
        &self.terms
    }

    pub fn into_terms(self) -> BTreeMap<Monomial, RatFunc> {
        self.terms
    }

    pub fn nterms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: &Monomial) -> RatFunc {
        self.terms
            .get(m)
            .cloned()
            .unwrap_or_else(|| RatFunc::zero(&self.field))
    }

    /// The value in `K` if the polynomial has no variables.
    pub fn as_constant(&self) -> Option<RatFunc> {
        match self.terms.len() {
            0 => Some(RatFunc::zero(&self.field)),
            1 => {
                let (m, c) = self.terms.iter().next().unwrap();
                m.is_one().then(|| c.clone())
            }
            _ => None,
        }
    }

    /// Leading term under graded reverse lexicographic order.
    pub fn leading(&self) -> Option<(&Monomial, &RatFunc)> {
        self.terms.iter().next_back()
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(Monomial::degree).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let mut degs = self.terms.keys().map(Monomial::degree);
        match degs.next() {
            None => true,
            Some(d) => degs.all(|e| e == d),
        }
    }

    pub fn homogeneous_part(&self, d: u32) -> MultiPoly {
        MultiPoly {
            space: self.space,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.degree() == d)
                .map(|(m, c)| (m.clone(), c.clone()))
                .collect(),
        }
    }

    pub fn add_term(&mut self, m: Monomial, c: RatFunc) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = e.get() + &c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
        }
    }

    pub fn scale(&self, c: &RatFunc) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.space, &self.field);
        }
        self.map_coeffs(|a| a * c)
    }

    /// Applies `f` to every coefficient, dropping terms that become zero.
    pub fn map_coeffs(&self, f: impl Fn(&RatFunc) -> RatFunc) -> MultiPoly {
        MultiPoly {
            space: self.space,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .filter_map(|(m, c)| {
                    let v = f(c);
                    (!v.is_zero()).then(|| (m.clone(), v))
                })
                .collect(),
        }
    }

    pub fn mul_monomial(&self, m: &Monomial, c: &RatFunc) -> MultiPoly {
        if c.is_zero() {
            return MultiPoly::zero(self.space, &self.field);
        }
        MultiPoly {
            space: self.space,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, a)| (k.mul(m), a * c)).collect(),
        }
    }

    pub fn pow(&self, e: u32) -> MultiPoly {
        let mut acc = MultiPoly::one(self.space, &self.field);
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    pub fn partial_derivative(&self, idx: usize) -> MultiPoly {
        let mut out = MultiPoly::zero(self.space, &self.field);
        for (m, c) in &self.terms {
            let e = m.0[idx];
            if e == 0 {
                continue;
            }
            let mut dm = m.clone();
            dm.0[idx] -= 1;
            out.add_term(dm, c.scale(&self.field.from_int(e as i64)));
        }
        out
    }

    /// Does any term involve a variable with index `>= from`?
    pub fn involves_from(&self, from: usize) -> bool {
        self.terms.keys().any(|m| m.0[from..].iter().any(|&e| e > 0))
    }

    /// Re-embeds into `space`, which must extend this space by auxiliary
    /// variables appended at the end.
    pub fn lift(&self, space: VarSpace) -> MultiPoly {
        assert_eq!(space.n, self.space.n);
        assert!(space.naux >= self.space.naux);
        let extra = space.nvars() - self.space.nvars();
        MultiPoly {
            space,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| {
                    let mut e = m.0.clone();
                    e.extend(std::iter::repeat_n(0, extra));
                    (Monomial(e), c.clone())
                })
                .collect(),
        }
    }

    /// Drops trailing variables; `None` if a dropped variable occurs.
    pub fn project(&self, space: VarSpace) -> Option<MultiPoly> {
        let keep = space.nvars();
        if self.involves_from(keep) {
            return None;
        }
        Some(MultiPoly {
            space,
            field: self.field.clone(),
            terms: self
                .terms
                .iter()
                .map(|(m, c)| (Monomial(m.0[..keep].to_vec()), c.clone()))
                .collect(),
        })
    }

    /// Simultaneous substitution `v -> images[v]`. Variables without an image
    /// are left in place.
    pub fn substitute(&self, images: &BTreeMap<VarId, MultiPoly>) -> MultiPoly {
        let nv = self.space.nvars();
        let image_of: Vec<Option<&MultiPoly>> =
            (0..nv).map(|k| images.get(&self.space.var(k))).collect();
        let mut powers: Vec<Vec<MultiPoly>> = vec![Vec::new(); nv];
        let mut out = MultiPoly::zero(self.space, &self.field);
        for (m, c) in &self.terms {
            let mut rest = m.clone();
            let mut prod = MultiPoly::constant(self.space, c.clone());
            for (k, &e) in m.0.iter().enumerate() {
                let Some(img) = image_of[k] else { continue };
                if e == 0 {
                    continue;
                }
                rest.0[k] = 0;
                let cache = &mut powers[k];
                if cache.is_empty() {
                    cache.push(MultiPoly::one(self.space, &self.field));
                }
                while cache.len() <= e as usize {
                    let next = cache.last().unwrap() * img;
                    cache.push(next);
                }
                prod = &prod * &cache[e as usize];
            }
            for (pm, pc) in prod.terms {
                out.add_term(pm.mul(&rest), pc);
            }
        }
        out
    }

    fn check_compatible(&self, other: &MultiPoly) {
        assert_eq!(self.space, other.space, "polynomials over different variable spaces");
    }
}

/// Simultaneous substitution by polynomials of degree at most one.
pub fn substitute_linear(p: &MultiPoly, images: &BTreeMap<VarId, MultiPoly>) -> MultiPoly {
    debug_assert!(images.values().all(|q| q.total_degree().unwrap_or(0) <= 1));
    p.substitute(images)
}

impl Add for &MultiPoly {
    type Output = MultiPoly;
    fn add(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let (big, small) = if self.terms.len() >= rhs.terms.len() { (self, rhs) } else { (rhs, self) };
        let mut out = big.clone();
        for (m, c) in &small.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }
}

impl Neg for &MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        MultiPoly {
            space: self.space,
            field: self.field.clone(),
            terms: self.terms.iter().map(|(m, c)| (m.clone(), -c)).collect(),
        }
    }
}

impl Sub for &MultiPoly {
    type Output = MultiPoly;
    fn sub(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(m.clone(), -c);
        }
        out
    }
}

impl Mul for &MultiPoly {
    type Output = MultiPoly;
    fn mul(self, rhs: &MultiPoly) -> MultiPoly {
        self.check_compatible(rhs);
        let mut out = MultiPoly::zero(self.space, &self.field);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &rhs.terms {
                out.add_term(ma.mul(mb), ca * cb);
            }
        }
        out
    }
}

crate::algebra::constants::forward_owned!(MultiPoly, Add add, Sub sub, Mul mul);

impl Neg for MultiPoly {
    type Output = MultiPoly;
    fn neg(self) -> MultiPoly {
        -&self
    }
}

/// Renders a coefficient as a factor: bare when it is a single signed atom,
/// parenthesized otherwise. Returns (negative, rendered magnitude or None for 1).
pub(crate) fn coefficient_factor(c: &RatFunc) -> (bool, Option<String>) {
    let s = c.to_string();
    let (neg, mag) = match s.strip_prefix('-') {
        Some(rest) if !rest.contains(' ') => (true, rest.to_string()),
        _ => (false, s),
    };
    if mag == "1" {
        return (neg, None);
    }
    if mag.contains(' ') || mag.contains('/') && mag.contains('(') {
        (neg, Some(format!("({mag})")))
    } else {
        (neg, Some(mag))
    }
}

pub(crate) fn monomial_string(space: VarSpace, m: &Monomial) -> String {
    let mut parts = Vec::new();
    for (k, &e) in m.0.iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(space.var(k).to_string()),
            _ => parts.push(format!("{}^{e}", space.var(k))),
        }
    }
    parts.join("*")
}

impl fmt::Display for MultiPoly {
    /// Terms from the leading monomial down, in the expression grammar.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let (neg, factor) = coefficient_factor(c);
            let body = match (m.is_one(), factor) {
                (true, None) => "1".to_string(),
                (true, Some(s)) => s,
                (false, None) => monomial_string(self.space, m),
                (false, Some(s)) => format!("{s}*{}", monomial_string(self.space, m)),
            };
            parts.push((neg, body));
        }
        crate::algebra::constants::write_signed_sum(f, &parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn setup(n: usize) -> (VarSpace, ConstField) {
        (VarSpace::new(n), ConstField::rationals())
    }

    #[test]
    fn arithmetic_examples() {
        let (s, f) = setup(1);
        let x11 = MultiPoly::x(s, &f, 1, 1);
        let sq = &x11 * &x11;
        assert_eq!(sq.total_degree(), Some(2));
        let xk = MultiPoly::constant(s, RatFunc::x(&f));
        let prod = &(&x11 + &xk) * &(&x11 - &xk);
        assert_eq!(prod, &sq - &(&xk * &xk));
        assert!((&x11 + &(-&x11)).is_zero());
    }

    #[test]
    fn arity_mismatch_reported() {
        let f = ConstField::rationals();
        let a = MultiPoly::x(VarSpace::new(1), &f, 1, 1);
        let b = MultiPoly::x(VarSpace::new(2), &f, 1, 1);
        assert!(matches!(poly_arith(&a, &b, PolyOp::Add), Err(Error::DimensionMismatch { .. })));
    }

    #[test]
    fn substitution_examples() {
        let (s, f) = setup(1);
        let x = MultiPoly::x(s, &f, 1, 1);
        let two = RatFunc::from_int(&f, 2);
        let img = BTreeMap::from([(VarId::Matrix { i: 1, j: 1 }, x.scale(&two))]);
        assert_eq!(substitute_linear(&x, &img), x.scale(&two));

        let (s2, _) = setup(2);
        let v = |i, j| MultiPoly::x(s2, &f, i, j);
        let det = &(&v(1, 1) * &v(2, 2)) - &(&v(1, 2) * &v(2, 1));
        let transpose: BTreeMap<_, _> = [(1, 2), (2, 1)]
            .into_iter()
            .map(|(i, j)| (VarId::Matrix { i, j }, v(j, i)))
            .collect();
        assert_eq!(substitute_linear(&det, &transpose), det);

        let sq = &v(1, 1) * &v(1, 1);
        let img = BTreeMap::from([(VarId::Matrix { i: 1, j: 1 }, &v(1, 1) + &v(1, 2))]);
        let expected = &(&sq + &(&v(1, 1) * &v(1, 2)).scale(&two)) + &(&v(1, 2) * &v(1, 2));
        assert_eq!(substitute_linear(&sq, &img), expected);
    }

    #[test]
    fn display_in_grammar() {
        let (s, f) = setup(2);
        let v = |i, j| MultiPoly::x(s, &f, i, j);
        let p = &(&v(1, 1) * &v(2, 2)) - &(&v(1, 2) * &v(2, 1));
        assert_eq!(p.to_string(), "-X[1][2]*X[2][1] + X[1][1]*X[2][2]");
        let q = &(&v(1, 1) * &v(1, 1)).scale(&RatFunc::x(&f)) - &MultiPoly::one(s, &f);
        assert_eq!(q.to_string(), "x*X[1][1]^2 - 1");
    }
}
