//! The field of constants `C = Q[theta]/(m(theta))`.
//!
//! Elements are stored in the power basis `1, theta, ..., theta^(d-1)` and every
//! element keeps a handle on its field so arithmetic needs no outside context.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

const MAX_DEGREE: usize = 4;

#[derive(Debug)]
struct FieldInner {
    /// Monic minimal polynomial, lowest degree first.
    minpoly: Vec<BigRational>,
}

/// Descriptor of a simple algebraic extension of the rationals.
#[derive(Clone, Debug)]
pub struct ConstField(Arc<FieldInner>);

impl PartialEq for ConstField {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0.minpoly == other.0.minpoly
    }
}

impl Eq for ConstField {}

impl ConstField {
    /// Builds `Q[theta]/(m)` from the coefficients of `m`, lowest degree first.
    ///
    /// `m` must be monic of degree 1..=4 and irreducible over the rationals.
    pub fn new(minpoly: Vec<BigRational>) -> Result<Self> {
        let mut minpoly = minpoly;
        while minpoly.last().is_some_and(|c| c.is_zero()) {
            minpoly.pop();
        }
        if minpoly.len() < 2 || !minpoly.last().unwrap().is_one() {
            return Err(Error::NotMonic);
        }
        let degree = minpoly.len() - 1;
        if degree > MAX_DEGREE {
            return Err(Error::MinpolyDegree(degree));
        }
        if !is_irreducible(&minpoly) {
            return Err(Error::ReducibleMinpoly);
        }
        Ok(ConstField(Arc::new(FieldInner { minpoly })))
    }

    /// The rationals, `m(theta) = theta`.
    pub fn rationals() -> Self {
        ConstField(Arc::new(FieldInner {
            minpoly: vec![BigRational::zero(), BigRational::one()],
        }))
    }

    /// `Q(i)`, `m(theta) = theta^2 + 1`.
    pub fn gaussian() -> Self {
        Self::new(vec![BigRational::one(), BigRational::zero(), BigRational::one()])
            .expect("theta^2 + 1 is irreducible")
    }

    pub fn degree(&self) -> usize {
        self.0.minpoly.len() - 1
    }

    pub fn minpoly(&self) -> &[BigRational] {
        &self.0.minpoly
    }

    pub fn zero(&self) -> ConstElem {
        ConstElem {
            field: self.clone(),
            coeffs: vec![BigRational::zero(); self.degree()],
        }
    }

    pub fn one(&self) -> ConstElem {
        self.from_rational(BigRational::one())
    }

    pub fn from_int(&self, n: i64) -> ConstElem {
        self.from_rational(BigRational::from_integer(n.into()))
    }

    pub fn from_rational(&self, q: BigRational) -> ConstElem {
        let mut e = self.zero();
        e.coeffs[0] = q;
        e
    }

    /// The generator `theta`; equals the rational root when the degree is one.
    pub fn theta(&self) -> ConstElem {
        if self.degree() == 1 {
            return self.from_rational(-self.0.minpoly[0].clone());
        }
        let mut e = self.zero();
        e.coeffs[1] = BigRational::one();
        e
    }

    /// Element from power-basis coefficients; higher powers are reduced.
    pub fn elem(&self, coeffs: &[BigRational]) -> ConstElem {
        let mut e = self.zero();
        let mut power = self.one();
        let theta = self.theta();
        for c in coeffs {
            if !c.is_zero() {
                e = &e + &power.scale(c);
            }
            power = &power * &theta;
        }
        e
    }
}

/// Element of the constants field.
#[derive(Clone, Debug)]
pub struct ConstElem {
    field: ConstField,
    coeffs: Vec<BigRational>,
}

impl PartialEq for ConstElem {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs && self.field == other.field
    }
}

impl Eq for ConstElem {}

impl ConstElem {
    pub fn field(&self) -> &ConstField {
        &self.field
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.coeffs[0].is_one() && self.coeffs[1..].iter().all(Zero::is_zero)
    }

    /// The rational value if the element lies in `Q`.
    pub fn as_rational(&self) -> Option<&BigRational> {
        self.coeffs[1..]
            .iter()
            .all(Zero::is_zero)
            .then_some(&self.coeffs[0])
    }

    pub fn scale(&self, q: &BigRational) -> ConstElem {
        ConstElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| c * q).collect(),
        }
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self) -> Option<ConstElem> {
        if self.is_zero() {
            return None;
        }
        let d = self.coeffs.len();
        if d == 1 {
            return Some(self.field.from_rational(self.coeffs[0].recip()));
        }
        // Solve (multiplication-by-self) * s = e_0 over Q.
        let theta = self.field.theta();
        let mut columns = Vec::with_capacity(d);
        let mut basis = self.field.one();
        for _ in 0..d {
            columns.push((self * &basis).coeffs);
            basis = &basis * &theta;
        }
        let mut rows: Vec<Vec<BigRational>> = (0..d)
            .map(|r| {
                let mut row: Vec<BigRational> = columns.iter().map(|c| c[r].clone()).collect();
                row.push(if r == 0 { BigRational::one() } else { BigRational::zero() });
                row
            })
            .collect();
        solve_in_place(&mut rows, d).map(|coeffs| ConstElem {
            field: self.field.clone(),
            coeffs,
        })
    }

    pub fn pow(&self, exp: i64) -> Option<ConstElem> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = self.field.one();
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            sq = &sq * &sq;
            e >>= 1;
        }
        Some(acc)
    }

    fn check_field(&self, other: &ConstElem) {
        assert!(self.field == other.field, "mixing elements of different constant fields");
    }
}

fn solve_in_place(rows: &mut [Vec<BigRational>], d: usize) -> Option<Vec<BigRational>> {
    for col in 0..d {
        let pivot = (col..d).find(|&r| !rows[r][col].is_zero())?;
        rows.swap(col, pivot);
        let inv = rows[col][col].recip();
        for v in rows[col].iter_mut() {
            *v = &*v * &inv;
        }
        for r in 0..d {
            if r != col && !rows[r][col].is_zero() {
                let f = rows[r][col].clone();
                let pivot = rows[col].clone();
                for (v, p) in rows[r].iter_mut().zip(&pivot).skip(col) {
                    *v -= &f * p;
                }
            }
        }
    }
    Some(rows.iter().map(|r| r[d].clone()).collect())
}

impl Add for &ConstElem {
    type Output = ConstElem;
    fn add(self, rhs: &ConstElem) -> ConstElem {
        self.check_field(rhs);
        ConstElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a + b).collect(),
        }
    }
}

impl Sub for &ConstElem {
    type Output = ConstElem;
    fn sub(self, rhs: &ConstElem) -> ConstElem {
        self.check_field(rhs);
        ConstElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().zip(&rhs.coeffs).map(|(a, b)| a - b).collect(),
        }
    }
}

impl Mul for &ConstElem {
    type Output = ConstElem;
    fn mul(self, rhs: &ConstElem) -> ConstElem {
        self.check_field(rhs);
        let d = self.coeffs.len();
        if d == 1 {
            return ConstElem {
                field: self.field.clone(),
                coeffs: vec![&self.coeffs[0] * &rhs.coeffs[0]],
            };
        }
        let mut prod = vec![BigRational::zero(); 2 * d - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    prod[i + j] += a * b;
                }
            }
        }
        let m = self.field.minpoly();
        for k in (d..prod.len()).rev() {
            let c = std::mem::take(&mut prod[k]);
            if c.is_zero() {
                continue;
            }
            for (i, mi) in m.iter().enumerate().take(d) {
                prod[k - d + i] -= &c * mi;
            }
        }
        prod.truncate(d);
        ConstElem {
            field: self.field.clone(),
            coeffs: prod,
        }
    }
}

impl Neg for &ConstElem {
    type Output = ConstElem;
    fn neg(self) -> ConstElem {
        ConstElem {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($ty:ty, $($tr:ident $m:ident),*) => {$(
        impl $tr for $ty {
            type Output = $ty;
            fn $m(self, rhs: $ty) -> $ty { (&self).$m(&rhs) }
        }
        impl $tr<&$ty> for $ty {
            type Output = $ty;
            fn $m(self, rhs: &$ty) -> $ty { (&self).$m(rhs) }
        }
    )*};
}
pub(crate) use forward_owned;

forward_owned!(ConstElem, Add add, Sub sub, Mul mul);

impl Neg for ConstElem {
    type Output = ConstElem;
    fn neg(self) -> ConstElem {
        -&self
    }
}

impl fmt::Display for ConstElem {
    /// Renders in the expression grammar, e.g. `3/2*theta^2 - theta + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<(bool, String)> = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let negative = c.is_negative();
            let a = c.abs();
            let body = match k {
                0 => a.to_string(),
                _ => {
                    let t = if k == 1 { "theta".to_string() } else { format!("theta^{k}") };
                    if a.is_one() { t } else { format!("{a}*{t}") }
                }
            };
            parts.push((negative, body));
        }
        write_signed_sum(f, &parts)
    }
}

/// Writes `a - b + c` from (negative, magnitude) parts; empty means zero.
pub(crate) fn write_signed_sum(f: &mut fmt::Formatter<'_>, parts: &[(bool, String)]) -> fmt::Result {
    if parts.is_empty() {
        return write!(f, "0");
    }
    for (i, (neg, body)) in parts.iter().enumerate() {
        match (i, neg) {
            (0, true) => write!(f, "-{body}")?,
            (0, false) => write!(f, "{body}")?,
            (_, true) => write!(f, " - {body}")?,
            (_, false) => write!(f, " + {body}")?,
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// Irreducibility over Q for degree <= 4
// ---------------------------------------------------------------------------

/// Integer monic polynomial with the same splitting behaviour as `m`,
/// obtained by the substitution `theta = y / D`.
fn integral_monic(m: &[BigRational]) -> Vec<BigInt> {
    let d = m.len() - 1;
    let den = m.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
    (0..=d)
        .map(|k| {
            let scaled = &m[k] * BigRational::from_integer(num_traits::pow(den.clone(), d - k));
            debug_assert!(scaled.is_integer());
            scaled.to_integer()
        })
        .collect()
}

fn eval_int(p: &[BigInt], x: &BigInt) -> BigInt {
    p.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
}

fn positive_divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut k = BigInt::one();
    while &k * &k <= n {
        if (&n % &k).is_zero() {
            small.push(k.clone());
            let q = &n / &k;
            if q != k {
                large.push(q);
            }
        }
        k += 1;
    }
    small.extend(large.into_iter().rev());
    small
}

fn has_integer_root(p: &[BigInt]) -> bool {
    if p[0].is_zero() {
        return true;
    }
    positive_divisors(&p[0])
        .iter()
        .any(|r| eval_int(p, r).is_zero() || eval_int(p, &-r).is_zero())
}

fn is_square(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Does the monic integer quartic split as a product of two monic integer quadratics?
fn has_quadratic_factor(p: &[BigInt]) -> bool {
    let (e, p1, p2, s) = (&p[0], &p[1], &p[2], &p[3]);
    for b in positive_divisors(e) {
        for b in [b.clone(), -b] {
            let d = e / &b;
            if d != b {
                let num = p1 - s * &b;
                let den = &d - &b;
                if !(&num % &den).is_zero() {
                    continue;
                }
                let a = num / den;
                let c = s - &a;
                if &b + &d + &a * &c == *p2 {
                    return true;
                }
            } else {
                if *p1 != s * &b {
                    continue;
                }
                // a + c = s, a*c = p2 - 2b
                let disc = s * s - BigInt::from(4) * (p2 - BigInt::from(2) * &b);
                if let Some(r) = is_square(&disc) {
                    if ((s + &r) % BigInt::from(2)).is_zero() {
                        return true;
                    }
                }
            }
        }
    }
    false
}

fn is_irreducible(m: &[BigRational]) -> bool {
    let p = integral_monic(m);
    match p.len() - 1 {
        1 => true,
        2 | 3 => !has_integer_root(&p),
        4 => !has_integer_root(&p) && !has_quadratic_factor(&p),
        _ => false,
    }
}

/// Small rational helper used by parsers and tests.
pub fn rational(n: i64, d: i64) -> BigRational {
    BigRational::new(n.into(), d.into())
}


#[cfg(test)]
mod tests {
    use super::*;

    fn qs(v: &[i64]) -> Vec<BigRational> {
        v.iter().map(|&n| rational(n, 1)).collect()
    }

    #[test]
    fn degree_one_is_the_rationals() {
        let f = ConstField::new(qs(&[0, 1])).unwrap();
        assert_eq!(f.degree(), 1);
        let a = f.from_rational(rational(3, 4));
        assert_eq!(&a * &a.inv().unwrap(), f.one());
    }

    #[test]
    fn gaussian_defining_relation() {
        let f = ConstField::new(qs(&[1, 0, 1])).unwrap();
        let t = f.theta();
        assert_eq!(&t * &t, f.from_int(-1));
        assert_eq!(t.to_string(), "theta");
    }

    #[test]
    fn reducible_and_oversized_rejected() {
        assert_eq!(ConstField::new(qs(&[-1, 0, 1])).unwrap_err(), Error::ReducibleMinpoly);
        assert_eq!(ConstField::new(qs(&[1, 0, 0, 0, 0, 1])).unwrap_err(), Error::MinpolyDegree(5));
        assert_eq!(ConstField::new(qs(&[1, 2])).unwrap_err(), Error::NotMonic);
        // (t^2 + 1)(t^2 + 2) has no rational roots but splits into quadratics
        assert_eq!(ConstField::new(qs(&[2, 0, 3, 0, 1])).unwrap_err(), Error::ReducibleMinpoly);
        // (t^2 + t + 1)(t^2 - t + 1) = t^4 + t^2 + 1
        assert_eq!(ConstField::new(qs(&[1, 0, 1, 0, 1])).unwrap_err(), Error::ReducibleMinpoly);
        // t^3 - 2/8 = (t^3 - 1/4): irreducible; t^3 - 1/8 = (t - 1/2)(...)
        assert!(ConstField::new(vec![rational(-1, 4), rational(0, 1), rational(0, 1), rational(1, 1)]).is_ok());
        assert_eq!(
            ConstField::new(vec![rational(-1, 8), rational(0, 1), rational(0, 1), rational(1, 1)]).unwrap_err(),
            Error::ReducibleMinpoly
        );
    }

    #[test]
    fn irreducible_quartics_accepted() {
        assert!(ConstField::new(qs(&[2, 0, 0, 0, 1])).is_ok()); // t^4 + 2
        assert!(ConstField::new(qs(&[1, 1, 1, 1, 1])).is_ok()); // 5th cyclotomic
        assert!(ConstField::new(qs(&[-2, 0, 0, 1])).is_ok()); // t^3 - 2
    }

    #[test]
    fn inverse_in_quartic_field() {
        let f = ConstField::new(qs(&[2, 0, 0, 0, 1])).unwrap();
        let a = f.elem(&qs(&[1, 2, 0, -3]));
        assert_eq!(&a * &a.inv().unwrap(), f.one());
        assert!(f.zero().inv().is_none());
    }

    #[test]
    fn display_mixed_signs() {
        let f = ConstField::gaussian();
        let a = f.elem(&[rational(1, 1), rational(-3, 2)]);
        assert_eq!(a.to_string(), "-3/2*theta + 1");
    }
}
