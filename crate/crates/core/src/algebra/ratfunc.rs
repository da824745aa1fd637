use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use super::constants::{forward_owned, ConstElem, ConstField};
use super::unipoly::UniPoly;
use crate::error::{Error, Result};

/// Element of `K = C(x)` in canonical form: monic denominator, coprime parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RatFunc {
    num: UniPoly,
    den: UniPoly,
}

impl RatFunc {
    /// Reduces `num / den` to canonical form.
    pub fn new(num: UniPoly, den: UniPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(num, den))
    }

    fn reduce(num: UniPoly, den: UniPoly) -> Self {
        if num.is_zero() {
            let field = den.field().clone();
            return RatFunc::zero(&field);
        }
        if den.degree() == Some(0) {
            let inv = den.coeffs()[0].inv().unwrap();
            let field = den.field().clone();
            return RatFunc {
                num: num.scale(&inv),
                den: UniPoly::one(&field),
            };
        }
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num.div_rem(&g).0, den.div_rem(&g).0)
        };
        let lc = den.leading().unwrap().clone();
        if !lc.is_one() {
            let inv = lc.inv().unwrap();
            num = num.scale(&inv);
            den = den.scale(&inv);
        }
        RatFunc { num, den }
    }

    pub fn zero(field: &ConstField) -> Self {
        RatFunc {
            num: UniPoly::zero(field),
            den: UniPoly::one(field),
        }
    }

    pub fn one(field: &ConstField) -> Self {
        Self::from_const(field.one())
    }

    pub fn from_int(field: &ConstField, n: i64) -> Self {
        Self::from_const(field.from_int(n))
    }

    pub fn from_const(c: ConstElem) -> Self {
        let field = c.field().clone();
        RatFunc {
            num: UniPoly::constant(c),
            den: UniPoly::one(&field),
        }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        let field = p.field().clone();
        RatFunc {
            num: p,
            den: UniPoly::one(&field),
        }
    }

    pub fn x(field: &ConstField) -> Self {
        Self::from_poly(UniPoly::x(field))
    }

    pub fn field(&self) -> &ConstField {
        self.den.field()
    }

    pub fn numer(&self) -> &UniPoly {
        &self.num
    }

    pub fn denom(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    /// The value as a constant, if the x-degree is zero.
    pub fn as_const(&self) -> Option<ConstElem> {
        if self.den.is_one() {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &ConstElem) -> RatFunc {
        if c.is_zero() {
            return RatFunc::zero(self.field());
        }
        RatFunc {
            num: self.num.scale(c),
            den: self.den.clone(),
        }
    }

    pub fn inv(&self) -> Result<RatFunc> {
        if self.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(Self::reduce(self.den.clone(), self.num.clone()))
    }

    pub fn checked_div(&self, rhs: &RatFunc) -> Result<RatFunc> {
        Ok(self * &rhs.inv()?)
    }

    pub fn pow(&self, exp: i64) -> Result<RatFunc> {
        let base = if exp < 0 { self.inv()? } else { self.clone() };
        let mut e = exp.unsigned_abs();
        let mut acc = RatFunc::one(self.field());
        let mut sq = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &sq;
            }
            e >>= 1;
            if e > 0 {
                sq = &sq * &sq;
            }
        }
        Ok(acc)
    }

    /// `d/dx` via the quotient rule.
    pub fn derivative(&self) -> RatFunc {
        if self.den.is_one() {
            return RatFunc::from_poly(self.num.derivative());
        }
        let top = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Self::reduce(top, &self.den * &self.den)
    }

    /// `f(x + step)`; canonical form is preserved by the substitution.
    pub fn shift(&self, step: i64) -> RatFunc {
        let den = self.den.shift(step);
        RatFunc {
            num: self.num.shift(step),
            den,
        }
    }
}

impl Add for &RatFunc {
    type Output = RatFunc;
    fn add(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() {
            return rhs.clone();
        }
        if rhs.is_zero() {
            return self.clone();
        }
        if self.den == rhs.den {
            if self.den.is_one() {
                return RatFunc::from_poly(&self.num + &rhs.num);
            }
            return RatFunc::reduce(&self.num + &rhs.num, self.den.clone());
        }
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        RatFunc::reduce(num, &self.den * &rhs.den)
    }
}

impl Neg for &RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        RatFunc {
            num: -&self.num,
            den: self.den.clone(),
        }
    }
}

impl Sub for &RatFunc {
    type Output = RatFunc;
    fn sub(self, rhs: &RatFunc) -> RatFunc {
        self + &(-rhs)
    }
}

impl Mul for &RatFunc {
    type Output = RatFunc;
    fn mul(self, rhs: &RatFunc) -> RatFunc {
        if self.is_zero() || rhs.is_zero() {
            return RatFunc::zero(self.field());
        }
        if self.den.is_one() && rhs.den.is_one() {
            return RatFunc::from_poly(&self.num * &rhs.num);
        }
        // Cross-cancel before multiplying to keep intermediate degrees down.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let a = self.num.div_rem(&g1).0;
        let d = rhs.den.div_rem(&g1).0;
        let c = rhs.num.div_rem(&g2).0;
        let b = self.den.div_rem(&g2).0;
        RatFunc::reduce(&a * &c, &b * &d)
    }
}

impl Div for &RatFunc {
    type Output = RatFunc;
    /// Panics on division by zero; use [`RatFunc::checked_div`] for a `Result`.
    fn div(self, rhs: &RatFunc) -> RatFunc {
        self.checked_div(rhs).expect("division by zero in K")
    }
}

forward_owned!(RatFunc, Add add, Sub sub, Mul mul, Div div);

impl Neg for RatFunc {
    type Output = RatFunc;
    fn neg(self) -> RatFunc {
        -&self
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            return write!(f, "{}", self.num);
        }
        let num = self.num.to_string();
        let den = self.den.to_string();
        let atom = |s: &str| !s.contains(' ') && !s.contains('/') && !s.starts_with('-');
        match (atom(&num), atom(&den)) {
            (true, true) => write!(f, "{num}/{den}"),
            (true, false) => write!(f, "{num}/({den})"),
            (false, true) => write!(f, "({num})/{den}"),
            (false, false) => write!(f, "({num})/({den})"),
        }
    }
}

/// The operator `v` acting on `K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum OperatorKind {
    /// `v = d/dx`
    Derivation,
    /// `v(x) = x + 1`
    Shift,
}

impl OperatorKind {
    pub fn name(self) -> &'static str {
        match self {
            OperatorKind::Derivation => "derivation",
            OperatorKind::Shift => "shift",
        }
    }
}

/// Applies `v` to an element of `K`.
pub fn apply_v(f: &RatFunc, kind: OperatorKind) -> RatFunc {
    match kind {
        OperatorKind::Derivation => f.derivative(),
        OperatorKind::Shift => f.shift(1),
    }
}

/// Inverse of the shift automorphism, `x -> x - 1`.
pub fn apply_v_inverse_shift(f: &RatFunc) -> RatFunc {
    f.shift(-1)
}

/// `v(f) = 0` for a derivation, `v(f) = f` for the shift.
pub fn is_constant(f: &RatFunc, kind: OperatorKind) -> bool {
    let vf = apply_v(f, kind);
    match kind {
        OperatorKind::Derivation => vf.is_zero(),
        OperatorKind::Shift => vf == *f,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::constants::rational;

    fn x(f: &ConstField) -> RatFunc {
        RatFunc::x(f)
    }

    #[test]
    fn arithmetic_examples() {
        let f = ConstField::rationals();
        let inv_x = x(&f).inv().unwrap();
        assert_eq!(&inv_x + &inv_x, RatFunc::from_int(&f, 2) * &inv_x);
        assert_eq!((&inv_x + &inv_x).to_string(), "2/x");
        let one = RatFunc::one(&f);
        let a = &(&x(&f) * &x(&f)) - &one;
        let b = &x(&f) - &one;
        assert_eq!(&a / &b, &x(&f) + &one);
        assert_eq!(inv_x.checked_div(&RatFunc::zero(&f)), Err(Error::DivisionByZero));
    }

    #[test]
    fn operator_examples() {
        let f = ConstField::rationals();
        let xx = &x(&f) * &x(&f);
        assert_eq!(apply_v(&xx, OperatorKind::Derivation), RatFunc::from_int(&f, 2) * x(&f));
        let inv_x = x(&f).inv().unwrap();
        assert_eq!(apply_v(&inv_x, OperatorKind::Derivation), -(xx.inv().unwrap()));
        let shifted = (&x(&f) + &RatFunc::one(&f)).inv().unwrap();
        assert_eq!(apply_v(&inv_x, OperatorKind::Shift), shifted);
    }

    #[test]
    fn constants_detected() {
        let q = ConstField::rationals();
        assert!(is_constant(&RatFunc::from_int(&q, 7), OperatorKind::Derivation));
        assert!(!is_constant(&x(&q), OperatorKind::Shift));
        let g = ConstField::gaussian();
        assert!(is_constant(&RatFunc::from_const(g.theta()), OperatorKind::Shift));
    }

    #[test]
    fn canonical_denominator_is_monic() {
        let f = ConstField::rationals();
        let den = UniPoly::new(&f, vec![f.from_int(4), f.from_int(2)]);
        let r = RatFunc::new(UniPoly::one(&f), den).unwrap();
        assert!(r.denom().leading().unwrap().is_one());
        assert_eq!(r.numer().coeffs()[0], f.from_rational(rational(1, 2)));
        assert_eq!(r.to_string(), "(1/2)/(x + 2)");
    }
}
