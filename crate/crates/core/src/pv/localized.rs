use std::fmt;

use crate::algebra::{ConstField, RatFunc};
use crate::poly::{divide_exact, wronskian, MultiPoly, VarSpace};

/// `numerator / W^wexp` in `K[X, 1/W]`, with `W` not dividing the numerator
/// whenever `wexp > 0`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedPoly {
    num: MultiPoly,
    wexp: u32,
}

impl LocalizedPoly {
    /// Canonicalizes by cancelling powers of `W` from the numerator.
    pub fn new(num: MultiPoly, wexp: u32) -> Self {
        let mut num = num;
        let mut wexp = wexp;
        if num.is_zero() {
            wexp = 0;
        }
        if wexp > 0 {
            let w = wronskian(num.space(), num.field());
            while wexp > 0 {
                match divide_exact(&num, &w) {
                    Some(q) => {
                        num = q;
                        wexp -= 1;
                    }
                    None => break,
                }
            }
        }
        LocalizedPoly { num, wexp }
    }

    pub fn from_poly(num: MultiPoly) -> Self {
        LocalizedPoly { num, wexp: 0 }
    }

    pub fn zero(space: VarSpace, field: &ConstField) -> Self {
        Self::from_poly(MultiPoly::zero(space, field))
    }

    pub fn one(space: VarSpace, field: &ConstField) -> Self {
        Self::from_poly(MultiPoly::one(space, field))
    }

    pub fn constant(space: VarSpace, c: RatFunc) -> Self {
        Self::from_poly(MultiPoly::constant(space, c))
    }

    /// `W^e` for any integer `e`.
    pub fn w_power(space: VarSpace, field: &ConstField, e: i64) -> Self {
        let w = wronskian(space, field);
        if e >= 0 {
            Self::from_poly(w.pow(e as u32))
        } else {
            LocalizedPoly {
                num: MultiPoly::one(space, field),
                wexp: e.unsigned_abs() as u32,
            }
        }
    }

    pub fn numerator(&self) -> &MultiPoly {
        &self.num
    }

    pub fn wexp(&self) -> u32 {
        self.wexp
    }

    pub fn space(&self) -> VarSpace {
        self.num.space()
    }

    pub fn field(&self) -> &ConstField {
        self.num.field()
    }

    pub fn n(&self) -> usize {
        self.num.space().n
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    /// The numerator after rewriting over `W^k`, `k >= wexp`.
    pub fn numerator_over(&self, k: u32) -> MultiPoly {
        assert!(k >= self.wexp, "cannot lower the W-exponent");
        if k == self.wexp {
            return self.num.clone();
        }
        &self.num * &wronskian(self.space(), self.field()).pow(k - self.wexp)
    }

    /// The value in `K` if this is a constant.
    pub fn as_constant(&self) -> Option<RatFunc> {
        if self.wexp == 0 {
            self.num.as_constant()
        } else {
            None
        }
    }

    pub fn scale(&self, c: &RatFunc) -> Self {
        LocalizedPoly {
            num: self.num.scale(c),
            wexp: if c.is_zero() { 0 } else { self.wexp },
        }
    }

    pub fn pow(&self, e: u32) -> Self {
        Self::new(self.num.pow(e), self.wexp * e)
    }

    pub fn add(&self, o: &Self) -> Self {
        let k = self.wexp.max(o.wexp);
        Self::new(&self.numerator_over(k) + &o.numerator_over(k), k)
    }

    pub fn sub(&self, o: &Self) -> Self {
        let k = self.wexp.max(o.wexp);
        Self::new(&self.numerator_over(k) - &o.numerator_over(k), k)
    }

    pub fn mul(&self, o: &Self) -> Self {
        Self::new(&self.num * &o.num, self.wexp + o.wexp)
    }

    pub fn neg(&self) -> Self {
        LocalizedPoly {
            num: -&self.num,
            wexp: self.wexp,
        }
    }
}

impl fmt::Display for LocalizedPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.wexp == 0 {
            return write!(f, "{}", self.num);
        }
        let wpart = format!("W^-{}", self.wexp);
        if self.num.as_constant().is_some_and(|c| c.is_one()) {
            return write!(f, "{wpart}");
        }
        write!(f, "({})*{wpart}", self.num)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cancels_wronskian_powers() {
        let f = ConstField::rationals();
        let s = VarSpace::new(2);
        let w = wronskian(s, &f);
        let x11 = MultiPoly::x(s, &f, 1, 1);
        let p = LocalizedPoly::new(&w * &x11, 2);
        assert_eq!(p.wexp(), 1);
        assert_eq!(p.numerator(), &x11);
        let q = LocalizedPoly::new(w.pow(3), 1);
        assert_eq!(q, LocalizedPoly::w_power(s, &f, 2));
    }

    #[test]
    fn arithmetic_over_common_denominator() {
        let f = ConstField::rationals();
        let s = VarSpace::new(1);
        let winv = LocalizedPoly::w_power(s, &f, -1);
        let w = LocalizedPoly::w_power(s, &f, 1);
        assert_eq!(winv.mul(&w), LocalizedPoly::one(s, &f));
        let sum = winv.add(&w);
        assert_eq!(sum.wexp(), 1);
        assert_eq!(sum.sub(&w), winv);
        assert_eq!(winv.to_string(), "W^-1");
        assert_eq!(sum.to_string(), "(X[1][1]^2 + 1)*W^-1");
    }
}
