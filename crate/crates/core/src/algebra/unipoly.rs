use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use super::constants::{forward_owned, write_signed_sum, ConstElem, ConstField};

/// Dense univariate polynomial in `x` over the constants field, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniPoly {
    field: ConstField,
    coeffs: Vec<ConstElem>,
}

impl UniPoly {
    pub fn new(field: &ConstField, mut coeffs: Vec<ConstElem>) -> Self {
        while coeffs.last().is_some_and(ConstElem::is_zero) {
            coeffs.pop();
        }
        UniPoly {
            field: field.clone(),
            coeffs,
        }
    }

    pub fn zero(field: &ConstField) -> Self {
        UniPoly {
            field: field.clone(),
            coeffs: Vec::new(),
        }
    }

    pub fn constant(c: ConstElem) -> Self {
        let field = c.field().clone();
        UniPoly::new(&field, vec![c])
    }

    pub fn one(field: &ConstField) -> Self {
        Self::constant(field.one())
    }

    /// The indeterminate `x`.
    pub fn x(field: &ConstField) -> Self {
        UniPoly::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> &ConstField {
        &self.field
    }

    pub fn coeffs(&self) -> &[ConstElem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0].is_one()
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ConstElem> {
        self.coeffs.last()
    }

    pub fn as_constant(&self) -> Option<ConstElem> {
        match self.coeffs.len() {
            0 => Some(self.field.zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn scale(&self, c: &ConstElem) -> UniPoly {
        if c.is_zero() {
            return UniPoly::zero(&self.field);
        }
        UniPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    pub fn monic(&self) -> UniPoly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if lc.is_one() => self.clone(),
            Some(lc) => self.scale(&lc.inv().expect("nonzero leading coefficient")),
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lc_inv = divisor.coeffs[dd].inv().unwrap();
        let mut rem = self.coeffs.clone();
        let Some(sd) = self.degree() else {
            return (UniPoly::zero(&self.field), UniPoly::zero(&self.field));
        };
        if sd < dd {
            return (UniPoly::zero(&self.field), self.clone());
        }
        let mut quot = vec![self.field.zero(); sd - dd + 1];
        for k in (dd..=sd).rev() {
            if rem[k].is_zero() {
                continue;
            }
            let q = &rem[k] * &lc_inv;
            for (i, c) in divisor.coeffs.iter().enumerate() {
                if !c.is_zero() {
                    rem[k - dd + i] = &rem[k - dd + i] - &(&q * c);
                }
            }
            quot[k - dd] = q;
        }
        rem.truncate(dd);
        (UniPoly::new(&self.field, quot), UniPoly::new(&self.field, rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> UniPoly {
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c.scale(&num_rational::BigRational::from_integer((k as i64).into())))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }

    /// `p(x + step)` by Horner evaluation at `x + step`.
    pub fn shift(&self, step: i64) -> UniPoly {
        let lin = UniPoly::new(&self.field, vec![self.field.from_int(step), self.field.one()]);
        let mut acc = UniPoly::zero(&self.field);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &lin) + &UniPoly::constant(c.clone());
        }
        acc
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) + rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let zero = self.field.zero();
        let coeffs = (0..n)
            .map(|i| self.coeffs.get(i).unwrap_or(&zero) - rhs.coeffs.get(i).unwrap_or(&zero))
            .collect();
        UniPoly::new(&self.field, coeffs)
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero(&self.field);
        }
        let mut coeffs = vec![self.field.zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    coeffs[i + j] = &coeffs[i + j] + &(a * b);
                }
            }
        }
        UniPoly::new(&self.field, coeffs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly {
            field: self.field.clone(),
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

forward_owned!(UniPoly, Add add, Sub sub, Mul mul);

/// True when a constant needs parentheses as a factor (`(theta + 1)*x`).
pub(crate) fn const_is_compound(c: &ConstElem) -> bool {
    c.coeffs().iter().filter(|q| !num_traits::Zero::is_zero(*q)).count() > 1
}

/// Whether the rendered constant starts with a minus sign and has a single term.
fn const_sign(c: &ConstElem) -> (bool, ConstElem) {
    if const_is_compound(c) {
        return (false, c.clone());
    }
    let negative = c
        .coeffs()
        .iter()
        .find(|q| !num_traits::Zero::is_zero(*q))
        .is_some_and(num_traits::Signed::is_negative);
    if negative { (true, -c) } else { (false, c.clone()) }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let (neg, mag) = const_sign(c);
            let var = match k {
                0 => String::new(),
                1 => "x".to_string(),
                _ => format!("x^{k}"),
            };
            let body = if var.is_empty() {
                if const_is_compound(&mag) { format!("({mag})") } else { mag.to_string() }
            } else if mag.is_one() {
                var
            } else if const_is_compound(&mag) {
                format!("({mag})*{var}")
            } else {
                format!("{mag}*{var}")
            };
            parts.push((neg, body));
        }
        write_signed_sum(f, &parts)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poly(f: &ConstField, c: &[i64]) -> UniPoly {
        UniPoly::new(f, c.iter().map(|&n| f.from_int(n)).collect())
    }

    #[test]
    fn gcd_of_difference_of_squares() {
        let f = ConstField::rationals();
        let a = poly(&f, &[-1, 0, 1]);
        let b = poly(&f, &[-1, 1]);
        assert_eq!(a.gcd(&b), b);
        let (q, r) = a.div_rem(&b);
        assert_eq!(q, poly(&f, &[1, 1]));
        assert!(r.is_zero());
    }

    #[test]
    fn shift_and_back() {
        let f = ConstField::rationals();
        let p = poly(&f, &[3, -2, 0, 5]);
        assert_eq!(p.shift(1).shift(-1), p);
        assert_eq!(poly(&f, &[0, 0, 1]).shift(1), poly(&f, &[1, 2, 1]));
    }

    #[test]
    fn display() {
        let f = ConstField::gaussian();
        let p = UniPoly::new(&f, vec![f.from_int(-1), f.zero(), &f.theta() + &f.one()]);
        assert_eq!(p.to_string(), "(theta + 1)*x^2 - 1");
        assert_eq!(poly(&f, &[0, -1]).to_string(), "-x");
    }
}
