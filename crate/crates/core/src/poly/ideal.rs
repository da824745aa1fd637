//! Ideal-theoretic queries built on the Gröbner engine.

use crate::algebra::RatFunc;

use super::groebner::{buchberger, GroebnerBasis, MonomialOrder};
use super::multipoly::MultiPoly;

pub fn normal_form(p: &MultiPoly, basis: &GroebnerBasis) -> MultiPoly {
    basis.normal_form(p)
}

pub fn ideal_membership(p: &MultiPoly, basis: &GroebnerBasis) -> bool {
    basis.contains(p)
}

/// Is `q` in the radical of `<gens>`? Adjoins an auxiliary `t` and tests
/// whether `gens + {1 - t*q}` generate the unit ideal.
pub fn radical_membership(q: &MultiPoly, gens: &[MultiPoly]) -> bool {
    let space = q.space().with_aux(1);
    let field = q.field();
    let t = MultiPoly::var(space, field, super::VarId::Aux(space.naux - 1));
    let mut lifted: Vec<MultiPoly> = gens.iter().map(|g| g.lift(space)).collect();
    lifted.push(&MultiPoly::one(space, field) - &(&t * &q.lift(space)));
    buchberger(&lifted, MonomialOrder::Grevlex).is_unit()
}

/// Generators of the saturation `<gens> : s^infinity`, computed by
/// eliminating an auxiliary `u` from `gens + {1 - u*s}`.
///
/// The result is the reduced grevlex basis of the saturation.
pub fn saturate_by(gens: &[MultiPoly], s: &MultiPoly) -> Vec<MultiPoly> {
    assert!(!s.is_zero(), "saturation by zero");
    let base = s.space();
    let space = base.with_aux(1);
    let field = s.field();
    let u = MultiPoly::var(space, field, super::VarId::Aux(space.naux - 1));
    let mut lifted: Vec<MultiPoly> = gens.iter().map(|g| g.lift(space)).collect();
    lifted.push(&MultiPoly::one(space, field) - &(&u * &s.lift(space)));
    let elim = buchberger(&lifted, MonomialOrder::EliminateLast(1));
    let kept: Vec<MultiPoly> = elim.gens().iter().filter_map(|g| g.project(base)).collect();
    if kept.is_empty() {
        return Vec::new();
    }
    buchberger(&kept, MonomialOrder::Grevlex).gens().to_vec()
}

/// Grevlex basis of `<gens>` in the space of `gens[0]`; an empty list yields
/// the zero ideal in `space`.
pub fn basis_of(gens: &[MultiPoly], space: super::VarSpace, field: &crate::algebra::ConstField) -> GroebnerBasis {
    if gens.is_empty() {
        return buchberger(&[MultiPoly::zero(space, field)], MonomialOrder::Grevlex);
    }
    buchberger(gens, MonomialOrder::Grevlex)
}

/// `p` with leading coefficient one (zero stays zero).
pub fn monic(p: &MultiPoly) -> MultiPoly {
    match p.leading() {
        Some((_, c)) if !c.is_one() => p.scale(&c.inv().unwrap()),
        _ => p.clone(),
    }
}

/// Ratio `a / b` if `a` is a `K`-multiple of `b` (both nonzero).
pub fn proportional(a: &MultiPoly, b: &MultiPoly) -> Option<RatFunc> {
    let (mb, cb) = b.leading()?;
    let ca = a.terms().get(mb)?;
    let ratio = ca / cb;
    (b.scale(&ratio) == *a).then_some(ratio)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ConstField;
    use crate::poly::VarSpace;

    fn setup(n: usize) -> (VarSpace, ConstField) {
        (VarSpace::new(n), ConstField::rationals())
    }

    #[test]
    fn normal_form_examples() {
        let (s, f) = setup(1);
        let x = MultiPoly::x(s, &f, 1, 1);
        let k = MultiPoly::constant(s, RatFunc::x(&f));
        let g = &(&x * &x) - &k;
        let gb = buchberger(std::slice::from_ref(&g), super::super::MonomialOrder::Grevlex);
        assert_eq!(gb.gens(), std::slice::from_ref(&g));
        assert_eq!(normal_form(&x.pow(3), &gb), &k * &x);
        assert!(normal_form(&MultiPoly::zero(s, &f), &gb).is_zero());
        assert!(ideal_membership(&(&x.pow(4) - &k.pow(2)), &gb));
        let one = MultiPoly::one(s, &f);
        let two = MultiPoly::constant(s, RatFunc::from_int(&f, 2));
        let unit = buchberger(&[&x - &one, &x - &two], MonomialOrder::Grevlex);
        assert!(unit.is_unit());
    }

    #[test]
    fn two_generator_basis() {
        let (s, f) = setup(2);
        let x11 = MultiPoly::x(s, &f, 1, 1);
        let x12 = MultiPoly::x(s, &f, 1, 2);
        let one = MultiPoly::one(s, &f);
        let gb = buchberger(&[&x11 * &x12, &(&x11 * &x11) - &one], MonomialOrder::Grevlex);
        assert!(gb.contains(&x12));
        assert!(gb.contains(&(&x11 * &x12)));
    }

    #[test]
    fn radical_examples() {
        let (s, f) = setup(2);
        let v = |i, j| MultiPoly::x(s, &f, i, j);
        let one = MultiPoly::one(s, &f);
        let w = &(&v(1, 1) * &v(2, 2)) - &(&v(1, 2) * &v(2, 1));
        let gens = vec![
            &v(1, 1) * &v(1, 2),
            &(&v(1, 1) * &v(2, 2)) - &one,
            &v(2, 1) * &v(1, 2),
            &v(2, 1) * &v(2, 2),
            &w - &one,
        ];
        assert!(radical_membership(&v(1, 2), &gens));

        let (s1, _) = setup(1);
        let x = MultiPoly::x(s1, &f, 1, 1);
        let g = &(&x * &x) - &MultiPoly::constant(s1, RatFunc::x(&f));
        assert!(!radical_membership(&MultiPoly::one(s1, &f), std::slice::from_ref(&g)));
        assert!(radical_membership(&g, std::slice::from_ref(&g)));
    }

    #[test]
    fn saturation_examples() {
        let (s, f) = setup(1);
        let x = MultiPoly::x(s, &f, 1, 1);
        let g = &(&x * &x) - &MultiPoly::constant(s, RatFunc::x(&f));
        assert_eq!(saturate_by(&[&x * &g], &x), vec![g.clone()]);
        assert_eq!(saturate_by(std::slice::from_ref(&g), &MultiPoly::one(s, &f)), vec![g.clone()]);
        let one = MultiPoly::one(s, &f);
        assert_eq!(saturate_by(std::slice::from_ref(&one), &x), vec![one]);
    }

    #[test]
    fn proportional_detects_scalar_multiples() {
        let (s, f) = setup(1);
        let x = MultiPoly::x(s, &f, 1, 1);
        let c = RatFunc::x(&f);
        assert_eq!(proportional(&x.scale(&c), &x), Some(c));
        assert_eq!(proportional(&(&x * &x), &x), None);
    }
}
