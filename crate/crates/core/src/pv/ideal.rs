use std::sync::OnceLock;

use crate::algebra::{ConstField, RatFunc};
use crate::error::Result;
use crate::poly::ideal::{basis_of, proportional};
use crate::poly::{saturate_by, wronskian, GroebnerBasis, MultiPoly, VarSpace};

use super::group::{right_action, GroupElement};
use super::localized::LocalizedPoly;
use super::system::{pv_apply_v, LinearSystem};

/// An ideal of `K[X, 1/W]` given by generators. Its polynomial avatar is the
/// `W`-saturation of the numerators, whose Gröbner basis is computed once.
#[derive(Clone, Debug)]
pub struct IdealPresentation {
    space: VarSpace,
    field: ConstField,
    gens: Vec<LocalizedPoly>,
    gb: OnceLock<GroebnerBasis>,
}

impl IdealPresentation {
    pub fn new(space: VarSpace, field: &ConstField, gens: Vec<LocalizedPoly>) -> Self {
        assert!(gens.iter().all(|g| g.space() == space), "generators outside the ambient space");
        IdealPresentation {
            space,
            field: field.clone(),
            gens,
            gb: OnceLock::new(),
        }
    }

    pub fn from_polys(space: VarSpace, field: &ConstField, gens: Vec<MultiPoly>) -> Self {
        Self::new(space, field, gens.into_iter().map(LocalizedPoly::from_poly).collect())
    }

    pub fn gens(&self) -> &[LocalizedPoly] {
        &self.gens
    }

    pub fn space(&self) -> VarSpace {
        self.space
    }

    pub fn field(&self) -> &ConstField {
        &self.field
    }

    /// Reduced grevlex basis of `<numerators> : W^infinity`.
    pub fn basis(&self) -> &GroebnerBasis {
        self.gb.get_or_init(|| {
            let nums: Vec<MultiPoly> = self
                .gens
                .iter()
                .map(|g| g.numerator().clone())
                .filter(|g| !g.is_zero())
                .collect();
            let sat = if nums.is_empty() {
                Vec::new()
            } else {
                saturate_by(&nums, &wronskian(self.space, &self.field))
            };
            basis_of(&sat, self.space, &self.field)
        })
    }

    pub fn is_unit(&self) -> bool {
        self.basis().is_unit()
    }

    pub fn contains_poly(&self, p: &MultiPoly) -> bool {
        self.basis().contains(p)
    }

    /// Membership in `K[X, 1/W]`; `W` is a unit, so only the numerator matters.
    pub fn contains(&self, p: &LocalizedPoly) -> bool {
        self.contains_poly(p.numerator())
    }

    pub fn normal_form(&self, p: &MultiPoly) -> MultiPoly {
        self.basis().normal_form(p)
    }

    /// The `f` in `K` with `P - f` in the ideal, if one exists: the normal form
    /// of the numerator must be `f` times the normal form of `W^k`.
    pub fn residue_in_k(&self, p: &LocalizedPoly) -> Option<RatFunc> {
        let nf = self.normal_form(p.numerator());
        if nf.is_zero() {
            return Some(RatFunc::zero(&self.field));
        }
        let wk = self.normal_form(&wronskian(self.space, &self.field).pow(p.wexp()));
        let c = wk.as_constant()?;
        let f = nf.as_constant()?;
        if c.is_zero() {
            return None;
        }
        Some(&f / &c)
    }

    /// Like [`Self::residue_in_k`] but tolerating a non-constant normal form
    /// of `W^k` by proportionality.
    pub fn residue_by_ratio(&self, p: &LocalizedPoly) -> Option<RatFunc> {
        let nf = self.normal_form(p.numerator());
        if nf.is_zero() {
            return Some(RatFunc::zero(&self.field));
        }
        let wk = self.normal_form(&wronskian(self.space, &self.field).pow(p.wexp()));
        proportional(&nf, &wk)
    }
}

/// Every generator is mapped into the ideal by `v`.
pub fn check_v_stable(ideal: &IdealPresentation, sys: &LinearSystem) -> Result<bool> {
    for g in ideal.gens() {
        if !ideal.contains(&pv_apply_v(g, sys)?) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every generator is mapped into the ideal by the right action of each `g`.
pub fn check_group_stable(ideal: &IdealPresentation, gens: &[GroupElement]) -> bool {
    gens.iter()
        .all(|g| ideal.gens().iter().all(|p| ideal.contains(&right_action(p, g))))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::OperatorKind;
    use crate::linalg::Matrix;

    fn kummer(f: &ConstField) -> (LinearSystem, MultiPoly, MultiPoly) {
        let x = RatFunc::x(f);
        let a = (&RatFunc::from_int(f, 2) * &x).inv().unwrap();
        let sys = LinearSystem::new(OperatorKind::Derivation, Matrix::from_rows(vec![vec![a]])).unwrap();
        let s = sys.space();
        let xx = MultiPoly::x(s, f, 1, 1);
        (sys, xx.clone(), MultiPoly::constant(s, x))
    }

    #[test]
    fn v_stability_examples() {
        let f = ConstField::rationals();
        let (sys, xx, x) = kummer(&f);
        let s = sys.space();
        let good = IdealPresentation::from_polys(s, &f, vec![&(&xx * &xx) - &x]);
        assert!(check_v_stable(&good, &sys).unwrap());
        let bad = IdealPresentation::from_polys(s, &f, vec![&(&xx * &xx) - &(&x * &x)]);
        assert!(!check_v_stable(&bad, &sys).unwrap());

        let shift = LinearSystem::new(OperatorKind::Shift, Matrix::from_rows(vec![vec![RatFunc::from_int(&f, -1)]])).unwrap();
        let one = MultiPoly::one(s, &f);
        let diff = IdealPresentation::from_polys(s, &f, vec![&(&xx * &xx) - &one]);
        assert!(check_v_stable(&diff, &shift).unwrap());
    }

    #[test]
    fn group_stability_examples() {
        let f = ConstField::rationals();
        let (sys, xx, x) = kummer(&f);
        let s = sys.space();
        let minus = GroupElement::scalar(1, f.from_int(-1));
        let i = IdealPresentation::from_polys(s, &f, vec![&(&xx * &xx) - &x]);
        assert!(check_group_stable(&i, std::slice::from_ref(&minus)));
        let j = IdealPresentation::from_polys(s, &f, vec![&xx - &x]);
        assert!(!check_group_stable(&j, &[minus]));
    }

    #[test]
    fn torus_ideal_is_stable() {
        let f = ConstField::gaussian();
        let s = VarSpace::new(2);
        let v = |i, j| MultiPoly::x(s, &f, i, j);
        let one = MultiPoly::one(s, &f);
        let i = IdealPresentation::from_polys(s, &f, vec![v(1, 2), v(2, 1), &(&v(1, 1) * &v(2, 2)) - &one]);
        let half = f.from_rational(crate::algebra::rational(1, 2));
        let g = GroupElement::diagonal(&[f.from_int(2), half]);
        assert!(check_group_stable(&i, &[g]));
        let w = LocalizedPoly::from_poly(wronskian(s, &f));
        assert_eq!(i.residue_in_k(&w), Some(RatFunc::one(&f)));
        assert_eq!(i.residue_in_k(&LocalizedPoly::w_power(s, &f, -2)), Some(RatFunc::one(&f)));
    }
}
