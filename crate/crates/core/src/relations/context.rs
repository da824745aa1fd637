use crate::error::{Error, Result};
use crate::invariants::{det_group_order, GroupSpec};
use crate::pv::{check_group_stable, check_v_stable, right_action, IdealPresentation, LinearSystem, LocalizedPoly};

/// A system, its relation ideal and its Galois group, validated together.
#[derive(Clone, Debug)]
pub struct PVContext {
    sys: LinearSystem,
    ideal: IdealPresentation,
    group: GroupSpec,
}

impl PVContext {
    /// Rejects ideals that are not `v`-stable or not `G`-stable, the unit
    /// ideal, and groups with an infinite determinant group.
    pub fn new(sys: LinearSystem, ideal: IdealPresentation, group: GroupSpec) -> Result<Self> {
        let n = sys.n();
        for found in [ideal.space().n, group.n()] {
            if found != n {
                return Err(Error::DimensionMismatch { expected: n, found });
            }
        }
        if sys.field() != ideal.field() || sys.field() != group.field() {
            return Err(Error::FieldMismatch);
        }
        if ideal.is_unit() {
            return Err(Error::Hypothesis("the ideal is the whole ring".into()));
        }
        if !check_v_stable(&ideal, &sys)? {
            return Err(Error::Hypothesis("the ideal is not v-stable".into()));
        }
        if !check_group_stable(&ideal, &group.generators()) {
            return Err(Error::Hypothesis("the ideal is not stable under the group".into()));
        }
        if det_group_order(&group).is_none() {
            return Err(Error::InfiniteDeterminantGroup);
        }
        Ok(PVContext { sys, ideal, group })
    }

    pub fn system(&self) -> &LinearSystem {
        &self.sys
    }

    pub fn ideal(&self) -> &IdealPresentation {
        &self.ideal
    }

    pub fn group(&self) -> &GroupSpec {
        &self.group
    }

    /// `P^g = P` for every generator of `G`.
    pub fn is_invariant(&self, p: &LocalizedPoly) -> bool {
        self.group.generators().iter().all(|g| right_action(p, g) == *p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ConstField, OperatorKind, RatFunc};
    use crate::linalg::Matrix;
    use crate::poly::MultiPoly;
    use crate::relations::fixtures;

    #[test]
    fn rejects_broken_hypotheses() {
        let ctx = fixtures::kummer();
        let f = ConstField::rationals();
        let s = ctx.ideal().space();
        let xx = MultiPoly::x(s, &f, 1, 1);
        let x = MultiPoly::constant(s, RatFunc::x(&f));
        let sys = ctx.system().clone();
        let g = ctx.group().clone();

        let not_v = IdealPresentation::from_polys(s, &f, vec![&xx.pow(2) - &x.pow(2)]);
        assert!(matches!(PVContext::new(sys.clone(), not_v, g.clone()), Err(Error::Hypothesis(_))));
        let unit = IdealPresentation::from_polys(s, &f, vec![xx.clone()]);
        assert!(matches!(PVContext::new(sys.clone(), unit, g.clone()), Err(Error::Hypothesis(_))));
        let gl = GroupSpec::gl(1, &f);
        assert!(matches!(
            PVContext::new(sys.clone(), ctx.ideal().clone(), gl),
            Err(Error::Hypothesis(_)) | Err(Error::InfiniteDeterminantGroup)
        ));
        let torus = GroupSpec::torus(&f, vec![vec![1]]).unwrap();
        let i0 = IdealPresentation::from_polys(s, &f, vec![&xx.pow(2) - &x]);
        assert!(PVContext::new(sys.clone(), i0, torus).is_err());

        let two = LinearSystem::new(OperatorKind::Derivation, Matrix::identity(2, &RatFunc::one(&f))).unwrap();
        assert!(matches!(
            PVContext::new(two, ctx.ideal().clone(), g),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn invariance() {
        let ctx = fixtures::kummer();
        let f = ConstField::rationals();
        let xx = MultiPoly::x(ctx.ideal().space(), &f, 1, 1);
        assert!(ctx.is_invariant(&LocalizedPoly::from_poly(xx.pow(2))));
        assert!(!ctx.is_invariant(&LocalizedPoly::from_poly(xx)));
    }
}
