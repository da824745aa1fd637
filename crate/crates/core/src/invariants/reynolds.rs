use crate::algebra::{ConstField, RatFunc};
use crate::error::{Error, Result};
use crate::poly::{monomials_of_degree, MultiPoly, VarSpace};
use crate::pv::{right_action_poly, GroupElement, LocalizedPoly};

use super::group_spec::GroupSpec;
use super::orbit::torus_components;
use super::span::LocSpan;

/// `R(P) = |G|^-1 sum_g P^g`.
pub fn reynolds(p: &MultiPoly, elements: &[GroupElement]) -> MultiPoly {
    let mut acc = MultiPoly::zero(p.space(), p.field());
    for g in elements {
        acc = &acc + &right_action_poly(p, g);
    }
    let inv = RatFunc::from_int(p.field(), elements.len() as i64).inv().unwrap();
    acc.scale(&inv)
}

fn monomial_poly(space: VarSpace, field: &ConstField, m: crate::poly::Monomial) -> MultiPoly {
    MultiPoly::term(space, field, m, RatFunc::one(field))
}

/// Reynolds images of all monomials of degree `1..=d`, thinned to a
/// linearly independent list per degree.
pub fn finite_invariants_up_to_degree(g: &GroupSpec, d: u32) -> Result<Vec<MultiPoly>> {
    let Some(elements) = g.elements() else {
        return Err(Error::Unsupported("Reynolds averaging needs a finite group".into()));
    };
    let space = VarSpace::new(g.n());
    let field = g.field().clone();
    let mut out = Vec::new();
    for deg in 1..=d {
        let mut span = LocSpan::new(0);
        for m in monomials_of_degree(space.nvars(), deg) {
            let r = reynolds(&monomial_poly(space, &field, m), elements);
            if !r.is_zero() && span.insert(&LocalizedPoly::from_poly(r.clone())) {
                out.push(r);
            }
        }
    }
    Ok(out)
}

/// The weight-zero monomials of degree `1..=d` of a diagonal torus.
pub fn torus_invariants_up_to_degree(g: &GroupSpec, d: u32) -> Result<Vec<MultiPoly>> {
    let GroupSpec::DiagonalTorus { weights, .. } = g else {
        return Err(Error::Unsupported("weight enumeration needs a diagonal torus".into()));
    };
    let space = VarSpace::new(g.n());
    let field = g.field().clone();
    let zero = vec![0i64; weights.len()];
    let mut out = Vec::new();
    for deg in 1..=d {
        for m in monomials_of_degree(space.nvars(), deg) {
            let p = LocalizedPoly::from_poly(monomial_poly(space, &field, m));
            if torus_components(&p, weights).contains_key(&zero) {
                out.push(p.numerator().clone());
            }
        }
    }
    Ok(out)
}

/// Invariants up to degree `d` for the group shapes where they are computable.
pub fn invariants_up_to_degree(g: &GroupSpec, d: u32) -> Result<Vec<MultiPoly>> {
    match g {
        GroupSpec::FiniteList(_) => finite_invariants_up_to_degree(g, d),
        GroupSpec::DiagonalTorus { .. } => torus_invariants_up_to_degree(g, d),
        _ => Err(Error::Unsupported("invariants of SL_n and GL_n are not enumerated".into())),
    }
}
