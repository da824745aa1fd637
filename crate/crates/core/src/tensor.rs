//! Differential and difference modules, translation to and from systems, and
//! tensorial constructions.
//!
//! A module stores the matrix `M` of its operator in its basis: `de_j = sum_i
//! M[i][j] e_i` (derivation) or `Phi e_j = sum_i M[i][j] e_i` (shift). The
//! system `v(y) = A y` corresponds to `M = -A` and `M = A^-1` respectively.

use std::collections::BTreeMap;

use crate::algebra::{OperatorKind, RatFunc};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::poly::{monomials_of_degree, MultiPoly, VarId, VarSpace};
use crate::pv::{poly_apply_v, LinearSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DModule {
    kind: OperatorKind,
    action: Matrix<RatFunc>,
}

impl DModule {
    pub fn new(kind: OperatorKind, action: Matrix<RatFunc>) -> Result<Self> {
        if !action.is_square() {
            return Err(Error::DimensionMismatch {
                expected: action.nrows(),
                found: action.ncols(),
            });
        }
        if kind == OperatorKind::Shift && action.det().is_zero() {
            return Err(Error::Singular);
        }
        Ok(DModule { kind, action })
    }

    pub fn dim(&self) -> usize {
        self.action.nrows()
    }

    pub fn kind(&self) -> OperatorKind {
        self.kind
    }

    pub fn action(&self) -> &Matrix<RatFunc> {
        &self.action
    }

    /// The unit object `K e` with `de = 0` or `Phi e = e`.
    pub fn unit(kind: OperatorKind, field: &crate::algebra::ConstField) -> Self {
        let c = match kind {
            OperatorKind::Derivation => RatFunc::zero(field),
            OperatorKind::Shift => RatFunc::one(field),
        };
        DModule {
            kind,
            action: Matrix::from_rows(vec![vec![c]]),
        }
    }
}

pub fn module_from_system(sys: &LinearSystem) -> Result<DModule> {
    let a = sys.matrix();
    let action = match sys.kind() {
        OperatorKind::Derivation => a.neg(),
        OperatorKind::Shift => a.inverse().ok_or(Error::Singular)?,
    };
    DModule::new(sys.kind(), action)
}

pub fn system_from_module(m: &DModule) -> Result<LinearSystem> {
    let a = match m.kind {
        OperatorKind::Derivation => m.action.neg(),
        OperatorKind::Shift => m.action.inverse().ok_or(Error::Singular)?,
    };
    LinearSystem::new(m.kind, a)
}

/// Basis `e_i (x) f_j` ordered lexicographically in `(i, j)`.
pub fn tensor_product(m1: &DModule, m2: &DModule) -> Result<DModule> {
    if m1.kind != m2.kind {
        return Err(Error::KindMismatch);
    }
    let one = RatFunc::one(m1.action.any_entry().field());
    let action = match m1.kind {
        OperatorKind::Derivation => {
            let i1 = Matrix::identity(m1.dim(), &one);
            let i2 = Matrix::identity(m2.dim(), &one);
            m1.action.kronecker(&i2).add(&i1.kronecker(&m2.action))
        }
        OperatorKind::Shift => m1.action.kronecker(&m2.action),
    };
    DModule::new(m1.kind, action)
}

/// The basis vectors as variables of an auxiliary polynomial ring, with the
/// image of each under the operator as a linear form.
fn basis_ring(m: &DModule) -> (VarSpace, Vec<MultiPoly>) {
    let field = m.action.any_entry().field().clone();
    let space = VarSpace::new(0).with_aux(m.dim());
    let vars: Vec<MultiPoly> = (0..m.dim()).map(|l| MultiPoly::var(space, &field, VarId::Aux(l))).collect();
    let images = (0..m.dim())
        .map(|j| {
            let mut p = MultiPoly::zero(space, &field);
            for (i, v) in vars.iter().enumerate() {
                p = &p + &v.scale(m.action.get(i, j));
            }
            p
        })
        .collect();
    (space, images)
}

/// `Sym^d`, basis the degree-`d` monomials in `e_1..e_n` in decreasing
/// lexicographic order of exponent vectors.
pub fn symmetric_power(m: &DModule, d: usize) -> Result<DModule> {
    if d == 0 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let (space, images) = basis_ring(m);
    let field = m.action.any_entry().field().clone();
    let basis = monomials_of_degree(m.dim(), d as u32);
    let index: BTreeMap<Vec<u32>, usize> = basis.iter().enumerate().map(|(k, b)| (b.0.clone(), k)).collect();
    let zero = RatFunc::zero(&field);
    let mut action = Matrix::from_fn(basis.len(), basis.len(), |_, _| zero.clone());
    for (col, b) in basis.iter().enumerate() {
        let mono = MultiPoly::term(space, &field, b.clone(), RatFunc::one(&field));
        let image = match m.kind {
            OperatorKind::Derivation => {
                let mut out = MultiPoly::zero(space, &field);
                for (l, img) in images.iter().enumerate() {
                    let dp = mono.partial_derivative(l);
                    if !dp.is_zero() {
                        out = &out + &(&dp * img);
                    }
                }
                out
            }
            OperatorKind::Shift => {
                let subst = (0..m.dim()).map(|l| (VarId::Aux(l), images[l].clone())).collect();
                mono.substitute(&subst)
            }
        };
        for (mono, c) in image.terms() {
            action.set(index[&mono.0], col, c.clone());
        }
    }
    DModule::new(m.kind, action)
}

fn subsets(n: usize, d: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, d: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == d {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, d, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, n, d, &mut Vec::new(), &mut out);
    out
}

/// `Lambda^d`, basis `e_I` for increasing index sets `I` in lexicographic order.
pub fn exterior_power(m: &DModule, d: usize) -> Result<DModule> {
    let n = m.dim();
    if d == 0 || d > n {
        return Err(Error::DegreeOutOfRange(d));
    }
    let field = m.action.any_entry().field().clone();
    let one = RatFunc::one(&field);
    let id = Matrix::identity(n, &one);
    let basis = subsets(n, d);
    // coefficient of e_J in the wedge of the columns `cols`
    let minor = |cols: &Matrix<RatFunc>, rows: &[usize]| {
        Matrix::from_fn(d, d, |a, b| cols.get(rows[a], b).clone()).det()
    };
    let action = Matrix::from_fn(basis.len(), basis.len(), |r, c| {
        let src = &basis[c];
        let dst = &basis[r];
        match m.kind {
            OperatorKind::Shift => {
                let cols = Matrix::from_fn(n, d, |i, b| m.action.get(i, src[b]).clone());
                minor(&cols, dst)
            }
            OperatorKind::Derivation => {
                let mut acc = RatFunc::zero(&field);
                for s in 0..d {
                    let cols = Matrix::from_fn(n, d, |i, b| {
                        if b == s { m.action.get(i, src[b]).clone() } else { id.get(i, src[b]).clone() }
                    });
                    acc = &acc + &minor(&cols, dst);
                }
                acc
            }
        }
    });
    DModule::new(m.kind, action)
}

/// The dual module on the dual basis: `-M^T` (derivation) or `M^-T` (shift).
pub fn dual_module(m: &DModule) -> Result<DModule> {
    let action = match m.kind {
        OperatorKind::Derivation => m.action.transpose().neg(),
        OperatorKind::Shift => m.action.transpose().inverse().ok_or(Error::Singular)?,
    };
    DModule::new(m.kind, action)
}

/// Applies the module operator to a coordinate vector (semilinear in `K`).
pub fn apply_operator(m: &DModule, coords: &[RatFunc]) -> Vec<RatFunc> {
    let vc: Vec<RatFunc> = coords.iter().map(|c| crate::algebra::apply_v(c, m.kind)).collect();
    match m.kind {
        OperatorKind::Derivation => {
            let mc = m.action.mul_vec(coords);
            vc.iter().zip(&mc).map(|(a, b)| a + b).collect()
        }
        OperatorKind::Shift => m.action.mul_vec(&vc),
    }
}

/// The pairing element `sum_i e_i (x) e*_i` of `M (x) M*`.
pub fn pairing_element(m: &DModule) -> Vec<RatFunc> {
    let n = m.dim();
    let field = m.action.any_entry().field();
    (0..n * n)
        .map(|k| if k / n == k % n { RatFunc::one(field) } else { RatFunc::zero(field) })
        .collect()
}

/// Equation-side symmetric power of a system.
pub fn symmetric_power_system(sys: &LinearSystem, d: usize) -> Result<LinearSystem> {
    system_from_module(&symmetric_power(&module_from_system(sys)?, d)?)
}

/// Equation-side exterior power of a system.
pub fn exterior_power_system(sys: &LinearSystem, d: usize) -> Result<LinearSystem> {
    system_from_module(&exterior_power(&module_from_system(sys)?, d)?)
}

/// The system satisfied by the degree-`d` monomials `m_r` in the `n^2`
/// variables (row-major, decreasing lexicographic): entry `[r][c]` is the
/// coefficient of `m_c` in `v(m_r)`.
pub fn induced_system_on_monomials(sys: &LinearSystem, d: usize) -> Result<LinearSystem> {
    if d == 0 {
        return Err(Error::DegreeOutOfRange(d));
    }
    let space = sys.space();
    let field = sys.field().clone();
    let monos = monomials_of_degree(space.nvars(), d as u32);
    let index: BTreeMap<Vec<u32>, usize> = monos.iter().enumerate().map(|(k, b)| (b.0.clone(), k)).collect();
    let zero = RatFunc::zero(&field);
    let mut b = Matrix::from_fn(monos.len(), monos.len(), |_, _| zero.clone());
    for (r, m) in monos.iter().enumerate() {
        let p = MultiPoly::term(space, &field, m.clone(), RatFunc::one(&field));
        for (mc, c) in poly_apply_v(&p, sys).terms() {
            b.set(r, index[&mc.0], c.clone());
        }
    }
    LinearSystem::new(sys.kind(), b)
}

/// Coefficient vector of a homogeneous degree-`d` polynomial on the monomial
/// basis of [`induced_system_on_monomials`].
pub fn monomial_coordinates(p: &MultiPoly, d: usize) -> Vec<RatFunc> {
    monomials_of_degree(p.space().nvars(), d as u32)
        .iter()
        .map(|m| p.coeff(m))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ConstField;

    fn diag_sys(kind: OperatorKind, entries: &[RatFunc]) -> LinearSystem {
        LinearSystem::new(kind, Matrix::diagonal(entries)).unwrap()
    }

    fn ab(f: &ConstField) -> (RatFunc, RatFunc) {
        let x = RatFunc::x(f);
        (x.clone(), (&x + &RatFunc::from_int(f, 3)).inv().unwrap())
    }

    #[test]
    fn module_translation() {
        let f = ConstField::rationals();
        let a = RatFunc::x(&f);
        let d = module_from_system(&diag_sys(OperatorKind::Derivation, std::slice::from_ref(&a))).unwrap();
        assert_eq!(d.action().get(0, 0), &-&a);
        let s = module_from_system(&diag_sys(OperatorKind::Shift, &[RatFunc::from_int(&f, 2)])).unwrap();
        assert_eq!(s.action().get(0, 0), &RatFunc::from_int(&f, 2).inv().unwrap());
    }

    #[test]
    fn rank_one_tensor_products() {
        let f = ConstField::rationals();
        let (a, b) = ab(&f);
        for kind in [OperatorKind::Derivation, OperatorKind::Shift] {
            let m1 = module_from_system(&diag_sys(kind, std::slice::from_ref(&a))).unwrap();
            let m2 = module_from_system(&diag_sys(kind, std::slice::from_ref(&b))).unwrap();
            let t = system_from_module(&tensor_product(&m1, &m2).unwrap()).unwrap();
            let expected = match kind {
                OperatorKind::Derivation => &a + &b,
                OperatorKind::Shift => &a * &b,
            };
            assert_eq!(t.matrix().get(0, 0), &expected);
            let u = tensor_product(&m1, &DModule::unit(kind, &f)).unwrap();
            assert_eq!(u, m1);
        }
    }

    #[test]
    fn symmetric_square_of_diagonal() {
        let f = ConstField::rationals();
        let (a, b) = ab(&f);
        let two = RatFunc::from_int(&f, 2);
        let d = symmetric_power_system(&diag_sys(OperatorKind::Derivation, &[a.clone(), b.clone()]), 2).unwrap();
        assert_eq!(d.matrix(), &Matrix::diagonal(&[&two * &a, &a + &b, &two * &b]));
        let s = symmetric_power_system(&diag_sys(OperatorKind::Shift, &[a.clone(), b.clone()]), 2).unwrap();
        assert_eq!(s.matrix(), &Matrix::diagonal(&[&a * &a, &a * &b, &b * &b]));
    }

    #[test]
    fn exterior_top_power() {
        let f = ConstField::rationals();
        let x = RatFunc::x(&f);
        let one = RatFunc::one(&f);
        let a = Matrix::from_rows(vec![vec![x.clone(), one.clone()], vec![RatFunc::from_int(&f, 2), &x + &one]]);
        let d = exterior_power_system(&LinearSystem::new(OperatorKind::Derivation, a.clone()).unwrap(), 2).unwrap();
        assert_eq!(d.matrix().get(0, 0), &a.trace());
        let s = exterior_power_system(&LinearSystem::new(OperatorKind::Shift, a.clone()).unwrap(), 2).unwrap();
        assert_eq!(s.matrix().get(0, 0), &a.det());
    }

    #[test]
    fn duals_and_pairing() {
        let f = ConstField::rationals();
        let (a, b) = ab(&f);
        let d = module_from_system(&diag_sys(OperatorKind::Derivation, std::slice::from_ref(&a))).unwrap();
        let dd = system_from_module(&dual_module(&d).unwrap()).unwrap();
        assert_eq!(dd.matrix().get(0, 0), &-&a);
        let s = module_from_system(&diag_sys(OperatorKind::Shift, std::slice::from_ref(&a))).unwrap();
        let sd = system_from_module(&dual_module(&s).unwrap()).unwrap();
        assert_eq!(sd.matrix().get(0, 0), &a.inv().unwrap());
        for kind in [OperatorKind::Derivation, OperatorKind::Shift] {
            let m = module_from_system(&diag_sys(kind, &[a.clone(), b.clone()])).unwrap();
            let t = tensor_product(&m, &dual_module(&m).unwrap()).unwrap();
            let e = pairing_element(&m);
            let image = apply_operator(&t, &e);
            let expected = match kind {
                OperatorKind::Derivation => vec![RatFunc::zero(&f); 4],
                OperatorKind::Shift => e.clone(),
            };
            assert_eq!(image, expected);
        }
    }

    #[test]
    fn induced_monomial_systems() {
        let f = ConstField::rationals();
        let a = RatFunc::x(&f);
        let d = induced_system_on_monomials(&diag_sys(OperatorKind::Derivation, std::slice::from_ref(&a)), 2).unwrap();
        assert_eq!(d.matrix().get(0, 0), &(&RatFunc::from_int(&f, 2) * &a));
        let s = induced_system_on_monomials(&diag_sys(OperatorKind::Shift, &[RatFunc::from_int(&f, -1)]), 2).unwrap();
        assert_eq!(s.matrix().get(0, 0), &RatFunc::one(&f));
    }
}
