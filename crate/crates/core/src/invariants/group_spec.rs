use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::{ConstElem, ConstField};
use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::pv::GroupElement;

/// Sampled matrix entries are uniform integers in `[-ENTRY_BOUND, ENTRY_BOUND]`.
pub const ENTRY_BOUND: i64 = 5;

/// A reductive subgroup of `GL_n(C)` in one of the supported shapes.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GroupSpec {
    /// A finite group listed element by element.
    FiniteList(Vec<GroupElement>),
    /// The torus of `diag(t1^w[0][j] * t2^w[1][j] * ...)`; one weight row per
    /// rank, each of length `n`, acting on column `j`.
    DiagonalTorus { weights: Vec<Vec<i64>>, field: ConstField },
    FullSL { n: usize, field: ConstField },
    FullGL { n: usize, field: ConstField },
}

impl GroupSpec {
    /// Checks closure under products and inverses.
    pub fn finite(elements: Vec<GroupElement>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::NotAGroup("empty element list".into()));
        };
        let n = first.n();
        if elements.iter().any(|g| g.n() != n) {
            return Err(Error::NotAGroup("elements of different sizes".into()));
        }
        for g in &elements {
            if !elements.contains(&g.inverse()) {
                return Err(Error::NotAGroup(format!("inverse of [{g}] missing")));
            }
            for h in &elements {
                if !elements.contains(&g.mul(h)) {
                    return Err(Error::NotAGroup(format!("product of [{g}] and [{h}] missing")));
                }
            }
        }
        Ok(GroupSpec::FiniteList(elements))
    }

    pub fn torus(field: &ConstField, weights: Vec<Vec<i64>>) -> Result<Self> {
        let Some(first) = weights.first() else {
            return Err(Error::NotAGroup("torus without weights".into()));
        };
        if first.is_empty() || weights.iter().any(|w| w.len() != first.len()) {
            return Err(Error::NotAGroup("weight rows of different lengths".into()));
        }
        Ok(GroupSpec::DiagonalTorus {
            weights,
            field: field.clone(),
        })
    }

    pub fn sl(n: usize, field: &ConstField) -> Self {
        GroupSpec::FullSL { n, field: field.clone() }
    }

    pub fn gl(n: usize, field: &ConstField) -> Self {
        GroupSpec::FullGL { n, field: field.clone() }
    }

    pub fn n(&self) -> usize {
        match self {
            GroupSpec::FiniteList(e) => e[0].n(),
            GroupSpec::DiagonalTorus { weights, .. } => weights[0].len(),
            GroupSpec::FullSL { n, .. } | GroupSpec::FullGL { n, .. } => *n,
        }
    }

    pub fn field(&self) -> &ConstField {
        match self {
            GroupSpec::FiniteList(e) => e[0].field(),
            GroupSpec::DiagonalTorus { field, .. } | GroupSpec::FullSL { field, .. } | GroupSpec::FullGL { field, .. } => {
                field
            }
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            GroupSpec::FiniteList(_) => "finite",
            GroupSpec::DiagonalTorus { .. } => "torus",
            GroupSpec::FullSL { .. } => "sl",
            GroupSpec::FullGL { .. } => "gl",
        }
    }

    /// A Zariski-dense generating set: all elements of a finite group,
    /// `diag(2^w)` per torus weight row, transvections for `SL_n`, and
    /// transvections with `diag(2, 1, ..)` and `2I` for `GL_n`.
    pub fn generators(&self) -> Vec<GroupElement> {
        match self {
            GroupSpec::FiniteList(e) => e.clone(),
            GroupSpec::DiagonalTorus { weights, field } => weights
                .iter()
                .map(|w| {
                    let two = field.from_int(2);
                    let entries: Vec<ConstElem> = w.iter().map(|&e| two.pow(e).unwrap()).collect();
                    GroupElement::diagonal(&entries)
                })
                .collect(),
            GroupSpec::FullSL { n, field } => {
                let mut out = transvections(*n, field);
                if out.is_empty() {
                    out.push(GroupElement::identity(*n, field));
                }
                out
            }
            GroupSpec::FullGL { n, field } => {
                let mut out = transvections(*n, field);
                let mut d = vec![field.one(); *n];
                d[0] = field.from_int(2);
                out.push(GroupElement::diagonal(&d));
                out.push(GroupElement::scalar(*n, field.from_int(2)));
                out
            }
        }
    }

    pub fn elements(&self) -> Option<&[GroupElement]> {
        match self {
            GroupSpec::FiniteList(e) => Some(e),
            _ => None,
        }
    }
}

fn transvections(n: usize, field: &ConstField) -> Vec<GroupElement> {
    let mut out = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                let mut m = Matrix::identity(n, &field.one());
                m.set(i, j, field.one());
                out.push(GroupElement::new(m).unwrap());
            }
        }
    }
    out
}

/// Multiplicative order of a root of unity `c`, if it is one of order at most `bound`.
fn root_of_unity_order(c: &ConstElem, bound: usize) -> Option<u64> {
    let mut p = c.clone();
    for k in 1..=bound {
        if p.is_one() {
            return Some(k as u64);
        }
        p = &p * c;
    }
    None
}

/// Order of `det(G)`, or `None` when infinite.
pub fn det_group_order(g: &GroupSpec) -> Option<u64> {
    match g {
        GroupSpec::FiniteList(e) => {
            let mut acc = 1u64;
            for h in e {
                let o = root_of_unity_order(&h.det(), e.len()).expect("finite group determinants are roots of unity");
                acc = acc.lcm(&o);
            }
            Some(acc)
        }
        GroupSpec::DiagonalTorus { weights, .. } => weights.iter().all(|w| w.iter().sum::<i64>() == 0).then_some(1),
        GroupSpec::FullSL { .. } => Some(1),
        GroupSpec::FullGL { .. } => None,
    }
}

/// The least `N0 >= 1` with `det(g)^N0 = 1` on `G`.
pub fn n0_for_group(g: &GroupSpec) -> Result<u64> {
    det_group_order(g).ok_or(Error::InfiniteDeterminantGroup)
}

/// Deterministic sampler of matrices with small integer entries.
pub struct Sampler {
    rng: ChaCha8Rng,
    seed: u64,
}

impl Sampler {
    pub fn new(seed: u64) -> Self {
        Sampler {
            rng: ChaCha8Rng::seed_from_u64(seed),
            seed,
        }
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }

    pub fn int(&mut self) -> i64 {
        self.rng.gen_range(-ENTRY_BOUND..=ENTRY_BOUND)
    }

    pub fn index(&mut self, len: usize) -> usize {
        self.rng.gen_range(0..len)
    }

    /// Uniform entries, resampled until nonsingular.
    pub fn gl(&mut self, n: usize, field: &ConstField) -> GroupElement {
        loop {
            let m = Matrix::from_fn(n, n, |_, _| field.from_int(self.int()));
            if let Ok(g) = GroupElement::new(m) {
                return g;
            }
        }
    }

    /// A `GL_n` sample with its first column divided by the determinant.
    pub fn sl(&mut self, n: usize, field: &ConstField) -> GroupElement {
        let g = self.gl(n, field);
        let inv = g.det().inv().unwrap();
        let mut m = g.matrix().clone();
        for i in 0..n {
            let v = m.get(i, 0) * &inv;
            m.set(i, 0, v);
        }
        GroupElement::new(m).unwrap()
    }

    /// A sample from `G`. Torus samples use `t` uniform in `[2, 5]` per rank.
    pub fn element(&mut self, g: &GroupSpec) -> GroupElement {
        match g {
            GroupSpec::FiniteList(e) => e[self.index(e.len())].clone(),
            GroupSpec::DiagonalTorus { weights, field } => {
                let n = weights[0].len();
                let mut entries = vec![field.one(); n];
                for w in weights {
                    let t = field.from_int(self.rng.gen_range(2..=ENTRY_BOUND));
                    for (e, &wj) in entries.iter_mut().zip(w) {
                        *e = &*e * &t.pow(wj).unwrap();
                    }
                }
                GroupElement::diagonal(&entries)
            }
            GroupSpec::FullSL { n, field } => self.sl(*n, field),
            GroupSpec::FullGL { n, field } => self.gl(*n, field),
        }
    }
}
