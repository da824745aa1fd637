use std::cmp::Ordering;
use std::fmt;

/// Variable of the ambient ring: a matrix entry `X[i][j]` (1-based) or an
/// auxiliary variable used by elimination and the Rabinowitsch trick.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum VarId {
    Matrix { i: usize, j: usize },
    Aux(usize),
}

/// The ambient variable list: `n^2` matrix variables in row-major order, then
/// `naux` auxiliary variables.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct VarSpace {
    pub n: usize,
    pub naux: usize,
}

impl VarSpace {
    pub fn new(n: usize) -> Self {
        VarSpace { n, naux: 0 }
    }

    pub fn with_aux(self, extra: usize) -> Self {
        VarSpace {
            n: self.n,
            naux: self.naux + extra,
        }
    }

    pub fn nmatrix(&self) -> usize {
        self.n * self.n
    }

    pub fn nvars(&self) -> usize {
        self.nmatrix() + self.naux
    }

    /// Position of `v` in exponent vectors; `None` when out of range.
    pub fn index(&self, v: VarId) -> Option<usize> {
        match v {
            VarId::Matrix { i, j } if (1..=self.n).contains(&i) && (1..=self.n).contains(&j) => {
                Some((i - 1) * self.n + (j - 1))
            }
            VarId::Aux(l) if l < self.naux => Some(self.nmatrix() + l),
            _ => None,
        }
    }

    pub fn var(&self, idx: usize) -> VarId {
        if idx < self.nmatrix() {
            VarId::Matrix {
                i: idx / self.n + 1,
                j: idx % self.n + 1,
            }
        } else {
            VarId::Aux(idx - self.nmatrix())
        }
    }

    pub fn vars(&self) -> impl Iterator<Item = VarId> + '_ {
        (0..self.nvars()).map(|k| self.var(k))
    }
}

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            VarId::Matrix { i, j } => write!(f, "X[{i}][{j}]"),
            VarId::Aux(l) => write!(f, "T[{l}]"),
        }
    }
}

/// Exponent vector. `Ord` is graded reverse lexicographic with variable 0 the
/// largest, so iterating a `BTreeMap<Monomial, _>` visits terms from the
/// smallest monomial up and `last` is the leading term.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, idx: usize) -> Self {
        let mut m = Self::one(nvars);
        m.0[idx] = 1;
        m
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }

    pub fn divides(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a <= b)
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    /// `self / other`; caller guarantees divisibility.
    pub fn div(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn lcm(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| *a.max(b)).collect())
    }

    pub fn coprime(&self, other: &Monomial) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| *a == 0 || *b == 0)
    }

    pub fn grevlex_cmp(&self, other: &Monomial) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| {
            for (a, b) in self.0.iter().zip(&other.0).rev() {
                if a != b {
                    // smaller exponent in the last differing variable wins
                    return b.cmp(a);
                }
            }
            Ordering::Equal
        })
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.grevlex_cmp(other)
    }
}

/// Enumerates all exponent vectors of `nvars` variables with total degree `d`,
/// in decreasing lexicographic order (`x0^d` first).
pub fn monomials_of_degree(nvars: usize, d: u32) -> Vec<Monomial> {
    fn rec(pos: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if pos + 1 == cur.len() {
            cur[pos] = left;
            out.push(Monomial(cur.clone()));
            cur[pos] = 0;
            return;
        }
        for e in (0..=left).rev() {
            cur[pos] = e;
            rec(pos + 1, left - e, cur, out);
        }
        cur[pos] = 0;
    }
    let mut out = Vec::new();
    if nvars == 0 {
        if d == 0 {
            out.push(Monomial(Vec::new()));
        }
        return out;
    }
    rec(0, d, &mut vec![0; nvars], &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grevlex_examples() {
        // x0 > x1 > x2 in degree one
        assert!(Monomial(vec![1, 0, 0]) > Monomial(vec![0, 1, 0]));
        assert!(Monomial(vec![0, 1, 0]) > Monomial(vec![0, 0, 1]));
        // x0*x2 < x1^2 in grevlex
        assert!(Monomial(vec![1, 0, 1]) < Monomial(vec![0, 2, 0]));
        // degree dominates
        assert!(Monomial(vec![0, 0, 2]) > Monomial(vec![1, 0, 0]));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(monomials_of_degree(4, 2).len(), 10);
        assert_eq!(monomials_of_degree(3, 3).len(), 10);
        assert_eq!(monomials_of_degree(2, 2)[0], Monomial(vec![2, 0]));
    }

    #[test]
    fn var_indexing_round_trip() {
        let s = VarSpace::new(3).with_aux(2);
        for k in 0..s.nvars() {
            assert_eq!(s.index(s.var(k)), Some(k));
        }
        assert_eq!(s.index(VarId::Matrix { i: 4, j: 1 }), None);
    }
}
