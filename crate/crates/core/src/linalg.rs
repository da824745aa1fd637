//! Small dense matrices over an exact field.

use std::fmt;

use crate::algebra::{ConstElem, RatFunc};

/// Exact field arithmetic needed by Gaussian elimination.
pub trait Scalar: Clone + PartialEq + fmt::Debug {
    fn zero_like(&self) -> Self;
    fn one_like(&self) -> Self;
    fn is_zero_elem(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn minus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negated(&self) -> Self;
    /// `None` for zero.
    fn inverse(&self) -> Option<Self>;
}

impl Scalar for RatFunc {
    fn zero_like(&self) -> Self {
        RatFunc::zero(self.field())
    }
    fn one_like(&self) -> Self {
        RatFunc::one(self.field())
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv().ok()
    }
}

impl Scalar for ConstElem {
    fn zero_like(&self) -> Self {
        self.field().zero()
    }
    fn one_like(&self) -> Self {
        self.field().one()
    }
    fn is_zero_elem(&self) -> bool {
        self.is_zero()
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn minus(&self, o: &Self) -> Self {
        self - o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negated(&self) -> Self {
        -self
    }
    fn inverse(&self) -> Option<Self> {
        self.inv()
    }
}

/// Row-major dense matrix; every matrix has at least one entry so that
/// zero and one can be derived from its elements.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix<T> {
    rows: Vec<Vec<T>>,
}

impl<T: Scalar> Matrix<T> {
    /// Panics on ragged or empty input.
    pub fn from_rows(rows: Vec<Vec<T>>) -> Self {
        assert!(!rows.is_empty() && !rows[0].is_empty(), "empty matrix");
        let c = rows[0].len();
        assert!(rows.iter().all(|r| r.len() == c), "ragged matrix");
        Matrix { rows }
    }

    pub fn from_fn(r: usize, c: usize, mut f: impl FnMut(usize, usize) -> T) -> Self {
        Self::from_rows((0..r).map(|i| (0..c).map(|j| f(i, j)).collect()).collect())
    }

    pub fn identity(n: usize, one: &T) -> Self {
        let zero = one.zero_like();
        Self::from_fn(n, n, |i, j| if i == j { one.clone() } else { zero.clone() })
    }

    pub fn diagonal(entries: &[T]) -> Self {
        let zero = entries[0].zero_like();
        Self::from_fn(entries.len(), entries.len(), |i, j| {
            if i == j { entries[i].clone() } else { zero.clone() }
        })
    }

    pub fn nrows(&self) -> usize {
        self.rows.len()
    }

    pub fn ncols(&self) -> usize {
        self.rows[0].len()
    }

    pub fn is_square(&self) -> bool {
        self.nrows() == self.ncols()
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.rows[i][j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.rows[i][j] = v;
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn any_entry(&self) -> &T {
        &self.rows[0][0]
    }

    pub fn map<U: Scalar>(&self, f: impl Fn(&T) -> U) -> Matrix<U> {
        Matrix {
            rows: self.rows.iter().map(|r| r.iter().map(&f).collect()).collect(),
        }
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.ncols(), self.nrows(), |i, j| self.rows[j][i].clone())
    }

    pub fn neg(&self) -> Self {
        self.map(T::negated)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.rows[i][j].plus(&o.rows[i][j]))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self::from_fn(self.nrows(), self.ncols(), |i, j| self.rows[i][j].minus(&o.rows[i][j]))
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.ncols(), o.nrows(), "matrix product shape mismatch");
        let zero = self.any_entry().zero_like();
        Self::from_fn(self.nrows(), o.ncols(), |i, j| {
            (0..self.ncols()).fold(zero.clone(), |acc, k| {
                let a = &self.rows[i][k];
                if a.is_zero_elem() { acc } else { acc.plus(&a.times(&o.rows[k][j])) }
            })
        })
    }

    pub fn mul_vec(&self, v: &[T]) -> Vec<T> {
        let zero = self.any_entry().zero_like();
        self.rows
            .iter()
            .map(|r| r.iter().zip(v).fold(zero.clone(), |acc, (a, b)| acc.plus(&a.times(b))))
            .collect()
    }

    pub fn scale(&self, s: &T) -> Self {
        self.map(|a| a.times(s))
    }

    pub fn trace(&self) -> T {
        let zero = self.any_entry().zero_like();
        (0..self.nrows()).fold(zero, |acc, i| acc.plus(&self.rows[i][i]))
    }

    /// Kronecker product; the basis of the result is ordered `(i1, i2)` lexicographically.
    pub fn kronecker(&self, o: &Self) -> Self {
        let (r2, c2) = (o.nrows(), o.ncols());
        Self::from_fn(self.nrows() * r2, self.ncols() * c2, |i, j| {
            self.rows[i / r2][j / c2].times(&o.rows[i % r2][j % c2])
        })
    }

    /// Row echelon form in place; returns pivot columns and the determinant sign factor.
    fn eliminate(rows: &mut [Vec<T>], ncols: usize) -> (Vec<usize>, T) {
        let one = rows[0][0].one_like();
        let mut factor = one.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..ncols {
            if r == rows.len() {
                break;
            }
            let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero_elem()) else {
                continue;
            };
            if p != r {
                rows.swap(p, r);
                factor = factor.negated();
            }
            let inv = rows[r][c].inverse().unwrap();
            factor = factor.times(&rows[r][c]);
            for v in rows[r].iter_mut() {
                *v = v.times(&inv);
            }
            for i in 0..rows.len() {
                if i != r && !rows[i][c].is_zero_elem() {
                    let f = rows[i][c].clone();
                    for k in c..rows[i].len() {
                        if !rows[r][k].is_zero_elem() {
                            let d = f.times(&rows[r][k]);
                            rows[i][k] = rows[i][k].minus(&d);
                        }
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (pivots, factor)
    }

    pub fn det(&self) -> T {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let mut rows = self.rows.clone();
        let n = self.nrows();
        let (pivots, factor) = Self::eliminate(&mut rows, n);
        if pivots.len() < n {
            self.any_entry().zero_like()
        } else {
            factor
        }
    }

    pub fn rank(&self) -> usize {
        let mut rows = self.rows.clone();
        Self::eliminate(&mut rows, self.ncols()).0.len()
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.nrows();
        let one = self.any_entry().one_like();
        let id = Self::identity(n, &one);
        let mut rows: Vec<Vec<T>> = self
            .rows
            .iter()
            .zip(&id.rows)
            .map(|(a, b)| a.iter().chain(b).cloned().collect())
            .collect();
        let (pivots, _) = Self::eliminate(&mut rows, n);
        if pivots.len() < n {
            return None;
        }
        Some(Matrix {
            rows: rows.into_iter().map(|r| r[n..].to_vec()).collect(),
        })
    }

    /// Basis of the right kernel `{ v : self * v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<T>> {
        let mut rows = self.rows.clone();
        let ncols = self.ncols();
        let (pivots, _) = Self::eliminate(&mut rows, ncols);
        let zero = self.any_entry().zero_like();
        let one = zero.one_like();
        (0..ncols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![zero.clone(); ncols];
                v[free] = one.clone();
                for (r, &pc) in pivots.iter().enumerate() {
                    v[pc] = rows[r][free].negated();
                }
                v
            })
            .collect()
    }

    /// Solves `self * v = b`, if consistent.
    pub fn solve(&self, b: &[T]) -> Option<Vec<T>> {
        let ncols = self.ncols();
        let mut rows: Vec<Vec<T>> = self
            .rows
            .iter()
            .zip(b)
            .map(|(r, bi)| {
                let mut r = r.clone();
                r.push(bi.clone());
                r
            })
            .collect();
        let (pivots, _) = Self::eliminate(&mut rows, ncols + 1);
        if pivots.last() == Some(&ncols) {
            return None;
        }
        let zero = self.any_entry().zero_like();
        let mut v = vec![zero; ncols];
        for (r, &pc) in pivots.iter().enumerate() {
            v[pc] = rows[r][ncols].clone();
        }
        Some(v)
    }
}

impl<T: Scalar + fmt::Display> fmt::Display for Matrix<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            let cells: Vec<String> = r.iter().map(ToString::to_string).collect();
            write!(f, "{}", cells.join(", "))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ConstField;

    fn m(f: &ConstField, rows: &[&[i64]]) -> Matrix<RatFunc> {
        Matrix::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&v| RatFunc::from_int(f, v)).collect())
                .collect(),
        )
    }

    #[test]
    fn det_inverse_nullspace() {
        let f = ConstField::rationals();
        let a = m(&f, &[&[2, 1], &[7, 4]]);
        assert_eq!(a.det(), RatFunc::from_int(&f, 1));
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2, &RatFunc::one(&f)));
        let s = m(&f, &[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        assert!(s.det().is_zero());
        let ns = s.nullspace();
        assert_eq!(ns.len(), 1);
        assert!(s.mul_vec(&ns[0]).iter().all(RatFunc::is_zero));
    }

    #[test]
    fn det_sign_under_swap() {
        let f = ConstField::rationals();
        let a = m(&f, &[&[0, 1], &[1, 0]]);
        assert_eq!(a.det(), RatFunc::from_int(&f, -1));
    }

    #[test]
    fn solve_inconsistent() {
        let f = ConstField::rationals();
        let a = m(&f, &[&[1, 1], &[1, 1]]);
        let one = RatFunc::one(&f);
        assert!(a.solve(&[one.clone(), RatFunc::zero(&f)]).is_none());
        assert!(a.solve(&[one.clone(), one]).is_some());
    }
}
