//! Determinants of matrices with polynomial entries.

use crate::algebra::ConstField;

use super::monomial::{VarId, VarSpace};
use super::multipoly::MultiPoly;

/// Determinant by row-by-row expansion over column subsets, `O(2^r * r)`
/// polynomial products. Panics on a non-square or empty matrix.
pub fn det(m: &[Vec<MultiPoly>]) -> MultiPoly {
    let r = m.len();
    assert!(r > 0 && m.iter().all(|row| row.len() == r), "determinant of a non-square matrix");
    assert!(r < 24, "matrix too large for subset expansion");
    let space = m[0][0].space();
    let field = m[0][0].field().clone();
    let mut dp: Vec<Option<MultiPoly>> = vec![None; 1 << r];
    dp[0] = Some(MultiPoly::one(space, &field));
    for mask in 0usize..(1 << r) {
        let Some(acc) = dp[mask].take() else { continue };
        let i = mask.count_ones() as usize;
        if i == r {
            dp[mask] = Some(acc);
            continue;
        }
        for c in 0..r {
            if mask & (1 << c) != 0 || m[i][c].is_zero() {
                continue;
            }
            let above = (mask >> (c + 1)).count_ones();
            let mut term = &acc * &m[i][c];
            if above % 2 == 1 {
                term = -term;
            }
            let slot = &mut dp[mask | (1 << c)];
            *slot = Some(match slot.take() {
                Some(prev) => &prev + &term,
                None => term,
            });
        }
    }
    dp[(1 << r) - 1].take().unwrap_or_else(|| MultiPoly::zero(space, &field))
}

/// `W = det(X[i][j])` in `space`.
pub fn wronskian(space: VarSpace, field: &ConstField) -> MultiPoly {
    let n = space.n;
    let rows: Vec<Vec<MultiPoly>> = (1..=n)
        .map(|i| (1..=n).map(|j| MultiPoly::var(space, field, VarId::Matrix { i, j })).collect())
        .collect();
    det(&rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::RatFunc;

    #[test]
    fn wronskian_small_cases() {
        let f = ConstField::rationals();
        let s = VarSpace::new(2);
        let v = |i, j| MultiPoly::x(s, &f, i, j);
        assert_eq!(wronskian(s, &f), &(&v(1, 1) * &v(2, 2)) - &(&v(1, 2) * &v(2, 1)));
        let s3 = VarSpace::new(3);
        assert_eq!(wronskian(s3, &f).nterms(), 6);
    }

    #[test]
    fn constant_determinant() {
        let f = ConstField::rationals();
        let s = VarSpace::new(1);
        let c = |k| MultiPoly::constant(s, RatFunc::from_int(&f, k));
        let m = vec![vec![c(2), c(1), c(0)], vec![c(7), c(4), c(1)], vec![c(0), c(3), c(5)]];
        // 2*(20-3) - 1*(35-0) + 0 = -1
        assert_eq!(det(&m), c(-1));
    }
}
