//! Dense exact linear algebra over [`Rational`].

use crate::rational::Rational;

/// Reduced row echelon form of an augmented or plain matrix.
#[derive(Debug, Clone)]
pub struct Echelon {
    pub rows: Vec<Vec<Rational>>,
    /// Pivot column of each non-zero row, in row order.
    pub pivots: Vec<usize>,
}

/// Gauss-Jordan elimination restricted to the first `cols` columns; any
/// trailing columns (e.g. a right-hand side) are carried along.
pub fn reduce(mut rows: Vec<Vec<Rational>>, cols: usize) -> Echelon {
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows.len() {
            break;
        }
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(r, p);
        let inv = rows[r][c].recip();
        if !inv.is_one() {
            for v in rows[r].iter_mut().skip(c) {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let support: Vec<usize> = (c..rows[r].len())
            .filter(|&k| !rows[r][k].is_zero())
            .collect();
        for i in 0..rows.len() {
            if i == r || rows[i][c].is_zero() {
                continue;
            }
            let f = rows[i][c].clone();
            for &k in &support {
                let delta = &f * &rows[r][k];
                rows[i][k] -= delta;
            }
        }
        pivots.push(c);
        r += 1;
    }
    // zero rows over the coefficient part survive only when inconsistent
    let rows = rows
        .into_iter()
        .enumerate()
        .filter(|(i, row)| *i < pivots.len() || row.iter().any(|v| !v.is_zero()))
        .map(|(_, row)| row)
        .collect();
    Echelon { rows, pivots }
}

/// Exact rank of a list of equal-length rows.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    let Some(width) = rows.first().map(Vec::len) else {
        return 0;
    };
    debug_assert!(rows.iter().all(|r| r.len() == width));
    reduce(rows.to_vec(), width).pivots.len()
}

/// Solution of `A x = b` when it exists and is unique.
pub fn unique_solution(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Option<Vec<Rational>> {
    match solve(a, b, cols) {
        Solution::Unique(x) => Some(x),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Solution {
    Inconsistent,
    Unique(Vec<Rational>),
    /// Consistent with a solution space of the given dimension (> 0).
    Underdetermined {
        dimension: usize,
    },
}

pub fn solve(a: &[Vec<Rational>], b: &[Rational], cols: usize) -> Solution {
    assert_eq!(a.len(), b.len());
    let aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            debug_assert_eq!(row.len(), cols);
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    let ech = reduce(aug, cols);
    if ech.rows.len() > ech.pivots.len() {
        return Solution::Inconsistent;
    }
    if ech.pivots.len() < cols {
        return Solution::Underdetermined {
            dimension: cols - ech.pivots.len(),
        };
    }
    let mut x = vec![Rational::zero(); cols];
    for (row, &p) in ech.rows.iter().zip(&ech.pivots) {
        x[p] = row[cols].clone();
    }
    Solution::Unique(x)
}
