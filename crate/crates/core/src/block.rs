//! Points of R^{6mn} in the m×n block-matrix layout.
//!
//! Block `(i, j)` is a 3×2 array indexed by `k ∈ {0,1,2}` (block row) and
//! `l ∈ {0,1}` (block column). The flat variable order is row-major over
//! `(i, j, k, l)`:
//!
//! ```text
//! index(i, j, k, l) = ((i * n + j) * 3 + k) * 2 + l
//! ```
//!
//! Text format: a header line `m n` (or `objective m n` for objective
//! vectors), followed by `3m` lines of `2n` rationals, laid out exactly as
//! the block matrix is usually drawn. `#` starts a comment.

use std::fmt::Write as _;

use crate::error::{ParseError, Result};
use crate::rational::Rational;
use crate::system::strip_comment;

/// Flat index of coordinate `(i, j, k, l)` in an `m × n` block point.
#[inline]
pub fn var_index(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    debug_assert!(j < n && k < 3 && l < 2);
    ((i * n + j) * 3 + k) * 2 + l
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockPoint {
    m: usize,
    n: usize,
    cells: Vec<Rational>,
}

impl BlockPoint {
    pub fn zeros(m: usize, n: usize) -> Self {
        BlockPoint {
            m,
            n,
            cells: vec![Rational::zero(); 6 * m * n],
        }
    }

    pub fn from_flat(m: usize, n: usize, cells: Vec<Rational>) -> Result<Self> {
        if cells.len() != 6 * m * n {
            return crate::error::input_err(format!(
                "expected {} values for a {m}×{n} block point, got {}",
                6 * m * n,
                cells.len()
            ));
        }
        Ok(BlockPoint { m, n, cells })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn as_slice(&self) -> &[Rational] {
        &self.cells
    }

    pub fn into_flat(self) -> Vec<Rational> {
        self.cells
    }

    pub fn get(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        &self.cells[var_index(self.n, i, j, k, l)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, l: usize, v: Rational) {
        let idx = var_index(self.n, i, j, k, l);
        self.cells[idx] = v;
    }

    pub fn get_mut(&mut self, i: usize, j: usize, k: usize, l: usize) -> &mut Rational {
        let idx = var_index(self.n, i, j, k, l);
        &mut self.cells[idx]
    }

    /// The six values of block `(i, j)` as `[k][l]`.
    pub fn block(&self, i: usize, j: usize) -> [[Rational; 2]; 3] {
        std::array::from_fn(|k| std::array::from_fn(|l| self.get(i, j, k, l).clone()))
    }

    /// Inner product with another point of the same shape.
    pub fn dot(&self, other: &BlockPoint) -> Rational {
        crate::system::dot(&self.cells, &other.cells)
    }

    pub fn is_integral(&self) -> bool {
        self.cells.iter().all(Rational::is_integer)
    }

    /// Smallest strictly positive coordinate, if any.
    pub fn min_positive(&self) -> Option<&Rational> {
        self.cells.iter().filter(|v| v.is_positive()).min()
    }

    pub fn to_text(&self, objective: bool) -> String {
        let mut s = String::new();
        if objective {
            writeln!(s, "objective {} {}", self.m, self.n).unwrap();
        } else {
            writeln!(s, "{} {}", self.m, self.n).unwrap();
        }
        for i in 0..self.m {
            for k in 0..3 {
                let line: Vec<String> = (0..self.n)
                    .flat_map(|j| (0..2).map(move |l| (j, l)))
                    .map(|(j, l)| self.get(i, j, k, l).to_string())
                    .collect();
                writeln!(s, "{}", line.join(" ")).unwrap();
            }
        }
        s
    }

    /// Parses either a point or an objective; the flag reports which header was seen.
    pub fn from_text(text: &str) -> std::result::Result<(Self, bool), ParseError> {
        let mut lines = text
            .lines()
            .enumerate()
            .map(|(i, l)| (i + 1, strip_comment(l)))
            .filter(|(_, l)| !l.is_empty());
        let (hl, header) = lines
            .next()
            .ok_or_else(|| ParseError::new("missing `m n` header"))?;
        let mut words: Vec<&str> = header.split_whitespace().collect();
        let objective = words.first() == Some(&"objective");
        if objective || words.first() == Some(&"point") {
            words.remove(0);
        }
        let dims: Vec<usize> = words
            .iter()
            .map(|w| w.parse::<usize>())
            .collect::<std::result::Result<_, _>>()
            .map_err(|_| ParseError::at(hl, "bad `m n` header"))?;
        let [m, n] = dims[..] else {
            return Err(ParseError::at(hl, "header must be `m n`"));
        };
        if m == 0 || n == 0 {
            return Err(ParseError::at(hl, "dimensions must be positive"));
        }
        let mut p = BlockPoint::zeros(m, n);
        for i in 0..m {
            for k in 0..3 {
                let (ln, line) = lines
                    .next()
                    .ok_or_else(|| ParseError::new(format!("expected {} matrix lines", 3 * m)))?;
                let vals = line
                    .split_whitespace()
                    .map(|t| {
                        t.parse::<Rational>()
                            .map_err(|e| ParseError::at(ln, e.message))
                    })
                    .collect::<std::result::Result<Vec<_>, _>>()?;
                if vals.len() != 2 * n {
                    return Err(ParseError::at(
                        ln,
                        format!("expected {} values, got {}", 2 * n, vals.len()),
                    ));
                }
                for (c, v) in vals.into_iter().enumerate() {
                    p.set(i, c / 2, k, c % 2, v);
                }
            }
        }
        if let Some((ln, _)) = lines.next() {
            return Err(ParseError::at(ln, "trailing data after block matrix"));
        }
        Ok((p, objective))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn layout_is_row_major() {
        assert_eq!(var_index(2, 0, 0, 0, 0), 0);
        assert_eq!(var_index(2, 0, 0, 0, 1), 1);
        assert_eq!(var_index(2, 0, 0, 1, 0), 2);
        assert_eq!(var_index(2, 0, 1, 0, 0), 6);
        assert_eq!(var_index(2, 1, 0, 0, 0), 12);
        assert_eq!(var_index(2, 1, 1, 2, 1), 23);
    }

    #[test]
    fn text_layout_matches_block_matrix() {
        let mut p = BlockPoint::zeros(1, 2);
        p.set(0, 1, 2, 0, Rational::new(1, 3));
        p.set(0, 0, 0, 1, Rational::from_integer(-2));
        let text = p.to_text(false);
        assert_eq!(text, "1 2\n0 -2 0 0\n0 0 0 0\n0 0 1/3 0\n");
        let (q, obj) = BlockPoint::from_text(&format!("# c\n{text}")).unwrap();
        assert!(!obj);
        assert_eq!(q, p);
        let (r, obj) = BlockPoint::from_text(&p.to_text(true)).unwrap();
        assert!(obj);
        assert_eq!(r, p);
    }

    #[test]
    fn malformed_text() {
        assert!(BlockPoint::from_text("1 1\n1 0\n0 0\n").is_err());
        assert!(BlockPoint::from_text("1 1\n1 0 0\n0 0\n0 0\n").is_err());
        assert!(BlockPoint::from_text("0 1\n").is_err());
        assert!(BlockPoint::from_text("1 1\n1 0\n0 0\n0 0\n5 5\n").is_err());
    }
}
