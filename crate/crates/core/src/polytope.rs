//! Constraint systems for SATP_LP, SATP²_LP, BQP_LP (both forms) and MET.
//!
//! SATP systems use the block layout of [`crate::block`]. The pairwise
//! consistency equalities are emitted only for adjacent pairs (columns `j`,
//! `j+1`; rows `i`, `i+1`); they span the all-pairs family, so the feasible
//! set is unchanged.
//!
//! BQP_LP(n) and MET(n) use `n` variables `x_i` followed by the `C(n,2)`
//! products `x_{i,j}` (`i < j`, lexicographic). The standard form uses four
//! variables `x^{k,l}_{i,j}` (`k, l ∈ {1,2}`) per upper-triangular position
//! `i <= j`, positions in row-major order.

use crate::block::{var_index, BlockPoint};
use crate::error::{input_err, Error, Result};
use crate::rational::Rational;
use crate::system::{LinearSystem, Row};

/// Cell shorthands inside a block, as `(k, l)`.
pub mod cell {
    pub const X: (usize, usize) = (0, 0);
    pub const Y: (usize, usize) = (0, 1);
    pub const Z: (usize, usize) = (1, 0);
    pub const T: (usize, usize) = (1, 1);
    pub const U: (usize, usize) = (2, 0);
    pub const V: (usize, usize) = (2, 1);
    /// `x + t + v`: the cells counted by the "even" side of the SATP² rows.
    pub const EVEN: [(usize, usize); 3] = [X, T, V];
    /// `y + z + u`.
    pub const ODD: [(usize, usize); 3] = [Y, Z, U];
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PolytopeId {
    SatpLp { m: usize, n: usize },
    Satp2Lp { m: usize, n: usize },
    BqpLp { n: usize },
    BqpStandard { n: usize },
    Met { n: usize },
}

impl PolytopeId {
    pub fn build(self) -> Result<LinearSystem> {
        match self {
            PolytopeId::SatpLp { m, n } => build_satp_lp(m, n),
            PolytopeId::Satp2Lp { m, n } => build_satp2_lp(m, n),
            PolytopeId::BqpLp { n } => build_bqp_lp(n),
            PolytopeId::BqpStandard { n } => build_bqp_standard(n),
            PolytopeId::Met { n } => build_met(n),
        }
    }
}

fn check_dims(m: usize, n: usize) -> Result<()> {
    if m == 0 || n == 0 {
        return input_err(format!("block dimensions must be positive, got {m}×{n}"));
    }
    Ok(())
}

/// SATP_LP(m, n): `mn` block sums, `m(n-1)` row-consistency rows and
/// `3n(m-1)` column-consistency rows, all variables nonnegative.
pub fn build_satp_lp(m: usize, n: usize) -> Result<LinearSystem> {
    check_dims(m, n)?;
    let nv = 6 * m * n;
    let mut sys = LinearSystem::new(nv);
    let at = |i, j, k, l| var_index(n, i, j, k, l);
    for i in 0..m {
        for j in 0..n {
            let entries: Vec<(usize, i64)> = (0..3)
                .flat_map(|k| (0..2).map(move |l| (k, l)))
                .map(|(k, l)| (at(i, j, k, l), 1))
                .collect();
            sys.add_eq(Row::sparse(nv, &entries, 1));
        }
    }
    // sum_k x^{k,1} constant along each block row
    for i in 0..m {
        for j in 0..n.saturating_sub(1) {
            let mut entries = Vec::with_capacity(6);
            for k in 0..3 {
                entries.push((at(i, j, k, 0), 1));
                entries.push((at(i, j + 1, k, 0), -1));
            }
            sys.add_eq(Row::sparse(nv, &entries, 0));
        }
    }
    // x^{k,1} + x^{k,2} constant down each block column, per k
    for k in 0..3 {
        for j in 0..n {
            for i in 0..m.saturating_sub(1) {
                let entries = [
                    (at(i, j, k, 0), 1),
                    (at(i, j, k, 1), 1),
                    (at(i + 1, j, k, 0), -1),
                    (at(i + 1, j, k, 1), -1),
                ];
                sys.add_eq(Row::sparse(nv, &entries, 0));
            }
        }
    }
    Ok(sys)
}

/// The two SATP² inequalities for rows `i != k` and columns `j != l`, with
/// block row indices of column `c` remapped through `perm[c]`.
fn satp2_pair_rows(
    n: usize,
    nv: usize,
    (i, k, j, l): (usize, usize, usize, usize),
    perm: &dyn Fn(usize, usize) -> usize,
) -> [Row; 2] {
    use cell::{EVEN, ODD};
    let group = |r: usize, c: usize, cells: [(usize, usize); 3]| {
        cells.map(|(kk, ll)| (var_index(n, r, c, perm(c, kk), ll), 1i64))
    };
    let mut first = Vec::with_capacity(12);
    first.extend(group(i, j, ODD));
    first.extend(group(i, l, EVEN));
    first.extend(group(k, j, EVEN));
    first.extend(group(k, l, EVEN));
    let mut second = Vec::with_capacity(12);
    second.extend(group(i, j, ODD));
    second.extend(group(i, l, ODD));
    second.extend(group(k, j, EVEN));
    second.extend(group(k, l, ODD));
    [Row::sparse(nv, &first, 3), Row::sparse(nv, &second, 3)]
}

/// SATP²_LP(m, n): SATP_LP plus `2·m(m-1)·n(n-1)` inequalities, two per
/// ordered row pair and ordered column pair. Identical to SATP_LP when
/// `m < 2` or `n < 2`.
pub fn build_satp2_lp(m: usize, n: usize) -> Result<LinearSystem> {
    build_satp2_lp_permuted(m, n, &vec![[0, 1, 2]; n])
}

/// SATP²_LP with the block rows of column `j` renamed: the inequality cell
/// `(k, l)` in column `j` reads coordinate `(perm[j][k], l)`.
pub fn build_satp2_lp_permuted(m: usize, n: usize, perm: &[[usize; 3]]) -> Result<LinearSystem> {
    let mut sys = build_satp_lp(m, n)?;
    if perm.len() != n {
        return input_err("one block-row permutation per column is required");
    }
    let nv = sys.var_count();
    let map = |c: usize, k: usize| perm[c][k];
    for i in 0..m {
        for k in 0..m {
            if i == k {
                continue;
            }
            for j in 0..n {
                for l in 0..n {
                    if j == l {
                        continue;
                    }
                    for row in satp2_pair_rows(n, nv, (i, k, j, l), &map) {
                        sys.add_le(row);
                    }
                }
            }
        }
    }
    Ok(sys)
}

/// Number of `x_{i,j}` product variables for `n` base variables.
pub fn pair_count(n: usize) -> usize {
    n * n.saturating_sub(1) / 2
}

/// Index of `x_{i,j}` (`i < j`) in the BQP_LP / MET variable order.
pub fn bqp_pair_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i < j && j < n);
    // pairs before row i: sum_{r<i} (n-1-r)
    n + i * (2 * n - i - 1) / 2 + (j - i - 1)
}

/// BQP_LP(n): per pair `i < j` (lexicographic) the four rows
/// `x_i + x_j - x_ij <= 1`, `x_ij <= x_i`, `x_ij <= x_j`, `-x_ij <= 0`,
/// followed by the (redundant) bounds `x_i <= 1`.
pub fn build_bqp_lp(n: usize) -> Result<LinearSystem> {
    if n < 2 {
        return input_err(format!("BQP_LP needs n >= 2, got {n}"));
    }
    let nv = n + pair_count(n);
    let mut sys = LinearSystem::new(nv);
    for i in 0..n {
        for j in i + 1..n {
            let p = bqp_pair_index(n, i, j);
            sys.add_le(Row::sparse(nv, &[(i, 1), (j, 1), (p, -1)], 1));
            sys.add_le(Row::sparse(nv, &[(p, 1), (i, -1)], 0));
            sys.add_le(Row::sparse(nv, &[(p, 1), (j, -1)], 0));
            sys.add_le(Row::sparse(nv, &[(p, -1)], 0));
        }
    }
    for i in 0..n {
        sys.add_le(Row::sparse(nv, &[(i, 1)], 1));
    }
    Ok(sys)
}

/// MET(n): BQP_LP(n) plus four triangle rows for every `i < j < k`.
pub fn build_met(n: usize) -> Result<LinearSystem> {
    if n < 3 {
        return input_err(format!("MET needs n >= 3, got {n}"));
    }
    let mut sys = build_bqp_lp(n)?;
    let nv = sys.var_count();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let ij = bqp_pair_index(n, i, j);
                let ik = bqp_pair_index(n, i, k);
                let jk = bqp_pair_index(n, j, k);
                sys.add_le(Row::sparse(
                    nv,
                    &[(i, 1), (j, 1), (k, 1), (ij, -1), (ik, -1), (jk, -1)],
                    1,
                ));
                sys.add_le(Row::sparse(nv, &[(i, -1), (ij, 1), (ik, 1), (jk, -1)], 0));
                sys.add_le(Row::sparse(nv, &[(j, -1), (ij, 1), (ik, -1), (jk, 1)], 0));
                sys.add_le(Row::sparse(nv, &[(k, -1), (ij, -1), (ik, 1), (jk, 1)], 0));
            }
        }
    }
    Ok(sys)
}

/// Position of `(i, j)`, `i <= j`, in the upper-triangular row-major order.
pub fn upper_index(n: usize, i: usize, j: usize) -> usize {
    debug_assert!(i <= j && j < n);
    i * (2 * n - i + 1) / 2 + (j - i)
}

/// Variable index of `x^{k,l}_{i,j}` (0-based `k, l`) in the standard form.
pub fn bqp_std_index(n: usize, i: usize, j: usize, k: usize, l: usize) -> usize {
    upper_index(n, i, j) * 4 + k * 2 + l
}

/// BQP_LP(n) in standard form: block sums, column and row consistency over
/// the upper triangle, and `x^{1,2}_{i,i} = x^{2,1}_{i,i} = 0`.
pub fn build_bqp_standard(n: usize) -> Result<LinearSystem> {
    if n < 2 {
        return input_err(format!("BQP standard form needs n >= 2, got {n}"));
    }
    let nv = 4 * (n * (n + 1) / 2);
    let at = |i, j, k, l| bqp_std_index(n, i, j, k, l);
    let mut sys = LinearSystem::new(nv);
    for i in 0..n {
        for j in i..n {
            let e: Vec<(usize, i64)> = (0..4).map(|c| (at(i, j, c / 2, c % 2), 1)).collect();
            sys.add_eq(Row::sparse(nv, &e, 1));
        }
    }
    // x^{1,1} + x^{1,2} constant down column j over rows 0..=j
    for j in 0..n {
        for i in 0..j {
            sys.add_eq(Row::sparse(
                nv,
                &[
                    (at(i, j, 0, 0), 1),
                    (at(i, j, 0, 1), 1),
                    (at(i + 1, j, 0, 0), -1),
                    (at(i + 1, j, 0, 1), -1),
                ],
                0,
            ));
        }
    }
    // x^{1,1} + x^{2,1} constant along row i over columns i..n
    for i in 0..n {
        for j in i..n - 1 {
            sys.add_eq(Row::sparse(
                nv,
                &[
                    (at(i, j, 0, 0), 1),
                    (at(i, j, 1, 0), 1),
                    (at(i, j + 1, 0, 0), -1),
                    (at(i, j + 1, 1, 0), -1),
                ],
                0,
            ));
        }
    }
    for i in 0..n {
        sys.add_eq(Row::sparse(nv, &[(at(i, i, 0, 1), 1)], 0));
        sys.add_eq(Row::sparse(nv, &[(at(i, i, 1, 0), 1)], 0));
    }
    Ok(sys)
}

/// Maps a BQP_LP(n) point `(x_i, x_ij)` to standard-form coordinates via
/// the slack identities.
pub fn bqp_to_standard(n: usize, x: &[Rational]) -> Result<Vec<Rational>> {
    if x.len() != n + pair_count(n) {
        return input_err("BQP point has the wrong length");
    }
    let diag = |i: usize| &x[i];
    let prod = |i: usize, j: usize| {
        if i == j {
            x[i].clone()
        } else {
            x[bqp_pair_index(n, i, j)].clone()
        }
    };
    let one = Rational::one();
    let mut out = vec![Rational::zero(); 4 * (n * (n + 1) / 2)];
    for i in 0..n {
        for j in i..n {
            let xij = prod(i, j);
            out[bqp_std_index(n, i, j, 0, 0)] = xij.clone();
            out[bqp_std_index(n, i, j, 0, 1)] = diag(j) - &xij;
            out[bqp_std_index(n, i, j, 1, 0)] = diag(i) - &xij;
            out[bqp_std_index(n, i, j, 1, 1)] = &(&(&one - diag(i)) - diag(j)) + &xij;
        }
    }
    Ok(out)
}

/// Inverse of [`bqp_to_standard`] on its image: reads `x_i = x^{1,1}_{i,i}`
/// and `x_ij = x^{1,1}_{i,j}`.
pub fn standard_to_bqp(n: usize, s: &[Rational]) -> Result<Vec<Rational>> {
    if s.len() != 4 * (n * (n + 1) / 2) {
        return input_err("standard-form point has the wrong length");
    }
    let mut x = vec![Rational::zero(); n + pair_count(n)];
    for i in 0..n {
        x[i] = s[bqp_std_index(n, i, i, 0, 0)].clone();
        for j in i + 1..n {
            x[bqp_pair_index(n, i, j)] = s[bqp_std_index(n, i, j, 0, 0)].clone();
        }
    }
    Ok(x)
}

/// Projects a point of the face `x^{3,·} = 0`, `x^{1,2}_{i,i} = x^{2,1}_{i,i} = 0`
/// of SATP(n, n) onto BQP standard-form coordinates, keeping the blocks
/// `i <= j` and their first two block rows.
pub fn project_satp_face_to_bqp(point: &BlockPoint) -> Result<Vec<Rational>> {
    let n = point.n();
    if point.m() != n {
        return input_err(format!(
            "face projection needs a square point, got {}×{}",
            point.m(),
            n
        ));
    }
    for i in 0..n {
        for j in 0..n {
            for l in 0..2 {
                if !point.get(i, j, 2, l).is_zero() {
                    return Err(Error::FaceMembership(format!(
                        "x^{{3,{}}}_{{{},{}}} = {} is not zero",
                        l + 1,
                        i + 1,
                        j + 1,
                        point.get(i, j, 2, l)
                    )));
                }
            }
        }
        for (k, l) in [(0, 1), (1, 0)] {
            if !point.get(i, i, k, l).is_zero() {
                return Err(Error::FaceMembership(format!(
                    "diagonal coordinate x^{{{},{}}}_{{{},{}}} is not zero",
                    k + 1,
                    l + 1,
                    i + 1,
                    i + 1
                )));
            }
        }
    }
    let mut out = vec![Rational::zero(); 4 * (n * (n + 1) / 2)];
    for i in 0..n {
        for j in i..n {
            for k in 0..2 {
                for l in 0..2 {
                    out[bqp_std_index(n, i, j, k, l)] = point.get(i, j, k, l).clone();
                }
            }
        }
    }
    Ok(out)
}
