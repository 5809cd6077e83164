//! Integral vertices of SATP(m, n), the 1-skeleton, the fractional vertex
//! family with denominators `n + 1`, and exhaustive vertex enumeration for
//! small systems.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use crate::block::{var_index, BlockPoint};
use crate::error::{input_err, Error, ParseError, Result};
use crate::linalg::{rank, unique_solution};
use crate::polytope::{build_satp_lp, cell};
use crate::rational::Rational;
use crate::system::LinearSystem;

/// Default cap on `2^m · 3^n` for anything that walks all integral vertices.
pub const DEFAULT_CODE_BUDGET: u128 = 1_000_000;
/// Default cap on the variable count accepted by [`enumerate_lp_vertices`].
pub const DEFAULT_LP_VERTEX_BUDGET: usize = 24;

/// An integral vertex of SATP(m, n): `row ∈ {0,1}^m`, `col ∈ {0,1,2}^n`.
/// Block `(i, j)` carries its unit at `k = col[j]`, `l = row[i]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexCode {
    pub row: Vec<u8>,
    pub col: Vec<u8>,
}

impl VertexCode {
    pub fn new(row: Vec<u8>, col: Vec<u8>) -> Result<Self> {
        if row.iter().any(|&r| r > 1) || col.iter().any(|&c| c > 2) {
            return input_err("row entries must be 0/1 and col entries 0/1/2");
        }
        Ok(VertexCode { row, col })
    }

    pub fn m(&self) -> usize {
        self.row.len()
    }

    pub fn n(&self) -> usize {
        self.col.len()
    }

    /// Value of the objective `c` at this vertex: the sum of the selected cell
    /// of every block.
    pub fn value(&self, c: &BlockPoint) -> Rational {
        let mut s = Rational::zero();
        for (i, &r) in self.row.iter().enumerate() {
            for (j, &k) in self.col.iter().enumerate() {
                s += c.get(i, j, k as usize, r as usize);
            }
        }
        s
    }
}

impl fmt::Display for VertexCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.row {
            write!(f, "{r}")?;
        }
        f.write_str("/")?;
        for c in &self.col {
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

impl FromStr for VertexCode {
    type Err = ParseError;

    /// Parses `row/col`, e.g. `01/20`.
    fn from_str(s: &str) -> std::result::Result<Self, ParseError> {
        let (r, c) = s
            .trim()
            .split_once('/')
            .ok_or_else(|| ParseError::new(format!("vertex code `{s}` is not `row/col`")))?;
        let digits = |t: &str, max: u8| -> std::result::Result<Vec<u8>, ParseError> {
            t.bytes()
                .map(|b| match b.checked_sub(b'0') {
                    Some(d) if d <= max => Ok(d),
                    _ => Err(ParseError::new(format!("bad digit in vertex code `{s}`"))),
                })
                .collect()
        };
        let row = digits(r, 1)?;
        let col = digits(c, 2)?;
        if row.is_empty() || col.is_empty() {
            return Err(ParseError::new("vertex code parts must be non-empty"));
        }
        Ok(VertexCode { row, col })
    }
}

/// `2^m · 3^n`, saturating.
pub fn code_count(m: usize, n: usize) -> u128 {
    let p2 = 2u128.checked_pow(m as u32);
    let p3 = 3u128.checked_pow(n as u32);
    match (p2, p3) {
        (Some(a), Some(b)) => a.saturating_mul(b),
        _ => u128::MAX,
    }
}

/// The code at position `idx` of the lexicographic order (row first).
pub fn code_at(m: usize, n: usize, mut idx: u128) -> VertexCode {
    let mut col = vec![0u8; n];
    for c in col.iter_mut().rev() {
        *c = (idx % 3) as u8;
        idx /= 3;
    }
    let mut row = vec![0u8; m];
    for r in row.iter_mut().rev() {
        *r = (idx % 2) as u8;
        idx /= 2;
    }
    VertexCode { row, col }
}

pub fn check_budget(m: usize, n: usize, budget: u128) -> Result<u128> {
    let needed = code_count(m, n);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(needed)
}

pub fn code_to_point(code: &VertexCode) -> BlockPoint {
    let mut p = BlockPoint::zeros(code.m(), code.n());
    for (i, &r) in code.row.iter().enumerate() {
        for (j, &k) in code.col.iter().enumerate() {
            p.set(i, j, k as usize, r as usize, Rational::one());
        }
    }
    p
}

pub fn point_to_code(p: &BlockPoint) -> Result<VertexCode> {
    let (m, n) = (p.m(), p.n());
    let mut row: Vec<Option<u8>> = vec![None; m];
    let mut col: Vec<Option<u8>> = vec![None; n];
    for (i, row_i) in row.iter_mut().enumerate() {
        for (j, col_j) in col.iter_mut().enumerate() {
            let mut unit = None;
            for k in 0..3 {
                for l in 0..2 {
                    let v = p.get(i, j, k, l);
                    if v.is_zero() {
                        continue;
                    }
                    if !v.is_one() || unit.is_some() {
                        return Err(Error::NotAVertex(format!(
                            "block ({}, {}) is not a single unit",
                            i + 1,
                            j + 1
                        )));
                    }
                    unit = Some((k as u8, l as u8));
                }
            }
            let Some((k, l)) = unit else {
                return Err(Error::NotAVertex(format!(
                    "block ({}, {}) is empty",
                    i + 1,
                    j + 1
                )));
            };
            if *row_i.get_or_insert(l) != l || *col_j.get_or_insert(k) != k {
                return Err(Error::NotAVertex(format!(
                    "block ({}, {}) is inconsistent with its row or column",
                    i + 1,
                    j + 1
                )));
            }
        }
    }
    Ok(VertexCode {
        row: row.into_iter().map(|r| r.unwrap_or(0)).collect(),
        col: col.into_iter().map(|c| c.unwrap_or(0)).collect(),
    })
}

pub fn enumerate_integral_vertices(m: usize, n: usize, budget: u128) -> Result<Vec<VertexCode>> {
    let count = check_budget(m, n, budget)?;
    Ok((0..count).map(|idx| code_at(m, n, idx)).collect())
}

fn hamming(a: &[u8], b: &[u8]) -> usize {
    a.iter().zip(b).filter(|(x, y)| x != y).count()
}

/// Adjacency on the 1-skeleton of SATP(m, n).
pub fn adjacent(u: &VertexCode, v: &VertexCode) -> Result<bool> {
    if u.m() != v.m() || u.n() != v.n() {
        return input_err("vertex codes have different shapes");
    }
    if u == v {
        return input_err("adjacency is only defined for distinct vertices");
    }
    let dr = hamming(&u.row, &v.row);
    let dc = hamming(&u.col, &v.col);
    Ok((dr > 0 && dc > 0) || (dr == 1 && dc == 0) || (dr == 0 && dc == 1))
}

#[derive(Debug, Clone)]
pub struct SkeletonGraph {
    pub codes: Vec<VertexCode>,
    pub adjacency: Vec<Vec<bool>>,
}

impl SkeletonGraph {
    pub fn edge_count(&self) -> usize {
        self.adjacency
            .iter()
            .map(|r| r.iter().filter(|&&a| a).count())
            .sum::<usize>()
            / 2
    }

    /// Longest shortest path; `None` when the graph is disconnected.
    pub fn diameter(&self) -> Option<usize> {
        let n = self.codes.len();
        let mut best = 0;
        for s in 0..n {
            let mut dist = vec![usize::MAX; n];
            dist[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(a) = queue.pop_front() {
                for b in 0..n {
                    if self.adjacency[a][b] && dist[b] == usize::MAX {
                        dist[b] = dist[a] + 1;
                        queue.push_back(b);
                    }
                }
            }
            best = best.max(*dist.iter().max()?);
            if dist.contains(&usize::MAX) {
                return None;
            }
        }
        Some(best)
    }

    pub fn is_clique(&self, members: &[VertexCode]) -> bool {
        let idx: Vec<Option<usize>> = members
            .iter()
            .map(|c| self.codes.iter().position(|d| d == c))
            .collect();
        idx.iter().enumerate().all(|(a, ia)| {
            idx.iter().skip(a + 1).all(|ib| match (ia, ib) {
                (Some(x), Some(y)) => self.adjacency[*x][*y],
                _ => false,
            })
        })
    }
}

pub fn skeleton(m: usize, n: usize, budget: u128) -> Result<SkeletonGraph> {
    let codes = enumerate_integral_vertices(m, n, budget)?;
    let k = codes.len();
    let mut adjacency = vec![vec![false; k]; k];
    for a in 0..k {
        for b in a + 1..k {
            let e = adjacent(&codes[a], &codes[b])?;
            adjacency[a][b] = e;
            adjacency[b][a] = e;
        }
    }
    Ok(SkeletonGraph { codes, adjacency })
}

/// The `2^min(m,n)` codes with `row_k = col_k` on the first `min(m, n)`
/// coordinates and zeros elsewhere.
pub fn construct_clique(m: usize, n: usize) -> Vec<VertexCode> {
    let d = m.min(n);
    (0..1u64 << d)
        .map(|mask| {
            let bit = |k: usize| ((mask >> (d - 1 - k)) & 1) as u8;
            let mut row = vec![0u8; m];
            let mut col = vec![0u8; n];
            for k in 0..d {
                row[k] = bit(k);
                col[k] = bit(k);
            }
            VertexCode { row, col }
        })
        .collect()
}

/// Cells of block `(i, j)` (1-based) forced to zero in the fractional
/// vertex of SATP_LP(n, n).
fn fractional_zero_cells(n: usize, i: usize, j: usize) -> [(usize, usize); 3] {
    use cell::*;
    const NONE: (usize, usize) = (usize::MAX, usize::MAX);
    if i == j {
        [Y, T, U]
    } else if j == i + 1 {
        [Y, Z, V]
    } else if j == 1 && i == n - 1 {
        [X, T, V]
    } else if j == 1 && i == n {
        [Y, Z, V]
    } else if j == 1 && i == 2 {
        [Y, T, U]
    } else if j >= 2 && 2 * j - 1 <= n && (i == 2 * j - 1 || i == 2 * j) {
        [Y, Z, U]
    } else if i < j {
        [Y, T, NONE]
    } else {
        [T, U, NONE]
    }
}

/// The fractional vertex of SATP_LP(n, n) whose smallest positive
/// coordinate is `1/(n + 1)`, for `n >= 4`.
///
/// The point is pinned down by its zero pattern: diagonal blocks
/// `[x 0; z 0; 0 v]`, superdiagonal blocks `[x 0; 0 t; u 0]`, the paired
/// rows `2k-1, 2k` in column `k` (for odd `n` the last pair is the single
/// row `n` in column `(n+1)/2`), the closure of the last two rows in the
/// first column and two-zero fillers elsewhere. Together with the
/// SATP_LP equalities this has a unique solution, which is verified to be a
/// vertex before returning.
pub fn fractional_vertex(n: usize) -> Result<BlockPoint> {
    if n < 4 {
        return Err(Error::UnsupportedDimension(format!(
            "the fractional vertex construction needs n >= 4, got {n}"
        )));
    }
    let sys = build_satp_lp(n, n)?;
    let nv = sys.var_count();
    let mut a: Vec<Vec<Rational>> = sys.eq_rows.iter().map(|r| r.coeffs.clone()).collect();
    let mut b: Vec<Rational> = sys.eq_rows.iter().map(|r| r.rhs.clone()).collect();
    for i in 1..=n {
        for j in 1..=n {
            for (k, l) in fractional_zero_cells(n, i, j) {
                if k == usize::MAX {
                    continue;
                }
                let mut row = vec![Rational::zero(); nv];
                row[var_index(n, i - 1, j - 1, k, l)] = Rational::one();
                a.push(row);
                b.push(Rational::zero());
            }
        }
    }
    let x = unique_solution(&a, &b, nv).ok_or_else(|| {
        Error::Internal(format!(
            "fractional vertex system for n = {n} is not uniquely solvable"
        ))
    })?;
    let p = BlockPoint::from_flat(n, n, x)?;
    if !sys.is_feasible(p.as_slice()) || !verify_vertex(&p, &sys)? {
        return Err(Error::Internal(format!(
            "constructed point for n = {n} is not a vertex of SATP_LP"
        )));
    }
    Ok(p)
}

/// True iff the constraints tight at `p` determine it uniquely.
pub fn verify_vertex(p: &BlockPoint, sys: &LinearSystem) -> Result<bool> {
    verify_vertex_flat(p.as_slice(), sys)
}

pub fn verify_vertex_flat(x: &[Rational], sys: &LinearSystem) -> Result<bool> {
    if x.len() != sys.var_count() {
        return input_err(format!(
            "point has {} coordinates, system has {} variables",
            x.len(),
            sys.var_count()
        ));
    }
    if !sys.is_feasible(x) {
        return input_err("point is not feasible for the system");
    }
    Ok(rank(&sys.tight_rows(x)) == sys.var_count())
}

/// True iff `p` and `q` are distinct vertices spanning an edge: the
/// constraints tight at both leave a one-dimensional solution space.
pub fn is_edge(sys: &LinearSystem, p: &[Rational], q: &[Rational]) -> Result<bool> {
    if p == q {
        return input_err("an edge needs two distinct vertices");
    }
    if !verify_vertex_flat(p, sys)? || !verify_vertex_flat(q, sys)? {
        return Err(Error::NotAVertex("edge endpoints must be vertices".into()));
    }
    let tq = sys.tight_set(q);
    let common: Vec<Vec<Rational>> = sys
        .tight_set(p)
        .into_iter()
        .filter(|c| tq.binary_search(c).is_ok())
        .map(|c| sys.constraint_row(c).0)
        .collect();
    Ok(rank(&common) + 1 == sys.var_count())
}

/// Standard-form data `A y = b`, `y >= 0`, with one slack per inequality.
struct StandardForm {
    cols: Vec<Vec<Rational>>,
    b: Vec<Rational>,
    original: usize,
}

fn standard_form(sys: &LinearSystem) -> Result<StandardForm> {
    if sys.nonneg.iter().any(|&nn| !nn) {
        return input_err("vertex enumeration needs every variable to be nonnegative");
    }
    let nv = sys.var_count();
    let ns = sys.ineq_rows.len();
    let rows: Vec<(&[Rational], &Rational, Option<usize>)> = sys
        .eq_rows
        .iter()
        .map(|r| (r.coeffs.as_slice(), &r.rhs, None))
        .chain(
            sys.ineq_rows
                .iter()
                .enumerate()
                .map(|(s, r)| (r.coeffs.as_slice(), &r.rhs, Some(s))),
        )
        .collect();
    let mut cols = vec![vec![Rational::zero(); rows.len()]; nv + ns];
    let mut b = Vec::with_capacity(rows.len());
    for (r, (coeffs, rhs, slack)) in rows.into_iter().enumerate() {
        for (j, c) in coeffs.iter().enumerate() {
            cols[j][r] = c.clone();
        }
        if let Some(s) = slack {
            cols[nv + s][r] = Rational::one();
        }
        b.push(rhs.clone());
    }
    Ok(StandardForm {
        cols,
        b,
        original: nv,
    })
}

/// Incremental forward elimination over a growing set of columns.
#[derive(Clone)]
struct Basis {
    /// Reduced columns with a unit at their pivot row and zeros at all
    /// earlier pivot rows.
    reduced: Vec<(usize, Vec<Rational>)>,
    residual: Vec<Rational>,
}

impl Basis {
    fn reduce(&self, v: &mut [Rational]) {
        for (p, col) in &self.reduced {
            if v[*p].is_zero() {
                continue;
            }
            let f = v[*p].clone();
            for (x, c) in v.iter_mut().zip(col) {
                if !c.is_zero() {
                    *x -= &f * c;
                }
            }
        }
    }

    /// Adds a column; returns false (leaving `self` untouched) when it is
    /// dependent on the columns already present.
    fn push(&mut self, col: &[Rational]) -> bool {
        let mut v = col.to_vec();
        self.reduce(&mut v);
        let Some(p) = v.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = v[p].recip();
        for x in v.iter_mut() {
            if !x.is_zero() {
                *x = &*x * &inv;
            }
        }
        if !self.residual[p].is_zero() {
            let f = self.residual[p].clone();
            for (x, c) in self.residual.iter_mut().zip(&v) {
                if !c.is_zero() {
                    *x -= &f * c;
                }
            }
        }
        self.reduced.push((p, v));
        true
    }

    fn spans_rhs(&self) -> bool {
        self.residual.iter().all(Rational::is_zero)
    }
}

/// All vertices of `{x : sys}` by exhaustive search over linearly
/// independent supports in standard form. Each vertex has a unique support,
/// so the search emits it exactly once. Requires every variable to be
/// nonnegative; output is sorted.
pub fn enumerate_lp_vertices(sys: &LinearSystem, budget: usize) -> Result<Vec<Vec<Rational>>> {
    sys.validate()?;
    if sys.var_count() > budget {
        return Err(Error::Budget {
            needed: sys.var_count() as u128,
            budget: budget as u128,
        });
    }
    let sf = standard_form(sys)?;
    let all_rows: Vec<Vec<Rational>> = (0..sf.b.len())
        .map(|r| sf.cols.iter().map(|c| c[r].clone()).collect())
        .collect();
    let max_size = rank(&all_rows);
    let mut out = Vec::new();
    let basis = Basis {
        reduced: Vec::new(),
        residual: sf.b.clone(),
    };
    let mut support = Vec::new();
    search(&sf, &basis, 0, max_size, &mut support, &mut out);
    out.sort();
    out.dedup();
    Ok(out)
}

fn search(
    sf: &StandardForm,
    basis: &Basis,
    start: usize,
    max_size: usize,
    support: &mut Vec<usize>,
    out: &mut Vec<Vec<Rational>>,
) {
    if basis.spans_rhs() {
        if let Some(x) = solve_on_support(sf, support) {
            out.push(x);
        }
        return;
    }
    if support.len() == max_size {
        return;
    }
    for c in start..sf.cols.len() {
        let mut next = basis.clone();
        if !next.push(&sf.cols[c]) {
            continue;
        }
        support.push(c);
        search(sf, &next, c + 1, max_size, support, out);
        support.pop();
    }
}

/// The unique solution supported on `support`, if it is strictly positive
/// there; projected onto the original variables.
fn solve_on_support(sf: &StandardForm, support: &[usize]) -> Option<Vec<Rational>> {
    let rows = sf.b.len();
    let a: Vec<Vec<Rational>> = (0..rows)
        .map(|r| support.iter().map(|&c| sf.cols[c][r].clone()).collect())
        .collect();
    let y = if support.is_empty() {
        Vec::new()
    } else {
        unique_solution(&a, &sf.b, support.len())?
    };
    if y.iter().any(|v| !v.is_positive()) {
        return None;
    }
    let mut x = vec![Rational::zero(); sf.original];
    for (&c, v) in support.iter().zip(y) {
        if c < sf.original {
            x[c] = v;
        }
    }
    Some(x)
}
