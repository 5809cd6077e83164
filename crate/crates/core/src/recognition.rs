//! Integer recognition over SATP_LP for column-balanced objectives and over
//! BQP_LP via the metric strengthening, plus brute-force oracles.
//!
//! A column `j` of an objective `c` is balanced on the block-row pair
//! `(a, b)` when `c^{a,1} + c^{b,2} = c^{a,2} + c^{b,1}` in every block of
//! the column. Recognition renames the block rows of every column so that
//! its pair sits in rows 2 and 3 ("canonical coordinates"), compares the
//! optima over SATP_LP and SATP²_LP there, and on a tie rewrites the
//! SATP²_LP optimizer into a point with a positive `x` in every block. That
//! point splits as `αq + (1-α)h` with `q` integral, which is the witness.

use crate::block::BlockPoint;
use crate::error::{input_err, Error, Result};
use crate::lp::lp_maximize;
use crate::polytope::{
    bqp_pair_index, build_bqp_lp, build_met, build_satp2_lp, build_satp_lp, pair_count,
};
use crate::rational::Rational;
use crate::vertices::{check_budget, code_at, VertexCode};

/// Per column the 1-based pair `(a_j, b_j)`, `a_j < b_j`, on which the
/// objective is balanced.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BalanceCertificate {
    pub pairs: Vec<(usize, usize)>,
}

const PAIRS: [(usize, usize); 3] = [(0, 1), (0, 2), (1, 2)];

/// 0-based pair test.
pub fn column_balanced(c: &BlockPoint, j: usize, a: usize, b: usize) -> bool {
    (0..c.m())
        .all(|i| c.get(i, j, a, 0) + c.get(i, j, b, 1) == c.get(i, j, a, 1) + c.get(i, j, b, 0))
}

/// The lexicographically smallest balancing pair of every column.
pub fn check_balance(c: &BlockPoint) -> Result<BalanceCertificate> {
    let pairs = (0..c.n())
        .map(|j| {
            PAIRS
                .iter()
                .find(|&&(a, b)| column_balanced(c, j, a, b))
                .map(|&(a, b)| (a + 1, b + 1))
                .ok_or(Error::Unbalanced { column: j + 1 })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(BalanceCertificate { pairs })
}

/// Pairs used for canonicalization: `(2, 3)` whenever it balances the
/// column, so that already-canonical objectives are left untouched.
fn preferred_pairs(c: &BlockPoint) -> Result<Vec<(usize, usize)>> {
    let cert = check_balance(c)?;
    Ok(cert
        .pairs
        .into_iter()
        .enumerate()
        .map(|(j, p)| {
            if column_balanced(c, j, 1, 2) {
                (2, 3)
            } else {
                p
            }
        })
        .collect())
}

/// Coordinate renamings between the caller's coordinates and the "view"
/// in which the rewritten point has positive `x` everywhere.
///
/// Cell `(k, l)` of block `(i, j)` in the view is cell
/// `(canonical[j][column[j][k]], l ^ row_swap[i])` in original coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenamingLedger {
    /// Canonical block row → original block row, per column.
    pub canonical: Vec<[usize; 3]>,
    /// View block row → canonical block row, per column.
    pub column: Vec<[usize; 3]>,
    /// Per block row: whether the two block columns are exchanged.
    pub row_swap: Vec<bool>,
    /// Columns whose first view row was rotated in, in order.
    pub rotated: Vec<usize>,
}

impl RenamingLedger {
    /// Ledger whose view is the canonical renaming for 1-based `pairs`.
    pub fn canonicalizing(m: usize, pairs: &[(usize, usize)]) -> Self {
        let canonical = pairs
            .iter()
            .map(|&(a, b)| {
                let (a, b) = (a - 1, b - 1);
                [3 - a - b, a, b]
            })
            .collect();
        RenamingLedger {
            canonical,
            column: vec![[0, 1, 2]; pairs.len()],
            row_swap: vec![false; m],
            rotated: Vec::new(),
        }
    }

    /// True when no step of the rewriting renamed anything.
    pub fn is_empty(&self) -> bool {
        self.rotated.is_empty()
            && self.row_swap.iter().all(|s| !s)
            && self.column.iter().all(|p| *p == [0, 1, 2])
    }

    pub fn original_cell(&self, i: usize, j: usize, k: usize, l: usize) -> (usize, usize) {
        (
            self.canonical[j][self.column[j][k]],
            l ^ self.row_swap[i] as usize,
        )
    }

    pub fn to_view(&self, p: &BlockPoint) -> BlockPoint {
        let mut out = BlockPoint::zeros(p.m(), p.n());
        for i in 0..p.m() {
            for j in 0..p.n() {
                for k in 0..3 {
                    for l in 0..2 {
                        let (ok, ol) = self.original_cell(i, j, k, l);
                        out.set(i, j, k, l, p.get(i, j, ok, ol).clone());
                    }
                }
            }
        }
        out
    }

    pub fn to_original(&self, v: &BlockPoint) -> BlockPoint {
        let mut out = BlockPoint::zeros(v.m(), v.n());
        for i in 0..v.m() {
            for j in 0..v.n() {
                for k in 0..3 {
                    for l in 0..2 {
                        let (ok, ol) = self.original_cell(i, j, k, l);
                        out.set(i, j, ok, ol, v.get(i, j, k, l).clone());
                    }
                }
            }
        }
        out
    }

    /// The integral vertex that is all-`x` in the view, in original coordinates.
    pub fn all_x_code(&self) -> VertexCode {
        VertexCode {
            row: self.row_swap.iter().map(|&s| s as u8).collect(),
            col: (0..self.column.len())
                .map(|j| self.canonical[j][self.column[j][0]] as u8)
                .collect(),
        }
    }
}

/// The point being rewritten, stored in canonical coordinates, plus the
/// view renamings accumulated so far.
struct Rewriter {
    base: BlockPoint,
    column: Vec<[usize; 3]>,
    row_swap: Vec<bool>,
    rotated: Vec<usize>,
}

impl Rewriter {
    fn view(&self, i: usize, j: usize, k: usize, l: usize) -> &Rational {
        self.base
            .get(i, j, self.column[j][k], l ^ self.row_swap[i] as usize)
    }

    /// Sum of view row `k` over both block columns; equal in every block of
    /// column `j`.
    fn column_sum(&self, j: usize, k: usize) -> Rational {
        self.view(0, j, k, 0) + self.view(0, j, k, 1)
    }

    /// Sum of view block column `l = 0`; equal in every block of row `i`.
    fn row_sum(&self, i: usize) -> Rational {
        (0..3).map(|k| self.view(i, 0, k, 0)).sum()
    }

    /// Raises view cell `(k, l)` of block `(i, j)` by a balanced move inside
    /// canonical rows 2 and 3: `+δ` on `(2,1), (3,2)` and `-δ` on `(2,2),
    /// (3,1)` or the reverse. The step is half the largest one keeping the
    /// block nonnegative. Returns false when no positive step exists.
    fn raise(&mut self, i: usize, j: usize, k: usize, l: usize) -> bool {
        let bk = self.column[j][k];
        let bl = l ^ self.row_swap[i] as usize;
        if bk == 0 {
            return false;
        }
        let up = [(1, 0), (2, 1)];
        let down = [(1, 1), (2, 0)];
        let (plus, minus) = if up.contains(&(bk, bl)) {
            (up, down)
        } else {
            (down, up)
        };
        let room = minus
            .iter()
            .map(|&(a, b)| self.base.get(i, j, a, b).clone())
            .min()
            .expect("two cells");
        if !room.is_positive() {
            return false;
        }
        let delta = &room * &Rational::new(1, 2);
        for (a, b) in plus {
            *self.base.get_mut(i, j, a, b) += &delta;
        }
        for (a, b) in minus {
            *self.base.get_mut(i, j, a, b) -= &delta;
        }
        true
    }

    fn raise_or_fail(&mut self, i: usize, j: usize, k: usize, l: usize, step: &str) -> Result<()> {
        if self.raise(i, j, k, l) {
            Ok(())
        } else {
            Err(Error::Internal(format!(
                "{step}: no balanced move raises cell ({}, {}) of block ({}, {})",
                k + 1,
                l + 1,
                i + 1,
                j + 1
            )))
        }
    }

    /// View rows become `(old 2, old 3, old 1)`.
    fn rotate(&mut self, j: usize) {
        let p = self.column[j];
        self.column[j] = [p[1], p[2], p[0]];
        self.rotated.push(j);
    }

    /// Rotated columns first, then the rest in index order.
    fn order(&self) -> Vec<usize> {
        let n = self.base.n();
        let mut order = self.rotated.clone();
        order.extend((0..n).filter(|j| !self.rotated.contains(j)));
        order
    }

    fn first_zero_x(&self) -> Option<(usize, usize, usize)> {
        self.order().into_iter().enumerate().find_map(|(pos, j)| {
            (0..self.base.m())
                .find(|&i| self.view(i, j, 0, 0).is_zero())
                .map(|i| (pos, i, j))
        })
    }

    fn view_point(&self) -> BlockPoint {
        let (m, n) = (self.base.m(), self.base.n());
        let mut out = BlockPoint::zeros(m, n);
        for i in 0..m {
            for j in 0..n {
                for k in 0..3 {
                    for l in 0..2 {
                        out.set(i, j, k, l, self.view(i, j, k, l).clone());
                    }
                }
            }
        }
        out
    }
}

/// Rewrites `w` (original coordinates, feasible for SATP²_LP in the
/// canonical coordinates of `c`) into a point `w*` with the same objective
/// value and a positive `x` in every block of the returned view.
///
/// Rows with an empty first block column are flipped; columns are then
/// arranged so every view row 2 is nonempty and every view row 1 positive,
/// rotating in the columns where it was empty. Afterwards the first block
/// with `x = 0` (column-major, rotated columns first) is repaired either by
/// flipping its row or by rotating its column, each time after balanced
/// moves that make the repair possible. Every repair moves the first zero
/// strictly forward, so at most `mn` repairs happen.
pub fn construct_wstar(w: &BlockPoint, c: &BlockPoint) -> Result<(BlockPoint, RenamingLedger)> {
    let (m, n) = (c.m(), c.n());
    if w.m() != m || w.n() != n {
        return input_err("point and objective have different shapes");
    }
    let pairs = preferred_pairs(c)?;
    let mut ledger = RenamingLedger::canonicalizing(m, &pairs);
    let base = ledger.to_view(w);
    let satp2 = build_satp2_lp(m, n)?;
    if !satp2.is_feasible(base.as_slice()) {
        return input_err("point is not feasible for SATP²_LP in canonical coordinates");
    }
    let c0 = ledger.to_view(c);
    let value = base.dot(&c0);

    let mut rw = Rewriter {
        base,
        column: vec![[0, 1, 2]; n],
        row_swap: vec![false; m],
        rotated: Vec::new(),
    };

    for i in 0..m {
        if rw.row_sum(i).is_zero() {
            rw.row_swap[i] = true;
        }
    }
    for j in 0..n {
        if rw.column_sum(j, 1).is_zero() && rw.column_sum(j, 2).is_positive() {
            rw.column[j].swap(1, 2);
        }
    }
    for j in 0..n {
        if rw.column_sum(j, 0).is_zero() {
            for i in 0..m {
                if rw.view(i, j, 1, 0).is_zero() {
                    rw.raise_or_fail(i, j, 1, 0, "empty first row")?;
                }
            }
            rw.rotate(j);
        }
    }

    let cap = m * n * (m + n);
    let mut last_pos = None;
    let mut done = false;
    for _ in 0..=cap {
        let Some((pos, i, j)) = rw.first_zero_x() else {
            done = true;
            break;
        };
        let flat = pos * m + i;
        if last_pos.is_some_and(|p| flat <= p) {
            return Err(Error::Internal("first zero block did not advance".into()));
        }
        last_pos = Some(flat);
        if rw.rotated.contains(&j) {
            return Err(Error::Internal(format!(
                "rotated column {} lost a positive x",
                j + 1
            )));
        }
        if rw.view(i, j, 1, 0).is_zero() {
            rw.raise_or_fail(i, j, 1, 0, "zero block")?;
        }

        let before: Vec<usize> = rw.order().into_iter().take(pos).collect();
        let mut all_y = true;
        for &l in &before {
            if !rw.view(i, l, 0, 1).is_zero() {
                continue;
            }
            if rw.rotated.contains(&l) {
                if rw.view(i, l, 1, 1).is_positive() {
                    rw.raise(i, l, 0, 1);
                }
            } else if rw.view(i, l, 1, 1).is_zero() {
                rw.raise(i, l, 1, 1);
            }
            if rw.view(i, l, 0, 1).is_zero() {
                all_y = false;
            }
        }
        if all_y {
            rw.row_swap[i] = !rw.row_swap[i];
            continue;
        }

        for k in 0..m {
            if rw.view(k, j, 1, 0).is_zero() && rw.view(k, j, 2, 0).is_positive() {
                rw.raise_or_fail(k, j, 1, 0, "column repair")?;
            }
        }
        if (0..m).all(|k| rw.view(k, j, 1, 0).is_positive()) {
            rw.rotate(j);
            continue;
        }
        return Err(Error::Internal(format!(
            "block ({}, {}) can be repaired neither by its row nor by its column",
            i + 1,
            j + 1
        )));
    }
    if !done {
        return Err(Error::Internal(
            "rewriting exceeded its iteration bound".into(),
        ));
    }
    if !satp2.is_feasible(rw.base.as_slice()) || rw.base.dot(&c0) != value {
        return Err(Error::Internal(
            "rewriting left SATP²_LP or changed the objective".into(),
        ));
    }
    let wstar = rw.view_point();
    ledger.column = rw.column;
    ledger.row_swap = rw.row_swap;
    ledger.rotated = rw.rotated;
    Ok((wstar, ledger))
}

/// Splits `w*` (view coordinates) as `α q + (1 - α) h` where `q` is the
/// all-`x` vertex of the view. `q` is returned in original coordinates, `h`
/// in view coordinates.
pub fn decompose(
    wstar: &BlockPoint,
    ledger: &RenamingLedger,
) -> Result<(Rational, VertexCode, BlockPoint)> {
    let (m, n) = (wstar.m(), wstar.n());
    let alpha = (0..m)
        .flat_map(|i| (0..n).map(move |j| (i, j)))
        .map(|(i, j)| wstar.get(i, j, 0, 0).clone())
        .min()
        .ok_or_else(|| Error::Input("empty point".into()))?;
    if !alpha.is_positive() {
        return input_err("decomposition needs a positive x in every block");
    }
    let mut qv = BlockPoint::zeros(m, n);
    for i in 0..m {
        for j in 0..n {
            qv.set(i, j, 0, 0, Rational::one());
        }
    }
    let h = if alpha.is_one() {
        qv
    } else {
        let scale = (&Rational::one() - &alpha).recip();
        let flat = wstar
            .as_slice()
            .iter()
            .zip(qv.as_slice())
            .map(|(w, q)| &(w - &(&alpha * q)) * &scale)
            .collect();
        BlockPoint::from_flat(m, n, flat)?
    };
    Ok((alpha, ledger.all_x_code(), h))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecognitionOutcome {
    /// Whether the maximum over SATP_LP is attained at an integral vertex.
    pub answer: bool,
    /// Maximum over SATP_LP.
    pub lp_value: Rational,
    /// Maximum over SATP²_LP (in the objective's canonical coordinates).
    pub satp2_value: Rational,
    /// An integral vertex attaining `lp_value`, when `answer` holds.
    pub witness: Option<VertexCode>,
    /// Weight of the witness in the decomposition of the rewritten optimizer.
    pub alpha: Option<Rational>,
}

/// Integer recognition over SATP_LP(m, n) for a balanced objective.
pub fn recognize_satp(c: &BlockPoint) -> Result<RecognitionOutcome> {
    let (m, n) = (c.m(), c.n());
    let pairs = preferred_pairs(c)?;
    let canon = RenamingLedger::canonicalizing(m, &pairs);
    let c0 = canon.to_view(c);
    let lp = lp_maximize(&build_satp_lp(m, n)?, c0.as_slice())?.into_optimum()?;
    let lp2 = lp_maximize(&build_satp2_lp(m, n)?, c0.as_slice())?.into_optimum()?;
    if lp.value != lp2.value {
        return Ok(RecognitionOutcome {
            answer: false,
            lp_value: lp.value,
            satp2_value: lp2.value,
            witness: None,
            alpha: None,
        });
    }
    let w = canon.to_original(&BlockPoint::from_flat(m, n, lp2.point)?);
    let (wstar, ledger) = construct_wstar(&w, c)?;
    let (alpha, q, _) = decompose(&wstar, &ledger)?;
    if q.value(c) != lp.value {
        return Err(Error::Internal(format!(
            "witness {q} has value {} instead of {}",
            q.value(c),
            lp.value
        )));
    }
    Ok(RecognitionOutcome {
        answer: true,
        lp_value: lp.value,
        satp2_value: lp2.value,
        witness: Some(q),
        alpha: Some(alpha),
    })
}

/// Exact maximum of `c` over all integral vertices; the first maximizer in
/// lexicographic order.
pub fn integer_max_oracle(c: &BlockPoint, budget: u128) -> Result<(Rational, VertexCode)> {
    let (m, n) = (c.m(), c.n());
    let count = check_budget(m, n, budget)?;
    let mut best: Option<(Rational, VertexCode)> = None;
    for idx in 0..count {
        let code = code_at(m, n, idx);
        let v = code.value(c);
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, code));
        }
    }
    Ok(best.expect("at least one vertex"))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BqpRecognition {
    pub answer: bool,
    pub bqp_value: Rational,
    pub met_value: Rational,
}

/// Integer recognition over BQP_LP(n): the maximum is integral iff it
/// survives the triangle inequalities. The objective is over the BQP_LP
/// variables `x_i` then `x_ij` (`i < j`, lexicographic).
pub fn recognize_bqp(objective: &[Rational], n: usize) -> Result<BqpRecognition> {
    if n < 3 {
        return input_err(format!("BQP recognition needs n >= 3, got {n}"));
    }
    let bqp = lp_maximize(&build_bqp_lp(n)?, objective)?.into_optimum()?;
    let met = lp_maximize(&build_met(n)?, objective)?.into_optimum()?;
    Ok(BqpRecognition {
        answer: bqp.value == met.value,
        bqp_value: bqp.value,
        met_value: met.value,
    })
}

/// Maximum of the BQP objective over zero-one points `x_ij = x_i x_j`; the
/// first maximizer with `x` read as a binary number, `x_1` most significant.
pub fn bqp_brute_force(objective: &[Rational], n: usize) -> Result<(Rational, Vec<bool>)> {
    if objective.len() != n + pair_count(n) {
        return input_err("objective length does not match BQP_LP(n)");
    }
    if n >= 32 {
        return Err(Error::Budget {
            needed: 1u128 << n.min(127),
            budget: 1 << 31,
        });
    }
    let mut best: Option<(Rational, Vec<bool>)> = None;
    for mask in 0..1u64 << n {
        let x: Vec<bool> = (0..n).map(|i| (mask >> (n - 1 - i)) & 1 == 1).collect();
        let mut v = Rational::zero();
        for i in 0..n {
            if x[i] {
                v += &objective[i];
                for j in i + 1..n {
                    if x[j] {
                        v += &objective[bqp_pair_index(n, i, j)];
                    }
                }
            }
        }
        if best.as_ref().is_none_or(|(b, _)| v > *b) {
            best = Some((v, x));
        }
    }
    Ok(best.expect("at least one point"))
}
