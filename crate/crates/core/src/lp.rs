//! Exact two-phase primal simplex with Bland's rule.

use crate::error::{input_err, Result};
use crate::rational::Rational;
use crate::system::{dot, LinearSystem};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

/// A basic optimal solution.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LpOptimum {
    pub value: Rational,
    pub point: Vec<Rational>,
    /// Global constraint indices active at `point` (see [`crate::system::ConstraintRef`]).
    pub tight_set: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LpResult {
    Optimal(LpOptimum),
    Infeasible,
    Unbounded,
}

impl LpResult {
    pub fn status(&self) -> LpStatus {
        match self {
            LpResult::Optimal(_) => LpStatus::Optimal,
            LpResult::Infeasible => LpStatus::Infeasible,
            LpResult::Unbounded => LpStatus::Unbounded,
        }
    }

    pub fn optimum(&self) -> Option<&LpOptimum> {
        match self {
            LpResult::Optimal(o) => Some(o),
            _ => None,
        }
    }

    /// The optimum, or an [`crate::Error::Lp`] naming the other status.
    pub fn into_optimum(self) -> Result<LpOptimum> {
        match self {
            LpResult::Optimal(o) => Ok(o),
            LpResult::Infeasible => Err(crate::Error::Lp("infeasible")),
            LpResult::Unbounded => Err(crate::Error::Lp("unbounded")),
        }
    }

    pub fn value(&self) -> Option<&Rational> {
        self.optimum().map(|o| &o.value)
    }
}

struct Tableau {
    /// Each row holds `width` coefficients followed by the right-hand side.
    rows: Vec<Vec<Rational>>,
    basis: Vec<usize>,
    /// Reduced costs; the last entry is minus the current objective value.
    obj: Vec<Rational>,
    enterable: Vec<bool>,
    width: usize,
}

enum Phase {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn pivot(&mut self, r: usize, c: usize) {
        let inv = self.rows[r][c].recip();
        if !inv.is_one() {
            for v in self.rows[r].iter_mut() {
                if !v.is_zero() {
                    *v = &*v * &inv;
                }
            }
        }
        let support: Vec<usize> = (0..=self.width)
            .filter(|&k| !self.rows[r][k].is_zero())
            .collect();
        let pivot_row = std::mem::take(&mut self.rows[r]);
        let eliminate = |row: &mut Vec<Rational>| {
            if row[c].is_zero() {
                return;
            }
            let f = row[c].clone();
            for &k in &support {
                let delta = &f * &pivot_row[k];
                row[k] -= delta;
            }
        };
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i != r {
                eliminate(row);
            }
        }
        eliminate(&mut self.obj);
        self.rows[r] = pivot_row;
        self.basis[r] = c;
    }

    fn set_objective(&mut self, cost: &[Rational]) {
        let mut obj: Vec<Rational> = cost.to_vec();
        obj.push(Rational::zero());
        for (row, &b) in self.rows.iter().zip(&self.basis) {
            let cb = &cost[b];
            if cb.is_zero() {
                continue;
            }
            for (o, a) in obj.iter_mut().zip(row) {
                if !a.is_zero() {
                    *o -= cb * a;
                }
            }
        }
        self.obj = obj;
    }

    /// Maximizes the current objective with Bland's smallest-index rule.
    fn run(&mut self) -> Phase {
        loop {
            let Some(enter) =
                (0..self.width).find(|&j| self.enterable[j] && self.obj[j].is_positive())
            else {
                return Phase::Optimal;
            };
            let mut best: Option<(usize, Rational)> = None;
            for (i, row) in self.rows.iter().enumerate() {
                if !row[enter].is_positive() {
                    continue;
                }
                let ratio = &row[self.width] / &row[enter];
                let better = match &best {
                    None => true,
                    Some((bi, br)) => {
                        ratio < *br || (ratio == *br && self.basis[i] < self.basis[*bi])
                    }
                };
                if better {
                    best = Some((i, ratio));
                }
            }
            match best {
                None => return Phase::Unbounded,
                Some((r, _)) => self.pivot(r, enter),
            }
        }
    }
}

/// Maximizes `objective · x` over `sys`.
///
/// The returned point is a basic feasible solution, i.e. a vertex of the
/// feasible polyhedron whenever the polyhedron has vertices.
pub fn lp_maximize(sys: &LinearSystem, objective: &[Rational]) -> Result<LpResult> {
    sys.validate()?;
    let n = sys.var_count();
    if objective.len() != n {
        return input_err(format!(
            "objective has {} entries, system has {} variables",
            objective.len(),
            n
        ));
    }

    // structural columns: one per nonnegative variable, two per free variable
    let mut col_of: Vec<(usize, Option<usize>)> = Vec::with_capacity(n);
    let mut structural = 0;
    for j in 0..n {
        if sys.nonneg[j] {
            col_of.push((structural, None));
            structural += 1;
        } else {
            col_of.push((structural, Some(structural + 1)));
            structural += 2;
        }
    }
    let slacks = sys.ineq_rows.len();
    let row_count = sys.eq_rows.len() + slacks;

    struct Pending {
        coeffs: Vec<Rational>,
        rhs: Rational,
        slack: Option<usize>,
    }
    let mut pending = Vec::with_capacity(row_count);
    let expand = |coeffs: &[Rational]| {
        let mut out = vec![Rational::zero(); structural];
        for (j, a) in coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            let (p, m) = col_of[j];
            out[p] = a.clone();
            if let Some(m) = m {
                out[m] = -a;
            }
        }
        out
    };
    for r in &sys.eq_rows {
        pending.push(Pending {
            coeffs: expand(&r.coeffs),
            rhs: r.rhs.clone(),
            slack: None,
        });
    }
    for (k, r) in sys.ineq_rows.iter().enumerate() {
        pending.push(Pending {
            coeffs: expand(&r.coeffs),
            rhs: r.rhs.clone(),
            slack: Some(k),
        });
    }

    let needs_artificial: Vec<bool> = pending
        .iter()
        .map(|p| p.slack.is_none() || p.rhs.is_negative())
        .collect();
    let artificials = needs_artificial.iter().filter(|&&b| b).count();
    let width = structural + slacks + artificials;

    let mut rows = Vec::with_capacity(row_count);
    let mut basis = Vec::with_capacity(row_count);
    let mut next_art = structural + slacks;
    for (p, &art) in pending.into_iter().zip(&needs_artificial) {
        let mut row = p.coeffs;
        row.resize(width + 1, Rational::zero());
        if let Some(k) = p.slack {
            row[structural + k] = Rational::one();
        }
        row[width] = p.rhs;
        if row[width].is_negative() {
            for v in row.iter_mut() {
                if !v.is_zero() {
                    *v = -&*v;
                }
            }
        }
        if art {
            row[next_art] = Rational::one();
            basis.push(next_art);
            next_art += 1;
        } else {
            basis.push(structural + p.slack.unwrap());
        }
        rows.push(row);
    }

    let mut tab = Tableau {
        rows,
        basis,
        obj: Vec::new(),
        enterable: vec![true; width],
        width,
    };

    if artificials > 0 {
        let mut cost = vec![Rational::zero(); width];
        for c in cost.iter_mut().skip(structural + slacks) {
            *c = Rational::from_integer(-1);
        }
        tab.set_objective(&cost);
        if let Phase::Unbounded = tab.run() {
            unreachable!("phase one is bounded by zero");
        }
        if !tab.obj[width].is_zero() {
            return Ok(LpResult::Infeasible);
        }
        // pivot remaining (zero-valued) artificials out, dropping redundant rows
        let first_art = structural + slacks;
        let mut r = 0;
        while r < tab.rows.len() {
            if tab.basis[r] < first_art {
                r += 1;
                continue;
            }
            match (0..first_art).find(|&j| !tab.rows[r][j].is_zero()) {
                Some(j) => {
                    tab.pivot(r, j);
                    r += 1;
                }
                None => {
                    tab.rows.remove(r);
                    tab.basis.remove(r);
                }
            }
        }
        for e in tab.enterable.iter_mut().skip(first_art) {
            *e = false;
        }
    }

    let mut cost = vec![Rational::zero(); width];
    for (j, c) in objective.iter().enumerate() {
        let (p, m) = col_of[j];
        cost[p] = c.clone();
        if let Some(m) = m {
            cost[m] = -c;
        }
    }
    tab.set_objective(&cost);
    if let Phase::Unbounded = tab.run() {
        return Ok(LpResult::Unbounded);
    }

    let mut col_values = vec![Rational::zero(); width];
    for (row, &b) in tab.rows.iter().zip(&tab.basis) {
        col_values[b] = row[width].clone();
    }
    let point: Vec<Rational> = col_of
        .iter()
        .map(|&(p, m)| match m {
            None => col_values[p].clone(),
            Some(m) => &col_values[p] - &col_values[m],
        })
        .collect();
    let value = dot(objective, &point);
    debug_assert_eq!(value, -&tab.obj[width]);
    debug_assert!(sys.is_feasible(&point));
    let tight_set = sys.tight_set(&point);
    Ok(LpResult::Optimal(LpOptimum {
        value,
        point,
        tight_set,
    }))
}
