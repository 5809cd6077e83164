//! Linear constraint systems and their line-oriented text format.
//!
//! ```text
//! # comment
//! vars 3
//! eq 1 1 1 | 1
//! le 1 -1 0 | 1/2
//! free 2
//! ```
//!
//! Every variable is nonnegative unless listed (1-based) on a `free` line.

use std::fmt::Write as _;

use crate::error::{input_err, ParseError, Result};
use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Row {
    pub coeffs: Vec<Rational>,
    pub rhs: Rational,
}

impl Row {
    pub fn new(coeffs: Vec<Rational>, rhs: Rational) -> Self {
        Row { coeffs, rhs }
    }

    /// Row with the given sparse `(index, coefficient)` entries.
    pub fn sparse(var_count: usize, entries: &[(usize, i64)], rhs: i64) -> Self {
        let mut coeffs = vec![Rational::zero(); var_count];
        for &(i, c) in entries {
            coeffs[i] += Rational::from_integer(c);
        }
        Row {
            coeffs,
            rhs: Rational::from_integer(rhs),
        }
    }

    pub fn lhs(&self, x: &[Rational]) -> Rational {
        dot(&self.coeffs, x)
    }
}

pub fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    debug_assert_eq!(a.len(), b.len());
    a.iter()
        .zip(b)
        .filter(|(u, v)| !u.is_zero() && !v.is_zero())
        .map(|(u, v)| u * v)
        .sum()
}

/// Which constraint a global constraint index refers to.
///
/// Indices run over equality rows, then inequality rows, then one
/// nonnegativity bound per variable (bounds of free variables are never
/// reported as tight).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum ConstraintRef {
    Eq(usize),
    Le(usize),
    NonNeg(usize),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinearSystem {
    var_count: usize,
    pub eq_rows: Vec<Row>,
    pub ineq_rows: Vec<Row>,
    pub nonneg: Vec<bool>,
}

impl LinearSystem {
    /// An empty system over `var_count` nonnegative variables.
    pub fn new(var_count: usize) -> Self {
        LinearSystem {
            var_count,
            eq_rows: Vec::new(),
            ineq_rows: Vec::new(),
            nonneg: vec![true; var_count],
        }
    }

    pub fn var_count(&self) -> usize {
        self.var_count
    }

    pub fn add_eq(&mut self, row: Row) {
        assert_eq!(row.coeffs.len(), self.var_count, "row width");
        self.eq_rows.push(row);
    }

    /// Adds `coeffs · x <= rhs`.
    pub fn add_le(&mut self, row: Row) {
        assert_eq!(row.coeffs.len(), self.var_count, "row width");
        self.ineq_rows.push(row);
    }

    pub fn set_free(&mut self, var: usize) {
        self.nonneg[var] = false;
    }

    pub fn constraint_count(&self) -> usize {
        self.eq_rows.len() + self.ineq_rows.len() + self.var_count
    }

    pub fn constraint_ref(&self, index: usize) -> ConstraintRef {
        let e = self.eq_rows.len();
        let i = self.ineq_rows.len();
        if index < e {
            ConstraintRef::Eq(index)
        } else if index < e + i {
            ConstraintRef::Le(index - e)
        } else {
            ConstraintRef::NonNeg(index - e - i)
        }
    }

    pub fn constraint_index(&self, c: ConstraintRef) -> usize {
        match c {
            ConstraintRef::Eq(k) => k,
            ConstraintRef::Le(k) => self.eq_rows.len() + k,
            ConstraintRef::NonNeg(k) => self.eq_rows.len() + self.ineq_rows.len() + k,
        }
    }

    /// Checks shapes: every row has `var_count` coefficients.
    pub fn validate(&self) -> Result<()> {
        if self.nonneg.len() != self.var_count {
            return input_err("nonnegativity flags do not match the variable count");
        }
        for row in self.eq_rows.iter().chain(&self.ineq_rows) {
            if row.coeffs.len() != self.var_count {
                return input_err(format!(
                    "row has {} coefficients, expected {}",
                    row.coeffs.len(),
                    self.var_count
                ));
            }
        }
        Ok(())
    }

    /// Exact feasibility test.
    pub fn is_feasible(&self, x: &[Rational]) -> bool {
        x.len() == self.var_count
            && self.eq_rows.iter().all(|r| r.lhs(x) == r.rhs)
            && self.ineq_rows.iter().all(|r| r.lhs(x) <= r.rhs)
            && x.iter()
                .zip(&self.nonneg)
                .all(|(v, &nn)| !nn || !v.is_negative())
    }

    /// Indices (see [`ConstraintRef`]) of inequality rows violated at `x`.
    pub fn violated_inequalities(&self, x: &[Rational]) -> Vec<usize> {
        self.ineq_rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r.lhs(x) > r.rhs)
            .map(|(i, _)| i)
            .collect()
    }

    /// Global indices of the constraints active at `x`, in increasing order.
    pub fn tight_set(&self, x: &[Rational]) -> Vec<usize> {
        let mut out: Vec<usize> = (0..self.eq_rows.len()).collect();
        let e = self.eq_rows.len();
        for (k, r) in self.ineq_rows.iter().enumerate() {
            if r.lhs(x) == r.rhs {
                out.push(e + k);
            }
        }
        let base = e + self.ineq_rows.len();
        for (j, v) in x.iter().enumerate() {
            if self.nonneg[j] && v.is_zero() {
                out.push(base + j);
            }
        }
        out
    }

    /// Coefficient rows of the constraints active at `x` (bounds become unit rows).
    pub fn tight_rows(&self, x: &[Rational]) -> Vec<Vec<Rational>> {
        self.tight_set(x)
            .into_iter()
            .map(|idx| self.constraint_coeffs(idx))
            .collect()
    }

    /// Coefficient row and right-hand side of a constraint in `a·x (<=|=) b` form;
    /// a bound `x_j >= 0` is reported as `-x_j <= 0`.
    pub fn constraint_row(&self, index: usize) -> (Vec<Rational>, Rational) {
        match self.constraint_ref(index) {
            ConstraintRef::Eq(k) => (self.eq_rows[k].coeffs.clone(), self.eq_rows[k].rhs.clone()),
            ConstraintRef::Le(k) => (
                self.ineq_rows[k].coeffs.clone(),
                self.ineq_rows[k].rhs.clone(),
            ),
            ConstraintRef::NonNeg(j) => {
                let mut row = vec![Rational::zero(); self.var_count];
                row[j] = Rational::from_integer(-1);
                (row, Rational::zero())
            }
        }
    }

    fn constraint_coeffs(&self, index: usize) -> Vec<Rational> {
        self.constraint_row(index).0
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        writeln!(s, "vars {}", self.var_count).unwrap();
        let mut emit = |tag: &str, row: &Row| {
            s.push_str(tag);
            for c in &row.coeffs {
                write!(s, " {c}").unwrap();
            }
            writeln!(s, " | {}", row.rhs).unwrap();
        };
        for r in &self.eq_rows {
            emit("eq", r);
        }
        for r in &self.ineq_rows {
            emit("le", r);
        }
        let free: Vec<String> = (0..self.var_count)
            .filter(|&j| !self.nonneg[j])
            .map(|j| (j + 1).to_string())
            .collect();
        if !free.is_empty() {
            writeln!(s, "free {}", free.join(" ")).unwrap();
        }
        s
    }

    pub fn from_text(text: &str) -> std::result::Result<Self, ParseError> {
        let mut sys: Option<LinearSystem> = None;
        for (ln, raw) in text.lines().enumerate() {
            let ln = ln + 1;
            let line = strip_comment(raw);
            if line.is_empty() {
                continue;
            }
            let (tag, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
            match (tag, sys.as_mut()) {
                ("vars", None) => {
                    let n: usize = rest
                        .trim()
                        .parse()
                        .map_err(|_| ParseError::at(ln, "bad variable count"))?;
                    sys = Some(LinearSystem::new(n));
                }
                ("vars", Some(_)) => return Err(ParseError::at(ln, "duplicate `vars` header")),
                (_, None) => return Err(ParseError::at(ln, "expected `vars N` header first")),
                ("eq" | "le", Some(s)) => {
                    let (lhs, rhs) = rest
                        .split_once('|')
                        .ok_or_else(|| ParseError::at(ln, "missing `|` before right-hand side"))?;
                    let coeffs = lhs
                        .split_whitespace()
                        .map(|t| {
                            t.parse::<Rational>()
                                .map_err(|e| ParseError::at(ln, e.message))
                        })
                        .collect::<std::result::Result<Vec<_>, _>>()?;
                    if coeffs.len() != s.var_count {
                        return Err(ParseError::at(
                            ln,
                            format!(
                                "expected {} coefficients, got {}",
                                s.var_count,
                                coeffs.len()
                            ),
                        ));
                    }
                    let rhs: Rational = rhs
                        .trim()
                        .parse()
                        .map_err(|e: ParseError| ParseError::at(ln, e.message))?;
                    let row = Row::new(coeffs, rhs);
                    if tag == "eq" {
                        s.eq_rows.push(row);
                    } else {
                        s.ineq_rows.push(row);
                    }
                }
                ("free", Some(s)) => {
                    for t in rest.split_whitespace() {
                        let j: usize = t
                            .parse()
                            .map_err(|_| ParseError::at(ln, format!("bad variable index `{t}`")))?;
                        if j == 0 || j > s.var_count {
                            return Err(ParseError::at(ln, format!("variable {j} out of range")));
                        }
                        s.nonneg[j - 1] = false;
                    }
                }
                (other, _) => return Err(ParseError::at(ln, format!("unknown row tag `{other}`"))),
            }
        }
        sys.ok_or_else(|| ParseError::new("empty system: missing `vars N` header"))
    }
}

pub(crate) fn strip_comment(line: &str) -> &str {
    line.split('#').next().unwrap_or("").trim()
}

/// Parses a whitespace-separated rational vector (comments allowed).
pub fn parse_vector(text: &str) -> std::result::Result<Vec<Rational>, ParseError> {
    let mut out = Vec::new();
    for (ln, raw) in text.lines().enumerate() {
        for t in strip_comment(raw).split_whitespace() {
            out.push(
                t.parse::<Rational>()
                    .map_err(|e| ParseError::at(ln + 1, e.message))?,
            );
        }
    }
    Ok(out)
}
