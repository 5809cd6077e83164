//! 3-CNF formulas and the MAX-3SAT, X3SAT and NAE-3SAT objective vectors.
//!
//! Variables index block rows and clauses index block columns; the place
//! `k ∈ {1,2,3}` of a literal within its clause selects the block row.

use std::fmt;

use crate::block::BlockPoint;
use crate::error::{input_err, ParseError, Result};
use crate::rational::Rational;
use crate::system::strip_comment;
use crate::vertices::VertexCode;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Literal {
    /// 1-based variable index.
    pub var: usize,
    pub negated: bool,
}

impl Literal {
    pub fn eval(&self, assignment: &[bool]) -> bool {
        assignment[self.var - 1] != self.negated
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cnf3Formula {
    pub var_count: usize,
    pub clauses: Vec<[Literal; 3]>,
}

impl Cnf3Formula {
    pub fn new(var_count: usize, clauses: Vec<[Literal; 3]>) -> Result<Self> {
        if var_count == 0 {
            return input_err("a formula needs at least one variable");
        }
        for (j, c) in clauses.iter().enumerate() {
            if c.iter().any(|l| l.var == 0 || l.var > var_count) {
                return input_err(format!("clause {} mentions a variable out of range", j + 1));
            }
        }
        Ok(Cnf3Formula { var_count, clauses })
    }

    /// Builds a formula from signed DIMACS literals.
    pub fn from_signed(var_count: usize, clauses: &[[i64; 3]]) -> Result<Self> {
        let lits = clauses
            .iter()
            .map(|c| {
                c.map(|v| Literal {
                    var: v.unsigned_abs() as usize,
                    negated: v < 0,
                })
            })
            .collect();
        Self::new(var_count, lits)
    }

    pub fn clause_count(&self) -> usize {
        self.clauses.len()
    }

    /// True when some clause mentions a variable more than once.
    pub fn has_repeated_variables(&self) -> bool {
        self.clauses
            .iter()
            .any(|c| c[0].var == c[1].var || c[0].var == c[2].var || c[1].var == c[2].var)
    }

    pub fn to_dimacs(&self) -> String {
        let mut s = format!("p cnf {} {}\n", self.var_count, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                let v = l.var as i64;
                s.push_str(&format!("{} ", if l.negated { -v } else { v }));
            }
            s.push_str("0\n");
        }
        s
    }
}

impl fmt::Display for Cnf3Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_dimacs())
    }
}

/// Parses the DIMACS subset `p cnf m n` followed by `n` clause lines of
/// three nonzero literals and a terminating `0`. Lines starting with `c`
/// and `#` comments are ignored.
pub fn parse_cnf3(text: &str) -> std::result::Result<Cnf3Formula, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('c'));
    let (hl, header) = lines
        .next()
        .ok_or_else(|| ParseError::new("missing `p cnf m n` header"))?;
    let words: Vec<&str> = header.split_whitespace().collect();
    let (m, n) = match words[..] {
        ["p", "cnf", m, n] => (
            m.parse::<usize>()
                .map_err(|_| ParseError::at(hl, "bad variable count"))?,
            n.parse::<usize>()
                .map_err(|_| ParseError::at(hl, "bad clause count"))?,
        ),
        _ => return Err(ParseError::at(hl, "header must be `p cnf m n`")),
    };
    if m == 0 {
        return Err(ParseError::at(hl, "variable count must be positive"));
    }
    let mut clauses = Vec::with_capacity(n);
    for (ln, line) in lines {
        let nums = line
            .split_whitespace()
            .map(|t| t.parse::<i64>())
            .collect::<std::result::Result<Vec<_>, _>>()
            .map_err(|_| ParseError::at(ln, "clause literals must be integers"))?;
        let Some((&0, lits)) = nums.split_last() else {
            return Err(ParseError::at(ln, "clause must end with 0"));
        };
        if lits.len() != 3 || lits.contains(&0) {
            return Err(ParseError::at(
                ln,
                format!("expected 3 nonzero literals, got {}", lits.len()),
            ));
        }
        if let Some(&bad) = lits.iter().find(|v| v.unsigned_abs() as usize > m) {
            return Err(ParseError::at(
                ln,
                format!("literal {bad} is out of range 1..{m}"),
            ));
        }
        clauses.push(
            lits.try_into()
                .map(|c: [i64; 3]| {
                    c.map(|v| Literal {
                        var: v.unsigned_abs() as usize,
                        negated: v < 0,
                    })
                })
                .expect("three literals"),
        );
    }
    if clauses.len() != n {
        return Err(ParseError::new(format!(
            "header announces {n} clauses, found {}",
            clauses.len()
        )));
    }
    Ok(Cnf3Formula {
        var_count: m,
        clauses,
    })
}

/// Every place adds its cells, so a clause repeating a variable stacks
/// several places in one block.
fn objective_with(
    f: &Cnf3Formula,
    cells: impl Fn(usize, bool) -> Vec<(usize, usize)>,
) -> BlockPoint {
    let mut c = BlockPoint::zeros(f.var_count, f.clauses.len());
    let one = Rational::one();
    for (j, clause) in f.clauses.iter().enumerate() {
        for (k, lit) in clause.iter().enumerate() {
            for (kk, l) in cells(k, lit.negated) {
                *c.get_mut(lit.var - 1, j, kk, l) += &one;
            }
        }
    }
    c
}

/// `v^{k,1} = 1` for a positive literal at place `k`, `v^{k,2} = 1` for a
/// negated one.
pub fn objective_max3sat(f: &Cnf3Formula) -> BlockPoint {
    objective_with(f, |k, neg| vec![(k, neg as usize)])
}

/// A literal at place `k` rewards its own truth in row `k` and its falsity
/// in the other two rows.
pub fn objective_x3sat(f: &Cnf3Formula) -> BlockPoint {
    objective_with(f, |k, neg| {
        let (own, other) = if neg { (1, 0) } else { (0, 1) };
        let mut cells = vec![(k, own)];
        cells.extend((0..3).filter(|&s| s != k).map(|s| (s, other)));
        cells
    })
}

/// Rows are taken cyclically: with `k1 = k + 1` and `k2 = k + 2` (mod 3),
/// a positive literal sets `(k,1), (k1,2), (k2,1), (k2,2)` and a negated one
/// `(k,2), (k1,1), (k2,1), (k2,2)`.
pub fn objective_nae3sat(f: &Cnf3Formula) -> BlockPoint {
    objective_with(f, |k, neg| {
        let (k1, k2) = ((k + 1) % 3, (k + 2) % 3);
        let (own, next) = if neg { (1, 0) } else { (0, 1) };
        vec![(k, own), (k1, next), (k2, 0), (k2, 1)]
    })
}

/// Scales column `j` by `weights[j]`.
pub fn apply_clause_weights(v: &BlockPoint, weights: &[Rational]) -> Result<BlockPoint> {
    if weights.len() != v.n() {
        return input_err(format!(
            "expected {} clause weights, got {}",
            v.n(),
            weights.len()
        ));
    }
    if let Some(j) = weights.iter().position(Rational::is_negative) {
        return input_err(format!("clause weight {} is negative", j + 1));
    }
    let mut out = v.clone();
    for i in 0..v.m() {
        for (j, w) in weights.iter().enumerate() {
            for k in 0..3 {
                for l in 0..2 {
                    let x = out.get_mut(i, j, k, l);
                    if !x.is_zero() {
                        *x = &*x * w;
                    }
                }
            }
        }
    }
    Ok(out)
}

/// `u_i = 1 - row_i`.
pub fn assignment_from_code(code: &VertexCode) -> Vec<bool> {
    code.row.iter().map(|&r| r == 0).collect()
}

/// All `2^m` assignments, variable 1 as the most significant bit, all-false
/// first.
pub fn assignments(m: usize) -> impl Iterator<Item = Vec<bool>> {
    (0..1u64 << m).map(move |mask| (0..m).map(|i| (mask >> (m - 1 - i)) & 1 == 1).collect())
}

fn true_count(clause: &[Literal; 3], u: &[bool]) -> usize {
    clause.iter().filter(|l| l.eval(u)).count()
}

/// Total weight of the clauses satisfied by `u`.
pub fn satisfied_weight(f: &Cnf3Formula, weights: &[Rational], u: &[bool]) -> Rational {
    f.clauses
        .iter()
        .zip(weights)
        .filter(|(c, _)| true_count(c, u) > 0)
        .map(|(_, w)| w.clone())
        .sum()
}

/// Brute-force MAX-3SAT: largest number of simultaneously satisfied clauses.
pub fn brute_force_max3sat(f: &Cnf3Formula) -> usize {
    assignments(f.var_count)
        .map(|u| f.clauses.iter().filter(|c| true_count(c, &u) > 0).count())
        .max()
        .unwrap_or(0)
}

pub fn brute_force_weighted_max3sat(f: &Cnf3Formula, weights: &[Rational]) -> Rational {
    assignments(f.var_count)
        .map(|u| satisfied_weight(f, weights, &u))
        .max()
        .unwrap_or_else(Rational::zero)
}

/// First assignment with exactly one true literal per clause.
pub fn brute_force_x3sat(f: &Cnf3Formula) -> Option<Vec<bool>> {
    assignments(f.var_count).find(|u| f.clauses.iter().all(|c| true_count(c, u) == 1))
}

/// First assignment with a true and a false literal in every clause.
pub fn brute_force_nae3sat(f: &Cnf3Formula) -> Option<Vec<bool>> {
    assignments(f.var_count).find(|u| f.clauses.iter().all(|c| matches!(true_count(c, u), 1 | 2)))
}
