//! 2-3 edge-constrained bipartite graph coloring.
//!
//! `U` vertices take colors `{1, 2}`, `V` vertices `{1, 2, 3}`, and every
//! edge carries a table of permitted `(V color, U color)` pairs. A coloring
//! corresponds to the integral vertex with `row_i = color(u_i) - 1` and
//! `col_j = color(v_j) - 1`, and an edge table to one block of an objective.

use std::fmt::Write as _;

use crate::block::BlockPoint;
use crate::error::{input_err, Error, ParseError, Result};
use crate::rational::Rational;
use crate::recognition::recognize_satp;
use crate::sat::{objective_x3sat, Cnf3Formula};
use crate::system::strip_comment;
use crate::vertices::{check_budget, VertexCode};

/// Permitted color pairs of one edge, indexed `[u_color - 1][v_color - 1]`.
pub type PermittedColors = [[bool; 3]; 2];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Edge {
    /// 1-based `U` vertex.
    pub u: usize,
    /// 1-based `V` vertex.
    pub v: usize,
    pub pc: PermittedColors,
}

impl Edge {
    /// `pc(i, j, k, s)` with 1-based `k` (V color) and `s` (U color).
    pub fn permits(&self, k: usize, s: usize) -> bool {
        self.pc[s - 1][k - 1]
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EcbgcInstance {
    pub u_count: usize,
    pub v_count: usize,
    pub edges: Vec<Edge>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coloring {
    /// Colors of `U`, each in `{1, 2}`.
    pub u: Vec<u8>,
    /// Colors of `V`, each in `{1, 2, 3}`.
    pub v: Vec<u8>,
}

impl Coloring {
    pub fn from_code(code: &VertexCode) -> Self {
        Coloring {
            u: code.row.iter().map(|r| r + 1).collect(),
            v: code.col.iter().map(|c| c + 1).collect(),
        }
    }

    pub fn to_code(&self) -> VertexCode {
        VertexCode {
            row: self.u.iter().map(|c| c - 1).collect(),
            col: self.v.iter().map(|c| c - 1).collect(),
        }
    }

    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for (i, c) in self.u.iter().enumerate() {
            writeln!(s, "u {} {c}", i + 1).unwrap();
        }
        for (j, c) in self.v.iter().enumerate() {
            writeln!(s, "v {} {c}", j + 1).unwrap();
        }
        s
    }
}

impl EcbgcInstance {
    pub fn new(u_count: usize, v_count: usize, mut edges: Vec<Edge>) -> Result<Self> {
        if u_count == 0 || v_count == 0 {
            return input_err("both sides of the graph need at least one vertex");
        }
        for e in &edges {
            if e.u == 0 || e.u > u_count || e.v == 0 || e.v > v_count {
                return input_err(format!("edge ({}, {}) is out of range", e.u, e.v));
            }
        }
        edges.sort_by_key(|e| (e.u, e.v));
        if let Some(w) = edges
            .windows(2)
            .find(|w| (w[0].u, w[0].v) == (w[1].u, w[1].v))
        {
            return input_err(format!("duplicate edge ({}, {})", w[0].u, w[0].v));
        }
        Ok(EcbgcInstance {
            u_count,
            v_count,
            edges,
        })
    }

    pub fn edges_at(&self, v: usize) -> impl Iterator<Item = &Edge> {
        self.edges.iter().filter(move |e| e.v == v)
    }

    pub fn is_valid(&self, coloring: &Coloring) -> bool {
        coloring.u.len() == self.u_count
            && coloring.v.len() == self.v_count
            && self
                .edges
                .iter()
                .all(|e| e.permits(coloring.v[e.v - 1] as usize, coloring.u[e.u - 1] as usize))
    }

    pub fn to_text(&self) -> String {
        let mut s = format!("ecbgc {} {}\n", self.u_count, self.v_count);
        for e in &self.edges {
            let flags: String =
                e.pc.iter()
                    .flatten()
                    .map(|&p| if p { '+' } else { '-' })
                    .collect();
            writeln!(s, "edge {} {} : {flags}", e.u, e.v).unwrap();
        }
        s
    }
}

/// Parses `ecbgc m n` followed by `edge i j : FLAGS` lines, where `FLAGS`
/// is six `+`/`-` characters for U color 1 (V colors 1, 2, 3) and then U
/// color 2.
pub fn parse_ecbgc(text: &str) -> std::result::Result<EcbgcInstance, ParseError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, strip_comment(l)))
        .filter(|(_, l)| !l.is_empty());
    let (hl, header) = lines
        .next()
        .ok_or_else(|| ParseError::new("missing `ecbgc m n` header"))?;
    let (m, n) = match header.split_whitespace().collect::<Vec<_>>()[..] {
        ["ecbgc", m, n] => match (m.parse::<usize>(), n.parse::<usize>()) {
            (Ok(m), Ok(n)) => (m, n),
            _ => return Err(ParseError::at(hl, "bad vertex counts")),
        },
        _ => return Err(ParseError::at(hl, "header must be `ecbgc m n`")),
    };
    let mut edges = Vec::new();
    for (ln, line) in lines {
        let (lhs, flags) = line
            .split_once(':')
            .ok_or_else(|| ParseError::at(ln, "edge line must be `edge i j : flags`"))?;
        let (u, v) = match lhs.split_whitespace().collect::<Vec<_>>()[..] {
            ["edge", i, j] => match (i.parse::<usize>(), j.parse::<usize>()) {
                (Ok(i), Ok(j)) => (i, j),
                _ => return Err(ParseError::at(ln, "bad edge endpoints")),
            },
            _ => return Err(ParseError::at(ln, "edge line must be `edge i j : flags`")),
        };
        let flags: Vec<bool> = flags
            .trim()
            .chars()
            .map(|ch| match ch {
                '+' => Ok(true),
                '-' => Ok(false),
                _ => Err(ParseError::at(ln, format!("bad flag `{ch}`"))),
            })
            .collect::<std::result::Result<_, _>>()?;
        if flags.len() != 6 {
            return Err(ParseError::at(
                ln,
                format!("expected 6 flags, got {}", flags.len()),
            ));
        }
        let pc = [
            [flags[0], flags[1], flags[2]],
            [flags[3], flags[4], flags[5]],
        ];
        edges.push((ln, Edge { u, v, pc }));
    }
    for (ln, e) in &edges {
        if e.u == 0 || e.u > m || e.v == 0 || e.v > n {
            return Err(ParseError::at(
                *ln,
                format!("edge ({}, {}) is out of range", e.u, e.v),
            ));
        }
    }
    let lines_of: Vec<usize> = edges.iter().map(|(ln, _)| *ln).collect();
    EcbgcInstance::new(m, n, edges.into_iter().map(|(_, e)| e).collect()).map_err(|e| {
        let msg = e.to_string();
        ParseError {
            line: lines_of.last().copied(),
            message: msg,
        }
    })
}

fn pair_ok(e: &Edge, a: usize, b: usize) -> bool {
    let left = e.permits(a, 1) && e.permits(b, 2);
    let right = e.permits(a, 2) && e.permits(b, 1);
    left == right
}

/// The lexicographically smallest 1-based pair `(a_j, b_j)` per `V` vertex
/// satisfying the subclass condition on all incident edges, or the first
/// 1-based `V` vertex admitting none.
pub fn check_condition(inst: &EcbgcInstance) -> std::result::Result<Vec<(usize, usize)>, usize> {
    (1..=inst.v_count)
        .map(|j| {
            [(1, 2), (1, 3), (2, 3)]
                .into_iter()
                .find(|&(a, b)| inst.edges_at(j).all(|e| pair_ok(e, a, b)))
                .ok_or(j)
        })
        .collect()
}

/// `+1` on permitted cells; when exactly one of `(a,1), (a,2), (b,1),
/// (b,2)` is permitted, its partner on the same side of the balance
/// equation gets `-1`.
pub fn objective_from_instance(
    inst: &EcbgcInstance,
    pairs: &[(usize, usize)],
) -> Result<BlockPoint> {
    if pairs.len() != inst.v_count {
        return input_err("one color pair per V vertex is required");
    }
    let mut c = BlockPoint::zeros(inst.u_count, inst.v_count);
    for e in &inst.edges {
        let (a, b) = pairs[e.v - 1];
        if a == b || !(1..=3).contains(&a) || !(1..=3).contains(&b) || !pair_ok(e, a, b) {
            return input_err(format!(
                "edge ({}, {}) violates the pair ({a}, {b})",
                e.u, e.v
            ));
        }
        let (i, j) = (e.u - 1, e.v - 1);
        for k in 1..=3 {
            for s in 1..=2 {
                if e.permits(k, s) {
                    c.set(i, j, k - 1, s - 1, Rational::one());
                }
            }
        }
        // (a,1) pairs with (b,2); (a,2) with (b,1)
        let partners = [
            ((a, 1), (b, 2)),
            ((b, 2), (a, 1)),
            ((a, 2), (b, 1)),
            ((b, 1), (a, 2)),
        ];
        let permitted: Vec<_> = partners
            .iter()
            .filter(|((k, s), _)| e.permits(*k, *s))
            .collect();
        if let [(_, (k, s))] = permitted[..] {
            c.set(i, j, k - 1, s - 1, Rational::from_integer(-1));
        }
    }
    Ok(c)
}

/// Scales the block of every edge by its positive weight.
pub fn weighted_objective(
    inst: &EcbgcInstance,
    pairs: &[(usize, usize)],
    weights: &[Rational],
) -> Result<BlockPoint> {
    if weights.len() != inst.edges.len() {
        return input_err("one weight per edge is required");
    }
    if weights.iter().any(|w| !w.is_positive()) {
        return input_err("edge weights must be positive");
    }
    let mut c = objective_from_instance(inst, pairs)?;
    for (e, w) in inst.edges.iter().zip(weights) {
        for k in 0..3 {
            for l in 0..2 {
                let x = c.get_mut(e.u - 1, e.v - 1, k, l);
                *x = &*x * w;
            }
        }
    }
    Ok(c)
}

/// Decides colorability through integer recognition. Refuses instances
/// outside the subclass.
pub fn solve_ecbgc(inst: &EcbgcInstance) -> Result<Option<Coloring>> {
    let pairs = check_condition(inst).map_err(|column| Error::OutsideSubclass { column })?;
    let c = objective_from_instance(inst, &pairs)?;
    let out = recognize_satp(&c)?;
    let target = Rational::from_integer(inst.edges.len() as i64);
    let Some(code) = out.witness.filter(|_| out.answer && out.lp_value == target) else {
        return Ok(None);
    };
    let coloring = Coloring::from_code(&code);
    if !inst.is_valid(&coloring) {
        return Err(Error::Internal(format!(
            "recognized coloring {code} violates an edge table"
        )));
    }
    Ok(Some(coloring))
}

/// First valid coloring in lexicographic order (U colors first).
pub fn brute_force_coloring(inst: &EcbgcInstance, budget: u128) -> Result<Option<Coloring>> {
    check_budget(inst.u_count, inst.v_count, budget)?;
    let mut c = Coloring {
        u: vec![1; inst.u_count],
        v: vec![1; inst.v_count],
    };
    loop {
        if inst.is_valid(&c) {
            return Ok(Some(c));
        }
        // odometer over (u, v), last V vertex fastest
        let digits =
            c.u.iter_mut()
                .map(|d| (d, 2))
                .chain(c.v.iter_mut().map(|d| (d, 3)));
        let mut carried = true;
        for (d, base) in digits.rev() {
            if *d < base {
                *d += 1;
                carried = false;
                break;
            }
            *d = 1;
        }
        if carried {
            return Ok(None);
        }
    }
}

/// Edge `(i, j)` whenever variable `i` occurs in clause `j`; its table
/// permits exactly the cells where the X3SAT objective is positive. A
/// clause that repeats a variable yields one edge with the union of the cells.
pub fn reduce_x3sat_to_ecbgc(f: &Cnf3Formula) -> Result<EcbgcInstance> {
    if f.clauses.is_empty() {
        return input_err("the reduction needs at least one clause");
    }
    let w = objective_x3sat(f);
    let mut edges = Vec::new();
    for i in 0..f.var_count {
        for (j, clause) in f.clauses.iter().enumerate() {
            if clause.iter().all(|l| l.var != i + 1) {
                continue;
            }
            let pc =
                std::array::from_fn(|s| std::array::from_fn(|k| w.get(i, j, k, s).is_positive()));
            edges.push(Edge {
                u: i + 1,
                v: j + 1,
                pc,
            });
        }
    }
    EcbgcInstance::new(f.var_count, f.clauses.len(), edges)
}
