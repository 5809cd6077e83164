#![allow(dead_code)]

use std::path::PathBuf;

use rand::Rng;
use rand_chacha::ChaCha8Rng;
use satp::ecbgc::{EcbgcInstance, Edge};
use satp::sat::{Cnf3Formula, Literal};
use satp::{BlockPoint, Rational};

pub fn data(name: &str) -> String {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "data", name]
        .iter()
        .collect();
    std::fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()))
}

pub fn int(v: i64) -> Rational {
    Rational::from_integer(v)
}

/// Column-balanced objective with entries in -3..=3, one random pair per column.
pub fn random_balanced(m: usize, n: usize, rng: &mut ChaCha8Rng) -> BlockPoint {
    let mut c = BlockPoint::zeros(m, n);
    for j in 0..n {
        let (a, b) = [(0, 1), (0, 2), (1, 2)][rng.gen_range(0..3)];
        for i in 0..m {
            for k in 0..3 {
                for l in 0..2 {
                    c.set(i, j, k, l, int(rng.gen_range(-3..=3)));
                }
            }
            loop {
                let v = c.get(i, j, a, 0) + c.get(i, j, b, 1) - c.get(i, j, a, 1);
                if v >= int(-3) && v <= int(3) {
                    c.set(i, j, b, 0, v);
                    break;
                }
                c.set(i, j, a, 0, int(rng.gen_range(-3..=3)));
            }
        }
    }
    c
}

pub fn random_objective(len: usize, rng: &mut ChaCha8Rng) -> Vec<Rational> {
    (0..len).map(|_| int(rng.gen_range(-3..=3))).collect()
}

/// Random 3-CNF; clauses may repeat variables when `distinct` is false.
pub fn random_formula(m: usize, n: usize, distinct: bool, rng: &mut ChaCha8Rng) -> Cnf3Formula {
    let clauses: Vec<[i64; 3]> = (0..n)
        .map(|_| loop {
            let c: [i64; 3] = std::array::from_fn(|_| {
                let v = rng.gen_range(1..=m as i64);
                if rng.gen_bool(0.5) {
                    -v
                } else {
                    v
                }
            });
            let (x, y, z) = (c[0].abs(), c[1].abs(), c[2].abs());
            if !distinct || (x != y && y != z && x != z) {
                break c;
            }
        })
        .collect();
    Cnf3Formula::from_signed(m, &clauses).unwrap()
}

/// The subclass biconditional, restated for test use.
pub fn satisfies_pair(pc: &[[bool; 3]; 2], a: usize, b: usize) -> bool {
    (pc[0][a] && pc[1][b]) == (pc[1][a] && pc[0][b])
}

/// Random instance inside the polynomial subclass: each V vertex gets a
/// random 0-based pair and every incident table respects it.
pub fn random_subclass_instance(m: usize, n: usize, rng: &mut ChaCha8Rng) -> EcbgcInstance {
    let mut edges = Vec::new();
    for j in 0..n {
        let (a, b) = [(0, 1), (0, 2), (1, 2)][rng.gen_range(0..3)];
        for i in 0..m {
            if !rng.gen_bool(0.7) {
                continue;
            }
            let pc = loop {
                let bits: u8 = rng.gen_range(0..64);
                let pc: [[bool; 3]; 2] =
                    std::array::from_fn(|s| std::array::from_fn(|k| bits >> (3 * s + k) & 1 == 1));
                if satisfies_pair(&pc, a, b) {
                    break pc;
                }
            };
            edges.push(Edge {
                u: i + 1,
                v: j + 1,
                pc,
            });
        }
    }
    EcbgcInstance::new(m, n, edges).unwrap()
}

/// Every clause over distinct variables, literal order fixed.
pub fn distinct_clauses(m: usize) -> Vec<[Literal; 3]> {
    let mut out = Vec::new();
    for x in 1..=m {
        for y in x + 1..=m {
            for z in y + 1..=m {
                for signs in 0..8u8 {
                    let lit = |v, b: u8| Literal {
                        var: v,
                        negated: signs >> b & 1 == 1,
                    };
                    out.push([lit(x, 0), lit(y, 1), lit(z, 2)]);
                }
            }
        }
    }
    out
}

pub fn x3sat_satisfiable(f: &Cnf3Formula) -> bool {
    (0..1u32 << f.var_count).any(|bits| {
        f.clauses.iter().all(|c| {
            c.iter()
                .filter(|l| (bits >> (l.var - 1) & 1 == 1) != l.negated)
                .count()
                == 1
        })
    })
}

/// Adjacency in the integral hull, decided from first principles: `u` and
/// `v` span an edge iff every convex combination of integral vertices equal
/// to their midpoint is supported on `{u, v}`.
pub fn hull_adjacent(m: usize, n: usize, u: &satp::VertexCode, v: &satp::VertexCode) -> bool {
    use satp::vertices::{code_at, code_count, code_to_point};
    use satp::{lp_maximize, LinearSystem, Row};
    let pts: Vec<BlockPoint> = (0..code_count(m, n))
        .map(|i| code_to_point(&code_at(m, n, i)))
        .collect();
    let (pu, pv) = (code_to_point(u), code_to_point(v));
    let nv = pts.len();
    let mut sys = LinearSystem::new(nv);
    let two = Rational::from_integer(2);
    for d in 0..6 * m * n {
        let coeffs = pts.iter().map(|p| &p.as_slice()[d] * &two).collect();
        sys.add_eq(Row::new(coeffs, &pu.as_slice()[d] + &pv.as_slice()[d]));
    }
    sys.add_eq(Row::new(vec![Rational::one(); nv], Rational::one()));
    let obj: Vec<Rational> = pts
        .iter()
        .map(|p| {
            if *p == pu || *p == pv {
                Rational::zero()
            } else {
                Rational::one()
            }
        })
        .collect();
    lp_maximize(&sys, &obj).unwrap().value().unwrap().is_zero()
}

/// The adjacency criterion for integral vertices, restated: rows and
/// columns both differ, or exactly one coordinate differs in total.
pub fn trichotomy(u: &satp::VertexCode, v: &satp::VertexCode) -> bool {
    let dr = u.row.iter().zip(&v.row).filter(|(a, b)| a != b).count();
    let dc = u.col.iter().zip(&v.col).filter(|(a, b)| a != b).count();
    (dr > 0 && dc > 0) || dr + dc == 1
}

/// Every clause over three distinct variables in every literal order.
pub fn ordered_distinct_clauses(m: usize) -> Vec<[Literal; 3]> {
    let mut out = Vec::new();
    for x in 1..=m {
        for y in (1..=m).filter(|&y| y != x) {
            for z in (1..=m).filter(|&z| z != x && z != y) {
                for signs in 0..8u8 {
                    let lit = |v, b: u8| Literal {
                        var: v,
                        negated: signs >> b & 1 == 1,
                    };
                    out.push([lit(x, 0), lit(y, 1), lit(z, 2)]);
                }
            }
        }
    }
    out
}
