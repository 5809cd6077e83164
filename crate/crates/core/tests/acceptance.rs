//! Acceptance suite: one line per criterion. Every comparison is exact
//! rational equality; the runtime bounds below are part of each criterion.

mod common;

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::Command;
use std::time::{Duration, Instant};

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satp::ecbgc::*;
use satp::polytope::{build_satp2_lp, build_satp_lp, pair_count};
use satp::recognition::*;
use satp::sat::*;
use satp::vertices::*;
use satp::{lp_maximize, BlockPoint, Rational};

const BUDGET: u128 = DEFAULT_CODE_BUDGET;

struct Criterion {
    id: usize,
    name: &'static str,
    limit: Duration,
    check: fn() -> String,
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) {
    if !cond {
        panic!("{}", msg());
    }
}

fn c1_fractional_n6() -> String {
    let out = Command::new(env!("CARGO_BIN_EXE_satp"))
        .args(["vertices", "fractional", "--n", "6"])
        .output()
        .unwrap();
    ensure(out.status.success(), || "CLI exited with failure".into());
    let (printed, _) = BlockPoint::from_text(&String::from_utf8(out.stdout).unwrap()).unwrap();
    let (expected, _) = BlockPoint::from_text(&data("fractional_n6.txt")).unwrap();
    let same = printed
        .as_slice()
        .iter()
        .zip(expected.as_slice())
        .filter(|(a, b)| a == b)
        .count();
    ensure(same == 216 && printed.as_slice().len() == 216, || {
        format!("{same}/216 entries match")
    });
    let den = satp::rational::common_denominator(printed.as_slice());
    ensure(den == 7.into(), || format!("common denominator {den}"));
    ensure(
        verify_vertex(&printed, &build_satp_lp(6, 6).unwrap()).unwrap(),
        || "not a vertex".into(),
    );
    "216/216 entries exact, denominator 7, vertex".into()
}

fn c2_denominators() -> String {
    for n in 4..=10 {
        let p = fractional_vertex(n).unwrap();
        let sys = build_satp_lp(n, n).unwrap();
        ensure(sys.is_feasible(p.as_slice()), || {
            format!("n={n} infeasible")
        });
        ensure(verify_vertex(&p, &sys).unwrap(), || {
            format!("n={n} not a vertex")
        });
        let min = p.min_positive().cloned();
        ensure(min == Some(Rational::new(1, n as i64 + 1)), || {
            format!("n={n} min positive {min:?}")
        });
    }
    "n=4..10 feasible vertices with min positive 1/(n+1)".into()
}

fn c3_census() -> String {
    let v11 =
        enumerate_lp_vertices(&build_satp_lp(1, 1).unwrap(), DEFAULT_LP_VERTEX_BUDGET).unwrap();
    ensure(
        v11.len() == 6 && v11.iter().all(|p| p.iter().all(Rational::is_integer)),
        || format!("SATP_LP(1,1): {} vertices", v11.len()),
    );
    let v22 =
        enumerate_lp_vertices(&build_satp_lp(2, 2).unwrap(), DEFAULT_LP_VERTEX_BUDGET).unwrap();
    let integral = v22
        .iter()
        .filter(|p| p.iter().all(Rational::is_integer))
        .count();
    let fractional: Vec<_> = v22
        .iter()
        .filter(|p| !p.iter().all(Rational::is_integer))
        .collect();
    let halves = fractional
        .iter()
        .all(|p| p.iter().all(|x| x.is_integer() || x.denom() == 2.into()));
    ensure(
        v22.len() == 108 && integral == 36 && fractional.len() == 72 && halves,
        || {
            format!(
                "SATP_LP(2,2): {} vertices, {integral} integral, halves={halves}",
                v22.len()
            )
        },
    );
    "SATP_LP(1,1): 6 integral; SATP_LP(2,2): 108 = 36 integral + 72 half-integral".into()
}

fn c4_skeleton() -> String {
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let g = skeleton(m, n, BUDGET).unwrap();
        ensure(g.diameter() == Some(2), || {
            format!("({m},{n}) diameter {:?}", g.diameter())
        });
        let clique = construct_clique(m, n);
        ensure(
            clique.len() == 1 << m.min(n) && g.is_clique(&clique),
            || format!("({m},{n}) clique"),
        );
        for a in 0..g.codes.len() {
            for b in 0..g.codes.len() {
                if a == b {
                    continue;
                }
                ensure(g.adjacency[a][b] == g.adjacency[b][a], || {
                    "asymmetric".into()
                });
                ensure(
                    g.adjacency[a][b] == trichotomy(&g.codes[a], &g.codes[b]),
                    || format!("({m},{n}) {} {}", g.codes[a], g.codes[b]),
                );
            }
        }
    }
    "(2,2),(2,3),(3,3): diameter 2, cliques 4/4/8, adjacency symmetric and per trichotomy".into()
}

fn c5_quasi_integrality() -> String {
    let sys = build_satp_lp(2, 2).unwrap();
    let codes = enumerate_integral_vertices(2, 2, BUDGET).unwrap();
    let mut pairs = 0;
    let mut edges = 0;
    for (a, u) in codes.iter().enumerate() {
        for v in &codes[a + 1..] {
            pairs += 1;
            let e = is_edge(
                &sys,
                code_to_point(u).as_slice(),
                code_to_point(v).as_slice(),
            )
            .unwrap();
            ensure(e == trichotomy(u, v), || format!("{u} {v}: is_edge={e}"));
            edges += e as usize;
        }
    }
    ensure(pairs == 630, || format!("{pairs} pairs"));
    format!("630/630 pairs agree ({edges} edges)")
}

fn c6_sat_objectives() -> String {
    let f = parse_cnf3(&data("formula.cnf")).unwrap();
    for (obj, file) in [
        (objective_max3sat(&f), "formula_max3sat.txt"),
        (objective_x3sat(&f), "formula_x3sat.txt"),
        (objective_nae3sat(&f), "formula_nae3sat.txt"),
    ] {
        let (expected, _) = BlockPoint::from_text(&data(file)).unwrap();
        ensure(obj == expected, || format!("{file} differs"));
    }
    "max3sat, x3sat and nae3sat objectives bit-exact".into()
}

fn c7_reductions() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for t in 0..100 {
        let (m, n) = (rng.gen_range(1..=4), rng.gen_range(1..=4));
        let f = random_formula(m, n, false, &mut rng);
        let counts: Vec<Vec<usize>> = (0..1u32 << m)
            .map(|b| {
                f.clauses
                    .iter()
                    .map(|c| {
                        c.iter()
                            .filter(|l| (b >> (l.var - 1) & 1 == 1) != l.negated)
                            .count()
                    })
                    .collect()
            })
            .collect();
        let max_sat = counts
            .iter()
            .map(|c| c.iter().filter(|&&k| k > 0).count())
            .max()
            .unwrap();
        let x3 = counts.iter().any(|c| c.iter().all(|&k| k == 1));
        let nae = counts.iter().any(|c| c.iter().all(|&k| k == 1 || k == 2));
        let full = int(3 * n as i64);
        let (v, _) = integer_max_oracle(&objective_max3sat(&f), BUDGET).unwrap();
        let (w, _) = integer_max_oracle(&objective_x3sat(&f), BUDGET).unwrap();
        let (y, _) = integer_max_oracle(&objective_nae3sat(&f), BUDGET).unwrap();
        ensure(v == int(max_sat as i64), || {
            format!("trial {t}: f_v {v} vs {max_sat}\n{f}")
        });
        ensure((w == full) == x3, || {
            format!("trial {t}: f_w {w}, x3sat {x3}\n{f}")
        });
        ensure((y == full) == nae, || {
            format!("trial {t}: f_y {y}, nae {nae}\n{f}")
        });
    }
    "100/100 random formulas (m,n <= 4): MAX-3SAT, X3SAT, NAE-3SAT agree".into()
}

fn c8_recognition() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut report = Vec::new();
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        let (mut yes, mut rewrites) = (0, 0);
        for t in 0..200 {
            let c = random_balanced(m, n, &mut rng);
            let r = recognize_satp(&c).unwrap();
            let (best, _) = integer_max_oracle(&c, BUDGET).unwrap();
            ensure(r.answer == (best == r.lp_value), || {
                format!("({m},{n}) trial {t}\n{}", c.to_text(true))
            });
            if !r.answer {
                continue;
            }
            yes += 1;
            let wit = r.witness.as_ref().unwrap();
            ensure(wit.value(&c) == r.lp_value, || {
                format!("witness {wit} misses the optimum")
            });
            // replay the rewrite on the SATP² optimizer and check its post-conditions
            let cert = check_balance(&c).unwrap();
            let pairs: Vec<_> = (0..n)
                .map(|j| {
                    if column_balanced(&c, j, 1, 2) {
                        (2, 3)
                    } else {
                        cert.pairs[j]
                    }
                })
                .collect();
            let canon = RenamingLedger::canonicalizing(m, &pairs);
            let opt = lp_maximize(&build_satp2_lp(m, n).unwrap(), canon.to_view(&c).as_slice())
                .unwrap()
                .into_optimum()
                .unwrap();
            let w = canon.to_original(&BlockPoint::from_flat(m, n, opt.point).unwrap());
            let (ws, ledger) = construct_wstar(&w, &c).unwrap();
            ensure(ledger.to_original(&ws).dot(&c) == w.dot(&c), || {
                "objective not preserved".into()
            });
            ensure(
                (0..m).all(|i| (0..n).all(|j| ws.get(i, j, 0, 0).is_positive())),
                || "zero x left".into(),
            );
            rewrites += 1;
        }
        report.push(format!(
            "({m},{n}) 200 trials, {yes} integral, {rewrites} rewrites checked"
        ));
    }
    report.join("; ")
}

fn bqp_value(obj: &[Rational], n: usize, mask: u32) -> Rational {
    let on = |i: usize| mask >> i & 1 == 1;
    let mut v = Rational::zero();
    for i in 0..n {
        if on(i) {
            v += &obj[i];
        }
        for j in i + 1..n {
            if on(i) && on(j) {
                v += &obj[satp::polytope::bqp_pair_index(n, i, j)];
            }
        }
    }
    v
}

fn c9_bqp() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    let mut yes = 0;
    for n in [3, 4] {
        for t in 0..100 {
            let obj = random_objective(n + pair_count(n), &mut rng);
            let best = (0..1u32 << n)
                .map(|mask| bqp_value(&obj, n, mask))
                .max()
                .unwrap();
            let r = recognize_bqp(&obj, n).unwrap();
            ensure(r.answer == (best == r.bqp_value), || {
                format!("n={n} trial {t}")
            });
            yes += r.answer as usize;
        }
    }
    format!("200/200 objectives (n=3,4) agree with brute force ({yes} integral)")
}

fn c10_ecbgc() -> String {
    let inst = parse_ecbgc(&data("sample.ecbgc")).unwrap();
    let pairs = check_condition(&inst).unwrap();
    let (expected, _) = BlockPoint::from_text(&data("sample_ecbgc_objective.txt")).unwrap();
    ensure(
        objective_from_instance(&inst, &pairs).unwrap() == expected,
        || "sample ECBGC objective differs".into(),
    );

    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let mut colorable = 0;
    for t in 0..150 {
        let (m, n) = (rng.gen_range(1..=3), rng.gen_range(1..=3));
        let inst = random_subclass_instance(m, n, &mut rng);
        let fast = solve_ecbgc(&inst).unwrap();
        let slow = brute_force_coloring(&inst, BUDGET).unwrap();
        ensure(fast.is_some() == slow.is_some(), || {
            format!("trial {t}\n{}", inst.to_text())
        });
        if let Some(c) = &fast {
            ensure(inst.is_valid(c), || {
                format!("invalid coloring in trial {t}")
            });
            colorable += 1;
        }
    }

    let mut formulas = 0u64;
    for m in 3..=4 {
        let clauses = ordered_distinct_clauses(m);
        for n in 1..=3u32 {
            let total = clauses.len().pow(n);
            for idx in 0..total {
                let mut rest = idx;
                let cls: Vec<_> = (0..n)
                    .map(|_| {
                        let c = clauses[rest % clauses.len()];
                        rest /= clauses.len();
                        c
                    })
                    .collect();
                let f = Cnf3Formula::new(m, cls).unwrap();
                let inst = reduce_x3sat_to_ecbgc(&f).unwrap();
                let col = brute_force_coloring(&inst, BUDGET).unwrap().is_some();
                ensure(col == x3sat_satisfiable(&f), || format!("{f}"));
                formulas += 1;
            }
        }
    }
    format!("sample instance exact; 150/150 subclass instances agree ({colorable} colorable); {formulas} X3SAT formulas agree")
}

fn c11_negative_control() -> String {
    let (t9, _) = BlockPoint::from_text(&data("fractional_n6.txt")).unwrap();
    let s2 = build_satp2_lp(6, 6).unwrap();
    let violated = s2.violated_inequalities(t9.as_slice());
    ensure(!violated.is_empty(), || {
        "fractional point satisfies every quadratic row".into()
    });
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    let count = code_count(6, 6);
    for _ in 0..1000 {
        let code = code_at(6, 6, rng.gen_range(0..count));
        ensure(s2.is_feasible(code_to_point(&code).as_slice()), || {
            format!("{code} cut off")
        });
    }
    format!("fractional point violates {} of {} rows of SATP²_LP(6,6); 1000/1000 integral codes feasible", violated.len(), s2.ineq_rows.len())
}

fn main() {
    let criteria = [
        Criterion {
            id: 1,
            name: "fractional vertex n=6",
            limit: Duration::from_secs(1),
            check: c1_fractional_n6,
        },
        Criterion {
            id: 2,
            name: "denominator law",
            limit: Duration::from_secs(30),
            check: c2_denominators,
        },
        Criterion {
            id: 3,
            name: "vertex census",
            limit: Duration::from_secs(30 * 60),
            check: c3_census,
        },
        Criterion {
            id: 4,
            name: "skeleton properties",
            limit: Duration::from_secs(10),
            check: c4_skeleton,
        },
        Criterion {
            id: 5,
            name: "quasi-integrality",
            limit: Duration::from_secs(5 * 60),
            check: c5_quasi_integrality,
        },
        Criterion {
            id: 6,
            name: "SAT objective reproduction",
            limit: Duration::from_secs(60),
            check: c6_sat_objectives,
        },
        Criterion {
            id: 7,
            name: "reduction correctness",
            limit: Duration::from_secs(2 * 60),
            check: c7_reductions,
        },
        Criterion {
            id: 8,
            name: "recognition soundness",
            limit: Duration::from_secs(10 * 60),
            check: c8_recognition,
        },
        Criterion {
            id: 9,
            name: "BQP recognition",
            limit: Duration::from_secs(2 * 60),
            check: c9_bqp,
        },
        Criterion {
            id: 10,
            name: "ECBGC",
            limit: Duration::from_secs(10 * 60),
            check: c10_ecbgc,
        },
        Criterion {
            id: 11,
            name: "negative control",
            limit: Duration::from_secs(60),
            check: c11_negative_control,
        },
    ];
    let filter: Vec<String> = std::env::args()
        .skip(1)
        .filter(|a| !a.starts_with('-'))
        .collect();
    std::panic::set_hook(Box::new(|_| {}));
    let mut failed = 0;
    for c in &criteria {
        if !filter.is_empty()
            && !filter
                .iter()
                .any(|f| c.name.contains(f.as_str()) || f == &c.id.to_string())
        {
            continue;
        }
        let start = Instant::now();
        let result = catch_unwind(AssertUnwindSafe(c.check));
        let took = start.elapsed();
        let line = match result {
            Ok(detail) if took <= c.limit => {
                format!("PASS  {} ({detail}; {:.2?} <= {:?})", c.name, took, c.limit)
            }
            Ok(detail) => format!(
                "FAIL  {} ({detail}; {:.2?} exceeds {:?})",
                c.name, took, c.limit
            ),
            Err(e) => {
                let msg = e
                    .downcast_ref::<String>()
                    .cloned()
                    .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
                    .unwrap_or_default();
                format!("FAIL  {} ({msg}; {:.2?})", c.name, took)
            }
        };
        if line.starts_with("FAIL") {
            failed += 1;
        }
        println!("criterion {:>2}: {line}", c.id);
    }
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
}
