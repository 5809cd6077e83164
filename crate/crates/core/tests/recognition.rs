mod common;

use common::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satp::polytope::{bqp_pair_index, build_satp2_lp, build_satp_lp, pair_count};
use satp::recognition::*;
use satp::sat::{brute_force_x3sat, objective_max3sat, objective_x3sat, parse_cnf3};
use satp::vertices::{code_at, code_count, code_to_point, DEFAULT_CODE_BUDGET};
use satp::{lp_maximize, BlockPoint, Error, Rational, VertexCode};

fn canonical_ledger(c: &BlockPoint) -> RenamingLedger {
    let cert = check_balance(c).unwrap();
    let pairs: Vec<(usize, usize)> = (0..c.n())
        .map(|j| {
            if column_balanced(c, j, 1, 2) {
                (2, 3)
            } else {
                cert.pairs[j]
            }
        })
        .collect();
    RenamingLedger::canonicalizing(c.m(), &pairs)
}

/// A point of the canonical SATP²_LP, returned in original coordinates:
/// an optimizer for a random objective or an average of integral vertices.
fn canonical_point(c: &BlockPoint, rng: &mut ChaCha8Rng) -> BlockPoint {
    let (m, n) = (c.m(), c.n());
    let view = if rng.gen_bool(0.5) {
        let obj = random_objective(6 * m * n, rng);
        let p = lp_maximize(&build_satp2_lp(m, n).unwrap(), &obj)
            .unwrap()
            .into_optimum()
            .unwrap()
            .point;
        BlockPoint::from_flat(m, n, p).unwrap()
    } else {
        let parts = rng.gen_range(2..5);
        let mut acc = vec![Rational::zero(); 6 * m * n];
        for _ in 0..parts {
            let p = code_to_point(&code_at(m, n, rng.gen_range(0..code_count(m, n))));
            for (a, b) in acc.iter_mut().zip(p.as_slice()) {
                *a += &(b * &Rational::new(1, parts));
            }
        }
        BlockPoint::from_flat(m, n, acc).unwrap()
    };
    canonical_ledger(c).to_original(&view)
}

/// Checks every post-condition of the rewrite and the decomposition.
fn check_rewrite(w: &BlockPoint, c: &BlockPoint) {
    let (m, n) = (c.m(), c.n());
    let (ws, ledger) = construct_wstar(w, c).unwrap();
    let back = ledger.to_original(&ws);
    assert_eq!(back.dot(c), w.dot(c));
    assert!(build_satp_lp(m, n).unwrap().is_feasible(back.as_slice()));
    for i in 0..m {
        for j in 0..n {
            assert!(ws.get(i, j, 0, 0).is_positive());
        }
    }
    let (alpha, q, h) = decompose(&ws, &ledger).unwrap();
    assert!(alpha.is_positive() && alpha <= Rational::one());
    assert!(build_satp_lp(m, n).unwrap().is_feasible(h.as_slice()));
    let qv = ledger.to_view(&code_to_point(&q));
    let one_minus = &Rational::one() - &alpha;
    for ((w, q), h) in ws.as_slice().iter().zip(qv.as_slice()).zip(h.as_slice()) {
        assert_eq!(&(&alpha * q) + &(&one_minus * h), *w);
    }
}

#[test]
fn balance_certificates() {
    let zero = BlockPoint::zeros(2, 3);
    assert_eq!(check_balance(&zero).unwrap().pairs, vec![(1, 2); 3]);
    let (t16, _) = BlockPoint::from_text(&data("sample_ecbgc_objective.txt")).unwrap();
    assert_eq!(check_balance(&t16).unwrap().pairs, vec![(1, 2), (1, 2)]);
    let f = parse_cnf3(&data("formula.cnf")).unwrap();
    assert!(matches!(
        check_balance(&objective_x3sat(&f)),
        Err(Error::Unbalanced { .. })
    ));
    assert!(matches!(
        recognize_satp(&objective_x3sat(&f)),
        Err(Error::Unbalanced { .. })
    ));
}

#[test]
fn zero_objective() {
    let r = recognize_satp(&BlockPoint::zeros(2, 2)).unwrap();
    assert!(r.answer);
    assert_eq!(r.lp_value, int(0));
    let (v, code) = integer_max_oracle(&BlockPoint::zeros(2, 2), DEFAULT_CODE_BUDGET).unwrap();
    assert_eq!((v, code.to_string()), (int(0), "00/00".to_string()));
}

#[test]
fn oracle_on_sample_formula() {
    let f = parse_cnf3(&data("formula.cnf")).unwrap();
    assert_eq!(
        integer_max_oracle(&objective_max3sat(&f), DEFAULT_CODE_BUDGET)
            .unwrap()
            .0,
        int(3)
    );
    let (w, _) = integer_max_oracle(&objective_x3sat(&f), DEFAULT_CODE_BUDGET).unwrap();
    assert_eq!(w == int(9), brute_force_x3sat(&f).is_some());
    assert!(matches!(
        integer_max_oracle(&BlockPoint::zeros(5, 5), 100),
        Err(Error::Budget { .. })
    ));
}

#[test]
fn recognition_matches_oracle() {
    let mut rng = ChaCha8Rng::seed_from_u64(22);
    let mut yes = 0;
    for (m, n, trials) in [(1, 2, 30), (2, 2, 60), (2, 3, 60), (3, 2, 30)] {
        for _ in 0..trials {
            let c = random_balanced(m, n, &mut rng);
            let r = recognize_satp(&c).unwrap();
            let (best, _) = integer_max_oracle(&c, DEFAULT_CODE_BUDGET).unwrap();
            assert_eq!(r.answer, best == r.lp_value, "{}", c.to_text(true));
            assert!(best <= r.satp2_value && r.satp2_value <= r.lp_value);
            if let Some(wit) = &r.witness {
                yes += 1;
                assert_eq!(wit.value(&c), r.lp_value);
            } else {
                assert!(!r.answer);
            }
        }
    }
    assert!(yes > 50);
}

#[test]
fn sandwich_for_any_objective() {
    let mut rng = ChaCha8Rng::seed_from_u64(23);
    for (m, n) in [(2, 2), (2, 3), (3, 3)] {
        for _ in 0..15 {
            let obj = random_objective(6 * m * n, &mut rng);
            let lp = lp_maximize(&build_satp_lp(m, n).unwrap(), &obj)
                .unwrap()
                .into_optimum()
                .unwrap()
                .value;
            let lp2 = lp_maximize(&build_satp2_lp(m, n).unwrap(), &obj)
                .unwrap()
                .into_optimum()
                .unwrap()
                .value;
            let (best, _) = integer_max_oracle(
                &BlockPoint::from_flat(m, n, obj).unwrap(),
                DEFAULT_CODE_BUDGET,
            )
            .unwrap();
            assert!(best <= lp2 && lp2 <= lp);
        }
    }
}

#[test]
fn wstar_leaves_positive_points_alone() {
    let c = BlockPoint::zeros(2, 2);
    let third = Rational::new(1, 3);
    let mut w = BlockPoint::zeros(2, 2);
    for i in 0..2 {
        for j in 0..2 {
            w.set(i, j, 0, 0, third.clone());
            w.set(i, j, 1, 1, third.clone());
            w.set(i, j, 2, 1, third.clone());
        }
    }
    let (ws, ledger) = construct_wstar(&w, &c).unwrap();
    assert_eq!(ws, w);
    assert!(ledger.is_empty());
}

#[test]
fn wstar_renames_integral_vertices_to_all_x() {
    let c = BlockPoint::zeros(2, 2);
    for idx in 0..code_count(2, 2) {
        let code = code_at(2, 2, idx);
        let (ws, ledger) = construct_wstar(&code_to_point(&code), &c).unwrap();
        assert!(ws
            .as_slice()
            .iter()
            .enumerate()
            .all(|(d, v)| v.is_one() == (d % 6 == 0)));
        let (alpha, q, _) = decompose(&ws, &ledger).unwrap();
        assert!(alpha.is_one());
        assert_eq!(q, code);
    }
}

#[test]
fn midpoint_decomposes_into_its_vertices() {
    let all_x = code_to_point(&"00/00".parse::<VertexCode>().unwrap());
    let ledger = RenamingLedger::canonicalizing(2, &[(2, 3), (2, 3)]);
    for idx in 1..code_count(2, 2) {
        let v = code_to_point(&code_at(2, 2, idx));
        let mid = BlockPoint::from_flat(
            2,
            2,
            all_x
                .as_slice()
                .iter()
                .zip(v.as_slice())
                .map(|(a, b)| &(a + b) * &Rational::new(1, 2))
                .collect(),
        )
        .unwrap();
        let (alpha, q, h) = decompose(&mid, &ledger).unwrap();
        assert_eq!(alpha, Rational::new(1, 2));
        assert_eq!(q.to_string(), "00/00");
        assert_eq!(h, v);
    }
}

#[test]
fn wstar_postconditions_on_random_points() {
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for (m, n, trials) in [(2, 2, 80), (2, 3, 60), (3, 3, 40), (3, 4, 15)] {
        for _ in 0..trials {
            let c = random_balanced(m, n, &mut rng);
            let w = canonical_point(&c, &mut rng);
            check_rewrite(&w, &c);
        }
    }
}

#[test]
fn wstar_on_lp_optimizers() {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    for _ in 0..60 {
        let c = random_balanced(2, 2, &mut rng);
        let ledger = canonical_ledger(&c);
        let c0 = ledger.to_view(&c);
        let opt = lp_maximize(&build_satp2_lp(2, 2).unwrap(), c0.as_slice())
            .unwrap()
            .into_optimum()
            .unwrap();
        let w = ledger.to_original(&BlockPoint::from_flat(2, 2, opt.point).unwrap());
        check_rewrite(&w, &c);
    }
}

fn bqp_brute(obj: &[Rational], n: usize) -> Rational {
    (0..1u32 << n)
        .map(|mask| {
            let x = |i: usize| mask >> i & 1 == 1;
            let mut v = Rational::zero();
            for i in 0..n {
                if x(i) {
                    v += &obj[i];
                }
                for j in i + 1..n {
                    if x(i) && x(j) {
                        v += &obj[bqp_pair_index(n, i, j)];
                    }
                }
            }
            v
        })
        .max()
        .unwrap()
}

#[test]
fn bqp_recognition() {
    let r = recognize_bqp(&vec![int(0); 6], 3).unwrap();
    assert!(r.answer);
    // reward single variables, punish pairs: the all-half point wins over BQP_LP
    let obj = [int(1), int(1), int(1), int(-2), int(-2), int(-2)];
    let r = recognize_bqp(&obj, 3).unwrap();
    assert!(!r.answer);
    assert_eq!(r.bqp_value, Rational::new(3, 2));
    assert_eq!(bqp_brute(&obj, 3), int(1));
    assert!(recognize_bqp(&obj, 2).is_err());

    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for n in [3, 4] {
        for _ in 0..50 {
            let obj = random_objective(n + pair_count(n), &mut rng);
            let r = recognize_bqp(&obj, n).unwrap();
            let best = bqp_brute(&obj, n);
            assert_eq!(r.answer, best == r.bqp_value);
            assert_eq!(bqp_brute_force(&obj, n).unwrap().0, best);
        }
    }
}
