mod common;

use common::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use satp::ecbgc::*;
use satp::recognition::check_balance;
use satp::sat::{brute_force_x3sat, parse_cnf3, Cnf3Formula};
use satp::{BlockPoint, Error, Rational};

const BUDGET: u128 = 1_000_000;

#[test]
fn sample_instance_parses() {
    let inst = parse_ecbgc(&data("sample.ecbgc")).unwrap();
    assert_eq!((inst.u_count, inst.v_count, inst.edges.len()), (2, 2, 4));
    let e = &inst.edges[0];
    let by_k_s: Vec<bool> = (1..=2)
        .flat_map(|s| (1..=3).map(move |k| (k, s)))
        .map(|(k, s)| e.permits(k, s))
        .collect();
    assert_eq!(by_k_s, [true, true, false, false, false, true]);
}

#[test]
fn sample_objective_with_balancing() {
    let inst = parse_ecbgc(&data("sample.ecbgc")).unwrap();
    let pairs = check_condition(&inst).unwrap();
    assert_eq!(pairs, vec![(1, 2), (1, 2)]);
    let c = objective_from_instance(&inst, &pairs).unwrap();
    let (expected, _) = BlockPoint::from_text(&data("sample_ecbgc_objective.txt")).unwrap();
    assert_eq!(c, expected);
    assert!(check_balance(&c).is_ok());
    assert_eq!(c.as_slice().iter().filter(|v| v.is_negative()).count(), 2);
}

#[test]
fn sample_instance_solves() {
    let inst = parse_ecbgc(&data("sample.ecbgc")).unwrap();
    let fast = solve_ecbgc(&inst).unwrap();
    let slow = brute_force_coloring(&inst, BUDGET).unwrap();
    assert_eq!(fast.is_some(), slow.is_some());
    if let Some(col) = fast {
        assert!(inst.is_valid(&col));
    }
}

#[test]
fn random_subclass_agrees_with_brute_force() {
    let mut rng = ChaCha8Rng::seed_from_u64(24);
    let mut colorable = 0;
    for t in 0..150 {
        let (m, n) = (1 + t % 3, 1 + (t / 3) % 3);
        let inst = random_subclass_instance(m, n, &mut rng);
        let pairs = check_condition(&inst).expect("generator stays inside the subclass");
        assert!(check_balance(&objective_from_instance(&inst, &pairs).unwrap()).is_ok());
        let fast = solve_ecbgc(&inst).unwrap();
        let slow = brute_force_coloring(&inst, BUDGET).unwrap();
        assert_eq!(fast.is_some(), slow.is_some(), "{}", inst.to_text());
        if let Some(col) = fast {
            colorable += 1;
            assert!(inst.is_valid(&col));
        }
    }
    assert!(colorable > 20 && colorable < 150, "colorable = {colorable}");
}

#[test]
fn weighted_objective_keeps_balance_and_argmax() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..30 {
        let inst = random_subclass_instance(2, 3, &mut rng);
        let pairs = check_condition(&inst).unwrap();
        let weights: Vec<Rational> = (0..inst.edges.len())
            .map(|e| Rational::new(e as i64 + 2, 3))
            .collect();
        let c = weighted_objective(&inst, &pairs, &weights).unwrap();
        assert!(check_balance(&c).is_ok());
        let total: Rational = weights.iter().fold(Rational::zero(), |a, w| &a + w);
        let (best, code) = satp::recognition::integer_max_oracle(&c, BUDGET).unwrap();
        let colorable = brute_force_coloring(&inst, BUDGET).unwrap().is_some();
        assert_eq!(best == total, colorable);
        if colorable {
            assert!(inst.is_valid(&Coloring::from_code(&code)));
        }
    }
    let inst = random_subclass_instance(1, 1, &mut rng);
    let pairs = check_condition(&inst).unwrap();
    let zero = vec![Rational::zero(); inst.edges.len()];
    if !zero.is_empty() {
        assert!(weighted_objective(&inst, &pairs, &zero).is_err());
    }
}

#[test]
fn refuses_outside_subclass() {
    // every pair sees one side of the biconditional permitted without the other
    let inst = parse_ecbgc("ecbgc 1 1\nedge 1 1 : ++--++\n").unwrap();
    assert_eq!(check_condition(&inst), Err(1));
    assert!(matches!(
        solve_ecbgc(&inst),
        Err(Error::OutsideSubclass { column: 1 })
    ));
}

#[test]
fn sample_formula_reduction() {
    let f = parse_cnf3(&data("formula.cnf")).unwrap();
    let inst = reduce_x3sat_to_ecbgc(&f).unwrap();
    assert_eq!((inst.u_count, inst.v_count, inst.edges.len()), (4, 3, 9));
    let (w, _) = BlockPoint::from_text(&data("formula_x3sat.txt")).unwrap();
    for e in &inst.edges {
        for k in 0..3 {
            for s in 0..2 {
                assert_eq!(e.pc[s][k], w.get(e.u - 1, e.v - 1, k, s).is_one());
            }
        }
    }
    assert!(check_condition(&inst).is_err());
    let colorable = brute_force_coloring(&inst, BUDGET).unwrap().is_some();
    assert_eq!(colorable, brute_force_x3sat(&f).is_some());
}

#[test]
fn single_clause_reduction() {
    let f = Cnf3Formula::from_signed(3, &[[1, 2, 3]]).unwrap();
    assert_eq!(reduce_x3sat_to_ecbgc(&f).unwrap().edges.len(), 3);
    let g = Cnf3Formula::from_signed(2, &[[1, -1, 2]]).unwrap();
    let inst = reduce_x3sat_to_ecbgc(&g).unwrap();
    assert_eq!(inst.edges.len(), 2);
}

#[test]
fn x3sat_reduction_exhaustive_small() {
    for m in 3..=4 {
        let clauses = distinct_clauses(m);
        for a in &clauses {
            for b in &clauses {
                let f = Cnf3Formula::new(m, vec![*a, *b]).unwrap();
                let inst = reduce_x3sat_to_ecbgc(&f).unwrap();
                let sat = x3sat_satisfiable(&f);
                assert_eq!(brute_force_coloring(&inst, BUDGET).unwrap().is_some(), sat);
            }
        }
    }
}
