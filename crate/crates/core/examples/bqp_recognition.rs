//! Integer recognition over BQP_LP(n) through the triangle inequalities.
//!
//! ```text
//! cargo run --release --example bqp_recognition
//! ```

use satp::polytope::pair_count;
use satp::recognition::{bqp_brute_force, recognize_bqp};
use satp::Rational;

fn main() -> satp::Result<()> {
    for n in [3, 4] {
        // Reward each x_i, punish each product: the LP relaxation picks
        // x_i = 1/2 with x_ij = 0, which no zero-one point can match.
        let mut objective = vec![Rational::from_integer(1); n];
        objective.extend((0..pair_count(n)).map(|_| Rational::from_integer(-2)));
        report(&objective, n)?;
    }
    // Rewarding products as well makes all-ones optimal.
    let n = 4;
    let objective = vec![Rational::from_integer(1); n + pair_count(n)];
    report(&objective, n)
}

fn report(objective: &[Rational], n: usize) -> satp::Result<()> {
    let r = recognize_bqp(objective, n)?;
    let (best, x) = bqp_brute_force(objective, n)?;
    println!(
        "n = {n}: BQP_LP {}  MET {}  integral {}",
        r.bqp_value, r.met_value, r.answer
    );
    println!("  integer optimum {best} at {x:?}");
    Ok(())
}
