//! Integer recognition for balanced objectives, checked against brute force.
//!
//! ```text
//! cargo run --release --example recognition [seed]
//! ```

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use satp::recognition::{integer_max_oracle, recognize_satp};
use satp::{BlockPoint, Rational};

/// Random objective where, in every column, one pair of block rows `a, b`
/// satisfies `c[a][0] + c[b][1] == c[a][1] + c[b][0]` in each block.
fn balanced(m: usize, n: usize, rng: &mut ChaCha8Rng) -> BlockPoint {
    let mut c = BlockPoint::zeros(m, n);
    for j in 0..n {
        let (a, b) = [(0, 1), (0, 2), (1, 2)][rng.gen_range(0..3)];
        for i in 0..m {
            for k in 0..3 {
                for l in 0..2 {
                    c.set(i, j, k, l, Rational::from_integer(rng.gen_range(-3..=3)));
                }
            }
            let v = c.get(i, j, a, 0) + c.get(i, j, b, 1) - c.get(i, j, a, 1);
            c.set(i, j, b, 0, v);
        }
    }
    c
}

fn main() -> satp::Result<()> {
    let seed = std::env::args()
        .nth(1)
        .map_or(7, |a| a.parse().expect("seed"));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..8 {
        let c = balanced(3, 3, &mut rng);
        let outcome = recognize_satp(&c)?;
        let (int_max, _) = integer_max_oracle(&c, u128::MAX)?;
        print!(
            "lp {}  integer {}  answer {}",
            outcome.lp_value, int_max, outcome.answer
        );
        if let Some(q) = &outcome.witness {
            print!("  witness {q}");
        }
        println!();
        assert_eq!(outcome.answer, outcome.lp_value == int_max);
    }
    Ok(())
}
