//! Solve a small LP exactly and inspect the optimal vertex.
//!
//! ```text
//! cargo run --example exact_lp
//! ```

use satp::{lp_maximize, LinearSystem, LpResult, Rational};

const SYSTEM: &str = "
vars 3
le 2 1 0 | 4
le 1 3 1 | 5
le 0 1 4 | 3
";

fn main() -> satp::Result<()> {
    let sys = LinearSystem::from_text(SYSTEM).expect("valid system");
    let objective: Vec<Rational> = [3, 2, 1]
        .iter()
        .map(|&c| Rational::from_integer(c))
        .collect();

    match lp_maximize(&sys, &objective)? {
        LpResult::Optimal(opt) => {
            println!("value {}", opt.value);
            let point: Vec<String> = opt.point.iter().map(|v| v.to_string()).collect();
            println!("point {}", point.join(" "));
            println!("tight constraints {:?}", opt.tight_set);
            println!("feasible {}", sys.is_feasible(&opt.point));
        }
        other => println!("{:?}", other.status()),
    }

    // Exact arithmetic keeps thirds as thirds.
    let third = Rational::new(1, 3);
    println!("1/3 + 1/3 + 1/3 = {}", &(&third + &third) + &third);
    Ok(())
}
