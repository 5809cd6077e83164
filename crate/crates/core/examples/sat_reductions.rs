//! MAX-3SAT, X3SAT and NAE-3SAT objectives for a CNF formula.
//!
//! ```text
//! cargo run --example sat_reductions [file.cnf]
//! ```

use satp::recognition::integer_max_oracle;
use satp::sat::{
    assignment_from_code, brute_force_max3sat, brute_force_nae3sat, brute_force_x3sat,
    objective_max3sat, objective_nae3sat, objective_x3sat, parse_cnf3,
};

const FORMULA: &str = "p cnf 4 3\n1 2 -3 0\n-1 3 4 0\n-2 3 -4 0\n";

fn main() -> satp::Result<()> {
    let text = match std::env::args().nth(1) {
        Some(path) => std::fs::read_to_string(path).expect("readable file"),
        None => FORMULA.to_string(),
    };
    let f = parse_cnf3(&text).expect("valid 3-CNF");
    let n = f.clause_count();

    let max3 = objective_max3sat(&f);
    print!("{}", max3.to_text(true));
    let (best, code) = integer_max_oracle(&max3, u128::MAX)?;
    println!(
        "max3sat: vertex optimum {best}, brute force {}",
        brute_force_max3sat(&f)
    );
    println!("  assignment {:?}", assignment_from_code(&code));

    let (x, _) = integer_max_oracle(&objective_x3sat(&f), u128::MAX)?;
    println!(
        "x3sat: optimum {x} of {}, satisfiable {}",
        3 * n,
        brute_force_x3sat(&f).is_some()
    );

    let (y, _) = integer_max_oracle(&objective_nae3sat(&f), u128::MAX)?;
    println!(
        "nae3sat: optimum {y} of {}, satisfiable {}",
        3 * n,
        brute_force_nae3sat(&f).is_some()
    );
    Ok(())
}
