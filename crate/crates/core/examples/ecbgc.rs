//! Edge-constrained bipartite coloring through the recognition machinery.
//!
//! ```text
//! cargo run --release --example ecbgc
//! ```

use satp::ecbgc::{
    brute_force_coloring, check_condition, objective_from_instance, parse_ecbgc,
    reduce_x3sat_to_ecbgc, solve_ecbgc,
};
use satp::sat::parse_cnf3;

const INSTANCE: &str = "
ecbgc 2 2
edge 1 1 : ++---+
edge 1 2 : +-+--+
edge 2 1 : --+-+-
edge 2 2 : +--+-+
";

fn main() -> satp::Result<()> {
    let inst = parse_ecbgc(INSTANCE).expect("valid instance");
    let pairs = check_condition(&inst).expect("instance in the solvable class");
    println!("pairs per V vertex {pairs:?}");
    print!("{}", objective_from_instance(&inst, &pairs)?.to_text(true));
    match solve_ecbgc(&inst)? {
        Some(col) => print!("coloring\n{}", col.to_text()),
        None => println!("no coloring"),
    }

    // X3SAT instances land in the general problem; outside the solvable class
    // only brute force applies.
    let f = parse_cnf3("p cnf 4 2\n1 2 -3 0\n-1 3 4 0\n").expect("valid formula");
    let reduced = reduce_x3sat_to_ecbgc(&f)?;
    print!("\n{}", reduced.to_text());
    match check_condition(&reduced) {
        Ok(_) => println!("in the solvable class"),
        Err(v) => println!("condition fails at v {v}"),
    }
    let found = brute_force_coloring(&reduced, 1 << 20)?;
    println!("colorable {}", found.is_some());
    Ok(())
}
