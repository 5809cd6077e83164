//! A fractional vertex of SATP_LP(n, n) and what cuts it off.
//!
//! ```text
//! cargo run --example fractional_vertex [n]
//! ```

use satp::polytope::{build_satp2_lp, build_satp_lp};
use satp::vertices::{fractional_vertex, verify_vertex};

fn main() -> satp::Result<()> {
    let n = std::env::args().nth(1).map_or(6, |a| a.parse().expect("n"));
    let p = fractional_vertex(n)?;
    print!("{}", p.to_text(false));

    let sys = build_satp_lp(n, n)?;
    println!("vertex of SATP_LP({n},{n}): {}", verify_vertex(&p, &sys)?);

    let s2 = build_satp2_lp(n, n)?;
    let violated = s2.violated_inequalities(p.as_slice());
    println!(
        "violates {} of {} rows of SATP²_LP({n},{n})",
        violated.len(),
        s2.ineq_rows.len()
    );
    Ok(())
}
