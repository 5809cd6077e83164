//! Build each constraint system and report its size.
//!
//! ```text
//! cargo run --example build_polytopes [m] [n]
//! ```

use satp::PolytopeId;

fn main() -> satp::Result<()> {
    let mut args = std::env::args()
        .skip(1)
        .map(|a| a.parse::<usize>().expect("dimension"));
    let m = args.next().unwrap_or(2);
    let n = args.next().unwrap_or(3);

    let ids = [
        PolytopeId::SatpLp { m, n },
        PolytopeId::Satp2Lp { m, n },
        PolytopeId::BqpLp { n: m + n },
        PolytopeId::BqpStandard { n: m + n },
        PolytopeId::Met { n: m + n },
    ];
    for id in ids {
        let sys = id.build()?;
        println!(
            "{:<40} vars {:>4}  eq {:>4}  le {:>4}",
            format!("{id:?}"),
            sys.var_count(),
            sys.eq_rows.len(),
            sys.ineq_rows.len()
        );
    }

    // The text form round-trips and can be fed to `satp lp`.
    let small = PolytopeId::SatpLp { m: 1, n: 1 }.build()?;
    print!("\n{}", small.to_text());
    Ok(())
}
