//! Enumerate every vertex of a small LP and count the integral ones.
//!
//! ```text
//! cargo run --release --example lp_vertex_census
//! ```

use satp::polytope::{build_bqp_lp, build_met, build_satp_lp};
use satp::vertices::enumerate_lp_vertices;
use satp::LinearSystem;

fn census(name: &str, sys: &LinearSystem) -> satp::Result<()> {
    let verts = enumerate_lp_vertices(sys, 1 << 24)?;
    let integral = verts
        .iter()
        .filter(|v| v.iter().all(|x| x.is_integer()))
        .count();
    println!(
        "{name:<14} {:>4} vertices, {integral:>4} integral",
        verts.len()
    );
    Ok(())
}

fn main() -> satp::Result<()> {
    census("SATP_LP(1,2)", &build_satp_lp(1, 2)?)?;
    census("SATP_LP(2,1)", &build_satp_lp(2, 1)?)?;
    census("BQP_LP(3)", &build_bqp_lp(3)?)?;
    census("MET(3)", &build_met(3)?)?;
    Ok(())
}
