//! Integral vertices, adjacency and the 1-skeleton of SATP_LP(m, n).
//!
//! ```text
//! cargo run --example skeleton
//! ```

use satp::vertices::{adjacent, construct_clique, skeleton};
use satp::VertexCode;

fn main() -> satp::Result<()> {
    let (m, n) = (2, 2);
    let graph = skeleton(m, n, 1 << 20)?;
    println!(
        "SATP_LP({m},{n}): {} vertices, {} edges",
        graph.codes.len(),
        graph.edge_count()
    );
    match graph.diameter() {
        Some(d) => println!("diameter {d}"),
        None => println!("disconnected"),
    }

    let u = VertexCode::new(vec![0, 0], vec![0, 0])?;
    let v = VertexCode::new(vec![1, 1], vec![0, 0])?;
    let w = VertexCode::new(vec![1, 0], vec![2, 1])?;
    println!("{u} ~ {v}: {}", adjacent(&u, &v)?);
    println!("{u} ~ {w}: {}", adjacent(&u, &w)?);

    let clique = construct_clique(m, n);
    println!(
        "clique of size {}: {}",
        clique.len(),
        graph.is_clique(&clique)
    );
    Ok(())
}
