//! Minimum join of a hexagon whose terminals sit at opposite corners, and
//! the edges that appear in some minimum join.

use graftkl::{allowed_edges, min_join, Graft, Graph};

fn main() -> graftkl::Result<()> {
    let hexagon = Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "5"), ("5", "6"), ("6", "1")])?;
    let graft = Graft::with_names(hexagon, &["1", "4"])?;
    let g = graft.graph();

    let cert = min_join(&graft);
    println!("nu = {}", cert.size);
    for &e in cert.join.edges() {
        println!("  join edge {}", g.describe_edge(e));
    }
    // both halves of the hexagon are shortest, so every edge is allowed
    let allowed = allowed_edges(&graft);
    println!("allowed: {} of {} edges", allowed.len(), g.edge_count());
    Ok(())
}
