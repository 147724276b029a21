//! Root decomposition of distances: level-zero set, negative components,
//! their anchors and the contracted graft, followed by the six checks.

use graftkl::{min_join, sebo_decomposition, verify_sebo, Graft, Graph};

fn main() -> graftkl::Result<()> {
    let graph = Graph::from_edges(&[("r", "a"), ("a", "b"), ("b", "c"), ("c", "a"), ("r", "d"), ("d", "e")])?;
    let graft = Graft::with_names(graph, &["r", "b", "d", "e"])?;
    let g = graft.graph();
    let join = min_join(&graft).join.into_edges();

    let d = sebo_decomposition(&graft, &join, g.vertex("r")?)?;
    println!("U0 = {}", g.describe(&d.level0));
    println!("negative = {}", g.describe(&d.negative));
    for k in &d.components {
        let anchor = k.anchor.expect("one join edge leaves each component");
        println!("K = {} anchored by {}", g.describe(&k.vertices), g.describe_edge(anchor.edge));
    }
    println!("contracted vertices: {:?}", d.quotient.names());
    for item in verify_sebo(&d) {
        println!("{:<32} {}", item.name, if item.passed { "ok" } else { &item.detail });
    }
    Ok(())
}
