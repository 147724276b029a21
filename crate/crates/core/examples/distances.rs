use graftkl::distance::distance_table;
use graftkl::{path_weight, Graft, Graph, JoinWeighting};

fn main() -> graftkl::Result<()> {
    let graph = Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a"), ("b", "d")])?;
    let graft = Graft::with_names(graph, &["a", "c"])?;
    let g = graft.graph();

    let table = distance_table(&graft);
    for (x, y, d) in table.iter().filter(|(x, y, _)| x < y) {
        println!("dist({}, {}) = {d}", g.name(x), g.name(y));
    }

    // the same numbers come out of a path weight under any minimum join
    let join = graftkl::min_join(&graft).join.into_edges();
    let w = JoinWeighting::new(g, &join)?;
    let ab = g.edge_between("a", "b")?;
    let bc = g.edge_between("b", "c")?;
    println!("w(a-b-c) = {}", path_weight(&w, g.vertex("a")?, &[ab, bc])?);
    Ok(())
}
