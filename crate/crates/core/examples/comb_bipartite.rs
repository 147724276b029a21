use graftkl::{is_comb_bipartite, Graft, Graph};

fn main() -> graftkl::Result<()> {
    let star = Graph::from_edges(&[("c", "l1"), ("c", "l2"), ("c", "l3")])?;
    let graft = Graft::full(star)?;
    for view in is_comb_bipartite(&graft) {
        let g = graft.graph();
        println!("spine {}  tooth {}", g.describe(&view.spine), g.describe(&view.tooth));
    }

    let triangle = Graft::with_names(Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")])?, &[])?;
    println!("triangle views: {}", is_comb_bipartite(&triangle).len());
    Ok(())
}
