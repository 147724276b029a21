//! Kotzig-Lovász classes of a small graft, grouped by factor-component.

use graftkl::{kl_classes_of_component, kl_partition, same_class, Graft, Graph};

fn main() -> graftkl::Result<()> {
    // a square with a pendant path hanging off vertex 4
    let graph = Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1"), ("4", "5"), ("5", "6")])?;
    let graft = Graft::with_names(graph, &["1", "2", "3", "4", "5", "6"])?;
    let g = graft.graph();

    let partition = kl_partition(&graft);
    for h in &partition.components {
        println!("factor-component {}", g.describe(&h.vertices));
        for class in kl_classes_of_component(&partition, h)? {
            println!("  class {}", g.describe(&class));
        }
    }
    println!("1 ~ 3: {}", same_class(&graft, g.vertex("1")?, g.vertex("3")?)?);
    Ok(())
}
