//! Graphviz output. Terminals are black, other vertices white, allowed
//! edges thick; each class (or each part of a decomposition) is a gray
//! cluster.

use std::fmt::Write;

use crate::graft::Graft;
use crate::graph::{EdgeSet, VertexSet};
use crate::sebo::SeboDecomposition;
use crate::structure::KlPartition;

/// What to group into gray regions.
pub enum Grouping<'a> {
    Partition(&'a KlPartition),
    /// `U₀` and each negative component.
    Decomposition(&'a SeboDecomposition),
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

pub fn emit_drawing(graft: &Graft, allowed: &EdgeSet, grouping: Grouping<'_>) -> String {
    let g = graft.graph();
    let groups: Vec<(String, VertexSet)> = match grouping {
        Grouping::Partition(p) => p.classes.iter().map(|c| (String::new(), c.clone())).collect(),
        Grouping::Decomposition(d) => std::iter::once(("U0".to_string(), d.level0.clone()))
            .chain(d.components.iter().map(|k| (format!("K {}", g.name(*k.vertices.first().unwrap())), k.vertices.clone())))
            .collect(),
    };
    let mut out = String::from("graph graft {\n  node [shape=circle, style=filled, fontcolor=gray50];\n");
    for (i, (label, members)) in groups.iter().enumerate() {
        let _ = writeln!(out, "  subgraph cluster_{i} {{\n    style=filled; color=gray85; label={};", quote(label));
        for &v in members {
            let fill = if graft.is_terminal(v) { "black" } else { "white" };
            let _ = writeln!(out, "    {} [fillcolor={fill}];", quote(g.name(v)));
        }
        out.push_str("  }\n");
    }
    for e in g.edges() {
        let width = if allowed.contains(&e.id) { 3 } else { 1 };
        let _ = writeln!(out, "  {} -- {} [penwidth={width}];", quote(g.name(e.u)), quote(g.name(e.v)));
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;
    use crate::join::allowed_edges;
    use crate::structure::kl_partition;

    fn draw(graft: &Graft) -> String {
        emit_drawing(graft, &allowed_edges(graft), Grouping::Partition(&kl_partition(graft)))
    }

    #[test]
    fn single_edge() {
        let out = draw(&Graft::full(Graph::from_edges(&[("a", "b")]).unwrap()).unwrap());
        assert_eq!(out.matches("fillcolor=black").count(), 2);
        assert_eq!(out.matches("penwidth=3").count(), 1);
        assert_eq!(out.matches("subgraph cluster_").count(), 2);
    }

    #[test]
    fn triangle_without_terminals() {
        let t = Graft::with_names(Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap(), &[]).unwrap();
        let out = draw(&t);
        assert_eq!(out.matches("fillcolor=white").count(), 3);
        assert_eq!(out.matches("penwidth=1").count(), 3);
        assert_eq!(out.matches("subgraph cluster_").count(), 3);
    }

    #[test]
    fn square_has_two_regions() {
        let c = Graft::full(Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap()).unwrap();
        let out = draw(&c);
        assert_eq!(out.matches("subgraph cluster_").count(), 2);
        let first = &out[out.find("cluster_0").unwrap()..out.find("cluster_1").unwrap()];
        assert!(first.contains("\"1\"") && first.contains("\"3\""));
    }
}
