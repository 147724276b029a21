#![allow(dead_code)]

use graftkl::{Graft, Graph};
use proptest::prelude::*;

/// Random graft on `1..=max_n` vertices named `v0, v1, ...`; terminal
/// parity is repaired per component.
pub fn graft(max_n: usize) -> impl Strategy<Value = Graft> {
    (1..=max_n).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        (Just(n), proptest::collection::vec(any::<bool>(), pairs), proptest::collection::vec(any::<bool>(), n))
    })
    .prop_map(|(n, present, mut terminals)| {
        let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
        let pairs = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j)));
        let edges: Vec<(String, String)> =
            pairs.zip(present).filter(|(_, p)| *p).map(|((i, j), _)| (names[i].clone(), names[j].clone())).collect();
        let graph = Graph::new(&names, &edges).unwrap();
        for comp in graph.connected_components() {
            if comp.iter().filter(|&&v| terminals[v]).count() % 2 == 1 {
                terminals[*comp.first().unwrap()] ^= true;
            }
        }
        Graft::from_mask(graph, terminals).unwrap()
    })
}

/// Same graft with every vertex renamed by `rename`.
pub fn relabel(graft: &Graft, rename: impl Fn(&str) -> String) -> Graft {
    let g = graft.graph();
    let names: Vec<String> = g.names().iter().map(|n| rename(n)).collect();
    let edges: Vec<(String, String)> = g.edges().iter().map(|e| (names[e.u].clone(), names[e.v].clone())).collect();
    let graph = Graph::new(&names, &edges).unwrap();
    let terminals: Vec<&str> = graft.terminals().iter().map(|&v| names[v].as_str()).collect();
    Graft::with_names(graph, &terminals).unwrap()
}
