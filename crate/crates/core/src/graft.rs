//! Grafts: a graph together with a terminal set of even size on every
//! connected component.

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graft {
    graph: Graph,
    terminals: Vec<bool>,
}

/// True iff every connected component contains an even number of terminals.
pub fn is_graft(graph: &Graph, terminals: &VertexSet) -> Result<bool> {
    graph.check_vertices(terminals)?;
    Ok(odd_component(graph, &mask(graph, terminals)).is_none())
}

fn mask(graph: &Graph, terminals: &VertexSet) -> Vec<bool> {
    let mut m = vec![false; graph.vertex_count()];
    for &t in terminals {
        m[t] = true;
    }
    m
}

/// First component with an odd terminal count, with that count.
pub(crate) fn odd_component(graph: &Graph, terminals: &[bool]) -> Option<(VertexSet, usize)> {
    graph.connected_components().into_iter().find_map(|comp| {
        let k = comp.iter().filter(|&&v| terminals[v]).count();
        (k % 2 == 1).then_some((comp, k))
    })
}

impl Graft {
    pub fn new(graph: Graph, terminals: &VertexSet) -> Result<Graft> {
        graph.check_vertices(terminals)?;
        let terminals = mask(&graph, terminals);
        Graft::from_mask(graph, terminals)
    }

    pub fn from_mask(graph: Graph, terminals: Vec<bool>) -> Result<Graft> {
        assert_eq!(terminals.len(), graph.vertex_count());
        if let Some((comp, k)) = odd_component(&graph, &terminals) {
            return Err(Error::NotAGraft { component: graph.describe(&comp), terminals: k });
        }
        Ok(Graft { graph, terminals })
    }

    pub fn with_names(graph: Graph, terminals: &[&str]) -> Result<Graft> {
        let t = graph.vertex_set_by_name(terminals)?;
        Graft::new(graph, &t)
    }

    /// Every vertex is a terminal.
    pub fn full(graph: Graph) -> Result<Graft> {
        let n = graph.vertex_count();
        Graft::from_mask(graph, vec![true; n])
    }

    pub fn empty() -> Graft {
        Graft { graph: Graph::empty(), terminals: Vec::new() }
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn terminal_mask(&self) -> &[bool] {
        &self.terminals
    }

    pub fn is_terminal(&self, v: Vertex) -> bool {
        self.terminals[v]
    }

    pub fn terminals(&self) -> VertexSet {
        self.terminals.iter().enumerate().filter(|(_, &t)| t).map(|(v, _)| v).collect()
    }

    /// The subgraft induced by `x`, with terminals `T ∩ x`. Fails if the
    /// restriction is not a graft.
    pub fn induced(&self, x: &VertexSet) -> Result<Graft> {
        let (sub, map) = self.graph.induced_subgraph(x)?;
        let mut t = vec![false; sub.vertex_count()];
        for (v, m) in map.iter().enumerate() {
            if let Some(i) = m {
                t[*i] = self.terminals[v];
            }
        }
        Graft::from_mask(sub, t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn parity_examples() {
        let g = Graph::from_edges(&[("a", "b")]).unwrap();
        assert!(is_graft(&g, &g.vertex_set_by_name(&["a", "b"]).unwrap()).unwrap());
        assert!(!is_graft(&g, &g.vertex_set_by_name(&["a"]).unwrap()).unwrap());
        let two = Graph::new(&["a", "b"], &[]).unwrap();
        assert!(!is_graft(&two, &two.vertex_set_by_name(&["a", "b"]).unwrap()).unwrap());
        assert!(is_graft(&Graph::empty(), &VertexSet::new()).unwrap());
    }

    #[test]
    fn unknown_terminal() {
        let g = Graph::from_edges(&[("a", "b")]).unwrap();
        assert!(matches!(is_graft(&g, &VertexSet::from([5])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn construction_names_the_odd_component() {
        let g = Graph::from_edges(&[("a", "b"), ("c", "d")]).unwrap();
        let err = Graft::with_names(g, &["a", "c"]).unwrap_err();
        assert_eq!(err, Error::NotAGraft { component: "{a, b}".into(), terminals: 1 });
    }

    proptest! {
        #[test]
        fn parity_is_invariant_under_relabeling(
            n in 1usize..8,
            bits in proptest::collection::vec(any::<bool>(), 28),
            tbits in proptest::collection::vec(any::<bool>(), 8),
            perm_seed in any::<u64>(),
        ) {
            use rand::seq::SliceRandom;
            use rand::SeedableRng;
            let names: Vec<String> = (0..n).map(|i| format!("v{i}")).collect();
            let mut pairs = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    if bits[k] { pairs.push((i, j)); }
                    k += 1;
                }
            }
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(perm_seed));
            let build = |relabel: &dyn Fn(usize) -> usize| {
                let edges: Vec<(String, String)> = pairs
                    .iter()
                    .map(|&(i, j)| (names[relabel(i)].clone(), names[relabel(j)].clone()))
                    .collect();
                let g = Graph::new(&names, &edges).unwrap();
                let t: VertexSet = (0..n).filter(|&i| tbits[i]).map(|i| g.vertex(&names[relabel(i)]).unwrap()).collect();
                is_graft(&g, &t).unwrap()
            };
            prop_assert_eq!(build(&|i| i), build(&|i| perm[i]));
        }
    }
}
