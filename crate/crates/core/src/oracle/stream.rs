//! Instance streams: every connected graph up to isomorphism with every
//! admissible terminal set, followed by seeded random grafts.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{Graph, VertexSet};
use crate::structure::refinement_report;

/// Largest vertex count for exhaustive enumeration. The canonical form is a
/// plain minimum over all relabelings, which is cheap up to here.
pub const EXHAUSTIVE_LIMIT: usize = 7;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TerminalPolicy {
    /// Every terminal set with an even count in each component.
    #[default]
    AllEven,
    /// Only `T = V`, when that is admissible.
    Full,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StreamParams {
    /// Exhaustive part covers vertex counts `1..=exhaustive_max_n`; `0` disables it.
    pub exhaustive_max_n: usize,
    /// Graphs with more edges are skipped in the exhaustive part.
    pub max_edges: Option<usize>,
    pub terminals: TerminalPolicy,
    pub random_count: usize,
    pub random_max_n: usize,
    pub seed: u64,
}

impl Default for StreamParams {
    fn default() -> Self {
        StreamParams {
            exhaustive_max_n: 6,
            max_edges: None,
            terminals: TerminalPolicy::AllEven,
            random_count: 0,
            random_max_n: 10,
            seed: 0,
        }
    }
}

impl StreamParams {
    pub fn exhaustive(max_n: usize) -> Self {
        StreamParams { exhaustive_max_n: max_n, ..Default::default() }
    }

    pub fn random(count: usize, max_n: usize, seed: u64) -> Self {
        StreamParams { exhaustive_max_n: 0, random_count: count, random_max_n: max_n, seed, ..Default::default() }
    }
}

fn vertex_names(n: usize) -> Vec<String> {
    let width = n.to_string().len();
    (1..=n).map(|i| format!("{i:0width$}")).collect()
}

fn pair_list(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                go(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

fn mask_connected(n: usize, pairs: &[(usize, usize)], mask: u32) -> bool {
    let mut reached = 1u32;
    loop {
        let mut next = reached;
        for (k, &(i, j)) in pairs.iter().enumerate() {
            if mask >> k & 1 == 1 && (reached >> i & 1 == 1 || reached >> j & 1 == 1) {
                next |= 1 << i | 1 << j;
            }
        }
        if next == reached {
            return reached.count_ones() as usize == n;
        }
        reached = next;
    }
}

/// One representative of every isomorphism class of connected simple
/// graphs on exactly `n` vertices, named `1..n`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::BoundExceeded { what: "exhaustive vertex count", actual: n, limit: EXHAUSTIVE_LIMIT });
    }
    if n == 0 {
        return Ok(Vec::new());
    }
    let pairs = pair_list(n);
    let index = |i: usize, j: usize| pairs.iter().position(|&p| p == (i.min(j), i.max(j))).unwrap();
    let edge_maps: Vec<Vec<usize>> = permutations(n)
        .into_iter()
        .skip(1)
        .map(|p| pairs.iter().map(|&(i, j)| index(p[i], p[j])).collect())
        .collect();
    let names = vertex_names(n);
    let mut out = Vec::new();
    for mask in 0u32..(1u32 << pairs.len()) {
        if !mask_connected(n, &pairs, mask) {
            continue;
        }
        let canonical = edge_maps.iter().all(|map| {
            let image = (0..pairs.len()).filter(|&k| mask >> k & 1 == 1).fold(0u32, |m, k| m | 1 << map[k]);
            image >= mask
        });
        if canonical {
            let edges: Vec<(String, String)> = (0..pairs.len())
                .filter(|&k| mask >> k & 1 == 1)
                .map(|k| (names[pairs[k].0].clone(), names[pairs[k].1].clone()))
                .collect();
            out.push(Graph::new(&names, &edges)?);
        }
    }
    Ok(out)
}

fn terminal_sets(graph: &Graph, policy: TerminalPolicy) -> Vec<Vec<bool>> {
    let n = graph.vertex_count();
    let labels = graph.component_labels();
    let admissible = |t: &[bool]| {
        let mut parity = vec![false; n];
        for v in 0..n {
            parity[labels[v]] ^= t[v];
        }
        parity.iter().all(|&p| !p)
    };
    let candidates: Vec<Vec<bool>> = match policy {
        TerminalPolicy::AllEven => (0u32..1 << n).map(|m| (0..n).map(|v| m >> v & 1 == 1).collect()).collect(),
        TerminalPolicy::Full => vec![vec![true; n]],
    };
    candidates.into_iter().filter(|t| admissible(t)).collect()
}

/// A random graft on up to `max_n` vertices; terminal parity is repaired
/// per component by toggling its smallest vertex.
fn random_graft(rng: &mut ChaCha8Rng, max_n: usize) -> Graft {
    let n = rng.gen_range(1..=max_n.max(1));
    let names = vertex_names(n);
    let density: f64 = rng.gen_range(0.15..0.75);
    let edges: Vec<(String, String)> = pair_list(n)
        .into_iter()
        .filter(|_| rng.gen_bool(density))
        .map(|(i, j)| (names[i].clone(), names[j].clone()))
        .collect();
    let graph = Graph::new(&names, &edges).expect("distinct simple pairs");
    let mut t: Vec<bool> = (0..n).map(|_| rng.gen_bool(0.5)).collect();
    for comp in graph.connected_components() {
        if comp.iter().filter(|&&v| t[v]).count() % 2 == 1 {
            let first = *comp.iter().next().unwrap();
            t[first] ^= true;
        }
    }
    Graft::from_mask(graph, t).expect("parity repaired")
}

/// Deterministic stream of grafts for the given parameters.
pub struct InstanceStream {
    exhaustive: std::vec::IntoIter<Graft>,
    rng: ChaCha8Rng,
    remaining: usize,
    random_max_n: usize,
}

impl Iterator for InstanceStream {
    type Item = Graft;

    fn next(&mut self) -> Option<Graft> {
        if let Some(g) = self.exhaustive.next() {
            return Some(g);
        }
        if self.remaining == 0 {
            return None;
        }
        self.remaining -= 1;
        Some(random_graft(&mut self.rng, self.random_max_n))
    }
}

pub fn instance_stream(params: &StreamParams) -> Result<InstanceStream> {
    let mut exhaustive = Vec::new();
    for n in 1..=params.exhaustive_max_n {
        for graph in connected_graphs(n)? {
            if params.max_edges.is_some_and(|m| graph.edge_count() > m) {
                continue;
            }
            for t in terminal_sets(&graph, params.terminals) {
                exhaustive.push(Graft::from_mask(graph.clone(), t)?);
            }
        }
    }
    Ok(InstanceStream {
        exhaustive: exhaustive.into_iter(),
        rng: ChaCha8Rng::seed_from_u64(params.seed),
        remaining: params.random_count,
        random_max_n: params.random_max_n,
    })
}

/// The first graft of the stream on which some factor-component's own
/// partition is strictly coarser than the global classes inside it.
pub fn find_proper_refinement_witness(stream: impl IntoIterator<Item = Graft>) -> Result<Option<(Graft, VertexSet)>> {
    for graft in stream {
        if let Some(entry) = refinement_report(&graft)?.into_iter().find(|e| e.proper) {
            return Ok(Some((graft, entry.component)));
        }
    }
    Ok(None)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_of_connected_graphs() {
        let counts: Vec<usize> = (1..=6).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn small_streams() {
        let none = StreamParams { exhaustive_max_n: 0, ..Default::default() };
        assert_eq!(instance_stream(&none).unwrap().count(), 0);
        let two: Vec<Graft> = instance_stream(&StreamParams::exhaustive(2)).unwrap().collect();
        assert_eq!(two.len(), 3);
        assert_eq!(two.iter().filter(|g| g.graph().vertex_count() == 2).count(), 2);
    }

    #[test]
    fn exhaustive_total() {
        assert_eq!(instance_stream(&StreamParams::exhaustive(6)).unwrap().count(), 3979);
    }

    #[test]
    fn random_part_is_reproducible() {
        let p = StreamParams::random(50, 10, 7);
        let a: Vec<Graft> = instance_stream(&p).unwrap().collect();
        let b: Vec<Graft> = instance_stream(&p).unwrap().collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|g| g.graph().vertex_count() <= 10));
    }

    #[test]
    fn refuses_large_exhaustive() {
        assert!(matches!(connected_graphs(8), Err(Error::BoundExceeded { .. })));
    }
}
