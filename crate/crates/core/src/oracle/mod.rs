//! Exhaustive ground truth for every definition, for small instances.
//!
//! Nothing here goes through shortest paths or matchings: joins are found
//! by enumerating every edge subset, distances by enumerating every simple
//! path, and the 1-factor relation by enumerating perfect matchings. The
//! fast modules are checked against these routines.

mod stream;
pub mod suite;

pub use stream::{connected_graphs, find_proper_refinement_witness, instance_stream, InstanceStream, StreamParams, TerminalPolicy};

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{group_by_key, EdgeId, EdgeSet, Graph, Path, Vertex, VertexSet};

/// Enumeration limits. Requests beyond them are refused.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Bounds {
    pub max_edges: usize,
    pub max_vertices: usize,
}

impl Default for Bounds {
    fn default() -> Self {
        Bounds { max_edges: 16, max_vertices: 12 }
    }
}

impl Bounds {
    pub fn check(&self, graph: &Graph) -> Result<()> {
        if graph.edge_count() > self.max_edges {
            return Err(Error::BoundExceeded { what: "edge count", actual: graph.edge_count(), limit: self.max_edges });
        }
        if graph.vertex_count() > self.max_vertices.min(64) {
            return Err(Error::BoundExceeded {
                what: "vertex count",
                actual: graph.vertex_count(),
                limit: self.max_vertices.min(64),
            });
        }
        Ok(())
    }
}

fn vertex_mask(set: impl IntoIterator<Item = Vertex>) -> u64 {
    set.into_iter().fold(0, |m, v| m | 1 << v)
}

/// For every vertex subset `S`, the minimum joins of `(G, S)`, found by
/// visiting all `2^m` edge subsets once.
pub struct ParityTable {
    ids: Vec<EdgeId>,
    best: HashMap<u64, (usize, Vec<u32>)>,
}

impl ParityTable {
    pub fn new(graph: &Graph, bounds: Bounds) -> Result<ParityTable> {
        bounds.check(graph)?;
        let edges = graph.edges();
        let m = edges.len();
        let ends: Vec<u64> = edges.iter().map(|e| 1u64 << e.u | 1u64 << e.v).collect();
        let mut odd = vec![0u64; 1 << m];
        let mut best: HashMap<u64, (usize, Vec<u32>)> = HashMap::new();
        for subset in 0u32..(1u32 << m) {
            if subset != 0 {
                let low = subset.trailing_zeros() as usize;
                odd[subset as usize] = odd[(subset & (subset - 1)) as usize] ^ ends[low];
            }
            let size = subset.count_ones() as usize;
            let entry = best.entry(odd[subset as usize]).or_insert((usize::MAX, Vec::new()));
            if size < entry.0 {
                *entry = (size, vec![subset]);
            } else if size == entry.0 {
                entry.1.push(subset);
            }
        }
        Ok(ParityTable { ids: edges.iter().map(|e| e.id).collect(), best })
    }

    /// Minimum join size for the terminal set given as a bit mask; `None` if
    /// no edge subset has exactly that odd set.
    pub fn nu(&self, terminals: u64) -> Option<usize> {
        self.best.get(&terminals).map(|(s, _)| *s)
    }

    pub fn minimum_joins(&self, terminals: u64) -> Vec<EdgeSet> {
        self.best
            .get(&terminals)
            .map(|(_, list)| list.iter().map(|&s| self.edge_set(s)).collect())
            .unwrap_or_default()
    }

    fn edge_set(&self, subset: u32) -> EdgeSet {
        (0..self.ids.len()).filter(|&k| subset >> k & 1 == 1).map(|k| self.ids[k]).collect()
    }
}

/// Every join of the graft, by testing all edge subsets.
pub fn enumerate_joins(graft: &Graft) -> Result<Vec<EdgeSet>> {
    enumerate_joins_bounded(graft, Bounds::default())
}

pub fn enumerate_joins_bounded(graft: &Graft, bounds: Bounds) -> Result<Vec<EdgeSet>> {
    let g = graft.graph();
    bounds.check(g)?;
    let target = vertex_mask(graft.terminals());
    let ends: Vec<u64> = g.edges().iter().map(|e| 1u64 << e.u | 1u64 << e.v).collect();
    let m = ends.len();
    Ok((0u32..(1u32 << m))
        .filter(|&s| (0..m).filter(|&k| s >> k & 1 == 1).fold(0, |acc, k| acc ^ ends[k]) == target)
        .map(|s| (0..m).filter(|&k| s >> k & 1 == 1).map(|k| g.edges()[k].id).collect())
        .collect())
}

/// Brute-force view of one graft: minimum joins of every terminal set.
pub struct Oracle<'g> {
    graft: &'g Graft,
    table: ParityTable,
    terminals: u64,
}

impl<'g> Oracle<'g> {
    pub fn new(graft: &'g Graft) -> Result<Self> {
        Oracle::with_bounds(graft, Bounds::default())
    }

    pub fn with_bounds(graft: &'g Graft, bounds: Bounds) -> Result<Self> {
        let table = ParityTable::new(graft.graph(), bounds)?;
        Ok(Oracle { graft, table, terminals: vertex_mask(graft.terminals()) })
    }

    pub fn graft(&self) -> &'g Graft {
        self.graft
    }

    pub fn nu(&self) -> usize {
        self.table.nu(self.terminals).expect("graft has a join")
    }

    /// `ν(G, T △ {x, y})`, or `None` if no join exists.
    pub fn nu_toggled(&self, x: Vertex, y: Vertex) -> Option<usize> {
        let t = if x == y { self.terminals } else { self.terminals ^ (1 << x) ^ (1 << y) };
        self.table.nu(t)
    }

    pub fn minimum_joins(&self) -> Vec<EdgeSet> {
        self.table.minimum_joins(self.terminals)
    }

    /// Union of all minimum joins.
    pub fn allowed(&self) -> EdgeSet {
        self.minimum_joins().into_iter().flatten().collect()
    }

    /// Vertex sets connected by allowed edges.
    pub fn factor_components(&self) -> Vec<VertexSet> {
        self.graft.graph().spanning_subgraph(&self.allowed()).connected_components()
    }

    /// Minimum path weight from `x` to `y` under the join `f`, over all
    /// simple paths.
    pub fn dist_for_join(&self, f: &EdgeSet, x: Vertex, y: Vertex) -> Option<i64> {
        min_path_weights(self.graft.graph(), f, x)[y]
    }

    /// Path-based distance under the first enumerated minimum join.
    pub fn dist(&self, x: Vertex, y: Vertex) -> Result<i64> {
        let g = self.graft.graph();
        let f = self.minimum_joins().into_iter().next().expect("graft has a join");
        self.dist_for_join(&f, x, y).ok_or_else(|| Error::CrossComponent(g.name(x).into(), g.name(y).into()))
    }

    /// The relation straight from its definition.
    pub fn related(&self, u: Vertex, v: Vertex, component: &[usize]) -> bool {
        u == v || (component[u] == component[v] && self.nu_toggled(u, v) == Some(self.nu()))
    }

    /// Classes of the relation: vertices with identical rows of the relation
    /// matrix. When the relation is transitive these are its equivalence
    /// classes.
    pub fn kl_classes(&self) -> Vec<VertexSet> {
        let n = self.graft.graph().vertex_count();
        let mut component = vec![0; n];
        for (i, c) in self.factor_components().iter().enumerate() {
            for &v in c {
                component[v] = i;
            }
        }
        group_by_key((0..n).map(|u| (u, (0..n).filter(|&v| self.related(u, v, &component)).collect::<Vec<_>>())))
    }
}

pub fn brute_nu(graft: &Graft) -> Result<usize> {
    Ok(Oracle::new(graft)?.nu())
}

pub fn brute_allowed(graft: &Graft) -> Result<EdgeSet> {
    Ok(Oracle::new(graft)?.allowed())
}

pub fn brute_dist(graft: &Graft, x: Vertex, y: Vertex) -> Result<i64> {
    Oracle::new(graft)?.dist(x, y)
}

pub fn brute_kl(graft: &Graft) -> Result<Vec<VertexSet>> {
    Ok(Oracle::new(graft)?.kl_classes())
}

/// Visits every simple path starting at `source`.
pub fn for_each_simple_path(graph: &Graph, source: Vertex, mut visit: impl FnMut(&[Vertex], &[EdgeId])) {
    fn go(
        g: &Graph,
        vertices: &mut Vec<Vertex>,
        edges: &mut Vec<EdgeId>,
        on_path: &mut Vec<bool>,
        visit: &mut dyn FnMut(&[Vertex], &[EdgeId]),
    ) {
        visit(vertices, edges);
        let at = *vertices.last().unwrap();
        for (w, e) in g.incident(at) {
            if on_path[w] {
                continue;
            }
            on_path[w] = true;
            vertices.push(w);
            edges.push(e.id);
            go(g, vertices, edges, on_path, visit);
            edges.pop();
            vertices.pop();
            on_path[w] = false;
        }
    }
    let mut on_path = vec![false; graph.vertex_count()];
    on_path[source] = true;
    go(graph, &mut vec![source], &mut Vec::new(), &mut on_path, &mut visit);
}

/// All simple paths from `x` to `y`.
pub fn simple_paths(graph: &Graph, x: Vertex, y: Vertex) -> Vec<Path> {
    let mut out = Vec::new();
    for_each_simple_path(graph, x, |vs, es| {
        if *vs.last().unwrap() == y {
            out.push(Path { vertices: vs.to_vec(), edges: es.to_vec() });
        }
    });
    out
}

/// Minimum `w_f` weight of a simple path from `source` to every vertex.
pub fn min_path_weights(graph: &Graph, f: &EdgeSet, source: Vertex) -> Vec<Option<i64>> {
    let mut best: Vec<Option<i64>> = vec![None; graph.vertex_count()];
    for_each_simple_path(graph, source, |vs, es| {
        let w: i64 = es.iter().map(|e| if f.contains(e) { -1 } else { 1 }).sum();
        let slot = &mut best[*vs.last().unwrap()];
        if slot.is_none_or(|b| w < b) {
            *slot = Some(w);
        }
    });
    best
}

/// Edge sets of all circuits (parallel edges form circuits of length two).
pub fn circuits(graph: &Graph) -> Vec<EdgeSet> {
    let mut found = std::collections::BTreeSet::new();
    for s in graph.vertices() {
        fn go(
            g: &Graph,
            s: Vertex,
            at: Vertex,
            edges: &mut Vec<EdgeId>,
            on_path: &mut Vec<bool>,
            found: &mut std::collections::BTreeSet<EdgeSet>,
        ) {
            for (w, e) in g.incident(at) {
                if w == s && !edges.is_empty() && edges[0] != e.id {
                    let mut c: EdgeSet = edges.iter().copied().collect();
                    c.insert(e.id);
                    found.insert(c);
                }
                if w <= s || on_path[w] {
                    continue;
                }
                on_path[w] = true;
                edges.push(e.id);
                go(g, s, w, edges, on_path, found);
                edges.pop();
                on_path[w] = false;
            }
        }
        let mut on_path = vec![false; graph.vertex_count()];
        on_path[s] = true;
        go(graph, s, s, &mut Vec::new(), &mut on_path, &mut found);
    }
    found.into_iter().collect()
}

/// Perfect matchings of `graph` avoiding the vertices in `removed`.
pub fn perfect_matchings(graph: &Graph, removed: &VertexSet) -> Vec<EdgeSet> {
    fn go(g: &Graph, covered: &mut Vec<bool>, chosen: &mut Vec<EdgeId>, out: &mut Vec<EdgeSet>, first_only: bool) {
        let Some(v) = covered.iter().position(|&c| !c) else {
            out.push(chosen.iter().copied().collect());
            return;
        };
        covered[v] = true;
        for (w, e) in g.incident(v) {
            if covered[w] {
                continue;
            }
            covered[w] = true;
            chosen.push(e.id);
            go(g, covered, chosen, out, first_only);
            chosen.pop();
            covered[w] = false;
            if first_only && !out.is_empty() {
                break;
            }
        }
        covered[v] = false;
    }
    let mut covered: Vec<bool> = graph.vertices().map(|v| removed.contains(&v)).collect();
    let mut out = Vec::new();
    go(graph, &mut covered, &mut Vec::new(), &mut out, false);
    out
}

fn factorizable_without(graph: &Graph, removed: &VertexSet) -> bool {
    fn go(g: &Graph, covered: &mut Vec<bool>) -> bool {
        let Some(v) = covered.iter().position(|&c| !c) else { return true };
        covered[v] = true;
        for (w, _) in g.incident(v) {
            if !covered[w] {
                covered[w] = true;
                if go(g, covered) {
                    covered[w] = false;
                    covered[v] = false;
                    return true;
                }
                covered[w] = false;
            }
        }
        covered[v] = false;
        false
    }
    let mut covered: Vec<bool> = graph.vertices().map(|v| removed.contains(&v)).collect();
    go(graph, &mut covered)
}

pub fn is_factorizable(graph: &Graph) -> bool {
    factorizable_without(graph, &VertexSet::new())
}

/// The Kotzig-Lovász partition of a factorizable graph in the 1-factor
/// sense: `u ~ v` iff they are joined by edges lying in perfect matchings
/// and `G − u − v` has no perfect matching.
pub fn matching_kl(graph: &Graph) -> Result<Vec<VertexSet>> {
    if !is_factorizable(graph) {
        return Err(Error::NotFactorizable);
    }
    let allowed: EdgeSet = graph
        .edges()
        .iter()
        .filter(|e| factorizable_without(graph, &VertexSet::from([e.u, e.v])))
        .map(|e| e.id)
        .collect();
    let labels = graph.spanning_subgraph(&allowed).component_labels();
    let n = graph.vertex_count();
    let related = |u: Vertex, v: Vertex| {
        u == v || (labels[u] == labels[v] && !factorizable_without(graph, &VertexSet::from([u, v])))
    };
    Ok(group_by_key((0..n).map(|u| (u, (0..n).filter(|&v| related(u, v)).collect::<Vec<_>>()))))
}
