//! Minimum joins.
//!
//! A minimum join of a graft is found per connected component by matching
//! the component's terminals in pairs so that the total shortest-path length
//! is minimum, then taking the symmetric difference of the chosen shortest
//! paths. [`JoinSolver`] memoizes `ν` per terminal set so that distance and
//! partition computations, which issue many `ν` queries against one graph,
//! share work.

use std::collections::{HashMap, VecDeque};
use std::sync::{OnceLock, RwLock};

use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{symmetric_difference, EdgeId, EdgeSet, Graph, Vertex};
use crate::matching::min_weight_perfect_matching;

/// An edge set whose odd-degree vertices are exactly the terminals of the
/// graft it was checked against.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Join {
    edges: EdgeSet,
}

impl Join {
    pub fn new(graft: &Graft, edges: EdgeSet) -> Result<Join> {
        if let Some(v) = parity_violation(graft.graph(), graft.terminal_mask(), &edges)? {
            return Err(Error::NotAJoin(format!(
                "vertex {} has the wrong degree parity",
                graft.graph().name(v)
            )));
        }
        Ok(Join { edges })
    }

    pub fn edges(&self) -> &EdgeSet {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn into_edges(self) -> EdgeSet {
        self.edges
    }
}

/// A join together with its size and whether it is minimum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JoinCertificate {
    pub join: Join,
    pub size: usize,
    pub minimum: bool,
}

/// Degree of every vertex in the spanning subgraph `f`, modulo 2.
pub(crate) fn odd_vertices(graph: &Graph, f: &EdgeSet) -> Result<Vec<bool>> {
    let mut odd = vec![false; graph.vertex_count()];
    for &id in f {
        let e = graph.edge(id)?;
        odd[e.u] ^= true;
        odd[e.v] ^= true;
    }
    Ok(odd)
}

fn parity_violation(graph: &Graph, terminals: &[bool], f: &EdgeSet) -> Result<Option<Vertex>> {
    let odd = odd_vertices(graph, f)?;
    Ok(odd.iter().zip(terminals).position(|(a, b)| a != b))
}

pub fn is_join(graft: &Graft, f: &EdgeSet) -> Result<bool> {
    Ok(parity_violation(graft.graph(), graft.terminal_mask(), f)?.is_none())
}

pub fn min_join(graft: &Graft) -> JoinCertificate {
    let solver = JoinSolver::new(graft);
    let edges = solver.min_join().clone();
    JoinCertificate { size: edges.len(), join: Join { edges }, minimum: true }
}

pub fn nu(graft: &Graft) -> usize {
    JoinSolver::new(graft).nu()
}

/// True iff `f` is a join of minimum size.
pub fn is_minimum_join(graft: &Graft, f: &EdgeSet) -> Result<bool> {
    Ok(is_join(graft, f)? && f.len() == nu(graft))
}

pub fn allowed_edges(graft: &Graft) -> EdgeSet {
    JoinSolver::new(graft).allowed_edges().clone()
}

/// Breadth-first tree from one source: unit distances and parent edges.
#[derive(Debug)]
struct Bfs {
    dist: Vec<usize>,
    parent: Vec<Option<(Vertex, EdgeId)>>,
}

impl Bfs {
    fn run(graph: &Graph, source: Vertex) -> Bfs {
        let n = graph.vertex_count();
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![None; n];
        let mut queue = VecDeque::from([source]);
        dist[source] = 0;
        while let Some(v) = queue.pop_front() {
            for (w, e) in graph.incident(v) {
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = Some((v, e.id));
                    queue.push_back(w);
                }
            }
        }
        Bfs { dist, parent }
    }

    fn path_to(&self, mut target: Vertex) -> impl Iterator<Item = EdgeId> + '_ {
        std::iter::from_fn(move || {
            let (p, e) = self.parent[target]?;
            target = p;
            Some(e)
        })
    }
}

/// Minimum join and `ν` computations against one graft, with memoization.
///
/// The solver can answer queries for any terminal set on the same graph
/// (`ν(G, T')`), which is what distances and the equivalence relation need.
/// It is `Sync`; the caches are guarded by locks.
pub struct JoinSolver<'g> {
    graft: &'g Graft,
    labels: Vec<usize>,
    trees: Vec<OnceLock<Bfs>>,
    nu_cache: RwLock<HashMap<Vec<bool>, Option<usize>>>,
    min_join: OnceLock<EdgeSet>,
    allowed: OnceLock<EdgeSet>,
}

impl<'g> JoinSolver<'g> {
    pub fn new(graft: &'g Graft) -> Self {
        let g = graft.graph();
        JoinSolver {
            graft,
            labels: g.component_labels(),
            trees: (0..g.vertex_count()).map(|_| OnceLock::new()).collect(),
            nu_cache: RwLock::new(HashMap::new()),
            min_join: OnceLock::new(),
            allowed: OnceLock::new(),
        }
    }

    pub fn graft(&self) -> &'g Graft {
        self.graft
    }

    pub fn graph(&self) -> &'g Graph {
        self.graft.graph()
    }

    pub fn same_component(&self, x: Vertex, y: Vertex) -> bool {
        self.labels[x] == self.labels[y]
    }

    fn tree(&self, v: Vertex) -> &Bfs {
        self.trees[v].get_or_init(|| Bfs::run(self.graph(), v))
    }

    /// Terminals grouped by component, or `None` when some component has an
    /// odd number of them.
    fn pair_groups(&self, terminals: &[bool]) -> Option<Vec<Vec<Vertex>>> {
        let count = self.labels.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut groups = vec![Vec::new(); count];
        for (v, &t) in terminals.iter().enumerate() {
            if t {
                groups[self.labels[v]].push(v);
            }
        }
        groups.iter().all(|g| g.len() % 2 == 0).then_some(groups)
    }

    fn matched_pairs(&self, group: &[Vertex]) -> Vec<(Vertex, Vertex)> {
        let cost: Vec<Vec<i64>> = group
            .iter()
            .map(|&a| {
                let tree = self.tree(a);
                group.iter().map(|&b| tree.dist[b] as i64).collect()
            })
            .collect();
        min_weight_perfect_matching(&cost).into_iter().map(|(i, j)| (group[i], group[j])).collect()
    }

    /// `ν(G, T')`, or `None` when `(G, T')` is not a graft.
    pub fn nu_for(&self, terminals: &[bool]) -> Option<usize> {
        assert_eq!(terminals.len(), self.graph().vertex_count());
        if let Some(&hit) = self.nu_cache.read().unwrap().get(terminals) {
            return hit;
        }
        let value = self.pair_groups(terminals).map(|groups| {
            groups
                .iter()
                .flat_map(|g| self.matched_pairs(g))
                .map(|(a, b)| self.tree(a).dist[b])
                .sum()
        });
        self.nu_cache.write().unwrap().insert(terminals.to_vec(), value);
        value
    }

    /// A minimum join of `(G, T')`, or `None` when `(G, T')` is not a graft.
    pub fn min_join_for(&self, terminals: &[bool]) -> Option<EdgeSet> {
        let groups = self.pair_groups(terminals)?;
        let mut join = EdgeSet::new();
        for group in &groups {
            for (a, b) in self.matched_pairs(group) {
                let path: EdgeSet = self.tree(a).path_to(b).collect();
                join = symmetric_difference(&join, &path);
            }
        }
        Some(join)
    }

    pub fn nu(&self) -> usize {
        self.nu_for(self.graft.terminal_mask()).expect("graft invariant")
    }

    /// `ν(G, T △ {x, y})`; `None` if that is not a graft. For `x == y` this is `ν(G, T)`.
    pub fn nu_toggled(&self, x: Vertex, y: Vertex) -> Option<usize> {
        let mut t = self.graft.terminal_mask().to_vec();
        if x != y {
            t[x] ^= true;
            t[y] ^= true;
        }
        self.nu_for(&t)
    }

    pub fn min_join(&self) -> &EdgeSet {
        self.min_join
            .get_or_init(|| self.min_join_for(self.graft.terminal_mask()).expect("graft invariant"))
    }

    /// Edges contained in at least one minimum join: `e = uv` qualifies iff
    /// `ν(G − e, T △ {u, v}) = ν(G, T) − 1`.
    pub fn allowed_edges(&self) -> &EdgeSet {
        self.allowed.get_or_init(|| {
            let g = self.graph();
            let nu = self.nu();
            g.edges()
                .iter()
                .filter(|e| {
                    let mut t = self.graft.terminal_mask().to_vec();
                    t[e.u] ^= true;
                    t[e.v] ^= true;
                    let reduced = g.without_edges(&EdgeSet::from([e.id]));
                    match Graft::from_mask(reduced, t) {
                        Ok(h) => nu > 0 && JoinSolver::new(&h).nu() == nu - 1,
                        Err(_) => false,
                    }
                })
                .map(|e| e.id)
                .collect()
        })
    }

    pub fn is_allowed(&self, e: EdgeId) -> bool {
        self.allowed_edges().contains(&e)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> Graft {
        Graft::with_names(Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap(), &["a", "c"]).unwrap()
    }

    fn cycle4_full() -> Graft {
        Graft::full(Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap()).unwrap()
    }

    fn names(graft: &Graft, pairs: &[(&str, &str)]) -> EdgeSet {
        graft.graph().edge_set_by_name(pairs).unwrap()
    }

    #[test]
    fn is_join_examples() {
        let g = path_abc();
        assert!(is_join(&g, &names(&g, &[("a", "b"), ("b", "c")])).unwrap());
        assert!(!is_join(&g, &names(&g, &[("a", "b")])).unwrap());
        let empty = Graft::with_names(Graph::from_edges(&[("a", "b")]).unwrap(), &[]).unwrap();
        assert!(is_join(&empty, &EdgeSet::new()).unwrap());
        assert!(matches!(is_join(&g, &EdgeSet::from([EdgeId(9)])), Err(Error::UnknownEdge(_))));
    }

    #[test]
    fn min_join_examples() {
        let k2 = Graft::with_names(Graph::from_edges(&[("a", "b")]).unwrap(), &["a", "b"]).unwrap();
        let c = min_join(&k2);
        assert_eq!(c.size, 1);
        assert_eq!(c.join.edges(), &names(&k2, &[("a", "b")]));

        let p = path_abc();
        let c = min_join(&p);
        assert_eq!(c.size, 2);
        assert_eq!(c.join.edges(), &names(&p, &[("a", "b"), ("b", "c")]));

        let cy = cycle4_full();
        let c = min_join(&cy);
        assert_eq!(c.size, 2);
        let m1 = names(&cy, &[("1", "2"), ("3", "4")]);
        let m2 = names(&cy, &[("2", "3"), ("4", "1")]);
        assert!(c.join.edges() == &m1 || c.join.edges() == &m2);
        assert_eq!(min_join(&cy), c, "deterministic");
    }

    #[test]
    fn nu_examples() {
        let t0 = Graft::with_names(Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap(), &[]).unwrap();
        assert_eq!(nu(&t0), 0);
        assert_eq!(nu(&path_abc()), 2);
        let star = Graph::from_edges(&[("c", "l1"), ("c", "l2"), ("c", "l3")]).unwrap();
        assert_eq!(nu(&Graft::full(star).unwrap()), 3);
        assert_eq!(nu(&Graft::empty()), 0);
    }

    #[test]
    fn is_minimum_join_examples() {
        let p = path_abc();
        assert!(is_minimum_join(&p, &names(&p, &[("a", "b"), ("b", "c")])).unwrap());
        let cy = cycle4_full();
        assert!(!is_minimum_join(&cy, &cy.graph().edge_ids()).unwrap());
        let t0 = Graft::with_names(Graph::from_edges(&[("a", "b")]).unwrap(), &[]).unwrap();
        assert!(is_minimum_join(&t0, &EdgeSet::new()).unwrap());
    }

    #[test]
    fn allowed_edge_examples() {
        let p = path_abc();
        assert_eq!(allowed_edges(&p), p.graph().edge_ids());
        let cy = cycle4_full();
        assert_eq!(allowed_edges(&cy), cy.graph().edge_ids());
        let tri = Graft::with_names(Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "a")]).unwrap(), &[]).unwrap();
        assert!(allowed_edges(&tri).is_empty());
    }

    #[test]
    fn bridge_forced_and_excluded() {
        // a-b-c with T = {a, b}: ab is the unique join; bc is a bridge never used.
        let g = Graft::with_names(Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap(), &["a", "b"]).unwrap();
        assert_eq!(allowed_edges(&g), names(&g, &[("a", "b")]));
    }

    #[test]
    fn toggled_terminal_sets() {
        let p = path_abc();
        let s = JoinSolver::new(&p);
        let (a, b, c) = (0, 1, 2);
        assert_eq!(s.nu_toggled(a, c), Some(0));
        assert_eq!(s.nu_toggled(a, b), Some(1));
        assert_eq!(s.nu_toggled(b, b), Some(2));
        let two = Graft::with_names(Graph::new(&["x", "y"], &[]).unwrap(), &[]).unwrap();
        assert_eq!(JoinSolver::new(&two).nu_toggled(0, 1), None);
    }
}
