//! Undirected graphs with stable edge identifiers.
//!
//! Vertices are dense indices `0..n` into a name table that is kept in
//! lexicographic order, so every iteration over vertices is deterministic.
//! Edges carry an [`EdgeId`] that survives deletion, induced subgraphs and
//! contraction: an edge of a derived graph is the same edge of the original
//! graph whenever it has the same identifier.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Dense vertex index into a [`Graph`].
pub type Vertex = usize;

/// Sorted set of vertex indices.
pub type VertexSet = BTreeSet<Vertex>;

/// Sorted set of edge identifiers.
pub type EdgeSet = BTreeSet<EdgeId>;

/// Stable identifier of an edge.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EdgeId(pub u32);

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Edge {
    pub id: EdgeId,
    pub u: Vertex,
    pub v: Vertex,
}

impl Edge {
    /// The endpoint opposite to `x`. `x` must be an endpoint.
    pub fn other(&self, x: Vertex) -> Vertex {
        if self.u == x {
            self.v
        } else {
            debug_assert_eq!(self.v, x);
            self.u
        }
    }

    pub fn has_end(&self, x: Vertex) -> bool {
        self.u == x || self.v == x
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    names: Vec<String>,
    index: HashMap<String, Vertex>,
    /// Sorted by id.
    edges: Vec<Edge>,
    /// Per vertex: (neighbour, position in `edges`), sorted by neighbour then id.
    adj: Vec<Vec<(Vertex, usize)>>,
    multigraph: bool,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.names == other.names && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a simple graph. Edge identifiers are assigned `0..m` in the
    /// order the edges are given.
    pub fn new<S: AsRef<str>>(vertices: &[S], edges: &[(S, S)]) -> Result<Graph> {
        let mut seen = BTreeSet::new();
        for v in vertices {
            if !seen.insert(v.as_ref().to_string()) {
                return Err(Error::DuplicateVertex(v.as_ref().to_string()));
            }
        }
        let names: Vec<String> = seen.into_iter().collect();
        let index: HashMap<String, Vertex> =
            names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let lookup = |s: &str| index.get(s).copied().ok_or_else(|| Error::UnknownVertex(s.to_string()));
        let mut pairs = BTreeSet::new();
        let mut list = Vec::with_capacity(edges.len());
        for (k, (a, b)) in edges.iter().enumerate() {
            let (u, v) = (lookup(a.as_ref())?, lookup(b.as_ref())?);
            if u == v {
                return Err(Error::SelfLoop(a.as_ref().to_string()));
            }
            if !pairs.insert((u.min(v), u.max(v))) {
                return Err(Error::DuplicateEdge(a.as_ref().to_string(), b.as_ref().to_string()));
            }
            list.push(Edge { id: EdgeId(k as u32), u, v });
        }
        Ok(Graph::assemble(names, list, false))
    }

    /// Builds a simple graph whose vertex set is exactly the set of endpoints.
    pub fn from_edges(edges: &[(&str, &str)]) -> Result<Graph> {
        let mut vs: Vec<&str> = edges.iter().flat_map(|&(a, b)| [a, b]).collect();
        vs.sort_unstable();
        vs.dedup();
        Graph::new(&vs, edges)
    }

    /// The empty graph.
    pub fn empty() -> Graph {
        Graph::assemble(Vec::new(), Vec::new(), false)
    }

    fn assemble(names: Vec<String>, mut edges: Vec<Edge>, multigraph: bool) -> Graph {
        edges.sort_by_key(|e| e.id);
        let index = names.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect();
        let mut adj = vec![Vec::new(); names.len()];
        for (pos, e) in edges.iter().enumerate() {
            adj[e.u].push((e.v, pos));
            adj[e.v].push((e.u, pos));
        }
        for list in &mut adj {
            list.sort_by_key(|&(w, pos)| (w, edges[pos].id));
        }
        Graph { names, index, edges, adj, multigraph }
    }

    pub fn vertex_count(&self) -> usize {
        self.names.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn vertices(&self) -> std::ops::Range<Vertex> {
        0..self.names.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge_ids(&self) -> EdgeSet {
        self.edges.iter().map(|e| e.id).collect()
    }

    /// True for graphs produced by contraction, which may carry parallel edges.
    pub fn is_multigraph(&self) -> bool {
        self.multigraph
    }

    pub fn name(&self, v: Vertex) -> &str {
        &self.names[v]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn vertex(&self, name: &str) -> Result<Vertex> {
        self.index.get(name).copied().ok_or_else(|| Error::UnknownVertex(name.to_string()))
    }

    pub fn edge(&self, id: EdgeId) -> Result<&Edge> {
        self.edges
            .binary_search_by_key(&id, |e| e.id)
            .map(|pos| &self.edges[pos])
            .map_err(|_| Error::UnknownEdge(id))
    }

    pub fn contains_edge(&self, id: EdgeId) -> bool {
        self.edge(id).is_ok()
    }

    /// Looks up the edge joining two named vertices (the lowest id if parallel).
    pub fn edge_between(&self, a: &str, b: &str) -> Result<EdgeId> {
        let (u, v) = (self.vertex(a)?, self.vertex(b)?);
        self.adj[u]
            .iter()
            .find(|&&(w, _)| w == v)
            .map(|&(_, pos)| self.edges[pos].id)
            .ok_or_else(|| Error::NoSuchEdge(a.to_string(), b.to_string()))
    }

    /// Neighbours of `v` with the connecting edge, ordered by neighbour index then edge id.
    pub fn incident(&self, v: Vertex) -> impl Iterator<Item = (Vertex, &Edge)> + '_ {
        self.adj[v].iter().map(move |&(w, pos)| (w, &self.edges[pos]))
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    /// Errors unless every identifier in `set` is an edge of this graph.
    pub fn check_edges(&self, set: &EdgeSet) -> Result<()> {
        match set.iter().find(|&&id| !self.contains_edge(id)) {
            Some(&id) => Err(Error::UnknownEdge(id)),
            None => Ok(()),
        }
    }

    pub fn check_vertices<'a>(&self, set: impl IntoIterator<Item = &'a Vertex>) -> Result<()> {
        for &v in set {
            if v >= self.vertex_count() {
                return Err(Error::UnknownVertex(format!("#{v}")));
            }
        }
        Ok(())
    }

    pub fn vertex_set_by_name(&self, names: &[&str]) -> Result<VertexSet> {
        names.iter().map(|s| self.vertex(s)).collect()
    }

    pub fn edge_set_by_name(&self, pairs: &[(&str, &str)]) -> Result<EdgeSet> {
        pairs.iter().map(|&(a, b)| self.edge_between(a, b)).collect()
    }

    /// The edges with exactly one end in `x` (the cut of `x`).
    pub fn cut(&self, x: &VertexSet) -> Result<EdgeSet> {
        self.check_vertices(x)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| x.contains(&e.u) != x.contains(&e.v))
            .map(|e| e.id)
            .collect())
    }

    /// The edges with both ends in `x`.
    pub fn induced_edges(&self, x: &VertexSet) -> Result<EdgeSet> {
        self.check_vertices(x)?;
        Ok(self
            .edges
            .iter()
            .filter(|e| x.contains(&e.u) && x.contains(&e.v))
            .map(|e| e.id)
            .collect())
    }

    /// Connected components ordered by their smallest vertex.
    pub fn connected_components(&self) -> Vec<VertexSet> {
        let labels = self.component_labels();
        let count = labels.iter().map(|&c| c + 1).max().unwrap_or(0);
        let mut comps = vec![VertexSet::new(); count];
        for (v, &c) in labels.iter().enumerate() {
            comps[c].insert(v);
        }
        comps
    }

    /// Component label per vertex; labels are numbered in order of smallest vertex.
    pub fn component_labels(&self) -> Vec<usize> {
        const UNSEEN: usize = usize::MAX;
        let n = self.vertex_count();
        let mut label = vec![UNSEEN; n];
        let mut next = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if label[s] != UNSEEN {
                continue;
            }
            label[s] = next;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &(w, _) in &self.adj[v] {
                    if label[w] == UNSEEN {
                        label[w] = next;
                        stack.push(w);
                    }
                }
            }
            next += 1;
        }
        label
    }

    /// Subgraph induced by `x`. Returns the subgraph and, per vertex of
    /// `self`, its index in the subgraph.
    pub fn induced_subgraph(&self, x: &VertexSet) -> Result<(Graph, Vec<Option<Vertex>>)> {
        self.check_vertices(x)?;
        let mut map = vec![None; self.vertex_count()];
        let mut names = Vec::with_capacity(x.len());
        for (i, &v) in x.iter().enumerate() {
            map[v] = Some(i);
            names.push(self.names[v].clone());
        }
        let edges = self
            .edges
            .iter()
            .filter_map(|e| Some(Edge { id: e.id, u: map[e.u]?, v: map[e.v]? }))
            .collect();
        Ok((Graph::assemble(names, edges, self.multigraph), map))
    }

    /// The spanning subgraph without the edges in `removed`.
    pub fn without_edges(&self, removed: &EdgeSet) -> Graph {
        let edges = self.edges.iter().filter(|e| !removed.contains(&e.id)).copied().collect();
        Graph::assemble(self.names.clone(), edges, self.multigraph)
    }

    /// The spanning subgraph keeping only the edges in `kept`.
    pub fn spanning_subgraph(&self, kept: &EdgeSet) -> Graph {
        let edges = self.edges.iter().filter(|e| kept.contains(&e.id)).copied().collect();
        Graph::assemble(self.names.clone(), edges, self.multigraph)
    }

    /// Contracts each part into a single vertex named `[m]`, where `m` is the
    /// smallest member name. Edges inside a part become loops and are dropped
    /// (listed in [`Contraction::dropped`]); parallel edges that arise are
    /// kept, as they are distinct edges of `self`.
    pub fn contract(&self, parts: &[VertexSet]) -> Result<Contraction> {
        let n = self.vertex_count();
        let mut owner = vec![None; n];
        for (k, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(Error::InvalidPart("empty part".into()));
            }
            self.check_vertices(part)?;
            for &v in part {
                if owner[v].replace(k).is_some() {
                    return Err(Error::InvalidPart(format!(
                        "vertex {} lies in more than one part",
                        self.names[v]
                    )));
                }
            }
            let (sub, _) = self.induced_subgraph(part)?;
            if sub.connected_components().len() != 1 {
                return Err(Error::InvalidPart(format!(
                    "part containing {} is not connected",
                    self.names[*part.iter().next().unwrap()]
                )));
            }
        }

        // Name every new vertex, then sort names to fix the index order.
        let mut labels: Vec<String> = Vec::new();
        let mut key_of = vec![0usize; n];
        let mut part_label = vec![usize::MAX; parts.len()];
        for v in 0..n {
            match owner[v] {
                None => {
                    key_of[v] = labels.len();
                    labels.push(self.names[v].clone());
                }
                Some(k) => {
                    if part_label[k] == usize::MAX {
                        part_label[k] = labels.len();
                        let smallest = parts[k].iter().next().unwrap();
                        labels.push(format!("[{}]", self.names[*smallest]));
                    }
                    key_of[v] = part_label[k];
                }
            }
        }
        let mut names = labels.clone();
        names.sort();
        for w in names.windows(2) {
            if w[0] == w[1] {
                return Err(Error::DuplicateVertex(w[0].clone()));
            }
        }
        let rank: HashMap<&str, Vertex> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let vertex_map: Vec<Vertex> = (0..n).map(|v| rank[labels[key_of[v]].as_str()]).collect();

        let mut edges = Vec::new();
        let mut dropped = EdgeSet::new();
        let mut pairs = BTreeSet::new();
        let mut multigraph = self.multigraph;
        for e in &self.edges {
            let (u, v) = (vertex_map[e.u], vertex_map[e.v]);
            if u == v {
                dropped.insert(e.id);
                continue;
            }
            if !pairs.insert((u.min(v), u.max(v))) {
                multigraph = true;
            }
            edges.push(Edge { id: e.id, u, v });
        }
        let contracted = parts.iter().map(|p| vertex_map[*p.iter().next().unwrap()]).collect();
        Ok(Contraction {
            graph: Graph::assemble(names, edges, multigraph),
            vertex_map,
            contracted,
            dropped,
        })
    }

    /// Validates a walk given by a start vertex and edge sequence, and
    /// returns it as a path if it visits no vertex twice.
    pub fn path(&self, start: Vertex, edges: &[EdgeId]) -> Result<Path> {
        self.check_vertices([&start])?;
        let mut vertices = vec![start];
        let mut seen = VertexSet::from([start]);
        let mut at = start;
        for &id in edges {
            let e = self.edge(id)?;
            if !e.has_end(at) {
                return Err(Error::NotAPath(format!("edge {id} does not leave {}", self.names[at])));
            }
            at = e.other(at);
            if !seen.insert(at) {
                return Err(Error::NotAPath(format!("vertex {} repeated", self.names[at])));
            }
            vertices.push(at);
        }
        Ok(Path { vertices, edges: edges.to_vec() })
    }

    /// Proper 2-colouring if bipartite, colour `false` on the smallest vertex
    /// of each component.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.vertex_count();
        let mut colour: Vec<Option<bool>> = vec![None; n];
        let mut stack = Vec::new();
        for s in 0..n {
            if colour[s].is_some() {
                continue;
            }
            colour[s] = Some(false);
            stack.push(s);
            while let Some(v) = stack.pop() {
                let c = colour[v].unwrap();
                for &(w, _) in &self.adj[v] {
                    match colour[w] {
                        None => {
                            colour[w] = Some(!c);
                            stack.push(w);
                        }
                        Some(d) if d == c => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(colour.into_iter().map(|c| c.unwrap()).collect())
    }

    /// Renders a vertex set with names, for diagnostics.
    pub fn describe(&self, set: &VertexSet) -> String {
        let names: Vec<&str> = set.iter().map(|&v| self.name(v)).collect();
        format!("{{{}}}", names.join(", "))
    }

    /// Renders an edge as `u-v`.
    pub fn describe_edge(&self, id: EdgeId) -> String {
        match self.edge(id) {
            Ok(e) => format!("{}-{}", self.names[e.u], self.names[e.v]),
            Err(_) => id.to_string(),
        }
    }
}

/// Result of [`Graph::contract`].
#[derive(Clone, Debug)]
pub struct Contraction {
    pub graph: Graph,
    /// Index in `graph` of every vertex of the original graph.
    pub vertex_map: Vec<Vertex>,
    /// Index in `graph` of the vertex each part was contracted into.
    pub contracted: Vec<Vertex>,
    /// Edges that became loops.
    pub dropped: EdgeSet,
}

/// A simple path, stored as its vertex sequence and edge sequence.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Path {
    pub vertices: Vec<Vertex>,
    pub edges: Vec<EdgeId>,
}

impl Path {
    pub fn start(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn end(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

pub fn symmetric_difference<T: Ord + Clone>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> BTreeSet<T> {
    a.symmetric_difference(b).cloned().collect()
}

/// Groups vertices by a key, returning the groups ordered by smallest member.
pub(crate) fn group_by_key<K: Ord>(keys: impl IntoIterator<Item = (Vertex, K)>) -> Vec<VertexSet> {
    let mut groups: BTreeMap<K, VertexSet> = BTreeMap::new();
    for (v, k) in keys {
        groups.entry(k).or_default().insert(v);
    }
    let mut out: Vec<VertexSet> = groups.into_values().collect();
    out.sort_by_key(|s| *s.iter().next().unwrap());
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path_abc() -> Graph {
        Graph::from_edges(&[("a", "b"), ("b", "c")]).unwrap()
    }

    fn cycle4() -> Graph {
        Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap()
    }

    #[test]
    fn cut_examples() {
        let g = path_abc();
        let b = g.vertex_set_by_name(&["b"]).unwrap();
        assert_eq!(g.cut(&b).unwrap(), g.edge_set_by_name(&[("a", "b"), ("b", "c")]).unwrap());
        let all: VertexSet = g.vertices().collect();
        assert!(g.cut(&all).unwrap().is_empty());

        let c = cycle4();
        let x = c.vertex_set_by_name(&["1", "2"]).unwrap();
        assert_eq!(c.cut(&x).unwrap(), c.edge_set_by_name(&[("4", "1"), ("2", "3")]).unwrap());
    }

    #[test]
    fn induced_edge_examples() {
        let g = path_abc();
        let ab = g.vertex_set_by_name(&["a", "b"]).unwrap();
        assert_eq!(g.induced_edges(&ab).unwrap(), g.edge_set_by_name(&[("a", "b")]).unwrap());
        assert!(g.induced_edges(&VertexSet::new()).unwrap().is_empty());
        let c = cycle4();
        let x = c.vertex_set_by_name(&["1", "3"]).unwrap();
        assert!(c.induced_edges(&x).unwrap().is_empty());
    }

    #[test]
    fn unknown_vertex_in_cut() {
        let g = path_abc();
        assert!(matches!(g.cut(&VertexSet::from([7])), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn contract_examples() {
        let g = path_abc();
        let bc = g.vertex_set_by_name(&["b", "c"]).unwrap();
        let c = g.contract(&[bc]).unwrap();
        assert_eq!(c.graph.names(), &["[b]".to_string(), "a".to_string()]);
        assert_eq!(c.graph.edge_count(), 1);
        let k = c.graph.vertex("[b]").unwrap();
        assert_eq!(c.vertex_map[g.vertex("b").unwrap()], k);
        assert_eq!(c.vertex_map[g.vertex("c").unwrap()], k);
        assert_eq!(c.dropped, g.edge_set_by_name(&[("b", "c")]).unwrap());

        let id = g.contract(&[]).unwrap();
        assert_eq!(id.graph, g);
        assert_eq!(id.vertex_map, vec![0, 1, 2]);

        let cy = cycle4();
        let p = cy.vertex_set_by_name(&["1", "2"]).unwrap();
        let c = cy.contract(&[p]).unwrap();
        let h = &c.graph;
        assert_eq!(h.vertex_count(), 3);
        assert_eq!(h.edge_count(), 3);
        assert!(h.edge_between("[1]", "3").is_ok());
        assert!(h.edge_between("[1]", "4").is_ok());
        assert!(h.edge_between("3", "4").is_ok());
        assert!(!h.is_multigraph());
    }

    #[test]
    fn contract_keeps_parallel_edges() {
        // a joined to both b and c; contracting {b, c} gives two a-[b] edges.
        let g = Graph::from_edges(&[("a", "b"), ("a", "c"), ("b", "c")]).unwrap();
        let part = g.vertex_set_by_name(&["b", "c"]).unwrap();
        let c = g.contract(&[part]).unwrap();
        assert!(c.graph.is_multigraph());
        assert_eq!(c.graph.edge_count(), 2);
    }

    #[test]
    fn contract_rejects_bad_parts() {
        let g = cycle4();
        let a = g.vertex_set_by_name(&["1", "2"]).unwrap();
        let b = g.vertex_set_by_name(&["2", "3"]).unwrap();
        assert!(matches!(g.contract(&[a, b]), Err(Error::InvalidPart(_))));
        let apart = g.vertex_set_by_name(&["1", "3"]).unwrap();
        assert!(matches!(g.contract(&[apart]), Err(Error::InvalidPart(_))));
    }

    #[test]
    fn component_examples() {
        assert!(Graph::empty().connected_components().is_empty());
        assert_eq!(path_abc().connected_components().len(), 1);
        let g = Graph::from_edges(&[("a", "b"), ("c", "d")]).unwrap();
        let comps = g.connected_components();
        assert_eq!(comps, vec![VertexSet::from([0, 1]), VertexSet::from([2, 3])]);
    }

    #[test]
    fn symmetric_difference_examples() {
        let ac = BTreeSet::from(["a", "c"]);
        assert!(symmetric_difference(&ac, &ac).is_empty());
        assert_eq!(symmetric_difference(&ac, &BTreeSet::new()), ac);
        assert_eq!(symmetric_difference(&ac, &BTreeSet::from(["a", "b"])), BTreeSet::from(["b", "c"]));
    }

    #[test]
    fn rejects_non_simple_input() {
        assert!(matches!(Graph::from_edges(&[("a", "a")]), Err(Error::SelfLoop(_))));
        assert!(matches!(
            Graph::from_edges(&[("a", "b"), ("b", "a")]),
            Err(Error::DuplicateEdge(..))
        ));
        assert!(matches!(Graph::new(&["a", "a"], &[]), Err(Error::DuplicateVertex(_))));
        assert!(matches!(Graph::new(&["a"], &[("a", "z")]), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn path_validation() {
        let g = cycle4();
        let v1 = g.vertex("1").unwrap();
        let e12 = g.edge_between("1", "2").unwrap();
        let e23 = g.edge_between("2", "3").unwrap();
        let e34 = g.edge_between("3", "4").unwrap();
        let e41 = g.edge_between("4", "1").unwrap();
        assert_eq!(g.path(v1, &[e12, e23]).unwrap().len(), 2);
        assert!(g.path(v1, &[e23]).is_err());
        assert!(g.path(v1, &[e12, e23, e34, e41]).is_err());
    }
}
