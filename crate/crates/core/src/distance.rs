//! Join-induced edge weights and distances.
//!
//! Given a minimum join `F`, every edge weighs `-1` if it is in `F` and `+1`
//! otherwise. The distance between two vertices is the least weight of a
//! path joining them; it does not depend on the chosen minimum join and
//! equals `ν(G, T △ {x, y}) − ν(G, T)`. That difference is how [`dist`]
//! computes it; the path formulation is checked by the oracle.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{EdgeId, EdgeSet, Graph, Path, Vertex};
use crate::join::JoinSolver;

/// The `±1` weighting induced by a join.
#[derive(Clone, Copy, Debug)]
pub struct JoinWeighting<'a> {
    graph: &'a Graph,
    join: &'a EdgeSet,
}

impl<'a> JoinWeighting<'a> {
    pub fn new(graph: &'a Graph, join: &'a EdgeSet) -> Result<Self> {
        graph.check_edges(join)?;
        Ok(JoinWeighting { graph, join })
    }

    pub fn graph(&self) -> &'a Graph {
        self.graph
    }

    pub fn join(&self) -> &'a EdgeSet {
        self.join
    }

    pub fn weight(&self, e: EdgeId) -> i64 {
        if self.join.contains(&e) {
            -1
        } else {
            1
        }
    }

    pub fn total<'e>(&self, edges: impl IntoIterator<Item = &'e EdgeId>) -> i64 {
        edges.into_iter().map(|&e| self.weight(e)).sum()
    }
}

/// Weight of a path given as start vertex and edge sequence. Fails unless
/// the sequence is a simple path of the weighted graph.
pub fn path_weight(weighting: &JoinWeighting<'_>, start: Vertex, edges: &[EdgeId]) -> Result<i64> {
    let path = weighting.graph.path(start, edges)?;
    Ok(weight_of(weighting, &path))
}

pub fn weight_of(weighting: &JoinWeighting<'_>, path: &Path) -> i64 {
    weighting.total(&path.edges)
}

/// `dist(x, y)` for two vertices of one connected component.
pub fn dist(graft: &Graft, x: Vertex, y: Vertex) -> Result<i64> {
    dist_with(&JoinSolver::new(graft), x, y)
}

pub fn dist_with(solver: &JoinSolver<'_>, x: Vertex, y: Vertex) -> Result<i64> {
    let g = solver.graph();
    g.check_vertices([&x, &y])?;
    if !solver.same_component(x, y) {
        return Err(Error::CrossComponent(g.name(x).into(), g.name(y).into()));
    }
    let toggled = solver.nu_toggled(x, y).expect("same-component toggle preserves parity");
    Ok(toggled as i64 - solver.nu() as i64)
}

/// Distances between all pairs of vertices sharing a connected component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DistanceTable {
    entries: BTreeMap<(Vertex, Vertex), i64>,
}

impl DistanceTable {
    /// `None` for vertices in different components.
    pub fn get(&self, x: Vertex, y: Vertex) -> Option<i64> {
        self.entries.get(&(x.min(y), x.max(y))).copied()
    }

    /// Entries `(x, y, d)` with `x <= y`.
    pub fn iter(&self) -> impl Iterator<Item = (Vertex, Vertex, i64)> + '_ {
        self.entries.iter().map(|(&(x, y), &d)| (x, y, d))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

pub fn distance_table(graft: &Graft) -> DistanceTable {
    distance_table_with(&JoinSolver::new(graft))
}

pub fn distance_table_with(solver: &JoinSolver<'_>) -> DistanceTable {
    let mut entries = BTreeMap::new();
    for comp in solver.graph().connected_components() {
        let members: Vec<Vertex> = comp.into_iter().collect();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i..] {
                entries.insert((x, y), dist_with(solver, x, y).expect("same component"));
            }
        }
    }
    DistanceTable { entries }
}
