//! Factor-components, comb-bipartite grafts and the general Kotzig-Lovász
//! partition.
//!
//! Two vertices are equivalent when they are equal, or when they are joined
//! by a path of allowed edges and `ν(G, T △ {u, v}) = ν(G, T)`. For
//! factor-connected vertices the distance is never positive, so the second
//! condition is the same as `dist(u, v) = 0`, which is how it is decided
//! here.

use serde::Serialize;

use crate::distance::dist_with;
use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{EdgeSet, Vertex, VertexSet};
use crate::join::JoinSolver;

/// A maximal set of vertices pairwise joined by paths of allowed edges,
/// together with every edge spanning it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorComponent {
    pub vertices: VertexSet,
    /// All edges with both ends in `vertices`.
    pub edges: EdgeSet,
    /// The allowed edges among `edges`.
    pub allowed: EdgeSet,
}

impl FactorComponent {
    /// The subgraft `(H, T ∩ V(H))`.
    pub fn subgraft(&self, host: &Graft) -> Result<Graft> {
        host.induced(&self.vertices)
    }
}

pub fn factor_components(graft: &Graft) -> Vec<FactorComponent> {
    factor_components_with(&JoinSolver::new(graft))
}

pub fn factor_components_with(solver: &JoinSolver<'_>) -> Vec<FactorComponent> {
    let g = solver.graph();
    let allowed = solver.allowed_edges();
    g.spanning_subgraph(allowed)
        .connected_components()
        .into_iter()
        .map(|vertices| {
            let edges = g.induced_edges(&vertices).expect("own vertices");
            let allowed = edges.intersection(allowed).copied().collect();
            FactorComponent { vertices, edges, allowed }
        })
        .collect()
}

/// Index of the factor-component of every vertex.
fn component_index(n: usize, comps: &[FactorComponent]) -> Vec<usize> {
    let mut idx = vec![0; n];
    for (i, c) in comps.iter().enumerate() {
        for &v in &c.vertices {
            idx[v] = i;
        }
    }
    idx
}

pub fn same_class(graft: &Graft, u: Vertex, v: Vertex) -> Result<bool> {
    graft.graph().check_vertices([&u, &v])?;
    let solver = JoinSolver::new(graft);
    let comps = factor_components_with(&solver);
    let idx = component_index(graft.graph().vertex_count(), &comps);
    Ok(related(&solver, &idx, u, v))
}

fn related(solver: &JoinSolver<'_>, component: &[usize], u: Vertex, v: Vertex) -> bool {
    u == v || (component[u] == component[v] && dist_with(solver, u, v).expect("factor-connected") == 0)
}

/// The full relation matrix, without assuming transitivity.
pub fn relation_matrix(graft: &Graft) -> Vec<Vec<bool>> {
    let solver = JoinSolver::new(graft);
    let comps = factor_components_with(&solver);
    let n = graft.graph().vertex_count();
    let idx = component_index(n, &comps);
    (0..n).map(|u| (0..n).map(|v| related(&solver, &idx, u, v)).collect()).collect()
}

/// The equivalence classes, grouped by factor-component.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KlPartition {
    /// Classes ordered by smallest member.
    pub classes: Vec<VertexSet>,
    /// Factor-component index of each class.
    pub class_component: Vec<usize>,
    pub components: Vec<FactorComponent>,
}

impl KlPartition {
    /// Class containing `v`.
    pub fn class_of(&self, v: Vertex) -> Option<&VertexSet> {
        self.classes.iter().find(|c| c.contains(&v))
    }
}

pub fn kl_partition(graft: &Graft) -> KlPartition {
    kl_partition_with(&JoinSolver::new(graft))
}

pub fn kl_partition_with(solver: &JoinSolver<'_>) -> KlPartition {
    let n = solver.graph().vertex_count();
    let components = factor_components_with(solver);
    let idx = component_index(n, &components);
    let mut root: Vec<Vertex> = (0..n).collect();
    fn find(root: &mut [Vertex], mut v: Vertex) -> Vertex {
        while root[v] != v {
            root[v] = root[root[v]];
            v = root[v];
        }
        v
    }
    for comp in &components {
        let members: Vec<Vertex> = comp.vertices.iter().copied().collect();
        for (i, &u) in members.iter().enumerate() {
            for &v in &members[i + 1..] {
                if related(solver, &idx, u, v) {
                    let (a, b) = (find(&mut root, u), find(&mut root, v));
                    root[a.max(b)] = a.min(b);
                }
            }
        }
    }
    let mut classes: Vec<(usize, VertexSet)> = Vec::new();
    for (ci, comp) in components.iter().enumerate() {
        let groups = crate::graph::group_by_key(comp.vertices.iter().map(|&v| (v, find(&mut root, v))));
        classes.extend(groups.into_iter().map(|g| (ci, g)));
    }
    classes.sort_by_key(|(_, s)| *s.first().unwrap());
    KlPartition {
        class_component: classes.iter().map(|(c, _)| *c).collect(),
        classes: classes.into_iter().map(|(_, s)| s).collect(),
        components,
    }
}

/// The classes lying inside the factor-component `h`.
pub fn kl_classes_of_component(partition: &KlPartition, h: &FactorComponent) -> Result<Vec<VertexSet>> {
    let ci = partition
        .components
        .iter()
        .position(|c| c == h)
        .ok_or_else(|| Error::Precondition("factor-component does not belong to this partition".into()))?;
    Ok(partition
        .classes
        .iter()
        .zip(&partition.class_component)
        .filter(|(_, &c)| c == ci)
        .map(|(s, _)| s.clone())
        .collect())
}

/// Spine and tooth sets of a comb-bipartite graft.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombBipartiteView {
    pub spine: VertexSet,
    pub tooth: VertexSet,
}

/// All bipartitions `(A, B)` under which the graft is comb-bipartite; empty
/// when there is none. A connected graft has at most two. For disconnected
/// grafts every combination of qualifying per-component orientations is
/// listed.
///
/// Recognition uses one minimum join `F`: the orientation qualifies iff
/// `B ⊆ T` and every vertex of `B` meets exactly one edge of `F`.
pub fn is_comb_bipartite(graft: &Graft) -> Vec<CombBipartiteView> {
    let g = graft.graph();
    let Some(colour) = g.bipartition() else {
        return Vec::new();
    };
    let solver = JoinSolver::new(graft);
    let f = solver.min_join();
    let mut f_degree = vec![0usize; g.vertex_count()];
    for &id in f {
        let e = g.edge(id).expect("own edge");
        f_degree[e.u] += 1;
        f_degree[e.v] += 1;
    }
    let tooth_ok = |v: Vertex| graft.is_terminal(v) && f_degree[v] == 1;

    let mut views = vec![CombBipartiteView { spine: VertexSet::new(), tooth: VertexSet::new() }];
    for comp in g.connected_components() {
        let mut options = Vec::new();
        for tooth_colour in [true, false] {
            let (tooth, spine): (VertexSet, VertexSet) = comp.iter().partition(|&&v| colour[v] == tooth_colour);
            if tooth.iter().all(|&v| tooth_ok(v)) {
                options.push((spine, tooth));
            }
        }
        if options.is_empty() {
            return Vec::new();
        }
        views = views
            .into_iter()
            .flat_map(|view| {
                options.iter().map(move |(s, t)| CombBipartiteView {
                    spine: view.spine.union(s).copied().collect(),
                    tooth: view.tooth.union(t).copied().collect(),
                })
            })
            .collect();
    }
    views
}

/// Checks the definition directly for a given bipartition: every edge joins
/// `spine` and `tooth`, the two partition the vertices, `tooth ⊆ T` and
/// `ν = |tooth|`.
pub fn is_comb_bipartite_with(graft: &Graft, spine: &VertexSet, tooth: &VertexSet) -> bool {
    let g = graft.graph();
    let n = g.vertex_count();
    spine.is_disjoint(tooth)
        && spine.len() + tooth.len() == n
        && spine.iter().chain(tooth).all(|&v| v < n)
        && g.edges().iter().all(|e| spine.contains(&e.u) != spine.contains(&e.v))
        && tooth.iter().all(|&v| graft.is_terminal(v))
        && JoinSolver::new(graft).nu() == tooth.len()
}

/// Comparison of the global classes inside one factor-component with the
/// partition of that component taken as a graft of its own.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RefinementEntry {
    pub component: VertexSet,
    /// Classes of the whole graft inside this component.
    pub global: Vec<VertexSet>,
    /// Classes of the component as a standalone graft (host indices).
    pub local: Vec<VertexSet>,
    pub refines: bool,
    pub proper: bool,
}

pub fn refinement_report(graft: &Graft) -> Result<Vec<RefinementEntry>> {
    refinement_report_with(&JoinSolver::new(graft))
}

pub fn refinement_report_with(solver: &JoinSolver<'_>) -> Result<Vec<RefinementEntry>> {
    let graft = solver.graft();
    let partition = kl_partition_with(solver);
    let mut out = Vec::new();
    for h in &partition.components {
        let global = kl_classes_of_component(&partition, h)?;
        let sub = h.subgraft(graft)?;
        let back: Vec<Vertex> = h.vertices.iter().copied().collect();
        let local: Vec<VertexSet> = kl_partition(&sub)
            .classes
            .into_iter()
            .map(|c| c.into_iter().map(|i| back[i]).collect())
            .collect();
        let refines = global.iter().all(|s| local.iter().any(|l| s.is_subset(l)));
        let proper = refines && global.len() != local.len();
        out.push(RefinementEntry { component: h.vertices.clone(), global, local, refines, proper });
    }
    Ok(out)
}
