//! Sebő's distance decomposition with a given root.
//!
//! For a minimum join `F` and a root `r`, the vertices of `r`'s connected
//! component at distance `0` from `r` form the level set `U₀` and those at
//! negative distance form the negative layer. `Q_r` is the component
//! containing `r` of the subgraph on `U₀ ∪ negative` with the edges inside
//! `U₀` removed. Contracting every component `K` of `Q_r − U₀` to a vertex
//! `[K]` gives the bipartite graft `(Q'_r, T'_r)`, where `T'_r` holds the
//! terminals of `Q_r` in `U₀` and every `[K]`.
//!
//! `U₀` and the negative layer are taken inside `r`'s connected component;
//! distances to other components are undefined.

use serde::Serialize;

use crate::distance::dist_with;
use crate::error::{Error, Result};
use crate::graft::Graft;
use crate::graph::{EdgeId, EdgeSet, Graph, Path, Vertex, VertexSet};
use crate::join::{is_join, is_minimum_join, JoinSolver};
use crate::structure::is_comb_bipartite_with;

/// The unique join edge leaving a negative component, oriented as
/// `s_K ∈ U₀`, `r_K ∈ K`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Anchor {
    pub r_k: Vertex,
    pub s_k: Vertex,
    pub edge: EdgeId,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct NegativeComponent {
    pub vertices: VertexSet,
    /// `[K]` as a vertex of the contracted graph.
    pub contracted: Vertex,
    /// `δ_G(K) ∩ F`.
    pub cut_join: EdgeSet,
    /// Present iff `cut_join` is a single edge.
    pub anchor: Option<Anchor>,
}

#[derive(Clone, Debug)]
pub struct SeboDecomposition {
    pub graft: Graft,
    pub root: Vertex,
    pub join: EdgeSet,
    /// `dist(r, x)` for `x` in the root's component.
    pub distance: Vec<Option<i64>>,
    pub level0: VertexSet,
    pub negative: VertexSet,
    /// `V(Q_r)`.
    pub core: VertexSet,
    /// `E(Q_r)`.
    pub core_edges: EdgeSet,
    pub components: Vec<NegativeComponent>,
    /// `Q'_r`. Its edges keep the identifiers of the host edges.
    pub quotient: Graph,
    /// Vertex of `Q'_r` for each host vertex of `Q_r`.
    pub quotient_index: Vec<Option<Vertex>>,
    /// `T'_r`, as vertices of `Q'_r`.
    pub quotient_terminals: VertexSet,
}

impl SeboDecomposition {
    /// The graft `(Q'_r, T'_r)`.
    pub fn quotient_graft(&self) -> Result<Graft> {
        Graft::new(self.quotient.clone(), &self.quotient_terminals)
    }

    /// Vertices of `Q'_r` coming from `U₀`.
    pub fn quotient_spine(&self) -> VertexSet {
        self.core.intersection(&self.level0).map(|&v| self.quotient_index[v].unwrap()).collect()
    }

    /// The contracted vertices `[K]`.
    pub fn quotient_tooth(&self) -> VertexSet {
        self.components.iter().map(|k| k.contracted).collect()
    }

    /// Anchor edges `s_K r_K`, if every component has one.
    pub fn anchor_edges(&self) -> Option<EdgeSet> {
        self.components.iter().map(|k| k.anchor.map(|a| a.edge)).collect()
    }

    /// Index of the negative component whose contracted vertex is `q`.
    pub fn component_at(&self, q: Vertex) -> Option<usize> {
        self.components.iter().position(|k| k.contracted == q)
    }

    /// The graft `(K, (T ∩ V(K)) △ {r_K})`.
    pub fn component_graft(&self, k: &NegativeComponent) -> Result<Graft> {
        let anchor = k.anchor.ok_or_else(|| Error::Precondition("component has no anchor".into()))?;
        let (g, map) = self.graft.graph().induced_subgraph(&k.vertices)?;
        let mut t = vec![false; g.vertex_count()];
        for &v in &k.vertices {
            t[map[v].unwrap()] = self.graft.is_terminal(v);
        }
        t[map[anchor.r_k].unwrap()] ^= true;
        Graft::from_mask(g, t)
    }

    fn join_weight(&self, e: EdgeId) -> i64 {
        if self.join.contains(&e) {
            -1
        } else {
            1
        }
    }

    /// `w_F` of a path of `Q'_r`, with its edges read as host edges.
    pub fn quotient_path_weight(&self, path: &Path) -> i64 {
        path.edges.iter().map(|&e| self.join_weight(e)).sum()
    }
}

/// Builds the decomposition. `join` must be a minimum join of `graft`.
pub fn sebo_decomposition(graft: &Graft, join: &EdgeSet, root: Vertex) -> Result<SeboDecomposition> {
    sebo_decomposition_with(&JoinSolver::new(graft), join, root)
}

pub fn sebo_decomposition_with(solver: &JoinSolver<'_>, join: &EdgeSet, root: Vertex) -> Result<SeboDecomposition> {
    let graft = solver.graft();
    let g = graft.graph();
    g.check_vertices([&root])?;
    g.check_edges(join)?;
    if !is_join(graft, join)? {
        return Err(Error::NotMinimumJoin("edge set is not a join".into()));
    }
    if join.len() != solver.nu() {
        return Err(Error::NotMinimumJoin(format!("size {} but ν = {}", join.len(), solver.nu())));
    }

    let distance: Vec<Option<i64>> =
        g.vertices().map(|x| solver.same_component(root, x).then(|| dist_with(solver, root, x).unwrap())).collect();
    let level0: VertexSet = g.vertices().filter(|&x| distance[x] == Some(0)).collect();
    let negative: VertexSet = g.vertices().filter(|&x| matches!(distance[x], Some(d) if d < 0)).collect();
    let nonpositive: VertexSet = level0.union(&negative).copied().collect();

    // Q_r: component of r in G[U₀ ∪ negative] − E[U₀].
    let layer_edges: EdgeSet = g
        .edges()
        .iter()
        .filter(|e| nonpositive.contains(&e.u) && nonpositive.contains(&e.v))
        .filter(|e| !(level0.contains(&e.u) && level0.contains(&e.v)))
        .map(|e| e.id)
        .collect();
    let layer = g.spanning_subgraph(&layer_edges);
    let labels = layer.component_labels();
    let core: VertexSet = nonpositive.iter().copied().filter(|&x| labels[x] == labels[root]).collect();
    let core_edges: EdgeSet = layer_edges
        .iter()
        .copied()
        .filter(|&id| core.contains(&g.edge(id).unwrap().u))
        .collect();

    // Components of Q_r − U₀.
    let core_negative: VertexSet = core.difference(&level0).copied().collect();
    let negative_edges: EdgeSet = core_edges
        .iter()
        .copied()
        .filter(|&id| {
            let e = g.edge(id).unwrap();
            core_negative.contains(&e.u) && core_negative.contains(&e.v)
        })
        .collect();
    let neg_labels = g.spanning_subgraph(&negative_edges).component_labels();
    let parts: Vec<VertexSet> = crate::graph::group_by_key(core_negative.iter().map(|&v| (v, neg_labels[v])));

    // Q'_r: Q_r with every part contracted.
    let (core_graph, core_map) = g.induced_subgraph(&core)?;
    let core_graph = core_graph.spanning_subgraph(&core_edges);
    let local_parts: Vec<VertexSet> = parts.iter().map(|p| p.iter().map(|&v| core_map[v].unwrap()).collect()).collect();
    let contraction = core_graph.contract(&local_parts)?;
    let quotient_index: Vec<Option<Vertex>> =
        core_map.iter().map(|m| m.map(|i| contraction.vertex_map[i])).collect();

    let mut quotient_terminals: VertexSet = core
        .intersection(&level0)
        .filter(|&&v| graft.is_terminal(v))
        .map(|&v| quotient_index[v].unwrap())
        .collect();
    let mut components = Vec::with_capacity(parts.len());
    for (i, part) in parts.into_iter().enumerate() {
        let contracted = contraction.contracted[i];
        quotient_terminals.insert(contracted);
        let cut_join: EdgeSet = g.cut(&part)?.intersection(join).copied().collect();
        let anchor = if cut_join.len() == 1 {
            let id = *cut_join.iter().next().unwrap();
            let e = g.edge(id)?;
            let (r_k, s_k) = if part.contains(&e.u) { (e.u, e.v) } else { (e.v, e.u) };
            Some(Anchor { r_k, s_k, edge: id })
        } else {
            None
        };
        components.push(NegativeComponent { vertices: part, contracted, cut_join, anchor });
    }

    Ok(SeboDecomposition {
        graft: graft.clone(),
        root,
        join: join.clone(),
        distance,
        level0,
        negative,
        core,
        core_edges,
        components,
        quotient: contraction.graph,
        quotient_index,
        quotient_terminals,
    })
}

/// Outcome of one verified property.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CheckItem {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

impl CheckItem {
    pub fn new(name: &'static str, failures: Vec<String>) -> Self {
        let passed = failures.is_empty();
        let detail = if passed { "ok".to_string() } else { failures.join("; ") };
        CheckItem { name, passed, detail }
    }
}

pub const SEBO_ITEMS: [&str; 6] = [
    "cut-of-core-not-allowed",
    "level-zero-edges-not-allowed",
    "single-join-edge-per-component",
    "quotient-comb-bipartite",
    "component-minimum-join",
    "component-root-distance",
];

/// Evaluates the six structural claims of the decomposition.
pub fn verify_sebo(d: &SeboDecomposition) -> Vec<CheckItem> {
    verify_sebo_with(&JoinSolver::new(&d.graft), d)
}

pub fn verify_sebo_with(solver: &JoinSolver<'_>, d: &SeboDecomposition) -> Vec<CheckItem> {
    let g = d.graft.graph();
    let allowed = solver.allowed_edges();
    let mut items = Vec::with_capacity(6);

    let bad: Vec<String> = g
        .cut(&d.core)
        .unwrap()
        .intersection(allowed)
        .map(|&e| format!("cut edge {} is allowed", g.describe_edge(e)))
        .collect();
    items.push(CheckItem::new(SEBO_ITEMS[0], bad));

    let core_level0: VertexSet = d.core.intersection(&d.level0).copied().collect();
    let bad: Vec<String> = g
        .induced_edges(&core_level0)
        .unwrap()
        .intersection(allowed)
        .map(|&e| format!("level-zero edge {} is allowed", g.describe_edge(e)))
        .collect();
    items.push(CheckItem::new(SEBO_ITEMS[1], bad));

    let mut bad = Vec::new();
    for k in &d.components {
        match k.anchor {
            None => bad.push(format!("{} meets {} join edges", g.describe(&k.vertices), k.cut_join.len())),
            Some(a) if !d.level0.contains(&a.s_k) => {
                bad.push(format!("anchor {} lies outside the level set", g.name(a.s_k)))
            }
            Some(_) => {}
        }
    }
    items.push(CheckItem::new(SEBO_ITEMS[2], bad));

    let mut bad = Vec::new();
    match d.quotient_graft() {
        Err(e) => bad.push(format!("quotient is not a graft: {e}")),
        Ok(q) => {
            let (spine, tooth) = (d.quotient_spine(), d.quotient_tooth());
            if !is_comb_bipartite_with(&q, &spine, &tooth) {
                bad.push("quotient is not comb-bipartite with the contracted vertices as teeth".into());
            }
            match d.anchor_edges() {
                None => bad.push("some component has no anchor edge".into()),
                Some(anchors) => {
                    if !is_minimum_join(&q, &anchors).unwrap_or(false) {
                        bad.push("anchor edges are not a minimum join of the quotient".into());
                    }
                }
            }
        }
    }
    items.push(CheckItem::new(SEBO_ITEMS[3], bad));

    let mut bad_v = Vec::new();
    let mut bad_vi = Vec::new();
    for k in &d.components {
        let Some(anchor) = k.anchor else {
            bad_v.push(format!("{} has no anchor", g.describe(&k.vertices)));
            bad_vi.push(format!("{} has no anchor", g.describe(&k.vertices)));
            continue;
        };
        let sub = match d.component_graft(k) {
            Ok(s) => s,
            Err(e) => {
                bad_v.push(format!("{}: {e}", g.describe(&k.vertices)));
                bad_vi.push(format!("{}: {e}", g.describe(&k.vertices)));
                continue;
            }
        };
        let inner: EdgeSet = g.induced_edges(&k.vertices).unwrap().intersection(&d.join).copied().collect();
        if !is_minimum_join(&sub, &inner).unwrap_or(false) {
            bad_v.push(format!("F ∩ E(K) is not a minimum join of {}", g.describe(&k.vertices)));
        }
        let sub_solver = JoinSolver::new(&sub);
        let root = sub.graph().vertex(g.name(anchor.r_k)).unwrap();
        for x in sub.graph().vertices() {
            let dx = dist_with(&sub_solver, x, root).unwrap();
            if dx > 0 {
                bad_vi.push(format!("dist({}, {}) = {dx} inside K", sub.graph().name(x), g.name(anchor.r_k)));
            }
        }
    }
    items.push(CheckItem::new(SEBO_ITEMS[4], bad_v));
    items.push(CheckItem::new(SEBO_ITEMS[5], bad_vi));
    items
}

/// Turns a path of `Q'_r` from a level-zero vertex `u` to a contracted
/// vertex `[K]` with weight `-1` into a path of `G` from `u` to `v ∈ K`
/// with weight at most `-1`. Each contracted vertex `[L]` on the way is
/// replaced by a path inside `L` of weight at most `0` between the ends of
/// the two path edges meeting `L`.
pub fn lift_negative_path(d: &SeboDecomposition, path: &Path, v: Vertex) -> Result<Path> {
    let q = &d.quotient;
    let path = q.path(path.start(), &path.edges)?;
    let g = d.graft.graph();
    let level0_of: std::collections::HashMap<Vertex, Vertex> = d
        .core
        .intersection(&d.level0)
        .map(|&x| (d.quotient_index[x].unwrap(), x))
        .collect();
    let &u = level0_of
        .get(&path.start())
        .ok_or_else(|| Error::Precondition("path must start at a level-zero vertex".into()))?;
    let target = d
        .component_at(path.end())
        .ok_or_else(|| Error::Precondition("path must end at a contracted vertex".into()))?;
    if path.is_empty() {
        return Err(Error::Precondition("path must end at a contracted vertex".into()));
    }
    if d.quotient_path_weight(&path) != -1 {
        return Err(Error::Precondition(format!("path weight is {}, not -1", d.quotient_path_weight(&path))));
    }
    if !d.components[target].vertices.contains(&v) {
        return Err(Error::Precondition(format!("{} is not in the target component", g.name(v))));
    }

    let mut edges: Vec<EdgeId> = Vec::new();
    let mut at = u;
    for (i, &id) in path.edges.iter().enumerate() {
        let e = g.edge(id)?;
        let entry = e.other(at);
        edges.push(id);
        at = entry;
        let qv = path.vertices[i + 1];
        let Some(ci) = d.component_at(qv) else { continue };
        let comp = &d.components[ci];
        let leaving = path.edges.get(i + 1).copied();
        let on_join = [Some(id), leaving].iter().flatten().filter(|e| d.join.contains(e)).count();
        if on_join != 1 {
            return Err(Error::Precondition(format!(
                "path meets {} join edges at {}",
                on_join,
                q.name(qv)
            )));
        }
        let exit = match leaving {
            Some(next) => {
                let e = g.edge(next)?;
                if comp.vertices.contains(&e.u) { e.u } else { e.v }
            }
            None => v,
        };
        let inner = nonpositive_path(g, &comp.vertices, &d.join, entry, exit).ok_or_else(|| {
            Error::Precondition(format!("no path of weight <= 0 inside {}", g.describe(&comp.vertices)))
        })?;
        edges.extend(inner);
        at = exit;
    }
    let lifted = g.path(u, &edges)?;
    let weight: i64 = lifted.edges.iter().map(|&e| d.join_weight(e)).sum();
    if weight > -1 {
        return Err(Error::Precondition(format!("lifted path has weight {weight}")));
    }
    Ok(lifted)
}

/// Depth-first search for a simple path inside `within` from `a` to `b`
/// with `w_F` weight at most zero. Exponential in the worst case.
fn nonpositive_path(g: &Graph, within: &VertexSet, join: &EdgeSet, a: Vertex, b: Vertex) -> Option<Vec<EdgeId>> {
    fn go(
        g: &Graph,
        within: &VertexSet,
        join: &EdgeSet,
        at: Vertex,
        b: Vertex,
        weight: i64,
        spare: i64,
        seen: &mut VertexSet,
        trail: &mut Vec<EdgeId>,
    ) -> bool {
        if at == b {
            return weight <= 0;
        }
        // Every remaining step can lower the weight by at most one per unused join edge.
        if weight - spare > 0 {
            return false;
        }
        for (w, e) in g.incident(at) {
            if !within.contains(&w) || seen.contains(&w) {
                continue;
            }
            let on = join.contains(&e.id);
            seen.insert(w);
            trail.push(e.id);
            let (dw, ds) = if on { (-1, 1) } else { (1, 0) };
            if go(g, within, join, w, b, weight + dw, spare - ds, seen, trail) {
                return true;
            }
            trail.pop();
            seen.remove(&w);
        }
        false
    }
    let inner_join = g.induced_edges(within).ok()?.intersection(join).count() as i64;
    let mut seen = VertexSet::from([a]);
    let mut trail = Vec::new();
    go(g, within, join, a, b, 0, inner_join, &mut seen, &mut trail).then_some(trail)
}

/// `F ∩ E(K)` for a component, read on the host graph.
pub fn component_join(d: &SeboDecomposition, k: &NegativeComponent) -> EdgeSet {
    let g = d.graft.graph();
    g.induced_edges(&k.vertices).unwrap().intersection(&d.join).copied().collect()
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

    #[test]
    fn path_decomposition() {
        let p = path_abc();
        let g = p.graph();
        let f = g.edge_ids();
        let d = sebo_decomposition(&p, &f, 0).unwrap();
        assert_eq!(d.distance, vec![Some(0), Some(-1), Some(-2)]);
        assert_eq!(d.level0, VertexSet::from([0]));
        assert_eq!(d.negative, VertexSet::from([1, 2]));
        assert_eq!(d.core, VertexSet::from([0, 1, 2]));
        assert_eq!(d.components.len(), 1);
        let k = &d.components[0];
        assert_eq!(k.vertices, VertexSet::from([1, 2]));
        let a = k.anchor.unwrap();
        assert_eq!((a.r_k, a.s_k, a.edge), (1, 0, g.edge_between("a", "b").unwrap()));
        assert_eq!(d.quotient.names(), &["[b]".to_string(), "a".to_string()]);
        assert_eq!(d.quotient.edge_count(), 1);
        assert_eq!(d.quotient_terminals, VertexSet::from([0, 1]));
        let items = verify_sebo(&d);
        assert!(items.iter().all(|i| i.passed), "{items:?}");
    }

    #[test]
    fn single_vertex() {
        let s = Graft::with_names(Graph::new(&["r"], &[]).unwrap(), &[]).unwrap();
        let d = sebo_decomposition(&s, &EdgeSet::new(), 0).unwrap();
        assert_eq!(d.level0, VertexSet::from([0]));
        assert!(d.components.is_empty());
        assert_eq!(d.quotient.vertex_count(), 1);
        assert!(verify_sebo(&d).iter().all(|i| i.passed));
    }

    #[test]
    fn cycle_decomposition() {
        let c = cycle4_full();
        let g = c.graph();
        let f = g.edge_set_by_name(&[("1", "2"), ("3", "4")]).unwrap();
        let d = sebo_decomposition(&c, &f, 0).unwrap();
        assert_eq!(d.distance, vec![Some(0), Some(-1), Some(0), Some(-1)]);
        assert_eq!(d.level0, VertexSet::from([0, 2]));
        assert_eq!(d.negative, VertexSet::from([1, 3]));
        assert!(verify_sebo(&d).iter().all(|i| i.passed));
    }

    #[test]
    fn rejects_non_minimum_join() {
        let c = cycle4_full();
        let all = c.graph().edge_ids();
        assert!(matches!(sebo_decomposition(&c, &all, 0), Err(Error::NotMinimumJoin(_))));
        let p = Graft::with_names(
            Graph::from_edges(&[("a", "b"), ("b", "c"), ("c", "d"), ("d", "a")]).unwrap(),
            &["a", "b"],
        )
        .unwrap();
        let long = p.graph().edge_set_by_name(&[("b", "c"), ("c", "d"), ("d", "a")]).unwrap();
        assert!(matches!(sebo_decomposition(&p, &long, 0), Err(Error::NotMinimumJoin(_))));
    }

    #[test]
    fn lift_on_path() {
        let p = path_abc();
        let d = sebo_decomposition(&p, &p.graph().edge_ids(), 0).unwrap();
        let q = &d.quotient;
        let qp = q.path(q.vertex("a").unwrap(), &[q.edges()[0].id]).unwrap();
        let lifted = lift_negative_path(&d, &qp, 2).unwrap();
        assert_eq!(lifted.vertices, vec![0, 1, 2]);
        let lifted = lift_negative_path(&d, &qp, 1).unwrap();
        assert_eq!(lifted.vertices, vec![0, 1]);
        assert!(lift_negative_path(&d, &qp, 0).is_err());
    }

    #[test]
    fn lift_on_cycle() {
        let c = cycle4_full();
        let g = c.graph();
        let f = g.edge_set_by_name(&[("1", "2"), ("3", "4")]).unwrap();
        let d = sebo_decomposition(&c, &f, 0).unwrap();
        let tooth = d.quotient_tooth();
        let mut lifted_any = false;
        for u in d.quotient_spine() {
            crate::oracle::for_each_simple_path(&d.quotient, u, |vs, es| {
                let p = Path { vertices: vs.to_vec(), edges: es.to_vec() };
                if !tooth.contains(&p.end()) || d.quotient_path_weight(&p) != -1 {
                    return;
                }
                let k = &d.components[d.component_at(p.end()).unwrap()];
                for &v in &k.vertices {
                    let lifted = lift_negative_path(&d, &p, v).unwrap();
                    let w: i64 = lifted.edges.iter().map(|e| if f.contains(e) { -1 } else { 1 }).sum();
                    assert!(w <= -1);
                    assert_eq!(lifted.end(), v);
                    assert!(g.path(lifted.start(), &lifted.edges).is_ok());
                    lifted_any = true;
                }
            });
        }
        assert!(lifted_any);
    }
}
