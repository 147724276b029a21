//! Named property checks for one graft, each comparing the fast routines
//! with exhaustive enumeration or with a structural claim.
//!
//! Every check returns a [`CheckItem`]; a failing item carries the first
//! few counterexamples in its detail string.

use std::sync::OnceLock;

use crate::distance::{dist_with, distance_table_with};
use crate::error::Result;
use crate::graft::Graft;
use crate::graph::{EdgeId, EdgeSet, Graph, Path, Vertex, VertexSet};
use crate::join::JoinSolver;
use crate::oracle::{
    circuits, enumerate_joins_bounded, for_each_simple_path, is_factorizable, matching_kl, perfect_matchings, Bounds,
    Oracle,
};
use crate::sebo::{lift_negative_path, sebo_decomposition_with, verify_sebo_with, CheckItem, SeboDecomposition};
use crate::structure::{
    factor_components, factor_components_with, is_comb_bipartite, kl_partition_with, refinement_report_with,
    relation_matrix,
};

pub const ORACLE_EQUIVALENCE: &str = "oracle-equivalence";
pub const JOIN_INDEPENDENCE: &str = "distance-join-independence";
pub const CIRCUIT_CRITERION: &str = "circuit-criterion";
pub const TRANSITIVITY: &str = "equivalence-transitivity";
pub const DISTANCE_DECOMPOSITION: &str = "distance-decomposition";
pub const MATCHING_REDUCTION: &str = "matching-reduction";
pub const REFINEMENT: &str = "partition-refinement";
pub const COMB_EQUIVALENCE: &str = "comb-bipartite-equivalence";
pub const COMB_PATH_TEETH: &str = "comb-path-teeth";
pub const FACTOR_CONNECTED_DISTANCE: &str = "factor-connected-distance";
pub const SPINE_TOOTH_DISTANCE: &str = "comb-spine-tooth-distance";
pub const COMPONENT_IMAGE: &str = "component-image";
pub const PATH_LIFTING: &str = "negative-path-lifting";

pub const ALL_CHECKS: [&str; 13] = [
    ORACLE_EQUIVALENCE,
    JOIN_INDEPENDENCE,
    CIRCUIT_CRITERION,
    TRANSITIVITY,
    DISTANCE_DECOMPOSITION,
    MATCHING_REDUCTION,
    REFINEMENT,
    COMB_EQUIVALENCE,
    COMB_PATH_TEETH,
    FACTOR_CONNECTED_DISTANCE,
    SPINE_TOOTH_DISTANCE,
    COMPONENT_IMAGE,
    PATH_LIFTING,
];

const MAX_REPORTED: usize = 5;

/// Collects failure messages, keeping only the first few.
#[derive(Default)]
struct Failures {
    messages: Vec<String>,
    total: usize,
}

impl Failures {
    fn push(&mut self, message: impl FnOnce() -> String) {
        if self.messages.len() < MAX_REPORTED {
            self.messages.push(message());
        }
        self.total += 1;
    }

    fn error(&mut self, context: &str, e: crate::error::Error) {
        self.push(|| format!("{context}: {e}"));
    }

    fn into_item(mut self, name: &'static str) -> CheckItem {
        if self.total > self.messages.len() {
            self.messages.push(format!("{} more", self.total - self.messages.len()));
        }
        CheckItem::new(name, self.messages)
    }
}

/// One graft with its fast solver, its oracle and the decompositions for
/// every (minimum join, root) pair, computed on demand.
pub struct Instance<'g> {
    graft: &'g Graft,
    solver: JoinSolver<'g>,
    oracle: Oracle<'g>,
    min_joins: Vec<EdgeSet>,
    decompositions: OnceLock<std::result::Result<Vec<SeboDecomposition>, String>>,
    quotients: OnceLock<Vec<Graft>>,
}

impl<'g> Instance<'g> {
    pub fn new(graft: &'g Graft) -> Result<Self> {
        Instance::with_bounds(graft, Bounds::default())
    }

    pub fn with_bounds(graft: &'g Graft, bounds: Bounds) -> Result<Self> {
        let oracle = Oracle::with_bounds(graft, bounds)?;
        let min_joins = oracle.minimum_joins();
        Ok(Instance {
            graft,
            solver: JoinSolver::new(graft),
            oracle,
            min_joins,
            decompositions: OnceLock::new(),
            quotients: OnceLock::new(),
        })
    }

    pub fn graft(&self) -> &'g Graft {
        self.graft
    }

    pub fn solver(&self) -> &JoinSolver<'g> {
        &self.solver
    }

    pub fn oracle(&self) -> &Oracle<'g> {
        &self.oracle
    }

    pub fn minimum_joins(&self) -> &[EdgeSet] {
        &self.min_joins
    }

    fn graph(&self) -> &'g Graph {
        self.graft.graph()
    }

    /// Decompositions for every minimum join and every root.
    pub fn decompositions(&self) -> std::result::Result<&[SeboDecomposition], String> {
        self.decompositions
            .get_or_init(|| {
                let mut out = Vec::new();
                for f in &self.min_joins {
                    for r in self.graph().vertices() {
                        let d = sebo_decomposition_with(&self.solver, f, r).map_err(|e| {
                            format!("decomposition for root {} failed: {e}", self.graph().name(r))
                        })?;
                        out.push(d);
                    }
                }
                Ok(out)
            })
            .as_deref()
            .map_err(Clone::clone)
    }

    /// Distinct contracted grafts over all decompositions.
    pub fn quotient_grafts(&self) -> &[Graft] {
        self.quotients.get_or_init(|| {
            let mut out: Vec<Graft> = Vec::new();
            for d in self.decompositions().unwrap_or(&[]) {
                if let Ok(q) = d.quotient_graft() {
                    if !out.contains(&q) {
                        out.push(q);
                    }
                }
            }
            out
        })
    }

    /// `ν`, allowed edges, all distances and the partition agree with
    /// exhaustive enumeration.
    pub fn check_oracle_equivalence(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        let (fast, slow) = (self.solver.nu(), self.oracle.nu());
        if fast != slow {
            fail.push(|| format!("nu {fast} but enumeration gives {slow}"));
        }
        if !self.min_joins.contains(self.solver.min_join()) {
            fail.push(|| "computed join is not among the enumerated minimum joins".into());
        }
        let (fast, slow) = (self.solver.allowed_edges(), self.oracle.allowed());
        if *fast != slow {
            fail.push(|| format!("allowed edges differ: {fast:?} vs {slow:?}"));
        }
        let table = distance_table_with(&self.solver);
        for (x, y, d) in table.iter() {
            match self.oracle.dist(x, y) {
                Ok(b) if b == d => {}
                Ok(b) => fail.push(|| format!("dist({}, {}) = {d} but paths give {b}", g.name(x), g.name(y))),
                Err(e) => fail.error("path distance", e),
            }
        }
        let classes = kl_partition_with(&self.solver).classes;
        let expected = self.oracle.kl_classes();
        if classes != expected {
            fail.push(|| format!("partition {classes:?} but definition gives {expected:?}"));
        }
        fail.into_item(ORACLE_EQUIVALENCE)
    }

    /// Every minimum join yields the same least path weight between every
    /// pair, equal to the computed distance.
    pub fn check_join_independence(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        for f in &self.min_joins {
            for x in g.vertices() {
                let weights = crate::oracle::min_path_weights(g, f, x);
                for y in g.vertices() {
                    let Some(w) = weights[y] else { continue };
                    match dist_with(&self.solver, x, y) {
                        Ok(d) if d == w => {}
                        Ok(d) => fail.push(|| {
                            format!("join {f:?}: best {}-{} path weighs {w}, dist is {d}", g.name(x), g.name(y))
                        }),
                        Err(e) => fail.error("dist", e),
                    }
                }
            }
        }
        fail.into_item(JOIN_INDEPENDENCE)
    }

    /// A join is minimum iff no circuit has negative weight under it.
    pub fn check_circuit_criterion(&self) -> CheckItem {
        let mut fail = Failures::default();
        let joins = match enumerate_joins_bounded(self.graft, Bounds::default()) {
            Ok(j) => j,
            Err(e) => {
                fail.error("join enumeration", e);
                return fail.into_item(CIRCUIT_CRITERION);
            }
        };
        let cycles = circuits(self.graph());
        let nu = self.oracle.nu();
        for f in joins {
            let negative = cycles
                .iter()
                .find(|c| c.iter().map(|e| if f.contains(e) { -1i64 } else { 1 }).sum::<i64>() < 0);
            let minimum = f.len() == nu;
            if minimum == negative.is_some() {
                fail.push(|| match negative {
                    Some(c) => format!("minimum join {f:?} has negative circuit {c:?}"),
                    None => format!("join {f:?} of size {} > {nu} has no negative circuit", f.len()),
                });
            }
        }
        fail.into_item(CIRCUIT_CRITERION)
    }

    /// The computed relation, and the one from the definition, are
    /// transitive.
    pub fn check_transitivity(&self) -> CheckItem {
        let g = self.graph();
        let n = g.vertex_count();
        let mut fail = Failures::default();
        let fast = relation_matrix(self.graft);
        let labels = {
            let mut l = vec![0; n];
            for (i, c) in self.oracle.factor_components().iter().enumerate() {
                for &v in c {
                    l[v] = i;
                }
            }
            l
        };
        let slow: Vec<Vec<bool>> =
            (0..n).map(|u| (0..n).map(|v| self.oracle.related(u, v, &labels)).collect()).collect();
        for (label, rel) in [("computed", &fast), ("defined", &slow)] {
            for u in 0..n {
                for v in 0..n {
                    if !rel[u][v] {
                        continue;
                    }
                    for w in 0..n {
                        if rel[v][w] && !rel[u][w] {
                            fail.push(|| {
                                format!("{label}: {0}~{1}, {1}~{2} but not {0}~{2}", g.name(u), g.name(v), g.name(w))
                            });
                        }
                    }
                }
            }
        }
        fail.into_item(TRANSITIVITY)
    }

    /// All six structural claims hold for every minimum join and root.
    pub fn check_distance_decomposition(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        match self.decompositions() {
            Err(e) => fail.push(|| e),
            Ok(ds) => {
                for d in ds {
                    for item in verify_sebo_with(&self.solver, d).into_iter().filter(|i| !i.passed) {
                        fail.push(|| format!("root {}, join {:?}: {} ({})", g.name(d.root), d.join, item.name, item.detail));
                    }
                }
            }
        }
        fail.into_item(DISTANCE_DECOMPOSITION)
    }

    /// With `T = V` on a factorizable graph, minimum joins are the perfect
    /// matchings and the partition is the 1-factor one. Vacuous otherwise.
    pub fn check_matching_reduction(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        if self.graft.terminals().len() == g.vertex_count() && is_factorizable(g) {
            let mut matchings = perfect_matchings(g, &VertexSet::new());
            let mut joins = self.min_joins.clone();
            matchings.sort();
            joins.sort();
            if matchings != joins {
                fail.push(|| format!("minimum joins {joins:?} but perfect matchings {matchings:?}"));
            }
            let classes = kl_partition_with(&self.solver).classes;
            match matching_kl(g) {
                Ok(m) if m == classes => {}
                Ok(m) => fail.push(|| format!("partition {classes:?} but matching partition {m:?}")),
                Err(e) => fail.error("matching partition", e),
            }
        }
        fail.into_item(MATCHING_REDUCTION)
    }

    /// Inside each factor-component the global classes refine the
    /// component's own classes.
    pub fn check_refinement(&self) -> CheckItem {
        let mut fail = Failures::default();
        match refinement_report_with(&self.solver) {
            Ok(entries) => {
                for e in entries.into_iter().filter(|e| !e.refines) {
                    fail.push(|| format!("component {:?}: {:?} does not refine {:?}", e.component, e.global, e.local));
                }
            }
            Err(e) => fail.error("refinement report", e),
        }
        fail.into_item(REFINEMENT)
    }

    /// On the graft and on every contracted graft: for a colour class `B`
    /// of terminals, `ν = |B|` iff some minimum join meets each vertex of
    /// `B` once iff every minimum join does; recognition agrees.
    pub fn check_comb_equivalence(&self) -> CheckItem {
        let mut fail = Failures::default();
        comb_equivalence(&self.oracle, &mut fail, "graft");
        for q in self.quotient_grafts() {
            with_oracle(q, &mut fail, |o, f| comb_equivalence(o, f, "contracted graft"));
        }
        fail.into_item(COMB_EQUIVALENCE)
    }

    /// In comb-bipartite grafts, a spine-to-tooth path of weight `-1` meets
    /// the join exactly once at each tooth vertex on it.
    pub fn check_comb_path_teeth(&self) -> CheckItem {
        let mut fail = Failures::default();
        comb_path_teeth(&self.oracle, &mut fail);
        for q in self.quotient_grafts() {
            with_oracle(q, &mut fail, comb_path_teeth);
        }
        fail.into_item(COMB_PATH_TEETH)
    }

    /// Factor-connected vertices are at distance at most zero, and two
    /// distinct ones are related exactly at distance zero.
    pub fn check_factor_connected_distance(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        let partition = kl_partition_with(&self.solver);
        for h in &partition.components {
            let members: Vec<Vertex> = h.vertices.iter().copied().collect();
            for (i, &u) in members.iter().enumerate() {
                for &v in &members[i + 1..] {
                    match dist_with(&self.solver, u, v) {
                        Ok(d) if d > 0 => fail.push(|| format!("dist({}, {}) = {d} > 0", g.name(u), g.name(v))),
                        Ok(d) => {
                            let related = partition.class_of(u) == partition.class_of(v);
                            if related != (d == 0) {
                                fail.push(|| format!("{} and {}: dist {d}, related {related}", g.name(u), g.name(v)));
                            }
                        }
                        Err(e) => fail.error("dist", e),
                    }
                }
            }
        }
        fail.into_item(FACTOR_CONNECTED_DISTANCE)
    }

    /// In factor-connected comb-bipartite grafts every spine-tooth pair is
    /// at distance `-1`. Applied to the graft and to the contracted grafts.
    pub fn check_spine_tooth_distance(&self) -> CheckItem {
        let mut fail = Failures::default();
        spine_tooth_distance(self.graft, &mut fail);
        for q in self.quotient_grafts() {
            spine_tooth_distance(q, &mut fail);
        }
        fail.into_item(SPINE_TOOTH_DISTANCE)
    }

    /// The factor-component of the root lies in the core, and its image in
    /// the contracted graft is factor-connected.
    pub fn check_component_image(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        let comps = factor_components_with(&self.solver);
        let ds = match self.decompositions() {
            Ok(ds) => ds,
            Err(e) => {
                fail.push(|| e);
                return fail.into_item(COMPONENT_IMAGE);
            }
        };
        for d in ds {
            let h = comps.iter().find(|c| c.vertices.contains(&d.root)).expect("components cover");
            if !h.vertices.is_subset(&d.core) {
                fail.push(|| format!("root {}: component {:?} leaves the core", g.name(d.root), h.vertices));
                continue;
            }
            let image: VertexSet = h
                .vertices
                .iter()
                .map(|&x| match d.quotient_index[x] {
                    Some(q) if d.level0.contains(&x) => q,
                    _ => d.components.iter().find(|k| k.vertices.contains(&x)).expect("core vertex").contracted,
                })
                .collect();
            let q = match d.quotient_graft() {
                Ok(q) => q,
                Err(e) => {
                    fail.error("contracted graft", e);
                    continue;
                }
            };
            if !factor_components(&q).iter().any(|c| image.is_subset(&c.vertices)) {
                fail.push(|| format!("root {}: image {image:?} is not factor-connected", g.name(d.root)));
            }
        }
        fail.into_item(COMPONENT_IMAGE)
    }

    /// Every weight `-1` path of a contracted graft from a level-zero
    /// vertex to `[K]` lifts to a path of weight at most `-1` ending at any
    /// chosen vertex of `K`.
    pub fn check_path_lifting(&self) -> CheckItem {
        let g = self.graph();
        let mut fail = Failures::default();
        let ds = match self.decompositions() {
            Ok(ds) => ds,
            Err(e) => {
                fail.push(|| e);
                return fail.into_item(PATH_LIFTING);
            }
        };
        for d in ds {
            let tooth = d.quotient_tooth();
            for u in d.quotient_spine() {
                let mut paths = Vec::new();
                for_each_simple_path(&d.quotient, u, |vs, es| {
                    let end = *vs.last().unwrap();
                    let p = Path { vertices: vs.to_vec(), edges: es.to_vec() };
                    if tooth.contains(&end) && d.quotient_path_weight(&p) == -1 {
                        paths.push(p);
                    }
                });
                for p in paths {
                    let k = &d.components[d.component_at(p.end()).expect("tooth vertex")];
                    let host_u = (0..g.vertex_count()).find(|&x| d.quotient_index[x] == Some(u)).unwrap();
                    for &v in &k.vertices {
                        match lift_negative_path(d, &p, v) {
                            Ok(lifted) => {
                                let w: i64 = lifted.edges.iter().map(|e| if d.join.contains(e) { -1 } else { 1 }).sum();
                                let valid = g.path(lifted.start(), &lifted.edges).is_ok();
                                if !valid || lifted.start() != host_u || lifted.end() != v || w > -1 {
                                    fail.push(|| {
                                        format!("root {}: lift to {} gave {:?} of weight {w}", g.name(d.root), g.name(v), lifted.vertices)
                                    });
                                }
                            }
                            Err(e) => fail.error("lift", e),
                        }
                    }
                }
            }
        }
        fail.into_item(PATH_LIFTING)
    }

    pub fn run(&self, name: &str) -> Option<CheckItem> {
        Some(match name {
            ORACLE_EQUIVALENCE => self.check_oracle_equivalence(),
            JOIN_INDEPENDENCE => self.check_join_independence(),
            CIRCUIT_CRITERION => self.check_circuit_criterion(),
            TRANSITIVITY => self.check_transitivity(),
            DISTANCE_DECOMPOSITION => self.check_distance_decomposition(),
            MATCHING_REDUCTION => self.check_matching_reduction(),
            REFINEMENT => self.check_refinement(),
            COMB_EQUIVALENCE => self.check_comb_equivalence(),
            COMB_PATH_TEETH => self.check_comb_path_teeth(),
            FACTOR_CONNECTED_DISTANCE => self.check_factor_connected_distance(),
            SPINE_TOOTH_DISTANCE => self.check_spine_tooth_distance(),
            COMPONENT_IMAGE => self.check_component_image(),
            PATH_LIFTING => self.check_path_lifting(),
            _ => return None,
        })
    }

    pub fn run_all(&self) -> Vec<CheckItem> {
        ALL_CHECKS.iter().map(|n| self.run(n).unwrap()).collect()
    }
}

/// Runs every check on one graft.
pub fn verify_graft(graft: &Graft) -> Result<Vec<CheckItem>> {
    Ok(Instance::new(graft)?.run_all())
}

fn with_oracle(graft: &Graft, fail: &mut Failures, body: impl FnOnce(&Oracle<'_>, &mut Failures)) {
    match Oracle::new(graft) {
        Ok(o) => body(&o, fail),
        Err(e) => fail.error("contracted graft oracle", e),
    }
}

fn join_degrees(g: &Graph, f: &EdgeSet) -> Vec<usize> {
    let mut deg = vec![0; g.vertex_count()];
    for &id in f {
        let e = g.edge(id).expect("own edge");
        deg[e.u] += 1;
        deg[e.v] += 1;
    }
    deg
}

/// `(spine, tooth)` for both orientations of the canonical 2-colouring.
fn orientations(g: &Graph) -> Vec<(VertexSet, VertexSet)> {
    let Some(colour) = g.bipartition() else { return Vec::new() };
    [true, false]
        .into_iter()
        .map(|c| {
            let (tooth, spine): (VertexSet, VertexSet) = g.vertices().partition(|&v| colour[v] == c);
            (spine, tooth)
        })
        .collect()
}

fn comb_equivalence(oracle: &Oracle<'_>, fail: &mut Failures, label: &str) {
    let graft = oracle.graft();
    let g = graft.graph();
    let joins = oracle.minimum_joins();
    let views = is_comb_bipartite(graft);
    let degrees: Vec<Vec<usize>> = joins.iter().map(|f| join_degrees(g, f)).collect();
    for (spine, tooth) in orientations(g) {
        if !tooth.iter().all(|&v| graft.is_terminal(v)) {
            continue;
        }
        let by_size = oracle.nu() == tooth.len();
        let some = degrees.iter().any(|d| tooth.iter().all(|&v| d[v] == 1));
        let every = degrees.iter().all(|d| tooth.iter().all(|&v| d[v] == 1));
        let recognised = views.iter().any(|w| w.spine == spine && w.tooth == tooth);
        if !(by_size == some && some == every && every == recognised) {
            fail.push(|| {
                format!(
                    "{label} {}, tooth {}: size {by_size}, some join {some}, every join {every}, recognised {recognised}",
                    g.describe(&g.vertices().collect()),
                    g.describe(&tooth)
                )
            });
        }
    }
}

fn comb_path_teeth(oracle: &Oracle<'_>, fail: &mut Failures) {
    let graft = oracle.graft();
    let g = graft.graph();
    for view in is_comb_bipartite(graft) {
        for f in oracle.minimum_joins() {
            for &s in &view.spine {
                for_each_simple_path(g, s, |vs, es| {
                    if !view.tooth.contains(vs.last().unwrap()) {
                        return;
                    }
                    let w: i64 = es.iter().map(|e| if f.contains(e) { -1 } else { 1 }).sum();
                    if w != -1 {
                        return;
                    }
                    for (i, v) in vs.iter().enumerate() {
                        if !view.tooth.contains(v) {
                            continue;
                        }
                        let around: Vec<&EdgeId> = es[i.saturating_sub(1)..(i + 1).min(es.len())].iter().collect();
                        let meets = around.iter().filter(|e| f.contains(e)).count();
                        if meets != 1 {
                            fail.push(|| format!("path {vs:?} meets the join {meets} times at tooth vertex {}", g.name(*v)));
                        }
                    }
                });
            }
        }
    }
}

fn spine_tooth_distance(graft: &Graft, fail: &mut Failures) {
    let g = graft.graph();
    let comps = factor_components(graft);
    if comps.len() != 1 {
        return;
    }
    let solver = JoinSolver::new(graft);
    for view in is_comb_bipartite(graft) {
        for &x in &view.spine {
            for &y in &view.tooth {
                match dist_with(&solver, x, y) {
                    Ok(-1) => {}
                    Ok(d) => fail.push(|| format!("dist({}, {}) = {d} in {:?}", g.name(x), g.name(y), g.names())),
                    Err(e) => fail.error("dist", e),
                }
            }
        }
    }
}
