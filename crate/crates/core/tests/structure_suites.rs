//! Each structural property checked over every graft on at most five
//! vertices, with a count showing the property was actually exercised.

use graftkl::oracle::suite::{self, Instance};
use graftkl::oracle::{find_proper_refinement_witness, instance_stream, StreamParams};
use graftkl::structure::factor_components;
use graftkl::{is_comb_bipartite, Graft, Graph};

fn stream() -> Vec<Graft> {
    instance_stream(&StreamParams::exhaustive(5)).unwrap().collect()
}

fn run(check: &str) -> Vec<Graft> {
    let grafts = stream();
    for g in &grafts {
        let item = Instance::new(g).unwrap().run(check).unwrap();
        assert!(item.passed, "{}: {}\n{:?}", item.name, item.detail, g);
    }
    grafts
}

#[test]
fn comb_recognition_agrees_for_some_and_every_join() {
    let grafts = run(suite::COMB_EQUIVALENCE);
    let combs = grafts.iter().filter(|g| !is_comb_bipartite(g).is_empty()).count();
    assert!(combs >= 40, "only {combs} comb-bipartite grafts");
}

#[test]
fn weight_minus_one_paths_meet_each_tooth_once() {
    let grafts = run(suite::COMB_PATH_TEETH);
    assert!(grafts.iter().any(|g| is_comb_bipartite(g).iter().any(|v| v.tooth.len() >= 2)));
}

#[test]
fn factor_connected_vertices_are_never_far_apart() {
    let grafts = run(suite::FACTOR_CONNECTED_DISTANCE);
    let nontrivial = grafts.iter().filter(|g| factor_components(g).iter().any(|h| h.vertices.len() >= 3)).count();
    assert!(nontrivial > 100);
}

#[test]
fn spine_tooth_pairs_sit_at_distance_minus_one() {
    let grafts = run(suite::SPINE_TOOTH_DISTANCE);
    let exercised = grafts
        .iter()
        .filter(|g| factor_components(g).len() == 1 && !is_comb_bipartite(g).is_empty() && g.graph().vertex_count() > 1)
        .count();
    assert!(exercised > 0);
}

#[test]
fn root_component_maps_into_one_factor_component() {
    let grafts = run(suite::COMPONENT_IMAGE);
    let with_components = grafts
        .iter()
        .filter(|g| {
            let inst = Instance::new(g).unwrap();
            inst.decompositions().unwrap().iter().any(|d| !d.components.is_empty() && !d.level0.is_empty())
        })
        .count();
    assert!(with_components > 100);
}

#[test]
fn negative_paths_lift_to_the_host() {
    let grafts = run(suite::PATH_LIFTING);
    let multi = grafts
        .iter()
        .filter(|g| {
            let inst = Instance::new(g).unwrap();
            inst.decompositions().unwrap().iter().any(|d| d.components.iter().any(|k| k.vertices.len() >= 2))
        })
        .count();
    assert!(multi > 50, "lifting rarely crosses a component with interior: {multi}");
}

#[test]
fn decomposition_claims_hold_for_every_join_and_root() {
    run(suite::DISTANCE_DECOMPOSITION);
}

#[test]
fn refinement_witness_search() {
    let square = Graft::full(Graph::from_edges(&[("1", "2"), ("2", "3"), ("3", "4"), ("4", "1")]).unwrap()).unwrap();
    assert!(find_proper_refinement_witness([square]).unwrap().is_none());
    // a single factor-component spanning everything has nothing to refine
    let spanning = stream().into_iter().filter(|g| factor_components(g).len() == 1);
    assert!(find_proper_refinement_witness(spanning).unwrap().is_none());
    let six = instance_stream(&StreamParams::exhaustive(6)).unwrap();
    let (g, h) = find_proper_refinement_witness(six).unwrap().expect("a witness on six vertices");
    let entry = graftkl::refinement_report(&g).unwrap().into_iter().find(|e| e.component == h).unwrap();
    assert!(entry.refines && entry.proper && entry.global.len() > entry.local.len());
}
