use super::*;
use crate::gf2::rank_gf2;
use crate::graph::{complete_bipartite, complete_graph, Graph};
use crate::planar::is_compatible_mod2;

fn budget() -> SolverBudget {
    SolverBudget { max_nodes: 20_000_000, time_cap: Duration::from_secs(120), threads: 1 }
}

fn check_witness(w: &Witness, rank_bound: usize) {
    assert!(w.report.is_embedding);
    assert!(rank_gf2(&w.matrix) <= rank_bound);
    match w.surface() {
        SurfaceSpec::Orientable(_) => assert!(w.matrix.symmetry_class().is_even),
        SurfaceSpec::Nonorientable(_) => assert!(w.matrix.symmetry_class().is_odd),
    }
    assert!(verify_geometric(&w.surface_drawing, PassMode::Z2).unwrap().is_embedding);
}

#[test]
fn planar_graphs_at_genus_zero() {
    for g in [complete_graph(4).unwrap(), complete_bipartite(2, 5).unwrap(), Graph::new(5, vec![(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()] {
        let out = z2_embeddable_orientable(&g, 0, &budget()).unwrap();
        check_witness(out.witness().expect("planar graph"), 0);
        let out = z2_embeddable_nonorientable(&g, 1, &budget()).unwrap();
        check_witness(out.witness().expect("planar graph"), 1);
    }
}

#[test]
fn k5_and_k33() {
    for g in [complete_graph(5).unwrap(), complete_bipartite(3, 3).unwrap()] {
        assert!(z2_embeddable_orientable(&g, 0, &budget()).unwrap().is_no());
        let out = z2_embeddable_orientable(&g, 1, &budget()).unwrap();
        let w = out.witness().expect("torus");
        check_witness(w, 2);
        assert!(!w.parallel);
        let out = z2_embeddable_nonorientable(&g, 1, &budget()).unwrap();
        check_witness(out.witness().expect("projective plane"), 1);
        // Monotone in the parameter.
        assert!(z2_embeddable_orientable(&g, 2, &budget()).unwrap().is_yes());
    }
}

#[test]
fn euler_characteristic_variant() {
    let k5 = complete_graph(5).unwrap();
    let k33 = complete_bipartite(3, 3).unwrap();
    assert!(z2_embeddable_euler(&k5, 2, &budget()).unwrap().is_no());
    assert!(z2_embeddable_euler(&k5, 0, &budget()).unwrap().is_yes());
    let out = z2_embeddable_euler(&k33, 1, &budget()).unwrap();
    assert_eq!(out.witness().unwrap().surface(), SurfaceSpec::Nonorientable(1));
    assert!(z2_embeddable_euler(&k33, 3, &budget()).is_err());
}

#[test]
fn genus_scan() {
    let run = |g: &Graph, kind| match z2_genus(g, kind, 3, &budget()).unwrap() {
        GenusOutcome::Found(p, _) => p,
        other => panic!("unexpected {other:?}"),
    };
    assert_eq!(run(&complete_graph(4).unwrap(), SurfaceKind::Orientable), 0);
    assert_eq!(run(&complete_graph(5).unwrap(), SurfaceKind::Orientable), 1);
    assert_eq!(run(&complete_bipartite(3, 3).unwrap(), SurfaceKind::Orientable), 1);
    assert_eq!(run(&complete_graph(5).unwrap(), SurfaceKind::Nonorientable), 1);
    assert!(matches!(
        z2_genus(&complete_graph(5).unwrap(), SurfaceKind::Orientable, 0, &budget()).unwrap(),
        GenusOutcome::AboveMax
    ));
}

#[test]
fn exhausted_budget_is_unknown() {
    let g = complete_bipartite(3, 4).unwrap();
    let tiny = SolverBudget { max_nodes: 3, ..budget() };
    assert!(matches!(z2_embeddable_orientable(&g, 1, &tiny).unwrap(), Outcome::Unknown));
    assert!(matches!(z2_genus(&g, SurfaceKind::Orientable, 2, &tiny).unwrap(), GenusOutcome::Unknown(_)));
    assert!(z2_embeddable_orientable(&g, 1, &SolverBudget { threads: 0, ..budget() }).is_err());
}

#[test]
fn parallel_search() {
    let par = SolverBudget { threads: 4, ..budget() };
    let k5 = complete_graph(5).unwrap();
    let out = z2_embeddable_orientable(&k5, 1, &par).unwrap();
    let w = out.witness().unwrap();
    assert!(w.parallel);
    check_witness(w, 2);
    assert!(z2_embeddable_orientable(&k5, 0, &par).unwrap().is_no());
    assert!(z2_embeddable_nonorientable(&complete_bipartite(3, 3).unwrap(), 1, &par).unwrap().is_yes());
}

#[test]
fn genus_zero_matches_zero_compatibility() {
    // Random graphs with up to 12 edges.
    let mut seed = 3u64;
    let mut next = |m: u64| {
        seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        (seed >> 33) % m
    };
    for _ in 0..40 {
        let n = 4 + next(3) as usize;
        let mut edges = Vec::new();
        for u in 0..n {
            for v in u + 1..n {
                if edges.len() < 12 && next(3) != 0 {
                    edges.push((u, v));
                }
            }
        }
        let g = Graph::new(n, edges).unwrap();
        let zero = crate::planar::ParityMatrix::zero(&g);
        let compatible = is_compatible_mod2(&g, &zero).unwrap().is_some();
        let out = z2_embeddable_orientable(&g, 0, &budget()).unwrap();
        assert_eq!(out.is_yes(), compatible);
        assert_eq!(out.is_no(), !compatible);
    }
}
