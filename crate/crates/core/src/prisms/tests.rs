use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::*;
use crate::connectivity::is_ks_connected;
use crate::error::Error;
use crate::nets::builtin_families;
use crate::nets::random::{random_bipartite_circuit_graph, random_near_triangulation};

fn k4() -> PlaneGraph {
    PlaneGraph::from_rotation(
        vec![(0, vec![1, 3, 2]), (1, vec![2, 3, 0]), (2, vec![0, 3, 1]), (3, vec![0, 1, 2])],
        Some((0, 1)),
    )
    .unwrap()
}

fn wheel(n: usize) -> PlaneGraph {
    let mut rot = Vec::new();
    for i in 0..n {
        rot.push((i, vec![(i + 1) % n, n, (i + n - 1) % n]));
    }
    rot.push((n, (0..n).collect()));
    PlaneGraph::from_rotation(rot, Some((0, 1))).unwrap()
}

fn cycle(n: usize) -> PlaneGraph {
    let rot: Vec<(V, Vec<V>)> = (0..n).map(|i| (i, vec![(i + 1) % n, (i + n - 1) % n])).collect();
    PlaneGraph::from_rotation(rot, Some((0, 1))).unwrap()
}

fn edge() -> PlaneGraph {
    PlaneGraph::from_rotation(vec![(0, vec![1]), (1, vec![0])], Some((0, 1))).unwrap()
}

/// Cube as a plane graph: outer square 0..3, inner square 4..7.
fn cube() -> PlaneGraph {
    let mut rot = Vec::new();
    for i in 0..4 {
        rot.push((i, vec![(i + 1) % 4, i + 4, (i + 3) % 4]));
    }
    for i in 0..4 {
        rot.push((i + 4, vec![4 + (i + 1) % 4, 4 + (i + 3) % 4, i]));
    }
    PlaneGraph::from_rotation(rot, Some((0, 1))).unwrap()
}

#[test]
fn prism_counts() {
    let h = prism(&edge());
    assert_eq!((h.vertex_count(), h.edge_count()), (4, 4));
    let h = prism(&k4().remove_vertices(&BTreeSet::from([3])));
    assert_eq!((h.vertex_count(), h.edge_count()), (6, 9));
    let h = prism(&k4());
    assert_eq!((h.vertex_count(), h.edge_count()), (8, 16));
    // verticals form a perfect matching
    let verts = h.vertices();
    assert!(verts.iter().all(|&x| verts.iter().filter(|&&y| h.is_vertical(x, y)).count() == 1));
    assert_eq!(h.parse_label(&h.label(h.star(2))), Some(h.star(2)));
}

#[test]
fn near_triangulation_examples() {
    assert!(is_near_triangulation(&wheel(5)));
    assert!(is_near_triangulation(&k4()));
    assert!(!is_near_triangulation(&cycle(5)));
    assert!(!is_near_triangulation(&edge()));
}

#[test]
fn bipartite_prism_cycles() {
    let e = edge();
    let c = prism_ham_bipartite(&e, 0, 1).unwrap();
    assert!(verify_ham_cycle(&prism(&e), &c, 0, 1));
    for g in [cycle(4), cube()] {
        let h = prism(&g);
        let ow = g.outer_walk_verts();
        for &u in &ow {
            for &v in ow.iter().filter(|&&v| v != u) {
                let c = prism_ham_bipartite(&g, u, v).unwrap();
                assert!(verify_ham_cycle(&h, &c, u, v));
            }
        }
    }
    assert!(matches!(prism_ham_bipartite(&k4(), 0, 1), Err(Error::PreconditionFailed(_))));
}

#[test]
fn near_triangulation_prism_cycles() {
    for g in [k4().remove_vertices(&BTreeSet::from([3])), k4(), wheel(5)] {
        let h = prism(&g);
        let ow = g.outer_walk_verts();
        let c = prism_ham_near_tri(&g, ow[0], ow[1]).unwrap();
        assert!(verify_ham_cycle(&h, &c, ow[0], ow[1]));
        let c = prism_ham_near_tri(&g, ow[0], ow[2]).unwrap();
        assert!(verify_ham_cycle(&h, &c, ow[0], ow[2]));
    }
    assert!(matches!(prism_ham_near_tri(&cycle(5), 0, 2), Err(Error::PreconditionFailed(_))));
}

#[test]
fn spanning_path_checker() {
    let h = prism(&edge());
    assert!(verify_spanning_path(&h, &WalkSeq::open(vec![0, 2, 3, 1])));
    assert!(!verify_spanning_path(&h, &WalkSeq::open(vec![0, 2, 0, 1])));
    assert!(!verify_spanning_path(&h, &WalkSeq::open(vec![0, 2, 3])));
    assert!(!verify_spanning_path(&h, &WalkSeq::closed(vec![0, 2, 3, 1])));
}

#[test]
fn prism_pipelines() {
    let cases = [
        ("bipartite-ladder", PrismMode::Bipartite),
        ("bipartite-radial", PrismMode::Bipartite),
        ("radial-triangular", PrismMode::Triangulation),
    ];
    for (name, mode) in cases {
        let f = builtin_families(name, &Default::default(), 7).unwrap();
        for k in 1..=4 {
            let lvl = f.level(k).unwrap();
            let net = lvl.net.unwrap();
            let u = if net.x.is_empty() { net.c(1)[0] } else { net.x[0] };
            let r = prism_spanning_path(&f, u, k, mode).unwrap();
            assert!(verify_spanning_path(&r.prism, &r.path));
            assert_eq!(r.path.verts[0], u);
            println!("{name} level {k}: {} blocks ({} edges), {} loose", r.blocks, r.edge_blocks, r.loose_bridges.len());
        }
    }
}

#[test]
fn prism_mode_is_checked() {
    let f = builtin_families("radial-triangular", &Default::default(), 7).unwrap();
    assert!(matches!(prism_spanning_path(&f, 0, 2, PrismMode::Bipartite), Err(Error::PreconditionFailed(_))));
}

#[test]
fn triangulated_levels_are_3_c1_connected() {
    let f = builtin_families("radial-triangular", &Default::default(), 7).unwrap();
    for k in 1..=5 {
        let net = f.level(k).unwrap().net.unwrap();
        let s: BTreeSet<V> = net.c(1).iter().copied().collect();
        assert!(is_ks_connected(&net.carrier, 3, &s).unwrap(), "level {k}");
    }
}

fn two_outer<R: Rng>(rng: &mut R, g: &PlaneGraph) -> (V, V) {
    let ow = g.outer_walk_verts();
    let i = rng.gen_range(0..ow.len());
    let j = (i + rng.gen_range(1..ow.len())) % ow.len();
    (ow[i], ow[j])
}

#[test]
fn random_bipartite_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(61);
    let mut sizes = BTreeSet::new();
    for _ in 0..60 {
        let g = random_bipartite_circuit_graph(&mut rng, 10);
        assert!(g.vertex_count() <= 10);
        sizes.insert(g.vertex_count());
        let (u, v) = two_outer(&mut rng, &g);
        let c = prism_ham_bipartite(&g, u, v).unwrap();
        assert!(verify_ham_cycle(&prism(&g), &c, u, v));
    }
    assert!(sizes.len() >= 3);
}

#[test]
fn random_near_triangulation_blocks() {
    let mut rng = ChaCha8Rng::seed_from_u64(62);
    for _ in 0..60 {
        let n = rng.gen_range(3..=10);
        let g = random_near_triangulation(&mut rng, n);
        assert!(is_near_triangulation(&g));
        let (u, v) = two_outer(&mut rng, &g);
        let c = prism_ham_near_tri(&g, u, v).unwrap();
        assert!(verify_ham_cycle(&prism(&g), &c, u, v));
    }
}
