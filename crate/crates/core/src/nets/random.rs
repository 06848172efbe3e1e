//! Seeded random plane graphs used as test corpora.

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::circuit::{is_circuit_block, outer_cycle};
use crate::graph::{PlaneGraph, V};

/// Adds a new vertex `x` inside the face traced by `walk`, joined to the
/// corners `walk[i..=i + len - 1]` (indices taken cyclically). When the face
/// is the outer face the new outer face is the remainder.
pub fn insert_in_face(g: &PlaneGraph, walk: &[V], i: usize, len: usize, x: V, is_outer: bool) -> PlaneGraph {
    let n = walk.len();
    let mut rot: Vec<(V, Vec<V>)> = g.vertices().map(|v| (v, g.rotation(v).to_vec())).collect();
    let mut corners = Vec::with_capacity(len);
    for t in 0..len {
        let k = (i + t) % n;
        let (prev, v) = (walk[(k + n - 1) % n], walk[k]);
        let s = rot.iter().position(|(w, _)| *w == v).expect("vertex");
        let r = &mut rot[s].1;
        let p = r.iter().position(|&w| w == prev).expect("walk step");
        r.insert(p + 1, x);
        corners.push(v);
    }
    corners.reverse();
    rot.push((x, corners));
    let mut outer = g.outer_dart();
    if is_outer {
        outer = Some((walk[i % n], x));
    }
    PlaneGraph::from_rotation_unchecked(rot, outer)
}

/// A random circuit block on `n >= 3` vertices: a random near-triangulation
/// with some interior edges deleted while the result stays a circuit block.
pub fn random_circuit_block<R: Rng>(rng: &mut R, n: usize) -> PlaneGraph {
    let mut g = random_near_triangulation(rng, n);
    // thin out interior edges
    let tries = rng.gen_range(0..=n);
    for _ in 0..tries {
        let outer: BTreeSet<(V, V)> = match outer_cycle(&g) {
            Some(c) => (0..c.len()).map(|i| crate::graph::ek(c[i], c[(i + 1) % c.len()])).collect(),
            None => break,
        };
        let interior: Vec<(V, V)> = g.edges().into_iter().filter(|e| !outer.contains(e)).collect();
        let Some(&(a, b)) = interior.choose(rng) else { break };
        let keep: std::collections::HashSet<(V, V)> = g.edge_set().into_iter().filter(|&e| e != (a, b)).collect();
        let h = g.restrict(&g.vertex_set(), &keep, None);
        if is_circuit_block(&h) {
            g = h;
        }
    }
    g
}

/// A random near-triangulation on `n >= 3` vertices, grown from a triangle
/// by stacking vertices into inner faces or onto runs of the outer cycle.
pub fn random_near_triangulation<R: Rng>(rng: &mut R, n: usize) -> PlaneGraph {
    assert!(n >= 3);
    let mut g = PlaneGraph::from_rotation(vec![(0, vec![1, 2]), (1, vec![2, 0]), (2, vec![0, 1])], Some((0, 1)))
        .expect("triangle");
    for x in 3..n {
        let faces = g.faces();
        let outer_idx = faces.outer.expect("outer face");
        let inner: Vec<usize> = (0..faces.len()).filter(|&f| f != outer_idx).collect();
        if !inner.is_empty() && rng.gen_bool(0.45) {
            let f = *inner.choose(rng).expect("inner face");
            let w = faces.walks[f].clone();
            g = insert_in_face(&g, &w, 0, w.len(), x, false);
        } else {
            let w = faces.walks[outer_idx].clone();
            let max = (w.len() - 1).min(4);
            let len = rng.gen_range(2..=max.max(2));
            let i = rng.gen_range(0..w.len());
            g = insert_in_face(&g, &w, i, len, x, true);
        }
    }
    g
}

/// A random bipartite circuit graph with at most `n >= 4` vertices: either a
/// polyomino (a union of grid squares with a cycle as boundary) or an even
/// cycle with chords that cut it into even faces.
pub fn random_bipartite_circuit_graph<R: Rng>(rng: &mut R, n: usize) -> PlaneGraph {
    assert!(n >= 4);
    if rng.gen_bool(0.5) {
        if let Some(g) = random_polyomino(rng, n) {
            return g;
        }
    }
    let m = rng.gen_range(2..=n / 2);
    let rot: Vec<(V, Vec<V>)> = (0..2 * m).map(|i| (i, vec![(i + 1) % (2 * m), (i + 2 * m - 1) % (2 * m)])).collect();
    let mut g = PlaneGraph::from_rotation_unchecked(rot, Some((1, 0)));
    for _ in 0..rng.gen_range(0..=m) {
        let faces = g.faces();
        let big: Vec<usize> = (0..faces.len()).filter(|&f| Some(f) != faces.outer && faces.walks[f].len() >= 6).collect();
        let Some(&f) = big.choose(rng) else { break };
        let w = &faces.walks[f];
        let len = w.len();
        let i = rng.gen_range(0..len);
        let j = (i + 3 + 2 * rng.gen_range(0..=(len - 6) / 2)) % len;
        let fa = (w[(i + len - 1) % len], w[i]);
        let fb = (w[(j + len - 1) % len], w[j]);
        g = g.add_edge_in_face(fa, fb, g.outer_dart().expect("outer"));
    }
    g
}

fn random_polyomino<R: Rng>(rng: &mut R, n: usize) -> Option<PlaneGraph> {
    const W: i64 = 8;
    let mut cells: BTreeSet<(i64, i64)> = BTreeSet::from([(0, 0)]);
    let corners = |cells: &BTreeSet<(i64, i64)>| {
        cells.iter().flat_map(|&(x, y)| [(x, y), (x + 1, y), (x, y + 1), (x + 1, y + 1)]).collect::<BTreeSet<_>>()
    };
    for _ in 0..4 * n {
        let &(x, y) = cells.iter().collect::<Vec<_>>().choose(rng)?;
        let (dx, dy) = *[(1, 0), (-1, 0), (0, 1), (0, -1)].choose(rng)?;
        let mut next = cells.clone();
        next.insert((x + dx, y + dy));
        if corners(&next).len() <= n {
            cells = next;
        }
    }
    let id = |(x, y): (i64, i64)| ((y + W) * (2 * W + 1) + x + W) as V;
    let pts = corners(&cells);
    let has_edge = |a: (i64, i64), b: (i64, i64)| {
        // a unit segment is an edge if a cell lies on either side of it
        let (lo, hi) = (a.min(b), a.max(b));
        if lo.1 == hi.1 {
            cells.contains(&(lo.0, lo.1)) || cells.contains(&(lo.0, lo.1 - 1))
        } else {
            cells.contains(&(lo.0, lo.1)) || cells.contains(&(lo.0 - 1, lo.1))
        }
    };
    // clockwise with y pointing up: east, south, west, north
    let rot: Vec<(V, Vec<V>)> = pts
        .iter()
        .map(|&(x, y)| {
            let r = [(x + 1, y), (x, y - 1), (x - 1, y), (x, y + 1)]
                .into_iter()
                .filter(|&q| pts.contains(&q) && has_edge((x, y), q))
                .map(id)
                .collect();
            (id((x, y)), r)
        })
        .collect();
    let &(bx, by) = pts.iter().min_by_key(|&&(x, y)| (y, x))?;
    let g = PlaneGraph::from_rotation_unchecked(rot, Some((id((bx + 1, by)), id((bx, by)))));
    (is_circuit_block(&g) && g.bipartition().is_some()).then_some(g)
}

/// A random connected plane graph on `n >= 1` vertices: a random tree with
/// extra edges drawn inside random faces.
pub fn random_plane_graph<R: Rng>(rng: &mut R, n: usize, extra: usize) -> PlaneGraph {
    assert!(n >= 1);
    let mut g = PlaneGraph::from_rotation_unchecked(vec![(0, vec![])], None);
    if n == 1 {
        return g;
    }
    g = PlaneGraph::from_rotation(vec![(0, vec![1]), (1, vec![0])], Some((0, 1))).expect("edge");
    for x in 2..n {
        let faces = g.faces();
        let f = rng.gen_range(0..faces.len());
        let w = faces.walks[f].clone();
        let i = rng.gen_range(0..w.len());
        g = insert_in_face(&g, &w, i, 1, x, Some(f) == faces.outer);
    }
    for _ in 0..extra {
        let faces = g.faces();
        let f = rng.gen_range(0..faces.len());
        let w = &faces.walks[f];
        if w.len() < 4 {
            continue;
        }
        let i = rng.gen_range(0..w.len());
        let j = rng.gen_range(0..w.len());
        let (a, b) = (w[i], w[j]);
        if a == b || g.has_edge(a, b) {
            continue;
        }
        let len = w.len();
        let fa = (w[(i + len - 1) % len], a);
        let fb = (w[(j + len - 1) % len], b);
        let outer = if Some(f) == faces.outer { (a, b) } else { g.outer_dart().expect("outer") };
        g = g.add_edge_in_face(fa, fb, outer);
    }
    g
}
