//! 2-walks: closed 2-walks in circuit blocks, the decomposition of a bridge
//! into a chain of circuit blocks, and splicing those walks into a Tutte path.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::find_small_cut_containing;
use crate::error::{Error, Result};
use crate::graph::{ek, Edge, PlaneGraph, WalkSeq, V};

mod block;
mod decomp;
pub(crate) mod splice;

pub use block::{two_walk_circuit_block, BlockWalk};
pub use decomp::{bridge_decomp_2att, bridge_decomp_3att};
pub use splice::{splice_two_walk, splice_two_walk_report, SpliceContext, SpliceReport, TwiceClass, TwiceUsed};

/// A walk together with how often it visits each vertex. A closed walk does
/// not repeat its first vertex at the end.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TwoWalk {
    #[serde(flatten)]
    pub walk: WalkSeq,
    pub multiplicity: BTreeMap<V, u8>,
}

impl TwoWalk {
    pub fn new(walk: WalkSeq) -> Self {
        let multiplicity = count(&walk.verts);
        TwoWalk { walk, multiplicity }
    }

    pub fn verts(&self) -> &[V] {
        &self.walk.verts
    }

    /// Vertices visited twice, ascending.
    pub fn twice_used(&self) -> Vec<V> {
        self.multiplicity.iter().filter(|(_, &m)| m >= 2).map(|(&v, _)| v).collect()
    }
}

fn count(verts: &[V]) -> BTreeMap<V, u8> {
    let mut m: BTreeMap<V, u8> = BTreeMap::new();
    for &v in verts {
        let e = m.entry(v).or_default();
        *e = e.saturating_add(1);
    }
    m
}

/// Why `w` fails to be a 2-walk of `g` whose repeated vertices all lie in
/// cuts of size at most `cut_bound`.
pub fn two_walk_problem(g: &PlaneGraph, w: &TwoWalk, cut_bound: usize) -> Option<String> {
    if w.walk.is_empty() {
        return Some("empty walk".into());
    }
    if count(&w.walk.verts) != w.multiplicity {
        return Some("multiplicity map does not match the walk".into());
    }
    if !w.walk.is_walk_in(g) {
        return Some("consecutive vertices are not adjacent".into());
    }
    if let Some(v) = g.vertices().find(|v| !w.multiplicity.contains_key(v)) {
        return Some(format!("vertex {v} is never visited"));
    }
    if let Some((&v, &m)) = w.multiplicity.iter().find(|(_, &m)| m > 2) {
        return Some(format!("vertex {v} is visited {m} times"));
    }
    for v in w.twice_used() {
        if find_small_cut_containing(g, v, cut_bound).is_none() {
            return Some(format!("vertex {v} is visited twice but lies in no cut of size <= {cut_bound}"));
        }
    }
    None
}

/// Spanning, multiplicity at most 2, and every twice-visited vertex in a
/// cut of at most `cut_bound` vertices.
pub fn verify_two_walk(g: &PlaneGraph, w: &TwoWalk, cut_bound: usize) -> bool {
    two_walk_problem(g, w, cut_bound).is_none()
}

/// The spanning tree formed by the edge along which `w` first reaches each
/// vertex.
pub fn walk_to_tree(g: &PlaneGraph, w: &TwoWalk) -> Result<PlaneGraph> {
    let Some(&first) = w.walk.verts.first() else {
        return Err(Error::NotSpanning("empty walk".into()));
    };
    if !w.walk.is_walk_in(g) {
        return Err(Error::NotSpanning("the walk leaves the graph".into()));
    }
    let mut seen: BTreeSet<V> = BTreeSet::from([first]);
    let mut edges: HashSet<Edge> = HashSet::new();
    for (a, b) in w.walk.steps() {
        if seen.insert(b) {
            edges.insert(ek(a, b));
        }
    }
    if let Some(v) = g.vertices().find(|v| !seen.contains(v)) {
        return Err(Error::NotSpanning(format!("vertex {v} is never visited")));
    }
    Ok(g.restrict(&seen, &edges, None))
}

/// Structural check that `t` is a spanning tree of `g` with maximum degree at
/// most `max_degree`.
pub fn is_spanning_tree(g: &PlaneGraph, t: &PlaneGraph, max_degree: usize) -> bool {
    t.vertex_set() == g.vertex_set()
        && t.edges().iter().all(|&(a, b)| g.has_edge(a, b))
        && t.edge_count() + 1 == t.vertex_count()
        && t.is_connected()
        && t.vertices().all(|v| t.degree(v) <= max_degree)
}

/// Maximum vertex degree, 0 for an empty graph.
pub fn max_degree(g: &PlaneGraph) -> usize {
    g.vertices().map(|v| g.degree(v)).max().unwrap_or(0)
}
