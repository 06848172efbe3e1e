//! Prisms `G □ K_2`: Hamilton cycles through two vertical edges in prisms
//! over small circuit graphs, and spanning paths in prisms over truncations.
//!
//! A prism vertex is a base vertex `v` or its copy `v* = v + offset`, where
//! `offset` is the capacity of the base graph.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::circuit::outer_cycle;
use crate::graph::{PlaneGraph, WalkSeq, V};

mod ham;
mod path;

pub use ham::{prism_ham_bipartite, prism_ham_near_tri, verify_ham_cycle};
pub use path::{prism_spanning_path, PrismMode, PrismPath};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrismGraph {
    pub base: PlaneGraph,
    pub offset: V,
}

impl PrismGraph {
    pub fn star(&self, v: V) -> V {
        v + self.offset
    }

    /// The base vertex under `x` and whether `x` is a starred copy.
    pub fn split(&self, x: V) -> (V, bool) {
        if x >= self.offset {
            (x - self.offset, true)
        } else {
            (x, false)
        }
    }

    pub fn mate(&self, x: V) -> V {
        match self.split(x) {
            (v, true) => v,
            (v, false) => self.star(v),
        }
    }

    pub fn has_vertex(&self, x: V) -> bool {
        self.base.has_vertex(self.split(x).0)
    }

    pub fn vertices(&self) -> Vec<V> {
        let b: Vec<V> = self.base.vertices().collect();
        b.iter().copied().chain(b.iter().map(|&v| self.star(v))).collect()
    }

    pub fn vertex_count(&self) -> usize {
        2 * self.base.vertex_count()
    }

    pub fn edge_count(&self) -> usize {
        2 * self.base.edge_count() + self.base.vertex_count()
    }

    pub fn neighbours(&self, x: V) -> Vec<V> {
        let (v, s) = self.split(x);
        let mut out: Vec<V> = self.base.rotation(v).iter().map(|&w| if s { self.star(w) } else { w }).collect();
        out.push(self.mate(x));
        out
    }

    pub fn has_edge(&self, x: V, y: V) -> bool {
        if !self.has_vertex(x) || !self.has_vertex(y) {
            return false;
        }
        let ((a, sa), (b, sb)) = (self.split(x), self.split(y));
        if a == b {
            return sa != sb;
        }
        sa == sb && self.base.has_edge(a, b)
    }

    pub fn is_vertical(&self, x: V, y: V) -> bool {
        self.has_vertex(x) && self.mate(x) == y
    }

    /// `v` or `v*`.
    pub fn label(&self, x: V) -> String {
        match self.split(x) {
            (v, true) => format!("{v}*"),
            (v, false) => v.to_string(),
        }
    }

    pub fn parse_label(&self, s: &str) -> Option<V> {
        match s.strip_suffix('*') {
            Some(v) => v.parse().ok().map(|v| self.star(v)),
            None => s.parse().ok(),
        }
    }
}

/// The prism over `g`.
pub fn prism(g: &PlaneGraph) -> PrismGraph {
    PrismGraph { base: g.clone(), offset: g.cap() }
}

/// Every bounded face is a triangle and the outer face is bounded by a cycle.
pub fn is_near_triangulation(g: &PlaneGraph) -> bool {
    if !g.is_connected() || outer_cycle(g).is_none() {
        return false;
    }
    let faces = g.faces();
    faces.walks.iter().enumerate().filter(|&(i, _)| Some(i) != faces.outer).all(|(_, w)| {
        let distinct: BTreeSet<V> = w.iter().copied().collect();
        w.len() == 3 && distinct.len() == 3
    })
}

/// `p` is an open path of `h` through every prism vertex exactly once.
pub fn verify_spanning_path(h: &PrismGraph, p: &WalkSeq) -> bool {
    let distinct: BTreeSet<V> = p.verts.iter().copied().collect();
    !p.closed
        && distinct.len() == p.verts.len()
        && p.verts.len() == h.vertex_count()
        && p.verts.iter().all(|&x| h.has_vertex(x))
        && p.verts.windows(2).all(|w| h.has_edge(w[0], w[1]))
}

/// Serialized form of a prism walk: labels `v` and `v*`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrismWalkJson {
    pub verts: Vec<String>,
    pub closed: bool,
}

impl PrismWalkJson {
    pub fn from_walk(h: &PrismGraph, w: &WalkSeq) -> Self {
        PrismWalkJson { verts: w.verts.iter().map(|&x| h.label(x)).collect(), closed: w.closed }
    }

    pub fn to_walk(&self, h: &PrismGraph) -> Option<WalkSeq> {
        let verts = self.verts.iter().map(|s| h.parse_label(s)).collect::<Option<Vec<V>>>()?;
        Some(WalkSeq { verts, closed: self.closed })
    }
}

#[cfg(test)]
mod tests;
