//! Face-list construction of rings and strips.
//!
//! Families are grown one strip at a time between an inner side (a ring or a
//! path) and a fresh outer side. Each strip face sits between two consecutive
//! spokes and is described by how far it advances along the inner side (`k`)
//! and the outer side (`m`).

use std::collections::BTreeSet;

use crate::graph::V;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Step {
    pub k: usize,
    pub m: usize,
    /// Put a new vertex inside the face, joined to every corner.
    pub pocket: bool,
}

pub(crate) const fn step(k: usize, m: usize) -> Step {
    Step { k, m, pocket: false }
}

#[derive(Debug, Clone, Default)]
pub(crate) struct Layout {
    pub next: V,
    /// Finite faces, each counterclockwise.
    pub faces: Vec<Vec<V>>,
}

pub(crate) struct StripOut {
    pub outer: Vec<V>,
    /// Outer vertices with a spoke to the inner side.
    pub spoked: BTreeSet<V>,
}

impl Layout {
    pub fn fresh(&mut self) -> V {
        self.next += 1;
        self.next - 1
    }

    pub fn fresh_n(&mut self, n: usize) -> Vec<V> {
        (0..n).map(|_| self.fresh()).collect()
    }

    /// Adds a strip outside `inner`, which runs clockwise. A cyclic inner side
    /// is a ring; otherwise it is a path whose end spokes join its ends to
    /// the ends of the new outer path.
    pub fn strip(&mut self, inner: &[V], cyclic: bool, steps: &[Step]) -> StripOut {
        let a = inner.len();
        let sum_k: usize = steps.iter().map(|s| s.k).sum();
        let sum_m: usize = steps.iter().map(|s| s.m).sum();
        assert_eq!(sum_k, if cyclic { a } else { a - 1 }, "steps must cover the inner side");
        let b = if cyclic { sum_m } else { sum_m + 1 };
        let outer = self.fresh_n(b);
        let ix = |i: usize, n: usize| if cyclic { i % n } else { i };
        let mut spoked = BTreeSet::new();
        let (mut p, mut q) = (0usize, 0usize);
        spoked.insert(outer[0]);
        for s in steps {
            assert!(s.k + s.m >= 1);
            let mut face: Vec<V> = (0..=s.k).map(|t| inner[ix(p + t, a)]).collect();
            face.extend((0..=s.m).rev().map(|t| outer[ix(q + t, b)]));
            p += s.k;
            q += s.m;
            spoked.insert(outer[ix(q, b)]);
            if s.pocket {
                let z = self.fresh();
                let n = face.len();
                for t in 0..n {
                    self.faces.push(vec![face[t], face[(t + 1) % n], z]);
                }
            } else {
                self.faces.push(face);
            }
        }
        StripOut { outer, spoked }
    }
}

/// Rotates a ring so that it starts at position `i`.
pub(crate) fn rotate_to(ring: &[V], i: usize) -> Vec<V> {
    let n = ring.len();
    (0..n).map(|t| ring[(i + t) % n]).collect()
}

/// Triangulated strip steps spreading `b` outer advances evenly against `a`
/// inner ones.
pub(crate) fn zipper(a: usize, b: usize) -> Vec<Step> {
    let (mut i, mut j) = (0usize, 0usize);
    let mut out = Vec::with_capacity(a + b);
    while i < a || j < b {
        if i < a && (j == b || (i + 1) * b <= (j + 1) * a) {
            out.push(step(1, 0));
            i += 1;
        } else {
            out.push(step(0, 1));
            j += 1;
        }
    }
    out
}
