//! Radial and ladder nets: finite prefixes, tightness and truncations.
//!
//! A net prefix lives inside a carrier graph, which is the finite part
//! `I(C_m)` of some generated infinite family. Cycles are stored clockwise.

mod build;
pub mod families;
pub mod random;

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{bridges_of, Sub};
use crate::error::{Error, Result};
use crate::graph::{check_cycle, ek, inside_subgraph, Edge, PlaneGraph, V};

pub use families::{builtin_families, ChainPrefix, FamilyDescriptor, FamilyGen, FamilyKind, FamilyLevel, FAMILY_NAMES};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NetKind {
    Radial,
    Ladder,
}

#[derive(Debug, Clone)]
pub struct NetPrefix {
    pub kind: NetKind,
    pub carrier: PlaneGraph,
    /// `cycles[i - 1]` is `C_i`.
    pub cycles: Vec<Vec<V>>,
    /// `d[i]` is `D_i`. For ladders `d[0]` is `D_0`; radial nets leave it empty.
    pub d: Vec<Vec<V>>,
    /// Ladder endpoints `x_0..x_m` and `y_0..y_m`; empty for radial nets.
    pub x: Vec<V>,
    pub y: Vec<V>,
    /// Ladder only: `∂N[x_m, y_m]` listed from `x_m` to `y_m`.
    pub boundary: Vec<V>,
}

impl NetPrefix {
    pub fn m(&self) -> usize {
        self.cycles.len()
    }

    pub fn c(&self, i: usize) -> &[V] {
        &self.cycles[i - 1]
    }

    pub fn d(&self, i: usize) -> &[V] {
        &self.d[i]
    }

    /// `I(C_i)`. For a ladder, `I(C_0)` is the path `D_0`.
    pub fn inside(&self, i: usize) -> Result<PlaneGraph> {
        if i == 0 {
            return Ok(path_graph(&self.carrier, &self.d[0]));
        }
        inside_subgraph(&self.carrier, self.c(i))
    }

    /// The sub-structure `D_i` as a path (ladder) or cycle (radial).
    pub fn d_sub(&self, i: usize) -> Sub {
        match self.kind {
            NetKind::Radial if i > 0 => Sub::from_cycle(&self.d[i]),
            _ => Sub::from_path(&self.d[i]),
        }
    }

    /// The truncation `G_{r,s} = I(C_s) - (V(I(C_r)) - V(D_r))`.
    pub fn truncation(&self, r: usize, s: usize) -> Result<PlaneGraph> {
        if r > s || s > self.m() {
            return Err(Error::BadRange(format!("need 0 <= r <= s <= {}, got r = {r}, s = {s}", self.m())));
        }
        if s == 0 {
            if self.kind == NetKind::Radial {
                return Err(Error::BadRange("radial nets start at level 1".into()));
            }
            return self.inside(0);
        }
        let top = self.inside(s)?;
        if r == 0 {
            return Ok(top);
        }
        let keep: BTreeSet<V> = self.d[r].iter().copied().collect();
        let del: BTreeSet<V> = self.inside(r)?.vertices().filter(|v| !keep.contains(v)).collect();
        Ok(top.remove_vertices(&del))
    }

    /// For each vertex, the indices `i` with `v ∈ V(C_i)`.
    pub fn memberships(&self) -> BTreeMap<V, Vec<usize>> {
        let mut out: BTreeMap<V, Vec<usize>> = BTreeMap::new();
        for (i, c) in self.cycles.iter().enumerate() {
            for &v in c {
                out.entry(v).or_default().push(i + 1);
            }
        }
        out
    }

    /// Cycle, `D_i` and endpoint annotations for JSON export.
    pub fn annotations(&self) -> BTreeMap<String, Vec<V>> {
        let mut a = BTreeMap::new();
        for i in 1..=self.m() {
            a.insert(format!("C{i}"), self.c(i).to_vec());
        }
        for (i, d) in self.d.iter().enumerate() {
            if !d.is_empty() {
                a.insert(format!("D{i}"), d.clone());
            }
        }
        if self.kind == NetKind::Ladder {
            a.insert("x".into(), self.x.clone());
            a.insert("y".into(), self.y.clone());
            a.insert("boundary".into(), self.boundary.clone());
        }
        a
    }
}

pub(crate) fn path_graph(g: &PlaneGraph, p: &[V]) -> PlaneGraph {
    let edges: HashSet<Edge> = p.windows(2).map(|w| ek(w[0], w[1])).collect();
    let verts: BTreeSet<V> = p.iter().copied().collect();
    g.edge_subgraph(&edges, &verts, None)
}

fn cycle_edges(c: &[V]) -> BTreeSet<Edge> {
    (0..c.len()).map(|i| ek(c[i], c[(i + 1) % c.len()])).collect()
}

/// The vertex sequence of `A ∩ B` when that intersection is a non-empty path.
fn intersection_path(a_verts: &BTreeSet<V>, a_edges: &BTreeSet<Edge>, b_verts: &BTreeSet<V>, b_edges: &BTreeSet<Edge>) -> Option<Vec<V>> {
    let verts: BTreeSet<V> = a_verts.intersection(b_verts).copied().collect();
    let edges: Vec<Edge> = a_edges.intersection(b_edges).copied().collect();
    if verts.is_empty() || edges.len() + 1 != verts.len() {
        return None;
    }
    let mut adj: BTreeMap<V, Vec<V>> = verts.iter().map(|&v| (v, Vec::new())).collect();
    for &(p, q) in &edges {
        adj.get_mut(&p)?.push(q);
        adj.get_mut(&q)?.push(p);
    }
    if adj.values().any(|n| n.len() > 2) {
        return None;
    }
    let start = *adj.iter().find(|(_, n)| n.len() <= 1)?.0;
    let mut path = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let next = adj[&cur].iter().copied().find(|&w| w != prev);
        match next {
            Some(w) if path.len() < verts.len() => {
                path.push(w);
                prev = cur;
                cur = w;
            }
            _ => break,
        }
    }
    (path.len() == verts.len()).then_some(path)
}

fn ends(p: &[V]) -> [V; 2] {
    [p[0], p[p.len() - 1]]
}

/// Checks the net conditions on the available prefix.
pub fn verify_net_prefix(n: &NetPrefix) -> bool {
    net_prefix_problem(n).is_none()
}

/// The first violated net condition, if any.
pub fn net_prefix_problem(n: &NetPrefix) -> Option<String> {
    let m = n.m();
    if m == 0 {
        return Some("no cycles".into());
    }
    for i in 1..=m {
        if let Err(e) = check_cycle(&n.carrier, n.c(i)) {
            return Some(format!("C_{i}: {e}"));
        }
    }
    let mut insides = Vec::with_capacity(m);
    for i in 1..=m {
        match n.inside(i) {
            Ok(g) => insides.push(g),
            Err(e) => return Some(format!("I(C_{i}): {e}")),
        }
    }
    for i in 1..m {
        let (a, b) = (&insides[i - 1], &insides[i]);
        let be = b.edge_set();
        if !a.vertices().all(|v| b.has_vertex(v)) || !a.edges().iter().all(|e| be.contains(e)) {
            return Some(format!("I(C_{i}) is not contained in I(C_{})", i + 1));
        }
    }
    let last = &insides[m - 1];
    if last.vertex_count() != n.carrier.vertex_count() || last.edge_count() != n.carrier.edge_count() {
        return Some(format!("I(C_{m}) does not cover the carrier"));
    }
    let sets: Vec<BTreeSet<V>> = n.cycles.iter().map(|c| c.iter().copied().collect()).collect();
    let edges: Vec<BTreeSet<Edge>> = n.cycles.iter().map(|c| cycle_edges(c)).collect();
    match n.kind {
        NetKind::Radial => {
            for i in 0..m {
                for j in i + 1..m {
                    if !sets[i].is_disjoint(&sets[j]) {
                        return Some(format!("C_{} and C_{} meet", i + 1, j + 1));
                    }
                }
            }
            for i in 1..=m {
                if n.d[i] != n.cycles[i - 1] {
                    return Some(format!("D_{i} differs from C_{i}"));
                }
            }
        }
        NetKind::Ladder => {
            // P_i = C_i ∩ C_{i+1}; the last one is the recorded boundary segment
            let mut shared: Vec<Vec<V>> = Vec::new();
            for i in 0..m - 1 {
                match intersection_path(&sets[i], &edges[i], &sets[i + 1], &edges[i + 1]) {
                    Some(p) => shared.push(p),
                    None => return Some(format!("C_{} ∩ C_{} is not a non-empty path", i + 1, i + 2)),
                }
            }
            let bset: BTreeSet<V> = n.boundary.iter().copied().collect();
            let bedges: BTreeSet<Edge> = n.boundary.windows(2).map(|w| ek(w[0], w[1])).collect();
            if !bset.is_subset(&sets[m - 1]) || !bedges.is_subset(&edges[m - 1]) {
                return Some("boundary segment is not on C_m".into());
            }
            shared.push(n.boundary.clone());
            for i in 0..m - 1 {
                let p: BTreeSet<V> = shared[i].iter().copied().collect();
                let pe: BTreeSet<Edge> = shared[i].windows(2).map(|w| ek(w[0], w[1])).collect();
                let q: BTreeSet<V> = shared[i + 1].iter().copied().collect();
                let qe: BTreeSet<Edge> = shared[i + 1].windows(2).map(|w| ek(w[0], w[1])).collect();
                if !p.is_subset(&q) || !pe.is_subset(&qe) {
                    return Some(format!("C_{0} ∩ C_{1} is not inside C_{1} ∩ C_{2}", i + 1, i + 2, i + 3));
                }
                let qe2 = ends(&shared[i + 1]);
                if ends(&shared[i]).iter().any(|v| qe2.contains(v)) {
                    return Some(format!("C_{} ∩ C_{} shares an endpoint with the next intersection", i + 1, i + 2));
                }
            }
            for i in 1..=m {
                let p = &shared[i - 1];
                let (xi, yi) = (p[0], p[p.len() - 1]);
                if (n.x[i], n.y[i]) != (xi, yi) && (n.x[i], n.y[i]) != (yi, xi) {
                    return Some(format!("x_{i}, y_{i} are not the ends of C_{i} ∩ C_{}", i + 1));
                }
                let interior: BTreeSet<V> = p[1..p.len() - 1].iter().copied().collect();
                let dset: BTreeSet<V> = n.d[i].iter().copied().collect();
                let expect: BTreeSet<V> = sets[i - 1].difference(&interior).copied().collect();
                if dset != expect || ends(&n.d[i]) != [n.x[i], n.y[i]] {
                    return Some(format!("D_{i} is not C_{i} minus the interior of C_{i} ∩ C_{}", i + 1));
                }
            }
        }
    }
    None
}

/// Checks tightness of the prefix, and tightness with respect to `d0` when
/// given.
pub fn verify_tight_prefix(n: &NetPrefix, d0: Option<&[V]>) -> bool {
    tight_problem(n, d0).is_none()
}

pub fn tight_problem(n: &NetPrefix, d0: Option<&[V]>) -> Option<String> {
    let m = n.m();
    if m == 0 {
        return Some("no cycles".into());
    }
    let i1 = n.inside(1).ok()?;
    if n.kind == NetKind::Radial && (i1.vertex_count() != n.c(1).len() || i1.edge_count() != n.c(1).len()) {
        return Some("I(C_1) is not C_1".into());
    }
    if m >= 2 {
        let e1 = cycle_edges(n.c(1));
        let e2 = cycle_edges(n.c(2));
        let v1: BTreeSet<V> = n.c(1).iter().copied().collect();
        let meet = n.c(2).iter().any(|v| v1.contains(v));
        if meet && e1.is_disjoint(&e2) {
            return Some("C_1 ∩ C_2 is non-empty without an edge".into());
        }
    }
    for i in 1..m {
        let inner = n.inside(i).ok()?;
        let outer = n.inside(i + 1).ok()?;
        let del: BTreeSet<V> = inner.vertex_set();
        let q = outer.remove_vertices(&del);
        let d = n.d_sub(i + 1);
        for b in bridges_of(&q, &d) {
            if b.attachments.len() > 1 {
                return Some(format!("a D_{}-bridge outside I(C_{i}) has {} attachments", i + 1, b.attachments.len()));
            }
        }
    }
    if let Some(d0) = d0 {
        let del: BTreeSet<V> = d0.iter().copied().collect();
        let q = i1.remove_vertices(&del);
        for b in bridges_of(&q, &n.d_sub(1)) {
            if b.attachments.len() > 1 {
                return Some(format!("a D_1-bridge avoiding D_0 has {} attachments", b.attachments.len()));
            }
        }
    }
    None
}

/// The `(r, s)`-truncation of a generated family.
pub fn truncation(f: &FamilyGen, r: usize, s: usize) -> Result<PlaneGraph> {
    if s == 0 && f.kind() == FamilyKind::Radial {
        return Err(Error::BadRange("radial nets start at level 1".into()));
    }
    let level = f.level(s.max(1))?;
    let net = level.net.ok_or_else(|| Error::BadRange(format!("{} has no net", f.name)))?;
    net.truncation(r, s)
}

/// True unless some `x` before `y` on the path has `x ∈ V(C_{i+2}) - V(C_{i+1})`
/// and `y ∈ V(C_i)`.
pub fn is_forward(p: &[V], n: &NetPrefix) -> bool {
    let mem = n.memberships();
    let on = |v: V, i: usize| mem.get(&v).is_some_and(|l| l.contains(&i));
    // later[j] = cycle indices met strictly after position j
    let mut later: Vec<BTreeSet<usize>> = vec![BTreeSet::new(); p.len()];
    for j in (0..p.len().saturating_sub(1)).rev() {
        let mut s = later[j + 1].clone();
        if let Some(l) = mem.get(&p[j + 1]) {
            s.extend(l.iter().copied());
        }
        later[j] = s;
    }
    for (j, &x) in p.iter().enumerate() {
        for i in 1..=n.m().saturating_sub(2) {
            if on(x, i + 2) && !on(x, i + 1) && later[j].contains(&i) {
                return false;
            }
        }
    }
    true
}
