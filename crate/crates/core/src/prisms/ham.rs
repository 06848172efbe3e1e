//! Exact search for Hamilton cycles in small prisms that use two given
//! vertical edges.

use std::collections::{BTreeSet, HashSet};

use crate::circuit::is_circuit_block;
use crate::error::{Error, Result};
use crate::graph::{PlaneGraph, WalkSeq, V};

use super::{is_near_triangulation, prism, PrismGraph};

/// Largest base graph the search accepts.
pub const MAX_BASE: usize = 16;
const STATE_BUDGET: usize = 5_000_000;

/// A Hamilton cycle of the prism over the bipartite circuit graph `g` using
/// the vertical edges at `u` and `v`. Vertex ids follow [`prism`].
pub fn prism_ham_bipartite(g: &PlaneGraph, u: V, v: V) -> Result<WalkSeq> {
    if g.bipartition().is_none() {
        return Err(Error::PreconditionFailed("not bipartite".into()));
    }
    if !is_circuit_block(g) {
        return Err(Error::PreconditionFailed("not a circuit graph".into()));
    }
    ham_through(g, u, v)
}

/// As [`prism_ham_bipartite`] for a near-triangulation.
pub fn prism_ham_near_tri(g: &PlaneGraph, u: V, v: V) -> Result<WalkSeq> {
    if !is_near_triangulation(g) {
        return Err(Error::PreconditionFailed("not a near-triangulation".into()));
    }
    ham_through(g, u, v)
}

/// `c` is a Hamilton cycle of `h` containing `uu*` and `vv*`.
pub fn verify_ham_cycle(h: &PrismGraph, c: &WalkSeq, u: V, v: V) -> bool {
    let distinct: BTreeSet<V> = c.verts.iter().copied().collect();
    let steps = c.steps();
    let uses = |a: V, b: V| steps.iter().any(|&(x, y)| (x, y) == (a, b) || (y, x) == (a, b));
    c.closed
        && distinct.len() == c.verts.len()
        && c.verts.len() == h.vertex_count()
        && c.verts.iter().all(|&x| h.has_vertex(x))
        && steps.iter().all(|&(a, b)| h.has_edge(a, b))
        && uses(u, h.star(u))
        && uses(v, h.star(v))
}

fn ham_through(g: &PlaneGraph, u: V, v: V) -> Result<WalkSeq> {
    if u == v {
        return Err(Error::PreconditionFailed("u and v must differ".into()));
    }
    let ow = g.outer_walk_verts();
    if !ow.contains(&u) || !ow.contains(&v) {
        return Err(Error::PreconditionFailed(format!("{u} and {v} must lie on the outer walk")));
    }
    let n = g.vertex_count();
    if n > MAX_BASE {
        return Err(Error::PreconditionFailed(format!("{n} base vertices, the search takes at most {MAX_BASE}")));
    }
    let h = prism(g);
    let verts = h.vertices();
    let idx = |x: V| verts.iter().position(|&y| y == x).expect("prism vertex");
    let adj: Vec<Vec<usize>> = verts
        .iter()
        .map(|&x| {
            let mut a: Vec<usize> = h.neighbours(x).into_iter().map(idx).collect();
            a.sort_unstable();
            a
        })
        .collect();
    let mate: Vec<usize> = verts.iter().map(|&x| idx(h.mate(x))).collect();
    let start = idx(u);
    let forced = [idx(v), idx(h.star(v))];
    let mut s = Search { adj, mate, start, forced, failed: HashSet::new() };
    let first = idx(h.star(u));
    let mut path = vec![start, first];
    let mask = (1u64 << start) | (1u64 << first);
    if !s.dfs(&mut path, mask)? {
        return Err(Error::SearchExhausted(format!("no Hamilton cycle through {u}{u}* and {v}{v}*")));
    }
    Ok(WalkSeq::closed(path.into_iter().map(|i| verts[i]).collect()))
}

struct Search {
    adj: Vec<Vec<usize>>,
    mate: Vec<usize>,
    start: usize,
    forced: [usize; 2],
    failed: HashSet<(usize, u64)>,
}

impl Search {
    fn dfs(&mut self, path: &mut Vec<usize>, mask: u64) -> Result<bool> {
        let n = self.adj.len();
        let cur = *path.last().expect("nonempty");
        let full = (1u64 << n) - 1;
        if mask == full {
            return Ok(path.len() > 2 && self.adj[cur].contains(&self.start));
        }
        if !self.failed.insert((cur, mask)) {
            return Ok(false);
        }
        if self.failed.len() > STATE_BUDGET {
            return Err(Error::SearchExhausted("state budget exceeded".into()));
        }
        if !self.viable(cur, mask) {
            return Ok(false);
        }
        let free = |w: usize| mask >> w & 1 == 0;
        let next: Vec<usize> = if self.forced.contains(&cur) && free(self.mate[cur]) {
            vec![self.mate[cur]]
        } else {
            self.adj[cur].iter().copied().filter(|&w| free(w)).collect()
        };
        for w in next {
            path.push(w);
            if self.dfs(path, mask | 1u64 << w)? {
                return Ok(true);
            }
            path.pop();
        }
        Ok(false)
    }

    /// Unvisited vertices must stay connected to `cur` and keep two usable
    /// neighbours each.
    fn viable(&self, cur: usize, mask: u64) -> bool {
        let n = self.adj.len();
        let free = |w: usize| mask >> w & 1 == 0;
        for w in (0..n).filter(|&w| free(w)) {
            let usable = self.adj[w].iter().filter(|&&z| free(z) || z == cur || z == self.start).count();
            if usable < 2 {
                return false;
            }
        }
        let mut seen = mask;
        let mut stack = vec![cur];
        while let Some(x) = stack.pop() {
            for &w in &self.adj[x] {
                if seen >> w & 1 == 0 {
                    seen |= 1u64 << w;
                    stack.push(w);
                }
            }
        }
        seen == (1u64 << n) - 1
    }
}
