//! Spanning paths in the prism over a truncation: the zigzag over a Tutte
//! path, with a Hamilton cycle of the prism over each bridge chain spliced in
//! at the representative's vertical edge.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::circuit::CircuitChain;
use crate::connectivity::{bridges_of, Sub};
use crate::error::{Error, Result};
use crate::extend::{ladder_in_net, radial_in_net, Side};
use crate::graph::{Edge, PlaneGraph, WalkSeq, V};
use crate::nets::{FamilyGen, NetKind};
use crate::walks::splice::with_bridge_chain;

use super::ham::{prism_ham_bipartite, prism_ham_near_tri};
use super::{is_near_triangulation, prism, verify_spanning_path, PrismGraph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PrismMode {
    Bipartite,
    Triangulation,
}

#[derive(Debug, Clone)]
pub struct PrismPath {
    pub prism: PrismGraph,
    pub path: WalkSeq,
    /// The Tutte path the zigzag follows.
    pub base_path: Vec<V>,
    /// Blocks spliced in, and how many of them were edges.
    pub blocks: usize,
    pub edge_blocks: usize,
    /// Bridges read as a chain without the decomposition lemma's connectivity.
    pub loose_bridges: Vec<Edge>,
}

/// A spanning path of the prism over the level-`k` truncation of `f`,
/// starting at `u`.
pub fn prism_spanning_path(f: &FamilyGen, u: V, k: usize, mode: PrismMode) -> Result<PrismPath> {
    match mode {
        PrismMode::Bipartite if !f.is_bipartite_family() => {
            return Err(Error::PreconditionFailed(format!("{} is not bipartite", f.name)))
        }
        PrismMode::Triangulation if !f.is_triangulated_family() => {
            return Err(Error::PreconditionFailed(format!("{} does not have triangular faces", f.name)))
        }
        _ => {}
    }
    let lvl = f.level(k)?;
    if !lvl.apex.is_empty() {
        return Err(Error::PreconditionFailed("apex families are not supported".into()));
    }
    let net = lvl.net.as_ref().ok_or_else(|| Error::PreconditionFailed(format!("{} has no net", f.name)))?;
    let (g, p, sdr, delta) = match net.kind {
        NetKind::Radial => {
            let run = radial_in_net(net, u)?;
            (net.carrier.clone(), run.path, run.sdr, Sub::from_cycle(net.c(1)).edges)
        }
        NetKind::Ladder => {
            let side = if u == net.x[0] {
                Side::X
            } else if u == net.y[0] {
                Side::Y
            } else {
                return Err(Error::PreconditionFailed(format!("{u} is neither x_0 nor y_0")));
            };
            let run = ladder_in_net(net, 0, k, side)?;
            (run.graph, run.path, run.sdr, Sub::from_path(&run.context).edges)
        }
    };
    if mode == PrismMode::Bipartite && g.bipartition().is_none() {
        return Err(Error::PreconditionFailed("the truncation is not bipartite".into()));
    }
    let h = prism(&g);
    let mut path = zigzag(&h, &p);
    let mut blocks = 0;
    let mut edge_blocks = 0;
    let mut loose = Vec::new();
    for br in bridges_of(&g, &Sub::from_path(&p)).into_iter().filter(|b| !b.trivial) {
        let a = *sdr
            .assignment
            .get(&br.key())
            .ok_or_else(|| Error::CertificationFailed(format!("bridge {:?} has no representative", br.key())))?;
        let ((detour, nb, ne), strict) = with_bridge_chain(&g, &br, a, &delta, |ch| chain_cycle(&h, ch, mode))?;
        if !strict {
            loose.push(br.key());
        }
        blocks += nb;
        edge_blocks += ne;
        splice_at(&mut path, &h, a, &detour)?;
    }
    let path = WalkSeq::open(path);
    if !verify_spanning_path(&h, &path) || path.verts.first() != Some(&u) {
        return Err(Error::CertificationFailed("the spliced walk is not a spanning path from u".into()));
    }
    Ok(PrismPath { prism: h, path, base_path: p, blocks, edge_blocks, loose_bridges: loose })
}

/// `v_1 v_1* v_2* v_2 v_3 v_3* ...`
fn zigzag(h: &PrismGraph, p: &[V]) -> Vec<V> {
    let mut out = Vec::with_capacity(2 * p.len());
    for (i, &v) in p.iter().enumerate() {
        if i % 2 == 0 {
            out.extend([v, h.star(v)]);
        } else {
            out.extend([h.star(v), v]);
        }
    }
    out
}

/// A Hamilton cycle of the prism over one circuit block through the vertical
/// edges at `x` and `y`, in the ids of `h`.
fn block_cycle(h: &PrismGraph, blk: &PlaneGraph, x: V, y: V, mode: PrismMode) -> Result<Vec<V>> {
    if blk.edge_count() == 1 {
        return Ok(vec![x, h.star(x), h.star(y), y]);
    }
    let c = match mode {
        PrismMode::Bipartite => prism_ham_bipartite(blk, x, y)?,
        PrismMode::Triangulation => {
            if !is_near_triangulation(blk) {
                return Err(Error::PreconditionFailed("a bridge block is not a near-triangulation".into()));
            }
            prism_ham_near_tri(blk, x, y)?
        }
    };
    let local = prism(blk);
    Ok(c.verts
        .iter()
        .map(|&z| match local.split(z) {
            (v, true) => h.star(v),
            (v, false) => v,
        })
        .collect())
}

/// The block cycles glued along the chain's vertical edges, cut open at the
/// start into a path from `a` to `a*`. Also returns the block counts.
fn chain_cycle(h: &PrismGraph, ch: &CircuitChain, mode: PrismMode) -> Result<(Vec<V>, usize, usize)> {
    let cuts = &ch.chain.cuts;
    let mut cyc: Vec<V> = Vec::new();
    let mut edges = 0;
    for (i, blk) in ch.chain.blocks.iter().enumerate() {
        let next = block_cycle(h, blk, cuts[i], cuts[i + 1], mode)?;
        edges += usize::from(blk.edge_count() == 1);
        if i == 0 {
            cyc = next;
            continue;
        }
        let b = cuts[i];
        let q = cut_open(&cyc, b, h.star(b))?;
        let r = cut_open(&next, h.star(b), b)?;
        cyc = q;
        cyc.extend_from_slice(&r[1..r.len() - 1]);
    }
    let a = cuts[0];
    Ok((cut_open(&cyc, a, h.star(a))?, ch.chain.blocks.len(), edges))
}

/// The cycle minus its edge `xy`, as a path from `x` to `y`.
fn cut_open(cyc: &[V], x: V, y: V) -> Result<Vec<V>> {
    let n = cyc.len();
    let i = cyc.iter().position(|&v| v == x).ok_or_else(|| Error::CertificationFailed(format!("{x} not on cycle")))?;
    if cyc[(i + 1) % n] == y {
        Ok((0..n).map(|k| cyc[(i + n - k) % n]).collect())
    } else if cyc[(i + n - 1) % n] == y {
        Ok((0..n).map(|k| cyc[(i + k) % n]).collect())
    } else {
        Err(Error::CertificationFailed(format!("the cycle does not use the edge {x}{y}")))
    }
}

/// Replaces the vertical edge `aa*` of `path` by `detour`, a path from `a` to
/// `a*`.
fn splice_at(path: &mut Vec<V>, h: &PrismGraph, a: V, detour: &[V]) -> Result<()> {
    let s = h.star(a);
    let i = path
        .windows(2)
        .position(|w| (w[0] == a && w[1] == s) || (w[0] == s && w[1] == a))
        .ok_or_else(|| Error::CertificationFailed(format!("the zigzag does not use {a}{a}*")))?;
    let mut mid: Vec<V> = detour[1..detour.len() - 1].to_vec();
    if path[i] == s {
        mid.reverse();
    }
    let seen: BTreeSet<V> = path.iter().copied().collect();
    if mid.iter().any(|v| seen.contains(v)) {
        return Err(Error::CertificationFailed(format!("the detour at {a} meets the path")));
    }
    path.splice(i + 1..i + 1, mid);
    Ok(())
}
