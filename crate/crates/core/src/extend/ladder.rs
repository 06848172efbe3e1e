//! Forward Tutte paths in the truncations `G_{r,s}` of a ladder net.
//!
//! Each level is handled in a frame where the path starts at `fx` and the
//! outer walk meets `fx_{r+1}, fx_r, D_r, fy_r, fy_{r+1}` in clockwise order.
//! Starting from `x` that is the mirror image of the generated embedding;
//! starting from `y` it is the embedding itself. The start side alternates
//! from level to level.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::circuit::chain_of_circuit_blocks;
use crate::connectivity::Sub;
use crate::error::{Error, Result};
use crate::graph::{ek, segment, Edge, PlaneGraph, V};
use crate::nets::{is_forward, FamilyGen, FamilyKind, FamilyLevel, NetKind, NetPrefix};
use crate::tutte::{find_tutte_path, resolve_sdr, verify_sdr, verify_tutte, SdrAssign};

use super::tips::{
    add_bridge, arc_sub, assign_loose, in_piece, join, middle_drafts, path_layer, restrict, solve, split_bridges, Draft,
    Group, GroupKind, Layer, TipDecomposition,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    X,
    Y,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::X => Side::Y,
            Side::Y => Side::X,
        }
    }
}

/// Output of the ladder construction. `levels[0]` is the step at `D_r`.
#[derive(Debug, Clone)]
pub struct LadderRun {
    pub path: Vec<V>,
    pub sdr: SdrAssign,
    pub levels: Vec<TipDecomposition>,
    /// The graph the path was verified in.
    pub graph: PlaneGraph,
    /// The context path `X` of that verification; empty when apex edges are
    /// present.
    pub context: Vec<V>,
}

/// A Tutte path in `G_{r,s}` from `x_r` (or `y_r`) through every `x_i`
/// and `y_i` with `r <= i <= s`.
pub fn ladder_construct(f: &FamilyGen, r: usize, s: usize, from: Side) -> Result<(Vec<V>, SdrAssign)> {
    if f.kind() != FamilyKind::Ladder {
        return Err(Error::PreconditionFailed(format!("{} is not a ladder family", f.name)));
    }
    let run = ladder_in_level(&f.level(s.max(1))?, r, s, from)?;
    Ok((run.path, run.sdr))
}

/// The ladder construction on a family level. With apex edges present the
/// path is built in the apex-free host and its SDR re-keyed by the bridges
/// of the full graph, in which every apex edge ends on the path or inside
/// one of its bridges.
pub fn ladder_in_level(lvl: &FamilyLevel, r: usize, s: usize, from: Side) -> Result<LadderRun> {
    let net = lvl.net.as_ref().ok_or_else(|| Error::PreconditionFailed("no net".into()))?;
    let mut run = ladder_in_net(net, r, s, from)?;
    if !lvl.apex.is_empty() && r == 0 && s == lvl.level {
        let t = Sub::from_path(&run.path);
        let sdr = resolve_sdr(&lvl.graph, &t, run.sdr.assignment.iter().map(|(&e, &v)| (e, v)))?;
        if let Err(v) = verify_tutte(&lvl.graph, &Sub::default(), &t) {
            return Err(Error::CertificationFailed(format!("with apex edges, bridge {:?}: {}", v.bridge.key(), v.reason)));
        }
        run.sdr = sdr;
        run.graph = lvl.graph.clone();
        run.context.clear();
    }
    Ok(run)
}

struct Frame {
    /// `G_{j,s}` as generated, and in frame orientation.
    plain: PlaneGraph,
    g: PlaneGraph,
    fx: Vec<V>,
    fy: Vec<V>,
    /// `D_j` from `fx_j` to `fy_j`.
    d: Vec<V>,
}

fn frame(net: &NetPrefix, j: usize, s: usize, side: Side) -> Result<Frame> {
    let plain = net.truncation(j, s)?;
    let (g, fx, fy) = match side {
        Side::X => (plain.mirror(), net.x.clone(), net.y.clone()),
        Side::Y => (plain.clone(), net.y.clone(), net.x.clone()),
    };
    Ok(Frame { plain, g, fx, fy, d: oriented(net.d(j), side) })
}

fn oriented(d: &[V], side: Side) -> Vec<V> {
    let mut d = d.to_vec();
    if side == Side::Y {
        d.reverse();
    }
    d
}

/// The ladder construction on a given net prefix.
pub fn ladder_in_net(net: &NetPrefix, r: usize, s: usize, from: Side) -> Result<LadderRun> {
    if net.kind != NetKind::Ladder {
        return Err(Error::PreconditionFailed("not a ladder net".into()));
    }
    if r > s || s > net.m() {
        return Err(Error::BadRange(format!("need 0 <= r <= s <= {}, got r = {r}, s = {s}", net.m())));
    }
    let side_at = |j: usize| if (j - r).is_multiple_of(2) { from } else { from.other() };
    let mut path = oriented(net.d(s), side_at(s));
    let mut sdr = SdrAssign::default();
    let mut levels = Vec::new();
    for j in (r..s).rev() {
        let (p, t, dec) = ladder_step(net, j, s, side_at(j), &path, &sdr)?;
        path = p;
        sdr = t;
        levels.push(dec);
    }
    levels.reverse();

    let fr = frame(net, r, s, from)?;
    let context = segment(&fr.g.outer_walk_verts(), fr.fx[s], fr.fy[s])?;
    let x = Sub::from_path(&context);
    let t = Sub::from_path(&path);
    if let Err(v) = verify_tutte(&fr.plain, &x, &t) {
        return Err(Error::CertificationFailed(format!("bridge {:?}: {}", v.bridge.key(), v.reason)));
    }
    if !verify_sdr(&fr.plain, &t, &sdr) {
        return Err(Error::CertificationFailed("the representatives are not an SDR".into()));
    }
    if sdr.contains_rep(fr.fy[r]) {
        return Err(Error::CertificationFailed(format!("{} represents a bridge", fr.fy[r])));
    }
    if !(r..=s).all(|i| t.verts.contains(&net.x[i]) && t.verts.contains(&net.y[i])) {
        return Err(Error::CertificationFailed("the path misses an end of some D_i".into()));
    }
    let end = if (s - r).is_multiple_of(2) { fr.fy[s] } else { fr.fx[s] };
    if path.first() != Some(&fr.fx[r]) || path.last() != Some(&end) {
        return Err(Error::CertificationFailed("the path has the wrong ends".into()));
    }
    if !is_forward(&path, net) {
        return Err(Error::CertificationFailed("the path is not forward".into()));
    }
    Ok(LadderRun { path, sdr, levels, graph: fr.plain, context })
}

/// One level: extends `p_prime`, a path in `G_{j+1,s}` from `fy_{j+1}`, to a
/// path in `G_{j,s}` from `fx_j`.
fn ladder_step(
    net: &NetPrefix,
    j: usize,
    s: usize,
    side: Side,
    p_prime: &[V],
    s_prime: &SdrAssign,
) -> Result<(Vec<V>, SdrAssign, TipDecomposition)> {
    let fr = frame(net, j, s, side)?;
    let hp = net.truncation(j + 1, s)?;
    let hs = Sub { verts: hp.vertex_set(), edges: hp.edges().into_iter().collect() };
    let next = oriented(net.d(j + 1), side);
    let (at, loose) = split_bridges(&fr.g, &hs, &fr.d, false, &next)?;
    let tips: Vec<V> = next.iter().copied().filter(|t| at.contains_key(t)).collect();
    let n = tips.len();
    if n < 2 || tips[0] != fr.fx[j + 1] || tips[n - 1] != fr.fy[j + 1] {
        return Err(Error::PreconditionFailed(format!("the ends of D_{} must be tips", j + 1)));
    }
    let layer = path_layer(&fr.d, &tips, at, loose)?;
    let len = fr.d.len();
    if layer.seg[0].0 != 0 || layer.seg[n - 1].1 != len - 1 {
        return Err(Error::PreconditionFailed(format!("the ends of D_{j} are not p_1 and q_n")));
    }
    if p_prime.first() != Some(&tips[n - 1]) {
        return Err(Error::PreconditionFailed("P' must start at t_n".into()));
    }

    let (mut drafts, dropped) = middle_drafts(&layer, &hp, p_prime, s_prime, n - 2)?;
    drafts.insert(0, end_draft(&layer, GroupKind::First, (0, layer.seg[0].1), 0));
    drafts.push(end_draft(&layer, GroupKind::Last, (layer.seg[n - 1].0, len - 1), n - 1));
    assign_loose(&layer, &mut drafts)?;
    let last = drafts.pop().expect("K_tn");
    let first = drafts.remove(0);
    let mut pieces = Vec::new();
    for d in drafts {
        pieces.push(solve(&fr.g, None, &layer, d)?);
    }
    let mut mid = vec![layer.q(0)];
    for p in &pieces {
        join(&mut mid, &p.path)?;
    }
    if mid.last() != Some(&layer.p(n - 1)) {
        return Err(Error::CertificationFailed("middle pieces stop short of p_n".into()));
    }
    let (p1, w1) = first_piece(&fr, &layer, &first).map_err(|e| in_piece(&GroupKind::First, e))?;
    let (pn, wn) = last_piece(&fr, &layer, &last).map_err(|e| in_piece(&GroupKind::Last, e))?;
    let mut path = p1;
    join(&mut path, &mid)?;
    join(&mut path, &pn)?;
    join(&mut path, p_prime)?;
    let distinct: BTreeSet<V> = path.iter().copied().collect();
    if distinct.len() != path.len() {
        return Err(Error::CertificationFailed("assembled walk repeats a vertex".into()));
    }

    let mut wit: Vec<(Edge, V)> =
        s_prime.assignment.iter().filter(|(e, _)| !dropped.contains(e)).map(|(&e, &r)| (e, r)).collect();
    for p in &pieces {
        wit.extend_from_slice(&p.witnesses);
    }
    wit.extend(w1);
    wit.extend(wn);
    let sdr = resolve_sdr(&fr.plain, &Sub::from_path(&path), wit)?;
    let mut groups = vec![Group { kind: GroupKind::First, verts: first.sub.verts, edges: first.sub.edges }];
    groups.extend(pieces.into_iter().map(|p| p.group));
    groups.push(Group { kind: GroupKind::Last, verts: last.sub.verts, edges: last.sub.edges });
    Ok((path, sdr, TipDecomposition { tips: layer.tips.clone(), segments: layer.segments(), groups }))
}

fn end_draft(layer: &Layer, kind: GroupKind, arc: (usize, usize), tip: usize) -> Draft {
    let mut sub = arc_sub(&layer.ext, arc);
    sub.verts.insert(layer.tips[tip]);
    for b in &layer.at_tip[tip] {
        add_bridge(&mut sub, b);
    }
    Draft { kind, arc, sub }
}

fn neighbour_on_walk(walk: &[V], t: V, step: isize) -> Result<V> {
    let l = walk.len() as isize;
    let i = walk
        .iter()
        .position(|&v| v == t)
        .ok_or_else(|| Error::PreconditionFailed(format!("{t} is not on the outer walk")))? as isize;
    Ok(walk[((i + step) % l + l) as usize % walk.len()])
}

fn collect(path: &mut Vec<V>, wit: &mut Vec<(Edge, V)>, leg: Vec<V>, sdr: &SdrAssign) -> Result<()> {
    join(path, &leg)?;
    wit.extend(sdr.assignment.iter().map(|(&e, &v)| (e, v)));
    Ok(())
}

fn reversed(mut p: Vec<V>) -> Vec<V> {
    p.reverse();
    p
}

/// `P_1` in `K_{t_1}`: from `x_r` to `q_1` through the cut `a_α` before the
/// block of `x_r`, with `t_1` representing the bridge behind `a_α`.
fn first_piece(fr: &Frame, layer: &Layer, d: &Draft) -> Result<(Vec<V>, Vec<(Edge, V)>)> {
    let k = restrict(&fr.g, &d.sub, None);
    let (t1, xr, q1) = (layer.tips[0], layer.ext[0], layer.q(0));
    let ow = fr.g.outer_walk_verts();
    let v = neighbour_on_walk(&ow, t1, 1)?;
    let route = segment(&ow, v, q1)?;
    let chain = chain_of_circuit_blocks(&k, &route, Some(t1))?.chain;
    let (a, bl) = (&chain.cuts, &chain.blocks);
    let m = bl.len();
    let alpha = (1..=m).find(|&j| bl[j - 1].has_vertex(xr) && xr != a[j]).map_or(m, |j| j - 1);
    let mut path = vec![xr];
    let mut wit = Vec::new();
    if alpha < m {
        let tp = find_tutte_path(&bl[alpha], a[alpha + 1], xr, a[alpha], a[alpha + 1])?;
        collect(&mut path, &mut wit, reversed(tp.path), &tp.sdr)?;
        for jj in alpha + 2..=m {
            let tp = find_tutte_path(&bl[jj - 1], a[jj], a[jj - 1], a[jj], a[jj])?;
            collect(&mut path, &mut wit, reversed(tp.path), &tp.sdr)?;
        }
    }
    if alpha > 0 {
        wit.push((ek(t1, v), t1));
    }
    Ok((path, wit))
}

/// `P_n` in `K_{t_n}`: from `p_n` through `y_r` along the blocks of
/// `K_{t_n} - t_n`, then to `t_n`. The pivot is the first block holding `y_r`.
fn last_piece(fr: &Frame, layer: &Layer, d: &Draft) -> Result<(Vec<V>, Vec<(Edge, V)>)> {
    let k = restrict(&fr.g, &d.sub, None);
    let n = layer.tips.len();
    let (tn, yr, pn) = (layer.tips[n - 1], *layer.ext.last().expect("side"), layer.p(n - 1));
    let ow = fr.g.outer_walk_verts();
    let w = neighbour_on_walk(&ow, tn, -1)?;
    let route = segment(&ow, pn, w)?;
    let chain = chain_of_circuit_blocks(&k, &route, Some(tn))?.chain;
    let (b, bl) = (&chain.cuts, &chain.blocks);
    let z = bl.len();
    let mut path = vec![pn];
    let mut wit = Vec::new();
    if z == 0 {
        if pn != yr || yr != w {
            return Err(Error::PreconditionFailed("empty chain but p_n, y_r, w differ".into()));
        }
    } else {
        let beta = (1..=z)
            .find(|&jj| bl[jj - 1].has_vertex(yr))
            .ok_or_else(|| Error::PreconditionFailed(format!("{yr} is in no block of K_tn - t_n")))?;
        for jj in 1..=z {
            let (lo, hi, blk) = (b[jj - 1], b[jj], &bl[jj - 1]);
            let tp = match jj.cmp(&beta) {
                std::cmp::Ordering::Less => {
                    let tp = find_tutte_path(blk, hi, lo, hi, hi)?;
                    (reversed(tp.path), tp.sdr)
                }
                std::cmp::Ordering::Equal => {
                    let tp = find_tutte_path(blk, lo, hi, yr, yr)?;
                    (tp.path, tp.sdr)
                }
                std::cmp::Ordering::Greater => {
                    let tp = find_tutte_path(blk, lo, hi, lo, lo)?;
                    (tp.path, tp.sdr)
                }
            };
            collect(&mut path, &mut wit, tp.0, &tp.1)?;
        }
    }
    path.push(tn);
    Ok((path, wit))
}
