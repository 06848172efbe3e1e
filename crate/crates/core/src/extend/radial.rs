//! Forward `C_1`-Tutte paths in the finite part `I(C_k)` of a radial net.

use std::collections::{BTreeSet, HashSet};

use crate::circuit::chain_of_circuit_blocks;
use crate::connectivity::{blocks, bridges_of, Sub};
use crate::error::{Error, Result};
use crate::graph::{ek, Edge, PlaneGraph, V};
use crate::nets::{is_forward, FamilyGen, FamilyKind, NetKind, NetPrefix};
use crate::tutte::{find_tutte_path_through_edge, resolve_sdr, sp1, verify_sdr, verify_tutte, SdrAssign};

use super::tips::{
    add_bridge, arc_sub, assign_loose, in_piece, join, middle_drafts, restrict, ring_layer, solve, split_bridges, Draft, Group,
    GroupKind, Layer, TipDecomposition,
};

/// Output of the radial construction, with the decomposition used at each
/// level (index 0 is the outermost step, around `C_1`).
#[derive(Debug, Clone)]
pub struct RadialRun {
    pub v: V,
    pub path: Vec<V>,
    pub sdr: SdrAssign,
    pub levels: Vec<TipDecomposition>,
}

/// A forward `C_1`-Tutte path in `I(C_k)` from `u` to some `v` on `C_k`.
pub fn radial_construct(f: &FamilyGen, u: V, k: usize) -> Result<(V, Vec<V>, SdrAssign)> {
    if f.kind() != FamilyKind::Radial {
        return Err(Error::PreconditionFailed(format!("{} is not a radial family", f.name)));
    }
    let net = f.level(k)?.net.ok_or_else(|| Error::PreconditionFailed("no net".into()))?;
    let run = radial_in_net(&net, u)?;
    Ok((run.v, run.path, run.sdr))
}

struct Step {
    u: V,
    g: PlaneGraph,
    ring: Vec<V>,
    h: PlaneGraph,
    layer: Layer,
}

/// The radial construction on a given net prefix.
pub fn radial_in_net(net: &NetPrefix, u: V) -> Result<RadialRun> {
    if net.kind != NetKind::Radial {
        return Err(Error::PreconditionFailed("not a radial net".into()));
    }
    if !net.c(1).contains(&u) {
        return Err(Error::PreconditionFailed(format!("{u} is not on C_1")));
    }
    let k = net.m();
    let ck = net.c(k);
    let outer_edge = ek(ck[0], ck[1 % ck.len()]);
    // top-down: the start vertex at each level is t_1 of the level above
    let mut steps = Vec::new();
    let mut g = net.carrier.clone();
    let mut start = u;
    for j in 1..k {
        let ring = net.c(j).to_vec();
        let del: BTreeSet<V> = ring.iter().copied().collect();
        let rest = g.remove_vertices(&del);
        let (bl, _) = blocks(&rest);
        let blk = bl
            .iter()
            .find(|b| b.has_edge(outer_edge.0, outer_edge.1))
            .ok_or_else(|| Error::PreconditionFailed("C_k is not in one block".into()))?;
        let keep: HashSet<Edge> = blk.edges().into_iter().collect();
        let h = g.restrict(&blk.vertex_set(), &keep, None);
        let next = net.c(j + 1);
        let hs = Sub { verts: h.vertex_set(), edges: h.edges().into_iter().collect() };
        let (at, loose) = split_bridges(&g, &hs, &ring, true, next)?;
        let tips_cw: Vec<V> = next.iter().copied().filter(|t| at.contains_key(t)).collect();
        let layer = ring_layer(&ring, &tips_cw, at, loose, start)?;
        steps.push(Step { u: start, g, ring, h: h.clone(), layer });
        start = steps.last().expect("step").layer.tips[0];
        g = h;
    }
    // base: I(C_1) = C_1 and the path is one vertex
    let base: BTreeSet<Edge> = Sub::from_cycle(ck).edges;
    if g.edges().into_iter().collect::<BTreeSet<_>>() != base {
        return Err(Error::PreconditionFailed("the innermost level is not a bare cycle; the net is not tight".into()));
    }
    let mut path = vec![start];
    let t = Sub::from_path(&path);
    let mut sdr = SdrAssign::default();
    for b in bridges_of(&g, &t).into_iter().filter(|b| !b.trivial) {
        sdr.assignment.insert(b.key(), start);
    }
    let mut levels = Vec::new();
    for st in steps.iter().rev() {
        let (p, s, dec) = radial_step(st, &path, &sdr)?;
        path = p;
        sdr = s;
        levels.push(dec);
    }
    levels.reverse();
    let t = Sub::from_path(&path);
    if let Err(v) = verify_tutte(&net.carrier, &Sub::from_cycle(net.c(1)), &t) {
        return Err(Error::CertificationFailed(format!("bridge {:?}: {}", v.bridge.key(), v.reason)));
    }
    if !verify_sdr(&net.carrier, &t, &sdr) {
        return Err(Error::CertificationFailed("the representatives are not an SDR".into()));
    }
    if !is_forward(&path, net) {
        return Err(Error::CertificationFailed("the path is not forward".into()));
    }
    Ok(RadialRun { v: *path.last().expect("nonempty"), path, sdr, levels })
}

/// One level: extends `p_prime` (a `C_2`-Tutte path in `H` from `t_1`) to a
/// `C_1`-Tutte path in `G` from the level's start vertex.
fn radial_step(st: &Step, p_prime: &[V], s_prime: &SdrAssign) -> Result<(Vec<V>, SdrAssign, TipDecomposition)> {
    let Step { u, g, ring, h, layer } = st;
    let u = *u;
    let hole = Some((ring[1], ring[0]));
    let n = layer.tips.len();
    let t1 = layer.tips[0];
    if p_prime.first() != Some(&t1) {
        return Err(Error::PreconditionFailed("P' must start at t_1".into()));
    }
    let (mut drafts, dropped) = middle_drafts(layer, h, p_prime, s_prime, n - 1)?;
    let len = ring.len();
    let f_arc = (layer.seg[n - 1].1, len);
    let mut f_sub = arc_sub(&layer.ext, f_arc);
    f_sub.verts.insert(t1);
    for b in &layer.at_tip[0] {
        add_bridge(&mut f_sub, b);
    }
    drafts.push(Draft { kind: GroupKind::First, arc: f_arc, sub: f_sub });
    assign_loose(layer, &mut drafts)?;
    let f_draft = drafts.pop().expect("F");
    let mut pieces = Vec::new();
    for d in drafts {
        pieces.push(solve(g, hole, layer, d)?);
    }
    let mut mid = vec![layer.ext[0]];
    for p in &pieces {
        join(&mut mid, &p.path)?;
    }
    let qn = layer.ext[f_arc.0];
    if mid.last() != Some(&qn) {
        return Err(Error::CertificationFailed("middle pieces stop short of q_n".into()));
    }

    let (q, q_wit) = endgame(g, hole, layer, &f_draft, u, t1).map_err(|e| in_piece(&GroupKind::First, e))?;
    // u .. q_n, then back along the middle pieces to q_1, then q_1 .. t_1
    let mut path = q.0;
    mid.reverse();
    join(&mut path, &mid)?;
    join(&mut path, &q.1)?;
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
    wit.extend(q_wit);
    let sdr = resolve_sdr(g, &Sub::from_path(&path), wit)?;
    let mut groups: Vec<Group> = pieces.into_iter().map(|p| p.group).collect();
    groups.push(Group { kind: GroupKind::First, verts: f_draft.sub.verts, edges: f_draft.sub.edges });
    Ok((path, sdr, TipDecomposition { tips: layer.tips.clone(), segments: layer.segments(), groups }))
}

/// The `F` endgame: vertex-disjoint paths `u .. q_n` and `q_1 .. t_1` in `F`
/// together with their SDR witnesses.
#[allow(clippy::type_complexity)]
fn endgame(
    g: &PlaneGraph,
    hole: Option<(V, V)>,
    layer: &Layer,
    f: &Draft,
    u: V,
    t1: V,
) -> Result<((Vec<V>, Vec<V>), Vec<(Edge, V)>)> {
    let fg = restrict(g, &f.sub, hole);
    let arc_cw: Vec<V> = layer.ext[f.arc.0..=f.arc.1].to_vec();
    let (qn, q1) = (arc_cw[0], *arc_cw.last().expect("arc"));
    let chain = chain_of_circuit_blocks(&fg, &arc_cw, Some(t1))?;
    let cuts = &chain.chain.cuts;
    let bl = &chain.chain.blocks;
    let m = bl.len();
    let fm = fg.remove_vertices(&BTreeSet::from([t1]));
    let y = far_side(&fm, &arc_cw)?;
    // z: the block holding u, not as its right cut
    let z = (1..=m)
        .find(|&j| bl[j - 1].has_vertex(u) && u != cuts[j])
        .ok_or_else(|| Error::PreconditionFailed(format!("{u} is in no block of F - t_1")))?;
    let bz = cuts[z - 1];
    let from = y.iter().position(|&v| v == bz).ok_or_else(|| Error::PreconditionFailed("Y misses a cut".into()))?;
    let w = y[from + 1..]
        .iter()
        .copied()
        .find(|&v| fg.has_edge(v, t1))
        .ok_or_else(|| Error::PreconditionFailed("t_1 has no neighbour on Y after b_{z-1}".into()))?;
    let r = (z..=m)
        .find(|&j| bl[j - 1].has_vertex(w) && w != cuts[j - 1])
        .ok_or_else(|| Error::PreconditionFailed(format!("{w} is in no block after B_z")))?;
    let br = cuts[r];
    let union = |lo: usize, hi: usize| {
        let mut s = Sub::default();
        for b in &bl[lo - 1..hi] {
            s.verts.extend(b.vertices());
            s.edges.extend(b.edges());
        }
        restrict(&fm, &s, None)
    };
    let mut wit = Vec::new();
    // Q_1 from b_{z-1} to q_n, keeping b_{z-1} out of T_1
    let q1_path = if z == 1 {
        vec![qn]
    } else {
        let out = sp1(&union(1, z - 1), bz, qn, bz)?;
        wit.extend(out.sdr.assignment.iter().map(|(&e, &v)| (e, v)));
        out.path
    };
    // Q_3 from q_1 to b_r, keeping q_1 out of T_3
    let q3_path = if r == m {
        vec![q1]
    } else {
        let out = sp1(&union(r + 1, m), q1, br, q1)?;
        wit.extend(out.sdr.assignment.iter().map(|(&e, &v)| (e, v)));
        out.path
    };
    let h2 = union(z, r);
    let h2p = if h2.has_edge(bz, w) { h2 } else { add_chord(&h2, bz, w)? };
    let tp = find_tutte_path_through_edge(&h2p, br, u, ek(bz, w))?;
    let cut = (0..tp.path.len() - 1)
        .find(|&i| tp.path[i] == w && tp.path[i + 1] == bz)
        .ok_or_else(|| Error::CertificationFailed("Q_2' crosses b_{z-1}w the wrong way".into()))?;
    wit.extend(tp.sdr.assignment.iter().map(|(&e, &v)| (e, v)));
    let to_w: Vec<V> = tp.path[..=cut].to_vec();
    let mut to_u: Vec<V> = tp.path[cut + 1..].to_vec();
    // u .. b_{z-1} .. q_n
    to_u.reverse();
    let mut first = to_u;
    join(&mut first, &q1_path)?;
    // q_1 .. b_r .. w, t_1
    let mut second = q3_path;
    join(&mut second, &to_w)?;
    second.push(t1);
    Ok(((first, second), wit))
}

/// The side `Y` of the outer walk of `F - t_1` from `q_n` to `q_1` that is
/// not the arc of `C_1`. The outer walk runs along the arc from `q_1` to
/// `q_n` first.
fn far_side(fm: &PlaneGraph, arc_cw: &[V]) -> Result<Vec<V>> {
    let w = fm.outer_walk_verts();
    let l = w.len();
    let mut ccw = arc_cw.to_vec();
    ccw.reverse();
    let a = ccw.len();
    for j in 0..l {
        if (0..a).all(|i| w[(j + i) % l] == ccw[i]) {
            let y: Vec<V> = (a - 1..=l).map(|i| w[(j + i) % l]).collect();
            return Ok(y);
        }
    }
    Err(Error::PreconditionFailed("the arc is not on the outer walk of F - t_1".into()))
}

/// Adds the chord `aw` inside the outer face, splitting off the part of the
/// outer walk from `a` to `w`.
fn add_chord(h: &PlaneGraph, a: V, w: V) -> Result<PlaneGraph> {
    let ow = h.outer_walk_verts();
    let l = ow.len();
    let one = |v: V| {
        let at: Vec<usize> = (0..l).filter(|&i| ow[i] == v).collect();
        match at.as_slice() {
            [i] => Ok(*i),
            _ => Err(Error::AmbiguousEndpoint { vertex: v, count: at.len() }),
        }
    };
    let (ia, iw) = (one(a)?, one(w)?);
    let fa = (ow[(ia + l - 1) % l], a);
    let fw = (ow[(iw + l - 1) % l], w);
    Ok(h.add_edge_in_face(fa, fw, (a, w)))
}
