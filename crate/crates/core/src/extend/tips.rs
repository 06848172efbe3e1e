//! Tips of the bridges between two consecutive layers, their segments on the
//! inner side, and the pieces built over those segments.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::Serialize;

use crate::connectivity::{bridges_of, BridgeRec, Sub};
use crate::error::{Error, Result};
use crate::graph::{ek, Edge, PlaneGraph, V};
use crate::tutte::{sp1, sp2, sp3, SdrAssign, SpOutput};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum GroupKind {
    /// `K_{t_i}` for a tip on the inner path.
    Tip(usize),
    /// `K_D` for a `P'`-bridge `D` holding tips `first..=last`.
    Bridge { c: V, d: V, first: usize, last: usize },
    /// `K_i` over the gap between `q_i` and `p_{i+1}`.
    Gap(usize),
    /// The piece around `t_1`: `F` for radial nets, `K_{t_1}` for ladders.
    First,
    /// `K_{t_n}` for ladders.
    Last,
}

#[derive(Debug, Clone, Serialize)]
pub struct Group {
    pub kind: GroupKind,
    pub verts: BTreeSet<V>,
    pub edges: BTreeSet<Edge>,
}

/// Tips `t_1..t_n` (index 0 is `t_1`), their segments `P(t_i) = [p_i, q_i]`
/// and the groups the construction used.
#[derive(Debug, Clone, Serialize)]
pub struct TipDecomposition {
    pub tips: Vec<V>,
    pub segments: Vec<(V, V)>,
    pub groups: Vec<Group>,
}

/// The raw layer data: inner side, tips and their bridges.
#[derive(Debug, Clone)]
pub(crate) struct Layer {
    /// Inner side in order. For a ring this starts at `q_1` and repeats it
    /// at the end, so that every arc is a slice.
    pub ext: Vec<V>,
    pub tips: Vec<V>,
    /// Index range of `P(t_i)` in `ext`.
    pub seg: Vec<(usize, usize)>,
    /// `L_i`: the bridges with tip `t_i`.
    pub at_tip: Vec<Vec<BridgeRec>>,
    /// Bridges without a tip.
    pub loose: Vec<BridgeRec>,
    /// Where the arcs after `q_1` start: 0 on a ring, `seg[0].1` on a path.
    pub q1_at: usize,
}

/// Splits the `(H ∪ side)`-bridges of `g` by tip. Tips must lie on `next`.
pub(crate) fn split_bridges(
    g: &PlaneGraph,
    h: &Sub,
    side: &[V],
    side_cyclic: bool,
    next: &[V],
) -> Result<(BTreeMap<V, Vec<BridgeRec>>, Vec<BridgeRec>)> {
    let side_sub = if side_cyclic { Sub::from_cycle(side) } else { Sub::from_path(side) };
    let next_set: BTreeSet<V> = next.iter().copied().collect();
    let mut at: BTreeMap<V, Vec<BridgeRec>> = BTreeMap::new();
    let mut loose = Vec::new();
    for b in bridges_of(g, &h.union(&side_sub)) {
        let tips: Vec<V> = b.attachments.iter().copied().filter(|v| h.verts.contains(v)).collect();
        match tips.as_slice() {
            [] => loose.push(b),
            [t] if next_set.contains(t) => at.entry(*t).or_default().push(b),
            [t] => return Err(Error::PreconditionFailed(format!("tip {t} is not on the next layer"))),
            _ => {
                return Err(Error::PreconditionFailed(format!(
                    "bridge {:?} has {} tips; the net is not tight",
                    b.key(),
                    tips.len()
                )))
            }
        }
    }
    Ok((at, loose))
}

fn side_atts(bs: &[BridgeRec], side: &BTreeSet<V>) -> BTreeSet<V> {
    bs.iter().flat_map(|b| b.attachments.iter().copied()).filter(|v| side.contains(v)).collect()
}

/// Builds the layer for a ring side. `tips` are in clockwise order on the
/// next ring; the labelling is rotated so that `t_1` is the first tip whose
/// arc `[q_{i-1}, q_i]` holds the edge from `u` to its clockwise neighbour.
pub(crate) fn ring_layer(
    ring: &[V],
    tips_cw: &[V],
    mut at: BTreeMap<V, Vec<BridgeRec>>,
    loose: Vec<BridgeRec>,
    u: V,
) -> Result<Layer> {
    let len = ring.len();
    let n = tips_cw.len();
    if n < 3 {
        return Err(Error::PreconditionFailed(format!("only {n} tips; the graph is not (3, C_1)-connected")));
    }
    let pos: BTreeMap<V, usize> = ring.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let side: BTreeSet<V> = ring.iter().copied().collect();
    let sets: Vec<BTreeSet<usize>> = tips_cw
        .iter()
        .map(|t| side_atts(&at[t], &side).iter().map(|v| pos[v]).collect())
        .collect();
    let mut pq = Vec::with_capacity(n);
    for i in 0..n {
        let a: Vec<usize> = sets[i].iter().copied().collect();
        if a.is_empty() {
            return Err(Error::PreconditionFailed(format!("tip {} has no bridge to the inner ring", tips_cw[i])));
        }
        if a.len() == 1 {
            pq.push((a[0], a[0]));
            continue;
        }
        let others: BTreeSet<usize> =
            (0..n).filter(|&j| j != i).flat_map(|j| sets[j].iter().copied()).filter(|x| !sets[i].contains(x)).collect();
        // the segment is the complement of the gap that holds the other tips
        let mut best: Option<(usize, usize)> = None;
        let mut widest = (0, 0);
        for k in 0..a.len() {
            let (lo, hi) = (a[k], a[(k + 1) % a.len()]);
            let gap = (hi + len - lo) % len;
            let holds = others.iter().any(|&x| {
                let o = (x + len - lo) % len;
                o > 0 && o < gap
            });
            if holds {
                best = Some((hi, lo));
                break;
            }
            if gap > widest.0 {
                widest = (gap, k);
            }
        }
        let k = widest.1;
        pq.push(best.unwrap_or((a[(k + 1) % a.len()], a[k])));
    }
    // segments and the gaps between them must wind once around the ring
    let winding: usize = (0..n)
        .map(|i| {
            let (p, q) = pq[i];
            let next = pq[(i + 1) % n].0;
            (q + len - p) % len + (next + len - q) % len
        })
        .sum();
    if winding != len {
        return Err(Error::PreconditionFailed("tip segments are not in clockwise order".into()));
    }
    let u_at = *pos.get(&u).ok_or_else(|| Error::PreconditionFailed(format!("{u} is not on C_1")))?;
    let mut first = None;
    for i in 0..n {
        let prev = pq[(i + n - 1) % n].1;
        let d = (pq[i].1 + len - prev) % len;
        let o = (u_at + len - prev) % len;
        if d > 0 && o < d {
            first = Some(i);
            break;
        }
    }
    let first = first.ok_or_else(|| Error::PreconditionFailed("all tip segments meet at one vertex".into()))?;
    let tips: Vec<V> = (0..n).map(|i| tips_cw[(first + i) % n]).collect();
    let pq: Vec<(usize, usize)> = (0..n).map(|i| pq[(first + i) % n]).collect();
    let q1 = pq[0].1;
    let mut ext: Vec<V> = (0..len).map(|i| ring[(q1 + i) % len]).collect();
    ext.push(ring[q1]);
    let o = |x: usize| (x + len - q1) % len;
    let mut seg: Vec<(usize, usize)> = pq.iter().map(|&(p, q)| (o(p), o(q))).collect();
    seg[0] = (if pq[0].0 == q1 { len } else { o(pq[0].0) }, len);
    let at_tip = tips.iter().map(|t| at.remove(t).unwrap_or_default()).collect();
    Ok(Layer { ext, tips, seg, at_tip, loose, q1_at: 0 })
}

/// Builds the layer for a path side listed in order; tips are in the same
/// direction along the next layer.
pub(crate) fn path_layer(
    side_path: &[V],
    tips: &[V],
    mut at: BTreeMap<V, Vec<BridgeRec>>,
    loose: Vec<BridgeRec>,
) -> Result<Layer> {
    let pos: BTreeMap<V, usize> = side_path.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let side: BTreeSet<V> = side_path.iter().copied().collect();
    let mut seg = Vec::new();
    let mut last = 0;
    for t in tips {
        let a: Vec<usize> = side_atts(&at[t], &side).iter().map(|v| pos[v]).collect();
        let (Some(&p), Some(&q)) = (a.iter().min(), a.iter().max()) else {
            return Err(Error::PreconditionFailed(format!("tip {t} has no bridge to the inner side")));
        };
        if p < last {
            return Err(Error::PreconditionFailed("tip segments are out of order".into()));
        }
        last = q;
        seg.push((p, q));
    }
    let at_tip = tips.iter().map(|t| at.remove(t).unwrap_or_default()).collect();
    let q1_at = seg.first().map_or(0, |s: &(usize, usize)| s.1);
    Ok(Layer { ext: side_path.to_vec(), tips: tips.to_vec(), seg, at_tip, loose, q1_at })
}

impl Layer {
    pub fn p(&self, i: usize) -> V {
        self.ext[self.seg[i].0]
    }

    pub fn q(&self, i: usize) -> V {
        self.ext[self.seg[i].1]
    }

    pub fn segments(&self) -> Vec<(V, V)> {
        (0..self.tips.len()).map(|i| (self.p(i), self.q(i))).collect()
    }
}

/// A path oriented along the side from the start of its arc, with its SDR
/// witnesses and the subgraph it was built in.
#[derive(Debug, Clone)]
pub(crate) struct Piece {
    pub path: Vec<V>,
    pub witnesses: Vec<(Edge, V)>,
    pub group: Group,
}

#[derive(Debug, Clone)]
pub(crate) struct Draft {
    pub kind: GroupKind,
    /// Arc of the side, as an index range into `ext`.
    pub arc: (usize, usize),
    pub sub: Sub,
}

pub(crate) fn add_bridge(s: &mut Sub, b: &BridgeRec) {
    s.verts.extend(b.vertex_set.iter().copied());
    s.edges.extend(b.edge_set.iter().copied());
}

pub(crate) fn arc_sub(ext: &[V], (i, j): (usize, usize)) -> Sub {
    Sub::from_path(&ext[i..=j])
}

/// Hands each loose bridge to the first draft whose arc holds all of its
/// attachments on the side.
pub(crate) fn assign_loose(layer: &Layer, drafts: &mut [Draft]) -> Result<()> {
    let side: BTreeSet<V> = layer.ext.iter().copied().collect();
    'bridge: for b in &layer.loose {
        let atts: BTreeSet<V> = b.attachments.iter().copied().filter(|v| side.contains(v)).collect();
        for d in drafts.iter_mut() {
            let arc: BTreeSet<V> = layer.ext[d.arc.0..=d.arc.1].iter().copied().collect();
            if atts.is_subset(&arc) {
                add_bridge(&mut d.sub, b);
                continue 'bridge;
            }
        }
        return Err(Error::PreconditionFailed(format!("bridge {:?} fits no segment", b.key())));
    }
    Ok(())
}

pub(crate) fn restrict(g: &PlaneGraph, s: &Sub, region: Option<(V, V)>) -> PlaneGraph {
    let edges: HashSet<Edge> = s.edges.iter().copied().collect();
    g.restrict(&s.verts, &edges, region)
}

fn witnesses(s: &SdrAssign) -> Vec<(Edge, V)> {
    s.assignment.iter().map(|(&e, &r)| (e, r)).collect()
}

fn reversed(mut p: Vec<V>) -> Vec<V> {
    p.reverse();
    p
}

/// Solves one middle draft with the matching standard piece. Every piece
/// keeps its later end along the side out of its SDR.
pub(crate) fn solve(g: &PlaneGraph, region: Option<(V, V)>, layer: &Layer, d: Draft) -> Result<Piece> {
    let (a, b) = (layer.ext[d.arc.0], layer.ext[d.arc.1]);
    let k = restrict(g, &d.sub, region);
    let (path, w) = if a == b {
        (vec![a], lone_point(&k, a, &d.kind, layer).map_err(|e| in_piece(&d.kind, e))?)
    } else {
        let out = match d.kind {
            GroupKind::Tip(i) => sp2(&k, b, a, layer.tips[i]),
            GroupKind::Bridge { c, d, .. } if c == d => solve_folded(&k, b, a, c),
            GroupKind::Bridge { c, d, .. } => sp3(&k, b, a, c, d, d),
            GroupKind::Gap(_) => sp1(&k, b, a, b),
            GroupKind::First | GroupKind::Last => unreachable!("end pieces are solved separately"),
        }
        .map_err(|e| in_piece(&d.kind, e))?;
        (reversed(out.path), witnesses(&out.sdr))
    };
    Ok(Piece { path, witnesses: w, group: Group { kind: d.kind, verts: d.sub.verts, edges: d.sub.edges } })
}

/// Witnesses for a piece whose arc is the single vertex `a`. Only the
/// replaced bridge's representative `c` is free to be used, so a bridge
/// piece may leave one nontrivial bridge and a tip piece none.
fn lone_point(k: &PlaneGraph, a: V, kind: &GroupKind, layer: &Layer) -> Result<Vec<(Edge, V)>> {
    let (t, free) = match *kind {
        GroupKind::Tip(i) => (Sub::from_verts([a, layer.tips[i]]), None),
        GroupKind::Bridge { c, d, .. } => (Sub::from_verts([a, c, d]), Some(c)),
        _ => (Sub::from_verts([a]), None),
    };
    let open: Vec<BridgeRec> = bridges_of(k, &t).into_iter().filter(|b| !b.trivial).collect();
    match (open.as_slice(), free) {
        ([], _) => Ok(vec![]),
        ([b], Some(c)) if b.attachments.contains(&c) => Ok(vec![(b.key(), c)]),
        _ => Err(Error::PreconditionFailed(format!("{} bridges at the single vertex {a} need representatives", open.len()))),
    }
}

/// Contracts each path of degree-2 vertices hanging from `c` into a single
/// edge from `c`. A `P'`-bridge with one attachment on the last ring has such
/// paths next to its attachment, since those ring vertices keep only their
/// ring edges in the truncation. Returns the contracted graph and, for each
/// new edge, an edge of the original it stands for.
fn fold_pendants(k: &PlaneGraph, c: V, keep: &[V]) -> Result<(PlaneGraph, Vec<(V, V, V)>)> {
    let mut gone: BTreeSet<V> = BTreeSet::new();
    let mut relink: Vec<(V, V, V)> = Vec::new(); // (first, last, end)
    for &w in k.rotation(c) {
        let (mut prev, mut cur) = (c, w);
        let mut path = Vec::new();
        while cur != c && k.degree(cur) == 2 && !keep.contains(&cur) {
            path.push(cur);
            let nx = k.rotation(cur).iter().copied().find(|&x| x != prev).unwrap_or(prev);
            prev = cur;
            cur = nx;
        }
        if path.is_empty() {
            continue;
        }
        if cur == c || k.has_edge(c, cur) || relink.iter().any(|r| r.2 == cur) {
            return Err(Error::PreconditionFailed(format!("pendant path at {c} closes up at {cur}")));
        }
        gone.extend(path.iter().copied());
        relink.push((w, prev, cur));
    }
    if relink.is_empty() {
        return Ok((k.clone(), relink));
    }
    let rot: Vec<(V, Vec<V>)> = k
        .vertices()
        .filter(|v| !gone.contains(v))
        .map(|v| {
            let r = k
                .rotation(v)
                .iter()
                .map(|&x| {
                    for &(first, last, end) in &relink {
                        if v == c && x == first {
                            return end;
                        }
                        if v == end && x == last {
                            return c;
                        }
                    }
                    x
                })
                .collect();
            (v, r)
        })
        .collect();
    let walk = k.outer_walk_verts();
    let n = walk.len();
    let outer = (0..n)
        .map(|i| (walk[i], walk[(i + 1) % n]))
        .find(|(x, y)| !gone.contains(x) && !gone.contains(y));
    Ok((PlaneGraph::from_rotation_unchecked(rot, outer), relink))
}

/// SP2 for a `P'`-bridge with the single attachment `c`, run on the graph
/// with the pendant paths at `c` folded. A folded path whose far end lies on
/// the result becomes a bridge of its own; `c` is free to represent one of
/// them, since it no longer represents the replaced bridge.
fn solve_folded(k: &PlaneGraph, a: V, b: V, c: V) -> Result<SpOutput> {
    let (kc, relink) = fold_pendants(k, c, &[a, b])?;
    let mut out = sp2(&kc, a, b, c)?;
    let on: BTreeSet<V> = out.path.iter().copied().collect();
    let mut fresh = Vec::new();
    let mut map = BTreeMap::new();
    for &(first, _, end) in &relink {
        if on.contains(&end) {
            fresh.push((ek(c, first), end));
        } else {
            map.insert(ek(c, end), ek(c, first));
        }
    }
    out.sdr.assignment = std::mem::take(&mut out.sdr.assignment)
        .into_iter()
        .map(|(e, r)| (map.get(&e).copied().unwrap_or(e), r))
        .collect();
    let used: BTreeSet<V> = out.sdr.assignment.values().copied().collect();
    let pick = match fresh.as_slice() {
        [] => vec![],
        [(e, _)] => vec![(*e, c)],
        [(e1, z1), (e2, z2)] if !used.contains(z2) => vec![(*e1, c), (*e2, *z2)],
        [(e1, z1), (e2, _)] if !used.contains(z1) => vec![(*e1, *z1), (*e2, c)],
        _ => {
            return Err(Error::CertificationFailed(format!(
                "no representatives left for the paths hanging from {c}"
            )))
        }
    };
    out.sdr.assignment.extend(pick);
    Ok(out)
}

/// The drafts between `q_1` and the end of tip `hi`'s segment (or `p_n` when
/// `hi = n - 2` on a path side): gaps `K_i`, tips `K_{t_i}` on `P'`, and
/// one `K_D` per `P'`-bridge of `H` holding tips off `P'`.
/// Returns the drafts and the keys of the replaced `P'`-bridges.
pub(crate) fn middle_drafts(
    layer: &Layer,
    h: &PlaneGraph,
    p_prime: &[V],
    s_prime: &SdrAssign,
    hi: usize,
) -> Result<(Vec<Draft>, Vec<Edge>)> {
    let n = layer.tips.len();
    let on: BTreeSet<V> = p_prime.iter().copied().collect();
    let pb = bridges_of(h, &Sub::from_path(p_prime));
    // tip index -> index of the P'-bridge holding it
    let mut holder: BTreeMap<usize, usize> = BTreeMap::new();
    for i in 1..=hi {
        let t = layer.tips[i];
        if on.contains(&t) {
            continue;
        }
        let j = pb
            .iter()
            .position(|b| b.vertex_set.contains(&t) && !b.attachments.contains(&t))
            .ok_or_else(|| Error::PreconditionFailed(format!("tip {t} is in no P'-bridge")))?;
        holder.insert(i, j);
    }
    let mut drafts = Vec::new();
    let mut dropped = Vec::new();
    let mut i = 0;
    while i + 1 < n {
        // gap after tip i
        let gap = (if i == 0 { layer.q1_at } else { layer.seg[i].1 }, layer.seg[i + 1].0);
        let next = i + 1;
        if let Some(&j) = holder.get(&next) {
            let last = (next..=hi).take_while(|t| holder.get(t) == Some(&j)).last().unwrap_or(next);
            if (last + 1..=hi).any(|t| holder.get(&t) == Some(&j)) {
                return Err(Error::PreconditionFailed("tips of one P'-bridge are not consecutive".into()));
            }
            if gap.0 != gap.1 {
                drafts.push(gap_draft(layer, i, gap));
            }
            let br = &pb[j];
            let atts: Vec<V> = br.attachments.iter().copied().collect();
            let rep = s_prime.assignment.get(&br.key()).copied();
            let (c, d) = match (atts.as_slice(), rep) {
                ([c], _) => (*c, *c),
                ([a, b], Some(r)) if r == *a => (*a, *b),
                ([a, b], Some(r)) if r == *b => (*b, *a),
                _ => {
                    return Err(Error::PreconditionFailed(format!(
                        "P'-bridge {:?} meeting the next layer has attachments {atts:?}",
                        br.key()
                    )))
                }
            };
            let arc = (layer.seg[next].0, layer.seg[last].1);
            let mut sub = arc_sub(&layer.ext, arc);
            add_bridge(&mut sub, br);
            for t in next..=last {
                for b in &layer.at_tip[t] {
                    add_bridge(&mut sub, b);
                }
            }
            drafts.push(Draft { kind: GroupKind::Bridge { c, d, first: next, last }, arc, sub });
            dropped.push(br.key());
            i = last;
            continue;
        }
        if gap.0 != gap.1 {
            drafts.push(gap_draft(layer, i, gap));
        }
        if next <= hi {
            let arc = layer.seg[next];
            let mut sub = arc_sub(&layer.ext, arc);
            sub.verts.insert(layer.tips[next]);
            for b in &layer.at_tip[next] {
                add_bridge(&mut sub, b);
            }
            drafts.push(Draft { kind: GroupKind::Tip(next), arc, sub });
        }
        i = next;
    }
    Ok((drafts, dropped))
}

/// Prefixes an error with the piece it came from.
pub(crate) fn in_piece(kind: &GroupKind, e: Error) -> Error {
    let name = match kind {
        GroupKind::Tip(i) => format!("K_t{}", i + 1),
        GroupKind::Bridge { first, last, .. } => format!("K_D for tips {}..{}", first + 1, last + 1),
        GroupKind::Gap(i) => format!("K_{}", i + 1),
        GroupKind::First => "the first piece".into(),
        GroupKind::Last => "the last piece".into(),
    };
    match e {
        Error::PreconditionFailed(m) => Error::PreconditionFailed(format!("{name}: {m}")),
        Error::CertificationFailed(m) => Error::CertificationFailed(format!("{name}: {m}")),
        other => other,
    }
}

fn gap_draft(layer: &Layer, i: usize, gap: (usize, usize)) -> Draft {
    Draft { kind: GroupKind::Gap(i), arc: gap, sub: arc_sub(&layer.ext, gap) }
}

/// Appends `seg` to `path`, which must end where `seg` starts.
pub(crate) fn join(path: &mut Vec<V>, seg: &[V]) -> Result<()> {
    match (path.last(), seg.first()) {
        (_, None) => Ok(()),
        (None, Some(_)) => {
            path.extend_from_slice(seg);
            Ok(())
        }
        (Some(&a), Some(&b)) if a == b => {
            path.extend_from_slice(&seg[1..]);
            Ok(())
        }
        (Some(&a), Some(&b)) => Err(Error::CertificationFailed(format!("pieces do not meet: {a} then {b}"))),
    }
}
