//! Turning a Tutte path and an SDR of its bridges into a 2-walk.
//!
//! The walk follows the path and, at the representative `a` of each
//! nontrivial bridge `L`, makes a closed detour through `L` minus its other
//! attachments. That graph is a chain of circuit blocks from `a`, and the
//! detour strings together one closed block walk per block.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use serde::{Deserialize, Serialize};

use crate::connectivity::{bridges_of, components_without, find_small_cut_containing, BridgeRec, Sub};
use crate::error::{Error, Result};
use crate::graph::{ek, segment, Edge, PlaneGraph, WalkSeq, V};
use crate::tutte::SdrAssign;

use super::block::block_walk;
use super::decomp::{bridge_decomp_2att, bridge_decomp_3att};
use super::{two_walk_problem, TwoWalk};
use crate::circuit::{circuit_chain_between, CircuitChain};

/// What the splice needs to know about the surrounding construction.
#[derive(Debug, Clone)]
pub struct SpliceContext {
    /// `Δ`: the cycle `C_1` of a radial net or the boundary path of a ladder
    /// net. Bridges with two attachments are opened along their side on `Δ`.
    pub delta: Option<WalkSeq>,
    /// Largest cut allowed to certify a twice-used vertex.
    pub cut_bound: usize,
}

impl SpliceContext {
    pub fn with_delta(delta: WalkSeq) -> Self {
        SpliceContext { delta: Some(delta), cut_bound: 3 }
    }

    pub fn three_connected() -> Self {
        SpliceContext { delta: None, cut_bound: 3 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum TwiceClass {
    /// A representative, where the detour leaves and rejoins the path.
    Representative,
    /// A cut vertex `b_i` between two blocks of a detour chain.
    ChainCut,
    /// In an internal 3-cut of a block.
    Internal3Cut,
    /// In a 2-cut of a block lying on one side of its outer cycle.
    SideTwoCut,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwiceUsed {
    pub v: V,
    pub class: TwiceClass,
    /// Key of the bridge whose detour revisits `v`.
    pub bridge: Edge,
    /// A cut of the whole graph containing `v`.
    pub cut: Vec<V>,
    /// Whether `cut` is the one the case analysis predicts, rather than one
    /// found by search.
    pub predicted: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpliceReport {
    pub walk: TwoWalk,
    pub twice: Vec<TwiceUsed>,
    /// Bridges that lacked the connectivity of the decomposition lemma (this
    /// happens at the last ring of a truncation) and were read as a chain
    /// directly.
    pub loose_bridges: Vec<Edge>,
}

pub fn splice_two_walk(g: &PlaneGraph, p: &[V], sigma: &SdrAssign, ctx: &SpliceContext) -> Result<TwoWalk> {
    Ok(splice_two_walk_report(g, p, sigma, ctx)?.walk)
}

/// The spliced walk with a certificate for each twice-used vertex.
pub fn splice_two_walk_report(g: &PlaneGraph, p: &[V], sigma: &SdrAssign, ctx: &SpliceContext) -> Result<SpliceReport> {
    let t = Sub::from_path(p);
    let delta_edges: BTreeSet<Edge> = ctx.delta.as_ref().map(|w| w.edges()).unwrap_or_default();
    let mut detours: BTreeMap<V, Vec<V>> = BTreeMap::new();
    let mut pending: Vec<(V, TwiceClass, Edge, Vec<V>)> = Vec::new();
    let mut loose = Vec::new();
    for br in bridges_of(g, &t).into_iter().filter(|b| !b.trivial) {
        let key = br.key();
        let a = *sigma
            .assignment
            .get(&key)
            .ok_or_else(|| Error::CertificationFailed(format!("bridge {key:?} has no representative")))?;
        if !br.attachments.contains(&a) {
            return Err(Error::CertificationFailed(format!("{a} is not an attachment of bridge {key:?}")));
        }
        if br.attachments.len() > 3 {
            return Err(Error::PreconditionFailed(format!("bridge {key:?} has {} attachments", br.attachments.len())));
        }
        let ((walk, twice), strict) = with_bridge_chain(g, &br, a, &delta_edges, chain_walk)?;
        if !strict {
            loose.push(key);
        }
        let others: Vec<V> = br.attachments.iter().copied().filter(|&v| v != a).collect();
        let mut rep_cut = br.attachments.iter().copied().collect::<Vec<_>>();
        rep_cut.sort_unstable();
        pending.push((a, TwiceClass::Representative, key, rep_cut));
        for (v, class, cut) in twice {
            let mut c = cut;
            if class != TwiceClass::Internal3Cut {
                c.extend(others.iter().copied());
            }
            pending.push((v, class, key, c));
        }
        detours.insert(a, walk);
    }

    let mut verts = Vec::new();
    for (i, &v) in p.iter().enumerate() {
        verts.push(v);
        if let Some(w) = detours.get(&v) {
            verts.extend_from_slice(&w[1..]);
            // a detour at the end of the path need not come back
            if i + 1 < p.len() {
                verts.push(v);
            }
        }
    }
    let last = p.last().copied();
    pending.retain(|&(v, class, _, _)| !(class == TwiceClass::Representative && Some(v) == last));
    let walk = TwoWalk::new(WalkSeq::open(verts));

    let mut twice = Vec::new();
    for (v, class, bridge, predicted) in pending {
        let (cut, ok) = match certify(g, v, predicted, ctx.cut_bound) {
            Some(c) => (c, true),
            None => match find_small_cut_containing(g, v, ctx.cut_bound) {
                Some(c) => (c, false),
                None => {
                    return Err(Error::CertificationFailed(format!(
                        "vertex {v} is used twice but lies in no cut of size <= {}",
                        ctx.cut_bound
                    )))
                }
            },
        };
        twice.push(TwiceUsed { v, class, bridge, cut, predicted: ok });
    }
    twice.sort_by_key(|u| u.v);
    if let Some(e) = two_walk_problem(g, &walk, ctx.cut_bound) {
        return Err(Error::CertificationFailed(e));
    }
    Ok(SpliceReport { walk, twice, loose_bridges: loose })
}

/// The smallest subset of `cand` containing `v` that separates `g`.
fn certify(g: &PlaneGraph, v: V, cand: Vec<V>, bound: usize) -> Option<Vec<V>> {
    let mut c: Vec<V> = cand.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    c.retain(|&w| w != v);
    let mut best: Option<Vec<V>> = None;
    for mask in 0u32..(1 << c.len()) {
        let mut s: Vec<V> = (0..c.len()).filter(|i| mask >> i & 1 == 1).map(|i| c[i]).collect();
        s.push(v);
        if s.len() > bound || best.as_ref().is_some_and(|b| b.len() <= s.len()) {
            continue;
        }
        let del: HashSet<V> = s.iter().copied().collect();
        if components_without(g, &del).len() >= 2 {
            s.sort_unstable();
            best = Some(s);
        }
    }
    best
}

/// Decomposes the bridge `br` at its representative `a` into a chain of
/// circuit blocks and hands it to `build`. The flag says whether the bridge
/// met the connectivity the decomposition lemma asks for.
pub(crate) fn with_bridge_chain<T>(
    g: &PlaneGraph,
    br: &BridgeRec,
    a: V,
    delta: &BTreeSet<Edge>,
    build: impl Fn(&CircuitChain) -> Result<T>,
) -> Result<(T, bool)> {
    let edges: HashSet<Edge> = br.edge_set.iter().copied().collect();
    let l = g.restrict(&br.vertex_set, &edges, None);
    let others: Vec<V> = br.attachments.iter().copied().filter(|&v| v != a).collect();
    let mut last = Error::PreconditionFailed(format!("bridge {:?} has no usable outer face", br.key()));
    for lf in &outer_choices(&l) {
        match decompose(lf, a, &others, delta).and_then(|ch| build(&ch)) {
            Ok(t) => return Ok((t, true)),
            Err(e) => last = e,
        }
    }
    // Near the last ring of a truncation a bridge can lose the connectivity
    // it has in the whole graph; then read l minus the other attachments as
    // a chain directly.
    let k = l.remove_vertices(&others.iter().copied().collect());
    if let Ok(t) = chain_from(&k, a).and_then(|ch| build(&ch)) {
        return Ok((t, false));
    }
    Err(last)
}

/// `k` as a chain of circuit blocks from `a` to some vertex of its outer walk.
fn chain_from(k: &PlaneGraph, a: V) -> Result<CircuitChain> {
    let mut seen = BTreeSet::from([a]);
    for d in k.outer_walk_verts() {
        if seen.insert(d) {
            if let Ok(ch) = circuit_chain_between(k, a, d) {
                return Ok(ch);
            }
        }
    }
    Err(Error::PreconditionFailed("not a chain of circuit blocks".into()))
}

/// `l` with its inherited outer face first, then with every other face.
fn outer_choices(l: &PlaneGraph) -> Vec<PlaneGraph> {
    let mut out = vec![l.clone()];
    let faces = l.faces();
    for (i, ds) in faces.darts.iter().enumerate() {
        if Some(i) != faces.outer {
            out.push(l.with_outer_dart(ds[0]));
        }
    }
    out
}

fn decompose(l: &PlaneGraph, a: V, others: &[V], delta: &BTreeSet<Edge>) -> Result<CircuitChain> {
    let ow = l.outer_walk_verts();
    match others {
        [] => chain_from(l, a),
        &[b] => {
            let s1 = segment(&ow, a, b)?;
            let s2 = segment(&ow, b, a)?;
            let on = |s: &[V]| s.windows(2).all(|w| delta.contains(&ek(w[0], w[1])));
            // R is the side on Δ; the shorter one if both are, ids breaking ties
            let mut order = vec![(!on(&s1), s1.len(), s1, false), (!on(&s2), s2.len(), s2, true)];
            order.sort();
            let mut last = None;
            for (_, _, _, mirrored) in order {
                let r = if mirrored { bridge_decomp_2att(&l.mirror(), a, b) } else { bridge_decomp_2att(l, a, b) };
                match r {
                    Ok((ch, _)) => return Ok(ch),
                    Err(e) => last = Some(e),
                }
            }
            Err(last.expect("two orders"))
        }
        &[p, q] => {
            let (b, c) = if segment(&ow, a, p)?.contains(&q) { (q, p) } else { (p, q) };
            Ok(bridge_decomp_3att(l, a, b, c)?.0)
        }
        _ => Err(Error::PreconditionFailed("more than three attachments".into())),
    }
}

type Twice = Vec<(V, TwiceClass, Vec<V>)>;

/// Strings the block walks of a chain together into one closed walk from its
/// start.
fn chain_walk(ch: &CircuitChain) -> Result<(Vec<V>, Twice)> {
    let cuts = &ch.chain.cuts;
    let mut w: Vec<V> = vec![cuts[0]];
    let mut twice: Twice = Vec::new();
    for (i, blk) in ch.chain.blocks.iter().enumerate() {
        let bw = block_walk(blk, cuts[i], cuts[i + 1])?;
        for (&v, c) in &bw.cuts {
            let class = if c.len() == 3 { TwiceClass::Internal3Cut } else { TwiceClass::SideTwoCut };
            twice.push((v, class, c.clone()));
        }
        if i == 0 {
            w = bw.walk.walk.verts;
            continue;
        }
        let pos = w.iter().position(|&v| v == cuts[i]).expect("cut vertex on the walk");
        let mut next = w[..=pos].to_vec();
        next.extend_from_slice(&bw.walk.walk.verts[1..]);
        next.push(cuts[i]);
        next.extend_from_slice(&w[pos + 1..]);
        w = next;
        twice.push((cuts[i], TwiceClass::ChainCut, vec![cuts[i]]));
    }
    Ok((w, twice))
}
