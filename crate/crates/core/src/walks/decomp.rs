//! A bridge with two or three attachments, minus all attachments but one,
//! read as a plane chain of circuit blocks.

use std::collections::BTreeSet;

use crate::circuit::{circuit_chain_between, CircuitChain};
use crate::connectivity::is_ks_connected;
use crate::error::{Error, Result};
use crate::graph::{segment, PlaneGraph, V};

fn once_on(ow: &[V], v: V) -> bool {
    ow.iter().filter(|&&w| w == v).count() == 1
}

fn neighbours(l: &PlaneGraph, v: V) -> BTreeSet<V> {
    l.rotation(v).iter().copied().collect()
}

fn seg_set(ow: &[V], a: V, b: V) -> Option<BTreeSet<V>> {
    segment(ow, a, b).ok().map(|s| s.into_iter().collect())
}

/// For a `(3, {a, b, c})`-connected `l` with `a, b, c` once each on its outer
/// walk in clockwise order: `l - {b, c}` as a chain of circuit blocks from
/// `a` to `d`, where `N(b) ⊆ X_K[a, d] ∪ {c}` and `N(c) ⊆ X_K[d, a] ∪ {b}`.
pub fn bridge_decomp_3att(l: &PlaneGraph, a: V, b: V, c: V) -> Result<(CircuitChain, V)> {
    if a == b || b == c || a == c {
        return Err(Error::PreconditionFailed("a, b and c must be distinct".into()));
    }
    let ow = l.outer_walk_verts();
    if ![a, b, c].iter().all(|&v| once_on(&ow, v)) {
        return Err(Error::PreconditionFailed("a, b and c must each appear once on the outer walk".into()));
    }
    let ab = segment(&ow, a, b)?;
    if ab.contains(&c) {
        return Err(Error::PreconditionFailed("a, b, c are not in clockwise order".into()));
    }
    if !is_ks_connected(l, 3, &BTreeSet::from([a, b, c]))? {
        return Err(Error::PreconditionFailed("not (3, {a, b, c})-connected".into()));
    }
    let k = l.remove_vertices(&BTreeSet::from([b, c]));
    let nb: BTreeSet<V> = neighbours(l, b).into_iter().filter(|&v| v != c).collect();
    let nc: BTreeSet<V> = neighbours(l, c).into_iter().filter(|&v| v != b).collect();
    if k.vertex_count() == 1 {
        return Ok((circuit_chain_between(&k, a, a)?, a));
    }
    let kw = k.outer_walk_verts();
    if !once_on(&kw, a) {
        return Err(Error::PreconditionFailed(format!("{a} is a cut vertex of l - {{b, c}}")));
    }
    for d in candidates(&kw, a) {
        let (Some(left), Some(right)) = (seg_set(&kw, a, d), seg_set(&kw, d, a)) else {
            continue;
        };
        if nb.is_subset(&left) && nc.is_subset(&right) {
            if let Ok(ch) = circuit_chain_between(&k, a, d) {
                return Ok((ch, d));
            }
        }
    }
    Err(Error::PreconditionFailed("l - {b, c} is not a chain of circuit blocks with the neighbour containments".into()))
}

/// For a `(3, X_l[a, b])`-connected `l`: `l - b` as a chain of circuit blocks
/// from `a` to the neighbour `d` of `b` on `X_l[a, b]`, where
/// `N(b) ⊆ X_K[d, a]`.
pub fn bridge_decomp_2att(l: &PlaneGraph, a: V, b: V) -> Result<(CircuitChain, V)> {
    if a == b {
        return Err(Error::PreconditionFailed("a and b must differ".into()));
    }
    let ow = l.outer_walk_verts();
    let r = segment(&ow, a, b)?;
    if !is_ks_connected(l, 3, &r.iter().copied().collect())? {
        return Err(Error::PreconditionFailed("not (3, X_l[a, b])-connected".into()));
    }
    let d = r[r.len() - 2];
    let k = l.remove_vertices(&BTreeSet::from([b]));
    let ch = circuit_chain_between(&k, a, d)?;
    if k.vertex_count() > 1 {
        let kw = k.outer_walk_verts();
        let right = seg_set(&kw, d, a)
            .ok_or_else(|| Error::PreconditionFailed(format!("{d} or {a} repeats on the outer walk of l - b")))?;
        if !neighbours(l, b).is_subset(&right) {
            return Err(Error::PreconditionFailed("N(b) is not inside X_K[d, a]".into()));
        }
    }
    Ok((ch, d))
}

/// Outer-walk vertices after `a`, in clockwise order, without repeats.
fn candidates(kw: &[V], a: V) -> Vec<V> {
    let i = kw.iter().position(|&v| v == a).expect("a on walk");
    let mut seen = BTreeSet::from([a]);
    (1..kw.len()).map(|j| kw[(i + j) % kw.len()]).filter(|&v| seen.insert(v)).collect()
}
