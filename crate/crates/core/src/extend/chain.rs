//! Tutte paths along a plane chain of circuit blocks with two apex
//! vertices on the first block.

use std::collections::BTreeSet;

use crate::connectivity::Sub;
use crate::error::{Error, Result};
use crate::graph::{Edge, V};
use crate::nets::{ChainPrefix, FamilyGen, FamilyLevel};
use crate::tutte::{find_tutte_path, outer_edge_sub, resolve_sdr, verify_sdr, verify_tutte, SdrAssign};

use super::tips::join;

#[derive(Debug, Clone)]
pub struct ChainRun {
    pub path: Vec<V>,
    /// SDR of the path's bridges in the chain itself.
    pub host_sdr: SdrAssign,
    /// The same representatives, keyed by the bridges in the full graph.
    pub sdr: SdrAssign,
}

/// A Tutte path in the level-`k` graph from `u = f_1` through `v = f_2` to
/// the last cut vertex `b_k`, with an SDR of its bridges.
pub fn chain_construct(f: &FamilyGen, u: V, v: V, k: usize) -> Result<(Vec<V>, SdrAssign)> {
    let lvl = f.level(k)?;
    let run = chain_in_level(&lvl, u, v)?;
    Ok((run.path, run.sdr))
}

pub fn chain_in_level(lvl: &FamilyLevel, u: V, v: V) -> Result<ChainRun> {
    let ch: &ChainPrefix =
        lvl.chain.as_ref().ok_or_else(|| Error::PreconditionFailed("not a chain of blocks".into()))?;
    if lvl.apex.len() == 2 && (lvl.apex[0] != u || lvl.apex[1] != v) {
        return Err(Error::PreconditionFailed(format!("u and v must be f_1 = {} and f_2 = {}", lvl.apex[0], lvl.apex[1])));
    }
    let b1 = ch.cuts[0];
    if !ch.blocks[0].contains(&u) || !ch.blocks[0].contains(&v) || u == b1 || v == b1 {
        return Err(Error::PreconditionFailed("u and v must lie in B_1 - b_1".into()));
    }
    let mut path = Vec::new();
    let mut wit: Vec<(Edge, V)> = Vec::new();
    for (i, set) in ch.blocks.iter().enumerate() {
        let blk = ch.host.induced(set);
        let tp = if i == 0 {
            find_tutte_path(&blk, u, b1, v, u)?
        } else {
            let a = ch.cuts[i - 1];
            find_tutte_path(&blk, a, ch.cuts[i], a, a)?
        };
        join(&mut path, &tp.path)?;
        wit.extend(tp.sdr.assignment.iter().map(|(&e, &r)| (e, r)));
    }
    let t = Sub::from_path(&path);
    let distinct: BTreeSet<V> = path.iter().copied().collect();
    if distinct.len() != path.len() {
        return Err(Error::CertificationFailed("the block paths overlap".into()));
    }
    let host_sdr = resolve_sdr(&ch.host, &t, wit.iter().copied())?;
    if let Err(e) = verify_tutte(&ch.host, &outer_edge_sub(&ch.host), &t) {
        return Err(Error::CertificationFailed(format!("in the chain, bridge {:?}: {}", e.bridge.key(), e.reason)));
    }
    // apex edges only meet u and v, which are on the path
    let sdr = resolve_sdr(&lvl.graph, &t, wit)?;
    if let Err(e) = verify_tutte(&lvl.graph, &Sub::default(), &t) {
        return Err(Error::CertificationFailed(format!("bridge {:?}: {}", e.bridge.key(), e.reason)));
    }
    if !verify_sdr(&lvl.graph, &t, &sdr) {
        return Err(Error::CertificationFailed("the representatives are not an SDR".into()));
    }
    Ok(ChainRun { path, host_sdr, sdr })
}
