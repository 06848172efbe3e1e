//! Circuit graphs, circuit blocks and plane chains of circuit blocks.
//!
//! A circuit graph `(G, C)` is a plane graph with a facial cycle `C` such
//! that `G` is `(3, V(C))`-connected. This is equivalent to Barnette's
//! original definition via internal 3-separations.

use std::collections::BTreeSet;

use crate::connectivity::{as_chain, chain_along_path, ks_violation, BlockChain};
use crate::error::{Error, Result};
use crate::graph::{check_cycle, PlaneGraph, WalkSeq, V};

/// A block chain whose blocks are all circuit blocks.
#[derive(Debug, Clone)]
pub struct CircuitChain {
    pub chain: BlockChain,
    /// Outer cycle of each block, `None` for an edge block.
    pub outer_cycles: Vec<Option<Vec<V>>>,
}

impl CircuitChain {
    pub fn start(&self) -> V {
        self.chain.start()
    }

    pub fn end(&self) -> V {
        self.chain.end()
    }
}

fn same_cyclic(a: &[V], b: &[V]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let n = a.len();
    let Some(s) = b.iter().position(|&x| x == a[0]) else {
        return false;
    };
    (0..n).all(|i| a[i] == b[(s + i) % n]) || (0..n).all(|i| a[i] == b[(s + n - i) % n])
}

/// True if `c` bounds some face of the stored embedding.
pub fn is_facial(g: &PlaneGraph, c: &[V]) -> bool {
    g.faces().walks.iter().any(|w| same_cyclic(c, w))
}

pub fn is_circuit_graph(g: &PlaneGraph, c: &[V]) -> Result<bool> {
    check_cycle(g, c)?;
    if !is_facial(g, c) {
        return Err(Error::CycleNotFacial);
    }
    let s: BTreeSet<V> = c.iter().copied().collect();
    Ok(ks_violation(g, 3, &s)?.is_none())
}

/// The outer walk if it is a cycle.
pub fn outer_cycle(g: &PlaneGraph) -> Option<Vec<V>> {
    let w = g.outer_walk_verts();
    let distinct: BTreeSet<V> = w.iter().copied().collect();
    (w.len() >= 3 && distinct.len() == w.len()).then_some(w)
}

pub fn is_circuit_block(g: &PlaneGraph) -> bool {
    if !g.is_connected() {
        return false;
    }
    if g.vertex_count() == 2 && g.edge_count() == 1 {
        return true;
    }
    match outer_cycle(g) {
        Some(c) => is_circuit_graph(g, &c).unwrap_or(false),
        None => false,
    }
}

fn certify(chain: BlockChain) -> Result<CircuitChain> {
    let mut outer_cycles = Vec::new();
    for (i, b) in chain.blocks.iter().enumerate() {
        if b.edge_count() == 1 {
            outer_cycles.push(None);
            continue;
        }
        let c = outer_cycle(b)
            .ok_or_else(|| Error::PreconditionFailed(format!("block {} has no outer cycle", i + 1)))?;
        let s: BTreeSet<V> = c.iter().copied().collect();
        if let Some(v) = ks_violation(b, 3, &s)? {
            return Err(Error::PreconditionFailed(format!(
                "block {} is not a circuit graph: vertex {v} has fewer than 3 disjoint paths to its outer cycle",
                i + 1
            )));
        }
        outer_cycles.push(Some(c));
    }
    Ok(CircuitChain { chain, outer_cycles })
}

/// Reads `g` as a plane chain of circuit blocks from `a` to `b`, checking
/// each block directly.
pub fn circuit_chain_between(g: &PlaneGraph, a: V, b: V) -> Result<CircuitChain> {
    certify(as_chain(g, a, b)?)
}

/// Decomposes `g` (or `g - c` when `c` is given) as a plane chain of circuit
/// blocks along the path `p` on the outer walk.
pub fn chain_of_circuit_blocks(g: &PlaneGraph, p: &[V], c: Option<V>) -> Result<CircuitChain> {
    if !WalkSeq::open(p.to_vec()).is_path_in(g) {
        return Err(Error::NotAPath(format!("{p:?}")));
    }
    let outer: BTreeSet<V> = g.outer_walk_verts().into_iter().collect();
    if let Some(&v) = p.iter().find(|v| !outer.contains(v)) {
        return Err(Error::PreconditionFailed(format!("path vertex {v} is not on the outer walk")));
    }
    let mut s: BTreeSet<V> = p.iter().copied().collect();
    if let Some(c) = c {
        if !outer.contains(&c) || s.contains(&c) {
            return Err(Error::PreconditionFailed(format!("{c} must be an outer vertex off the path")));
        }
        s.insert(c);
    }
    if let Some(v) = ks_violation(g, 3, &s)? {
        return Err(Error::PreconditionFailed(format!(
            "not (3, S)-connected: vertex {v} has fewer than 3 disjoint paths to S"
        )));
    }
    let h = match c {
        Some(c) => g.remove_vertices(&BTreeSet::from([c])),
        None => g.clone(),
    };
    let chain = chain_along_path(&h, p)?;
    let covered: usize = chain.blocks.iter().map(|b| b.edge_count()).sum();
    if covered != h.edge_count() || (chain.is_empty() && h.vertex_count() != 1) {
        return Err(Error::PreconditionFailed("blocks off the path remain".into()));
    }
    certify(chain)
}
