//! The finite version of the limiting argument that turns the paths `Q_n`
//! into one 1-way infinite path: stabilized prefixes `P_i`, assignment
//! restrictions `σ_i` and the surviving index sets `A_i`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::connectivity::{bridges_of, Sub};
use crate::error::{Error, Result};
use crate::graph::{Edge, PlaneGraph, V};
use crate::nets::{FamilyGen, FamilyKind};
use crate::tutte::SdrAssign;

use super::ladder::{ladder_in_net, Side};
use super::radial::radial_in_net;

/// One step `i` of the experiment.
#[derive(Debug, Clone, Serialize)]
pub struct LimitLevel {
    pub i: usize,
    /// `P_i`, from `u` to its first vertex on `D_{i+2}`.
    pub prefix: Vec<V>,
    /// `A_i'`: the runs that start with `P_i`.
    pub candidates: Vec<usize>,
    /// `σ_i` as (bridge key, representative) pairs.
    pub sigma: Vec<(Edge, V)>,
    /// `A_i`: the runs in `A_i'` whose assignment restricts to `σ_i`.
    pub survivors: Vec<usize>,
    /// Pairs of runs in `A_i'` compared bridge by bridge inside `I(C_i)`.
    pub pairs_checked: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct PrefixLimitReport {
    pub family: String,
    pub levels_built: usize,
    pub u: V,
    pub levels: Vec<LimitLevel>,
    /// Largest `i` with `|A_i| >= 2`, if any.
    pub stabilization_depth: Option<usize>,
    /// Steps where fewer than two runs survived.
    pub thin_levels: Vec<usize>,
    /// `P_i` is an initial segment of `P_j` for all `i < j`.
    pub prefixes_nested: bool,
    /// `σ_j` extends `σ_i` for all `i < j`.
    pub sigma_extends: bool,
    /// Every run in `A_i'` has the same nontrivial bridges inside `I(C_i)`,
    /// with the same attachments, as `P_i` in `I(C_{i+2})`.
    pub bridges_agree: bool,
}

struct Run {
    path: Vec<V>,
    sdr: SdrAssign,
    graph: PlaneGraph,
}

type BridgeSig = BTreeSet<(Vec<Edge>, Vec<V>)>;

/// Builds `Q_1..Q_N` and runs the prefix-stabilization argument on them.
pub fn limit_experiment(f: &FamilyGen, n_max: usize) -> Result<PrefixLimitReport> {
    if n_max < 4 {
        return Err(Error::InsufficientLevels(n_max));
    }
    let kind = f.kind();
    if kind != FamilyKind::Radial && kind != FamilyKind::Ladder {
        return Err(Error::PreconditionFailed(format!("{} has no net", f.name)));
    }
    let top = f.level(n_max)?.net.ok_or_else(|| Error::PreconditionFailed("no net".into()))?;
    let u = match kind {
        FamilyKind::Radial => top.c(1)[0],
        _ => top.x[0],
    };
    let mut runs: BTreeMap<usize, Run> = BTreeMap::new();
    for n in 1..=n_max {
        let net = f.level(n)?.net.ok_or_else(|| Error::PreconditionFailed("no net".into()))?;
        if net.cycles[..] != top.cycles[..n] {
            return Err(Error::PreconditionFailed(format!("level {n} is not a prefix of level {n_max}")));
        }
        let (path, sdr) = match kind {
            FamilyKind::Radial => {
                let r = radial_in_net(&net, u)?;
                (r.path, r.sdr)
            }
            _ => {
                let r = ladder_in_net(&net, 0, n, Side::X)?;
                (r.path, r.sdr)
            }
        };
        runs.insert(n, Run { path, sdr, graph: net.carrier.clone() });
    }

    let mut levels: Vec<LimitLevel> = Vec::new();
    let mut alive: Vec<usize> = (1..=n_max).collect();
    let mut bridges_agree = true;
    for i in 1..=n_max - 2 {
        let cand: Vec<usize> = alive.iter().copied().filter(|&n| n >= i + 2).collect();
        if cand.is_empty() {
            break;
        }
        let d_next: BTreeSet<V> = top.d(i + 2).iter().copied().collect();
        let mut by_prefix: BTreeMap<Vec<V>, Vec<usize>> = BTreeMap::new();
        for &n in &cand {
            let p = &runs[&n].path;
            let cut = p
                .iter()
                .position(|v| d_next.contains(v))
                .ok_or_else(|| Error::CertificationFailed(format!("Q_{n} never meets D_{}", i + 2)))?;
            by_prefix.entry(p[..=cut].to_vec()).or_default().push(n);
        }
        // the largest group; BTreeMap order breaks ties lexicographically
        let (prefix, group) = largest(by_prefix);
        let inner = top.inside(i + 2)?;
        let ci = top.inside(i)?;
        let b_i = inside_bridges(&inner, &prefix, &ci);
        let keys: BTreeSet<Edge> = b_i.iter().map(|(e, _)| e[0]).collect();
        let mut by_sigma: BTreeMap<Vec<(Edge, V)>, Vec<usize>> = BTreeMap::new();
        for &n in &group {
            let run = &runs[&n];
            if inside_bridges(&run.graph, &run.path, &ci) != b_i {
                bridges_agree = false;
            }
            let restr: Vec<(Edge, V)> =
                run.sdr.assignment.iter().filter(|(e, _)| keys.contains(e)).map(|(&e, &v)| (e, v)).collect();
            by_sigma.entry(restr).or_default().push(n);
        }
        let (sigma, survivors) = largest(by_sigma);
        let g = group.len();
        levels.push(LimitLevel { i, prefix, candidates: group, sigma, survivors: survivors.clone(), pairs_checked: g * (g - 1) / 2 });
        alive = survivors;
    }

    let prefixes_nested = levels.windows(2).all(|w| w[1].prefix.starts_with(&w[0].prefix));
    let sigma_extends = levels.windows(2).all(|w| {
        let later: BTreeMap<Edge, V> = w[1].sigma.iter().copied().collect();
        w[0].sigma.iter().all(|(e, v)| later.get(e) == Some(v))
    });
    let stabilization_depth = levels.iter().filter(|l| l.survivors.len() >= 2).map(|l| l.i).max();
    let thin_levels = levels.iter().filter(|l| l.survivors.len() < 2).map(|l| l.i).collect();
    Ok(PrefixLimitReport {
        family: f.name.clone(),
        levels_built: n_max,
        u,
        levels,
        stabilization_depth,
        thin_levels,
        prefixes_nested,
        sigma_extends,
        bridges_agree,
    })
}

fn largest<K: Ord>(groups: BTreeMap<K, Vec<usize>>) -> (K, Vec<usize>) {
    let mut best: Option<(K, Vec<usize>)> = None;
    for (k, g) in groups {
        if best.as_ref().is_none_or(|(_, b)| g.len() > b.len()) {
            best = Some((k, g));
        }
    }
    best.expect("at least one group")
}

/// The nontrivial `path`-bridges of `g` lying inside `within`, by edge set and
/// attachments.
fn inside_bridges(g: &PlaneGraph, path: &[V], within: &PlaneGraph) -> BridgeSig {
    let verts = within.vertex_set();
    let edges: BTreeSet<Edge> = within.edges().into_iter().collect();
    bridges_of(g, &Sub::from_path(path))
        .into_iter()
        .filter(|b| !b.trivial && b.vertex_set.is_subset(&verts) && b.edge_set.is_subset(&edges))
        .map(|b| (b.edge_set.into_iter().collect(), b.attachments.into_iter().collect()))
        .collect()
}
