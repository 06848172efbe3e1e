//! Deterministic generators for the built-in infinite families.
//!
//! Each family is grown level by level. Vertex ids and random draws are
//! consumed in level order, so level `k` is exactly the inside of `C_k` in
//! level `k + 1`.

use std::collections::{BTreeMap, BTreeSet};

use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::build::{rotate_to, step, zipper, Layout, Step};
use super::{tight_problem, NetKind, NetPrefix};
use crate::connectivity::ks_violation;
use crate::error::{Error, Result};
use crate::graph::{GraphJson, PlaneGraph, V};

pub const FAMILY_NAMES: [&str; 10] = [
    "radial-triangular",
    "radial-hex",
    "ladder-square",
    "ladder-triangular",
    "chain-blocks-2apex",
    "apex-ladder",
    "random-tight-radial",
    "random-tight-ladder",
    "bipartite-radial",
    "bipartite-ladder",
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum FamilyKind {
    Radial,
    Ladder,
    Chain,
}

/// `{ "name": ..., "params": {...}, "seed": ... }`
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyDescriptor {
    pub name: String,
    #[serde(default)]
    pub params: BTreeMap<String, i64>,
    #[serde(default)]
    pub seed: u64,
}

#[derive(Debug, Clone)]
pub struct FamilyGen {
    pub name: String,
    pub params: BTreeMap<String, i64>,
    pub seed: u64,
    kind: FamilyKind,
}

/// A finite prefix of a plane chain of circuit blocks.
#[derive(Debug, Clone)]
pub struct ChainPrefix {
    /// The chain `H` without the apex edges.
    pub host: PlaneGraph,
    /// Vertex set of each block `B_1..B_k`.
    pub blocks: Vec<BTreeSet<V>>,
    /// `b_1..b_k`; `b_k` is the right end of the last block.
    pub cuts: Vec<V>,
}

#[derive(Debug, Clone)]
pub struct FamilyLevel {
    pub level: usize,
    /// The finite graph, including apex edges.
    pub graph: PlaneGraph,
    /// Net prefix in the apex-free host (radial and ladder families).
    pub net: Option<NetPrefix>,
    pub chain: Option<ChainPrefix>,
    /// The declared infinite-degree vertices `F`.
    pub apex: Vec<V>,
}

impl FamilyLevel {
    pub fn to_json(&self) -> GraphJson {
        let mut j = self.graph.to_json();
        let mut a = self.net.as_ref().map(|n| n.annotations()).unwrap_or_default();
        if let Some(c) = &self.chain {
            a.insert("cuts".into(), c.cuts.clone());
            for (i, b) in c.blocks.iter().enumerate() {
                a.insert(format!("B{}", i + 1), b.iter().copied().collect());
            }
        }
        if !self.apex.is_empty() {
            a.insert("F".into(), self.apex.clone());
        }
        j.annotations = Some(a);
        j
    }
}

pub fn builtin_families(name: &str, params: &BTreeMap<String, i64>, seed: u64) -> Result<FamilyGen> {
    let kind = match name {
        "radial-triangular" | "radial-hex" | "random-tight-radial" | "bipartite-radial" => FamilyKind::Radial,
        "ladder-square" | "ladder-triangular" | "apex-ladder" | "random-tight-ladder" | "bipartite-ladder" => {
            FamilyKind::Ladder
        }
        "chain-blocks-2apex" => FamilyKind::Chain,
        other => return Err(Error::UnknownFamily(other.to_string())),
    };
    let known: &[&str] = match name {
        "radial-triangular" => &["growth"],
        "chain-blocks-2apex" => &["rim"],
        _ => &[],
    };
    if let Some(k) = params.keys().find(|k| !known.contains(&k.as_str())) {
        return Err(Error::PreconditionFailed(format!("{name} has no parameter {k}")));
    }
    let g = FamilyGen { name: name.to_string(), params: params.clone(), seed, kind };
    if g.param("growth", 6) < 1 || g.param("rim", 6) < 4 {
        return Err(Error::PreconditionFailed("growth must be >= 1 and rim >= 4".into()));
    }
    Ok(g)
}

impl FamilyGen {
    pub fn from_descriptor(d: &FamilyDescriptor) -> Result<Self> {
        builtin_families(&d.name, &d.params, d.seed)
    }

    pub fn descriptor(&self) -> FamilyDescriptor {
        FamilyDescriptor { name: self.name.clone(), params: self.params.clone(), seed: self.seed }
    }

    pub fn kind(&self) -> FamilyKind {
        self.kind
    }

    fn param(&self, key: &str, default: i64) -> i64 {
        self.params.get(key).copied().unwrap_or(default)
    }

    pub fn is_bipartite_family(&self) -> bool {
        matches!(self.name.as_str(), "bipartite-radial" | "bipartite-ladder" | "ladder-square" | "radial-hex")
    }

    pub fn is_triangulated_family(&self) -> bool {
        matches!(self.name.as_str(), "radial-triangular" | "ladder-triangular")
    }

    /// The carrier and prefix of length `k`.
    pub fn level(&self, k: usize) -> Result<FamilyLevel> {
        if k == 0 {
            return Err(Error::BadRange("levels start at 1".into()));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        match self.name.as_str() {
            "radial-triangular" => {
                let g = self.param("growth", 6) as usize;
                radial(k, 3, |_, ring, _, _| (0, zipper(ring.len(), ring.len() + g)), false)
            }
            "radial-hex" => radial(k, 6, |_, ring, spoked, _| hex_steps(ring, spoked), false),
            "bipartite-radial" => radial(k, 4, |_, ring, spoked, _| (0, quad_steps(ring, spoked, true)), false),
            "random-tight-radial" => {
                let first = 3 + rng.gen_range(0..3);
                radial(k, first, |_, ring, _, _| (0, random_steps(&mut rng, ring.len(), true)), true)
            }
            "ladder-square" => ladder(k, |_, path, spoked, _| quad_steps(path, spoked, false), false).map(|(l, _)| l),
            "bipartite-ladder" => ladder(
                k,
                |_, path, spoked, _| {
                    // an occasional extra corner in the middle third of D_i
                    let mut extra = BTreeSet::new();
                    if path.len() >= 3 && rng.gen_bool(0.5) {
                        let lo = path.len() / 3;
                        let hi = (2 * path.len() / 3).max(lo + 1);
                        extra.insert(path[rng.gen_range(lo..hi)]);
                    }
                    let spoked: BTreeSet<V> = spoked.difference(&extra).copied().collect();
                    quad_steps(path, &spoked, false)
                },
                false,
            )
            .map(|(l, _)| l),
            "ladder-triangular" => {
                ladder(k, |_, path, spoked, _| split_quads(&quad_steps(path, spoked, false)), false).map(|(l, _)| l)
            }
            "random-tight-ladder" => ladder(
                k,
                |i, path, _, _| {
                    let mut s = random_steps(&mut rng, path.len(), false);
                    if i == 0 {
                        // D_0 is one vertex: make D_1 at least three vertices long
                        while s.iter().map(|t| t.m).sum::<usize>() < 2 {
                            s.push(step(0, 1));
                        }
                    }
                    s
                },
                true,
            )
            .map(|(l, _)| l),
            "apex-ladder" => apex_ladder(k),
            "chain-blocks-2apex" => chain_blocks(k, self.param("rim", 6) as usize),
            other => Err(Error::UnknownFamily(other.to_string())),
        }
    }
}

const RETRIES: usize = 24;

/// Grows a radial family. `steps(i, ring, spoked, retry)` returns a rotation
/// of the ring and the strip steps for the `i`-th annulus.
fn radial<F>(k: usize, first: usize, mut steps: F, checked: bool) -> Result<FamilyLevel>
where
    F: FnMut(usize, &[V], &BTreeSet<V>, usize) -> (usize, Vec<Step>),
{
    let mut lay = Layout::default();
    let ring1 = lay.fresh_n(first);
    let mut hole: Vec<V> = ring1.iter().rev().copied().collect();
    hole.rotate_right(1);
    lay.faces.push(hole);
    let mut rings = vec![ring1];
    let mut spoked = BTreeSet::new();
    for i in 1..k {
        let ring = rings[i - 1].clone();
        let mut accepted = None;
        for retry in 0..=RETRIES {
            let (rot, st) = if retry == RETRIES { (0, zipper(ring.len(), ring.len() + 4)) } else { steps(i, &ring, &spoked, retry) };
            let mut trial = lay.clone();
            let out = trial.strip(&rotate_to(&ring, rot), true, &st);
            if !checked || radial_ok(&trial, &rings, &out.outer)? {
                accepted = Some((trial, out));
                break;
            }
        }
        let (trial, out) = accepted.expect("the plain zipper always passes");
        lay = trial;
        spoked = out.spoked;
        rings.push(out.outer);
    }
    let carrier = radial_graph(&lay, &rings)?;
    let mut d = vec![Vec::new()];
    d.extend(rings.iter().cloned());
    let net = NetPrefix { kind: NetKind::Radial, carrier: carrier.clone(), cycles: rings, d, x: vec![], y: vec![], boundary: vec![] };
    Ok(FamilyLevel { level: k, graph: carrier, net: Some(net), chain: None, apex: vec![] })
}

fn radial_graph(lay: &Layout, rings: &[Vec<V>]) -> Result<PlaneGraph> {
    let outer = rings.last().expect("at least one ring").clone();
    let mut faces = lay.faces.clone();
    faces.push(outer.clone());
    PlaneGraph::from_faces(&faces, (outer[0], outer[1]))
}

fn radial_ok(lay: &Layout, rings: &[Vec<V>], new_ring: &[V]) -> Result<bool> {
    let mut all = rings.to_vec();
    all.push(new_ring.to_vec());
    let g = radial_graph(lay, &all)?;
    let s: BTreeSet<V> = all[0].iter().chain(new_ring).copied().collect();
    if ks_violation(&g, 3, &s)?.is_some() {
        return Ok(false);
    }
    let mut d = vec![Vec::new()];
    d.extend(all.iter().cloned());
    let net = NetPrefix { kind: NetKind::Radial, carrier: g, cycles: all, d, x: vec![], y: vec![], boundary: vec![] };
    Ok(tight_problem(&net, None).is_none())
}

/// Hexagonal annulus: every vertex without an inward spoke gets one outward
/// spoke, and each face is a hexagon.
fn hex_steps(ring: &[V], spoked: &BTreeSet<V>) -> (usize, Vec<Step>) {
    let pos: Vec<usize> = (0..ring.len()).filter(|&i| !spoked.contains(&ring[i])).collect();
    let start = pos[0];
    let rel: Vec<usize> = pos.iter().map(|p| p - start).collect();
    let mut out = Vec::with_capacity(rel.len());
    for j in 0..rel.len() {
        let next = if j + 1 < rel.len() { rel[j + 1] } else { ring.len() };
        let g = next - rel[j];
        assert!(g == 1 || g == 2, "hex ring has gap {g}");
        out.push(step(g, 4 - g));
    }
    (start, out)
}

/// Quadrilateral strip: vertices without an inward spoke become corners
/// with two outward spokes, all others get one. A one-vertex path gets two
/// corners.
fn quad_steps(side: &[V], spoked: &BTreeSet<V>, cyclic: bool) -> Vec<Step> {
    if side.len() == 1 {
        return vec![step(0, 2), step(0, 2)];
    }
    let mut out = Vec::new();
    for (t, v) in side.iter().enumerate() {
        if !spoked.contains(v) {
            out.push(step(0, 2));
        }
        if cyclic || t + 1 < side.len() {
            out.push(step(1, 1));
        }
    }
    out
}

/// Triangulated path strip used when random draws keep failing.
fn path_zipper(n: usize) -> Vec<Step> {
    let mut out = vec![step(0, 1)];
    for _ in 1..n {
        out.extend([step(1, 0), step(0, 1)]);
    }
    if n == 1 {
        out.push(step(0, 1));
    }
    out
}

/// Splits each quadrilateral step into two triangles, with the diagonal
/// leaning outward on both halves of the ladder.
fn split_quads(steps: &[Step]) -> Vec<Step> {
    let n = steps.len();
    let mut out = Vec::new();
    for (i, s) in steps.iter().enumerate() {
        let left = 2 * i < n;
        match (s.k, s.m) {
            (1, 1) if left => out.extend([step(0, 1), step(1, 0)]),
            (1, 1) => out.extend([step(1, 0), step(0, 1)]),
            (0, 2) => out.extend([step(0, 1), step(0, 1)]),
            _ => out.push(*s),
        }
    }
    out
}

/// Random strip: each inner vertex gets zero to two fan steps before the
/// step to its successor. Pockets only sit in triangles with a single outer
/// corner, which keeps the strip tight.
fn random_steps(rng: &mut ChaCha8Rng, n: usize, cyclic: bool) -> Vec<Step> {
    loop {
        let mut out = Vec::new();
        for t in 0..n {
            let fans = match rng.gen_range(0..20) {
                0..=10 => 0,
                11..=17 => 1,
                _ => 2,
            };
            for _ in 0..fans {
                out.push(step(0, if rng.gen_bool(0.3) { 2 } else { 1 }));
            }
            if cyclic || t + 1 < n {
                let m = usize::from(rng.gen_bool(0.4));
                let pocket = m == 0 && rng.gen_bool(0.15);
                out.push(Step { k: 1, m, pocket });
            }
        }
        let sum_m: usize = out.iter().map(|s| s.m).sum();
        if sum_m >= n + 2 {
            return out;
        }
    }
}

/// Ladder bookkeeping returned alongside the level.
pub(crate) struct LadderParts {
    pub layout: Layout,
    pub ds: Vec<Vec<V>>,
    pub bottoms: Vec<Vec<V>>,
}

fn ladder_cycle(d: &[V], bottom: &[V]) -> Vec<V> {
    let mut c = d.to_vec();
    if bottom.len() > 2 {
        c.extend(bottom[1..bottom.len() - 1].iter().rev());
    }
    c
}

fn ladder<F>(k: usize, mut steps: F, checked: bool) -> Result<(FamilyLevel, LadderParts)>
where
    F: FnMut(usize, &[V], &BTreeSet<V>, usize) -> Vec<Step>,
{
    let mut lay = Layout::default();
    let v0 = lay.fresh();
    let mut ds = vec![vec![v0]];
    let mut bottoms = vec![vec![v0]];
    // D_0 has no inward spokes, so it starts with corners
    let mut spoked: BTreeSet<V> = BTreeSet::new();
    for i in 0..k {
        let d = ds[i].clone();
        let mut accepted = None;
        for retry in 0..=RETRIES {
            let st = if retry == RETRIES { path_zipper(d.len()) } else { steps(i, &d, &spoked, retry) };
            let mut trial = lay.clone();
            let out = trial.strip(&d, false, &st);
            let mut b = vec![out.outer[0]];
            b.extend(bottoms[i].iter().copied());
            b.push(*out.outer.last().expect("nonempty"));
            if !checked || ladder_ok(&trial, &ds, &bottoms, &out.outer, &b)? {
                accepted = Some((trial, out, b));
                break;
            }
        }
        let (trial, out, b) = accepted.expect("the plain strip always passes");
        lay = trial;
        spoked = out.spoked;
        ds.push(out.outer);
        bottoms.push(b);
    }
    let net = ladder_net(&lay, &ds, &bottoms)?;
    let parts = LadderParts { layout: lay, ds, bottoms };
    Ok((FamilyLevel { level: k, graph: net.carrier.clone(), net: Some(net), chain: None, apex: vec![] }, parts))
}

fn ladder_net(lay: &Layout, ds: &[Vec<V>], bottoms: &[Vec<V>]) -> Result<NetPrefix> {
    let k = ds.len() - 1;
    let cycles: Vec<Vec<V>> = (1..=k).map(|i| ladder_cycle(&ds[i], &bottoms[i])).collect();
    let mut faces = lay.faces.clone();
    let outer = cycles[k - 1].clone();
    faces.push(outer.clone());
    let carrier = PlaneGraph::from_faces(&faces, (outer[0], outer[1]))?;
    Ok(NetPrefix {
        kind: NetKind::Ladder,
        carrier,
        cycles,
        d: ds.to_vec(),
        x: ds.iter().map(|d| d[0]).collect(),
        y: ds.iter().map(|d| d[d.len() - 1]).collect(),
        boundary: bottoms[k].clone(),
    })
}

fn ladder_ok(lay: &Layout, ds: &[Vec<V>], bottoms: &[Vec<V>], d: &[V], b: &[V]) -> Result<bool> {
    let mut ds = ds.to_vec();
    ds.push(d.to_vec());
    let mut bottoms = bottoms.to_vec();
    bottoms.push(b.to_vec());
    let net = ladder_net(lay, &ds, &bottoms)?;
    let s: BTreeSet<V> = net.cycles.last().expect("a cycle").iter().copied().collect();
    if ks_violation(&net.carrier, 3, &s)?.is_some() {
        return Ok(false);
    }
    Ok(tight_problem(&net, Some(&ds[0])).is_none())
}

/// The square ladder plus one apex at `x_0 = y_0`, joined to every vertex of
/// the boundary path.
fn apex_ladder(k: usize) -> Result<FamilyLevel> {
    let (mut lvl, parts) = ladder(k, |_, path, spoked, _| quad_steps(path, spoked, false), false)?;
    let f = parts.ds[0][0];
    let bottom = &parts.bottoms[k];
    let c = bottom.iter().position(|&v| v == f).expect("apex on the boundary");
    let mut faces = parts.layout.faces.clone();
    // bottom[c - j] is x_j and bottom[c + j] is y_j
    for j in 1..k {
        faces.push(vec![bottom[c + j + 1], bottom[c + j], f]);
        faces.push(vec![bottom[c - j], bottom[c - j - 1], f]);
    }
    let mut outer = parts.ds[k].clone();
    outer.push(f);
    faces.push(outer.clone());
    lvl.graph = PlaneGraph::from_faces(&faces, (outer[0], outer[1]))?;
    lvl.apex = vec![f];
    Ok(lvl)
}

/// A chain of wheels `B_1, b_1, B_2, ...` laid left to right. `f_2` is the
/// top neighbour and `f_1` the bottom neighbour of the left end of `B_1`;
/// they fan out to the top and bottom sides of the later blocks.
fn chain_blocks(k: usize, rim: usize) -> Result<FamilyLevel> {
    let mut lay = Layout::default();
    let top_n = (rim - 2) / 2;
    let mut wheel_faces = Vec::new();
    let mut blocks = Vec::new();
    let mut cuts = Vec::new();
    let mut tops: Vec<Vec<V>> = Vec::new();
    let mut bots: Vec<Vec<V>> = Vec::new();
    let mut left = lay.fresh();
    let first_left = left;
    for _ in 0..k {
        let mut r = vec![left];
        r.extend(lay.fresh_n(rim - 1));
        let h = lay.fresh();
        for j in 0..rim {
            wheel_faces.push(vec![r[(j + 1) % rim], r[j], h]);
        }
        tops.push(r[1..=top_n].to_vec());
        bots.push(r[top_n + 2..].to_vec());
        let right = r[top_n + 1];
        cuts.push(right);
        let mut set: BTreeSet<V> = r.iter().copied().collect();
        set.insert(h);
        blocks.push(set);
        left = right;
    }
    // top walk from the left end of B_1 to b_k, bottom walk from b_k back
    let mut top_walk = vec![first_left];
    for i in 0..k {
        top_walk.extend(tops[i].iter().copied());
        top_walk.push(cuts[i]);
    }
    let mut bot_walk = vec![cuts[k - 1]];
    for i in (0..k).rev() {
        bot_walk.extend(bots[i].iter().copied());
        bot_walk.push(if i == 0 { first_left } else { cuts[i - 1] });
    }
    let f2 = tops[0][0];
    let f1 = *bots[0].last().expect("bottom side");
    let mut host_faces = wheel_faces.clone();
    let mut h_outer = top_walk.clone();
    h_outer.extend(bot_walk[1..bot_walk.len() - 1].iter().copied());
    host_faces.push(h_outer.clone());
    let host = PlaneGraph::from_faces(&host_faces, (h_outer[0], h_outer[1]))?;

    // fans avoid f's own rim neighbours and the cut vertices
    let top_side: BTreeSet<V> = tops.iter().flatten().copied().collect();
    let bot_side: BTreeSet<V> = bots.iter().flatten().copied().collect();
    let t = &top_walk[1..];
    let f2_at = 0;
    let z: Vec<usize> = (f2_at + 2..t.len()).filter(|&i| top_side.contains(&t[i]) && t[i] != f2).collect();
    // t[0] is f2 and t[1] its rim neighbour
    let bw = &bot_walk[..bot_walk.len() - 1];
    let f1_at = bw.len() - 1;
    let w: Vec<usize> = (0..f1_at.saturating_sub(1)).filter(|&i| bot_side.contains(&bw[i])).collect();
    let mut faces = wheel_faces;
    let mut anchor = 0;
    for &zi in &z {
        let mut face: Vec<V> = t[anchor..=zi].to_vec();
        if anchor != 0 {
            face.push(f2);
        }
        faces.push(face);
        anchor = zi;
    }
    let mut outer = vec![f2];
    if let Some(&zp) = z.last() {
        outer.extend(t[zp..].iter().copied());
    } else {
        outer.extend(t[1..].iter().copied());
    }
    let mut prev: Option<usize> = None;
    for &wi in &w {
        if let Some(p) = prev {
            let mut face: Vec<V> = bw[p..=wi].to_vec();
            face.push(f1);
            faces.push(face);
        } else {
            outer.extend(bw[1..=wi].iter().copied());
        }
        prev = Some(wi);
    }
    match prev {
        Some(p) => {
            faces.push(bw[p..].to_vec());
            outer.push(f1);
        }
        None => outer.extend(bw[1..].iter().copied()),
    }
    outer.push(first_left);
    faces.push(outer.clone());
    let graph = PlaneGraph::from_faces(&faces, (outer[0], outer[1]))?;
    Ok(FamilyLevel {
        level: k,
        graph,
        net: None,
        chain: Some(ChainPrefix { host, blocks, cuts }),
        apex: vec![f1, f2],
    })
}
