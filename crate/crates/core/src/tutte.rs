//! Tutte subgraphs, systems of distinct representatives, the exact Tutte
//! path search and the standard pieces built on it.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::circuit::{circuit_chain_between, CircuitChain};
use crate::connectivity::{bridges_of, chain_along_path, BridgeRec, Sub};
use crate::error::{Error, Result};
use crate::graph::{ek, Edge, PlaneGraph, V};

/// Injective map from nontrivial bridges (keyed by their smallest edge) to
/// representatives.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SdrAssign {
    pub assignment: BTreeMap<Edge, V>,
}

impl SdrAssign {
    pub fn reps(&self) -> BTreeSet<V> {
        self.assignment.values().copied().collect()
    }

    pub fn contains_rep(&self, v: V) -> bool {
        self.assignment.values().any(|&r| r == v)
    }

    pub fn len(&self) -> usize {
        self.assignment.len()
    }

    pub fn is_empty(&self) -> bool {
        self.assignment.is_empty()
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TutteCert {
    pub t: Sub,
    pub x: Sub,
    pub bridges: Vec<BridgeRec>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TutteViolation {
    pub bridge: BridgeRec,
    pub reason: String,
}

/// Checks that every `t`-bridge has at most three attachments, and at most
/// two if it contains an edge of `x`.
pub fn verify_tutte(g: &PlaneGraph, x: &Sub, t: &Sub) -> std::result::Result<TutteCert, TutteViolation> {
    let bridges = bridges_of(g, t);
    for b in &bridges {
        let n = b.attachments.len();
        if n > 3 {
            return Err(TutteViolation { bridge: b.clone(), reason: format!("{n} attachments") });
        }
        if n > 2 && b.edge_set.iter().any(|e| x.edges.contains(e)) {
            return Err(TutteViolation {
                bridge: b.clone(),
                reason: format!("{n} attachments and an edge of the context"),
            });
        }
    }
    Ok(TutteCert { t: t.clone(), x: x.clone(), bridges })
}

/// Describes why `sigma` is not an SDR of the nontrivial `t`-bridges.
pub fn sdr_problem(g: &PlaneGraph, t: &Sub, sigma: &SdrAssign) -> Option<String> {
    let bridges = bridges_of(g, t);
    let mut used = HashSet::new();
    let mut seen = 0;
    for b in bridges.iter().filter(|b| !b.trivial) {
        let Some(&r) = sigma.assignment.get(&b.key()) else {
            return Some(format!("bridge {:?} has no representative", b.key()));
        };
        seen += 1;
        if !b.attachments.contains(&r) {
            return Some(format!("representative {r} is not on bridge {:?} and T", b.key()));
        }
        if !used.insert(r) {
            return Some(format!("representative {r} used twice"));
        }
    }
    if seen != sigma.assignment.len() {
        return Some("assignment names a set that is not a nontrivial bridge".into());
    }
    None
}

pub fn verify_sdr(g: &PlaneGraph, t: &Sub, sigma: &SdrAssign) -> bool {
    sdr_problem(g, t, sigma).is_none()
}

/// Rebuilds an SDR of the `t`-bridges of `g` from (witness edge,
/// representative) pairs, where each witness is an edge of the bridge it
/// represents.
pub fn resolve_sdr(g: &PlaneGraph, t: &Sub, witnesses: impl IntoIterator<Item = (Edge, V)>) -> Result<SdrAssign> {
    let bridges = bridges_of(g, t);
    let mut of_edge: HashMap<Edge, usize> = HashMap::new();
    for (i, b) in bridges.iter().enumerate() {
        for &e in &b.edge_set {
            of_edge.insert(e, i);
        }
    }
    let mut rep: Vec<Option<V>> = vec![None; bridges.len()];
    let mut owner: HashMap<V, usize> = HashMap::new();
    for (e, r) in witnesses {
        let Some(&i) = of_edge.get(&e) else {
            return Err(Error::CertificationFailed(format!("witness edge {e:?} lies on T")));
        };
        let b = &bridges[i];
        if b.trivial {
            return Err(Error::CertificationFailed(format!("witness edge {e:?} is a trivial bridge")));
        }
        if !b.attachments.contains(&r) {
            return Err(Error::CertificationFailed(format!("representative {r} not an attachment of {:?}", b.key())));
        }
        if let Some(old) = rep[i] {
            return Err(Error::CertificationFailed(format!(
                "bridge {:?} has representatives {old} and {r}",
                b.key()
            )));
        }
        if let Some(&j) = owner.get(&r) {
            return Err(Error::SdrCollision(j, i, r));
        }
        owner.insert(r, i);
        rep[i] = Some(r);
    }
    let mut out = SdrAssign::default();
    for (i, b) in bridges.iter().enumerate() {
        if b.trivial {
            continue;
        }
        match rep[i] {
            Some(r) => {
                out.assignment.insert(b.key(), r);
            }
            None => {
                return Err(Error::CertificationFailed(format!("bridge {:?} has no representative", b.key())));
            }
        }
    }
    Ok(out)
}

/// A path with an SDR of its bridges in the graph it was built in.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TuttePath {
    pub path: Vec<V>,
    pub sdr: SdrAssign,
}

/// Deterministic Kuhn matching: bridge `i` may use any vertex of `cands[i]`.
fn kuhn(cands: &[Vec<V>]) -> Option<Vec<V>> {
    fn augment(i: usize, cands: &[Vec<V>], owner: &mut HashMap<V, usize>, seen: &mut HashSet<V>) -> bool {
        for &v in &cands[i] {
            if !seen.insert(v) {
                continue;
            }
            let free = match owner.get(&v) {
                None => true,
                Some(&j) => augment(j, cands, owner, seen),
            };
            if free {
                owner.insert(v, i);
                return true;
            }
        }
        false
    }
    let mut owner: HashMap<V, usize> = HashMap::new();
    for i in 0..cands.len() {
        let mut seen = HashSet::new();
        if !augment(i, cands, &mut owner, &mut seen) {
            return None;
        }
    }
    let mut out = vec![0; cands.len()];
    for (v, i) in owner {
        out[i] = v;
    }
    Some(out)
}

struct Comp {
    att: Vec<V>,
    has_x: bool,
    has_y: bool,
    has_u: bool,
    verts: Vec<V>,
}

struct Search<'a> {
    g: &'a PlaneGraph,
    nbrs: Vec<Vec<V>>,
    xadj: Vec<Vec<V>>,
    y: V,
    u: V,
    avoid: Vec<V>,
    on: Vec<bool>,
    path: Vec<V>,
    memo: HashSet<(V, Vec<u64>)>,
    nodes: u64,
}

enum Step {
    Done(Vec<Vec<V>>, Vec<V>),
    Dead,
    Go(Vec<V>),
}

const MEMO_CAP: usize = 4_000_000;
const NODE_CAP: u64 = 200_000_000;

impl Search<'_> {
    fn is_x(&self, a: V, b: V) -> bool {
        self.xadj[a].contains(&b)
    }

    fn key(&self) -> (V, Vec<u64>) {
        let mut bits = vec![0u64; self.on.len().div_ceil(64)];
        for &v in &self.path {
            bits[v / 64] |= 1 << (v % 64);
        }
        (*self.path.last().unwrap(), bits)
    }

    fn comps(&self) -> Vec<Comp> {
        let cap = self.on.len();
        let mut seen = vec![false; cap];
        let mut out = Vec::new();
        let mut mark = vec![usize::MAX; cap];
        for s in self.g.vertices() {
            if self.on[s] || seen[s] {
                continue;
            }
            let id = out.len();
            seen[s] = true;
            let mut verts = vec![s];
            let mut att = Vec::new();
            let mut has_x = false;
            let mut i = 0;
            while i < verts.len() {
                let a = verts[i];
                i += 1;
                for &b in &self.nbrs[a] {
                    if self.on[b] {
                        if mark[b] != id {
                            mark[b] = id;
                            att.push(b);
                        }
                        has_x |= self.is_x(a, b);
                    } else {
                        has_x |= self.is_x(a, b);
                        if !seen[b] {
                            seen[b] = true;
                            verts.push(b);
                        }
                    }
                }
            }
            att.sort_unstable();
            let has_y = verts.contains(&self.y);
            let has_u = verts.contains(&self.u);
            out.push(Comp { att, has_x, has_y, has_u, verts });
        }
        out
    }

    fn fixed_ok(&self, c: &Comp) -> bool {
        c.att.len() <= 3 && (c.att.len() <= 2 || !c.has_x)
    }

    fn cands(&self, comps: &[&Comp]) -> Vec<Vec<V>> {
        comps.iter().map(|c| c.att.iter().copied().filter(|v| !self.avoid.contains(v)).collect()).collect()
    }

    fn step(&mut self) -> Step {
        self.nodes += 1;
        let cur = *self.path.last().unwrap();
        let comps = self.comps();
        if cur == self.y {
            if !self.on[self.u] || !comps.iter().all(|c| self.fixed_ok(c)) {
                return Step::Dead;
            }
            let refs: Vec<&Comp> = comps.iter().collect();
            let cands = self.cands(&refs);
            return match kuhn(&cands) {
                Some(reps) => Step::Done(comps.into_iter().map(|c| c.verts).collect(), reps),
                None => Step::Dead,
            };
        }
        let Some(yc) = comps.iter().position(|c| c.has_y) else {
            return Step::Dead;
        };
        if !self.on[self.u] && !comps[yc].has_u {
            return Step::Dead;
        }
        let fixed: Vec<&Comp> = comps.iter().enumerate().filter(|&(i, _)| i != yc).map(|(_, c)| c).collect();
        if !fixed.iter().all(|c| self.fixed_ok(c)) {
            return Step::Dead;
        }
        if kuhn(&self.cands(&fixed)).is_none() {
            return Step::Dead;
        }
        let next: Vec<V> = self.nbrs[cur].iter().copied().filter(|&w| !self.on[w] && comps[yc].verts.contains(&w)).collect();
        if next.is_empty() {
            return Step::Dead;
        }
        if self.memo.contains(&self.key()) {
            return Step::Dead;
        }
        Step::Go(next)
    }
}

/// Vertices and edges of the outer walk.
pub fn outer_edge_sub(g: &PlaneGraph) -> Sub {
    let w = g.outer_walk_verts();
    let mut s = Sub::from_verts(w.iter().copied());
    if w.len() >= 2 {
        for i in 0..w.len() {
            s.edges.insert(ek(w[i], w[(i + 1) % w.len()]));
        }
    }
    s
}

/// An `X_g`-Tutte `xy`-path through `u` with an SDR avoiding `v_avoid`, by
/// exhaustive search in id order.
pub fn find_tutte_path(g: &PlaneGraph, x: V, y: V, u: V, v_avoid: V) -> Result<TuttePath> {
    let outer: BTreeSet<V> = g.outer_walk_verts().into_iter().collect();
    if !g.has_vertex(y) {
        return Err(Error::PreconditionFailed(format!("{y} is not a vertex")));
    }
    if !outer.contains(&x) || !outer.contains(&u) {
        return Err(Error::PreconditionFailed(format!("{x} and {u} must lie on the outer walk")));
    }
    if x == y {
        return Err(Error::PreconditionFailed("x = y".into()));
    }
    if v_avoid != x && v_avoid != u {
        return Err(Error::PreconditionFailed("excluded vertex must be x or u".into()));
    }
    search_path(g, x, y, u, &outer_edge_sub(g), &[v_avoid], &[])
}

/// Depth-first search for an `xy`-path through `u` avoiding `fixed`, such
/// that the path plus `fixed` is `xs`-Tutte with an SDR avoiding `avoid`.
fn search_path(g: &PlaneGraph, x: V, y: V, u: V, xs: &Sub, avoid: &[V], fixed: &[V]) -> Result<TuttePath> {
    let cap = g.cap();
    let mut xadj = vec![Vec::new(); cap];
    for &(a, b) in &xs.edges {
        xadj[a].push(b);
        xadj[b].push(a);
    }
    let nbrs: Vec<Vec<V>> = (0..cap)
        .map(|v| {
            let mut r = g.rotation(v).to_vec();
            r.sort_unstable();
            r
        })
        .collect();
    let mut s = Search {
        g,
        nbrs,
        xadj,
        y,
        u,
        avoid: avoid.to_vec(),
        on: vec![false; cap],
        path: Vec::new(),
        memo: HashSet::new(),
        nodes: 0,
    };
    for &f in fixed {
        s.on[f] = true;
    }
    s.on[x] = true;
    s.path.push(x);
    let mut frames: Vec<(Vec<V>, usize)> = Vec::new();
    let mut found = None;
    match s.step() {
        Step::Done(c, r) => found = Some((c, r)),
        Step::Dead => {}
        Step::Go(n) => frames.push((n, 0)),
    }
    while found.is_none() {
        let Some(top) = frames.last_mut() else { break };
        if top.1 < top.0.len() {
            let w = top.0[top.1];
            top.1 += 1;
            s.on[w] = true;
            s.path.push(w);
            match s.step() {
                Step::Done(c, r) => found = Some((c, r)),
                Step::Dead => {
                    s.on[w] = false;
                    s.path.pop();
                }
                Step::Go(n) => frames.push((n, 0)),
            }
            if s.nodes > NODE_CAP {
                return Err(Error::SearchExhausted(format!("node budget exceeded from {x} to {y}")));
            }
        } else {
            frames.pop();
            if s.memo.len() < MEMO_CAP {
                let k = s.key();
                s.memo.insert(k);
            }
            let w = s.path.pop().unwrap();
            s.on[w] = false;
        }
    }
    let Some((comp_verts, reps)) = found else {
        return Err(Error::SearchExhausted(format!("no Tutte path from {x} to {y} through {u}")));
    };
    let path = s.path.clone();
    // key each component's bridge by its smallest edge
    let mut sdr = SdrAssign::default();
    for (verts, r) in comp_verts.iter().zip(reps) {
        let mut key: Option<Edge> = None;
        for &a in verts {
            for &b in g.rotation(a) {
                let e = ek(a, b);
                if key.is_none_or(|k| e < k) {
                    key = Some(e);
                }
            }
        }
        sdr.assignment.insert(key.unwrap(), r);
    }
    Ok(TuttePath { path, sdr })
}

/// An `X_g`-Tutte `xy`-path through the outer edge `e`, with an SDR avoiding
/// `x`, via subdivision of `e`.
pub fn find_tutte_path_through_edge(g: &PlaneGraph, x: V, y: V, e: Edge) -> Result<TuttePath> {
    let (a, b) = e;
    if !g.has_edge(a, b) {
        return Err(Error::PreconditionFailed(format!("{a}{b} is not an edge")));
    }
    let w = g.outer_walk_verts();
    let on_outer = (0..w.len()).any(|i| ek(w[i], w[(i + 1) % w.len()]) == ek(a, b));
    if !on_outer {
        return Err(Error::PreconditionFailed(format!("{a}{b} is not an outer edge")));
    }
    let fresh = g.cap();
    let h = g.subdivide(a, b, fresh);
    let tp = find_tutte_path(&h, x, y, fresh, x)?;
    let path: Vec<V> = tp.path.into_iter().filter(|&v| v != fresh).collect();
    // the bridges are unchanged: both edges at the fresh vertex are on the path
    Ok(TuttePath { path, sdr: tp.sdr })
}

/// One part for the jigsaw combination, all as subgraphs of a common host.
#[derive(Debug, Clone)]
pub struct JigsawPart {
    pub g: Sub,
    pub x: Sub,
    pub t: Sub,
    pub sdr: SdrAssign,
}

#[derive(Debug, Clone)]
pub struct JigsawOut {
    pub g: PlaneGraph,
    pub t: Sub,
    pub x: Sub,
    pub sdr: SdrAssign,
}

/// Unions compatible pieces into one Tutte subgraph with an SDR.
pub fn jigsaw(host: &PlaneGraph, parts: &[JigsawPart]) -> Result<JigsawOut> {
    for i in 0..parts.len() {
        for j in i + 1..parts.len() {
            let (p, q) = (&parts[i], &parts[j]);
            if let Some(e) = p.g.edges.intersection(&q.g.edges).next() {
                return Err(Error::OverlapViolation(i, j, format!("both contain edge {e:?}")));
            }
            let gv: BTreeSet<V> = p.g.verts.intersection(&q.g.verts).copied().collect();
            let tv: BTreeSet<V> = p.t.verts.intersection(&q.t.verts).copied().collect();
            if gv != tv {
                return Err(Error::OverlapViolation(i, j, format!("graphs share {gv:?} but pieces share {tv:?}")));
            }
            let (si, sj) = (p.sdr.reps(), q.sdr.reps());
            if let Some(&v) = si.intersection(&sj).next() {
                return Err(Error::SdrCollision(i, j, v));
            }
        }
    }
    let all = parts.iter().fold(Sub::default(), |acc, p| acc.union(&p.g));
    let t = parts.iter().fold(Sub::default(), |acc, p| acc.union(&p.t));
    let x = parts.iter().fold(Sub::default(), |acc, p| acc.union(&p.x));
    let g = host.restrict(&all.verts, &all.edges.iter().copied().collect(), None);
    let witnesses: Vec<(Edge, V)> =
        parts.iter().flat_map(|p| p.sdr.assignment.iter().map(|(&e, &r)| (e, r))).collect();
    let sdr = resolve_sdr(&g, &t, witnesses)?;
    Ok(JigsawOut { g, t, x, sdr })
}

/// A representative moved to a bridge that gained a deleted vertex.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reassign {
    pub from_bridge: Edge,
    pub to_bridge: Edge,
    pub rep: V,
    /// Attachments of the bridge before the vertex was added back.
    pub previous_attachments: usize,
    pub gained: V,
}

/// Output of a standard piece.
#[derive(Debug, Clone)]
pub struct SpOutput {
    pub path: Vec<V>,
    /// Path vertices plus the vertices added back (`c`, `d`).
    pub t: Sub,
    pub context: Sub,
    pub sdr: SdrAssign,
    pub reassigned: Vec<Reassign>,
    /// The path came from the exact search rather than the construction.
    pub searched: bool,
}

fn sub_of_path(p: &[V]) -> Sub {
    Sub::from_path(p)
}

/// SP1 on an already certified chain. `k` is the host of the chain.
pub fn sp1_chain(k: &PlaneGraph, chain: &CircuitChain, u: V) -> Result<SpOutput> {
    let outer: BTreeSet<V> = k.outer_walk_verts().into_iter().collect();
    if !outer.contains(&u) && k.vertex_count() > 0 {
        return Err(Error::PreconditionFailed(format!("{u} is not on the outer walk")));
    }
    let cuts = &chain.chain.cuts;
    if chain.chain.is_empty() {
        let a = cuts[0];
        return Ok(SpOutput {
            path: vec![a],
            t: Sub::from_verts([a]),
            context: outer_edge_sub(k),
            sdr: SdrAssign::default(),
            reassigned: vec![],
            searched: false,
        });
    }
    let mut parts = Vec::new();
    let mut path = vec![cuts[0]];
    for (i, b) in chain.chain.blocks.iter().enumerate() {
        let (s, e) = (cuts[i], cuts[i + 1]);
        let through = if u != s && u != e && b.has_vertex(u) { u } else { s };
        let tp = find_tutte_path(b, s, e, through, s)?;
        path.extend_from_slice(&tp.path[1..]);
        parts.push(JigsawPart {
            g: Sub { verts: b.vertex_set(), edges: b.edges().into_iter().collect() },
            x: outer_edge_sub(b),
            t: sub_of_path(&tp.path),
            sdr: tp.sdr,
        });
    }
    let out = jigsaw(k, &parts)?;
    Ok(SpOutput { path, t: out.t, context: out.x, sdr: out.sdr, reassigned: vec![], searched: false })
}

/// SP1: an `X_K`-Tutte `ab`-path through `u` with an SDR avoiding `a`.
pub fn sp1(k: &PlaneGraph, a: V, b: V, u: V) -> Result<SpOutput> {
    let chain = circuit_chain_between(k, a, b)?;
    sp1_chain(k, &chain, u)
}

/// The part of the outer walk of `k` from `a` to `b` that avoids `avoid` and
/// is a path; the shorter one when both qualify.
pub fn arc_avoiding(k: &PlaneGraph, a: V, b: V, avoid: &[V]) -> Result<Vec<V>> {
    if a == b {
        return Ok(vec![a]);
    }
    let w = k.outer_walk_verts();
    let n = w.len();
    let mut best: Option<Vec<V>> = None;
    let oa: Vec<usize> = (0..n).filter(|&i| w[i] == a).collect();
    let ob: Vec<usize> = (0..n).filter(|&i| w[i] == b).collect();
    for &i in &oa {
        for &j in &ob {
            let fwd: Vec<V> = (0..=(j + n - i) % n).map(|s| w[(i + s) % n]).collect();
            let mut bwd: Vec<V> = (0..=(i + n - j) % n).map(|s| w[(j + s) % n]).collect();
            bwd.reverse();
            for cand in [fwd, bwd] {
                let distinct: BTreeSet<V> = cand.iter().copied().collect();
                if distinct.len() != cand.len() || cand.iter().any(|v| avoid.contains(v)) {
                    continue;
                }
                if best.as_ref().is_none_or(|bst| cand.len() < bst.len()) {
                    best = Some(cand);
                }
            }
        }
    }
    best.ok_or_else(|| Error::PreconditionFailed(format!("no outer arc from {a} to {b} avoiding {avoid:?}")))
}

/// Adds the vertices `extra` back to a piece built in `k - extra`, keeping
/// representatives and logging bridges that gained an attachment.
fn add_back(
    k: &PlaneGraph,
    h: &PlaneGraph,
    path: &[V],
    h_sdr: &SdrAssign,
    extra: &[V],
    more: &[(Edge, V)],
) -> Result<(Sub, SdrAssign, Vec<Reassign>)> {
    let p = sub_of_path(path);
    let mut t = p.clone();
    for &c in extra {
        t.verts.insert(c);
    }
    let old = bridges_of(h, &p);
    let old_of: HashMap<Edge, &BridgeRec> = old.iter().map(|b| (b.key(), b)).collect();
    let mut witnesses: Vec<(Edge, V)> = h_sdr.assignment.iter().map(|(&e, &r)| (e, r)).collect();
    witnesses.extend_from_slice(more);
    let sdr = resolve_sdr(k, &t, witnesses)?;
    let new = bridges_of(k, &t);
    let mut log = Vec::new();
    for nb in new.iter().filter(|b| !b.trivial) {
        for (&ok, &r) in &h_sdr.assignment {
            if !nb.edge_set.contains(&ok) {
                continue;
            }
            let ob = old_of[&ok];
            for &c in extra {
                if nb.attachments.contains(&c) && !ob.attachments.contains(&c) {
                    log.push(Reassign {
                        from_bridge: ok,
                        to_bridge: nb.key(),
                        rep: r,
                        previous_attachments: ob.attachments.len(),
                        gained: c,
                    });
                }
            }
        }
    }
    Ok((t, sdr, log))
}

/// Checks the constructed piece and falls back to the exact search when it
/// fails. A bridge of the chain that meets the outer walk strictly between
/// `c` and `d` can gain both of them, which the construction does not see.
#[allow(clippy::too_many_arguments)]
fn certify_or_search(
    k: &PlaneGraph,
    a: V,
    b: V,
    arc: &[V],
    path: Vec<V>,
    built: Result<(Sub, SdrAssign, Vec<Reassign>)>,
    avoid: &[V],
    fixed: &[V],
) -> Result<SpOutput> {
    let context = Sub::from_path(arc);
    if let Ok((t, sdr, log)) = built {
        let good = verify_tutte(k, &context, &t).is_ok()
            && sdr_problem(k, &t, &sdr).is_none()
            && !avoid.iter().any(|&v| sdr.contains_rep(v));
        if good {
            return Ok(SpOutput { path, t, context, sdr, reassigned: log, searched: false });
        }
    }
    let tp = search_path(k, a, b, a, &context, avoid, fixed)?;
    let mut t = sub_of_path(&tp.path);
    for &f in fixed {
        t.verts.insert(f);
    }
    Ok(SpOutput { path: tp.path, t, context, sdr: tp.sdr, reassigned: vec![], searched: true })
}

/// SP2: an `ab`-path avoiding `c` such that it plus `c` is
/// `X_K[a,b]`-Tutte, with an SDR avoiding `a` and `c`.
pub fn sp2(k: &PlaneGraph, a: V, b: V, c: V) -> Result<SpOutput> {
    let arc = arc_avoiding(k, a, b, &[c])?;
    let h = k.remove_vertices(&BTreeSet::from([c]));
    let chain = circuit_chain_between(&h, a, b)?;
    let inner = sp1_chain(&h, &chain, a)?;
    let built = add_back(k, &h, &inner.path, &inner.sdr, &[c], &[]);
    certify_or_search(k, a, b, &arc, inner.path, built, &[a, c], &[c])
}

/// SP3: an `ab`-path avoiding `c` and `d` such that it plus `{c, d}` is
/// `X_K[a,b]`-Tutte, with an SDR avoiding `a` and `x`.
pub fn sp3(k: &PlaneGraph, a: V, b: V, c: V, d: V, x: V) -> Result<SpOutput> {
    if c == d {
        return Err(Error::PreconditionFailed("c = d".into()));
    }
    if x != c && x != d {
        return Err(Error::PreconditionFailed("x must be c or d".into()));
    }
    let y = if x == c { d } else { c };
    let arc = arc_avoiding(k, a, b, &[c, d])?;
    let kcd = k.remove_vertices(&BTreeSet::from([c, d]));
    let along = chain_along_path(&kcd, &arc)?;
    let mut hv: BTreeSet<V> = along.blocks.iter().flat_map(|bl| bl.vertices()).collect();
    hv.insert(a);
    let he: HashSet<Edge> = along.blocks.iter().flat_map(|bl| bl.edges()).collect();
    let h = kcd.restrict(&hv, &he, None);
    let hs = Sub { verts: hv.clone(), edges: he.iter().copied().collect() }.with_vert(c).with_vert(d);
    // every nontrivial (H + {c,d})-bridge attaches at c, d and one vertex of H
    let mut j: Option<(BridgeRec, V)> = None;
    for br in bridges_of(k, &hs) {
        if br.trivial {
            if !(br.attachments.contains(&c) || br.attachments.contains(&d)) {
                return Err(Error::PreconditionFailed(format!("chord {:?} of the chain", br.key())));
            }
            continue;
        }
        let inh: Vec<V> = br.attachments.iter().copied().filter(|v| hv.contains(v)).collect();
        if inh.len() != 1 || !br.attachments.contains(&c) || !br.attachments.contains(&d) {
            return Err(Error::PreconditionFailed(format!(
                "bridge {:?} has attachments {:?}",
                br.key(),
                br.attachments
            )));
        }
        if j.is_some() {
            return Err(Error::PreconditionFailed("two bridges attach at both c and d".into()));
        }
        j = Some((br, inh[0]));
    }
    let chain = crate::circuit::circuit_chain_between(&h, a, b)?;
    let through = j.as_ref().map(|(_, u)| *u).unwrap_or(a);
    let inner = sp1_chain(&h, &chain, through)?;
    // bridges of P in H are bridges of P in K - {c,d} once J is set aside
    let mut more = Vec::new();
    if let Some((br, _)) = &j {
        more.push((br.key(), y));
    }
    let built = add_back(k, &h, &inner.path, &inner.sdr, &[c, d], &more);
    certify_or_search(k, a, b, &arc, inner.path, built, &[a, x], &[c, d])
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k4() -> PlaneGraph {
        PlaneGraph::from_rotation(
            vec![(0, vec![1, 3, 2]), (1, vec![2, 3, 0]), (2, vec![0, 3, 1]), (3, vec![0, 1, 2])],
            Some((0, 1)),
        )
        .unwrap()
    }

    fn wheel(n: usize) -> PlaneGraph {
        let mut rot = Vec::new();
        for i in 0..n {
            rot.push((i, vec![(i + 1) % n, n, (i + n - 1) % n]));
        }
        rot.push((n, (0..n).collect()));
        PlaneGraph::from_rotation(rot, Some((0, 1))).unwrap()
    }

    fn cube() -> PlaneGraph {
        // outer square 0,1,2,3 clockwise, inner square 4,5,6,7 with i ~ i+4
        let mut rot = Vec::new();
        for i in 0..4 {
            rot.push((i, vec![(i + 1) % 4, i + 4, (i + 3) % 4]));
        }
        for i in 0..4 {
            let o = i + 4;
            rot.push((o, vec![4 + (i + 1) % 4, 4 + (i + 3) % 4, i]));
        }
        PlaneGraph::from_rotation(rot, Some((0, 1))).unwrap()
    }

    #[test]
    fn verify_tutte_examples() {
        let g = k4();
        let tri = Sub::from_cycle(&[0, 1, 2]);
        let cert = verify_tutte(&g, &tri, &tri).unwrap();
        assert_eq!(cert.bridges.len(), 1);
        let c = cube();
        let sq = Sub::from_cycle(&[0, 1, 2, 3]);
        let v = verify_tutte(&c, &sq, &sq).unwrap_err();
        assert_eq!(v.bridge.attachments.len(), 4);
    }

    #[test]
    fn sdr_examples() {
        let g = k4();
        let tri = Sub::from_cycle(&[0, 1, 2]);
        let br = bridges_of(&g, &tri);
        let mut s = SdrAssign::default();
        assert!(!verify_sdr(&g, &tri, &s));
        s.assignment.insert(br[0].key(), 0);
        assert!(verify_sdr(&g, &tri, &s));
        s.assignment.insert(br[0].key(), 3);
        assert!(!verify_sdr(&g, &tri, &s));
    }

    #[test]
    fn search_examples() {
        let e = PlaneGraph::from_rotation(vec![(0, vec![1]), (1, vec![0])], None).unwrap();
        let tp = find_tutte_path(&e, 0, 1, 0, 0).unwrap();
        assert_eq!(tp.path, vec![0, 1]);
        assert!(tp.sdr.is_empty());
        let g = k4();
        let tp = find_tutte_path(&g, 0, 3, 1, 1).unwrap();
        assert_eq!(tp.path.len(), 4);
        let w = wheel(5);
        let tp = find_tutte_path(&w, 0, 5, 1, 0).unwrap();
        let p = Sub::from_path(&tp.path);
        assert!(verify_tutte(&w, &outer_edge_sub(&w), &p).is_ok());
        assert!(verify_sdr(&w, &p, &tp.sdr));
        assert!(!tp.sdr.contains_rep(0));
    }

    #[test]
    fn through_edge() {
        let g = k4();
        let tp = find_tutte_path_through_edge(&g, 0, 3, (1, 2)).unwrap();
        let p = Sub::from_path(&tp.path);
        assert!(p.edges.contains(&(1, 2)));
        assert!(verify_tutte(&g, &outer_edge_sub(&g), &p).is_ok());
        assert!(verify_sdr(&g, &p, &tp.sdr));
    }

    #[test]
    fn sp1_two_k4s() {
        // K4 on 0..3 and a second K4 on 2,4,5,6 glued at 2
        let g = PlaneGraph::from_rotation(
            vec![
                (0, vec![1, 3, 2]),
                (1, vec![2, 3, 0]),
                (2, vec![0, 3, 1, 4, 6, 5]),
                (3, vec![0, 1, 2]),
                (4, vec![5, 6, 2]),
                (5, vec![2, 6, 4]),
                (6, vec![4, 5, 2]),
            ],
            Some((0, 1)),
        )
        .unwrap();
        assert!(crate::graph::validate(&g).is_empty(), "{:?}", crate::graph::validate(&g));
        let out = sp1(&g, 0, 4, 1).unwrap();
        assert_eq!(out.path[0], 0);
        assert_eq!(*out.path.last().unwrap(), 4);
        assert!(out.path.contains(&1) && out.path.contains(&2));
        let p = Sub::from_path(&out.path);
        assert!(verify_tutte(&g, &outer_edge_sub(&g), &p).is_ok());
        assert!(verify_sdr(&g, &p, &out.sdr));
        assert!(!out.sdr.contains_rep(0));
    }

    #[test]
    fn sp2_triangle_and_wheel() {
        let tri = PlaneGraph::from_rotation(vec![(0, vec![1, 2]), (1, vec![2, 0]), (2, vec![0, 1])], Some((0, 1)))
            .unwrap();
        let out = sp2(&tri, 0, 1, 2).unwrap();
        assert_eq!(out.path, vec![0, 1]);
        assert!(out.sdr.is_empty());
        let w = wheel(5);
        let out = sp2(&w, 1, 4, 0).unwrap();
        assert!(verify_tutte(&w, &out.context, &out.t).is_ok());
        assert!(verify_sdr(&w, &out.t, &out.sdr));
        assert!(!out.sdr.contains_rep(1) && !out.sdr.contains_rep(0));
        assert!(out.reassigned.iter().all(|r| r.previous_attachments == 2));
    }

    #[test]
    fn sp3_examples() {
        // C4 in order a=0, b=1, c=2, d=3
        let c4 = PlaneGraph::from_rotation((0..4).map(|i| (i, vec![(i + 1) % 4, (i + 3) % 4])), Some((0, 1)))
            .unwrap();
        let out = sp3(&c4, 0, 1, 2, 3, 2).unwrap();
        assert_eq!(out.path, vec![0, 1]);
        assert!(out.sdr.is_empty());
        // W5 with a=0, b=1, c=2, d=4: the rim vertex 3 forms J with attachment 5 (hub)
        let w = wheel(5);
        let out = sp3(&w, 0, 1, 2, 4, 2).unwrap();
        assert_eq!(out.path, vec![0, 5, 1]);
        assert!(verify_tutte(&w, &out.context, &out.t).is_ok());
        assert!(verify_sdr(&w, &out.t, &out.sdr));
        assert_eq!(out.sdr.reps(), BTreeSet::from([4]));
        assert!(!out.searched);
    }

    #[test]
    fn sp3_bridge_between_c_and_d() {
        // outer 0,1,3,2,5; the chain in K - {3,5} is one block whose path
        // 0,1 leaves a bridge on 2 that picks up both 3 and 5
        let k = PlaneGraph::from_rotation(
            vec![
                (0, vec![1, 4, 6, 5]),
                (1, vec![3, 2, 4, 0]),
                (2, vec![5, 6, 4, 1, 3]),
                (3, vec![2, 1]),
                (4, vec![0, 1, 2]),
                (5, vec![0, 6, 2]),
                (6, vec![0, 2, 5]),
            ],
            Some((0, 1)),
        )
        .unwrap();
        let out = sp3(&k, 0, 1, 3, 5, 5).unwrap();
        assert!(out.searched);
        assert!(!out.path.contains(&3) && !out.path.contains(&5));
        assert!(verify_tutte(&k, &out.context, &out.t).is_ok());
        assert!(sdr_problem(&k, &out.t, &out.sdr).is_none());
        assert!(!out.sdr.contains_rep(0) && !out.sdr.contains_rep(5));
    }

    #[test]
    fn jigsaw_collision() {
        let g = k4();
        let p1 = JigsawPart {
            g: Sub::from_edges([(0, 1)]),
            x: Sub::default(),
            t: Sub::from_path(&[0, 1]),
            sdr: SdrAssign { assignment: BTreeMap::from([((0, 1), 0)]) },
        };
        let mut p2 = p1.clone();
        p2.g = Sub::from_edges([(1, 2)]);
        p2.t = Sub::from_path(&[1, 2]);
        p2.sdr = SdrAssign { assignment: BTreeMap::from([((1, 2), 1)]) };
        let p3 = JigsawPart { sdr: SdrAssign { assignment: BTreeMap::from([((1, 2), 0)]) }, ..p2.clone() };
        assert_eq!(jigsaw(&g, &[p1.clone(), p3]).unwrap_err(), Error::SdrCollision(0, 1, 0));
        let one = jigsaw(&g, &[JigsawPart { sdr: SdrAssign::default(), ..p1 }]).unwrap();
        assert_eq!(one.t, Sub::from_path(&[0, 1]));
    }
}
