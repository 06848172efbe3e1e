//! Acceptance run: one PASS/FAIL line per criterion. Every construction is
//! checked by the independent checkers in `oracle` as well as by the
//! library's own verifiers.

use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use tutte_paths::connectivity::{bridges_of, find_small_cut_containing, is_ks_connected, Sub};
use tutte_paths::extend::{chain_in_level, ladder_construct, limit_experiment, radial_construct, Side};
use tutte_paths::nets::random::{
    random_bipartite_circuit_graph, random_circuit_block, random_near_triangulation, random_plane_graph,
};
use tutte_paths::nets::{builtin_families, is_forward, truncation, FamilyGen};
use tutte_paths::prisms::{
    prism, prism_ham_bipartite, prism_ham_near_tri, prism_spanning_path, verify_ham_cycle, verify_spanning_path,
    PrismMode,
};
use tutte_paths::tutte::{find_tutte_path, outer_edge_sub, sp1, sp2, sp3, verify_sdr, verify_tutte, SdrAssign, SpOutput};
use tutte_paths::walks::{
    is_spanning_tree, splice_two_walk_report, verify_two_walk, walk_to_tree, SpliceContext, SpliceReport,
};
use tutte_paths::{PlaneGraph, WalkSeq, V};

mod oracle;

use oracle::E;

/// Per-instance limit for the exact Tutte path search.
const TUTTE_INSTANCE_LIMIT: Duration = Duration::from_secs(5);
/// Per-level limit for the radial pipeline including the splice.
const RADIAL_LEVEL_LIMIT: Duration = Duration::from_secs(10);
/// Largest cut allowed to certify a twice-used vertex.
const CUT_BOUND: usize = 3;
/// Largest degree allowed in a tree read off a 2-walk.
const TREE_DEGREE: usize = 3;
/// The limit experiment: levels built, and the depth through which at
/// least `MIN_SURVIVORS` runs must survive.
const LIMIT_N: usize = 10;
const LIMIT_DEPTH: usize = 3;
const MIN_SURVIVORS: usize = 2;

type Check = Result<String, String>;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)*) => {
        if !$cond {
            return Err(format!($($msg)*));
        }
    };
}

fn err<T: std::fmt::Display>(ctx: &str) -> impl Fn(T) -> String + '_ {
    move |e| format!("{ctx}: {e}")
}

fn fam(name: &str, seed: u64) -> FamilyGen {
    builtin_families(name, &Default::default(), seed).expect("builtin family")
}

fn sdr_map(s: &SdrAssign) -> BTreeMap<E, V> {
    s.assignment.clone()
}

/// A 2-walk produced by one of the pipelines, kept for the cut and tree
/// criteria.
struct PipelineWalk {
    name: String,
    graph: PlaneGraph,
    report: SpliceReport,
    cut_bound: usize,
}

#[derive(Default)]
struct Walks(Vec<PipelineWalk>);

impl Walks {
    /// Splices, then checks the walk with both the library and the oracle.
    fn splice(&mut self, name: String, g: &PlaneGraph, p: &[V], sdr: &SdrAssign, ctx: &SpliceContext) -> Result<(), String> {
        let report = splice_two_walk_report(g, p, sdr, ctx).map_err(err(&name))?;
        ensure!(verify_two_walk(g, &report.walk, ctx.cut_bound), "{name}: verify_two_walk rejects the walk");
        if let Some(why) = oracle::two_walk_problem(g, &report.walk.walk.verts, report.walk.walk.closed) {
            return Err(format!("{name}: {why}"));
        }
        self.0.push(PipelineWalk { name, graph: g.clone(), report, cut_bound: ctx.cut_bound });
        Ok(())
    }
}

fn outer_pair<R: Rng>(rng: &mut R, ow: &[V]) -> (V, V) {
    let i = rng.gen_range(0..ow.len());
    let j = (i + rng.gen_range(1..ow.len())) % ow.len();
    (ow[i], ow[j])
}

// 1. exact search on random circuit blocks
fn criterion_1() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1001);
    let mut slowest = Duration::ZERO;
    for i in 0..200 {
        let n = rng.gen_range(4..=12);
        let g = random_circuit_block(&mut rng, n);
        let ow = g.outer_walk_verts();
        let verts: Vec<V> = g.vertices().collect();
        let x = *ow.choose(&mut rng).unwrap();
        let u = *ow.choose(&mut rng).unwrap();
        let y = *verts.iter().filter(|&&y| y != x).collect::<Vec<_>>().choose(&mut rng).unwrap().to_owned();
        let avoid = if rng.gen_bool(0.5) { x } else { u };
        let start = Instant::now();
        let tp = find_tutte_path(&g, x, y, u, avoid).map_err(err(&format!("instance {i}")))?;
        let took = start.elapsed();
        slowest = slowest.max(took);
        ensure!(took < TUTTE_INSTANCE_LIMIT, "instance {i} took {took:?}");
        let p = &tp.path;
        ensure!(oracle::is_path(&g, p) && p[0] == x && p[p.len() - 1] == y && p.contains(&u), "instance {i}: bad ends");
        let t = Sub::from_path(p);
        ensure!(verify_tutte(&g, &outer_edge_sub(&g), &t).is_ok() && verify_sdr(&g, &t, &tp.sdr), "instance {i}: library");
        let xo = oracle::cycle_edges(&ow);
        let tv: BTreeSet<V> = p.iter().copied().collect();
        if let Some(why) = oracle::tutte_sdr_problem(&g, &tv, &oracle::path_edges(p), &xo, &sdr_map(&tp.sdr), &[avoid]) {
            return Err(format!("instance {i}: {why}"));
        }
    }
    Ok(format!("200/200 blocks, slowest {slowest:.2?}"))
}

/// The clockwise outer-walk arc from `a` to `b`.
fn arc(ow: &[V], a: V, b: V) -> Vec<V> {
    let n = ow.len();
    let i = ow.iter().position(|&v| v == a).unwrap();
    let mut out = vec![a];
    let mut k = i;
    while ow[k] != b {
        k = (k + 1) % n;
        out.push(ow[k]);
    }
    out
}

fn check_sp(k: &PlaneGraph, out: &SpOutput, a: V, b: V, added: &[V], context: &[V], excluded: &[V]) -> Result<(), String> {
    let p = &out.path;
    ensure!(oracle::is_path(k, p) && p[0] == a && p[p.len() - 1] == b, "not an ab-path");
    ensure!(added.iter().all(|c| !p.contains(c)), "the path meets a deleted vertex");
    let mut tv: BTreeSet<V> = p.iter().copied().collect();
    tv.extend(added.iter().copied());
    ensure!(out.t.verts == tv, "the certificate's subgraph is not P plus the deleted vertices");
    let ctx = Sub::from_path(context);
    if let Err(v) = verify_tutte(k, &ctx, &out.t) {
        return Err(format!("verify_tutte: bridge {:?} with attachments {:?}: {}", v.bridge.key(), v.bridge.attachments, v.reason));
    }
    ensure!(verify_sdr(k, &out.t, &out.sdr), "verify_sdr rejects");
    if let Some(why) = oracle::tutte_sdr_problem(k, &tv, &oracle::path_edges(p), &oracle::path_edges(context), &sdr_map(&out.sdr), excluded) {
        return Err(why);
    }
    ensure!(out.reassigned.iter().all(|r| r.previous_attachments == 2), "a reassigned bridge previously had 3 attachments");
    Ok(())
}

// 2. the three standard pieces
fn criterion_2() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1002);
    let (mut n1, mut n2, mut n3, mut tries3, mut moved, mut searched) = (0, 0, 0, 0, 0, 0);
    while n1 < 100 {
        let n = rng.gen_range(4..=10);
        let g = random_circuit_block(&mut rng, n);
        let ow = g.outer_walk_verts();
        let (k, a, b) = if rng.gen_bool(0.5) {
            let (a, b) = outer_pair(&mut rng, &ow);
            (g.clone(), a, b)
        } else {
            // deleting an outer vertex leaves a chain between its neighbours
            let i = rng.gen_range(0..ow.len());
            let w = ow[i];
            let (a, b) = (ow[(i + 1) % ow.len()], ow[(i + ow.len() - 1) % ow.len()]);
            (g.remove_vertices(&BTreeSet::from([w])), a, b)
        };
        let u = *k.outer_walk_verts().choose(&mut rng).unwrap();
        let out = sp1(&k, a, b, u).map_err(err(&format!("sp1 instance {n1}")))?;
        ensure!(out.path.contains(&u), "sp1 instance {n1}: misses u");
        let ko = k.outer_walk_verts();
        let kx: Vec<V> = ko.iter().copied().chain(ko.first().copied()).collect();
        check_sp(&k, &out, a, b, &[], &[], &[a]).map_err(err(&format!("sp1 instance {n1}")))?;
        // the context of SP1 is the whole outer walk
        let tv: BTreeSet<V> = out.path.iter().copied().collect();
        if let Some(why) = oracle::tutte_sdr_problem(&k, &tv, &oracle::path_edges(&out.path), &oracle::path_edges(&kx), &sdr_map(&out.sdr), &[a]) {
            return Err(format!("sp1 instance {n1}: {why}"));
        }
        n1 += 1;
    }
    while n2 < 100 {
        let n = rng.gen_range(4..=10);
        let g = random_circuit_block(&mut rng, n);
        let ow = g.outer_walk_verts();
        let i = rng.gen_range(0..ow.len());
        let c = ow[i];
        let (a, b) = (ow[(i + 1) % ow.len()], ow[(i + ow.len() - 1) % ow.len()]);
        let out = sp2(&g, a, b, c).map_err(err(&format!("sp2 instance {n2}")))?;
        moved += out.reassigned.len();
        searched += usize::from(out.searched);
        check_sp(&g, &out, a, b, &[c], &arc(&ow, a, b), &[a, c]).map_err(err(&format!("sp2 instance {n2}")))?;
        n2 += 1;
    }
    while n3 < 100 {
        tries3 += 1;
        let n = rng.gen_range(4..=10);
        let g = random_circuit_block(&mut rng, n);
        let ow = g.outer_walk_verts();
        let m = ow.len();
        let i = rng.gen_range(0..m);
        let j = (i + rng.gen_range(1..m)) % m;
        let (c, d) = (ow[i], ow[j]);
        // a and b on the clockwise run strictly between d and c
        let run: Vec<V> = arc(&ow, d, c)[1..].iter().copied().filter(|&v| v != c).collect();
        if run.is_empty() {
            continue;
        }
        let s = rng.gen_range(0..run.len());
        let t = rng.gen_range(s..run.len());
        let (a, b) = (run[s], run[t]);
        let ctx = arc(&ow, a, b);
        let mut sset: BTreeSet<V> = ctx.iter().copied().collect();
        sset.extend([c, d]);
        if !oracle::ks_connected(&g, 3, &sset) {
            continue;
        }
        let x = if rng.gen_bool(0.5) { c } else { d };
        let tag = format!("sp3 instance {n3} (a={a} b={b} c={c} d={d} x={x})");
        let out = sp3(&g, a, b, c, d, x).map_err(err(&tag))?;
        moved += out.reassigned.len();
        searched += usize::from(out.searched);
        check_sp(&g, &out, a, b, &[c, d], &ctx, &[a, x]).map_err(err(&format!("{tag}: path {:?}", out.path)))?;
        n3 += 1;
    }
    Ok(format!("100 each of sp1/sp2/sp3 ({tries3} sp3 draws for 100 qualifying), {moved} reassignments, {searched} by exact search"))
}

// 3. radial pipeline and its 2-walks
fn criterion_3(walks: &mut Walks) -> Check {
    let mut slowest = Duration::ZERO;
    let mut total = 0;
    for name in ["radial-triangular", "radial-hex"] {
        let f = fam(name, 0);
        for k in 1..=6 {
            let start = Instant::now();
            let net = f.level(k).map_err(err(name))?.net.unwrap();
            let g = &net.carrier;
            let u = net.c(1)[0];
            let (v, p, sdr) = radial_construct(&f, u, k).map_err(err(&format!("{name} level {k}")))?;
            let tag = format!("{name} level {k}");
            ensure!(oracle::is_path(g, &p) && p[0] == u && p[p.len() - 1] == v, "{tag}: not a uv-path");
            ensure!(net.c(k).contains(&v), "{tag}: v is not on C_k");
            let t = Sub::from_path(&p);
            ensure!(verify_tutte(g, &Sub::from_cycle(net.c(1)), &t).is_ok(), "{tag}: verify_tutte");
            ensure!(verify_sdr(g, &t, &sdr) && is_forward(&p, &net), "{tag}: verify_sdr / is_forward");
            let tv: BTreeSet<V> = p.iter().copied().collect();
            let c1 = oracle::cycle_edges(net.c(1));
            if let Some(why) = oracle::tutte_sdr_problem(g, &tv, &oracle::path_edges(&p), &c1, &sdr_map(&sdr), &[]) {
                return Err(format!("{tag}: {why}"));
            }
            ensure!(oracle::forward(&p, &net.cycles), "{tag}: not forward");
            walks.splice(tag.clone(), g, &p, &sdr, &SpliceContext::with_delta(WalkSeq::closed(net.c(1).to_vec())))?;
            let took = start.elapsed();
            ensure!(took < RADIAL_LEVEL_LIMIT, "{tag} took {took:?}");
            slowest = slowest.max(took);
            total = total.max(g.vertex_count());
        }
    }
    Ok(format!("12 levels, up to {total} vertices, slowest level {slowest:.2?}"))
}

/// The outer-walk arc of `G_{r,s}` from `x_s` to `y_s` through `D_r`.
fn ladder_context(g: &PlaneGraph, xs: V, ys: V, xr: V, ds: &[V]) -> Vec<V> {
    if xs == xr {
        return ds.to_vec();
    }
    let ow = g.outer_walk_verts();
    let one = arc(&ow, xs, ys);
    if one.contains(&xr) {
        return one;
    }
    let mut other = arc(&ow, ys, xs);
    other.reverse();
    other
}

// 4. ladder pipeline over all truncations
fn criterion_4(walks: &mut Walks) -> Check {
    let mut count = 0;
    for name in ["ladder-square", "ladder-triangular"] {
        let f = fam(name, 0);
        let net = f.level(5).map_err(err(name))?.net.unwrap();
        for s in 0..=5 {
            for r in 0..=s {
                for side in [Side::X, Side::Y] {
                    let tag = format!("{name} r={r} s={s} from {side:?}");
                    let g = truncation(&f, r, s).map_err(err(&tag))?;
                    let (p, sdr) = ladder_construct(&f, r, s, side).map_err(err(&tag))?;
                    let (own, other) = match side {
                        Side::X => (&net.x, &net.y),
                        Side::Y => (&net.y, &net.x),
                    };
                    let end = if (s - r) % 2 == 0 { other[s] } else { own[s] };
                    ensure!(oracle::is_path(&g, &p) && p[0] == own[r] && p[p.len() - 1] == end, "{tag}: wrong ends");
                    let need: BTreeSet<V> = (r..=s).flat_map(|i| [net.x[i], net.y[i]]).collect();
                    let tv: BTreeSet<V> = p.iter().copied().collect();
                    ensure!(need.is_subset(&tv), "{tag}: misses some x_i or y_i");
                    ensure!(is_forward(&p, &net) && oracle::forward(&p, &net.cycles), "{tag}: not forward");
                    let ctx = ladder_context(&g, net.x[s], net.y[s], net.x[r], net.d(s));
                    let t = Sub::from_path(&p);
                    ensure!(verify_tutte(&g, &Sub::from_path(&ctx), &t).is_ok(), "{tag}: verify_tutte");
                    ensure!(verify_sdr(&g, &t, &sdr), "{tag}: verify_sdr");
                    if let Some(why) =
                        oracle::tutte_sdr_problem(&g, &tv, &oracle::path_edges(&p), &oracle::path_edges(&ctx), &sdr_map(&sdr), &[other[r]])
                    {
                        return Err(format!("{tag}: {why}"));
                    }
                    walks.splice(tag, &g, &p, &sdr, &SpliceContext::with_delta(WalkSeq::open(ctx)))?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} (family, r, s, side) runs"))
}

// 5. chains of circuit blocks with two apex vertices
fn criterion_5(walks: &mut Walks) -> Check {
    let f = fam("chain-blocks-2apex", 0);
    for k in 1..=6 {
        let tag = format!("chain level {k}");
        let lvl = f.level(k).map_err(err(&tag))?;
        let ch = lvl.chain.as_ref().unwrap();
        let (u, v) = (lvl.apex[0], lvl.apex[1]);
        let run = chain_in_level(&lvl, u, v).map_err(err(&tag))?;
        let p = &run.path;
        let g = &lvl.graph;
        let bk = *ch.cuts.last().unwrap();
        ensure!(oracle::is_path(g, p) && p[0] == u && p.contains(&v) && p[p.len() - 1] == bk, "{tag}: wrong ends");
        let t = Sub::from_path(p);
        ensure!(verify_tutte(g, &Sub::default(), &t).is_ok() && verify_sdr(g, &t, &run.sdr), "{tag}: library");
        let tv: BTreeSet<V> = p.iter().copied().collect();
        let pe = oracle::path_edges(p);
        if let Some(why) = oracle::tutte_sdr_problem(g, &tv, &pe, &BTreeSet::new(), &sdr_map(&run.sdr), &[]) {
            return Err(format!("{tag}: {why}"));
        }
        // in the apex-free chain, against its outer walk
        let ho = ch.host.outer_walk_verts();
        let hx: Vec<V> = ho.iter().copied().chain(ho.first().copied()).collect();
        if let Some(why) = oracle::tutte_sdr_problem(&ch.host, &tv, &pe, &oracle::path_edges(&hx), &sdr_map(&run.host_sdr), &[]) {
            return Err(format!("{tag} in the chain: {why}"));
        }
        // representatives of different blocks' bridges are distinct
        let reps: Vec<V> = run.host_sdr.assignment.values().copied().collect();
        let distinct: BTreeSet<V> = reps.iter().copied().collect();
        ensure!(distinct.len() == reps.len(), "{tag}: representatives repeat across blocks");
        walks.splice(tag, g, p, &run.sdr, &SpliceContext::three_connected())?;
    }
    Ok("levels 1..6".into())
}

// 6. the prefix stabilization experiment
fn criterion_6() -> Check {
    let mut notes = Vec::new();
    for name in ["random-tight-radial", "random-tight-ladder"] {
        let f = fam(name, 7);
        let rep = limit_experiment(&f, LIMIT_N).map_err(err(name))?;
        ensure!(rep.prefixes_nested && rep.sigma_extends && rep.bridges_agree, "{name}: report flags {rep:?}");
        let lv = &rep.levels;
        for (a, x) in lv.iter().enumerate() {
            for y in &lv[a + 1..] {
                ensure!(y.prefix.starts_with(&x.prefix), "{name}: P_{} is not a prefix of P_{}", x.i, y.i);
                ensure!(x.sigma.iter().all(|s| y.sigma.contains(s)), "{name}: sigma_{} does not extend sigma_{}", y.i, x.i);
            }
            ensure!(x.survivors.iter().all(|s| x.candidates.contains(s)), "{name}: A_{} is not inside A'_{}", x.i, x.i);
        }
        for i in 1..=LIMIT_DEPTH {
            let l = lv.iter().find(|l| l.i == i).ok_or_else(|| format!("{name}: no step {i}"))?;
            ensure!(l.survivors.len() >= MIN_SURVIVORS, "{name}: |A_{i}| = {}", l.survivors.len());
        }
        let sig = lv.last().map(|l| l.sigma.len()).unwrap_or(0);
        notes.push(format!("{name}: depth {:?}, final |sigma| {sig}", rep.stabilization_depth));
    }
    Ok(notes.join("; "))
}

// 7. (k, S)-connectivity and bridges against brute force
fn criterion_7() -> Check {
    let mut rng = ChaCha8Rng::seed_from_u64(1007);
    let (mut queries, mut yes) = (0, 0);
    for i in 0..300 {
        let n = rng.gen_range(1..=9);
        let extra = rng.gen_range(0..=2 * n);
        let g = random_plane_graph(&mut rng, n, extra);
        let verts: Vec<V> = g.vertices().collect();
        for _ in 0..4 {
            let k = rng.gen_range(1..=4);
            let mut s: BTreeSet<V> = verts.iter().copied().filter(|_| rng.gen_bool(0.4)).collect();
            if s.is_empty() {
                s.insert(*verts.choose(&mut rng).unwrap());
            }
            let lib = is_ks_connected(&g, k, &s).map_err(err(&format!("graph {i}")))?;
            let brute = oracle::ks_connected(&g, k, &s);
            ensure!(lib == brute, "graph {i}: k = {k}, S = {s:?}: library {lib}, brute force {brute}");
            queries += 1;
            yes += usize::from(lib);
        }
        // a random subgraph H
        let mut hv: BTreeSet<V> = verts.iter().copied().filter(|_| rng.gen_bool(0.5)).collect();
        hv.insert(verts[0]);
        let he: BTreeSet<E> =
            oracle::edge_set(&g).into_iter().filter(|&(a, b)| hv.contains(&a) && hv.contains(&b) && rng.gen_bool(0.6)).collect();
        let lib = bridges_of(&g, &Sub { verts: hv.clone(), edges: he.clone() });
        let mut seen: BTreeSet<E> = BTreeSet::new();
        for b in &lib {
            for ed in &b.edge_set {
                ensure!(!he.contains(ed) && seen.insert(*ed), "graph {i}: edge {ed:?} is in H or in two bridges");
            }
            ensure!(b.attachments.is_subset(&hv), "graph {i}: attachment outside H");
        }
        let want: BTreeSet<E> = oracle::edge_set(&g).difference(&he).copied().collect();
        ensure!(seen == want, "graph {i}: bridges do not cover E(g) - E(h)");
        let mut a: Vec<(BTreeSet<E>, BTreeSet<V>, bool)> =
            lib.iter().map(|b| (b.edge_set.clone(), b.attachments.clone(), b.trivial)).collect();
        let mut o: Vec<(BTreeSet<E>, BTreeSet<V>, bool)> =
            oracle::bridges(&g, &hv, &he).into_iter().map(|b| (b.edges, b.attachments, b.trivial)).collect();
        a.sort();
        o.sort();
        ensure!(a == o, "graph {i}: bridges differ from the direct enumeration");
    }
    Ok(format!("300 graphs, {queries} (k, S) queries ({yes} connected), bridges exact"))
}

// 8. every twice-used vertex lies in a small cut
fn criterion_8(walks: &Walks) -> Check {
    let mut twice = 0;
    let mut predicted = 0;
    for w in &walks.0 {
        ensure!(w.cut_bound <= CUT_BOUND, "{}: cut bound {}", w.name, w.cut_bound);
        for v in w.report.walk.twice_used() {
            let cut = find_small_cut_containing(&w.graph, v, CUT_BOUND)
                .ok_or_else(|| format!("{}: {v} is in no cut of size <= {CUT_BOUND}", w.name))?;
            ensure!(cut.contains(&v) && cut.len() <= CUT_BOUND && oracle::separates(&w.graph, &cut), "{}: bad cut {cut:?}", w.name);
            twice += 1;
        }
        for t in &w.report.twice {
            ensure!(t.cut.contains(&t.v) && oracle::separates(&w.graph, &t.cut), "{}: reported cut {:?} for {}", w.name, t.cut, t.v);
            predicted += usize::from(t.predicted);
        }
    }
    Ok(format!("{} walks, {twice} twice-used vertices certified, {predicted} by the predicted cut", walks.0.len()))
}

// 9. trees read off the walks
fn criterion_9(walks: &Walks) -> Check {
    let mut worst = 0;
    for w in &walks.0 {
        let t = walk_to_tree(&w.graph, &w.report.walk).map_err(err(&w.name))?;
        ensure!(is_spanning_tree(&w.graph, &t, TREE_DEGREE), "{}: library tree check", w.name);
        ensure!(oracle::spanning_tree_ok(&w.graph, &t, TREE_DEGREE), "{}: not a spanning tree of degree <= 3", w.name);
        worst = worst.max(t.vertices().map(|v| t.rotation(v).len()).max().unwrap_or(0));
    }
    Ok(format!("{} trees, maximum degree {worst}", walks.0.len()))
}

// 10. prisms
fn criterion_10() -> Check {
    let mut paths = 0;
    for (name, mode) in [
        ("bipartite-ladder", PrismMode::Bipartite),
        ("bipartite-radial", PrismMode::Bipartite),
        ("radial-triangular", PrismMode::Triangulation),
    ] {
        let f = fam(name, 0);
        for k in 1..=4 {
            let tag = format!("{name} level {k}");
            let net = f.level(k).map_err(err(&tag))?.net.unwrap();
            let u = if net.x.is_empty() { net.c(1)[0] } else { net.x[0] };
            let r = prism_spanning_path(&f, u, k, mode).map_err(err(&tag))?;
            ensure!(verify_spanning_path(&r.prism, &r.path) && r.path.verts[0] == u, "{tag}: verify_spanning_path");
            let pa = oracle::prism_adj(&r.prism.base, r.prism.offset);
            ensure!(oracle::hamiltonian(&pa, &r.path.verts, false), "{tag}: not a spanning path of the prism");
            paths += 1;
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(1010);
    for (label, bip) in [("bipartite", true), ("near-triangulation", false)] {
        for i in 0..100 {
            let g = if bip {
                random_bipartite_circuit_graph(&mut rng, 10)
            } else {
                let n = rng.gen_range(3..=10);
                random_near_triangulation(&mut rng, n)
            };
            ensure!(g.vertex_count() <= 10, "{label} block {i} is too large");
            let (u, v) = outer_pair(&mut rng, &g.outer_walk_verts());
            let c = if bip { prism_ham_bipartite(&g, u, v) } else { prism_ham_near_tri(&g, u, v) }
                .map_err(err(&format!("{label} block {i}")))?;
            let h = prism(&g);
            ensure!(verify_ham_cycle(&h, &c, u, v), "{label} block {i}: verify_ham_cycle");
            let pa = oracle::prism_adj(&g, h.offset);
            let uses = |a: V, b: V| {
                let n = c.verts.len();
                (0..n).any(|j| {
                    let (p, q) = (c.verts[j], c.verts[(j + 1) % n]);
                    (p, q) == (a, b) || (q, p) == (a, b)
                })
            };
            ensure!(
                oracle::hamiltonian(&pa, &c.verts, true) && uses(u, u + h.offset) && uses(v, v + h.offset),
                "{label} block {i}: not a Hamilton cycle through both verticals"
            );
        }
    }
    Ok(format!("{paths} prism paths, 100 bipartite and 100 near-triangulation blocks"))
}

fn tpath(args: &[&str], out: &Path) -> Result<(), String> {
    let o = Command::new(env!("CARGO_BIN_EXE_tpath"))
        .args(args)
        .env("TPATH_OUT_DIR", out)
        .output()
        .map_err(|e| e.to_string())?;
    ensure!(o.status.success(), "tpath {}: {}", args.join(" "), String::from_utf8_lossy(&o.stderr).trim());
    Ok(())
}

fn dir_bytes(d: &Path) -> BTreeMap<String, Vec<u8>> {
    std::fs::read_dir(d)
        .unwrap()
        .map(|e| {
            let p = e.unwrap().path();
            (p.file_name().unwrap().to_string_lossy().into_owned(), std::fs::read(&p).unwrap())
        })
        .collect()
}

// 11. every CLI command is deterministic
fn criterion_11() -> Check {
    let commands: Vec<Vec<&str>> = vec![
        vec!["gen", "radial-hex", "--level", "3"],
        vec!["gen", "random-tight-radial", "--level", "4", "--seed", "11"],
        vec!["gen", "random-tight-ladder", "--level", "4", "--seed", "11"],
        vec!["gen", "chain-blocks-2apex", "--level", "3"],
        vec!["tutte-path", "radial-triangular", "--level", "3"],
        vec!["tutte-path", "ladder-square", "--level", "4", "--r", "1", "--s", "3", "--from", "y"],
        vec!["tutte-path", "chain-blocks-2apex", "--level", "3"],
        vec!["tutte-path", "random-tight-radial", "--level", "3", "--seed", "11"],
        vec!["two-walk", "radial-triangular", "--level", "3", "--u", "0"],
        vec!["two-walk", "ladder-triangular", "--level", "3"],
        vec!["two-walk", "chain-blocks-2apex", "--level", "3"],
        vec!["prism-path", "bipartite-ladder", "--level", "3"],
        vec!["prism-path", "radial-triangular", "--level", "3", "--mode", "triangulation"],
        vec!["limit", "ladder-square", "--N", "8"],
        vec!["limit", "random-tight-radial", "--N", "6", "--seed", "11"],
    ];
    let a = tempfile::tempdir().map_err(|e| e.to_string())?;
    let b = tempfile::tempdir().map_err(|e| e.to_string())?;
    for c in &commands {
        tpath(c, a.path())?;
        tpath(c, b.path())?;
    }
    let (fa, fb) = (dir_bytes(a.path()), dir_bytes(b.path()));
    ensure!(fa.len() >= commands.len(), "only {} files written", fa.len());
    ensure!(fa == fb, "the two runs wrote different bytes");
    for name in fa.keys().filter(|n| n.ends_with(".json")) {
        let p = a.path().join(name);
        tpath(&["verify", p.to_str().unwrap()], a.path())?;
        let text = String::from_utf8_lossy(&fa[name]);
        ensure!(text.contains("\"schema\": 1"), "{name} has no schema field");
    }
    Ok(format!("{} commands, {} files byte-identical across runs and re-verified", commands.len(), fa.len()))
}

fn report(n: usize, started: Instant, r: Check, failed: &mut usize) {
    match r {
        Ok(m) => println!("criterion {n:>2}: PASS  {m}  [{:.2?}]", started.elapsed()),
        Err(m) => {
            *failed += 1;
            println!("criterion {n:>2}: FAIL  {m}  [{:.2?}]", started.elapsed());
        }
    }
}

fn main() {
    let mut failed = 0;
    let mut walks = Walks::default();
    let t = Instant::now();
    report(1, t, criterion_1(), &mut failed);
    let t = Instant::now();
    report(2, t, criterion_2(), &mut failed);
    let t = Instant::now();
    report(3, t, criterion_3(&mut walks), &mut failed);
    let t = Instant::now();
    report(4, t, criterion_4(&mut walks), &mut failed);
    let t = Instant::now();
    report(5, t, criterion_5(&mut walks), &mut failed);
    let t = Instant::now();
    report(6, t, criterion_6(), &mut failed);
    let t = Instant::now();
    report(7, t, criterion_7(), &mut failed);
    let t = Instant::now();
    report(8, t, criterion_8(&walks), &mut failed);
    let t = Instant::now();
    report(9, t, criterion_9(&walks), &mut failed);
    let t = Instant::now();
    report(10, t, criterion_10(), &mut failed);
    let t = Instant::now();
    report(11, t, criterion_11(), &mut failed);
    if failed > 0 {
        println!("{failed} criteria failed");
        std::process::exit(1);
    }
    println!("all 11 criteria passed");
}
