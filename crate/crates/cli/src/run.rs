//! The subcommands. Each builds its artifact, checks it with the same
//! verifier `tpath verify` uses, and only then returns it for writing.

use tutte_paths::error::Error;
use tutte_paths::extend::{chain_in_level, ladder_in_level, limit_experiment, radial_in_net, Side};
use tutte_paths::graph::GraphJson;
use tutte_paths::nets::{is_forward, FamilyGen, FamilyKind, FamilyLevel, NetPrefix};
use tutte_paths::prisms::{prism_spanning_path, PrismMode, PrismWalkJson};
use tutte_paths::tutte::SdrAssign;
use tutte_paths::walks::{max_degree, splice_two_walk_report, walk_to_tree, SpliceContext};
use tutte_paths::{PlaneGraph, WalkSeq, V};

use crate::artifact::{
    problem, sdr_to_json, Artifact, GraphArt, LimitArt, PrismArt, TutteArt, TwoWalkArt, SCHEMA,
};

#[derive(Debug)]
pub enum Failure {
    /// Bad arguments or inputs that do not meet a construction's preconditions.
    Usage(String),
    /// A construction or check that did not go through.
    Verification(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::UnknownFamily(_) | Error::BadRange(_) | Error::InsufficientLevels(_) | Error::PreconditionFailed(_) => {
                Failure::Usage(e.to_string())
            }
            _ => Failure::Verification(e.to_string()),
        }
    }
}

pub type Outcome<T> = std::result::Result<T, Failure>;

/// Optional start and end choices shared by the path commands.
#[derive(Debug, Clone, Default)]
pub struct Ends {
    pub u: Option<V>,
    pub v: Option<V>,
    pub r: Option<usize>,
    pub s: Option<usize>,
    pub from: Option<Side>,
}

fn checked(a: Artifact) -> Outcome<Artifact> {
    match problem(&a) {
        None => Ok(a),
        Some(p) => Err(Failure::Verification(p)),
    }
}

fn net_of(lvl: &FamilyLevel) -> Outcome<&NetPrefix> {
    lvl.net.as_ref().ok_or_else(|| Failure::Usage("the family has no net".into()))
}

fn annotated(net: &NetPrefix) -> GraphJson {
    let mut j = net.carrier.to_json();
    j.annotations = Some(net.annotations());
    j
}

fn ladder_side(net: &NetPrefix, u: Option<V>, from: Option<Side>) -> Outcome<Side> {
    match (u, from) {
        (None, f) => Ok(f.unwrap_or(Side::X)),
        (Some(u), f) => {
            let side = if u == net.x[0] {
                Side::X
            } else if u == net.y[0] {
                Side::Y
            } else {
                return Err(Failure::Usage(format!("{u} is neither x_0 nor y_0")));
            };
            match f {
                Some(f) if f != side => Err(Failure::Usage("--u and --from disagree".into())),
                _ => Ok(side),
            }
        }
    }
}

pub fn gen(f: &FamilyGen, level: usize) -> Outcome<(Artifact, String)> {
    let lvl = f.level(level)?;
    let dot = lvl.graph.to_dot(&f.name.replace('-', "_"));
    let a = Artifact::Graph(GraphArt {
        schema: SCHEMA,
        family: f.descriptor(),
        level,
        apex: lvl.apex.clone(),
        graph: lvl.to_json(),
    });
    Ok((checked(a)?, dot))
}

pub fn tutte_path(f: &FamilyGen, level: usize, ends: &Ends) -> Outcome<Artifact> {
    let kind = f.kind();
    let (construction, graph, context, path, sdr, through, excluded): (&str, GraphJson, WalkSeq, Vec<V>, SdrAssign, Vec<V>, Vec<V>) =
        match kind {
            FamilyKind::Radial => {
                let lvl = f.level(level)?;
                let net = net_of(&lvl)?;
                let u = ends.u.unwrap_or(net.c(1)[0]);
                let run = radial_in_net(net, u)?;
                if !is_forward(&run.path, net) {
                    return Err(Failure::Verification("the path is not forward".into()));
                }
                let ctx = WalkSeq::closed(net.c(1).to_vec());
                ("radial", annotated(net), ctx, run.path, run.sdr, vec![u, run.v], vec![])
            }
            FamilyKind::Ladder => {
                let s = ends.s.unwrap_or(level);
                let r = ends.r.unwrap_or(0);
                if r > s || s > level {
                    return Err(Failure::Usage(format!("need r <= s <= level, got r = {r}, s = {s}, level = {level}")));
                }
                let lvl = f.level(level)?;
                let net = net_of(&lvl)?;
                let side = ladder_side(net, ends.u, ends.from)?;
                let run = ladder_in_level(&lvl, r, s, side)?;
                if !is_forward(&run.path, net) {
                    return Err(Failure::Verification("the path is not forward".into()));
                }
                let (own, other) = match side {
                    Side::X => (&net.x, &net.y),
                    Side::Y => (&net.y, &net.x),
                };
                let mut through: Vec<V> = vec![own[r]];
                through.extend((r..=s).flat_map(|i| [net.x[i], net.y[i]]));
                let g = if run.context.is_empty() { lvl.to_json() } else { run.graph.to_json() };
                ("ladder", g, WalkSeq::open(run.context), run.path, run.sdr, through, vec![other[r]])
            }
            FamilyKind::Chain => {
                let lvl = f.level(level)?;
                let (u, v) = match (ends.u, ends.v, lvl.apex.as_slice()) {
                    (Some(u), Some(v), _) => (u, v),
                    (None, None, [a, b]) => (*a, *b),
                    _ => return Err(Failure::Usage("give both --u and --v".into())),
                };
                let run = chain_in_level(&lvl, u, v)?;
                let end = *lvl.chain.as_ref().and_then(|c| c.cuts.last()).expect("chain level");
                ("chain", lvl.to_json(), WalkSeq::open(vec![]), run.path, run.sdr, vec![u, v, end], vec![])
            }
        };
    if path.first() != through.first() {
        return Err(Failure::Verification("the path does not start at u".into()));
    }
    checked(Artifact::TuttePath(TutteArt {
        schema: SCHEMA,
        family: f.descriptor(),
        level,
        construction: construction.into(),
        graph,
        context,
        path,
        through,
        excluded_reps: excluded,
        sdr: sdr_to_json(&sdr),
    }))
}

pub fn two_walk(f: &FamilyGen, level: usize, u: Option<V>) -> Outcome<Artifact> {
    let lvl = f.level(level)?;
    let (g, gj, path, sdr, ctx): (PlaneGraph, GraphJson, Vec<V>, SdrAssign, SpliceContext) = match f.kind() {
        FamilyKind::Radial => {
            let net = net_of(&lvl)?;
            let run = radial_in_net(net, u.unwrap_or(net.c(1)[0]))?;
            let ctx = SpliceContext::with_delta(WalkSeq::closed(net.c(1).to_vec()));
            (net.carrier.clone(), annotated(net), run.path, run.sdr, ctx)
        }
        FamilyKind::Ladder => {
            let net = net_of(&lvl)?;
            let side = ladder_side(net, u, None)?;
            let run = ladder_in_level(&lvl, 0, level, side)?;
            let ctx = if run.context.is_empty() {
                SpliceContext::three_connected()
            } else {
                SpliceContext::with_delta(WalkSeq::open(run.context.clone()))
            };
            let gj = run.graph.to_json();
            (run.graph, gj, run.path, run.sdr, ctx)
        }
        FamilyKind::Chain => {
            let (a, b) = match lvl.apex.as_slice() {
                [a, b] => (*a, *b),
                _ => return Err(Failure::Usage("the chain family has no apex pair".into())),
            };
            if u.is_some_and(|u| u != a) {
                return Err(Failure::Usage(format!("the chain walk starts at f_1 = {a}")));
            }
            let run = chain_in_level(&lvl, a, b)?;
            (lvl.graph.clone(), lvl.to_json(), run.path, run.sdr, SpliceContext::three_connected())
        }
    };
    let rep = splice_two_walk_report(&g, &path, &sdr, &ctx)?;
    let tree = walk_to_tree(&g, &rep.walk)?;
    checked(Artifact::TwoWalk(TwoWalkArt {
        schema: SCHEMA,
        family: f.descriptor(),
        level,
        graph: gj,
        cut_bound: ctx.cut_bound,
        base_path: path,
        walk: rep.walk,
        twice: rep.twice,
        loose_bridges: rep.loose_bridges,
        tree: tree.edges(),
        tree_max_degree: max_degree(&tree),
    }))
}

pub fn prism_path(f: &FamilyGen, level: usize, u: Option<V>, mode: Option<PrismMode>) -> Outcome<Artifact> {
    let mode = mode.unwrap_or(if f.is_bipartite_family() { PrismMode::Bipartite } else { PrismMode::Triangulation });
    let lvl = f.level(level)?;
    let net = net_of(&lvl)?;
    let u = u.unwrap_or(if net.x.is_empty() { net.c(1)[0] } else { net.x[0] });
    let r = prism_spanning_path(f, u, level, mode)?;
    checked(Artifact::PrismPath(PrismArt {
        schema: SCHEMA,
        family: f.descriptor(),
        level,
        mode,
        graph: r.prism.base.to_json(),
        u,
        base_path: r.base_path,
        path: PrismWalkJson::from_walk(&r.prism, &r.path),
        blocks: r.blocks,
        edge_blocks: r.edge_blocks,
        loose_bridges: r.loose_bridges,
    }))
}

pub fn limit(f: &FamilyGen, n: usize) -> Outcome<Artifact> {
    let rep = limit_experiment(f, n)?;
    let report = serde_json::to_value(&rep).map_err(|e| Failure::Verification(e.to_string()))?;
    checked(Artifact::Limit(LimitArt { schema: SCHEMA, family: f.descriptor(), n, report }))
}
