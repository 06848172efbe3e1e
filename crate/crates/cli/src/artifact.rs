//! On-disk artifacts and their verifiers. Every artifact carries the graph it
//! was checked in, so `tpath verify` needs nothing else.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use tutte_paths::connectivity::Sub;
use tutte_paths::extend::limit_experiment;
use tutte_paths::graph::{validate, Edge, GraphJson};
use tutte_paths::nets::{FamilyDescriptor, FamilyGen};
use tutte_paths::prisms::{prism, verify_spanning_path, PrismMode, PrismWalkJson};
use tutte_paths::tutte::{sdr_problem, verify_tutte, SdrAssign};
use tutte_paths::walks::{is_spanning_tree, max_degree, two_walk_problem, walk_to_tree, TwoWalk, TwiceUsed};
use tutte_paths::{PlaneGraph, WalkSeq, V};

pub const SCHEMA: u32 = 1;

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Artifact {
    Graph(GraphArt),
    TuttePath(TutteArt),
    TwoWalk(TwoWalkArt),
    PrismPath(PrismArt),
    Limit(LimitArt),
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GraphArt {
    pub schema: u32,
    pub family: FamilyDescriptor,
    pub level: usize,
    pub apex: Vec<V>,
    pub graph: GraphJson,
}

/// One entry of an SDR: a bridge, keyed by its smallest edge, and its
/// representative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepJson {
    pub bridge: Edge,
    pub rep: V,
}

pub fn sdr_to_json(s: &SdrAssign) -> Vec<RepJson> {
    s.assignment.iter().map(|(&bridge, &rep)| RepJson { bridge, rep }).collect()
}

pub fn sdr_from_json(v: &[RepJson]) -> SdrAssign {
    SdrAssign { assignment: v.iter().map(|r| (r.bridge, r.rep)).collect() }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TutteArt {
    pub schema: u32,
    pub family: FamilyDescriptor,
    pub level: usize,
    /// `radial`, `ladder` or `chain`.
    pub construction: String,
    pub graph: GraphJson,
    /// The context `X`; empty when the path only has to be a plain Tutte path.
    pub context: WalkSeq,
    pub path: Vec<V>,
    /// Vertices the path must pass through, in addition to its ends.
    pub through: Vec<V>,
    /// Vertices that may not represent a bridge.
    pub excluded_reps: Vec<V>,
    pub sdr: Vec<RepJson>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TwoWalkArt {
    pub schema: u32,
    pub family: FamilyDescriptor,
    pub level: usize,
    pub graph: GraphJson,
    pub cut_bound: usize,
    pub base_path: Vec<V>,
    pub walk: TwoWalk,
    pub twice: Vec<TwiceUsed>,
    pub loose_bridges: Vec<Edge>,
    /// Edges of the spanning tree read off the walk, and its maximum degree.
    pub tree: Vec<Edge>,
    pub tree_max_degree: usize,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PrismArt {
    pub schema: u32,
    pub family: FamilyDescriptor,
    pub level: usize,
    pub mode: PrismMode,
    /// The base graph; the prism is rebuilt from it.
    pub graph: GraphJson,
    pub u: V,
    pub base_path: Vec<V>,
    pub path: PrismWalkJson,
    pub blocks: usize,
    pub edge_blocks: usize,
    pub loose_bridges: Vec<Edge>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitArt {
    pub schema: u32,
    pub family: FamilyDescriptor,
    pub n: usize,
    pub report: serde_json::Value,
}

impl Artifact {
    /// Parses an artifact. This dispatches on `kind` by hand: serde's tagged
    /// enums cannot read the integer map keys of a 2-walk's multiplicities.
    pub fn from_json(text: &str) -> Result<Self, String> {
        let mut v: serde_json::Value = serde_json::from_str(text).map_err(|e| e.to_string())?;
        let kind = match v.as_object_mut().and_then(|o| o.remove("kind")) {
            Some(serde_json::Value::String(k)) => k,
            _ => return Err("missing \"kind\"".into()),
        };
        let e = |e: serde_json::Error| e.to_string();
        Ok(match kind.as_str() {
            "graph" => Artifact::Graph(serde_json::from_value(v).map_err(e)?),
            "tutte-path" => Artifact::TuttePath(serde_json::from_value(v).map_err(e)?),
            "two-walk" => Artifact::TwoWalk(serde_json::from_value(v).map_err(e)?),
            "prism-path" => Artifact::PrismPath(serde_json::from_value(v).map_err(e)?),
            "limit" => Artifact::Limit(serde_json::from_value(v).map_err(e)?),
            k => return Err(format!("unknown artifact kind {k}")),
        })
    }
}

/// Why `a` does not check out, or `None`.
pub fn problem(a: &Artifact) -> Option<String> {
    let schema = match a {
        Artifact::Graph(x) => x.schema,
        Artifact::TuttePath(x) => x.schema,
        Artifact::TwoWalk(x) => x.schema,
        Artifact::PrismPath(x) => x.schema,
        Artifact::Limit(x) => x.schema,
    };
    if schema != SCHEMA {
        return Some(format!("unsupported schema {schema}"));
    }
    match a {
        Artifact::Graph(x) => graph_problem(x),
        Artifact::TuttePath(x) => tutte_problem(x),
        Artifact::TwoWalk(x) => two_walk_art_problem(x),
        Artifact::PrismPath(x) => prism_problem(x),
        Artifact::Limit(x) => limit_problem(x),
    }
}

fn load(j: &GraphJson) -> Result<PlaneGraph, String> {
    let g = PlaneGraph::from_json(j).map_err(|e| e.to_string())?;
    let issues = validate(&g);
    if !issues.is_empty() {
        return Err(issues.join("; "));
    }
    Ok(g)
}

fn graph_problem(x: &GraphArt) -> Option<String> {
    if let Err(e) = load(&x.graph) {
        return Some(e);
    }
    // the generators are deterministic, so the level can be rebuilt
    let regenerated = FamilyGen::from_descriptor(&x.family).and_then(|f| f.level(x.level));
    match regenerated {
        Ok(lvl) if lvl.to_json() == x.graph && lvl.apex == x.apex => None,
        Ok(_) => Some("the graph differs from the regenerated level".into()),
        Err(e) => Some(e.to_string()),
    }
}

fn tutte_problem(x: &TutteArt) -> Option<String> {
    let g = match load(&x.graph) {
        Ok(g) => g,
        Err(e) => return Some(e),
    };
    if !WalkSeq::open(x.path.clone()).is_path_in(&g) {
        return Some("not a path of the graph".into());
    }
    if !x.context.is_empty() && !x.context.is_walk_in(&g) {
        return Some("the context is not a walk of the graph".into());
    }
    let on: BTreeSet<V> = x.path.iter().copied().collect();
    if let Some(v) = x.through.iter().find(|v| !on.contains(v)) {
        return Some(format!("the path misses {v}"));
    }
    let t = Sub::from_path(&x.path);
    let ctx = if x.context.is_empty() { Sub::default() } else { Sub::from_walk(&x.context) };
    if let Err(v) = verify_tutte(&g, &ctx, &t) {
        return Some(format!("bridge {:?}: {}", v.bridge.key(), v.reason));
    }
    let sdr = sdr_from_json(&x.sdr);
    if let Some(p) = sdr_problem(&g, &t, &sdr) {
        return Some(p);
    }
    x.excluded_reps.iter().find(|&&v| sdr.contains_rep(v)).map(|v| format!("{v} represents a bridge"))
}

fn two_walk_art_problem(x: &TwoWalkArt) -> Option<String> {
    let g = match load(&x.graph) {
        Ok(g) => g,
        Err(e) => return Some(e),
    };
    if let Some(p) = two_walk_problem(&g, &x.walk, x.cut_bound) {
        return Some(p);
    }
    let t = match walk_to_tree(&g, &x.walk) {
        Ok(t) => t,
        Err(e) => return Some(e.to_string()),
    };
    if t.edges() != x.tree || max_degree(&t) != x.tree_max_degree {
        return Some("the recorded tree is not the one read off the walk".into());
    }
    if !is_spanning_tree(&g, &t, 3) {
        return Some(format!("the tree has maximum degree {}", max_degree(&t)));
    }
    None
}

fn prism_problem(x: &PrismArt) -> Option<String> {
    let g = match load(&x.graph) {
        Ok(g) => g,
        Err(e) => return Some(e),
    };
    let h = prism(&g);
    let Some(p) = x.path.to_walk(&h) else {
        return Some("bad prism vertex label".into());
    };
    if !verify_spanning_path(&h, &p) {
        return Some("not a spanning path of the prism".into());
    }
    if p.verts.first() != Some(&x.u) {
        return Some(format!("the path does not start at {}", x.u));
    }
    None
}

fn limit_problem(x: &LimitArt) -> Option<String> {
    let rerun = FamilyGen::from_descriptor(&x.family).and_then(|f| limit_experiment(&f, x.n));
    let rep = match rerun {
        Ok(r) => r,
        Err(e) => return Some(e.to_string()),
    };
    if !rep.prefixes_nested || !rep.sigma_extends || !rep.bridges_agree {
        return Some(format!(
            "nested {}, sigma extends {}, bridges agree {}",
            rep.prefixes_nested, rep.sigma_extends, rep.bridges_agree
        ));
    }
    match serde_json::to_value(&rep) {
        Ok(v) if v == x.report => None,
        Ok(_) => Some("the report differs from a fresh run".into()),
        Err(e) => Some(e.to_string()),
    }
}
