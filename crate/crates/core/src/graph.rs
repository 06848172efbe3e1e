//! Plane graphs stored as rotation systems.
//!
//! Every vertex keeps its neighbours in clockwise order. A dart is an
//! ordered pair `(u, v)` for an edge `uv`, and faces are traced with the
//! rule `next(u, v) = (v, w)` where `w` follows `u` clockwise around `v`.
//! This keeps each face on the left of its darts, so bounded faces are
//! traced counterclockwise and the outer face clockwise. The outer face is
//! stored as one of its darts.

use std::collections::{BTreeMap, BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type V = usize;
pub type Edge = (V, V);

/// Normalised edge key with the smaller endpoint first.
#[inline]
pub fn ek(a: V, b: V) -> Edge {
    if a < b {
        (a, b)
    } else {
        (b, a)
    }
}

/// A finite sequence of vertices, open or closed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct WalkSeq {
    pub verts: Vec<V>,
    pub closed: bool,
}

impl WalkSeq {
    pub fn open(verts: Vec<V>) -> Self {
        WalkSeq { verts, closed: false }
    }

    pub fn closed(verts: Vec<V>) -> Self {
        WalkSeq { verts, closed: true }
    }

    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    /// Consecutive pairs, including the closing pair for closed walks.
    pub fn steps(&self) -> Vec<(V, V)> {
        let n = self.verts.len();
        let mut out: Vec<(V, V)> = self.verts.windows(2).map(|w| (w[0], w[1])).collect();
        if self.closed && n >= 2 {
            out.push((self.verts[n - 1], self.verts[0]));
        }
        out
    }

    pub fn is_walk_in(&self, g: &PlaneGraph) -> bool {
        self.verts.iter().all(|&v| g.has_vertex(v)) && self.steps().iter().all(|&(a, b)| g.has_edge(a, b))
    }

    /// True for an open walk with no repeated vertex.
    pub fn is_path_in(&self, g: &PlaneGraph) -> bool {
        let distinct: BTreeSet<V> = self.verts.iter().copied().collect();
        !self.closed && !self.verts.is_empty() && distinct.len() == self.verts.len() && self.is_walk_in(g)
    }

    pub fn edges(&self) -> BTreeSet<Edge> {
        self.steps().into_iter().map(|(a, b)| ek(a, b)).collect()
    }
}

/// A traced face boundary.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceWalk {
    pub boundary: WalkSeq,
    pub is_outer: bool,
}

/// All faces of a plane graph with a dart-to-face index.
#[derive(Debug, Clone)]
pub struct Faces {
    /// Vertex sequence of each face, starting at the tail of its first dart.
    pub walks: Vec<Vec<V>>,
    pub darts: Vec<Vec<(V, V)>>,
    pub outer: Option<usize>,
    face_of: HashMap<(V, V), usize>,
}

impl Faces {
    /// The face on the left of dart `(u, v)`.
    pub fn face_of(&self, u: V, v: V) -> usize {
        self.face_of[&(u, v)]
    }

    pub fn len(&self) -> usize {
        self.walks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.walks.is_empty()
    }
}

/// A plane graph: clockwise rotations plus a designated outer face.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlaneGraph {
    rot: Vec<Vec<V>>,
    present: Vec<bool>,
    outer: Option<(V, V)>,
}

impl PlaneGraph {
    /// Builds a graph from clockwise rotations without checking anything.
    /// The outer dart defaults to the smallest dart when not given.
    pub fn from_rotation_unchecked<I>(rotation: I, outer: Option<(V, V)>) -> Self
    where
        I: IntoIterator<Item = (V, Vec<V>)>,
    {
        let mut rot: Vec<Vec<V>> = Vec::new();
        let mut present = Vec::new();
        for (v, nbrs) in rotation {
            if v >= rot.len() {
                rot.resize(v + 1, Vec::new());
                present.resize(v + 1, false);
            }
            present[v] = true;
            rot[v] = nbrs;
        }
        let mut g = PlaneGraph { rot, present, outer: None };
        g.outer = match outer {
            Some(d) => Some(d),
            None => g.first_dart(),
        };
        g
    }

    /// Builds and validates a graph.
    pub fn from_rotation<I>(rotation: I, outer: Option<(V, V)>) -> Result<Self>
    where
        I: IntoIterator<Item = (V, Vec<V>)>,
    {
        let g = Self::from_rotation_unchecked(rotation, outer);
        let report = validate(&g);
        if report.is_empty() {
            Ok(g)
        } else {
            Err(Error::EmbeddingInvalid(report.join("; ")))
        }
    }

    /// Builds a graph whose outer face is the traced face equal to the
    /// given closed walk (up to cyclic shift).
    pub fn with_outer_walk<I>(rotation: I, outer_walk: &[V]) -> Result<Self>
    where
        I: IntoIterator<Item = (V, Vec<V>)>,
    {
        let mut g = Self::from_rotation_unchecked(rotation, None);
        let report = validate_structure(&g);
        if !report.is_empty() {
            return Err(Error::EmbeddingInvalid(report.join("; ")));
        }
        if outer_walk.len() >= 2 {
            let faces = g.faces();
            let idx = faces
                .walks
                .iter()
                .position(|w| same_cyclic(w, outer_walk))
                .ok_or_else(|| Error::EmbeddingInvalid("outer_face is not a traced face".into()))?;
            g.outer = Some(faces.darts[idx][0]);
        }
        let report = validate(&g);
        if report.is_empty() {
            Ok(g)
        } else {
            Err(Error::EmbeddingInvalid(report.join("; ")))
        }
    }

    /// Builds a graph from its faces. Every face is listed with the face on
    /// the left of each step, so inner faces run counterclockwise and the
    /// outer face clockwise. `outer` is a dart of the outer face.
    pub fn from_faces(faces: &[Vec<V>], outer: (V, V)) -> Result<Self> {
        let mut succ: BTreeMap<V, BTreeMap<V, V>> = BTreeMap::new();
        for f in faces {
            let n = f.len();
            if n < 2 {
                return Err(Error::EmbeddingInvalid(format!("face {f:?} is too short")));
            }
            for i in 0..n {
                let (a, b, c) = (f[i], f[(i + 1) % n], f[(i + 2) % n]);
                if succ.entry(b).or_default().insert(a, c).is_some() {
                    return Err(Error::EmbeddingInvalid(format!("dart {a}->{b} is in two faces")));
                }
            }
        }
        let mut rot = Vec::new();
        for (&v, m) in &succ {
            let start = *m.keys().next().expect("nonempty");
            let mut order = vec![start];
            let mut cur = m[&start];
            while cur != start {
                if order.len() > m.len() {
                    return Err(Error::EmbeddingInvalid(format!("rotation at {v} does not close")));
                }
                order.push(cur);
                cur = *m
                    .get(&cur)
                    .ok_or_else(|| Error::EmbeddingInvalid(format!("dart {cur}->{v} has no face")))?;
            }
            if order.len() != m.len() {
                return Err(Error::EmbeddingInvalid(format!("vertex {v} is pinched")));
            }
            rot.push((v, order));
        }
        Self::from_rotation(rot, Some(outer))
    }

    fn first_dart(&self) -> Option<(V, V)> {
        self.vertices().find_map(|v| self.rot[v].first().map(|&w| (v, w)))
    }

    /// One more than the largest vertex id in use.
    pub fn cap(&self) -> usize {
        self.rot.len()
    }

    pub fn has_vertex(&self, v: V) -> bool {
        v < self.present.len() && self.present[v]
    }

    pub fn vertices(&self) -> impl Iterator<Item = V> + '_ {
        (0..self.present.len()).filter(move |&v| self.present[v])
    }

    pub fn vertex_set(&self) -> BTreeSet<V> {
        self.vertices().collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.present.iter().filter(|&&p| p).count()
    }

    pub fn edge_count(&self) -> usize {
        self.vertices().map(|v| self.rot[v].len()).sum::<usize>() / 2
    }

    /// Neighbours of `v` in clockwise order.
    pub fn rotation(&self, v: V) -> &[V] {
        if v < self.rot.len() {
            &self.rot[v]
        } else {
            &[]
        }
    }

    pub fn degree(&self, v: V) -> usize {
        self.rotation(v).len()
    }

    pub fn has_edge(&self, a: V, b: V) -> bool {
        if !self.has_vertex(a) || !self.has_vertex(b) {
            return false;
        }
        let (s, t) = if self.rot[a].len() <= self.rot[b].len() { (a, b) } else { (b, a) };
        self.rot[s].contains(&t)
    }

    pub fn edges(&self) -> Vec<Edge> {
        let mut out = Vec::with_capacity(self.edge_count());
        for v in self.vertices() {
            for &w in &self.rot[v] {
                if v < w {
                    out.push((v, w));
                }
            }
        }
        out
    }

    pub fn edge_set(&self) -> HashSet<Edge> {
        self.edges().into_iter().collect()
    }

    pub fn outer_dart(&self) -> Option<(V, V)> {
        self.outer
    }

    pub fn with_outer_dart(&self, d: (V, V)) -> PlaneGraph {
        let mut g = self.clone();
        g.outer = Some(d);
        g
    }

    fn pos(&self, v: V, u: V) -> usize {
        self.rot[v]
            .iter()
            .position(|&x| x == u)
            .unwrap_or_else(|| panic!("{u} is not a neighbour of {v}"))
    }

    /// The neighbour of `v` that follows `u` clockwise.
    pub fn cw_next(&self, v: V, u: V) -> V {
        let r = &self.rot[v];
        r[(self.pos(v, u) + 1) % r.len()]
    }

    /// The neighbour of `v` that follows `u` counterclockwise.
    pub fn ccw_next(&self, v: V, u: V) -> V {
        let r = &self.rot[v];
        r[(self.pos(v, u) + r.len() - 1) % r.len()]
    }

    /// Next dart along the face on the left of `(u, v)`.
    pub fn face_next(&self, d: (V, V)) -> (V, V) {
        (d.1, self.cw_next(d.1, d.0))
    }

    /// Walk of the face containing dart `d`, starting at its tail.
    pub fn face_walk_from(&self, d: (V, V)) -> Vec<V> {
        let mut walk = Vec::new();
        let mut cur = d;
        loop {
            walk.push(cur.0);
            cur = self.face_next(cur);
            if cur == d {
                break;
            }
        }
        walk
    }

    /// Traces every face. Faces are numbered by their smallest starting dart.
    pub fn faces(&self) -> Faces {
        let mut face_of: HashMap<(V, V), usize> = HashMap::new();
        let mut walks = Vec::new();
        let mut darts = Vec::new();
        for v in self.vertices() {
            for &w in &self.rot[v] {
                if face_of.contains_key(&(v, w)) {
                    continue;
                }
                let id = walks.len();
                let mut walk = Vec::new();
                let mut ds = Vec::new();
                let mut cur = (v, w);
                loop {
                    face_of.insert(cur, id);
                    walk.push(cur.0);
                    ds.push(cur);
                    cur = self.face_next(cur);
                    if cur == (v, w) {
                        break;
                    }
                }
                walks.push(walk);
                darts.push(ds);
            }
        }
        let outer = self.outer.and_then(|d| face_of.get(&d).copied());
        Faces { walks, darts, outer, face_of }
    }

    /// Vertex sequence of the outer face, clockwise, starting at the tail of
    /// the stored outer dart. A graph without edges has its single vertex
    /// (if any) as outer walk.
    pub fn outer_walk_verts(&self) -> Vec<V> {
        match self.outer {
            Some(d) => self.face_walk_from(d),
            None => self.vertices().take(1).collect(),
        }
    }

    pub fn components(&self) -> Vec<Vec<V>> {
        self.components_avoiding(&|_| false)
    }

    /// Components of the graph after deleting every vertex with `del(v)`.
    pub fn components_avoiding(&self, del: &dyn Fn(V) -> bool) -> Vec<Vec<V>> {
        let mut seen = vec![false; self.cap()];
        let mut out = Vec::new();
        for s in self.vertices() {
            if seen[s] || del(s) {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![s];
            let mut q = VecDeque::from([s]);
            while let Some(x) = q.pop_front() {
                for &y in &self.rot[x] {
                    if !seen[y] && !del(y) {
                        seen[y] = true;
                        comp.push(y);
                        q.push_back(y);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// A proper 2-colouring (`false`/`true` per vertex) if the graph is bipartite.
    pub fn bipartition(&self) -> Option<BTreeMap<V, bool>> {
        let mut col: BTreeMap<V, bool> = BTreeMap::new();
        for s in self.vertices() {
            if col.contains_key(&s) {
                continue;
            }
            col.insert(s, false);
            let mut q = VecDeque::from([s]);
            while let Some(v) = q.pop_front() {
                let c = col[&v];
                for &w in &self.rot[v] {
                    match col.get(&w) {
                        Some(&cw) if cw == c => return None,
                        Some(_) => {}
                        None => {
                            col.insert(w, !c);
                            q.push_back(w);
                        }
                    }
                }
            }
        }
        Some(col)
    }

    /// Subgraph on `verts` and `edges`, with the inherited rotation. The outer
    /// face of the result is the face containing the region of this graph's
    /// face on the left of `region` (this graph's outer face if `None`).
    pub fn restrict(&self, verts: &BTreeSet<V>, edges: &HashSet<Edge>, region: Option<(V, V)>) -> PlaneGraph {
        let mut rot = Vec::with_capacity(verts.len());
        for &v in verts {
            let r: Vec<V> = self.rot[v].iter().copied().filter(|&w| edges.contains(&ek(v, w))).collect();
            rot.push((v, r));
        }
        let mut sub = PlaneGraph::from_rotation_unchecked(rot, None);
        if sub.edge_count() == 0 {
            sub.outer = None;
            return sub;
        }
        let region = region.or(self.outer);
        let Some(region) = region else {
            return sub;
        };
        let faces = self.faces();
        let mut uf = UnionFind::new(faces.len());
        for v in self.vertices() {
            for &w in &self.rot[v] {
                if v < w && !edges.contains(&(v, w)) {
                    uf.union(faces.face_of(v, w), faces.face_of(w, v));
                }
            }
        }
        let target = uf.find(faces.face_of(region.0, region.1));
        'outer: for v in sub.vertices().collect::<Vec<_>>() {
            for &w in &sub.rot[v] {
                if uf.find(faces.face_of(v, w)) == target {
                    sub.outer = Some((v, w));
                    break 'outer;
                }
            }
        }
        sub
    }

    /// Subgraph induced by `verts`, outer face inherited.
    pub fn induced(&self, verts: &BTreeSet<V>) -> PlaneGraph {
        let edges: HashSet<Edge> =
            self.edges().into_iter().filter(|&(a, b)| verts.contains(&a) && verts.contains(&b)).collect();
        self.restrict(verts, &edges, None)
    }

    /// Subgraph formed by an edge set (plus optional extra vertices).
    pub fn edge_subgraph(&self, edges: &HashSet<Edge>, extra: &BTreeSet<V>, region: Option<(V, V)>) -> PlaneGraph {
        let mut verts = extra.clone();
        for &(a, b) in edges {
            verts.insert(a);
            verts.insert(b);
        }
        self.restrict(&verts, edges, region)
    }

    pub fn remove_vertices(&self, del: &BTreeSet<V>) -> PlaneGraph {
        let keep: BTreeSet<V> = self.vertices().filter(|v| !del.contains(v)).collect();
        self.induced(&keep)
    }

    /// Mirror image: every rotation reversed.
    pub fn mirror(&self) -> PlaneGraph {
        let rot: Vec<(V, Vec<V>)> = self
            .vertices()
            .map(|v| {
                let mut r = self.rot[v].clone();
                r.reverse();
                (v, r)
            })
            .collect();
        let outer = self.outer.map(|(u, v)| (v, u));
        PlaneGraph::from_rotation_unchecked(rot, outer)
    }

    /// Inserts a new edge `ab` inside the face on the left of dart `fa`
    /// (which must end at `a`) and dart `fb` (ending at `b`); both darts must
    /// lie on the same face. The new outer face is the one to the left of
    /// `outer` after insertion.
    pub fn add_edge_in_face(&self, fa: (V, V), fb: (V, V), outer: (V, V)) -> PlaneGraph {
        let (a, b) = (fa.1, fb.1);
        let mut g = self.clone();
        // the face corner at `a` lies clockwise between fa.0 and its successor
        let ia = g.pos(a, fa.0);
        g.rot[a].insert(ia + 1, b);
        let ib = g.pos(b, fb.0);
        g.rot[b].insert(ib + 1, a);
        g.outer = Some(outer);
        g
    }

    /// Replaces edge `ab` by the path `a x b` for a fresh vertex `x`.
    pub fn subdivide(&self, a: V, b: V, x: V) -> PlaneGraph {
        assert!(!self.has_vertex(x));
        let mut g = self.clone();
        if x >= g.rot.len() {
            g.rot.resize(x + 1, Vec::new());
            g.present.resize(x + 1, false);
        }
        let ia = g.pos(a, b);
        g.rot[a][ia] = x;
        let ib = g.pos(b, a);
        g.rot[b][ib] = x;
        g.present[x] = true;
        // clockwise around x the two neighbours can be listed either way
        g.rot[x] = vec![a, b];
        if let Some(d) = g.outer {
            g.outer = Some(match d {
                (p, q) if (p, q) == (a, b) => (a, x),
                (p, q) if (p, q) == (b, a) => (b, x),
                other => other,
            });
        }
        g
    }

    /// DOT rendering with one comment line per face.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "graph \"{name}\" {{");
        let faces = self.faces();
        for (i, w) in faces.walks.iter().enumerate() {
            let tag = if Some(i) == faces.outer { " outer" } else { "" };
            let verts: Vec<String> = w.iter().map(|v| v.to_string()).collect();
            let _ = writeln!(s, "  // face {i}{tag}: {}", verts.join(" "));
        }
        for v in self.vertices() {
            let _ = writeln!(s, "  {v};");
        }
        for (a, b) in self.edges() {
            let _ = writeln!(s, "  {a} -- {b};");
        }
        s.push_str("}\n");
        s
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            schema: 1,
            vertices: self.vertices().collect(),
            rotation: self.vertices().map(|v| (v.to_string(), self.rot[v].clone())).collect(),
            outer_face: self.outer_walk_verts(),
            annotations: None,
        }
    }

    pub fn from_json(j: &GraphJson) -> Result<Self> {
        let mut rot = Vec::new();
        for &v in &j.vertices {
            let r = j.rotation.get(&v.to_string()).cloned().unwrap_or_default();
            rot.push((v, r));
        }
        for key in j.rotation.keys() {
            let v: V = key.parse().map_err(|_| Error::EmbeddingInvalid(format!("bad vertex key {key}")))?;
            if !j.vertices.contains(&v) {
                return Err(Error::EmbeddingInvalid(format!("rotation for unlisted vertex {v}")));
            }
        }
        Self::with_outer_walk(rot, &j.outer_face)
    }
}

/// Serialised form of a plane graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    #[serde(default = "schema_one")]
    pub schema: u32,
    pub vertices: Vec<V>,
    pub rotation: BTreeMap<String, Vec<V>>,
    pub outer_face: Vec<V>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub annotations: Option<BTreeMap<String, Vec<V>>>,
}

fn schema_one() -> u32 {
    1
}

fn same_cyclic(a: &[V], b: &[V]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    if a.is_empty() {
        return true;
    }
    (0..a.len()).any(|s| (0..a.len()).all(|i| a[(s + i) % a.len()] == b[i]))
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

fn validate_structure(g: &PlaneGraph) -> Vec<String> {
    let mut out = Vec::new();
    for v in g.vertices() {
        let r = g.rotation(v);
        if r.contains(&v) {
            out.push(format!("simple: loop at {v}"));
        }
        let distinct: BTreeSet<V> = r.iter().copied().collect();
        if distinct.len() != r.len() {
            out.push(format!("simple: repeated neighbour in rotation of {v}"));
        }
        for &w in r {
            if !g.has_vertex(w) {
                out.push(format!("rotation-consistent: {v} lists unknown vertex {w}"));
            } else if !g.rotation(w).contains(&v) {
                out.push(format!("rotation-consistent: {w} in rotation of {v} but not {v} in rotation of {w}"));
            }
        }
    }
    out
}

/// Every violated invariant of `g`; empty iff `g` is a valid plane graph.
pub fn validate(g: &PlaneGraph) -> Vec<String> {
    let mut out = validate_structure(g);
    if !out.is_empty() {
        return out;
    }
    if let Some((a, b)) = g.outer {
        if !g.has_edge(a, b) {
            out.push(format!("outer face: dart {a}->{b} is not an edge"));
            return out;
        }
    } else if g.edge_count() > 0 {
        out.push("outer face: none designated".into());
    }
    let faces = g.faces();
    let comps = g.components();
    let mut comp_of = vec![usize::MAX; g.cap()];
    for (i, c) in comps.iter().enumerate() {
        for &v in c {
            comp_of[v] = i;
        }
    }
    let mut nf = vec![0usize; comps.len()];
    for w in &faces.walks {
        nf[comp_of[w[0]]] += 1;
    }
    for (i, c) in comps.iter().enumerate() {
        let nv = c.len() as i64;
        let ne = c.iter().map(|&v| g.degree(v)).sum::<usize>() as i64 / 2;
        let f = if ne == 0 { 1 } else { nf[i] as i64 };
        if nv - ne + f != 2 {
            out.push(format!("planar: component containing {} has V-E+F = {}", c[0], nv - ne + f));
        }
    }
    out
}

/// All faces as walks; exactly one is flagged outer.
pub fn trace_faces(g: &PlaneGraph) -> Result<Vec<FaceWalk>> {
    let report = validate(g);
    if !report.is_empty() {
        return Err(Error::EmbeddingInvalid(report.join("; ")));
    }
    let faces = g.faces();
    Ok(faces
        .walks
        .iter()
        .enumerate()
        .map(|(i, w)| FaceWalk { boundary: WalkSeq::closed(w.clone()), is_outer: Some(i) == faces.outer })
        .collect())
}

/// The clockwise walk bounding the outer face.
pub fn outer_walk(g: &PlaneGraph) -> Result<FaceWalk> {
    if !g.is_connected() {
        return Err(Error::NotConnected);
    }
    Ok(FaceWalk { boundary: WalkSeq::closed(g.outer_walk_verts()), is_outer: true })
}

fn occurrences(w: &[V], x: V) -> Vec<usize> {
    w.iter().enumerate().filter(|&(_, &v)| v == x).map(|(i, _)| i).collect()
}

/// The clockwise subwalk `W[x, y]` of a closed walk.
pub fn clockwise_segment(w: &FaceWalk, x: V, y: V) -> Result<WalkSeq> {
    Ok(WalkSeq::open(segment(&w.boundary.verts, x, y)?))
}

/// Subwalk of a cyclic sequence from `x` to `y` in walk order.
pub fn segment(w: &[V], x: V, y: V) -> Result<Vec<V>> {
    let ox = occurrences(w, x);
    if ox.len() != 1 {
        return Err(Error::AmbiguousEndpoint { vertex: x, count: ox.len() });
    }
    let oy = occurrences(w, y);
    if oy.len() != 1 {
        return Err(Error::AmbiguousEndpoint { vertex: y, count: oy.len() });
    }
    let (i, j) = (ox[0], oy[0]);
    let n = w.len();
    let len = (j + n - i) % n;
    Ok((0..=len).map(|k| w[(i + k) % n]).collect())
}

/// Checks that `c` is a cycle of `g` (at least three distinct vertices,
/// consecutive ones adjacent, last adjacent to first).
pub fn check_cycle(g: &PlaneGraph, c: &[V]) -> Result<()> {
    if c.len() < 3 {
        return Err(Error::NotACycle(format!("length {}", c.len())));
    }
    let distinct: BTreeSet<V> = c.iter().copied().collect();
    if distinct.len() != c.len() {
        return Err(Error::NotACycle("repeated vertex".into()));
    }
    for i in 0..c.len() {
        let (a, b) = (c[i], c[(i + 1) % c.len()]);
        if !g.has_edge(a, b) {
            return Err(Error::NotACycle(format!("{a}{b} is not an edge")));
        }
    }
    Ok(())
}

/// Faces of `g` on the outer side of cycle `c`: reachable from the outer face
/// without crossing an edge of `c`.
fn outside_faces(g: &PlaneGraph, faces: &Faces, cyc: &HashSet<Edge>) -> Vec<bool> {
    let mut out = vec![false; faces.len()];
    let Some(start) = faces.outer else {
        return out;
    };
    out[start] = true;
    let mut q = VecDeque::from([start]);
    while let Some(f) = q.pop_front() {
        for &(a, b) in &faces.darts[f] {
            if cyc.contains(&ek(a, b)) {
                continue;
            }
            let h = faces.face_of(b, a);
            if !out[h] {
                out[h] = true;
                q.push_back(h);
            }
        }
    }
    let _ = g;
    out
}

/// True if traversing `c` in the given order keeps its inside on the right.
pub fn cycle_is_clockwise(g: &PlaneGraph, c: &[V]) -> Result<bool> {
    check_cycle(g, c)?;
    let faces = g.faces();
    let cyc: HashSet<Edge> = (0..c.len()).map(|i| ek(c[i], c[(i + 1) % c.len()])).collect();
    let outside = outside_faces(g, &faces, &cyc);
    Ok(outside[faces.face_of(c[0], c[1])])
}

/// The cycle re-ordered clockwise, starting at its first vertex.
pub fn orient_clockwise(g: &PlaneGraph, c: &[V]) -> Result<Vec<V>> {
    if cycle_is_clockwise(g, c)? {
        Ok(c.to_vec())
    } else {
        let mut r = vec![c[0]];
        r.extend(c[1..].iter().rev());
        Ok(r)
    }
}

/// `C` together with everything embedded on the side of `C` away from the
/// outer face. `C` becomes the outer walk of the result.
pub fn inside_subgraph(g: &PlaneGraph, c: &[V]) -> Result<PlaneGraph> {
    check_cycle(g, c)?;
    let faces = g.faces();
    let cyc: HashSet<Edge> = (0..c.len()).map(|i| ek(c[i], c[(i + 1) % c.len()])).collect();
    let outside = outside_faces(g, &faces, &cyc);
    let mut keep: HashSet<Edge> = cyc.clone();
    for (a, b) in g.edges() {
        if !outside[faces.face_of(a, b)] && !outside[faces.face_of(b, a)] {
            keep.insert((a, b));
        }
    }
    let sub = g.edge_subgraph(&keep, &BTreeSet::new(), None);
    // anchor the outer dart on the first vertex of c for readability
    let cw = orient_clockwise(g, c)?;
    Ok(sub.with_outer_dart((cw[0], cw[1])))
}
