//! Checkers written from the definitions alone, sharing no code with the
//! library's verifiers. Graphs are read only through their adjacency.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use tutte_paths::{PlaneGraph, V};

pub type E = (V, V);

pub fn e(a: V, b: V) -> E {
    (a.min(b), a.max(b))
}

pub fn adj(g: &PlaneGraph) -> BTreeMap<V, BTreeSet<V>> {
    g.vertices().map(|v| (v, g.rotation(v).iter().copied().collect())).collect()
}

pub fn edge_set(g: &PlaneGraph) -> BTreeSet<E> {
    let a = adj(g);
    a.iter().flat_map(|(&v, ns)| ns.iter().map(move |&w| e(v, w))).collect()
}

/// Components of `g` minus `del`, as sorted vertex lists.
pub fn components(a: &BTreeMap<V, BTreeSet<V>>, del: &BTreeSet<V>) -> Vec<BTreeSet<V>> {
    let mut seen: BTreeSet<V> = BTreeSet::new();
    let mut out = Vec::new();
    for &s in a.keys() {
        if del.contains(&s) || seen.contains(&s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        seen.insert(s);
        let mut q = VecDeque::from([s]);
        while let Some(x) = q.pop_front() {
            for &y in &a[&x] {
                if !del.contains(&y) && seen.insert(y) {
                    comp.insert(y);
                    q.push_back(y);
                }
            }
        }
        out.push(comp);
    }
    out
}

#[derive(Debug, Clone)]
pub struct Bridge {
    pub edges: BTreeSet<E>,
    pub attachments: BTreeSet<V>,
    pub trivial: bool,
}

impl Bridge {
    pub fn key(&self) -> E {
        *self.edges.iter().next().unwrap()
    }
}

/// The `H`-bridges of `g` for `H = (hv, he)`.
pub fn bridges(g: &PlaneGraph, hv: &BTreeSet<V>, he: &BTreeSet<E>) -> Vec<Bridge> {
    let a = adj(g);
    let mut out = Vec::new();
    for (x, y) in edge_set(g) {
        if hv.contains(&x) && hv.contains(&y) && !he.contains(&(x, y)) {
            out.push(Bridge { edges: BTreeSet::from([(x, y)]), attachments: BTreeSet::from([x, y]), trivial: true });
        }
    }
    for comp in components(&a, hv) {
        let mut edges = BTreeSet::new();
        let mut att = BTreeSet::new();
        for &x in &comp {
            for &y in &a[&x] {
                edges.insert(e(x, y));
                if hv.contains(&y) {
                    att.insert(y);
                }
            }
        }
        out.push(Bridge { edges, attachments: att, trivial: false });
    }
    out
}

pub fn path_edges(p: &[V]) -> BTreeSet<E> {
    p.windows(2).map(|w| e(w[0], w[1])).collect()
}

pub fn cycle_edges(c: &[V]) -> BTreeSet<E> {
    (0..c.len()).filter(|_| c.len() > 1).map(|i| e(c[i], c[(i + 1) % c.len()])).collect()
}

/// `p` is a path of `g`: distinct vertices, consecutive ones adjacent.
pub fn is_path(g: &PlaneGraph, p: &[V]) -> bool {
    let a = adj(g);
    let distinct: BTreeSet<V> = p.iter().copied().collect();
    !p.is_empty()
        && distinct.len() == p.len()
        && p.iter().all(|v| a.contains_key(v))
        && p.windows(2).all(|w| a[&w[0]].contains(&w[1]))
}

/// Why `t` (vertices `tv`, edges `te`) fails to be an `X`-Tutte subgraph of
/// `g` with SDR `sdr`, whose range avoids `excluded`.
pub fn tutte_sdr_problem(
    g: &PlaneGraph,
    tv: &BTreeSet<V>,
    te: &BTreeSet<E>,
    x: &BTreeSet<E>,
    sdr: &BTreeMap<E, V>,
    excluded: &[V],
) -> Option<String> {
    let bs = bridges(g, tv, te);
    let mut used = BTreeSet::new();
    let mut keyed = 0;
    for b in &bs {
        let n = b.attachments.len();
        if n > 3 || (n > 2 && b.edges.iter().any(|ed| x.contains(ed))) {
            return Some(format!("bridge {:?} has {n} attachments", b.key()));
        }
        if b.trivial {
            continue;
        }
        let Some(&r) = sdr.get(&b.key()) else {
            return Some(format!("bridge {:?} has no representative", b.key()));
        };
        keyed += 1;
        if !b.attachments.contains(&r) {
            return Some(format!("representative {r} is not an attachment of {:?}", b.key()));
        }
        if !used.insert(r) {
            return Some(format!("representative {r} is used twice"));
        }
        if excluded.contains(&r) {
            return Some(format!("excluded vertex {r} represents {:?}", b.key()));
        }
    }
    if keyed != sdr.len() {
        return Some("the SDR names bridges that do not exist".into());
    }
    None
}

/// `(k, S)`-connectivity by enumerating every deletion set of size `< k`.
pub fn ks_connected(g: &PlaneGraph, k: usize, s: &BTreeSet<V>) -> bool {
    let a = adj(g);
    let verts: Vec<V> = a.keys().copied().collect();
    let mut ok = true;
    subsets(&verts, k.saturating_sub(1), &mut |t| {
        if components(&a, t).iter().any(|c| c.is_disjoint(s)) {
            ok = false;
        }
    });
    ok
}

/// Calls `f` on every subset of `items` with at most `max` elements.
fn subsets(items: &[V], max: usize, f: &mut dyn FnMut(&BTreeSet<V>)) {
    fn rec(items: &[V], start: usize, max: usize, cur: &mut BTreeSet<V>, f: &mut dyn FnMut(&BTreeSet<V>)) {
        f(cur);
        if cur.len() == max {
            return;
        }
        for i in start..items.len() {
            cur.insert(items[i]);
            rec(items, i + 1, max, cur, f);
            cur.remove(&items[i]);
        }
    }
    rec(items, 0, max, &mut BTreeSet::new(), f);
}

/// Deleting `cut` from `g` leaves at least two components.
pub fn separates(g: &PlaneGraph, cut: &[V]) -> bool {
    let del: BTreeSet<V> = cut.iter().copied().collect();
    components(&adj(g), &del).len() >= 2
}

/// No `x` before `y` on `p` with `x` on `C_{i+2}` but not `C_{i+1}` and `y`
/// on `C_i`. `cycles[i - 1]` is `C_i`.
pub fn forward(p: &[V], cycles: &[Vec<V>]) -> bool {
    let on = |v: V, i: usize| i >= 1 && i <= cycles.len() && cycles[i - 1].contains(&v);
    for (j, &x) in p.iter().enumerate() {
        for &y in &p[j + 1..] {
            for i in 1..=cycles.len() {
                if on(x, i + 2) && !on(x, i + 1) && on(y, i) {
                    return false;
                }
            }
        }
    }
    true
}

/// Why `w` (closed when `closed`) is not a spanning walk of `g` visiting
/// every vertex at most twice.
pub fn two_walk_problem(g: &PlaneGraph, w: &[V], closed: bool) -> Option<String> {
    let a = adj(g);
    let mut steps: Vec<E> = w.windows(2).map(|s| (s[0], s[1])).collect();
    if closed && w.len() > 1 {
        steps.push((w[w.len() - 1], w[0]));
    }
    if let Some(&(x, y)) = steps.iter().find(|&&(x, y)| !a.get(&x).is_some_and(|n| n.contains(&y))) {
        return Some(format!("{x}{y} is not an edge"));
    }
    let mut mult: BTreeMap<V, usize> = BTreeMap::new();
    for &v in w {
        *mult.entry(v).or_default() += 1;
    }
    if let Some(v) = a.keys().find(|v| !mult.contains_key(v)) {
        return Some(format!("{v} is never visited"));
    }
    mult.iter().find(|(_, &m)| m > 2).map(|(v, m)| format!("{v} is visited {m} times"))
}

/// `t` is a spanning tree of `g` with maximum degree at most `d`.
pub fn spanning_tree_ok(g: &PlaneGraph, t: &PlaneGraph, d: usize) -> bool {
    let ga = adj(g);
    let ta = adj(t);
    let te = edge_set(t);
    ta.keys().eq(ga.keys())
        && te.iter().all(|&(x, y)| ga[&x].contains(&y))
        && te.len() + 1 == ta.len()
        && components(&ta, &BTreeSet::new()).len() == 1
        && ta.values().all(|n| n.len() <= d)
}

/// Adjacency of the prism over `g`, with `v*` written as `v + off`.
pub fn prism_adj(g: &PlaneGraph, off: V) -> BTreeMap<V, BTreeSet<V>> {
    let a = adj(g);
    let mut out: BTreeMap<V, BTreeSet<V>> = BTreeMap::new();
    for (&v, ns) in &a {
        out.entry(v).or_default().extend(ns.iter().copied().chain([v + off]));
        out.entry(v + off).or_default().extend(ns.iter().map(|&w| w + off).chain([v]));
    }
    out
}

/// `w` visits every vertex of `a` exactly once along edges; a closed walk
/// also needs the closing edge.
pub fn hamiltonian(a: &BTreeMap<V, BTreeSet<V>>, w: &[V], closed: bool) -> bool {
    let distinct: BTreeSet<V> = w.iter().copied().collect();
    distinct.len() == w.len()
        && distinct.iter().eq(a.keys())
        && w.windows(2).all(|s| a[&s[0]].contains(&s[1]))
        && (!closed || a[&w[w.len() - 1]].contains(&w[0]))
}
