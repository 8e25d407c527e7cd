//! Simple graphs, their automorphisms, and the named families used to build
//! graph quandles.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::{PermGroup, Permutation, UnionFind, DEFAULT_ELEMENT_CAP};
use crate::search::DEFAULT_NODE_BUDGET;

/// Default vertex cap for automorphism and vertex-transitivity computations.
pub const DEFAULT_GRAPH_CAP: usize = 12;

/// An undirected graph with no loops and no multiple edges.
#[derive(Clone, Debug)]
pub struct SimpleGraph {
    n: usize,
    adj: Vec<bool>,
    labels: Option<Vec<String>>,
}

impl SimpleGraph {
    /// Edges may be given in either orientation; loops, duplicates and
    /// out-of-range endpoints are rejected.
    pub fn new(vertex_count: usize, edges: &[(usize, usize)]) -> Result<Self> {
        if vertex_count == 0 {
            return Err(Error::InvalidGraph("a graph needs at least one vertex".into()));
        }
        let mut g = SimpleGraph { n: vertex_count, adj: vec![false; vertex_count * vertex_count], labels: None };
        for &(u, v) in edges {
            if u >= vertex_count || v >= vertex_count {
                return Err(Error::InvalidGraph(format!("edge ({u},{v}) has an endpoint out of range")));
            }
            if u == v {
                return Err(Error::InvalidGraph(format!("loop at vertex {u}")));
            }
            if g.adjacent(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({u},{v})")));
            }
            g.adj[u * vertex_count + v] = true;
            g.adj[v * vertex_count + u] = true;
        }
        Ok(g)
    }

    fn from_predicate(n: usize, adjacent: impl Fn(usize, usize) -> bool) -> Self {
        let mut adj = vec![false; n * n];
        for u in 0..n {
            for v in 0..n {
                adj[u * n + v] = u != v && adjacent(u, v);
            }
        }
        SimpleGraph { n, adj, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.n {
            return Err(Error::SizeMismatch { expected: self.n, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    #[inline]
    pub fn adjacent(&self, v: usize, w: usize) -> bool {
        self.adj[v * self.n + w]
    }

    /// The adjacency function `e(v, w)`: 1 when joined by an edge, else 0.
    pub fn adjacency(&self, v: usize, w: usize) -> Result<u8> {
        for p in [v, w] {
            if p >= self.n {
                return Err(Error::PointOutOfRange { point: p, size: self.n });
            }
        }
        Ok(self.adjacent(v, w) as u8)
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        (0..self.n).flat_map(|u| (u + 1..self.n).map(move |v| (u, v))).filter(|&(u, v)| self.adjacent(u, v)).collect()
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().filter(|&&a| a).count() / 2
    }

    pub fn degree(&self, v: usize) -> usize {
        (0..self.n).filter(|&w| self.adjacent(v, w)).count()
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    pub fn min_degree(&self) -> usize {
        self.degrees().into_iter().min().unwrap_or(0)
    }

    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        (0..self.n).filter(move |&w| self.adjacent(v, w))
    }

    /// Adjacency rows packed as bitsets, bit `w` of row `v` set iff `v ~ w`.
    pub fn adjacency_bits(&self) -> Vec<u64> {
        assert!(self.n <= 64, "bit rows hold at most 64 vertices");
        (0..self.n).map(|v| self.neighbors(v).fold(0u64, |acc, w| acc | 1 << w)).collect()
    }

    /// Same vertex count and edge set; labels are ignored.
    pub fn same_edges(&self, other: &SimpleGraph) -> bool {
        self.n == other.n && self.adj == other.adj
    }

    // ---- builders -------------------------------------------------------

    pub fn empty(n: usize) -> Result<Self> {
        SimpleGraph::new(n, &[])
    }

    pub fn complete(n: usize) -> Result<Self> {
        check_positive(n, "complete")?;
        Ok(Self::from_predicate(n, |_, _| true))
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidParameter(format!("cycle needs at least 3 vertices, got {n}")));
        }
        Ok(Self::from_predicate(n, |u, v| (u + 1) % n == v || (v + 1) % n == u))
    }

    pub fn path(n: usize) -> Result<Self> {
        check_positive(n, "path")?;
        Ok(Self::from_predicate(n, |u, v| u.abs_diff(v) == 1))
    }

    /// `n` vertices in total: centre 0 joined to leaves `1..n`.
    pub fn star(n: usize) -> Result<Self> {
        check_positive(n, "star")?;
        Ok(Self::from_predicate(n, |u, v| (u == 0) != (v == 0)))
    }

    /// The Johnson graph `J(n, k)`: k-subsets, adjacent when they share `k − 1` elements.
    pub fn johnson(n: usize, k: usize) -> Result<Self> {
        let subsets = k_subsets(n, k)?;
        let g = Self::from_predicate(subsets.len(), |a, b| (subsets[a] & subsets[b]).count_ones() as usize + 1 == k);
        g.with_labels(subsets.iter().map(|&s| subset_label(s)).collect())
    }

    /// k-subsets of `{1..n}` in lexicographic order, with `v ~ w` iff `#(v ∖ w)` is odd.
    pub fn parity_difference(n: usize, k: usize) -> Result<Self> {
        let subsets = k_subsets(n, k)?;
        let g = Self::from_predicate(subsets.len(), |a, b| (subsets[a] & !subsets[b]).count_ones() % 2 == 1);
        g.with_labels(subsets.iter().map(|&s| subset_label(s)).collect())
    }

    /// Vertices of `other` follow those of `self`.
    pub fn disjoint_union(&self, other: &SimpleGraph) -> SimpleGraph {
        let n = self.n + other.n;
        Self::from_predicate(n, |u, v| match (u < self.n, v < self.n) {
            (true, true) => self.adjacent(u, v),
            (false, false) => other.adjacent(u - self.n, v - self.n),
            _ => false,
        })
    }

    // ---- serialization --------------------------------------------------

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: GraphJson = serde_json::from_str(text)?;
        raw.into_graph()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&GraphJson::from(self)).expect("graph serializes")
    }

    /// `graph { ... }` with every vertex listed, then edges in sorted order.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph {\n");
        for v in 0..self.n {
            match &self.labels {
                Some(l) => writeln!(out, "  {v} [label=\"{}\"];", l[v].replace('"', "\\\"")).unwrap(),
                None => writeln!(out, "  {v};").unwrap(),
            }
        }
        for (u, v) in self.edges() {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }
}

fn check_positive(n: usize, what: &str) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidParameter(format!("{what} graph needs at least one vertex")));
    }
    Ok(())
}

/// All k-subsets of `{1..n}` as bitmasks (bit `i − 1` for element `i`), in
/// lexicographic order of their sorted element lists.
pub(crate) fn k_subsets(n: usize, k: usize) -> Result<Vec<u32>> {
    if n == 0 || k == 0 || k > n || n > 31 {
        return Err(Error::InvalidParameter(format!("need 1 <= k <= n <= 31, got k={k}, n={n}")));
    }
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<u32>) {
        if current.len() == k {
            out.push(current.iter().fold(0u32, |m, &i| m | 1 << (i - 1)));
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - current.len() {
                break;
            }
            current.push(i);
            rec(i + 1, n, k, current, out);
            current.pop();
        }
    }
    rec(1, n, k, &mut current, &mut out);
    Ok(out)
}

pub(crate) fn subset_elements(mask: u32) -> Vec<usize> {
    (0..32).filter(|i| mask & (1 << i) != 0).map(|i| i + 1).collect()
}

fn subset_label(mask: u32) -> String {
    let parts: Vec<String> = subset_elements(mask).iter().map(usize::to_string).collect();
    format!("[{}]", parts.join(","))
}

/// On-disk form: `{"vertices": n, "edges": [[u, v], ...]}` with `u < v`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub vertices: usize,
    pub edges: Vec<[usize; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
}

impl GraphJson {
    pub fn into_graph(self) -> Result<SimpleGraph> {
        if let Some([u, v]) = self.edges.iter().find(|[u, v]| u >= v) {
            return Err(Error::InvalidGraph(if u == v {
                format!("loop at vertex {u}")
            } else {
                format!("edge [{u},{v}] must be listed with the smaller endpoint first")
            }));
        }
        let edges: Vec<(usize, usize)> = self.edges.iter().map(|&[u, v]| (u, v)).collect();
        let g = SimpleGraph::new(self.vertices, &edges)?;
        match self.labels {
            Some(l) => g.with_labels(l),
            None => Ok(g),
        }
    }
}

impl From<&SimpleGraph> for GraphJson {
    fn from(g: &SimpleGraph) -> Self {
        GraphJson {
            vertices: g.n,
            edges: g.edges().into_iter().map(|(u, v)| [u, v]).collect(),
            labels: g.labels.clone(),
        }
    }
}

// ---- automorphisms and isomorphisms ---------------------------------------

/// Degree plus the sorted multiset of neighbour degrees.
fn vertex_invariants(g: &SimpleGraph) -> Vec<(usize, Vec<usize>)> {
    let deg = g.degrees();
    (0..g.n)
        .map(|v| {
            let mut nd: Vec<usize> = g.neighbors(v).map(|w| deg[w]).collect();
            nd.sort_unstable();
            (deg[v], nd)
        })
        .collect()
}

/// Placement order: greedily pick a vertex with the most already-placed
/// neighbours so adjacency constraints bite early.
fn placement_order(g: &SimpleGraph) -> Vec<usize> {
    let mut placed = vec![false; g.n];
    let mut order = Vec::with_capacity(g.n);
    for _ in 0..g.n {
        let next = (0..g.n)
            .filter(|&v| !placed[v])
            .max_by_key(|&v| (order.iter().filter(|&&u| g.adjacent(u, v)).count(), g.degree(v), std::cmp::Reverse(v)))
            .expect("some vertex is unplaced");
        placed[next] = true;
        order.push(next);
    }
    order
}

struct GraphMatcher<'a> {
    src: &'a SimpleGraph,
    dst: &'a SimpleGraph,
    src_key: Vec<(usize, Vec<usize>)>,
    dst_key: Vec<(usize, Vec<usize>)>,
    order: Vec<usize>,
    budget: u64,
    nodes: u64,
}

impl<'a> GraphMatcher<'a> {
    fn new(src: &'a SimpleGraph, dst: &'a SimpleGraph, budget: u64) -> Self {
        GraphMatcher {
            src,
            dst,
            src_key: vertex_invariants(src),
            dst_key: vertex_invariants(dst),
            order: placement_order(src),
            budget,
            nodes: 0,
        }
    }

    fn compatible(&self) -> bool {
        let mut a = self.src_key.clone();
        let mut b = self.dst_key.clone();
        a.sort();
        b.sort();
        self.src.n == self.dst.n && a == b
    }

    /// Visits every adjacency-preserving bijection with `src[first.0] = first.1`
    /// (if given) until the callback returns false.
    fn for_each(&mut self, first: Option<(usize, usize)>, visit: &mut dyn FnMut(&[usize]) -> bool) -> Result<()> {
        if !self.compatible() {
            return Ok(());
        }
        let n = self.src.n;
        if let Some((a, b)) = first {
            if a >= n || b >= n {
                return Err(Error::PointOutOfRange { point: a.max(b), size: n });
            }
            if self.src_key[a] != self.dst_key[b] {
                return Ok(());
            }
            let pos = self.order.iter().position(|&v| v == a).unwrap();
            self.order.remove(pos);
            self.order.insert(0, a);
        }
        let mut fwd = vec![usize::MAX; n];
        let mut used = vec![false; n];
        self.descend(0, first.map(|p| p.1), &mut fwd, &mut used, visit)?;
        Ok(())
    }

    fn descend(
        &mut self,
        depth: usize,
        forced: Option<usize>,
        fwd: &mut [usize],
        used: &mut [bool],
        visit: &mut dyn FnMut(&[usize]) -> bool,
    ) -> Result<bool> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchExhausted { budget: self.budget });
        }
        if depth == self.src.n {
            return Ok(visit(fwd));
        }
        let x = self.order[depth];
        let candidates: Vec<usize> = match (depth, forced) {
            (0, Some(y)) => vec![y],
            _ => (0..self.dst.n).collect(),
        };
        for y in candidates {
            if used[y] || self.src_key[x] != self.dst_key[y] {
                continue;
            }
            let consistent = self.order[..depth]
                .iter()
                .all(|&u| self.src.adjacent(x, u) == self.dst.adjacent(y, fwd[u]));
            if !consistent {
                continue;
            }
            fwd[x] = y;
            used[y] = true;
            let keep_going = self.descend(depth + 1, forced, fwd, used, visit)?;
            fwd[x] = usize::MAX;
            used[y] = false;
            if !keep_going {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn check_cap(g: &SimpleGraph, cap: usize) -> Result<()> {
    if g.n > cap {
        return Err(Error::SizeCapExceeded { size: g.n, cap });
    }
    Ok(())
}

/// The full automorphism group, materialized.
pub fn graph_automorphisms(g: &SimpleGraph) -> Result<PermGroup> {
    graph_automorphisms_with_cap(g, DEFAULT_GRAPH_CAP)
}

pub fn graph_automorphisms_with_cap(g: &SimpleGraph, cap: usize) -> Result<PermGroup> {
    check_cap(g, cap)?;
    let mut elements = Vec::new();
    let mut overflow = false;
    GraphMatcher::new(g, g, DEFAULT_NODE_BUDGET).for_each(None, &mut |images| {
        if elements.len() >= DEFAULT_ELEMENT_CAP {
            overflow = true;
            return false;
        }
        elements.push(Permutation::from_images_unchecked(images.to_vec()));
        true
    })?;
    if overflow {
        return Err(Error::ElementCapExceeded { cap: DEFAULT_ELEMENT_CAP });
    }
    Ok(PermGroup::from_elements(g.n, elements))
}

/// Whether the automorphism group is transitive on vertices. Decided by
/// growing the orbit of vertex 0: each vertex not yet reached needs one
/// automorphism sending 0 to it, so the group is never materialized.
pub fn is_vertex_transitive(g: &SimpleGraph) -> Result<bool> {
    is_vertex_transitive_with_cap(g, DEFAULT_GRAPH_CAP)
}

pub fn is_vertex_transitive_with_cap(g: &SimpleGraph, cap: usize) -> Result<bool> {
    check_cap(g, cap)?;
    Ok(vertex_orbit_witnesses(g, true)?.is_some())
}

/// Automorphisms whose images of vertex 0 cover its whole orbit. Returns
/// `None` as soon as a vertex outside the orbit is found when `stop_early`.
fn vertex_orbit_witnesses(g: &SimpleGraph, stop_early: bool) -> Result<Option<Vec<Permutation>>> {
    let n = g.n;
    let mut witnesses: Vec<Permutation> = Vec::new();
    let mut missing = false;
    for target in 1..n {
        let mut uf = UnionFind::new(n);
        for p in &witnesses {
            for x in 0..n {
                uf.union(x, p.apply(x));
            }
        }
        if uf.find(target) == uf.find(0) {
            continue;
        }
        let mut found = None;
        GraphMatcher::new(g, g, DEFAULT_NODE_BUDGET).for_each(Some((0, target)), &mut |images| {
            found = Some(Permutation::from_images_unchecked(images.to_vec()));
            false
        })?;
        match found {
            Some(p) => witnesses.push(p),
            None if stop_early => return Ok(None),
            None => missing = true,
        }
    }
    Ok((!missing).then_some(witnesses))
}

/// An adjacency-preserving bijection `g1 → g2`, if one exists.
pub fn find_graph_isomorphism(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<Option<Vec<usize>>> {
    let mut found = None;
    GraphMatcher::new(g1, g2, DEFAULT_NODE_BUDGET).for_each(None, &mut |images| {
        found = Some(images.to_vec());
        false
    })?;
    Ok(found)
}

pub fn graphs_isomorphic(g1: &SimpleGraph, g2: &SimpleGraph) -> Result<bool> {
    Ok(find_graph_isomorphism(g1, g2)?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn adjacency_examples() {
        let k3 = SimpleGraph::complete(3).unwrap();
        assert_eq!(k3.adjacency(0, 2).unwrap(), 1);
        assert_eq!(k3.adjacency(1, 1).unwrap(), 0);
        let p3 = SimpleGraph::path(3).unwrap();
        assert_eq!(p3.adjacency(0, 2).unwrap(), 0);
        assert!(p3.adjacency(0, 3).is_err());
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert!(SimpleGraph::new(3, &[(0, 0)]).is_err());
        assert!(SimpleGraph::new(3, &[(0, 1), (1, 0)]).is_err());
        assert!(SimpleGraph::new(3, &[(0, 3)]).is_err());
        assert!(SimpleGraph::new(0, &[]).is_err());
    }

    #[test]
    fn automorphism_orders() {
        assert_eq!(graph_automorphisms(&SimpleGraph::empty(4).unwrap()).unwrap().order().unwrap(), 24);
        assert_eq!(graph_automorphisms(&SimpleGraph::complete(3).unwrap()).unwrap().order().unwrap(), 6);
        assert_eq!(graph_automorphisms(&SimpleGraph::path(3).unwrap()).unwrap().order().unwrap(), 2);
        assert_eq!(graph_automorphisms(&SimpleGraph::cycle(5).unwrap()).unwrap().order().unwrap(), 10);
        let big = SimpleGraph::empty(13).unwrap();
        assert!(matches!(graph_automorphisms(&big), Err(Error::SizeCapExceeded { size: 13, cap: 12 })));
    }

    #[test]
    fn vertex_transitivity_examples() {
        assert!(is_vertex_transitive(&SimpleGraph::cycle(5).unwrap()).unwrap());
        assert!(!is_vertex_transitive(&SimpleGraph::path(3).unwrap()).unwrap());
        for n in 1..=6 {
            assert!(is_vertex_transitive(&SimpleGraph::complete(n).unwrap()).unwrap());
        }
        // empty(12) has 12! automorphisms but the orbit search never lists them
        assert!(is_vertex_transitive(&SimpleGraph::empty(12).unwrap()).unwrap());
    }

    #[test]
    fn families() {
        for n in 1..=6 {
            assert!(SimpleGraph::parity_difference(n, 1).unwrap().same_edges(&SimpleGraph::complete(n).unwrap()));
        }
        let oct = SimpleGraph::parity_difference(4, 2).unwrap();
        assert_eq!((oct.vertex_count(), oct.edge_count()), (6, 12));
        assert!(oct.same_edges(&SimpleGraph::johnson(4, 2).unwrap()));
        // [1,2] is vertex 0 and [3,4] is vertex 5
        assert_eq!(oct.labels().unwrap()[0], "[1,2]");
        assert_eq!(oct.labels().unwrap()[5], "[3,4]");
        assert!(!oct.adjacent(0, 5));
        assert_eq!(SimpleGraph::empty(5).unwrap().edge_count(), 0);
        assert_eq!(SimpleGraph::star(4).unwrap().degrees(), vec![3, 1, 1, 1]);
        assert!(SimpleGraph::johnson(3, 4).is_err());
        assert!(SimpleGraph::cycle(2).is_err());
    }

    #[test]
    fn parity_difference_two_is_johnson() {
        for n in 2..=7 {
            let a = SimpleGraph::parity_difference(n, 2).unwrap();
            let b = SimpleGraph::johnson(n, 2).unwrap();
            assert!(a.same_edges(&b), "n = {n}");
        }
    }

    #[test]
    fn json_and_dot() {
        let g = SimpleGraph::new(4, &[(0, 1), (1, 2)]).unwrap();
        let text = g.to_json();
        assert_eq!(text, r#"{"vertices":4,"edges":[[0,1],[1,2]]}"#);
        assert!(SimpleGraph::from_json(&text).unwrap().same_edges(&g));
        assert_eq!(g.to_dot(), "graph {\n  0;\n  1;\n  2;\n  3;\n  0 -- 1;\n  1 -- 2;\n}\n");
        assert!(SimpleGraph::from_json(r#"{"vertices":3,"edges":[[1,0]]}"#).is_err());
        assert!(SimpleGraph::from_json(r#"{"vertices":3,"edges":[[1,1]]}"#).is_err());
        assert!(SimpleGraph::from_json(r#"{"vertices":3,"edges":[[0,1],[0,1]]}"#).is_err());
    }

    fn arb_graph(max_n: usize) -> impl Strategy<Value = SimpleGraph> {
        (1..=max_n).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
                SimpleGraph::from_predicate(n, |u, v| bits[u.min(v) * n + u.max(v)])
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        #[test]
        fn adjacency_symmetric_and_automorphisms_preserve_it(g in arb_graph(7)) {
            let n = g.vertex_count();
            for u in 0..n {
                for v in 0..n {
                    prop_assert_eq!(g.adjacency(u, v).unwrap(), g.adjacency(v, u).unwrap());
                }
            }
            let aut = graph_automorphisms(&g).unwrap();
            let elements = aut.closure().unwrap();
            prop_assert!(elements.contains(&Permutation::identity(n)));
            for p in elements {
                for u in 0..n {
                    for v in 0..n {
                        prop_assert_eq!(g.adjacent(u, v), g.adjacent(p.apply(u), p.apply(v)));
                    }
                }
            }
            // orbit search agrees with the materialized group
            prop_assert_eq!(is_vertex_transitive(&g).unwrap(), aut.is_transitive());
            if aut.is_transitive() {
                let d = g.degrees();
                prop_assert!(d.iter().all(|&x| x == d[0]));
            }
        }
    }
}
