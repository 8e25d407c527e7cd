//! Transformation groups of a quandle, its connected components, property
//! predicates, and the reconstruction of a graph from a crossed quandle whose
//! components all have two points.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::constructions::{dihedral, discrete_torus, from_graph};
use crate::enumerate::enumerate_quandles_with;
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{is_vertex_transitive_with_cap, SimpleGraph};
use crate::perm::{PermGroup, Permutation, UnionFind, DEFAULT_ELEMENT_CAP};
use crate::quandle::{find_isomorphism, FiniteQuandle, PointMap};
use crate::search::{HomSearch, DEFAULT_NODE_BUDGET};

/// Default point cap for automorphism computations.
pub const DEFAULT_AUT_CAP: usize = 16;

/// `Inn(X, s)`, generated by the point symmetries.
pub fn inner_group(q: &FiniteQuandle) -> PermGroup {
    let rows = (0..q.size()).map(|x| q.row_permutation(x)).collect();
    PermGroup::new(q.size(), rows).expect("rows have the quandle's degree")
}

/// Distinct products with the pair that first produced each.
fn products(q: &FiniteQuandle, invert_second: bool) -> Vec<((usize, usize), Permutation)> {
    let n = q.size();
    let rows: Vec<Permutation> = (0..n).map(|x| q.row_permutation(x)).collect();
    let seconds: Vec<Permutation> =
        if invert_second { rows.iter().map(Permutation::inverse).collect() } else { rows.clone() };
    let mut seen = HashMap::new();
    let mut out = Vec::new();
    for (x, row) in rows.iter().enumerate() {
        for (y, second) in seconds.iter().enumerate() {
            let p = row.compose_unchecked(second);
            if !p.is_identity() && !seen.contains_key(&p) {
                seen.insert(p.clone(), (x, y));
                out.push(((x, y), p));
            }
        }
    }
    out
}

/// `G⁰(X, s)`, generated by the `s_x ∘ s_y`.
pub fn g0_group(q: &FiniteQuandle) -> PermGroup {
    let gens = products(q, false).into_iter().map(|(_, p)| p).collect();
    PermGroup::new(q.size(), gens).expect("same degree")
}

/// `Dis(X, s)`, generated by the `s_x ∘ s_y⁻¹`.
pub fn displacement_group(q: &FiniteQuandle) -> PermGroup {
    let gens = products(q, true).into_iter().map(|(_, p)| p).collect();
    PermGroup::new(q.size(), gens).expect("same degree")
}

fn check_aut_cap(q: &FiniteQuandle, cap: usize) -> Result<()> {
    if q.size() > cap {
        return Err(Error::SizeCapExceeded { size: q.size(), cap });
    }
    Ok(())
}

/// `Aut(X, s)`, fully materialized.
pub fn automorphism_group(q: &FiniteQuandle) -> Result<PermGroup> {
    automorphism_group_with_cap(q, DEFAULT_AUT_CAP)
}

pub fn automorphism_group_with_cap(q: &FiniteQuandle, cap: usize) -> Result<PermGroup> {
    check_aut_cap(q, cap)?;
    let mut elements = Vec::new();
    let mut overflow = false;
    HomSearch::new(q, q, DEFAULT_NODE_BUDGET).for_each(&[], |images| {
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
    Ok(PermGroup::from_elements(q.size(), elements))
}

/// Orbits of `Inn(X, s)`.
pub fn connected_components(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    inner_group(q).orbits()
}

pub fn is_connected(q: &FiniteQuandle) -> bool {
    connected_components(q).len() == 1
}

fn noncommuting(gens: &[((usize, usize), Permutation)]) -> Option<Vec<usize>> {
    for (i, (a, p)) in gens.iter().enumerate() {
        for (b, r) in &gens[i + 1..] {
            if !p.commutes_with(r) {
                return Some(vec![a.0, a.1, b.0, b.1]);
            }
        }
    }
    None
}

/// `G⁰` is abelian. The witness `[x1, y1, x2, y2]` says `s_x1∘s_y1` and
/// `s_x2∘s_y2` do not commute.
pub fn flatness_witness(q: &FiniteQuandle) -> Option<Vec<usize>> {
    noncommuting(&products(q, false))
}

pub fn is_flat(q: &FiniteQuandle) -> bool {
    flatness_witness(q).is_none()
}

/// `Dis` is abelian; witness as for flatness with the second factor inverted.
pub fn mediality_witness(q: &FiniteQuandle) -> Option<Vec<usize>> {
    noncommuting(&products(q, true))
}

pub fn is_medial(q: &FiniteQuandle) -> bool {
    mediality_witness(q).is_none()
}

/// `s_x(y) = y` implies `s_y(x) = x`; the witness is a failing `(x, y)`.
pub fn crossedness_witness(q: &FiniteQuandle) -> Option<(usize, usize)> {
    let n = q.size();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| q.act(x, y) == y && q.act(y, x) != x)
}

pub fn is_crossed(q: &FiniteQuandle) -> bool {
    crossedness_witness(q).is_none()
}

pub fn involution_witness(q: &FiniteQuandle) -> Option<(usize, usize)> {
    let n = q.size();
    (0..n).flat_map(|x| (0..n).map(move |y| (x, y))).find(|&(x, y)| q.act(x, q.act(x, y)) != y)
}

pub fn is_involutive(q: &FiniteQuandle) -> bool {
    involution_witness(q).is_none()
}

/// Two points whose symmetries do not commute.
pub fn inner_noncommuting_pair(q: &FiniteQuandle) -> Option<(usize, usize)> {
    let n = q.size();
    let rows: Vec<Permutation> = (0..n).map(|x| q.row_permutation(x)).collect();
    (0..n).flat_map(|x| (x + 1..n).map(move |y| (x, y))).find(|&(x, y)| !rows[x].commutes_with(&rows[y]))
}

pub fn has_abelian_inner_group(q: &FiniteQuandle) -> bool {
    inner_noncommuting_pair(q).is_none()
}

/// Outcome of the homogeneity search.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Homogeneity {
    /// Automorphisms whose images of point 0 reach every point.
    Homogeneous { witnesses: Vec<Permutation> },
    /// No automorphism sends point 0 to `unreachable`.
    NotHomogeneous { unreachable: usize },
}

impl Homogeneity {
    pub fn holds(&self) -> bool {
        matches!(self, Homogeneity::Homogeneous { .. })
    }
}

/// Decides whether `Aut(X, s)` is transitive without materializing it.
///
/// The orbit of point 0 starts as its connected component (inner
/// automorphisms are automorphisms) and grows by one automorphism search per
/// point not yet reached.
pub fn homogeneity(q: &FiniteQuandle) -> Result<Homogeneity> {
    homogeneity_with_cap(q, DEFAULT_AUT_CAP)
}

pub fn homogeneity_with_cap(q: &FiniteQuandle, cap: usize) -> Result<Homogeneity> {
    check_aut_cap(q, cap)?;
    let n = q.size();
    let rows: Vec<Permutation> = (0..n).map(|x| q.row_permutation(x)).collect();
    let mut witnesses: Vec<Permutation> = Vec::new();
    let mut search = HomSearch::new(q, q, DEFAULT_NODE_BUDGET);
    for target in 1..n {
        let mut uf = UnionFind::new(n);
        for p in rows.iter().chain(&witnesses) {
            for x in 0..n {
                uf.union(x, p.apply(x));
            }
        }
        if uf.find(target) == uf.find(0) {
            continue;
        }
        match search.find_first(&[(0, target)])? {
            Some(images) => witnesses.push(Permutation::from_images_unchecked(images)),
            None => return Ok(Homogeneity::NotHomogeneous { unreachable: target }),
        }
    }
    Ok(Homogeneity::Homogeneous { witnesses })
}

pub fn is_homogeneous(q: &FiniteQuandle) -> Result<bool> {
    Ok(homogeneity(q)?.holds())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PropertyReport {
    pub size: usize,
    pub connected: bool,
    /// `None` when the automorphism search was out of reach.
    pub homogeneous: Option<bool>,
    pub flat: bool,
    pub medial: bool,
    pub crossed: bool,
    pub involutive: bool,
    pub abelian_inn: bool,
    pub components: Vec<Vec<usize>>,
    /// Counterexample point tuples keyed by the failed property.
    pub witnesses: BTreeMap<String, Vec<usize>>,
}

impl PropertyReport {
    /// Looks a property up by its serialized name; `None` for unknown names
    /// or an undecided homogeneity.
    pub fn flag(&self, name: &str) -> Option<bool> {
        match name {
            "connected" => Some(self.connected),
            "homogeneous" => self.homogeneous,
            "flat" => Some(self.flat),
            "medial" => Some(self.medial),
            "crossed" => Some(self.crossed),
            "involutive" => Some(self.involutive),
            "abelian_inn" => Some(self.abelian_inn),
            _ => None,
        }
    }

    pub const PROPERTY_NAMES: [&'static str; 7] =
        ["connected", "homogeneous", "flat", "medial", "crossed", "involutive", "abelian_inn"];
}

/// All property flags of a quandle, with witnesses for the failures.
pub fn property_report(q: &FiniteQuandle) -> Result<PropertyReport> {
    property_report_with_cap(q, DEFAULT_AUT_CAP)
}

pub fn property_report_with_cap(q: &FiniteQuandle, aut_cap: usize) -> Result<PropertyReport> {
    if let Some(v) = q.verify().first_violation {
        return Err(Error::AxiomViolation(v));
    }
    let mut witnesses = BTreeMap::new();
    let components = connected_components(q);
    let connected = components.len() == 1;
    if !connected {
        witnesses.insert("connected".to_string(), vec![0, components[1][0]]);
    }
    let homogeneous = match homogeneity_with_cap(q, aut_cap) {
        Ok(Homogeneity::Homogeneous { .. }) => Some(true),
        Ok(Homogeneity::NotHomogeneous { unreachable }) => {
            witnesses.insert("homogeneous".to_string(), vec![0, unreachable]);
            Some(false)
        }
        Err(Error::SizeCapExceeded { .. } | Error::SearchExhausted { .. }) => None,
        Err(e) => return Err(e),
    };
    let mut record = |name: &str, w: Option<Vec<usize>>| match w {
        Some(w) => {
            witnesses.insert(name.to_string(), w);
            false
        }
        None => true,
    };
    let pair = |p: Option<(usize, usize)>| p.map(|(a, b)| vec![a, b]);
    let flat = record("flat", flatness_witness(q));
    let medial = record("medial", mediality_witness(q));
    let crossed = record("crossed", pair(crossedness_witness(q)));
    let involutive = record("involutive", pair(involution_witness(q)));
    let abelian_inn = record("abelian_inn", pair(inner_noncommuting_pair(q)));
    Ok(PropertyReport {
        size: q.size(),
        connected,
        homogeneous,
        flat,
        medial,
        crossed,
        involutive,
        abelian_inn,
        components,
        witnesses,
    })
}

/// A graph `G` together with the point correspondence realizing `q ≅ Q_G`.
#[derive(Clone, Debug)]
pub struct GraphReconstruction {
    pub graph: SimpleGraph,
    /// `vertex_of[x] = (v, a)`: point `x` of the quandle is `(v, a)` in `Q_G`.
    pub vertex_of: Vec<(usize, usize)>,
}

impl GraphReconstruction {
    /// The map `x ↦ 2v + a` from the quandle onto [`from_graph`]`(graph)`.
    pub fn isomorphism(&self) -> PointMap {
        let images = self.vertex_of.iter().map(|&(v, a)| 2 * v + a).collect();
        PointMap::new(self.vertex_of.len(), images).expect("indices are in range")
    }
}

/// Rebuilds the graph of a crossed quandle whose connected components all
/// have exactly two points.
///
/// Vertices are the components ordered by their smaller point, which is
/// taken as bit 0. Two components are joined when the symmetry at one moves
/// the points of the other; crossedness makes this symmetric and independent
/// of the chosen representatives.
pub fn to_graph(q: &FiniteQuandle) -> Result<GraphReconstruction> {
    let components = connected_components(q);
    if let Some(c) = components.iter().find(|c| c.len() != 2) {
        return Err(Error::BadComponentSize { component: c.clone() });
    }
    if let Some((x, y)) = crossedness_witness(q) {
        return Err(Error::NotCrossed { x, y });
    }
    let mut vertex_of = vec![(0, 0); q.size()];
    for (v, c) in components.iter().enumerate() {
        vertex_of[c[0]] = (v, 0);
        vertex_of[c[1]] = (v, 1);
    }
    let mut edges = Vec::new();
    for (v, a) in components.iter().enumerate() {
        for (w, b) in components.iter().enumerate().skip(v + 1) {
            if q.act(a[0], b[0]) != b[0] {
                edges.push((v, w));
            }
        }
    }
    let labels = components.iter().map(|c| format!("{{{},{}}}", q.label(c[0]), q.label(c[1]))).collect();
    let graph = SimpleGraph::new(components.len(), &edges)?.with_labels(labels)?;
    Ok(GraphReconstruction { graph, vertex_of })
}

#[derive(Clone, Debug)]
pub struct Characterization {
    pub two_point_components: bool,
    pub crossed: bool,
    pub homogeneous: bool,
    /// Present when the first two conditions hold.
    pub witness: Option<GraphReconstruction>,
    pub witness_vertex_transitive: Option<bool>,
}

impl Characterization {
    /// `q ≅ Q_G` for some vertex-transitive graph with at least one edge.
    pub fn is_vertex_transitive_graph_quandle(&self) -> bool {
        self.two_point_components && self.crossed && self.homogeneous
    }

    /// When a witness graph exists, homogeneity of the quandle agrees with
    /// vertex-transitivity of the graph.
    pub fn consistent(&self) -> bool {
        match self.witness_vertex_transitive {
            Some(vt) => vt == self.homogeneous,
            None => true,
        }
    }
}

pub fn characterize(q: &FiniteQuandle) -> Result<Characterization> {
    let components = connected_components(q);
    let two_point_components = components.iter().all(|c| c.len() == 2);
    let crossed = is_crossed(q);
    let homogeneous = is_homogeneous(q)?;
    let (witness, witness_vertex_transitive) = if two_point_components && crossed {
        let rec = to_graph(q)?;
        let vt = is_vertex_transitive_with_cap(&rec.graph, DEFAULT_AUT_CAP)?;
        (Some(rec), Some(vt))
    } else {
        (None, None)
    };
    Ok(Characterization { two_point_components, crossed, homogeneous, witness, witness_vertex_transitive })
}

#[derive(Clone, Debug)]
pub struct GroupChain {
    pub dis: PermGroup,
    pub g0: PermGroup,
    pub inn: PermGroup,
    pub aut: PermGroup,
    /// Orders of `Dis`, `G⁰`, `Inn`, `Aut`.
    pub orders: [usize; 4],
    /// Element-wise `Dis ⊆ G⁰ ⊆ Inn ⊆ Aut`.
    pub inclusions_hold: bool,
}

/// `Dis ⊆ G⁰ ⊆ Inn ⊆ Aut`, all four materialized.
pub fn group_chain(q: &FiniteQuandle) -> Result<GroupChain> {
    let aut = automorphism_group(q)?;
    let inn = inner_group(q);
    let g0 = g0_group(q);
    let dis = displacement_group(q);
    let orders = [dis.order()?, g0.order()?, inn.order()?, aut.order()?];
    let inclusions_hold = dis.is_subgroup_of(&g0)? && g0.is_subgroup_of(&inn)? && inn.is_subgroup_of(&aut)?;
    Ok(GroupChain { dis, g0, inn, aut, orders, inclusions_hold })
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusSurvivor {
    pub table: Vec<Vec<usize>>,
    /// Dihedral orders of a discrete torus isomorphic to the survivor.
    pub torus: Option<Vec<usize>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct CensusOrder {
    pub order: usize,
    pub classes: usize,
    pub survivors: Vec<CensusSurvivor>,
}

impl CensusOrder {
    /// Every flat connected class has odd order and is a torus of odd dihedrals.
    pub fn consistent(&self) -> bool {
        self.survivors.iter().all(|s| self.order % 2 == 1 && s.torus.is_some())
    }
}

/// Factorizations of `n` into odd factors `>= 3`, nondecreasing. For `n = 1`
/// the single factorization `[1]` (the one-point dihedral quandle).
pub fn odd_torus_shapes(n: usize) -> Vec<Vec<usize>> {
    fn rec(n: usize, min: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if n == 1 {
            out.push(current.clone());
            return;
        }
        for f in (min..=n).step_by(2) {
            if n.is_multiple_of(f) {
                current.push(f);
                rec(n / f, f, current, out);
                current.pop();
            }
        }
    }
    if n == 1 {
        return vec![vec![1]];
    }
    let mut out = Vec::new();
    if n % 2 == 1 {
        rec(n, 3, &mut Vec::new(), &mut out);
    }
    out
}

fn identify_torus(q: &FiniteQuandle) -> Result<Option<Vec<usize>>> {
    for shape in odd_torus_shapes(q.size()) {
        let torus = discrete_torus(&shape)?;
        if find_isomorphism(q, &torus)?.is_some() {
            return Ok(Some(shape));
        }
    }
    Ok(None)
}

/// For each order up to `max_n`, the flat connected isomorphism classes and
/// their identification as discrete tori of odd dihedral quandles.
pub fn flat_connected_census(max_n: usize) -> Result<Vec<CensusOrder>> {
    flat_connected_census_with(max_n, Execution::default())
}

pub fn flat_connected_census_with(max_n: usize, exec: Execution) -> Result<Vec<CensusOrder>> {
    (1..=max_n)
        .map(|n| {
            let classes = enumerate_quandles_with(n, exec)?;
            let flags = exec.map(&classes, |q| is_connected(q) && is_flat(q));
            let survivors = classes
                .iter()
                .zip(flags)
                .filter(|(_, keep)| *keep)
                .map(|(q, _)| Ok(CensusSurvivor { table: q.table(), torus: identify_torus(q)? }))
                .collect::<Result<Vec<_>>>()?;
            Ok(CensusOrder { order: n, classes: classes.len(), survivors })
        })
        .collect()
}

/// Convenience for reports: the dihedral quandle a one-factor shape names.
pub fn torus_of(shape: &[usize]) -> Result<FiniteQuandle> {
    match shape {
        [r] => dihedral(*r),
        _ => discrete_torus(shape),
    }
}

/// The graph quandle of `g` and the automorphisms lifted from `Aut(G)` and the
/// fiber flips. These witness homogeneity of `Q_G` for vertex-transitive `G`
/// without any search on the quandle.
pub fn lifted_automorphisms(g: &SimpleGraph, graph_automorphisms: &[Permutation]) -> (FiniteQuandle, Vec<Permutation>) {
    let q = from_graph(g);
    let n = g.vertex_count();
    let mut out = Vec::new();
    for phi in graph_automorphisms {
        let images = (0..2 * n).map(|x| 2 * phi.apply(x / 2) + x % 2).collect();
        out.push(Permutation::from_images_unchecked(images));
    }
    for u in 0..n {
        let images = (0..2 * n).map(|x| if x / 2 == u { x ^ 1 } else { x }).collect();
        out.push(Permutation::from_images_unchecked(images));
    }
    (q, out)
}
