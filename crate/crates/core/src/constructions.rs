//! Constructors for the quandles studied here: trivial and dihedral quandles,
//! the signed-axis quandle, the signed coordinate k-planes `A(k, n)`, graph
//! quandles, and abelian extensions by 2-cocycles.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{k_subsets, subset_elements, SimpleGraph};
use crate::quandle::{direct_product, FiniteQuandle};

pub fn trivial(n: usize) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidParameter("trivial quandle needs n >= 1".into()));
    }
    let table = (0..n).flat_map(|_| 0..n).collect();
    Ok(FiniteQuandle::from_flat(n, table))
}

/// The dihedral quandle `D_r` on `ℤ_r`, `s_x(y) = 2x − y mod r`.
///
/// Point `k` stands for the unit vector at angle `2πk/r`. Reflecting the
/// angle `β` across the line at angle `α` gives `2α − β`, which is the rule
/// above after dividing by `2π/r`.
pub fn dihedral(r: usize) -> Result<FiniteQuandle> {
    if r == 0 {
        return Err(Error::InvalidParameter("dihedral quandle needs r >= 1".into()));
    }
    let table = (0..r).flat_map(|x| (0..r).map(move |y| (2 * x + r - y) % r)).collect();
    Ok(FiniteQuandle::from_flat(r, table))
}

/// The `2n` signed basis vectors `±e_i` under the coordinate reflections.
/// `±e_i` has index `2(i − 1)` for `+` and `2(i − 1) + 1` for `−`.
pub fn axis_quandle(n: usize) -> Result<FiniteQuandle> {
    if n == 0 {
        return Err(Error::InvalidParameter("axis quandle needs n >= 1".into()));
    }
    let size = 2 * n;
    // s_{±e_i} fixes ±e_i and negates every other ±e_j
    let table = (0..size)
        .flat_map(|x| (0..size).map(move |y| if x / 2 == y / 2 { y } else { y ^ 1 }))
        .collect();
    let labels = (1..=n).flat_map(|i| [format!("+e{i}"), format!("-e{i}")]).collect();
    FiniteQuandle::from_flat(size, table).with_labels(labels)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Positive,
    Negative,
}

impl Orientation {
    pub fn flipped(self) -> Self {
        match self {
            Orientation::Positive => Orientation::Negative,
            Orientation::Negative => Orientation::Positive,
        }
    }

    fn times(self, sign: i64) -> Self {
        if sign < 0 {
            self.flipped()
        } else {
            self
        }
    }
}

/// An oriented coordinate k-plane `±(i_1, …, i_k)` in `ℝ^n`, indices 1-based
/// and strictly increasing. `Positive` is the orientation of the ordered basis
/// `(e_{i_1}, …, e_{i_k})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SignedSubset {
    n: usize,
    indices: Vec<usize>,
    orientation: Orientation,
}

impl SignedSubset {
    pub fn new(n: usize, indices: Vec<usize>, orientation: Orientation) -> Result<Self> {
        if indices.is_empty() || indices.len() > n {
            return Err(Error::InvalidParameter(format!("need 1 <= k <= n, got k={}, n={n}", indices.len())));
        }
        if indices[0] == 0 || *indices.last().unwrap() > n || indices.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::InvalidParameter(format!("indices {indices:?} must strictly increase within 1..={n}")));
        }
        Ok(SignedSubset { n, indices, orientation })
    }

    pub fn dimension(&self) -> usize {
        self.n
    }

    pub fn indices(&self) -> &[usize] {
        &self.indices
    }

    pub fn orientation(&self) -> Orientation {
        self.orientation
    }

    fn mask(&self) -> u32 {
        self.indices.iter().fold(0, |m, &i| m | 1 << (i - 1))
    }
}

impl fmt::Display for SignedSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.orientation {
            Orientation::Positive => '+',
            Orientation::Negative => '-',
        };
        let parts: Vec<String> = self.indices.iter().map(usize::to_string).collect();
        write!(f, "{sign}({})", parts.join(","))
    }
}

/// The elements of `A(k, n)` in their point order: k-subsets lexicographic,
/// `+` before `−`.
pub fn aknn_elements(k: usize, n: usize) -> Result<Vec<SignedSubset>> {
    let subsets = k_subsets(n, k)?;
    Ok(subsets
        .into_iter()
        .flat_map(|mask| {
            let indices = subset_elements(mask);
            [Orientation::Positive, Orientation::Negative]
                .map(|o| SignedSubset { n, indices: indices.clone(), orientation: o })
        })
        .collect())
}

/// `A(k, n)`: the oriented coordinate k-planes of `ℝ^n`. `s_I(J) = J` when
/// `#(J ∖ I)` is even and `−J` when it is odd; the orientation of `I` plays
/// no part.
pub fn aknn(k: usize, n: usize) -> Result<FiniteQuandle> {
    let subsets = k_subsets(n, k)?;
    let size = 2 * subsets.len();
    let table = (0..size)
        .flat_map(|x| {
            let i = subsets[x / 2];
            let subsets = &subsets;
            (0..size).map(move |y| {
                let j = subsets[y / 2];
                if (j & !i).count_ones() % 2 == 0 {
                    y
                } else {
                    y ^ 1
                }
            })
        })
        .collect();
    let labels = aknn_elements(k, n)?.iter().map(ToString::to_string).collect();
    FiniteQuandle::from_flat(size, table).with_labels(labels)
}

/// Point index of a signed subset inside [`aknn`]`(k, n)`.
pub fn aknn_index(element: &SignedSubset) -> Result<usize> {
    let subsets = k_subsets(element.n, element.indices.len())?;
    let pos = subsets.iter().position(|&m| m == element.mask()).expect("mask is a k-subset");
    Ok(2 * pos + (element.orientation == Orientation::Negative) as usize)
}

/// Evaluates `s_I(J)` geometrically in exact integer arithmetic.
///
/// `r_I` is the diagonal reflection fixing `e_i` for `i ∈ I` and negating the
/// other basis vectors. It is applied to each basis vector of `J`; the images
/// span the same coordinate plane, and the orientation of `J` is multiplied by
/// the sign of the determinant of the change-of-basis matrix from
/// `(e_{j_1}, …, e_{j_k})` to the image basis.
pub fn reflection_oracle(i: &SignedSubset, j: &SignedSubset) -> Result<SignedSubset> {
    if i.n != j.n || i.indices.len() != j.indices.len() {
        return Err(Error::InvalidParameter(format!(
            "dimension mismatch: I lives in A({}, {}), J in A({}, {})",
            i.indices.len(),
            i.n,
            j.indices.len(),
            j.n
        )));
    }
    let n = i.n;
    let reflection: Vec<Vec<i64>> = (1..=n)
        .map(|row| (1..=n).map(|col| if row != col { 0 } else if i.indices.contains(&row) { 1 } else { -1 }).collect())
        .collect();
    let basis: Vec<Vec<i64>> = j.indices.iter().map(|&c| unit_vector(n, c)).collect();
    let images: Vec<Vec<i64>> = basis.iter().map(|v| mat_vec(&reflection, v)).collect();

    // the images stay inside span{e_j : j ∈ J}; their coordinates there form
    // the change-of-basis matrix
    let k = basis.len();
    let change: Vec<Vec<i64>> =
        (0..k).map(|a| (0..k).map(|b| dot(&images[b], &basis[a])).collect()).collect();
    for (b, image) in images.iter().enumerate() {
        let reconstructed: Vec<i64> =
            (0..n).map(|t| (0..k).map(|a| change[a][b] * basis[a][t]).sum()).collect();
        debug_assert_eq!(&reconstructed, image, "image left the plane");
    }
    let det = determinant(change);
    debug_assert!(det == 1 || det == -1);
    Ok(SignedSubset { n, indices: j.indices.clone(), orientation: j.orientation.times(det) })
}

fn unit_vector(n: usize, i: usize) -> Vec<i64> {
    (1..=n).map(|t| (t == i) as i64).collect()
}

fn mat_vec(m: &[Vec<i64>], v: &[i64]) -> Vec<i64> {
    m.iter().map(|row| dot(row, v)).collect()
}

fn dot(a: &[i64], b: &[i64]) -> i64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Exact integer determinant by fraction-free (Bareiss) elimination.
fn determinant(mut m: Vec<Vec<i64>>) -> i64 {
    let k = m.len();
    let mut sign = 1;
    let mut prev = 1;
    for p in 0..k {
        if m[p][p] == 0 {
            match (p + 1..k).find(|&r| m[r][p] != 0) {
                Some(r) => {
                    m.swap(p, r);
                    sign = -sign;
                }
                None => return 0,
            }
        }
        for r in p + 1..k {
            for c in p + 1..k {
                m[r][c] = (m[r][c] * m[p][p] - m[r][p] * m[p][c]) / prev;
            }
        }
        prev = m[p][p];
    }
    sign * m[k - 1][k - 1]
}

/// `Q_G` on `V(G) × ℤ_2`, `s_(v,a)(w, b) = (w, b + e(v, w))`; `(v, a)` has
/// index `2v + a`. The row of `(v, a)` does not depend on `a`.
pub fn from_graph(g: &SimpleGraph) -> FiniteQuandle {
    let size = 2 * g.vertex_count();
    let table = (0..size)
        .flat_map(|x| (0..size).map(move |y| if g.adjacent(x / 2, y / 2) { y ^ 1 } else { y }))
        .collect();
    let names: Vec<String> = match g.labels() {
        Some(l) => l.to_vec(),
        None => (0..g.vertex_count()).map(|v| v.to_string()).collect(),
    };
    let labels = names.iter().flat_map(|v| [format!("({v},0)"), format!("({v},1)")]).collect();
    FiniteQuandle::from_flat(size, table).with_labels(labels).expect("two labels per vertex")
}

/// A map `X × X → ℤ_m`, stored row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CocycleTable {
    size: usize,
    modulus: u32,
    values: Vec<u32>,
}

impl CocycleTable {
    /// Entries are reduced mod `modulus`. The zero-diagonal condition is not
    /// enforced here; [`is_cocycle`] reports it.
    pub fn new(modulus: u32, values: Vec<Vec<u32>>) -> Result<Self> {
        if modulus < 2 {
            return Err(Error::InvalidParameter(format!("modulus must be at least 2, got {modulus}")));
        }
        let size = values.len();
        if size == 0 || values.iter().any(|r| r.len() != size) {
            return Err(Error::MalformedTable("cocycle values must form a nonempty square array".into()));
        }
        let values = values.into_iter().flatten().map(|v| v % modulus).collect();
        Ok(CocycleTable { size, modulus, values })
    }

    pub fn zero(size: usize, modulus: u32) -> Result<Self> {
        CocycleTable::new(modulus, vec![vec![0; size]; size])
    }

    /// The adjacency function of `g` as a `ℤ_2`-valued map on its vertices.
    pub fn from_adjacency(g: &SimpleGraph) -> Self {
        let n = g.vertex_count();
        let values = (0..n).flat_map(|v| (0..n).map(move |w| g.adjacent(v, w) as u32)).collect();
        CocycleTable { size: n, modulus: 2, values }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn modulus(&self) -> u32 {
        self.modulus
    }

    #[inline]
    pub fn value(&self, x: usize, y: usize) -> u32 {
        self.values[x * self.size + y]
    }

    pub fn values(&self) -> Vec<Vec<u32>> {
        self.values.chunks(self.size).map(<[u32]>::to_vec).collect()
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let raw: CocycleJson = serde_json::from_str(text)?;
        if raw.size != raw.values.len() {
            return Err(Error::MalformedTable(format!(
                "size is {} but values has {} rows",
                raw.size,
                raw.values.len()
            )));
        }
        if let Some(v) = raw.values.iter().flatten().find(|&&v| v >= raw.modulus) {
            return Err(Error::MalformedTable(format!("value {v} is not reduced mod {}", raw.modulus)));
        }
        CocycleTable::new(raw.modulus, raw.values)
    }

    pub fn to_json(&self) -> String {
        let raw = CocycleJson { size: self.size, modulus: self.modulus, values: self.values() };
        serde_json::to_string(&raw).expect("cocycle serializes")
    }
}

/// On-disk form: `{"size": n, "modulus": m, "values": [[...]]}`.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CocycleJson {
    pub size: usize,
    pub modulus: u32,
    pub values: Vec<Vec<u32>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "condition", rename_all = "snake_case")]
pub enum CocycleViolation {
    NonzeroDiagonal { x: usize },
    Identity { x: usize, y: usize, z: usize },
}

impl fmt::Display for CocycleViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CocycleViolation::NonzeroDiagonal { x } => write!(f, "phi({x},{x}) != 0"),
            CocycleViolation::Identity { x, y, z } => write!(f, "cocycle identity fails at ({x}, {y}, {z})"),
        }
    }
}

/// Checks `φ(x, x) = 0` and, for all `x, y, z`,
/// `φ(x, y) − φ(x, z) + φ(s_y(x), z) − φ(s_z(x), s_z(y)) = 0` in `ℤ_m`.
/// Returns the first violation, or `None` for a cocycle.
pub fn is_cocycle(q: &FiniteQuandle, phi: &CocycleTable) -> Result<Option<CocycleViolation>> {
    let n = q.size();
    if phi.size != n {
        return Err(Error::SizeMismatch { expected: n, found: phi.size });
    }
    if let Some(x) = (0..n).find(|&x| phi.value(x, x) != 0) {
        return Ok(Some(CocycleViolation::NonzeroDiagonal { x }));
    }
    let m = phi.modulus as u64;
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let lhs = phi.value(x, y) as u64 + phi.value(q.act(y, x), z) as u64;
                let rhs = phi.value(x, z) as u64 + phi.value(q.act(z, x), q.act(z, y)) as u64;
                if lhs % m != rhs % m {
                    return Ok(Some(CocycleViolation::Identity { x, y, z }));
                }
            }
        }
    }
    Ok(None)
}

/// The abelian extension of `q` by `φ` on `X × ℤ_m`, `(x, a)` at index
/// `x·m + a`:
///
/// `s_(x,a)(y, b) = (s_x(y), b + φ(y, x))`.
///
/// The cocycle identity above is stated with the acted-on point as the first
/// argument of `φ`, so that is the argument order that makes the extension a
/// quandle for every cocycle. For symmetric `φ`, such as a graph's adjacency
/// function, the order is immaterial.
pub fn cocycle_extension(q: &FiniteQuandle, phi: &CocycleTable) -> Result<FiniteQuandle> {
    if let Some(v) = is_cocycle(q, phi)? {
        return Err(Error::NotACocycle(v));
    }
    let n = q.size();
    let m = phi.modulus as usize;
    let size = n * m;
    let mut table = Vec::with_capacity(size * size);
    for x in 0..n {
        for _a in 0..m {
            for y in 0..n {
                let shift = phi.value(y, x) as usize;
                for b in 0..m {
                    table.push(q.act(x, y) * m + (b + shift) % m);
                }
            }
        }
    }
    Ok(FiniteQuandle::from_flat(size, table))
}

/// Iterated direct product of dihedral quandles `D_{r_1} × … × D_{r_m}`.
pub fn discrete_torus(orders: &[usize]) -> Result<FiniteQuandle> {
    let (first, rest) = orders
        .split_first()
        .ok_or_else(|| Error::InvalidParameter("discrete torus needs at least one factor".into()))?;
    rest.iter().try_fold(dihedral(*first)?, |acc, &r| Ok(direct_product(&acc, &dihedral(r)?)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quandle::{are_isomorphic, is_homomorphism, PointMap};
    use proptest::prelude::*;

    fn rows(q: &FiniteQuandle) -> Vec<Vec<usize>> {
        q.table()
    }

    #[test]
    fn trivial_tables() {
        assert_eq!(rows(&trivial(1).unwrap()), vec![vec![0]]);
        assert_eq!(rows(&trivial(3).unwrap()), vec![vec![0, 1, 2]; 3]);
        assert!(trivial(0).is_err());
    }

    #[test]
    fn dihedral_tables() {
        assert_eq!(dihedral(1).unwrap(), trivial(1).unwrap());
        assert_eq!(rows(&dihedral(3).unwrap()), vec![vec![0, 2, 1], vec![2, 1, 0], vec![1, 0, 2]]);
        assert!(dihedral(0).is_err());
    }

    /// Reflect the vertex at angle 2πy/r across the line through the vertex at
    /// angle 2πx/r in floating point, then round back to a vertex index.
    fn geometric_dihedral(r: usize) -> Vec<Vec<usize>> {
        let tau = std::f64::consts::TAU;
        (0..r)
            .map(|x| {
                let axis = tau * x as f64 / r as f64;
                let (ax, ay) = (axis.cos(), axis.sin());
                (0..r)
                    .map(|y| {
                        let ang = tau * y as f64 / r as f64;
                        let (px, py) = (ang.cos(), ang.sin());
                        // r_L(p) = 2 (p·a) a − p
                        let d = px * ax + py * ay;
                        let (qx, qy) = (2.0 * d * ax - px, 2.0 * d * ay - py);
                        let k = (qy.atan2(qx) / tau * r as f64).round() as i64;
                        k.rem_euclid(r as i64) as usize
                    })
                    .collect()
            })
            .collect()
    }

    #[test]
    fn dihedral_matches_circle_reflections() {
        for r in 1..=8 {
            assert_eq!(rows(&dihedral(r).unwrap()), geometric_dihedral(r), "r = {r}");
        }
    }

    #[test]
    fn axis_quandle_examples() {
        let a0 = axis_quandle(1).unwrap();
        assert_eq!(a0, trivial(2).unwrap());
        assert!(are_isomorphic(&axis_quandle(2).unwrap(), &dihedral(4).unwrap()).unwrap());
        for n in 1..=5 {
            assert!(are_isomorphic(&axis_quandle(n).unwrap(), &aknn(1, n).unwrap()).unwrap());
        }
    }

    #[test]
    fn aknn_examples() {
        let q = aknn(2, 4).unwrap();
        assert_eq!(q.size(), 12);
        let labels = q.labels().unwrap();
        assert_eq!(&labels[..4], &["+(1,2)", "-(1,2)", "+(1,3)", "-(1,3)"]);
        let i = aknn_index(&SignedSubset::new(4, vec![1, 2], Orientation::Positive).unwrap()).unwrap();
        let j = aknn_index(&SignedSubset::new(4, vec![1, 3], Orientation::Positive).unwrap()).unwrap();
        let minus_j = aknn_index(&SignedSubset::new(4, vec![1, 3], Orientation::Negative).unwrap()).unwrap();
        assert_eq!(q.act(i, j), minus_j);
        for x in 0..q.size() {
            assert_eq!(q.act(x, x), x);
            assert_eq!(q.act(x, x ^ 1), x ^ 1);
        }
        assert!(aknn(5, 4).is_err());
        assert!(aknn(0, 4).is_err());
    }

    #[test]
    fn oracle_examples() {
        let i = SignedSubset::new(4, vec![1, 2], Orientation::Positive).unwrap();
        assert_eq!(reflection_oracle(&i, &i).unwrap(), i);
        let j = SignedSubset::new(4, vec![1, 3], Orientation::Positive).unwrap();
        let image = reflection_oracle(&i, &j).unwrap();
        assert_eq!(image.indices(), &[1, 3]);
        assert_eq!(image.orientation(), Orientation::Negative);
        let other = SignedSubset::new(5, vec![1, 3], Orientation::Positive).unwrap();
        assert!(reflection_oracle(&i, &other).is_err());
    }

    #[test]
    fn oracle_agrees_with_table_on_a24() {
        let q = aknn(2, 4).unwrap();
        let elements = aknn_elements(2, 4).unwrap();
        for (x, i) in elements.iter().enumerate() {
            for (y, j) in elements.iter().enumerate() {
                let image = reflection_oracle(i, j).unwrap();
                assert_eq!(aknn_index(&image).unwrap(), q.act(x, y));
            }
        }
    }

    #[test]
    fn determinant_small_cases() {
        assert_eq!(determinant(vec![vec![2, 1], vec![1, 1]]), 1);
        assert_eq!(determinant(vec![vec![0, 1], vec![1, 0]]), -1);
        assert_eq!(determinant(vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]]), -3);
        assert_eq!(determinant(vec![vec![1, 2], vec![2, 4]]), 0);
    }

    #[test]
    fn graph_quandle_examples() {
        for n in 1..=4 {
            assert_eq!(from_graph(&SimpleGraph::empty(n).unwrap()), trivial(2 * n).unwrap());
        }
        let k2 = from_graph(&SimpleGraph::complete(2).unwrap());
        assert_eq!(rows(&k2), vec![vec![0, 1, 3, 2], vec![0, 1, 3, 2], vec![1, 0, 2, 3], vec![1, 0, 2, 3]]);
        // the signed-axis map (v_i, a) ↦ (−1)^a e_i is index-preserving here
        let a1 = axis_quandle(2).unwrap();
        assert!(is_homomorphism(&PointMap::identity(4), &k2, &a1).unwrap());
    }

    #[test]
    fn cocycle_examples() {
        let d3 = dihedral(3).unwrap();
        assert_eq!(is_cocycle(&d3, &CocycleTable::zero(3, 5).unwrap()).unwrap(), None);

        let t2 = trivial(2).unwrap();
        let phi = CocycleTable::new(2, vec![vec![0, 1], vec![0, 0]]).unwrap();
        assert_eq!(is_cocycle(&t2, &phi).unwrap(), None);
        let bad = CocycleTable::new(2, vec![vec![1, 1], vec![0, 0]]).unwrap();
        assert_eq!(is_cocycle(&t2, &bad).unwrap(), Some(CocycleViolation::NonzeroDiagonal { x: 0 }));
        assert!(matches!(cocycle_extension(&t2, &bad), Err(Error::NotACocycle(_))));
        assert!(is_cocycle(&d3, &phi).is_err());
    }

    #[test]
    fn zero_cocycle_gives_product_with_trivial_fiber() {
        let d3 = dihedral(3).unwrap();
        let ext = cocycle_extension(&d3, &CocycleTable::zero(3, 4).unwrap()).unwrap();
        assert_eq!(ext, direct_product(&d3, &trivial(4).unwrap()));
    }

    #[test]
    fn extension_of_trivial_two_mod_three() {
        let phi = CocycleTable::new(3, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let ext = cocycle_extension(&trivial(2).unwrap(), &phi).unwrap();
        assert_eq!(ext.size(), 6);
        assert!(ext.verify().is_quandle());
    }

    #[test]
    fn asymmetric_cocycle_over_dihedral_three() {
        // passes the cocycle identity but is not symmetric, so it distinguishes
        // φ(y, x) from φ(x, y) in the extension rule
        let phi = CocycleTable::new(2, vec![vec![0, 0, 1], vec![1, 0, 1], vec![1, 0, 0]]).unwrap();
        let d3 = dihedral(3).unwrap();
        assert_eq!(is_cocycle(&d3, &phi).unwrap(), None);
        let ext = cocycle_extension(&d3, &phi).unwrap();
        assert!(ext.verify().is_quandle());
    }

    #[test]
    fn extension_by_adjacency_is_graph_quandle() {
        let g = SimpleGraph::new(4, &[(0, 1), (1, 2), (2, 3), (0, 3), (0, 2)]).unwrap();
        let phi = CocycleTable::from_adjacency(&g);
        assert_eq!(is_cocycle(&trivial(4).unwrap(), &phi).unwrap(), None);
        let ext = cocycle_extension(&trivial(4).unwrap(), &phi).unwrap();
        assert_eq!(ext, from_graph(&g));
    }

    #[test]
    fn cocycle_json() {
        let phi = CocycleTable::new(3, vec![vec![0, 1], vec![2, 0]]).unwrap();
        let text = phi.to_json();
        assert_eq!(text, r#"{"size":2,"modulus":3,"values":[[0,1],[2,0]]}"#);
        assert_eq!(CocycleTable::from_json(&text).unwrap(), phi);
        assert!(CocycleTable::from_json(r#"{"size":2,"modulus":3,"values":[[0,5],[2,0]]}"#).is_err());
    }

    #[test]
    fn torus_examples() {
        assert_eq!(discrete_torus(&[3]).unwrap(), dihedral(3).unwrap());
        assert_eq!(discrete_torus(&[3, 3]).unwrap().size(), 9);
        assert_eq!(discrete_torus(&[3, 2]).unwrap().size(), 6);
        assert!(discrete_torus(&[]).is_err());
    }

    fn arb_graph() -> impl Strategy<Value = SimpleGraph> {
        (1usize..=6).prop_flat_map(|n| {
            prop::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs: Vec<(usize, usize)> =
                    (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
                let edges: Vec<_> = pairs.into_iter().zip(bits).filter(|(_, b)| *b).map(|(e, _)| e).collect();
                SimpleGraph::new(n, &edges).unwrap()
            })
        })
    }

    fn is_involutive(q: &FiniteQuandle) -> bool {
        (0..q.size()).all(|x| (0..q.size()).all(|y| q.act(x, q.act(x, y)) == y))
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(48))]

        #[test]
        fn constructors_produce_involutive_quandles(r in 1usize..=9, n in 1usize..=5, k in 1usize..=5, g in arb_graph()) {
            let k = k.min(n);
            for q in [dihedral(r).unwrap(), axis_quandle(n).unwrap(), aknn(k, n).unwrap(), from_graph(&g), trivial(r).unwrap()] {
                prop_assert!(q.verify().is_quandle());
                prop_assert!(is_involutive(&q));
            }
            let qg = from_graph(&g);
            for v in 0..g.vertex_count() {
                prop_assert_eq!(qg.row(2 * v), qg.row(2 * v + 1));
            }
        }

        #[test]
        fn torus_passes_axioms(orders in prop::collection::vec(1usize..=4, 1..=3)) {
            prop_assert!(discrete_torus(&orders).unwrap().verify().is_quandle());
        }
    }
}
