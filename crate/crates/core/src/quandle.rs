//! Finite quandles as Cayley tables.
//!
//! The table is stored operator-on-the-left: `table[x][y] = s_x(y)`, where
//! `s_x` is the point symmetry at `x`. The binary-operation convention
//! `y ◁ x = s_x(y)` is the transpose of this table.

use std::fmt;
use std::hash::{Hash, Hasher};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::perm::Permutation;
use crate::search::{HomSearch, DEFAULT_NODE_BUDGET};

/// The first failing instance of a quandle axiom.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "axiom", rename_all = "lowercase")]
pub enum Violation {
    /// `s_x(x) != x`.
    Q1 { x: usize },
    /// `s_x(y) = s_x(z)` for distinct `y`, `z`.
    Q2 { x: usize, y: usize, z: usize },
    /// `s_x(s_y(z)) != s_{s_x(y)}(s_x(z))`.
    Q3 { x: usize, y: usize, z: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Violation::Q1 { x } => write!(f, "Q1 fails: s_{x}({x}) != {x}"),
            Violation::Q2 { x, y, z } => write!(f, "Q2 fails: s_{x} sends both {y} and {z} to the same point"),
            Violation::Q3 { x, y, z } => {
                write!(f, "Q3 fails at (x, y, z) = ({x}, {y}, {z}): s_x∘s_y != s_(s_x(y))∘s_x")
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AxiomReport {
    pub q1_ok: bool,
    pub q2_ok: bool,
    pub q3_ok: bool,
    pub first_violation: Option<Violation>,
}

impl AxiomReport {
    pub fn is_quandle(&self) -> bool {
        self.q1_ok && self.q2_ok && self.q3_ok
    }
}

fn check_shape(table: &[Vec<usize>]) -> Result<usize> {
    let n = table.len();
    if n == 0 {
        return Err(Error::MalformedTable("table is empty".into()));
    }
    for (x, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::MalformedTable(format!("row {x} has length {}, expected {n}", row.len())));
        }
        if let Some(y) = row.iter().position(|&v| v >= n) {
            return Err(Error::MalformedTable(format!("entry [{x}][{y}] = {} is out of range", row[y])));
        }
    }
    Ok(n)
}

/// Checks the three quandle axioms on a candidate table.
///
/// A table that is not square, or holds an out-of-range entry, is an input
/// error rather than an axiom failure.
pub fn verify_axioms(table: &[Vec<usize>]) -> Result<AxiomReport> {
    let n = check_shape(table)?;

    let q1 = (0..n).find(|&x| table[x][x] != x).map(|x| Violation::Q1 { x });
    let q2 = (0..n).find_map(|x| {
        let mut first_seen = vec![usize::MAX; n];
        table[x].iter().enumerate().find_map(|(y, &v)| {
            if first_seen[v] != usize::MAX {
                Some(Violation::Q2 { x, y: first_seen[v], z: y })
            } else {
                first_seen[v] = y;
                None
            }
        })
    });
    let q3 = (0..n)
        .flat_map(|x| (0..n).flat_map(move |y| (0..n).map(move |z| (x, y, z))))
        .find(|&(x, y, z)| table[x][table[y][z]] != table[table[x][y]][table[x][z]])
        .map(|(x, y, z)| Violation::Q3 { x, y, z });

    Ok(AxiomReport {
        q1_ok: q1.is_none(),
        q2_ok: q2.is_none(),
        q3_ok: q3.is_none(),
        first_violation: q1.or(q2).or(q3),
    })
}

/// A finite quandle on the points `0..size`.
#[derive(Clone)]
pub struct FiniteQuandle {
    size: usize,
    table: Vec<usize>,
    labels: Option<Vec<String>>,
}

impl FiniteQuandle {
    /// Builds a quandle from `table[x][y] = s_x(y)`, rejecting tables that
    /// fail an axiom.
    pub fn new(table: Vec<Vec<usize>>) -> Result<Self> {
        let report = verify_axioms(&table)?;
        if let Some(v) = report.first_violation {
            return Err(Error::AxiomViolation(v));
        }
        Ok(Self::from_rows(table))
    }

    /// Accepts any well-shaped table without checking the axioms. Results of
    /// the other operations on a non-quandle are unspecified.
    pub fn new_unchecked(table: Vec<Vec<usize>>) -> Result<Self> {
        check_shape(&table)?;
        Ok(Self::from_rows(table))
    }

    fn from_rows(table: Vec<Vec<usize>>) -> Self {
        let size = table.len();
        FiniteQuandle { size, table: table.into_iter().flatten().collect(), labels: None }
    }

    /// Flat row-major table; the caller guarantees the axioms hold.
    pub(crate) fn from_flat(size: usize, table: Vec<usize>) -> Self {
        debug_assert_eq!(table.len(), size * size);
        FiniteQuandle { size, table, labels: None }
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Result<Self> {
        if labels.len() != self.size {
            return Err(Error::SizeMismatch { expected: self.size, found: labels.len() });
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn size(&self) -> usize {
        self.size
    }

    /// `s_x(y)`.
    #[inline]
    pub fn act(&self, x: usize, y: usize) -> usize {
        self.table[x * self.size + y]
    }

    pub fn row(&self, x: usize) -> &[usize] {
        &self.table[x * self.size..(x + 1) * self.size]
    }

    pub fn row_permutation(&self, x: usize) -> Permutation {
        Permutation::from_images_unchecked(self.row(x).to_vec())
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.size).map(<[usize]>::to_vec).collect()
    }

    pub(crate) fn flat_table(&self) -> &[usize] {
        &self.table
    }

    pub fn labels(&self) -> Option<&[String]> {
        self.labels.as_deref()
    }

    /// Display name of a point: its label if present, else its index.
    pub fn label(&self, x: usize) -> String {
        match &self.labels {
            Some(l) => l[x].clone(),
            None => x.to_string(),
        }
    }

    pub fn verify(&self) -> AxiomReport {
        verify_axioms(&self.table()).expect("stored table is well shaped")
    }

    pub fn is_trivial(&self) -> bool {
        (0..self.size).all(|x| self.row(x).iter().enumerate().all(|(y, &v)| v == y))
    }

    pub fn from_json(text: &str) -> Result<Self> {
        QuandleJson::parse(text)?.into_quandle()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&QuandleJson::from(self)).expect("quandle serializes")
    }
}

impl PartialEq for FiniteQuandle {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.table == other.table
    }
}

impl Eq for FiniteQuandle {}

impl Hash for FiniteQuandle {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.size.hash(state);
        self.table.hash(state);
    }
}

impl fmt::Debug for FiniteQuandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteQuandle").field("size", &self.size).field("table", &self.table()).finish()
    }
}

/// On-disk form: `{"size": n, "table": [[...]], "labels": [...]}`, with an
/// optional `"unchecked": true` that skips axiom verification on load.
#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuandleJson {
    pub size: usize,
    pub table: Vec<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub labels: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "std::ops::Not::not")]
    pub unchecked: bool,
}

impl QuandleJson {
    pub fn parse(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn into_quandle(self) -> Result<FiniteQuandle> {
        if self.size != self.table.len() {
            return Err(Error::MalformedTable(format!(
                "size is {} but the table has {} rows",
                self.size,
                self.table.len()
            )));
        }
        let q = if self.unchecked {
            FiniteQuandle::new_unchecked(self.table)?
        } else {
            FiniteQuandle::new(self.table)?
        };
        match self.labels {
            Some(labels) => q.with_labels(labels),
            None => Ok(q),
        }
    }
}

impl From<&FiniteQuandle> for QuandleJson {
    fn from(q: &FiniteQuandle) -> Self {
        QuandleJson { size: q.size, table: q.table(), labels: q.labels.clone(), unchecked: false }
    }
}

/// A map between the point sets of two quandles.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PointMap {
    domain_size: usize,
    codomain_size: usize,
    images: Vec<usize>,
}

impl PointMap {
    pub fn new(codomain_size: usize, images: Vec<usize>) -> Result<Self> {
        if let Some(&y) = images.iter().find(|&&y| y >= codomain_size) {
            return Err(Error::PointOutOfRange { point: y, size: codomain_size });
        }
        Ok(PointMap { domain_size: images.len(), codomain_size, images })
    }

    pub fn identity(n: usize) -> Self {
        PointMap { domain_size: n, codomain_size: n, images: (0..n).collect() }
    }

    pub fn domain_size(&self) -> usize {
        self.domain_size
    }

    pub fn codomain_size(&self) -> usize {
        self.codomain_size
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    pub fn is_bijective(&self) -> bool {
        if self.domain_size != self.codomain_size {
            return false;
        }
        let mut hit = vec![false; self.codomain_size];
        self.images.iter().all(|&y| !std::mem::replace(&mut hit[y], true))
    }
}

/// `f(s_x(y)) = s_{f(x)}(f(y))` for all `x`, `y`.
pub fn is_homomorphism(f: &PointMap, q1: &FiniteQuandle, q2: &FiniteQuandle) -> Result<bool> {
    if f.domain_size != q1.size() {
        return Err(Error::SizeMismatch { expected: q1.size(), found: f.domain_size });
    }
    if f.codomain_size != q2.size() {
        return Err(Error::SizeMismatch { expected: q2.size(), found: f.codomain_size });
    }
    let n = q1.size();
    Ok((0..n).all(|x| (0..n).all(|y| f.apply(q1.act(x, y)) == q2.act(f.apply(x), f.apply(y)))))
}

pub fn find_isomorphism(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Result<Option<PointMap>> {
    find_isomorphism_with_budget(q1, q2, DEFAULT_NODE_BUDGET)
}

/// Exceeding `budget` search nodes is reported as [`Error::SearchExhausted`],
/// never as "not isomorphic".
pub fn find_isomorphism_with_budget(q1: &FiniteQuandle, q2: &FiniteQuandle, budget: u64) -> Result<Option<PointMap>> {
    let found = HomSearch::new(q1, q2, budget).find_first(&[])?;
    Ok(found.map(|images| PointMap { domain_size: q1.size(), codomain_size: q2.size(), images }))
}

pub fn are_isomorphic(q1: &FiniteQuandle, q2: &FiniteQuandle) -> Result<bool> {
    Ok(find_isomorphism(q1, q2)?.is_some())
}

fn normalize_subset(q: &FiniteQuandle, subset: &[usize]) -> Result<Vec<usize>> {
    if subset.is_empty() {
        return Err(Error::EmptySubset);
    }
    if let Some(&p) = subset.iter().find(|&&p| p >= q.size()) {
        return Err(Error::PointOutOfRange { point: p, size: q.size() });
    }
    let mut s = subset.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Whether `s_a^{±1}` preserves `subset` for every `a` in it. On a finite set
/// the forward image being contained already makes `s_a` a bijection of the
/// subset, so the inverse condition follows.
pub fn is_subquandle(q: &FiniteQuandle, subset: &[usize]) -> Result<bool> {
    let s = normalize_subset(q, subset)?;
    let mut member = vec![false; q.size()];
    for &p in &s {
        member[p] = true;
    }
    Ok(s.iter().all(|&a| s.iter().all(|&b| member[q.act(a, b)])))
}

/// The induced quandle on a subquandle, points renumbered in increasing order.
pub fn restrict(q: &FiniteQuandle, subset: &[usize]) -> Result<FiniteQuandle> {
    if !is_subquandle(q, subset)? {
        return Err(Error::InvalidParameter("subset is not closed under its point symmetries".into()));
    }
    let s = normalize_subset(q, subset)?;
    let mut index = vec![usize::MAX; q.size()];
    for (i, &p) in s.iter().enumerate() {
        index[p] = i;
    }
    let k = s.len();
    let table = s.iter().flat_map(|&a| s.iter().map(|&b| index[q.act(a, b)]).collect::<Vec<_>>()).collect();
    let restricted = FiniteQuandle::from_flat(k, table);
    match q.labels() {
        Some(labels) => restricted.with_labels(s.iter().map(|&p| labels[p].clone()).collect()),
        None => Ok(restricted),
    }
}

/// Componentwise structure on pairs; `(x1, x2)` has index `x1 * n2 + x2`.
pub fn direct_product(q1: &FiniteQuandle, q2: &FiniteQuandle) -> FiniteQuandle {
    let (n1, n2) = (q1.size(), q2.size());
    let n = n1 * n2;
    let mut table = Vec::with_capacity(n * n);
    for x1 in 0..n1 {
        for x2 in 0..n2 {
            for y1 in 0..n1 {
                for y2 in 0..n2 {
                    table.push(q1.act(x1, y1) * n2 + q2.act(x2, y2));
                }
            }
        }
    }
    let product = FiniteQuandle::from_flat(n, table);
    if q1.labels().is_none() && q2.labels().is_none() {
        return product;
    }
    let labels = (0..n1)
        .flat_map(|a| (0..n2).map(move |b| (a, b)))
        .map(|(a, b)| format!("({},{})", q1.label(a), q2.label(b)))
        .collect();
    product.with_labels(labels).expect("label count matches")
}
