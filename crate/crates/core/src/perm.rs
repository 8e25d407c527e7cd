//! Permutations and generator-presented permutation groups.
//!
//! Groups are kept as generator lists. The element set is materialized lazily
//! by breadth-first closure and cached; everything that can be decided from the
//! generators alone (orbits, transitivity, commutativity) never closes the group.

use std::collections::{HashSet, VecDeque};
use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};

/// Default cap on the number of elements a closure may materialize.
pub const DEFAULT_ELEMENT_CAP: usize = 1_000_000;

/// A bijection of `{0..n-1}`, stored as its one-line image array.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation { images: (0..degree).collect() }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &y in &images {
            if y >= n {
                return Err(Error::PointOutOfRange { point: y, size: n });
            }
            if std::mem::replace(&mut seen[y], true) {
                return Err(Error::InvalidParameter(format!("image {y} repeated; not a bijection")));
            }
        }
        Ok(Permutation { images })
    }

    /// Caller guarantees `images` is a bijection.
    pub(crate) fn from_images_unchecked(images: Vec<usize>) -> Self {
        debug_assert!(Permutation::from_images(images.clone()).is_ok());
        Permutation { images }
    }

    pub fn transposition(degree: usize, a: usize, b: usize) -> Result<Self> {
        for p in [a, b] {
            if p >= degree {
                return Err(Error::PointOutOfRange { point: p, size: degree });
            }
        }
        let mut images: Vec<usize> = (0..degree).collect();
        images.swap(a, b);
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    #[inline]
    pub fn apply(&self, x: usize) -> usize {
        self.images[x]
    }

    /// `(self ∘ other)(x) = self(other(x))`.
    pub fn compose(&self, other: &Permutation) -> Result<Permutation> {
        if self.degree() != other.degree() {
            return Err(Error::SizeMismatch { expected: self.degree(), found: other.degree() });
        }
        Ok(self.compose_unchecked(other))
    }

    pub(crate) fn compose_unchecked(&self, other: &Permutation) -> Permutation {
        Permutation { images: other.images.iter().map(|&y| self.images[y]).collect() }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0; self.degree()];
        for (x, &y) in self.images.iter().enumerate() {
            inv[y] = x;
        }
        Permutation { images: inv }
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(x, &y)| x == y)
    }

    pub fn commutes_with(&self, other: &Permutation) -> bool {
        self.degree() == other.degree()
            && (0..self.degree()).all(|x| self.images[other.images[x]] == other.images[self.images[x]])
    }

    /// Cycle lengths in nondecreasing order, fixed points included.
    pub fn cycle_type(&self) -> Vec<usize> {
        let mut seen = vec![false; self.degree()];
        let mut lengths = Vec::new();
        for start in 0..self.degree() {
            if seen[start] {
                continue;
            }
            let mut len = 0;
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x];
                len += 1;
            }
            lengths.push(len);
        }
        lengths.sort_unstable();
        lengths
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm{:?}", self.images)
    }
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(images: Vec<usize>) -> Result<Self> {
        Permutation::from_images(images)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.images
    }
}

/// A permutation group given by generators.
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    elements: OnceLock<Vec<Permutation>>,
}

impl PermGroup {
    /// Builds the group generated by `generators`. Identity generators and
    /// duplicates are dropped; the remaining order is kept.
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<Self> {
        if let Some(g) = generators.iter().find(|g| g.degree() != degree) {
            return Err(Error::SizeMismatch { expected: degree, found: g.degree() });
        }
        let mut seen = HashSet::new();
        let generators = generators
            .into_iter()
            .filter(|g| !g.is_identity() && seen.insert(g.clone()))
            .collect();
        Ok(PermGroup { degree, generators, elements: OnceLock::new() })
    }

    pub fn trivial(degree: usize) -> Self {
        PermGroup { degree, generators: Vec::new(), elements: OnceLock::new() }
    }

    /// A group whose full element list is already known, e.g. from an
    /// exhaustive automorphism search. The elements double as generators.
    pub(crate) fn from_elements(degree: usize, mut elements: Vec<Permutation>) -> Self {
        elements.sort_unstable();
        elements.dedup();
        let generators = elements.iter().filter(|p| !p.is_identity()).cloned().collect();
        let cell = OnceLock::new();
        let _ = cell.set(elements);
        PermGroup { degree, generators, elements: cell }
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn is_materialized(&self) -> bool {
        self.elements.get().is_some()
    }

    /// All elements in lexicographic order of their image arrays.
    pub fn closure(&self) -> Result<&[Permutation]> {
        self.closure_with_cap(DEFAULT_ELEMENT_CAP)
    }

    pub fn closure_with_cap(&self, cap: usize) -> Result<&[Permutation]> {
        if let Some(elements) = self.elements.get() {
            return Ok(elements);
        }
        let elements = self.breadth_first_closure(cap)?;
        Ok(self.elements.get_or_init(|| elements))
    }

    fn breadth_first_closure(&self, cap: usize) -> Result<Vec<Permutation>> {
        let identity = Permutation::identity(self.degree);
        let mut seen: HashSet<Permutation> = HashSet::new();
        let mut queue = VecDeque::new();
        seen.insert(identity.clone());
        queue.push_back(identity);
        while let Some(e) = queue.pop_front() {
            for g in &self.generators {
                let p = g.compose_unchecked(&e);
                if !seen.contains(&p) {
                    if seen.len() >= cap {
                        return Err(Error::ElementCapExceeded { cap });
                    }
                    seen.insert(p.clone());
                    queue.push_back(p);
                }
            }
        }
        let mut elements: Vec<Permutation> = seen.into_iter().collect();
        elements.sort_unstable();
        Ok(elements)
    }

    pub fn order(&self) -> Result<usize> {
        Ok(self.closure()?.len())
    }

    pub fn contains(&self, p: &Permutation) -> Result<bool> {
        if p.degree() != self.degree {
            return Ok(false);
        }
        Ok(self.closure()?.binary_search(p).is_ok())
    }

    /// Element-wise inclusion `self ⊆ other`. Only `self`'s generators need
    /// checking against `other`'s materialized elements.
    pub fn is_subgroup_of(&self, other: &PermGroup) -> Result<bool> {
        if self.degree != other.degree {
            return Ok(false);
        }
        let elements = other.closure()?;
        Ok(self.generators.iter().all(|g| elements.binary_search(g).is_ok()))
    }

    /// Orbit partition: each block sorted, blocks ordered by their minimum.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let mut uf = UnionFind::new(self.degree);
        for g in &self.generators {
            for x in 0..self.degree {
                uf.union(x, g.apply(x));
            }
        }
        uf.blocks()
    }

    pub fn orbit_of(&self, x: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|b| b.contains(&x)).unwrap_or_default()
    }

    pub fn is_transitive(&self) -> bool {
        self.degree >= 1 && self.orbits().len() == 1
    }

    /// A group is abelian iff its generators commute pairwise.
    pub fn is_abelian(&self) -> bool {
        self.noncommuting_pair().is_none()
    }

    /// First pair of generator indices that do not commute.
    pub fn noncommuting_pair(&self) -> Option<(usize, usize)> {
        let gens = &self.generators;
        (0..gens.len())
            .flat_map(|i| (i + 1..gens.len()).map(move |j| (i, j)))
            .find(|&(i, j)| !gens[i].commutes_with(&gens[j]))
    }
}

impl Clone for PermGroup {
    fn clone(&self) -> Self {
        let elements = OnceLock::new();
        if let Some(e) = self.elements.get() {
            let _ = elements.set(e.clone());
        }
        PermGroup { degree: self.degree, generators: self.generators.clone(), elements }
    }
}

impl fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PermGroup")
            .field("degree", &self.degree)
            .field("generators", &self.generators.len())
            .field("order", &self.elements.get().map(Vec::len))
            .finish()
    }
}

impl Serialize for PermGroup {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        self.generators.serialize(serializer)
    }
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
        // keep the smaller root so block representatives are minima
        if ra < rb {
            self.parent[rb] = ra;
        } else if rb < ra {
            self.parent[ra] = rb;
        }
    }

    pub(crate) fn blocks(mut self) -> Vec<Vec<usize>> {
        let n = self.parent.len();
        let mut by_root: Vec<Vec<usize>> = vec![Vec::new(); n];
        for x in 0..n {
            let r = self.find(x);
            by_root[r].push(x);
        }
        by_root.into_iter().filter(|b| !b.is_empty()).collect()
    }
}
