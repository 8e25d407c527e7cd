//! Backtracking search for structure-preserving bijections between two finite
//! quandles.
//!
//! Points of the source are bound one at a time to points of the target with
//! a matching invariant (cycle type of the row, number of rows fixing the
//! point). Every new binding is closed under the operation: once `a ↦ fa` and
//! `b ↦ fb` are bound, `s_a(b)` must go to `s_fa(fb)` and `s_a⁻¹(b)` to
//! `s_fa⁻¹(fb)`. A complete binding that survives this closure is a
//! homomorphism, since every pair was checked when its later point was bound.

use crate::error::{Error, Result};
use crate::quandle::FiniteQuandle;

/// Default node budget for the isomorphism and automorphism searches.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

const UNBOUND: usize = usize::MAX;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub(crate) struct PointInvariant {
    cycle_type: Vec<usize>,
    fixing_rows: usize,
}

pub(crate) fn point_invariants(q: &FiniteQuandle) -> Vec<PointInvariant> {
    let n = q.size();
    (0..n)
        .map(|x| PointInvariant {
            cycle_type: q.row_permutation(x).cycle_type(),
            fixing_rows: (0..n).filter(|&y| q.act(y, x) == x).count(),
        })
        .collect()
}

fn inverse_table(q: &FiniteQuandle) -> Vec<usize> {
    let n = q.size();
    let mut inv = vec![0; n * n];
    for x in 0..n {
        for y in 0..n {
            inv[x * n + q.act(x, y)] = y;
        }
    }
    inv
}

#[derive(Clone)]
struct Binding {
    fwd: Vec<usize>,
    bwd: Vec<usize>,
    bound: Vec<usize>,
}

pub(crate) struct HomSearch<'a> {
    src: &'a FiniteQuandle,
    dst: &'a FiniteQuandle,
    src_inv: Vec<usize>,
    dst_inv: Vec<usize>,
    src_key: Vec<PointInvariant>,
    dst_key: Vec<PointInvariant>,
    budget: u64,
    nodes: u64,
}

impl<'a> HomSearch<'a> {
    pub(crate) fn new(src: &'a FiniteQuandle, dst: &'a FiniteQuandle, budget: u64) -> Self {
        HomSearch {
            src,
            dst,
            src_inv: inverse_table(src),
            dst_inv: inverse_table(dst),
            src_key: point_invariants(src),
            dst_key: point_invariants(dst),
            budget,
            nodes: 0,
        }
    }

    fn compatible_sizes(&self) -> bool {
        if self.src.size() != self.dst.size() {
            return false;
        }
        let mut a = self.src_key.clone();
        let mut b = self.dst_key.clone();
        a.sort();
        b.sort();
        a == b
    }

    /// First isomorphism extending the `fixed` pairs, if any.
    pub(crate) fn find_first(&mut self, fixed: &[(usize, usize)]) -> Result<Option<Vec<usize>>> {
        let mut found = None;
        self.for_each(fixed, |images| {
            found = Some(images.to_vec());
            false
        })?;
        Ok(found)
    }

    /// Visits every isomorphism extending `fixed`, in lexicographic order of
    /// image arrays, until the callback returns `false`.
    pub(crate) fn for_each<F>(&mut self, fixed: &[(usize, usize)], mut visit: F) -> Result<()>
    where
        F: FnMut(&[usize]) -> bool,
    {
        if !self.compatible_sizes() {
            return Ok(());
        }
        let n = self.src.size();
        let mut state = Binding { fwd: vec![UNBOUND; n], bwd: vec![UNBOUND; n], bound: Vec::with_capacity(n) };
        for &(a, b) in fixed {
            if a >= n || b >= n {
                return Err(Error::PointOutOfRange { point: a.max(b), size: n });
            }
            if !self.bind_and_close(&mut state, a, b) {
                return Ok(());
            }
        }
        self.descend(state, &mut visit)?;
        Ok(())
    }

    fn descend<F>(&mut self, state: Binding, visit: &mut F) -> Result<bool>
    where
        F: FnMut(&[usize]) -> bool,
    {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::SearchExhausted { budget: self.budget });
        }
        let Some(x) = state.fwd.iter().position(|&y| y == UNBOUND) else {
            return Ok(visit(&state.fwd));
        };
        for y in 0..self.dst.size() {
            if state.bwd[y] != UNBOUND || self.src_key[x] != self.dst_key[y] {
                continue;
            }
            let mut next = state.clone();
            if self.bind_and_close(&mut next, x, y) && !self.descend(next, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn bind(&self, state: &mut Binding, queue: &mut Vec<usize>, a: usize, b: usize) -> bool {
        match (state.fwd[a], state.bwd[b]) {
            (fa, _) if fa == b => true,
            (UNBOUND, UNBOUND) if self.src_key[a] == self.dst_key[b] => {
                state.fwd[a] = b;
                state.bwd[b] = a;
                queue.push(a);
                true
            }
            _ => false,
        }
    }

    fn bind_and_close(&self, state: &mut Binding, a: usize, b: usize) -> bool {
        let n = self.src.size();
        let mut queue = Vec::new();
        if !self.bind(state, &mut queue, a, b) {
            return false;
        }
        while let Some(a) = queue.pop() {
            state.bound.push(a);
            let fa = state.fwd[a];
            for i in 0..state.bound.len() {
                let c = state.bound[i];
                let fc = state.fwd[c];
                let pairs = [
                    (self.src.act(a, c), self.dst.act(fa, fc)),
                    (self.src.act(c, a), self.dst.act(fc, fa)),
                    (self.src_inv[a * n + c], self.dst_inv[fa * n + fc]),
                    (self.src_inv[c * n + a], self.dst_inv[fc * n + fa]),
                ];
                for (u, v) in pairs {
                    if !self.bind(state, &mut queue, u, v) {
                        return false;
                    }
                }
            }
        }
        true
    }
}
