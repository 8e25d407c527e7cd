//! Exhaustive enumeration of small quandles up to isomorphism.
//!
//! Tables are built row by row from permutations fixing the diagonal. Each
//! time a row is placed, self-distributivity forces more rows: for every pair
//! of placed rows `s_x`, `s_y`,
//!
//! ```text
//! s_{s_x(y)}   = s_x ∘ s_y ∘ s_x⁻¹
//! s_{s_x⁻¹(y)} = s_x⁻¹ ∘ s_y ∘ s_x
//! ```
//!
//! so most branches close or die after a couple of choices. Complete tables
//! are reduced to a canonical form and deduplicated.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::quandle::FiniteQuandle;

/// Largest order accepted by [`enumerate_quandles`].
pub const MAX_ENUMERATION_ORDER: usize = 6;

type Row = Vec<u8>;

fn compose(p: &[u8], q: &[u8]) -> Row {
    q.iter().map(|&y| p[y as usize]).collect()
}

fn invert(p: &[u8]) -> Row {
    let mut inv = vec![0; p.len()];
    for (x, &y) in p.iter().enumerate() {
        inv[y as usize] = x as u8;
    }
    inv
}

/// All permutations of `0..n` fixing `x`, in lexicographic order.
fn rows_fixing(n: usize, x: usize) -> Vec<Row> {
    let others: Vec<u8> = (0..n as u8).filter(|&p| p as usize != x).collect();
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(n);
    let mut used = vec![false; others.len()];
    fn rec(x: usize, n: usize, others: &[u8], used: &mut [bool], current: &mut Row, out: &mut Vec<Row>) {
        if current.len() == n {
            out.push(current.clone());
            return;
        }
        if current.len() == x {
            current.push(x as u8);
            rec(x, n, others, used, current, out);
            current.pop();
            return;
        }
        for i in 0..others.len() {
            if !used[i] {
                used[i] = true;
                current.push(others[i]);
                rec(x, n, others, used, current, out);
                current.pop();
                used[i] = false;
            }
        }
    }
    rec(x, n, &others, &mut used, &mut current, &mut out);
    out
}

#[derive(Clone)]
struct Partial {
    rows: Vec<Option<Row>>,
    placed: Vec<usize>,
}

impl Partial {
    fn new(n: usize) -> Self {
        Partial { rows: vec![None; n], placed: Vec::with_capacity(n) }
    }

    fn set(&mut self, queue: &mut Vec<usize>, x: usize, row: Row) -> bool {
        match &self.rows[x] {
            Some(existing) => *existing == row,
            None => {
                self.rows[x] = Some(row);
                queue.push(x);
                true
            }
        }
    }

    /// Places row `x` and everything it forces; false on contradiction.
    fn place(&mut self, x: usize, row: Row) -> bool {
        let mut queue = Vec::new();
        if !self.set(&mut queue, x, row) {
            return false;
        }
        while let Some(a) = queue.pop() {
            self.placed.push(a);
            let sa = self.rows[a].clone().expect("queued rows are set");
            let sa_inv = invert(&sa);
            for i in 0..self.placed.len() {
                let b = self.placed[i];
                let sb = self.rows[b].clone().expect("placed rows are set");
                let sb_inv = invert(&sb);
                let forced = [
                    (sa[b] as usize, compose(&compose(&sa, &sb), &sa_inv)),
                    (sa_inv[b] as usize, compose(&compose(&sa_inv, &sb), &sa)),
                    (sb[a] as usize, compose(&compose(&sb, &sa), &sb_inv)),
                    (sb_inv[a] as usize, compose(&compose(&sb_inv, &sa), &sb)),
                ];
                for (target, row) in forced {
                    if !self.set(&mut queue, target, row) {
                        return false;
                    }
                }
            }
        }
        true
    }
}

fn complete_tables(state: Partial, candidates: &[Vec<Row>], out: &mut Vec<Row>) {
    let Some(x) = state.rows.iter().position(Option::is_none) else {
        out.push(state.rows.into_iter().flatten().flatten().collect());
        return;
    };
    for row in &candidates[x] {
        let mut next = state.clone();
        if next.place(x, row.clone()) {
            complete_tables(next, candidates, out);
        }
    }
}

/// Every quandle table on `0..n` (labeled, not up to isomorphism), flattened.
fn labeled_quandles(n: usize, exec: Execution) -> Vec<Row> {
    let candidates: Vec<Vec<Row>> = (0..n).map(|x| rows_fixing(n, x)).collect();
    exec.flat_map(&candidates[0], |first| {
        let mut out = Vec::new();
        let mut state = Partial::new(n);
        if state.place(0, first.clone()) {
            complete_tables(state, &candidates, &mut out);
        }
        out
    })
}

/// Isomorphism-invariant point colours by iterated refinement, starting from
/// the row cycle type.
fn refined_colors(n: usize, t: &[u8]) -> Vec<usize> {
    let at = |x: usize, y: usize| t[x * n + y] as usize;
    let cycle_type = |x: usize| {
        let mut seen = vec![false; n];
        let mut lens = Vec::new();
        for s in 0..n {
            let (mut y, mut len) = (s, 0);
            while !seen[y] {
                seen[y] = true;
                y = at(x, y);
                len += 1;
            }
            if len > 0 {
                lens.push(len);
            }
        }
        lens.sort_unstable();
        lens
    };
    let mut colors = rank(&(0..n).map(cycle_type).collect::<Vec<_>>());
    loop {
        let signatures: Vec<_> = (0..n)
            .map(|x| {
                let mut acting: Vec<(usize, usize)> = (0..n).map(|y| (colors[y], colors[at(x, y)])).collect();
                let mut acted: Vec<(usize, usize)> = (0..n).map(|y| (colors[y], colors[at(y, x)])).collect();
                acting.sort_unstable();
                acted.sort_unstable();
                (colors[x], acting, acted)
            })
            .collect();
        let next = rank(&signatures);
        let classes = |c: &[usize]| c.iter().collect::<HashSet<_>>().len();
        if classes(&next) == classes(&colors) {
            return next;
        }
        colors = next;
    }
}

fn rank<T: Ord + Clone>(keys: &[T]) -> Vec<usize> {
    let mut sorted = keys.to_vec();
    sorted.sort();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).unwrap()).collect()
}

/// Lexicographically smallest relabelled table over all relabellings that
/// list points in nondecreasing colour order.
///
/// Colours are isomorphism invariants, so isomorphic tables range over the
/// same set of relabelled tables and share the minimum.
fn canonical_flat(n: usize, t: &[u8]) -> Row {
    let colors = refined_colors(n, t);
    let mut classes: Vec<Vec<usize>> = vec![Vec::new(); colors.iter().max().map_or(0, |m| m + 1)];
    for (x, &c) in colors.iter().enumerate() {
        classes[c].push(x);
    }

    let mut best: Option<Row> = None;
    let mut order: Vec<usize> = Vec::with_capacity(n);
    let mut used = vec![false; n];
    let mut relabel = vec![0u8; n];
    search_orders(n, t, &classes, 0, &mut order, &mut used, &mut relabel, &mut best);
    best.expect("at least one relabelling")
}

#[allow(clippy::too_many_arguments)]
fn search_orders(
    n: usize,
    t: &[u8],
    classes: &[Vec<usize>],
    class_idx: usize,
    order: &mut Vec<usize>,
    used: &mut [bool],
    relabel: &mut [u8],
    best: &mut Option<Row>,
) {
    if order.len() == n {
        for (new, &old) in order.iter().enumerate() {
            relabel[old] = new as u8;
        }
        offer(n, t, order, relabel, best);
        return;
    }
    let cls = &classes[class_idx];
    let placed_in_class = cls.iter().filter(|&&x| used[x]).count();
    let next_class = if placed_in_class + 1 == cls.len() { class_idx + 1 } else { class_idx };
    for &x in cls {
        if used[x] {
            continue;
        }
        used[x] = true;
        order.push(x);
        search_orders(n, t, classes, next_class, order, used, relabel, best);
        order.pop();
        used[x] = false;
    }
}

fn offer(n: usize, t: &[u8], order: &[usize], relabel: &[u8], best: &mut Option<Row>) {
    let entry = |i: usize, j: usize| relabel[t[order[i] * n + order[j]] as usize];
    if let Some(b) = best {
        for i in 0..n {
            for j in 0..n {
                let e = entry(i, j);
                let cur = b[i * n + j];
                if e < cur {
                    *best = Some((0..n * n).map(|k| entry(k / n, k % n)).collect());
                    return;
                }
                if e > cur {
                    return;
                }
            }
        }
        return;
    }
    *best = Some((0..n * n).map(|k| entry(k / n, k % n)).collect());
}

/// Canonical representative table of the isomorphism class of `q`: equal for
/// two quandles exactly when they are isomorphic.
pub fn canonical_table(q: &FiniteQuandle) -> Vec<Vec<usize>> {
    let n = q.size();
    assert!(n <= u8::MAX as usize, "canonical form supports at most 255 points");
    let t: Row = q.flat_table().iter().map(|&v| v as u8).collect();
    canonical_flat(n, &t).chunks(n).map(|r| r.iter().map(|&v| v as usize).collect()).collect()
}

/// One quandle per isomorphism class of order `n`, each given by its
/// canonical table, sorted by that table.
pub fn enumerate_quandles(n: usize) -> Result<Vec<FiniteQuandle>> {
    enumerate_quandles_with(n, Execution::default())
}

pub fn enumerate_quandles_with(n: usize, exec: Execution) -> Result<Vec<FiniteQuandle>> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidParameter(format!(
            "enumeration order must be in 1..={MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    let labeled = labeled_quandles(n, exec);
    let mut canon = exec.map(&labeled, |t| canonical_flat(n, t));
    canon.sort_unstable();
    canon.dedup();
    Ok(canon
        .into_iter()
        .map(|t| FiniteQuandle::from_flat(n, t.into_iter().map(usize::from).collect()))
        .collect())
}

/// Number of quandle tables on `0..n` before identifying isomorphic ones.
pub fn count_labeled_quandles(n: usize, exec: Execution) -> Result<usize> {
    if n == 0 || n > MAX_ENUMERATION_ORDER {
        return Err(Error::InvalidParameter(format!(
            "enumeration order must be in 1..={MAX_ENUMERATION_ORDER}, got {n}"
        )));
    }
    Ok(labeled_quandles(n, exec).len())
}
