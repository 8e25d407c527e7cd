//! Independent oracles and fixtures shared by the integration tests.

#![allow(dead_code)]

use quandle_core::SimpleGraph;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Rank over GF(2) of a square 0/1 matrix given as row bitmasks.
pub fn gf2_rank(mut rows: Vec<u64>) -> usize {
    let mut rank = 0;
    for bit in 0..64 {
        let Some(pivot) = (rank..rows.len()).find(|&r| rows[r] >> bit & 1 == 1) else {
            continue;
        };
        rows.swap(rank, pivot);
        for r in 0..rows.len() {
            if r != rank && rows[r] >> bit & 1 == 1 {
                rows[r] ^= rows[rank];
            }
        }
        rank += 1;
    }
    rank
}

pub fn adjacency_rows(g: &SimpleGraph) -> Vec<u64> {
    let n = g.vertex_count();
    (0..n)
        .map(|v| (0..n).filter(|&w| g.adjacent(v, w)).fold(0u64, |acc, w| acc | 1 << w))
        .collect()
}

/// Erdős–Rényi graph on `n` vertices with edge probability `p`.
pub fn random_graph(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    SimpleGraph::new(n, &edges).unwrap()
}

/// Random graph with every vertex of degree at least one: isolated vertices
/// are attached to a random other vertex.
pub fn random_graph_without_isolated(rng: &mut ChaCha8Rng, n: usize, p: f64) -> SimpleGraph {
    assert!(n >= 2);
    let g = random_graph(rng, n, p);
    let mut edges = g.edges();
    for v in 0..n {
        if !edges.iter().any(|&(a, b)| a == v || b == v) {
            let mut w = rng.gen_range(0..n - 1);
            if w >= v {
                w += 1;
            }
            edges.push((v.min(w), v.max(w)));
        }
    }
    edges.sort_unstable();
    edges.dedup();
    SimpleGraph::new(n, &edges).unwrap()
}

pub fn petersen() -> SimpleGraph {
    let edges = [
        (0, 1), (1, 2), (2, 3), (3, 4), (0, 4),
        (0, 5), (1, 6), (2, 7), (3, 8), (4, 9),
        (5, 7), (7, 9), (6, 9), (6, 8), (5, 8),
    ];
    SimpleGraph::new(10, &edges).unwrap()
}

/// Brute-force axiom check on a table, independent of the library.
pub fn naive_is_quandle(t: &[Vec<usize>]) -> bool {
    let n = t.len();
    for (x, row) in t.iter().enumerate() {
        if row[x] != x {
            return false;
        }
        let mut seen = vec![false; n];
        for &y in row {
            if seen[y] {
                return false;
            }
            seen[y] = true;
        }
    }
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                if t[x][t[y][z]] != t[t[x][y]][t[x][z]] {
                    return false;
                }
            }
        }
    }
    true
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

/// Lexicographically smallest relabeled table over all `n!` relabelings.
fn naive_canonical(t: &[Vec<usize>], perms: &[Vec<usize>]) -> Vec<usize> {
    let n = t.len();
    perms
        .iter()
        .map(|p| {
            let mut flat = vec![0; n * n];
            for x in 0..n {
                for y in 0..n {
                    flat[p[x] * n + p[y]] = p[t[x][y]];
                }
            }
            flat
        })
        .min()
        .unwrap()
}

/// Number of isomorphism classes of quandles of order `n`, by listing every
/// table whose rows are diagonal-fixing permutations and bucketing by the
/// minimum over all relabelings.
pub fn naive_class_count(n: usize) -> usize {
    let perms = permutations(n);
    let row_choices: Vec<Vec<Vec<usize>>> =
        (0..n).map(|x| perms.iter().filter(|p| p[x] == x).cloned().collect()).collect();
    let mut classes = std::collections::BTreeSet::new();
    let mut idx = vec![0usize; n];
    loop {
        let t: Vec<Vec<usize>> = (0..n).map(|x| row_choices[x][idx[x]].clone()).collect();
        if naive_is_quandle(&t) {
            classes.insert(naive_canonical(&t, &perms));
        }
        let mut x = 0;
        loop {
            if x == n {
                return classes.len();
            }
            idx[x] += 1;
            if idx[x] < row_choices[x].len() {
                break;
            }
            idx[x] = 0;
            x += 1;
        }
    }
}
