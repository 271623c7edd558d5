//! Cographic matroid parity on a paired subdivision.
//!
//! The algebraic backend represents the cographic matroid of `g2` by signed
//! fundamental-cycle vectors over GF(2^61 - 1). For pairs `(b_i, c_i)` the
//! skew matrix `Y = Σ x_i (b_i c_iᵀ - c_i b_iᵀ)` with random `x_i` has rank
//! twice the parity number with high probability. A solution is extracted by
//! dropping every pair whose removal keeps the rank, then checked exactly.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, Graph, VertexId};

use super::subdivision::PairedSubdivision;

pub const DEFAULT_SEED: u64 = 0x5eed_f75c_0ffe_e000;

const ATTEMPTS: usize = 4;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum ParityBackend {
    /// Tries every subset of pairs. Only usable for a handful of pairs.
    Exhaustive,
    /// Randomized rank computation with exact verification of the result.
    Algebraic { seed: u64 },
}

impl Default for ParityBackend {
    fn default() -> Self {
        ParityBackend::Algebraic { seed: DEFAULT_SEED }
    }
}

/// Largest set of pairs (as indices into `ps.pairs()`, ascending) whose
/// segment edges can all be deleted while keeping `g2` connected.
pub fn matroid_parity(ps: &PairedSubdivision, backend: ParityBackend) -> Result<Vec<usize>> {
    if graph::all_components(ps.graph()).count() > 1 {
        return Err(Error::Disconnected);
    }
    match backend {
        ParityBackend::Exhaustive => exhaustive(ps),
        ParityBackend::Algebraic { seed } => algebraic(ps, seed),
    }
}

const EXHAUSTIVE_LIMIT: usize = 24;

fn exhaustive(ps: &PairedSubdivision) -> Result<Vec<usize>> {
    let n = ps.pair_count();
    if n > EXHAUSTIVE_LIMIT {
        return Err(Error::BudgetExceeded(format!(
            "{n} pairs is too many for exhaustive parity"
        )));
    }
    let mut best: Vec<usize> = Vec::new();
    for mask in 0u32..(1u32 << n) {
        if mask.count_ones() as usize <= best.len() {
            continue;
        }
        let chosen: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
        if ps.is_feasible(&chosen) {
            best = chosen;
        }
    }
    Ok(best)
}

fn algebraic(ps: &PairedSubdivision, seed: u64) -> Result<Vec<usize>> {
    let (beta, vectors) = cycle_vectors(ps.graph());
    let pair_vectors: Vec<(&SparseVec, &SparseVec)> = ps
        .pairs()
        .iter()
        .map(|&(a, b)| (&vectors[a.index()], &vectors[b.index()]))
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..ATTEMPTS {
        let weights: Vec<u64> = (0..pair_vectors.len())
            .map(|_| rng.gen_range(1..MODULUS))
            .collect();
        let chosen = extract(beta, &pair_vectors, &weights);
        if ps.is_feasible(&chosen) {
            return Ok(chosen);
        }
    }
    Err(Error::Structural(
        "randomized parity did not produce a verified solution".into(),
    ))
}

fn extract(beta: usize, pair_vectors: &[(&SparseVec, &SparseVec)], weights: &[u64]) -> Vec<usize> {
    let mut y = vec![vec![0u64; beta]; beta];
    for (i, &(b, c)) in pair_vectors.iter().enumerate() {
        add_term(&mut y, b, c, weights[i], false);
    }
    let target = rank(y.clone());
    let goal = target / 2;
    let mut kept = Vec::new();
    for (i, &(b, c)) in pair_vectors.iter().enumerate() {
        if kept.len() == goal {
            break;
        }
        if b.is_empty() || c.is_empty() {
            continue;
        }
        add_term(&mut y, b, c, weights[i], true);
        if rank(y.clone()) < target {
            add_term(&mut y, b, c, weights[i], false);
            kept.push(i);
        }
    }
    kept
}

type SparseVec = Vec<(usize, u64)>;

/// Signed fundamental-cycle coordinates of every edge, indexed by edge id.
/// Rows are the non-tree edges of a BFS spanning forest.
fn cycle_vectors(g: &Graph) -> (usize, Vec<SparseVec>) {
    let bound = g.vertex_bound();
    let mut parent: Vec<Option<(VertexId, EdgeId)>> = vec![None; bound];
    let mut depth = vec![usize::MAX; bound];
    let mut tree_edge = vec![false; g.edge_bound()];
    for root in g.vertices() {
        if depth[root.index()] != usize::MAX {
            continue;
        }
        depth[root.index()] = 0;
        let mut queue = std::collections::VecDeque::from([root]);
        while let Some(x) = queue.pop_front() {
            for &e in g.incident(x) {
                let y = g.opposite(e, x);
                if depth[y.index()] == usize::MAX {
                    depth[y.index()] = depth[x.index()] + 1;
                    parent[y.index()] = Some((x, e));
                    tree_edge[e.index()] = true;
                    queue.push_back(y);
                }
            }
        }
    }

    let mut vectors: Vec<SparseVec> = vec![Vec::new(); g.edge_bound()];
    let mut row = 0;
    for (f, u, v) in g.edges() {
        if tree_edge[f.index()] {
            continue;
        }
        // The cycle runs u -> v along f, then back from v to u through the tree.
        vectors[f.index()].push((row, 1));
        let (mut a, mut b) = (v, u);
        let mut down = Vec::new();
        while a != b {
            if depth[a.index()] >= depth[b.index()] {
                let (p, e) = parent[a.index()].unwrap();
                let forward = g.endpoints(e) == Some((a, p));
                vectors[e.index()].push((row, if forward { 1 } else { MODULUS - 1 }));
                a = p;
            } else {
                let (p, e) = parent[b.index()].unwrap();
                let forward = g.endpoints(e) == Some((p, b));
                down.push((e, forward));
                b = p;
            }
        }
        for (e, forward) in down {
            vectors[e.index()].push((row, if forward { 1 } else { MODULUS - 1 }));
        }
        row += 1;
    }
    (row, vectors)
}

const MODULUS: u64 = (1 << 61) - 1;

fn mul(a: u64, b: u64) -> u64 {
    let x = a as u128 * b as u128;
    let s = (x as u64 & MODULUS) + (x >> 61) as u64;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn add(a: u64, b: u64) -> u64 {
    let s = a + b;
    if s >= MODULUS {
        s - MODULUS
    } else {
        s
    }
}

fn sub(a: u64, b: u64) -> u64 {
    if a >= b {
        a - b
    } else {
        a + MODULUS - b
    }
}

fn inv(a: u64) -> u64 {
    let mut base = a;
    let mut exp = MODULUS - 2;
    let mut acc = 1;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base);
        }
        base = mul(base, base);
        exp >>= 1;
    }
    acc
}

/// Adds (or subtracts) `x (b cᵀ - c bᵀ)` to `y`.
fn add_term(y: &mut [Vec<u64>], b: &SparseVec, c: &SparseVec, x: u64, negate: bool) {
    for &(rb, vb) in b {
        for &(rc, vc) in c {
            let mut t = mul(x, mul(vb, vc));
            if negate {
                t = sub(0, t);
            }
            y[rb][rc] = add(y[rb][rc], t);
            y[rc][rb] = sub(y[rc][rb], t);
        }
    }
}

fn rank(mut m: Vec<Vec<u64>>) -> usize {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(pivot) = (r..rows).find(|&i| m[i][c] != 0) else {
            continue;
        };
        m.swap(r, pivot);
        let scale = inv(m[r][c]);
        for x in &mut m[r][c..] {
            *x = mul(*x, scale);
        }
        let (top, below) = m.split_at_mut(r + 1);
        let pivot_row = &top[r];
        for row in below {
            let f = row[c];
            if f == 0 {
                continue;
            }
            for (x, &p) in row[c..].iter_mut().zip(&pivot_row[c..]) {
                *x = sub(*x, mul(f, p));
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
