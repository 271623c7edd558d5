//! Seeded instance generators.

use rand::seq::{index, SliceRandom};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::DisjointInstance;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum EdgeMode {
    /// No parallel edges.
    Simple,
    /// Endpoints drawn independently; parallel edges may occur.
    Multi,
}

fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `m` edges on `n` vertices, without self-loops.
pub fn gen_random(n: usize, m: usize, seed: u64, mode: EdgeMode) -> Result<Graph> {
    let mut rng = rng(seed);
    let mut g = Graph::with_vertices(n);
    if m == 0 {
        return Ok(g);
    }
    if n < 2 {
        return Err(Error::InvalidParameters(format!(
            "{m} edges need at least two vertices"
        )));
    }
    match mode {
        EdgeMode::Simple => {
            let total = n * (n - 1) / 2;
            if m > total {
                return Err(Error::InvalidParameters(format!(
                    "a simple graph on {n} vertices has at most {total} edges, asked for {m}"
                )));
            }
            for i in index::sample(&mut rng, total, m).into_vec() {
                let (u, v) = unrank_pair(n, i);
                g.add_edge(u, v)?;
            }
        }
        EdgeMode::Multi => {
            for _ in 0..m {
                let u = rng.gen_range(0..n);
                let mut v = rng.gen_range(0..n - 1);
                if v >= u {
                    v += 1;
                }
                g.add_edge(VertexId(u as u32), VertexId(v as u32))?;
            }
        }
    }
    Ok(g)
}

/// The `i`-th pair `(u, v)`, `u < v`, in row-major order.
fn unrank_pair(n: usize, mut i: usize) -> (VertexId, VertexId) {
    let mut u = 0;
    while i >= n - 1 - u {
        i -= n - 1 - u;
        u += 1;
    }
    (VertexId(u as u32), VertexId((u + 1 + i) as u32))
}

/// A random forest on `n - fvs_size` vertices plus `fvs_size` vertices with at
/// least two edges into it each. Vertex ids are shuffled. Returns the graph and
/// the planted vertices, an FVS of size `fvs_size`.
pub fn gen_planted(n: usize, fvs_size: usize, seed: u64) -> Result<(Graph, VertexSet)> {
    if fvs_size > n {
        return Err(Error::InvalidParameters(format!(
            "cannot plant {fvs_size} vertices in a graph of {n}"
        )));
    }
    let forest_size = n - fvs_size;
    if fvs_size > 0 && forest_size < 2 {
        return Err(Error::InvalidParameters(
            "planted vertices need at least two forest vertices".into(),
        ));
    }
    let mut rng = rng(seed);
    let mut perm: Vec<u32> = (0..n as u32).collect();
    perm.shuffle(&mut rng);
    let id = |i: usize| VertexId(perm[i]);

    let mut g = Graph::with_vertices(n);
    for i in 1..forest_size {
        if rng.gen_bool(0.9) {
            let parent = rng.gen_range(0..i);
            g.add_edge(id(parent), id(i))?;
        }
    }
    let mut witness = VertexSet::new();
    for i in forest_size..n {
        let degree = rng.gen_range(2..=forest_size.min(4));
        for t in index::sample(&mut rng, forest_size, degree).into_vec() {
            g.add_edge(id(i), id(t))?;
        }
        witness.insert(id(i));
    }
    Ok((g, witness))
}

/// Random edges on `vertices` forming a forest, roughly `density` of a tree.
fn random_forest(
    g: &mut Graph,
    rng: &mut ChaCha8Rng,
    vertices: &[VertexId],
    density: f64,
    max_degree: usize,
) -> Result<()> {
    for i in 1..vertices.len() {
        if !rng.gen_bool(density) {
            continue;
        }
        let candidates: Vec<VertexId> = vertices[..i]
            .iter()
            .copied()
            .filter(|&p| g.degree(p) < max_degree)
            .collect();
        if let Some(&p) = candidates.choose(rng) {
            g.add_edge(p, vertices[i])?;
        }
    }
    Ok(())
}

/// A disjoint-FVS instance on `n` vertices with budget `k`: random forests
/// on both sides joined by random cross edges, occasionally doubled.
pub fn gen_disjoint(n: usize, k: i64, seed: u64) -> Result<DisjointInstance> {
    let mut rng = rng(seed);
    let mut ids: Vec<VertexId> = (0..n as u32).map(VertexId).collect();
    ids.shuffle(&mut rng);
    let split = if n == 0 { 0 } else { rng.gen_range(0..=n) };
    let (v1, v2) = ids.split_at(split);
    let mut g = Graph::with_vertices(n);
    random_forest(&mut g, &mut rng, v1, 0.6, usize::MAX)?;
    random_forest(&mut g, &mut rng, v2, 0.7, usize::MAX)?;
    if !v1.is_empty() && !v2.is_empty() {
        let cross = rng.gen_range(0..=n + n / 2);
        for _ in 0..cross {
            let a = *v1.choose(&mut rng).unwrap();
            let b = *v2.choose(&mut rng).unwrap();
            g.add_edge(a, b)?;
        }
    }
    DisjointInstance::new(
        g,
        v1.iter().copied().collect(),
        v2.iter().copied().collect(),
        k,
    )
}

/// A disjoint-FVS instance on `n` vertices in which every `v1` vertex has
/// degree exactly three. Some `v1` vertices may send several edges into the
/// same tree of `g[v2]`, or even parallel edges to one `v2` vertex.
pub fn gen_regular3(n: usize, k: i64, seed: u64) -> Result<DisjointInstance> {
    if n < 2 {
        return Err(Error::InvalidParameters(
            "need at least two vertices".into(),
        ));
    }
    let mut rng = rng(seed);
    let mut ids: Vec<VertexId> = (0..n as u32).map(VertexId).collect();
    ids.shuffle(&mut rng);
    let n2 = rng.gen_range((n / 3).max(1)..=(2 * n / 3).max(1));
    let (v2, v1) = ids.split_at(n2);
    let mut g = Graph::with_vertices(n);
    random_forest(&mut g, &mut rng, v2, 0.6, usize::MAX)?;
    random_forest(&mut g, &mut rng, v1, 0.5, 3)?;
    for &u in v1 {
        while g.degree(u) < 3 {
            let w = *v2.choose(&mut rng).unwrap();
            if g.neighbors(u).any(|x| x == w) && rng.gen_bool(0.8) {
                continue;
            }
            g.add_edge(u, w)?;
        }
    }
    DisjointInstance::new(
        g,
        v1.iter().copied().collect(),
        v2.iter().copied().collect(),
        k,
    )
}
