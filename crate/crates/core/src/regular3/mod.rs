//! Exact polynomial solver for disjoint-FVS instances in which every `v1`
//! vertex has degree exactly three.
//!
//! The minimum `v1`-FVS has size `betti(g) - mu(g)`, where `mu` is the largest
//! number of 2-groups in an adjacency matching over any spanning tree that
//! contains `g[v2]`. That maximum is found as a cographic matroid parity
//! problem on a labelled subdivision of the graph with `g[v2]` contracted.

mod matching;
mod parity;
mod subdivision;

pub use matching::{fvs_from_matching, tree_from_parity, AdjacencyMatching};
pub use parity::{matroid_parity, ParityBackend, DEFAULT_SEED};
pub use subdivision::{shrink_v2, subdivide, PairedSubdivision, SegmentLabel, ShrunkenGraph};

use crate::error::{Error, Result};
use crate::graph::{self, VertexId, VertexSet};
use crate::instance::DisjointInstance;
use crate::reductions::{self, Rule2Mode};

/// True iff every `v1` vertex has degree exactly three.
pub fn check_3regular(inst: &DisjointInstance) -> bool {
    inst.v1().iter().all(|&v| inst.graph().degree(v) == 3)
}

/// A minimum `v1`-FVS if its size is at most `k`.
pub fn solve_regular3(inst: &DisjointInstance) -> Result<Option<VertexSet>> {
    solve_regular3_with(inst, ParityBackend::default())
}

pub fn solve_regular3_with(
    inst: &DisjointInstance,
    backend: ParityBackend,
) -> Result<Option<VertexSet>> {
    let f = minimum_v1_fvs(inst, backend)?;
    Ok((f.len() as i64 <= inst.k()).then_some(f))
}

/// A minimum `v1`-FVS of a 3-regular instance, ignoring the budget.
pub fn minimum_v1_fvs(inst: &DisjointInstance, backend: ParityBackend) -> Result<VertexSet> {
    if !check_3regular(inst) {
        return Err(Error::precondition("some v1 vertex does not have degree 3"));
    }
    let mut work = inst.clone();
    work.set_k(i64::MAX / 4);
    let mut out = VertexSet::new();
    normalize(&mut work, &mut out)?;

    let labels = graph::all_components(work.graph());
    for group in labels.groups() {
        if !group.iter().any(|&v| work.in_v1(v)) {
            continue;
        }
        let keep: VertexSet = group.into_iter().collect();
        let part = DisjointInstance::new(
            work.graph().induced(&keep),
            work.v1()
                .iter()
                .copied()
                .filter(|v| keep.contains(v))
                .collect(),
            work.v2()
                .iter()
                .copied()
                .filter(|v| keep.contains(v))
                .collect(),
            0,
        )?;
        out.extend(solve_component(&part, backend)?);
    }
    Ok(out)
}

fn solve_component(inst: &DisjointInstance, backend: ParityBackend) -> Result<VertexSet> {
    let sg = shrink_v2(inst)?;
    let ps = subdivide(&sg)?;
    let pairs = matroid_parity(&ps, backend)?;
    let (tree, m) = tree_from_parity(inst, &sg, &ps, &pairs)?;
    fvs_from_matching(inst, &tree, &m)
}

/// Brings the instance into the shape the construction needs: no multi-edges,
/// every `v1` vertex of degree three, and at most one edge from a `v1` vertex
/// into each tree of `g[v2]`. Vertices committed on the way go to `forced`.
fn normalize(inst: &mut DisjointInstance, forced: &mut VertexSet) -> Result<()> {
    loop {
        if reductions::preprocess_in_place(inst, forced) == reductions::Verdict::NoSolution {
            return Err(Error::Structural("parallel edges inside g[v2]".into()));
        }
        reductions::rule1_in_place(inst);
        let low = inst
            .v1()
            .iter()
            .copied()
            .find(|&v| inst.graph().degree(v) == 2);
        if let Some(v) = low {
            reductions::rule2_in_place(inst, v, Rule2Mode::Kernel, forced)?;
            continue;
        }
        match double_contact(inst) {
            Some(v) => {
                inst.force(v);
                forced.insert(v);
            }
            None => return Ok(()),
        }
    }
}

/// Smallest `v1` vertex with two edges into the same tree of `g[v2]`.
fn double_contact(inst: &DisjointInstance) -> Option<VertexId> {
    let labels = inst.v2_components();
    inst.v1().iter().copied().find(|&v| {
        let mut seen = Vec::new();
        inst.v2_neighbors(v).any(|w| {
            let c = labels.get(w);
            let dup = seen.contains(&c);
            seen.push(c);
            dup
        })
    })
}
