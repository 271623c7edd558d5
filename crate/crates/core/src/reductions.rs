//! Safe reduction rules for disjoint-FVS instances and the kernel-size
//! early-rejection test.
//!
//! Every rule works in place on a [`DisjointInstance`] and records the
//! vertices it commits to the solution, so the caller can always rebuild a
//! solution of the original instance as `forced ∪ solution(reduced)`.

use crate::error::{Error, Result};
use crate::graph::{VertexId, VertexSet};
use crate::instance::DisjointInstance;

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Continue,
    NoSolution,
}

/// How the second case of the degree-2 rule disposes of the vertex.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Rule2Mode {
    /// Move the vertex into `v2`.
    Kernel,
    /// Replace the vertex by an edge between its neighbours.
    Branching,
}

#[derive(Clone, Debug)]
pub struct ReductionOutcome {
    pub instance: DisjointInstance,
    pub forced: VertexSet,
    pub verdict: Verdict,
}

/// Clears self-loops and parallel edges. A self-loop or a parallel pair can
/// only be broken by its `v1` endpoint, which is therefore forced.
pub fn preprocess(mut inst: DisjointInstance) -> ReductionOutcome {
    let mut forced = VertexSet::new();
    let verdict = preprocess_in_place(&mut inst, &mut forced);
    ReductionOutcome {
        instance: inst,
        forced,
        verdict,
    }
}

pub(crate) fn preprocess_in_place(inst: &mut DisjointInstance, forced: &mut VertexSet) -> Verdict {
    loop {
        if inst.k() < 0 {
            return Verdict::NoSolution;
        }
        match find_multi_edge(inst) {
            None => return Verdict::Continue,
            Some((u, v)) => {
                let target = if inst.in_v1(u) {
                    u
                } else if inst.in_v1(v) {
                    v
                } else {
                    return Verdict::NoSolution;
                };
                inst.force(target);
                forced.insert(target);
            }
        }
    }
}

/// Smallest self-loop `(u, u)` or parallel pair `(u, v)`, `u < v`, if any.
fn find_multi_edge(inst: &DisjointInstance) -> Option<(VertexId, VertexId)> {
    let g = inst.graph();
    let mut last_seen = vec![u32::MAX; g.vertex_bound()];
    for u in g.vertices() {
        for &e in g.incident(u) {
            let w = g.opposite(e, u);
            if w == u {
                return Some((u, u));
            }
            if last_seen[w.index()] == u.0 {
                return Some((u.min(w), u.max(w)));
            }
            last_seen[w.index()] = u.0;
        }
    }
    None
}

/// Removes every vertex of degree at most one, cascading. The budget is untouched.
pub fn rule1(mut inst: DisjointInstance) -> DisjointInstance {
    rule1_in_place(&mut inst);
    inst
}

pub(crate) fn rule1_in_place(inst: &mut DisjointInstance) -> bool {
    let mut queue: Vec<VertexId> = inst
        .graph()
        .vertices()
        .filter(|&v| inst.graph().degree(v) <= 1)
        .collect();
    let mut changed = false;
    while let Some(v) = queue.pop() {
        if !inst.graph().contains_vertex(v) || inst.graph().degree(v) > 1 {
            continue;
        }
        let neighbour = inst.graph().neighbors(v).next();
        inst.delete(v);
        changed = true;
        if let Some(u) = neighbour {
            if inst.graph().degree(u) <= 1 {
                queue.push(u);
            }
        }
    }
    changed
}

/// The degree-2 rule on `v ∈ v1`. If both neighbours sit in one tree of
/// `g[v2]`, `v` is forced; otherwise it is moved to `v2` or bypassed,
/// depending on `mode`.
pub fn rule2(mut inst: DisjointInstance, v: VertexId, mode: Rule2Mode) -> Result<ReductionOutcome> {
    let mut forced = VertexSet::new();
    let verdict = rule2_in_place(&mut inst, v, mode, &mut forced)?;
    Ok(ReductionOutcome {
        instance: inst,
        forced,
        verdict,
    })
}

pub(crate) fn rule2_in_place(
    inst: &mut DisjointInstance,
    v: VertexId,
    mode: Rule2Mode,
    forced: &mut VertexSet,
) -> Result<Verdict> {
    if !inst.in_v1(v) {
        return Err(Error::precondition(format!("{v} is not in v1")));
    }
    let g = inst.graph();
    let slots = g.incident(v);
    if slots.len() != 2 {
        return Err(Error::precondition(format!(
            "rule 2 needs degree 2, {v} has degree {}",
            slots.len()
        )));
    }
    if slots[0] == slots[1] {
        return Err(Error::precondition(format!("{v} carries a self-loop")));
    }
    let a = g.opposite(slots[0], v);
    let b = g.opposite(slots[1], v);
    if inst.in_v2(a) && inst.in_v2(b) {
        let labels = inst.v2_components();
        if labels.get(a) == labels.get(b) {
            inst.force(v);
            forced.insert(v);
            return Ok(if inst.k() < 0 {
                Verdict::NoSolution
            } else {
                Verdict::Continue
            });
        }
    }
    match mode {
        Rule2Mode::Kernel => inst.move_to_v2(v),
        Rule2Mode::Branching => {
            inst.bypass(v)?;
        }
    }
    Ok(Verdict::Continue)
}

/// Applies preprocessing, Rule 1 and Rule 2 (ascending vertex id) until none
/// of them changes the instance.
pub fn reduce_exhaustively(mut inst: DisjointInstance, mode: Rule2Mode) -> ReductionOutcome {
    let mut forced = VertexSet::new();
    let verdict = loop {
        if preprocess_in_place(&mut inst, &mut forced) == Verdict::NoSolution {
            break Verdict::NoSolution;
        }
        rule1_in_place(&mut inst);
        let candidate = inst
            .v1()
            .iter()
            .copied()
            .find(|&v| inst.graph().degree(v) == 2);
        match candidate {
            None => break Verdict::Continue,
            Some(v) => {
                let verdict = rule2_in_place(&mut inst, v, mode, &mut forced)
                    .expect("candidate satisfies the rule 2 preconditions");
                if verdict == Verdict::NoSolution {
                    break Verdict::NoSolution;
                }
            }
        }
    };
    ReductionOutcome {
        instance: inst,
        forced,
        verdict,
    }
}

/// Size bound a reduced yes-instance must satisfy: `2k + l - τ`.
pub fn kernel_size_bound(inst: &DisjointInstance) -> i64 {
    let l = inst.v2_components().count() as i64;
    let tau = inst.v1_components().count() as i64;
    2 * inst.k() + l - tau
}

/// Rejects a fully reduced instance whose `v1` exceeds `2k + l - τ`.
pub fn kernel_bound(inst: &DisjointInstance) -> Result<Verdict> {
    let g = inst.graph();
    if let Some(v) = g.vertices().find(|&v| g.degree(v) <= 1) {
        return Err(Error::precondition(format!("rule 1 applies to {v}")));
    }
    if let Some(v) = inst.v1().iter().find(|&&v| g.degree(v) == 2) {
        return Err(Error::precondition(format!("rule 2 applies to {v}")));
    }
    if inst.v1().len() as i64 > kernel_size_bound(inst) {
        Ok(Verdict::NoSolution)
    } else {
        Ok(Verdict::Continue)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn vs(ids: &[u32]) -> VertexSet {
        ids.iter().map(|&i| VertexId(i)).collect()
    }

    #[test]
    fn parallel_pair_forces_v1_endpoint() {
        let g = Graph::from_edges(2, &[(0, 1), (0, 1)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1]), 1).unwrap();
        let out = preprocess(inst);
        assert_eq!(out.verdict, Verdict::Continue);
        assert_eq!(out.forced, vs(&[0]));
        assert_eq!(out.instance.k(), 0);
    }

    #[test]
    fn parallel_pair_inside_v2_is_hopeless() {
        // Built through the raw constructor path: g[v2] is not a forest, so
        // assemble it from a valid instance and add the second edge afterwards.
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let mut inst = DisjointInstance::new(g, vs(&[2]), vs(&[0, 1]), 2).unwrap();
        let (mut g, v1, v2, k) = inst.clone().into_parts();
        g.add_edge(VertexId(0), VertexId(1)).unwrap();
        inst = unchecked(g, v1, v2, k);
        assert_eq!(preprocess(inst).verdict, Verdict::NoSolution);
    }

    #[test]
    fn simple_graph_is_untouched() {
        let g = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1, 2]), 1).unwrap();
        let out = preprocess(inst.clone());
        assert!(out.forced.is_empty());
        assert_eq!(out.instance, inst);
    }

    #[test]
    fn rule1_cascades() {
        let path = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        let inst = DisjointInstance::new(path, vs(&[0, 2]), vs(&[1, 3]), 0).unwrap();
        assert_eq!(rule1(inst).graph().vertex_count(), 0);

        let tri = Graph::from_edges(3, &[(0, 1), (1, 2), (2, 0)]).unwrap();
        let inst = DisjointInstance::new(tri, vs(&[0]), vs(&[1, 2]), 0).unwrap();
        assert_eq!(rule1(inst.clone()), inst);

        let c4p = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 0), (3, 4)]).unwrap();
        let inst = DisjointInstance::new(c4p, vs(&[0, 2, 4]), vs(&[1, 3]), 1).unwrap();
        let out = rule1(inst);
        assert_eq!(out.graph().vertex_count(), 4);
        assert!(!out.graph().contains_vertex(VertexId(4)));
        assert_eq!(out.k(), 1);
    }

    #[test]
    fn rule2_forces_when_neighbours_share_a_tree() {
        // v2 tree 1-2, v = 0 adjacent to both.
        let g = Graph::from_edges(3, &[(1, 2), (0, 1), (0, 2)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1, 2]), 1).unwrap();
        let out = rule2(inst, VertexId(0), Rule2Mode::Kernel).unwrap();
        assert_eq!(out.forced, vs(&[0]));
        assert_eq!(out.instance.k(), 0);
    }

    #[test]
    fn rule2_kernel_mode_moves_vertex() {
        // v = 0 joins the two isolated v2 vertices 1 and 2.
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1, 2]), 1).unwrap();
        assert_eq!(inst.v2_components().count(), 2);
        let out = rule2(inst, VertexId(0), Rule2Mode::Kernel).unwrap();
        assert!(out.forced.is_empty());
        assert!(out.instance.in_v2(VertexId(0)));
        assert_eq!(out.instance.v2_components().count(), 1);
    }

    #[test]
    fn rule2_branching_mode_bypasses() {
        // 1 (v1) - 0 (v1) - 2 (v2)
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0, 1]), vs(&[2]), 1).unwrap();
        let out = rule2(inst, VertexId(0), Rule2Mode::Branching).unwrap();
        let g = out.instance.graph();
        assert!(!g.contains_vertex(VertexId(0)));
        assert_eq!(g.edge_count(), 1);
        let (_, a, b) = g.edges().next().unwrap();
        assert_eq!((a.min(b), a.max(b)), (VertexId(1), VertexId(2)));
    }

    #[test]
    fn rule2_rejects_bad_vertex() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1, 2]), 1).unwrap();
        assert!(rule2(inst.clone(), VertexId(1), Rule2Mode::Kernel).is_err());
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1, 2, 3]), 1).unwrap();
        assert!(rule2(inst, VertexId(0), Rule2Mode::Kernel).is_err());
    }

    #[test]
    fn kernel_bound_boundary() {
        // Two v1 vertices, each joined to the same three isolated v2 vertices:
        // K_{2,3}. |v1| = 2, l = 3, τ = 2, so k = 0 gives bound 1 (reject) and
        // k = 1 gives bound 3 (continue).
        let g = Graph::from_edges(5, &[(0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0, 1]), vs(&[2, 3, 4]), 0).unwrap();
        assert_eq!(kernel_bound(&inst).unwrap(), Verdict::NoSolution);
        let mut inst1 = inst.clone();
        inst1.set_k(1);
        assert_eq!(kernel_size_bound(&inst1), 3);
        assert_eq!(kernel_bound(&inst1).unwrap(), Verdict::Continue);
        // K_{2,4}: l = 4, τ = 2, k = 0 gives 2k + l - τ = 2 = |v1|, not exceeded.
        let g = Graph::from_edges(
            6,
            &[
                (0, 2),
                (0, 3),
                (0, 4),
                (0, 5),
                (1, 2),
                (1, 3),
                (1, 4),
                (1, 5),
            ],
        )
        .unwrap();
        let inst = DisjointInstance::new(g, vs(&[0, 1]), vs(&[2, 3, 4, 5]), 0).unwrap();
        assert_eq!(kernel_size_bound(&inst), 2);
        assert_eq!(kernel_bound(&inst).unwrap(), Verdict::Continue);
    }

    #[test]
    fn kernel_bound_checks_its_precondition() {
        let g = Graph::from_edges(3, &[(0, 1), (0, 2)]).unwrap();
        let inst = DisjointInstance::new(g, vs(&[0]), vs(&[1, 2]), 1).unwrap();
        assert!(kernel_bound(&inst).is_err());
    }

    #[test]
    fn exhaustive_reduction_on_c4() {
        // C4 with v1 = {0, 2}: bypass/move leaves nothing to decide.
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let inst = DisjointInstance::new(c4, vs(&[0, 2]), vs(&[1, 3]), 1).unwrap();
        let out = reduce_exhaustively(inst.clone(), Rule2Mode::Kernel);
        assert_eq!(out.verdict, Verdict::Continue);
        assert_eq!(out.forced.len(), 1);
        assert_eq!(out.instance.k(), 0);
        let out = reduce_exhaustively(inst, Rule2Mode::Branching);
        assert_eq!(out.forced.len(), 1);
    }

    fn unchecked(g: Graph, v1: VertexSet, v2: VertexSet, k: i64) -> DisjointInstance {
        DisjointInstance::new_unchecked(g, v1, v2, k)
    }
}
