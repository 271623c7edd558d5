use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, VertexSet};
use crate::instance::DisjointInstance;

use super::subdivision::{PairedSubdivision, ShrunkenGraph};

/// A partition of the non-tree edges into groups of one or two edges, where
/// the two edges of a 2-group share an endpoint in `v1`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AdjacencyMatching {
    pub two_groups: Vec<(EdgeId, EdgeId)>,
    pub one_groups: Vec<EdgeId>,
}

impl AdjacencyMatching {
    /// Number of 2-groups.
    pub fn mu(&self) -> usize {
        self.two_groups.len()
    }
}

/// Turns a feasible pair set into a spanning tree of `g` containing `g[v2]`
/// and a matching whose 2-groups are the original edge pairs behind `pairs`.
pub fn tree_from_parity(
    inst: &DisjointInstance,
    sg: &ShrunkenGraph,
    ps: &PairedSubdivision,
    pairs: &[usize],
) -> Result<(BTreeSet<EdgeId>, AdjacencyMatching)> {
    if !ps.is_feasible(pairs) {
        return Err(Error::InfeasiblePairs(format!(
            "deleting pairs {pairs:?} disconnects the subdivision"
        )));
    }
    let g = inst.graph();
    let mut removed = BTreeSet::new();
    let mut two_groups = Vec::new();
    for &i in pairs {
        let (seg, _) = ps.pairs()[i];
        let label = ps.label(seg).expect("paired segments are labelled");
        let a = sg.origin(label.from).expect("shrunken edge has an origin");
        let b = sg
            .origin(label.toward)
            .expect("shrunken edge has an origin");
        if !removed.insert(a) || !removed.insert(b) {
            return Err(Error::InfeasiblePairs(format!(
                "pair {i} reuses an original edge"
            )));
        }
        two_groups.push((a.min(b), a.max(b)));
    }

    let mut rest = g.clone();
    for &e in &removed {
        rest.remove_edge(e)?;
    }
    let forest = graph::spanning_tree_containing(&rest, inst.v2()).map_err(|e| match e {
        Error::Disconnected => {
            Error::InfeasiblePairs("mapped edge pairs disconnect the graph".into())
        }
        other => other,
    })?;
    let tree: BTreeSet<EdgeId> = forest.into_iter().collect();
    let one_groups = g
        .edges()
        .map(|(e, _, _)| e)
        .filter(|e| !tree.contains(e) && !removed.contains(e))
        .collect();
    two_groups.sort();
    Ok((
        tree,
        AdjacencyMatching {
            two_groups,
            one_groups,
        },
    ))
}

/// Covers every non-tree edge by a `v1` endpoint: the shared endpoint of a
/// 2-group, the smaller-id `v1` endpoint of a 1-group.
pub fn fvs_from_matching(
    inst: &DisjointInstance,
    tree: &BTreeSet<EdgeId>,
    m: &AdjacencyMatching,
) -> Result<VertexSet> {
    let g = inst.graph();
    let mut covered = BTreeSet::new();
    let mut out = VertexSet::new();
    for &(a, b) in &m.two_groups {
        let (a0, a1) = g.endpoints(a).ok_or(Error::UnknownEdge(a))?;
        let (b0, b1) = g.endpoints(b).ok_or(Error::UnknownEdge(b))?;
        let shared = [a0, a1]
            .into_iter()
            .filter(|&x| inst.in_v1(x) && (x == b0 || x == b1))
            .min()
            .ok_or_else(|| Error::Structural(format!("{a} and {b} share no endpoint in v1")))?;
        out.insert(shared);
        covered.insert(a);
        covered.insert(b);
    }
    for &e in &m.one_groups {
        let (u, v) = g.endpoints(e).ok_or(Error::UnknownEdge(e))?;
        let pick = [u, v]
            .into_iter()
            .filter(|&x| inst.in_v1(x))
            .min()
            .ok_or_else(|| Error::Structural(format!("non-tree edge {e} has no v1 endpoint")))?;
        out.insert(pick);
        covered.insert(e);
    }
    for (e, _, _) in g.edges() {
        if tree.contains(&e) == covered.contains(&e) {
            return Err(Error::Structural(format!(
                "{e} is not covered exactly once by the tree and the matching"
            )));
        }
    }
    Ok(out)
}
