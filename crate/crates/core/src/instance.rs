use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{self, ComponentLabeling, EdgeId, Graph, VertexId, VertexSet};

/// A disjoint-FVS instance: a graph, a partition `(v1, v2)` of its vertices
/// with both sides inducing forests, and a budget `k` for a solution drawn
/// from `v1` only.
#[derive(Clone, PartialEq, Eq)]
pub struct DisjointInstance {
    g: Graph,
    v1: VertexSet,
    v2: VertexSet,
    k: i64,
}

impl fmt::Debug for DisjointInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let edges: Vec<_> = self.g.edges().map(|(_, u, v)| (u.0, v.0)).collect();
        f.debug_struct("DisjointInstance")
            .field("v1", &self.v1.iter().map(|v| v.0).collect::<Vec<_>>())
            .field("v2", &self.v2.iter().map(|v| v.0).collect::<Vec<_>>())
            .field("edges", &edges)
            .field("k", &self.k)
            .finish()
    }
}

impl DisjointInstance {
    /// Validates the partition and the forest conditions.
    pub fn new(g: Graph, v1: VertexSet, v2: VertexSet, k: i64) -> Result<Self> {
        g.check_members(&v1)?;
        g.check_members(&v2)?;
        if !v1.is_disjoint(&v2) || v1.len() + v2.len() != g.vertex_count() {
            return Err(Error::precondition(
                "(v1, v2) is not a partition of the vertices",
            ));
        }
        if k < -1 {
            return Err(Error::precondition(format!("budget {k} below -1")));
        }
        if !graph::is_forest(&g, &v1)? {
            return Err(Error::precondition("g[v1] is not a forest"));
        }
        if !graph::is_forest(&g, &v2)? {
            return Err(Error::precondition("g[v2] is not a forest"));
        }
        Ok(DisjointInstance { g, v1, v2, k })
    }

    #[cfg(test)]
    pub(crate) fn new_unchecked(g: Graph, v1: VertexSet, v2: VertexSet, k: i64) -> Self {
        DisjointInstance { g, v1, v2, k }
    }

    /// Instance with the given `v2`; every other vertex goes to `v1`.
    pub fn with_v2(g: Graph, v2: VertexSet, k: i64) -> Result<Self> {
        let v1 = g.vertex_set().difference(&v2);
        Self::new(g, v1, v2, k)
    }

    pub fn graph(&self) -> &Graph {
        &self.g
    }

    pub fn v1(&self) -> &VertexSet {
        &self.v1
    }

    pub fn v2(&self) -> &VertexSet {
        &self.v2
    }

    pub fn k(&self) -> i64 {
        self.k
    }

    pub fn set_k(&mut self, k: i64) {
        self.k = k;
    }

    pub fn into_parts(self) -> (Graph, VertexSet, VertexSet, i64) {
        (self.g, self.v1, self.v2, self.k)
    }

    pub fn in_v1(&self, v: VertexId) -> bool {
        self.v1.contains(&v)
    }

    pub fn in_v2(&self, v: VertexId) -> bool {
        self.v2.contains(&v)
    }

    /// Components of `g[v2]`.
    pub fn v2_components(&self) -> ComponentLabeling {
        graph::components_under_mask(&self.g, &self.g.mask(&self.v2))
    }

    /// Components of `g[v1]`.
    pub fn v1_components(&self) -> ComponentLabeling {
        graph::components_under_mask(&self.g, &self.g.mask(&self.v1))
    }

    /// Commits `v` to the solution: deletes it and spends one unit of budget.
    pub(crate) fn force(&mut self, v: VertexId) {
        debug_assert!(self.v1.contains(&v));
        self.g.remove_vertex(v).expect("live vertex");
        self.v1.remove(&v);
        self.k -= 1;
    }

    /// Deletes `v` without touching the budget.
    pub(crate) fn delete(&mut self, v: VertexId) {
        self.g.remove_vertex(v).expect("live vertex");
        self.v1.remove(&v);
        self.v2.remove(&v);
    }

    /// Moves `v` from `v1` to `v2`. The caller guarantees `g[v2 + v]` stays a forest.
    pub(crate) fn move_to_v2(&mut self, v: VertexId) {
        debug_assert!(self.v1.contains(&v));
        self.v1.remove(&v);
        self.v2.insert(v);
        debug_assert!(graph::is_forest(&self.g, &self.v2).unwrap());
    }

    /// Bypasses the degree-2 `v1` vertex `v`.
    pub(crate) fn bypass(&mut self, v: VertexId) -> Result<EdgeId> {
        let e = graph::bypass_degree2(&mut self.g, v)?;
        self.v1.remove(&v);
        Ok(e)
    }

    /// Neighbours of `v` that lie in `v2`, one per edge slot.
    pub fn v2_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.g.neighbors(v).filter(|u| self.v2.contains(u))
    }

    /// Neighbours of `v` that lie in `v1`, one per edge slot.
    pub fn v1_neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.g.neighbors(v).filter(|u| self.v1.contains(u))
    }

    /// Re-checks every structural invariant.
    pub fn validate(&self) -> Result<()> {
        Self::new(self.g.clone(), self.v1.clone(), self.v2.clone(), self.k).map(|_| ())
    }
}
