//! Undirected multigraph with stable vertex and edge identifiers, plus the
//! forest, component and spanning-tree primitives the solvers are built on.
//!
//! Identifiers are never reused within the lifetime of one [`Graph`]: removing
//! a vertex or an edge frees its slot for good, so traces recorded against one
//! graph stay meaningful after later mutations.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Deref, DerefMut};

use crate::dsu::DisjointSets;
use crate::error::{Error, Result};

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "v{}", self.0)
    }
}

impl fmt::Display for EdgeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "e{}", self.0)
    }
}

/// An ordered set of vertex ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct VertexSet(BTreeSet<VertexId>);

impl VertexSet {
    pub fn new() -> Self {
        VertexSet(BTreeSet::new())
    }

    pub fn into_inner(self) -> BTreeSet<VertexId> {
        self.0
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        self.0.union(&other.0).copied().collect()
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        self.0.difference(&other.0).copied().collect()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_disjoint(&self, other: &VertexSet) -> bool {
        self.0.is_disjoint(&other.0)
    }
}

impl Deref for VertexSet {
    type Target = BTreeSet<VertexId>;

    fn deref(&self) -> &Self::Target {
        &self.0
    }
}

impl DerefMut for VertexSet {
    fn deref_mut(&mut self) -> &mut Self::Target {
        &mut self.0
    }
}

impl FromIterator<VertexId> for VertexSet {
    fn from_iter<I: IntoIterator<Item = VertexId>>(iter: I) -> Self {
        VertexSet(iter.into_iter().collect())
    }
}

impl Extend<VertexId> for VertexSet {
    fn extend<I: IntoIterator<Item = VertexId>>(&mut self, iter: I) {
        self.0.extend(iter)
    }
}

impl IntoIterator for VertexSet {
    type Item = VertexId;
    type IntoIter = std::collections::btree_set::IntoIter<VertexId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.into_iter()
    }
}

impl<'a> IntoIterator for &'a VertexSet {
    type Item = &'a VertexId;
    type IntoIter = std::collections::btree_set::Iter<'a, VertexId>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter()
    }
}

impl<const N: usize> From<[VertexId; N]> for VertexSet {
    fn from(arr: [VertexId; N]) -> Self {
        arr.into_iter().collect()
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Graph {
    // Incident edge slots per vertex; a self-loop occupies two slots.
    incidence: Vec<Option<Vec<EdgeId>>>,
    endpoints: Vec<Option<(VertexId, VertexId)>>,
    vertex_count: usize,
    edge_count: usize,
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// A graph with vertices `0..n` and no edges.
    pub fn with_vertices(n: usize) -> Self {
        Graph {
            incidence: vec![Some(Vec::new()); n],
            endpoints: Vec::new(),
            vertex_count: n,
            edge_count: 0,
        }
    }

    /// Builds a graph on vertices `0..n` from 0-based endpoint pairs.
    pub fn from_edges(n: usize, edges: &[(u32, u32)]) -> Result<Self> {
        let mut g = Graph::with_vertices(n);
        for &(u, v) in edges {
            g.add_edge(VertexId(u), VertexId(v))?;
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self) -> VertexId {
        let id = VertexId(self.incidence.len() as u32);
        self.incidence.push(Some(Vec::new()));
        self.vertex_count += 1;
        id
    }

    pub fn add_edge(&mut self, u: VertexId, v: VertexId) -> Result<EdgeId> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        let id = EdgeId(self.endpoints.len() as u32);
        self.endpoints.push(Some((u, v)));
        self.slots_mut(u).push(id);
        self.slots_mut(v).push(id);
        self.edge_count += 1;
        Ok(id)
    }

    pub fn remove_edge(&mut self, e: EdgeId) -> Result<(VertexId, VertexId)> {
        let (u, v) = self
            .endpoints
            .get_mut(e.index())
            .and_then(Option::take)
            .ok_or(Error::UnknownEdge(e))?;
        self.slots_mut(u).retain(|&x| x != e);
        if u != v {
            self.slots_mut(v).retain(|&x| x != e);
        }
        self.edge_count -= 1;
        Ok((u, v))
    }

    /// Removes `v` together with all its incident edges.
    pub fn remove_vertex(&mut self, v: VertexId) -> Result<()> {
        self.check_vertex(v)?;
        let incident = std::mem::take(self.slots_mut(v));
        for e in incident {
            if let Some((a, b)) = self.endpoints[e.index()].take() {
                let other = if a == v { b } else { a };
                if other != v {
                    self.slots_mut(other).retain(|&x| x != e);
                }
                self.edge_count -= 1;
            }
        }
        self.incidence[v.index()] = None;
        self.vertex_count -= 1;
        Ok(())
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        matches!(self.incidence.get(v.index()), Some(Some(_)))
    }

    pub fn contains_edge(&self, e: EdgeId) -> bool {
        matches!(self.endpoints.get(e.index()), Some(Some(_)))
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// One past the largest vertex id ever allocated; sizes dense per-vertex tables.
    pub fn vertex_bound(&self) -> usize {
        self.incidence.len()
    }

    pub fn edge_bound(&self) -> usize {
        self.endpoints.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        self.incidence
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_some())
            .map(|(i, _)| VertexId(i as u32))
    }

    pub fn vertex_set(&self) -> VertexSet {
        self.vertices().collect()
    }

    pub fn edges(&self) -> impl Iterator<Item = (EdgeId, VertexId, VertexId)> + '_ {
        self.endpoints
            .iter()
            .enumerate()
            .filter_map(|(i, e)| e.map(|(u, v)| (EdgeId(i as u32), u, v)))
    }

    pub fn endpoints(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.endpoints.get(e.index()).copied().flatten()
    }

    /// Incident edge slots of `v`; empty for unknown vertices.
    pub fn incident(&self, v: VertexId) -> &[EdgeId] {
        match self.incidence.get(v.index()) {
            Some(Some(slots)) => slots,
            _ => &[],
        }
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.incident(v).len()
    }

    /// The endpoint of `e` that is not `v` (or `v` itself for a self-loop).
    pub fn opposite(&self, e: EdgeId, v: VertexId) -> VertexId {
        let (a, b) = self.endpoints(e).expect("live edge");
        if a == v {
            b
        } else {
            a
        }
    }

    /// Neighbours of `v`, one entry per incident edge slot.
    pub fn neighbors(&self, v: VertexId) -> impl Iterator<Item = VertexId> + '_ {
        self.incident(v).iter().map(move |&e| self.opposite(e, v))
    }

    /// Copy of the subgraph induced by `keep`, preserving ids.
    pub fn induced(&self, keep: &VertexSet) -> Graph {
        let mask = self.mask(keep);
        self.filtered(|v| mask[v.index()])
    }

    /// Copy of `self - remove`, preserving ids.
    pub fn without(&self, remove: &VertexSet) -> Graph {
        let mask = self.mask(remove);
        self.filtered(|v| !mask[v.index()])
    }

    fn filtered(&self, keep: impl Fn(VertexId) -> bool) -> Graph {
        let incidence: Vec<Option<Vec<EdgeId>>> = self
            .incidence
            .iter()
            .enumerate()
            .map(|(i, slots)| {
                let v = VertexId(i as u32);
                match slots {
                    Some(slots) if keep(v) => Some(
                        slots
                            .iter()
                            .copied()
                            .filter(|&e| {
                                let (a, b) = self.endpoints[e.index()].unwrap();
                                keep(a) && keep(b)
                            })
                            .collect(),
                    ),
                    _ => None,
                }
            })
            .collect();
        let endpoints: Vec<Option<(VertexId, VertexId)>> = self
            .endpoints
            .iter()
            .map(|e| e.filter(|&(a, b)| keep(a) && keep(b)))
            .collect();
        Graph {
            vertex_count: incidence.iter().filter(|s| s.is_some()).count(),
            edge_count: endpoints.iter().filter(|e| e.is_some()).count(),
            incidence,
            endpoints,
        }
    }

    /// Dense membership table for `s`, indexed by vertex id.
    pub(crate) fn mask(&self, s: &VertexSet) -> Vec<bool> {
        let mut mask = vec![false; self.vertex_bound()];
        for v in s {
            if let Some(slot) = mask.get_mut(v.index()) {
                *slot = true;
            }
        }
        mask
    }

    pub(crate) fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(v))
        }
    }

    pub(crate) fn check_members(&self, s: &VertexSet) -> Result<()> {
        s.iter().try_for_each(|&v| self.check_vertex(v))
    }

    fn slots_mut(&mut self, v: VertexId) -> &mut Vec<EdgeId> {
        self.incidence[v.index()].as_mut().expect("live vertex")
    }
}

/// Component ids of the subgraph induced by some vertex subset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ComponentLabeling {
    labels: Vec<Option<usize>>,
    count: usize,
}

impl ComponentLabeling {
    pub fn count(&self) -> usize {
        self.count
    }

    /// Component id of `v`, or `None` when `v` is outside the labelled subset.
    pub fn get(&self, v: VertexId) -> Option<usize> {
        self.labels.get(v.index()).copied().flatten()
    }

    /// The labelled vertices grouped by component id.
    pub fn groups(&self) -> Vec<Vec<VertexId>> {
        let mut groups = vec![Vec::new(); self.count];
        for (i, l) in self.labels.iter().enumerate() {
            if let Some(l) = l {
                groups[*l].push(VertexId(i as u32));
            }
        }
        groups
    }
}

/// True iff `g[s]` contains no cycle. Self-loops and parallel pairs inside `s`
/// count as cycles.
pub fn is_forest(g: &Graph, s: &VertexSet) -> Result<bool> {
    g.check_members(s)?;
    let mask = g.mask(s);
    Ok(forest_under_mask(g, &mask))
}

pub(crate) fn forest_under_mask(g: &Graph, mask: &[bool]) -> bool {
    let mut dsu = DisjointSets::new(g.vertex_bound());
    g.edges()
        .filter(|(_, u, v)| mask[u.index()] && mask[v.index()])
        .all(|(_, u, v)| dsu.union(u.index(), v.index()))
}

/// True iff the whole graph is acyclic.
pub fn is_acyclic(g: &Graph) -> bool {
    let mut dsu = DisjointSets::new(g.vertex_bound());
    g.edges().all(|(_, u, v)| dsu.union(u.index(), v.index()))
}

/// Connected components of `g[s]`. Ids are assigned in ascending order of each
/// component's smallest vertex.
pub fn components(g: &Graph, s: &VertexSet) -> Result<ComponentLabeling> {
    g.check_members(s)?;
    let mask = g.mask(s);
    Ok(components_under_mask(g, &mask))
}

pub(crate) fn components_under_mask(g: &Graph, mask: &[bool]) -> ComponentLabeling {
    let mut dsu = DisjointSets::new(g.vertex_bound());
    for (_, u, v) in g.edges() {
        if mask[u.index()] && mask[v.index()] {
            dsu.union(u.index(), v.index());
        }
    }
    let mut root_label = vec![None; g.vertex_bound()];
    let mut labels = vec![None; g.vertex_bound()];
    let mut count = 0;
    for v in g.vertices() {
        if !mask[v.index()] {
            continue;
        }
        let r = dsu.find(v.index());
        let l = *root_label[r].get_or_insert_with(|| {
            count += 1;
            count - 1
        });
        labels[v.index()] = Some(l);
    }
    ComponentLabeling { labels, count }
}

/// Components of the whole graph.
pub fn all_components(g: &Graph) -> ComponentLabeling {
    components_under_mask(g, &vec![true; g.vertex_bound()])
}

/// Cycle rank `|E| - |V| + c`.
pub fn betti(g: &Graph) -> usize {
    let c = all_components(g).count();
    g.edge_count() + c - g.vertex_count()
}

/// A maximal spanning forest of `g` containing every edge of the forest `g[s]`.
pub fn spanning_forest_containing(g: &Graph, s: &VertexSet) -> Result<BTreeSet<EdgeId>> {
    g.check_members(s)?;
    let mask = g.mask(s);
    let mut dsu = DisjointSets::new(g.vertex_bound());
    let mut tree = BTreeSet::new();
    for (e, u, v) in g.edges() {
        if mask[u.index()] && mask[v.index()] {
            if !dsu.union(u.index(), v.index()) {
                return Err(Error::precondition(format!(
                    "induced subgraph is not a forest (edge {e} closes a cycle)"
                )));
            }
            tree.insert(e);
        }
    }
    for (e, u, v) in g.edges() {
        if dsu.union(u.index(), v.index()) {
            tree.insert(e);
        }
    }
    Ok(tree)
}

/// Edge set of a spanning tree of the connected graph `g` that contains every
/// edge of `g[s]`.
pub fn spanning_tree_containing(g: &Graph, s: &VertexSet) -> Result<BTreeSet<EdgeId>> {
    let tree = spanning_forest_containing(g, s)?;
    if g.vertex_count() > 0 && tree.len() + 1 != g.vertex_count() {
        return Err(Error::Disconnected);
    }
    Ok(tree)
}

/// Replaces the degree-2 vertex `v` by a single edge joining its two former
/// neighbours. The new edge may be parallel to an existing one, or a self-loop
/// when both slots of `v` lead to the same neighbour.
pub fn bypass_degree2(g: &mut Graph, v: VertexId) -> Result<EdgeId> {
    g.check_vertex(v)?;
    let slots = g.incident(v);
    if slots.len() != 2 {
        return Err(Error::precondition(format!(
            "bypass needs degree 2, {v} has degree {}",
            slots.len()
        )));
    }
    if slots[0] == slots[1] {
        return Err(Error::precondition(format!("{v} carries a self-loop")));
    }
    let a = g.opposite(slots[0], v);
    let b = g.opposite(slots[1], v);
    g.remove_vertex(v)?;
    g.add_edge(a, b)
}

/// True iff `g - f` is acyclic.
pub fn is_fvs(g: &Graph, f: &VertexSet) -> Result<bool> {
    g.check_members(f)?;
    let mask = g.mask(f);
    let keep: Vec<bool> = mask.iter().map(|&x| !x).collect();
    Ok(forest_under_mask(g, &keep))
}

/// Some cycle of `g - avoid`, as its vertex sequence, or `None` if acyclic.
pub fn find_cycle(g: &Graph, avoid: &VertexSet) -> Option<Vec<VertexId>> {
    let blocked = g.mask(avoid);
    let n = g.vertex_bound();
    let mut parent_edge: Vec<Option<EdgeId>> = vec![None; n];
    let mut parent: Vec<Option<VertexId>> = vec![None; n];
    let mut seen = vec![false; n];
    for root in g.vertices() {
        if blocked[root.index()] || seen[root.index()] {
            continue;
        }
        seen[root.index()] = true;
        let mut stack = vec![root];
        while let Some(u) = stack.pop() {
            for &e in g.incident(u) {
                if Some(e) == parent_edge[u.index()] {
                    continue;
                }
                let w = g.opposite(e, u);
                if blocked[w.index()] {
                    continue;
                }
                if w == u {
                    return Some(vec![u]);
                }
                if seen[w.index()] {
                    // Walk both ends up to their common ancestor.
                    let mut up_u = vec![u];
                    let mut cur = u;
                    while let Some(p) = parent[cur.index()] {
                        up_u.push(p);
                        cur = p;
                    }
                    let on_u: std::collections::HashMap<VertexId, usize> =
                        up_u.iter().enumerate().map(|(i, &x)| (x, i)).collect();
                    let mut up_w = vec![w];
                    let mut cur = w;
                    while !on_u.contains_key(&cur) {
                        cur = parent[cur.index()].expect("same tree");
                        up_w.push(cur);
                    }
                    let meet = on_u[&cur];
                    let mut cycle: Vec<VertexId> = up_u[..=meet].to_vec();
                    up_w.pop();
                    cycle.extend(up_w.into_iter().rev());
                    return Some(cycle);
                }
                seen[w.index()] = true;
                parent[w.index()] = Some(u);
                parent_edge[w.index()] = Some(e);
                stack.push(w);
            }
        }
    }
    None
}
