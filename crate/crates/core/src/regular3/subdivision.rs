use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{self, EdgeId, Graph, VertexId, VertexSet};
use crate::instance::DisjointInstance;

/// `g` with every tree of `g[v2]` contracted to a single vertex. Only edges
/// with at least one `v1` endpoint survive.
#[derive(Clone, Debug)]
pub struct ShrunkenGraph {
    g1: Graph,
    origin: BTreeMap<EdgeId, EdgeId>,
    node_of: BTreeMap<VertexId, VertexId>,
    v1_nodes: VertexSet,
}

impl ShrunkenGraph {
    pub fn graph(&self) -> &Graph {
        &self.g1
    }

    /// The original edge a shrunken edge stands for.
    pub fn origin(&self, e1: EdgeId) -> Option<EdgeId> {
        self.origin.get(&e1).copied()
    }

    /// The shrunken vertex an original vertex was mapped to.
    pub fn node_of(&self, v: VertexId) -> Option<VertexId> {
        self.node_of.get(&v).copied()
    }

    /// Shrunken vertices that stand for a single `v1` vertex.
    pub fn v1_nodes(&self) -> &VertexSet {
        &self.v1_nodes
    }

    /// Number of edges `V1`-adjacent to `e1`, i.e. sharing a `v1` endpoint with it.
    pub fn v1_adjacency_degree(&self, e1: EdgeId) -> usize {
        self.v1_adjacent(e1).len()
    }

    /// Edges sharing a `v1` endpoint with `e1`, ascending by id.
    pub fn v1_adjacent(&self, e1: EdgeId) -> Vec<EdgeId> {
        let Some((a, b)) = self.g1.endpoints(e1) else {
            return Vec::new();
        };
        let mut out: Vec<EdgeId> = [a, b]
            .into_iter()
            .filter(|x| self.v1_nodes.contains(x))
            .flat_map(|x| self.g1.incident(x).iter().copied())
            .filter(|&f| f != e1)
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

/// Contracts each tree of `g[v2]` of a connected instance.
///
/// Requires every `v1` vertex to send at most one edge into each tree of
/// `g[v2]`; a vertex violating this lies on a cycle through that tree and
/// must be forced by the caller first.
pub fn shrink_v2(inst: &DisjointInstance) -> Result<ShrunkenGraph> {
    let g = inst.graph();
    if graph::all_components(g).count() > 1 {
        return Err(Error::Disconnected);
    }
    let labels = inst.v2_components();
    for &u in inst.v1() {
        let mut seen = Vec::new();
        for w in inst.v2_neighbors(u) {
            let c = labels.get(w).expect("v2 vertex is labelled");
            if seen.contains(&c) {
                return Err(Error::precondition(format!(
                    "{u} has two edges into the same tree of g[v2]"
                )));
            }
            seen.push(c);
        }
    }

    let mut g1 = Graph::with_vertices(labels.count());
    let mut node_of = BTreeMap::new();
    for &v in inst.v2() {
        node_of.insert(v, VertexId(labels.get(v).unwrap() as u32));
    }
    let mut v1_nodes = VertexSet::new();
    for &v in inst.v1() {
        let x = g1.add_vertex();
        node_of.insert(v, x);
        v1_nodes.insert(x);
    }
    let mut origin = BTreeMap::new();
    for (e, u, v) in g.edges() {
        if inst.in_v1(u) || inst.in_v1(v) {
            let e1 = g1.add_edge(node_of[&u], node_of[&v])?;
            origin.insert(e1, e);
        }
    }
    let sg = ShrunkenGraph {
        g1,
        origin,
        node_of,
        v1_nodes,
    };
    if !is_simple(&sg.g1) {
        return Err(Error::Structural("shrunken graph is not simple".into()));
    }
    Ok(sg)
}

fn is_simple(g: &Graph) -> bool {
    let mut seen = std::collections::HashSet::new();
    g.edges()
        .all(|(_, u, v)| u != v && seen.insert((u.min(v), u.max(v))))
}

/// Label of a segment edge: it lies on the subdivided `from` edge and is
/// paired with the segment of `toward` labelled `(toward, from)`.
#[derive(Copy, Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct SegmentLabel {
    pub from: EdgeId,
    pub toward: EdgeId,
}

/// The labelled subdivision of a shrunken graph together with its perfect
/// pairing of segment edges.
#[derive(Clone, Debug)]
pub struct PairedSubdivision {
    g2: Graph,
    labels: BTreeMap<EdgeId, SegmentLabel>,
    pairs: Vec<(EdgeId, EdgeId)>,
}

impl PairedSubdivision {
    pub fn graph(&self) -> &Graph {
        &self.g2
    }

    pub fn label(&self, seg: EdgeId) -> Option<SegmentLabel> {
        self.labels.get(&seg).copied()
    }

    /// Pairs of segment edges; a pair set is a list of indices into this.
    pub fn pairs(&self) -> &[(EdgeId, EdgeId)] {
        &self.pairs
    }

    pub fn pair_count(&self) -> usize {
        self.pairs.len()
    }

    /// Segment edges belonging to the chosen pairs.
    pub fn segments_of(&self, chosen: &[usize]) -> Vec<EdgeId> {
        chosen
            .iter()
            .flat_map(|&i| {
                let (a, b) = self.pairs[i];
                [a, b]
            })
            .collect()
    }

    /// Whether `g2` stays connected once the chosen pairs are deleted.
    pub fn is_feasible(&self, chosen: &[usize]) -> bool {
        let mut g = self.g2.clone();
        for e in self.segments_of(chosen) {
            if g.remove_edge(e).is_err() {
                return false;
            }
        }
        graph::all_components(&g).count() <= 1
    }

    #[cfg(test)]
    pub(crate) fn from_parts(
        g2: Graph,
        labels: BTreeMap<EdgeId, SegmentLabel>,
        pairs: Vec<(EdgeId, EdgeId)>,
    ) -> Self {
        PairedSubdivision { g2, labels, pairs }
    }
}

/// Splits every shrunken edge `e0` into `d(e0)` segments labelled
/// `(e0, e_i)`, one per `V1`-adjacent edge `e_i` in ascending id order, and
/// pairs `(e0, e_i)` with `(e_i, e0)`.
pub fn subdivide(sg: &ShrunkenGraph) -> Result<PairedSubdivision> {
    let g1 = sg.graph();
    let mut g2 = Graph::with_vertices(g1.vertex_bound());
    for x in 0..g1.vertex_bound() {
        let x = VertexId(x as u32);
        if !g1.contains_vertex(x) {
            g2.remove_vertex(x)?;
        }
    }
    let mut by_label: BTreeMap<SegmentLabel, EdgeId> = BTreeMap::new();
    let mut labels = BTreeMap::new();
    for (e0, a, b) in g1.edges() {
        let adjacent = sg.v1_adjacent(e0);
        if adjacent.is_empty() {
            return Err(Error::precondition(format!(
                "{e0} has no V1-adjacent edge and cannot be subdivided"
            )));
        }
        let mut prev = a;
        for (i, &ei) in adjacent.iter().enumerate() {
            let next = if i + 1 == adjacent.len() {
                b
            } else {
                g2.add_vertex()
            };
            let seg = g2.add_edge(prev, next)?;
            let label = SegmentLabel {
                from: e0,
                toward: ei,
            };
            labels.insert(seg, label);
            by_label.insert(label, seg);
            prev = next;
        }
    }
    let mut pairs = Vec::new();
    for (label, &seg) in &by_label {
        if label.from < label.toward {
            let partner = SegmentLabel {
                from: label.toward,
                toward: label.from,
            };
            let other = by_label
                .get(&partner)
                .ok_or_else(|| Error::Structural(format!("segment {seg} has no partner")))?;
            pairs.push((seg, *other));
        }
    }
    Ok(PairedSubdivision { g2, labels, pairs })
}
