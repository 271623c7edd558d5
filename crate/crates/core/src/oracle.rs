//! Brute-force ground truth for every solver surface.
//!
//! Nothing here calls into the solvers. Cycle and connectivity checks are
//! reimplemented locally (DFS back edges, a private union-find) so that the
//! oracle stays independent of the `graph` module it is used to test.

use std::collections::HashMap;
use std::time::{Duration, Instant};

use itertools::Itertools;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};
use crate::instance::DisjointInstance;
use crate::regular3::PairedSubdivision;

/// Size and time limits. The oracle refuses oversized inputs and gives up
/// once the wall-clock guard expires.
#[derive(Clone, Debug)]
pub struct OracleBudget {
    pub n_max: usize,
    pub p_max: usize,
    pub time_limit: Duration,
}

impl Default for OracleBudget {
    fn default() -> Self {
        OracleBudget {
            n_max: 14,
            p_max: 10,
            time_limit: Duration::from_secs(120),
        }
    }
}

/// Minimum FVS of `g` under the default budget.
pub fn brute_fvs(g: &Graph) -> Result<VertexSet> {
    OracleBudget::default().brute_fvs(g)
}

/// Minimum `v1`-FVS if it fits the budget `k`, under the default budget.
pub fn brute_disjoint(inst: &DisjointInstance) -> Result<Option<VertexSet>> {
    OracleBudget::default().brute_disjoint(inst)
}

/// Minimum `v1`-FVS regardless of `k`, under the default budget.
pub fn brute_disjoint_min(inst: &DisjointInstance) -> Result<VertexSet> {
    OracleBudget::default().brute_disjoint_min(inst)
}

/// Largest feasible pair set, under the default budget.
pub fn brute_parity(ps: &PairedSubdivision) -> Result<Vec<usize>> {
    OracleBudget::default().brute_parity(ps)
}

/// Largest adjacency-matching number over all spanning trees containing `g[v2]`.
pub fn brute_mu(inst: &DisjointInstance) -> Result<usize> {
    OracleBudget::default().brute_mu(inst)
}

/// Whether `g[s]` is a forest, by DFS back-edge detection.
pub fn dfs_is_forest(g: &Graph, s: &VertexSet) -> bool {
    let d = Dense::new(g);
    let alive: Vec<bool> = d.ids.iter().map(|v| s.contains(v)).collect();
    !d.has_cycle(&alive)
}

impl OracleBudget {
    fn check_size(&self, what: &str, n: usize) -> Result<()> {
        if n > self.n_max {
            return Err(Error::BudgetExceeded(format!(
                "{what} has {n} vertices, limit is {}",
                self.n_max
            )));
        }
        Ok(())
    }

    fn guard(&self, start: Instant) -> Result<()> {
        if start.elapsed() > self.time_limit {
            return Err(Error::BudgetExceeded(format!(
                "time limit of {:?} exceeded",
                self.time_limit
            )));
        }
        Ok(())
    }

    /// Enumerates vertex subsets by ascending size and returns the first
    /// whose removal leaves no cycle.
    pub fn brute_fvs(&self, g: &Graph) -> Result<VertexSet> {
        self.check_size("graph", g.vertex_count())?;
        let d = Dense::new(g);
        let all: Vec<usize> = (0..d.ids.len()).collect();
        self.smallest_breaking(&d, &all)
    }

    pub fn brute_disjoint(&self, inst: &DisjointInstance) -> Result<Option<VertexSet>> {
        let f = self.brute_disjoint_min(inst)?;
        Ok((f.len() as i64 <= inst.k()).then_some(f))
    }

    pub fn brute_disjoint_min(&self, inst: &DisjointInstance) -> Result<VertexSet> {
        self.check_size("v1", inst.v1().len())?;
        let d = Dense::new(inst.graph());
        let candidates: Vec<usize> = (0..d.ids.len()).filter(|&i| inst.in_v1(d.ids[i])).collect();
        self.smallest_breaking(&d, &candidates)
    }

    fn smallest_breaking(&self, d: &Dense, candidates: &[usize]) -> Result<VertexSet> {
        let start = Instant::now();
        for size in 0..=candidates.len() {
            self.guard(start)?;
            for subset in candidates.iter().copied().combinations(size) {
                let mut alive = vec![true; d.ids.len()];
                for &i in &subset {
                    alive[i] = false;
                }
                if !d.has_cycle(&alive) {
                    return Ok(subset.into_iter().map(|i| d.ids[i]).collect());
                }
            }
        }
        Err(Error::Structural(
            "no subset of the candidates breaks every cycle".into(),
        ))
    }

    /// Tries every subset of pairs; ties go to the first subset in binary order.
    pub fn brute_parity(&self, ps: &PairedSubdivision) -> Result<Vec<usize>> {
        let p = ps.pair_count();
        if p > self.p_max {
            return Err(Error::BudgetExceeded(format!(
                "{p} pairs, limit is {}",
                self.p_max
            )));
        }
        let d = Dense::new(ps.graph());
        let slot_of: HashMap<_, _> = d
            .edge_ids
            .iter()
            .enumerate()
            .map(|(i, &e)| (e, i))
            .collect();
        let pair_slots: Vec<(usize, usize)> = ps
            .pairs()
            .iter()
            .map(|(a, b)| (slot_of[a], slot_of[b]))
            .collect();
        if !d.connected(&vec![true; d.edges.len()]) {
            return Err(Error::Disconnected);
        }
        let mut best: Vec<usize> = Vec::new();
        for mask in 0u32..(1 << p) {
            if mask.count_ones() as usize <= best.len() {
                continue;
            }
            let mut keep = vec![true; d.edges.len()];
            for (i, &(a, b)) in pair_slots.iter().enumerate() {
                if mask >> i & 1 == 1 {
                    keep[a] = false;
                    keep[b] = false;
                }
            }
            if d.connected(&keep) {
                best = (0..p).filter(|i| mask >> i & 1 == 1).collect();
            }
        }
        Ok(best)
    }

    /// Enumerates every maximal spanning forest containing `g[v2]` and, for
    /// each, the largest set of disjoint non-tree edge pairs sharing a `v1`
    /// endpoint.
    pub fn brute_mu(&self, inst: &DisjointInstance) -> Result<usize> {
        self.check_size("graph", inst.graph().vertex_count())?;
        let d = Dense::new(inst.graph());
        let in_v1: Vec<bool> = d.ids.iter().map(|&v| inst.in_v1(v)).collect();
        let mut forced = Vec::new();
        let mut free = Vec::new();
        for (i, &(a, b)) in d.edges.iter().enumerate() {
            if !in_v1[a] && !in_v1[b] {
                forced.push(i);
            } else {
                free.push(i);
            }
        }
        if free.len() > 64 {
            return Err(Error::BudgetExceeded(format!(
                "{} candidate non-tree edges, limit is 64",
                free.len()
            )));
        }
        let mut dsu = LocalDsu::new(d.ids.len());
        for &i in &forced {
            let (a, b) = d.edges[i];
            if !dsu.union(a, b) {
                return Err(Error::precondition("g[v2] is not a forest"));
            }
        }
        let mut whole = LocalDsu::new(d.ids.len());
        for &(a, b) in &d.edges {
            whole.union(a, b);
        }
        let needed = d.ids.len() - whole.sets - forced.len();

        let mut adjacent = vec![0u64; free.len()];
        for (x, &i) in free.iter().enumerate() {
            for (y, &j) in free.iter().enumerate() {
                if x != y && d.share_endpoint(i, j, &in_v1) {
                    adjacent[x] |= 1 << y;
                }
            }
        }
        let mut search = MuSearch {
            d: &d,
            free: &free,
            adjacent: &adjacent,
            memo: HashMap::new(),
            best: 0,
            start: Instant::now(),
            budget: self,
            leaves: 0,
        };
        search.trees(0, needed, 0, dsu)?;
        Ok(search.best)
    }
}

struct MuSearch<'a> {
    d: &'a Dense,
    free: &'a [usize],
    adjacent: &'a [u64],
    memo: HashMap<u64, usize>,
    best: usize,
    start: Instant,
    budget: &'a OracleBudget,
    leaves: u64,
}

impl MuSearch<'_> {
    fn trees(&mut self, at: usize, needed: usize, chosen: u64, dsu: LocalDsu) -> Result<()> {
        if needed == 0 {
            self.leaves += 1;
            if self.leaves.is_multiple_of(1024) {
                self.budget.guard(self.start)?;
            }
            let all = if self.free.len() == 64 {
                u64::MAX
            } else {
                (1u64 << self.free.len()) - 1
            };
            let m = self.matching(all & !chosen);
            self.best = self.best.max(m);
            return Ok(());
        }
        if self.free.len() - at < needed {
            return Ok(());
        }
        let (a, b) = self.d.edges[self.free[at]];
        let mut with = dsu.clone();
        if with.union(a, b) {
            self.trees(at + 1, needed - 1, chosen | 1 << at, with)?;
        }
        self.trees(at + 1, needed, chosen, dsu)
    }

    fn matching(&mut self, mask: u64) -> usize {
        if mask == 0 {
            return 0;
        }
        if let Some(&m) = self.memo.get(&mask) {
            return m;
        }
        let i = mask.trailing_zeros() as usize;
        let rest = mask & !(1 << i);
        let mut best = self.matching(rest);
        let mut partners = self.adjacent[i] & rest;
        while partners != 0 {
            let j = partners.trailing_zeros();
            partners &= partners - 1;
            best = best.max(1 + self.matching(rest & !(1 << j)));
        }
        self.memo.insert(mask, best);
        best
    }
}

/// Dense copy of a graph: vertices renumbered `0..n` in ascending id order.
struct Dense {
    ids: Vec<VertexId>,
    edges: Vec<(usize, usize)>,
    edge_ids: Vec<crate::graph::EdgeId>,
}

impl Dense {
    fn new(g: &Graph) -> Self {
        let ids: Vec<VertexId> = g.vertices().collect();
        let mut index = vec![usize::MAX; g.vertex_bound()];
        for (i, v) in ids.iter().enumerate() {
            index[v.index()] = i;
        }
        let mut edges = Vec::new();
        let mut edge_ids = Vec::new();
        for (e, u, v) in g.edges() {
            edges.push((index[u.index()], index[v.index()]));
            edge_ids.push(e);
        }
        Dense {
            ids,
            edges,
            edge_ids,
        }
    }

    /// DFS over the live vertices; any edge other than the one used to enter
    /// a vertex that reaches a visited vertex closes a cycle.
    fn has_cycle(&self, alive: &[bool]) -> bool {
        let n = self.ids.len();
        let mut adj: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if alive[a] && alive[b] {
                if a == b {
                    return true;
                }
                adj[a].push((b, i));
                adj[b].push((a, i));
            }
        }
        let mut visited = vec![false; n];
        for root in 0..n {
            if !alive[root] || visited[root] {
                continue;
            }
            visited[root] = true;
            let mut stack = vec![(root, usize::MAX)];
            while let Some((x, via)) = stack.pop() {
                for &(y, e) in &adj[x] {
                    if e == via {
                        continue;
                    }
                    if visited[y] {
                        return true;
                    }
                    visited[y] = true;
                    stack.push((y, e));
                }
            }
        }
        false
    }

    fn connected(&self, keep: &[bool]) -> bool {
        let mut dsu = LocalDsu::new(self.ids.len());
        for (i, &(a, b)) in self.edges.iter().enumerate() {
            if keep[i] {
                dsu.union(a, b);
            }
        }
        dsu.sets <= 1
    }

    fn share_endpoint(&self, i: usize, j: usize, in_v1: &[bool]) -> bool {
        let (a, b) = self.edges[i];
        let (c, d) = self.edges[j];
        [a, b].into_iter().any(|x| in_v1[x] && (x == c || x == d))
    }
}

#[derive(Clone)]
struct LocalDsu {
    parent: Vec<usize>,
    sets: usize,
}

impl LocalDsu {
    fn new(n: usize) -> Self {
        LocalDsu {
            parent: (0..n).collect(),
            sets: n,
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.parent[ra] = rb;
        self.sets -= 1;
        true
    }
}
