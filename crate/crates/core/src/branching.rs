//! Measure-guided branch-and-search for disjoint-FVS.
//!
//! The measure is `m = k + l/2 - p`, with `l` the number of trees of `g[v2]`
//! and `p` the number of nice `v1` vertices (degree three, all neighbours in
//! `v2`). It is stored doubled so that everything stays integral.

use crate::error::{Error, Result};
use crate::graph::{self, VertexId, VertexSet};
use crate::instance::DisjointInstance;
use crate::reductions::{self, Verdict};
use crate::regular3::{self, ParityBackend};

#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub struct Measure {
    pub twice_m: i64,
    pub k: i64,
    pub l: usize,
    pub p: usize,
}

impl Measure {
    /// `⌈m⌉`.
    pub fn ceil(&self) -> i64 {
        (self.twice_m + 1).div_euclid(2)
    }
}

fn is_nice(inst: &DisjointInstance, v: VertexId) -> bool {
    inst.graph().degree(v) == 3 && inst.graph().neighbors(v).all(|u| inst.in_v2(u))
}

/// Number of nice `v1` vertices.
pub fn count_nice(inst: &DisjointInstance) -> usize {
    inst.v1().iter().filter(|&&v| is_nice(inst, v)).count()
}

pub fn measure(inst: &DisjointInstance) -> Measure {
    let l = inst.v2_components().count();
    let p = count_nice(inst);
    Measure {
        twice_m: 2 * inst.k() + l as i64 - 2 * p as i64,
        k: inst.k(),
        l,
        p,
    }
}

/// Largest number of leaves a search rooted at the given measure may have:
/// `2^⌈m⌉`, and never less than the single leaf every run has.
pub fn leaf_bound(twice_m: i64) -> u128 {
    let e = (twice_m + 1).div_euclid(2);
    if e <= 0 {
        1
    } else if e >= 127 {
        u128::MAX
    } else {
        1u128 << e
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub branch_nodes: u64,
    pub leaves: u64,
    pub max_depth: usize,
    pub forced_count: u64,
}

impl SearchStats {
    pub fn absorb(&mut self, other: &SearchStats) {
        self.branch_nodes += other.branch_nodes;
        self.leaves += other.leaves;
        self.max_depth = self.max_depth.max(other.max_depth);
        self.forced_count += other.forced_count;
    }
}

/// Where a recorded transition happened. Reductions never increase the
/// measure; each branching step has a required decrease per child.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Step {
    Preprocess,
    RemoveLow,
    ForceDoubleContact,
    Bypass,
    Branch7 {
        forced: bool,
    },
    Branch8 {
        forced: bool,
    },
    Branch9 {
        forced: bool,
    },
    /// A non-nice leaf of `g[v1]` with other than two `v2` neighbours
    /// reached step 8.
    LeafShape,
}

impl Step {
    fn required_drop(self) -> i64 {
        match self {
            Step::Branch7 { .. } => 2,
            Step::Branch8 { forced } => {
                if forced {
                    3
                } else {
                    2
                }
            }
            Step::Branch9 { .. } => 3,
            _ => 0,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub step: Step,
    pub before: i64,
    pub after: i64,
}

#[derive(Clone, Debug, Default)]
pub struct Audit {
    pub transitions: u64,
    pub violations: Vec<Violation>,
}

#[derive(Clone, Debug, Default)]
pub struct FeedbackOptions {
    pub backend: ParityBackend,
    /// Record the measure across every reduction and branch.
    pub audit: bool,
}

#[derive(Clone, Debug)]
pub struct FeedbackRun {
    pub solution: Option<VertexSet>,
    pub root: Measure,
    pub stats: SearchStats,
    pub audit: Audit,
}

impl FeedbackRun {
    pub fn leaf_bound(&self) -> u128 {
        leaf_bound(self.root.twice_m)
    }
}

/// A `v1`-FVS of size at most `k`, if one exists.
pub fn feedback(inst: &DisjointInstance, stats: &mut SearchStats) -> Result<Option<VertexSet>> {
    let run = run_feedback(inst, &FeedbackOptions::default())?;
    stats.absorb(&run.stats);
    Ok(run.solution)
}

pub fn run_feedback(inst: &DisjointInstance, opts: &FeedbackOptions) -> Result<FeedbackRun> {
    let root = measure(inst);
    let mut search = Search {
        opts,
        stats: SearchStats::default(),
        audit: Audit::default(),
    };
    let solution = search.node(inst.clone(), 0)?;
    Ok(FeedbackRun {
        solution,
        root,
        stats: search.stats,
        audit: search.audit,
    })
}

struct Search<'a> {
    opts: &'a FeedbackOptions,
    stats: SearchStats,
    audit: Audit,
}

struct Child {
    step: Step,
    inst: DisjointInstance,
    forced: VertexSet,
}

impl Search<'_> {
    fn snapshot(&self, inst: &DisjointInstance) -> i64 {
        if self.opts.audit {
            measure(inst).twice_m
        } else {
            0
        }
    }

    fn record(&mut self, step: Step, before: i64, inst: &DisjointInstance) {
        if !self.opts.audit {
            return;
        }
        let after = measure(inst).twice_m;
        self.audit.transitions += 1;
        if before - after < step.required_drop() {
            self.audit.violations.push(Violation {
                step,
                before,
                after,
            });
        }
    }

    fn leaf(&mut self, out: Option<VertexSet>) -> Result<Option<VertexSet>> {
        self.stats.leaves += 1;
        Ok(out)
    }

    fn node(&mut self, mut inst: DisjointInstance, depth: usize) -> Result<Option<VertexSet>> {
        self.stats.max_depth = self.stats.max_depth.max(depth);
        let mut forced = VertexSet::new();
        loop {
            let before = self.snapshot(&inst);
            let already = forced.len();
            let verdict = reductions::preprocess_in_place(&mut inst, &mut forced);
            self.stats.forced_count += (forced.len() - already) as u64;
            if verdict == Verdict::NoSolution {
                return self.leaf(None);
            }
            if forced.len() > already {
                self.record(Step::Preprocess, before, &inst);
            }

            // Steps 1 and 2.
            if graph::is_acyclic(inst.graph()) {
                return self.leaf(Some(forced));
            }
            if inst.k() <= 0 {
                return self.leaf(None);
            }

            // Step 3.
            let m = measure(&inst);
            if m.twice_m <= 0 {
                return self.leaf(None);
            }
            if m.p == inst.v1().len() {
                let solved = regular3::solve_regular3_with(&inst, self.opts.backend)?;
                return self.leaf(solved.map(|s| s.union(&forced)));
            }

            let before = m.twice_m;
            // Step 4.
            if let Some(v) = self.first_v1(&inst, |i, v| i.graph().degree(v) <= 1) {
                inst.delete(v);
                self.record(Step::RemoveLow, before, &inst);
                continue;
            }
            // Step 5.
            if let Some(v) = double_contact(&inst) {
                inst.force(v);
                forced.insert(v);
                self.stats.forced_count += 1;
                self.record(Step::ForceDoubleContact, before, &inst);
                continue;
            }
            // Step 6.
            if let Some(v) = self.first_v1(&inst, |i, v| i.graph().degree(v) == 2) {
                inst.bypass(v)?;
                self.record(Step::Bypass, before, &inst);
                continue;
            }

            let children = self.branch(&inst)?;
            self.stats.branch_nodes += 1;
            for child in children {
                if self.opts.audit {
                    self.record(child.step, before, &child.inst);
                }
                self.stats.forced_count += child.forced.len() as u64;
                if let Some(s) = self.node(child.inst, depth + 1)? {
                    return Ok(Some(s.union(&child.forced).union(&forced)));
                }
            }
            return Ok(None);
        }
    }

    fn first_v1(
        &self,
        inst: &DisjointInstance,
        pred: impl Fn(&DisjointInstance, VertexId) -> bool,
    ) -> Option<VertexId> {
        inst.v1().iter().copied().find(|&v| pred(inst, v))
    }

    /// Steps 7 to 9. Returns the two children, forced child first.
    fn branch(&mut self, inst: &DisjointInstance) -> Result<[Child; 2]> {
        let v1_degree = |v: VertexId| inst.v1_neighbors(v).count();
        let v2_degree = |v: VertexId| inst.v2_neighbors(v).count();
        let is_leaf = |v: VertexId| v1_degree(v) <= 1 && !is_nice(inst, v);

        // Step 7.
        if let Some(w) = self.first_v1(inst, |_, v| is_leaf(v) && v2_degree(v) >= 3) {
            let mut a = inst.clone();
            a.force(w);
            let mut b = inst.clone();
            b.move_to_v2(w);
            return Ok([
                child(Step::Branch7 { forced: true }, a, [w]),
                child(Step::Branch7 { forced: false }, b, []),
            ]);
        }

        if self.opts.audit {
            for &v in inst.v1() {
                if is_leaf(v) && v2_degree(v) != 2 {
                    self.audit.violations.push(Violation {
                        step: Step::LeafShape,
                        before: v2_degree(v) as i64,
                        after: v2_degree(v) as i64,
                    });
                }
            }
        }

        // Step 8.
        let step8 = inst.v1().iter().copied().find_map(|w| {
            if !is_leaf(w) || v1_degree(w) != 1 {
                return None;
            }
            let y = inst.v1_neighbors(w).next()?;
            (v2_degree(y) >= 1).then_some((w, y))
        });
        if let Some((w, y)) = step8 {
            let mut a = inst.clone();
            a.force(y);
            a.move_to_v2(w);
            let mut b = inst.clone();
            b.move_to_v2(y);
            return Ok([
                child(Step::Branch8 { forced: true }, a, [y]),
                child(Step::Branch8 { forced: false }, b, []),
            ]);
        }

        // Step 9.
        let (w, w1) = lowest_leaf(inst)?;
        let mut a = inst.clone();
        a.force(w);
        a.move_to_v2(w1);
        let mut b = inst.clone();
        b.move_to_v2(w);
        Ok([
            child(Step::Branch9 { forced: true }, a, [w]),
            child(Step::Branch9 { forced: false }, b, []),
        ])
    }
}

fn child<const N: usize>(step: Step, inst: DisjointInstance, forced: [VertexId; N]) -> Child {
    Child {
        step,
        inst,
        forced: forced.into_iter().collect(),
    }
}

/// Smallest `v1` vertex with two edges into the same tree of `g[v2]`.
fn double_contact(inst: &DisjointInstance) -> Option<VertexId> {
    let labels = inst.v2_components();
    inst.v1().iter().copied().find(|&v| {
        let mut seen = Vec::new();
        inst.v2_neighbors(v).any(|u| {
            let c = labels.get(u);
            let dup = seen.contains(&c);
            seen.push(c);
            dup
        })
    })
}

/// Parent and deepest leaf in the tree of `g[v1]` holding the smallest
/// non-nice vertex, rooted at its smallest internal vertex.
fn lowest_leaf(inst: &DisjointInstance) -> Result<(VertexId, VertexId)> {
    let start = inst
        .v1()
        .iter()
        .copied()
        .find(|&v| !is_nice(inst, v))
        .ok_or_else(|| Error::Structural("step 9 reached with every v1 vertex nice".into()))?;
    let labels = inst.v1_components();
    let tree: Vec<VertexId> = inst
        .v1()
        .iter()
        .copied()
        .filter(|&v| labels.get(v) == labels.get(start))
        .collect();
    let root = tree
        .iter()
        .copied()
        .find(|&v| inst.v1_neighbors(v).count() >= 2)
        .ok_or_else(|| Error::Structural(format!("tree of {start} has no internal vertex")))?;

    let mut parent = std::collections::BTreeMap::new();
    let mut order = vec![(root, 0usize)];
    parent.insert(root, root);
    let mut i = 0;
    while i < order.len() {
        let (x, d) = order[i];
        for y in inst.v1_neighbors(x) {
            if let std::collections::btree_map::Entry::Vacant(e) = parent.entry(y) {
                e.insert(x);
                order.push((y, d + 1));
            }
        }
        i += 1;
    }
    let (w1, _) = order
        .iter()
        .copied()
        .max_by(|a, b| a.1.cmp(&b.1).then(b.0.cmp(&a.0)))
        .expect("tree is non-empty");
    Ok((parent[&w1], w1))
}
