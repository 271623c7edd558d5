//! Iterative compression: the full FVS solver on top of the disjoint solver.

use itertools::Itertools;
use rayon::prelude::*;

use crate::branching::{self, FeedbackOptions, SearchStats, Violation};
use crate::error::{Error, Result};
use crate::graph::{self, Graph, VertexSet};
use crate::instance::DisjointInstance;

#[derive(Clone, Debug, Default)]
pub struct CompressionOptions {
    pub feedback: FeedbackOptions,
    /// Try the subsets of one compression step on the rayon pool. The first
    /// success in sequential order is still the one returned, but search
    /// statistics then include speculative work.
    pub parallel: bool,
}

/// Instrumentation gathered across compression steps when auditing.
#[derive(Clone, Debug, Default)]
pub struct CompressionAudit {
    pub feedback_runs: u64,
    /// Feedback runs whose leaf count exceeded the bound of their root measure.
    pub leaf_violations: u64,
    pub reduction_calls: u64,
    /// Compression steps whose summed leaves exceeded [`work_bound`].
    pub work_violations: u64,
    pub transitions: u64,
    pub measure_violations: Vec<Violation>,
}

impl CompressionAudit {
    pub fn is_clean(&self) -> bool {
        self.leaf_violations == 0 && self.work_violations == 0 && self.measure_violations.is_empty()
    }

    fn absorb(&mut self, other: CompressionAudit) {
        self.feedback_runs += other.feedback_runs;
        self.leaf_violations += other.leaf_violations;
        self.reduction_calls += other.reduction_calls;
        self.work_violations += other.work_violations;
        self.transitions += other.transitions;
        self.measure_violations.extend(other.measure_violations);
    }
}

#[derive(Clone, Debug, Default)]
pub struct CompressionReport {
    pub solution: Option<VertexSet>,
    pub stats: SearchStats,
    pub audit: CompressionAudit,
}

/// `Σ_{j=0..k} C(k+1, k-j) · 2^⌈j + (j+1)/2⌉`, saturating.
pub fn work_bound(k: usize) -> u128 {
    (0..=k)
        .map(|j| {
            let exponent = j + (j + 2) / 2;
            let power = if exponent >= 127 {
                u128::MAX
            } else {
                1u128 << exponent
            };
            binomial(k as u128 + 1, (k - j) as u128).saturating_mul(power)
        })
        .fold(0u128, |acc, x| acc.saturating_add(x))
}

fn binomial(n: u128, r: u128) -> u128 {
    let r = r.min(n - r);
    (0..r).fold(1u128, |acc, i| acc.saturating_mul(n - i) / (i + 1))
}

/// Given an FVS `f_big` of size `k + 1`, finds one of size at most `k`.
pub fn fvs_reduction(g: &Graph, f_big: &VertexSet, k: usize) -> Result<Option<VertexSet>> {
    Ok(fvs_reduction_with(g, f_big, k, &CompressionOptions::default())?.solution)
}

pub fn fvs_reduction_with(
    g: &Graph,
    f_big: &VertexSet,
    k: usize,
    opts: &CompressionOptions,
) -> Result<CompressionReport> {
    if f_big.len() != k + 1 {
        return Err(Error::precondition(format!(
            "compression needs {} vertices, got {}",
            k + 1,
            f_big.len()
        )));
    }
    if !graph::is_fvs(g, f_big)? {
        return Err(Error::precondition("the given set is not an FVS"));
    }
    let trials: Vec<(usize, VertexSet)> = (0..=k)
        .flat_map(|j| {
            f_big
                .iter()
                .copied()
                .combinations(k - j)
                .map(move |s| (j, s.into_iter().collect::<VertexSet>()))
        })
        .filter(|(_, s)| graph::is_forest(g, &f_big.difference(s)).unwrap_or(false))
        .collect();

    let attempt = |(j, kept): &(usize, VertexSet)| -> Result<(Option<VertexSet>, Trial)> {
        let inst = DisjointInstance::new(
            g.without(kept),
            g.vertex_set().difference(f_big),
            f_big.difference(kept),
            *j as i64,
        )?;
        let run = branching::run_feedback(&inst, &opts.feedback)?;
        let trial = Trial {
            stats: run.stats.clone(),
            over_bound: u128::from(run.stats.leaves) > run.leaf_bound(),
            transitions: run.audit.transitions,
            violations: run.audit.violations,
        };
        Ok((run.solution.map(|s| s.union(kept)), trial))
    };

    let mut report = CompressionReport::default();
    let tally = |trial: Trial, report: &mut CompressionReport| {
        report.stats.absorb(&trial.stats);
        report.audit.feedback_runs += 1;
        report.audit.leaf_violations += u64::from(trial.over_bound);
        report.audit.transitions += trial.transitions;
        report.audit.measure_violations.extend(trial.violations);
    };
    if opts.parallel {
        let results: Vec<Result<(Option<VertexSet>, Trial)>> =
            trials.par_iter().map(attempt).collect();
        for r in results {
            let (solution, trial) = r?;
            tally(trial, &mut report);
            if solution.is_some() && report.solution.is_none() {
                report.solution = solution;
            }
        }
    } else {
        for t in &trials {
            let (solution, trial) = attempt(t)?;
            tally(trial, &mut report);
            if solution.is_some() {
                report.solution = solution;
                break;
            }
        }
    }
    report.audit.reduction_calls = 1;
    if u128::from(report.stats.leaves) > work_bound(k) {
        report.audit.work_violations = 1;
    }
    Ok(report)
}

struct Trial {
    stats: SearchStats,
    over_bound: bool,
    transitions: u64,
    violations: Vec<Violation>,
}

/// An FVS of size at most `k`, if one exists.
pub fn solve_fvs_decision(g: &Graph, k: usize) -> Result<Option<VertexSet>> {
    Ok(solve_fvs_decision_with(g, k, &CompressionOptions::default())?.solution)
}

/// Grows the graph one vertex at a time in ascending id order, keeping an
/// FVS of the processed prefix and compressing it whenever it reaches `k + 1`.
pub fn solve_fvs_decision_with(
    g: &Graph,
    k: usize,
    opts: &CompressionOptions,
) -> Result<CompressionReport> {
    let mut report = CompressionReport::default();
    let mut prefix = VertexSet::new();
    let mut f = VertexSet::new();
    for v in g.vertices() {
        prefix.insert(v);
        let sub = g.induced(&prefix);
        if prefix.len() <= k + 1 || !graph::is_fvs(&sub, &f)? {
            f.insert(v);
        }
        if f.len() == k + 1 {
            let step = fvs_reduction_with(&sub, &f, k, opts)?;
            report.stats.absorb(&step.stats);
            report.audit.absorb(step.audit);
            match step.solution {
                Some(smaller) => f = smaller,
                None => return Ok(report),
            }
        }
    }
    debug_assert!(graph::is_fvs(g, &f)?);
    report.solution = Some(f);
    Ok(report)
}

/// A minimum FVS, found by trying `k = 0, 1, ...`.
pub fn solve_fvs_min(g: &Graph) -> Result<VertexSet> {
    let report = solve_fvs_min_with(g, &CompressionOptions::default())?;
    Ok(report.solution.expect("every graph has an FVS"))
}

pub fn solve_fvs_min_with(g: &Graph, opts: &CompressionOptions) -> Result<CompressionReport> {
    let mut total = CompressionReport::default();
    for k in 0..=g.vertex_count() {
        let report = solve_fvs_decision_with(g, k, opts)?;
        total.stats.absorb(&report.stats);
        total.audit.absorb(report.audit);
        if report.solution.is_some() {
            total.solution = report.solution;
            return Ok(total);
        }
    }
    Err(Error::Structural(
        "no FVS found up to the vertex count".into(),
    ))
}
