//! Acceptance suite: one PASS/FAIL line per criterion.

use std::process::Command;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use fvskit::branching::{self, FeedbackOptions};
use fvskit::compression::{self, CompressionOptions};
use fvskit::gen::{self, EdgeMode};
use fvskit::graph::{self, betti};
use fvskit::oracle;
use fvskit::reductions::{self, Rule2Mode, Verdict};
use fvskit::regular3::{self, ParityBackend};
use fvskit::{DisjointInstance, Graph};

struct Outcome {
    pass: bool,
    detail: String,
}

fn params(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed ^ 0xacce_97a9_ce00)
}

fn random_graph(seed: u64) -> Graph {
    let mut rng = params(seed);
    let n = rng.gen_range(1..=12usize);
    let (mode, max_m) = if seed.is_multiple_of(2) {
        (EdgeMode::Simple, (n * (n - 1) / 2).min(24))
    } else if n >= 2 {
        (EdgeMode::Multi, 24)
    } else {
        (EdgeMode::Multi, 0)
    };
    let m = rng.gen_range(0..=max_m);
    gen::gen_random(n, m, seed, mode).unwrap()
}

fn disjoint_corpus() -> Vec<DisjointInstance> {
    (0..500)
        .map(|seed| {
            let n = params(seed).gen_range(1..=12usize);
            gen::gen_disjoint(n, 0, seed).unwrap()
        })
        .collect()
}

fn with_k(inst: &DisjointInstance, k: i64) -> DisjointInstance {
    let mut out = inst.clone();
    out.set_k(k);
    out
}

fn criterion1() -> Outcome {
    let audit = CompressionOptions {
        feedback: FeedbackOptions {
            audit: true,
            ..Default::default()
        },
        parallel: false,
    };
    let mut mismatches = Vec::new();
    let mut work_violations = 0;
    let mut reductions = 0;
    let mut total_min = 0;
    for seed in 0..500 {
        let g = random_graph(seed);
        let report = compression::solve_fvs_min_with(&g, &audit).unwrap();
        let f = report.solution.unwrap();
        let expected = oracle::brute_fvs(&g).unwrap().len();
        total_min += expected;
        if f.len() != expected || !graph::is_fvs(&g, &f).unwrap() {
            mismatches.push(seed);
        }
        work_violations += report.audit.work_violations;
        reductions += report.audit.reduction_calls;
    }
    WORK.with(|w| w.set((reductions, work_violations)));
    Outcome {
        pass: mismatches.is_empty(),
        detail: format!(
            "500 graphs, total oracle minimum {total_min}, mismatches {:?}",
            mismatches
        ),
    }
}

thread_local! {
    static WORK: std::cell::Cell<(u64, u64)> = const { std::cell::Cell::new((0, 0)) };
}

struct DisjointFindings {
    decisions: usize,
    mismatches: Vec<(usize, i64)>,
    transitions: u64,
    measure_violations: usize,
    runs: usize,
    leaf_violations: usize,
    clamped_roots: usize,
    kernel_checks: usize,
    kernel_violations: Vec<(usize, i64)>,
}

fn run_disjoint_corpus(corpus: &[DisjointInstance]) -> DisjointFindings {
    let opts = FeedbackOptions {
        audit: true,
        ..Default::default()
    };
    let mut out = DisjointFindings {
        decisions: 0,
        mismatches: Vec::new(),
        transitions: 0,
        measure_violations: 0,
        runs: 0,
        leaf_violations: 0,
        clamped_roots: 0,
        kernel_checks: 0,
        kernel_violations: Vec::new(),
    };
    for (i, base) in corpus.iter().enumerate() {
        let min = oracle::brute_disjoint_min(base).unwrap().len() as i64;
        for k in 0..=base.v1().len() as i64 {
            let inst = with_k(base, k);
            let oracle_yes = min <= k;

            let run = branching::run_feedback(&inst, &opts).unwrap();
            out.decisions += 1;
            out.runs += 1;
            let sound = match &run.solution {
                Some(f) => {
                    f.len() as i64 <= k
                        && f.is_subset(inst.v1())
                        && graph::is_fvs(inst.graph(), f).unwrap()
                }
                None => true,
            };
            if run.solution.is_some() != oracle_yes || !sound {
                out.mismatches.push((i, k));
            }
            out.transitions += run.audit.transitions;
            out.measure_violations += run.audit.violations.len();
            if u128::from(run.stats.leaves) > run.leaf_bound() {
                out.leaf_violations += 1;
            }
            if run.root.ceil() < 0 {
                out.clamped_roots += 1;
            }

            let reduced = reductions::reduce_exhaustively(inst, Rule2Mode::Kernel);
            out.kernel_checks += 1;
            let consistent = match reduced.verdict {
                Verdict::NoSolution => !oracle_yes,
                Verdict::Continue => {
                    let r = &reduced.instance;
                    let rejected = reductions::kernel_bound(r).unwrap() == Verdict::NoSolution;
                    let within = r.v1().len() as i64 <= reductions::kernel_size_bound(r);
                    !(oracle_yes && (rejected || !within))
                }
            };
            if !consistent {
                out.kernel_violations.push((i, k));
            }
        }
    }
    out
}

fn criterion3() -> Outcome {
    let mut bad = Vec::new();
    let mut nontrivial = 0;
    for seed in 0..200 {
        let n = params(seed).gen_range(4..=14usize);
        let inst = gen::gen_regular3(n, n as i64, seed).unwrap();
        let f = regular3::solve_regular3(&inst).unwrap().unwrap();
        let mu = oracle::brute_mu(&inst).unwrap();
        let min = oracle::brute_disjoint_min(&inst).unwrap().len();
        let sound = f.is_subset(inst.v1()) && graph::is_fvs(inst.graph(), &f).unwrap();
        if !sound || f.len() != betti(inst.graph()) - mu || f.len() != min {
            bad.push(seed);
        }
        if mu > 0 {
            nontrivial += 1;
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!("200 instances ({nontrivial} with mu > 0), mismatches {bad:?}"),
    }
}

fn criterion4() -> Outcome {
    let mut collected = 0;
    let mut bad = Vec::new();
    let mut total_pairs = 0;
    let mut seed = 0u64;
    while collected < 100 {
        seed += 1;
        let n = params(seed).gen_range(3..=9usize);
        let inst = gen::gen_regular3(n, 0, seed).unwrap();
        let Ok(sg) = regular3::shrink_v2(&inst) else {
            continue;
        };
        let ps = regular3::subdivide(&sg).unwrap();
        if ps.pair_count() == 0 || ps.pair_count() > 8 {
            continue;
        }
        collected += 1;
        let fast = regular3::matroid_parity(&ps, ParityBackend::Algebraic { seed }).unwrap();
        let exact = oracle::brute_parity(&ps).unwrap();
        total_pairs += exact.len();
        if fast.len() != exact.len() || !ps.is_feasible(&fast) {
            bad.push(seed);
        }
    }
    Outcome {
        pass: bad.is_empty(),
        detail: format!(
            "100 subdivisions (seeds up to {seed}), summed parity {total_pairs}, mismatches {bad:?}"
        ),
    }
}

fn criterion8() -> Outcome {
    let dir = tempfile::tempdir().unwrap();
    let mut worst = Duration::ZERO;
    let mut failures = Vec::new();
    for seed in 0..10 {
        let (g, witness) = gen::gen_planted(200, 12, seed).unwrap();
        let path = dir.path().join(format!("planted{seed}.gr"));
        std::fs::write(&path, fvskit::io::write_graph(&g, None)).unwrap();
        let start = Instant::now();
        let out = Command::new(env!("CARGO_BIN_EXE_fvskit"))
            .args(["solve", path.to_str().unwrap(), "--min"])
            .output()
            .unwrap();
        let elapsed = start.elapsed();
        worst = worst.max(elapsed);
        let solution = fvskit::io::parse_solution(&String::from_utf8_lossy(&out.stdout));
        let ok = out.status.code() == Some(0)
            && elapsed < Duration::from_secs(60)
            && match solution {
                Ok(Some(f)) => f.len() <= witness.len() && graph::is_fvs(&g, &f).unwrap(),
                _ => false,
            };
        if !ok {
            failures.push(seed);
        }
    }
    Outcome {
        pass: failures.is_empty(),
        detail: format!(
            "10 seeds, slowest {:.2}s, failures {failures:?}",
            worst.as_secs_f64()
        ),
    }
}

fn petersen() -> Graph {
    let mut edges = Vec::new();
    for i in 0..5 {
        edges.push((i, (i + 1) % 5));
        edges.push((i, i + 5));
        edges.push((i + 5, (i + 2) % 5 + 5));
    }
    Graph::from_edges(10, &edges).unwrap()
}

fn criterion9() -> Outcome {
    let mut named: Vec<(String, Graph, usize)> = vec![
        (
            "K4".into(),
            Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap(),
            2,
        ),
        ("Petersen".into(), petersen(), 3),
        (
            "C2".into(),
            Graph::from_edges(2, &[(0, 1), (1, 0)]).unwrap(),
            1,
        ),
    ];
    for n in 3..=12u32 {
        let edges: Vec<(u32, u32)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        named.push((
            format!("C{n}"),
            Graph::from_edges(n as usize, &edges).unwrap(),
            1,
        ));
    }
    for seed in 0..10u64 {
        let mut rng = params(seed);
        let n = rng.gen_range(1..=12u32);
        let mut edges = Vec::new();
        for i in 1..n {
            if rng.gen_bool(0.8) {
                edges.push((rng.gen_range(0..i), i));
            }
        }
        named.push((
            format!("forest{seed}"),
            Graph::from_edges(n as usize, &edges).unwrap(),
            0,
        ));
    }
    let mut wrong = Vec::new();
    for (name, g, expected) in &named {
        let f = compression::solve_fvs_min(g).unwrap();
        let brute = oracle::brute_fvs(g).unwrap().len();
        if f.len() != *expected || brute != *expected || !graph::is_fvs(g, &f).unwrap() {
            wrong.push(name.clone());
        }
    }
    Outcome {
        pass: wrong.is_empty(),
        detail: format!("{} named graphs, wrong {wrong:?}", named.len()),
    }
}

fn timed(limit: Duration, f: impl FnOnce() -> Outcome) -> Outcome {
    let start = Instant::now();
    let mut o = f();
    let elapsed = start.elapsed();
    o.detail = format!(
        "{}; {:.1}s (limit {}s)",
        o.detail,
        elapsed.as_secs_f64(),
        limit.as_secs()
    );
    o.pass &= elapsed < limit;
    o
}

fn report(id: u32, name: &str, o: &Outcome) -> bool {
    println!(
        "criterion {id} {}: {name}: {}",
        if o.pass { "PASS" } else { "FAIL" },
        o.detail
    );
    o.pass
}

fn main() {
    let mut all = true;

    let c1 = timed(Duration::from_secs(120), criterion1);
    all &= report(1, "full solver matches brute force", &c1);

    let corpus = disjoint_corpus();
    let start = Instant::now();
    let d = run_disjoint_corpus(&corpus);
    let corpus_time = start.elapsed();
    let c2 = Outcome {
        pass: d.mismatches.is_empty() && corpus_time < Duration::from_secs(300),
        detail: format!(
            "{} decisions over 500 instances, mismatches {:?}; {:.1}s (limit 300s)",
            d.decisions,
            d.mismatches,
            corpus_time.as_secs_f64()
        ),
    };
    all &= report(2, "disjoint solver matches brute force", &c2);

    let c3 = timed(Duration::from_secs(300), criterion3);
    all &= report(3, "regular3 size = betti - mu = brute minimum", &c3);

    let c4 = timed(Duration::from_secs(60), criterion4);
    all &= report(4, "parity backend matches brute force", &c4);

    let c5 = Outcome {
        pass: d.measure_violations == 0 && d.transitions > 0,
        detail: format!(
            "{} audited transitions, {} violations",
            d.transitions, d.measure_violations
        ),
    };
    all &= report(5, "measure discipline", &c5);

    let (reductions_run, work_violations) = WORK.with(|w| w.get());
    let c6 = Outcome {
        pass: d.leaf_violations == 0 && work_violations == 0,
        detail: format!(
            "{} feedback runs with {} over max(1, 2^ceil(m0)) ({} rooted at m0 <= -1); \
             {} compression steps with {} over the work bound",
            d.runs, d.leaf_violations, d.clamped_roots, reductions_run, work_violations
        ),
    };
    all &= report(6, "leaf bounds", &c6);

    let c7 = Outcome {
        pass: d.kernel_violations.is_empty(),
        detail: format!(
            "{} reduced instances, violations {:?}",
            d.kernel_checks, d.kernel_violations
        ),
    };
    all &= report(7, "kernel bound soundness", &c7);

    let c8 = criterion8();
    all &= report(8, "planted n=200 solves under 60s", &c8);

    let c9 = criterion9();
    all &= report(9, "named instances", &c9);

    if !all {
        std::process::exit(1);
    }
}
