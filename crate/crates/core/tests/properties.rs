use proptest::prelude::*;

use fvskit::branching::{self, FeedbackOptions};
use fvskit::compression;
use fvskit::gen;
use fvskit::graph::{self, betti};
use fvskit::io;
use fvskit::oracle;
use fvskit::reductions::{self, Rule2Mode, Verdict};
use fvskit::regular3::{self, ParityBackend};
use fvskit::{Graph, VertexId, VertexSet};

/// A multigraph on 1..=9 vertices, self-loops included, plus a vertex subset.
fn graph_and_subset() -> impl Strategy<Value = (Graph, VertexSet)> {
    (1usize..=9).prop_flat_map(|n| {
        (
            prop::collection::vec((0..n as u32, 0..n as u32), 0..=16),
            prop::collection::vec(any::<bool>(), n),
        )
            .prop_map(move |(edges, mask)| {
                let g = Graph::from_edges(n, &edges).unwrap();
                let s = (0..n as u32)
                    .filter(|&i| mask[i as usize])
                    .map(VertexId)
                    .collect();
                (g, s)
            })
    })
}

fn loopless_graph() -> impl Strategy<Value = Graph> {
    (2usize..=9).prop_flat_map(|n| {
        prop::collection::vec((0..n as u32, 0..n as u32), 0..=18).prop_map(move |edges| {
            let edges: Vec<_> = edges.into_iter().filter(|(u, v)| u != v).collect();
            Graph::from_edges(n, &edges).unwrap()
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(256))]

    #[test]
    fn forest_test_agrees_with_dfs((g, s) in graph_and_subset()) {
        prop_assert_eq!(graph::is_forest(&g, &s).unwrap(), oracle::dfs_is_forest(&g, &s));
    }

    #[test]
    fn betti_zero_iff_acyclic((g, _) in graph_and_subset()) {
        prop_assert_eq!(betti(&g) == 0, graph::is_acyclic(&g));
        prop_assert_eq!(graph::find_cycle(&g, &VertexSet::new()).is_none(), graph::is_acyclic(&g));
    }

    #[test]
    fn bypass_preserves_betti((g, _) in graph_and_subset()) {
        for v in g.vertices().collect::<Vec<_>>() {
            let slots = g.incident(v);
            if slots.len() == 2 && slots[0] != slots[1] {
                let mut h = g.clone();
                graph::bypass_degree2(&mut h, v).unwrap();
                prop_assert_eq!(betti(&h), betti(&g));
                prop_assert_eq!(h.vertex_count() + 1, g.vertex_count());
            }
        }
    }

    #[test]
    fn components_ignore_edge_order((g, s) in graph_and_subset()) {
        let mut reversed = Graph::with_vertices(g.vertex_count());
        let edges: Vec<_> = g.edges().collect();
        for &(_, u, v) in edges.iter().rev() {
            reversed.add_edge(v, u).unwrap();
        }
        prop_assert_eq!(
            graph::components(&g, &s).unwrap().groups(),
            graph::components(&reversed, &s).unwrap().groups()
        );
    }

    #[test]
    fn found_cycles_are_cycles((g, avoid) in graph_and_subset()) {
        if let Some(c) = graph::find_cycle(&g, &avoid) {
            prop_assert!(c.iter().all(|v| !avoid.contains(v)));
            let distinct: VertexSet = c.iter().copied().collect();
            prop_assert_eq!(distinct.len(), c.len());
            for (i, &u) in c.iter().enumerate() {
                let v = c[(i + 1) % c.len()];
                prop_assert!(u == v || g.neighbors(u).any(|x| x == v));
            }
        } else {
            prop_assert!(graph::is_fvs(&g, &avoid).unwrap());
        }
    }

    #[test]
    fn text_format_round_trips((g, s) in graph_and_subset()) {
        let has_loop = g.edges().any(|(_, u, v)| u == v);
        let text = io::write_graph(&g, Some(&s));
        prop_assert_eq!(io::parse_graph(&text).is_err(), has_loop);
        prop_assume!(!has_loop);
        let parsed = io::parse_graph(&text).unwrap();
        prop_assert_eq!(&parsed.graph, &g);
        prop_assert_eq!(parsed.v2.unwrap_or_default(), s);
    }

    #[test]
    fn minimum_solution_is_optimal(g in loopless_graph()) {
        let f = compression::solve_fvs_min(&g).unwrap();
        prop_assert!(graph::is_fvs(&g, &f).unwrap());
        prop_assert_eq!(f.len(), oracle::brute_fvs(&g).unwrap().len());
        if !f.is_empty() {
            prop_assert!(compression::solve_fvs_decision(&g, f.len() - 1).unwrap().is_none());
        }
    }

    #[test]
    fn measure_formula(seed in any::<u64>(), n in 1usize..=12, k in 0i64..=6) {
        let inst = gen::gen_disjoint(n, k, seed).unwrap();
        let m = branching::measure(&inst);
        prop_assert_eq!(m.l, inst.v2_components().count());
        prop_assert!(m.p <= inst.v1().len());
        prop_assert_eq!(m.twice_m, 2 * k + m.l as i64 - 2 * m.p as i64);
    }

    #[test]
    fn feedback_is_sound_and_bounded(seed in any::<u64>(), n in 1usize..=12, k in 0i64..=6) {
        let inst = gen::gen_disjoint(n, k, seed).unwrap();
        let opts = FeedbackOptions { audit: true, ..Default::default() };
        let run = branching::run_feedback(&inst, &opts).unwrap();
        prop_assert!(run.audit.violations.is_empty(), "{:?}", run.audit.violations);
        prop_assert!(u128::from(run.stats.leaves) <= run.leaf_bound());
        prop_assert_eq!(run.solution.is_some(), oracle::brute_disjoint(&inst).unwrap().is_some());
        if let Some(f) = run.solution {
            prop_assert!(f.len() as i64 <= k);
            prop_assert!(f.is_subset(inst.v1()));
            prop_assert!(graph::is_fvs(inst.graph(), &f).unwrap());
        }
    }

    #[test]
    fn reductions_preserve_answers(seed in any::<u64>(), n in 1usize..=12, k in 0i64..=6, kernel in any::<bool>()) {
        let inst = gen::gen_disjoint(n, k, seed).unwrap();
        let mode = if kernel { Rule2Mode::Kernel } else { Rule2Mode::Branching };
        let expected = oracle::brute_disjoint(&inst).unwrap().is_some();
        let out = reductions::reduce_exhaustively(inst.clone(), mode);
        match out.verdict {
            Verdict::NoSolution => prop_assert!(!expected),
            Verdict::Continue => {
                let r = &out.instance;
                prop_assert_eq!(r.k() + out.forced.len() as i64, k);
                let sub = oracle::brute_disjoint(r).unwrap();
                prop_assert_eq!(sub.is_some(), expected);
                if let Some(f) = sub {
                    let full = f.union(&out.forced);
                    prop_assert!(full.is_subset(inst.v1()));
                    prop_assert!(graph::is_fvs(inst.graph(), &full).unwrap());
                }
                if kernel && expected {
                    prop_assert_eq!(reductions::kernel_bound(r).unwrap(), Verdict::Continue);
                }
            }
        }
    }

    #[test]
    fn regular3_is_minimum(seed in any::<u64>(), n in 4usize..=12) {
        let inst = gen::gen_regular3(n, n as i64, seed).unwrap();
        let f = regular3::solve_regular3(&inst).unwrap().unwrap();
        prop_assert!(f.is_subset(inst.v1()));
        prop_assert!(graph::is_fvs(inst.graph(), &f).unwrap());
        prop_assert_eq!(f.len(), oracle::brute_disjoint_min(&inst).unwrap().len());
        if !f.is_empty() {
            let mut tight = inst.clone();
            tight.set_k(f.len() as i64 - 1);
            prop_assert!(regular3::solve_regular3(&tight).unwrap().is_none());
        }
    }

    #[test]
    fn parity_backends_agree(seed in any::<u64>(), n in 3usize..=8, parity_seed in any::<u64>()) {
        let inst = gen::gen_regular3(n, 0, seed).unwrap();
        if let Ok(sg) = regular3::shrink_v2(&inst) {
            let ps = regular3::subdivide(&sg).unwrap();
            prop_assume!(ps.pair_count() <= 10);
            let fast = regular3::matroid_parity(&ps, ParityBackend::Algebraic { seed: parity_seed }).unwrap();
            let slow = regular3::matroid_parity(&ps, ParityBackend::Exhaustive).unwrap();
            prop_assert!(ps.is_feasible(&fast));
            prop_assert!(ps.is_feasible(&slow));
            prop_assert_eq!(fast.len(), slow.len());
            prop_assert_eq!(slow.len(), oracle::brute_parity(&ps).unwrap().len());
        }
    }
}
