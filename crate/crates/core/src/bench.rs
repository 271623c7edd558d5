//! Benchmark harness over a directory of graph files.

use std::path::{Path, PathBuf};
use std::time::Instant;

use rayon::prelude::*;

use crate::compression::{self, CompressionOptions};
use crate::error::{Error, Result};
use crate::io;

#[derive(Clone, Debug, PartialEq)]
pub struct BenchRecord {
    pub instance: String,
    pub n: usize,
    pub m: usize,
    pub k: usize,
    pub answer: bool,
    pub size: Option<usize>,
    pub branch_nodes: u64,
    pub leaves: u64,
    pub time_ms: f64,
}

pub const CSV_HEADER: [&str; 9] = [
    "instance",
    "n",
    "m",
    "k",
    "answer",
    "size",
    "branch_nodes",
    "leaves",
    "time_ms",
];

/// Solves one graph: the decision problem for `k`, or the minimum when `k`
/// is `None` (then `k` is reported as the minimum found).
pub fn bench_graph(
    name: &str,
    text: &str,
    k: Option<usize>,
    opts: &CompressionOptions,
) -> Result<BenchRecord> {
    let gf = io::parse_graph(text)?;
    let g = &gf.graph;
    let start = Instant::now();
    let report = match k {
        Some(k) => compression::solve_fvs_decision_with(g, k, opts)?,
        None => compression::solve_fvs_min_with(g, opts)?,
    };
    let time_ms = start.elapsed().as_secs_f64() * 1000.0;
    let size = report.solution.as_ref().map(|f| f.len());
    Ok(BenchRecord {
        instance: name.to_string(),
        n: g.vertex_count(),
        m: g.edge_count(),
        k: k.or(size).unwrap_or(0),
        answer: size.is_some(),
        size,
        branch_nodes: report.stats.branch_nodes,
        leaves: report.stats.leaves,
        time_ms,
    })
}

/// Graph files (`*.gr`) in `dir`, sorted by file name.
pub fn graph_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let entries = std::fs::read_dir(dir)
        .map_err(|e| Error::InvalidParameters(format!("{}: {e}", dir.display())))?;
    let mut files: Vec<PathBuf> = entries
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "gr"))
        .collect();
    files.sort();
    Ok(files)
}

/// Benchmarks every graph file in `dir` in parallel. Records come back in
/// file-name order.
pub fn bench_dir(
    dir: &Path,
    k: Option<usize>,
    opts: &CompressionOptions,
) -> Result<Vec<BenchRecord>> {
    graph_files(dir)?
        .par_iter()
        .map(|path| {
            let text = std::fs::read_to_string(path)
                .map_err(|e| Error::InvalidParameters(format!("{}: {e}", path.display())))?;
            let name = path
                .file_name()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            bench_graph(&name, &text, k, opts).map_err(|e| match e {
                Error::Parse { line, message } => Error::Parse {
                    line,
                    message: format!("{name}: {message}"),
                },
                other => other,
            })
        })
        .collect()
}

pub fn write_csv<W: std::io::Write>(records: &[BenchRecord], out: W) -> std::io::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for r in records {
        w.write_record([
            r.instance.clone(),
            r.n.to_string(),
            r.m.to_string(),
            r.k.to_string(),
            if r.answer { "yes" } else { "no" }.to_string(),
            r.size.map_or(String::new(), |s| s.to_string()),
            r.branch_nodes.to_string(),
            r.leaves.to_string(),
            format!("{:.3}", r.time_ms),
        ])?;
    }
    w.flush()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_record() {
        let r = bench_graph(
            "t.gr",
            "p fvs 3 3\n1 2\n2 3\n3 1\n",
            None,
            &Default::default(),
        )
        .unwrap();
        assert_eq!((r.n, r.m, r.k, r.answer, r.size), (3, 3, 1, true, Some(1)));
        let r = bench_graph(
            "t.gr",
            "p fvs 3 3\n1 2\n2 3\n3 1\n",
            Some(0),
            &Default::default(),
        )
        .unwrap();
        assert!(!r.answer);
        assert_eq!(r.size, None);
    }

    #[test]
    fn csv_schema() {
        let r = BenchRecord {
            instance: "a,b.gr".into(),
            n: 3,
            m: 3,
            k: 1,
            answer: true,
            size: Some(1),
            branch_nodes: 0,
            leaves: 2,
            time_ms: 0.5,
        };
        let mut buf = Vec::new();
        write_csv(&[r], &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(
            text,
            "instance,n,m,k,answer,size,branch_nodes,leaves,time_ms\n\"a,b.gr\",3,3,1,yes,1,0,2,0.500\n"
        );
    }
}
