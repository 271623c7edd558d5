//! Text formats.
//!
//! A graph file starts with `p fvs <n> <m>` and then lists exactly `m` edges
//! `<u> <v>` with 1-based vertex ids. Lines `s <v>` put `v` into `v2`, lines
//! starting with `c` are comments. Vertex `i` of the file becomes
//! `VertexId(i - 1)`; solutions are printed in file numbering.

use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GraphFile {
    pub graph: Graph,
    /// Vertices marked by `s` records, if the file has any.
    pub v2: Option<VertexSet>,
}

pub fn parse_graph(text: &str) -> Result<GraphFile> {
    let mut header: Option<(usize, usize)> = None;
    let mut graph = Graph::new();
    let mut edges_seen = 0;
    let mut v2: Option<VertexSet> = None;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let Some((n, m)) = header else {
            header = Some(parse_header(&fields, line_no)?);
            graph = Graph::with_vertices(header.unwrap().0);
            continue;
        };
        if fields[0] == "s" {
            if fields.len() != 2 {
                return Err(Error::parse(line_no, "expected `s <v>`"));
            }
            let v = parse_vertex(fields[1], n, line_no)?;
            v2.get_or_insert_with(VertexSet::new).insert(v);
            continue;
        }
        if fields.len() != 2 {
            return Err(Error::parse(
                line_no,
                format!("expected an edge `<u> <v>`, got `{line}`"),
            ));
        }
        let u = parse_vertex(fields[0], n, line_no)?;
        let v = parse_vertex(fields[1], n, line_no)?;
        if u == v {
            return Err(Error::parse(
                line_no,
                format!("self-loop at vertex {}", u.0 + 1),
            ));
        }
        edges_seen += 1;
        if edges_seen > m {
            return Err(Error::parse(
                line_no,
                format!("more than the declared {m} edges"),
            ));
        }
        graph.add_edge(u, v)?;
    }

    let Some((_, m)) = header else {
        return Err(Error::parse(
            last_line.max(1),
            "missing `p fvs <n> <m>` header",
        ));
    };
    if edges_seen != m {
        return Err(Error::parse(
            last_line.max(1),
            format!("declared {m} edges but found {edges_seen}"),
        ));
    }
    Ok(GraphFile { graph, v2 })
}

fn parse_header(fields: &[&str], line_no: usize) -> Result<(usize, usize)> {
    let bad = || Error::parse(line_no, "expected header `p fvs <n> <m>`");
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "fvs" {
        return Err(bad());
    }
    let n = fields[2].parse().map_err(|_| bad())?;
    let m = fields[3].parse().map_err(|_| bad())?;
    if n > u32::MAX as usize {
        return Err(Error::parse(line_no, "too many vertices"));
    }
    Ok((n, m))
}

fn parse_vertex(field: &str, n: usize, line_no: usize) -> Result<VertexId> {
    let id: usize = field
        .parse()
        .map_err(|_| Error::parse(line_no, format!("`{field}` is not a vertex id")))?;
    if id == 0 || id > n {
        return Err(Error::parse(
            line_no,
            format!("vertex {id} is outside 1..={n}"),
        ));
    }
    Ok(VertexId(id as u32 - 1))
}

/// Serializes `g`, renumbering its live vertices `1..=n` in ascending id order.
pub fn write_graph(g: &Graph, v2: Option<&VertexSet>) -> String {
    let mut index = vec![0usize; g.vertex_bound()];
    for (i, v) in g.vertices().enumerate() {
        index[v.index()] = i + 1;
    }
    let mut out = format!("p fvs {} {}\n", g.vertex_count(), g.edge_count());
    for (_, u, v) in g.edges() {
        let _ = writeln!(out, "{} {}", index[u.index()], index[v.index()]);
    }
    if let Some(v2) = v2 {
        for v in v2.iter() {
            let _ = writeln!(out, "s {}", index[v.index()]);
        }
    }
    out
}

/// `YES <size>` followed by the vertices one per line, or `NO`.
pub fn write_solution(result: Option<&VertexSet>) -> String {
    match result {
        None => "NO\n".to_string(),
        Some(f) => {
            let mut out = format!("YES {}\n", f.len());
            for v in f.iter() {
                let _ = writeln!(out, "{}", v.0 + 1);
            }
            out
        }
    }
}

/// Reads the output of [`write_solution`] back.
pub fn parse_solution(text: &str) -> Result<Option<VertexSet>> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty());
    let Some((line_no, first)) = lines.next() else {
        return Err(Error::parse(1, "empty solution"));
    };
    if first == "NO" {
        return Ok(None);
    }
    let size: usize = first
        .strip_prefix("YES ")
        .and_then(|s| s.trim().parse().ok())
        .ok_or_else(|| Error::parse(line_no, "expected `YES <size>` or `NO`"))?;
    let mut f = VertexSet::new();
    for (line_no, l) in lines {
        let id: u32 = l
            .parse()
            .map_err(|_| Error::parse(line_no, format!("`{l}` is not a vertex id")))?;
        if id == 0 {
            return Err(Error::parse(line_no, "vertex ids start at 1"));
        }
        f.insert(VertexId(id - 1));
    }
    if f.len() != size {
        return Err(Error::parse(
            line_no,
            format!("declared size {size} but listed {} vertices", f.len()),
        ));
    }
    Ok(Some(f))
}
