//! Python bindings. Vertex ids are plain integers, 0-based.

use pyo3::exceptions::PyValueError;
use pyo3::prelude::*;

use fvs::branching::{self, FeedbackOptions};
use fvs::compression;
use fvs::{gen, graph, io, DisjointInstance, VertexId, VertexSet};

fn err(e: fvs::Error) -> PyErr {
    PyValueError::new_err(e.to_string())
}

fn to_set(ids: Vec<u32>) -> VertexSet {
    ids.into_iter().map(VertexId).collect()
}

fn to_list(f: &VertexSet) -> Vec<u32> {
    f.iter().map(|v| v.0).collect()
}

/// An undirected multigraph.
#[pyclass(name = "Graph")]
struct PyGraph {
    inner: fvs::Graph,
}

#[pymethods]
impl PyGraph {
    #[new]
    #[pyo3(signature = (n=0, edges=Vec::new()))]
    fn new(n: usize, edges: Vec<(u32, u32)>) -> PyResult<Self> {
        Ok(PyGraph {
            inner: fvs::Graph::from_edges(n, &edges).map_err(err)?,
        })
    }

    fn add_vertex(&mut self) -> u32 {
        self.inner.add_vertex().0
    }

    fn add_edge(&mut self, u: u32, v: u32) -> PyResult<u32> {
        Ok(self
            .inner
            .add_edge(VertexId(u), VertexId(v))
            .map_err(err)?
            .0)
    }

    fn remove_vertex(&mut self, v: u32) -> PyResult<()> {
        self.inner.remove_vertex(VertexId(v)).map_err(err)
    }

    fn vertex_count(&self) -> usize {
        self.inner.vertex_count()
    }

    fn edge_count(&self) -> usize {
        self.inner.edge_count()
    }

    fn vertices(&self) -> Vec<u32> {
        self.inner.vertices().map(|v| v.0).collect()
    }

    /// `(edge, u, v)` triples in edge id order.
    fn edges(&self) -> Vec<(u32, u32, u32)> {
        self.inner
            .edges()
            .map(|(e, u, v)| (e.0, u.0, v.0))
            .collect()
    }

    fn degree(&self, v: u32) -> PyResult<usize> {
        self.inner
            .contains_vertex(VertexId(v))
            .then(|| self.inner.degree(VertexId(v)))
            .ok_or_else(|| err(fvs::Error::UnknownVertex(VertexId(v))))
    }

    fn __repr__(&self) -> String {
        format!(
            "Graph(vertices={}, edges={})",
            self.inner.vertex_count(),
            self.inner.edge_count()
        )
    }
}

#[pyfunction]
fn is_fvs(g: &PyGraph, f: Vec<u32>) -> PyResult<bool> {
    graph::is_fvs(&g.inner, &to_set(f)).map_err(err)
}

#[pyfunction]
fn betti(g: &PyGraph) -> usize {
    graph::betti(&g.inner)
}

/// A cycle avoiding the given vertices, if any.
#[pyfunction]
#[pyo3(signature = (g, avoid=Vec::new()))]
fn find_cycle(g: &PyGraph, avoid: Vec<u32>) -> Option<Vec<u32>> {
    graph::find_cycle(&g.inner, &to_set(avoid)).map(|c| c.into_iter().map(|v| v.0).collect())
}

/// A minimum FVS, or one of size at most `k` (None if there is none).
#[pyfunction]
#[pyo3(signature = (g, k=None))]
fn solve(g: &PyGraph, k: Option<usize>) -> PyResult<Option<Vec<u32>>> {
    let f = match k {
        Some(k) => compression::solve_fvs_decision(&g.inner, k).map_err(err)?,
        None => Some(compression::solve_fvs_min(&g.inner).map_err(err)?),
    };
    Ok(f.as_ref().map(to_list))
}

/// An FVS of size at most `k` avoiding `v2`, whose induced subgraph and
/// complement must both be forests.
#[pyfunction]
fn disjoint(g: &PyGraph, v2: Vec<u32>, k: i64) -> PyResult<Option<Vec<u32>>> {
    let inst = DisjointInstance::with_v2(g.inner.clone(), to_set(v2), k).map_err(err)?;
    let run = branching::run_feedback(&inst, &FeedbackOptions::default()).map_err(err)?;
    Ok(run.solution.as_ref().map(to_list))
}

/// Parses the text format; returns the graph and the `s`-marked vertices.
#[pyfunction]
fn parse_graph(text: &str) -> PyResult<(PyGraph, Option<Vec<u32>>)> {
    let gf = io::parse_graph(text).map_err(err)?;
    Ok((PyGraph { inner: gf.graph }, gf.v2.as_ref().map(to_list)))
}

#[pyfunction]
#[pyo3(signature = (g, v2=None))]
fn write_graph(g: &PyGraph, v2: Option<Vec<u32>>) -> String {
    io::write_graph(&g.inner, v2.map(to_set).as_ref())
}

/// A seeded graph with a planted FVS of the given size.
#[pyfunction]
fn gen_planted(n: usize, fvs_size: usize, seed: u64) -> PyResult<(PyGraph, Vec<u32>)> {
    let (g, w) = gen::gen_planted(n, fvs_size, seed).map_err(err)?;
    Ok((PyGraph { inner: g }, to_list(&w)))
}

#[pymodule]
#[pyo3(name = "fvskit")]
fn fvskit_module(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add_class::<PyGraph>()?;
    m.add_function(wrap_pyfunction!(is_fvs, m)?)?;
    m.add_function(wrap_pyfunction!(betti, m)?)?;
    m.add_function(wrap_pyfunction!(find_cycle, m)?)?;
    m.add_function(wrap_pyfunction!(solve, m)?)?;
    m.add_function(wrap_pyfunction!(disjoint, m)?)?;
    m.add_function(wrap_pyfunction!(parse_graph, m)?)?;
    m.add_function(wrap_pyfunction!(write_graph, m)?)?;
    m.add_function(wrap_pyfunction!(gen_planted, m)?)?;
    Ok(())
}
