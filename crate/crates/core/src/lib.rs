//! Exact solvers for the undirected feedback vertex set problem.
//!
//! The crate is organised bottom-up:
//!
//! * [`graph`]: multigraph substrate with forest and spanning-tree primitives.
//! * [`reductions`]: safe rules and the kernel-size rejection for disjoint-FVS.
//! * [`regular3`]: polynomial solver for instances whose `v1` vertices all have
//!   degree three, through cographic matroid parity.
//! * [`branching`]: measure-guided branch-and-search for general disjoint-FVS.
//! * [`compression`]: iterative compression, giving the full FVS solver.
//! * [`oracle`]: brute-force ground truth used by the test suites.
//! * [`io`], [`gen`], [`bench`]: file formats, instance generators and the
//!   benchmark harness behind the command-line tool.

pub mod bench;
pub mod branching;
pub mod compression;
pub mod dsu;
pub mod error;
pub mod gen;
pub mod graph;
pub mod instance;
pub mod io;
pub mod oracle;
pub mod reductions;
pub mod regular3;

pub use error::{Error, Result};
pub use graph::{EdgeId, Graph, VertexId, VertexSet};
pub use instance::DisjointInstance;
