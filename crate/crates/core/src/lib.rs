//! Hop domination and 2-step domination: exact solvers, gadget reductions
//! from vertex cover, unit-disk constructions and a verification harness.
//!
//! ```
//! use hopdomlab::{parse_graph, reduce, solve_minimum, Family, Problem, ReductionKind};
//!
//! let g1 = parse_graph("3 2\n0 1\n1 2\n")?;
//! let kind = ReductionKind::new(Problem::HopDom, Family::DRegular(4))?;
//! let red = reduce(kind, &g1)?;
//! let gamma = solve_minimum(&red.output, Problem::HopDom, None, true).optimum;
//! let tau = solve_minimum(&g1, Problem::VertexCover, None, true).optimum;
//! assert_eq!(gamma, tau.map(|t| t + red.offset));
//! # Ok::<(), hopdomlab::Error>(())
//! ```

pub mod error;
pub mod geometry;
pub mod graph;
pub mod reduction;
pub mod solver;
pub mod verify;

pub use error::{Error, Result};
pub use graph::{parse_graph, serialize_graph, Graph, GraphBuilder, VertexSet};
pub use solver::{solve_minimum, Problem, SolveResult};
pub use reduction::{reduce, Family, Reduction, ReductionKind};
