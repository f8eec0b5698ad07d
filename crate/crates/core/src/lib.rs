//! Critical groups of finite connected multigraphs.
//!
//! The critical group (sandpile group, Jacobian) of a connected multigraph is
//! the group of degree-zero chip configurations modulo firing moves. It is
//! computed here exactly from the Smith normal form of the reduced Laplacian.
//! Around that core the crate provides:
//!
//! - [`graph`]: multigraphs with edge multiplicities, wedge sums, path
//!   attachment and polygon stacks,
//! - [`linalg`]: big-integer matrices, Bareiss determinants and Smith normal
//!   form with unimodular transforms,
//! - [`group`]: reduced Laplacians, invariant factors, element orders,
//!   equivalence and generating pairs,
//! - [`chip`]: configurations, fire/borrow moves and the constructive
//!   reductions onto a single pair of vertices,
//! - [`sequences`]: spanning tree recurrences for polygon stacks and their
//!   closed forms in exact quadratic arithmetic,
//! - [`verify`]: brute-force oracles, Lorenzini-style coprimality checks and a
//!   seeded search harness,
//! - [`cli`]: the command dispatcher behind the `critgroup` binary.
//!
//! ```
//! use critgroup::graph::{cycle_graph, wedge_sum};
//! use critgroup::group::critical_group;
//!
//! let g = wedge_sum(&cycle_graph(3)?, 0, &cycle_graph(5)?, 0)?;
//! let kg = critical_group(&g)?;
//! assert_eq!(kg.invariant_factors, vec![15u32.into()]);
//! # Ok::<(), critgroup::Error>(())
//! ```

pub mod chip;
pub mod cli;
mod error;
pub mod graph;
pub mod group;
pub mod linalg;
pub mod sequences;
pub mod verify;

pub use error::{Error, Result};
