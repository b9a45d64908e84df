//! Exact solvers for tree partitioning.
//!
//! Given a tree on `n` vertices, a cut budget `k`, and group sizes
//! `s_1..s_b`, the problem asks whether removing (at most or exactly) `k`
//! edges lets the resulting components be grouped so that group `i` holds
//! exactly `s_i` vertices. The balanced special case fixes all `s_i = n/b`.
//!
//! The crate provides:
//!
//! - [`dp::solve`], a dynamic program over per-vertex tables of
//!   σ-representation states whose size stays subexponential in `n`, with
//!   full witness reconstruction;
//! - [`oracle`], brute-force reference deciders used as ground truth;
//! - [`verify::verify_solution`], an independent checker for any candidate
//!   solution;
//! - [`generators`], instance constructions: nice binary trees, stars, the
//!   reduction trees from 3-Partition and multicolored clique together with
//!   their certificate cuts, and the general-to-balanced reduction.
//!
//! The crate is `no_std` (alloc only); parsing, file formats, the CLI and
//! the benchmark harness live in the companion `treepart-cli` crate.

#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod components;
pub mod dp;
pub mod generators;
pub mod instance;
pub mod oracle;
pub mod partitions;
pub mod tree;
pub mod verify;

pub use instance::{BudgetMode, CutSolution, Instance, InstanceError};
pub use tree::{Tree, TreeError, VertexId};
pub use verify::{verify_solution, Violation};
