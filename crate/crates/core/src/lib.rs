//! Algebraic models of stable homotopy one-types.
//!
//! A stable one-type is modeled by a Picard groupoid, and every Picard
//! groupoid is equivalent to a skeletal one `T(G, M, (h, c))` presented by a
//! symmetric 3-cocycle. This crate computes with those presentations:
//!
//! * [`abelian`]: finitely generated abelian groups, Smith normal form,
//!   kernels, cokernels and exactness.
//! * [`cocycle`]: symmetric 3-cocycles, coboundaries, `H³_sym(G; M)` and
//!   quadratic maps.
//! * [`picard`]: presented groupoids, symmetric monoidal functors,
//!   strictification to permutative form and equivalence testing.
//! * [`sphere`]: the truncated sphere `𝕊`, the sign functor from finite sets
//!   and the action of `𝕊` on a permutative groupoid.
//! * [`cokernel`]: the cokernel bigroupoid of a functor, its homotopy groups
//!   and long exact sequence, the cokernel double category and Postnikov
//!   towers.

pub mod abelian;
pub mod cocycle;
pub mod cokernel;
pub mod error;
pub mod picard;
pub mod report;
pub mod sphere;

pub use error::{Error, Result};

/// Default bound on exhaustive search spaces, `2²⁴`.
pub const DEFAULT_BUDGET: u64 = 1 << 24;
