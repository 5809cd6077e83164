//! Exact LP relaxations of the SATP(m, n) polytope family.
//!
//! Everything is computed over exact rationals: constraint systems for
//! SATP_LP, SATP²_LP, BQP_LP and MET, an exact simplex solver, integral and
//! fractional vertex machinery, SAT-variant objectives, integer recognition
//! for column-balanced objectives and the edge-constrained bipartite coloring
//! solver built on top of it.

pub mod block;
pub mod cli;
pub mod ecbgc;
pub mod error;
pub mod linalg;
pub mod lp;
pub mod polytope;
pub mod rational;
pub mod recognition;
pub mod sat;
pub mod system;
pub mod vertices;

pub use block::BlockPoint;
pub use error::{Error, ParseError, Result};
pub use lp::{lp_maximize, LpOptimum, LpResult, LpStatus};
pub use polytope::PolytopeId;
pub use rational::Rational;
pub use system::{LinearSystem, Row};
pub use vertices::{SkeletonGraph, VertexCode};
