//! Exact geometry of numbers and systolic geometry of flat tori.
//!
//! * [`lattice`]: bases, Gram matrices, covolume, dual lattices, LLL and the
//!   rank-2 fundamental-domain reduction.
//! * [`minima`]: successive minima, Hermite and Berge-Martinet invariants.
//! * [`catalog`]: known constants and critical lattices in ranks 1-4.
//! * [`systolic`]: flat-torus systoles and optimal systolic inequalities.
//! * [`filling`]: filling-radius formulas and a combinatorial upper bound.
//! * [`bundle`]: homology and linking invariants of circle bundles over T^2.
//! * [`io`]: the JSON formats shared with the command-line tool.

pub mod bundle;
pub mod catalog;
pub mod error;
pub mod filling;
pub mod io;
pub mod lattice;
pub mod minima;
pub mod rational;
pub mod systolic;

pub use error::{Error, Result};
pub use lattice::{GramMatrix, LatticeBasis};
pub use rational::Rational;
