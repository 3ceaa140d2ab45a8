//! Exact resistance distances on balanced digraphs.
//!
//! The resistance from `i` to `j` in a digraph with Laplacian `L` is
//! `r_ij = L†_ii + L†_jj − 2 L†_ij`, where `L†` is the Moore–Penrose inverse.
//! Everything here is computed over arbitrary-precision rationals so that
//! inequalities such as `r_ij ≤ d_ij` are decided exactly, without tolerances.
//!
//! Modules:
//! - [`digraph`]: simple digraphs, degree/balance/connectivity predicates, BFS
//!   distances, one-point unions.
//! - [`blocks`]: block decomposition, directed-cactus recognition and
//!   one-point-union certificates.
//! - [`linalg`]: exact dense matrices, determinants, inverses, pseudoinverses.
//! - [`spectral`]: Laplacians, spanning-tree counts, the partitioned
//!   pseudoinverse and resistance matrices.
//! - [`verify`]: the `r ≤ d` check and identity suites.
//! - [`generators`]: built-in fixtures and seeded random families.
//! - [`io`]: edge-list and JSON graph formats.

pub mod blocks;
pub mod digraph;
pub mod error;
pub mod generators;
pub mod io;
pub mod linalg;
pub mod rat;
pub mod rng;
pub mod spectral;
pub mod verify;

pub use blocks::{BlockDecomposition, ClassCVerdict};
pub use digraph::{Digraph, Distance, DistanceMatrix};
pub use error::{Error, Result};
pub use linalg::RatMatrix;
pub use rat::Rat;
pub use spectral::{PartitionData, ResistanceResult};
pub use verify::VerifyReport;
