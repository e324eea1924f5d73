//! Continuous-time quantum walk search on graphs.
//!
//! Three walks are supported, differing only in the graph matrix that
//! multiplies the jumping rate `gamma`:
//!
//! | walk                | Hamiltonian (before the oracle) |
//! |---------------------|---------------------------------|
//! | Laplacian           | `-gamma * (A - D)`              |
//! | adjacency           | `-gamma * A`                    |
//! | signless Laplacian  | `-gamma * (A + D)`              |
//!
//! The search Hamiltonian adds the oracle `-sum_{i marked} |i><i|`.
//!
//! Modules:
//!
//! - [`graph`]: graphs, complete bipartite instances, A / D / L / Q.
//! - [`spin`]: Heisenberg XYZ spin networks and their single-excitation
//!   restriction, which reproduces all three walks.
//! - [`eigen`]: deterministic cyclic Jacobi eigensolver for dense
//!   Hermitian matrices.
//! - [`evolve`]: search Hamiltonians, exact spectral propagation, success
//!   probabilities and eigenvector overlap profiles.
//! - [`bipartite`]: the 4-dimensional reduced model of search on the
//!   complete bipartite graph, its asymptotic eigensystems, closed-form
//!   probability curves, runtimes and the fastest-walk classifier.
//! - [`exec`]: sequential / rayon execution of independent work items.

pub mod bipartite;
pub mod eigen;
pub mod error;
pub mod evolve;
pub mod exec;
pub mod graph;
pub mod spin;

pub use error::{Error, Result};

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;
/// Dense complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;
/// Dense complex column vector.
pub type CVector = nalgebra::DVector<C64>;
/// Dense real matrix.
pub type RMatrix = nalgebra::DMatrix<f64>;
