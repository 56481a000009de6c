//! One-dimensional discrete-time quantum walks with a single defect coin.
//!
//! The walker carries a qubit and hops on the integer lattice. Every site
//! uses the Hadamard coin except one defect site, whose coin carries four
//! phases. [`walk`] holds the float engine, [`exact`] an exact engine over
//! Gaussian-integer Laurent polynomials in z = e^{iω}, [`observables`] the
//! measured quantities and sweeps, and [`theory`] the closed-form
//! references.

pub mod error;
pub mod exact;
pub mod exec;
pub mod observables;
pub mod theory;
pub mod walk;

pub use error::{Error, Result};
pub use exec::Execution;
pub use walk::{evolve, CoinKind, CoinSpec, Qubit, WalkState};
