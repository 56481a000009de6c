//! Qubits, defect coins and the float walk engine.

mod coin;
mod qubit;
mod state;

pub use coin::{hadamard_matrix, CoinKind, CoinMatrix, CoinSpec, CoinViolation, UNITARITY_TOL};
pub use qubit::Qubit;
pub use state::{evolve, evolve_with, WalkState};
