//! Simulation of a quantum kicked top as a collection of `N = 2j` symmetric
//! qubits, with two-qubit quantum discord, concurrence, and von Neumann
//! entropy tracked kick by kick, plus the classical limit map for
//! regular-versus-chaotic phase-space comparisons.

pub mod classical;
pub mod error;
pub mod experiments;
pub mod measures;
pub mod optim;
pub mod random;
pub mod reduction;
pub mod spin;
pub mod sweep;

pub use error::TopError;

/// Complex scalar used throughout.
pub type C64 = nalgebra::Complex<f64>;

/// Dynamically sized complex matrix.
pub type CMatrix = nalgebra::DMatrix<C64>;

/// Dynamically sized complex vector.
pub type CVector = nalgebra::DVector<C64>;
