//! Seeded random quantum states for property tests and spot checks.
//!
//! Everything here rides on a caller-supplied RNG (use [`seeded_rng`] for
//! reproducibility); the simulation itself is fully deterministic and never
//! draws randomness.

use nalgebra::{Matrix2, Matrix4};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::reduction::TwoQubitState;
use crate::spin::{DickeState, Spin};
use crate::{C64, CVector};

/// Deterministic generator for property tests.
pub fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// One standard normal deviate via Box–Muller.
fn standard_normal<R: Rng>(rng: &mut R) -> f64 {
    let u1: f64 = rng.random::<f64>().max(f64::MIN_POSITIVE);
    let u2: f64 = rng.random();
    (-2.0 * u1.ln()).sqrt() * (std::f64::consts::TAU * u2).cos()
}

/// Complex Gaussian with independent real and imaginary parts.
fn complex_normal<R: Rng>(rng: &mut R) -> C64 {
    C64::new(standard_normal(rng), standard_normal(rng))
}

/// Haar-distributed state of the symmetric subspace (normalized complex
/// Gaussian amplitudes).
pub fn random_dicke_state<R: Rng>(spin: Spin, rng: &mut R) -> DickeState {
    let amplitudes = CVector::from_fn(spin.dim(), |_, _| complex_normal(rng));
    DickeState::normalized(spin, amplitudes).expect("gaussian amplitudes are nonzero")
}

/// Random mixed two-qubit state `ρ = GG†/Tr(GG†)` (Ginibre ensemble).
pub fn random_two_qubit_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    let g = Matrix4::from_fn(|_, _| complex_normal(rng));
    let m = g * g.adjoint();
    let trace = m.trace().re;
    TwoQubitState::new(m.map(|z| z / trace)).expect("ginibre states are physical")
}

/// Random single-qubit density matrix (2×2 Ginibre).
pub fn random_qubit_density<R: Rng>(rng: &mut R) -> Matrix2<C64> {
    let g = Matrix2::from_fn(|_, _| complex_normal(rng));
    let m = g * g.adjoint();
    let trace = m.trace().re;
    m.map(|z| z / trace)
}

/// Random product state `ρ_A ⊗ ρ_B`.
pub fn random_product_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    let a = random_qubit_density(rng);
    let b = random_qubit_density(rng);
    TwoQubitState::new(a.kronecker(&b)).expect("product of densities is physical")
}

/// Random diagonal (classically correlated) two-qubit state.
pub fn random_diagonal_state<R: Rng>(rng: &mut R) -> TwoQubitState {
    let mut weights = [0.0_f64; 4];
    let mut total = 0.0;
    for w in &mut weights {
        // Exponential deviates normalize to a flat Dirichlet distribution.
        *w = -rng.random::<f64>().max(f64::MIN_POSITIVE).ln();
        total += *w;
    }
    let mut m = Matrix4::zeros();
    for (i, w) in weights.iter().enumerate() {
        m[(i, i)] = C64::new(w / total, 0.0);
    }
    TwoQubitState::new(m).expect("diagonal probabilities are physical")
}

/// Haar-random single-qubit unitary (up to an irrelevant global phase).
pub fn random_qubit_unitary<R: Rng>(rng: &mut R) -> Matrix2<C64> {
    let a = complex_normal(rng);
    let b = complex_normal(rng);
    let norm = (a.norm_sqr() + b.norm_sqr()).sqrt();
    let (a, b) = (a / norm, b / norm);
    let phase = C64::new(0.0, std::f64::consts::TAU * rng.random::<f64>()).exp();
    Matrix2::new(a, -b.conj() * phase, b, a.conj() * phase)
}
