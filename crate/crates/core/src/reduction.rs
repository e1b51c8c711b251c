//! Two-qubit reduced density matrices of symmetric-subspace states.
//!
//! Two routes to the same object: a scalable identities path expressing every
//! entry through collective expectation values (the production path, valid at
//! any `N`), and a brute-force tensor-product expansion with an explicit
//! partial trace (the oracle, capped at `N ≤ 14`). The identities are only
//! trusted because the oracle gate holds — keep the two paths independent.
//!
//! Basis and bit conventions, fixed once: the two-qubit product basis is
//! ordered `{|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}`, bit value 0 means ↑, and in the full
//! `2^N` register qubit 1 is the most significant bit.

use nalgebra::{Matrix4, SymmetricEigen};

use crate::error::{Result, TopError};
use crate::spin::{CollectiveOps, DickeState};
use crate::{C64, CMatrix, CVector};

/// Eigenvalues below this are a physicality violation; values in
/// `[EIGENVALUE_FLOOR, 0)` are roundoff and clamp to zero downstream.
pub const EIGENVALUE_FLOOR: f64 = -1e-10;

/// Hermiticity / trace / swap-symmetry tolerance on emitted states.
pub const PHYSICALITY_TOL: f64 = 1e-12;

/// Maximum singlet population tolerated in a symmetric-sector state.
pub const SINGLET_TOL: f64 = 1e-10;

/// Largest qubit count accepted by the brute-force expansion.
pub const BRUTE_FORCE_MAX_QUBITS: usize = 14;

/// A physical two-qubit density matrix in the product basis
/// `{|↑↑⟩, |↑↓⟩, |↓↑⟩, |↓↓⟩}`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoQubitState {
    matrix: Matrix4<C64>,
}

impl TwoQubitState {
    /// Validates Hermiticity, unit trace, and positive semidefiniteness
    /// (eigenvalues no lower than [`EIGENVALUE_FLOOR`]).
    pub fn new(matrix: Matrix4<C64>) -> Result<Self> {
        let hermiticity = (matrix - matrix.adjoint())
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max);
        if !(hermiticity <= PHYSICALITY_TOL) {
            return Err(TopError::InvalidState(format!(
                "two-qubit matrix not Hermitian: residual {hermiticity:e}"
            )));
        }
        let trace = matrix.trace();
        if !((trace.re - 1.0).abs() <= PHYSICALITY_TOL && trace.im.abs() <= PHYSICALITY_TOL) {
            return Err(TopError::InvalidState(format!(
                "two-qubit matrix trace {trace} differs from 1"
            )));
        }
        let state = Self { matrix };
        // Also enforces the eigenvalue floor.
        state.eigenvalues()?;
        Ok(state)
    }

    pub fn matrix(&self) -> &Matrix4<C64> {
        &self.matrix
    }

    /// Eigenvalues in descending order, with roundoff negatives in
    /// `[EIGENVALUE_FLOOR, 0)` clamped to zero. Anything below the floor is a
    /// hard error, never a clamp.
    pub fn eigenvalues(&self) -> Result<[f64; 4]> {
        let eig = SymmetricEigen::new(self.matrix);
        let mut values = [0.0_f64; 4];
        for (slot, lambda) in values.iter_mut().zip(eig.eigenvalues.iter()) {
            *slot = clamp_eigenvalue(*lambda)?;
        }
        values.sort_by(|a, b| b.total_cmp(a));
        Ok(values)
    }

    /// Marginal of qubit A (first factor) by explicit partial trace over B.
    pub fn marginal_a(&self) -> nalgebra::Matrix2<C64> {
        let r = &self.matrix;
        nalgebra::Matrix2::new(
            r[(0, 0)] + r[(1, 1)],
            r[(0, 2)] + r[(1, 3)],
            r[(2, 0)] + r[(3, 1)],
            r[(2, 2)] + r[(3, 3)],
        )
    }

    /// Marginal of qubit B (second factor) by explicit partial trace over A.
    pub fn marginal_b(&self) -> nalgebra::Matrix2<C64> {
        let r = &self.matrix;
        nalgebra::Matrix2::new(
            r[(0, 0)] + r[(2, 2)],
            r[(0, 1)] + r[(2, 3)],
            r[(1, 0)] + r[(3, 2)],
            r[(1, 1)] + r[(3, 3)],
        )
    }

    /// Max-abs entry of `SρS − ρ` (S the two-qubit SWAP) and the singlet
    /// population `⟨s|ρ|s⟩`, `|s⟩ = (|↑↓⟩ − |↓↑⟩)/√2`.
    pub fn symmetric_sector_residuals(&self) -> (f64, f64) {
        let r = &self.matrix;
        let mut swapped = *r;
        swapped.swap_rows(1, 2);
        swapped.swap_columns(1, 2);
        let swap_residual = (swapped - r)
            .iter()
            .map(|z| z.norm())
            .fold(0.0_f64, f64::max);
        let singlet = 0.5 * (r[(1, 1)] + r[(2, 2)] - r[(1, 2)] - r[(2, 1)]).re;
        (swap_residual, singlet)
    }

    /// Requires the state to lie in the symmetric (triplet) sector: swap
    /// symmetry within [`PHYSICALITY_TOL`] and singlet population below
    /// [`SINGLET_TOL`]. Holds for every reduction of a maximal-j state.
    pub fn require_symmetric_sector(&self) -> Result<()> {
        let (swap_residual, singlet) = self.symmetric_sector_residuals();
        if swap_residual > PHYSICALITY_TOL {
            return Err(TopError::InvalidState(format!(
                "reduction not swap-symmetric: residual {swap_residual:e}"
            )));
        }
        if singlet.abs() > SINGLET_TOL {
            return Err(TopError::InvalidState(format!(
                "reduction has singlet population {singlet:e}"
            )));
        }
        Ok(())
    }
}

/// Clamps a single eigenvalue per the shared floor contract.
pub fn clamp_eigenvalue(lambda: f64) -> Result<f64> {
    if lambda < EIGENVALUE_FLOOR {
        return Err(TopError::InvalidState(format!(
            "eigenvalue {lambda:e} below the {EIGENVALUE_FLOOR:e} floor"
        )));
    }
    Ok(lambda.max(0.0))
}

/// Two-qubit reduced density matrix via collective-operator identities.
///
/// With `D = N(N−1)`, `n↑ = jI + Jz`, `n↓ = jI − Jz`, the entries are
/// expectation values in the collective state:
/// `ρ₁₁ = ⟨n↑(n↑−1)⟩/D`, `ρ₄₄ = ⟨n↓(n↓−1)⟩/D`, `ρ₂₂ = ρ₃₃ = ⟨n↑n↓⟩/D`,
/// `ρ₂₃ = (⟨J₊J₋⟩ − ⟨n↑⟩)/D`, `ρ₁₄ = ⟨J₋²⟩/D`, `ρ₁₂ = ρ₁₃ = ⟨n↑J₋⟩/D`,
/// `ρ₂₄ = ρ₃₄ = ⟨J₋n↓⟩/D`, the rest by Hermiticity.
pub fn two_qubit_rdm(ops: &CollectiveOps, state: &DickeState) -> Result<TwoQubitState> {
    assert_eq!(
        ops.spin(),
        state.spin(),
        "operators and state built for different spins"
    );
    let spin = state.spin();
    let n = spin.num_qubits();
    if n < 2 {
        return Err(TopError::InvalidParameter(format!(
            "two-qubit reduction needs N >= 2 qubits, got N = {n}"
        )));
    }
    if n == 2 {
        // The state already is a (symmetrized) two-qubit pure state.
        let product = dicke_to_product(state)?;
        let mut matrix = Matrix4::zeros();
        for a in 0..4 {
            for c in 0..4 {
                matrix[(a, c)] = product[a] * product[c].conj();
            }
        }
        let rdm = TwoQubitState::new(matrix)?;
        rdm.require_symmetric_sector()?;
        return Ok(rdm);
    }

    let d = spin.dim();
    let j = spin.j();
    let psi = state.amplitudes();
    let pair_count = (n * (n - 1)) as f64;

    let identity = CMatrix::identity(d, d);
    let n_up = &identity * C64::new(j, 0.0) + ops.jz();
    let n_down = &identity * C64::new(j, 0.0) - ops.jz();

    let nup_psi = &n_up * psi;
    let ndown_psi = &n_down * psi;
    let jminus_psi = ops.jminus() * psi;

    let rho11 = psi.dotc(&(&n_up * &(&nup_psi - psi))).re / pair_count;
    let rho44 = psi.dotc(&(&n_down * &(&ndown_psi - psi))).re / pair_count;
    let rho22 = psi.dotc(&(&n_up * &ndown_psi)).re / pair_count;
    let rho23 = (psi.dotc(&(ops.jplus() * &jminus_psi)) - psi.dotc(&nup_psi)) / pair_count;
    let rho14 = psi.dotc(&(ops.jminus() * &jminus_psi)) / pair_count;
    let rho12 = psi.dotc(&(&n_up * &jminus_psi)) / pair_count;
    let rho24 = psi.dotc(&(ops.jminus() * &ndown_psi)) / pair_count;

    let c = |x: f64| C64::new(x, 0.0);
    let matrix = Matrix4::new(
        c(rho11),
        rho12,
        rho12,
        rho14,
        rho12.conj(),
        c(rho22),
        rho23,
        rho24,
        rho12.conj(),
        rho23.conj(),
        c(rho22),
        rho24,
        rho14.conj(),
        rho24.conj(),
        rho24.conj(),
        c(rho44),
    );
    let rdm = TwoQubitState::new(matrix)?;
    rdm.require_symmetric_sector()?;
    Ok(rdm)
}

/// Exact binomial coefficient for the small arguments used here.
fn binomial(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    let k = k.min(n - k);
    let mut value = 1u64;
    for i in 0..k {
        value = value * (n - i) as u64 / (i + 1) as u64;
    }
    value as f64
}

/// Expands a Dicke state into the full `2^N` computational register:
/// `|j,m⟩ ↦ binom(N, j+m)^{−1/2} Σ` over basis strings with `j+m` up spins.
pub fn dicke_to_product(state: &DickeState) -> Result<CVector> {
    let n = state.spin().num_qubits();
    if n > BRUTE_FORCE_MAX_QUBITS {
        return Err(TopError::SizeLimit {
            n,
            max: BRUTE_FORCE_MAX_QUBITS,
        });
    }
    let amplitudes = state.amplitudes();
    let dim = 1usize << n;
    let mut full = CVector::zeros(dim);
    for idx in 0..dim {
        // With bit 0 = ↑, the number of downs equals k = j − m directly.
        let k = (idx as u32).count_ones() as usize;
        let ups = n - k;
        full[idx] = amplitudes[k] / binomial(n, ups).sqrt();
    }
    let norm_sq = full.norm_squared();
    if (norm_sq - 1.0).abs() > 1e-12 {
        return Err(TopError::InvalidState(format!(
            "product expansion norm² = {norm_sq} differs from 1"
        )));
    }
    Ok(full)
}

/// Scatters the pair bits `a` (MSB = first kept qubit) and the environment
/// bits `e` into a full register index; `pos1 > pos2` are the bit positions
/// of the kept qubits, environment bits fill the rest LSB-first.
fn embed_index(a: usize, e: usize, pos1: usize, pos2: usize, n: usize) -> usize {
    let mut idx = (((a >> 1) & 1) << pos1) | ((a & 1) << pos2);
    let mut next = 0;
    for pos in 0..n {
        if pos == pos1 || pos == pos2 {
            continue;
        }
        idx |= ((e >> next) & 1) << pos;
        next += 1;
    }
    idx
}

/// Brute-force RDM of an arbitrary kept pair (1-indexed, qubit 1 = MSB):
/// expands the state and partial-traces the remaining `N − 2` qubits by
/// explicit summation over environment configurations.
pub fn brute_force_rdm_pair(
    state: &DickeState,
    q1: usize,
    q2: usize,
) -> Result<TwoQubitState> {
    let n = state.spin().num_qubits();
    if n < 2 {
        return Err(TopError::InvalidParameter(format!(
            "two-qubit reduction needs N >= 2 qubits, got N = {n}"
        )));
    }
    if q1 == q2 || q1 < 1 || q2 < 1 || q1 > n || q2 > n {
        return Err(TopError::InvalidParameter(format!(
            "kept qubits ({q1}, {q2}) must be distinct and within 1..={n}"
        )));
    }
    let full = dicke_to_product(state)?;
    let (pos1, pos2) = (n - q1, n - q2);
    let env_dim = 1usize << (n - 2);
    let mut matrix = Matrix4::zeros();
    for a in 0..4 {
        for c in 0..4 {
            let mut sum = C64::new(0.0, 0.0);
            for e in 0..env_dim {
                sum += full[embed_index(a, e, pos1, pos2, n)]
                    * full[embed_index(c, e, pos1, pos2, n)].conj();
            }
            matrix[(a, c)] = sum;
        }
    }
    let rdm = TwoQubitState::new(matrix)?;
    rdm.require_symmetric_sector()?;
    Ok(rdm)
}

/// Brute-force RDM of the leading pair — the oracle for [`two_qubit_rdm`].
pub fn brute_force_rdm(state: &DickeState) -> Result<TwoQubitState> {
    brute_force_rdm_pair(state, 1, 2)
}
