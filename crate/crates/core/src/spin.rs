//! Collective spin operators, coherent states, and the kicked-top Floquet map.
//!
//! Everything lives in the Dicke basis `|j,m⟩` of the maximal-spin symmetric
//! subspace, stored with the index convention `k ↔ m = j − k` (so `k = 0` is
//! the stretched state `|j,j⟩`). The Hilbert-space dimension is `2j + 1`.

use std::f64::consts::{PI, TAU};

use nalgebra::SymmetricEigen;

use crate::error::{Result, TopError};
use crate::{C64, CMatrix, CVector};

/// Maximum allowed norm drift per kick before evolution aborts.
pub const NORM_DRIFT_LIMIT: f64 = 1e-10;

/// Tolerance on `Σ|amplitude|² = 1` at state construction.
const NORM_TOLERANCE: f64 = 1e-12;

/// Spin quantum number `j`, stored as the integer `2j` so half-integer spins
/// stay exact; `N = 2j` is the number of symmetric qubits.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Spin {
    twice_j: u32,
}

impl Spin {
    /// Builds a spin from `2j`; requires `2j ≥ 1`.
    pub fn from_twice_j(twice_j: u32) -> Result<Self> {
        if twice_j == 0 {
            return Err(TopError::InvalidParameter(
                "spin quantum number requires 2j >= 1".into(),
            ));
        }
        Ok(Self { twice_j })
    }

    /// The stored integer `2j`.
    pub fn twice_j(&self) -> u32 {
        self.twice_j
    }

    /// The spin quantum number `j`.
    pub fn j(&self) -> f64 {
        f64::from(self.twice_j) / 2.0
    }

    /// Number of qubits `N = 2j` represented by the top.
    pub fn num_qubits(&self) -> usize {
        self.twice_j as usize
    }

    /// Hilbert-space dimension `d = 2j + 1`.
    pub fn dim(&self) -> usize {
        self.twice_j as usize + 1
    }

    /// Magnetic quantum number at basis index `k`, i.e. `m = j − k`.
    pub fn m(&self, k: usize) -> f64 {
        self.j() - k as f64
    }
}

/// A point on the unit sphere: polar angle `θ ∈ [0, π]` and azimuth `φ`
/// normalized modulo 2π into `[−π, π]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SphericalPoint {
    theta: f64,
    phi: f64,
}

impl SphericalPoint {
    pub fn new(theta: f64, phi: f64) -> Result<Self> {
        if !theta.is_finite() || !phi.is_finite() {
            return Err(TopError::InvalidParameter(format!(
                "spherical point ({theta}, {phi}) must be finite"
            )));
        }
        if !(0.0..=PI).contains(&theta) {
            return Err(TopError::InvalidParameter(format!(
                "polar angle theta = {theta} outside [0, pi]"
            )));
        }
        Ok(Self {
            theta,
            phi: wrap_angle(phi),
        })
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }
}

/// Wraps an angle into `(−π, π]`.
fn wrap_angle(phi: f64) -> f64 {
    let wrapped = phi.rem_euclid(TAU);
    if wrapped > PI { wrapped - TAU } else { wrapped }
}

/// Parameters of the kicked-top Floquet map: twist strength `κ`, rotation
/// angle `p`, and kick period `τ` (unit by default, so `κ` alone sets the
/// chaoticity).
#[derive(Clone, Copy, Debug)]
pub struct KickedTopParams {
    pub spin: Spin,
    pub kappa: f64,
    pub p: f64,
    pub tau: f64,
}

impl KickedTopParams {
    /// Standard parameters with unit kick period.
    pub fn new(spin: Spin, kappa: f64, p: f64) -> Result<Self> {
        Self::with_tau(spin, kappa, p, 1.0)
    }

    pub fn with_tau(spin: Spin, kappa: f64, p: f64, tau: f64) -> Result<Self> {
        if !kappa.is_finite() || kappa < 0.0 {
            return Err(TopError::InvalidParameter(format!(
                "kappa = {kappa} must be finite and >= 0"
            )));
        }
        if !p.is_finite() {
            return Err(TopError::InvalidParameter(format!(
                "rotation angle p = {p} must be finite"
            )));
        }
        if !tau.is_finite() || tau <= 0.0 {
            return Err(TopError::InvalidParameter(format!(
                "kick period tau = {tau} must be finite and > 0"
            )));
        }
        if kappa > 6.0 {
            log::warn!("kappa = {kappa} lies outside the studied range [0, 6]");
        }
        Ok(Self { spin, kappa, p, tau })
    }
}

/// Pure state of the top in the Dicke basis; `amplitudes[k]` multiplies
/// `|j, j−k⟩`.
#[derive(Clone, Debug)]
pub struct DickeState {
    spin: Spin,
    amplitudes: CVector,
}

impl DickeState {
    /// Wraps an amplitude vector, requiring unit norm within 1e−12.
    pub fn new(spin: Spin, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(TopError::DimensionMismatch {
                expected: spin.dim(),
                got: amplitudes.len(),
            });
        }
        let norm_sq = amplitudes.norm_squared();
        if !norm_sq.is_finite() || (norm_sq - 1.0).abs() > NORM_TOLERANCE {
            return Err(TopError::InvalidState(format!(
                "state norm² = {norm_sq} differs from 1 by more than {NORM_TOLERANCE}"
            )));
        }
        Ok(Self { spin, amplitudes })
    }

    /// Rescales an arbitrary nonzero amplitude vector to a unit-norm state.
    pub fn normalized(spin: Spin, amplitudes: CVector) -> Result<Self> {
        if amplitudes.len() != spin.dim() {
            return Err(TopError::DimensionMismatch {
                expected: spin.dim(),
                got: amplitudes.len(),
            });
        }
        let norm = amplitudes.norm();
        if !norm.is_finite() || norm < 1e-14 {
            return Err(TopError::InvalidState(format!(
                "cannot normalize amplitude vector with norm {norm}"
            )));
        }
        let mut amplitudes = amplitudes;
        amplitudes.apply(|z| *z /= norm);
        Ok(Self { spin, amplitudes })
    }

    /// The Dicke basis state `|j, m⟩` with `m = j − k`.
    pub fn basis_state(spin: Spin, k: usize) -> Result<Self> {
        if k >= spin.dim() {
            return Err(TopError::InvalidParameter(format!(
                "basis index {k} outside dimension {}",
                spin.dim()
            )));
        }
        let mut amplitudes = CVector::zeros(spin.dim());
        amplitudes[k] = C64::new(1.0, 0.0);
        Ok(Self { spin, amplitudes })
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn amplitudes(&self) -> &CVector {
        &self.amplitudes
    }
}

/// The collective angular-momentum operators of `N = 2j` symmetric qubits.
#[derive(Clone, Debug)]
pub struct CollectiveOps {
    spin: Spin,
    jx: CMatrix,
    jy: CMatrix,
    jz: CMatrix,
    jplus: CMatrix,
    jminus: CMatrix,
}

impl CollectiveOps {
    /// Builds `Jz`, the ladder operators `J±`, and `Jx`, `Jy` for the given
    /// spin: `Jz` is diagonal with entries `m`, and
    /// `J±|j,m⟩ = √(j(j+1) − m(m±1)) |j,m±1⟩`.
    pub fn new(spin: Spin) -> Self {
        let d = spin.dim();
        let j = spin.j();
        let mut jz = CMatrix::zeros(d, d);
        let mut jplus = CMatrix::zeros(d, d);
        for k in 0..d {
            let m = spin.m(k);
            jz[(k, k)] = C64::new(m, 0.0);
            if k > 0 {
                // |j, m+1⟩ lives at index k − 1 under m = j − k.
                let c = (j * (j + 1.0) - m * (m + 1.0)).sqrt();
                jplus[(k - 1, k)] = C64::new(c, 0.0);
            }
        }
        let jminus = jplus.adjoint();
        let jx = (&jplus + &jminus) * C64::new(0.5, 0.0);
        let jy = (&jplus - &jminus) * C64::new(0.0, -0.5);
        Self {
            spin,
            jx,
            jy,
            jz,
            jplus,
            jminus,
        }
    }

    pub fn spin(&self) -> Spin {
        self.spin
    }

    pub fn jx(&self) -> &CMatrix {
        &self.jx
    }

    pub fn jy(&self) -> &CMatrix {
        &self.jy
    }

    pub fn jz(&self) -> &CMatrix {
        &self.jz
    }

    pub fn jplus(&self) -> &CMatrix {
        &self.jplus
    }

    pub fn jminus(&self) -> &CMatrix {
        &self.jminus
    }
}

/// Max-abs entry of `[Jx, Jy] − iJz`, the su(2) closure residual.
pub fn su2_residual(ops: &CollectiveOps) -> f64 {
    let commutator = &ops.jx * &ops.jy - &ops.jy * &ops.jx;
    let residual = commutator - &ops.jz * C64::new(0.0, 1.0);
    residual.iter().map(|z| z.norm()).fold(0.0_f64, f64::max)
}

/// Entrywise tolerance for the su(2) residual at a given spin.
///
/// The ladder couplings are rounded square roots whose squares reach
/// `j(j+1)`, so double precision cannot represent the algebra better than a
/// few ulps of that scale: the floor is ≈ 2·eps·j(j+1) ≈ 2.2e−12 at j = 100.
/// Below j ≈ 33 the flat 1e−12 bound governs; above it the ulp-scaled bound
/// takes over (with a 2× safety factor — any construction error would
/// overshoot this by many orders of magnitude).
pub fn su2_tolerance(spin: Spin) -> f64 {
    let j = spin.j();
    (4.0 * f64::EPSILON * j * (j + 1.0)).max(1e-12)
}

/// `exp(i·scale·H)` for Hermitian `h`, via exact eigendecomposition.
fn exp_i_hermitian(h: &CMatrix, scale: f64) -> CMatrix {
    let eig = SymmetricEigen::new(h.clone());
    let phases = eig.eigenvalues.map(|lambda| C64::new(0.0, scale * lambda).exp());
    &eig.eigenvectors * CMatrix::from_diagonal(&phases) * eig.eigenvectors.adjoint()
}

/// The coherent-state rotation `R(θ, φ) = exp{iθ(Jx sin φ − Jy cos φ)}`.
pub fn rotation_operator(ops: &CollectiveOps, point: SphericalPoint) -> CMatrix {
    let generator =
        &ops.jx * C64::new(point.phi().sin(), 0.0) - &ops.jy * C64::new(point.phi().cos(), 0.0);
    exp_i_hermitian(&generator, point.theta())
}

/// The spin coherent state `|θ, φ⟩ = R(θ, φ)|j, j⟩` pointing along `(θ, φ)`.
pub fn spin_coherent_state(ops: &CollectiveOps, point: SphericalPoint) -> DickeState {
    // |j,j⟩ is basis index 0, so the state is R's first column (renormalized
    // against eigendecomposition roundoff).
    let column = rotation_operator(ops, point).column(0).into_owned();
    DickeState::normalized(ops.spin, column).expect("rotation preserves norm")
}

/// One-kick Floquet operator `U = exp(−i κ/(2jτ) Jz²) · exp(−i p Jy)`: a
/// rotation by `p` about y followed by a torsion about z.
pub fn floquet_operator(ops: &CollectiveOps, params: &KickedTopParams) -> Result<CMatrix> {
    if params.spin != ops.spin {
        return Err(TopError::DimensionMismatch {
            expected: ops.spin.dim(),
            got: params.spin.dim(),
        });
    }
    let mut u = exp_i_hermitian(&ops.jy, -params.p);
    let coeff = params.kappa / (2.0 * params.spin.j() * params.tau);
    for k in 0..ops.spin.dim() {
        let m = params.spin.m(k);
        // Left-multiplying by the diagonal twist scales row k.
        let phase = C64::new(0.0, -coeff * m * m).exp();
        for z in u.row_mut(k).iter_mut() {
            *z *= phase;
        }
    }
    Ok(u)
}

/// Applies `u` repeatedly, returning `[ψ₀, Uψ₀, …, Uⁿψ₀]`. Each kick is
/// renormalized defensively; drift beyond [`NORM_DRIFT_LIMIT`] aborts.
pub fn evolve(state: &DickeState, u: &CMatrix, n_kicks: usize) -> Result<Vec<DickeState>> {
    let d = state.amplitudes.len();
    if u.nrows() != d || u.ncols() != d {
        return Err(TopError::DimensionMismatch {
            expected: d,
            got: u.nrows(),
        });
    }
    let mut sequence = Vec::with_capacity(n_kicks + 1);
    sequence.push(state.clone());
    let mut current = state.amplitudes.clone();
    for kick in 1..=n_kicks {
        current = u * &current;
        let norm = current.norm();
        let drift = (norm - 1.0).abs();
        if !drift.is_finite() || drift > NORM_DRIFT_LIMIT {
            return Err(TopError::NormDrift {
                kick,
                drift,
                limit: NORM_DRIFT_LIMIT,
            });
        }
        current.apply(|z| *z /= norm);
        sequence.push(DickeState {
            spin: state.spin,
            amplitudes: current.clone(),
        });
    }
    Ok(sequence)
}

/// `⟨ψ|O|ψ⟩` for a single operator.
pub fn expectation(op: &CMatrix, state: &DickeState) -> C64 {
    state.amplitudes.dotc(&(op * &state.amplitudes))
}

/// Expectation values feeding the coherent-state identities and the
/// two-qubit reduction, with `n↑ = jI + Jz` and `n↓ = jI − Jz`.
#[derive(Clone, Copy, Debug)]
pub struct Expectations {
    pub jx: f64,
    pub jy: f64,
    pub jz: f64,
    pub jz_sq: f64,
    pub jplus: C64,
    pub jplus_sq: C64,
    pub jplus_jminus: f64,
    pub nup_jplus: C64,
    pub jminus_ndown: C64,
}

impl Expectations {
    /// `⟨J⟩/j`, the classical-limit direction of the top.
    pub fn bloch_vector(&self, spin: Spin) -> [f64; 3] {
        let j = spin.j();
        [self.jx / j, self.jy / j, self.jz / j]
    }
}

/// Computes the [`Expectations`] record as `⟨ψ|O|ψ⟩`, applying operator
/// products to the ket factor by factor.
pub fn collective_expectations(ops: &CollectiveOps, state: &DickeState) -> Expectations {
    assert_eq!(
        ops.spin, state.spin,
        "operators and state built for different spins"
    );
    let d = ops.spin.dim();
    let j = ops.spin.j();
    let psi = &state.amplitudes;

    let identity = CMatrix::identity(d, d);
    let n_up = &identity * C64::new(j, 0.0) + &ops.jz;
    let n_down = &identity * C64::new(j, 0.0) - &ops.jz;

    let jz_psi = &ops.jz * psi;
    let jplus_psi = &ops.jplus * psi;
    let jminus_psi = &ops.jminus * psi;

    Expectations {
        jx: psi.dotc(&(&ops.jx * psi)).re,
        jy: psi.dotc(&(&ops.jy * psi)).re,
        jz: psi.dotc(&jz_psi).re,
        jz_sq: psi.dotc(&(&ops.jz * &jz_psi)).re,
        jplus: psi.dotc(&jplus_psi),
        jplus_sq: psi.dotc(&(&ops.jplus * &jplus_psi)),
        jplus_jminus: psi.dotc(&(&ops.jplus * &jminus_psi)).re,
        nup_jplus: psi.dotc(&(&n_up * &jplus_psi)),
        jminus_ndown: psi.dotc(&(&ops.jminus * &(&n_down * psi))),
    }
}
