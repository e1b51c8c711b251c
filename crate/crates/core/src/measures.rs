//! Correlation measures for two-qubit states: von Neumann entropy, Wootters
//! concurrence, quantum mutual information, and quantum discord with a
//! deterministic search over rank-1 projective measurements on qubit B.
//!
//! Discord is `𝒟(A:B) = I(A:B) − 𝒥(A:B)` with
//! `𝒥(A:B) = H(A) − min_Π H̃_Π(A|B)`; the minimization is a uniform angle
//! grid followed by Nelder–Mead refinement, with no randomness anywhere so
//! results are bit-reproducible across thread schedules.

use std::f64::consts::{PI, TAU};
use std::fmt;
use std::str::FromStr;

use nalgebra::{Matrix2, Matrix4, SymmetricEigen, Vector2};

use crate::error::{Result, TopError};
use crate::optim::NelderMead;
use crate::reduction::{clamp_eigenvalue, TwoQubitState, PHYSICALITY_TOL};
use crate::{C64, CMatrix};

/// Measurement outcomes with probability below this contribute exactly zero
/// to the weighted conditional entropy.
pub const ZERO_PROBABILITY: f64 = 1e-14;

/// Discord below this is a numeric-contract violation; values in
/// `[DISCORD_CLAMP_FLOOR, 0)` are roundoff and clamp to zero.
pub const DISCORD_CLAMP_FLOOR: f64 = -1e-6;

/// Logarithm base for every entropic quantity (bits or nats).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum LogBase {
    Two,
    E,
}

impl LogBase {
    /// `−x·log(x)` in this base, with `0·log 0 ≡ 0`.
    fn shannon_term(self, x: f64) -> f64 {
        if x <= 0.0 {
            0.0
        } else {
            match self {
                LogBase::Two => -x * x.log2(),
                LogBase::E => -x * x.ln(),
            }
        }
    }
}

impl FromStr for LogBase {
    type Err = TopError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "2" => Ok(LogBase::Two),
            "e" => Ok(LogBase::E),
            other => Err(TopError::InvalidParameter(format!(
                "log base must be \"2\" or \"e\", got \"{other}\""
            ))),
        }
    }
}

impl fmt::Display for LogBase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            LogBase::Two => "2",
            LogBase::E => "e",
        })
    }
}

/// `−Σ λ log λ` over an already-clamped spectrum.
fn entropy_of_spectrum(spectrum: impl IntoIterator<Item = f64>, base: LogBase) -> f64 {
    spectrum
        .into_iter()
        .map(|l| base.shannon_term(l))
        .sum::<f64>()
        .max(0.0)
}

/// Von Neumann entropy `−Tr(ρ log ρ)` of a density matrix of any dimension.
pub fn von_neumann_entropy(rho: &CMatrix, base: LogBase) -> Result<f64> {
    if rho.nrows() != rho.ncols() {
        return Err(TopError::DimensionMismatch {
            expected: rho.nrows(),
            got: rho.ncols(),
        });
    }
    let hermiticity = (rho - rho.adjoint())
        .iter()
        .map(|z| z.norm())
        .fold(0.0_f64, f64::max);
    if hermiticity > PHYSICALITY_TOL {
        return Err(TopError::InvalidState(format!(
            "density matrix not Hermitian: residual {hermiticity:e}"
        )));
    }
    let trace = rho.trace();
    if (trace.re - 1.0).abs() > PHYSICALITY_TOL || trace.im.abs() > PHYSICALITY_TOL {
        return Err(TopError::InvalidState(format!(
            "density matrix trace {trace} differs from 1"
        )));
    }
    let eig = SymmetricEigen::new(rho.clone());
    let mut spectrum = Vec::with_capacity(rho.nrows());
    for lambda in eig.eigenvalues.iter() {
        spectrum.push(clamp_eigenvalue(*lambda)?);
    }
    Ok(entropy_of_spectrum(spectrum, base))
}

/// Von Neumann entropy of a two-qubit state via its clamped spectrum.
pub fn two_qubit_entropy(state: &TwoQubitState, base: LogBase) -> Result<f64> {
    Ok(entropy_of_spectrum(state.eigenvalues()?, base))
}

/// Eigenvalues of a 2×2 Hermitian matrix, in closed form.
fn hermitian2_eigenvalues(m: &Matrix2<C64>) -> [f64; 2] {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let mean = 0.5 * (a + d);
    let disc = (0.25 * (a - d).powi(2) + m[(0, 1)].norm_sqr()).sqrt();
    [mean + disc, mean - disc]
}

/// Entropy of a 2×2 Hermitian density matrix.
fn qubit_entropy(m: &Matrix2<C64>, base: LogBase) -> Result<f64> {
    let [hi, lo] = hermitian2_eigenvalues(m);
    Ok(entropy_of_spectrum(
        [clamp_eigenvalue(hi)?, clamp_eigenvalue(lo)?],
        base,
    ))
}

/// Quantum mutual information `I(A:B) = H(A) + H(B) − H(AB)` with the
/// marginals taken by explicit partial traces.
pub fn mutual_information(state: &TwoQubitState, base: LogBase) -> Result<f64> {
    let h_a = qubit_entropy(&state.marginal_a(), base)?;
    let h_b = qubit_entropy(&state.marginal_b(), base)?;
    let h_ab = two_qubit_entropy(state, base)?;
    Ok(h_a + h_b - h_ab)
}

/// `σy ⊗ σy`, the spin-flip kernel of the concurrence (real antidiagonal).
fn spin_flip_kernel() -> Matrix4<C64> {
    let mut yy = Matrix4::zeros();
    yy[(0, 3)] = C64::new(-1.0, 0.0);
    yy[(1, 2)] = C64::new(1.0, 0.0);
    yy[(2, 1)] = C64::new(1.0, 0.0);
    yy[(3, 0)] = C64::new(-1.0, 0.0);
    yy
}

/// `ρ̃ = (σy⊗σy) ρ* (σy⊗σy)`.
fn spin_flipped(rho: &Matrix4<C64>) -> Matrix4<C64> {
    let yy = spin_flip_kernel();
    yy * rho.map(|z| z.conj()) * yy
}

/// Wootters concurrence `C = max(0, λ₁ − λ₂ − λ₃ − λ₄)`, the λᵢ being the
/// decreasing square roots of the eigenvalues of `ρρ̃`.
///
/// Evaluated on the Hermitian form `√ρ · ρ̃ · √ρ` (same spectrum as `ρρ̃`),
/// which keeps the eigenproblem symmetric and the roots real by
/// construction.
pub fn concurrence(state: &TwoQubitState) -> Result<f64> {
    let rho = state.matrix();
    let eig = SymmetricEigen::new(*rho);
    let mut root = [0.0_f64; 4];
    for (slot, lambda) in root.iter_mut().zip(eig.eigenvalues.iter()) {
        *slot = clamp_eigenvalue(*lambda)?.sqrt();
    }
    let mut scaled = eig.eigenvectors;
    for (i, r) in root.iter().enumerate() {
        for z in scaled.column_mut(i).iter_mut() {
            *z *= C64::new(*r, 0.0);
        }
    }
    let sqrt_rho = scaled * eig.eigenvectors.adjoint();
    let m = sqrt_rho * spin_flipped(rho) * sqrt_rho;

    let eig = SymmetricEigen::new(m);
    let mut lambdas = [0.0_f64; 4];
    for (slot, lambda) in lambdas.iter_mut().zip(eig.eigenvalues.iter()) {
        *slot = clamp_eigenvalue(*lambda)?.sqrt();
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Reference concurrence through the characteristic polynomial of the
/// non-Hermitian product `ρρ̃`, with roots from Durand–Kerner iteration.
///
/// Shares no eigensolver machinery with [`concurrence`] — kept as an
/// independent cross-check route. Accurate for generic (simple-spectrum)
/// states; like any polynomial route it loses digits on highly degenerate
/// spectra, where closed-form gold values serve instead.
pub fn concurrence_crosscheck(state: &TwoQubitState) -> Result<f64> {
    let rho = state.matrix();
    let m = rho * spin_flipped(rho);
    let coefficients = characteristic_polynomial(&m);
    let roots = durand_kerner(&coefficients);
    let mut lambdas = [0.0_f64; 4];
    for (slot, root) in lambdas.iter_mut().zip(roots.iter()) {
        // Eigenvalues of ρρ̃ are real and nonnegative; imaginary parts and
        // small negatives are root-finder noise.
        *slot = root.re.max(0.0).sqrt();
    }
    lambdas.sort_by(|a, b| b.total_cmp(a));
    Ok((lambdas[0] - lambdas[1] - lambdas[2] - lambdas[3]).max(0.0))
}

/// Faddeev–LeVerrier coefficients `[c₃, c₂, c₁, c₀]` of
/// `det(λI − M) = λ⁴ + c₃λ³ + c₂λ² + c₁λ + c₀`.
fn characteristic_polynomial(m: &Matrix4<C64>) -> [C64; 4] {
    let identity = Matrix4::identity();
    let m1 = *m;
    let c3 = -m1.trace();
    let m2 = m * (m1 + identity * c3);
    let c2 = -m2.trace() / 2.0;
    let m3 = m * (m2 + identity * c2);
    let c1 = -m3.trace() / 3.0;
    let m4 = m * (m3 + identity * c1);
    let c0 = -m4.trace() / 4.0;
    [c3, c2, c1, c0]
}

/// All four roots of a monic quartic by Durand–Kerner iteration from the
/// standard deterministic seeds `(0.4 + 0.9i)^k`.
fn durand_kerner(coefficients: &[C64; 4]) -> [C64; 4] {
    let poly = |x: C64| {
        (((x + coefficients[0]) * x + coefficients[1]) * x + coefficients[2]) * x + coefficients[3]
    };
    let seed = C64::new(0.4, 0.9);
    let mut roots = [seed, seed * seed, seed * seed * seed, seed * seed * seed * seed];
    for _ in 0..500 {
        let mut shift = 0.0_f64;
        for i in 0..4 {
            let mut denominator = C64::new(1.0, 0.0);
            for j in 0..4 {
                if j != i {
                    denominator *= roots[i] - roots[j];
                }
            }
            let delta = poly(roots[i]) / denominator;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        let scale = roots.iter().map(|r| r.norm()).fold(1.0_f64, f64::max);
        if shift < 1e-15 * scale {
            break;
        }
    }
    roots
}

/// A rank-1 projective measurement basis on qubit B, parameterized by the
/// Bloch direction of `|n⟩ = cos(θₘ/2)|↑⟩ + e^{iφₘ} sin(θₘ/2)|↓⟩`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct MeasurementBasis {
    theta_m: f64,
    phi_m: f64,
}

impl MeasurementBasis {
    /// Requires `θₘ ∈ [0, π]`; `φₘ` is wrapped into `[0, 2π)`.
    pub fn new(theta_m: f64, phi_m: f64) -> Result<Self> {
        if !theta_m.is_finite() || !phi_m.is_finite() {
            return Err(TopError::InvalidParameter(format!(
                "measurement angles ({theta_m}, {phi_m}) must be finite"
            )));
        }
        if !(0.0..=PI).contains(&theta_m) {
            return Err(TopError::InvalidParameter(format!(
                "measurement polar angle {theta_m} outside [0, pi]"
            )));
        }
        Ok(Self {
            theta_m,
            phi_m: phi_m.rem_euclid(TAU),
        })
    }

    /// Canonicalizes arbitrary real angles onto the chart — optimizer
    /// iterates roam all of ℝ² and land here.
    pub fn from_unconstrained(theta: f64, phi: f64) -> Self {
        let (nx, ny, nz) = (
            theta.sin() * phi.cos(),
            theta.sin() * phi.sin(),
            theta.cos(),
        );
        let theta_m = nz.clamp(-1.0, 1.0).acos();
        let phi_m = if nx == 0.0 && ny == 0.0 {
            0.0
        } else {
            ny.atan2(nx).rem_euclid(TAU)
        };
        Self { theta_m, phi_m }
    }

    pub fn theta_m(&self) -> f64 {
        self.theta_m
    }

    pub fn phi_m(&self) -> f64 {
        self.phi_m
    }

    /// The measured direction `|n⟩`.
    pub fn ket(&self) -> Vector2<C64> {
        raw_ket(self.theta_m, self.phi_m)
    }

    /// The projector pair `Π₀ = |n⟩⟨n|`, `Π₁ = I − Π₀`.
    pub fn projectors(&self) -> [Matrix2<C64>; 2] {
        let ket = self.ket();
        let p0 = ket * ket.adjoint();
        [p0, Matrix2::identity() - p0]
    }
}

/// `cos(θ/2)|↑⟩ + e^{iφ} sin(θ/2)|↓⟩` for arbitrary real angles.
fn raw_ket(theta: f64, phi: f64) -> Vector2<C64> {
    let half = 0.5 * theta;
    Vector2::new(
        C64::new(half.cos(), 0.0),
        C64::new(0.0, phi).exp() * half.sin(),
    )
}

/// The state orthogonal to `ket`.
fn orthogonal(ket: &Vector2<C64>) -> Vector2<C64> {
    Vector2::new(-ket[1].conj(), ket[0].conj())
}

/// `σᵢ[a,a′] = ⟨n|B(a,a′)|n⟩`, compressing the four 2×2 blocks of ρ onto the
/// measured direction; returns the unnormalized conditional of qubit A.
fn compress_onto(rho: &Matrix4<C64>, n: &Vector2<C64>) -> Matrix2<C64> {
    Matrix2::from_fn(|a, c| {
        let mut acc = C64::new(0.0, 0.0);
        for b in 0..2 {
            for b2 in 0..2 {
                acc += n[b].conj() * rho[(2 * a + b, 2 * c + b2)] * n[b2];
            }
        }
        acc
    })
}

/// Post-measurement conditional state of qubit A for one outcome:
/// `ρ_{A|i} = Tr_B(Πᵢ ρ)/pᵢ`, `pᵢ = Tr((I⊗Πᵢ)ρ)`. Outcomes with
/// `pᵢ <` [`ZERO_PROBABILITY`] return the maximally mixed qubit.
pub fn conditional_state(
    state: &TwoQubitState,
    basis: &MeasurementBasis,
    outcome: usize,
) -> Result<(Matrix2<C64>, f64)> {
    if outcome > 1 {
        return Err(TopError::InvalidParameter(format!(
            "measurement outcome {outcome} must be 0 or 1"
        )));
    }
    let ket = basis.ket();
    let n = if outcome == 0 { ket } else { orthogonal(&ket) };
    let sigma = compress_onto(state.matrix(), &n);
    let p = sigma.trace().re;
    if p < ZERO_PROBABILITY {
        return Ok((Matrix2::identity().map(|z: C64| z * 0.5), p));
    }
    Ok((sigma.map(|z| z / p), p))
}

/// `H̃_Π(A|B) = Σᵢ pᵢ H(ρ_{A|i})` for a raw-angle measurement ket — the
/// total objective the minimization runs on.
fn weighted_conditional_entropy(rho: &Matrix4<C64>, ket: &Vector2<C64>, base: LogBase) -> f64 {
    let mut total = 0.0;
    for n in [*ket, orthogonal(ket)] {
        let sigma = compress_onto(rho, &n);
        let a = sigma[(0, 0)].re;
        let d = sigma[(1, 1)].re;
        let p = a + d;
        if p < ZERO_PROBABILITY {
            continue;
        }
        let mean = 0.5 * p;
        let disc = (0.25 * (a - d).powi(2) + sigma[(0, 1)].norm_sqr()).sqrt();
        for lambda in [mean + disc, mean - disc] {
            total += p * base.shannon_term((lambda / p).clamp(0.0, 1.0));
        }
    }
    total.max(0.0)
}

/// Measured conditional entropy `Σᵢ pᵢ H(ρ_{A|i})` at a fixed basis.
pub fn measured_conditional_entropy(
    state: &TwoQubitState,
    basis: &MeasurementBasis,
    base: LogBase,
) -> f64 {
    weighted_conditional_entropy(state.matrix(), &basis.ket(), base)
}

/// Search resolution and termination for the discord minimization.
#[derive(Clone, Copy, Debug)]
pub struct OptimizerParams {
    pub grid_theta: usize,
    pub grid_phi: usize,
    pub max_iterations: usize,
    pub tolerance: f64,
}

impl Default for OptimizerParams {
    fn default() -> Self {
        Self {
            grid_theta: 64,
            grid_phi: 128,
            max_iterations: 500,
            tolerance: 1e-8,
        }
    }
}

impl OptimizerParams {
    /// Doubles both grid resolutions (convergence checks).
    pub fn doubled(self) -> Self {
        Self {
            grid_theta: self.grid_theta * 2,
            grid_phi: self.grid_phi * 2,
            ..self
        }
    }
}

/// Outcome of the two-stage measurement search.
#[derive(Clone, Copy, Debug)]
pub struct ConditionalMinimum {
    pub value: f64,
    pub basis: MeasurementBasis,
    pub evaluations: usize,
}

/// Deterministic two-stage minimization of the measured conditional entropy:
/// a uniform `grid_theta × grid_phi` scan (θ at bin midpoints of `[0, π]`,
/// φ at left edges of `[0, 2π)`) followed by Nelder–Mead refinement seeded
/// with the three best grid points.
pub fn minimize_conditional_entropy(
    state: &TwoQubitState,
    params: &OptimizerParams,
    base: LogBase,
) -> Result<ConditionalMinimum> {
    if params.grid_theta == 0 || params.grid_phi == 0 || params.grid_theta * params.grid_phi < 3 {
        return Err(TopError::InvalidParameter(format!(
            "optimizer grid {}×{} must contain at least 3 points",
            params.grid_theta, params.grid_phi
        )));
    }
    let rho = *state.matrix();
    let eval = |theta: f64, phi: f64| weighted_conditional_entropy(&rho, &raw_ket(theta, phi), base);

    // Stage 1: grid scan, keeping the three best points (first hit wins ties
    // so the scan order fixes the outcome).
    let mut top = [(f64::INFINITY, [0.0_f64; 2]); 3];
    let mut evaluations = 0;
    for a in 0..params.grid_theta {
        let theta = (a as f64 + 0.5) * PI / params.grid_theta as f64;
        for b in 0..params.grid_phi {
            let phi = TAU * b as f64 / params.grid_phi as f64;
            let value = eval(theta, phi);
            evaluations += 1;
            if value < top[2].0 {
                top[2] = (value, [theta, phi]);
                for i in (0..2).rev() {
                    if top[i + 1].0 < top[i].0 {
                        top.swap(i + 1, i);
                    } else {
                        break;
                    }
                }
            }
        }
    }

    // Stage 2: simplex refinement from the three best grid points. When the
    // objective is flat along one angle (poles, diagonal states) the three
    // best points are collinear and would pin the simplex to a line, so a
    // degenerate triangle is rebuilt as a right simplex of one grid step
    // anchored at the best point. The best vertex is never discarded, so the
    // result cannot regress below the grid stage.
    let theta_step = PI / params.grid_theta as f64;
    let phi_step = TAU / params.grid_phi as f64;
    let mut simplex = [top[0].1, top[1].1, top[2].1];
    let cross = (simplex[1][0] - simplex[0][0]) * (simplex[2][1] - simplex[0][1])
        - (simplex[1][1] - simplex[0][1]) * (simplex[2][0] - simplex[0][0]);
    if cross.abs() < 0.1 * theta_step * phi_step {
        simplex[1] = [simplex[0][0] + theta_step, simplex[0][1]];
        simplex[2] = [simplex[0][0], simplex[0][1] + phi_step];
    }
    let solver = NelderMead::new(params.tolerance, params.max_iterations);
    let refined = solver.minimize(|x| eval(x[0], x[1]), simplex);
    evaluations += refined.evaluations;

    let (value, point) = if refined.value <= top[0].0 {
        (refined.value, refined.x)
    } else {
        (top[0].0, top[0].1)
    };
    Ok(ConditionalMinimum {
        value,
        basis: MeasurementBasis::from_unconstrained(point[0], point[1]),
        evaluations,
    })
}

/// Quantum discord of `state` with the measurement on qubit B, plus the
/// pieces it decomposes into.
#[derive(Clone, Copy, Debug)]
pub struct DiscordResult {
    pub discord: f64,
    pub mutual_information: f64,
    pub classical_correlation: f64,
    pub optimal_basis: MeasurementBasis,
    pub optimizer_evaluations: usize,
}

/// `𝒟(A:B) = I(A:B) − 𝒥(A:B)`, minimizing the measured conditional entropy
/// over rank-1 projective measurements on B. Roundoff negatives inside
/// `[−1e−6, 0)` clamp to zero; anything lower is a numeric-contract error.
pub fn quantum_discord(
    state: &TwoQubitState,
    params: &OptimizerParams,
    base: LogBase,
) -> Result<DiscordResult> {
    let h_a = qubit_entropy(&state.marginal_a(), base)?;
    let mutual = mutual_information(state, base)?;
    let minimum = minimize_conditional_entropy(state, params, base)?;
    let classical = h_a - minimum.value;
    let discord = mutual - classical;
    if discord < DISCORD_CLAMP_FLOOR {
        return Err(TopError::InvalidState(format!(
            "discord {discord:e} below the {DISCORD_CLAMP_FLOOR:e} floor"
        )));
    }
    Ok(DiscordResult {
        discord: discord.max(0.0),
        mutual_information: mutual,
        classical_correlation: classical,
        optimal_basis: minimum.basis,
        optimizer_evaluations: minimum.evaluations,
    })
}
