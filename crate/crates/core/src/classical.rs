//! Classical limit of the kicked top: the unit vector `J/j` driven by a
//! rotation about y composed with a z-twist proportional to the post-rotation
//! z-component.
//!
//! The map equations follow the same sign conventions as the quantum Floquet
//! operator; the agreement is pinned by the large-`j` correspondence tests
//! below rather than assumed.

use crate::error::{Result, TopError};
use crate::spin::SphericalPoint;

/// Tolerance on `X² + Y² + Z² − 1` for vectors accepted as on-sphere.
pub const UNIT_TOL: f64 = 1e-12;

/// A point on the unit sphere: the classical limit of `⟨J⟩/j`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ClassicalSpin {
    x: f64,
    y: f64,
    z: f64,
}

impl ClassicalSpin {
    /// Requires the components to lie on the unit sphere within
    /// [`UNIT_TOL`]; use [`ClassicalSpin::normalized`] to rescale instead.
    pub fn new(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(TopError::InvalidParameter(format!(
                "spin components ({x}, {y}, {z}) must be finite"
            )));
        }
        let norm_error = (x * x + y * y + z * z - 1.0).abs();
        if norm_error > UNIT_TOL {
            return Err(TopError::InvalidParameter(format!(
                "spin components ({x}, {y}, {z}) off the unit sphere by {norm_error:e}"
            )));
        }
        Ok(Self { x, y, z })
    }

    /// Rescales an arbitrary nonzero vector onto the sphere.
    pub fn normalized(x: f64, y: f64, z: f64) -> Result<Self> {
        if !(x.is_finite() && y.is_finite() && z.is_finite()) {
            return Err(TopError::InvalidParameter(format!(
                "spin components ({x}, {y}, {z}) must be finite"
            )));
        }
        let norm = (x * x + y * y + z * z).sqrt();
        if norm == 0.0 {
            return Err(TopError::InvalidParameter(
                "cannot normalize the zero vector".into(),
            ));
        }
        Ok(Self {
            x: x / norm,
            y: y / norm,
            z: z / norm,
        })
    }

    pub fn x(&self) -> f64 {
        self.x
    }

    pub fn y(&self) -> f64 {
        self.y
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `(θ, φ)` with `θ = acos(Z)` and `φ = atan2(Y, X)`; at the poles
    /// `φ ≡ 0` by convention.
    pub fn to_spherical(&self) -> SphericalPoint {
        let theta = self.z.clamp(-1.0, 1.0).acos();
        let phi = if self.x == 0.0 && self.y == 0.0 {
            0.0
        } else {
            self.y.atan2(self.x)
        };
        SphericalPoint::new(theta, phi).expect("on-sphere point always yields valid angles")
    }

    /// `(sin θ cos φ, sin θ sin φ, cos θ)`.
    pub fn from_spherical(point: &SphericalPoint) -> Self {
        let (sin_theta, cos_theta) = point.theta().sin_cos();
        let (sin_phi, cos_phi) = point.phi().sin_cos();
        Self {
            x: sin_theta * cos_phi,
            y: sin_theta * sin_phi,
            z: cos_theta,
        }
    }
}

/// One kick of the classical map: rotate about y by `p`, then about z by
/// `κ·Z′` where `Z′` is the z-component after the rotation. The result is
/// renormalized to guard against drift.
pub fn classical_kick(s: &ClassicalSpin, kappa: f64, p: f64) -> ClassicalSpin {
    let (sin_p, cos_p) = p.sin_cos();
    let x1 = s.x * cos_p + s.z * sin_p;
    let y1 = s.y;
    let z1 = s.z * cos_p - s.x * sin_p;

    let beta = kappa * z1;
    let (sin_b, cos_b) = beta.sin_cos();
    let x2 = x1 * cos_b - y1 * sin_b;
    let y2 = x1 * sin_b + y1 * cos_b;

    let norm = (x2 * x2 + y2 * y2 + z1 * z1).sqrt();
    ClassicalSpin {
        x: x2 / norm,
        y: y2 / norm,
        z: z1 / norm,
    }
}

/// Stroboscopic trajectories for a set of initial conditions: each inner
/// vector holds the initial point followed by the direction after every kick
/// (`n_kicks + 1` entries), ordered by input index.
pub fn stroboscopic_scan(
    initial_points: &[SphericalPoint],
    kappa: f64,
    p: f64,
    n_kicks: usize,
) -> Vec<Vec<SphericalPoint>> {
    initial_points
        .iter()
        .map(|point| {
            let mut spin = ClassicalSpin::from_spherical(point);
            let mut trajectory = Vec::with_capacity(n_kicks + 1);
            trajectory.push(*point);
            for _ in 0..n_kicks {
                spin = classical_kick(&spin, kappa, p);
                trajectory.push(spin.to_spherical());
            }
            trajectory
        })
        .collect()
}
