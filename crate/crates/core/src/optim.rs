//! Deterministic two-dimensional Nelder–Mead simplex minimization.
//!
//! Fixed standard coefficients and no randomized restarts: identical inputs
//! produce identical iterates bit for bit, which the discord measurement
//! search relies on for reproducible sweeps across thread schedules.

/// Reflection coefficient.
const ALPHA: f64 = 1.0;
/// Expansion coefficient.
const GAMMA: f64 = 2.0;
/// Contraction coefficient.
const RHO: f64 = 0.5;
/// Shrink coefficient.
const SIGMA: f64 = 0.5;

/// Simplex search configuration: stop once the simplex diameter falls below
/// `tolerance` or after `max_iterations` loop passes.
#[derive(Clone, Copy, Debug)]
pub struct NelderMead {
    pub tolerance: f64,
    pub max_iterations: usize,
}

/// Result of a simplex search.
#[derive(Clone, Copy, Debug)]
pub struct Minimum {
    pub x: [f64; 2],
    pub value: f64,
    pub evaluations: usize,
    pub iterations: usize,
}

/// `c + t·(w − c)`: every Nelder–Mead trial point lies on the line through
/// the centroid `c` and the worst vertex `w`.
fn along(c: [f64; 2], w: [f64; 2], t: f64) -> [f64; 2] {
    [c[0] + t * (w[0] - c[0]), c[1] + t * (w[1] - c[1])]
}

fn distance(a: [f64; 2], b: [f64; 2]) -> f64 {
    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
}

fn diameter(vertices: &[([f64; 2], f64); 3]) -> f64 {
    distance(vertices[0].0, vertices[1].0)
        .max(distance(vertices[0].0, vertices[2].0))
        .max(distance(vertices[1].0, vertices[2].0))
}

impl NelderMead {
    pub fn new(tolerance: f64, max_iterations: usize) -> Self {
        Self {
            tolerance,
            max_iterations,
        }
    }

    /// Minimizes `f` starting from the given simplex. Vertex ordering breaks
    /// ties by insertion order (stable sort on the values), so flat regions
    /// shrink deterministically instead of cycling.
    pub fn minimize<F>(&self, mut f: F, simplex: [[f64; 2]; 3]) -> Minimum
    where
        F: FnMut(&[f64; 2]) -> f64,
    {
        let mut evaluations = 0;
        let mut vertices = simplex.map(|x| {
            evaluations += 1;
            (x, f(&x))
        });
        let mut iterations = 0;
        loop {
            vertices.sort_by(|a, b| a.1.total_cmp(&b.1));
            if diameter(&vertices) < self.tolerance || iterations >= self.max_iterations {
                break;
            }
            iterations += 1;

            let worst = vertices[2];
            let centroid = [
                (vertices[0].0[0] + vertices[1].0[0]) / 2.0,
                (vertices[0].0[1] + vertices[1].0[1]) / 2.0,
            ];
            let reflected = along(centroid, worst.0, -ALPHA);
            evaluations += 1;
            let f_reflected = f(&reflected);

            if f_reflected < vertices[0].1 {
                let expanded = along(centroid, worst.0, -ALPHA * GAMMA);
                evaluations += 1;
                let f_expanded = f(&expanded);
                vertices[2] = if f_expanded < f_reflected {
                    (expanded, f_expanded)
                } else {
                    (reflected, f_reflected)
                };
            } else if f_reflected < vertices[1].1 {
                vertices[2] = (reflected, f_reflected);
            } else if f_reflected < worst.1 {
                // Outside contraction.
                let contracted = along(centroid, worst.0, -ALPHA * RHO);
                evaluations += 1;
                let f_contracted = f(&contracted);
                if f_contracted <= f_reflected {
                    vertices[2] = (contracted, f_contracted);
                } else {
                    shrink(&mut vertices, &mut f, &mut evaluations);
                }
            } else {
                // Inside contraction.
                let contracted = along(centroid, worst.0, RHO);
                evaluations += 1;
                let f_contracted = f(&contracted);
                if f_contracted < worst.1 {
                    vertices[2] = (contracted, f_contracted);
                } else {
                    shrink(&mut vertices, &mut f, &mut evaluations);
                }
            }
        }
        Minimum {
            x: vertices[0].0,
            value: vertices[0].1,
            evaluations,
            iterations,
        }
    }
}

fn shrink<F>(vertices: &mut [([f64; 2], f64); 3], f: &mut F, evaluations: &mut usize)
where
    F: FnMut(&[f64; 2]) -> f64,
{
    let best = vertices[0].0;
    for vertex in vertices.iter_mut().skip(1) {
        vertex.0 = along(best, vertex.0, SIGMA);
        *evaluations += 1;
        vertex.1 = f(&vertex.0);
    }
}
