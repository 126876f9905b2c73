//! Critical points of the superpotential by multistart Newton iteration.
//!
//! Starts are drawn from a deterministic low-discrepancy sequence in an
//! annulus of moduli; every start runs an independent Newton iteration on the
//! gradient system, diverging starts are discarded, and converged points are
//! deduplicated and canonically sorted. The expected count is the normalized
//! volume of the Newton polytope; anything else is reported as an incomplete
//! search carrying the partial results.

use num_complex::Complex64;
use rayon::prelude::*;

use crate::laurent::{LaurentError, LaurentPolynomial};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum CriticalError {
    #[error("laurent error: {0}")]
    Laurent(#[from] LaurentError),
    #[error("degenerate Newton polytope: {0}")]
    Polytope(String),
    #[error(
        "critical point search found {found} of {expected} points after {starts} starts \
         ({kind})"
    )]
    IncompleteSearch {
        expected: usize,
        found: usize,
        starts: usize,
        kind: CountMismatch,
        partial: Vec<CriticalPoint>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CountMismatch {
    Undercount,
    Overcount,
}

impl std::fmt::Display for CountMismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CountMismatch::Undercount => f.write_str("undercount"),
            CountMismatch::Overcount => f.write_str("overcount"),
        }
    }
}

/// A nondegenerate critical point of `W`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CriticalPoint {
    pub location: (Complex64, Complex64),
    pub value: Complex64,
    pub hessian_det: Complex64,
}

#[derive(Debug, Clone)]
pub struct SolverOptions {
    /// Number of quasi-random starts.
    pub starts: usize,
    /// Annulus of start moduli for both coordinates.
    pub r_min: f64,
    pub r_max: f64,
    /// Gradient norm at which Newton is considered converged.
    pub newton_tol: f64,
    /// Two converged points closer than this are the same critical point.
    pub dedup_radius: f64,
    pub max_iterations: usize,
    /// Scrambles the low-discrepancy sequence; fixed seed, fixed output.
    pub seed: u64,
}

impl Default for SolverOptions {
    fn default() -> Self {
        SolverOptions {
            starts: 2000,
            r_min: 0.3,
            r_max: 3.0,
            newton_tol: 1e-12,
            dedup_radius: 1e-6,
            max_iterations: 80,
            seed: 0,
        }
    }
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e3779b97f4a7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d049bb133111eb);
    z ^ (z >> 31)
}

/// Kronecker (additive recurrence) sequence in dimension 4 based on the
/// generalized golden ratio, with a seed-dependent offset per dimension.
fn quasi_random_start(n: usize, seed: u64, r_min: f64, r_max: f64) -> (Complex64, Complex64) {
    // x^5 = x + 1 root, the dimension-4 member of the harmonious family.
    const PHI4: f64 = 1.167_303_978_261_418_7;
    let mut state = seed ^ 0x51a9_3790_c2f8_36d5;
    let mut u = [0.0f64; 4];
    let mut g = 1.0f64;
    for slot in &mut u {
        g /= PHI4;
        let offset = (splitmix64(&mut state) >> 11) as f64 / (1u64 << 53) as f64;
        *slot = ((n as f64 + 1.0) * g + offset).fract();
    }
    let log_ratio = (r_max / r_min).ln();
    let rx = r_min * (u[0] * log_ratio).exp();
    let ry = r_min * (u[2] * log_ratio).exp();
    let ax = std::f64::consts::TAU * u[1];
    let ay = std::f64::consts::TAU * u[3];
    (
        Complex64::from_polar(rx, ax),
        Complex64::from_polar(ry, ay),
    )
}

/// One Newton run on the gradient system; `None` on divergence.
fn newton_from(
    w: &LaurentPolynomial,
    mut x: Complex64,
    mut y: Complex64,
    opts: &SolverOptions,
) -> Option<(Complex64, Complex64)> {
    for _ in 0..opts.max_iterations {
        let (gx, gy) = w.gradient(x, y).ok()?;
        let gnorm = (gx.norm_sqr() + gy.norm_sqr()).sqrt();
        if !gnorm.is_finite() {
            return None;
        }
        if gnorm <= opts.newton_tol {
            return Some((x, y));
        }
        let h = w.hessian(x, y).ok()?;
        let det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        if det.norm() < 1e-14 {
            return None;
        }
        let dx = -(gx * h[1][1] - gy * h[0][1]) / det;
        let dy = -(h[0][0] * gy - h[1][0] * gx) / det;
        x += dx;
        y += dy;
        let (mx, my) = (x.norm(), y.norm());
        if !(1e-8..=1e8).contains(&mx) || !(1e-8..=1e8).contains(&my) {
            return None;
        }
    }
    None
}

fn canonical_cmp(a: &CriticalPoint, b: &CriticalPoint) -> std::cmp::Ordering {
    let ka = (a.location.0.re, a.location.0.im, a.location.1.re, a.location.1.im);
    let kb = (b.location.0.re, b.location.0.im, b.location.1.re, b.location.1.im);
    ka.partial_cmp(&kb).unwrap_or(std::cmp::Ordering::Equal)
}

/// Finds all critical points of `W`, requiring the count to match the
/// normalized Newton-polytope volume.
pub fn find_critical_points(
    w: &LaurentPolynomial,
    opts: &SolverOptions,
) -> Result<Vec<CriticalPoint>, CriticalError> {
    let expected = w
        .newton_volume()
        .map_err(|e| CriticalError::Polytope(e.to_string()))? as usize;

    // Independent work items; order of `collect` follows the start index, so
    // the result is identical at any parallelism level.
    let converged: Vec<Option<(Complex64, Complex64)>> = (0..opts.starts)
        .into_par_iter()
        .map(|n| {
            let (x, y) = quasi_random_start(n, opts.seed, opts.r_min, opts.r_max);
            newton_from(w, x, y, opts)
        })
        .collect();

    let mut distinct: Vec<(Complex64, Complex64)> = Vec::new();
    for (x, y) in converged.into_iter().flatten() {
        let dup = distinct.iter().any(|&(px, py)| {
            ((x - px).norm_sqr() + (y - py).norm_sqr()).sqrt() < opts.dedup_radius
        });
        if !dup {
            distinct.push((x, y));
        }
    }

    let mut points = Vec::with_capacity(distinct.len());
    for (x, y) in distinct {
        let value = w.evaluate(x, y)?;
        let h = w.hessian(x, y)?;
        let hessian_det = h[0][0] * h[1][1] - h[0][1] * h[1][0];
        points.push(CriticalPoint {
            location: (x, y),
            value,
            hessian_det,
        });
    }
    points.sort_by(canonical_cmp);

    if points.len() != expected {
        let kind = if points.len() < expected {
            CountMismatch::Undercount
        } else {
            CountMismatch::Overcount
        };
        return Err(CriticalError::IncompleteSearch {
            expected,
            found: points.len(),
            starts: opts.starts,
            kind,
            partial: points,
        });
    }
    Ok(points)
}

/// Tolerances for the exact-Morse-fibration checks.
#[derive(Debug, Clone, Copy)]
pub struct MorseTolerances {
    pub degenerate: f64,
    pub separation: f64,
}

impl Default for MorseTolerances {
    fn default() -> Self {
        MorseTolerances {
            degenerate: 1e-8,
            separation: 1e-6,
        }
    }
}

#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct MorseReport {
    /// Indices of points whose Hessian determinant is below tolerance.
    pub degenerate: Vec<usize>,
    /// Pairs of points whose critical values are too close.
    pub close_values: Vec<(usize, usize)>,
    pub pass: bool,
}

/// Flags degenerate Hessians and coincident critical values.
pub fn morse_report(points: &[CriticalPoint], tol: &MorseTolerances) -> MorseReport {
    let mut degenerate = Vec::new();
    let mut close_values = Vec::new();
    for (i, p) in points.iter().enumerate() {
        if p.hessian_det.norm() < tol.degenerate {
            degenerate.push(i);
        }
    }
    for i in 0..points.len() {
        for j in (i + 1)..points.len() {
            if (points[i].value - points[j].value).norm() < tol.separation {
                close_values.push((i, j));
            }
        }
    }
    let pass = degenerate.is_empty() && close_values.is_empty();
    MorseReport {
        degenerate,
        close_values,
        pass,
    }
}
