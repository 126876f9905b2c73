//! Branch points of the double-cover projection of a hexagonal fiber, and
//! their continuation along vanishing paths.
//!
//! Writing `W(x, y) = t` and clearing `x` gives the quadratic
//! `x^2 (q1 + q6 y) + x (q2 y + q5/y - t) + (q4 + q3/y) = 0`,
//! so the projection `(x, y) -> y` is two-to-one away from the roots of the
//! discriminant quartic
//! `D(y; t) = (q2 y^2 - t y + q5)^2 - 4 y (q1 + q6 y)(q4 y + q3)`.
//! Tracing those four roots along a vanishing path exhibits the pair that
//! collides over the critical value.

use num_complex::Complex64;

use crate::laurent::LaurentPolynomial;
use crate::vanishing::VanishingPath;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BranchError {
    #[error("superpotential does not have the hexagonal shape (monomials {0:?})")]
    WrongShape(Vec<(i64, i64)>),
    #[error("quartic root finder did not converge (residual {0:.3e})")]
    NoConvergence(f64),
    #[error("root matching stayed ambiguous at the minimal step size near t = {0}")]
    TracingFailed(f64),
}

/// Coefficients `q1..q6` in the hexagon labelling: `q1 x + q2 y + q3/(xy) +
/// q4/x + q5/y + q6 xy`.
fn hexagon_coefficients(w: &LaurentPolynomial) -> Result<[Complex64; 6], BranchError> {
    const EXPONENTS: [(i64, i64); 6] = [(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)];
    let monomials: Vec<(i64, i64)> = w.terms().map(|(&e, _)| e).collect();
    let mut sorted = monomials.clone();
    sorted.sort_unstable();
    let mut expect = EXPONENTS.to_vec();
    expect.sort_unstable();
    if sorted != expect {
        return Err(BranchError::WrongShape(monomials));
    }
    Ok(EXPONENTS.map(|e| w.coefficient(e)))
}

/// The discriminant quartic in `y`, lowest degree first.
fn discriminant_quartic(q: &[Complex64; 6], t: Complex64) -> [Complex64; 5] {
    let [q1, q2, q3, q4, q5, q6] = *q;
    [
        q5 * q5,
        -2.0 * q5 * t - 4.0 * q1 * q3,
        t * t + 2.0 * q2 * q5 - 4.0 * q1 * q4 - 4.0 * q3 * q6,
        -2.0 * q2 * t - 4.0 * q4 * q6,
        q2 * q2,
    ]
}

fn eval_poly(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// All roots of a polynomial by Durand-Kerner iteration with a deterministic
/// start; the caller checks residuals.
fn all_roots(coeffs: &[Complex64]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Cauchy-style radius keeps the start spread around all roots.
    let radius = 1.0
        + monic
            .iter()
            .take(n)
            .map(|c| c.norm())
            .fold(0.0f64, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n)
        .map(|k| seed.powu(k as u32 + 1) * radius / seed.norm().powi(k as i32 + 1)
            * Complex64::from_polar(1.0, 0.37))
        .collect();
    for _ in 0..200 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let step = eval_poly(&monic, z[i]) / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-14 {
            break;
        }
    }
    z
}

/// The four roots of the discriminant quartic `D(y; t)`, in canonical order
/// (by real part, then imaginary part).
pub fn branch_points(w: &LaurentPolynomial, t: Complex64) -> Result<[Complex64; 4], BranchError> {
    let q = hexagon_coefficients(w)?;
    let coeffs = discriminant_quartic(&q, t);
    let mut roots = all_roots(&coeffs);
    let scale = 1.0 + coeffs.iter().map(|c| c.norm()).fold(0.0f64, f64::max);
    for r in &roots {
        let residual = eval_poly(&coeffs, *r).norm();
        if residual > 1e-9 * scale {
            return Err(BranchError::NoConvergence(residual / scale));
        }
    }
    roots.sort_by(|a, b| (a.re, a.im).partial_cmp(&(b.re, b.im)).unwrap());
    Ok([roots[0], roots[1], roots[2], roots[3]])
}

/// Branch-point positions sampled along a vanishing path, continuously
/// matched between samples.
#[derive(Debug, Clone)]
pub struct BranchTrajectory {
    /// `(t, roots)` samples; roots at consecutive samples are matched.
    pub samples: Vec<(f64, [Complex64; 4])>,
    /// Whether exactly two roots merge at `t = 1` within tolerance.
    pub collision: bool,
    /// Minimal pairwise root distance at `t = 1`.
    pub final_min_gap: f64,
}

const COLLISION_TOL: f64 = 1e-5;
/// Roots closer than this are treated as a merged cluster when checking
/// matching ambiguity (the colliding pair near the end of the path).
const MERGE_EPS: f64 = 1e-4;
/// A path whose image passes over another critical value forces the step
/// size down like the distance to that crossing; the floor only guards
/// against a genuinely stuck continuation.
const MIN_STEP: f64 = 1e-12;
const MAX_SAMPLES: usize = 200_000;

fn min_gap_outside_clusters(roots: &[Complex64; 4]) -> f64 {
    let mut m = f64::INFINITY;
    for i in 0..4 {
        for j in (i + 1)..4 {
            let d = (roots[i] - roots[j]).norm();
            if d > MERGE_EPS {
                m = m.min(d);
            }
        }
    }
    m
}

/// Best assignment of `next` to `prev` over all 24 permutations; returns the
/// permuted roots and the largest single match distance.
fn match_roots(prev: &[Complex64; 4], next: &[Complex64; 4]) -> ([Complex64; 4], f64) {
    const PERMS: [[usize; 4]; 24] = {
        let mut perms = [[0usize; 4]; 24];
        let mut idx = 0;
        let mut a = 0;
        while a < 4 {
            let mut b = 0;
            while b < 4 {
                if b != a {
                    let mut c = 0;
                    while c < 4 {
                        if c != a && c != b {
                            let mut d = 0;
                            while d < 4 {
                                if d != a && d != b && d != c {
                                    perms[idx] = [a, b, c, d];
                                    idx += 1;
                                }
                                d += 1;
                            }
                        }
                        c += 1;
                    }
                }
                b += 1;
            }
            a += 1;
        }
        perms
    };
    let mut best = ([Complex64::default(); 4], f64::INFINITY, f64::INFINITY);
    for perm in PERMS {
        let assigned = [next[perm[0]], next[perm[1]], next[perm[2]], next[perm[3]]];
        let mut total = 0.0;
        let mut worst = 0.0f64;
        for k in 0..4 {
            let d = (assigned[k] - prev[k]).norm();
            total += d;
            worst = worst.max(d);
        }
        if total < best.1 {
            best = (assigned, total, worst);
        }
    }
    (best.0, best.2)
}

/// Traces the branch points along `path` with nearest-neighbor continuation
/// and adaptive step halving; flags a collision when two roots merge at the
/// endpoint.
pub fn trace_branch_points(
    w: &LaurentPolynomial,
    path: &VanishingPath,
    steps: usize,
) -> Result<BranchTrajectory, BranchError> {
    let steps = steps.max(1);
    let mut t = 0.0f64;
    let mut h = 1.0 / steps as f64;
    let mut current = branch_points(w, path.at(0.0))?;
    let mut samples = vec![(0.0, current)];

    while t < 1.0 {
        let t_next = (t + h).min(1.0);
        let roots = branch_points(w, path.at(t_next))?;
        let (assigned, worst) = match_roots(&current, &roots);
        // A step is safe when every root moved much less than the gap
        // between distinct roots; the colliding pair is exempted once it is
        // within the merge window.
        let gap = min_gap_outside_clusters(&current).min(min_gap_outside_clusters(&roots));
        let safe = worst < 0.4 * gap || worst < MERGE_EPS;
        if safe {
            t = t_next;
            current = assigned;
            samples.push((t, current));
            h = (h * 1.9).min(1.0 / steps as f64);
        } else {
            h /= 2.0;
            if h < MIN_STEP {
                return Err(BranchError::TracingFailed(t));
            }
        }
        if samples.len() > MAX_SAMPLES {
            return Err(BranchError::TracingFailed(t));
        }
    }

    let last = samples.last().unwrap().1;
    let mut final_min_gap = f64::INFINITY;
    for i in 0..4 {
        for j in (i + 1)..4 {
            final_min_gap = final_min_gap.min((last[i] - last[j]).norm());
        }
    }
    Ok(BranchTrajectory {
        samples,
        collision: final_min_gap < COLLISION_TOL,
        final_min_gap,
    })
}
