//! Shipped per-surface data: superpotential coefficients and solver options.
//!
//! Coefficient vectors are aligned with the canonical ray order of
//! [`crate::catalog::load_surface`]. The hexagonal surface uses the working
//! coefficient vector `(q1..q6) = (1, 1, 1, 0.215, 0.25, 0.3)` attached to
//! the rays `(1,0), (0,1), (-1,-1), (-1,0), (0,-1), (1,1)` in that labelling;
//! the other surfaces use all-ones coefficients, except where the symmetric
//! point has coincident critical values, in which case each coefficient is
//! perturbed by `0.0137 i` times its 1-based index.

use num_complex::Complex64;

use crate::catalog::{load_surface, Surface};
use crate::critical::SolverOptions;
use crate::laurent::{build_superpotential, LaurentPolynomial};

fn ones(n: usize) -> Vec<Complex64> {
    vec![Complex64::new(1.0, 0.0); n]
}

fn perturbed(n: usize) -> Vec<Complex64> {
    (1..=n)
        .map(|j| Complex64::new(1.0, 0.0137 * j as f64))
        .collect()
}

/// Shipped generic coefficients, in canonical ray order.
///
/// All-ones fails the distinct-critical-values check for P1xP1 (values
/// `{4, 0, 0, -4}`) and for the two larger blow-ups, so those use the
/// perturbed vector; the three-point blow-up ships the working vector.
pub fn default_coefficients(surface: Surface) -> Vec<Complex64> {
    match surface {
        Surface::P2 => ones(3),
        Surface::P1xP1 => perturbed(4),
        Surface::Bl1P2 => ones(4),
        Surface::Bl2P2 => perturbed(5),
        Surface::Bl3P2 => bl3_paper_coefficients(),
    }
}

/// The working Bl3 coefficient vector in canonical ray order
/// `(1,0), (1,1), (0,1), (-1,0), (-1,-1), (0,-1)`.
pub fn bl3_paper_coefficients() -> Vec<Complex64> {
    [1.0, 0.3, 1.0, 0.215, 1.0, 0.25]
        .into_iter()
        .map(|q| Complex64::new(q, 0.0))
        .collect()
}

/// Default multistart options.
///
/// The annulus must cover the basins of all critical points at the shipped
/// coefficients; the hexagonal surface's working vector has critical points
/// out to modulus ~4.7 and down to ~0.046, hence the wide range.
pub fn default_solver_options() -> SolverOptions {
    SolverOptions {
        starts: 2000,
        r_min: 0.02,
        r_max: 10.0,
        newton_tol: 1e-12,
        dedup_radius: 1e-6,
        max_iterations: 80,
        seed: 0,
    }
}

/// The shipped superpotential for a catalog surface.
pub fn default_superpotential(surface: Surface) -> LaurentPolynomial {
    let fan = load_surface(surface);
    build_superpotential(&fan, &default_coefficients(surface))
        .expect("shipped coefficients are valid")
}

/// The shipped vanishing-cycle configuration for the three-point blow-up,
/// produced by the configuration solver (`solve config --surface Bl3P2`)
/// and frozen as data. Its classes realize the hom-dimension matrix of the
/// exceptional collection, and its Fukaya presentation admits a signed
/// equivalence with the blow-up algebra.
pub fn default_bl3_config() -> crate::torus::TorusConfig {
    crate::torus::TorusConfig::from_json_str(include_str!("../data/bl3_default_config.json"))
        .expect("shipped configuration parses")
}
