//! Laurent polynomials in two variables with complex coefficients.
//!
//! The mirror superpotential `W = sum_i q_i x^{a_i} y^{b_i}` of a toric
//! surface has one monomial per fan ray. Terms live in a BTreeMap keyed by
//! exponent pair so iteration order (and everything derived from it) is
//! deterministic.

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;

use crate::catalog::{convex_hull, normalized_volume, Fan};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LaurentError {
    #[error("coefficient count {got} does not match ray count {expected}")]
    CoefficientCount { expected: usize, got: usize },
    #[error("coefficient {index} is zero; all monomial coefficients must be nonzero")]
    ZeroCoefficient { index: usize },
    #[error("evaluation at a point with a zero coordinate")]
    ZeroCoordinate,
    #[error("polynomial has no terms")]
    Empty,
}

/// Exponent-vector to coefficient map; zero coefficients are never stored.
#[derive(Debug, Clone, PartialEq)]
pub struct LaurentPolynomial {
    terms: BTreeMap<(i64, i64), Complex64>,
}

impl LaurentPolynomial {
    pub fn from_terms(
        terms: impl IntoIterator<Item = ((i64, i64), Complex64)>,
    ) -> Result<Self, LaurentError> {
        let mut map = BTreeMap::new();
        for (exp, c) in terms {
            if c != Complex64::new(0.0, 0.0) {
                *map.entry(exp).or_insert(Complex64::new(0.0, 0.0)) += c;
            }
        }
        map.retain(|_, c| *c != Complex64::new(0.0, 0.0));
        if map.is_empty() {
            return Err(LaurentError::Empty);
        }
        Ok(LaurentPolynomial { terms: map })
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(i64, i64), &Complex64)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coefficient(&self, exp: (i64, i64)) -> Complex64 {
        self.terms.get(&exp).copied().unwrap_or_default()
    }

    /// Normalized volume of the Newton polytope of the exponent vectors;
    /// the generic critical-point count.
    pub fn newton_volume(&self) -> Result<i64, crate::catalog::CatalogError> {
        let pts: Vec<(i64, i64)> = self.terms.keys().copied().collect();
        Ok(normalized_volume(&convex_hull(&pts)?))
    }

    pub fn evaluate(&self, x: Complex64, y: Complex64) -> Result<Complex64, LaurentError> {
        self.check_point(x, y)?;
        let mut acc = Complex64::new(0.0, 0.0);
        for (&(a, b), &c) in &self.terms {
            acc += c * x.powi(a as i32) * y.powi(b as i32);
        }
        Ok(acc)
    }

    /// `(dW/dx, dW/dy)` by exact term-wise differentiation.
    pub fn gradient(&self, x: Complex64, y: Complex64) -> Result<(Complex64, Complex64), LaurentError> {
        self.check_point(x, y)?;
        let mut gx = Complex64::new(0.0, 0.0);
        let mut gy = Complex64::new(0.0, 0.0);
        for (&(a, b), &c) in &self.terms {
            let m = x.powi(a as i32) * y.powi(b as i32);
            gx += c * (a as f64) * m / x;
            gy += c * (b as f64) * m / y;
        }
        Ok((gx, gy))
    }

    /// Hessian `[[Wxx, Wxy], [Wxy, Wyy]]`.
    pub fn hessian(&self, x: Complex64, y: Complex64) -> Result<[[Complex64; 2]; 2], LaurentError> {
        self.check_point(x, y)?;
        let mut xx = Complex64::new(0.0, 0.0);
        let mut xy = Complex64::new(0.0, 0.0);
        let mut yy = Complex64::new(0.0, 0.0);
        for (&(a, b), &c) in &self.terms {
            let m = c * x.powi(a as i32) * y.powi(b as i32);
            let (af, bf) = (a as f64, b as f64);
            xx += m * af * (af - 1.0) / (x * x);
            xy += m * af * bf / (x * y);
            yy += m * bf * (bf - 1.0) / (y * y);
        }
        Ok([[xx, xy], [xy, yy]])
    }

    fn check_point(&self, x: Complex64, y: Complex64) -> Result<(), LaurentError> {
        if x == Complex64::new(0.0, 0.0) || y == Complex64::new(0.0, 0.0) {
            return Err(LaurentError::ZeroCoordinate);
        }
        Ok(())
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for (&(a, b), c) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            write!(f, "({c}) x^{a} y^{b}")?;
        }
        Ok(())
    }
}

/// `W = sum_i q_i x^{v_i1} y^{v_i2}` over the fan's rays (in canonical ray
/// order).
pub fn build_superpotential(
    fan: &Fan,
    coeffs: &[Complex64],
) -> Result<LaurentPolynomial, LaurentError> {
    if coeffs.len() != fan.rays.len() {
        return Err(LaurentError::CoefficientCount {
            expected: fan.rays.len(),
            got: coeffs.len(),
        });
    }
    if let Some(index) = coeffs.iter().position(|c| *c == Complex64::new(0.0, 0.0)) {
        return Err(LaurentError::ZeroCoefficient { index });
    }
    LaurentPolynomial::from_terms(
        fan.rays
            .iter()
            .zip(coeffs.iter())
            .map(|(r, &q)| ((r.x(), r.y()), q)),
    )
}
