//! Ordering of straight vanishing paths by the argument of their initial
//! derivative.
//!
//! Paths are straight segments `t -> t * value` from the origin to each
//! critical value, indexed so the arguments of the initial derivatives
//! strictly decrease. Straight paths with equal arguments would overlap away
//! from the origin, so equal arguments are an error rather than a tie-break.

use num_complex::Complex64;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum VanishingError {
    #[error("critical value {0} is zero; the base point must be a regular value")]
    ZeroValue(usize),
    #[error(
        "values {a} and {b} have equal argument {arg}; straight paths would overlap"
    )]
    AmbiguousOrdering { a: Complex64, b: Complex64, arg: f64 },
}

/// A straight vanishing path `t -> t * target`, `t` in `[0, 1]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VanishingPath {
    /// 1-based position in the distinguished set.
    pub index: usize,
    pub target: Complex64,
}

impl VanishingPath {
    pub fn at(&self, t: f64) -> Complex64 {
        self.target * t
    }
}

const ARG_TIE_EPS: f64 = 1e-12;

/// Sorts the critical values into a distinguished set of straight paths:
/// strictly decreasing argument of the initial derivative, branch `(-pi, pi]`.
pub fn order_vanishing_paths(values: &[Complex64]) -> Result<Vec<VanishingPath>, VanishingError> {
    for (i, v) in values.iter().enumerate() {
        if v.norm() == 0.0 {
            return Err(VanishingError::ZeroValue(i));
        }
    }
    // atan2 returns (-pi, pi] with +pi for the negative real axis.
    let mut order: Vec<(f64, Complex64)> = values.iter().map(|v| (v.arg(), *v)).collect();
    order.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap());
    for w in order.windows(2) {
        if (w[0].0 - w[1].0).abs() < ARG_TIE_EPS {
            return Err(VanishingError::AmbiguousOrdering {
                a: w[0].1,
                b: w[1].1,
                arg: w[0].0,
            });
        }
    }
    Ok(order
        .into_iter()
        .enumerate()
        .map(|(i, (_, target))| VanishingPath {
            index: i + 1,
            target,
        })
        .collect())
}
