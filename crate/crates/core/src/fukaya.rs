//! The directed Fukaya category of a torus configuration, assembled as a
//! directed algebra.
//!
//! Hom spaces are spanned by intersection points (empty for parallel pairs,
//! formal identities on the diagonal), and `m2` structure constants are the
//! signed triangle counts. `m1` vanishes structurally — two distinct
//! straight lifts meet at most once, so there are no bigons — and `m_k` for
//! `k >= 3` vanishes by the degree argument: with every generator in degree
//! zero and `m_k` of shifted degree one, only `k = 2` can act. The
//! A-infinity relations therefore reduce to associativity of `m2`, which is
//! checked exhaustively.

use rayon::prelude::*;

use crate::algebra::{DirectedAlgebra, Label, LinComb};
use crate::rational::RatPoint;
use crate::torus::{
    enumerate_triangles, grading_lifts, hom_points, validate_config, GradingOutcome, TorusConfig,
    TorusError,
};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum FukayaError {
    #[error("configuration is invalid: {0:?}")]
    InvalidConfig(Vec<String>),
    #[error("no zero-index grading exists (conflict at pair {0:?})")]
    GradingInfeasible((usize, usize)),
    #[error("torus error: {0}")]
    Torus(#[from] TorusError),
}

/// The Fukaya category of a configuration, presented on the intersection
/// basis.
#[derive(Debug, Clone)]
pub struct FukayaPresentation {
    pub config: TorusConfig,
    pub algebra: DirectedAlgebra,
    /// Intersection points per forward pair, aligned with the hom bases.
    pub points: std::collections::BTreeMap<(usize, usize), Vec<RatPoint>>,
    /// The grading lifts realizing Maslov index zero everywhere.
    pub lifts: Vec<f64>,
}

/// Label for the `idx`-th intersection point of the pair `(i, j)`, 1-based
/// objects to match the serialized algebra form.
pub fn point_label(i: usize, j: usize, idx: usize) -> Label {
    Label::new(format!("p{},{}:{}", i + 1, j + 1, idx))
}

/// Builds the directed Fukaya category of a validated configuration.
///
/// Structure constants for every composable chain come from
/// [`enumerate_triangles`]; chains are independent work items and the
/// assembly order is fixed by the chain index, so the result is identical at
/// any parallelism level.
pub fn build_category(cfg: &TorusConfig) -> Result<FukayaPresentation, FukayaError> {
    let report = validate_config(cfg);
    if !report.pass {
        return Err(FukayaError::InvalidConfig(report.failures));
    }
    let lifts = match grading_lifts(&cfg.cycles) {
        GradingOutcome::Feasible(lifts) => lifts,
        GradingOutcome::Infeasible(w) => return Err(FukayaError::GradingInfeasible(w.conflict)),
    };

    let n = cfg.cycles.len();
    let mut algebra = DirectedAlgebra::new(n);
    let mut points = std::collections::BTreeMap::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let pts = hom_points(cfg, i, j)?;
            if !pts.is_empty() {
                let labels = (0..pts.len()).map(|k| point_label(i, j, k)).collect();
                algebra.set_hom(i, j, labels);
            }
            points.insert((i, j), pts);
        }
    }

    // All composable chains with their cell dimensions.
    let mut chains = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if algebra.hom_dim(i, j) == 0 {
                continue;
            }
            for k in (j + 1)..n {
                if algebra.hom_dim(j, k) == 0 || algebra.hom_dim(i, k) == 0 {
                    continue;
                }
                for a in 0..algebra.hom_dim(i, j) {
                    for b in 0..algebra.hom_dim(j, k) {
                        chains.push((i, j, k, a, b));
                    }
                }
            }
        }
    }

    type Cell = (usize, usize, usize, usize, usize, Vec<i64>);
    let cells: Vec<Result<Cell, TorusError>> = chains
        .into_par_iter()
        .map(|(i, j, k, a, b)| {
            let groups = enumerate_triangles(cfg, (i, j, k), a, b)?;
            Ok((i, j, k, a, b, groups.signed_counts()))
        })
        .collect();

    for cell in cells {
        let (i, j, k, a, b, counts) = cell?;
        let mut out = LinComb::zero();
        for (idx, c) in counts.iter().enumerate() {
            out.add_term(*c, point_label(i, k, idx));
        }
        algebra.set_product(i, j, k, a, b, out);
    }

    Ok(FukayaPresentation {
        config: cfg.clone(),
        algebra,
        points,
        lifts,
    })
}

/// With `m1 = 0` and only `m2` nonzero, the A-infinity relations reduce to
/// associativity of `m2`; verified exhaustively over all composable chains.
pub fn check_a_infinity(fp: &FukayaPresentation) -> Vec<crate::algebra::AssociativityViolation> {
    crate::algebra::check_directed_associativity(&fp.algebra)
}
