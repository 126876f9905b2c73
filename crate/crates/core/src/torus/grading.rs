//! Grading lifts and Maslov indices for straight graded cycles.
//!
//! Each cycle's squared-phase function is constant, so a grading is one real
//! number per cycle, congruent mod 1 to the direction angle over pi. For a
//! transverse graded pair the Maslov index of every intersection point is
//! `floor(lift_j - lift_i) + 1`; the distinguished-basis condition "all
//! forward indices zero" pins `lift_j - lift_i` into `(-1, 0)`, which forces
//! the integer parts and makes feasibility a pure consistency check.

use serde::Serialize;

use super::line::{TorusError, TorusLine};

/// Why no zero-index grading exists: a chain of forced integer differences
/// that closes up inconsistently.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InfeasibilityWitness {
    /// The pair whose forced difference contradicts the propagated values.
    pub conflict: (usize, usize),
    /// Pairs whose constraints propagated the values leading to the
    /// conflict (a chain from the base cycle).
    pub chain: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum GradingOutcome {
    Feasible(Vec<f64>),
    Infeasible(InfeasibilityWitness),
}

/// Finds lifts with every forward non-parallel difference in `(-1, 0)`
/// (hence every forward Maslov index zero), or returns a witness that no
/// integer choice works. Parallel cycles receive equal lifts.
pub fn grading_lifts(cycles: &[TorusLine]) -> GradingOutcome {
    let n = cycles.len();
    if n == 0 {
        return GradingOutcome::Feasible(Vec::new());
    }
    let phases: Vec<f64> = cycles.iter().map(TorusLine::phase).collect();

    // For i < j non-parallel: lift_j - lift_i in (-1, 0) forces
    // n_j - n_i = -1 if phase_j > phase_i else 0 (phases differ iff
    // non-parallel). Parallel: n_j = n_i. Propagate from cycle 0 and check
    // every pair.
    let forced = |i: usize, j: usize| -> i64 {
        if cycles[i].is_parallel(&cycles[j]) {
            0
        } else if phases[j] > phases[i] {
            -1
        } else {
            0
        }
    };

    let mut level = vec![0i64; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    for j in 1..n {
        // Propagate along the edge from the previous cycle; any spanning
        // set works because all constraints are then cross-checked.
        level[j] = level[j - 1] + forced(j - 1, j);
        parent[j] = Some(j - 1);
    }
    for i in 0..n {
        for j in (i + 1)..n {
            if level[j] - level[i] != forced(i, j) {
                let mut chain = Vec::new();
                let mut k = j;
                while let Some(p) = parent[k] {
                    chain.push((p, k));
                    k = p;
                }
                chain.reverse();
                return GradingOutcome::Infeasible(InfeasibilityWitness {
                    conflict: (i, j),
                    chain,
                });
            }
        }
    }

    GradingOutcome::Feasible(
        (0..n)
            .map(|i| phases[i] + level[i] as f64)
            .collect(),
    )
}

/// Margin below which a lift difference is too close to an integer for the
/// floor to be trusted.
pub const FLOOR_MARGIN: f64 = 1e-9;

/// The Maslov index of any intersection point of the ordered graded pair
/// `(from, to)`; constant along the pair for straight cycles.
pub fn maslov_index(
    cycles: &[TorusLine],
    lifts: &[f64],
    from: usize,
    to: usize,
) -> Result<i64, TorusError> {
    if cycles[from].is_parallel(&cycles[to]) {
        return Err(TorusError::UndefinedIndex);
    }
    let x = lifts[to] - lifts[from];
    let nearest = x.round();
    if (x - nearest).abs() < FLOOR_MARGIN {
        return Err(TorusError::FloorMargin(x));
    }
    Ok(x.floor() as i64 + 1)
}
