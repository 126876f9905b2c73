//! Torus configurations: cycles, punctures, spin dots and grading lifts.

use serde::{Deserialize, Serialize};

use super::line::{intersections, TorusError, TorusLine};
use crate::rational::{Rat, RatPoint};

/// The combinatorial model of the fiber: straight cycles with marked data.
///
/// Punctures are the points missing from the open fiber; every holomorphic
/// triangle must avoid them. Dots encode the non-trivial spin structure: an
/// odd number per cycle, and the parity of dots on a triangle's boundary
/// gives its sign.
#[derive(Debug, Clone, PartialEq)]
pub struct TorusConfig {
    pub cycles: Vec<TorusLine>,
    pub punctures: Vec<RatPoint>,
    /// Per-cycle marked points, each on its own cycle.
    pub dots: Vec<Vec<RatPoint>>,
    /// Grading lifts, congruent mod 1 to each cycle's phase.
    pub lifts: Vec<f64>,
}

/// Wire form: dots ride inside each cycle record, rationals are exact
/// strings.
#[derive(Debug, Serialize, Deserialize)]
struct ConfigJson {
    cycles: Vec<CycleJson>,
    punctures: Vec<RatPoint>,
    lifts: Vec<f64>,
}

#[derive(Debug, Serialize, Deserialize)]
struct CycleJson {
    class: (i64, i64),
    offset: String,
    dots: Vec<RatPoint>,
}

impl TorusConfig {
    pub fn to_json(&self) -> serde_json::Value {
        let cycles = self
            .cycles
            .iter()
            .zip(&self.dots)
            .map(|(c, dots)| CycleJson {
                class: c.class(),
                offset: crate::rational::format_rat(c.offset()),
                dots: dots.clone(),
            })
            .collect();
        serde_json::to_value(ConfigJson {
            cycles,
            punctures: self.punctures.clone(),
            lifts: self.lifts.clone(),
        })
        .expect("config serialization cannot fail")
    }

    pub fn from_json(value: &serde_json::Value) -> Result<Self, TorusError> {
        let parsed: ConfigJson = serde_json::from_value(value.clone())
            .map_err(|e| TorusError::InvalidConfig(e.to_string()))?;
        let mut cycles = Vec::new();
        let mut dots = Vec::new();
        for c in parsed.cycles {
            let offset = crate::rational::parse_rat(&c.offset)
                .map_err(|e| TorusError::InvalidConfig(e.to_string()))?;
            cycles.push(TorusLine::new(c.class.0, c.class.1, offset)?);
            dots.push(c.dots);
        }
        Ok(TorusConfig {
            cycles,
            punctures: parsed.punctures,
            dots,
            lifts: parsed.lifts,
        })
    }

    pub fn from_json_str(s: &str) -> Result<Self, TorusError> {
        let value: serde_json::Value =
            serde_json::from_str(s).map_err(|e| TorusError::InvalidConfig(e.to_string()))?;
        Self::from_json(&value)
    }
}

/// Validation report; failures are carried with the offending element named.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ConfigReport {
    pub failures: Vec<String>,
    pub pass: bool,
}

/// Checks every `TorusConfig` invariant.
pub fn validate_config(cfg: &TorusConfig) -> ConfigReport {
    let mut failures = Vec::new();
    let n = cfg.cycles.len();

    if cfg.dots.len() != n {
        failures.push(format!(
            "dot lists ({}) do not match cycle count ({n})",
            cfg.dots.len()
        ));
    }
    if cfg.lifts.len() != n {
        failures.push(format!(
            "grading lifts ({}) do not match cycle count ({n})",
            cfg.lifts.len()
        ));
    }

    // Distinct cycles; parallel cycles must have distinct offsets.
    for i in 0..n {
        for j in (i + 1)..n {
            if cfg.cycles[i] == cfg.cycles[j] {
                failures.push(format!("cycles {} and {} coincide", i + 1, j + 1));
            }
        }
    }

    // Genericity: no three pairwise-transverse cycles through a common
    // point. At a triple point the would-be balancing triangle degenerates
    // to a constant map, and the composition counts stop being associative.
    for i in 0..n {
        for j in (i + 1)..n {
            if cfg.cycles[i].is_parallel(&cfg.cycles[j]) {
                continue;
            }
            if let Ok(points) = intersections(&cfg.cycles[i], &cfg.cycles[j]) {
                for k in (j + 1)..n {
                    if cfg.cycles[k].is_parallel(&cfg.cycles[i])
                        || cfg.cycles[k].is_parallel(&cfg.cycles[j])
                    {
                        continue;
                    }
                    for p in &points {
                        if cfg.cycles[k].contains(p) {
                            failures.push(format!(
                                "cycles {}, {} and {} pass through the common point {p}",
                                i + 1,
                                j + 1,
                                k + 1
                            ));
                        }
                    }
                }
            }
        }
    }

    // Punctures off every cycle, pairwise distinct.
    for (pi, p) in cfg.punctures.iter().enumerate() {
        for (ci, c) in cfg.cycles.iter().enumerate() {
            if c.contains(p) {
                failures.push(format!("puncture {} lies on cycle {}", pi + 1, ci + 1));
            }
        }
    }
    for i in 0..cfg.punctures.len() {
        for j in (i + 1)..cfg.punctures.len() {
            if cfg.punctures[i].reduced() == cfg.punctures[j].reduced() {
                failures.push(format!("punctures {} and {} coincide", i + 1, j + 1));
            }
        }
    }

    // Dots: on their own cycle, off every other cycle (hence never at an
    // intersection point), odd count per cycle.
    for (ci, dots) in cfg.dots.iter().enumerate().take(n) {
        if dots.len() % 2 == 0 {
            failures.push(format!(
                "cycle {} carries an even number of dots ({}); the spin structure needs an odd count",
                ci + 1,
                dots.len()
            ));
        }
        for (di, d) in dots.iter().enumerate() {
            if !cfg.cycles[ci].contains(d) {
                failures.push(format!("dot {} is not on cycle {}", di + 1, ci + 1));
            }
            for (cj, other) in cfg.cycles.iter().enumerate() {
                if cj != ci && other.contains(d) {
                    failures.push(format!(
                        "dot {} of cycle {} lies on cycle {} (an intersection point)",
                        di + 1,
                        ci + 1,
                        cj + 1
                    ));
                }
            }
        }
    }

    // Lifts congruent mod 1 to the phase; parallel cycles share a lift.
    for (ci, c) in cfg.cycles.iter().enumerate() {
        if ci >= cfg.lifts.len() {
            break;
        }
        let residue = (cfg.lifts[ci] - c.phase()).rem_euclid(1.0);
        let dist = residue.min(1.0 - residue);
        if dist > 1e-9 {
            failures.push(format!(
                "grading lift of cycle {} is not congruent to its phase (residue {dist:.2e})",
                ci + 1
            ));
        }
        for cj in 0..ci {
            if cj < cfg.lifts.len()
                && cfg.cycles[ci].is_parallel(&cfg.cycles[cj])
                && (cfg.lifts[ci] - cfg.lifts[cj]).abs() > 1e-9
            {
                failures.push(format!(
                    "parallel cycles {} and {} carry different lifts",
                    cj + 1,
                    ci + 1
                ));
            }
        }
    }

    let pass = failures.is_empty();
    ConfigReport { failures, pass }
}

/// Hom dimensions implied by the classes alone: `|det|` for non-parallel
/// pairs, 0 for parallel pairs.
pub fn geometric_dimensions(cfg: &TorusConfig) -> Vec<Vec<usize>> {
    let n = cfg.cycles.len();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        1
                    } else if i > j {
                        0
                    } else {
                        super::line::class_det(cfg.cycles[i].class(), cfg.cycles[j].class())
                            .unsigned_abs() as usize
                    }
                })
                .collect()
        })
        .collect()
}

/// Intersection basis for a forward pair, empty for parallel classes.
pub fn hom_points(cfg: &TorusConfig, i: usize, j: usize) -> Result<Vec<RatPoint>, TorusError> {
    if i >= cfg.cycles.len() || j >= cfg.cycles.len() {
        return Err(TorusError::IndexOutOfRange(i.max(j), "cycles"));
    }
    if cfg.cycles[i].is_parallel(&cfg.cycles[j]) {
        return Ok(Vec::new());
    }
    intersections(&cfg.cycles[i], &cfg.cycles[j])
}

/// A deterministic generic dot position on each cycle: walk from the base
/// point in small steps until clear of every other cycle.
pub fn place_default_dots(cycles: &[TorusLine]) -> Result<Vec<Vec<RatPoint>>, TorusError> {
    let mut dots = Vec::with_capacity(cycles.len());
    for (ci, c) in cycles.iter().enumerate() {
        let mut placed = None;
        'search: for denom in [37i128, 41, 43, 47, 53] {
            for num in 1..denom {
                let p = c.point_at(&Rat::new(num, denom));
                let clear = cycles
                    .iter()
                    .enumerate()
                    .all(|(cj, other)| cj == ci || !other.contains(&p));
                if clear {
                    placed = Some(p);
                    break 'search;
                }
            }
        }
        match placed {
            Some(p) => dots.push(vec![p]),
            None => {
                return Err(TorusError::InvalidConfig(format!(
                    "could not place a dot on cycle {}",
                    ci + 1
                )))
            }
        }
    }
    Ok(dots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn simple_config() -> TorusConfig {
        let cycles = vec![
            TorusLine::new(1, 0, rat(0, 1)).unwrap(),
            TorusLine::new(0, 1, rat(1, 2)).unwrap(),
        ];
        let dots = place_default_dots(&cycles).unwrap();
        TorusConfig {
            cycles,
            punctures: vec![RatPoint::new(rat(1, 4), rat(1, 3))],
            dots,
            lifts: vec![0.0, -0.5],
        }
    }

    #[test]
    fn valid_config_passes() {
        let report = validate_config(&simple_config());
        assert!(report.pass, "{:?}", report.failures);
    }

    #[test]
    fn puncture_on_cycle_names_the_cycle() {
        let mut cfg = simple_config();
        cfg.punctures.push(RatPoint::new(rat(1, 3), rat(0, 1)));
        let report = validate_config(&cfg);
        assert!(!report.pass);
        assert!(report.failures.iter().any(|f| f.contains("cycle 1")), "{:?}", report.failures);
    }

    #[test]
    fn triple_concurrence_is_rejected() {
        // y = 0, 2x - 3y = 1/6 and x - 3y = 1/12 share the point (1/12, 0).
        let cycles = vec![
            TorusLine::new(1, 0, rat(0, 1)).unwrap(),
            TorusLine::new(3, 2, rat(1, 6)).unwrap(),
            TorusLine::new(3, 1, rat(1, 12)).unwrap(),
        ];
        let dots = place_default_dots(&cycles).unwrap();
        let cfg = TorusConfig {
            lifts: cycles.iter().map(TorusLine::phase).collect(),
            cycles,
            punctures: vec![RatPoint::new(rat(1, 5), rat(2, 7))],
            dots,
        };
        let report = validate_config(&cfg);
        assert!(!report.pass);
        assert!(report
            .failures
            .iter()
            .any(|f| f.contains("common point")), "{:?}", report.failures);
    }

    #[test]
    fn even_dot_count_fails_spin() {
        let mut cfg = simple_config();
        let extra = cfg.cycles[0].point_at(&rat(21, 53));
        cfg.dots[0].push(extra);
        let report = validate_config(&cfg);
        assert!(!report.pass);
        assert!(report.failures.iter().any(|f| f.contains("even number of dots")));
    }

    #[test]
    fn inconsistent_lift_is_flagged() {
        let mut cfg = simple_config();
        cfg.lifts[1] = -0.25;
        let report = validate_config(&cfg);
        assert!(!report.pass);
    }

    #[test]
    fn json_round_trip() {
        let cfg = simple_config();
        let v = cfg.to_json();
        let back = TorusConfig::from_json(&v).unwrap();
        assert_eq!(cfg, back);
        // Rationals serialize as exact strings.
        assert_eq!(v["cycles"][1]["offset"], "1/2");
    }
}
