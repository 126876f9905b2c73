//! Associativity of the geometric composition on randomized
//! configurations.
//!
//! With every generator in degree zero, the composition of signed triangle
//! counts must be associative for any valid configuration, not just the
//! shipped one — higher products are excluded by degree. A randomized sweep
//! over offsets and puncture sets exercises the enumeration engine (radius
//! certificates, blocking tests, dot parities) far from the shipped data.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use hms_core::fukaya::{build_category, check_a_infinity};
use hms_core::rational::{rat, RatPoint};
use hms_core::torus::{place_default_dots, validate_config, TorusConfig, TorusLine};

fn random_config(rng: &mut ChaCha8Rng) -> Option<TorusConfig> {
    // Classes with a feasible grading: a horizontal cycle, a vertical one,
    // and two slanted ones with decreasing phases.
    let classes: [(i64, i64); 4] = [(1, 0), (0, 1), (3, 2), (3, 1)];
    let denom = 12i128;
    let cycles: Vec<TorusLine> = classes
        .iter()
        .map(|&(a, b)| TorusLine::new(a, b, rat(rng.gen_range(0..denom), denom)).unwrap())
        .collect();
    let mut punctures = Vec::new();
    for _ in 0..rng.gen_range(2..=5) {
        let p = RatPoint::new(
            rat(rng.gen_range(0..24), 24) + rat(1, 48),
            rat(rng.gen_range(0..24), 24) + rat(1, 48),
        );
        if !punctures.contains(&p) {
            punctures.push(p);
        }
    }
    let dots = place_default_dots(&cycles).ok()?;
    let lifts = match hms_core::torus::grading_lifts(&cycles) {
        hms_core::torus::GradingOutcome::Feasible(l) => l,
        hms_core::torus::GradingOutcome::Infeasible(_) => return None,
    };
    let cfg = TorusConfig {
        cycles,
        punctures,
        dots,
        lifts,
    };
    validate_config(&cfg).pass.then_some(cfg)
}

#[test]
fn m2_is_associative_on_random_configurations() {
    let mut rng = ChaCha8Rng::seed_from_u64(0x10317u64);
    let mut built = 0;
    let mut attempts = 0;
    while built < 40 && attempts < 400 {
        attempts += 1;
        let Some(cfg) = random_config(&mut rng) else {
            continue;
        };
        let Ok(fp) = build_category(&cfg) else {
            continue;
        };
        let violations = check_a_infinity(&fp);
        assert!(
            violations.is_empty(),
            "associativity violated on random config {cfg:?}: {violations:?}"
        );
        built += 1;
    }
    assert!(built >= 40, "only {built} configurations built");
}
