//! JSON report shapes for the CLI.
//!
//! Complex numbers are emitted as two-element `[re, im]` arrays of strings
//! in scientific notation with 17 significant digits, so documents are
//! lossless and byte-stable across platforms.

use num_complex::Complex64;
use serde_json::{json, Value};

use hms_core::branch::BranchTrajectory;
use hms_core::catalog::Surface;
use hms_core::critical::{CriticalPoint, MorseReport};
use hms_core::torus::TriangleGroups;
use hms_core::vanishing::VanishingPath;

pub fn sig17(x: f64) -> String {
    // One leading digit plus 16 decimals in scientific notation.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.16e}")
}

pub fn complex_json(z: Complex64) -> Value {
    json!([sig17(z.re), sig17(z.im)])
}

pub fn critical_points_json(
    surface: Surface,
    coeffs: &[Complex64],
    points: &[CriticalPoint],
    morse: &MorseReport,
) -> Value {
    json!({
        "surface": surface.name(),
        "coefficients": coeffs.iter().map(|&c| complex_json(c)).collect::<Vec<_>>(),
        "points": points.iter().map(|p| json!({
            "x": complex_json(p.location.0),
            "y": complex_json(p.location.1),
            "value": complex_json(p.value),
            "hessian_det": complex_json(p.hessian_det),
        })).collect::<Vec<_>>(),
        "morse": morse,
    })
}

pub fn branch_trace_json(
    surface: Surface,
    index: usize,
    path: &VanishingPath,
    traj: &BranchTrajectory,
) -> Value {
    let last = traj.samples.last().map(|(_, roots)| roots);
    json!({
        "surface": surface.name(),
        "path": index,
        "target": complex_json(path.target),
        "samples": traj.samples.len(),
        "collision": traj.collision,
        "final_min_gap": sig17(traj.final_min_gap),
        "final_roots": last.map(|roots| roots.iter().map(|&r| complex_json(r)).collect::<Vec<_>>()),
    })
}

pub fn triangles_json(
    triple: (usize, usize, usize),
    p1: usize,
    p2: usize,
    groups: &TriangleGroups,
) -> Value {
    let counts = groups.signed_counts();
    json!({
        "triple": [triple.0, triple.1, triple.2],
        "p1": p1,
        "p2": p2,
        "radius": sig17(groups.radius),
        "groups": groups.by_output.iter().enumerate().map(|(k, patches)| json!({
            "output": k,
            "output_point": groups.output_points[k].to_string(),
            "patches": patches.len(),
            "signed_count": counts[k],
        })).collect::<Vec<_>>(),
    })
}
