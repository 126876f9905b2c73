//! Certified enumeration of immersed holomorphic triangles.
//!
//! For a chain `i0 < i1 < i2` and intersection points `p1` on `(C_{i0},
//! C_{i1})` and `p2` on `(C_{i1}, C_{i2})`, a contributing triangle lifts to
//! the universal cover with counterclockwise vertices `(P0, P1, P2)`, edge
//! `P0 -> P1` on a lift of `C_{i0}`, `P1 -> P2` on a lift of `C_{i1}`,
//! `P2 -> P0` on a lift of `C_{i2}`, and no puncture lift on the closed
//! triangle. Fixing a lift of `p1` leaves a single integer family: the lift
//! of `p2` along the `C_{i1}` line. The family is cut down to a finite range
//! by a covering argument: a triangle whose longest side exceeds the
//! certified radius contains a disk larger than the puncture covering
//! radius, hence a puncture lift.

use crate::rational::{dist2, rat, ratio_to_f64, ri, Rat, RatPoint};

use super::config::{hom_points, TorusConfig};
use super::line::{class_det, LiftedLine, TorusError};

/// A lifted triangle with its sign, the atom of composition counting.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrianglePatch {
    /// `[P0, P1, P2]` counterclockwise in the cover; `P1`, `P2` are the
    /// inputs, `P0` projects to the output point.
    pub vertices: [RatPoint; 3],
    /// Levels of the lifted lines carrying edges `P0->P1`, `P1->P2`,
    /// `P2->P0` (cycles `i0`, `i1`, `i2` respectively).
    pub edge_levels: [Rat; 3],
    /// `(-1)^boundary_dots`.
    pub sign: i8,
    /// Dot lifts on the three open boundary edges.
    pub boundary_dots: usize,
}

/// Triangles contributing to one composition cell, grouped by output point.
#[derive(Debug, Clone, PartialEq)]
pub struct TriangleGroups {
    /// Basis of `hom(i0, i2)`: the intersection points in canonical order.
    pub output_points: Vec<RatPoint>,
    /// Triangles whose third vertex projects to the matching output point.
    pub by_output: Vec<Vec<TrianglePatch>>,
    /// The certified enumeration radius that bounded the lattice search.
    pub radius: f64,
}

impl TriangleGroups {
    /// Signed count per output point: the structure constants of `m2`.
    pub fn signed_counts(&self) -> Vec<i64> {
        self.by_output
            .iter()
            .map(|ts| ts.iter().map(|t| t.sign as i64).sum())
            .collect()
    }
}

/// Upper bound for the covering radius of the puncture set: every point of
/// the plane is within this distance of some puncture lift.
pub fn puncture_covering_radius(punctures: &[RatPoint]) -> Option<f64> {
    if punctures.is_empty() {
        return None;
    }
    let pts: Vec<(f64, f64)> = punctures.iter().map(|p| p.reduced().to_f64()).collect();
    const G: usize = 16;
    let cell_half_diag = std::f64::consts::SQRT_2 / (2.0 * G as f64);
    let mut worst_center = 0.0f64;
    for i in 0..G {
        for j in 0..G {
            let cx = (i as f64 + 0.5) / G as f64;
            let cy = (j as f64 + 0.5) / G as f64;
            let mut best = f64::INFINITY;
            for &(px, py) in &pts {
                for dx in -1..=1 {
                    for dy in -1..=1 {
                        let d = ((cx - px - dx as f64).powi(2)
                            + (cy - py - dy as f64).powi(2))
                        .sqrt();
                        best = best.min(d);
                    }
                }
            }
            worst_center = worst_center.max(best);
        }
    }
    // Any single torus point already covers with radius sqrt(2)/2.
    Some((worst_center + cell_half_diag + 1e-9).min(std::f64::consts::SQRT_2 / 2.0 + 1e-9))
}

fn class_norm(v: (i64, i64)) -> f64 {
    ((v.0 * v.0 + v.1 * v.1) as f64).sqrt()
}

/// `sin` of the (acute) angle between the two line directions.
fn sin_angle(u: (i64, i64), v: (i64, i64)) -> f64 {
    (class_det(u, v).abs() as f64) / (class_norm(u) * class_norm(v))
}

/// Longest-side bound: any triangle on the three line families with longest
/// side above this contains a disk of radius > rho around its centroid.
///
/// With all three pairwise angles >= theta and longest side L, every side is
/// >= L sin(theta), the area is >= L^2 sin^3(theta) / 2, so the smallest
/// > centroid-to-edge distance is >= L sin^3(theta) / 3.
fn certified_radius(classes: [(i64, i64); 3], rho: f64) -> f64 {
    let s01 = sin_angle(classes[0], classes[1]);
    let s12 = sin_angle(classes[1], classes[2]);
    let s02 = sin_angle(classes[0], classes[2]);
    let s = s01.min(s12).min(s02);
    3.0 * rho / (s * s * s) * 1.0001 + 1.0
}

/// Exact test: does the closed triangle `(a, b, c)` (counterclockwise)
/// contain any lift of any puncture?
fn contains_puncture_lift(
    tri: &[RatPoint; 3],
    punctures: &[RatPoint],
) -> bool {
    let (min_x, max_x) = tri
        .iter()
        .map(|p| &p.x)
        .fold((tri[0].x, tri[0].x), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    let (min_y, max_y) = tri
        .iter()
        .map(|p| &p.y)
        .fold((tri[0].y, tri[0].y), |(lo, hi), v| {
            (lo.min(*v), hi.max(*v))
        });
    for p in punctures {
        let p = p.reduced();
        let kx_lo = (min_x - p.x).ceil().to_integer();
        let kx_hi = (max_x - p.x).floor().to_integer();
        let ky_lo = (min_y - p.y).ceil().to_integer();
        let ky_hi = (max_y - p.y).floor().to_integer();
        for kx in kx_lo..=kx_hi {
            for ky in ky_lo..=ky_hi {
                let q = p.translated(&rat(kx, 1), &rat(ky, 1));
                let zero = rat(0, 1);
                if RatPoint::orient(&tri[0], &tri[1], &q) >= zero
                    && RatPoint::orient(&tri[1], &tri[2], &q) >= zero
                    && RatPoint::orient(&tri[2], &tri[0], &q) >= zero
                {
                    return true;
                }
            }
        }
    }
    false
}

/// Conservative float pre-check: certainly blocked when some puncture lift
/// is strictly inside the centroid disk, with margin for rounding.
fn certainly_blocked(tri: &[RatPoint; 3], punctures_f: &[(f64, f64)]) -> bool {
    let v: Vec<(f64, f64)> = tri.iter().map(RatPoint::to_f64).collect();
    let gx = (v[0].0 + v[1].0 + v[2].0) / 3.0;
    let gy = (v[0].1 + v[1].1 + v[2].1) / 3.0;
    let mut disk = f64::INFINITY;
    for e in 0..3 {
        let (ax, ay) = v[e];
        let (bx, by) = v[(e + 1) % 3];
        let (ux, uy) = (bx - ax, by - ay);
        let len = (ux * ux + uy * uy).sqrt();
        if len == 0.0 {
            return false;
        }
        let dist = ((gx - ax) * uy - (gy - ay) * ux).abs() / len;
        disk = disk.min(dist);
    }
    for &(px, py) in punctures_f {
        let dx = gx - px;
        let dy = gy - py;
        let nx = dx - dx.round();
        let ny = dy - dy.round();
        if (nx * nx + ny * ny).sqrt() + 1e-7 < disk {
            return true;
        }
    }
    false
}

/// Number of dot lifts strictly inside the open segment `a -> b`, which lies
/// on `line` (a lift of cycle `cycle_idx`). A dot lift landing exactly on an
/// endpoint is an error.
fn dots_on_edge(
    cfg: &TorusConfig,
    cycle_idx: usize,
    line: &LiftedLine,
    a: &RatPoint,
    b: &RatPoint,
) -> Result<usize, TorusError> {
    let v = line.class;
    let component = |p: &RatPoint, q: &RatPoint| -> Rat {
        // (q - p) as a multiple of v, using whichever coordinate of v is
        // nonzero (p, q are collinear along v).
        if v.0 != 0 {
            (q.x - p.x) / ri(v.0)
        } else {
            (q.y - p.y) / ri(v.1)
        }
    };
    let mu = component(a, b);
    debug_assert!(mu != rat(0, 1));
    let mut count = 0usize;
    for dot in &cfg.dots[cycle_idx] {
        let d0 = line.some_lift_of(dot);
        let delta = component(a, &d0);
        // Dot lifts sit at parameters (delta + t) / mu for integer t;
        // strictly inside means the parameter is in (0, 1).
        let (lo, hi) = if mu > rat(0, 1) {
            (-delta, mu - delta)
        } else {
            (mu - delta, -delta)
        };
        if lo.denom() == &1 || hi.denom() == &1 {
            return Err(TorusError::DotOnVertex);
        }
        let t_min = lo.floor().to_integer() + 1;
        let t_max = hi.ceil().to_integer() - 1;
        if t_max >= t_min {
            count += (t_max - t_min + 1) as usize;
        }
    }
    Ok(count)
}

/// Full-control enumeration used by the property tests: a radius scale for
/// the certificate audit and an integer shift of the initial lift of `p1`.
pub fn enumerate_triangles_with(
    cfg: &TorusConfig,
    triple: (usize, usize, usize),
    p1_idx: usize,
    p2_idx: usize,
    radius_scale: f64,
    lift_shift: (i64, i64),
) -> Result<TriangleGroups, TorusError> {
    enumerate_triangles_impl(cfg, triple, p1_idx, p2_idx, radius_scale, lift_shift, true)
}

/// All counterclockwise candidates within the certified radius, without the
/// puncture exclusion (the configuration solver re-tests blocking itself
/// against varying puncture sets; the radius still comes from the
/// configuration's punctures, which must over-estimate the sets tested).
pub fn enumerate_candidate_triangles(
    cfg: &TorusConfig,
    triple: (usize, usize, usize),
    p1_idx: usize,
    p2_idx: usize,
) -> Result<TriangleGroups, TorusError> {
    enumerate_triangles_impl(cfg, triple, p1_idx, p2_idx, 1.0, (0, 0), false)
}

#[allow(clippy::too_many_arguments)]
fn enumerate_triangles_impl(
    cfg: &TorusConfig,
    triple: (usize, usize, usize),
    p1_idx: usize,
    p2_idx: usize,
    radius_scale: f64,
    lift_shift: (i64, i64),
    filter_punctures: bool,
) -> Result<TriangleGroups, TorusError> {
    let (i0, i1, i2) = triple;
    if !(i0 < i1 && i1 < i2) || i2 >= cfg.cycles.len() {
        return Err(TorusError::IndexOutOfRange(i2, "cycles"));
    }
    let c0 = &cfg.cycles[i0];
    let c1 = &cfg.cycles[i1];
    let c2 = &cfg.cycles[i2];
    for (u, v) in [(c0, c1), (c1, c2), (c0, c2)] {
        if u.is_parallel(v) {
            let (a, b) = u.class();
            return Err(TorusError::ParallelLines(a, b));
        }
    }

    let rho = puncture_covering_radius(&cfg.punctures).ok_or(TorusError::EnumerationUnbounded)?;
    let radius = certified_radius([c0.class(), c1.class(), c2.class()], rho) * radius_scale;

    let pts01 = hom_points(cfg, i0, i1)?;
    let pts12 = hom_points(cfg, i1, i2)?;
    let output_points = hom_points(cfg, i0, i2)?;
    let p1 = pts01
        .get(p1_idx)
        .ok_or(TorusError::IndexOutOfRange(p1_idx, "hom(i0,i1)"))?;
    let p2 = pts12
        .get(p2_idx)
        .ok_or(TorusError::IndexOutOfRange(p2_idx, "hom(i1,i2)"))?;

    // Fixed lift of p1 (shifted for the invariance tests).
    let p1_lift = p1.translated(
        &rat(lift_shift.0 as i128, 1),
        &rat(lift_shift.1 as i128, 1),
    );
    let line0 = c0.lift_through(&p1_lift);
    let line1 = c1.lift_through(&p1_lift);

    // Lifts of p2 along line1: base + t * v1. Recenter the base near the
    // lift of p1 so the scan range is symmetric.
    let v1 = line1.class;
    let base_far = line1.some_lift_of(p2);
    let v1_norm2 = (v1.0 * v1.0 + v1.1 * v1.1) as f64;
    let (bx, by) = base_far.to_f64();
    let (px, py) = p1_lift.to_f64();
    let lambda = ((bx - px) * v1.0 as f64 + (by - py) * v1.1 as f64) / v1_norm2;
    let recenter = lambda.round() as i128;
    let base = RatPoint::new(
        base_far.x - rat(recenter * v1.0 as i128, 1),
        base_far.y - rat(recenter * v1.1 as i128, 1),
    );

    let t_span = (radius / v1_norm2.sqrt()).ceil() as i128 + 2;
    let punctures_f: Vec<(f64, f64)> = cfg
        .punctures
        .iter()
        .map(|p| p.reduced().to_f64())
        .collect();

    let mut by_output: Vec<Vec<TrianglePatch>> = vec![Vec::new(); output_points.len()];
    for t in -t_span..=t_span {
        let p2_lift = RatPoint::new(
            base.x + rat(t * v1.0 as i128, 1),
            base.y + rat(t * v1.1 as i128, 1),
        );
        // Stay within the certified radius (longest side through p1).
        if dist2(&p1_lift, &p2_lift) > rat(0, 1)
            && ratio_to_f64(&dist2(&p1_lift, &p2_lift)).sqrt() > radius
        {
            continue;
        }
        let line2 = c2.lift_through(&p2_lift);
        let p0_lift = line0.intersect(&line2)?;
        let tri = [p0_lift.clone(), p1_lift.clone(), p2_lift.clone()];

        // Counterclockwise with positive area; degenerate candidates (three
        // concurrent lifts) are not disks.
        if RatPoint::orient(&tri[0], &tri[1], &tri[2]) <= rat(0, 1) {
            continue;
        }
        // Certified bound applies to every side.
        let longest = [
            dist2(&tri[0], &tri[1]),
            dist2(&tri[1], &tri[2]),
            dist2(&tri[2], &tri[0]),
        ]
        .iter()
        .map(ratio_to_f64)
        .fold(0.0f64, f64::max)
        .sqrt();
        if longest > radius {
            continue;
        }

        if filter_punctures
            && (certainly_blocked(&tri, &punctures_f) || contains_puncture_lift(&tri, &cfg.punctures))
        {
            continue;
        }

        let d0 = dots_on_edge(cfg, i0, &line0, &tri[0], &tri[1])?;
        let d1 = dots_on_edge(cfg, i1, &line1, &tri[1], &tri[2])?;
        let d2 = dots_on_edge(cfg, i2, &line2, &tri[2], &tri[0])?;
        let boundary_dots = d0 + d1 + d2;
        let sign = if boundary_dots % 2 == 0 { 1 } else { -1 };

        let p0 = p0_lift.reduced();
        let out_idx = output_points
            .iter()
            .position(|q| *q == p0)
            .expect("third vertex projects to an intersection of (i0, i2)");
        by_output[out_idx].push(TrianglePatch {
            vertices: tri,
            edge_levels: [line0.level, line1.level, line2.level],
            sign,
            boundary_dots,
        });
    }

    Ok(TriangleGroups {
        output_points,
        by_output,
        radius,
    })
}

/// Enumerates the triangles of one composition cell with the certified
/// radius and the canonical initial lift.
pub fn enumerate_triangles(
    cfg: &TorusConfig,
    triple: (usize, usize, usize),
    p1_idx: usize,
    p2_idx: usize,
) -> Result<TriangleGroups, TorusError> {
    enumerate_triangles_with(cfg, triple, p1_idx, p2_idx, 1.0, (0, 0))
}
