//! Fans of the five toric del Pezzo surfaces and their lattice invariants.
//!
//! The catalog is hard-coded: there are exactly five smooth toric del Pezzo
//! surfaces, and explicit ray data is auditable. Fans are stored with rays
//! sorted counterclockwise starting from the smallest angle in `[0, 2pi)`, so
//! fan equality and adjacency checks are deterministic regardless of input
//! order.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::rational::gcd_i64;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum CatalogError {
    #[error("unknown surface `{0}` (expected one of P2, P1xP1, Bl1P2, Bl2P2, Bl3P2)")]
    UnknownSurface(String),
    #[error("ray ({0}, {1}) is not primitive")]
    NonPrimitiveRay(i64, i64),
    #[error("zero ray is not allowed")]
    ZeroRay,
    #[error("duplicate ray ({0}, {1})")]
    DuplicateRay(i64, i64),
    #[error("fan is invalid: {0}")]
    InvalidFan(String),
    #[error("polygon is degenerate: fewer than 3 non-collinear vertices")]
    DegeneratePolytope,
}

/// The five toric del Pezzo surfaces.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Surface {
    P2,
    P1xP1,
    Bl1P2,
    Bl2P2,
    Bl3P2,
}

impl Surface {
    pub const ALL: [Surface; 5] = [
        Surface::P2,
        Surface::P1xP1,
        Surface::Bl1P2,
        Surface::Bl2P2,
        Surface::Bl3P2,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Surface::P2 => "P2",
            Surface::P1xP1 => "P1xP1",
            Surface::Bl1P2 => "Bl1P2",
            Surface::Bl2P2 => "Bl2P2",
            Surface::Bl3P2 => "Bl3P2",
        }
    }
}

impl fmt::Display for Surface {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Surface {
    type Err = CatalogError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "P2" => Ok(Surface::P2),
            "P1xP1" => Ok(Surface::P1xP1),
            "Bl1P2" => Ok(Surface::Bl1P2),
            "Bl2P2" => Ok(Surface::Bl2P2),
            "Bl3P2" => Ok(Surface::Bl3P2),
            other => Err(CatalogError::UnknownSurface(other.to_string())),
        }
    }
}

/// A primitive lattice vector generating a one-dimensional cone.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "(i64, i64)", into = "(i64, i64)")]
pub struct Ray {
    pub v: (i64, i64),
}

impl Ray {
    pub fn new(x: i64, y: i64) -> Result<Self, CatalogError> {
        if (x, y) == (0, 0) {
            return Err(CatalogError::ZeroRay);
        }
        if gcd_i64(x.abs(), y.abs()) != 1 {
            return Err(CatalogError::NonPrimitiveRay(x, y));
        }
        Ok(Ray { v: (x, y) })
    }

    pub fn x(&self) -> i64 {
        self.v.0
    }

    pub fn y(&self) -> i64 {
        self.v.1
    }
}

impl TryFrom<(i64, i64)> for Ray {
    type Error = CatalogError;
    fn try_from(v: (i64, i64)) -> Result<Self, Self::Error> {
        Ray::new(v.0, v.1)
    }
}

impl From<Ray> for (i64, i64) {
    fn from(r: Ray) -> Self {
        r.v
    }
}

pub fn det2(a: (i64, i64), b: (i64, i64)) -> i64 {
    a.0 * b.1 - a.1 * b.0
}

/// Angular comparison key without transcendental functions: the half-plane
/// index orders `[0, pi)` before `[pi, 2pi)`, and the cross product orders
/// within a half-plane.
fn angle_class(v: (i64, i64)) -> u8 {
    // 0: positive x-axis; 1: open upper half; 2: negative x-axis; 3: open lower half
    match (v.0.signum(), v.1.signum()) {
        (1, 0) => 0,
        (_, 1) => 1,
        (-1, 0) => 2,
        (_, -1) => 3,
        _ => unreachable!("zero ray excluded at construction"),
    }
}

fn angle_cmp(a: (i64, i64), b: (i64, i64)) -> std::cmp::Ordering {
    angle_class(a)
        .cmp(&angle_class(b))
        .then_with(|| 0.cmp(&det2(a, b)))
}

/// A complete fan in the plane, i.e. an ordered set of rays.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Fan {
    pub name: String,
    #[serde(deserialize_with = "deserialize_rays")]
    pub rays: Vec<Ray>,
}

fn deserialize_rays<'de, D: serde::Deserializer<'de>>(d: D) -> Result<Vec<Ray>, D::Error> {
    let rays = Vec::<Ray>::deserialize(d)?;
    Ok(sort_ccw(rays))
}

fn sort_ccw(mut rays: Vec<Ray>) -> Vec<Ray> {
    rays.sort_by(|a, b| angle_cmp(a.v, b.v));
    rays
}

impl Fan {
    /// Builds a fan from rays (any order); rays are canonically sorted
    /// counterclockwise starting from the smallest angle in `[0, 2pi)`.
    pub fn new(name: impl Into<String>, rays: Vec<Ray>) -> Result<Self, CatalogError> {
        let rays = sort_ccw(rays);
        for w in rays.windows(2) {
            if w[0] == w[1] {
                return Err(CatalogError::DuplicateRay(w[0].x(), w[0].y()));
            }
        }
        Ok(Fan {
            name: name.into(),
            rays,
        })
    }

    pub fn ray_vectors(&self) -> Vec<(i64, i64)> {
        self.rays.iter().map(|r| r.v).collect()
    }
}

/// Per-check fan validation report. Failures are carried, not thrown.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FanReport {
    pub name: String,
    pub primitive: bool,
    pub complete: bool,
    pub smooth: bool,
    pub fano: bool,
    pub failures: Vec<String>,
}

impl FanReport {
    pub fn all_pass(&self) -> bool {
        self.primitive && self.complete && self.smooth && self.fano
    }
}

/// Checks primitivity, completeness, smoothness (all cyclically adjacent ray
/// determinants equal +1) and the Fano condition (origin interior to the
/// convex hull of the rays).
pub fn validate_fan(fan: &Fan) -> FanReport {
    let mut failures = Vec::new();
    let rays = fan.ray_vectors();

    let mut primitive = true;
    for &(x, y) in &rays {
        if (x, y) == (0, 0) || gcd_i64(x.abs(), y.abs()) != 1 {
            primitive = false;
            failures.push(format!("ray ({x}, {y}) is not primitive"));
        }
    }

    // Smooth and complete for a 2-d fan whose rays are sorted by angle:
    // every cyclically consecutive pair spans a basis with determinant +1.
    // Completeness additionally needs each consecutive turn to be < pi,
    // which det > 0 certifies, closing up around the origin.
    let n = rays.len();
    let mut smooth = n >= 3;
    let mut complete = n >= 3;
    if n < 3 {
        failures.push("fewer than 3 rays cannot form a complete fan".to_string());
    }
    for i in 0..n {
        let a = rays[i];
        let b = rays[(i + 1) % n];
        let d = det2(a, b);
        if d <= 0 {
            complete = false;
            failures.push(format!(
                "consecutive rays ({}, {}) and ({}, {}) do not span a positive cone (det {d})",
                a.0, a.1, b.0, b.1
            ));
        }
        if d != 1 {
            smooth = false;
            if d > 1 {
                failures.push(format!(
                    "cone on ({}, {}), ({}, {}) is singular (det {d})",
                    a.0, a.1, b.0, b.1
                ));
            }
        }
    }

    // Fano: origin strictly inside the hull of the rays. With the rays
    // sorted counterclockwise this is exactly det(r_i, r_{i+1}) > 0 for all
    // cyclic pairs, which `complete` already certifies.
    let fano = complete;
    if !fano {
        failures.push("origin is not interior to the convex hull of the rays".to_string());
    }

    FanReport {
        name: fan.name.clone(),
        primitive,
        complete,
        smooth,
        fano,
        failures,
    }
}

/// Loads one of the five catalog fans.
pub fn load_surface(surface: Surface) -> Fan {
    let rays: &[(i64, i64)] = match surface {
        Surface::P2 => &[(1, 0), (0, 1), (-1, -1)],
        Surface::P1xP1 => &[(1, 0), (0, 1), (-1, 0), (0, -1)],
        Surface::Bl1P2 => &[(1, 0), (1, 1), (0, 1), (-1, -1)],
        Surface::Bl2P2 => &[(1, 0), (1, 1), (0, 1), (-1, -1), (0, -1)],
        Surface::Bl3P2 => &[(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)],
    };
    let rays = rays
        .iter()
        .map(|&(x, y)| Ray::new(x, y).expect("catalog rays are primitive"))
        .collect();
    Fan::new(surface.name(), rays).expect("catalog fans are well-formed")
}

pub fn load_surface_by_name(name: &str) -> Result<Fan, CatalogError> {
    Ok(load_surface(name.parse()?))
}

/// A convex lattice polygon, vertices counterclockwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Polygon {
    pub vertices: Vec<(i64, i64)>,
}

/// Convex hull of the fan's rays (the Newton polytope of the mirror
/// superpotential's exponents).
pub fn newton_polytope(fan: &Fan) -> Result<Polygon, CatalogError> {
    convex_hull(&fan.ray_vectors())
}

/// Andrew's monotone chain; returns extreme points only, counterclockwise.
pub fn convex_hull(points: &[(i64, i64)]) -> Result<Polygon, CatalogError> {
    let mut pts: Vec<(i64, i64)> = points.to_vec();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() < 3 {
        return Err(CatalogError::DegeneratePolytope);
    }
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| -> i64 {
        (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0)
    };
    let mut lower: Vec<(i64, i64)> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<(i64, i64)> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() < 3 {
        return Err(CatalogError::DegeneratePolytope);
    }
    Ok(Polygon { vertices: lower })
}

/// Normalized volume: twice the Euclidean area, by the shoelace formula.
/// For a lattice polygon this is a nonnegative integer.
pub fn normalized_volume(poly: &Polygon) -> i64 {
    let v = &poly.vertices;
    let n = v.len();
    let mut twice_area = 0i64;
    for i in 0..n {
        let (x0, y0) = v[i];
        let (x1, y1) = v[(i + 1) % n];
        twice_area += x0 * y1 - x1 * y0;
    }
    twice_area.abs()
}

/// `dim H^*(X, C)` for the toric surface: the number of rays of a smooth
/// complete surface fan (1 + rank Pic + 1 = number of 2-cones).
pub fn euler_characteristic(fan: &Fan) -> Result<i64, CatalogError> {
    let report = validate_fan(fan);
    if !report.all_pass() {
        return Err(CatalogError::InvalidFan(report.failures.join("; ")));
    }
    Ok(fan.rays.len() as i64)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bl3_rays_match_the_toric_data() {
        let fan = load_surface(Surface::Bl3P2);
        assert_eq!(
            fan.ray_vectors(),
            vec![(1, 0), (1, 1), (0, 1), (-1, 0), (-1, -1), (0, -1)]
        );
        // Same set as the published data; canonical order starts at (1, 0).
        let mut set = fan.ray_vectors();
        set.sort_unstable();
        let mut expect = vec![(1, 0), (0, 1), (-1, -1), (-1, 0), (0, -1), (1, 1)];
        expect.sort_unstable();
        assert_eq!(set, expect);
    }

    #[test]
    fn load_by_name_and_unknown_name() {
        assert_eq!(load_surface_by_name("P2").unwrap().rays.len(), 3);
        assert!(matches!(
            load_surface_by_name("NOPE"),
            Err(CatalogError::UnknownSurface(_))
        ));
    }

    #[test]
    fn all_catalog_fans_validate() {
        for s in Surface::ALL {
            let report = validate_fan(&load_surface(s));
            assert!(report.all_pass(), "{s}: {:?}", report.failures);
        }
    }

    #[test]
    fn degenerate_half_plane_fan_fails_completeness() {
        let fan = Fan::new(
            "halfplane",
            vec![Ray::new(1, 0).unwrap(), Ray::new(-1, 0).unwrap()],
        )
        .unwrap();
        let report = validate_fan(&fan);
        assert!(!report.complete);
        assert!(report.primitive);
    }

    #[test]
    fn non_primitive_ray_fails() {
        assert!(matches!(Ray::new(2, 0), Err(CatalogError::NonPrimitiveRay(2, 0))));
        // validate_fan reports it too when smuggled in.
        let fan = Fan {
            name: "bad".into(),
            rays: vec![Ray { v: (2, 0) }, Ray { v: (0, 1) }, Ray { v: (-1, -1) }],
        };
        let report = validate_fan(&fan);
        assert!(!report.primitive);
    }

    #[test]
    fn newton_polytope_volumes() {
        // Shoelace on the catalog data.
        let cases = [
            (Surface::P2, 3),
            (Surface::P1xP1, 4),
            (Surface::Bl1P2, 4),
            (Surface::Bl2P2, 5),
            (Surface::Bl3P2, 6),
        ];
        for (s, vol) in cases {
            let poly = newton_polytope(&load_surface(s)).unwrap();
            assert_eq!(normalized_volume(&poly), vol, "{s}");
        }
        let hexagon = newton_polytope(&load_surface(Surface::Bl3P2)).unwrap();
        assert_eq!(hexagon.vertices.len(), 6);
    }

    #[test]
    fn volume_equals_euler_characteristic_on_catalog() {
        for s in Surface::ALL {
            let fan = load_surface(s);
            let chi = euler_characteristic(&fan).unwrap();
            let vol = normalized_volume(&newton_polytope(&fan).unwrap());
            assert_eq!(chi, vol, "{s}");
            assert_eq!(chi, fan.rays.len() as i64);
        }
    }

    #[test]
    fn ray_order_is_canonical() {
        let a = Fan::new(
            "Bl3P2",
            [(0, -1), (1, 1), (1, 0), (-1, 0), (-1, -1), (0, 1)]
                .iter()
                .map(|&(x, y)| Ray::new(x, y).unwrap())
                .collect(),
        )
        .unwrap();
        assert_eq!(a, load_surface(Surface::Bl3P2));
    }

    #[test]
    fn collinear_points_are_a_degenerate_polytope() {
        assert!(matches!(
            convex_hull(&[(0, 0), (1, 0), (2, 0)]),
            Err(CatalogError::DegeneratePolytope)
        ));
    }

    #[test]
    fn fan_json_round_trip() {
        let fan = load_surface(Surface::Bl3P2);
        let json = serde_json::to_string(&fan).unwrap();
        assert!(json.contains("\"name\":\"Bl3P2\""));
        let back: Fan = serde_json::from_str(&json).unwrap();
        assert_eq!(back, fan);
    }
}
