//! Exact rational scalars and points for the flat-torus geometry.
//!
//! All torus geometry runs on `Ratio<i128>`. Offsets and marked points have
//! small denominators (bounded by the config search), and universal-cover
//! coordinates stay within a few hundred, so i128 numerators never get close
//! to overflow even through cross products.

use std::fmt;
use std::str::FromStr;

use num_rational::Ratio;
use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

pub type Rat = Ratio<i128>;

/// Shorthand constructor; panics on zero denominator.
pub fn rat(num: i128, den: i128) -> Rat {
    Ratio::new(num, den)
}

/// Integer-to-rational shorthand for lattice data stored as i64.
pub fn ri(n: i64) -> Rat {
    Ratio::from_integer(n as i128)
}

/// Fractional part in `[0, 1)`.
pub fn fract(r: &Rat) -> Rat {
    r - r.floor()
}

/// Exact string form: `p/q`, or just `p` when the denominator is 1.
pub fn format_rat(r: &Rat) -> String {
    if r.denom() == &1 {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn parse_rat(s: &str) -> Result<Rat, ParseRatError> {
    let s = s.trim();
    let (num, den) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let num: i128 = num.parse().map_err(|_| ParseRatError(s.to_string()))?;
    let den: i128 = den.parse().map_err(|_| ParseRatError(s.to_string()))?;
    if den == 0 {
        return Err(ParseRatError(s.to_string()));
    }
    Ok(Ratio::new(num, den))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("invalid rational literal `{0}`")]
pub struct ParseRatError(pub String);

/// A point with exact rational coordinates, either on the torus `R^2/Z^2`
/// (both coordinates reduced to `[0,1)`) or in its universal cover.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RatPoint {
    pub x: Rat,
    pub y: Rat,
}

impl RatPoint {
    pub fn new(x: Rat, y: Rat) -> Self {
        RatPoint { x, y }
    }

    /// Reduce both coordinates mod 1 into the fundamental domain.
    pub fn reduced(&self) -> RatPoint {
        RatPoint::new(fract(&self.x), fract(&self.y))
    }

    pub fn translated(&self, dx: &Rat, dy: &Rat) -> RatPoint {
        RatPoint::new(self.x + dx, self.y + dy)
    }

    /// 2x2 determinant of the displacement vectors `b - a` and `c - a`.
    /// Positive when `(a, b, c)` is counterclockwise.
    pub fn orient(a: &RatPoint, b: &RatPoint, c: &RatPoint) -> Rat {
        (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)
    }

    pub fn to_f64(&self) -> (f64, f64) {
        (ratio_to_f64(&self.x), ratio_to_f64(&self.y))
    }
}

impl fmt::Display for RatPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", format_rat(&self.x), format_rat(&self.y))
    }
}

impl FromStr for RatPoint {
    type Err = ParseRatError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|t| t.strip_suffix(')'))
            .ok_or_else(|| ParseRatError(s.to_string()))?;
        let (xs, ys) = inner
            .split_once(',')
            .ok_or_else(|| ParseRatError(s.to_string()))?;
        Ok(RatPoint::new(parse_rat(xs)?, parse_rat(ys)?))
    }
}

impl Serialize for RatPoint {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for RatPoint {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let s = String::deserialize(deserializer)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn ratio_to_f64(r: &Rat) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

/// Squared Euclidean distance between cover points.
pub fn dist2(a: &RatPoint, b: &RatPoint) -> Rat {
    let dx = a.x - b.x;
    let dy = a.y - b.y;
    dx * dx + dy * dy
}

/// Distance on the torus between reduced points, squared (minimum over the
/// nine nearest translates).
pub fn torus_dist2(a: &RatPoint, b: &RatPoint) -> Rat {
    let a = a.reduced();
    let b = b.reduced();
    let mut best: Option<Rat> = None;
    for dx in -1..=1i128 {
        for dy in -1..=1i128 {
            let t = b.translated(&Rat::from_integer(dx), &Rat::from_integer(dy));
            let d = dist2(&a, &t);
            if best.as_ref().is_none_or(|cur| &d < cur) {
                best = Some(d);
            }
        }
    }
    best.unwrap()
}

/// Extended gcd: returns `(g, s, t)` with `s*a + t*b = g = gcd(a, b)`, g >= 0.
pub fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        if a < 0 {
            (-a, -1, 0)
        } else {
            (a, 1, 0)
        }
    } else {
        let (g, s, t) = ext_gcd(b, a.rem_euclid(b));
        (g, t, s - (a.div_euclid(b)) * t)
    }
}

pub fn gcd_i64(a: i64, b: i64) -> i64 {
    num_integer::gcd(a, b)
}

/// True when the rational is an exact integer.
pub fn is_integer(r: &Rat) -> bool {
    r.denom() == &1
}

/// True when `r == 0 (mod 1)`.
pub fn is_integral(r: &Rat) -> bool {
    fract(r).is_zero()
}

/// Absolute value helper (Ratio implements Signed).
pub fn rabs(r: &Rat) -> Rat {
    r.abs()
}
