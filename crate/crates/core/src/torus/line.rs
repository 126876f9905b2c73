//! Straight closed geodesics on the flat torus and their exact
//! intersections.
//!
//! A cycle with primitive homology class `(a, b)` and offset `c` is the
//! locus `{(x, y) : b x - a y = c (mod 1)}`. Classes are canonicalized into
//! the upper half-plane (`b > 0`, or `b = 0, a = 1`) so that equality of
//! cycles is structural.

use crate::rational::{ext_gcd, fract, gcd_i64, rat, ri, Rat, RatPoint};

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TorusError {
    #[error("homology class ({0}, {1}) is not primitive")]
    NonPrimitiveClass(i64, i64),
    #[error("zero homology class")]
    ZeroClass,
    #[error("cycles with parallel classes ({0}, {1}) do not intersect transversally")]
    ParallelLines(i64, i64),
    #[error("maslov index is undefined for a parallel pair")]
    UndefinedIndex,
    #[error("grading lift difference {0} is within the floor margin of an integer")]
    FloorMargin(f64),
    #[error("no puncture data: triangle enumeration cannot be bounded")]
    EnumerationUnbounded,
    #[error("a dot coincides with a triangle vertex")]
    DotOnVertex,
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
    #[error("index {0} out of range for {1}")]
    IndexOutOfRange(usize, &'static str),
}

/// A straight cycle `{(x, y) : b x - a y = offset (mod 1)}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TorusLine {
    class: (i64, i64),
    offset: Rat,
}

impl TorusLine {
    pub fn new(a: i64, b: i64, offset: Rat) -> Result<Self, TorusError> {
        if (a, b) == (0, 0) {
            return Err(TorusError::ZeroClass);
        }
        if gcd_i64(a.abs(), b.abs()) != 1 {
            return Err(TorusError::NonPrimitiveClass(a, b));
        }
        // Flip into the upper half-plane; the defining equation negates.
        let (a, b, offset) = if b > 0 || (b == 0 && a > 0) {
            (a, b, offset)
        } else {
            (-a, -b, -offset)
        };
        Ok(TorusLine {
            class: (a, b),
            offset: fract(&offset),
        })
    }

    pub fn class(&self) -> (i64, i64) {
        self.class
    }

    pub fn offset(&self) -> &Rat {
        &self.offset
    }

    pub fn is_parallel(&self, other: &TorusLine) -> bool {
        class_det(self.class, other.class) == 0
    }

    /// `b x - a y` of a (cover or torus) point.
    pub fn level_of(&self, p: &RatPoint) -> Rat {
        ri(self.class.1) * p.x - ri(self.class.0) * p.y
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        fract(&(self.level_of(p) - self.offset)) == rat(0, 1)
    }

    /// The lift of this cycle passing through a given cover point on it.
    pub fn lift_through(&self, p: &RatPoint) -> LiftedLine {
        LiftedLine {
            class: self.class,
            level: self.level_of(p),
        }
    }

    /// Direction angle in `[0, pi)` divided by pi.
    pub fn phase(&self) -> f64 {
        let (a, b) = self.class;
        let ang = (b as f64).atan2(a as f64);
        let ph = ang / std::f64::consts::PI;
        // Canonical classes give ang in [0, pi); guard the boundary.
        if ph >= 1.0 {
            ph - 1.0
        } else {
            ph
        }
    }

    /// A deterministic base point on the cycle (torus coordinates).
    pub fn base_point(&self) -> RatPoint {
        let (_, b) = self.class;
        // b x - a y = offset: pick the point with minimal support.
        if b != 0 {
            RatPoint::new(self.offset / ri(b), rat(0, 1)).reduced()
        } else {
            // class (1, 0): -y = offset.
            RatPoint::new(rat(0, 1), -self.offset).reduced()
        }
    }

    /// The point `base + t * (a, b)` on the cycle.
    pub fn point_at(&self, t: &Rat) -> RatPoint {
        let (a, b) = self.class;
        let base = self.base_point();
        RatPoint::new(
            base.x + t * ri(a),
            base.y + t * ri(b),
        )
        .reduced()
    }
}

pub fn class_det(u: (i64, i64), v: (i64, i64)) -> i64 {
    u.0 * v.1 - u.1 * v.0
}

/// A single lift of a cycle to the universal cover: the line
/// `{(x, y) : b x - a y = level}` with `level = offset (mod 1)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LiftedLine {
    pub class: (i64, i64),
    pub level: Rat,
}

impl LiftedLine {
    /// Unique intersection point of two non-parallel lifted lines.
    pub fn intersect(&self, other: &LiftedLine) -> Result<RatPoint, TorusError> {
        let d = class_det(self.class, other.class);
        if d == 0 {
            return Err(TorusError::ParallelLines(self.class.0, self.class.1));
        }
        let d = ri(d);
        // Solve b1 x - a1 y = s1, b2 x - a2 y = s2.
        let (a1, b1) = (self.class.0, self.class.1);
        let (a2, b2) = (other.class.0, other.class.1);
        let x = (ri(-a2) * self.level + ri(a1) * other.level) / d;
        let y = (ri(-b2) * self.level + ri(b1) * other.level) / d;
        Ok(RatPoint::new(x, y))
    }

    pub fn contains(&self, p: &RatPoint) -> bool {
        ri(self.class.1) * p.x - ri(self.class.0) * p.y
            == self.level
    }

    /// One lift of the torus point `p` (which must lie on the underlying
    /// cycle) onto this lifted line; all others differ by integer multiples
    /// of the class vector.
    pub fn some_lift_of(&self, p: &RatPoint) -> RatPoint {
        let (a, b) = self.class;
        let here = ri(b) * p.x - ri(a) * p.y;
        let delta = self.level - here;
        debug_assert!(
            delta.denom() == &1,
            "point is not on a lift of this cycle (delta {delta})"
        );
        let delta = delta.to_integer();
        // Solve b kx - a ky = delta via a Bezout pair for (b, -a).
        let (g, s, t) = ext_gcd(b as i128, -(a as i128));
        debug_assert_eq!(g, 1);
        let kx = s * delta;
        let ky = t * delta;
        RatPoint::new(
            p.x + rat(kx, 1),
            p.y + rat(ky, 1),
        )
    }
}

/// All intersection points of two non-parallel cycles, as reduced torus
/// points in deterministic lexicographic order. There are exactly
/// `|det(class1, class2)|` of them.
pub fn intersections(l1: &TorusLine, l2: &TorusLine) -> Result<Vec<RatPoint>, TorusError> {
    let d = class_det(l1.class, l2.class);
    if d == 0 {
        return Err(TorusError::ParallelLines(l1.class.0, l1.class.1));
    }
    let n = d.unsigned_abs() as i64;
    let mut points = Vec::new();
    for m in 0..n {
        for k in 0..n {
            let lift1 = LiftedLine {
                class: l1.class,
                level: l1.offset + rat(m as i128, 1),
            };
            let lift2 = LiftedLine {
                class: l2.class,
                level: l2.offset + rat(k as i128, 1),
            };
            let p = lift1.intersect(&lift2)?.reduced();
            if !points.contains(&p) {
                points.push(p);
            }
        }
    }
    debug_assert_eq!(points.len(), n as usize);
    points.sort();
    Ok(points)
}
