//! Independent cross-check of the critical-point solver: eliminate `x` from
//! the gradient system by a Sylvester resultant, solve the resulting
//! univariate polynomial, and reconstruct the full solution set. The oracle
//! shares no code with the Newton path.

use hms_core::catalog::{load_surface, Surface};
use hms_core::critical::find_critical_points;
use hms_core::defaults::{bl3_paper_coefficients, default_solver_options};
use hms_core::laurent::build_superpotential;
use num_complex::Complex64;

type C = Complex64;

/// Dense univariate polynomials over C, lowest degree first.
#[derive(Debug, Clone, PartialEq)]
struct Poly(Vec<C>);

impl Poly {
    fn zero() -> Self {
        Poly(vec![])
    }

    fn constant(c: C) -> Self {
        Poly(vec![c])
    }

    fn add(&self, other: &Poly) -> Poly {
        let n = self.0.len().max(other.0.len());
        let mut out = vec![C::new(0.0, 0.0); n];
        for (i, c) in self.0.iter().enumerate() {
            out[i] += c;
        }
        for (i, c) in other.0.iter().enumerate() {
            out[i] += c;
        }
        Poly(out)
    }

    fn mul(&self, other: &Poly) -> Poly {
        if self.0.is_empty() || other.0.is_empty() {
            return Poly::zero();
        }
        let mut out = vec![C::new(0.0, 0.0); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly(out)
    }

    fn neg(&self) -> Poly {
        Poly(self.0.iter().map(|c| -c).collect())
    }

    fn trim(mut self) -> Poly {
        while matches!(self.0.last(), Some(c) if c.norm() < 1e-12) {
            self.0.pop();
        }
        self
    }
}

/// 4x4 determinant over the polynomial ring by cofactor expansion.
fn det4(m: &[[Poly; 4]; 4]) -> Poly {
    fn det3(m: &[[&Poly; 3]; 3]) -> Poly {
        let mut acc = Poly::zero();
        for (col, sign) in [(0usize, 1.0), (1, -1.0), (2, 1.0)] {
            let minor = {
                let cols: Vec<usize> = (0..3).filter(|&c| c != col).collect();
                m[1][cols[0]]
                    .mul(m[2][cols[1]])
                    .add(&m[1][cols[1]].mul(m[2][cols[0]]).neg())
            };
            acc = acc.add(&m[0][col].mul(&minor).mul(&Poly::constant(C::new(sign, 0.0))));
        }
        acc
    }
    let mut acc = Poly::zero();
    for (col, sign) in [(0usize, 1.0), (1, -1.0), (2, 1.0), (3, -1.0)] {
        let cols: Vec<usize> = (0..4).filter(|&c| c != col).collect();
        let minor = det3(&[
            [&m[1][cols[0]], &m[1][cols[1]], &m[1][cols[2]]],
            [&m[2][cols[0]], &m[2][cols[1]], &m[2][cols[2]]],
            [&m[3][cols[0]], &m[3][cols[1]], &m[3][cols[2]]],
        ]);
        acc = acc.add(&m[0][col].mul(&minor).mul(&Poly::constant(C::new(sign, 0.0))));
    }
    acc
}

/// All roots by Durand-Kerner (test-local; independent of the library's
/// quartic solver).
fn roots(p: &Poly) -> Vec<C> {
    let p = p.clone().trim();
    let n = p.0.len() - 1;
    let lead = p.0[n];
    let monic: Vec<C> = p.0.iter().map(|c| c / lead).collect();
    let radius = 1.0 + monic.iter().take(n).map(|c| c.norm()).fold(0.0, f64::max);
    let seed = C::new(0.31, 0.88);
    let mut z: Vec<C> = (1..=n)
        .map(|k| C::from_polar(radius, 0.7 * k as f64) * seed / seed.norm())
        .collect();
    for _ in 0..400 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut denom = C::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    denom *= z[i] - z[j];
                }
            }
            let mut val = C::new(0.0, 0.0);
            for c in monic.iter().rev() {
                val = val * z[i] + c;
            }
            let step = val / denom;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-13 {
            break;
        }
    }
    z
}

/// The hexagonal superpotential at the working coefficients has exactly six
/// critical points, and Newton's output matches the resultant elimination.
#[test]
fn bl3_critical_points_match_the_resultant_elimination() {
    let fan = load_surface(Surface::Bl3P2);
    let w = build_superpotential(&fan, &bl3_paper_coefficients()).unwrap();
    let newton = find_critical_points(&w, &default_solver_options()).unwrap();
    assert_eq!(newton.len(), 6);

    // Gradient numerators as quadratics in x with polynomial-in-y
    // coefficients (hexagon labelling):
    //   x^2 y  Wx = (q1 y + q6 y^2) x^2 - (q3 + q4 y)
    //   x y^2  Wy = (q6 y^2) x^2 + (q2 y^2 - q5) x - q3
    let q = |e: (i64, i64)| w.coefficient(e);
    let (q1, q2, q3, q4, q5, q6) = (
        q((1, 0)),
        q((0, 1)),
        q((-1, -1)),
        q((-1, 0)),
        q((0, -1)),
        q((1, 1)),
    );
    let zero = C::new(0.0, 0.0);
    let a = Poly(vec![zero, q1, q6]);
    let b = Poly::zero();
    let c = Poly(vec![-q3, -q4]);
    let d = Poly(vec![zero, zero, q6]);
    let e = Poly(vec![-q5, zero, q2]);
    let f = Poly(vec![-q3]);

    // Sylvester matrix of the two quadratics in x.
    let z = Poly::zero;
    let sylvester = [
        [a.clone(), b.clone(), c.clone(), z()],
        [z(), a.clone(), b.clone(), c.clone()],
        [d.clone(), e.clone(), f.clone(), z()],
        [z(), d.clone(), e.clone(), f.clone()],
    ];
    let resultant = det4(&sylvester).trim();

    // Reconstruct (x, y) pairs from the y-roots: solve the first quadratic
    // for x and keep gradient zeros.
    let mut recovered: Vec<(C, C)> = Vec::new();
    for y in roots(&resultant) {
        if y.norm() < 1e-8 {
            continue;
        }
        let denom = q1 * y + q6 * y * y;
        if denom.norm() < 1e-10 {
            continue;
        }
        let x2 = (q3 + q4 * y) / denom;
        for x in [x2.sqrt(), -x2.sqrt()] {
            if x.norm() < 1e-10 {
                continue;
            }
            let (gx, gy) = w.gradient(x, y).unwrap();
            if (gx.norm_sqr() + gy.norm_sqr()).sqrt() < 1e-6 {
                let dup = recovered
                    .iter()
                    .any(|&(px, py)| ((x - px).norm_sqr() + (y - py).norm_sqr()).sqrt() < 1e-6);
                if !dup {
                    recovered.push((x, y));
                }
            }
        }
    }
    assert_eq!(recovered.len(), 6, "oracle recovers all six points");

    // Match the two solution sets point by point.
    for p in &newton {
        let (x, y) = p.location;
        let best = recovered
            .iter()
            .map(|&(ox, oy)| ((x - ox).norm_sqr() + (y - oy).norm_sqr()).sqrt())
            .fold(f64::INFINITY, f64::min);
        assert!(best < 1e-8, "newton point {x} {y} unmatched (best {best:e})");
    }
}

/// Resultant elimination for the projective-plane potential gives exactly
/// the cubic `y - y^4`, pinning the closed-form critical points.
#[test]
fn p2_elimination_gives_the_cubic() {
    // x^2 y Wx = y x^2 - 1, x y^2 Wy = y^2 x - 1: a quadratic and a linear
    // polynomial in x; their resultant is y (1 - y^3).
    let zero = C::new(0.0, 0.0);
    let one = C::new(1.0, 0.0);
    let a = Poly(vec![zero, one]);
    let c = Poly(vec![-one]);
    let d = Poly(vec![zero, zero, one]);
    let f = Poly(vec![-one]);
    // Sylvester for (deg 2, deg 1): 3x3; embed in the 4x4 with a unit row.
    let z = Poly::zero;
    let m = [
        [a.clone(), z(), c.clone(), z()],
        [d.clone(), f.clone(), z(), z()],
        [z(), d.clone(), f.clone(), z()],
        [z(), z(), z(), Poly::constant(one)],
    ];
    let res = det4(&m).trim();
    // y - y^4 up to sign.
    let expect = Poly(vec![zero, one, zero, zero, -one]);
    let matches_direct = res
        .0
        .iter()
        .zip(&expect.0)
        .all(|(p, q)| (p - q).norm() < 1e-12);
    let matches_negated = res
        .0
        .iter()
        .zip(&expect.0)
        .all(|(p, q)| (p + q).norm() < 1e-12);
    assert_eq!(res.0.len(), expect.0.len());
    assert!(matches_direct || matches_negated, "{res:?}");
}
