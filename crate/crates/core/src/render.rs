//! Deterministic SVG rendering of torus configurations and branch-point
//! trajectories.
//!
//! All coordinates are emitted with fixed 6-decimal formatting, so the same
//! input and tool version produce byte-identical documents on every
//! platform.

use std::fmt::Write as _;

use crate::branch::BranchTrajectory;
use crate::rational::ratio_to_f64;
use crate::torus::TorusConfig;
use crate::verify::Certificate;

/// Canvas and styling parameters; output depends only on the input config,
/// these parameters, and the tool version.
#[derive(Debug, Clone)]
pub struct RenderSpec {
    /// Canvas side in pixels (the fundamental domain is square).
    pub size: u32,
    /// Margin around the fundamental domain, in pixels.
    pub margin: f64,
    /// Marker radius in pixels: filled dot = spin dot, open circle =
    /// puncture.
    pub marker_radius: f64,
    pub label_points: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec {
            size: 640,
            margin: 40.0,
            marker_radius: 5.0,
            label_points: true,
        }
    }
}

const PALETTE: [&str; 8] = [
    "#c0392b", "#2980b9", "#27ae60", "#8e44ad", "#d35400", "#16a085", "#7f8c8d", "#2c3e50",
];

fn fmt6(x: f64) -> String {
    // Normalize negative zero so formatting is platform-stable.
    let x = if x == 0.0 { 0.0 } else { x };
    format!("{x:.6}")
}

struct Canvas {
    svg: String,
    scale: f64,
    margin: f64,
    size: u32,
}

impl Canvas {
    fn new(spec: &RenderSpec) -> Self {
        let scale = spec.size as f64 - 2.0 * spec.margin;
        let mut svg = String::new();
        let _ = writeln!(
            svg,
            "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"{0}\" height=\"{0}\" viewBox=\"0 0 {0} {0}\">",
            spec.size
        );
        let _ = writeln!(
            svg,
            "<rect x=\"0\" y=\"0\" width=\"{0}\" height=\"{0}\" fill=\"white\"/>",
            spec.size
        );
        Canvas {
            svg,
            scale,
            margin: spec.margin,
            size: spec.size,
        }
    }

    /// Torus coordinates (y up) to canvas pixels (y down).
    fn map(&self, x: f64, y: f64) -> (f64, f64) {
        (
            self.margin + x * self.scale,
            self.size as f64 - self.margin - y * self.scale,
        )
    }

    fn line(&mut self, a: (f64, f64), b: (f64, f64), color: &str, width: f64) {
        let (x1, y1) = self.map(a.0, a.1);
        let (x2, y2) = self.map(b.0, b.1);
        let _ = writeln!(
            self.svg,
            "<line x1=\"{}\" y1=\"{}\" x2=\"{}\" y2=\"{}\" stroke=\"{color}\" stroke-width=\"{}\"/>",
            fmt6(x1),
            fmt6(y1),
            fmt6(x2),
            fmt6(y2),
            fmt6(width)
        );
    }

    fn circle(&mut self, p: (f64, f64), r: f64, fill: &str, stroke: &str) {
        let (cx, cy) = self.map(p.0, p.1);
        let _ = writeln!(
            self.svg,
            "<circle cx=\"{}\" cy=\"{}\" r=\"{}\" fill=\"{fill}\" stroke=\"{stroke}\" stroke-width=\"1.5\"/>",
            fmt6(cx),
            fmt6(cy),
            fmt6(r)
        );
    }

    fn text(&mut self, p: (f64, f64), s: &str) {
        let (x, y) = self.map(p.0, p.1);
        let _ = writeln!(
            self.svg,
            "<text x=\"{}\" y=\"{}\" font-size=\"13\" font-family=\"monospace\">{}</text>",
            fmt6(x + 6.0),
            fmt6(y - 6.0),
            xml_escape(s)
        );
    }

    fn frame(&mut self) {
        for (a, b) in [
            ((0.0, 0.0), (1.0, 0.0)),
            ((1.0, 0.0), (1.0, 1.0)),
            ((1.0, 1.0), (0.0, 1.0)),
            ((0.0, 1.0), (0.0, 0.0)),
        ] {
            self.line(a, b, "#000000", 1.0);
        }
    }

    fn finish(mut self) -> String {
        self.svg.push_str("</svg>\n");
        self.svg
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;")
}

/// Clip the lifted line `b x - a y = level` to the unit square; returns the
/// segment endpoints when the intersection is non-degenerate.
fn clip_to_square(class: (i64, i64), level: f64) -> Option<((f64, f64), (f64, f64))> {
    let (a, b) = (class.0 as f64, class.1 as f64);
    // Parametrize: point p0 + t (a, b) with p0 a solution of b x - a y = s.
    let p0 = if b != 0.0 {
        (level / b, 0.0)
    } else {
        (0.0, -level / a)
    };
    let (mut t0, mut t1) = (f64::NEG_INFINITY, f64::INFINITY);
    for (p, v) in [(p0.0, a), (p0.1, b)] {
        if v == 0.0 {
            if !(0.0..=1.0).contains(&p) {
                return None;
            }
        } else {
            let (lo, hi) = ((0.0 - p) / v, (1.0 - p) / v);
            let (lo, hi) = if lo <= hi { (lo, hi) } else { (hi, lo) };
            t0 = t0.max(lo);
            t1 = t1.min(hi);
        }
    }
    if t0 >= t1 {
        return None;
    }
    Some((
        (p0.0 + t0 * a, p0.1 + t0 * b),
        (p0.0 + t1 * a, p0.1 + t1 * b),
    ))
}

/// Renders the configuration in the square fundamental domain: wrapped
/// cycle segments, open circles for punctures, filled dots for the spin
/// structure, and intersection labels when a certificate names them.
pub fn render_torus(
    cfg: &TorusConfig,
    spec: &RenderSpec,
    certificate: Option<&Certificate>,
) -> String {
    let mut canvas = Canvas::new(spec);

    for (ci, cycle) in cfg.cycles.iter().enumerate() {
        let color = PALETTE[ci % PALETTE.len()];
        let (a, b) = cycle.class();
        let offset = ratio_to_f64(cycle.offset());
        // Levels b x - a y = offset + m that cross the square.
        let corners = [0.0, b as f64, -(a as f64), b as f64 - a as f64];
        let lo = corners.iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = corners.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let m_lo = (lo - offset).floor() as i64 - 1;
        let m_hi = (hi - offset).ceil() as i64 + 1;
        for m in m_lo..=m_hi {
            if let Some((p, q)) = clip_to_square((a, b), offset + m as f64) {
                canvas.line(p, q, color, 2.0);
            }
        }
    }

    for p in &cfg.punctures {
        let (x, y) = p.reduced().to_f64();
        canvas.circle((x, y), spec.marker_radius, "white", "#000000");
    }
    for dots in &cfg.dots {
        for d in dots {
            let (x, y) = d.reduced().to_f64();
            canvas.circle((x, y), spec.marker_radius * 0.8, "#000000", "#000000");
        }
    }

    if let (Some(cert), true) = (certificate, spec.label_points) {
        for ((i, j), entries) in &cert.maps {
            if let Ok(points) = crate::torus::hom_points(cfg, *i, *j) {
                for e in entries {
                    if let Some(pt) = points.get(e.point) {
                        let (x, y) = pt.to_f64();
                        let name = if e.sign < 0 {
                            format!("-{}", e.label)
                        } else {
                            e.label.to_string()
                        };
                        canvas.text((x, y), &name);
                    }
                }
            }
        }
    }

    canvas.frame();
    canvas.finish()
}

/// Renders branch-point trajectories in the complex plane: one polyline per
/// root, with the collision endpoint marked.
pub fn render_trajectories(traj: &BranchTrajectory, spec: &RenderSpec) -> String {
    // Bounding box over all samples.
    let mut lo = (f64::INFINITY, f64::INFINITY);
    let mut hi = (f64::NEG_INFINITY, f64::NEG_INFINITY);
    for (_, roots) in &traj.samples {
        for r in roots {
            lo.0 = lo.0.min(r.re);
            lo.1 = lo.1.min(r.im);
            hi.0 = hi.0.max(r.re);
            hi.1 = hi.1.max(r.im);
        }
    }
    let span = (hi.0 - lo.0).max(hi.1 - lo.1).max(1e-9) * 1.1;
    let center = ((lo.0 + hi.0) / 2.0, (lo.1 + hi.1) / 2.0);
    let to_unit = |re: f64, im: f64| {
        (
            (re - center.0) / span + 0.5,
            (im - center.1) / span + 0.5,
        )
    };

    let mut canvas = Canvas::new(spec);
    for root_idx in 0..4 {
        let color = PALETTE[root_idx % PALETTE.len()];
        let mut prev: Option<(f64, f64)> = None;
        for (_, roots) in &traj.samples {
            let r = roots[root_idx];
            let p = to_unit(r.re, r.im);
            if let Some(q) = prev {
                canvas.line(q, p, color, 1.5);
            }
            prev = Some(p);
        }
        if let Some((_, last)) = traj.samples.last() {
            let p = to_unit(last[root_idx].re, last[root_idx].im);
            canvas.circle(p, spec.marker_radius * 0.7, color, color);
        }
    }
    canvas.frame();
    canvas.finish()
}
