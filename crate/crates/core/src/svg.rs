//! Deterministic SVG of the (beta, alpha) upper half-plane: the hyperbola
//! `nu(v) = 0`, the numerical walls, the vertical wall, and optionally a
//! Bridgeland path with a tick at every crossing.

use std::fmt::Write;

use crate::bridgeland::PathSpec;
use crate::chern::ChernCharacter;
use crate::destabilizers::TiltWalls;
use crate::report::ChamberReport;
use crate::rational::to_f64;
use crate::walls::{hyperbola, vertical_wall, NumericalWall};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 40.0;
const CURVE_SAMPLES: usize = 400;

#[derive(Clone, Debug)]
pub struct Figure<'a> {
    pub v: &'a ChernCharacter,
    pub walls: Vec<&'a NumericalWall>,
    pub path: Option<&'a PathSpec>,
    /// `(alpha, beta)` of each crossing, in path order.
    pub crossings: Vec<(f64, f64)>,
    pub alpha_start: Option<f64>,
}

/// Six decimals, with no negative zero.
fn num(x: f64) -> String {
    let s = format!("{x:.6}");
    if s == "-0.000000" {
        "0.000000".into()
    } else {
        s
    }
}

struct Frame {
    beta_lo: f64,
    beta_hi: f64,
    alpha_hi: f64,
    scale: f64,
    height: f64,
}

impl Frame {
    fn x(&self, beta: f64) -> f64 {
        MARGIN + (beta - self.beta_lo) * self.scale
    }

    fn y(&self, alpha: f64) -> f64 {
        self.height - MARGIN - alpha * self.scale
    }

    fn inside(&self, alpha: f64, beta: f64) -> bool {
        (0.0..=self.alpha_hi).contains(&alpha) && (self.beta_lo..=self.beta_hi).contains(&beta)
    }
}

impl Figure<'_> {
    fn frame(&self) -> Frame {
        let vertical = vertical_wall(&self.v.truncate()).map(|b| to_f64(&b));
        let intercepts: Vec<(f64, f64)> = self.walls.iter().filter_map(|w| w.intercepts_f64()).collect();
        let center_min = self.walls.iter().filter_map(|w| w.center()).map(to_f64).fold(f64::INFINITY, f64::min);
        let left_min = intercepts.iter().map(|i| i.0).fold(f64::INFINITY, f64::min);
        let mut beta_lo = (center_min - 2.0).min(left_min - 0.5);
        if !beta_lo.is_finite() {
            beta_lo = vertical.unwrap_or(0.0) - 4.0;
        }
        let beta_lo = beta_lo.floor();
        let right_max = intercepts.iter().map(|i| i.1 + 0.5).fold(f64::NEG_INFINITY, f64::max);
        let beta_hi = vertical.map_or(1.0, |b| (b + 1.0).max(1.0)).max(right_max).max(beta_lo + 1.0);
        let radius_max = intercepts.iter().map(|i| 0.5 * (i.1 - i.0)).fold(0.0, f64::max);
        let alpha_hi = if radius_max > 0.0 { 1.25 * radius_max } else { 3.0 };
        let scale = (WIDTH - 2.0 * MARGIN) / (beta_hi - beta_lo);
        Frame {
            beta_lo,
            beta_hi,
            alpha_hi,
            scale,
            height: alpha_hi * scale + 2.0 * MARGIN,
        }
    }

    fn polyline(frame: &Frame, points: impl Iterator<Item = (f64, f64)>) -> String {
        let mut pts = String::new();
        for (alpha, beta) in points {
            if frame.inside(alpha, beta) {
                if !pts.is_empty() {
                    pts.push(' ');
                }
                let _ = write!(pts, "{},{}", num(frame.x(beta)), num(frame.y(alpha)));
            }
        }
        pts
    }

    pub fn render(&self) -> String {
        let f = self.frame();
        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" viewBox="0 0 {} {}">"#,
            num(WIDTH),
            num(f.height),
            num(WIDTH),
            num(f.height)
        );
        let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
        let _ = writeln!(out, "<title>v = {}</title>", self.v);

        // Axes: alpha = 0 and integer ticks in beta.
        let _ = writeln!(
            out,
            r#"<line class="axis" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black"/>"#,
            num(f.x(f.beta_lo)),
            num(f.y(0.0)),
            num(f.x(f.beta_hi)),
            num(f.y(0.0))
        );
        let mut b = f.beta_lo.ceil();
        while b <= f.beta_hi {
            let _ = writeln!(
                out,
                r#"<text class="tick" x="{}" y="{}" font-size="10" text-anchor="middle">{}</text>"#,
                num(f.x(b)),
                num(f.y(0.0) + 14.0),
                b as i64
            );
            b += 1.0;
        }

        if let Some(beta0) = vertical_wall(&self.v.truncate()) {
            let x = num(f.x(to_f64(&beta0)));
            let _ = writeln!(
                out,
                r#"<line class="vertical-wall" x1="{x}" y1="{}" x2="{x}" y2="{}" stroke="gray" stroke-dasharray="4 4"/>"#,
                num(f.y(0.0)),
                num(f.y(f.alpha_hi))
            );
        }

        let h = hyperbola(&self.v.truncate());
        let alphas = (0..=CURVE_SAMPLES).map(|i| f.alpha_hi * i as f64 / CURVE_SAMPLES as f64);
        let pts = Self::polyline(&f, alphas.filter_map(|a| h.left_branch_f64(a * a).map(|b| (a, b))));
        if !pts.is_empty() {
            let _ = writeln!(out, r#"<polyline class="hyperbola" points="{pts}" fill="none" stroke="blue"/>"#);
        }

        for w in &self.walls {
            let Some((l, r)) = w.intercepts_f64() else { continue };
            let rad = num(0.5 * (r - l) * f.scale);
            let _ = writeln!(
                out,
                r#"<path class="wall" d="M {} {} A {rad} {rad} 0 0 1 {} {}" fill="none" stroke="red"/>"#,
                num(f.x(l)),
                num(f.y(0.0)),
                num(f.x(r)),
                num(f.y(0.0))
            );
        }

        if let Some(path) = self.path {
            let start = self.alpha_start.unwrap_or(0.0);
            let alphas = (0..=CURVE_SAMPLES).map(|i| start + (f.alpha_hi - start) * i as f64 / CURVE_SAMPLES as f64);
            let pts = Self::polyline(&f, alphas.filter_map(|a| path.beta_at(a).map(|b| (a, b))));
            if !pts.is_empty() {
                let _ = writeln!(out, r#"<polyline class="path" points="{pts}" fill="none" stroke="green"/>"#);
            }
            // Labels of crossings that coincide on screen are stacked.
            let mut stack: Option<(f64, f64, f64)> = None;
            for (i, &(alpha, beta)) in self.crossings.iter().enumerate() {
                if !f.inside(alpha, beta) {
                    continue;
                }
                let (x, y) = (f.x(beta), f.y(alpha));
                let lift = match stack {
                    Some((px, py, l)) if (px - x).hypot(py - y) < 8.0 => l + 12.0,
                    _ => 0.0,
                };
                stack = Some((x, y, lift));
                let _ = writeln!(
                    out,
                    r#"<line class="crossing" x1="{}" y1="{}" x2="{}" y2="{}" stroke="black" stroke-width="2"/>"#,
                    num(x - 5.0),
                    num(y),
                    num(x + 5.0),
                    num(y)
                );
                let _ = writeln!(
                    out,
                    r#"<text class="crossing-label" x="{}" y="{}" font-size="10">({})</text>"#,
                    num(x + 7.0),
                    num(y + 3.0 - lift),
                    i + 1
                );
            }
        }
        out.push_str("</svg>\n");
        out
    }
}

/// Tilt walls only, no path.
pub fn walls_svg(tw: &TiltWalls) -> String {
    Figure {
        v: &tw.v,
        walls: tw.walls.iter().map(|w| &w.wall).collect(),
        path: None,
        crossings: Vec::new(),
        alpha_start: None,
    }
    .render()
}

/// Tilt walls, the report's path, and a tick at each Bridgeland wall.
pub fn chamber_svg(report: &ChamberReport, tw: &TiltWalls) -> String {
    let path = PathSpec::new(report.v.clone())
        .with_epsilon(report.epsilon.clone())
        .with_direction(report.direction);
    Figure {
        v: &report.v,
        walls: tw.walls.iter().map(|w| &w.wall).collect(),
        path: Some(&path),
        crossings: report.walls.iter().map(|w| (w.crossing.alpha, w.crossing.beta)).collect(),
        alpha_start: Some(report.alpha_range.0),
    }
    .render()
}
