//! SVG pictures of a point set, its covering path and, optionally, the
//! per-window constructions.
//!
//! Coordinates are projected exactly and only rounded when printed, to a
//! fixed number of decimals, so the output is byte-stable.

use std::fmt::Write as _;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::geom::Point;
use crate::path::CoveringPath;
use crate::preprocess::{Frame, PointSet};
use crate::scalar::Scalar;
use crate::trace::{CaseId, IterationTrace};

pub const DECIMALS: usize = 12;
const MARGIN: i64 = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct RenderSpec {
    pub width: u32,
    pub height: u32,
    /// Constructed points as hollow circles, window slabs as dashed lines.
    pub show_aux: bool,
    /// Role names next to the window points.
    pub label_roles: bool,
}

impl Default for RenderSpec {
    fn default() -> Self {
        RenderSpec { width: 800, height: 800, show_aux: false, label_roles: false }
    }
}

/// Traces as produced by the planner, in its working frame.
#[derive(Clone, Copy, Debug)]
pub struct TraceOverlay<'a> {
    pub traces: &'a [IterationTrace],
    pub frame: &'a Frame,
}

/// `s` rounded half away from zero to `DECIMALS` places, trailing zeros dropped.
pub fn fixed(s: &Scalar) -> String {
    let ten_pow = num_traits::pow(BigInt::from(10), DECIMALS);
    let (num, den) = (s.numer() * &ten_pow, s.denom());
    let (q, r) = num.abs().div_rem(&den);
    let q = if r * 2 >= den { q + 1 } else { q };
    if q.is_zero() {
        return "0".into();
    }
    let digits = format!("{:0>width$}", q.to_string(), width = DECIMALS + 1);
    let (int, frac) = digits.split_at(digits.len() - DECIMALS);
    let frac = frac.trim_end_matches('0');
    let sign = if num.is_negative() { "-" } else { "" };
    if frac.is_empty() {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

/// Exact affine map from input coordinates to pixels, y pointing down.
struct Viewport {
    min_x: Scalar,
    max_y: Scalar,
    k: Scalar,
    off_x: Scalar,
    off_y: Scalar,
}

impl Viewport {
    fn fit<'a>(pts: impl Iterator<Item = &'a Point>, spec: &RenderSpec) -> Viewport {
        let mut bounds: Option<(Scalar, Scalar, Scalar, Scalar)> = None;
        for p in pts {
            bounds = Some(match bounds {
                None => (p.x.clone(), p.x.clone(), p.y.clone(), p.y.clone()),
                Some((x0, x1, y0, y1)) => {
                    (x0.min(p.x.clone()), x1.max(p.x.clone()), y0.min(p.y.clone()), y1.max(p.y.clone()))
                }
            });
        }
        let (x0, x1, y0, y1) = bounds.unwrap_or_default();
        let avail_w = Scalar::from_int((i64::from(spec.width) - 2 * MARGIN).max(1));
        let avail_h = Scalar::from_int((i64::from(spec.height) - 2 * MARGIN).max(1));
        let (dx, dy) = (&x1 - &x0, &y1 - &y0);
        let kx = (!dx.is_zero()).then(|| &avail_w / &dx);
        let ky = (!dy.is_zero()).then(|| &avail_h / &dy);
        let k = match (kx, ky) {
            (Some(a), Some(b)) => a.min(b),
            (Some(a), None) | (None, Some(a)) => a,
            (None, None) => Scalar::one(),
        };
        // centre the drawing in the free direction
        let half = Scalar::ratio(1, 2);
        let off_x = Scalar::from_int(MARGIN) + &(&(&avail_w - &(&dx * &k)) * &half);
        let off_y = Scalar::from_int(MARGIN) + &(&(&avail_h - &(&dy * &k)) * &half);
        Viewport { min_x: x0, max_y: y1, k, off_x, off_y }
    }

    fn project(&self, p: &Point) -> (String, String) {
        let x = &self.off_x + &(&(&p.x - &self.min_x) * &self.k);
        let y = &self.off_y + &(&(&self.max_y - &p.y) * &self.k);
        (fixed(&x), fixed(&y))
    }
}

fn escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

pub fn to_svg(ps: &PointSet, path: &CoveringPath, overlay: Option<TraceOverlay<'_>>, spec: &RenderSpec) -> Vec<u8> {
    let windows: Vec<IterationTrace> = overlay
        .map(|o| o.traces.iter().map(|t| crate::io::trace_to_original(t, o.frame)).collect())
        .unwrap_or_default();
    let slabs: Vec<(Point, Point)> = match overlay {
        Some(o) if spec.show_aux => o.traces.iter().flat_map(|t| slab_lines(t, o.frame)).collect(),
        _ => Vec::new(),
    };
    let aux_pts = windows.iter().filter(|_| spec.show_aux).flat_map(|t| t.aux_points.iter().map(|n| &n.point));
    let slab_pts = slabs.iter().flat_map(|(a, b)| [a, b]);
    let view = Viewport::fit(ps.points().iter().chain(path.vertices()).chain(aux_pts).chain(slab_pts), spec);

    let mut out = String::new();
    let (w, h) = (spec.width, spec.height);
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let _ = writeln!(out, r##"<rect width="{w}" height="{h}" fill="#ffffff"/>"##);

    if !slabs.is_empty() {
        let _ = writeln!(out, r##"<g id="slabs" stroke="#9a9a9a" stroke-width="1" stroke-dasharray="5 4">"##);
        for (a, b) in &slabs {
            let ((x1, y1), (x2, y2)) = (view.project(a), view.project(b));
            let _ = writeln!(out, r#"<line x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}"/>"#);
        }
        let _ = writeln!(out, "</g>");
    }

    if path.vertices().len() >= 2 {
        let pts: Vec<String> = path
            .vertices()
            .iter()
            .map(|v| {
                let (x, y) = view.project(v);
                format!("{x},{y}")
            })
            .collect();
        let _ = writeln!(
            out,
            r##"<polyline id="path" fill="none" stroke="#1f4e9c" stroke-width="2" stroke-linejoin="round" points="{}"/>"##,
            pts.join(" ")
        );
    }

    let _ = writeln!(out, r##"<g id="points" fill="#111111">"##);
    for p in ps.points() {
        let (x, y) = view.project(p);
        let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="3"/>"#);
    }
    let _ = writeln!(out, "</g>");

    if spec.show_aux && windows.iter().any(|t| !t.aux_points.is_empty()) {
        let _ = writeln!(out, r##"<g id="aux" fill="none" stroke="#c0392b" stroke-width="1.5" font-family="sans-serif" font-size="11">"##);
        for t in &windows {
            for n in &t.aux_points {
                let (x, y) = view.project(&n.point);
                let _ = writeln!(out, r#"<circle cx="{x}" cy="{y}" r="4"/>"#);
                let _ = writeln!(out, r##"<text x="{x}" y="{y}" dx="6" dy="-6" fill="#c0392b" stroke="none">{}</text>"##, escape(&n.name));
            }
        }
        let _ = writeln!(out, "</g>");
    }

    if spec.label_roles && windows.iter().any(|t| !t.roles.is_empty()) {
        let _ = writeln!(out, r##"<g id="roles" fill="#2d7d32" font-family="sans-serif" font-size="11">"##);
        for t in &windows {
            for n in &t.roles {
                let (x, y) = view.project(&n.point);
                let _ = writeln!(out, r#"<text x="{x}" y="{y}" dx="6" dy="14">{}</text>"#, escape(&n.name));
            }
        }
        let _ = writeln!(out, "</g>");
    }

    let _ = writeln!(out, "</svg>");
    out.into_bytes()
}

/// The verticals through the window's `l` and `r` in the working frame,
/// clipped to the window's height and mapped back to input coordinates.
fn slab_lines(t: &IterationTrace, frame: &Frame) -> Vec<(Point, Point)> {
    if t.case_id == CaseId::FinalTail {
        return Vec::new();
    }
    let ys = t
        .anchor
        .iter()
        .chain(&t.consumed)
        .chain(t.aux_points.iter().map(|n| &n.point))
        .map(|p| &p.y);
    let (Some(lo), Some(hi)) = (ys.clone().min(), ys.max()) else {
        return Vec::new();
    };
    ["l", "r"]
        .iter()
        .filter_map(|name| t.roles.iter().find(|n| n.name == *name))
        .map(|n| {
            let a = Point::new(n.point.x.clone(), lo.clone());
            let b = Point::new(n.point.x.clone(), hi.clone());
            (frame.to_original(&a), frame.to_original(&b))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{solve, SolveOptions};

    fn grid() -> PointSet {
        PointSet::from_distinct((0..3).flat_map(|x| (0..3).map(move |y| Point::from_ints(x, y))).collect())
    }

    #[test]
    fn fixed_rounds_half_away_from_zero() {
        assert_eq!(fixed(&Scalar::ratio(1, 3)), "0.333333333333");
        assert_eq!(fixed(&Scalar::ratio(-2, 3)), "-0.666666666667");
        assert_eq!(fixed(&Scalar::ratio(5, 2)), "2.5");
        assert_eq!(fixed(&Scalar::from_int(-7)), "-7");
        assert_eq!(fixed(&Scalar::ratio(1, 4_000_000_000_000)), "0");
        assert_eq!(fixed(&Scalar::ratio(1, 2_000_000_000_000)), "0.000000000001");
    }

    #[test]
    fn single_point_is_one_circle() {
        let ps = PointSet::from_distinct(vec![Point::from_ints(2, 2)]);
        let path = CoveringPath::new(vec![Point::from_ints(2, 2)]);
        let svg = String::from_utf8(to_svg(&ps, &path, None, &RenderSpec::default())).unwrap();
        assert_eq!(svg.matches("<circle").count(), 1);
        assert!(!svg.contains("<polyline"));
        assert!(svg.contains(r#"cx="400" cy="400""#));
        assert!(svg.trim_end().ends_with("</svg>"));
    }

    #[test]
    fn nine_dots_path_has_four_links() {
        let ps = grid();
        let path = CoveringPath::new(
            [(0, 0), (2, 2), (2, -1), (-1, 2), (1, 2)].iter().map(|&(x, y)| Point::from_ints(x, y)).collect(),
        );
        let svg = String::from_utf8(to_svg(&ps, &path, None, &RenderSpec::default())).unwrap();
        assert_eq!(svg.matches("<circle").count(), 9);
        let poly = svg.lines().find(|l| l.starts_with("<polyline")).unwrap();
        let pts = poly.split("points=\"").nth(1).unwrap().trim_end_matches("\"/>");
        assert_eq!(pts.split(' ').count(), 5);
    }

    #[test]
    fn overlay_is_deterministic() {
        let ps = crate::generators::generate(&crate::generators::GenSpec::new(
            crate::generators::GenKind::UniformSquare,
            30,
            4,
        ))
        .unwrap();
        let opts = SolveOptions { emit_trace: true, ..SolveOptions::default() };
        let spec = RenderSpec { show_aux: true, label_roles: true, ..RenderSpec::default() };
        let draw = || {
            let sol = solve(&ps, &opts).unwrap();
            to_svg(&ps, &sol.path, Some(TraceOverlay { traces: &sol.traces, frame: &sol.frame }), &spec)
        };
        let (a, b) = (draw(), draw());
        assert_eq!(a, b);
        let svg = String::from_utf8(a).unwrap();
        assert!(svg.contains(r#"<g id="slabs""#));
        assert!(svg.contains(">l'</text>"));
    }
}
