//! Left-to-right scan producing a plane covering path with at most
//! `ceil(6n/7)` segments.
//!
//! The first point is taken alone. While at least seven points remain, the
//! next six (occasionally seven) are covered by a five- (six-) segment
//! subpath that starts at the current rightmost point and stays in the slab
//! up to the new rightmost point. Leftovers are joined by a monotone chain.

mod window;

use std::time::{Duration, Instant};

use serde::{Deserialize, Serialize};

pub use window::{classify_window, Classification, HullCase, Roles, WindowError, WindowPath};

use crate::error::Error;
use crate::geom::{point_on_segment, segments_intersect, Orientation, Point, Segment};
use crate::path::CoveringPath;
use crate::preprocess::{working_frame, Frame, PointSet};
use crate::trace::{CaseId, IterationTrace, NamedPoint, ReflectionFlags};
use crate::window_solver::{solve_window, WindowProblem};

use window::RawWindow;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum DegeneracyMode {
    /// Fail when a window cannot be covered within its budget.
    Strict,
    /// Cover such a window with a monotone chain and emit a warning.
    #[default]
    Permissive,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub enum OutputFormat {
    #[default]
    Json,
    Text,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveOptions {
    pub degeneracy_mode: DegeneracyMode,
    pub emit_trace: bool,
    pub output_format: OutputFormat,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolveStats {
    /// Intermediate windows processed.
    pub windows: usize,
    /// Windows handed to the window search.
    pub searched_windows: usize,
    /// Windows covered by an over-budget chain.
    pub fallbacks: usize,
    /// Shear, scaling and sorting.
    pub prepare_time: Duration,
    pub scan_time: Duration,
}

#[derive(Clone, Debug)]
pub struct Solution {
    /// In the input's coordinates.
    pub path: CoveringPath,
    /// In working coordinates (see `frame`); empty unless requested.
    pub traces: Vec<IterationTrace>,
    pub warnings: Vec<String>,
    pub frame: Frame,
    pub stats: SolveStats,
}

/// Scan progress: the path so far in working coordinates, and how many of
/// the sorted points it covers.
#[derive(Clone, Debug)]
pub struct ScanState {
    pub path: Vec<Point>,
    pub scanned: usize,
}

impl ScanState {
    pub fn rightmost(&self) -> Option<&Point> {
        self.path.last()
    }
}

pub fn solve(ps: &PointSet, opts: &SolveOptions) -> Result<Solution, Error> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let started = Instant::now();
    let (pts, frame) = prepare(ps);
    let prepare_time = started.elapsed();

    let started = Instant::now();
    let mut stats = SolveStats { prepare_time, ..SolveStats::default() };
    let mut traces = Vec::new();
    let mut warnings = Vec::new();
    let n = pts.len();

    let state = if n <= 7 {
        if opts.emit_trace {
            traces.push(tail_trace(None, &pts));
        }
        ScanState { path: pts.clone(), scanned: n }
    } else {
        let mut state = ScanState { path: vec![pts[0].clone()], scanned: 1 };
        while n - state.scanned >= 7 {
            let at = state.scanned;
            let anchor = pts[at - 1].clone();
            let step = scan_window(&anchor, &pts[at..at + 7], at, opts, &mut stats, &mut warnings)?;
            let consumed = step.consumed;
            state.path.extend_from_slice(&step.vertices);
            if opts.emit_trace {
                traces.push(step.trace(anchor, &pts[at..at + consumed]));
            }
            state.scanned += consumed;
        }
        let anchor = pts[state.scanned - 1].clone();
        let rest = &pts[state.scanned..];
        if opts.emit_trace {
            traces.push(tail_trace(Some(anchor), rest));
        }
        state.path.extend(final_tail(rest));
        state.scanned = n;
        state
    };
    stats.scan_time = started.elapsed();

    let path = CoveringPath::new(state.path.iter().map(|p| frame.to_original(p)).collect());
    Ok(Solution { path, traces, warnings, frame, stats })
}

/// Working coordinates sorted by strictly increasing x.
fn prepare(ps: &PointSet) -> (Vec<Point>, Frame) {
    let (pts, frame) = working_frame(ps);
    assert!(pts.windows(2).all(|w| w[0].x < w[1].x), "shear left equal x-coordinates");
    (pts, frame)
}

/// The leftover chain: remaining points in x order, the first joined to the
/// current rightmost point.
pub fn final_tail(remaining: &[Point]) -> Vec<Point> {
    remaining.to_vec()
}

fn tail_trace(anchor: Option<Point>, rest: &[Point]) -> IterationTrace {
    IterationTrace {
        case_id: CaseId::FinalTail,
        anchor,
        consumed: rest.to_vec(),
        appended_vertices: rest.to_vec(),
        aux_points: Vec::new(),
        roles: Vec::new(),
        reflection_flags: ReflectionFlags::default(),
        budget: None,
        fallback: false,
    }
}

struct Step {
    case_id: CaseId,
    vertices: Vec<Point>,
    consumed: usize,
    aux: Vec<(&'static str, Point)>,
    roles: Vec<(&'static str, Point)>,
    flags: ReflectionFlags,
    budget: Option<usize>,
    fallback: bool,
}

impl Step {
    fn trace(self, anchor: Point, consumed: &[Point]) -> IterationTrace {
        let named = |v: Vec<(&'static str, Point)>| {
            v.into_iter().map(|(name, point)| NamedPoint { name: name.to_string(), point }).collect()
        };
        IterationTrace {
            case_id: self.case_id,
            anchor: Some(anchor),
            consumed: consumed.to_vec(),
            appended_vertices: self.vertices,
            aux_points: named(self.aux),
            roles: named(self.roles),
            reflection_flags: self.flags,
            budget: self.budget,
            fallback: self.fallback,
        }
    }
}

/// Covers at least six of the seven points `next` starting from `anchor`.
fn scan_window(
    anchor: &Point,
    next: &[Point],
    position: usize,
    opts: &SolveOptions,
    stats: &mut SolveStats,
    warnings: &mut Vec<String>,
) -> Result<Step, Error> {
    stats.windows += 1;
    if let Ok(wp) = construct_window_path(anchor, next) {
        if window_path_ok(anchor, &next[..wp.consumed], &wp.vertices) {
            return Ok(Step {
                case_id: wp.case_id,
                vertices: wp.vertices,
                consumed: wp.consumed,
                aux: wp.aux,
                roles: wp.roles,
                flags: wp.flags,
                budget: Some(wp.consumed - 1),
                fallback: false,
            });
        }
    }

    stats.searched_windows += 1;
    for take in [6, 7] {
        let problem = WindowProblem::new(anchor.clone(), next[..take].to_vec(), take - 1);
        if let Some(path) = solve_window(&problem)? {
            return Ok(Step {
                case_id: CaseId::DegenSolver,
                vertices: path[1..].to_vec(),
                consumed: take,
                aux: Vec::new(),
                roles: Vec::new(),
                flags: ReflectionFlags::default(),
                budget: Some(take - 1),
                fallback: false,
            });
        }
    }

    match opts.degeneracy_mode {
        DegeneracyMode::Strict => Err(Error::DegenerateWindowUnsolvable { position }),
        DegeneracyMode::Permissive => {
            stats.fallbacks += 1;
            warnings.push(format!(
                "window at scan position {position}: no subpath within budget, covered by a monotone chain"
            ));
            Ok(Step {
                case_id: CaseId::DegenSolver,
                vertices: next[..6].to_vec(),
                consumed: 6,
                aux: Vec::new(),
                roles: Vec::new(),
                flags: ReflectionFlags::default(),
                budget: Some(5),
                fallback: true,
            })
        }
    }
}

/// Builds the case subpath for the window `anchor, pts[0..6]`, with `pts[6]`
/// available for the one branch that consumes seven points.
///
/// `pts` must hold six or seven points in strictly increasing x, all right of
/// the anchor.
pub fn construct_window_path(anchor: &Point, pts: &[Point]) -> Result<WindowPath, WindowError> {
    assert!(pts.len() == 6 || pts.len() == 7, "window needs six or seven points");
    let raw = RawWindow::new(anchor, &pts[..6], pts.get(6));
    window::construct(&raw)
}

/// Coverage, slab, endpoint and contact check of a window subpath. The
/// constructions guarantee all of this for windows in general position; the
/// check guards the boundary cases of the region tests.
fn window_path_ok(anchor: &Point, consumed: &[Point], vertices: &[Point]) -> bool {
    let right = match consumed.last() {
        Some(r) => r,
        None => return false,
    };
    if vertices.last() != Some(right) || vertices.len() + 1 != consumed.len() {
        return false;
    }
    // strict slab for bends keeps the subpath away from its neighbours
    let (lo, hi) = (&anchor.x, &right.x);
    if vertices[..vertices.len() - 1].iter().any(|v| v.x <= *lo || v.x >= *hi) {
        return false;
    }
    let mut all = Vec::with_capacity(vertices.len() + 1);
    all.push(anchor.clone());
    all.extend_from_slice(vertices);
    let segs: Vec<Segment> = all.windows(2).map(|w| Segment::new(w[0].clone(), w[1].clone())).collect();
    if !consumed.iter().all(|p| segs.iter().any(|s| point_on_segment(p, s))) {
        return false;
    }
    for i in 0..segs.len() {
        if i + 1 < segs.len() && folds_back(&segs[i], &segs[i + 1]) {
            return false;
        }
        for j in i + 2..segs.len() {
            if segments_intersect(&segs[i], &segs[j]) {
                return false;
            }
        }
    }
    true
}

fn folds_back(s: &Segment, t: &Segment) -> bool {
    if crate::geom::orientation(&s.a, &s.b, &t.b) != Orientation::Collinear {
        return false;
    }
    let d = &(&(&s.b.x - &s.a.x) * &(&t.b.x - &t.a.x)) + &(&(&s.b.y - &s.a.y) * &(&t.b.y - &t.a.y));
    d.signum() < 0
}
