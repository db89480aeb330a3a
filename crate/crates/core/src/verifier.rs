//! Certification of covering paths, independent of how they were built.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::geom::{orientation, point_on_segment, segments_intersect, segments_properly_cross, Orientation, Point, Segment};
use crate::path::{prefix_bound, segment_bound, CoveringPath};
use crate::preprocess::PointSet;
use crate::trace::{CaseId, IterationTrace};

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum VerifyMode {
    /// Non-adjacent segments must be disjoint.
    #[default]
    Strict,
    /// Only proper crossings fail; touchings are reported.
    Standard,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub covered: bool,
    pub uncovered_indices: Vec<usize>,
    /// Segment index pairs `(i, j)`, `i < j`.
    pub proper_crossings: Vec<(usize, usize)>,
    pub touchings: Vec<(usize, usize)>,
    pub segment_count: usize,
    pub bound: usize,
    pub within_bound: bool,
    pub invariant_ok: Option<bool>,
}

impl VerificationReport {
    pub fn passes(&self, mode: VerifyMode) -> bool {
        self.covered
            && self.within_bound
            && self.proper_crossings.is_empty()
            && (mode == VerifyMode::Standard || self.touchings.is_empty())
            && self.invariant_ok != Some(false)
    }
}

/// Paths with more segments than this are checked with the sweep.
const PAIRWISE_LIMIT: usize = 64;

pub fn verify(ps: &PointSet, path: &CoveringPath, mode: VerifyMode) -> VerificationReport {
    if path.segment_count() <= PAIRWISE_LIMIT {
        verify_pairwise(ps, path, mode)
    } else {
        verify_sweep(ps, path, mode)
    }
}

/// All point/segment and segment/segment pairs.
pub fn verify_pairwise(ps: &PointSet, path: &CoveringPath, _mode: VerifyMode) -> VerificationReport {
    let segs: Vec<Segment> = path.segments().collect();
    let mut uncovered = Vec::new();
    for (i, p) in ps.points().iter().enumerate() {
        if !covered_by(p, path.vertices(), segs.iter()) {
            uncovered.push(i);
        }
    }
    let mut crossings = Vec::new();
    let mut touchings = Vec::new();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            classify_pair(&segs, i, j, &mut crossings, &mut touchings);
        }
    }
    report(ps.len(), segs.len(), uncovered, crossings, touchings)
}

/// Same verdicts as [`verify_pairwise`], testing only pairs whose x-extents
/// overlap.
pub fn verify_sweep(ps: &PointSet, path: &CoveringPath, _mode: VerifyMode) -> VerificationReport {
    let segs: Vec<Segment> = path.segments().collect();
    let span = |s: &Segment| -> (Point, Point) {
        if s.a.x <= s.b.x {
            (s.a.clone(), s.b.clone())
        } else {
            (s.b.clone(), s.a.clone())
        }
    };
    let spans: Vec<(Point, Point)> = segs.iter().map(span).collect();
    let mut by_left: Vec<usize> = (0..segs.len()).collect();
    by_left.sort_by(|&i, &j| spans[i].0.x.cmp(&spans[j].0.x).then(i.cmp(&j)));

    let mut crossings = Vec::new();
    let mut touchings = Vec::new();
    let mut active: Vec<usize> = Vec::new();
    for &i in &by_left {
        let left = &spans[i].0.x;
        active.retain(|&j| spans[j].1.x >= *left);
        for &j in &active {
            let (a, b) = if i < j { (i, j) } else { (j, i) };
            classify_pair(&segs, a, b, &mut crossings, &mut touchings);
        }
        active.push(i);
    }
    crossings.sort();
    touchings.sort();

    let mut order: Vec<usize> = (0..ps.len()).collect();
    let pts = ps.points();
    order.sort_by(|&i, &j| pts[i].x.cmp(&pts[j].x).then(i.cmp(&j)));
    let mut uncovered = Vec::new();
    let mut next = 0;
    active.clear();
    for &pi in &order {
        let x = &pts[pi].x;
        while next < by_left.len() && spans[by_left[next]].0.x <= *x {
            active.push(by_left[next]);
            next += 1;
        }
        active.retain(|&j| spans[j].1.x >= *x);
        let hit = active.iter().any(|&j| point_on_segment(&pts[pi], &segs[j]))
            || (segs.is_empty() && path.vertices().first() == Some(&pts[pi]));
        if !hit {
            uncovered.push(pi);
        }
    }
    uncovered.sort();
    report(ps.len(), segs.len(), uncovered, crossings, touchings)
}

fn covered_by<'a>(p: &Point, vertices: &[Point], mut segs: impl Iterator<Item = &'a Segment>) -> bool {
    // a single-vertex path covers its vertex
    if vertices.len() == 1 {
        return vertices[0] == *p;
    }
    segs.any(|s| point_on_segment(p, s))
}

fn classify_pair(
    segs: &[Segment],
    i: usize,
    j: usize,
    crossings: &mut Vec<(usize, usize)>,
    touchings: &mut Vec<(usize, usize)>,
) {
    let (s, t) = (&segs[i], &segs[j]);
    if j == i + 1 {
        // consecutive segments share t.a = s.b; anything more is an overlap
        if orientation(&s.a, &s.b, &t.b) == Orientation::Collinear && folds_back(s, t) {
            crossings.push((i, j));
        }
        return;
    }
    if segments_properly_cross(s, t) {
        crossings.push((i, j));
    } else if segments_intersect(s, t) {
        touchings.push((i, j));
    }
}

fn folds_back(s: &Segment, t: &Segment) -> bool {
    let d = &(&(&s.b.x - &s.a.x) * &(&t.b.x - &t.a.x)) + &(&(&s.b.y - &s.a.y) * &(&t.b.y - &t.a.y));
    d.signum() < 0
}

fn report(
    n: usize,
    segment_count: usize,
    uncovered_indices: Vec<usize>,
    proper_crossings: Vec<(usize, usize)>,
    touchings: Vec<(usize, usize)>,
) -> VerificationReport {
    let bound = segment_bound(n);
    VerificationReport {
        covered: uncovered_indices.is_empty(),
        uncovered_indices,
        proper_crossings,
        touchings,
        segment_count,
        bound,
        within_bound: segment_count <= bound,
        invariant_ok: None,
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceViolation {
    pub index: usize,
    pub message: String,
}

/// Replays the scan's prefix accounting. Traces are in the solver's working
/// coordinates, where x-coordinates are distinct.
pub fn check_invariant_trace(traces: &[IterationTrace], ps: &PointSet) -> Result<(), TraceViolation> {
    let fail = |index: usize, message: String| Err(TraceViolation { index, message });
    let n = ps.len();
    let mut scanned = 0usize;
    let mut segments = 0usize;
    let mut rightmost: Option<&Point> = None;

    for (idx, t) in traces.iter().enumerate() {
        let final_step = t.case_id == CaseId::FinalTail;
        match &t.anchor {
            None => {
                if idx != 0 || !final_step {
                    return fail(idx, "missing anchor".into());
                }
            }
            Some(a) => match rightmost {
                None => {
                    scanned = 1;
                    rightmost = Some(a);
                }
                Some(r) if r != a => return fail(idx, "anchor is not the previous rightmost point".into()),
                Some(_) => {}
            },
        }
        if final_step && idx + 1 != traces.len() {
            return fail(idx, "tail before the last iteration".into());
        }

        let mut left = t.anchor.as_ref();
        for p in &t.consumed {
            if left.is_some_and(|l| l.x >= p.x) {
                return fail(idx, "consumed points not in increasing x".into());
            }
            left = Some(p);
        }
        let added = t.appended_segments();
        if final_step {
            // without an anchor the whole input (at most seven points) is one chain
            let most = if t.anchor.is_some() { 6 } else { 7 };
            if t.consumed.len() > most || t.appended_vertices != t.consumed {
                return fail(idx, "tail is not the chain of the leftover points".into());
            }
        } else {
            if t.consumed.len() != 6 && t.consumed.len() != 7 {
                return fail(idx, format!("window consumed {} points", t.consumed.len()));
            }
            if added > t.consumed.len() - 1 {
                return fail(idx, format!("{added} segments for {} points", t.consumed.len()));
            }
        }
        scanned += t.consumed.len();
        segments += added;
        let limit = if final_step { segment_bound(scanned) } else { prefix_bound(scanned) };
        if segments > limit {
            return fail(idx, format!("{segments} segments after {scanned} points exceeds {limit}"));
        }

        let Some(right) = t.consumed.last().or(rightmost) else {
            continue;
        };
        if let Some(a) = &t.anchor {
            for v in &t.appended_vertices {
                if v.x.cmp(&a.x) == Ordering::Less || v.x > right.x {
                    return fail(idx, "appended vertex outside the slab".into());
                }
                if v == a {
                    return fail(idx, "path returns to the anchor".into());
                }
            }
        }
        if !t.consumed.is_empty() {
            if t.appended_vertices.last() != Some(right) {
                return fail(idx, "subpath does not end at the rightmost point".into());
            }
            if t.appended_vertices.iter().filter(|v| *v == right).count() != 1 {
                return fail(idx, "rightmost point has degree above one".into());
            }
        }
        rightmost = Some(right);
    }
    if scanned != n {
        return fail(traces.len(), format!("traces consume {scanned} of {n} points"));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::from_distinct(v.iter().map(|&(x, y)| p(x, y)).collect())
    }

    fn path(v: &[(i64, i64)]) -> CoveringPath {
        CoveringPath::new(v.iter().map(|&(x, y)| p(x, y)).collect())
    }

    #[test]
    fn two_points() {
        let r = verify(&ps(&[(0, 0), (1, 1)]), &path(&[(0, 0), (1, 1)]), VerifyMode::Strict);
        assert!(r.covered);
        assert_eq!((r.segment_count, r.bound), (1, 2));
        assert!(r.within_bound && r.passes(VerifyMode::Strict));
    }

    #[test]
    fn crossing_fails_both_modes() {
        let r = verify(
            &ps(&[(0, 0), (2, 2), (0, 2), (2, 0)]),
            &path(&[(0, 0), (2, 2), (0, 2), (2, 0)]),
            VerifyMode::Strict,
        );
        assert_eq!(r.proper_crossings, vec![(0, 2)]);
        assert!(!r.passes(VerifyMode::Strict) && !r.passes(VerifyMode::Standard));
    }

    #[test]
    fn touching_fails_only_strict() {
        // third segment ends on the first one's interior
        let r = verify(&ps(&[(0, 0), (4, 0), (4, 2)]), &path(&[(0, 0), (4, 0), (4, 2), (2, 0)]), VerifyMode::Strict);
        assert!(r.proper_crossings.is_empty());
        assert_eq!(r.touchings, vec![(0, 2)]);
        assert!(!r.passes(VerifyMode::Strict) && r.passes(VerifyMode::Standard));
    }

    #[test]
    fn fold_back_is_a_crossing() {
        let r = verify(&ps(&[(0, 0), (4, 0)]), &path(&[(0, 0), (4, 0), (2, 0)]), VerifyMode::Standard);
        assert_eq!(r.proper_crossings, vec![(0, 1)]);
    }

    #[test]
    fn nine_dots() {
        // the classic four-stroke path through the 3x3 grid, overshooting two corners
        let grid: Vec<(i64, i64)> = (0..3).flat_map(|x| (0..3).map(move |y| (x, y))).collect();
        let r = verify(&ps(&grid), &path(&[(0, 0), (2, 2), (2, -1), (-1, 2), (1, 2)]), VerifyMode::Strict);
        assert!(r.covered);
        assert_eq!(r.segment_count, 4);
        assert_eq!(r.bound, 8);
        assert!(r.within_bound);
        assert!(!r.proper_crossings.is_empty());
    }

    #[test]
    fn uncovered_reported() {
        let r = verify(&ps(&[(0, 0), (1, 1), (5, 0)]), &path(&[(0, 0), (1, 1)]), VerifyMode::Strict);
        assert_eq!(r.uncovered_indices, vec![2]);
        assert!(!r.covered);
    }

    #[test]
    fn single_point_trace() {
        let t = IterationTrace {
            case_id: CaseId::FinalTail,
            anchor: None,
            consumed: vec![p(5, 5)],
            appended_vertices: vec![p(5, 5)],
            aux_points: vec![],
            roles: vec![],
            reflection_flags: Default::default(),
            budget: None,
            fallback: false,
        };
        assert_eq!(check_invariant_trace(&[t], &ps(&[(5, 5)])), Ok(()));
    }

    #[test]
    fn over_budget_window_is_flagged() {
        let pts: Vec<Point> = (0..8).map(|i| p(i, i * i % 5)).collect();
        let t = IterationTrace {
            case_id: CaseId::C2_1,
            anchor: Some(pts[0].clone()),
            consumed: pts[1..7].to_vec(),
            appended_vertices: pts[1..7].to_vec(),
            aux_points: vec![],
            roles: vec![],
            reflection_flags: Default::default(),
            budget: Some(5),
            fallback: false,
        };
        let err = check_invariant_trace(&[t], &PointSet::from_distinct(pts)).unwrap_err();
        assert_eq!(err.index, 0);
    }

    fn arb_path() -> impl Strategy<Value = (Vec<(i64, i64)>, Vec<(i64, i64)>)> {
        (
            prop::collection::vec((-5i64..6, -5i64..6), 1..12),
            prop::collection::vec((-5i64..6, -5i64..6), 1..90),
        )
    }

    proptest! {
        #[test]
        fn sweep_matches_pairwise((pts, verts) in arb_path()) {
            let (set, _) = PointSet::new(pts.iter().map(|&(x, y)| p(x, y)).collect());
            let path = path(&verts);
            prop_assert_eq!(
                verify_pairwise(&set, &path, VerifyMode::Strict),
                verify_sweep(&set, &path, VerifyMode::Strict)
            );
        }

        #[test]
        fn strict_implies_standard((pts, verts) in arb_path()) {
            let (set, _) = PointSet::new(pts.iter().map(|&(x, y)| p(x, y)).collect());
            let r = verify(&set, &path(&verts), VerifyMode::Strict);
            prop_assert!(!r.passes(VerifyMode::Strict) || r.passes(VerifyMode::Standard));
        }
    }
}
