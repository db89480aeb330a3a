//! Text interchange: point files and path documents.
//!
//! A point file has one `x y` pair per line; each coordinate is a decimal
//! literal or a `num/den` rational. `#` starts a comment, blank lines are
//! skipped. Path documents are JSON with every coordinate written as a
//! `num/den` string, so nothing is lost in transit.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::Point;
use crate::path::CoveringPath;
use crate::planner::Solution;
use crate::preprocess::{DedupReport, Frame, PointSet};
use crate::scalar::Scalar;
use crate::trace::{IterationTrace, NamedPoint};

/// Parses a point file. Duplicates are merged; the report says which.
pub fn parse_points(text: &str) -> Result<(PointSet, DedupReport), Error> {
    let mut points = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let err = |message: String| Error::Parse { line: i + 1, message };
        let mut fields = line.split_whitespace();
        let (Some(x), Some(y), None) = (fields.next(), fields.next(), fields.next()) else {
            return Err(err(format!("expected two coordinates, got `{line}`")));
        };
        let x: Scalar = x.parse().map_err(|e| err(format!("{e}")))?;
        let y: Scalar = y.parse().map_err(|e| err(format!("{e}")))?;
        points.push(Point::new(x, y));
    }
    Ok(PointSet::new(points))
}

/// Integers are written bare, everything else as `num/den`.
pub fn write_points(points: &[Point]) -> String {
    let mut out = String::new();
    for p in points {
        let _ = writeln!(out, "{} {}", coordinate(&p.x), coordinate(&p.y));
    }
    out
}

fn coordinate(s: &Scalar) -> String {
    if s.is_integer() {
        s.numer().to_string()
    } else {
        s.to_string()
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PathDocument {
    pub vertices: Vec<Point>,
    pub segments: usize,
    #[serde(default)]
    pub warnings: Vec<String>,
    /// Per-iteration record in input coordinates, present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace: Option<Vec<IterationTrace>>,
}

impl PathDocument {
    pub fn from_solution(sol: &Solution, with_trace: bool) -> Self {
        PathDocument {
            vertices: sol.path.vertices().to_vec(),
            segments: sol.path.segment_count(),
            warnings: sol.warnings.clone(),
            trace: with_trace.then(|| sol.traces.iter().map(|t| trace_to_original(t, &sol.frame)).collect()),
        }
    }

    pub fn path(&self) -> CoveringPath {
        CoveringPath::new(self.vertices.clone())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("path document serializes");
        s.push('\n');
        s
    }

    /// Parses a path document; `segments` must agree with the vertex list.
    pub fn from_json(text: &str) -> Result<Self, Error> {
        let doc: PathDocument = serde_json::from_str(text).map_err(|e| Error::PathFormat(e.to_string()))?;
        let expected = doc.path().segment_count();
        if doc.segments != expected {
            return Err(Error::PathFormat(format!(
                "`segments` is {} but the vertex list has {expected}",
                doc.segments
            )));
        }
        Ok(doc)
    }
}

/// Maps every point of a working-frame trace back to input coordinates.
pub fn trace_to_original(t: &IterationTrace, frame: &Frame) -> IterationTrace {
    let map = |p: &Point| frame.to_original(p);
    let named = |v: &[NamedPoint]| {
        v.iter().map(|n| NamedPoint { name: n.name.clone(), point: map(&n.point) }).collect()
    };
    IterationTrace {
        case_id: t.case_id,
        anchor: t.anchor.as_ref().map(map),
        consumed: t.consumed.iter().map(map).collect(),
        appended_vertices: t.appended_vertices.iter().map(map).collect(),
        aux_points: named(&t.aux_points),
        roles: named(&t.roles),
        reflection_flags: t.reflection_flags,
        budget: t.budget,
        fallback: t.fallback,
    }
}

/// Pretty JSON with a trailing newline.
pub fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("value serializes");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::planner::{solve, SolveOptions};

    #[test]
    fn point_file_forms() {
        let text = "# nine dots\n0 0\n1/2   -3/4\n\n2.5 1e1  # trailing\n-0.125 +7\n";
        let (ps, dedup) = parse_points(text).unwrap();
        assert!(dedup.duplicates.is_empty());
        let expect = [
            Point::from_ints(0, 0),
            Point::new(Scalar::ratio(1, 2), Scalar::ratio(-3, 4)),
            Point::new(Scalar::ratio(5, 2), Scalar::from_int(10)),
            Point::new(Scalar::ratio(-1, 8), Scalar::from_int(7)),
        ];
        assert_eq!(ps.points(), &expect);
    }

    #[test]
    fn point_file_errors_name_the_line() {
        assert_eq!(parse_points("0 0\n1\n").unwrap_err(), Error::Parse { line: 2, message: "expected two coordinates, got `1`".into() });
        assert!(matches!(parse_points("0 0\n\n1 2 3\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(parse_points("1/0 2\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_points("x 2\n"), Err(Error::Parse { line: 1, .. })));
    }

    #[test]
    fn empty_file_is_empty_set() {
        let (ps, _) = parse_points("# nothing\n\n").unwrap();
        assert!(ps.is_empty());
    }

    #[test]
    fn points_round_trip() {
        let pts = vec![Point::from_ints(-3, 4), Point::new(Scalar::ratio(7, 3), Scalar::ratio(-1, 9))];
        assert_eq!(write_points(&pts), "-3 4\n7/3 -1/9\n");
        let (ps, _) = parse_points(&write_points(&pts)).unwrap();
        assert_eq!(ps.points(), &pts[..]);
    }

    #[test]
    fn path_document_round_trip() {
        let (ps, _) = parse_points("0 0\n1 3\n2 -1\n3 4\n4 0\n5 2\n6 1\n7 5\n8 -2\n9 3\n").unwrap();
        let opts = SolveOptions { emit_trace: true, ..SolveOptions::default() };
        let sol = solve(&ps, &opts).unwrap();
        let doc = PathDocument::from_solution(&sol, true);
        let json = doc.to_json();
        assert!(json.contains("\"x\": \"0/1\""));
        let back = PathDocument::from_json(&json).unwrap();
        assert_eq!(back, doc);
        assert_eq!(back.path(), sol.path);
        // trace points are reported in input coordinates
        let first = &back.trace.unwrap()[0];
        assert!(first.consumed.iter().all(|p| ps.points().contains(p)));
    }

    #[test]
    fn path_document_checks_segment_count() {
        let bad = r#"{"vertices":[{"x":"0/1","y":"0/1"},{"x":"1/1","y":"0/1"}],"segments":3,"warnings":[]}"#;
        assert!(matches!(PathDocument::from_json(bad), Err(Error::PathFormat(_))));
        assert!(matches!(PathDocument::from_json("{"), Err(Error::PathFormat(_))));
    }
}
