use serde::{Deserialize, Serialize};

use crate::geom::{Point, Segment};

/// A polygonal path given by its vertices. Consecutive repeated vertices are
/// collapsed on construction; collinear consecutive segments are kept.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CoveringPath {
    vertices: Vec<Point>,
}

impl CoveringPath {
    pub fn new(vertices: Vec<Point>) -> Self {
        let mut out: Vec<Point> = Vec::with_capacity(vertices.len());
        for v in vertices {
            if out.last() != Some(&v) {
                out.push(v);
            }
        }
        CoveringPath { vertices: out }
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Point> {
        self.vertices
    }

    pub fn segment_count(&self) -> usize {
        self.vertices.len().saturating_sub(1)
    }

    pub fn segments(&self) -> impl Iterator<Item = Segment> + '_ {
        self.vertices.windows(2).map(|w| Segment::new(w[0].clone(), w[1].clone()))
    }

    /// Appends `more`, skipping a leading vertex equal to the current end.
    pub fn extend<I: IntoIterator<Item = Point>>(&mut self, more: I) {
        for v in more {
            if self.vertices.last() != Some(&v) {
                self.vertices.push(v);
            }
        }
    }

    pub fn last(&self) -> Option<&Point> {
        self.vertices.last()
    }
}

/// `ceil(6n / 7)`.
pub fn segment_bound(n: usize) -> usize {
    (6 * n).div_ceil(7)
}

/// `floor(6m / 7)`.
pub fn prefix_bound(m: usize) -> usize {
    6 * m / 7
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn collapses_repeats() {
        let p = |x, y| Point::from_ints(x, y);
        let path = CoveringPath::new(vec![p(0, 0), p(0, 0), p(1, 0), p(1, 0), p(2, 0)]);
        assert_eq!(path.segment_count(), 2);
        assert_eq!(CoveringPath::new(vec![p(3, 3)]).segment_count(), 0);
        assert_eq!(CoveringPath::new(vec![]).segment_count(), 0);
    }

    #[test]
    fn bounds() {
        assert_eq!(segment_bound(2), 2);
        assert_eq!(segment_bound(9), 8);
        assert_eq!(segment_bound(14), 12);
        assert_eq!(segment_bound(7), 6);
        assert_eq!(prefix_bound(7), 6);
        assert_eq!(prefix_bound(13), 11);
        // closing computation: floor((6n + n') / 7) <= ceil(6n / 7) for n' <= 6
        for n in 1..500 {
            for tail in 0..=6usize.min(n - 1) {
                assert!(prefix_bound(n - tail) + tail <= segment_bound(n), "{n} {tail}");
            }
        }
    }
}
