//! Exact bounded search for a window subpath: start at the anchor, cover a
//! handful of points, end at the rightmost one, stay inside the slab and
//! never touch itself.

use crate::error::Error;
use crate::geom::{orientation, Orientation, Point};
use crate::scalar::Scalar;
use crate::search::{Contact, Outcome, Problem, Search};

pub const MAX_BUDGET: usize = 8;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowProblem {
    pub anchor: Point,
    /// Sorted by increasing x, all strictly right of the anchor.
    pub targets: Vec<Point>,
    pub budget: usize,
}

impl WindowProblem {
    pub fn new(anchor: Point, targets: Vec<Point>, budget: usize) -> Self {
        WindowProblem { anchor, targets, budget }
    }

    /// Closed x-interval from the anchor to the rightmost target.
    pub fn slab(&self) -> (Scalar, Scalar) {
        let right = self.targets.last().map_or(&self.anchor, |p| p);
        (self.anchor.x.clone(), right.x.clone())
    }
}

/// Vertex list from the anchor to the rightmost target, or `None` when no
/// path with bends on the pair-line arrangement fits the budget.
///
/// Bends other than the two endpoints are kept strictly inside the slab, so
/// the result meets neighbouring windows only at its endpoints.
pub fn solve_window(p: &WindowProblem) -> Result<Option<Vec<Point>>, Error> {
    if p.budget > MAX_BUDGET {
        return Err(Error::BudgetTooLarge(p.budget));
    }
    if p.targets.is_empty() {
        return Ok(Some(vec![p.anchor.clone()]));
    }
    debug_assert!(p.targets.windows(2).all(|w| w[0].x < w[1].x));
    debug_assert!(p.anchor.x < p.targets[0].x);
    let chain = merged_chain(&p.anchor, &p.targets);
    if chain.len() - 1 <= p.budget {
        return Ok(Some(chain));
    }
    let problem = Problem {
        targets: &p.targets,
        start: Some(&p.anchor),
        end: Some(p.targets.len() - 1),
        contact: Contact::Forbidden,
    };
    let mut search = Search::new(&problem);
    match search.find(p.budget) {
        Outcome::Found(path) => Ok(Some(path)),
        Outcome::Exhausted | Outcome::Aborted => Ok(None),
    }
}

/// The x-monotone chain through the anchor and the targets with every run
/// of collinear consecutive points drawn as one segment. Monotone chains are
/// plane, so this settles the common case of a few points stacked on a line.
fn merged_chain(anchor: &Point, targets: &[Point]) -> Vec<Point> {
    let mut pts = Vec::with_capacity(targets.len() + 1);
    pts.push(anchor);
    pts.extend(targets);
    let mut chain = vec![anchor.clone()];
    let mut i = 0;
    while i + 1 < pts.len() {
        let mut j = i + 1;
        while j + 1 < pts.len() && orientation(pts[i], pts[i + 1], pts[j + 1]) == Orientation::Collinear {
            j += 1;
        }
        chain.push(pts[j].clone());
        i = j;
    }
    chain
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::{point_on_segment, segments_intersect, Segment};
    use proptest::prelude::*;

    fn p(x: i64, y: i64) -> Point {
        Point::from_ints(x, y)
    }

    fn assert_sound(prob: &WindowProblem, path: &[Point]) {
        assert_eq!(path.first(), Some(&prob.anchor));
        assert_eq!(path.last(), prob.targets.last());
        assert!(path.len() - 1 <= prob.budget);
        let segs: Vec<Segment> = path.windows(2).map(|w| Segment::new(w[0].clone(), w[1].clone())).collect();
        for t in &prob.targets {
            assert!(segs.iter().any(|s| point_on_segment(t, s)), "{t:?} uncovered");
        }
        let (lo, hi) = prob.slab();
        for v in path {
            assert!(lo <= v.x && v.x <= hi);
        }
        for i in 0..segs.len() {
            for j in i + 2..segs.len() {
                assert!(!segments_intersect(&segs[i], &segs[j]), "segments {i} and {j} meet");
            }
        }
    }

    #[test]
    fn collinear_triple() {
        let prob = WindowProblem::new(p(-1, 0), vec![p(0, 0), p(1, 0), p(2, 0)], 2);
        let path = solve_window(&prob).unwrap().unwrap();
        assert_sound(&prob, &path);
        assert_eq!(path, vec![p(-1, 0), p(2, 0)]);
    }

    #[test]
    fn zero_budget() {
        let prob = WindowProblem::new(p(-1, 0), vec![p(0, 1)], 0);
        assert_eq!(solve_window(&prob).unwrap(), None);
    }

    #[test]
    fn budget_cap() {
        let prob = WindowProblem::new(p(-1, 0), vec![p(0, 1)], 9);
        assert_eq!(solve_window(&prob), Err(Error::BudgetTooLarge(9)));
    }

    #[test]
    fn six_general_points_budget_five() {
        let prob = WindowProblem::new(
            p(-1, 0),
            vec![p(0, 0), p(1, -2), p(2, -3), p(3, -2), p(4, 1), p(5, 0)],
            5,
        );
        let path = solve_window(&prob).unwrap().expect("feasible");
        assert_sound(&prob, &path);
    }

    #[test]
    fn grid_window() {
        // a sheared 3x3 block, typical of lattice inputs
        let pts: Vec<Point> = (0..6)
            .map(|i| Point::new(Scalar::from_int(3 * (i / 3) + i % 3), Scalar::from_int(i % 3) * Scalar::ratio(1, 1)))
            .collect();
        let prob = WindowProblem::new(p(-2, 1), pts, 5);
        let path = solve_window(&prob).unwrap().expect("feasible");
        assert_sound(&prob, &path);
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(24))]
        #[test]
        fn found_paths_are_sound(ys in prop::collection::vec(-4i64..5, 6), ay in -4i64..5) {
            let targets: Vec<Point> = ys.iter().enumerate().map(|(i, &y)| p(i as i64, y)).collect();
            let prob = WindowProblem::new(p(-1, ay), targets, 5);
            let first = solve_window(&prob).unwrap();
            if let Some(path) = &first {
                assert_sound(&prob, path);
            }
            prop_assert_eq!(first, solve_window(&prob).unwrap());
        }
    }
}
