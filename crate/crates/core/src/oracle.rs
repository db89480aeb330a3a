//! Exact minimum-link covering paths for tiny point sets.
//!
//! Bends are drawn from the arrangement of lines through pairs of points,
//! which suffices for minimum paths when crossings are allowed. For plane
//! paths the same family is searched but the result is not claimed optimal.

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::Point;
use crate::preprocess::PointSet;
use crate::search::{Contact, Outcome, Problem, Search};

pub const MAX_POINTS: usize = 9;

const ORACLE_NODE_LIMIT: u64 = 200_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OracleMode {
    CrossingAllowed,
    Plane,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleResult {
    pub min_segments: usize,
    pub witness: Vec<Point>,
    pub mode: OracleMode,
    /// Whether the searched family is known to contain an optimal path and
    /// every smaller budget was refuted.
    pub complete: bool,
    /// Budgets shown infeasible, in increasing order.
    pub refuted: Vec<usize>,
}

pub fn min_link_path(ps: &PointSet, mode: OracleMode) -> Result<OracleResult, Error> {
    let n = ps.len();
    if n == 0 {
        return Err(Error::EmptyInput);
    }
    if n > MAX_POINTS {
        return Err(Error::TooLarge(n));
    }
    let mut targets: Vec<Point> = ps.points().to_vec();
    targets.sort();
    if n == 1 {
        return Ok(OracleResult { min_segments: 0, witness: targets, mode, complete: true, refuted: Vec::new() });
    }

    let crossing = run(&targets, Contact::Allowed, None)?;
    if mode == OracleMode::CrossingAllowed {
        return Ok(OracleResult { mode, ..crossing });
    }
    // A plane path is in particular a path, so its minimum starts here.
    let plane = run(&targets, Contact::Forbidden, Some(crossing.min_segments))?;
    Ok(OracleResult { mode, complete: false, ..plane })
}

fn run(targets: &[Point], contact: Contact, from: Option<usize>) -> Result<OracleResult, Error> {
    let n = targets.len();
    let problem = Problem { targets, start: None, end: None, contact };
    let mut search = Search::new(&problem).with_node_limit(ORACLE_NODE_LIMIT);
    let lower = n.div_ceil(search.max_line()).max(1);
    let mut complete = true;
    let mut refuted = Vec::new();
    // the lexicographic chain is always a plane path with n - 1 segments
    for k in from.unwrap_or(lower).max(lower)..n {
        match search.find(k) {
            Outcome::Found(witness) => {
                return Ok(OracleResult {
                    min_segments: witness.len() - 1,
                    witness,
                    mode: OracleMode::CrossingAllowed,
                    complete,
                    refuted,
                })
            }
            Outcome::Exhausted => refuted.push(k),
            Outcome::Aborted => complete = false,
        }
    }
    Ok(OracleResult {
        min_segments: n - 1,
        witness: targets.to_vec(),
        mode: OracleMode::CrossingAllowed,
        complete,
        refuted,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ps(v: &[(i64, i64)]) -> PointSet {
        PointSet::from_distinct(v.iter().map(|&(x, y)| Point::from_ints(x, y)).collect())
    }

    #[test]
    fn two_points() {
        let r = min_link_path(&ps(&[(0, 0), (3, 1)]), OracleMode::CrossingAllowed).unwrap();
        assert_eq!(r.min_segments, 1);
        let r = min_link_path(&ps(&[(0, 0), (3, 1)]), OracleMode::Plane).unwrap();
        assert_eq!(r.min_segments, 1);
    }

    #[test]
    fn single_point() {
        let r = min_link_path(&ps(&[(2, 2)]), OracleMode::Plane).unwrap();
        assert_eq!(r.min_segments, 0);
        assert_eq!(r.witness.len(), 1);
    }

    #[test]
    fn too_large() {
        let v: Vec<(i64, i64)> = (0..10).map(|i| (i, i * i)).collect();
        assert_eq!(min_link_path(&ps(&v), OracleMode::CrossingAllowed), Err(Error::TooLarge(10)));
    }

    #[test]
    fn convex_pentagon() {
        let r = min_link_path(&ps(&[(0, 0), (4, 0), (5, 3), (2, 5), (-1, 3)]), OracleMode::CrossingAllowed).unwrap();
        assert_eq!(r.min_segments, 3);
        assert!(r.complete);
    }
}
