//! Depth-first search for few-segment covering paths whose bends lie on the
//! arrangement of lines through pairs of input points.
//!
//! Shared by the window solver (fixed start, fixed end, open slab, no
//! contact between non-adjacent segments) and the oracle (free ends,
//! crossings optionally allowed).

use std::collections::{HashMap, HashSet};

use crate::geom::{
    line_line_intersection, orientation, point_on_segment, segments_intersect, Line, Orientation, Point,
    Segment,
};
use crate::scalar::Scalar;

/// Default cap on visited search nodes per call.
pub(crate) const NODE_LIMIT: u64 = 2_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Contact {
    /// Crossings and touchings are allowed.
    Allowed,
    /// Non-adjacent segments are disjoint; adjacent ones share only their
    /// common vertex.
    Forbidden,
}

pub(crate) struct Problem<'a> {
    pub targets: &'a [Point],
    /// Fixed first vertex. It takes part in the line arrangement but need
    /// not be covered.
    pub start: Option<&'a Point>,
    /// Index of the target that must be the last vertex and is touched by
    /// no other segment. With a start, intermediate vertices are also
    /// confined to the open slab between the start and this target.
    pub end: Option<usize>,
    pub contact: Contact,
}

pub(crate) enum Outcome {
    Found(Vec<Point>),
    /// The candidate family holds no path within the budget.
    Exhausted,
    /// The node limit was hit before the search finished.
    Aborted,
}

pub(crate) struct Search {
    cands: Vec<Point>,
    target_cand: Vec<usize>,
    start_cand: Option<usize>,
    end_cand: Option<usize>,
    end_bit: u32,
    full: u32,
    max_line: usize,
    contact: Contact,
    /// Per candidate: coverage mask of the segment to every other candidate.
    moves: Vec<Option<Vec<u32>>>,
    targets: Vec<Point>,
    failed: HashSet<(u32, usize, usize)>,
    nodes: u64,
    node_limit: u64,
}

/// Canonical coefficients `(a, b, c)` of `a x + b y = c`, scaled so the first
/// nonzero of `a`, `b` is one.
fn line_key(p: &Point, q: &Point) -> (Scalar, Scalar, Scalar) {
    let a = &q.y - &p.y;
    let b = &p.x - &q.x;
    let c = &(&a * &p.x) + &(&b * &p.y);
    let d = if a.is_zero() { b.clone() } else { a.clone() };
    (&a / &d, &b / &d, &c / &d)
}

impl Search {
    pub fn new(p: &Problem<'_>) -> Search {
        assert!(p.targets.len() <= 16, "search supports at most 16 targets");
        let mut base: Vec<&Point> = p.targets.iter().collect();
        if let Some(s) = p.start {
            base.push(s);
        }

        let mut lines: Vec<Line> = Vec::new();
        let mut on_line: Vec<usize> = Vec::new();
        let mut seen: HashMap<(Scalar, Scalar, Scalar), usize> = HashMap::new();
        for i in 0..base.len() {
            for j in i + 1..base.len() {
                let key = line_key(base[i], base[j]);
                if let std::collections::hash_map::Entry::Vacant(e) = seen.entry(key) {
                    e.insert(lines.len());
                    let line = Line::new(base[i].clone(), base[j].clone());
                    let count = p
                        .targets
                        .iter()
                        .filter(|t| orientation(&line.p, &line.q, t) == Orientation::Collinear)
                        .count();
                    lines.push(line);
                    on_line.push(count);
                }
            }
        }
        let max_line = on_line.iter().copied().max().unwrap_or(0).max(p.targets.len().min(1));

        let mut cands: Vec<Point> = base.iter().map(|q| (*q).clone()).collect();
        for i in 0..lines.len() {
            for j in i + 1..lines.len() {
                if let Some(x) = line_line_intersection(&lines[i], &lines[j]) {
                    cands.push(x);
                }
            }
        }
        if let (Some(s), Some(e)) = (p.start, p.end) {
            let right = &p.targets[e];
            cands.retain(|c| c == s || c == right || (s.x < c.x && c.x < right.x));
        }
        cands.sort();
        cands.dedup();

        let index = |q: &Point| cands.binary_search(q).expect("base point is a candidate");
        let target_cand: Vec<usize> = p.targets.iter().map(index).collect();
        let start_cand = p.start.map(index);
        let end_cand = p.end.map(|e| target_cand[e]);
        let full = if p.targets.is_empty() { 0 } else { u32::MAX >> (32 - p.targets.len()) };
        let end_bit = p.end.map_or(0, |e| 1 << e);
        let n = cands.len();
        Search {
            cands,
            target_cand,
            start_cand,
            end_cand,
            end_bit,
            full,
            max_line,
            contact: p.contact,
            moves: vec![None; n],
            targets: p.targets.to_vec(),
            failed: HashSet::new(),
            nodes: 0,
            node_limit: NODE_LIMIT,
        }
    }

    pub fn with_node_limit(mut self, limit: u64) -> Search {
        self.node_limit = limit;
        self
    }

    pub fn max_line(&self) -> usize {
        self.max_line
    }

    /// Looks for a path with at most `budget` segments.
    pub fn find(&mut self, budget: usize) -> Outcome {
        self.failed.clear();
        self.nodes = 0;
        if self.full == 0 {
            return match self.start_cand {
                Some(s) => Outcome::Found(vec![self.cands[s].clone()]),
                None => Outcome::Found(Vec::new()),
            };
        }
        let starts: Vec<(usize, u32)> = match self.start_cand {
            Some(s) => vec![(s, self.cover_of_point(s))],
            None => self
                .target_cand
                .iter()
                .enumerate()
                .filter(|&(_, &c)| self.end_cand != Some(c))
                .map(|(_, &c)| (c, self.cover_of_point(c)))
                .collect(),
        };
        for (s, covered) in starts {
            let mut path = vec![s];
            match self.dfs(&mut path, covered, budget) {
                Some(true) => return Outcome::Found(path.iter().map(|&i| self.cands[i].clone()).collect()),
                Some(false) => {}
                None => return Outcome::Aborted,
            }
        }
        Outcome::Exhausted
    }

    fn cover_of_point(&self, c: usize) -> u32 {
        let mut m = 0;
        for (i, &t) in self.target_cand.iter().enumerate() {
            if t == c {
                m |= 1 << i;
            }
        }
        m
    }

    fn moves_from(&mut self, e: usize) -> &[u32] {
        if self.moves[e].is_none() {
            let from = &self.cands[e];
            let masks = self
                .cands
                .iter()
                .map(|to| {
                    let seg = Segment::new(from.clone(), to.clone());
                    let mut m = 0u32;
                    for (i, t) in self.targets.iter().enumerate() {
                        if point_on_segment(t, &seg) {
                            m |= 1 << i;
                        }
                    }
                    m
                })
                .collect();
            self.moves[e] = Some(masks);
        }
        self.moves[e].as_deref().expect("just filled")
    }

    /// `Some(true)` on success (path holds the witness), `Some(false)` when
    /// this subtree is exhausted, `None` when the node limit is reached.
    fn dfs(&mut self, path: &mut Vec<usize>, covered: u32, k: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.node_limit {
            return None;
        }
        let e = *path.last().expect("nonempty path");
        if covered == self.full {
            return Some(self.end_cand.is_none_or(|r| r == e));
        }
        if k == 0 {
            return Some(false);
        }
        let uncovered = (self.full & !covered).count_ones() as usize;
        if uncovered > k * self.max_line {
            return Some(false);
        }
        let memo = self.contact == Contact::Allowed;
        if memo && self.failed.contains(&(covered, e, k)) {
            return Some(false);
        }
        let slack = uncovered <= (k - 1) * self.max_line;
        let end_bit = self.end_bit;
        let full = self.full;
        let end_cand = self.end_cand;
        let masks = self.moves_from(e).to_vec();
        let mut order: Vec<(u32, usize)> = Vec::new();
        for (v, &cov) in masks.iter().enumerate() {
            if v == e {
                continue;
            }
            let gain = cov & !covered;
            let done = covered | cov;
            if cov & end_bit != 0 && (Some(v) != end_cand || done != full) {
                continue;
            }
            if k == 1 && done != full {
                continue;
            }
            if gain == 0 && !slack {
                continue;
            }
            order.push((gain.count_ones(), v));
        }
        order.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, v) in order {
            if self.contact == Contact::Forbidden && !self.plane_ok(path, v) {
                continue;
            }
            path.push(v);
            let cov = masks[v];
            match self.dfs(path, covered | cov, k - 1) {
                Some(true) => return Some(true),
                Some(false) => {}
                None => return None,
            }
            path.pop();
        }
        if memo {
            self.failed.insert((covered, e, k));
        }
        Some(false)
    }

    fn plane_ok(&self, path: &[usize], v: usize) -> bool {
        let n = path.len();
        let e = &self.cands[path[n - 1]];
        let to = &self.cands[v];
        if n >= 2 {
            let prev = &self.cands[path[n - 2]];
            // fold-back onto the previous segment
            if orientation(prev, e, to) == Orientation::Collinear {
                let back = &(&(&e.x - &prev.x) * &(&to.x - &e.x)) + &(&(&e.y - &prev.y) * &(&to.y - &e.y));
                if back.signum() < 0 {
                    return false;
                }
            }
        }
        if n >= 3 {
            let seg = Segment::new(e.clone(), to.clone());
            for w in path[..n - 1].windows(2) {
                let old = Segment::new(self.cands[w[0]].clone(), self.cands[w[1]].clone());
                if segments_intersect(&seg, &old) {
                    return false;
                }
            }
        }
        true
    }
}
