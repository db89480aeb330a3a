//! Exact planar primitives and predicates.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use serde::{Deserialize, Serialize};


use crate::scalar::{mul_i128, Scalar};

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Point {
    pub x: Scalar,
    pub y: Scalar,
}

impl Point {
    pub fn new(x: Scalar, y: Scalar) -> Self {
        Point { x, y }
    }

    pub fn from_ints(x: i64, y: i64) -> Self {
        Point::new(Scalar::from_int(x), Scalar::from_int(y))
    }

    pub fn sub(&self, other: &Point) -> Point {
        Point::new(&self.x - &other.x, &self.y - &other.y)
    }

    pub fn add(&self, other: &Point) -> Point {
        Point::new(&self.x + &other.x, &self.y + &other.y)
    }

    pub fn scale(&self, k: &Scalar) -> Point {
        Point::new(&self.x * k, &self.y * k)
    }
}

impl Ord for Point {
    /// Lexicographic: by x, then y.
    fn cmp(&self, other: &Self) -> Ordering {
        self.x.cmp(&other.x).then_with(|| self.y.cmp(&other.y))
    }
}

impl PartialOrd for Point {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({:?}, {:?})", self.x, self.y)
    }
}

/// Closed segment between two points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub a: Point,
    pub b: Point,
}

impl Segment {
    pub fn new(a: Point, b: Point) -> Self {
        Segment { a, b }
    }
}

/// Ray from `origin` through `through`, closed at the origin.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ray {
    pub origin: Point,
    pub through: Point,
}

impl Ray {
    pub fn new(origin: Point, through: Point) -> Self {
        debug_assert!(origin != through, "degenerate ray");
        Ray { origin, through }
    }
}

/// Line through two distinct points.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Line {
    pub p: Point,
    pub q: Point,
}

impl Line {
    pub fn new(p: Point, q: Point) -> Self {
        debug_assert!(p != q, "degenerate line");
        Line { p, q }
    }

    /// The vertical line `x = x(p)`.
    pub fn vertical_through(p: &Point) -> Self {
        Line::new(p.clone(), Point::new(p.x.clone(), &p.y + &Scalar::one()))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Orientation {
    Clockwise,
    CounterClockwise,
    Collinear,
}

impl Orientation {
    pub fn reversed(self) -> Orientation {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::CounterClockwise => Orientation::Clockwise,
            Orientation::Collinear => Orientation::Collinear,
        }
    }
}

fn cross(o: &Point, a: &Point, b: &Point) -> Ordering {
    // sign((a - o) x (b - o)) as a comparison of the two products
    cross_small(o, a, b).unwrap_or_else(|| cross_big(o, a, b))
}

/// Unreduced `an/ad - on/od`.
fn diff_small((an, ad): (i128, i128), (on, od): (i128, i128)) -> Option<(i128, i128)> {
    if ad == od {
        return Some((an.checked_sub(on)?, ad));
    }
    Some((mul_i128(an, od)?.checked_sub(mul_i128(on, ad)?)?, mul_i128(ad, od)?))
}

/// Machine-word evaluation without normalization; `None` on overflow.
fn cross_small(o: &Point, a: &Point, b: &Point) -> Option<Ordering> {
    let (ox, oy) = (o.x.as_small()?, o.y.as_small()?);
    let (ax, ay) = (a.x.as_small()?, a.y.as_small()?);
    let (bx, by) = (b.x.as_small()?, b.y.as_small()?);
    if ox.1 == 1 && oy.1 == 1 && ax.1 == 1 && ay.1 == 1 && bx.1 == 1 && by.1 == 1 {
        // the common case of input points in working coordinates
        let l = mul_i128(ax.0.checked_sub(ox.0)?, by.0.checked_sub(oy.0)?)?;
        let r = mul_i128(ay.0.checked_sub(oy.0)?, bx.0.checked_sub(ox.0)?)?;
        return Some(l.cmp(&r));
    }
    let (n1, d1) = diff_small(ax, ox)?;
    let (n2, d2) = diff_small(by, oy)?;
    let (n3, d3) = diff_small(ay, oy)?;
    let (n4, d4) = diff_small(bx, ox)?;
    let (ln, ld) = (mul_i128(n1, n2)?, mul_i128(d1, d2)?);
    let (rn, rd) = (mul_i128(n3, n4)?, mul_i128(d3, d4)?);
    if ld == rd {
        return Some(ln.cmp(&rn));
    }
    Some(mul_i128(ln, rd)?.cmp(&mul_i128(rn, ld)?))
}

fn cross_big(o: &Point, a: &Point, b: &Point) -> Ordering {
    let parts = |s: &Scalar| (s.numer(), s.denom());
    let diff = |(an, ad): (BigInt, BigInt), (on, od): (BigInt, BigInt)| (an * &od - on * &ad, ad * od);
    let (n1, d1) = diff(parts(&a.x), parts(&o.x));
    let (n2, d2) = diff(parts(&b.y), parts(&o.y));
    let (n3, d3) = diff(parts(&a.y), parts(&o.y));
    let (n4, d4) = diff(parts(&b.x), parts(&o.x));
    // denominators are positive
    (n1 * n2 * d3 * d4).cmp(&(n3 * n4 * d1 * d2))
}

/// Sign of the determinant of `(q - p, r - p)`.
pub fn orientation(p: &Point, q: &Point, r: &Point) -> Orientation {
    match cross(p, q, r) {
        Ordering::Greater => Orientation::CounterClockwise,
        Ordering::Less => Orientation::Clockwise,
        Ordering::Equal => Orientation::Collinear,
    }
}

fn dot(o: &Point, a: &Point, b: &Point) -> Scalar {
    &(&(&a.x - &o.x) * &(&b.x - &o.x)) + &(&(&a.y - &o.y) * &(&b.y - &o.y))
}

fn det(a: &Point, b: &Point) -> Scalar {
    &(&a.x * &b.y) - &(&a.y * &b.x)
}

/// Unique intersection point of two lines, `None` when parallel or coincident.
pub fn line_line_intersection(m1: &Line, m2: &Line) -> Option<Point> {
    let d1 = m1.q.sub(&m1.p);
    let d2 = m2.q.sub(&m2.p);
    let denom = det(&d1, &d2);
    if denom.is_zero() {
        return None;
    }
    let t = &det(&m2.p.sub(&m1.p), &d2) / &denom;
    Some(m1.p.add(&d1.scale(&t)))
}

fn span<'a>(a: &'a Scalar, b: &'a Scalar) -> (&'a Scalar, &'a Scalar) {
    if a <= b {
        (a, b)
    } else {
        (b, a)
    }
}

fn boxes_overlap(s1: &Segment, s2: &Segment) -> bool {
    let ((x1l, x1h), (x2l, x2h)) = (span(&s1.a.x, &s1.b.x), span(&s2.a.x, &s2.b.x));
    if x1h < x2l || x2h < x1l {
        return false;
    }
    let ((y1l, y1h), (y2l, y2h)) = (span(&s1.a.y, &s1.b.y), span(&s2.a.y, &s2.b.y));
    !(y1h < y2l || y2h < y1l)
}

fn in_box(p: &Point, s: &Segment) -> bool {
    let (xl, xh) = if s.a.x <= s.b.x { (&s.a.x, &s.b.x) } else { (&s.b.x, &s.a.x) };
    let (yl, yh) = if s.a.y <= s.b.y { (&s.a.y, &s.b.y) } else { (&s.b.y, &s.a.y) };
    *xl <= p.x && p.x <= *xh && *yl <= p.y && p.y <= *yh
}

/// Whether `p` lies on the closed segment `s`.
pub fn point_on_segment(p: &Point, s: &Segment) -> bool {
    in_box(p, s) && orientation(&s.a, &s.b, p) == Orientation::Collinear
}

/// Intersection of a ray (closed at its origin) with a closed segment.
///
/// When the segment overlaps the ray's supporting line the point of overlap
/// closest to the origin is returned.
pub fn ray_segment_intersection(r: &Ray, s: &Segment) -> Option<Point> {
    let o = &r.origin;
    let oa = orientation(o, &r.through, &s.a);
    let ob = orientation(o, &r.through, &s.b);
    if oa == Orientation::Collinear && ob == Orientation::Collinear {
        // Parametrise along the ray direction; only the sign and order matter.
        let ta = dot(o, &r.through, &s.a);
        let tb = dot(o, &r.through, &s.b);
        let (near, tn, tf) = if ta <= tb { (&s.a, &ta, &tb) } else { (&s.b, &tb, &ta) };
        if tf.signum() < 0 {
            return None;
        }
        if tn.signum() < 0 {
            return Some(o.clone());
        }
        return Some(near.clone());
    }
    if oa == ob {
        // both endpoints strictly on the same side
        return None;
    }
    let hit = line_line_intersection(
        &Line::new(o.clone(), r.through.clone()),
        &Line::new(s.a.clone(), s.b.clone()),
    )?;
    if dot(o, &r.through, &hit).signum() < 0 {
        return None;
    }
    Some(hit)
}

/// Intersection of two rays, each closed at its origin. Collinear rays
/// yield `None`.
pub fn ray_ray_intersection(r1: &Ray, r2: &Ray) -> Option<Point> {
    let hit = line_line_intersection(
        &Line::new(r1.origin.clone(), r1.through.clone()),
        &Line::new(r2.origin.clone(), r2.through.clone()),
    )?;
    if dot(&r1.origin, &r1.through, &hit).signum() < 0 || dot(&r2.origin, &r2.through, &hit).signum() < 0 {
        return None;
    }
    Some(hit)
}

/// Whether two closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    if !boxes_overlap(s1, s2) {
        return false;
    }
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);
    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == Orientation::Collinear && in_box(&s2.a, s1))
        || (o2 == Orientation::Collinear && in_box(&s2.b, s1))
        || (o3 == Orientation::Collinear && in_box(&s1.a, s2))
        || (o4 == Orientation::Collinear && in_box(&s1.b, s2))
}

/// Proper crossing: the relative interiors meet in a single point, or the
/// segments overlap collinearly along a piece of positive length.
pub fn segments_properly_cross(s1: &Segment, s2: &Segment) -> bool {
    use Orientation::*;
    let o1 = orientation(&s1.a, &s1.b, &s2.a);
    let o2 = orientation(&s1.a, &s1.b, &s2.b);
    let o3 = orientation(&s2.a, &s2.b, &s1.a);
    let o4 = orientation(&s2.a, &s2.b, &s1.b);
    if [o1, o2, o3, o4].iter().all(|o| *o == Collinear) {
        return collinear_overlap_positive(s1, s2);
    }
    o1 != Collinear && o2 != Collinear && o1 != o2 && o3 != Collinear && o4 != Collinear && o3 != o4
}

fn collinear_overlap_positive(s1: &Segment, s2: &Segment) -> bool {
    // Points of a line are totally ordered lexicographically.
    let (a1, b1) = if s1.a <= s1.b { (&s1.a, &s1.b) } else { (&s1.b, &s1.a) };
    let (a2, b2) = if s2.a <= s2.b { (&s2.a, &s2.b) } else { (&s2.b, &s2.a) };
    let lo = if a1 >= a2 { a1 } else { a2 };
    let hi = if b1 <= b2 { b1 } else { b2 };
    lo < hi
}

/// Convex hull vertices in counterclockwise order, starting from the
/// lexicographically smallest point. Points in the relative interior of a
/// hull edge are not vertices.
pub fn convex_hull_small(pts: &[Point]) -> Vec<Point> {
    let mut sorted: Vec<&Point> = pts.iter().collect();
    sorted.sort();
    sorted.dedup();
    if sorted.len() <= 1 {
        return sorted.into_iter().cloned().collect();
    }
    let mut lower: Vec<&Point> = Vec::new();
    for p in &sorted {
        while lower.len() >= 2
            && orientation(lower[lower.len() - 2], lower[lower.len() - 1], p)
                != Orientation::CounterClockwise
        {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<&Point> = Vec::new();
    for p in sorted.iter().rev() {
        while upper.len() >= 2
            && orientation(upper[upper.len() - 2], upper[upper.len() - 1], p)
                != Orientation::CounterClockwise
        {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower.into_iter().cloned().collect()
}
