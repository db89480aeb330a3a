//! One intermediate scan step: classify the five points between the anchor's
//! successor and the second-rightmost by the size of their convex hull, then
//! build the five- or six-segment subpath for the matching case.
//!
//! Symmetric subcases are handled by reflecting the window (left-right about
//! a vertical axis, or top-bottom about the x-axis), solving the canonical
//! configuration, and mapping the result back.

use std::cell::OnceCell;

use serde::{Deserialize, Serialize};

use crate::geom::{
    convex_hull_small, line_line_intersection, orientation, point_on_segment, ray_ray_intersection,
    ray_segment_intersection, Line, Orientation, Point, Ray, Segment,
};

use crate::trace::{CaseId, ReflectionFlags};

/// Hull-size class of `S = {l, a, b, c, r}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum HullCase {
    /// Triangle hull.
    Case1,
    /// All five in convex position.
    Case2,
    /// Quadrilateral hull, the two middle hull vertices on opposite sides of `lr`.
    Case3a,
    /// Quadrilateral hull, both middle hull vertices on the same side of `lr`.
    Case3b,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Roles {
    pub l: Point,
    pub a: Point,
    pub b: Point,
    pub c: Point,
    pub r: Point,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Classification {
    pub case: HullCase,
    /// Roles in the caller's coordinates, after the top-bottom normalization
    /// recorded in `flags`.
    pub roles: Roles,
    pub flags: ReflectionFlags,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum WindowError {
    /// Three of the window points (anchor included) are collinear.
    Degenerate,
    /// A construction step did not produce the expected configuration.
    ConstructionFailed(&'static str),
}

/// A constructed window subpath in the caller's coordinates.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct WindowPath {
    pub case_id: CaseId,
    /// Vertices after the anchor; the last one is the rightmost consumed point.
    pub vertices: Vec<Point>,
    pub consumed: usize,
    pub aux: Vec<(&'static str, Point)>,
    pub roles: Vec<(&'static str, Point)>,
    pub flags: ReflectionFlags,
}

/// The anchor, the next six points, and optionally a seventh.
pub(crate) struct RawWindow<'a> {
    pub anchor: &'a Point,
    pub six: &'a [Point],
    pub next: Option<&'a Point>,
    hull: OnceCell<[bool; 3]>,
}

impl<'a> RawWindow<'a> {
    pub fn new(anchor: &'a Point, six: &'a [Point], next: Option<&'a Point>) -> Self {
        RawWindow { anchor, six, next, hull: OnceCell::new() }
    }

    /// Which of `six[1..4]` are hull vertices of `six[0..5]`. Reflections
    /// preserve this, so it is computed once per window.
    fn hull_mask(&self) -> [bool; 3] {
        *self.hull.get_or_init(|| {
            let hull = convex_hull_small(&self.six[..5]);
            [1, 2, 3].map(|i| hull.contains(&self.six[i]))
        })
    }
}

/// The window seen through a reflection, relabelled so that `lp` is leftmost.
#[derive(Clone)]
struct View {
    flags: ReflectionFlags,
    lp: Point,
    l: Point,
    mids: [Point; 3],
    r: Point,
    rp: Point,
    /// Only available when not left-right mirrored.
    r2: Option<Point>,
    /// Hull status of `mids`.
    hull: [bool; 3],
}

impl View {
    fn new(raw: &RawWindow<'_>, flags: ReflectionFlags) -> View {
        let mut seq: Vec<Point> =
            std::iter::once(raw.anchor).chain(raw.six.iter()).map(|p| flags.map(p)).collect();
        if flags.vertical_mirror {
            seq.reverse();
        }
        let mut it = seq.into_iter();
        let mut take = || it.next().expect("window has seven points");
        let lp = take();
        let l = take();
        let mids = [take(), take(), take()];
        let r = take();
        let rp = take();
        let r2 = if flags.vertical_mirror { None } else { raw.next.map(|p| flags.map(p)) };
        let mut hull = raw.hull_mask();
        if flags.vertical_mirror {
            hull.reverse();
        }
        View { flags, lp, l, mids, r, rp, r2, hull }
    }

    /// Indices of the middle points that are hull vertices of S, and the rest.
    fn hull_split(&self) -> (Vec<usize>, Vec<usize>) {
        let (mut on, mut off) = (Vec::new(), Vec::new());
        for i in 0..3 {
            if self.hull[i] {
                on.push(i);
            } else {
                off.push(i);
            }
        }
        (on, off)
    }

    fn below_lr(&self, p: &Point) -> bool {
        !above(p, &self.l, &self.r)
    }

    fn in_slab(&self, p: &Point) -> bool {
        self.l.x <= p.x && p.x <= self.r.x
    }

    /// Maps a view-space path starting at `lp` back to caller coordinates,
    /// dropping the anchor.
    fn unmap_path(&self, path: Vec<Point>) -> Vec<Point> {
        let mut out: Vec<Point> = path.iter().map(|p| self.flags.map(p)).collect();
        if self.flags.vertical_mirror {
            out.reverse();
        }
        out.remove(0);
        out
    }

    fn unmap_points(&self, pts: Vec<(&'static str, Point)>) -> Vec<(&'static str, Point)> {
        pts.into_iter().map(|(n, p)| (n, self.flags.map(&p))).collect()
    }

    fn role_list(&self, a: &Point, b: &Point, c: &Point) -> Vec<(&'static str, Point)> {
        let (lp, l, r, rp) = if self.flags.vertical_mirror {
            ("r'", "r", "l", "l'")
        } else {
            ("l'", "l", "r", "r'")
        };
        let mut roles = vec![
            (lp, self.lp.clone()),
            (l, self.l.clone()),
            ("a", a.clone()),
            ("b", b.clone()),
            ("c", c.clone()),
            (r, self.r.clone()),
            (rp, self.rp.clone()),
        ];
        if let Some(r2) = &self.r2 {
            roles.push(("r''", r2.clone()));
        }
        self.unmap_points(roles)
    }

    fn finish(
        &self,
        case_id: CaseId,
        path: Vec<Point>,
        aux: Vec<(&'static str, Point)>,
        roles: Vec<(&'static str, Point)>,
    ) -> WindowPath {
        let consumed = path.len();
        WindowPath {
            case_id,
            vertices: self.unmap_path(path),
            consumed,
            aux: self.unmap_points(aux),
            roles,
            flags: self.flags,
        }
    }
}

/// `p` strictly above the (non-vertical) line through `q` and `s`.
fn above(p: &Point, q: &Point, s: &Point) -> bool {
    let (left, right) = if q.x < s.x { (q, s) } else { (s, q) };
    orientation(left, right, p) == Orientation::CounterClockwise
}

fn meet(p1: &Point, q1: &Point, p2: &Point, q2: &Point) -> Option<Point> {
    line_line_intersection(&Line::new(p1.clone(), q1.clone()), &Line::new(p2.clone(), q2.clone()))
}

fn covers(p: &Point, a: &Point, b: &Point) -> bool {
    point_on_segment(p, &Segment::new(a.clone(), b.clone()))
}

fn require(cond: bool, what: &'static str) -> Result<(), WindowError> {
    if cond {
        Ok(())
    } else {
        Err(WindowError::ConstructionFailed(what))
    }
}

pub(super) fn has_collinear_triple(pts: &[&Point]) -> bool {
    for i in 0..pts.len() {
        for j in i + 1..pts.len() {
            for k in j + 1..pts.len() {
                if orientation(pts[i], pts[j], pts[k]) == Orientation::Collinear {
                    return true;
                }
            }
        }
    }
    false
}

fn sorted_by_x(mut v: Vec<Point>) -> Vec<Point> {
    v.sort_by(|p, q| p.x.cmp(&q.x));
    v
}

/// Hull-size classification of the five points `s` following `anchor`.
pub fn classify_window(anchor: &Point, s: &[Point; 5]) -> Result<Classification, WindowError> {
    let mut pts: Vec<&Point> = vec![anchor];
    pts.extend(s.iter());
    if has_collinear_triple(&pts) {
        return Err(WindowError::Degenerate);
    }
    // A dummy r' keeps the view machinery uniform; it is never consulted.
    let mut six: Vec<Point> = sorted_by_x(s.to_vec());
    let far = Point::new(&six[4].x + &crate::scalar::Scalar::one(), six[4].y.clone());
    six.push(far);
    let raw = RawWindow::new(anchor, &six, None);
    let v = View::new(&raw, ReflectionFlags::default());
    let (on_hull, inside) = v.hull_split();
    let (case, v, roles) = match on_hull.len() {
        1 => {
            let v = normalize_case1(&raw, v);
            let (on, off) = v.hull_split();
            let bc = sorted_by_x(off.iter().map(|&i| v.mids[i].clone()).collect());
            let a = v.mids[on[0]].clone();
            (HullCase::Case1, v.clone(), (a, bc[0].clone(), bc[1].clone()))
        }
        3 => {
            let v = normalize_case2(&raw, v);
            let roles = case2_roles(&v);
            (HullCase::Case2, v, roles)
        }
        2 => {
            let h: Vec<Point> = on_hull.iter().map(|&i| v.mids[i].clone()).collect();
            if v.below_lr(&h[0]) != v.below_lr(&h[1]) {
                let (a, b) = if v.below_lr(&h[0]) { (&h[0], &h[1]) } else { (&h[1], &h[0]) };
                let c = v.mids[inside[0]].clone();
                (HullCase::Case3a, v.clone(), (a.clone(), b.clone(), c))
            } else {
                let v = if v.below_lr(&h[0]) { v } else { View::new(&raw, v.flags.flip_y()) };
                let (on, off) = v.hull_split();
                let ab = sorted_by_x(on.iter().map(|&i| v.mids[i].clone()).collect());
                let c = v.mids[off[0]].clone();
                (HullCase::Case3b, v, (ab[0].clone(), ab[1].clone(), c))
            }
        }
        _ => return Err(WindowError::ConstructionFailed("hull of S has two vertices")),
    };
    let (a, b, c) = roles;
    let map = |p: &Point| v.flags.map(p);
    Ok(Classification {
        case,
        roles: Roles { l: map(&v.l), a: map(&a), b: map(&b), c: map(&c), r: map(&v.r) },
        flags: v.flags,
    })
}

fn normalize_case1(raw: &RawWindow<'_>, v: View) -> View {
    let (on, _) = v.hull_split();
    if v.below_lr(&v.mids[on[0]]) {
        v
    } else {
        View::new(raw, v.flags.flip_y())
    }
}

fn normalize_case2(raw: &RawWindow<'_>, v: View) -> View {
    let below = v.mids.iter().filter(|m| v.below_lr(m)).count();
    // all three below, or exactly two below
    if below >= 2 {
        v
    } else {
        View::new(raw, v.flags.flip_y())
    }
}

/// (a, b, c) for Case 2: same side -> left to right; split -> the pair by x, then the singleton.
fn case2_roles(v: &View) -> (Point, Point, Point) {
    let below: Vec<Point> = sorted_by_x(v.mids.iter().filter(|m| v.below_lr(m)).cloned().collect());
    if below.len() == 3 {
        return (below[0].clone(), below[1].clone(), below[2].clone());
    }
    let c = v.mids.iter().find(|m| !v.below_lr(m)).expect("one point above").clone();
    (below[0].clone(), below[1].clone(), c)
}

/// Builds the subpath for a general-position window.
pub(crate) fn construct(raw: &RawWindow<'_>) -> Result<WindowPath, WindowError> {
    let mut pts: Vec<&Point> = vec![raw.anchor];
    pts.extend(raw.six.iter());
    if has_collinear_triple(&pts) {
        return Err(WindowError::Degenerate);
    }
    build(raw)
}

/// The case construction without the general-position check.
pub(crate) fn build(raw: &RawWindow<'_>) -> Result<WindowPath, WindowError> {
    let v = View::new(raw, ReflectionFlags::default());
    let (on_hull, _) = v.hull_split();
    match on_hull.len() {
        1 => case1(raw, normalize_case1(raw, v)),
        3 => case2(raw, normalize_case2(raw, v)),
        2 => case3(raw, v),
        _ => Err(WindowError::ConstructionFailed("hull of S has two vertices")),
    }
}

// ---------------------------------------------------------------------------
// Case 1: triangle hull (l, a, r) with a below lr, b and c inside.

fn case1(raw: &RawWindow<'_>, v: View) -> Result<WindowPath, WindowError> {
    let (on, off) = v.hull_split();
    let a = v.mids[on[0]].clone();
    let bc = sorted_by_x(off.iter().map(|&i| v.mids[i].clone()).collect());
    let (b, c) = (&bc[0], &bc[1]);
    let sl = orientation(b, c, &v.l);
    let sr = orientation(b, c, &v.r);
    let sa = orientation(b, c, &a);
    if sl == sa {
        // l(b,c) meets lr and ar
        case1_quad(&v, CaseId::C1_1)
    } else if sr == sa {
        // meets lr and al: mirror of the previous subcase
        case1_quad(&View::new(raw, v.flags.flip_x()), CaseId::C1_2)
    } else if b.x < a.x {
        case1_wedge(&v)
    } else {
        case1_wedge(&View::new(raw, v.flags.flip_x()))
    }
}

/// l, b, c, a in convex position: (l', l, x, a, r, r') with x = l(a,c) ∩ l(l,b).
fn case1_quad(v: &View, case_id: CaseId) -> Result<WindowPath, WindowError> {
    let (on, off) = v.hull_split();
    let a = v.mids[on[0]].clone();
    let (p, q) = (v.mids[off[0]].clone(), v.mids[off[1]].clone());
    let crosses = |b: &Point, c: &Point| {
        crate::geom::segments_properly_cross(
            &Segment::new(v.l.clone(), c.clone()),
            &Segment::new(b.clone(), a.clone()),
        )
    };
    let (b, c) = if crosses(&p, &q) {
        (p, q)
    } else if crosses(&q, &p) {
        (q, p)
    } else {
        return Err(WindowError::ConstructionFailed("C1: l, b, c, a not in convex position"));
    };
    let x = meet(&a, &c, &v.l, &b).ok_or(WindowError::ConstructionFailed("C1: x undefined"))?;
    require(v.in_slab(&x), "C1: x outside slab")?;
    require(covers(&b, &v.l, &x) && covers(&c, &x, &a), "C1: x does not cover b, c")?;
    let path = vec![v.lp.clone(), v.l.clone(), x.clone(), a.clone(), v.r.clone(), v.rp.clone()];
    let roles = v.role_list(&a, &b, &c);
    Ok(v.finish(case_id, path, vec![("x", x)], roles))
}

/// l(b,c) meets al and ar, b left of c and left of a.
fn case1_wedge(v: &View) -> Result<WindowPath, WindowError> {
    let (on, off) = v.hull_split();
    let a = v.mids[on[0]].clone();
    let bc = sorted_by_x(off.iter().map(|&i| v.mids[i].clone()).collect());
    let (b, c) = (bc[0].clone(), bc[1].clone());
    require(b.x < a.x, "C1.3: ray ab misses L")?;
    let big_l = Line::vertical_through(&v.l);
    let y = line_line_intersection(&Line::new(a.clone(), b.clone()), &big_l)
        .ok_or(WindowError::ConstructionFailed("C1.3: y undefined"))?;
    let y2 = line_line_intersection(&Line::new(b.clone(), c.clone()), &big_l)
        .ok_or(WindowError::ConstructionFailed("C1.3: y' undefined"))?;
    require(y.y > v.l.y && y2.y < v.l.y, "C1.3: y, y' not separated by l")?;
    let ray = Ray::new(v.lp.clone(), v.l.clone());
    let roles = v.role_list(&a, &b, &c);
    let aux_base = vec![("y", y.clone()), ("y'", y2.clone())];
    if let Some(u) = ray_segment_intersection(&ray, &Segment::new(b.clone(), y.clone())) {
        require(covers(&v.l, &v.lp, &u) && covers(&b, &u, &a), "C1.3-by: u does not cover l, b")?;
        let path = vec![v.lp.clone(), u.clone(), a.clone(), c.clone(), v.r.clone(), v.rp.clone()];
        let mut aux = aux_base;
        aux.push(("u", u));
        return Ok(v.finish(CaseId::C1_3By, path, aux, roles));
    }
    if let Some(u) = ray_segment_intersection(&ray, &Segment::new(b.clone(), y2.clone())) {
        require(covers(&v.l, &v.lp, &u) && covers(&b, &u, &c), "C1.3-by': u does not cover l, b")?;
        let path = vec![v.lp.clone(), u.clone(), c.clone(), a.clone(), v.r.clone(), v.rp.clone()];
        let mut aux = aux_base;
        aux.push(("u", u));
        return Ok(v.finish(CaseId::C1_3ByPrime, path, aux, roles));
    }
    Err(WindowError::ConstructionFailed("C1.3: ray l'l misses by and by'"))
}

// ---------------------------------------------------------------------------
// Case 2: l, a, b, c, r in convex position.

fn case2(raw: &RawWindow<'_>, v: View) -> Result<WindowPath, WindowError> {
    let below = v.mids.iter().filter(|m| v.below_lr(m)).count();
    if below == 3 {
        return case2_same_side(&v);
    }
    let (_, _, c) = case2_roles(&v);
    if above(&v.lp, &v.l, &c) {
        case2_split_left(&v, CaseId::C2_2LPrime)
    } else if above(&v.rp, &v.r, &c) {
        case2_split_left(&View::new(raw, v.flags.flip_x()), CaseId::C2_2RPrime)
    } else {
        case2_split_v(&v)
    }
}

fn case2_same_side(v: &View) -> Result<WindowPath, WindowError> {
    let (a, b, c) = case2_roles(v);
    let x = meet(&v.l, &a, &b, &c).ok_or(WindowError::ConstructionFailed("C2.1: x undefined"))?;
    require(v.in_slab(&x), "C2.1: x outside slab")?;
    require(covers(&a, &v.l, &x) && covers(&b, &x, &c), "C2.1: x does not cover a, b")?;
    let path = vec![v.lp.clone(), v.l.clone(), x.clone(), c.clone(), v.r.clone(), v.rp.clone()];
    let roles = v.role_list(&a, &b, &c);
    Ok(v.finish(CaseId::C2_1, path, vec![("x", x)], roles))
}

fn case2_u(v: &View, a: &Point, b: &Point) -> Result<Point, WindowError> {
    let u = meet(&v.l, a, &v.r, b).ok_or(WindowError::ConstructionFailed("C2.2: u undefined"))?;
    require(v.in_slab(&u), "C2.2: u outside slab")?;
    require(covers(a, &v.l, &u) && covers(b, &u, &v.r), "C2.2: u does not cover a, b")?;
    Ok(u)
}

/// l' above l(l,c): (l', c, l, u, r, r').
fn case2_split_left(v: &View, case_id: CaseId) -> Result<WindowPath, WindowError> {
    let (a, b, c) = case2_roles(v);
    require(above(&v.lp, &v.l, &c), "C2.2: l' not above lc")?;
    let u = case2_u(v, &a, &b)?;
    let path = vec![v.lp.clone(), c.clone(), v.l.clone(), u.clone(), v.r.clone(), v.rp.clone()];
    let roles = v.role_list(&a, &b, &c);
    Ok(v.finish(case_id, path, vec![("u", u)], roles))
}

/// l' below l(l,c) and r' below l(r,c): (l', v, r, a, b, r').
fn case2_split_v(v: &View) -> Result<WindowPath, WindowError> {
    let (a, b, c) = case2_roles(v);
    let u = case2_u(v, &a, &b)?;
    let pv = meet(&v.lp, &v.l, &v.r, &c).ok_or(WindowError::ConstructionFailed("C2.2: v undefined"))?;
    require(v.in_slab(&pv), "C2.2: v outside slab")?;
    require(covers(&v.l, &v.lp, &pv) && covers(&c, &pv, &v.r), "C2.2: v does not cover l, c")?;
    let path = vec![v.lp.clone(), pv.clone(), v.r.clone(), a.clone(), b.clone(), v.rp.clone()];
    let roles = v.role_list(&a, &b, &c);
    Ok(v.finish(CaseId::C2_2V, path, vec![("u", u), ("v", pv)], roles))
}

// ---------------------------------------------------------------------------
// Case 3: quadrilateral hull l, a, b, r with c inside.

fn case3(raw: &RawWindow<'_>, v: View) -> Result<WindowPath, WindowError> {
    let (on, _) = v.hull_split();
    let h0 = v.mids[on[0]].clone();
    let h1 = v.mids[on[1]].clone();
    if v.below_lr(&h0) != v.below_lr(&h1) {
        return case3a(raw, v);
    }
    let v = if v.below_lr(&h0) { v } else { View::new(raw, v.flags.flip_y()) };
    case3b(raw, v)
}

/// (a below lr, b above lr, c inside).
fn case3a_roles(v: &View) -> (Point, Point, Point) {
    let (on, off) = v.hull_split();
    let h0 = v.mids[on[0]].clone();
    let h1 = v.mids[on[1]].clone();
    let c = v.mids[off[0]].clone();
    if v.below_lr(&h0) {
        (h0, h1, c)
    } else {
        (h1, h0, c)
    }
}

fn case3a(raw: &RawWindow<'_>, v: View) -> Result<WindowPath, WindowError> {
    let (a, b, c) = case3a_roles(&v);
    // c in triangle (a, b, l), else mirror left-right
    let v = if orientation(&a, &b, &c) == orientation(&a, &b, &v.l) {
        v
    } else {
        View::new(raw, v.flags.flip_x())
    };
    let (a, b, _) = case3a_roles(&v);
    // the right one of a, b goes below lr; ray ac then reaches L whenever either ray does
    let v = if a.x > b.x { v } else { View::new(raw, v.flags.flip_y()) };
    let (a, b, c) = case3a_roles(&v);
    require(c.x < a.x, "C3a: neither ray ac nor ray bc reaches L")?;
    let big_l = Line::vertical_through(&v.l);
    let y = line_line_intersection(&Line::new(a.clone(), c.clone()), &big_l)
        .ok_or(WindowError::ConstructionFailed("C3a: y undefined"))?;
    require(y.y > v.l.y, "C3a: y not above l")?;
    let roles = v.role_list(&a, &b, &c);
    if c.x < b.x {
        let y2 = line_line_intersection(&Line::new(b.clone(), c.clone()), &big_l)
            .ok_or(WindowError::ConstructionFailed("C3a: y' undefined"))?;
        require(y2.y < v.l.y, "C3a: y' not below l")?;
        let ray = Ray::new(v.lp.clone(), v.l.clone());
        let mut aux = vec![("y", y.clone()), ("y'", y2.clone())];
        if let Some(x) = ray_segment_intersection(&ray, &Segment::new(c.clone(), y.clone())) {
            require(covers(&v.l, &v.lp, &x) && covers(&c, &x, &a), "C3a.1-cy: x does not cover l, c")?;
            let path = vec![v.lp.clone(), x.clone(), a.clone(), b.clone(), v.r.clone(), v.rp.clone()];
            aux.push(("x", x));
            return Ok(v.finish(CaseId::C3a1Cy, path, aux, roles));
        }
        if let Some(x) = ray_segment_intersection(&ray, &Segment::new(c.clone(), y2.clone())) {
            require(covers(&v.l, &v.lp, &x) && covers(&c, &x, &b), "C3a.1-cy': x does not cover l, c")?;
            let path = vec![v.lp.clone(), x.clone(), b.clone(), a.clone(), v.r.clone(), v.rp.clone()];
            aux.push(("x", x));
            return Ok(v.finish(CaseId::C3a1CyPrime, path, aux, roles));
        }
        return Err(WindowError::ConstructionFailed("C3a.1: ray l'l misses cy and cy'"));
    }
    let u = meet(&b, &c, &v.r, &a).ok_or(WindowError::ConstructionFailed("C3a.2: u undefined"))?;
    require(v.in_slab(&u), "C3a.2: u outside slab")?;
    require(covers(&c, &b, &u) && covers(&a, &u, &v.r), "C3a.2: u does not cover c, a")?;
    let path = vec![v.lp.clone(), v.l.clone(), b.clone(), u.clone(), v.r.clone(), v.rp.clone()];
    Ok(v.finish(CaseId::C3a2, path, vec![("y", y), ("u", u)], roles))
}

/// (a, b below lr with a left of b, c inside).
fn case3b_roles(v: &View) -> (Point, Point, Point) {
    let (on, off) = v.hull_split();
    let ab = sorted_by_x(on.iter().map(|&i| v.mids[i].clone()).collect());
    (ab[0].clone(), ab[1].clone(), v.mids[off[0]].clone())
}

fn case3b_x(v: &View, a: &Point, b: &Point) -> Result<Point, WindowError> {
    let x = meet(&v.l, a, &v.r, b).ok_or(WindowError::ConstructionFailed("C3b: x undefined"))?;
    require(v.in_slab(&x), "C3b: x outside slab")?;
    require(covers(a, &v.l, &x) && covers(b, &x, &v.r), "C3b: x does not cover a, b")?;
    Ok(x)
}

/// l' above l(l,c): (l', c, l, x, r, r').
fn case3b_left(v: &View, case_id: CaseId) -> Result<WindowPath, WindowError> {
    let (a, b, c) = case3b_roles(v);
    require(above(&v.lp, &v.l, &c), "C3b: l' not above lc")?;
    let x = case3b_x(v, &a, &b)?;
    let path = vec![v.lp.clone(), c.clone(), v.l.clone(), x.clone(), v.r.clone(), v.rp.clone()];
    let roles = v.role_list(&a, &b, &c);
    Ok(v.finish(case_id, path, vec![("x", x)], roles))
}

fn case3b(raw: &RawWindow<'_>, v: View) -> Result<WindowPath, WindowError> {
    let (a, b, c) = case3b_roles(&v);
    if above(&v.lp, &v.l, &c) {
        return case3b_left(&v, CaseId::C3bLPrime);
    }
    if above(&v.rp, &v.r, &c) {
        return case3b_left(&View::new(raw, v.flags.flip_x()), CaseId::C3bRPrime);
    }
    let x = case3b_x(&v, &a, &b)?;
    let ray_bc = Ray::new(b.clone(), c.clone());
    let roles = v.role_list(&a, &b, &c);

    if ray_segment_intersection(&ray_bc, &Segment::new(a.clone(), v.l.clone())).is_some() {
        let u = meet(&v.l, &c, &v.r, &b).ok_or(WindowError::ConstructionFailed("C3b-al: u undefined"))?;
        require(v.in_slab(&u), "C3b-al: u outside slab")?;
        require(covers(&c, &v.l, &u) && covers(&b, &u, &v.r), "C3b-al: u does not cover c, b")?;
        let path = vec![v.lp.clone(), a.clone(), v.l.clone(), u.clone(), v.r.clone(), v.rp.clone()];
        return Ok(v.finish(CaseId::C3bAl, path, vec![("x", x), ("u", u)], roles));
    }

    let z_right = ray_ray_intersection(&ray_bc, &Ray::new(v.rp.clone(), v.r.clone()))
        .filter(|z| v.in_slab(z));
    if let Some(z) = z_right {
        require(covers(&c, &b, &z) && covers(&v.r, &z, &v.rp), "C3b-z: z does not cover c, r")?;
        let path = vec![v.lp.clone(), v.l.clone(), a.clone(), b.clone(), z.clone(), v.rp.clone()];
        return Ok(v.finish(CaseId::C3bZRight, path, vec![("x", x), ("z", z)], roles));
    }

    // A seventh point is needed from here on.
    let z = ray_ray_intersection(&ray_bc, &Ray::new(v.lp.clone(), v.l.clone())).filter(|z| v.in_slab(z));
    let r2 = v.r2.clone().ok_or(WindowError::ConstructionFailed("C3b: seventh point unavailable"))?;
    let mut aux = vec![("x", x)];
    if let Some(z) = &z {
        aux.push(("z", z.clone()));
    }
    if !above(&r2, &v.r, &v.rp) {
        let pv = meet(&b, &v.r, &r2, &v.rp).ok_or(WindowError::ConstructionFailed("C3b-d: v undefined"))?;
        require(v.r.x <= pv.x && pv.x <= v.rp.x, "C3b-d: v outside r..r'")?;
        require(covers(&v.r, &b, &pv) && covers(&v.rp, &pv, &r2), "C3b-d: v does not cover r, r'")?;
        let path = vec![v.lp.clone(), v.l.clone(), a.clone(), c.clone(), b.clone(), pv.clone(), r2];
        aux.push(("v", pv));
        return Ok(v.finish(CaseId::C3bD, path, aux, roles));
    }
    if above(&v.rp, &a, &b) {
        let w = meet(&v.l, &a, &v.rp, &b).ok_or(WindowError::ConstructionFailed("C3b-e: w undefined"))?;
        require(v.in_slab(&w), "C3b-e: w outside slab")?;
        require(covers(&a, &v.l, &w) && covers(&b, &w, &v.rp), "C3b-e: w does not cover a, b")?;
        let path = vec![v.lp.clone(), v.l.clone(), w.clone(), v.rp.clone(), c.clone(), v.r.clone(), r2];
        aux.push(("w", w));
        return Ok(v.finish(CaseId::C3bE, path, aux, roles));
    }
    let z = z.ok_or(WindowError::ConstructionFailed("C3b-f: ray bc misses ray l'l in the slab"))?;
    require(covers(&v.l, &v.lp, &z) && covers(&c, &z, &b), "C3b-f: z does not cover l, c")?;
    let path = vec![v.lp.clone(), z, b.clone(), a.clone(), v.rp.clone(), v.r.clone(), r2];
    Ok(v.finish(CaseId::C3bF, path, aux, roles))
}
