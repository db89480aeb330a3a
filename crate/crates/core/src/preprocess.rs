//! Point-set ingestion and the exact shear that separates x-coordinates.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::Point;
use crate::scalar::{mul_i128, Scalar};

/// A set of distinct points, remembering where each came from in the input.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    points: Vec<Point>,
    original_indices: Vec<usize>,
}

/// Duplicates dropped while building a [`PointSet`]: `(input index, index of the kept copy)`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct DedupReport {
    pub input_len: usize,
    pub duplicates: Vec<(usize, usize)>,
}

impl PointSet {
    /// Keeps the first occurrence of every point.
    pub fn new(points: Vec<Point>) -> (PointSet, DedupReport) {
        let input_len = points.len();
        let mut seen: HashMap<Point, usize> = HashMap::with_capacity(points.len());
        let mut kept = Vec::with_capacity(points.len());
        let mut original_indices = Vec::with_capacity(points.len());
        let mut duplicates = Vec::new();
        for (i, p) in points.into_iter().enumerate() {
            match seen.get(&p) {
                Some(&first) => duplicates.push((i, first)),
                None => {
                    seen.insert(p.clone(), i);
                    kept.push(p);
                    original_indices.push(i);
                }
            }
        }
        (
            PointSet { points: kept, original_indices },
            DedupReport { input_len, duplicates },
        )
    }

    pub fn from_distinct(points: Vec<Point>) -> PointSet {
        let (ps, report) = PointSet::new(points);
        debug_assert!(report.duplicates.is_empty());
        ps
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn original_indices(&self) -> &[usize] {
        &self.original_indices
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }
}

/// The shear `(x, y) -> (x + epsilon * y, y)`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShearTransform {
    pub epsilon: Scalar,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

impl ShearTransform {
    pub fn identity() -> Self {
        ShearTransform { epsilon: Scalar::zero() }
    }

    pub fn forward(&self, p: &Point) -> Point {
        if self.epsilon.is_zero() {
            return p.clone();
        }
        Point::new(&p.x + &(&self.epsilon * &p.y), p.y.clone())
    }

    pub fn inverse(&self, p: &Point) -> Point {
        if self.epsilon.is_zero() {
            return p.clone();
        }
        Point::new(&p.x - &(&self.epsilon * &p.y), p.y.clone())
    }

    pub fn apply(&self, p: &Point, direction: Direction) -> Point {
        match direction {
            Direction::Forward => self.forward(p),
            Direction::Inverse => self.inverse(p),
        }
    }
}

/// Shear parameter for `ps`: zero when x-coordinates are already distinct,
/// otherwise `min(1, dx / (2 * (dy + 1)))` where `dx` is the smallest nonzero
/// x-gap and `dy` the y-extent.
pub fn compute_shear(ps: &PointSet) -> Result<ShearTransform, Error> {
    if ps.is_empty() {
        return Err(Error::EmptyInput);
    }
    let mut sorted: Vec<&Point> = ps.points().iter().collect();
    sorted.sort();
    Ok(shear_for_sorted(&sorted))
}

/// Same as [`compute_shear`] on points already in lexicographic order.
pub(crate) fn shear_for_sorted(sorted: &[&Point]) -> ShearTransform {
    let mut duplicate_x = false;
    let mut min_gap: Option<Scalar> = None;
    for w in sorted.windows(2) {
        if w[0].x == w[1].x {
            duplicate_x = true;
        } else {
            let gap = &w[1].x - &w[0].x;
            if min_gap.as_ref().is_none_or(|g| gap < *g) {
                min_gap = Some(gap);
            }
        }
    }
    if !duplicate_x {
        return ShearTransform::identity();
    }
    let (mut ymin, mut ymax) = (&sorted[0].y, &sorted[0].y);
    for p in sorted {
        if p.y < *ymin {
            ymin = &p.y;
        }
        if p.y > *ymax {
            ymax = &p.y;
        }
    }
    let dy = ymax - ymin;
    let epsilon = match min_gap {
        None => Scalar::one(),
        Some(dx) => {
            let candidate = &dx / &(&Scalar::from_int(2) * &(&dy + &Scalar::one()));
            candidate.min(Scalar::one())
        }
    };
    ShearTransform { epsilon }
}

/// Forward or inverse shear of every point.
pub fn apply_shear(points: &[Point], t: &ShearTransform, direction: Direction) -> Vec<Point> {
    points.iter().map(|p| t.apply(p, direction)).collect()
}

/// The scan's working coordinates: shear, then a uniform scale that clears
/// denominators when the common denominator is small enough to keep
/// coordinates in machine words. Both maps preserve every predicate the
/// scan uses.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Frame {
    pub shear: ShearTransform,
    pub scale: Scalar,
}

impl Frame {
    pub fn identity() -> Self {
        Frame { shear: ShearTransform::identity(), scale: Scalar::one() }
    }

    pub fn to_working(&self, p: &Point) -> Point {
        let s = self.shear.forward(p);
        if self.scale == Scalar::one() {
            s
        } else {
            s.scale(&self.scale)
        }
    }

    pub fn to_original(&self, p: &Point) -> Point {
        if let Some(q) = self.integer_to_original(p) {
            return q;
        }
        let q = if self.scale == Scalar::one() { p.clone() } else { p.scale(&self.scale.recip()) };
        self.shear.inverse(&q)
    }
}

const MAX_SCALE_BITS: u64 = 62;

impl Frame {
    /// `((q x - p y) / (q s), y / s)` for an integer point, with shear
    /// parameter `p / q` and scale `s`.
    fn integer_to_original(&self, pt: &Point) -> Option<Point> {
        let (x, 1) = pt.x.as_small()? else { return None };
        let (y, 1) = pt.y.as_small()? else { return None };
        let (s, 1) = self.scale.as_small()? else { return None };
        let (p, q) = self.shear.epsilon.as_small()?;
        let xn = mul_i128(q, x)?.checked_sub(mul_i128(p, y)?)?;
        Some(Point::new(Scalar::from_i128_parts(xn, mul_i128(q, s)?)?, Scalar::from_i128_parts(y, s)?))
    }
}

/// The clearing scale used by [`working_frame`]: `q * L` where `L` is the
/// common denominator of the input and `q` the denominator of the shear
/// parameter, or one when that exceeds 62 bits.
pub fn clearing_scale(points: &[Point], shear: &ShearTransform) -> Scalar {
    let mut lcm = BigInt::one();
    for p in points {
        for c in [&p.x, &p.y] {
            if !c.is_integer() {
                lcm = lcm.lcm(&c.denom());
                if lcm.bits() > MAX_SCALE_BITS {
                    return Scalar::one();
                }
            }
        }
    }
    let scale = lcm * shear.epsilon.denom();
    match scale.to_i64() {
        Some(v) if scale.bits() <= MAX_SCALE_BITS => Scalar::from_int(v),
        _ => Scalar::one(),
    }
}

/// The points in lexicographic order, mapped into working coordinates,
/// together with the frame. Working x-coordinates are strictly increasing.
pub fn working_frame(ps: &PointSet) -> (Vec<Point>, Frame) {
    integer_working_frame(ps.points()).unwrap_or_else(|| rational_working_frame(ps.points()))
}

fn rational_working_frame(points: &[Point]) -> (Vec<Point>, Frame) {
    let mut sorted: Vec<&Point> = points.iter().collect();
    sorted.sort_unstable();
    let shear = shear_for_sorted(&sorted);
    let scale = clearing_scale(points, &shear);
    let frame = Frame { shear, scale };
    let pts = sorted.into_iter().map(|p| frame.to_working(p)).collect();
    (pts, frame)
}

/// Same result as the rational route, computed on machine integers when the
/// input's common denominator and the working coordinates fit.
fn integer_working_frame(points: &[Point]) -> Option<(Vec<Point>, Frame)> {
    let mut lcm: i128 = 1;
    for p in points {
        for c in [&p.x, &p.y] {
            let (_, d) = c.as_small()?;
            if d != 1 {
                lcm = mul_i128(lcm / lcm.gcd(&d), d)?;
                if lcm >> MAX_SCALE_BITS != 0 {
                    return None;
                }
            }
        }
    }
    let lift = |c: &Scalar| {
        let (n, d) = c.as_small().expect("checked above");
        mul_i128(n, lcm / d)
    };
    let mut keys = points.iter().map(|p| Some((lift(&p.x)?, lift(&p.y)?))).collect::<Option<Vec<_>>>()?;
    keys.sort_unstable();

    let mut duplicate_x = false;
    let mut min_gap: Option<i128> = None;
    for w in keys.windows(2) {
        let gap = w[1].0.checked_sub(w[0].0)?;
        if gap == 0 {
            duplicate_x = true;
        } else if min_gap.is_none_or(|g| gap < g) {
            min_gap = Some(gap);
        }
    }
    let epsilon = if !duplicate_x {
        Scalar::zero()
    } else {
        let (ymin, ymax) = keys.iter().fold((keys[0].1, keys[0].1), |(lo, hi), k| (lo.min(k.1), hi.max(k.1)));
        match min_gap {
            None => Scalar::one(),
            // dx / (2 (dy + 1)) in the lifted units
            Some(gap) => {
                let den = mul_i128(2, ymax.checked_sub(ymin)?.checked_add(lcm)?)?;
                Scalar::from_i128_parts(gap, den)?.min(Scalar::one())
            }
        }
    };
    let (num, den) = epsilon.as_small()?;
    let scale = mul_i128(den, lcm)?;
    if scale >> MAX_SCALE_BITS != 0 {
        return None;
    }
    let int = |v: i128| Scalar::from_i128_parts(v, 1);
    let pts = keys
        .iter()
        .map(|&(x, y)| Some(Point::new(int(mul_i128(den, x)?.checked_add(mul_i128(num, y)?)?)?, int(mul_i128(den, y)?)?)))
        .collect::<Option<Vec<_>>>()?;
    let frame = Frame { shear: ShearTransform { epsilon }, scale: int(scale)? };
    Some((pts, frame))
}
