//! Seeded point-set generators.
//!
//! Randomness comes from PCG-XSL-RR 128/64 (`Pcg64`) with state `seed` and
//! the generator's default stream constant; a value in `[0, m)` is
//! `next_u64() % m`. Coordinates are `k / coordinate_scale` for integer `k`,
//! except for the lattice (integers) and the convex family (points of the
//! unit circle, see [`GenKind::ConvexPosition`]).

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand_core::Rng;
use rand_pcg::Pcg64;
use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geom::Point;
use crate::preprocess::PointSet;
use crate::scalar::Scalar;

pub const PCG_STREAM: u128 = 0xa02b_dbf7_bb3c_0a7a_c28f_a16a_64ab_f96;
pub const DEFAULT_SCALE: u64 = 1_000_000;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum GenKind {
    /// Uniform in the unit square.
    UniformSquare,
    /// Row-major prefix of the `ceil(sqrt n)` square lattice at integer points.
    Grid,
    /// Distinct rational points `((s² - a²)/(s² + a²), 2as/(s² + a²))` of the
    /// unit circle, `a` uniform in `[-2s, 2s]`, `s` the coordinate scale.
    ConvexPosition,
    /// Uniform cluster centers with small uniform offsets.
    Clustered,
    /// Planted collinear triples `p, p + d, p + 2d` plus uniform filler.
    CollinearHeavy,
}

impl GenKind {
    pub const ALL: [GenKind; 5] =
        [GenKind::UniformSquare, GenKind::Grid, GenKind::ConvexPosition, GenKind::Clustered, GenKind::CollinearHeavy];

    pub fn name(self) -> &'static str {
        match self {
            GenKind::UniformSquare => "uniform",
            GenKind::Grid => "grid",
            GenKind::ConvexPosition => "convex",
            GenKind::Clustered => "clustered",
            GenKind::CollinearHeavy => "collinear",
        }
    }
}

impl fmt::Display for GenKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for GenKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        GenKind::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::InvalidSpec(format!("unknown kind `{s}`")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GenSpec {
    pub kind: GenKind,
    pub n: usize,
    pub seed: u64,
    pub coordinate_scale: u64,
}

impl GenSpec {
    pub fn new(kind: GenKind, n: usize, seed: u64) -> Self {
        GenSpec { kind, n, seed, coordinate_scale: DEFAULT_SCALE }
    }
}

pub fn rng_for(seed: u64) -> Pcg64 {
    Pcg64::new(seed as u128, PCG_STREAM)
}

struct Sampler {
    rng: Pcg64,
}

impl Sampler {
    fn below(&mut self, m: u64) -> u64 {
        self.rng.next_u64() % m
    }

    /// Uniform in `[lo, hi]`.
    fn between(&mut self, lo: i64, hi: i64) -> i64 {
        lo + self.below((hi - lo + 1) as u64) as i64
    }
}

pub fn generate(spec: &GenSpec) -> Result<PointSet, Error> {
    if spec.n == 0 {
        return Err(Error::InvalidSpec("n must be at least 1".into()));
    }
    let s = spec.coordinate_scale;
    if s == 0 || s > i32::MAX as u64 {
        return Err(Error::InvalidSpec(format!("coordinate scale {s} out of range")));
    }
    let s = s as i64;
    let mut rng = Sampler { rng: rng_for(spec.seed) };
    let n = spec.n;
    let room = ((s + 1) * (s + 1)) as u128;
    let pts = match spec.kind {
        GenKind::UniformSquare | GenKind::Clustered | GenKind::CollinearHeavy if n as u128 > room / 2 => {
            return Err(Error::InvalidSpec(format!("{n} points do not fit a {s}x{s} lattice")));
        }
        GenKind::UniformSquare => {
            let mut acc = Distinct::new(n);
            while !acc.full() {
                let (x, y) = (rng.between(0, s), rng.between(0, s));
                acc.push(x, y);
            }
            acc.finish(s)
        }
        GenKind::Grid => {
            let side = (1..).find(|k: &usize| k * k >= n).expect("side exists");
            (0..n)
                .map(|i| Point::from_ints((i % side) as i64, (i / side) as i64))
                .collect()
        }
        GenKind::ConvexPosition => {
            if n as i64 > 4 * s + 1 {
                return Err(Error::InvalidSpec(format!("at most {} convex points at scale {s}", 4 * s + 1)));
            }
            let mut seen = HashSet::new();
            let mut out = Vec::with_capacity(n);
            while out.len() < n {
                let a = rng.between(-2 * s, 2 * s);
                if seen.insert(a) {
                    let den = s * s + a * a;
                    let big = |v: i64| Scalar::from(v);
                    let x = &big(s * s - a * a) / &big(den);
                    let y = &big(2 * a * s) / &big(den);
                    out.push(Point::new(x, y));
                }
            }
            out
        }
        GenKind::Clustered => {
            let centers: Vec<(i64, i64)> =
                (0..n.div_ceil(20).max(1)).map(|_| (rng.between(0, s), rng.between(0, s))).collect();
            let spread = (s / 100).max(1);
            let mut acc = Distinct::new(n);
            let mut guard = 0usize;
            while !acc.full() {
                let (cx, cy) = centers[rng.below(centers.len() as u64) as usize];
                let x = (cx + rng.between(-spread, spread)).clamp(0, s);
                let y = (cy + rng.between(-spread, spread)).clamp(0, s);
                acc.push(x, y);
                guard += 1;
                if guard > 1000 * n {
                    return Err(Error::InvalidSpec("clusters too small for the requested count".into()));
                }
            }
            acc.finish(s)
        }
        GenKind::CollinearHeavy => {
            let triples = n / 4;
            let step = (s / 50).max(1);
            let mut acc = Distinct::new(n);
            let mut planted = 0;
            let mut guard = 0usize;
            while planted < triples && acc.len() + 3 <= n {
                let (px, py) = (rng.between(0, s), rng.between(0, s));
                let (dx, dy) = (rng.between(-step, step), rng.between(-step, step));
                guard += 1;
                if guard > 1000 * n {
                    break;
                }
                if (dx, dy) == (0, 0) {
                    continue;
                }
                let triple = [(px, py), (px + dx, py + dy), (px + 2 * dx, py + 2 * dy)];
                if triple.iter().all(|&(x, y)| (0..=s).contains(&x) && (0..=s).contains(&y) && acc.free(x, y)) {
                    for (x, y) in triple {
                        acc.push(x, y);
                    }
                    planted += 1;
                }
            }
            while !acc.full() {
                let (x, y) = (rng.between(0, s), rng.between(0, s));
                acc.push(x, y);
            }
            acc.finish(s)
        }
    };
    Ok(PointSet::from_distinct(pts))
}

/// Distinct lattice points in insertion order.
struct Distinct {
    want: usize,
    seen: HashSet<(i64, i64)>,
    order: Vec<(i64, i64)>,
}

impl Distinct {
    fn new(want: usize) -> Self {
        Distinct { want, seen: HashSet::with_capacity(want), order: Vec::with_capacity(want) }
    }

    fn len(&self) -> usize {
        self.order.len()
    }

    fn full(&self) -> bool {
        self.order.len() >= self.want
    }

    fn free(&self, x: i64, y: i64) -> bool {
        !self.seen.contains(&(x, y))
    }

    fn push(&mut self, x: i64, y: i64) {
        if self.seen.insert((x, y)) {
            self.order.push((x, y));
        }
    }

    fn finish(self, scale: i64) -> Vec<Point> {
        self.order
            .into_iter()
            .map(|(x, y)| Point::new(Scalar::ratio(x, scale), Scalar::ratio(y, scale)))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::convex_hull_small;

    #[test]
    fn grid_nine() {
        let ps = generate(&GenSpec::new(GenKind::Grid, 9, 1)).unwrap();
        let mut got = ps.points().to_vec();
        got.sort();
        let mut want: Vec<Point> = (0..3).flat_map(|x| (0..3).map(move |y| Point::from_ints(x, y))).collect();
        want.sort();
        assert_eq!(got, want);
    }

    #[test]
    fn deterministic_and_seed_sensitive() {
        for kind in GenKind::ALL {
            let a = generate(&GenSpec::new(kind, 100, 7)).unwrap();
            let b = generate(&GenSpec::new(kind, 100, 7)).unwrap();
            assert_eq!(a, b, "{kind}");
            assert_eq!(a.len(), 100);
        }
        let a = generate(&GenSpec::new(GenKind::UniformSquare, 100, 1)).unwrap();
        let b = generate(&GenSpec::new(GenKind::UniformSquare, 100, 2)).unwrap();
        assert_ne!(a, b);
    }

    #[test]
    fn convex_is_convex() {
        for seed in 0..5 {
            let ps = generate(&GenSpec::new(GenKind::ConvexPosition, 9, seed)).unwrap();
            assert_eq!(convex_hull_small(ps.points()).len(), 9);
        }
    }

    #[test]
    fn collinear_has_triples() {
        let ps = generate(&GenSpec::new(GenKind::CollinearHeavy, 40, 3)).unwrap();
        let p = ps.points();
        // planted triples come first, three at a time
        for t in 0..10 {
            assert_eq!(
                crate::geom::orientation(&p[3 * t], &p[3 * t + 1], &p[3 * t + 2]),
                crate::geom::Orientation::Collinear
            );
        }
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GenSpec::new(GenKind::Grid, 0, 1)).is_err());
        let mut spec = GenSpec::new(GenKind::ConvexPosition, 10, 1);
        spec.coordinate_scale = 1;
        assert!(generate(&spec).is_err());
        assert!("hexagonal".parse::<GenKind>().is_err());
    }
}
