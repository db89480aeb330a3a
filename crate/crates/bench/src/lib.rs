//! Shared inputs for the criterion benchmarks in `benches/`.

use covpath_core::{generate, GenKind, GenSpec, Point, PointSet};

/// A generated point set; panics on a spec the generator rejects.
pub fn points(kind: GenKind, n: usize, seed: u64) -> PointSet {
    generate(&GenSpec::new(kind, n, seed)).expect("benchmark input generates")
}

/// Consecutive triples of a uniform sample, for predicate timing.
pub fn triples(n: usize, seed: u64) -> Vec<[Point; 3]> {
    let ps = points(GenKind::UniformSquare, 3 * n, seed);
    ps.points().chunks_exact(3).map(|c| [c[0].clone(), c[1].clone(), c[2].clone()]).collect()
}
