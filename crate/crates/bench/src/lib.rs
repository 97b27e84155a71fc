//! Seeded input vectors shared by the benchmarks.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use symineq::{ExactScalar, PositiveVector};

/// `n` rationals `p/q` with `p, q` in `1..=50`.
pub fn rational_vector(n: usize, seed: u64) -> PositiveVector {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let entries = (0..n)
        .map(|_| ExactScalar::new(rng.random_range(1..=50i64), rng.random_range(1..=50i64)).unwrap())
        .collect();
    PositiveVector::new(entries).unwrap()
}

/// A random point on the open simplex.
pub fn simplex_point(n: usize, seed: u64) -> Vec<f64> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let raw: Vec<f64> = (0..n).map(|_| rng.random_range(0.1..1.0)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}
