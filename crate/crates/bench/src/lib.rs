//! Fixtures shared by the benchmarks.

use finalg::algebra::Algebra;
use finalg::fields::Field;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// `count` seeded random elements of `alg`.
pub fn random_elements<F: Field>(alg: &Algebra<F>, seed: u64, count: usize) -> Vec<Vec<F::Elem>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| (0..alg.dim()).map(|_| alg.field().random_elem(&mut rng)).collect()).collect()
}
