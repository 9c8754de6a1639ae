//! Seeded randomness shared by every sampling suite.
//!
//! A single run seed fans out into independent per-sample streams so that
//! suites give the same answer regardless of how they are scheduled.

use num_complex::Complex;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{gauss, rat, Matrix, Scalar};

pub type SuiteRng = ChaCha8Rng;

/// Stream for sample `index` of the suite tagged `tag`, under run seed `seed`.
pub fn stream(seed: u64, tag: &str, index: u64) -> SuiteRng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(fnv1a(tag.as_bytes()) ^ index.rotate_left(32));
    rng.set_word_pos(u128::from(index) << 20);
    rng
}

/// Derived 64-bit seed for sample `index`, for APIs that take a plain seed.
pub fn derive_seed(seed: u64, tag: &str, index: u64) -> u64 {
    stream(seed, tag, index).gen()
}

fn fnv1a(bytes: &[u8]) -> u64 {
    bytes.iter().fold(0xcbf2_9ce4_8422_2325, |h, &b| {
        (h ^ u64::from(b)).wrapping_mul(0x0100_0000_01b3)
    })
}

/// Gaussian integer with both parts uniform in `-bound..=bound`.
pub fn small_gauss(rng: &mut SuiteRng, bound: i64) -> Scalar {
    gauss(rng.gen_range(-bound..=bound), rng.gen_range(-bound..=bound))
}

/// Gaussian rational with numerators in `-bound..=bound` and denominators in `1..=den`.
pub fn small_gauss_rational(rng: &mut SuiteRng, bound: i64, den: i64) -> Scalar {
    Complex::new(
        rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=den)),
        rat(rng.gen_range(-bound..=bound), rng.gen_range(1..=den)),
    )
}

pub fn small_matrix(rng: &mut SuiteRng, rows: usize, cols: usize, bound: i64) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| small_gauss(rng, bound))
}
