//! Shared fixtures and seeded generators for the integration suites.
#![allow(dead_code)]

use ewit_core::{ComplexOperator, Dyadic, DyadicOperator};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

/// `8 W_2` as printed, `.` for zero.
pub const WITNESS_2_TIMES_8: &str = "
     .  .  .  .  .  .  .  .  .  . -1  .  .  .  . -1
     .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     .  .  1  .  .  .  .  .  .  .  .  .  .  1  .  .
     .  .  .  1  .  .  .  .  . -1  .  .  .  .  .  .
     .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     .  .  .  .  .  .  .  .  .  . -1  .  .  .  . -1
     .  .  .  .  .  .  1  .  .  .  .  . -1  .  .  .
     .  .  .  .  .  .  .  1  1  .  .  .  .  .  .  .
     .  .  .  .  .  .  .  1  1  .  .  .  .  .  .  .
     .  .  . -1  .  .  .  .  .  1  .  .  .  .  .  .
    -1  .  .  .  . -1  .  .  .  .  .  .  .  .  .  .
     .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     .  .  .  .  .  . -1  .  .  .  .  .  1  .  .  .
     .  .  1  .  .  .  .  .  .  .  .  .  .  1  .  .
     .  .  .  .  .  .  .  .  .  .  .  .  .  .  .  .
    -1  .  .  .  . -1  .  .  .  .  .  .  .  .  .  .
";

/// `8 rho_t` for N = 2 as printed; `t` marks the parameter.
pub const RHO_2_TIMES_8: &str = "
     2  .  .  .  .  .  .  .  .  .  t  .  .  .  .  1
     .  2  .  .  .  .  .  .  .  .  .  .  .  .  .  .
     .  .  1  .  .  .  .  .  .  .  .  .  .  .  .  .
     .  .  .  1  .  .  .  .  .  t  .  .  .  .  .  .
     .  .  .  .  2  .  .  .  .  .  .  .  .  .  .  .
     .  .  .  .  .  2  .  .  .  .  1  .  .  .  .  t
     .  .  .  .  .  .  1  .  .  .  .  .  t  .  .  .
     .  .  .  .  .  .  .  1  .  .  .  .  .  .  .  .
     .  .  .  .  .  .  .  .  1  .  .  .  .  .  .  .
     .  .  .  t  .  .  .  .  .  1  .  .  .  .  .  .
     t  .  .  .  .  1  .  .  .  .  2  .  .  .  .  .
     .  .  .  .  .  .  .  .  .  .  .  2  .  .  .  .
     .  .  .  .  .  .  t  .  .  .  .  .  1  .  .  .
     .  .  .  .  .  .  .  .  .  .  .  .  .  1  .  .
     .  .  .  .  .  .  .  .  .  .  .  .  .  .  2  .
     1  .  .  .  .  t  .  .  .  .  .  .  .  .  .  2
";

/// Parses a printed grid into (constant part, coefficient of t).
pub fn parse_grid(text: &str) -> (DyadicOperator, DyadicOperator) {
    let mut constant = Vec::new();
    let mut linear = Vec::new();
    for line in text.lines().filter(|l| !l.trim().is_empty()) {
        for cell in line.split_whitespace() {
            let (c, l) = match cell {
                "." => (0, 0),
                "t" => (0, 1),
                "-t" => (0, -1),
                v => (v.parse::<i64>().expect("integer cell"), 0),
            };
            constant.push(Dyadic::from_int(c));
            linear.push(Dyadic::from_int(l));
        }
    }
    (
        DyadicOperator::from_row_major(constant).unwrap(),
        DyadicOperator::from_row_major(linear).unwrap(),
    )
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_vector(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    (0..d)
        .map(|_| Complex64::new(StandardNormal.sample(rng), StandardNormal.sample(rng)))
        .collect()
}

pub fn random_unit(rng: &mut ChaCha8Rng, d: usize) -> Vec<Complex64> {
    let v = random_vector(rng, d);
    let norm = norm(&v);
    v.into_iter().map(|z| z / norm).collect()
}

pub fn norm(v: &[Complex64]) -> f64 {
    v.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}

/// `G + G^dagger` for Gaussian `G`.
pub fn random_hermitian(rng: &mut ChaCha8Rng, d: usize) -> ComplexOperator {
    let g = random_vector(rng, d * d);
    ComplexOperator::from_fn(d, |r, c| g[r * d + c] + g[c * d + r].conj())
}

/// Dyadic matrix with numerators in [-64, 64) and exponents in [0, 6).
pub fn random_dyadic(rng: &mut ChaCha8Rng, d: usize) -> DyadicOperator {
    use rand::Rng;
    DyadicOperator::from_fn(d, |_, _| Dyadic::new(rng.gen_range(-64..64), rng.gen_range(0..6)))
}
