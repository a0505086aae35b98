//! Floating-point oracles and seeded generators shared by the integration
//! tests. Nothing here touches the cyclotomic arithmetic under test.

#![allow(dead_code)]

use num_complex::Complex64;
use psc_moduli::cyclotomic::CyclotomicElement;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const FLOAT_TOL: f64 = 1e-9;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn root(n: u32, k: i64) -> Complex64 {
    Complex64::from_polar(1.0, std::f64::consts::TAU * k as f64 / n as f64)
}

/// `(1/n) Σ_{k=1}^{n-1} (λ^{ks} − 1) λ^{kq} / ((λ^{kq} − 1)(λ^k − 1))` summed
/// directly in complex floating point.
pub fn rho_float(n: u32, q: u32, s: i64) -> Complex64 {
    let mut total = Complex64::new(0.0, 0.0);
    for k in 1..n as i64 {
        let lk = root(n, k);
        let lkq = root(n, k * q as i64);
        total += (root(n, k * s) - 1.0) * lkq / ((lkq - 1.0) * (lk - 1.0));
    }
    total / n as f64
}

/// `ρ_s − ρ_{s+p}` on `L(2p, q)`.
pub fn eta_float(p: u32, q: u32, s: i64) -> Complex64 {
    rho_float(2 * p, q, s) - rho_float(2 * p, q, s + p as i64)
}

/// Evaluates `Σ c_i ζ^i` at `ζ = e^{2πi/n}` from the coefficient list.
pub fn embed(e: &CyclotomicElement) -> Complex64 {
    e.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| {
            let (num, den): (f64, f64) = (
                c.numer().to_string().parse().unwrap(),
                c.denom().to_string().parse().unwrap(),
            );
            root(e.order(), i as i64) * (num / den)
        })
        .sum()
}

pub fn close(a: Complex64, b: Complex64, tol: f64) -> bool {
    (a - b).norm() <= tol * (1.0 + b.norm())
}

/// Deterministic proptest settings: fixed seed, no regression files.
pub fn proptest_config(cases: u32) -> proptest::test_runner::Config {
    proptest::test_runner::Config {
        cases,
        rng_algorithm: proptest::test_runner::RngAlgorithm::ChaCha,
        rng_seed: proptest::test_runner::RngSeed::Fixed(0x5eed_2024),
        failure_persistence: None,
        ..proptest::test_runner::Config::default()
    }
}

/// A rational ray `(1, a/d, c/d)` strictly inside the unit disc slice of the
/// positive cone of `diag(1, −1, −1)`.
pub fn random_cone_ray(rng: &mut impl rand::Rng) -> [(i64, i64); 3] {
    loop {
        let d = rng.gen_range(2..=60i64);
        let a = rng.gen_range(-d..=d);
        let c = rng.gen_range(-d..=d);
        if a * a + c * c < d * d {
            return [(1, 1), (a, d), (c, d)];
        }
    }
}
