#![allow(dead_code)]

use gml::catalog::{build, DistributionEntry, Params};

/// Representative parameter choices covering every catalog entry.
pub fn cases() -> Vec<(&'static str, Params)> {
    let p = |pairs: &[(&str, f64)]| {
        let mut out = Params::new();
        for (k, v) in pairs {
            out.insert(k, *v);
        }
        out
    };
    vec![
        ("exponential", p(&[])),
        ("gamma", p(&[("alpha", 2.5)])),
        ("beta", p(&[("alpha", 2.0), ("beta", 3.0)])),
        ("uniform", p(&[])),
        ("positive_stable", p(&[("alpha", 0.6)])),
        ("mittag_leffler", p(&[("alpha", 0.4)])),
        ("rayleigh", p(&[])),
        ("maxwell", p(&[])),
        ("type2_beta", p(&[("alpha", 1.3), ("beta", 2.7)])),
        ("half_cauchy", p(&[])),
        ("beta_product", p(&[("a", 2.0), ("b", 5.0), ("c", 8.0), ("d", -1.0)])),
        ("beta_product", p(&[("a", 1.5), ("b", 2.0), ("c", 3.0), ("d", 0.5)])),
        ("ise_density0", p(&[])),
        ("average_ise", p(&[])),
        ("stirling_blocks", p(&[("k", 3.0)])),
        ("ball_distance", p(&[("n", 3.0), ("a", 0.5)])),
        ("ball_distance", p(&[("n", 2.0), ("a", 1.5)])),
        ("pa_w", p(&[("alpha", 1.5)])),
        ("pa_k", p(&[("alpha", 0.5)])),
        ("pa_k", p(&[("alpha", 0.75)])),
        ("pa_k", p(&[("alpha", 2.0)])),
        ("max_exp", p(&[("n", 5.0)])),
        ("mth_max_exp", p(&[("n", 5.0), ("m", 2.0)])),
        ("gumbel", p(&[])),
        ("gumbel_mth", p(&[("m", 2.0)])),
        ("logistic", p(&[])),
        ("selberg_beta", p(&[("n", 3.0), ("alpha", 1.5), ("beta", 2.0)])),
        ("selberg_gamma", p(&[("n", 3.0), ("alpha", 1.5)])),
        ("selberg_normal", p(&[("n", 3.0)])),
        ("symmetric_stable", p(&[("alpha", 1.5)])),
        ("symmetric_stable", p(&[("alpha", 2.0)])),
        ("cauchy_product", p(&[("k", 3.0)])),
        ("cauchy_product", p(&[("k", 2.0)])),
        ("hyperbolic_secant", p(&[("t", 2.0)])),
        ("hyperbolic_secant", p(&[("t", 1.0)])),
        ("lamperti", p(&[("alpha", 1.0 / 3.0)])),
        ("lamperti_power", p(&[("alpha", 0.5)])),
        ("kotz_ostrovskii", p(&[("alpha", 0.8), ("beta", 1.6)])),
        ("tilted_stable", p(&[("alpha", 0.5), ("theta", 1.0)])),
        ("stable_ratio_tilted", p(&[("alpha", 0.5), ("theta", 1.0)])),
        ("generalized_exponential", p(&[("beta", 2.0)])),
        ("linnik", p(&[("alpha", 1.5)])),
        ("linnik", p(&[("alpha", 2.0)])),
        ("linnik_general", p(&[("alpha", 1.5), ("beta", 0.5)])),
    ]
}

pub fn entry(name: &str, pairs: &[(&str, f64)]) -> DistributionEntry {
    let mut params = Params::new();
    for (k, v) in pairs {
        params.insert(k, *v);
    }
    build(name, &params).unwrap_or_else(|e| panic!("{name}: {e}"))
}

/// Compare a profile component: exact equality for two rationals, else a
/// relative tolerance.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    if a.is_infinite() || b.is_infinite() {
        return a == b;
    }
    (a - b).abs() <= tol * a.abs().max(b.abs()).max(1.0)
}

/// Worst deviations of the recurrence, duplication and reflection identities
/// over `n` seeded random points.
pub struct GammaSweep {
    pub recurrence: f64,
    pub duplication: f64,
    pub reflection: f64,
}

pub fn gamma_identity_sweep(n: usize, seed: u64) -> GammaSweep {
    use gml::specfun::{gamma_real, ln_gamma, wrap_phase};
    use num_complex::Complex64;
    use rand::{Rng, SeedableRng};
    use std::f64::consts::{LN_2, PI};

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut out = GammaSweep { recurrence: 0.0, duplication: 0.0, reflection: 0.0 };
    let lg = |z: Complex64| ln_gamma(z).unwrap();
    for _ in 0..n {
        // Γ(z+1) = zΓ(z), compared as log-ratio so large |z| cannot overflow
        let z = Complex64::new(rng.random_range(1e-3..40.0), rng.random_range(-40.0..40.0));
        let d = lg(z + 1.0) - lg(z) - z.ln();
        let rel = (Complex64::new(d.re, wrap_phase(d.im)).exp() - 1.0).norm();
        out.recurrence = out.recurrence.max(rel);

        let z = Complex64::new(rng.random_range(0.1..50.0), rng.random_range(-10.0..10.0));
        let d = lg(2.0 * z) - (2.0 * z - 1.0) * LN_2 + 0.5 * PI.ln() - lg(z) - lg(z + 0.5);
        out.duplication = out.duplication.max(Complex64::new(d.re, wrap_phase(d.im)).norm());

        let x: f64 = rng.random_range(-0.499..0.499);
        let lhs = gamma_real(0.5 + x).unwrap() * gamma_real(0.5 - x).unwrap();
        let rhs = PI / (PI * x).cos();
        out.reflection = out.reflection.max((lhs / rhs - 1.0).abs());
    }
    out
}

/// z values on both sides of the internal region boundaries.
pub fn boundary_points() -> Vec<num_complex::Complex64> {
    let mut out = Vec::new();
    for re in [0.5, 0.75, 1.49, 1.5, 1.51, 3.0, 9.99, 10.0, 10.01] {
        for im in [0.0, 0.2, 0.4999, 0.5, 0.5001, 1.0, 9.99, 10.01] {
            out.push(num_complex::Complex64::new(re, im));
        }
    }
    out
}
