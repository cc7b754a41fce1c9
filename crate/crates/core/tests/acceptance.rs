//! Acceptance report: one PASS/FAIL line per criterion, plus ERRATUM lines
//! for reference values that the forms contradict. Exits non-zero if any
//! criterion fails.

mod common;

use std::f64::consts::{LN_2, PI};
use std::process::Command;

use common::{close, entry};
use gml::catalog::{build, form_for_consistency, Kind, Params};
use gml::cli::parse_expr;
use gml::mellin::{density_entry, InversionSpec};
use gml::specfun::gamma_real;
use gml::stochastics::{harmonic_drift, verify_entry};
use gml::Scalar;

/// Irrational profile components (κ, C1, non-rational γ); rational ones
/// are compared exactly.
const PROFILE_TOL: f64 = 1e-10;
/// Absolute error of the ball-distance moments at s = 1, 2.
const BALL_TOL: f64 = 1e-12;
/// Relative deviation allowed by the moment-identity grid.
const IDENTITY_TOL: f64 = 1e-10;
/// Monte Carlo sample size; the band is z = 5 standard errors.
const MC_N: usize = 1_000_000;
const MC_SEED: u64 = 20_261_016;
/// H_n - log n against γ_E + 1/(2n); the next term is O(n^-2).
const EULER_TOL: f64 = 1e-6;
/// Absolute error of inverted against closed-form densities.
const DENSITY_TOL: f64 = 1e-6;
/// Change of the inverted density when the contour moves within the strip.
const CONTOUR_TOL: f64 = 2e-8;

struct Report {
    failed: Vec<u32>,
}

impl Report {
    fn line(&mut self, n: u32, what: &str, problems: &[String]) {
        if problems.is_empty() {
            println!("PASS criterion {n}: {what}");
        } else {
            println!("FAIL criterion {n}: {what}");
            for p in problems {
                println!("    {p}");
            }
            self.failed.push(n);
        }
    }
}

fn params(pairs: &[(&str, f64)]) -> Params {
    let mut p = Params::new();
    for (k, v) in pairs {
        p.insert(k, *v);
    }
    p
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn approx(x: f64) -> Scalar {
    Scalar::Approx(x)
}

fn same(a: Scalar, b: Scalar) -> bool {
    if a.is_exact() && b.is_exact() {
        a == b
    } else {
        close(a.to_f64(), b.to_f64(), PROFILE_TOL)
    }
}

/// A reference tuple (ρ−, ρ+, γ, γ′, δ, κ, C1).
struct Tuple {
    name: &'static str,
    params: &'static [(&'static str, f64)],
    rho_minus: f64,
    rho_plus: f64,
    gamma: Scalar,
    gamma_prime: Scalar,
    delta: Scalar,
    kappa: Option<f64>,
    c1: Option<f64>,
}

#[allow(clippy::too_many_arguments)]
fn tuple(
    name: &'static str,
    params: &'static [(&'static str, f64)],
    rho_minus: f64,
    rho_plus: f64,
    gamma: Scalar,
    gamma_prime: Scalar,
    delta: Scalar,
    kappa: Option<f64>,
    c1: Option<f64>,
) -> Tuple {
    Tuple { name, params, rho_minus, rho_plus, gamma, gamma_prime, delta, kappa, c1 }
}

fn k_alpha_c1(a: f64) -> f64 {
    2f64.powf(a - 0.5) * gamma_real(a).unwrap()
}

fn reference_tuples() -> Vec<Tuple> {
    let inf = f64::INFINITY;
    let g = |x: f64| gamma_real(x).unwrap();
    vec![
        tuple("rayleigh", &[], -2.0, inf, q(1, 2), q(1, 2), q(1, 2), Some(0.0), Some(PI.sqrt())),
        tuple("maxwell", &[], -3.0, inf, q(1, 2), q(1, 2), int(1), Some(0.0), Some(2f64.sqrt())),
        tuple(
            "type2_beta",
            &[("alpha", 1.3), ("beta", 2.7)],
            -1.3,
            2.7,
            int(2),
            int(0),
            int(3),
            Some(0.0),
            Some(2.0 * PI / (g(1.3) * g(2.7))),
        ),
        tuple("half_cauchy", &[], -1.0, 1.0, int(1), int(0), int(0), Some(0.0), Some(2.0)),
        tuple(
            "beta_product",
            &[("a", 2.0), ("b", 5.0), ("c", 8.0), ("d", -1.0)],
            -2.0,
            inf,
            int(0),
            int(0),
            int(-4),
            Some(0.0),
            Some(g(7.0) * g(7.0) / (g(2.0) * g(8.0))),
        ),
        tuple(
            "ise_density0",
            &[],
            -4.0 / 3.0,
            inf,
            q(1, 4),
            q(1, 4),
            int(0),
            Some(-0.75 * LN_2 - 0.25 * 3f64.ln()),
            Some(1.5f64.sqrt()),
        ),
        tuple("average_ise", &[], -1.0, inf, q(3, 4), q(3, 4), q(1, 2), Some(-0.25 * LN_2), Some(PI.sqrt())),
        tuple(
            "stirling_blocks",
            &[("k", 3.0)],
            -2.0,
            inf,
            q(2, 3),
            q(2, 3),
            q(2, 3),
            Some(3f64.ln() / 3.0),
            Some(3f64.powf(5.0 / 6.0) * g(4.0 / 3.0)),
        ),
        // C = nΓ(n+1)/Γ((n+1)/2) = 18, C1 = 2^{(n+1)/2} C
        tuple("ball_distance", &[("n", 3.0), ("a", 0.5)], -3.0, inf, int(0), int(0), int(-3), Some(0.0), Some(72.0)),
        tuple("pa_k", &[("alpha", 0.5)], -2.0, inf, q(1, 2), q(1, 2), q(1, 2), Some(0.5 * 0.5f64.ln()), Some(k_alpha_c1(0.5))),
        tuple("pa_k", &[("alpha", 0.75)], -1.0, inf, q(1, 2), q(1, 2), q(1, 4), Some(0.5 * 0.75f64.ln()), Some(k_alpha_c1(0.75))),
        tuple("pa_k", &[("alpha", 2.0)], -1.0, inf, q(1, 2), q(1, 2), int(-1), Some(0.5 * LN_2), Some(k_alpha_c1(2.0))),
        tuple("max_exp", &[("n", 5.0)], -inf, 1.0, int(0), int(0), int(-5), Some(0.0), Some(120.0)),
        tuple("mth_max_exp", &[("n", 5.0), ("m", 2.0)], -inf, 2.0, int(0), int(0), int(-4), Some(0.0), Some(120.0)),
        tuple("gumbel_mth", &[("m", 2.0)], -inf, 2.0, int(1), int(-1), q(3, 2), Some(0.0), Some((2.0 * PI).sqrt())),
        tuple("logistic", &[], -1.0, 1.0, int(2), int(0), int(1), Some(0.0), Some(2.0 * PI)),
        // ρ− = max(-1/n, -α/(n-1), -β/(n-1)), δ = 1 - α - β - n/2
        tuple("selberg_beta", &[("n", 3.0), ("alpha", 1.5), ("beta", 2.0)], -1.0 / 3.0, inf, int(0), int(0), int(-4), None, None),
        // γ = n² - n, δ = (n-1)(α - 1/2)
        tuple("selberg_gamma", &[("n", 3.0), ("alpha", 1.5)], -1.0 / 3.0, inf, int(6), int(6), int(2), None, None),
        // γ = n(n-1)/2, δ = 0; ρ− is the pole of Γ(1+ns) at -1/n
        tuple("selberg_normal", &[("n", 3.0)], -1.0 / 3.0, inf, int(3), int(3), int(0), None, None),
        tuple(
            "symmetric_stable",
            &[("alpha", 1.5)],
            -1.0,
            1.5,
            q(2, 3),
            q(1, 3),
            int(0),
            Some(1.5f64.ln() / 1.5),
            Some((4.0 / 1.5f64).sqrt()),
        ),
        tuple("cauchy_product", &[("k", 3.0)], -1.0, 1.0, int(3), int(0), int(0), Some(0.0), Some(8.0)),
        tuple(
            "hyperbolic_secant",
            &[("t", 2.0)],
            -PI / 2.0,
            PI / 2.0,
            approx(4.0 / PI),
            int(0),
            int(0),
            Some(0.0),
            Some(4.0),
        ),
        tuple("lamperti", &[("alpha", 1.0 / 3.0)], -1.0 / 3.0, 1.0 / 3.0, int(4), int(0), int(0), Some(0.0), Some(3.0)),
        tuple("generalized_exponential", &[("beta", 2.0)], -1.0, inf, q(1, 2), q(1, 2), int(0), Some(0.5 * 0.5f64.ln()), None),
        // C1 corrected from the printed sqrt(2π); see the erratum line
        tuple(
            "linnik",
            &[("alpha", 1.5)],
            -1.0,
            1.5,
            q(4, 3),
            int(1),
            q(1, 2),
            Some(0.0),
            Some(2.0 * (2.0 * PI).sqrt() / 1.5),
        ),
    ]
}

fn criterion_1(r: &mut Report) {
    let rows = reference_tuples();
    let mut problems = vec![];
    for t in &rows {
        let e = match build(t.name, &params(t.params)) {
            Ok(e) => e,
            Err(err) => {
                problems.push(format!("{} {:?}: {err}", t.name, t.params));
                continue;
            }
        };
        let strip = e.form.strip().unwrap();
        let prof = e.form.asymptotic_profile();
        let (g, gp, d) = e.form.profile_exact_parts();
        let mut check = |field: &str, ok: bool, got: String, want: String| {
            if !ok {
                problems.push(format!("{} {:?} {field}: got {got}, expected {want}", t.name, t.params));
            }
        };
        check("rho_minus", close(strip.rho_minus, t.rho_minus, PROFILE_TOL), strip.rho_minus.to_string(), t.rho_minus.to_string());
        check("rho_plus", close(strip.rho_plus, t.rho_plus, PROFILE_TOL), strip.rho_plus.to_string(), t.rho_plus.to_string());
        check("gamma", same(g, t.gamma), g.to_string(), t.gamma.to_string());
        check("gamma_prime", same(gp, t.gamma_prime), gp.to_string(), t.gamma_prime.to_string());
        check("delta", same(d, t.delta), d.to_string(), t.delta.to_string());
        if let Some(k) = t.kappa {
            check("kappa", close(prof.kappa, k, PROFILE_TOL), prof.kappa.to_string(), k.to_string());
        }
        if let Some(c) = t.c1 {
            check("c1", close(prof.c1, c, PROFILE_TOL), prof.c1.to_string(), c.to_string());
        }
    }
    r.line(1, &format!("profile regression over {} reference tuples", rows.len()), &problems);

    // printed values the forms contradict
    let normal = entry("selberg_normal", &[("n", 3.0)]);
    let near_pole = normal.form.evaluate_real(-1.0 / 3.0 + 1e-9).unwrap().abs();
    println!(
        "ERRATUM selberg_normal n=3: printed rho_minus = -1, but Gamma(1+3s) has a pole at -1/3 (|F(-1/3 + 1e-9)| = {near_pole:.3e})"
    );
    let linnik = entry("linnik", &[("alpha", 1.5)]);
    println!(
        "ERRATUM linnik alpha=1.5: printed C1 = sqrt(2 pi) = {:.12}, form gives 2 sqrt(2 pi)/alpha = {:.12}",
        (2.0 * PI).sqrt(),
        linnik.form.asymptotic_profile().c1
    );
    let ko = entry("kotz_ostrovskii", &[("alpha", 0.8), ("beta", 1.6)]);
    let p = ko.form.asymptotic_profile();
    println!(
        "ERRATUM kotz_ostrovskii alpha=0.8 beta=1.6: printed gamma = 2/alpha - 2 = 0.5, C1 = 1/alpha = 1.25; form gives gamma = {}, C1 = {}",
        p.gamma, p.c1
    );
}

fn criterion_2(r: &mut Report) {
    let mut problems = vec![];
    for (a, want) in [(0.75, -1.0), (0.5, -2.0)] {
        let got = entry("pa_k", &[("alpha", a)]).form.strip().unwrap().rho_minus;
        if got != want {
            problems.push(format!("alpha={a}: rho_minus {got}, expected {want}"));
        }
    }
    r.line(2, "K_alpha strip exception (rho_minus -1 at 3/4, -2 at 1/2)", &problems);
}

fn criterion_3(r: &mut Report) {
    let mut problems = vec![];
    for a in [0.1, 0.3, 0.45] {
        let rep = form_for_consistency("pa_k", &params(&[("alpha", a)])).unwrap().check_positive_consistency();
        match rep.offending_zero {
            Some(z) if !rep.passed && (z + 2.0 * a).abs() < 1e-12 => {}
            other => problems.push(format!("alpha={a}: passed={}, zero {other:?}, expected failure at {}", rep.passed, -2.0 * a)),
        }
    }
    for a in [0.5, 0.7, 1.0, 2.0] {
        let rep = form_for_consistency("pa_k", &params(&[("alpha", a)])).unwrap().check_positive_consistency();
        if !rep.passed {
            problems.push(format!("alpha={a}: failed with zero {:?}", rep.offending_zero));
        }
    }
    r.line(3, "positivity consistency fails exactly at s = -2 alpha for alpha < 1/2", &problems);
}

fn criterion_4(r: &mut Report) {
    let mut problems = vec![];
    let want = [(1.0 / 3.0, 1.0 / 6.0), (64.0 / (45.0 * PI), 0.25), (18.0 / 35.0, 0.3)];
    for (n, (m1, m2)) in want.iter().enumerate() {
        let n = n + 1;
        let e = entry("ball_distance", &[("n", n as f64), ("a", 0.5)]);
        let g1 = e.form.evaluate_real(1.0).unwrap();
        let g2 = e.form.evaluate_real(2.0).unwrap();
        if (g1 - m1).abs() > BALL_TOL || (g2 - m2).abs() > BALL_TOL {
            problems.push(format!("n={n}: E D = {g1} (want {m1}), E D^2 = {g2} (want {m2})"));
        }
    }
    r.line(4, "ball-distance moments for n = 1, 2, 3 within 1e-12", &problems);
}

fn criterion_5(r: &mut Report) {
    let pairs: Vec<(&str, String, String)> = vec![
        ("a", "pa_k{alpha=1/2}".into(), "scale(rayleigh, 2^(-1/2))".into()),
        ("b", "logistic".into(), "product(gumbel, recip(gumbel))".into()),
        ("c", "half_cauchy".into(), "symmetric_stable{alpha=1}".into()),
        ("d", "power(lamperti{alpha=1/2}, 1/2)".into(), "half_cauchy".into()),
        ("f", "selberg_normal{n=3}".into(), "scale(product(gamma{alpha=1/2}, gamma{alpha=1/3}, gamma{alpha=2/3}), 108)".into()),
        ("g", "linnik{alpha=1.2}".into(), "product(symmetric_stable{alpha=1.2}, power(exponential, 1/1.2))".into()),
        ("h", "type2_beta{alpha=1.3, beta=2.7}".into(), "product(gamma{alpha=1.3}, recip(gamma{alpha=2.7}))".into()),
    ];
    let mut pairs = pairs;
    for n in 1..=3 {
        let h = format!("{}/2", n + 1);
        pairs.push((
            "e",
            format!("ball_distance{{n={n}, a=0.75}}"),
            format!("scale(product(beta{{alpha={n}, beta=1}}, power(beta{{alpha={h}, beta={h}}}, 1/2)), 1.5)"),
        ));
    }
    let form = |s: &str| parse_expr(s).and_then(|e| e.to_form());
    let mut problems = vec![];
    for (tag, lhs, rhs) in &pairs {
        match (form(lhs), form(rhs)) {
            (Ok(l), Ok(r)) => match l.compare_moments(&r, IDENTITY_TOL) {
                Ok(rep) if rep.equal => {}
                Ok(rep) => problems.push(format!("({tag}) {lhs} vs {rhs}: deviation {:e}", rep.max_relative_deviation)),
                Err(e) => problems.push(format!("({tag}) {lhs} vs {rhs}: {e}")),
            },
            (l, r) => problems.push(format!("({tag}) parse: {:?} / {:?}", l.err(), r.err())),
        }
    }
    // a perturbed constant must be rejected
    let lhs = form("logistic").unwrap();
    let rhs = form("product(gumbel, recip(gumbel))").unwrap().times_constant(1.001).unwrap();
    if lhs.moments_equal(&rhs, IDENTITY_TOL).unwrap_or(true) {
        problems.push("perturbed constant (x1.001) was accepted".into());
    }
    r.line(5, &format!("{} moment identities hold at 1e-10 and a x1.001 perturbation is rejected", pairs.len()), &problems);
}

/// Entry name, parameters, and an s grid or an x range.
type Case<T> = (&'static str, Vec<(&'static str, f64)>, T);

fn criterion_6(r: &mut Report) {
    let cases: Vec<Case<Vec<f64>>> = vec![
        ("rayleigh", vec![], vec![-0.5, 0.5, 1.0, 2.0]),
        ("maxwell", vec![], vec![-0.5, 0.5, 1.0, 2.0]),
        ("beta", vec![("alpha", 2.0), ("beta", 3.0)], vec![-0.5, 0.5, 1.0, 2.0]),
        ("type2_beta", vec![("alpha", 2.0), ("beta", 3.0)], vec![-0.5, 0.5, 1.0, 2.0]),
        ("ball_distance", vec![("n", 2.0), ("a", 0.5)], vec![1.0]),
        ("selberg_beta", vec![("n", 2.0), ("alpha", 1.0), ("beta", 1.0)], vec![0.5, 1.0]),
        ("max_exp", vec![("n", 5.0)], vec![-1.0, 0.5]),
    ];
    let mut problems = vec![];
    for (name, p, grid) in &cases {
        let e = entry(name, p);
        match verify_entry(&e, grid, MC_N, MC_SEED) {
            Ok(rep) => {
                for o in &rep.outcomes {
                    if o.passed != Some(true) {
                        problems.push(format!("{name} s={}: {:?} z={:?} {:?}", o.s, o.status, o.z_score, o.note));
                    }
                }
            }
            Err(err) => problems.push(format!("{name}: {err}")),
        }
    }
    let disc = entry("ball_distance", &[("n", 2.0), ("a", 0.5)]).form.evaluate_real(1.0).unwrap();
    if (disc - 64.0 / (45.0 * PI)).abs() > 1e-12 {
        problems.push(format!("ball_distance n=2 E D = {disc}"));
    }
    r.line(6, &format!("Monte Carlo (n = 1e6, z = 5) agrees with {} forms", cases.len()), &problems);
}

fn criterion_7(r: &mut Report) {
    let n = 1_000_000u64;
    let (_, last) = *harmonic_drift(n).unwrap().last().unwrap();
    let want = 0.577_215_66 + 0.5 / n as f64;
    let problems = if (last - want).abs() <= EULER_TOL { vec![] } else { vec![format!("H_n - log n = {last}, want {want}")] };
    r.line(7, &format!("Euler drift H_n - log n = {last:.10} at n = 1e6"), &problems);
}

fn linspace(a: f64, b: f64, n: usize) -> Vec<f64> {
    (0..n).map(|i| a + (b - a) * i as f64 / (n - 1) as f64).collect()
}

fn criterion_8(r: &mut Report) {
    let cases: Vec<Case<(f64, f64)>> = vec![
        ("logistic", vec![], (-6.0, 6.0)),
        ("hyperbolic_secant", vec![("t", 1.0)], (-6.0, 6.0)),
        ("hyperbolic_secant", vec![("t", 2.0)], (-6.0, 6.0)),
        ("rayleigh", vec![], (0.05, 4.0)),
        ("pa_k", vec![("alpha", 0.5)], (0.05, 3.0)),
        ("lamperti_power", vec![("alpha", 1.0 / 3.0)], (0.05, 5.0)),
        ("lamperti_power", vec![("alpha", 0.5)], (0.05, 5.0)),
        ("cauchy_product", vec![("k", 2.0)], (0.1, 5.0)),
    ];
    let spec = InversionSpec::default();
    let mut problems = vec![];
    let mut worst: f64 = 0.0;
    for (name, p, (a, b)) in &cases {
        let e = entry(name, p);
        for x in linspace(*a, *b, 50) {
            let closed = gml::catalog::density_closed_form(&e, x);
            let inverted = density_entry(&e, x, &spec);
            match (closed, inverted) {
                (Ok(c), Ok(v)) => {
                    worst = worst.max((c - v).abs());
                    if (c - v).abs() > DENSITY_TOL {
                        problems.push(format!("{name} {p:?} x={x}: inversion {v}, closed {c}"));
                    }
                }
                (c, v) => problems.push(format!("{name} {p:?} x={x}: {:?} / {:?}", c.err(), v.err())),
            }
        }
    }
    // the inversion contour may sit anywhere in the strip
    let g = entry("gamma", &[("alpha", 2.5)]);
    for x in linspace(0.1, 8.0, 20) {
        let lo = density_entry(&g, x, &InversionSpec::with_abscissa(-1.0)).unwrap();
        let hi = density_entry(&g, x, &InversionSpec::with_abscissa(1.5)).unwrap();
        if (lo - hi).abs() > CONTOUR_TOL {
            problems.push(format!("contour dependence at x={x}: {lo} vs {hi}"));
        }
    }
    assert_eq!(g.kind, Kind::Mellin);
    r.line(8, &format!("inverted densities match closed forms (max error {worst:.2e}), contour independent"), &problems);
}

fn criterion_9(r: &mut Report) {
    let s = common::gamma_identity_sweep(10_000, MC_SEED);
    let mut problems = vec![];
    if s.recurrence > 1e-12 {
        problems.push(format!("recurrence {:e}", s.recurrence));
    }
    if s.duplication > 1e-11 {
        problems.push(format!("duplication {:e}", s.duplication));
    }
    if s.reflection > 1e-11 {
        problems.push(format!("reflection {:e}", s.reflection));
    }
    r.line(
        9,
        &format!(
            "log-Gamma identities over 1e4 points (recurrence {:.1e}, duplication {:.1e}, reflection {:.1e})",
            s.recurrence, s.duplication, s.reflection
        ),
        &problems,
    );
}

fn run_cli(args: &[&str], env_seed: Option<&str>) -> (i32, Vec<u8>) {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_gml"));
    cmd.args(args).env_remove("GML_SEED");
    if let Some(seed) = env_seed {
        cmd.env("GML_SEED", seed);
    }
    let out = cmd.output().expect("run gml");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_10(r: &mut Report) {
    let runs: Vec<(Vec<&str>, Option<&str>)> = vec![
        (vec!["verify-mc", "rayleigh", "--s-grid", "0.5,1,2", "--n", "200000", "--seed", "11"], None),
        (vec!["verify-mc", "logistic", "--s-grid", "-0.5,0.5", "--n", "100000"], Some("5")),
        (vec!["sample", "beta_product", "--params", "a=1.5", "b=2", "c=3", "d=0.5", "--n", "50000", "--seed", "3"], None),
        (vec!["sample", "linnik", "--params", "alpha=1.5", "--n", "40000", "--seed", "9", "--format", "jsonl"], None),
        (vec!["sample", "stirling_blocks", "--params", "k=3", "--n", "30000"], Some("17")),
    ];
    let mut problems = vec![];
    for (args, seed) in &runs {
        let first = run_cli(args, *seed);
        let second = run_cli(args, *seed);
        if first.0 != 0 || first.1.is_empty() {
            problems.push(format!("{args:?}: exit {} with {} bytes", first.0, first.1.len()));
        } else if first != second {
            problems.push(format!("{args:?}: outputs differ"));
        }
    }
    r.line(10, &format!("{} seeded CLI invocations are byte-identical on repeat", runs.len()), &problems);
}

fn main() {
    let mut r = Report { failed: vec![] };
    criterion_1(&mut r);
    criterion_2(&mut r);
    criterion_3(&mut r);
    criterion_4(&mut r);
    criterion_5(&mut r);
    criterion_6(&mut r);
    criterion_7(&mut r);
    criterion_8(&mut r);
    criterion_9(&mut r);
    criterion_10(&mut r);
    if r.failed.is_empty() {
        println!("acceptance: all 10 criteria passed");
    } else {
        println!("acceptance: failed criteria {:?}", r.failed);
        std::process::exit(1);
    }
}
