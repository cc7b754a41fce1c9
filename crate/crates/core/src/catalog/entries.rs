use std::f64::consts::{LN_2, PI};

use super::{Built, ClosedDensity, EntryDef, EntryInfo, Kind, KnownDiscrepancy, ParamSpec, Params, Support, TabulatedProfile};
use crate::error::{Error, Result};
use crate::gtform::{GammaFactor, GammaTypeForm, Scalar};
use crate::specfun::ln_gamma_pos;
use crate::stochastics::{Leaf, SampleRecipe};

const INF: f64 = f64::INFINITY;

fn sc(x: f64) -> Scalar {
    Scalar::from_f64(x)
}

fn int(n: i64) -> Scalar {
    Scalar::int(n)
}

fn q(n: i64, d: i64) -> Scalar {
    Scalar::ratio(n, d)
}

fn half() -> Scalar {
    q(1, 2)
}

fn lg(x: f64) -> f64 {
    ln_gamma_pos(x)
}

fn fct(n: i64) -> f64 {
    lg(n as f64 + 1.0).exp()
}

type Factors = Vec<(Scalar, Scalar)>;

fn form(ln_c: f64, log_scale: f64, num: Factors, den: Factors) -> Result<GammaTypeForm> {
    let mk = |v: Factors| v.into_iter().map(|(a, b)| GammaFactor::new(a, b)).collect::<Result<Vec<_>>>();
    GammaTypeForm::new(ln_c.exp(), log_scale, mk(num)?, mk(den)?)
}

fn leaf(l: Leaf) -> SampleRecipe {
    SampleRecipe::leaf(l)
}

fn expo() -> SampleRecipe {
    leaf(Leaf::Exponential)
}

fn gam(shape: f64) -> SampleRecipe {
    if shape == 1.0 {
        expo()
    } else {
        leaf(Leaf::Gamma { shape })
    }
}

fn pstable(alpha: f64) -> SampleRecipe {
    leaf(Leaf::PositiveStable { alpha })
}

fn get(p: &Params, name: &str) -> f64 {
    p.get(name).expect("parameters are validated before building")
}

fn get_int(p: &Params, name: &str) -> i64 {
    get(p, name) as i64
}

fn require(entry: &str, ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::param(entry, msg()))
    }
}

#[allow(clippy::too_many_arguments)]
fn tab(
    rho_minus: f64,
    rho_plus: f64,
    gamma: Scalar,
    gamma_prime: Scalar,
    delta: Scalar,
    kappa: Option<f64>,
    c1: Option<f64>,
) -> TabulatedProfile {
    TabulatedProfile { rho_minus, rho_plus, gamma, gamma_prime, delta, kappa, c1 }
}

impl Built {
    fn new(form: GammaTypeForm, support: Support) -> Self {
        Built { form, support, recipe: None, density: None, tabulated: None, discrepancies: vec![] }
    }

    fn recipe(mut self, r: SampleRecipe) -> Self {
        self.recipe = Some(r);
        self
    }

    fn density(mut self, d: ClosedDensity) -> Self {
        self.density = Some(d);
        self
    }

    fn tab(mut self, t: TabulatedProfile) -> Self {
        self.tabulated = Some(t);
        self
    }

    fn discrepancy(mut self, field: &'static str, quoted: f64, corrected: f64, reason: &str) -> Self {
        self.discrepancies.push(KnownDiscrepancy { field, quoted, corrected, reason: reason.to_string() });
        self
    }
}

const fn real(name: &'static str, constraint: &'static str) -> ParamSpec {
    ParamSpec { name, integer: false, constraint }
}

const fn integer(name: &'static str, constraint: &'static str) -> ParamSpec {
    ParamSpec { name, integer: true, constraint }
}

const fn entry(
    name: &'static str,
    label: &'static str,
    kind: Kind,
    symmetric: bool,
    params: &'static [ParamSpec],
    build: fn(&Params) -> Result<Built>,
) -> EntryDef {
    EntryDef { info: EntryInfo { name, label, kind, symmetric, params }, build }
}

use Kind::{Mellin, Mgf};

pub(crate) static REGISTRY: &[EntryDef] = &[
    entry("exponential", "exponential Exp(1)", Mellin, false, &[], exponential),
    entry("gamma", "gamma G_alpha", Mellin, false, &[real("alpha", "alpha > 0")], gamma),
    entry("beta", "beta B_{alpha,beta}", Mellin, false, &[real("alpha", "alpha > 0"), real("beta", "beta > 0")], beta),
    entry("uniform", "uniform U(0,1)", Mellin, false, &[], uniform),
    entry("positive_stable", "positive stable S_alpha", Mellin, false, &[real("alpha", "0 < alpha < 1")], positive_stable),
    entry("mittag_leffler", "Mittag-Leffler S_alpha^{-alpha}", Mellin, false, &[real("alpha", "0 < alpha < 1")], mittag_leffler),
    entry("rayleigh", "Rayleigh (chi with 2 degrees of freedom)", Mellin, false, &[], rayleigh),
    entry("maxwell", "Maxwell (chi with 3 degrees of freedom)", Mellin, false, &[], maxwell),
    entry("type2_beta", "type-2 Beta", Mellin, false, &[real("alpha", "alpha > 0"), real("beta", "beta > 0")], type2_beta),
    entry("half_cauchy", "|Cauchy|", Mellin, true, &[], half_cauchy),
    entry(
        "beta_product",
        "product of Beta variables G(a,c;a+b,c+d)",
        Mellin,
        false,
        &[real("a", "see conditions"), real("b", "see conditions"), real("c", "see conditions"), real("d", "see conditions")],
        beta_product,
    ),
    entry("ise_density0", "ISE density at 0", Mellin, false, &[], ise_density0),
    entry("average_ise", "|X| for the average ISE measure", Mellin, true, &[], average_ise),
    entry("stirling_blocks", "block sizes in random k-Stirling permutations", Mellin, false, &[integer("k", "k >= 2")], stirling_blocks),
    entry(
        "ball_distance",
        "distance between two uniform points in an n-ball",
        Mellin,
        false,
        &[integer("n", "n >= 1"), real("a", "radius a > 0")],
        ball_distance,
    ),
    entry("pa_w", "preferential attachment limit W_alpha", Mellin, false, &[real("alpha", "alpha >= 1/2")], pa_w),
    entry("pa_k", "preferential attachment degree limit K_alpha", Mellin, false, &[real("alpha", "alpha >= 1/2")], pa_k),
    entry("max_exp", "maximum M_n of n exponentials", Mgf, false, &[integer("n", "n >= 1")], max_exp),
    entry(
        "mth_max_exp",
        "m-th largest M_n^(m) of n exponentials",
        Mgf,
        false,
        &[integer("n", "n >= 1"), integer("m", "1 <= m <= n")],
        mth_max_exp,
    ),
    entry("gumbel", "Gumbel W", Mgf, false, &[], gumbel),
    entry("gumbel_mth", "W^(m) = -log Gamma_m", Mgf, false, &[integer("m", "m >= 1")], gumbel_mth),
    entry("logistic", "logistic", Mgf, false, &[], logistic),
    entry(
        "selberg_beta",
        "squared discriminant of n Beta points",
        Mellin,
        false,
        &[integer("n", "n >= 2"), real("alpha", "alpha > 0"), real("beta", "beta > 0")],
        selberg_beta,
    ),
    entry(
        "selberg_gamma",
        "squared discriminant of n Gamma points",
        Mellin,
        false,
        &[integer("n", "n >= 2"), real("alpha", "alpha > 0")],
        selberg_gamma,
    ),
    entry("selberg_normal", "squared discriminant of n normal points", Mellin, false, &[integer("n", "n >= 2")], selberg_normal),
    entry("symmetric_stable", "|symmetric stable|", Mellin, true, &[real("alpha", "0 < alpha <= 2")], symmetric_stable),
    entry("cauchy_product", "|product of k Cauchy variables|", Mellin, true, &[integer("k", "k >= 1")], cauchy_product),
    entry(
        "hyperbolic_secant",
        "sum of t hyperbolic secant variables",
        Mgf,
        false,
        &[real("t", "integer t >= 1; other t are not of Gamma type")],
        hyperbolic_secant,
    ),
    entry("lamperti", "Lamperti variable L_alpha", Mellin, false, &[real("alpha", "0 < alpha < 1")], lamperti),
    entry("lamperti_power", "power L_alpha^alpha of a Lamperti variable", Mellin, false, &[real("alpha", "0 < alpha < 1")], lamperti_power),
    entry(
        "kotz_ostrovskii",
        "Y_{alpha,beta} = L_{alpha/beta}^{1/beta}",
        Mellin,
        false,
        &[real("alpha", "0 < alpha < beta"), real("beta", "beta <= 2")],
        kotz_ostrovskii,
    ),
    entry(
        "tilted_stable",
        "polynomially tilted positive stable S_{alpha,theta}",
        Mellin,
        false,
        &[real("alpha", "0 < alpha < 1"), real("theta", "theta > -alpha")],
        tilted_stable,
    ),
    entry(
        "stable_ratio_tilted",
        "S_alpha / S_{alpha,theta}",
        Mellin,
        false,
        &[real("alpha", "0 < alpha < 1"), real("theta", "theta > -alpha")],
        stable_ratio_tilted,
    ),
    entry("generalized_exponential", "V_beta with density proportional to e^{-x^beta}", Mellin, false, &[real("beta", "beta > 0")], generalized_exponential),
    entry("linnik", "|Linnik|", Mellin, true, &[real("alpha", "0 < alpha <= 2")], linnik),
    entry(
        "linnik_general",
        "|S~_alpha| V_beta^{beta/alpha}",
        Mellin,
        true,
        &[real("alpha", "0 < alpha <= 2"), real("beta", "beta > 0")],
        linnik_general,
    ),
];

fn exponential(_: &Params) -> Result<Built> {
    let f = form(0.0, 0.0, vec![(int(1), int(1))], vec![])?;
    Ok(Built::new(f, Support::POSITIVE).recipe(expo()).density(ClosedDensity::Exponential))
}

fn gamma(p: &Params) -> Result<Built> {
    let a = get(p, "alpha");
    require("gamma", a > 0.0, || format!("alpha must be positive, got {a}"))?;
    let f = form(-lg(a), 0.0, vec![(int(1), sc(a))], vec![])?;
    Ok(Built::new(f, Support::POSITIVE).recipe(gam(a)).density(ClosedDensity::Gamma { shape: a }))
}

fn beta(p: &Params) -> Result<Built> {
    let (a, b) = (get(p, "alpha"), get(p, "beta"));
    require("beta", a > 0.0 && b > 0.0, || format!("alpha and beta must be positive, got {a}, {b}"))?;
    let f = form(lg(a + b) - lg(a), 0.0, vec![(int(1), sc(a))], vec![(int(1), sc(a) + sc(b))])?;
    Ok(Built::new(f, Support { lo: 0.0, hi: 1.0 })
        .recipe(leaf(Leaf::Beta { a, b }))
        .density(ClosedDensity::Beta { a, b }))
}

fn uniform(_: &Params) -> Result<Built> {
    let f = form(0.0, 0.0, vec![(int(1), int(1))], vec![(int(1), int(2))])?;
    Ok(Built::new(f, Support { lo: 0.0, hi: 1.0 }).recipe(leaf(Leaf::Uniform)).density(ClosedDensity::Uniform))
}

fn stable_index(entry: &str, p: &Params) -> Result<f64> {
    let a = get(p, "alpha");
    require(entry, a > 0.0 && a < 1.0, || format!("alpha must lie in (0, 1), got {a}"))?;
    Ok(a)
}

fn positive_stable(p: &Params) -> Result<Built> {
    let a = stable_index("positive_stable", p)?;
    let f = form(0.0, 0.0, vec![(int(-1) / sc(a), int(1))], vec![(int(-1), int(1))])?;
    Ok(Built::new(f, Support::POSITIVE).recipe(pstable(a)))
}

fn mittag_leffler(p: &Params) -> Result<Built> {
    let a = stable_index("mittag_leffler", p)?;
    let f = form(0.0, 0.0, vec![(int(1), int(1))], vec![(sc(a), int(1))])?;
    Ok(Built::new(f, Support::POSITIVE).recipe(pstable(a).pow(-a)))
}

fn rayleigh(_: &Params) -> Result<Built> {
    let f = form(0.0, 0.5 * LN_2, vec![(half(), int(1))], vec![])?;
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(expo().scale(2.0).pow(0.5))
        .density(ClosedDensity::Rayleigh)
        .tab(tab(-2.0, INF, half(), half(), half(), Some(0.0), Some(PI.sqrt()))))
}

fn maxwell(_: &Params) -> Result<Built> {
    let f = form((2.0 / PI.sqrt()).ln(), 0.5 * LN_2, vec![(half(), q(3, 2))], vec![])?;
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(gam(1.5).scale(2.0).pow(0.5))
        .density(ClosedDensity::Maxwell)
        .tab(tab(-3.0, INF, half(), half(), int(1), Some(0.0), Some(2f64.sqrt()))))
}

fn type2_beta(p: &Params) -> Result<Built> {
    let (a, b) = (get(p, "alpha"), get(p, "beta"));
    require("type2_beta", a > 0.0 && b > 0.0, || format!("alpha and beta must be positive, got {a}, {b}"))?;
    let ln_c = -lg(a) - lg(b);
    let f = form(ln_c, 0.0, vec![(int(1), sc(a)), (int(-1), sc(b))], vec![])?;
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(SampleRecipe::product(vec![gam(a), gam(b).pow(-1.0)]))
        .density(ClosedDensity::Type2Beta { a, b })
        .tab(tab(-a, b, int(2), int(0), sc(a) + sc(b) - int(1), Some(0.0), Some(2.0 * PI * ln_c.exp()))))
}

fn half_cauchy(_: &Params) -> Result<Built> {
    let f = form(-PI.ln(), 0.0, vec![(half(), half()), (-half(), half())], vec![])?;
    Ok(Built::new(f, Support::LINE)
        .recipe(leaf(Leaf::Cauchy).abs())
        .density(ClosedDensity::Cauchy)
        .tab(tab(-1.0, 1.0, int(1), int(0), int(0), Some(0.0), Some(2.0))))
}

/// Degenerate Beta parameters (α, β) that collapse G(a,c;a+b,c+d) by one
/// cancelling pair, in the order b = 0, d = 0, a + b = c, c + d = a.
fn beta_product_degenerations(a: Scalar, b: Scalar, c: Scalar, d: Scalar) -> Vec<(&'static str, Scalar, Scalar)> {
    let mut out = vec![];
    if b.approx_eq(int(0)) {
        out.push(("b = 0", c, d));
    }
    if d.approx_eq(int(0)) {
        out.push(("d = 0", a, b));
    }
    if (a + b).approx_eq(c) {
        out.push(("a + b = c", a, b + d));
    }
    if (c + d).approx_eq(a) {
        out.push(("c + d = a", c, b + d));
    }
    out
}

fn beta_product(p: &Params) -> Result<Built> {
    let (a, b, c, d) = (get(p, "a"), get(p, "b"), get(p, "c"), get(p, "d"));
    let (sa, sb, sc_, sd) = (sc(a), sc(b), sc(c), sc(d));
    let mut failed_i = vec![];
    if !(a > 0.0) {
        failed_i.push("a > 0");
    }
    if !(c > 0.0) {
        failed_i.push("c > 0");
    }
    if !(b + d > 0.0) {
        failed_i.push("b + d > 0");
    }
    if !((a + b).min(c + d) > a.min(c)) {
        failed_i.push("min(a+b, c+d) > min(a, c)");
    }
    let degenerate = beta_product_degenerations(sa, sb, sc_, sd);
    if failed_i.is_empty() {
        let ln_c = lg(a + b) + lg(c + d) - lg(a) - lg(c);
        let f = form(ln_c, 0.0, vec![(int(1), sa), (int(1), sc_)], vec![(int(1), sa + sb), (int(1), sc_ + sd)])?;
        let mut built = Built::new(f, Support { lo: 0.0, hi: 1.0 });
        if a > 0.0 && b > 0.0 && c > 0.0 && d > 0.0 {
            built = built.recipe(SampleRecipe::product(vec![leaf(Leaf::Beta { a, b }), leaf(Leaf::Beta { a: c, b: d })]));
        } else if c + d - a > 0.0 && a + b - c > 0.0 {
            built = built.recipe(SampleRecipe::product(vec![
                leaf(Leaf::Beta { a, b: c + d - a }),
                leaf(Leaf::Beta { a: c, b: a + b - c }),
            ]));
        }
        if degenerate.is_empty() {
            built = built.tab(tab(-a.min(c), INF, int(0), int(0), -sb - sd, Some(0.0), Some(ln_c.exp())));
        }
        return Ok(built);
    }
    let why_ii = if degenerate.is_empty() {
        "no degeneracy b = 0, d = 0, a + b = c or c + d = a holds".to_string()
    } else {
        degenerate
            .iter()
            .map(|(case, al, be)| format!("{case} gives Beta({al}, {be}), which needs alpha > 0 and beta >= 0"))
            .collect::<Vec<_>>()
            .join("; ")
    };
    let Some(&(_, al, be)) = degenerate.iter().find(|(_, al, be)| al.to_f64() > 0.0 && be.to_f64() >= 0.0) else {
        return Err(Error::param(
            "beta_product",
            format!("condition (i) fails ({}) and condition (ii) fails ({why_ii})", failed_i.join(", ")),
        ));
    };
    let (alf, bef) = (al.to_f64(), be.to_f64());
    if be.is_zero() {
        return Ok(Built::new(GammaTypeForm::one(), Support { lo: 0.0, hi: INF }));
    }
    let f = form(lg(alf + bef) - lg(alf), 0.0, vec![(int(1), al)], vec![(int(1), al + be)])?;
    Ok(Built::new(f, Support { lo: 0.0, hi: 1.0 })
        .recipe(leaf(Leaf::Beta { a: alf, b: bef }))
        .density(ClosedDensity::Beta { a: alf, b: bef }))
}

fn ise_density0(_: &Params) -> Result<Built> {
    let f = form(0.0, 0.25 * LN_2 - 3f64.ln(), vec![(q(3, 4), int(1))], vec![(half(), int(1))])?;
    let kappa = -0.75 * LN_2 - 0.25 * 3f64.ln();
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(pstable(2.0 / 3.0).pow(-0.5).scale(2f64.powf(0.25) / 3.0))
        .tab(tab(-4.0 / 3.0, INF, q(1, 4), q(1, 4), int(0), Some(kappa), Some(1.5f64.sqrt()))))
}

fn average_ise(_: &Params) -> Result<Built> {
    let f = form(-0.5 * PI.ln(), 0.75 * LN_2, vec![(half(), half()), (q(1, 4), int(1))], vec![])?;
    Ok(Built::new(f, Support::LINE)
        .recipe(SampleRecipe::product(vec![leaf(Leaf::Normal).abs(), expo().scale(2.0).pow(0.25)]))
        .tab(tab(-1.0, INF, q(3, 4), q(3, 4), half(), Some(-0.25 * LN_2), Some(PI.sqrt()))))
}

fn stirling_blocks(p: &Params) -> Result<Built> {
    let k = get_int(p, "k");
    require("stirling_blocks", k >= 2, || format!("k must be at least 2, got {k}"))?;
    let kf = k as f64;
    let f = form(lg(1.0 + 1.0 / kf), 0.0, vec![(int(1), int(2))], vec![(q(1, k), q(k + 1, k))])?;
    // Gauss multiplication turns Γ(s+2)/Γ((s+1)/k+1) into k^s ∏_{j=2}^{k} Γ((s+j)/k)
    let recipe = SampleRecipe::product((2..=k).map(|j| gam(j as f64 / kf).pow(1.0 / kf)).collect()).scale(kf);
    let g = q(k - 1, k);
    let c1 = kf.powf((kf + 2.0) / (2.0 * kf)) * lg((kf + 1.0) / kf).exp();
    Ok(Built::new(f, Support::POSITIVE).recipe(recipe).tab(tab(-2.0, INF, g, g, g, Some(kf.ln() / kf), Some(c1))))
}

fn ball_distance(p: &Params) -> Result<Built> {
    let n = get_int(p, "n");
    let a = get(p, "a");
    require("ball_distance", n >= 1, || format!("n must be at least 1, got {n}"))?;
    require("ball_distance", a > 0.0, || format!("a must be positive, got {a}"))?;
    let nf = n as f64;
    let ln_c = nf.ln() + lg(nf + 1.0) - lg(0.5 * nf + 0.5);
    let f = form(
        ln_c,
        (2.0 * a).ln(),
        vec![(int(1), int(n)), (half(), q(n + 1, 2))],
        vec![(int(1), int(n + 1)), (half(), int(n + 1))],
    )?;
    let h = 0.5 * (nf + 1.0);
    let recipe = SampleRecipe::product(vec![leaf(Leaf::Uniform).pow(1.0 / nf), leaf(Leaf::Beta { a: h, b: h }).pow(0.5)])
        .scale(2.0 * a);
    let c1 = 2f64.powf(h) * ln_c.exp();
    Ok(Built::new(f, Support { lo: 0.0, hi: 2.0 * a })
        .recipe(recipe)
        .density(ClosedDensity::BallDistance { n: n as u32, radius: a })
        .tab(tab(-nf, INF, int(0), int(0), -q(n + 3, 2), Some((2.0 * a).ln()), Some(c1))))
}

/// Γ(α)Γ(s+1)/Γ(s/2+α), scaled by (α/2)^{s/2} for K_α. Defined for any
/// α > 0, including those for which no random variable exists.
pub(crate) fn pa_form(name: &str, alpha: f64) -> Result<GammaTypeForm> {
    require(name, alpha > 0.0 && alpha.is_finite(), || format!("alpha must be positive, got {alpha}"))?;
    let log_scale = if name == "pa_k" { 0.5 * (alpha / 2.0).ln() } else { 0.0 };
    form(lg(alpha), log_scale, vec![(int(1), int(1))], vec![(half(), sc(alpha))])
}

fn pa_alpha(name: &str, p: &Params) -> Result<f64> {
    let a = get(p, "alpha");
    require(name, a >= 0.5, || format!("alpha must be at least 1/2, got {a}"))?;
    Ok(a)
}

/// T·B_{1/2,α-1/2}, or T alone at α = 1/2.
fn pa_core(a: f64) -> SampleRecipe {
    if a == 0.5 {
        expo()
    } else {
        SampleRecipe::product(vec![expo(), leaf(Leaf::Beta { a: 0.5, b: a - 0.5 })])
    }
}

fn pa_w(p: &Params) -> Result<Built> {
    let a = pa_alpha("pa_w", p)?;
    Ok(Built::new(pa_form("pa_w", a)?, Support::POSITIVE).recipe(pa_core(a).pow(0.5).scale(2.0)))
}

fn pa_k(p: &Params) -> Result<Built> {
    let a = pa_alpha("pa_k", p)?;
    let rho_minus = if a == 0.5 { -2.0 } else { -1.0 };
    let c1 = 2f64.powf(a - 0.5) * lg(a).exp();
    let mut b = Built::new(pa_form("pa_k", a)?, Support::POSITIVE)
        .recipe(pa_core(a).scale(2.0 * a).pow(0.5))
        .tab(tab(rho_minus, INF, half(), half(), int(1) - sc(a), Some(0.5 * a.ln()), Some(c1)));
    if a == 0.5 {
        b = b.density(ClosedDensity::KHalf);
    }
    Ok(b)
}

fn max_exp(p: &Params) -> Result<Built> {
    let n = get_int(p, "n");
    require("max_exp", n >= 1, || format!("n must be at least 1, got {n}"))?;
    let f = form(lg(n as f64 + 1.0), 0.0, vec![(int(-1), int(1))], vec![(int(-1), int(n + 1))])?;
    let recipe = SampleRecipe::sum((1..=n).map(|j| expo().scale(1.0 / j as f64)).collect());
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(recipe)
        .density(ClosedDensity::MaxExp { n: n as u32, m: 1 })
        .tab(tab(-INF, 1.0, int(0), int(0), int(-n), Some(0.0), Some(fct(n)))))
}

fn mth_max_exp(p: &Params) -> Result<Built> {
    let (n, m) = (get_int(p, "n"), get_int(p, "m"));
    require("mth_max_exp", m >= 1 && m <= n, || format!("need 1 <= m <= n, got n = {n}, m = {m}"))?;
    let ln_c = lg(n as f64 + 1.0) - lg(m as f64);
    let f = form(ln_c, 0.0, vec![(int(-1), int(m))], vec![(int(-1), int(n + 1))])?;
    let recipe = SampleRecipe::sum((m..=n).map(|j| expo().scale(1.0 / j as f64)).collect());
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(recipe)
        .density(ClosedDensity::MaxExp { n: n as u32, m: m as u32 })
        .tab(tab(-INF, m as f64, int(0), int(0), int(-(n - m + 1)), Some(0.0), Some(ln_c.exp()))))
}

fn gumbel(_: &Params) -> Result<Built> {
    let f = form(0.0, 0.0, vec![(int(-1), int(1))], vec![])?;
    Ok(Built::new(f, Support::LINE)
        .recipe(leaf(Leaf::Gumbel))
        .density(ClosedDensity::GumbelMth { m: 1 })
        .tab(tab(-INF, 1.0, int(1), int(-1), half(), Some(0.0), Some((2.0 * PI).sqrt()))))
}

fn gumbel_mth(p: &Params) -> Result<Built> {
    let m = get_int(p, "m");
    require("gumbel_mth", m >= 1, || format!("m must be at least 1, got {m}"))?;
    let mf = m as f64;
    let f = form(-lg(mf), 0.0, vec![(int(-1), int(m))], vec![])?;
    let recipe = SampleRecipe::sum((0..m).map(|_| expo()).collect()).neg_log();
    Ok(Built::new(f, Support::LINE)
        .recipe(recipe)
        .density(ClosedDensity::GumbelMth { m: m as u32 })
        .tab(tab(-INF, mf, int(1), int(-1), int(m) - half(), Some(0.0), Some((2.0 * PI).sqrt() / fct(m - 1)))))
}

fn logistic(_: &Params) -> Result<Built> {
    let f = form(0.0, 0.0, vec![(int(-1), int(1)), (int(1), int(1))], vec![])?;
    Ok(Built::new(f, Support::LINE)
        .recipe(leaf(Leaf::Logistic))
        .density(ClosedDensity::Logistic)
        .tab(tab(-1.0, 1.0, int(2), int(0), int(1), Some(0.0), Some(2.0 * PI))))
}

fn selberg_n(entry: &str, p: &Params) -> Result<i64> {
    let n = get_int(p, "n");
    require(entry, n >= 2, || format!("n must be at least 2, got {n}"))?;
    require(entry, n <= 64, || format!("n must be at most 64, got {n}"))?;
    Ok(n)
}

fn selberg_beta(p: &Params) -> Result<Built> {
    let n = selberg_n("selberg_beta", p)?;
    let (a, b) = (get(p, "alpha"), get(p, "beta"));
    require("selberg_beta", a > 0.0 && b > 0.0, || format!("alpha and beta must be positive, got {a}, {b}"))?;
    let (sa, sb) = (sc(a), sc(b));
    let mut ln_c = lg(a + b);
    let mut num = vec![];
    let mut den = vec![(int(n - 1), sa + sb)];
    for j in 2..=n {
        ln_c += lg(a + b) - lg(a) - lg(b);
        num.extend([(int(j - 1), sa), (int(j - 1), sb), (int(j), int(1))]);
        den.extend([(int(n + j - 2), sa + sb), (int(1), int(1))]);
    }
    let nf = (n - 1) as f64;
    let rho_minus = (-1.0 / n as f64).max(-a / nf).max(-b / nf);
    Ok(Built::new(form(ln_c, 0.0, num, den)?, Support::POSITIVE)
        .recipe(SampleRecipe::Discriminant { n: n as usize, leaf: Leaf::Beta { a, b } })
        .tab(tab(rho_minus, INF, int(0), int(0), int(1) - sa - sb - q(n, 2), None, None)))
}

fn selberg_gamma(p: &Params) -> Result<Built> {
    let n = selberg_n("selberg_gamma", p)?;
    let a = get(p, "alpha");
    require("selberg_gamma", a > 0.0, || format!("alpha must be positive, got {a}"))?;
    let sa = sc(a);
    let mut num = vec![];
    let mut den = vec![];
    for j in 2..=n {
        num.extend([(int(j - 1), sa), (int(j), int(1))]);
        den.push((int(1), int(1)));
    }
    let ln_c = -((n - 1) as f64) * lg(a);
    let rho_minus = (-1.0 / n as f64).max(-a / (n - 1) as f64);
    let g = int(n * n - n);
    Ok(Built::new(form(ln_c, 0.0, num, den)?, Support::POSITIVE)
        .recipe(SampleRecipe::Discriminant { n: n as usize, leaf: Leaf::Gamma { shape: a } })
        .tab(tab(rho_minus, INF, g, g, int(n - 1) * (sa - half()), None, None)))
}

fn selberg_normal(p: &Params) -> Result<Built> {
    let n = selberg_n("selberg_normal", p)?;
    let num = (2..=n).map(|j| (int(j), int(1))).collect();
    let den = (2..=n).map(|_| (int(1), int(1))).collect();
    let g = q(n * (n - 1), 2);
    let rho_minus = -1.0 / n as f64;
    Ok(Built::new(form(0.0, 0.0, num, den)?, Support::POSITIVE)
        .recipe(SampleRecipe::Discriminant { n: n as usize, leaf: Leaf::Normal })
        .tab(tab(rho_minus, INF, g, g, int(0), None, None))
        .discrepancy("rho_minus", -1.0, rho_minus, "the nearest pole is that of Γ(1+ns) at s = -1/n"))
}

fn symmetric_index(entry: &str, p: &Params) -> Result<f64> {
    let a = get(p, "alpha");
    require(entry, a > 0.0 && a <= 2.0, || format!("alpha must lie in (0, 2], got {a}"))?;
    Ok(a)
}

fn symmetric_stable(p: &Params) -> Result<Built> {
    let a = symmetric_index("symmetric_stable", p)?;
    let inv = int(1) / sc(a);
    let f = form(-0.5 * PI.ln(), LN_2, vec![(half(), half()), (-inv, int(1))], vec![(-half(), int(1))])?;
    let mut b = Built::new(f, Support::LINE).recipe(leaf(Leaf::SymmetricStable { alpha: a }).abs()).tab(tab(
        -1.0,
        if a < 2.0 { a } else { INF },
        inv,
        int(1) - inv,
        int(0),
        Some(a.ln() / a),
        Some((4.0 / a).sqrt()),
    ));
    if a == 1.0 {
        b = b.density(ClosedDensity::Cauchy);
    } else if a == 2.0 {
        b = b.density(ClosedDensity::Normal { var: 2.0 });
    }
    Ok(b)
}

fn cauchy_product(p: &Params) -> Result<Built> {
    let k = get_int(p, "k");
    require("cauchy_product", (1..=64).contains(&k), || format!("k must lie in [1, 64], got {k}"))?;
    let mut num = vec![];
    for _ in 0..k {
        num.extend([(half(), half()), (-half(), half())]);
    }
    let f = form(-(k as f64) * PI.ln(), 0.0, num, vec![])?;
    let recipe = SampleRecipe::product((0..k).map(|_| leaf(Leaf::Cauchy)).collect()).abs();
    let mut b = Built::new(f, Support::LINE)
        .recipe(recipe)
        .tab(tab(-1.0, 1.0, int(k), int(0), int(0), Some(0.0), Some(2f64.powi(k as i32))));
    match k {
        1 => b = b.density(ClosedDensity::Cauchy),
        2 => b = b.density(ClosedDensity::CauchyProduct2),
        _ => {}
    }
    Ok(b)
}

fn hyperbolic_secant(p: &Params) -> Result<Built> {
    let t = get(p, "t");
    if t != t.round() {
        return Err(Error::Unrepresentable(format!(
            "hyperbolic_secant with t = {t}: the moment generating function cannot be extended to a meromorphic function, so it is not of Gamma type"
        )));
    }
    let k = t as i64;
    require("hyperbolic_secant", (1..=64).contains(&k), || format!("t must be an integer in [1, 64], got {t}"))?;
    let slope = Scalar::Approx(1.0 / PI);
    let mut num = vec![];
    for _ in 0..k {
        num.extend([(slope, half()), (-slope, half())]);
    }
    let f = form(-(k as f64) * PI.ln(), 0.0, num, vec![])?;
    let recipe = SampleRecipe::product((0..k).map(|_| leaf(Leaf::Cauchy)).collect()).abs().neg_log().scale(-2.0 / PI);
    Ok(Built::new(f, Support::LINE)
        .recipe(recipe)
        .density(ClosedDensity::HyperbolicSecant { k: k as u32 })
        .tab(tab(-PI / 2.0, PI / 2.0, Scalar::Approx(2.0 * k as f64 / PI), int(0), int(0), Some(0.0), Some(2f64.powi(k as i32)))))
}

fn lamperti_ratio(alpha: f64) -> SampleRecipe {
    SampleRecipe::product(vec![pstable(alpha), pstable(alpha).pow(-1.0)])
}

fn lamperti(p: &Params) -> Result<Built> {
    let a = stable_index("lamperti", p)?;
    let inv = int(1) / sc(a);
    let f = form(0.0, 0.0, vec![(-inv, int(1)), (inv, int(1))], vec![(int(-1), int(1)), (int(1), int(1))])?;
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(lamperti_ratio(a))
        .density(ClosedDensity::Lamperti { alpha: a })
        .tab(tab(-a, a, int(2) * inv - int(2), int(0), int(0), Some(0.0), Some(1.0 / a))))
}

fn lamperti_power(p: &Params) -> Result<Built> {
    let a = stable_index("lamperti_power", p)?;
    let sa = sc(a);
    let f = form(0.0, 0.0, vec![(int(-1), int(1)), (int(1), int(1))], vec![(-sa, int(1)), (sa, int(1))])?;
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(lamperti_ratio(a).pow(a))
        .density(ClosedDensity::LampertiPower { alpha: a })
        .tab(tab(-1.0, 1.0, int(2) - int(2) * sa, int(0), int(0), Some(0.0), Some(1.0 / a))))
}

fn kotz_ostrovskii(p: &Params) -> Result<Built> {
    let (a, b) = (get(p, "alpha"), get(p, "beta"));
    require("kotz_ostrovskii", a > 0.0 && a < b && b <= 2.0, || format!("need 0 < alpha < beta <= 2, got {a}, {b}"))?;
    let (ia, ib) = (int(1) / sc(a), int(1) / sc(b));
    let f = form(0.0, 0.0, vec![(ia, int(1)), (-ia, int(1))], vec![(ib, int(1)), (-ib, int(1))])?;
    let gamma = int(2) * ia - int(2) * ib;
    let mut built = Built::new(f, Support::POSITIVE)
        .recipe(lamperti_ratio(a / b).pow(1.0 / b))
        .density(ClosedDensity::KotzOstrovskii { alpha: a, beta: b })
        .tab(tab(-a, a, gamma, int(0), int(0), Some(0.0), Some(b / a)));
    if b != 1.0 {
        built = built
            .discrepancy("gamma", 2.0 / a - 2.0, gamma.to_f64(), "the denominator contributes 2/beta, not 2")
            .discrepancy("c1", 1.0 / a, b / a, "the denominator slopes 1/beta contribute a factor beta");
    }
    Ok(built)
}

fn tilted_params(entry: &str, p: &Params) -> Result<(f64, f64)> {
    let a = stable_index(entry, p)?;
    let t = get(p, "theta");
    require(entry, t > -a, || format!("theta must exceed -alpha = {}, got {t}", -a))?;
    Ok((a, t))
}

fn tilted_stable(p: &Params) -> Result<Built> {
    let (a, t) = tilted_params("tilted_stable", p)?;
    let (ia, st) = (int(1) / sc(a), sc(t));
    let ln_c = lg(1.0 + t) - lg(1.0 + t / a);
    let f = form(ln_c, 0.0, vec![(-ia, int(1) + st * ia)], vec![(int(-1), int(1) + st)])?;
    Ok(Built::new(f, Support::POSITIVE))
}

fn stable_ratio_tilted(p: &Params) -> Result<Built> {
    let (a, t) = tilted_params("stable_ratio_tilted", p)?;
    let (ia, st) = (int(1) / sc(a), sc(t));
    let ln_c = lg(1.0 + t) - lg(1.0 + t / a);
    let f = form(
        ln_c,
        0.0,
        vec![(-ia, int(1)), (ia, int(1) + st * ia)],
        vec![(int(-1), int(1)), (int(1), int(1) + st)],
    )?;
    Ok(Built::new(f, Support::POSITIVE).tab(tab(
        -a - t,
        a,
        int(2) * (ia - int(1)),
        int(0),
        st * (ia - int(1)),
        Some(0.0),
        None,
    )))
}

fn generalized_exponential(p: &Params) -> Result<Built> {
    let b = get(p, "beta");
    require("generalized_exponential", b > 0.0, || format!("beta must be positive, got {b}"))?;
    let ib = int(1) / sc(b);
    let f = form(-lg(1.0 / b), 0.0, vec![(ib, ib)], vec![])?;
    Ok(Built::new(f, Support::POSITIVE)
        .recipe(gam(1.0 / b).pow(1.0 / b))
        .density(ClosedDensity::GeneralizedExponential { beta: b })
        .tab(tab(-1.0, INF, ib, ib, ib - half(), Some(-b.ln() / b), None)))
}

fn linnik(p: &Params) -> Result<Built> {
    let a = symmetric_index("linnik", p)?;
    let ia = int(1) / sc(a);
    let f = form(
        -0.5 * PI.ln(),
        LN_2,
        vec![(half(), half()), (ia, int(1)), (-ia, int(1))],
        vec![(-half(), int(1))],
    )?;
    let c1 = 2.0 * (2.0 * PI).sqrt() / a;
    let mut b = Built::new(f, Support::LINE)
        .recipe(SampleRecipe::product(vec![leaf(Leaf::SymmetricStable { alpha: a }).abs(), expo().pow(1.0 / a)]))
        .tab(tab(-a.min(1.0), if a < 2.0 { a } else { INF }, int(2) * ia, int(1), half(), Some(0.0), Some(c1)))
        .discrepancy("c1", (2.0 * PI).sqrt(), c1, "the slopes ±1/alpha contribute a factor 2/alpha");
    if a == 2.0 {
        b = b
            .density(ClosedDensity::Laplace)
            .discrepancy("rho_plus", 2.0, INF, "Γ(1 - s/2) cancels at alpha = 2, leaving no pole to the right");
    }
    Ok(b)
}

fn linnik_general(p: &Params) -> Result<Built> {
    let a = symmetric_index("linnik_general", p)?;
    let b = get(p, "beta");
    require("linnik_general", b > 0.0, || format!("beta must be positive, got {b}"))?;
    let (ia, ib) = (int(1) / sc(a), int(1) / sc(b));
    let f = form(
        -0.5 * PI.ln() - lg(1.0 / b),
        LN_2,
        vec![(half(), half()), (-ia, int(1)), (ia, ib)],
        vec![(-half(), int(1))],
    )?;
    let rho_minus = -(a / b).min(1.0);
    let mut built = Built::new(f, Support::LINE)
        .recipe(SampleRecipe::product(vec![leaf(Leaf::SymmetricStable { alpha: a }).abs(), gam(1.0 / b).pow(1.0 / a)]))
        .tab(tab(rho_minus, if a < 2.0 { a } else { INF }, int(2) * ia, int(1), ib - half(), Some(0.0), None));
    if a > b {
        built = built.discrepancy("rho_minus", -a / b, rho_minus, "Γ((s+1)/2) has a pole at s = -1");
    }
    Ok(built)
}
