//! Numerical inversion of Gamma-type moment functions.
//!
//! For F(s) = E X^s the density is
//! f(x) = (1/π) ∫_0^∞ Re[x^{-c-1-it} F(c+it)] dt,
//! and for F(s) = E e^{sX} it is
//! f(x) = (1/π) ∫_0^∞ Re[e^{-(c+it)x} F(c+it)] dt,
//! for any c inside the strip. Both use F(c-it) = conj F(c+it). The
//! integrand decays like e^{-πγt/2}, which fixes the truncation point.

use std::f64::consts::PI;

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::catalog::{DistributionEntry, Kind};
use crate::error::{Error, Result};
use crate::gtform::{AnalyticityStrip, GammaTypeForm, LogValue};
use crate::quad::{integrate_panels, QuadOptions};

/// Default absolute accuracy of an inverted density value.
pub const DEFAULT_TOL: f64 = 1e-10;

/// Trapezoid mass must lie within this distance of 1.
pub const NORMALIZATION_TOL: f64 = 1e-4;

const MAX_TRUNCATION: f64 = 1e5;
const MAX_PANELS: usize = 20_000;

/// Contour and accuracy settings. Unset fields are chosen from the strip
/// and the decay rate.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct InversionSpec {
    /// Abscissa c of the vertical contour.
    pub abscissa: Option<f64>,
    /// Truncation point T of the t-integral.
    pub truncation: Option<f64>,
    /// Absolute accuracy target.
    pub tol: f64,
}

impl Default for InversionSpec {
    fn default() -> Self {
        InversionSpec { abscissa: None, truncation: None, tol: DEFAULT_TOL }
    }
}

impl InversionSpec {
    pub fn with_abscissa(c: f64) -> Self {
        InversionSpec { abscissa: Some(c), ..Default::default() }
    }
}

/// Midpoint of a finite strip, half the finite end of a one-sided strip,
/// 0 for the whole plane.
pub fn default_abscissa(strip: &AnalyticityStrip) -> f64 {
    let (lo, hi) = (strip.rho_minus, strip.rho_plus);
    match (lo.is_finite(), hi.is_finite()) {
        (true, true) => 0.5 * (lo + hi),
        (true, false) => 0.5 * lo,
        (false, true) => 0.5 * hi,
        (false, false) => 0.0,
    }
}

/// log|kernel · F| and its phase at t, for a fixed x.
struct Integrand<'a> {
    form: &'a GammaTypeForm,
    kind: Kind,
    c: f64,
    /// ln x for the Mellin kind, x for the mgf kind.
    u: f64,
}

impl Integrand<'_> {
    fn ln_value(&self, t: f64) -> Result<Option<Complex64>> {
        let s = Complex64::new(self.c, t);
        let lf = match self.form.ln_evaluate(s)? {
            LogValue::Zero => return Ok(None),
            LogValue::Finite(l) => l,
        };
        let kernel = match self.kind {
            Kind::Mellin => -(s + 1.0) * self.u,
            Kind::Mgf => -s * self.u,
        };
        Ok(Some(lf + kernel))
    }

    fn eval(&self, t: f64) -> f64 {
        match self.ln_value(t) {
            Ok(Some(l)) => {
                let m = l.re.exp();
                if m == 0.0 {
                    0.0
                } else {
                    m * l.im.cos()
                }
            }
            Ok(None) => 0.0,
            Err(_) => f64::NAN,
        }
    }

    fn modulus(&self, t: f64) -> Result<f64> {
        Ok(self.ln_value(t)?.map_or(0.0, |l| l.re.exp()))
    }
}

fn choose_truncation(g: &Integrand<'_>, gamma: f64, tol: f64) -> Result<f64> {
    let tail = |t: f64| -> Result<f64> { Ok(g.modulus(t)? * 2.0 / (PI * gamma) / PI) };
    let mut t = (4.0 / gamma).max(8.0);
    while t < MAX_TRUNCATION {
        if tail(t)? < 0.1 * tol && tail(1.5 * t)? < 0.1 * tol {
            return Ok(t);
        }
        t *= 2.0;
    }
    Err(Error::InversionUnsupported(format!("integrand has not decayed below {tol:e} by t = {MAX_TRUNCATION}")))
}

/// Breakpoints on [0, T] about half a period apart, where the phase
/// speed is bounded by |u| + |γ′| log(1+T) + |ℓ| + a margin.
fn panel_breaks(form: &GammaTypeForm, u: f64, gamma_prime: f64, t_max: f64) -> Vec<f64> {
    let omega = u.abs() + gamma_prime.abs() * (1.0 + t_max).ln() + form.log_scale().abs() + 2.0;
    let n = ((t_max * omega / PI).ceil() as usize).clamp(4, MAX_PANELS / 4);
    (0..=n).map(|i| t_max * i as f64 / n as f64).collect()
}

/// Density at x of the variable whose moment function (kind) is `form`.
pub fn density(form: &GammaTypeForm, kind: Kind, x: f64, spec: &InversionSpec) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Validation(format!("x must be finite, got {x}")));
    }
    if !(spec.tol > 0.0) {
        return Err(Error::Validation(format!("tolerance must be positive, got {}", spec.tol)));
    }
    let profile = form.asymptotic_profile();
    if !(profile.gamma > 0.0) {
        return Err(Error::InversionUnsupported(format!(
            "gamma = {} <= 0: F does not decay along vertical lines",
            profile.gamma
        )));
    }
    let u = match kind {
        Kind::Mellin if x < 0.0 => return Ok(0.0),
        Kind::Mellin if x == 0.0 => return density_at_origin(form),
        Kind::Mellin => x.ln(),
        Kind::Mgf => x,
    };
    let strip = form.strip()?;
    let c = spec.abscissa.unwrap_or_else(|| default_abscissa(&strip));
    if !strip.contains(c) {
        return Err(Error::OutsideStrip {
            s: c,
            lo: strip.rho_minus,
            hi: strip.rho_plus,
            reason: "the contour must lie inside the strip".into(),
        });
    }
    let g = Integrand { form, kind, c, u };
    let t_max = match spec.truncation {
        Some(t) if t > 0.0 && t.is_finite() => t,
        Some(t) => return Err(Error::Validation(format!("truncation must be positive and finite, got {t}"))),
        None => choose_truncation(&g, profile.gamma, spec.tol)?,
    };
    let breaks = panel_breaks(form, u, profile.gamma_prime, t_max);
    let opts = QuadOptions { abs_tol: 0.5 * PI * spec.tol, rel_tol: 0.0, max_intervals: MAX_PANELS };
    let est = integrate_panels(&mut |t| g.eval(t), &breaks, opts)?;
    Ok(est.value / PI)
}

/// Limit of the Mellin-kind density at x = 0+. Moving the contour left past
/// s = -1 leaves Res_{s=-1} F, so the limit is 0 when the strip extends
/// beyond -1, the residue for a simple pole there, and +∞ otherwise.
fn density_at_origin(form: &GammaTypeForm) -> Result<f64> {
    let rho = form.strip()?.rho_minus;
    if rho < -1.0 - 1e-12 {
        return Ok(0.0);
    }
    if rho > -1.0 + 1e-12 {
        return Ok(f64::INFINITY);
    }
    // g(h) = h F(h - 1) = R + O(h); second-order Richardson on h, h/2, h/4
    let h = 1e-3;
    let g = |h: f64| -> Result<f64> { Ok(h * form.evaluate_real(h - 1.0)?) };
    let (g1, g2, g4) = (g(h)?, g(0.5 * h)?, g(0.25 * h)?);
    if !((g4 / g1 - 1.0).abs() < 0.5) {
        // higher-order pole: logarithmic or worse blow-up
        return Ok(f64::INFINITY);
    }
    Ok((8.0 * g4 - 6.0 * g2 + g1) / 3.0)
}

/// Density of the entry's variable at x. Symmetric entries return the
/// density of X on the line, f_{|X|}(|x|)/2.
pub fn density_entry(entry: &DistributionEntry, x: f64, spec: &InversionSpec) -> Result<f64> {
    if !x.is_finite() {
        return Err(Error::Validation(format!("x must be finite, got {x}")));
    }
    if entry.symmetric {
        return Ok(0.5 * density(&entry.form, entry.kind, x.abs(), spec)?);
    }
    if x < entry.support.lo || x > entry.support.hi {
        return Ok(0.0);
    }
    density(&entry.form, entry.kind, x, spec)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct DensityRow {
    pub x: f64,
    pub density: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct DensityTable {
    pub entry: String,
    /// Contour abscissa, when the values come from inversion.
    pub abscissa: Option<f64>,
    pub rows: Vec<DensityRow>,
    /// Trapezoid integral of the density over the grid.
    pub trapezoid_mass: f64,
    /// Whether the trapezoid mass is within [`NORMALIZATION_TOL`] of 1.
    pub normalized: bool,
}

impl DensityTable {
    /// `x,density` header followed by one row per grid point.
    pub fn to_csv(&self) -> String {
        let mut s = String::from("x,density\n");
        for r in &self.rows {
            s.push_str(&format!("{:?},{:?}\n", r.x, r.density));
        }
        s
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "entry": self.entry,
            "abscissa": self.abscissa.map(crate::json_f64),
            "rows": self.rows.iter().map(|r| serde_json::json!({
                "x": crate::json_f64(r.x),
                "density": crate::json_f64(r.density),
            })).collect::<Vec<_>>(),
            "trapezoid_mass": crate::json_f64(self.trapezoid_mass),
            "normalized": self.normalized,
        })
    }
}

fn trapezoid(rows: &[DensityRow]) -> f64 {
    rows.windows(2).map(|w| 0.5 * (w[1].x - w[0].x) * (w[0].density + w[1].density)).sum()
}

/// Density on an increasing grid, with a trapezoid normalization check.
/// Grid points are evaluated in parallel.
pub fn density_table(entry: &DistributionEntry, xs: &[f64], spec: &InversionSpec) -> Result<DensityTable> {
    check_grid(xs)?;
    let strip = entry.form.strip()?;
    let abscissa = spec.abscissa.unwrap_or_else(|| default_abscissa(&strip));
    let values: Vec<f64> = xs.par_iter().map(|&x| density_entry(entry, x, spec)).collect::<Result<_>>()?;
    Ok(make_table(entry, Some(abscissa), xs, values))
}

/// The entry's closed-form density on an increasing grid.
pub fn closed_density_table(entry: &DistributionEntry, xs: &[f64]) -> Result<DensityTable> {
    check_grid(xs)?;
    let values: Vec<f64> =
        xs.par_iter().map(|&x| crate::catalog::density_closed_form(entry, x)).collect::<Result<_>>()?;
    Ok(make_table(entry, None, xs, values))
}

fn check_grid(xs: &[f64]) -> Result<()> {
    if xs.windows(2).any(|w| !(w[1] > w[0])) {
        return Err(Error::Validation("x grid must be strictly increasing".into()));
    }
    Ok(())
}

fn make_table(entry: &DistributionEntry, abscissa: Option<f64>, xs: &[f64], values: Vec<f64>) -> DensityTable {
    let rows: Vec<DensityRow> = xs.iter().zip(values).map(|(&x, density)| DensityRow { x, density }).collect();
    let trapezoid_mass = trapezoid(&rows);
    DensityTable {
        entry: entry.name.clone(),
        abscissa,
        rows,
        trapezoid_mass,
        normalized: (trapezoid_mass - 1.0).abs() <= NORMALIZATION_TOL,
    }
}
