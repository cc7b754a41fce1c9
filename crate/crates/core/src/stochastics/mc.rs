use num_complex::Complex64;
use serde::Serialize;

use super::sample;
use crate::catalog::{DistributionEntry, Kind};
use crate::error::{Error, Result};

/// Half-width of the acceptance band, in standard errors.
pub const Z_MULTIPLIER: f64 = 5.0;

/// Two-sample Kolmogorov–Smirnov coefficient for level 0.01.
pub const KS_C_001: f64 = 1.628;

/// Sample estimate of E X^s (mellin) or E e^{sX} (mgf).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct McEstimate {
    pub mean: f64,
    pub stderr: f64,
    pub n: usize,
    pub s: f64,
    /// Whether the variance of the summand is finite (2s inside the strip).
    pub ci_valid: bool,
}

fn transform(kind: Kind, s: f64) -> impl Fn(f64) -> f64 {
    move |x| match kind {
        Kind::Mellin => x.powf(s),
        Kind::Mgf => (s * x).exp(),
    }
}

/// Mean and standard error of x ↦ x^s (or e^{sx}) over `samples`.
pub fn moment_estimate(samples: &[f64], s: f64, kind: Kind) -> McEstimate {
    let f = transform(kind, s);
    let n = samples.len();
    // compensated two-pass mean and variance
    let mut sum = Neumaier::default();
    for &x in samples {
        sum.add(f(x));
    }
    let mean = sum.value() / n as f64;
    let mut ss = Neumaier::default();
    for &x in samples {
        let d = f(x) - mean;
        ss.add(d * d);
    }
    let var = if n > 1 { ss.value() / (n - 1) as f64 } else { f64::INFINITY };
    McEstimate { mean, stderr: (var / n as f64).sqrt(), n, s, ci_valid: true }
}

/// Decide whether s can be checked for this entry. Ok(ci_valid) or a
/// refusal explaining why.
fn admissible(entry: &DistributionEntry, s: f64) -> Result<bool> {
    let strip = entry.form.strip()?;
    if !strip.contains(s) {
        return Err(Error::OutsideStrip {
            s,
            lo: strip.rho_minus,
            hi: strip.rho_plus,
            reason: "the moment does not exist".into(),
        });
    }
    let ci_valid = strip.contains(2.0 * s);
    if !ci_valid && entry.kind == Kind::Mellin && strip.rho_plus <= 2.0 {
        return Err(Error::OutsideStrip {
            s,
            lo: strip.rho_minus / 2.0,
            hi: strip.rho_plus / 2.0,
            reason: "CI invalid: heavy-tailed entry, 2s must lie in the strip".into(),
        });
    }
    Ok(ci_valid)
}

fn recipe_of(entry: &DistributionEntry) -> Result<&super::SampleRecipe> {
    entry
        .recipe
        .as_ref()
        .ok_or_else(|| Error::NotAvailable(format!("{} has no sampling recipe", entry.name)))
}

/// Monte Carlo estimate of the entry's moment function at real s.
pub fn mc_moment(entry: &DistributionEntry, s: f64, n: usize, seed: u64) -> Result<McEstimate> {
    let recipe = recipe_of(entry)?;
    let ci_valid = admissible(entry, s)?;
    if n < 2 {
        return Err(Error::Validation("Monte Carlo needs n >= 2".into()));
    }
    let xs = sample(recipe, n, seed)?;
    Ok(McEstimate { ci_valid, ..moment_estimate(&xs, s, entry.kind) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum SStatus {
    /// Compared against the formula.
    Checked,
    /// Compared, but the variance is infinite so the band is unreliable.
    CiInvalid,
    /// Not compared.
    Skipped,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SOutcome {
    pub s: f64,
    pub status: SStatus,
    pub expected: Option<f64>,
    pub mean: Option<f64>,
    pub stderr: Option<f64>,
    pub z_score: Option<f64>,
    pub passed: Option<bool>,
    pub note: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct VerificationReport {
    pub entry: String,
    pub n: usize,
    pub seed: u64,
    pub z: f64,
    pub outcomes: Vec<SOutcome>,
    /// True when every compared s lies within z standard errors.
    pub passed: bool,
}

impl VerificationReport {
    pub fn failures(&self) -> impl Iterator<Item = &SOutcome> {
        self.outcomes.iter().filter(|o| o.passed == Some(false))
    }
}

/// Check the entry's form against a Monte Carlo estimate at each s. One
/// sample of size n is drawn and reused for every s.
pub fn verify_entry(entry: &DistributionEntry, s_grid: &[f64], n: usize, seed: u64) -> Result<VerificationReport> {
    let recipe = recipe_of(entry)?;
    if n < 2 {
        return Err(Error::Validation("Monte Carlo needs n >= 2".into()));
    }
    let xs = sample(recipe, n, seed)?;
    let mut outcomes = Vec::with_capacity(s_grid.len());
    for &s in s_grid {
        let ci_valid = match admissible(entry, s) {
            Ok(v) => v,
            Err(e) => {
                outcomes.push(SOutcome {
                    s,
                    status: SStatus::Skipped,
                    expected: None,
                    mean: None,
                    stderr: None,
                    z_score: None,
                    passed: None,
                    note: Some(e.to_string()),
                });
                continue;
            }
        };
        let expected = entry.form.evaluate(Complex64::new(s, 0.0))?.re;
        let est = moment_estimate(&xs, s, entry.kind);
        let z_score = (est.mean - expected) / est.stderr;
        let passed = (est.mean - expected).abs() <= Z_MULTIPLIER * est.stderr;
        outcomes.push(SOutcome {
            s,
            status: if ci_valid { SStatus::Checked } else { SStatus::CiInvalid },
            expected: Some(expected),
            mean: Some(est.mean),
            stderr: Some(est.stderr),
            z_score: Some(z_score),
            passed: Some(passed),
            note: (!ci_valid).then(|| "2s outside the strip: infinite variance, band unreliable".to_string()),
        });
    }
    let passed = outcomes.iter().all(|o| o.passed != Some(false));
    Ok(VerificationReport { entry: entry.name.clone(), n, seed, z: Z_MULTIPLIER, outcomes, passed })
}

/// Neumaier compensated summation.
#[derive(Clone, Copy, Debug, Default)]
pub(crate) struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub(crate) fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    pub(crate) fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

/// (n, H_n - log n) for n = 1..=n_max, with H_n summed exactly.
pub fn harmonic_drift(n_max: u64) -> Result<Vec<(u64, f64)>> {
    if n_max < 1 {
        return Err(Error::Validation("n_max must be at least 1".into()));
    }
    let mut h = Neumaier::default();
    Ok((1..=n_max)
        .map(|n| {
            h.add(1.0 / n as f64);
            (n, h.value() - (n as f64).ln())
        })
        .collect())
}

/// Two-sample Kolmogorov–Smirnov comparison at level 0.01.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub critical: f64,
    pub consistent: bool,
}

pub fn ks_two_sample(a: &[f64], b: &[f64]) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::Validation("KS test needs two nonempty samples".into()));
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (n, m) = (a.len(), b.len());
    let (mut i, mut j) = (0, 0);
    let mut d = 0.0f64;
    while i < n && j < m {
        let x = if a[i].total_cmp(&b[j]).is_le() { a[i] } else { b[j] };
        while i < n && a[i] <= x {
            i += 1;
        }
        while j < m && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n as f64 - j as f64 / m as f64).abs());
    }
    let critical = KS_C_001 * ((n + m) as f64 / (n as f64 * m as f64)).sqrt();
    Ok(KsResult { statistic: d, critical, consistent: d <= critical })
}
