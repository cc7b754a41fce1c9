use std::f64::consts::{FRAC_PI_2, PI};
use std::fmt;

use rand::Rng;
use rand_distr::{Beta, Cauchy, Distribution, Exp1, Gamma, Gumbel, StandardNormal};
use serde::Serialize;

use crate::error::{Error, Result};

/// Primitive laws a recipe can draw from.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(tag = "law", rename_all = "snake_case")]
pub enum Leaf {
    /// U(0, 1).
    Uniform,
    /// Exp(1).
    Exponential,
    /// Gamma(shape, 1).
    Gamma { shape: f64 },
    Beta { a: f64, b: f64 },
    /// N(0, 1).
    Normal,
    /// One-sided stable with E e^{-tS} = e^{-t^α}, 0 < α < 1.
    PositiveStable { alpha: f64 },
    /// Symmetric stable with E e^{itS} = e^{-|t|^α}, 0 < α ≤ 2.
    SymmetricStable { alpha: f64 },
    /// P(W ≤ x) = exp(-e^{-x}).
    Gumbel,
    /// Standard Cauchy.
    Cauchy,
    /// P(W ≤ x) = e^x / (1 + e^x).
    Logistic,
}

/// Expression tree over independent leaf draws.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "op", rename_all = "snake_case")]
pub enum SampleRecipe {
    Leaf { leaf: Leaf },
    Product { factors: Vec<SampleRecipe> },
    Sum { terms: Vec<SampleRecipe> },
    Power { base: Box<SampleRecipe>, exponent: f64 },
    Scale { base: Box<SampleRecipe>, factor: f64 },
    NegLog { base: Box<SampleRecipe> },
    Abs { base: Box<SampleRecipe> },
    /// ∏_{i<j} (x_j - x_i)² over n independent draws of `leaf`.
    Discriminant { n: usize, leaf: Leaf },
}

impl SampleRecipe {
    pub fn leaf(leaf: Leaf) -> Self {
        SampleRecipe::Leaf { leaf }
    }

    pub fn product(factors: Vec<SampleRecipe>) -> Self {
        SampleRecipe::Product { factors }
    }

    pub fn sum(terms: Vec<SampleRecipe>) -> Self {
        SampleRecipe::Sum { terms }
    }

    pub fn pow(self, exponent: f64) -> Self {
        SampleRecipe::Power { base: Box::new(self), exponent }
    }

    pub fn scale(self, factor: f64) -> Self {
        SampleRecipe::Scale { base: Box::new(self), factor }
    }

    pub fn neg_log(self) -> Self {
        SampleRecipe::NegLog { base: Box::new(self) }
    }

    pub fn abs(self) -> Self {
        SampleRecipe::Abs { base: Box::new(self) }
    }

    /// Build the sampler, validating leaf parameters.
    pub fn compile(&self) -> Result<Sampler> {
        Ok(match self {
            SampleRecipe::Leaf { leaf } => Sampler::Leaf(LeafSampler::new(*leaf)?),
            SampleRecipe::Product { factors } => {
                Sampler::Product(factors.iter().map(|f| f.compile()).collect::<Result<_>>()?)
            }
            SampleRecipe::Sum { terms } => Sampler::Sum(terms.iter().map(|f| f.compile()).collect::<Result<_>>()?),
            SampleRecipe::Power { base, exponent } => Sampler::Power(Box::new(base.compile()?), *exponent),
            SampleRecipe::Scale { base, factor } => Sampler::Scale(Box::new(base.compile()?), *factor),
            SampleRecipe::NegLog { base } => Sampler::NegLog(Box::new(base.compile()?)),
            SampleRecipe::Abs { base } => Sampler::Abs(Box::new(base.compile()?)),
            SampleRecipe::Discriminant { n, leaf } => {
                if *n < 2 {
                    return Err(Error::Validation(format!("discriminant needs n >= 2, got {n}")));
                }
                Sampler::Discriminant(*n, LeafSampler::new(*leaf)?)
            }
        })
    }
}

impl fmt::Display for Leaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Leaf::Uniform => write!(f, "U"),
            Leaf::Exponential => write!(f, "Exp"),
            Leaf::Gamma { shape } => write!(f, "Gamma({shape})"),
            Leaf::Beta { a, b } => write!(f, "Beta({a},{b})"),
            Leaf::Normal => write!(f, "N"),
            Leaf::PositiveStable { alpha } => write!(f, "S+({alpha})"),
            Leaf::SymmetricStable { alpha } => write!(f, "S~({alpha})"),
            Leaf::Gumbel => write!(f, "Gumbel"),
            Leaf::Cauchy => write!(f, "Cauchy"),
            Leaf::Logistic => write!(f, "Logistic"),
        }
    }
}

impl fmt::Display for SampleRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |f: &mut fmt::Formatter<'_>, xs: &[SampleRecipe], sep: &str| {
            for (i, x) in xs.iter().enumerate() {
                if i > 0 {
                    write!(f, "{sep}")?;
                }
                write!(f, "{x}")?;
            }
            Ok(())
        };
        match self {
            SampleRecipe::Leaf { leaf } => write!(f, "{leaf}"),
            SampleRecipe::Product { factors } => {
                write!(f, "(")?;
                join(f, factors, " * ")?;
                write!(f, ")")
            }
            SampleRecipe::Sum { terms } => {
                write!(f, "(")?;
                join(f, terms, " + ")?;
                write!(f, ")")
            }
            SampleRecipe::Power { base, exponent } => write!(f, "{base}^{exponent}"),
            SampleRecipe::Scale { base, factor } => write!(f, "{factor}*{base}"),
            SampleRecipe::NegLog { base } => write!(f, "-log({base})"),
            SampleRecipe::Abs { base } => write!(f, "|{base}|"),
            SampleRecipe::Discriminant { n, leaf } => write!(f, "Disc{n}({leaf})"),
        }
    }
}

/// A leaf with its distribution object prepared.
#[derive(Clone, Debug)]
pub enum LeafSampler {
    Uniform,
    Exponential,
    Gamma(Gamma<f64>),
    Beta(Beta<f64>),
    Normal,
    PositiveStable(f64),
    SymmetricStable(f64),
    Gumbel(Gumbel<f64>),
    Cauchy(Cauchy<f64>),
    Logistic,
}

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(Error::Validation(msg()))
    }
}

impl LeafSampler {
    pub fn new(leaf: Leaf) -> Result<Self> {
        Ok(match leaf {
            Leaf::Uniform => LeafSampler::Uniform,
            Leaf::Exponential => LeafSampler::Exponential,
            Leaf::Gamma { shape } => LeafSampler::Gamma(
                Gamma::new(shape, 1.0).map_err(|e| Error::Validation(format!("gamma leaf: {e}")))?,
            ),
            Leaf::Beta { a, b } => {
                LeafSampler::Beta(Beta::new(a, b).map_err(|e| Error::Validation(format!("beta leaf: {e}")))?)
            }
            Leaf::Normal => LeafSampler::Normal,
            Leaf::PositiveStable { alpha } => {
                check(alpha > 0.0 && alpha < 1.0, || format!("positive stable index must be in (0, 1), got {alpha}"))?;
                LeafSampler::PositiveStable(alpha)
            }
            Leaf::SymmetricStable { alpha } => {
                check(alpha > 0.0 && alpha <= 2.0, || format!("symmetric stable index must be in (0, 2], got {alpha}"))?;
                LeafSampler::SymmetricStable(alpha)
            }
            Leaf::Gumbel => LeafSampler::Gumbel(Gumbel::new(0.0, 1.0).expect("standard Gumbel")),
            Leaf::Cauchy => LeafSampler::Cauchy(Cauchy::new(0.0, 1.0).expect("standard Cauchy")),
            Leaf::Logistic => LeafSampler::Logistic,
        })
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            LeafSampler::Uniform => open_unit(rng),
            LeafSampler::Exponential => Exp1.sample(rng),
            LeafSampler::Gamma(g) => g.sample(rng),
            LeafSampler::Beta(b) => b.sample(rng),
            LeafSampler::Normal => StandardNormal.sample(rng),
            LeafSampler::PositiveStable(alpha) => positive_stable(*alpha, rng),
            LeafSampler::SymmetricStable(alpha) => symmetric_stable(*alpha, rng),
            LeafSampler::Gumbel(g) => g.sample(rng),
            LeafSampler::Cauchy(c) => c.sample(rng),
            LeafSampler::Logistic => {
                let u = open_unit(rng);
                (u / (1.0 - u)).ln()
            }
        }
    }
}

/// Uniform on the open interval (0, 1).
fn open_unit<R: Rng + ?Sized>(rng: &mut R) -> f64 {
    loop {
        let u: f64 = rng.random();
        if u > 0.0 {
            return u;
        }
    }
}

/// Kanter's representation: with U ~ U(0, π) and W ~ Exp(1),
/// S = sin(αU)/sin(U)^{1/α} · (sin((1-α)U)/W)^{(1-α)/α}.
pub fn positive_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let u = PI * open_unit(rng);
    let w: f64 = Exp1.sample(rng);
    let a = (alpha * u).sin() / u.sin().powf(1.0 / alpha);
    let b = (((1.0 - alpha) * u).sin() / w).powf((1.0 - alpha) / alpha);
    a * b
}

/// Chambers–Mallows–Stuck with zero skewness: with V ~ U(-π/2, π/2) and
/// W ~ Exp(1), X = sin(αV)/cos(V)^{1/α} · (cos((1-α)V)/W)^{(1-α)/α}.
pub fn symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let v = PI * open_unit(rng) - FRAC_PI_2;
    if alpha == 1.0 {
        return v.tan();
    }
    let w: f64 = Exp1.sample(rng);
    let a = (alpha * v).sin() / v.cos().powf(1.0 / alpha);
    let b = (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha);
    a * b
}

/// A compiled recipe.
#[derive(Clone, Debug)]
pub enum Sampler {
    Leaf(LeafSampler),
    Product(Vec<Sampler>),
    Sum(Vec<Sampler>),
    Power(Box<Sampler>, f64),
    Scale(Box<Sampler>, f64),
    NegLog(Box<Sampler>),
    Abs(Box<Sampler>),
    Discriminant(usize, LeafSampler),
}

impl Sampler {
    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> f64 {
        match self {
            Sampler::Leaf(l) => l.draw(rng),
            Sampler::Product(fs) => fs.iter().map(|f| f.draw(rng)).product(),
            Sampler::Sum(ts) => ts.iter().map(|t| t.draw(rng)).sum(),
            Sampler::Power(b, r) => b.draw(rng).powf(*r),
            Sampler::Scale(b, c) => c * b.draw(rng),
            Sampler::NegLog(b) => -b.draw(rng).ln(),
            Sampler::Abs(b) => b.draw(rng).abs(),
            Sampler::Discriminant(n, leaf) => {
                let xs: Vec<f64> = (0..*n).map(|_| leaf.draw(rng)).collect();
                let mut d = 1.0;
                for j in 1..xs.len() {
                    for i in 0..j {
                        let diff = xs[j] - xs[i];
                        d *= diff * diff;
                    }
                }
                d
            }
        }
    }
}
