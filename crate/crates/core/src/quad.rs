//! Globally adaptive Gauss–Kronrod (7/15) quadrature.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use crate::error::{Error, Result};

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];

const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];

/// Gauss weights for the nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

/// Tolerances and budget for [`integrate`].
#[derive(Clone, Copy, Debug)]
pub struct QuadOptions {
    pub abs_tol: f64,
    pub rel_tol: f64,
    pub max_intervals: usize,
}

impl Default for QuadOptions {
    fn default() -> Self {
        QuadOptions { abs_tol: 1e-12, rel_tol: 1e-12, max_intervals: 4000 }
    }
}

impl QuadOptions {
    pub fn abs(abs_tol: f64) -> Self {
        QuadOptions { abs_tol, rel_tol: 0.0, ..Default::default() }
    }
}

/// Integral estimate with an error bound.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate {
    pub value: f64,
    pub error: f64,
}

/// One 15-point Kronrod panel: (Kronrod value, |Kronrod - Gauss|).
pub fn gk15<F: FnMut(f64) -> f64>(f: &mut F, a: f64, b: f64) -> (f64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kronrod = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for (i, (&x, &w)) in XGK.iter().zip(&WGK).take(7).enumerate() {
        let y = f(c - h * x) + f(c + h * x);
        kronrod += w * y;
        if i % 2 == 1 {
            gauss += WG[i / 2] * y;
        }
    }
    (kronrod * h, ((kronrod - gauss) * h).abs())
}

struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// ∫_a^b f over a finite interval, bisecting the worst panel until the
/// summed error bound meets max(abs_tol, rel_tol·|I|).
pub fn integrate<F: FnMut(f64) -> f64>(mut f: F, a: f64, b: f64, opts: QuadOptions) -> Result<Estimate> {
    integrate_panels(&mut f, &[a, b], opts)
}

/// Like [`integrate`], starting from the given breakpoints.
pub fn integrate_panels<F: FnMut(f64) -> f64>(f: &mut F, breaks: &[f64], opts: QuadOptions) -> Result<Estimate> {
    if breaks.len() < 2 {
        return Ok(Estimate { value: 0.0, error: 0.0 });
    }
    if breaks.iter().any(|x| !x.is_finite()) {
        return Err(Error::Quadrature("interval endpoints must be finite".into()));
    }
    let mut heap = BinaryHeap::new();
    let (mut total, mut err) = (0.0, 0.0);
    for w in breaks.windows(2) {
        let (v, e) = gk15(f, w[0], w[1]);
        total += v;
        err += e;
        heap.push(Panel { a: w[0], b: w[1], value: v, error: e });
    }
    loop {
        if !total.is_finite() || !err.is_finite() {
            return Err(Error::Quadrature(format!("non-finite integrand on [{}, {}]", breaks[0], breaks[breaks.len() - 1])));
        }
        if err <= opts.abs_tol.max(opts.rel_tol * total.abs()) {
            return Ok(Estimate { value: total, error: err });
        }
        if heap.len() >= opts.max_intervals {
            return Err(Error::Quadrature(format!("error {err:.3e} after {} panels", heap.len())));
        }
        let worst = heap.pop().expect("nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // cannot split further; accept what we have
            return Ok(Estimate { value: total, error: err });
        }
        let (v1, e1) = gk15(f, worst.a, mid);
        let (v2, e2) = gk15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        err += e1 + e2 - worst.error;
        heap.push(Panel { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Panel { a: mid, b: worst.b, value: v2, error: e2 });
    }
}

/// ∫_a^∞ f via x = a + t/(1-t).
pub fn integrate_to_infinity<F: FnMut(f64) -> f64>(mut f: F, a: f64, opts: QuadOptions) -> Result<Estimate> {
    let mut g = |t: f64| {
        let u = 1.0 - t;
        let v = f(a + t / u) / (u * u);
        if v.is_finite() {
            v
        } else {
            0.0
        }
    };
    integrate_panels(&mut g, &[0.0, 0.5, 0.75, 0.875, 1.0], opts)
}

/// ∫_{-∞}^{∞} f.
pub fn integrate_line<F: FnMut(f64) -> f64>(mut f: F, opts: QuadOptions) -> Result<Estimate> {
    let half = QuadOptions { abs_tol: 0.5 * opts.abs_tol, ..opts };
    let right = integrate_to_infinity(&mut f, 0.0, half)?;
    let left = integrate_to_infinity(|x| f(-x), 0.0, half)?;
    Ok(Estimate { value: left.value + right.value, error: left.error + right.error })
}
