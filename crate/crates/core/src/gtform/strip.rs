use std::cmp::{Ordering, Reverse};
use std::collections::BinaryHeap;

use serde::Serialize;

use super::scalar::{Scalar, OFFSET_TOL};
use super::{GammaFactor, GammaTypeForm};
use crate::error::{Error, Result};

/// Poles further than this from the origin are not scanned.
pub const SCAN_LIMIT: f64 = 1e4;

/// Open interval (ρ−, ρ+) of Re s on which F is finite and pole-free.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct AnalyticityStrip {
    #[serde(serialize_with = "crate::ser_f64")]
    pub rho_minus: f64,
    #[serde(serialize_with = "crate::ser_f64")]
    pub rho_plus: f64,
}

impl AnalyticityStrip {
    pub const WHOLE_PLANE: AnalyticityStrip = AnalyticityStrip { rho_minus: f64::NEG_INFINITY, rho_plus: f64::INFINITY };

    pub fn contains(&self, x: f64) -> bool {
        self.rho_minus < x && x < self.rho_plus
    }

    pub fn intersect(&self, other: &AnalyticityStrip) -> Result<AnalyticityStrip> {
        let lo = self.rho_minus.max(other.rho_minus);
        let hi = self.rho_plus.min(other.rho_plus);
        if lo < hi {
            Ok(AnalyticityStrip { rho_minus: lo, rho_plus: hi })
        } else {
            Err(Error::EmptyStrip { lo, hi })
        }
    }

    /// A bounded window inside the strip, used when sampling points from a
    /// possibly infinite strip.
    pub fn window(&self, half_width: f64) -> (f64, f64) {
        match (self.rho_minus.is_finite(), self.rho_plus.is_finite()) {
            (true, true) => (self.rho_minus, self.rho_plus),
            (true, false) => (self.rho_minus, self.rho_minus.max(0.0) + half_width),
            (false, true) => (self.rho_plus.min(0.0) - half_width, self.rho_plus),
            (false, false) => (-half_width, half_width),
        }
    }
}

/// Outcome of the zero-free-strip check.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ConsistencyReport {
    pub passed: bool,
    pub strip: AnalyticityStrip,
    /// Zero nearest to the origin inside the strip, if any.
    pub offending_zero: Option<f64>,
    /// All zeros found inside the strip, nearest first.
    pub zeros: Vec<f64>,
}

#[derive(Clone, Copy)]
struct PoleEvent {
    distance: f64,
    location: Scalar,
    multiplicity: i32,
    source: usize,
}

impl PartialEq for PoleEvent {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}
impl Eq for PoleEvent {}
impl PartialOrd for PoleEvent {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for PoleEvent {
    fn cmp(&self, other: &Self) -> Ordering {
        self.distance.total_cmp(&other.distance).then(self.source.cmp(&other.source))
    }
}

/// Poles of one factor on one side of the origin, nearest first.
struct SidePoles {
    factor: GammaFactor,
    multiplicity: i32,
    next: Option<u64>,
    /// +1: n increases outward, -1: n decreases (finite run ending at 0).
    step: i64,
}

impl SidePoles {
    /// `side` is +1 for s > 0, -1 for s < 0.
    fn new(factor: GammaFactor, multiplicity: i32, side: f64) -> Self {
        // s_n = -(n + b)/a, zero at n = -b.
        let a = factor.slope.signum();
        let neg_b = -factor.offset.to_f64();
        let crossing = near_integer(neg_b);
        let outward = a * side < 0.0; // s_n has the sign of -a(n+b)
        let (next, step) = if outward {
            // n > -b, n >= 0
            let first = match crossing {
                Some(k) => k + 1.0,
                None => neg_b.floor() + 1.0,
            };
            (Some(first.max(0.0) as u64), 1)
        } else {
            // 0 <= n < -b, nearest (largest n) first
            let last = match crossing {
                Some(k) => k - 1.0,
                None => neg_b.floor(),
            };
            if last >= 0.0 {
                (Some(last as u64), -1)
            } else {
                (None, -1)
            }
        };
        SidePoles { factor, multiplicity, next, step }
    }

    fn pop(&mut self, source: usize) -> Option<PoleEvent> {
        let n = self.next?;
        let location = self.factor.pole(n);
        let distance = location.to_f64().abs();
        if distance > SCAN_LIMIT {
            self.next = None;
            return None;
        }
        self.next = if self.step > 0 { n.checked_add(1) } else { n.checked_sub(1) };
        Some(PoleEvent { distance, location, multiplicity: self.multiplicity, source })
    }
}

fn near_integer(x: f64) -> Option<f64> {
    let r = x.round();
    ((x - r).abs() <= OFFSET_TOL * r.abs().max(1.0)).then_some(r)
}

struct SideScan {
    /// Location of the first uncancelled pole, or ±∞.
    boundary: f64,
    /// Net zeros strictly between the origin and the boundary.
    zeros: Vec<Scalar>,
}

fn scan_side(form: &GammaTypeForm, side: f64) -> SideScan {
    let mut sources: Vec<SidePoles> = form
        .numerator
        .iter()
        .map(|f| SidePoles::new(*f, 1, side))
        .chain(form.denominator.iter().map(|f| SidePoles::new(*f, -1, side)))
        .collect();
    let mut heap = BinaryHeap::new();
    for (i, src) in sources.iter_mut().enumerate() {
        if let Some(ev) = src.pop(i) {
            heap.push(Reverse(ev));
        }
    }
    let mut zeros = Vec::new();
    while let Some(Reverse(first)) = heap.pop() {
        let mut net = first.multiplicity;
        if let Some(ev) = sources[first.source].pop(first.source) {
            heap.push(Reverse(ev));
        }
        while let Some(Reverse(peek)) = heap.peek() {
            if !peek.location.approx_eq(first.location) {
                break;
            }
            let ev = heap.pop().unwrap().0;
            net += ev.multiplicity;
            if let Some(next) = sources[ev.source].pop(ev.source) {
                heap.push(Reverse(next));
            }
        }
        match net.cmp(&0) {
            Ordering::Greater => return SideScan { boundary: first.location.to_f64(), zeros },
            Ordering::Less => zeros.push(first.location),
            Ordering::Equal => {}
        }
    }
    SideScan { boundary: side * f64::INFINITY, zeros }
}

/// Net multiplicity of poles sitting exactly at s = 0.
fn origin_multiplicity(form: &GammaTypeForm) -> i32 {
    let at_origin = |f: &GammaFactor| {
        near_integer(-f.offset.to_f64()).is_some_and(|k| k >= 0.0)
    };
    form.numerator.iter().filter(|f| at_origin(f)).count() as i32
        - form.denominator.iter().filter(|f| at_origin(f)).count() as i32
}

impl GammaTypeForm {
    fn scan(&self) -> Result<(AnalyticityStrip, Vec<f64>, bool)> {
        let form = self.reduced();
        let origin = origin_multiplicity(&form);
        if origin > 0 {
            return Err(Error::InvalidForm(format!(
                "pole of multiplicity {origin} at s = 0; not a moment function"
            )));
        }
        let below = scan_side(&form, -1.0);
        let above = scan_side(&form, 1.0);
        let strip = AnalyticityStrip { rho_minus: below.boundary, rho_plus: above.boundary };
        let mut zeros: Vec<f64> = below.zeros.iter().chain(&above.zeros).map(|z| z.to_f64()).collect();
        zeros.sort_by(|a, b| a.abs().total_cmp(&b.abs()).then(a.total_cmp(b)));
        Ok((strip, zeros, origin < 0))
    }

    /// The strip (ρ−, ρ+) bounded by the nearest uncancelled poles.
    pub fn strip(&self) -> Result<AnalyticityStrip> {
        Ok(self.scan()?.0)
    }

    /// A positive random variable's moment function has no zeros in its
    /// strip; report the first zero found, if any.
    pub fn check_positive_consistency(&self) -> ConsistencyReport {
        match self.scan() {
            Ok((strip, mut zeros, zero_at_origin)) => {
                if zero_at_origin {
                    zeros.insert(0, 0.0);
                }
                ConsistencyReport { passed: zeros.is_empty(), strip, offending_zero: zeros.first().copied(), zeros }
            }
            Err(_) => ConsistencyReport {
                passed: false,
                strip: AnalyticityStrip { rho_minus: 0.0, rho_plus: 0.0 },
                offending_zero: None,
                zeros: vec![],
            },
        }
    }
}
