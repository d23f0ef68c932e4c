//! Normalized deviations `b(p) = sqrt(p) (A(p)/p^d - 1)`.
//!
//! `b` is bounded for every catalog variety but not for arbitrary sequences;
//! the scans here exhibit both behaviours over finite prime ranges.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::primes::primes_up_to;
use crate::scalar::Real;
use crate::variety::{ec_trace, EcCurve, Kind, VarietySpec};

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DeviationSample<T> {
    pub p: u64,
    /// `A(p) / p^d`
    pub ratio: T,
    pub b: T,
    /// Elliptic samples: angle with `a(p) = 2 sqrt(p) cos(theta)`.
    pub theta: Option<T>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct DeviationReport<T> {
    /// Spec text, or a tag for synthetic sequences.
    pub label: String,
    pub samples: Vec<DeviationSample<T>>,
    /// `max |b|` over the samples; a bound over the scanned range only.
    pub empirical_b: T,
    pub positive: usize,
    pub zero: usize,
    pub negative: usize,
    /// Bad primes of an elliptic curve, left out of `samples`.
    pub skipped_bad: Vec<u64>,
    /// Largest gap to the closed form, where one exists.
    pub closed_form_gap: Option<T>,
}

impl<T: Real> DeviationReport<T> {
    fn from_samples(label: String, samples: Vec<DeviationSample<T>>) -> Self {
        let mut report = Self {
            label,
            empirical_b: T::zero(),
            positive: 0,
            zero: 0,
            negative: 0,
            skipped_bad: Vec::new(),
            closed_form_gap: None,
            samples: Vec::new(),
        };
        for s in &samples {
            report.empirical_b = report.empirical_b.max(s.b.abs());
            if s.b > T::zero() {
                report.positive += 1;
            } else if s.b < T::zero() {
                report.negative += 1;
            } else {
                report.zero += 1;
            }
        }
        report.samples = samples;
        report
    }

    /// Every `b` strictly inside `(lo, hi)`.
    pub fn all_b_within(&self, lo: T, hi: T) -> bool {
        self.samples.iter().all(|s| s.b > lo && s.b < hi)
    }

    /// Sample with the largest `|b|`.
    pub fn argmax(&self) -> Option<&DeviationSample<T>> {
        self.samples
            .iter()
            .fold(None, |best: Option<&DeviationSample<T>>, s| match best {
                Some(b) if b.b.abs() >= s.b.abs() => Some(b),
                _ => Some(s),
            })
    }
}

pub fn b_deviation<T: Real>(ratio: T, p: u64) -> T {
    T::of_u64(p).sqrt() * (ratio - T::one())
}

/// Closed forms for `P^n`, `A^n`, `GL(1)`, `GL(2)` and `SL(2)`.
pub fn closed_form_b<T: Real>(spec: &VarietySpec, p: u64) -> Result<T> {
    let pf = T::of_u64(p);
    let s = pf.sqrt();
    match spec.kind() {
        Kind::Proj(n) => {
            let geometric = (T::one() - pf.powi(-(n as i32))) / (T::one() - pf.recip());
            Ok(geometric / s)
        }
        Kind::Affine(_) => Ok(T::zero()),
        Kind::GL(1) => Ok(-s.recip()),
        Kind::GL(2) => Ok(-s.recip() - (pf * s).recip() + (pf * pf * s).recip()),
        Kind::SL(2) => Ok(-(pf * s).recip()),
        _ => Err(Error::NoClosedForm(spec.to_string())),
    }
}

/// `b(p)` for `A(p) = p^d + p^{d - 1/3}`: `sqrt(p) * p^{-1/3} = p^{1/6}`.
///
/// `d` cancels from the ratio and is accepted only to name the sequence.
pub fn synthetic_unbounded_b<T: Real>(_d: u32, p: u64) -> T {
    T::of_u64(p).powf(T::lit(1.0 / 6.0))
}

pub fn ec_b_and_theta<T: Real>(curve: &EcCurve, p: u64) -> Result<DeviationSample<T>> {
    let a = ec_trace(curve, p)?;
    Ok(ec_sample(a, p))
}

fn ec_sample<T: Real>(a: i64, p: u64) -> DeviationSample<T> {
    let pf = T::of_u64(p);
    let s = pf.sqrt();
    let cos = (T::of_i64(a) / (T::lit(2.0) * s))
        .max(-T::one())
        .min(T::one());
    let theta = cos.acos();
    DeviationSample {
        p,
        ratio: T::of_i64(p as i64 + 1 - a) / pf,
        b: s.recip() - T::lit(2.0) * theta.cos(),
        theta: Some(theta),
    }
}

fn check_p_max<T: Real>(p_max: T) -> Result<u64> {
    if !(p_max >= T::lit(5.0)) || !p_max.is_finite() {
        return Err(Error::TooSmall {
            min: 5.0,
            got: p_max.to_f64().unwrap_or(f64::NAN),
        });
    }
    Ok(p_max.floor().to_u64().expect("finite"))
}

/// `b(p)` at every (good) prime `p <= p_max` through the generic path.
///
/// Specs with a closed form are checked against it sample by sample; a gap
/// beyond `1e-10` (or a few ulps scaled by `sqrt(p)`, if larger) is an error.
pub fn scan_deviations<T: Real>(spec: &VarietySpec, p_max: T) -> Result<DeviationReport<T>> {
    let limit = check_p_max(p_max)?;
    let primes = primes_up_to(limit);
    let model = spec.local_model();

    let (good, bad): (Vec<u64>, Vec<u64>) =
        primes.into_iter().partition(|&p| spec.is_good_prime(p));
    let samples: Vec<DeviationSample<T>> = match spec.kind() {
        Kind::Elliptic(curve) => good
            .par_iter()
            .map(|&p| {
                let a = ec_trace(&curve, p).expect("good prime");
                let ratio = T::of_i64(p as i64 + 1 - a) / T::of_u64(p);
                let theta = ec_sample::<T>(a, p).theta;
                DeviationSample {
                    p,
                    ratio,
                    b: b_deviation(ratio, p),
                    theta,
                }
            })
            .collect(),
        _ => good
            .par_iter()
            .with_min_len(1024)
            .map(|&p| {
                let ratio = model.log_ratio::<T>(p).exp();
                DeviationSample {
                    p,
                    ratio,
                    b: b_deviation(ratio, p),
                    theta: None,
                }
            })
            .collect(),
    };

    let mut report = DeviationReport::from_samples(spec.to_string(), samples);
    report.skipped_bad = bad;

    if closed_form_b::<T>(spec, 5).is_ok() {
        let mut gap = T::zero();
        for s in &report.samples {
            let closed = closed_form_b::<T>(spec, s.p)?;
            let d = (s.b - closed).abs();
            let tol = T::lit(1e-10).max(T::lit(64.0) * T::epsilon() * T::of_u64(s.p).sqrt());
            if d > tol {
                return Err(Error::Inexact(format!(
                    "{spec}: b({}) = {} but the closed form gives {}",
                    s.p, s.b, closed
                )));
            }
            gap = gap.max(d);
        }
        report.closed_form_gap = Some(gap);
    }
    Ok(report)
}

/// Scan of the unbounded sequence `A(p) = p^d + p^{d - 1/3}`.
pub fn scan_synthetic<T: Real>(d: u32, p_max: T) -> Result<DeviationReport<T>> {
    let limit = check_p_max(p_max)?;
    let samples = primes_up_to(limit)
        .into_iter()
        .map(|p| {
            let b = synthetic_unbounded_b::<T>(d, p);
            DeviationSample {
                p,
                ratio: T::one() + b / T::of_u64(p).sqrt(),
                b,
                theta: None,
            }
        })
        .collect();
    Ok(DeviationReport::from_samples(
        format!("synthetic:{d}"),
        samples,
    ))
}
