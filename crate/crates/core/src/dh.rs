//! Predicted asymptotics `||X||_t ~ C (log t)^r` and their estimation from data.

use std::fmt;

use crate::constants::{euler_gamma, zeta_value};
use crate::density::{density_profile, DensityCheckpoint, Schedule};
use crate::error::{Error, Result};
use crate::primes::{divisors, mobius};
use crate::scalar::Real;
use crate::variety::{Kind, VarietySpec};

/// Largest `|r_hat - round(r_hat)|` accepted as a converged exponent.
pub const RELIABILITY_BAND: f64 = 0.3;

/// Relative error in `C` below which a report counts as consistent.
pub const C_TOLERANCE: f64 = 0.05;

/// Closed-form constant `C` and integer exponent `r`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhPrediction<T> {
    pub c: T,
    pub r: i32,
}

/// Least-squares estimate of `(C, r)` from `log ||X||_t` against `log log t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DhFit<T> {
    pub c_hat: T,
    pub r_hat: T,
    pub r_rounded: i32,
    pub residual_rms: T,
    pub window: (T, T),
    pub points: usize,
}

impl<T: Real> DhFit<T> {
    pub fn reliable(&self) -> bool {
        (self.r_hat - T::of_i64(self.r_rounded as i64)).abs() <= T::lit(RELIABILITY_BAND)
    }
}

fn product<T: Real>(it: impl Iterator<Item = T>) -> T {
    it.fold(T::one(), |acc, x| acc * x)
}

pub fn predicted_dh<T: Real>(spec: &VarietySpec) -> Result<DhPrediction<T>> {
    let gamma = euler_gamma::<T>();
    let inv_zeta = |k: u32| zeta_value::<T>(k).recip();
    let (c, r) = match spec.kind() {
        Kind::GL(n) => ((-gamma).exp() * product((2..=n).map(inv_zeta)), -1),
        Kind::SL(n) => (product((2..=n).map(inv_zeta)), 0),
        Kind::Sp(n) => (product((1..=n).map(|k| inv_zeta(2 * k))), 0),
        Kind::Affine(_) => (T::one(), 0),
        Kind::Proj(n) => (gamma.exp() / zeta_value::<T>(n + 1), 1),
        Kind::Gr { n, m } => {
            let num = product((2..=m).map(zeta_value::<T>));
            let den = product((n - m + 1..=n).map(zeta_value::<T>));
            (gamma.exp() * num / den, 1)
        }
        Kind::Circle => (T::lit(4.0) / T::PI(), 0),
        Kind::Cyclotomic(n) => {
            let n = n as u64;
            let mu_n = mobius(n)?;
            let tail = product(divisors(n).into_iter().filter(|&d| d > 1).map(|d| {
                let mu = mobius(n / d).expect("divisor of n is positive");
                zeta_value::<T>(d as u32).powi(-(mu as i32))
            }));
            (
                (-(gamma * T::of_i64(mu_n as i64))).exp() * tail,
                -(mu_n as i32),
            )
        }
        Kind::Elliptic(_) => return Err(Error::NoPrediction(spec.to_string())),
    };
    Ok(DhPrediction { c, r })
}

/// Regress `log_density` on `log log t` over checkpoints with `t` in `window`.
pub fn fit_dh<T: Real>(profile: &[DensityCheckpoint<T>], window: (T, T)) -> Result<DhFit<T>> {
    let (lo, hi) = window;
    let slack = T::lit(1e-9);
    let inside: Vec<&DensityCheckpoint<T>> = profile
        .iter()
        .filter(|c| c.t >= lo * (T::one() - slack) && c.t <= hi * (T::one() + slack))
        .collect();
    if inside.len() < 3 {
        return Err(Error::TooFewPoints(inside.len()));
    }
    if let Some(c) = inside.iter().find(|c| !(c.t >= T::lit(3.0))) {
        return Err(Error::WindowBelowThree(c.t.to_f64().unwrap_or(f64::NAN)));
    }

    let n = T::of_u64(inside.len() as u64);
    let xs: Vec<T> = inside.iter().map(|c| c.t.ln().ln()).collect();
    let ys: Vec<T> = inside.iter().map(|c| c.log_density).collect();
    let x_mean = xs.iter().fold(T::zero(), |a, &x| a + x) / n;
    let y_mean = ys.iter().fold(T::zero(), |a, &y| a + y) / n;
    let (mut sxx, mut sxy) = (T::zero(), T::zero());
    for (&x, &y) in xs.iter().zip(&ys) {
        sxx = sxx + (x - x_mean) * (x - x_mean);
        sxy = sxy + (x - x_mean) * (y - y_mean);
    }
    let spread = xs.iter().fold(T::zero(), |a, &x| a.max((x - x_mean).abs()));
    if !(spread > T::epsilon() * x_mean.abs().max(T::one()) * T::lit(16.0)) {
        return Err(Error::DegenerateWindow);
    }
    let slope = sxy / sxx;
    let intercept = y_mean - slope * x_mean;
    let sse = xs.iter().zip(&ys).fold(T::zero(), |a, (&x, &y)| {
        let e = y - (intercept + slope * x);
        a + e * e
    });
    let r_rounded = slope.round().to_i32().unwrap_or(i32::MAX);
    Ok(DhFit {
        c_hat: intercept.exp(),
        r_hat: slope,
        r_rounded,
        residual_rms: (sse / n).sqrt(),
        window,
        points: inside.len(),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    /// `r` matches, the fit is reliable and `C` is within [`C_TOLERANCE`].
    Consistent,
    /// The fit converged but disagrees with the prediction.
    Inconsistent,
    /// `r_hat` lies outside the reliability band.
    Unreliable,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::Consistent => "consistent",
            Verdict::Inconsistent => "inconsistent",
            Verdict::Unreliable => "unreliable",
        })
    }
}

/// Prediction and fit side by side.
#[derive(Debug, Clone, PartialEq)]
pub struct DhReport<T> {
    pub spec: VarietySpec,
    pub prediction: DhPrediction<T>,
    pub fit: DhFit<T>,
    pub rel_err_c: T,
    pub r_match: bool,
    pub verdict: Verdict,
}

pub fn compare<T: Real>(
    spec: &VarietySpec,
    prediction: DhPrediction<T>,
    fit: DhFit<T>,
) -> DhReport<T> {
    let rel_err_c = (fit.c_hat - prediction.c).abs() / prediction.c;
    let r_match = fit.r_rounded == prediction.r;
    let verdict = if !fit.reliable() {
        Verdict::Unreliable
    } else if r_match && rel_err_c < T::lit(C_TOLERANCE) {
        Verdict::Consistent
    } else {
        Verdict::Inconsistent
    };
    DhReport {
        spec: *spec,
        prediction,
        fit,
        rel_err_c,
        r_match,
        verdict,
    }
}

/// Window `[t_max / 100, t_max]`.
pub fn default_window<T: Real>(t_max: T) -> (T, T) {
    (t_max / T::lit(100.0), t_max)
}

/// Runs the density profile on the default schedule and fits the last two decades.
pub fn dh_report<T: Real>(spec: &VarietySpec, t_max: T) -> Result<DhReport<T>> {
    let prediction = predicted_dh::<T>(spec)?;
    let profile = density_profile(spec, t_max, &Schedule::default())?;
    let fit = fit_dh(&profile.checkpoints, default_window(t_max))?;
    Ok(compare(spec, prediction, fit))
}
