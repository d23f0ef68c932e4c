//! Prime-indexed density products `prod_{p <= t} |X(F_p)| / p^dim X` for a
//! catalog of varieties over the integers, their predicted asymptotics
//! `C (log t)^r`, and the normalized deviations `b(p)` of point counts.
//!
//! Floating-point code is generic over [`Real`] (`f32` or `f64`); point counts
//! are exact big integers. The `f64` aliases below are what the CLI and the
//! acceptance suite use.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod constants;
pub mod density;
pub mod dh;
pub mod error;
pub mod primes;
pub mod scalar;
pub mod serre;
pub mod summation;
pub mod variety;

pub use constants::{euler_gamma, zeta, ZetaValue};
pub use density::{density_profile, mertens_check, DensityCheckpoint, DensityProfile, Schedule};
pub use dh::{dh_report, fit_dh, predicted_dh, DhFit, DhPrediction, DhReport, Verdict};
pub use error::{Error, Result};
pub use primes::{euler_phi, legendre_symbol, mobius, primes_up_to, PrimeStream};
pub use scalar::Real;
pub use serre::{
    b_deviation, closed_form_b, ec_b_and_theta, scan_deviations, synthetic_unbounded_b,
    DeviationReport, DeviationSample,
};
pub use summation::CompensatedSum;
pub use variety::{dimension, ec_trace, exact_count, log_local_ratio, EcCurve, Kind, VarietySpec};

pub type Checkpoint = DensityCheckpoint<f64>;
pub type Profile = DensityProfile<f64>;
pub type Prediction = DhPrediction<f64>;
pub type Fit = DhFit<f64>;
pub type Report = DhReport<f64>;
pub type Sample = DeviationSample<f64>;
pub type Deviations = DeviationReport<f64>;
pub type Zeta = ZetaValue<f64>;
