use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use mertens_core::variety::SPEC_GRAMMAR;
use mertens_core::VarietySpec;

/// Largest accepted `--tmax` / `--pmax` / `--max`.
pub const T_MAX_CAP: f64 = 1e9;
pub const MAX_PER_DECADE: u32 = 16;

#[derive(Debug, Parser)]
#[command(
    name = "mertens",
    version,
    about = "Prime density products, fits and deviation scans"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Write output here instead of standard output.
    #[arg(long = "out", global = true, value_name = "PATH")]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Density profile prod_{p <= t} |X(F_p)| / p^dim X at geometric checkpoints.
    Density(DensityArgs),
    /// Fit log density = log C + r log log t and compare with the prediction.
    Fit(FitArgs),
    /// Normalized deviations b(p) for a catalog variety.
    Serre(SerreArgs),
    /// Deviations, traces and angles for an elliptic curve.
    Ec(EcArgs),
    /// List or count primes.
    Primes(PrimesArgs),
}

#[derive(Debug, Args)]
pub struct DensityArgs {
    #[arg(long, value_parser = parse_spec)]
    pub spec: VarietySpec,
    #[arg(long, value_parser = parse_capped)]
    pub tmax: f64,
    #[arg(
        long = "checkpoints-per-decade",
        default_value_t = mertens_core::density::DEFAULT_PER_DECADE,
        value_parser = clap::value_parser!(u32).range(1..=MAX_PER_DECADE as i64)
    )]
    pub per_decade: u32,
}

#[derive(Debug, Args)]
pub struct FitArgs {
    /// Density CSV written by `density`; the spec is read from its config line.
    #[arg(long, value_name = "PATH", conflicts_with_all = ["spec", "tmax"])]
    pub input: Option<PathBuf>,
    #[arg(long, value_parser = parse_spec, required_unless_present = "input")]
    pub spec: Option<VarietySpec>,
    #[arg(long, value_parser = parse_capped, required_unless_present = "input")]
    pub tmax: Option<f64>,
    #[arg(
        long = "checkpoints-per-decade",
        default_value_t = mertens_core::density::DEFAULT_PER_DECADE,
        value_parser = clap::value_parser!(u32).range(1..=MAX_PER_DECADE as i64)
    )]
    pub per_decade: u32,
    /// Fit window `lo,hi`; defaults to the last two decades.
    #[arg(long, value_parser = parse_window)]
    pub window: Option<(f64, f64)>,
}

#[derive(Debug, Args)]
pub struct SerreArgs {
    #[arg(long, value_parser = parse_spec)]
    pub spec: VarietySpec,
    #[arg(long, value_parser = parse_capped)]
    pub pmax: f64,
}

#[derive(Debug, Args)]
pub struct EcArgs {
    /// Coefficients `a4,a6` of y^2 = x^3 + a4 x + a6.
    #[arg(long, value_parser = parse_curve, allow_hyphen_values = true)]
    pub curve: (i64, i64),
    #[arg(long, value_parser = parse_capped)]
    pub pmax: f64,
}

#[derive(Debug, Args)]
pub struct PrimesArgs {
    #[arg(long, value_parser = parse_max)]
    pub max: u64,
    /// Print only the count.
    #[arg(long)]
    pub count: bool,
}

pub fn parse_spec(s: &str) -> Result<VarietySpec, String> {
    s.parse().map_err(|e: mertens_core::Error| match e {
        mertens_core::Error::Grammar { .. } => e.to_string(),
        other => format!("{other} (grammar: {SPEC_GRAMMAR})"),
    })
}

/// Finite real, scientific notation allowed.
pub fn parse_real(s: &str) -> Result<f64, String> {
    let x: f64 = s
        .trim()
        .parse()
        .map_err(|_| format!("`{s}` is not a number"))?;
    if x.is_finite() {
        Ok(x)
    } else {
        Err(format!("`{s}` is not finite"))
    }
}

pub fn parse_capped(s: &str) -> Result<f64, String> {
    let x = parse_real(s)?;
    if x > T_MAX_CAP {
        return Err(format!("{x} exceeds the cap of {T_MAX_CAP:e}"));
    }
    if x <= 0.0 {
        return Err(format!("{x} must be positive"));
    }
    Ok(x)
}

pub fn parse_max(s: &str) -> Result<u64, String> {
    let x = parse_capped(s)?;
    if x.fract() != 0.0 {
        return Err(format!("{x} is not an integer"));
    }
    Ok(x as u64)
}

pub fn parse_window(s: &str) -> Result<(f64, f64), String> {
    let (lo, hi) = s
        .split_once(',')
        .ok_or_else(|| format!("window `{s}` must be lo,hi"))?;
    let (lo, hi) = (parse_real(lo)?, parse_real(hi)?);
    if !(3.0 <= lo && lo < hi) {
        return Err(format!("window must satisfy 3 <= lo < hi, got {lo},{hi}"));
    }
    Ok((lo, hi))
}

pub fn parse_curve(s: &str) -> Result<(i64, i64), String> {
    let bad = || format!("curve `{s}` must be two integers a4,a6");
    let (a4, a6) = s.split_once(',').ok_or_else(bad)?;
    let a4 = a4.trim().parse().map_err(|_| bad())?;
    let a6 = a6.trim().parse().map_err(|_| bad())?;
    Ok((a4, a6))
}
