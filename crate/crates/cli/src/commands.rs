use std::fs;
use std::io::{self, Write};
use std::path::Path;

use mertens_core::dh::{compare, default_window};
use mertens_core::primes::{prime_count, PrimeStream};
use mertens_core::{
    density_profile, fit_dh, predicted_dh, scan_deviations, Checkpoint, Deviations, Error, Fit,
    Schedule, VarietySpec,
};

use crate::args::{parse_spec, Cli, Command, DensityArgs, EcArgs, FitArgs, PrimesArgs, SerreArgs};
use crate::format::{num, opt};

pub const DENSITY_COLUMNS: &str =
    "t,primes_used,log_density,density,normalized_density,skipped_bad";
pub const FIT_COLUMNS: &str =
    "spec,C_pred,r_pred,C_hat,r_hat,r_rounded,rel_err_C,residual_rms,verdict";
pub const SERRE_COLUMNS: &str = "p,ratio,b,theta";
pub const EC_COLUMNS: &str = "p,a_p,ratio,b,theta";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
    #[error(transparent)]
    Io(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) | CliError::Io(_) => 1,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::Grammar { .. }
            | Error::InvalidSpec(_)
            | Error::SingularCurve { .. }
            | Error::CurveOverflow { .. }
            | Error::TooSmall { .. }
            | Error::Schedule(_)
            | Error::TooFewPoints(_)
            | Error::DegenerateWindow
            | Error::WindowBelowThree(_) => CliError::Usage(e.to_string()),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

/// Runs the parsed command, writing to `--out` or standard output.
pub fn execute(cli: &Cli) -> Result<(), CliError> {
    match &cli.out {
        Some(path) => {
            let mut buf = Vec::new();
            run(&cli.command, &mut buf)?;
            fs::write(path, buf)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = io::BufWriter::new(stdout.lock());
            run(&cli.command, &mut lock)?;
            lock.flush()?;
        }
    }
    Ok(())
}

pub fn run(command: &Command, out: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Density(a) => density(a, out),
        Command::Fit(a) => fit(a, out),
        Command::Serre(a) => serre(a, out),
        Command::Ec(a) => ec(a, out),
        Command::Primes(a) => primes(a, out),
    }
}

fn density(a: &DensityArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let schedule = Schedule::Geometric {
        per_decade: a.per_decade,
    };
    let profile = density_profile(&a.spec, a.tmax, &schedule)?;
    let r_pred = predicted_dh::<f64>(&a.spec).ok().map(|p| p.r);
    writeln!(
        out,
        "# command=density spec={} tmax={} checkpoints_per_decade={}",
        a.spec,
        num(a.tmax),
        a.per_decade
    )?;
    writeln!(out, "# {DENSITY_COLUMNS}")?;
    for c in &profile.checkpoints {
        let normalized = r_pred.map(|r| c.density * c.t.ln().powi(-r));
        writeln!(
            out,
            "{},{},{},{},{},{}",
            num(c.t),
            c.primes_used,
            num(c.log_density),
            num(c.density),
            opt(normalized),
            profile.skipped_at(c.t)
        )?;
    }
    Ok(())
}

fn fit(a: &FitArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let (spec, checkpoints, t_max, source) = match &a.input {
        Some(path) => {
            let (spec, rows) = read_density_csv(path)?;
            let t_max = rows.last().map(|c| c.t).unwrap_or(0.0);
            (spec, rows, t_max, format!("input={}", path.display()))
        }
        None => {
            let spec = a.spec.expect("clap requires --spec");
            let t_max = a.tmax.expect("clap requires --tmax");
            let schedule = Schedule::Geometric {
                per_decade: a.per_decade,
            };
            let profile = density_profile(&spec, t_max, &schedule)?;
            let source = format!(
                "tmax={} checkpoints_per_decade={}",
                num(t_max),
                a.per_decade
            );
            (spec, profile.checkpoints, t_max, source)
        }
    };
    let window = a.window.unwrap_or_else(|| default_window(t_max));
    let fit: Fit = fit_dh(&checkpoints, window)?;
    writeln!(
        out,
        "# command=fit spec={spec} {source} window={},{}",
        num(window.0),
        num(window.1)
    )?;
    writeln!(out, "# {FIT_COLUMNS}")?;
    let fitted = format!("{},{},{}", num(fit.c_hat), num(fit.r_hat), fit.r_rounded);
    let cell = csv_cell(&spec.to_string());
    match predicted_dh::<f64>(&spec) {
        Ok(prediction) => {
            let report = compare(&spec, prediction, fit);
            writeln!(
                out,
                "{cell},{},{},{fitted},{},{},{}",
                num(prediction.c),
                prediction.r,
                num(report.rel_err_c),
                num(fit.residual_rms),
                report.verdict
            )?;
        }
        Err(Error::NoPrediction(_)) => {
            writeln!(
                out,
                "{cell},,,{fitted},,{},no_prediction",
                num(fit.residual_rms)
            )?;
        }
        Err(e) => return Err(e.into()),
    }
    Ok(())
}

/// Quotes a cell holding a comma (elliptic specs such as `ec:1,1`).
pub fn csv_cell(s: &str) -> String {
    if s.contains(',') {
        format!("\"{s}\"")
    } else {
        s.to_string()
    }
}

/// Reads the spec and checkpoints back from a `density` CSV.
pub fn read_density_csv(path: &Path) -> Result<(VarietySpec, Vec<Checkpoint>), CliError> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::Runtime(format!("cannot read {}: {e}", path.display())))?;
    let mut spec = None;
    let mut rows = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        if let Some(comment) = line.strip_prefix('#') {
            if let Some(s) = comment
                .split_whitespace()
                .find_map(|w| w.strip_prefix("spec="))
            {
                spec = Some(parse_spec(s).map_err(CliError::Usage)?);
            }
            continue;
        }
        rows.push(
            parse_density_row(line)
                .map_err(|e| CliError::Usage(format!("{}:{}: {e}", path.display(), i + 1)))?,
        );
    }
    let spec = spec.ok_or_else(|| {
        CliError::Usage(format!(
            "{}: no `# ... spec=...` config line",
            path.display()
        ))
    })?;
    Ok((spec, rows))
}

/// Parses the first four columns of a density row.
pub fn parse_density_row(line: &str) -> Result<Checkpoint, String> {
    let cells: Vec<&str> = line.split(',').collect();
    if cells.len() < 4 {
        return Err(format!(
            "expected at least 4 columns, found {}",
            cells.len()
        ));
    }
    let real = |s: &str| {
        s.trim()
            .parse::<f64>()
            .map_err(|_| format!("bad number `{s}`"))
    };
    Ok(Checkpoint {
        t: real(cells[0])?,
        primes_used: cells[1]
            .trim()
            .parse()
            .map_err(|_| format!("bad count `{}`", cells[1]))?,
        log_density: real(cells[2])?,
        density: real(cells[3])?,
    })
}

fn serre(a: &SerreArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let report = scan_deviations::<f64>(&a.spec, a.pmax)?;
    writeln!(out, "# command=serre spec={} pmax={}", a.spec, num(a.pmax))?;
    writeln!(out, "# {SERRE_COLUMNS}")?;
    for s in &report.samples {
        writeln!(
            out,
            "{},{},{},{}",
            s.p,
            num(s.ratio),
            num(s.b),
            opt(s.theta)
        )?;
    }
    footer(&report, out)
}

fn ec(a: &EcArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let spec = VarietySpec::elliptic(a.curve.0, a.curve.1)?;
    let report = scan_deviations::<f64>(&spec, a.pmax)?;
    writeln!(
        out,
        "# command=ec curve={},{} pmax={}",
        a.curve.0,
        a.curve.1,
        num(a.pmax)
    )?;
    writeln!(out, "# {EC_COLUMNS}")?;
    let mut hasse = true;
    for s in &report.samples {
        let pf = s.p as f64;
        let a_p = (pf + 1.0 - s.ratio * pf).round() as i64;
        hasse &= (a_p as i128).pow(2) <= 4 * s.p as i128;
        writeln!(
            out,
            "{},{a_p},{},{},{}",
            s.p,
            num(s.ratio),
            num(s.b),
            opt(s.theta)
        )?;
    }
    footer(&report, out)?;
    let (lo, hi) = report
        .samples
        .iter()
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), s| {
            (lo.min(s.b), hi.max(s.b))
        });
    if !report.samples.is_empty() {
        writeln!(out, "# min_b: {}", num(lo))?;
        writeln!(out, "# max_b: {}", num(hi))?;
    }
    writeln!(out, "# hasse_bound_holds: {hasse}")?;
    writeln!(
        out,
        "# all_good_b_in_(-2,3): {}",
        report.all_b_within(-2.0, 3.0)
    )?;
    Ok(())
}

fn footer(report: &Deviations, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "# good_primes: {}", report.samples.len())?;
    writeln!(out, "# empirical_B: {}", num(report.empirical_b))?;
    writeln!(
        out,
        "# signs: positive={} zero={} negative={}",
        report.positive, report.zero, report.negative
    )?;
    if let Some(s) = report.argmax() {
        writeln!(out, "# argmax_p: {}", s.p)?;
    }
    let bad: Vec<String> = report.skipped_bad.iter().map(u64::to_string).collect();
    writeln!(out, "# skipped_bad: [{}]", bad.join(" "))?;
    if let Some(gap) = report.closed_form_gap {
        writeln!(out, "# closed_form_gap: {}", num(gap))?;
    }
    Ok(())
}

fn primes(a: &PrimesArgs, out: &mut dyn Write) -> Result<(), CliError> {
    writeln!(out, "# command=primes max={} count={}", a.max, a.count)?;
    if a.count {
        writeln!(out, "# pi")?;
        writeln!(out, "{}", prime_count(a.max))?;
        return Ok(());
    }
    writeln!(out, "# p")?;
    let mut stream = PrimeStream::new(a.max);
    while let Some(segment) = stream.next_segment() {
        for p in segment {
            writeln!(out, "{p}")?;
        }
    }
    Ok(())
}
