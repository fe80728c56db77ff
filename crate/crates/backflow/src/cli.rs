//! Command-line front end. `run` returns the process exit code: 0 on
//! success, 1 on computation errors or failed verification, 2 on argument
//! errors.

use std::fs;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use backflow_core::asymptotics::{conjecture_check, figure_data};
use backflow_core::bessel::{bessel_zero, Order, ZeroIndex};
use backflow_core::currents::{
    min_integrated_current, min_local_current, probability_transfer, probability_transfer_timeint,
    DegenerateSystem, MixingParams, RadialSection, Superposition, TransferSpec,
};
use backflow_core::degeneracy::{solve_beta, DegenerateCandidate, DegeneratePair, SweepSpec};
use backflow_core::eigensystem::{energy, make_mode, RadialEigenstate};
use backflow_core::presets;
use clap::error::ErrorKind;
use clap::{Args, CommandFactory, Parser, Subcommand};
use log::{info, warn};
use rayon::prelude::*;
use serde::Serialize;

use crate::acceptance;
use crate::catalog::{self, CatalogRecord};
use crate::config::{OutputFormat, RunConfig};
use crate::error::{Error, Result};
use crate::sweep::run_sweep;

#[derive(Debug, Parser)]
#[command(
    name = "backflow",
    version,
    about = "Quantum backflow on a punctured disk threaded by a flux line"
)]
pub struct Cli {
    /// JSON run configuration; flags override its values.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads (overridden by BACKFLOW_THREADS).
    #[arg(long, global = true)]
    threads: Option<usize>,
    #[arg(long, global = true, value_enum)]
    format: Option<OutputFormat>,
    /// Repeat for more log output on stderr.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// n-th positive zero of J_nu.
    BesselZero {
        #[arg(long)]
        nu: f64,
        #[arg(long)]
        n: u32,
    },
    /// Radial eigenfunction on a uniform grid over (0, R].
    Eigenstate {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        n: u32,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
        #[arg(long, default_value_t = 200)]
        grid: usize,
    },
    /// Solve for the flux making (m, n) and (m', n') degenerate.
    FindDegeneracy {
        #[arg(long, allow_negative_numbers = true)]
        m: i64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        mprime: i64,
        #[arg(long)]
        nprime: u32,
    },
    /// Catalog every degenerate pair over a range of n.
    Sweep {
        #[arg(long, default_value_t = 3)]
        n_min: u32,
        #[arg(long, default_value_t = 164)]
        n_max: u32,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, default_value_t = 1)]
        nprime: u32,
        #[arg(long, default_value_t = backflow_core::degeneracy::DEFAULT_M_PRIME_CAP)]
        mprime_max: i64,
        /// CSV path; a JSON sidecar is written next to it. Stdout if absent.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimal local azimuthal current on a radial grid (radii in units of R).
    MinCurrent {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long, default_value_t = 0.01)]
        r_min: f64,
        #[arg(long, default_value_t = 1.0)]
        r_max: f64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
    },
    /// Minimal section-integrated current (radii in units of R).
    Integrated {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
    },
    /// Probability transfer through a section over a time window.
    Transfer {
        #[command(flatten)]
        pair: PairArgs,
        #[arg(long)]
        r1: f64,
        #[arg(long)]
        r2: f64,
        #[arg(long = "T")]
        duration: f64,
        /// Mixing angle; defaults to the section minimiser.
        #[arg(long, requires = "phase")]
        theta_mix: Option<f64>,
        #[arg(long, requires = "theta_mix")]
        phase: Option<f64>,
        /// Integrate the current over time instead of using T * J.
        #[arg(long)]
        timeint: bool,
    },
    /// Solve the preset rows.
    Table1,
    /// v(r_kmax) for the preset rows or for a catalog.
    Table2 {
        #[arg(long)]
        catalog: Option<PathBuf>,
        /// Inner cutoff R1 in units of R.
        #[arg(long, default_value_t = 0.5)]
        inner: f64,
    },
    /// Scaled minimal-current curves with extremum markers.
    Figure {
        #[arg(long, value_delimiter = ',', default_values_t = [1, 2, 3, 4])]
        rows: Vec<usize>,
        #[arg(long, default_value_t = 4000)]
        samples: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the acceptance suite.
    Verify,
}

/// How a degenerate pair is supplied: a JSON pair (inline or file), a preset,
/// or quantum numbers to solve.
#[derive(Debug, Args)]
struct PairArgs {
    /// Pair JSON as printed by find-degeneracy, or a path to such a file.
    #[arg(long)]
    pair: Option<String>,
    /// Preset name (row1..row4) or row number.
    #[arg(long)]
    preset: Option<String>,
    #[arg(long = "m", allow_negative_numbers = true)]
    m: Option<i64>,
    #[arg(long = "n")]
    n: Option<u32>,
    #[arg(long)]
    mprime: Option<i64>,
    #[arg(long)]
    nprime: Option<u32>,
}

fn usage_error(kind: ErrorKind, msg: impl std::fmt::Display) -> clap::Error {
    Cli::command().error(kind, msg)
}

enum Failure {
    Usage(clap::Error),
    Compute(Error),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Compute(e)
    }
}

impl From<backflow_core::Error> for Failure {
    fn from(e: backflow_core::Error) -> Self {
        Failure::Compute(e.into())
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Compute(e.into())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Compute(e.into())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Compute(e.into())
    }
}

type Outcome<T = ()> = std::result::Result<T, Failure>;

struct Context {
    cfg: RunConfig,
}

fn solve(c: DegenerateCandidate, tol: f64) -> Result<DegeneratePair> {
    solve_beta(c, tol)?.ok_or_else(|| {
        Error::NotFound(format!(
            "(m, n, m', n') = ({}, {}, {}, {})",
            c.m, c.n, c.m_prime, c.n_prime
        ))
    })
}

impl PairArgs {
    fn resolve(&self, ctx: &Context) -> Outcome<DegeneratePair> {
        let numbers = [
            self.m.is_some(),
            self.n.is_some(),
            self.mprime.is_some(),
            self.nprime.is_some(),
        ];
        let sources = [
            self.pair.is_some(),
            self.preset.is_some(),
            numbers.iter().any(|&b| b),
        ];
        if sources.iter().filter(|&&b| b).count() != 1 {
            return Err(Failure::Usage(usage_error(
                ErrorKind::ArgumentConflict,
                "give exactly one of --pair, --preset, or --m/--n/--mprime/--nprime",
            )));
        }
        if let Some(text) = &self.pair {
            let json = if text.trim_start().starts_with('{') {
                text.clone()
            } else {
                let path = Path::new(text);
                fs::read_to_string(path).map_err(|e| Error::io(path, e))?
            };
            let given: DegeneratePair = serde_json::from_str(&json)?;
            let c = given.candidate;
            let candidate = DegenerateCandidate::new(c.m, c.n, c.m_prime, c.n_prime)?;
            return Ok(DegeneratePair::at_beta(
                candidate,
                given.beta,
                given.iterations,
            )?);
        }
        if let Some(name) = &self.preset {
            let preset = name
                .parse::<usize>()
                .ok()
                .and_then(presets::row)
                .or_else(|| presets::by_name(name))
                .ok_or_else(|| {
                    Failure::Usage(usage_error(
                        ErrorKind::InvalidValue,
                        format!("unknown preset `{name}`"),
                    ))
                })?;
            return Ok(solve(preset.candidate, ctx.cfg.beta_tol())?);
        }
        match (self.m, self.n, self.mprime, self.nprime) {
            (Some(m), Some(n), Some(mp), Some(np)) => {
                let c = DegenerateCandidate::new(m, n, mp, np)
                    .map_err(|e| Failure::Usage(usage_error(ErrorKind::InvalidValue, e)))?;
                Ok(solve(c, ctx.cfg.beta_tol())?)
            }
            _ => Err(Failure::Usage(usage_error(
                ErrorKind::MissingRequiredArgument,
                "--m, --n, --mprime and --nprime must be given together",
            ))),
        }
    }
}

/// Tabular output in the configured format.
fn emit_rows<T: Serialize>(ctx: &Context, out: &mut dyn Write, rows: &[T]) -> Result<()> {
    match ctx.cfg.output_format {
        OutputFormat::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for row in rows {
                w.serialize(row)?;
            }
            w.flush()?;
        }
        OutputFormat::Json => {
            serde_json::to_writer_pretty(&mut *out, rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn emit_json<T: Serialize>(out: &mut dyn Write, value: &T) -> Result<()> {
    serde_json::to_writer_pretty(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

/// `x > 0` rounded to `digits` significant digits.
fn significant(x: f64, digits: i32) -> String {
    let decimals = (digits - 1 - x.log10().floor() as i32).max(0) as usize;
    format!("{x:.decimals$}")
}

fn section(r1: f64, r2: f64) -> Outcome<RadialSection> {
    RadialSection::new(r1, r2, 1.0)
        .map_err(|e| Failure::Usage(usage_error(ErrorKind::InvalidValue, e)))
}

/// Section in physical lengths from radii given in units of R.
fn scaled(sec: RadialSection, ctx: &Context) -> RadialSection {
    let r = ctx.cfg.units.radius;
    RadialSection {
        r1: sec.r1 * r,
        r2: sec.r2 * r,
    }
}

fn preset_pairs(ctx: &Context, rows: &[usize]) -> Outcome<Vec<DegeneratePair>> {
    rows.iter()
        .map(|&i| {
            let preset = presets::row(i).ok_or_else(|| {
                Failure::Usage(usage_error(
                    ErrorKind::InvalidValue,
                    format!("no preset row {i}"),
                ))
            })?;
            Ok(solve(preset.candidate, ctx.cfg.beta_tol())?)
        })
        .collect()
}

#[derive(Serialize)]
struct EigenRow {
    r: f64,
    phi: f64,
    energy: f64,
}

#[derive(Serialize)]
struct MinCurrentRow {
    #[serde(rename = "r_over_R")]
    r_over_r: f64,
    min_ja_scaled: f64,
    theta_opt: f64,
    phase_opt: f64,
}

#[derive(Serialize)]
struct Table2Row {
    m: i64,
    n: u32,
    m_prime: i64,
    n_prime: u32,
    beta: f64,
    v_at_rkmax: f64,
}

#[derive(Serialize)]
struct FigureRow {
    row: usize,
    m: i64,
    n: u32,
    m_prime: i64,
    n_prime: u32,
    #[serde(rename = "r_over_R")]
    r_over_r: f64,
    min_ja_scaled: f64,
    /// Extremum index for marker rows, empty on the curve.
    marker: Option<i64>,
}

fn execute(command: Command, ctx: &Context, out: &mut dyn Write) -> Outcome {
    let units = ctx.cfg.units;
    match command {
        Command::BesselZero { nu, n } => {
            let z = bessel_zero(Order::new(nu)?, ZeroIndex::new(n)?)?;
            writeln!(out, "{}", significant(z, 15))?;
        }
        Command::Eigenstate { m, n, beta, grid } => {
            if grid == 0 {
                return Err(Failure::Usage(usage_error(
                    ErrorKind::InvalidValue,
                    "--grid must be positive",
                )));
            }
            let cfg = units.with_beta(beta);
            let mode = make_mode(m, n, &cfg)?;
            let state = RadialEigenstate::new(mode, cfg)?;
            let e = energy(&mode, &cfg).value;
            let rows = (1..=grid)
                .map(|i| {
                    let r = cfg.radius * i as f64 / grid as f64;
                    Ok(EigenRow {
                        r,
                        phi: state.phi(r)?,
                        energy: e,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit_rows(ctx, out, &rows)?;
        }
        Command::FindDegeneracy {
            m,
            n,
            mprime,
            nprime,
        } => {
            let c = DegenerateCandidate::new(m, n, mprime, nprime)
                .map_err(|e| Failure::Usage(usage_error(ErrorKind::InvalidValue, e)))?;
            emit_json(out, &solve(c, ctx.cfg.beta_tol())?)?;
        }
        Command::Sweep {
            n_min,
            n_max,
            m,
            nprime,
            mprime_max,
            out: path,
        } => {
            let spec = SweepSpec {
                m,
                n_prime: nprime,
                n_range: n_min..=n_max,
                m_prime_range: (m + 1)..=mprime_max,
                tol: ctx.cfg.beta_tol(),
            };
            let result = run_sweep(&spec, ctx.cfg.threads)?;
            info!(
                "{} pairs, {} failed candidates",
                result.pairs.len(),
                result.failures.len()
            );
            let records: Vec<CatalogRecord> =
                result.pairs.iter().map(CatalogRecord::from).collect();
            match path {
                Some(path) => catalog::write_catalog(&path, &records, &result.sidecar)?,
                None => catalog::write_csv(out, &records)?,
            }
        }
        Command::MinCurrent {
            pair,
            r_min,
            r_max,
            samples,
        } => {
            if !(r_min > 0.0 && r_min < r_max && r_max <= 1.0) || samples < 2 {
                return Err(Failure::Usage(usage_error(
                    ErrorKind::InvalidValue,
                    "need 0 < r-min < r-max <= 1 and at least 2 samples",
                )));
            }
            let sys = DegenerateSystem::new(pair.resolve(ctx)?, &units)?;
            let scale = sys.config().current_scale();
            let rows = (0..samples)
                .map(|i| {
                    let x = r_min + (r_max - r_min) * i as f64 / (samples - 1) as f64;
                    let min = min_local_current(&sys, x * units.radius)?;
                    Ok(MinCurrentRow {
                        r_over_r: x,
                        min_ja_scaled: scale * min.value,
                        theta_opt: min.optimal.theta_mix,
                        phase_opt: min.optimal.phase,
                    })
                })
                .collect::<Result<Vec<_>>>()?;
            emit_rows(ctx, out, &rows)?;
        }
        Command::Integrated { pair, r1, r2 } => {
            let sec = section(r1, r2)?;
            let sys = DegenerateSystem::new(pair.resolve(ctx)?, &units)?;
            emit_json(out, &min_integrated_current(&sys, scaled(sec, ctx))?)?;
        }
        Command::Transfer {
            pair,
            r1,
            r2,
            duration,
            theta_mix,
            phase,
            timeint,
        } => {
            let sec = scaled(section(r1, r2)?, ctx);
            let spec = TransferSpec::new(sec, duration)
                .map_err(|e| Failure::Usage(usage_error(ErrorKind::InvalidValue, e)))?;
            let sys = DegenerateSystem::new(pair.resolve(ctx)?, &units)?;
            let mix = match (theta_mix, phase) {
                (Some(t), Some(p)) => MixingParams::new(t, p)
                    .map_err(|e| Failure::Usage(usage_error(ErrorKind::InvalidValue, e)))?,
                _ => min_integrated_current(&sys, sec)?.optimal,
            };
            let delta = if timeint {
                probability_transfer_timeint(&Superposition::degenerate(&sys, mix), spec)?
            } else {
                probability_transfer(&sys, mix, spec)?
            };
            emit_json(out, &delta)?;
        }
        Command::Table1 => {
            let pairs = preset_pairs(ctx, &[1, 2, 3, 4])?;
            let records: Vec<CatalogRecord> = pairs.iter().map(CatalogRecord::from).collect();
            emit_rows(ctx, out, &records)?;
        }
        Command::Table2 {
            catalog: path,
            inner,
        } => {
            if !(inner > 0.0 && inner < 1.0) {
                return Err(Failure::Usage(usage_error(
                    ErrorKind::InvalidValue,
                    "--inner must lie in (0, 1)",
                )));
            }
            let pairs = match path {
                Some(path) => catalog::read_catalog(&path)?
                    .iter()
                    .map(CatalogRecord::to_pair)
                    .collect::<Result<Vec<_>>>()?,
                None => preset_pairs(ctx, &[1, 2, 3, 4])?,
            };
            let report = conjecture_check(&pairs, &units, inner);
            for (c, e) in &report.failures {
                warn!("skipping {c:?}: {e}");
            }
            if report.violations > 0 {
                warn!("{} rows have v(r_kmax) < 1", report.violations);
            }
            let rows: Vec<Table2Row> = report
                .rows
                .iter()
                .map(|r| Table2Row {
                    m: r.candidate.m,
                    n: r.candidate.n,
                    m_prime: r.candidate.m_prime,
                    n_prime: r.candidate.n_prime,
                    beta: r.beta,
                    v_at_rkmax: r.v_at_rkmax,
                })
                .collect();
            emit_rows(ctx, out, &rows)?;
        }
        Command::Figure {
            rows,
            samples,
            out: path,
        } => {
            let pairs = preset_pairs(ctx, &rows)?;
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(ctx.cfg.threads)
                .build()
                .map_err(Error::from)?;
            let curves = pool.install(|| {
                pairs
                    .par_iter()
                    .map(|p| figure_data(std::slice::from_ref(p), &units, samples))
                    .collect::<std::result::Result<Vec<_>, _>>()
            })?;
            let mut table = Vec::new();
            for (&row, curve) in rows.iter().zip(curves.iter().flatten()) {
                let c = curve.candidate;
                let line = |r_over_r, min_ja_scaled, marker| FigureRow {
                    row,
                    m: c.m,
                    n: c.n,
                    m_prime: c.m_prime,
                    n_prime: c.n_prime,
                    r_over_r,
                    min_ja_scaled,
                    marker,
                };
                table.extend(curve.points.iter().map(|&(x, v)| line(x, v, None)));
                table.extend(
                    curve
                        .markers
                        .iter()
                        .map(|m| line(m.r_over_r, m.min_ja_scaled, Some(m.k))),
                );
            }
            match path {
                Some(path) => {
                    let file = fs::File::create(&path).map_err(|e| Error::io(&path, e))?;
                    emit_rows(ctx, &mut BufWriter::new(file), &table)?;
                }
                None => emit_rows(ctx, out, &table)?,
            }
        }
        Command::Verify => {
            let outcomes = acceptance::run_all(ctx.cfg.threads);
            for o in &outcomes {
                writeln!(out, "{o}")?;
            }
            let failed = outcomes.iter().filter(|o| !o.passed).count();
            writeln!(
                out,
                "{} of {} criteria passed",
                outcomes.len() - failed,
                outcomes.len()
            )?;
            if failed > 0 {
                return Err(Failure::Compute(Error::Format(format!(
                    "{failed} acceptance criteria failed"
                ))));
            }
        }
    }
    Ok(())
}

fn build_context(cli: &Cli) -> Outcome<Context> {
    let mut cfg = match &cli.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    if let Some(format) = cli.format {
        cfg.output_format = format;
    }
    cfg.resolve_threads(cli.threads)
        .map_err(|e| Failure::Usage(usage_error(ErrorKind::InvalidValue, e)))?;
    Ok(Context { cfg })
}

/// Parses `args` and runs the command, writing results to `out`.
pub fn run<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let level = match cli.verbose {
        0 => log::LevelFilter::Warn,
        1 => log::LevelFilter::Info,
        _ => log::LevelFilter::Debug,
    };
    let _ = env_logger::Builder::new()
        .filter_level(level)
        .parse_default_env()
        .try_init();

    let result = build_context(&cli).and_then(|ctx| execute(cli.command, &ctx, out));
    match result.and_then(|()| out.flush().map_err(Failure::from)) {
        Ok(()) => 0,
        Err(Failure::Usage(e)) => {
            let _ = e.print();
            2
        }
        Err(Failure::Compute(e)) => {
            eprintln!("error: {e}");
            1
        }
    }
}

#[cfg(test)]
mod tests {
    use super::significant;

    #[test]
    fn fifteen_significant_digits() {
        assert_eq!(significant(2.404825557695773, 15), "2.40482555769577");
        assert_eq!(significant(616.5, 15), "616.500000000000");
    }
}
