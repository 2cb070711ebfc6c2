use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use diracwell::model::{FieldConfig, QuantumLabel};
use diracwell::oracle::{landau_grid_levels, shooting_secular, ShootingOptions};
use diracwell::piecewise::SecularFunction;
use diracwell::spectrum::{
    find_roots, landau_levels_magnetic, landau_levels_proportional, sweep_k, sweep_v0,
    SpectrumBranch, SweepSettings, DEFAULT_SCAN_POINTS, DEFAULT_TOLERANCE,
};
use diracwell::states::{assemble_state, pt_eigenvalue, PiecewiseState, StateRow};
use diracwell::verify::{verify_landau, verify_square_well, Check};
use diracwell::Potential1D;
use serde::Serialize;

use crate::config::{Command, Format, Method, RunConfig};
use crate::error::CliError;

/// Proportionality constants checked by `verify` when none is given.
const VERIFY_ALPHAS: [f64; 4] = [0.0, 0.3, 0.6, 0.9];
const LANDAU_DEFAULT_MAX_LEVEL: usize = 5;

pub fn run(config: &RunConfig) -> Result<(), CliError> {
    config.validate()?;
    match config.command {
        Command::Spectrum => spectrum(config),
        Command::SweepK | Command::SweepV0 => sweep(config),
        Command::State => state(config),
        Command::Landau => landau(config),
        Command::Verify => verify(config),
    }
}

fn io_error(path: &Path, e: io::Error) -> CliError {
    CliError::Config(format!("cannot write {}: {e}", path.display()))
}

fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p).map_err(|e| io_error(p, e))?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn write_json<T: Serialize>(config: &RunConfig, value: &T) -> Result<(), CliError> {
    let mut out = open_output(&config.output)?;
    let write = |out: &mut Box<dyn Write>| -> io::Result<()> {
        serde_json::to_writer_pretty(&mut *out, value)?;
        writeln!(out)?;
        out.flush()
    };
    write(&mut out).map_err(|e| io_error(config.output.as_deref().unwrap_or(Path::new("<stdout>")), e))
}

fn write_csv<R: Serialize>(path: &Option<PathBuf>, header: &[&str], rows: &[R]) -> Result<(), CliError> {
    let display = path.clone().unwrap_or_else(|| PathBuf::from("<stdout>"));
    let out = open_output(path)?;
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    let fail = |e: csv::Error| CliError::Config(format!("cannot write {}: {e}", display.display()));
    writer.write_record(header).map_err(fail)?;
    for row in rows {
        writer.serialize(row).map_err(fail)?;
    }
    writer
        .flush()
        .map_err(|e| io_error(&display, e))
}

/// The electric potential to use: an explicit profile or the square well.
fn electric_potential(config: &RunConfig) -> Result<Potential1D, CliError> {
    match (&config.potential, &config.v0) {
        (Some(p), None) => Ok(p.clone()),
        (None, Some(_)) => Ok(Potential1D::square_well(config.number("v0", &config.v0)?, config.half_width)?),
        (Some(_), Some(_)) => Err(CliError::Config("give either --v0 or --potential, not both".into())),
        (None, None) => Err(CliError::Config("--v0 or --potential is required".into())),
    }
}

fn secular_function(config: &RunConfig, k: f64) -> Result<(Method, SecularFunction), CliError> {
    let potential = electric_potential(config)?;
    let method = config.method.unwrap_or(if config.potential.is_none() {
        Method::Closed
    } else if potential.is_piecewise() {
        Method::Transfer
    } else {
        Method::Shooting
    });
    let f = match method {
        Method::Closed => {
            if config.potential.is_some() {
                return Err(CliError::Config("--method closed needs --v0, not --potential".into()));
            }
            SecularFunction::square_well(k, config.number("v0", &config.v0)?, config.half_width)
        }
        Method::Transfer => SecularFunction::general(k, potential)?,
        Method::Shooting => shooting_secular(FieldConfig::electric(potential), k, ShootingOptions::default())?,
    };
    Ok((method, f))
}

#[derive(Serialize)]
struct SpectrumRow {
    n: usize,
    epsilon: f64,
}

#[derive(Serialize)]
struct SpectrumReport<'a> {
    k: f64,
    v0: Option<f64>,
    half_width: Option<f64>,
    potential: Option<&'a Potential1D>,
    method: Method,
    roots: Vec<f64>,
}

fn spectrum(config: &RunConfig) -> Result<(), CliError> {
    let k = config.number("k", &config.k)?;
    let (method, f) = secular_function(config, k)?;
    let roots = find_roots(&f, DEFAULT_SCAN_POINTS, DEFAULT_TOLERANCE);
    match config.format {
        Format::Csv => {
            let rows: Vec<SpectrumRow> = roots
                .iter()
                .enumerate()
                .map(|(n, &epsilon)| SpectrumRow { n, epsilon })
                .collect();
            write_csv(&config.output, &["n", "epsilon"], &rows)
        }
        Format::Json => {
            let square = config.potential.is_none();
            write_json(
                config,
                &SpectrumReport {
                    k,
                    v0: if square { Some(config.number("v0", &config.v0)?) } else { None },
                    half_width: square.then_some(config.half_width),
                    potential: config.potential.as_ref(),
                    method,
                    roots,
                },
            )
        }
    }
}

#[derive(Serialize)]
struct BranchRow {
    param: f64,
    branch: usize,
    epsilon: f64,
}

#[derive(Serialize)]
struct TerminationRow {
    param: f64,
    branch: usize,
    epsilon: f64,
    termination: &'static str,
}

fn termination_rows(branches: &[SpectrumBranch]) -> Vec<TerminationRow> {
    branches
        .iter()
        .filter_map(|b| {
            b.termination.map(|t| TerminationRow {
                param: t.param,
                branch: b.branch,
                epsilon: t.epsilon,
                termination: match t.boundary {
                    diracwell::spectrum::BandBoundary::Lower => "lower",
                    diracwell::spectrum::BandBoundary::WellBottom => "well_bottom",
                    diracwell::spectrum::BandBoundary::Upper => "upper",
                },
            })
        })
        .collect()
}

/// `<dir>/<stem>.terminations.csv` next to `path`.
pub fn terminations_path(path: &Path) -> PathBuf {
    let stem = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
    path.with_file_name(format!("{stem}.terminations.csv"))
}

fn sweep(config: &RunConfig) -> Result<(), CliError> {
    if config.potential.is_some() {
        return Err(CliError::Config("sweeps are defined for the square well only; use --v0".into()));
    }
    let settings = SweepSettings {
        half_width: config.half_width,
        ..SweepSettings::default()
    };
    let branches = if config.command == Command::SweepK {
        sweep_k(config.number("v0", &config.v0)?, config.range("k", &config.k)?, settings)
    } else {
        sweep_v0(config.number("k", &config.k)?, config.range("v0", &config.v0)?, settings)
    };
    match config.format {
        Format::Json => write_json(config, &branches),
        Format::Csv => {
            let rows: Vec<BranchRow> = branches
                .iter()
                .flat_map(|b| {
                    b.samples.iter().map(move |&(param, epsilon)| BranchRow {
                        param,
                        branch: b.branch,
                        epsilon,
                    })
                })
                .collect();
            write_csv(&config.output, &["param", "branch", "epsilon"], &rows)?;
            let terminations = termination_rows(&branches);
            let header = ["param", "branch", "epsilon", "termination"];
            match &config.output {
                Some(path) => write_csv(&Some(terminations_path(path)), &header, &terminations),
                None => {
                    for t in &terminations {
                        eprintln!(
                            "termination: param={} branch={} epsilon={} boundary={}",
                            t.param, t.branch, t.epsilon, t.termination
                        );
                    }
                    Ok(())
                }
            }
        }
    }
}

#[derive(Serialize)]
struct StateMetadata {
    k: f64,
    epsilon: f64,
    level: usize,
    v0: Option<f64>,
    half_width: Option<f64>,
    potential: Potential1D,
    norm: f64,
    /// `[re, im]`, absent when the potential is not PT symmetric.
    pt_eigenvalue: Option<[f64; 2]>,
}

#[derive(Serialize)]
struct StateReport {
    metadata: StateMetadata,
    rows: Vec<StateRow>,
}

fn state(config: &RunConfig) -> Result<(), CliError> {
    let k = config.number("k", &config.k)?;
    let potential = electric_potential(config)?;
    if !potential.is_piecewise() {
        return Err(CliError::Config("states are built for step potentials only".into()));
    }
    let (_, f) = secular_function(config, k)?;
    let roots = find_roots(&f, DEFAULT_SCAN_POINTS, DEFAULT_TOLERANCE);
    let level = config.level.unwrap_or(0);
    let epsilon = *roots.get(level).ok_or_else(|| {
        CliError::Config(format!("level {level} requested but only {} bound states exist", roots.len()))
    })?;
    let state: PiecewiseState = assemble_state(QuantumLabel::new(k, epsilon), &potential)?;
    let rows = StateRow::rows(&state);
    match config.format {
        Format::Csv => write_csv(&config.output, &StateRow::HEADER, &rows),
        Format::Json => {
            let square = config.potential.is_none();
            let pt = pt_eigenvalue(&state).ok().map(|l| [l.re, l.im]);
            let metadata = StateMetadata {
                k,
                epsilon,
                level,
                v0: if square { Some(config.number("v0", &config.v0)?) } else { None },
                half_width: square.then_some(config.half_width),
                potential,
                norm: state.norm,
                pt_eigenvalue: pt,
            };
            write_json(config, &StateReport { metadata, rows })
        }
    }
}

#[derive(Serialize)]
struct LandauRow {
    n: usize,
    epsilon_plus: f64,
    epsilon_minus: f64,
    mu: f64,
    mu_grid: f64,
}

fn landau(config: &RunConfig) -> Result<(), CliError> {
    let beta = config
        .beta
        .ok_or_else(|| CliError::Config("--beta is required for landau".into()))?;
    let alpha = config.alpha.unwrap_or(0.0);
    let k = match config.k {
        Some(_) => config.number("k", &config.k)?,
        None => 0.0,
    };
    let max_level = config.level.unwrap_or(LANDAU_DEFAULT_MAX_LEVEL);
    let grid = landau_grid_levels(alpha, beta, k, max_level + 1)?;
    let c2 = 1.0 - alpha * alpha;
    let rows = grid
        .iter()
        .map(|g| {
            let n = g.n as i64;
            let (plus, minus) = if alpha == 0.0 {
                landau_levels_magnetic(beta, n)?
            } else {
                landau_levels_proportional(alpha, beta, k, n)?
            };
            Ok(LandauRow {
                n: g.n,
                epsilon_plus: plus,
                epsilon_minus: minus,
                mu: (plus + alpha * k).powi(2) / c2,
                mu_grid: g.mu,
            })
        })
        .collect::<Result<Vec<_>, diracwell::Error>>()?;
    match config.format {
        Format::Csv => write_csv(
            &config.output,
            &["n", "epsilon_plus", "epsilon_minus", "mu", "mu_grid"],
            &rows,
        ),
        Format::Json => write_json(config, &rows),
    }
}

#[derive(Serialize)]
struct CheckRow<'a> {
    check: &'a str,
    passed: bool,
    detail: &'a str,
}

fn verify(config: &RunConfig) -> Result<(), CliError> {
    let k = match config.k {
        Some(_) => config.number("k", &config.k)?,
        None => 2.0,
    };
    let v0 = match config.v0 {
        Some(_) => config.number("v0", &config.v0)?,
        None => 2.0,
    };
    if config.potential.is_some() {
        return Err(CliError::Config("verify runs on the square well; use --k and --v0".into()));
    }
    let mut checks: Vec<Check> = verify_square_well(k, v0, config.half_width);
    let beta = config.beta.unwrap_or(1.0);
    let levels = config.level.unwrap_or(LANDAU_DEFAULT_MAX_LEVEL) + 1;
    let alphas: Vec<f64> = match config.alpha {
        Some(a) => vec![a],
        None => VERIFY_ALPHAS.to_vec(),
    };
    for alpha in alphas {
        checks.extend(verify_landau(alpha, beta, k, levels));
    }

    let rows: Vec<CheckRow> = checks
        .iter()
        .map(|c| CheckRow {
            check: &c.name,
            passed: c.passed,
            detail: &c.detail,
        })
        .collect();
    match config.format {
        Format::Csv => write_csv(&config.output, &["check", "passed", "detail"], &rows)?,
        Format::Json => write_json(config, &checks)?,
    }
    for c in &checks {
        eprintln!("[{}] {}: {}", if c.passed { "PASS" } else { "FAIL" }, c.name, c.detail);
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    if failed == 0 {
        Ok(())
    } else {
        Err(CliError::Verification(failed))
    }
}
