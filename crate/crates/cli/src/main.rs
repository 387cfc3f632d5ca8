//! `lswh` — command-line front end for the Landau-Streater / Werner-Holevo
//! channel toolkit.
//!
//! Subcommands: spectrum, determinant, capacities, critical-x, decompose,
//! complement, choi, verify. Exit codes: 0 success, 1 numerical/invariant
//! failure, 2 usage error.

mod config;
mod output;
mod verify;

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use rayon::prelude::*;
use serde::Serialize;

use lswh::capacity::{
    classical_capacity_one_shot, coherent_information_diagonal, critical_x,
    entanglement_assisted_capacity,
};
use lswh::channel::{choi_matrix, ChannelSpec};
use lswh::complement::{complement_apply, complement_spectrum_maximally_mixed};
use lswh::matrix::{hermitian_eigenvalues, hermitian_eigenvalues_raw, ComplexMatrix};
use lswh::mixed_unitary::noisy_mixed_unitary;
use lswh::spectral::{channel_spectrum, determinant};

use config::{Format, SweepConfig, XGrid};
use output::{emit, emit_json, read_matrix, Cell, Table};

#[derive(Debug)]
pub enum CliError {
    /// Exit code 2: bad flags, bad files, out-of-range parameters.
    Usage(String),
    /// Exit code 1: numerical or invariant failure.
    Numerical(String),
}

impl From<lswh::Error> for CliError {
    fn from(e: lswh::Error) -> Self {
        use lswh::Error::*;
        match e {
            InvalidSpec { .. } | DimensionTooSmall { .. } | OddDimension { .. }
            | InvalidSpin { .. } | NotAProbabilityVector { .. } | DimensionMismatch { .. }
            | WrongKind { .. } | EmptyKrausSet => CliError::Usage(e.to_string()),
            UnsupportedFamily { .. } => CliError::Usage(e.to_string()),
            NoSignChange { .. } | NotHermitian { .. } | NotDensityMatrix { .. }
            | NotSquare { .. } => CliError::Numerical(e.to_string()),
        }
    }
}

fn parse_unit_interval(s: &str) -> Result<f64, String> {
    let v: f64 = s.parse().map_err(|_| format!("`{s}` is not a number"))?;
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(format!("`{s}` is outside the noise range [0,1]"))
    }
}

#[derive(Args, Debug, Clone)]
struct OutputOpts {
    /// Output format.
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
    /// Output file; stdout when omitted.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug, Clone)]
struct GridOpts {
    /// Dimensions, comma separated (e.g. 2,3,4).
    #[arg(long, value_delimiter = ',')]
    d: Option<Vec<usize>>,
    /// Single noise value; shorthand for a one-point grid.
    #[arg(long, value_parser = parse_unit_interval, conflicts_with_all = ["x_start", "x_stop", "x_step"])]
    x: Option<f64>,
    #[arg(long, value_parser = parse_unit_interval)]
    x_start: Option<f64>,
    #[arg(long, value_parser = parse_unit_interval)]
    x_stop: Option<f64>,
    #[arg(long)]
    x_step: Option<f64>,
    /// RNG seed for the randomized checks.
    #[arg(long)]
    seed: Option<u64>,
    /// Worker threads (default: LSWH_JOBS or machine parallelism).
    #[arg(long)]
    jobs: Option<usize>,
    /// JSON sweep-config file; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
}

impl GridOpts {
    fn resolve(&self) -> Result<SweepConfig, CliError> {
        let mut cfg = match &self.config {
            Some(path) => SweepConfig::load(path)?,
            None => SweepConfig::default(),
        };
        if let Some(d) = &self.d {
            cfg.d_values = d.clone();
        }
        if let Some(x) = self.x {
            cfg.x_grid = XGrid {
                start: x,
                stop: x,
                step: 1.0,
            };
        }
        if let Some(v) = self.x_start {
            cfg.x_grid.start = v;
        }
        if let Some(v) = self.x_stop {
            cfg.x_grid.stop = v;
        }
        if let Some(v) = self.x_step {
            cfg.x_grid.step = v;
        }
        if let Some(v) = self.seed {
            cfg.seed = v;
        }
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "lswh",
    version,
    about = "Landau-Streater / Werner-Holevo channel toolkit",
    propagate_version = true
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Eigenvalue/multiplicity/class table of the noisy channel.
    Spectrum {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_unit_interval)]
        x: f64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Determinant and divisibility verdict over a (d, x) grid.
    Determinant {
        #[command(flatten)]
        grid: GridOpts,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Capacity table (C1, Cea, coherent-information bound) over a grid.
    Capacities {
        #[command(flatten)]
        grid: GridOpts,
        /// Emit the per-dimension critical threshold table (d, x0) instead.
        #[arg(long)]
        emit_critical_plot: bool,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Critical noise threshold x0 per dimension.
    CriticalX {
        /// Dimensions, comma separated.
        #[arg(long, value_delimiter = ',', default_value = "3,4,5,6,7,8,9,10")]
        d: Vec<usize>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Mixed-unitary decomposition of the (noisy) channel, even d only.
    Decompose {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_unit_interval, default_value = "1.0")]
        x: f64,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Complementary-channel output for an input state (default: I/d).
    Complement {
        #[arg(long)]
        d: usize,
        #[arg(long, value_parser = parse_unit_interval)]
        x: f64,
        /// JSON matrix file with the input state.
        #[arg(long)]
        input: Option<PathBuf>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Choi matrix of a channel spec.
    Choi {
        /// Channel family: noisy_so_ls, so_ls, u_plus, wh_eta, spin_j_ls.
        #[arg(long, default_value = "noisy_so_ls")]
        family: String,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long, value_parser = parse_unit_interval)]
        x: Option<f64>,
        #[arg(long)]
        eta: Option<f64>,
        #[arg(long)]
        j: Option<f64>,
        #[command(flatten)]
        out: OutputOpts,
    },
    /// Run the full invariant suite over the configured grid.
    Verify {
        #[command(flatten)]
        grid: GridOpts,
        /// Tolerance for matrix-identity checks.
        #[arg(long)]
        tol_algebra: Option<f64>,
        /// Tolerance for capacity/entropy checks.
        #[arg(long)]
        tol_capacity: Option<f64>,
    },
}

fn main() {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            2
        }
        Err(CliError::Numerical(msg)) => {
            eprintln!("error: {msg}");
            1
        }
    };
    std::process::exit(code);
}

fn init_thread_pool(jobs: Option<usize>) -> Result<(), CliError> {
    let jobs = jobs.or_else(|| {
        std::env::var("LSWH_JOBS")
            .ok()
            .and_then(|v| v.parse::<usize>().ok())
    });
    if let Some(n) = jobs {
        if n == 0 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| CliError::Usage(format!("cannot size worker pool: {e}")))?;
    }
    Ok(())
}

fn run(cli: Cli) -> Result<i32, CliError> {
    match cli.command {
        Command::Spectrum { d, x, out } => cmd_spectrum(d, x, &out),
        Command::Determinant { grid, out } => cmd_determinant(&grid, &out),
        Command::Capacities {
            grid,
            emit_critical_plot,
            out,
        } => cmd_capacities(&grid, emit_critical_plot, &out),
        Command::CriticalX { d, out } => cmd_critical_x(&d, &out),
        Command::Decompose { d, x, out } => cmd_decompose(d, x, &out),
        Command::Complement { d, x, input, out } => cmd_complement(d, x, input.as_deref(), &out),
        Command::Choi {
            family,
            d,
            x,
            eta,
            j,
            out,
        } => cmd_choi(&family, d, x, eta, j, &out),
        Command::Verify {
            grid,
            tol_algebra,
            tol_capacity,
        } => cmd_verify(&grid, tol_algebra, tol_capacity),
    }
}

fn cmd_spectrum(d: usize, x: f64, out: &OutputOpts) -> Result<i32, CliError> {
    let spec = ChannelSpec::NoisySoLs { d, x };
    let rows: Vec<Vec<Cell>> = if x == 0.0 {
        vec![vec![
            Cell::Float(1.0),
            Cell::Int((d * d) as i64),
            Cell::Text("all".into()),
        ]]
    } else {
        channel_spectrum(&spec)?
            .entries
            .iter()
            .map(|e| {
                vec![
                    Cell::Float(e.eigenvalue),
                    Cell::Int(e.multiplicity as i64),
                    Cell::Text(e.class.to_string()),
                ]
            })
            .collect()
    };
    let table = Table {
        columns: vec!["eigenvalue", "multiplicity", "class"],
        rows,
    };
    emit(&table.render(out.format), out.output.as_ref())?;
    Ok(0)
}

fn cmd_determinant(grid: &GridOpts, out: &OutputOpts) -> Result<i32, CliError> {
    let cfg = grid.resolve()?;
    init_thread_pool(grid.jobs)?;
    let points: Vec<(usize, f64)> = cfg
        .d_values
        .iter()
        .flat_map(|&d| cfg.x_grid.values().into_iter().map(move |x| (d, x)))
        .collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(d, x)| {
            let v = determinant(&ChannelSpec::NoisySoLs { d, x })?;
            Ok(vec![
                Cell::Int(d as i64),
                Cell::Float(x),
                Cell::Float(v.determinant),
                Cell::Bool(v.not_infinitesimally_divisible),
            ])
        })
        .collect::<Result<_, CliError>>()?;
    let table = Table {
        columns: vec!["d", "x", "det", "not_divisible"],
        rows,
    };
    emit(&table.render(out.format), out.output.as_ref())?;
    Ok(0)
}

fn cmd_capacities(grid: &GridOpts, critical_plot: bool, out: &OutputOpts) -> Result<i32, CliError> {
    let cfg = grid.resolve()?;
    init_thread_pool(grid.jobs)?;
    if critical_plot {
        return cmd_critical_x(&cfg.d_values, out);
    }
    let points: Vec<(usize, f64)> = cfg
        .d_values
        .iter()
        .flat_map(|&d| cfg.x_grid.values().into_iter().map(move |x| (d, x)))
        .collect();
    let rows: Vec<Vec<Cell>> = points
        .par_iter()
        .map(|&(d, x)| {
            let uniform = vec![1.0 / d as f64; d];
            let j = coherent_information_diagonal(d, x, &uniform)?;
            Ok(vec![
                Cell::Int(d as i64),
                Cell::Float(x),
                Cell::Float(classical_capacity_one_shot(d, x)),
                Cell::Float(entanglement_assisted_capacity(d, x)),
                Cell::Float(j),
            ])
        })
        .collect::<Result<_, CliError>>()?;
    let table = Table {
        columns: vec!["d", "x", "C1_bits", "Cea_bits", "Jmixed_bits"],
        rows,
    };
    emit(&table.render(out.format), out.output.as_ref())?;
    Ok(0)
}

fn cmd_critical_x(dims: &[usize], out: &OutputOpts) -> Result<i32, CliError> {
    let mut rows = Vec::new();
    for &d in dims {
        if d < 2 {
            return Err(CliError::Usage(format!("dimensions must be >= 2, got {d}")));
        }
        let x0 = critical_x(d).map_err(|e| {
            CliError::Numerical(format!("critical threshold at d={d}: {e}"))
        })?;
        rows.push(vec![Cell::Int(d as i64), Cell::Float(x0)]);
    }
    let table = Table {
        columns: vec!["d", "x0"],
        rows,
    };
    emit(&table.render(out.format), out.output.as_ref())?;
    Ok(0)
}

#[derive(Serialize)]
struct DecompositionEntry {
    weight: f64,
    matrix: ComplexMatrix,
}

fn cmd_decompose(d: usize, x: f64, out: &OutputOpts) -> Result<i32, CliError> {
    let dec = noisy_mixed_unitary(d, x)?;
    match out.format {
        Format::Json => {
            let entries: Vec<DecompositionEntry> = dec
                .weights
                .iter()
                .zip(&dec.unitaries)
                .map(|(&weight, u)| DecompositionEntry {
                    weight,
                    matrix: u.clone(),
                })
                .collect();
            emit_json(&entries, out.output.as_ref())?;
        }
        Format::Csv => {
            // matrices are JSON-only; CSV carries the weight table
            let rows: Vec<Vec<Cell>> = dec
                .weights
                .iter()
                .enumerate()
                .map(|(i, &w)| vec![Cell::Int(i as i64), Cell::Float(w)])
                .collect();
            let table = Table {
                columns: vec!["index", "weight"],
                rows,
            };
            emit(&table.render(Format::Csv), out.output.as_ref())?;
        }
    }
    Ok(0)
}

#[derive(Serialize)]
struct ComplementReport {
    d: usize,
    x: f64,
    matrix: ComplexMatrix,
    spectrum: lswh::Spectrum,
}

fn cmd_complement(
    d: usize,
    x: f64,
    input: Option<&std::path::Path>,
    out: &OutputOpts,
) -> Result<i32, CliError> {
    let spec = ChannelSpec::NoisySoLs { d, x };
    let rho = match input {
        Some(path) => {
            let m = read_matrix(path)?;
            if m.rows != d || m.cols != d {
                return Err(CliError::Usage(format!(
                    "input state is {}x{}, expected {d}x{d}",
                    m.rows, m.cols
                )));
            }
            m
        }
        None => ComplexMatrix::identity(d).scale_re(1.0 / d as f64),
    };
    let result = complement_apply(&spec, &rho)?;
    let spectrum = hermitian_eigenvalues(&result.matrix)?;
    match out.format {
        Format::Json => {
            let report = ComplementReport {
                d,
                x,
                matrix: result.matrix,
                spectrum,
            };
            emit_json(&report, out.output.as_ref())?;
        }
        Format::Csv => {
            let rows: Vec<Vec<Cell>> = spectrum
                .eigenvalues
                .iter()
                .zip(&spectrum.multiplicities)
                .map(|(&v, &m)| vec![Cell::Float(v), Cell::Int(m as i64)])
                .collect();
            let table = Table {
                columns: vec!["eigenvalue", "multiplicity"],
                rows,
            };
            emit(&table.render(Format::Csv), out.output.as_ref())?;
        }
    }
    // closed-form cross-check for the maximally mixed default input
    if input.is_none() {
        let closed = complement_spectrum_maximally_mixed(&spec)?;
        let numeric = hermitian_eigenvalues(&complement_apply(&spec, &rho)?.matrix)?;
        if closed.max_multiset_diff(&numeric) > 1e-9 {
            return Err(CliError::Numerical(
                "complement spectrum deviates from its closed form".into(),
            ));
        }
    }
    Ok(0)
}

fn build_spec(
    family: &str,
    d: Option<usize>,
    x: Option<f64>,
    eta: Option<f64>,
    j: Option<f64>,
) -> Result<ChannelSpec, CliError> {
    let need_d = || d.ok_or_else(|| CliError::Usage(format!("--d is required for {family}")));
    let spec = match family {
        "so_ls" => ChannelSpec::SoLs { d: need_d()? },
        "noisy_so_ls" => ChannelSpec::NoisySoLs {
            d: need_d()?,
            x: x.ok_or_else(|| CliError::Usage("--x is required for noisy_so_ls".into()))?,
        },
        "u_plus" => ChannelSpec::UPlus { d: need_d()? },
        "wh_eta" => ChannelSpec::WhEta {
            d: need_d()?,
            eta: eta.ok_or_else(|| CliError::Usage("--eta is required for wh_eta".into()))?,
        },
        "spin_j_ls" => ChannelSpec::SpinJLs {
            j: j.ok_or_else(|| CliError::Usage("--j is required for spin_j_ls".into()))?,
        },
        other => {
            return Err(CliError::Usage(format!(
                "unknown family `{other}` (expected noisy_so_ls, so_ls, u_plus, wh_eta, spin_j_ls)"
            )))
        }
    };
    spec.validate()?;
    Ok(spec)
}

fn cmd_choi(
    family: &str,
    d: Option<usize>,
    x: Option<f64>,
    eta: Option<f64>,
    j: Option<f64>,
    out: &OutputOpts,
) -> Result<i32, CliError> {
    let spec = build_spec(family, d, x, eta, j)?;
    let choi = choi_matrix(&spec)?;
    match out.format {
        Format::Json => emit_json(&choi, out.output.as_ref())?,
        Format::Csv => {
            let dim = spec.dim();
            let evs = hermitian_eigenvalues_raw(&choi)?;
            let pt = hermitian_eigenvalues_raw(&choi.partial_transpose_second(dim))?;
            let rows: Vec<Vec<Cell>> = evs
                .iter()
                .zip(&pt)
                .enumerate()
                .map(|(i, (&a, &b))| vec![Cell::Int(i as i64), Cell::Float(a), Cell::Float(b)])
                .collect();
            let table = Table {
                columns: vec!["index", "choi_eigenvalue", "pt_eigenvalue"],
                rows,
            };
            emit(&table.render(Format::Csv), out.output.as_ref())?;
        }
    }
    Ok(0)
}

fn cmd_verify(
    grid: &GridOpts,
    tol_algebra: Option<f64>,
    tol_capacity: Option<f64>,
) -> Result<i32, CliError> {
    let mut cfg = grid.resolve()?;
    if let Some(t) = tol_algebra {
        cfg.tolerances.algebra = t;
    }
    if let Some(t) = tol_capacity {
        cfg.tolerances.capacity = t;
    }
    init_thread_pool(grid.jobs)?;
    let outcomes = verify::run_all(&cfg);
    Ok(verify::print_and_code(&outcomes))
}
