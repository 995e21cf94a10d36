//! Command-line syntax.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use eigenshift_core::{DomainKind, DomainSpec, Result, SamplePoint};

use crate::report::Format;
use crate::request::{
    parse_estimators, parse_mode, parse_nodes, parse_normalization, DecomposeRequest, EigenpairRequest, Output,
    Problem, RunRequest, ShiftMode, Shifts, Start, SweepRequest, TableRequest,
};

#[derive(Debug, Parser)]
#[command(name = "eigenshift", version, about = "Laplacian eigenpairs by inverse iteration with shift")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// One inverse-iteration run; one row per iteration.
    Eigenpair(EigenpairArgs),
    /// Spectral decomposition of a start function over a shift schedule.
    Decompose(DecomposeArgs),
    /// One estimator over a list of grids, with the observed order.
    Sweep(SweepArgs),
    /// Reproduce one of the tables T1..T7.
    Table(TableArgs),
}

#[derive(Debug, Args)]
pub struct DomainArgs {
    /// interval, disk or square.
    #[arg(long, default_value = "interval")]
    pub domain: String,
    /// Length, radius or side.
    #[arg(long, default_value_t = 1.0)]
    pub extent: f64,
    /// one, bump, sin:K, sin:N:M or bessel:K.
    #[arg(long, default_value = "one")]
    pub start: String,
}

#[derive(Debug, Args)]
pub struct OutputArgs {
    /// Output file; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// csv or json.
    #[arg(long, default_value_t = Format::Csv)]
    pub format: Format,
}

impl OutputArgs {
    fn output(&self) -> Output {
        Output {
            path: self.out.clone(),
            format: self.format,
        }
    }
}

#[derive(Debug, Args)]
pub struct EigenpairArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// N, or NxM on the square.
    #[arg(long, default_value = "101")]
    pub nodes: String,
    #[arg(long, allow_hyphen_values = true)]
    pub shift: f64,
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    /// mu, gamma, rq-phi, rq-v, rq-classic, linf or all; repeatable.
    #[arg(long, value_delimiter = ',', default_value = "all")]
    pub estimator: Vec<String>,
    /// Seed of the sample-point draw.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Fixed sample node instead of a seeded draw.
    #[arg(long)]
    pub x0: Option<usize>,
    /// l2 or linf.
    #[arg(long, default_value = "l2")]
    pub normalization: String,
    /// Stop once successive R(v) agree to 1e-12.
    #[arg(long)]
    pub early_stop: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct DecomposeArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    #[arg(long, default_value = "101")]
    pub nodes: String,
    /// Explicit schedule, comma separated.
    #[arg(long, value_delimiter = ',', conflicts_with = "shift_mode")]
    pub shifts: Option<Vec<f64>>,
    /// offset-<F>, weyl, midpoint or random.
    #[arg(long)]
    pub shift_mode: Option<String>,
    /// Number of generated shifts.
    #[arg(long, default_value_t = 9)]
    pub count: usize,
    /// Iteration cap per shift.
    #[arg(long, default_value_t = 300)]
    pub iters: usize,
    /// Coefficient threshold; 1e-8·‖u‖₂ when absent.
    #[arg(long)]
    pub tol: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Write the component eigenfunctions to this CSV file.
    #[arg(long)]
    pub dump: Option<PathBuf>,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub domain: DomainArgs,
    /// Grids, comma separated: 101,201,401 or 101x101,201x201.
    #[arg(long, value_delimiter = ',', required = true)]
    pub nodes: Vec<String>,
    /// Target mode: K, or N:M on the square.
    #[arg(long, default_value = "1")]
    pub mode: String,
    /// Shift; the mode's eigenvalue minus --offset when absent.
    #[arg(long, allow_hyphen_values = true)]
    pub shift: Option<f64>,
    #[arg(long, default_value_t = 0.1, allow_hyphen_values = true)]
    pub offset: f64,
    #[arg(long, default_value_t = 10)]
    pub iters: usize,
    #[arg(long, default_value = "mu")]
    pub estimator: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub output: OutputArgs,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// T1..T7 or 1..7.
    #[arg(long = "id", visible_alias = "table")]
    pub id: String,
    /// Largest T7 grid, in intervals per axis.
    #[arg(long, default_value_t = 500)]
    pub max_grid: usize,
    /// Fraction of the full shift count for T2..T4.
    #[arg(long)]
    pub scale: Option<f64>,
    /// Seed of the T4 shift draw.
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Per-run rows instead of the error histogram (T2..T4).
    #[arg(long)]
    pub detail: bool,
    #[command(flatten)]
    pub output: OutputArgs,
}

impl Cli {
    /// Validates every field and builds the request.
    pub fn into_request(self) -> Result<(RunRequest, Output)> {
        match self.command {
            Command::Eigenpair(a) => {
                let req = EigenpairRequest {
                    problem: Problem::new(&a.domain.domain, a.domain.extent, &a.nodes, &a.domain.start)?,
                    shift: a.shift,
                    iterations: a.iters,
                    estimators: parse_estimators(&a.estimator)?,
                    normalization: parse_normalization(&a.normalization)?,
                    sample_point: a.x0.map_or(SamplePoint::Auto { seed: a.seed }, SamplePoint::Node),
                    early_stop: a.early_stop,
                }
                .validate()?;
                Ok((RunRequest::Eigenpair(req), a.output.output()))
            }
            Command::Decompose(a) => {
                let shifts = match (a.shifts, a.shift_mode) {
                    (Some(list), _) => Shifts::Explicit(list),
                    (None, mode) => Shifts::Generated {
                        mode: mode.as_deref().unwrap_or("offset-0.1").parse::<ShiftMode>()?,
                        count: a.count,
                    },
                };
                let req = DecomposeRequest {
                    problem: Problem::new(&a.domain.domain, a.domain.extent, &a.nodes, &a.domain.start)?,
                    shifts,
                    max_iterations: a.iters,
                    tolerance: a.tol,
                    seed: a.seed,
                    dump: a.dump,
                }
                .validate()?;
                Ok((RunRequest::Decompose(req), a.output.output()))
            }
            Command::Sweep(a) => {
                let kind: DomainKind = a.domain.domain.parse()?;
                let spec = DomainSpec::new(kind, a.domain.extent)?;
                let grids = a
                    .nodes
                    .iter()
                    .map(|n| {
                        let mut nodes = parse_nodes(n)?;
                        if kind == DomainKind::Square && nodes.len() == 1 {
                            nodes.push(nodes[0]);
                        }
                        Ok(nodes)
                    })
                    .collect::<Result<Vec<_>>>()?;
                let mode = parse_mode(&a.mode, kind)?;
                let shift = match a.shift {
                    Some(s) => s,
                    None => crate::request::mode_eigenvalue(&spec, mode)? - a.offset,
                };
                let req = SweepRequest {
                    spec,
                    grids,
                    start: a.domain.start.parse::<Start>()?,
                    mode,
                    shift,
                    iterations: a.iters,
                    estimator: a.estimator.parse()?,
                    seed: a.seed,
                }
                .validate()?;
                Ok((RunRequest::Sweep(req), a.output.output()))
            }
            Command::Table(a) => {
                let req = TableRequest {
                    id: a.id.parse()?,
                    max_grid: a.max_grid,
                    scale: a.scale,
                    seed: a.seed,
                    detail: a.detail,
                }
                .validate()?;
                Ok((RunRequest::Table(req), a.output.output()))
            }
        }
    }
}
