//! Validated run requests.
//!
//! Everything the command line supplies is parsed and checked here, before
//! any operator is assembled.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;

use eigenshift_core::{
    bessel_j0_zeros, build_grid, exact_eigenvalues, j0, sample_function, DomainKind, DomainSpec,
    Error, EstimatorKind, Grid, GridFunction, ModeLabel, Normalization, Result, SamplePoint,
};

use crate::report::Format;

fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}

/// Parses `N` or `NxM`.
pub fn parse_nodes(text: &str) -> Result<Vec<usize>> {
    text.split(['x', 'X'])
        .map(|part| {
            part.trim()
                .parse::<usize>()
                .map_err(|_| invalid(format!("node count `{text}` is not of the form N or NxM")))
        })
        .collect::<Result<Vec<_>>>()
        .and_then(|nodes| match nodes.len() {
            1 | 2 => Ok(nodes),
            _ => Err(invalid(format!("node count `{text}` is not of the form N or NxM"))),
        })
}

pub fn parse_estimators(items: &[String]) -> Result<Vec<EstimatorKind>> {
    let mut out = Vec::new();
    for item in items.iter().flat_map(|s| s.split(',')).map(str::trim) {
        if item.eq_ignore_ascii_case("all") {
            out.extend(EstimatorKind::ALL);
        } else {
            out.push(item.parse::<EstimatorKind>()?);
        }
    }
    if out.is_empty() {
        return Err(invalid("at least one estimator is required"));
    }
    // Keep the canonical column order and drop repeats.
    Ok(EstimatorKind::ALL.into_iter().filter(|k| out.contains(k)).collect())
}

pub fn parse_normalization(text: &str) -> Result<Normalization> {
    match text.to_ascii_lowercase().as_str() {
        "l2" => Ok(Normalization::L2),
        "linf" | "l-inf" | "max" => Ok(Normalization::LInf),
        other => Err(invalid(format!("unknown normalization `{other}` (expected l2 or linf)"))),
    }
}

fn positive_finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(invalid(format!("{name} must be positive and finite, got {value}")))
    }
}

fn finite(name: &str, value: f64) -> Result<f64> {
    if value.is_finite() {
        Ok(value)
    } else {
        Err(invalid(format!("{name} must be finite, got {value}")))
    }
}

/// Named analytic start functions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Start {
    /// `u ≡ 1`.
    One,
    /// `sin(kπx/L)` on the interval.
    Sine(usize),
    /// `sin(nπx/L) sin(mπy/L)` on the square.
    SinePair(usize, usize),
    /// `J₀(j₀,ₖ r/R)` on the disk.
    Bessel(usize),
    /// `x(L−x)`, `x(L−x)y(L−y)` or `R²−r²`.
    Bump,
}

impl FromStr for Start {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        let parts: Vec<&str> = lower.split(':').collect();
        let index = |p: &str| -> Result<usize> {
            match p.parse::<usize>() {
                Ok(k) if k > 0 => Ok(k),
                _ => Err(invalid(format!("start `{s}`: mode index must be a positive integer"))),
            }
        };
        match parts.as_slice() {
            ["one"] | ["1"] => Ok(Start::One),
            ["bump"] => Ok(Start::Bump),
            ["sin", k] => Ok(Start::Sine(index(k)?)),
            ["sin", n, m] => Ok(Start::SinePair(index(n)?, index(m)?)),
            ["bessel", k] => Ok(Start::Bessel(index(k)?)),
            _ => Err(invalid(format!(
                "unknown start `{s}` (expected one, bump, sin:K, sin:N:M or bessel:K)"
            ))),
        }
    }
}

impl fmt::Display for Start {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Start::One => f.write_str("one"),
            Start::Sine(k) => write!(f, "sin:{k}"),
            Start::SinePair(n, m) => write!(f, "sin:{n}:{m}"),
            Start::Bessel(k) => write!(f, "bessel:{k}"),
            Start::Bump => f.write_str("bump"),
        }
    }
}

impl Start {
    pub fn check(self, kind: DomainKind) -> Result<()> {
        let ok = match self {
            Start::One | Start::Bump => true,
            Start::Sine(_) => kind == DomainKind::Interval,
            Start::SinePair(..) => kind == DomainKind::Square,
            Start::Bessel(_) => kind == DomainKind::RadialDisk,
        };
        if ok {
            Ok(())
        } else {
            Err(invalid(format!("start `{self}` is not defined on the {kind}")))
        }
    }

    pub fn sample(self, grid: &Grid) -> Result<GridFunction> {
        self.check(grid.kind())?;
        let l = grid.spec().extent();
        let pi = std::f64::consts::PI;
        match self {
            Start::One => sample_function(grid, |_| 1.0),
            Start::Sine(k) => sample_function(grid, |[x, _]| (k as f64 * pi * x / l).sin()),
            Start::SinePair(n, m) => sample_function(grid, |[x, y]| {
                (n as f64 * pi * x / l).sin() * (m as f64 * pi * y / l).sin()
            }),
            Start::Bessel(k) => {
                let zero = bessel_j0_zeros(k)[k - 1];
                sample_function(grid, |[r, _]| j0(zero * r / l))
            }
            Start::Bump => match grid.kind() {
                DomainKind::Interval => sample_function(grid, |[x, _]| x * (l - x)),
                DomainKind::Square => sample_function(grid, |[x, y]| x * (l - x) * y * (l - y)),
                DomainKind::RadialDisk => sample_function(grid, |[r, _]| l * l - r * r),
            },
        }
    }
}

/// A mode selector: `K` (interval, disk) or `N:M` (square).
pub fn parse_mode(text: &str, kind: DomainKind) -> Result<ModeLabel> {
    let parts: Vec<&str> = text.split([':', ',']).map(str::trim).collect();
    let index = |p: &str| match p.parse::<usize>() {
        Ok(k) if k > 0 => Ok(k),
        _ => Err(invalid(format!("mode `{text}`: indices must be positive integers"))),
    };
    match (kind, parts.as_slice()) {
        (DomainKind::Square, [n, m]) => Ok(ModeLabel::Pair(index(n)?, index(m)?)),
        (DomainKind::Interval | DomainKind::RadialDisk, [k]) => Ok(ModeLabel::Index(index(k)?)),
        _ => Err(invalid(format!("mode `{text}` does not name a mode of the {kind}"))),
    }
}

/// Continuum eigenvalue of a labelled mode.
pub fn mode_eigenvalue(spec: &DomainSpec, label: ModeLabel) -> Result<f64> {
    let l = spec.extent();
    let pi2 = std::f64::consts::PI.powi(2);
    match (spec.kind(), label) {
        (DomainKind::Interval, ModeLabel::Index(k)) => Ok((k * k) as f64 * pi2 / (l * l)),
        (DomainKind::Square, ModeLabel::Pair(n, m)) => Ok((n * n + m * m) as f64 * pi2 / (l * l)),
        (DomainKind::RadialDisk, ModeLabel::Index(k)) => Ok(exact_eigenvalues(spec, k)?.modes[k - 1].eigenvalue),
        (kind, label) => Err(invalid(format!("mode {label} does not exist on the {kind}"))),
    }
}

/// Domain, grid and start function shared by the single-grid commands.
#[derive(Debug, Clone)]
pub struct Problem {
    pub grid: Grid,
    pub start: Start,
}

impl Problem {
    pub fn new(domain: &str, extent: f64, nodes: &str, start: &str) -> Result<Self> {
        let kind: DomainKind = domain.parse()?;
        let spec = DomainSpec::new(kind, extent)?;
        let mut nodes = parse_nodes(nodes)?;
        if kind.axes() == 1 && nodes.len() == 2 {
            return Err(Error::InvalidGrid(format!("the {kind} takes a single node count")));
        }
        if kind == DomainKind::Square && nodes.len() == 1 {
            nodes.push(nodes[0]);
        }
        let grid = build_grid(spec, &nodes)?;
        let start: Start = start.parse()?;
        start.check(kind)?;
        Ok(Problem { grid, start })
    }

    pub fn start_function(&self) -> Result<GridFunction> {
        self.start.sample(&self.grid)
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Output {
    pub path: Option<PathBuf>,
    pub format: Format,
}

#[derive(Debug, Clone)]
pub struct EigenpairRequest {
    pub problem: Problem,
    pub shift: f64,
    pub iterations: usize,
    pub estimators: Vec<EstimatorKind>,
    pub normalization: Normalization,
    pub sample_point: SamplePoint,
    pub early_stop: bool,
}

impl EigenpairRequest {
    pub fn validate(self) -> Result<Self> {
        finite("shift", self.shift)?;
        if self.iterations == 0 {
            return Err(invalid("--iters must be at least 1"));
        }
        if let SamplePoint::Node(node) = self.sample_point {
            if node >= self.problem.grid.len() || self.problem.grid.is_boundary(node) {
                return Err(invalid(format!("--x0 {node} is not an interior node")));
            }
        }
        Ok(self)
    }
}

/// How a decomposition schedule is produced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ShiftMode {
    /// `λₖ − offset` for the first `count` distinct exact eigenvalues.
    Offset(f64),
    Weyl,
    Midpoint,
    Random,
}

impl FromStr for ShiftMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let lower = s.to_ascii_lowercase();
        match lower.as_str() {
            "weyl" => Ok(ShiftMode::Weyl),
            "midpoint" => Ok(ShiftMode::Midpoint),
            "random" => Ok(ShiftMode::Random),
            _ => match lower.strip_prefix("offset-").map(str::parse::<f64>) {
                Some(Ok(offset)) if offset.is_finite() => Ok(ShiftMode::Offset(offset)),
                _ => Err(invalid(format!(
                    "unknown shift mode `{s}` (expected offset-<F>, weyl, midpoint or random)"
                ))),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Shifts {
    Explicit(Vec<f64>),
    Generated { mode: ShiftMode, count: usize },
}

#[derive(Debug, Clone)]
pub struct DecomposeRequest {
    pub problem: Problem,
    pub shifts: Shifts,
    pub max_iterations: usize,
    pub tolerance: Option<f64>,
    pub seed: u64,
    pub dump: Option<PathBuf>,
}

impl DecomposeRequest {
    pub fn validate(self) -> Result<Self> {
        match &self.shifts {
            Shifts::Explicit(list) if list.is_empty() => return Err(invalid("--shifts is empty")),
            Shifts::Explicit(list) => {
                for &s in list {
                    positive_finite("every shift", s)?;
                }
            }
            Shifts::Generated { count: 0, .. } => return Err(invalid("--count must be at least 1")),
            Shifts::Generated { .. } => {}
        }
        if self.max_iterations == 0 {
            return Err(invalid("--iters must be at least 1"));
        }
        if let Some(tol) = self.tolerance {
            positive_finite("--tol", tol)?;
        }
        Ok(self)
    }
}

#[derive(Debug, Clone)]
pub struct SweepRequest {
    pub spec: DomainSpec,
    pub grids: Vec<Vec<usize>>,
    pub start: Start,
    pub mode: ModeLabel,
    pub shift: f64,
    pub iterations: usize,
    pub estimator: EstimatorKind,
    pub seed: u64,
}

impl SweepRequest {
    pub fn validate(self) -> Result<Self> {
        if self.grids.len() < 2 {
            return Err(invalid("a sweep needs at least two grids"));
        }
        for nodes in &self.grids {
            build_grid(self.spec, nodes)?;
        }
        self.start.check(self.spec.kind())?;
        finite("shift", self.shift)?;
        if self.iterations == 0 {
            return Err(invalid("--iters must be at least 1"));
        }
        Ok(self)
    }
}

/// The reproducible tables.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TableId {
    T1,
    T2,
    T3,
    T4,
    T5,
    T6,
    T7,
}

impl TableId {
    pub const ALL: [TableId; 7] = [
        TableId::T1,
        TableId::T2,
        TableId::T3,
        TableId::T4,
        TableId::T5,
        TableId::T6,
        TableId::T7,
    ];
}

impl FromStr for TableId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let digits = s.trim().trim_start_matches(['t', 'T']);
        match digits.parse::<usize>() {
            Ok(n @ 1..=7) => Ok(TableId::ALL[n - 1]),
            _ => Err(invalid(format!("unknown table `{s}` (expected T1..T7)"))),
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = TableId::ALL.iter().position(|t| t == self).unwrap() + 1;
        write!(f, "T{n}")
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct TableRequest {
    pub id: TableId,
    /// Largest grid (intervals per axis) for the refinement table.
    pub max_grid: usize,
    /// Fraction of the full shift count for the histogram tables.
    pub scale: Option<f64>,
    pub seed: u64,
    /// Per-run rows instead of the histogram.
    pub detail: bool,
}

impl TableRequest {
    pub fn validate(self) -> Result<Self> {
        if let Some(scale) = self.scale {
            if !(scale.is_finite() && scale > 0.0 && scale <= 1.0) {
                return Err(invalid(format!("--scale must lie in (0, 1], got {scale}")));
            }
        }
        if self.max_grid < 100 {
            return Err(invalid("--max-grid must be at least 100"));
        }
        Ok(self)
    }
}

/// A complete, validated request.
#[derive(Debug, Clone)]
pub enum RunRequest {
    Eigenpair(EigenpairRequest),
    Decompose(DecomposeRequest),
    Sweep(SweepRequest),
    Table(TableRequest),
}
