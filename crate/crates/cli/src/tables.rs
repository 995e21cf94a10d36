//! The seven reproducible tables.
//!
//! T1, T5 and T6 run ten iterations from `u ≡ 1` with `σ = λ − 0.1` on the
//! interval (101 nodes), the radial disk (201) and the square (201²). T7
//! refines the square grid at `σ = λ₃,₃ − 0.1`. T2–T4 run `R(v₃₀)` on a
//! 10001-node interval for many shifts and bucket the relative errors by
//! order of magnitude.

use std::f64::consts::PI;

use rayon::prelude::*;

use eigenshift_core::{
    assemble_shifted, build_grid, exact_eigenvalues, iterate, sample_function, DomainKind, DomainSpec,
    EstimatorKind, EstimatorSet, Grid, IterationConfig, ModeLabel, Result, ShiftSchedule,
};

use crate::commands::final_value;
use crate::report::{Cell, Report};
use crate::request::{mode_eigenvalue, TableRequest, TableId};

pub const TABLE_ITERATIONS: usize = 10;
pub const SHIFT_OFFSET: f64 = 0.1;
/// The six square modes of T6, in row order.
pub const SQUARE_MODES: [(usize, usize); 6] = [(1, 1), (1, 2), (2, 2), (1, 3), (2, 3), (3, 3)];
/// Grids of T7, in intervals per axis.
pub const REFINEMENT_GRIDS: [usize; 7] = [100, 200, 300, 400, 500, 1000, 2000];
pub const LONG_NODES: usize = 10001;
pub const LONG_ITERATIONS: usize = 30;
pub const T2_FULL: usize = 1500;
pub const T2_DEFAULT: usize = 200;
pub const T3_FULL: usize = 100;
pub const T4_FULL: usize = 100;
/// T4 draws shifts on `(0, λ₅₀)`.
pub const T4_UPPER_MODE: usize = 50;

/// One row of T1, T5 or T6.
#[derive(Debug, Clone, PartialEq)]
pub struct EstimateRow {
    pub label: ModeLabel,
    pub exact: f64,
    pub shift: f64,
    pub estimates: EstimatorSet,
    pub x0: usize,
}

fn unit_grid(kind: DomainKind, nodes: usize) -> Result<Grid> {
    build_grid(DomainSpec::unit(kind), &[nodes])
}

fn estimate_row(grid: &Grid, label: ModeLabel, exact: f64) -> Result<EstimateRow> {
    let u0 = sample_function(grid, |_| 1.0)?;
    let shift = exact - SHIFT_OFFSET;
    let op = assemble_shifted(grid, shift)?;
    let history = iterate(&u0, &op, &IterationConfig::default().with_iterations(TABLE_ITERATIONS))?;
    Ok(EstimateRow {
        label,
        exact,
        shift,
        estimates: *history.final_estimates(),
        x0: history.x0(),
    })
}

/// Interval, 101 nodes, `k = 1..8`.
pub fn table1() -> Result<Vec<EstimateRow>> {
    let grid = unit_grid(DomainKind::Interval, 101)?;
    (1..=8usize)
        .into_par_iter()
        .map(|k| estimate_row(&grid, ModeLabel::Index(k), (k * k) as f64 * PI * PI))
        .collect()
}

/// Radial disk, 201 nodes, first eight radial modes.
pub fn table5() -> Result<Vec<EstimateRow>> {
    let grid = unit_grid(DomainKind::RadialDisk, 201)?;
    let exact = exact_eigenvalues(grid.spec(), 8)?;
    exact
        .modes
        .par_iter()
        .map(|mode| estimate_row(&grid, mode.label, mode.eigenvalue))
        .collect()
}

/// Square, 201×201, the modes of [`SQUARE_MODES`]. Rows run one at a time to
/// bound memory.
pub fn table6() -> Result<Vec<EstimateRow>> {
    let grid = unit_grid(DomainKind::Square, 201)?;
    SQUARE_MODES
        .iter()
        .map(|&(n, m)| {
            let label = ModeLabel::Pair(n, m);
            estimate_row(&grid, label, mode_eigenvalue(grid.spec(), label)?)
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq)]
pub struct RefinementRow {
    pub nodes: usize,
    pub mu: f64,
    pub exact: f64,
    pub relative_error: f64,
}

/// Node counts of T7 up to `max_grid` intervals per axis.
pub fn refinement_nodes(max_grid: usize) -> Vec<usize> {
    REFINEMENT_GRIDS.iter().filter(|&&g| g <= max_grid).map(|g| g + 1).collect()
}

/// `μ₁₀` for `λ₃,₃` on one `nodes × nodes` grid.
pub fn refinement_row(nodes: usize) -> Result<RefinementRow> {
    let grid = unit_grid(DomainKind::Square, nodes)?;
    let exact = mode_eigenvalue(grid.spec(), ModeLabel::Pair(3, 3))?;
    let u0 = sample_function(&grid, |_| 1.0)?;
    let op = assemble_shifted(&grid, exact - SHIFT_OFFSET)?;
    let cfg = IterationConfig::default()
        .with_iterations(TABLE_ITERATIONS)
        .with_estimators(&[EstimatorKind::Mu]);
    let history = iterate(&u0, &op, &cfg)?;
    let mu = final_value(&history, EstimatorKind::Mu)?;
    Ok(RefinementRow {
        nodes,
        mu,
        exact,
        relative_error: ((mu - exact) / exact).abs(),
    })
}

pub fn table7(max_grid: usize) -> Result<Vec<RefinementRow>> {
    refinement_nodes(max_grid).into_iter().map(refinement_row).collect()
}

/// One `R(v₃₀)` run of T2–T4.
#[derive(Debug, Clone, PartialEq)]
pub struct ShiftRun {
    pub shift: f64,
    pub estimate: f64,
    /// Exact interval eigenvalue closest to `estimate`.
    pub nearest: f64,
    pub relative_error: f64,
    /// Relative distance from the shift to its closest exact eigenvalue.
    pub shift_error: f64,
}

/// Closest `k²π²` to `value` and its relative distance.
pub fn nearest_interval_eigenvalue(value: f64) -> (f64, f64) {
    let k = (value.max(0.0).sqrt() / PI).round().max(1.0);
    let nearest = [k - 1.0, k, k + 1.0]
        .into_iter()
        .filter(|&j| j >= 1.0)
        .map(|j| j * j * PI * PI)
        .min_by(|a, b| (a - value).abs().total_cmp(&(b - value).abs()))
        .unwrap();
    (nearest, ((value - nearest) / nearest).abs())
}

/// `R(v₃₀)` from `u ≡ 1` on the 10001-node interval, one run per shift, in
/// shift order.
pub fn interval_runs(shifts: &[f64]) -> Result<Vec<ShiftRun>> {
    let grid = unit_grid(DomainKind::Interval, LONG_NODES)?;
    let u0 = sample_function(&grid, |_| 1.0)?;
    let cfg = IterationConfig::default()
        .with_iterations(LONG_ITERATIONS)
        .with_estimators(&[EstimatorKind::WeakRayleighV]);
    shifts
        .par_iter()
        .map(|&shift| {
            let op = assemble_shifted(&grid, shift)?;
            let history = iterate(&u0, &op, &cfg)?;
            let estimate = final_value(&history, EstimatorKind::WeakRayleighV)?;
            let (nearest, relative_error) = nearest_interval_eigenvalue(estimate);
            Ok(ShiftRun {
                shift,
                estimate,
                nearest,
                relative_error,
                shift_error: nearest_interval_eigenvalue(shift).1,
            })
        })
        .collect()
}

fn scaled_count(full: usize, default: usize, scale: Option<f64>) -> usize {
    scale.map_or(default, |s| ((full as f64 * s).round() as usize).max(1))
}

/// `σₖ = 0.99λₖ`.
pub fn table2_shifts(count: usize) -> Vec<f64> {
    (1..=count).map(|k| 0.99 * (k * k) as f64 * PI * PI).collect()
}

/// `σₖ = (λₖ + λₖ₊₁)/2`.
pub fn table3_shifts(count: usize) -> Vec<f64> {
    (1..=count).map(|k| 0.5 * (k * k + (k + 1) * (k + 1)) as f64 * PI * PI).collect()
}

/// Seeded uniform shifts on `(0, λ₅₀)`, sorted.
pub fn table4_shifts(count: usize, seed: u64) -> Result<Vec<f64>> {
    let upper = (T4_UPPER_MODE * T4_UPPER_MODE) as f64 * PI * PI;
    Ok(ShiftSchedule::random(count, upper, seed)?.shifts().to_vec())
}

#[derive(Debug, Clone, PartialEq)]
pub struct Bucket {
    pub label: String,
    pub count: usize,
}

/// Counts by decade `⌊log₁₀ e⌋`, clamped to `[bottom, top]`; the end buckets
/// are open.
pub fn histogram(errors: &[f64], top: i32, bottom: i32) -> Vec<Bucket> {
    let mut counts = vec![0usize; (top - bottom + 1) as usize];
    for &e in errors {
        let decade = if e > 0.0 { e.log10().floor() as i32 } else { bottom };
        counts[(top - decade.clamp(bottom, top)) as usize] += 1;
    }
    counts
        .into_iter()
        .enumerate()
        .map(|(i, count)| {
            let decade = top - i as i32;
            let label = if decade == top {
                format!(">=1e{decade}")
            } else if decade == bottom {
                format!("<=1e{decade}")
            } else {
                format!("1e{decade}")
            };
            Bucket { label, count }
        })
        .collect()
}

fn label_cell(label: ModeLabel) -> Cell {
    match label {
        ModeLabel::Index(k) => Cell::from(k),
        ModeLabel::Pair(..) => Cell::Text(label.to_string()),
    }
}

const ESTIMATE_COLUMNS: [EstimatorKind; 4] = [
    EstimatorKind::Mu,
    EstimatorKind::Gamma,
    EstimatorKind::WeakRayleighPhi,
    EstimatorKind::WeakRayleighV,
];

pub fn estimate_report(rows: &[EstimateRow], label_column: &str) -> Report {
    let mut columns = vec![label_column.to_owned(), "lambda".to_owned()];
    columns.extend(ESTIMATE_COLUMNS.iter().map(|k| format!("{}_{TABLE_ITERATIONS}", k.column())));
    columns.push("shift".to_owned());
    columns.extend(ESTIMATE_COLUMNS.iter().map(|k| format!("err_{}", k.column())));
    let mut report = Report::new(columns);
    for row in rows {
        let mut cells = vec![label_cell(row.label), row.exact.into()];
        cells.extend(ESTIMATE_COLUMNS.iter().map(|&k| Cell::opt(row.estimates.get(k))));
        cells.push(row.shift.into());
        cells.extend(
            ESTIMATE_COLUMNS
                .iter()
                .map(|&k| Cell::opt(row.estimates.get(k).map(|v| ((v - row.exact) / row.exact).abs()))),
        );
        report.push(cells);
    }
    report
}

pub fn refinement_report(rows: &[RefinementRow]) -> Report {
    let mut report = Report::new(["grid", "h", "mu_10", "lambda_33", "rel_error"]);
    for row in rows {
        report.push(vec![
            Cell::Text(format!("{0}x{0}", row.nodes)),
            (1.0 / (row.nodes - 1) as f64).into(),
            row.mu.into(),
            row.exact.into(),
            row.relative_error.into(),
        ]);
    }
    report
}

pub fn runs_report(runs: &[ShiftRun]) -> Report {
    let mut report = Report::new(["run", "shift", "rq_v_30", "nearest_lambda", "rel_error", "shift_rel_error"]);
    for (i, run) in runs.iter().enumerate() {
        report.push(vec![
            (i + 1).into(),
            run.shift.into(),
            run.estimate.into(),
            run.nearest.into(),
            run.relative_error.into(),
            run.shift_error.into(),
        ]);
    }
    report
}

pub fn histogram_report(runs: &[ShiftRun], top: i32, bottom: i32) -> Report {
    let errors: Vec<f64> = runs.iter().map(|r| r.relative_error).collect();
    let mut report = Report::new(["epsilon", "n_lambda"]);
    for b in histogram(&errors, top, bottom) {
        report.push(vec![Cell::Text(b.label), b.count.into()]);
    }
    report
}

pub fn random_histogram_report(runs: &[ShiftRun], seed: u64) -> Report {
    let shift_errors: Vec<f64> = runs.iter().map(|r| r.shift_error).collect();
    let errors: Vec<f64> = runs.iter().map(|r| r.relative_error).collect();
    let mut report = Report::new(["epsilon", "n_sigma", "n_lambda", "seed"]);
    for (s, l) in histogram(&shift_errors, -2, -7).into_iter().zip(histogram(&errors, -2, -7)) {
        report.push(vec![Cell::Text(s.label), s.count.into(), l.count.into(), Cell::Text(seed.to_string())]);
    }
    report
}

pub fn run_table(req: &TableRequest) -> Result<Report> {
    let runs_or_histogram = |runs: Vec<ShiftRun>, histogram: Report| {
        if req.detail {
            runs_report(&runs)
        } else {
            histogram
        }
    };
    Ok(match req.id {
        TableId::T1 => estimate_report(&table1()?, "k"),
        TableId::T5 => estimate_report(&table5()?, "k"),
        TableId::T6 => estimate_report(&table6()?, "mode"),
        TableId::T7 => refinement_report(&table7(req.max_grid)?),
        TableId::T2 => {
            let runs = interval_runs(&table2_shifts(scaled_count(T2_FULL, T2_DEFAULT, req.scale)))?;
            let h = histogram_report(&runs, -3, -8);
            runs_or_histogram(runs, h)
        }
        TableId::T3 => {
            let runs = interval_runs(&table3_shifts(scaled_count(T3_FULL, T3_FULL, req.scale)))?;
            let h = histogram_report(&runs, -4, -8);
            runs_or_histogram(runs, h)
        }
        TableId::T4 => {
            let runs = interval_runs(&table4_shifts(scaled_count(T4_FULL, T4_FULL, req.scale), req.seed)?)?;
            let h = random_histogram_report(&runs, req.seed);
            runs_or_histogram(runs, h)
        }
    })
}
