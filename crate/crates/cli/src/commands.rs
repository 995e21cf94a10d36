//! Single-eigenpair runs, decompositions and refinement sweeps.

use std::path::Path;

use eigenshift_core::{
    assemble_shifted, build_grid, decompose, default_tolerance, estimate_classic_rayleigh, estimate_gamma,
    estimate_linf_ratio, estimate_mu, estimate_weak_rayleigh, exact_eigenvalues, iterate, solve_eigenpair,
    DomainKind, DomainSpec, EstimatorKind, Grid, IterationConfig, IterationHistory, RayleighVariant, Result,
    SamplePoint, ShiftSchedule, SpectralDecompositionResult,
};

use crate::report::{format_number, Cell, Report};
use crate::request::{mode_eigenvalue, DecomposeRequest, EigenpairRequest, ShiftMode, Shifts, SweepRequest};

pub const EIGENPAIR_COLUMNS: [&str; 9] =
    ["iter", "mu", "gamma", "rq_phi", "rq_v", "rq_classic", "linf_ratio", "residual", "x0"];

pub const DECOMPOSE_COLUMNS: [&str; 6] =
    ["eigenvalue", "coefficient", "shift_used", "residual", "parseval_sum", "reconstruction_error"];

pub const SWEEP_COLUMNS: [&str; 8] = [
    "nodes",
    "h",
    "estimate",
    "exact",
    "relative_error",
    "error_ratio",
    "local_order",
    "fitted_order",
];

/// Coordinates of a node: `x`, `r`, or `x;y`.
pub fn coordinate_text(grid: &Grid, node: usize) -> String {
    let [x, y] = grid.coordinate(node);
    match grid.kind() {
        DomainKind::Square => format!("{};{}", format_number(x), format_number(y)),
        _ => format_number(x),
    }
}

/// `kind` at the last row of `history`, with the estimator's own error when
/// it is undefined there.
pub fn final_value(history: &IterationHistory, kind: EstimatorKind) -> Result<f64> {
    let m = history.iterations();
    match kind {
        EstimatorKind::Mu => estimate_mu(history, history.x0(), m),
        EstimatorKind::Gamma => estimate_gamma(history, m),
        EstimatorKind::WeakRayleighPhi => estimate_weak_rayleigh(history, RayleighVariant::Phi, m),
        EstimatorKind::WeakRayleighV => estimate_weak_rayleigh(history, RayleighVariant::V, m),
        EstimatorKind::ClassicRayleigh => estimate_classic_rayleigh(history.final_iterate()),
        EstimatorKind::LInfRatio => estimate_linf_ratio(history, m),
    }
}

pub fn run_eigenpair(req: &EigenpairRequest) -> Result<Report> {
    let grid = &req.problem.grid;
    let u0 = req.problem.start_function()?;
    let op = assemble_shifted(grid, req.shift)?;
    let cfg = IterationConfig {
        iterations: req.iterations,
        normalization: req.normalization,
        sample_point: req.sample_point,
        estimators: req.estimators.clone(),
        early_stop: req.early_stop,
        ..IterationConfig::default()
    };
    let result = solve_eigenpair(&u0, &op, &cfg)?;
    let history = &result.history;
    let m = history.iterations();
    if let SamplePoint::Node(node) = req.sample_point {
        // A user-chosen point on a nodal set is an error, not a blank cell.
        if req.estimators.contains(&EstimatorKind::Mu) {
            estimate_mu(history, node, m)?;
        }
    }

    let mut report = Report::new(EIGENPAIR_COLUMNS);
    for (n, row) in history.rows().iter().enumerate() {
        let mut cells = vec![Cell::from(n)];
        cells.extend(EstimatorKind::ALL.iter().map(|&k| Cell::opt(row.get(k))));
        if n == m {
            cells.push(Cell::Num(result.residual));
            cells.push(Cell::Text(coordinate_text(grid, history.x0())));
        }
        report.push(cells);
    }
    Ok(report)
}

pub fn schedule_for(spec: &DomainSpec, shifts: &Shifts, seed: u64) -> Result<ShiftSchedule> {
    match *shifts {
        Shifts::Explicit(ref list) => ShiftSchedule::explicit(list.clone()),
        Shifts::Generated { mode, count } => match mode {
            ShiftMode::Offset(offset) => ShiftSchedule::offset_from_exact(spec, count, offset),
            ShiftMode::Weyl => ShiftSchedule::weyl(spec, count),
            ShiftMode::Midpoint => ShiftSchedule::midpoint(spec, count),
            ShiftMode::Random => {
                let upper = exact_eigenvalues(spec, count)?.modes[count - 1].eigenvalue;
                ShiftSchedule::random(count, upper, seed)
            }
        },
    }
}

pub fn decomposition_report(result: &SpectralDecompositionResult) -> Report {
    let mut report = Report::new(DECOMPOSE_COLUMNS);
    for c in &result.components {
        report.push(vec![
            c.eigenvalue.into(),
            c.coefficient.into(),
            c.shift_used.into(),
            c.residual.into(),
        ]);
    }
    report.push(vec![
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        Cell::Empty,
        result.parseval_sum.into(),
        result.reconstruction_error.into(),
    ]);
    report
}

/// Node coordinates followed by one column per component eigenfunction.
pub fn eigenfunction_dump(result: &SpectralDecompositionResult) -> Report {
    let grid = result.components[0].eigenfunction.grid();
    let mut columns = match grid.kind() {
        DomainKind::Interval => vec!["node".to_owned(), "x".to_owned()],
        DomainKind::RadialDisk => vec!["node".to_owned(), "r".to_owned()],
        DomainKind::Square => vec!["node".to_owned(), "x".to_owned(), "y".to_owned()],
    };
    columns.extend((1..=result.components.len()).map(|j| format!("e{j}")));
    let mut report = Report::new(columns);
    for node in 0..grid.len() {
        let [x, y] = grid.coordinate(node);
        let mut cells = vec![Cell::from(node), x.into()];
        if grid.kind() == DomainKind::Square {
            cells.push(y.into());
        }
        cells.extend(result.components.iter().map(|c| Cell::Num(c.eigenfunction.value(node))));
        report.push(cells);
    }
    report
}

pub fn run_decompose(req: &DecomposeRequest) -> Result<(Report, SpectralDecompositionResult)> {
    let grid = &req.problem.grid;
    let u = req.problem.start_function()?;
    let schedule = schedule_for(grid.spec(), &req.shifts, req.seed)?;
    let tolerance = req.tolerance.unwrap_or_else(|| default_tolerance(&u));
    let result = decompose(&u, &schedule, req.max_iterations, tolerance)?;
    Ok((decomposition_report(&result), result))
}

pub fn write_dump(result: &SpectralDecompositionResult, path: &Path) -> std::io::Result<()> {
    eigenfunction_dump(result).write(crate::report::Format::Csv, Some(path))
}

/// Least-squares slope of `ln e` against `ln h`.
pub fn fitted_order(h: &[f64], errors: &[f64]) -> f64 {
    let xs: Vec<f64> = h.iter().map(|v| v.ln()).collect();
    let ys: Vec<f64> = errors.iter().map(|v| v.ln()).collect();
    let n = xs.len() as f64;
    let (mx, my) = (xs.iter().sum::<f64>() / n, ys.iter().sum::<f64>() / n);
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = xs.iter().map(|x| (x - mx) * (x - mx)).sum();
    sxy / sxx
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepPoint {
    pub nodes: Vec<usize>,
    pub h: f64,
    pub estimate: f64,
    pub relative_error: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SweepOutcome {
    pub exact: f64,
    pub points: Vec<SweepPoint>,
    pub order: f64,
}

pub fn sweep(req: &SweepRequest) -> Result<SweepOutcome> {
    let exact = mode_eigenvalue(&req.spec, req.mode)?;
    let cfg = IterationConfig {
        iterations: req.iterations,
        sample_point: SamplePoint::Auto { seed: req.seed },
        ..IterationConfig::default()
    }
    .with_estimators(&[req.estimator]);
    let mut points = Vec::with_capacity(req.grids.len());
    for nodes in &req.grids {
        let grid = build_grid(req.spec, nodes)?;
        let u0 = req.start.sample(&grid)?;
        let op = assemble_shifted(&grid, req.shift)?;
        let history = iterate(&u0, &op, &cfg)?;
        let estimate = final_value(&history, req.estimator)?;
        points.push(SweepPoint {
            nodes: vec![grid.nx(), grid.ny()][..req.spec.kind().axes()].to_vec(),
            h: grid.hx(),
            estimate,
            relative_error: ((estimate - exact) / exact).abs(),
        });
    }
    let h: Vec<f64> = points.iter().map(|p| p.h).collect();
    let e: Vec<f64> = points.iter().map(|p| p.relative_error).collect();
    Ok(SweepOutcome {
        exact,
        order: fitted_order(&h, &e),
        points,
    })
}

pub fn sweep_report(outcome: &SweepOutcome) -> Report {
    let mut report = Report::new(SWEEP_COLUMNS);
    let last = outcome.points.len() - 1;
    for (i, p) in outcome.points.iter().enumerate() {
        let nodes = p.nodes.iter().map(|n| n.to_string()).collect::<Vec<_>>().join("x");
        let mut cells = vec![
            Cell::Text(nodes),
            p.h.into(),
            p.estimate.into(),
            outcome.exact.into(),
            p.relative_error.into(),
        ];
        if i > 0 {
            let prev = &outcome.points[i - 1];
            let ratio = prev.relative_error / p.relative_error;
            cells.push(ratio.into());
            cells.push((ratio.ln() / (prev.h / p.h).ln()).into());
        } else {
            cells.extend([Cell::Empty, Cell::Empty]);
        }
        if i == last {
            cells.push(outcome.order.into());
        }
        report.push(cells);
    }
    report
}
