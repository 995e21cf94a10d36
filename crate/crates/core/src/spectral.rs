//! Spectral decomposition of a grid function by a schedule of shifts.
//!
//! For each shift, inverse iteration from `u` runs until the iterate's
//! direction stalls (or the per-shift cap is reached). The L²-normalized
//! iterate `ê` is kept when its Fourier coefficient `⟨u, ê⟩₂` exceeds the
//! tolerance; smaller coefficients come from modes that `u` does not contain
//! and that rounding errors seeded. Shifts converging to the same eigenvalue
//! are merged.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::domain::{exact_eigenvalues, weyl_shift_seeds, DomainSpec};
use crate::error::{Error, Result};
use crate::function::GridFunction;
use crate::iteration::residual;
use crate::operator::assemble_shifted;
use crate::quadrature::Quadrature;

/// Relative eigenvalue difference below which two components are merged.
pub const MERGE_THRESHOLD: f64 = 1e-6;
/// Relative change of the normalized iterate that counts as converged.
pub const STALL_TOLERANCE: f64 = 1e-11;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ScheduleSource {
    Explicit,
    WeylSeeded,
    /// `λₖ − offset` from the exact spectrum.
    OffsetFromExact,
    /// `(λₖ + λₖ₊₁)/2`.
    Midpoint,
    Random { seed: u64 },
}

#[derive(Debug, Clone, PartialEq)]
pub struct ShiftSchedule {
    shifts: Vec<f64>,
    source: ScheduleSource,
}

impl ShiftSchedule {
    /// Shifts in the given order; each must be finite and positive.
    pub fn explicit(shifts: Vec<f64>) -> Result<Self> {
        if shifts.is_empty() {
            return Err(Error::InvalidParameter("shift schedule is empty".into()));
        }
        if let Some(s) = shifts.iter().find(|s| !(s.is_finite() && **s > 0.0)) {
            return Err(Error::InvalidParameter(format!("shift {s} must be finite and positive")));
        }
        Ok(Self {
            shifts,
            source: ScheduleSource::Explicit,
        })
    }

    /// `j^{2/N}/C`, `j = 1..=count`.
    pub fn weyl(spec: &DomainSpec, count: usize) -> Result<Self> {
        Ok(Self {
            shifts: weyl_shift_seeds(spec, count)?,
            source: ScheduleSource::WeylSeeded,
        })
    }

    /// `λₖ − offset` over the first `count` distinct exact eigenvalues.
    pub fn offset_from_exact(spec: &DomainSpec, count: usize, offset: f64) -> Result<Self> {
        let shifts: Vec<f64> = distinct_eigenvalues(spec, count)?
            .into_iter()
            .map(|l| l - offset)
            .collect();
        Self::auto(shifts, ScheduleSource::OffsetFromExact)
    }

    /// `(λₖ + λₖ₊₁)/2` over the first `count + 1` distinct exact eigenvalues.
    pub fn midpoint(spec: &DomainSpec, count: usize) -> Result<Self> {
        let l = distinct_eigenvalues(spec, count + 1)?;
        Self::auto(
            l.windows(2).map(|w| 0.5 * (w[0] + w[1])).collect(),
            ScheduleSource::Midpoint,
        )
    }

    /// `count` uniform draws on `(0, upper)`, sorted.
    pub fn random(count: usize, upper: f64, seed: u64) -> Result<Self> {
        if count == 0 || !(upper.is_finite() && upper > 0.0) {
            return Err(Error::InvalidParameter(
                "random schedule needs a positive count and upper bound".into(),
            ));
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut shifts: Vec<f64> = (0..count)
            .map(|_| loop {
                let s = rng.gen::<f64>() * upper;
                if s > 0.0 {
                    break s;
                }
            })
            .collect();
        shifts.sort_by(f64::total_cmp);
        Ok(Self {
            shifts,
            source: ScheduleSource::Random { seed },
        })
    }

    fn auto(shifts: Vec<f64>, source: ScheduleSource) -> Result<Self> {
        let mut schedule = Self::explicit(shifts)?;
        schedule.source = source;
        Ok(schedule)
    }

    pub fn shifts(&self) -> &[f64] {
        &self.shifts
    }

    pub fn source(&self) -> ScheduleSource {
        self.source
    }

    pub fn len(&self) -> usize {
        self.shifts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.shifts.is_empty()
    }
}

fn distinct_eigenvalues(spec: &DomainSpec, count: usize) -> Result<Vec<f64>> {
    // Multiplicities on the square are at most a handful; over-fetch and trim.
    let mut fetch = count.max(1);
    loop {
        let distinct = exact_eigenvalues(spec, fetch)?.distinct();
        if distinct.len() > count || (distinct.len() == count && fetch > 4 * count) {
            return Ok(distinct.into_iter().take(count).map(|m| m.eigenvalue).collect());
        }
        fetch *= 2;
    }
}

#[derive(Debug, Clone)]
pub struct SpectralComponent {
    /// `R(vₙ)` at the final iterate.
    pub eigenvalue: f64,
    /// `⟨u, ê⟩₂`, made non-negative by the sign of `ê`.
    pub coefficient: f64,
    /// `ê`, with `‖ê‖₂ = 1`.
    pub eigenfunction: GridFunction,
    pub shift_used: f64,
    pub residual: f64,
    pub iterations: usize,
}

/// A shift that could not be used.
#[derive(Debug, Clone, PartialEq)]
pub struct SkippedShift {
    pub sigma: f64,
    pub error: Error,
}

#[derive(Debug, Clone)]
pub struct SpectralDecompositionResult {
    /// Surviving components, increasing in eigenvalue.
    pub components: Vec<SpectralComponent>,
    /// `Σ coefficient²`.
    pub parseval_sum: f64,
    /// `‖u − Σ coefficient·ê‖₂ / ‖u‖₂`.
    pub reconstruction_error: f64,
    /// `‖u‖₂²`.
    pub norm_squared: f64,
    pub tolerance: f64,
    pub skipped: Vec<SkippedShift>,
}

/// `1e-8 · ‖u‖₂`.
pub fn default_tolerance(u: &GridFunction) -> f64 {
    1e-8 * Quadrature::new(u.grid()).norm_l2(u)
}

/// `⟨u, e/‖e‖₂⟩₂`.
pub fn fourier_coefficient(u: &GridFunction, e: &GridFunction) -> Result<f64> {
    u.check_same_grid(e)?;
    let quad = Quadrature::new(u.grid());
    let norm = quad.norm_l2(e);
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(quad.dot(u.values(), e.values()) / norm)
}

struct ShiftOutcome {
    eigenvalue: f64,
    direction: GridFunction,
    iterations: usize,
}

fn iterate_to_stall(u: &GridFunction, sigma: f64, max_iterations: usize, quad: &Quadrature) -> Result<(ShiftOutcome, f64)> {
    let op = assemble_shifted(u.grid(), sigma)?;
    let mut v = u.scaled(1.0 / quad.norm_l2(u));
    let mut eigenvalue = f64::NAN;
    let mut iterations = 0;
    for n in 0..max_iterations {
        let next = op.solve(&v)?;
        let norm = quad.norm_l2(&next);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::ZeroStart);
        }
        let dot = quad.dot(v.values(), next.values());
        eigenvalue = sigma + dot / (norm * norm);
        let sign = if dot < 0.0 { -1.0 } else { 1.0 };
        let next = next.scaled(sign / norm);
        let change = next.sub(&v)?;
        v = next;
        iterations = n + 1;
        if n > 0 && quad.norm_l2(&change) < STALL_TOLERANCE {
            break;
        }
    }
    let res = residual(&op, eigenvalue, &v)?;
    Ok((
        ShiftOutcome {
            eigenvalue,
            direction: v,
            iterations,
        },
        res,
    ))
}

/// Extracts the eigencomponents of `u` reachable from `schedule`.
///
/// Each shift runs at most `max_iterations` solves. Shifts that hit a
/// discrete eigenvalue are recorded in `skipped` and the schedule continues.
pub fn decompose(
    u: &GridFunction,
    schedule: &ShiftSchedule,
    max_iterations: usize,
    tolerance: f64,
) -> Result<SpectralDecompositionResult> {
    if !(tolerance.is_finite() && tolerance > 0.0) {
        return Err(Error::InvalidParameter(format!("tolerance {tolerance} must be positive")));
    }
    if max_iterations == 0 {
        return Err(Error::InvalidParameter("iteration cap must be at least 1".into()));
    }
    let quad = Quadrature::new(u.grid());
    let norm_squared = quad.dot(u.values(), u.values());
    if norm_squared == 0.0 {
        return Err(Error::ZeroStart);
    }

    let mut components: Vec<SpectralComponent> = Vec::new();
    let mut skipped = Vec::new();
    for &sigma in schedule.shifts() {
        let (outcome, res) = match iterate_to_stall(u, sigma, max_iterations, &quad) {
            Ok(found) => found,
            Err(error @ Error::NearSingularShift { .. }) => {
                skipped.push(SkippedShift { sigma, error });
                continue;
            }
            Err(other) => return Err(other),
        };
        let raw = quad.dot(u.values(), outcome.direction.values());
        if raw.abs() <= tolerance {
            continue;
        }
        let component = SpectralComponent {
            eigenvalue: outcome.eigenvalue,
            coefficient: raw.abs(),
            eigenfunction: outcome.direction.scaled(raw.signum()),
            shift_used: sigma,
            residual: res,
            iterations: outcome.iterations,
        };
        match components.iter_mut().find(|c| {
            (c.eigenvalue - component.eigenvalue).abs() < MERGE_THRESHOLD * c.eigenvalue.abs()
        }) {
            Some(existing) => {
                if component.coefficient > existing.coefficient {
                    *existing = component;
                }
            }
            None => components.push(component),
        }
    }
    if components.is_empty() {
        return Err(Error::EmptyResult { tolerance });
    }
    components.sort_by(|a, b| a.eigenvalue.total_cmp(&b.eigenvalue));

    let parseval_sum = components.iter().map(|c| c.coefficient * c.coefficient).sum();
    let mut result = SpectralDecompositionResult {
        components,
        parseval_sum,
        reconstruction_error: 0.0,
        norm_squared,
        tolerance,
        skipped,
    };
    let diff = u.sub(&reconstruct(&result)?)?;
    result.reconstruction_error = (quad.dot(diff.values(), diff.values()) / norm_squared).sqrt();
    Ok(result)
}

/// `Σ coefficient · ê`.
pub fn reconstruct(result: &SpectralDecompositionResult) -> Result<GridFunction> {
    let first = result.components.first().ok_or(Error::EmptyResult {
        tolerance: result.tolerance,
    })?;
    let mut sum = GridFunction::zeros(first.eigenfunction.grid());
    for c in &result.components {
        sum = sum.add_scaled(c.coefficient, &c.eigenfunction)?;
    }
    Ok(sum)
}
