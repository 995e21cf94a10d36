//! Inverse iteration with shift and its eigenvalue estimators.
//!
//! With `A = −Δ_h − σ` the method iterates `φₙ₊₁ = A⁻¹φₙ`, `φ₀ = u`. The run
//! is normalized: `v₀ = u/‖u‖`, `vₙ₊₁ = A⁻¹(vₙ/Nₙ)` with `Nₙ = ‖vₙ‖` in the
//! configured norm, so that `φₙ = cₙvₙ` with `c₀ = ‖u‖`, `cₙ₊₁ = cₙNₙ`. The
//! scale factors are kept as logarithms; every estimator below is expressed
//! through `vₙ` and `Nₙ` and equals its un-normalized definition:
//!
//! * `μₙ = φₙ(x₀)/φₙ₊₁(x₀) + σ = vₙ(x₀)/(Nₙvₙ₊₁(x₀)) + σ`
//! * `γₙ = sₙ‖φₙ‖₂/‖φₙ₊₁‖₂ + σ`, `sₙ = sign⟨vₙ, vₙ₊₁⟩`
//! * L∞ ratio: as `γₙ` with maximum norms
//! * `R(φₙ) = σ + ⟨φₙ, φₙ₋₁⟩/‖φₙ‖₂²`
//! * `R(vₙ) = σ + ⟨vₙ, vₙ₋₁/Nₙ₋₁⟩/‖vₙ‖₂²`
//!
//! `R(vₙ)` is evaluated on a companion stream that is re-symmetrized after
//! every solve under the grid reflections leaving `u` exactly invariant. In
//! exact arithmetic it coincides with the plain stream; in floating point it
//! keeps rounding errors from seeding eigenfunctions that `u` does not
//! contain. When `u` has no exact symmetry the two streams are the same run.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;

use crate::domain::Grid;
use crate::error::{Error, Result};
use crate::function::GridFunction;
use crate::operator::{dirichlet_energy, lumped_weights, ShiftedOperator};
use crate::quadrature::{norm_linf, Quadrature};
use crate::symmetry::{invariant_reflections, symmetrize, Reflection};

/// A sample point is rejected when `|v(x₀)| < NODAL_FRACTION · ‖v‖∞`.
pub const NODAL_FRACTION: f64 = 0.01;
/// Draws attempted by [`pick_sample_point`] before giving up.
pub const MAX_SAMPLE_DRAWS: usize = 100;
/// Relative change in successive `R(vₙ)` that ends an early-stopping run.
pub const EARLY_STOP_TOLERANCE: f64 = 1e-12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Normalization {
    #[default]
    L2,
    LInf,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SamplePoint {
    /// Drawn from the final iterate with the given seed.
    Auto { seed: u64 },
    /// A fixed unknown node.
    Node(usize),
}

impl Default for SamplePoint {
    fn default() -> Self {
        SamplePoint::Auto { seed: 0 }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EstimatorKind {
    Mu,
    Gamma,
    WeakRayleighPhi,
    WeakRayleighV,
    ClassicRayleigh,
    LInfRatio,
}

impl EstimatorKind {
    pub const ALL: [EstimatorKind; 6] = [
        EstimatorKind::Mu,
        EstimatorKind::Gamma,
        EstimatorKind::WeakRayleighPhi,
        EstimatorKind::WeakRayleighV,
        EstimatorKind::ClassicRayleigh,
        EstimatorKind::LInfRatio,
    ];

    /// Column name used in reports.
    pub fn column(self) -> &'static str {
        match self {
            EstimatorKind::Mu => "mu",
            EstimatorKind::Gamma => "gamma",
            EstimatorKind::WeakRayleighPhi => "rq_phi",
            EstimatorKind::WeakRayleighV => "rq_v",
            EstimatorKind::ClassicRayleigh => "rq_classic",
            EstimatorKind::LInfRatio => "linf_ratio",
        }
    }
}

impl fmt::Display for EstimatorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.column())
    }
}

impl FromStr for EstimatorKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "mu" => Ok(EstimatorKind::Mu),
            "gamma" => Ok(EstimatorKind::Gamma),
            "rq-phi" | "rq_phi" => Ok(EstimatorKind::WeakRayleighPhi),
            "rq-v" | "rq_v" => Ok(EstimatorKind::WeakRayleighV),
            "rq-classic" | "rq_classic" => Ok(EstimatorKind::ClassicRayleigh),
            "linf" | "linf_ratio" => Ok(EstimatorKind::LInfRatio),
            other => Err(Error::InvalidParameter(format!("unknown estimator '{other}'"))),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RayleighVariant {
    Phi,
    V,
}

/// How `R(vₙ)` is computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Companion {
    /// Symmetry-adapted companion stream (see the module docs).
    #[default]
    SymmetryAdapted,
    /// Same normalized stream as every other estimator.
    Shared,
}

#[derive(Debug, Clone, PartialEq)]
pub struct IterationConfig {
    pub iterations: usize,
    pub normalization: Normalization,
    pub sample_point: SamplePoint,
    pub estimators: Vec<EstimatorKind>,
    pub early_stop: bool,
    pub companion: Companion,
}

impl Default for IterationConfig {
    fn default() -> Self {
        Self {
            iterations: 10,
            normalization: Normalization::L2,
            sample_point: SamplePoint::default(),
            estimators: EstimatorKind::ALL.to_vec(),
            early_stop: false,
            companion: Companion::default(),
        }
    }
}

impl IterationConfig {
    pub fn with_iterations(mut self, iterations: usize) -> Self {
        self.iterations = iterations;
        self
    }

    pub fn with_estimators(mut self, estimators: &[EstimatorKind]) -> Self {
        self.estimators = estimators.to_vec();
        self
    }

    fn wants(&self, kind: EstimatorKind) -> bool {
        self.estimators.contains(&kind)
    }

    fn validate(&self, grid: &Grid) -> Result<()> {
        if self.iterations == 0 {
            return Err(Error::InvalidParameter("iteration count must be at least 1".into()));
        }
        if let SamplePoint::Node(node) = self.sample_point {
            if node >= grid.len() || grid.is_boundary(node) {
                return Err(Error::InvalidParameter(format!(
                    "sample node {node} is not an interior node"
                )));
            }
        }
        Ok(())
    }
}

/// One value per estimator; `None` when not requested or undefined.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct EstimatorSet {
    pub mu: Option<f64>,
    pub gamma: Option<f64>,
    pub rq_phi: Option<f64>,
    pub rq_v: Option<f64>,
    pub rq_classic: Option<f64>,
    pub linf_ratio: Option<f64>,
}

impl EstimatorSet {
    pub fn get(&self, kind: EstimatorKind) -> Option<f64> {
        match kind {
            EstimatorKind::Mu => self.mu,
            EstimatorKind::Gamma => self.gamma,
            EstimatorKind::WeakRayleighPhi => self.rq_phi,
            EstimatorKind::WeakRayleighV => self.rq_v,
            EstimatorKind::ClassicRayleigh => self.rq_classic,
            EstimatorKind::LInfRatio => self.linf_ratio,
        }
    }

    fn set(&mut self, kind: EstimatorKind, value: Option<f64>) {
        let slot = match kind {
            EstimatorKind::Mu => &mut self.mu,
            EstimatorKind::Gamma => &mut self.gamma,
            EstimatorKind::WeakRayleighPhi => &mut self.rq_phi,
            EstimatorKind::WeakRayleighV => &mut self.rq_v,
            EstimatorKind::ClassicRayleigh => &mut self.rq_classic,
            EstimatorKind::LInfRatio => &mut self.linf_ratio,
        };
        *slot = value.filter(|v| v.is_finite());
    }
}

/// Scalar trace of a normalized stream.
#[derive(Debug, Clone)]
struct StreamTrace {
    norm_l2: Vec<f64>,
    norm_linf: Vec<f64>,
    /// `⟨vₙ, vₙ₊₁⟩`.
    dots: Vec<f64>,
}

impl StreamTrace {
    fn scale(&self, n: usize, normalization: Normalization) -> f64 {
        match normalization {
            Normalization::L2 => self.norm_l2[n],
            Normalization::LInf => self.norm_linf[n],
        }
    }

    fn rayleigh(&self, sigma: f64, n: usize, normalization: Normalization) -> f64 {
        sigma + self.dots[n - 1] / (self.scale(n - 1, normalization) * self.norm_l2[n].powi(2))
    }
}

/// Record of one inverse-iteration run.
#[derive(Debug, Clone)]
pub struct IterationHistory {
    sigma: f64,
    normalization: Normalization,
    requested: Vec<EstimatorKind>,
    /// `v₀ … vₘ₊₁`.
    iterates: Vec<GridFunction>,
    plain: StreamTrace,
    /// `ln cₙ`.
    log_scale: Vec<f64>,
    reflections: Vec<Reflection>,
    companion: Option<(StreamTrace, GridFunction)>,
    x0: usize,
    rows: Vec<EstimatorSet>,
}

impl IterationHistory {
    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn normalization(&self) -> Normalization {
        self.normalization
    }

    /// Iterations performed, `m`; rows `0..=m` carry estimates.
    pub fn iterations(&self) -> usize {
        self.iterates.len() - 2
    }

    pub fn requested(&self) -> &[EstimatorKind] {
        &self.requested
    }

    /// Normalized iterate `vₙ`, `0 ≤ n ≤ m + 1`.
    pub fn iterate(&self, n: usize) -> Result<&GridFunction> {
        self.iterates.get(n).ok_or(Error::MissingIterate {
            index: n,
            last: self.iterates.len() - 1,
        })
    }

    /// Final iterate `vₘ₊₁` of the plain stream.
    pub fn final_iterate(&self) -> &GridFunction {
        self.iterates.last().expect("history holds at least two iterates")
    }

    /// Final iterate of the stream that produced `R(vₙ)`.
    pub fn companion_final_iterate(&self) -> &GridFunction {
        match &self.companion {
            Some((_, last)) => last,
            None => self.final_iterate(),
        }
    }

    /// Reflections the companion stream was symmetrized under; empty when
    /// it coincides with the plain stream.
    pub fn reflections(&self) -> &[Reflection] {
        &self.reflections
    }

    fn check_row(&self, n: usize, needs_previous: bool) -> Result<()> {
        let last = self.iterations();
        if n > last || (needs_previous && n == 0) {
            return Err(Error::MissingIterate { index: n, last });
        }
        Ok(())
    }

    /// `ln ‖φₙ‖₂` of the un-normalized iterate.
    pub fn log_phi_norm_l2(&self, n: usize) -> Result<f64> {
        self.iterate(n)?;
        Ok(self.log_scale[n] + self.plain.norm_l2[n].ln())
    }

    /// `‖φₙ‖₂`; may overflow to infinity for long runs.
    pub fn phi_norm_l2(&self, n: usize) -> Result<f64> {
        Ok(self.log_phi_norm_l2(n)?.exp())
    }

    /// `‖φₙ‖∞`; may overflow to infinity for long runs.
    pub fn phi_norm_linf(&self, n: usize) -> Result<f64> {
        self.iterate(n)?;
        Ok((self.log_scale[n] + self.plain.norm_linf[n].ln()).exp())
    }

    /// Normalization factor `Nₙ` applied before solve `n`.
    pub fn scale_factor(&self, n: usize) -> Result<f64> {
        self.iterate(n)?;
        Ok(self.plain.scale(n, self.normalization))
    }

    /// `sₙ = sign⟨vₙ, vₙ₊₁⟩` for `0 ≤ n ≤ m`.
    pub fn sign(&self, n: usize) -> Result<f64> {
        self.check_row(n, false)?;
        Ok(if self.plain.dots[n] < 0.0 { -1.0 } else { 1.0 })
    }

    pub fn signs(&self) -> Vec<f64> {
        (0..=self.iterations()).map(|n| self.sign(n).unwrap()).collect()
    }

    /// Sample node used by `μₙ`.
    pub fn x0(&self) -> usize {
        self.x0
    }

    /// Requested estimates per iteration `0..=m`.
    pub fn rows(&self) -> &[EstimatorSet] {
        &self.rows
    }

    pub fn estimates(&self, n: usize) -> Option<&EstimatorSet> {
        self.rows.get(n)
    }

    /// Requested estimates at `n = m`.
    pub fn final_estimates(&self) -> &EstimatorSet {
        self.rows.last().expect("at least one row")
    }
}

fn stream_norm(quad: &Quadrature, values: &[f64], normalization: Normalization) -> f64 {
    match normalization {
        Normalization::L2 => quad.dot(values, values).sqrt(),
        Normalization::LInf => values.iter().fold(0.0, |m, v| m.max(v.abs())),
    }
}

fn linf(values: &[f64]) -> f64 {
    values.iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Runs `m` steps of normalized inverse iteration from `u0`.
pub fn iterate(u0: &GridFunction, op: &ShiftedOperator, cfg: &IterationConfig) -> Result<IterationHistory> {
    let grid = op.grid();
    if u0.grid() != grid {
        return Err(Error::GridMismatch);
    }
    cfg.validate(grid)?;
    let sigma = op.sigma();
    let quad = Quadrature::new(grid);
    let normalization = cfg.normalization;

    let start_norm = stream_norm(&quad, u0.values(), normalization);
    if start_norm == 0.0 || grid.unknowns().iter().all(|&n| u0.value(n) == 0.0) {
        return Err(Error::ZeroStart);
    }
    let v0 = u0.scaled(1.0 / start_norm);

    let reflections = if cfg.companion == Companion::SymmetryAdapted && cfg.wants(EstimatorKind::WeakRayleighV) {
        invariant_reflections(grid, u0.values())
    } else {
        Vec::new()
    };

    let mut iterates = vec![v0];
    let mut plain = StreamTrace {
        norm_l2: vec![quad.norm_l2(&iterates[0])],
        norm_linf: vec![norm_linf(&iterates[0])],
        dots: Vec::new(),
    };
    let mut log_scale = vec![start_norm.ln()];
    let mut companion = if reflections.is_empty() {
        None
    } else {
        let w0 = iterates[0].clone();
        Some((
            StreamTrace {
                norm_l2: plain.norm_l2.clone(),
                norm_linf: plain.norm_linf.clone(),
                dots: Vec::new(),
            },
            w0,
        ))
    };

    let step = |v: &GridFunction, scale: f64, symmetric: bool| -> Result<GridFunction> {
        let next = op.solve(&v.scaled(1.0 / scale))?;
        if !symmetric {
            return Ok(next);
        }
        let mut values = next.into_values();
        symmetrize(grid, &mut values, &reflections);
        Ok(GridFunction::from_raw(grid, values))
    };

    let mut previous_rq: Option<f64> = None;
    for n in 0..=cfg.iterations {
        let scale = plain.scale(n, normalization);
        let next = step(&iterates[n], scale, false)?;
        let next_linf = linf(next.values());
        if next_linf == 0.0 || !next_linf.is_finite() {
            return Err(Error::ZeroStart);
        }
        plain.dots.push(quad.dot(iterates[n].values(), next.values()));
        plain.norm_l2.push(quad.norm_l2(&next));
        plain.norm_linf.push(next_linf);
        log_scale.push(log_scale[n] + scale.ln());
        iterates.push(next);

        if let Some((trace, w)) = companion.as_mut() {
            let next = step(w, trace.scale(n, normalization), true)?;
            trace.dots.push(quad.dot(w.values(), next.values()));
            trace.norm_l2.push(quad.norm_l2(&next));
            trace.norm_linf.push(linf(next.values()));
            *w = next;
        }

        if cfg.early_stop {
            let trace = companion.as_ref().map(|(t, _)| t).unwrap_or(&plain);
            let rq = trace.rayleigh(sigma, n + 1, normalization);
            if let Some(prev) = previous_rq {
                if (rq - prev).abs() < EARLY_STOP_TOLERANCE * rq.abs() {
                    break;
                }
            }
            previous_rq = Some(rq);
        }
    }

    let x0 = match cfg.sample_point {
        SamplePoint::Node(node) => node,
        SamplePoint::Auto { seed } => pick_sample_point(grid, iterates.last().unwrap(), seed)?,
    };

    let mut history = IterationHistory {
        sigma,
        normalization,
        requested: cfg.estimators.clone(),
        iterates,
        plain,
        log_scale,
        reflections,
        companion,
        x0,
        rows: Vec::new(),
    };
    history.rows = (0..=history.iterations())
        .map(|n| {
            let mut row = EstimatorSet::default();
            for &kind in &history.requested {
                let value = match kind {
                    EstimatorKind::Mu => estimate_mu(&history, x0, n).ok(),
                    EstimatorKind::Gamma => estimate_gamma(&history, n).ok(),
                    EstimatorKind::WeakRayleighPhi => {
                        estimate_weak_rayleigh(&history, RayleighVariant::Phi, n).ok()
                    }
                    EstimatorKind::WeakRayleighV => {
                        estimate_weak_rayleigh(&history, RayleighVariant::V, n).ok()
                    }
                    EstimatorKind::ClassicRayleigh => {
                        estimate_classic_rayleigh(&history.iterates[n]).ok()
                    }
                    EstimatorKind::LInfRatio => estimate_linf_ratio(&history, n).ok(),
                };
                row.set(kind, value);
            }
            row
        })
        .collect();
    Ok(history)
}

/// Pointwise quotient `μₙ = φₙ(x₀)/φₙ₊₁(x₀) + σ`.
pub fn estimate_mu(history: &IterationHistory, x0: usize, n: usize) -> Result<f64> {
    history.check_row(n, false)?;
    let grid = history.iterates[0].grid();
    if x0 >= grid.len() || grid.is_boundary(x0) {
        return Err(Error::InvalidParameter(format!("sample node {x0} is not an interior node")));
    }
    let next = &history.iterates[n + 1];
    let denominator = next.value(x0);
    if denominator.abs() < NODAL_FRACTION * history.plain.norm_linf[n + 1] {
        return Err(Error::NodalPoint { node: x0, iterate: n + 1 });
    }
    let scale = history.plain.scale(n, history.normalization);
    Ok(history.iterates[n].value(x0) / (scale * denominator) + history.sigma)
}

/// Signed L² quotient `γₙ = sₙ‖φₙ‖₂/‖φₙ₊₁‖₂ + σ`.
pub fn estimate_gamma(history: &IterationHistory, n: usize) -> Result<f64> {
    let s = history.sign(n)?;
    let t = &history.plain;
    Ok(s * t.norm_l2[n] / (t.scale(n, history.normalization) * t.norm_l2[n + 1]) + history.sigma)
}

/// Signed maximum-norm quotient `sₙ‖φₙ‖∞/‖φₙ₊₁‖∞ + σ`.
pub fn estimate_linf_ratio(history: &IterationHistory, n: usize) -> Result<f64> {
    let s = history.sign(n)?;
    let t = &history.plain;
    Ok(s * t.norm_linf[n] / (t.scale(n, history.normalization) * t.norm_linf[n + 1]) + history.sigma)
}

/// Gradient-free Rayleigh quotient `R(φₙ)` or `R(vₙ)`, `n ≥ 1`.
pub fn estimate_weak_rayleigh(history: &IterationHistory, variant: RayleighVariant, n: usize) -> Result<f64> {
    history.check_row(n, true)?;
    let trace = match (variant, &history.companion) {
        (RayleighVariant::V, Some((trace, _))) => trace,
        _ => &history.plain,
    };
    Ok(trace.rayleigh(history.sigma, n, history.normalization))
}

/// Classic quotient `∫|∇f|² / ∫f²` with the discrete Dirichlet energy and the
/// lumped mass of the stencil; boundary values of `f` are taken as zero.
pub fn estimate_classic_rayleigh(f: &GridFunction) -> Result<f64> {
    let w = lumped_weights(f.grid());
    let mass: f64 = w.iter().zip(f.values()).map(|(w, v)| w * v * v).sum();
    if mass == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(dirichlet_energy(f) / mass)
}

/// Uniformly random unknown node with `|v(x₀)| ≥ 0.01‖v‖∞`, deterministic in
/// `seed`.
pub fn pick_sample_point(grid: &Grid, v: &GridFunction, seed: u64) -> Result<usize> {
    if v.grid() != grid {
        return Err(Error::GridMismatch);
    }
    let max = norm_linf(v);
    if max == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let candidates = grid.unknowns();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..MAX_SAMPLE_DRAWS {
        let node = candidates[rng.gen_range(0..candidates.len())];
        if v.value(node).abs() >= NODAL_FRACTION * max {
            return Ok(node);
        }
    }
    Err(Error::NoValidPoint { draws: MAX_SAMPLE_DRAWS })
}

/// Component of `u` along `v`: `⟨u, v̂⟩v̂` with `v̂ = v/‖v‖₂`.
pub fn project_component(u: &GridFunction, v: &GridFunction) -> Result<GridFunction> {
    u.check_same_grid(v)?;
    let quad = Quadrature::new(u.grid());
    let vv = quad.dot(v.values(), v.values());
    if vv == 0.0 {
        return Err(Error::ZeroFunction);
    }
    Ok(v.scaled(quad.dot(u.values(), v.values()) / vv))
}

/// Relative residual `‖(−Δ_h)ê − λ̂ê‖₂ / ‖ê‖₂`, computed through the shifted
/// stencil of `op` so any shift may be supplied.
pub fn residual(op: &ShiftedOperator, lambda_hat: f64, e_hat: &GridFunction) -> Result<f64> {
    let quad = Quadrature::new(op.grid());
    let e = e_hat.with_zero_boundary();
    let norm = quad.norm_l2(&e);
    if norm == 0.0 {
        return Err(Error::ZeroFunction);
    }
    let r = op.apply(&e)?.add_scaled(op.sigma() - lambda_hat, &e)?;
    Ok(quad.norm_l2(&r) / norm)
}

/// Eigenpair approximation from one inverse-iteration run.
#[derive(Debug, Clone)]
pub struct EigenpairResult {
    /// Requested estimates at `n = m`.
    pub estimates: EstimatorSet,
    /// Estimate used for the residual: `R(vₘ)` when requested, else `R(φₘ)`.
    pub eigenvalue: f64,
    /// Final iterate, normalized to 1 in the configured norm.
    pub eigenfunction: GridFunction,
    pub residual: f64,
    pub history: IterationHistory,
}

/// Runs [`iterate`] and packages the final eigenpair with its residual.
pub fn solve_eigenpair(u0: &GridFunction, op: &ShiftedOperator, cfg: &IterationConfig) -> Result<EigenpairResult> {
    let history = iterate(u0, op, cfg)?;
    let m = history.iterations();
    let (eigenvalue, last) = if cfg.wants(EstimatorKind::WeakRayleighV) {
        (
            estimate_weak_rayleigh(&history, RayleighVariant::V, m)?,
            history.companion_final_iterate(),
        )
    } else {
        (
            estimate_weak_rayleigh(&history, RayleighVariant::Phi, m)?,
            history.final_iterate(),
        )
    };
    let quad = Quadrature::new(op.grid());
    let eigenfunction = last.scaled(1.0 / stream_norm(&quad, last.values(), cfg.normalization));
    let residual = residual(op, eigenvalue, &eigenfunction)?;
    Ok(EigenpairResult {
        estimates: *history.final_estimates(),
        eigenvalue,
        eigenfunction,
        residual,
        history,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_grid, sample_function, DomainKind, DomainSpec};
    use crate::operator::assemble_shifted;
    use std::f64::consts::PI;

    fn interval(n: usize) -> Grid {
        build_grid(DomainSpec::unit(DomainKind::Interval), &[n]).unwrap()
    }

    #[test]
    fn estimator_names_round_trip() {
        for kind in EstimatorKind::ALL {
            assert_eq!(kind.column().parse::<EstimatorKind>().unwrap(), kind);
        }
        assert!("nope".parse::<EstimatorKind>().is_err());
    }

    #[test]
    fn zero_start_is_rejected() {
        let g = interval(11);
        let op = assemble_shifted(&g, 1.0).unwrap();
        let z = GridFunction::zeros(&g);
        assert_eq!(iterate(&z, &op, &IterationConfig::default()).unwrap_err(), Error::ZeroStart);
    }

    #[test]
    fn invalid_configs() {
        let g = interval(11);
        let op = assemble_shifted(&g, 1.0).unwrap();
        let u = sample_function(&g, |_| 1.0).unwrap();
        let cfg = IterationConfig::default().with_iterations(0);
        assert!(iterate(&u, &op, &cfg).is_err());
        let cfg = IterationConfig {
            sample_point: SamplePoint::Node(0),
            ..IterationConfig::default()
        };
        assert!(iterate(&u, &op, &cfg).is_err());
    }

    #[test]
    fn history_bookkeeping() {
        let g = interval(21);
        let op = assemble_shifted(&g, 5.0).unwrap();
        let u = sample_function(&g, |[x, _]| x * (1.0 - x)).unwrap();
        let h = iterate(&u, &op, &IterationConfig::default().with_iterations(4)).unwrap();
        assert_eq!(h.iterations(), 4);
        assert_eq!(h.rows().len(), 5);
        assert!(h.iterate(5).is_ok());
        assert!(matches!(h.iterate(6), Err(Error::MissingIterate { .. })));
        assert!(h.final_estimates().rq_v.is_some());
        assert!(h.estimates(0).unwrap().rq_phi.is_none());
        assert!(estimate_gamma(&h, 5).is_err());
        // φ₀ = u
        assert!((h.phi_norm_l2(0).unwrap() - Quadrature::new(&g).norm_l2(&u)).abs() < 1e-15);
    }

    #[test]
    fn residual_scales_with_eigenvalue_error() {
        let g = interval(101);
        let lh = 4.0 / (g.hx() * g.hx()) * (PI * g.hx() / 2.0).sin().powi(2);
        let e = sample_function(&g, |[x, _]| (PI * x).sin()).unwrap();
        let op = assemble_shifted(&g, 0.0).unwrap();
        assert!(residual(&op, lh, &e).unwrap() < 1e-10);
        assert!((residual(&op, lh + 1.0, &e).unwrap() - 1.0).abs() < 1e-9);
        assert!(residual(&op, lh, &GridFunction::zeros(&g)).is_err());
        let shifted = assemble_shifted(&g, 7.5).unwrap();
        assert!(residual(&shifted, lh, &e).unwrap() < 1e-10);
    }

    #[test]
    fn sample_point_is_seeded() {
        let g = interval(101);
        let v = sample_function(&g, |[x, _]| (PI * x).sin()).unwrap();
        let a = pick_sample_point(&g, &v, 42).unwrap();
        assert_eq!(a, pick_sample_point(&g, &v, 42).unwrap());
        assert!(v.value(a).abs() >= NODAL_FRACTION);
        assert!(pick_sample_point(&g, &GridFunction::zeros(&g), 1).is_err());
    }

    #[test]
    fn early_stop_truncates() {
        let g = interval(101);
        let u = sample_function(&g, |_| 1.0).unwrap();
        let op = assemble_shifted(&g, 9.7696).unwrap();
        let cfg = IterationConfig {
            iterations: 200,
            early_stop: true,
            ..IterationConfig::default()
        };
        let h = iterate(&u, &op, &cfg).unwrap();
        assert!(h.iterations() < 50, "{}", h.iterations());
        assert!((h.final_estimates().rq_v.unwrap() - 9.868797).abs() < 1e-5);
    }
}
