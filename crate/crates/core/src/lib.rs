//! Inverse iteration with shift for eigenpairs of the Dirichlet Laplacian on
//! model domains (unit interval, radial unit disk, unit square), plus
//! spectral decomposition of grid functions by a schedule of shifts.
//!
//! ```
//! use eigenshift_core::{assemble_shifted, build_grid, iterate, sample_function};
//! use eigenshift_core::{DomainKind, DomainSpec, IterationConfig};
//!
//! let grid = build_grid(DomainSpec::unit(DomainKind::Interval), &[101]).unwrap();
//! let u = sample_function(&grid, |_| 1.0).unwrap();
//! let op = assemble_shifted(&grid, 9.7696).unwrap();
//! let history = iterate(&u, &op, &IterationConfig::default()).unwrap();
//! let mu = history.final_estimates().mu.unwrap();
//! assert!((mu - 9.8688).abs() < 1e-3);
//! ```

pub mod banded;
pub mod bessel;
pub mod domain;
pub mod error;
pub mod function;
pub mod iteration;
pub mod operator;
pub mod quadrature;
pub mod spectral;
pub mod symmetry;

pub use bessel::{bessel_j0_zeros, j0};
pub use domain::{
    build_grid, exact_eigenvalues, sample_function, weyl_constant, weyl_shift_seeds, DomainKind,
    DomainSpec, ExactMode, ExactSpectrum, Grid, ModeLabel, Provenance, MIN_NODES,
};
pub use error::{Error, Result};
pub use function::GridFunction;
pub use iteration::{
    estimate_classic_rayleigh, estimate_gamma, estimate_linf_ratio, estimate_mu,
    estimate_weak_rayleigh, iterate, pick_sample_point, project_component, residual,
    solve_eigenpair, Companion, EigenpairResult, EstimatorKind, EstimatorSet, IterationConfig,
    IterationHistory, Normalization, RayleighVariant, SamplePoint,
};
pub use operator::{apply_stencil, assemble_shifted, ShiftedOperator};
pub use quadrature::{inner, norm_l2, norm_linf, InnerProductKind, Quadrature};
pub use spectral::{
    decompose, default_tolerance, fourier_coefficient, reconstruct, ScheduleSource,
    ShiftSchedule, SkippedShift, SpectralComponent, SpectralDecompositionResult,
};
