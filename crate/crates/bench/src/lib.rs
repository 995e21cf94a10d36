//! Shared fixtures for the benchmarks.

use eigenshift_core::{build_grid, sample_function, DomainKind, DomainSpec, Grid, GridFunction};

pub fn unit_grid(kind: DomainKind, nodes: usize) -> Grid {
    build_grid(DomainSpec::unit(kind), &[nodes]).expect("valid benchmark grid")
}

/// `u ≡ 1`, the start function used throughout the tables.
pub fn constant_start(grid: &Grid) -> GridFunction {
    sample_function(grid, |_| 1.0).expect("finite start")
}
