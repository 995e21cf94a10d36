//! Grid reflections and symmetrization.
//!
//! Averaging in the fixed order mirror-x, mirror-y, transpose leaves the
//! result exactly invariant (bitwise) under every applied reflection, since
//! the reflections commute with each other up to relabeling.

use crate::domain::{DomainKind, Grid};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Reflection {
    /// `x → extent − x`.
    MirrorX,
    /// `y → extent − y` (square only).
    MirrorY,
    /// `(x, y) → (y, x)` (square grids with `nx == ny` only).
    Transpose,
}

impl Reflection {
    /// Image of `node` under the reflection.
    pub fn map(self, grid: &Grid, node: usize) -> usize {
        let (i, j) = grid.axis_indices(node);
        match self {
            Reflection::MirrorX => grid.index(grid.nx() - 1 - i, j),
            Reflection::MirrorY => grid.index(i, grid.ny() - 1 - j),
            Reflection::Transpose => grid.index(j, i),
        }
    }
}

/// Reflections the grid admits, in symmetrization order.
pub fn grid_reflections(grid: &Grid) -> Vec<Reflection> {
    match grid.kind() {
        DomainKind::Interval => vec![Reflection::MirrorX],
        DomainKind::RadialDisk => Vec::new(),
        DomainKind::Square if grid.nx() == grid.ny() => {
            vec![Reflection::MirrorX, Reflection::MirrorY, Reflection::Transpose]
        }
        DomainKind::Square => vec![Reflection::MirrorX, Reflection::MirrorY],
    }
}

/// Grid reflections under which `values` are exactly invariant.
pub fn invariant_reflections(grid: &Grid, values: &[f64]) -> Vec<Reflection> {
    grid_reflections(grid)
        .into_iter()
        .filter(|r| (0..grid.len()).all(|n| values[n] == values[r.map(grid, n)]))
        .collect()
}

/// Averages `values` with its images under each reflection in turn.
pub fn symmetrize(grid: &Grid, values: &mut [f64], reflections: &[Reflection]) {
    let mut scratch = vec![0.0; values.len()];
    for r in reflections {
        for (n, s) in scratch.iter_mut().enumerate() {
            *s = 0.5 * (values[n] + values[r.map(grid, n)]);
        }
        values.copy_from_slice(&scratch);
    }
}
