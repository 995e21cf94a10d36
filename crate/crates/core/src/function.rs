use crate::domain::Grid;
use crate::error::{Error, Result};

/// Values of a function at every node of a [`Grid`], boundary included.
#[derive(Debug, Clone, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    values: Vec<f64>,
}

impl GridFunction {
    pub fn zeros(grid: &Grid) -> Self {
        Self {
            grid: grid.clone(),
            values: vec![0.0; grid.len()],
        }
    }

    /// Wraps node values; the count must match the grid and every value must
    /// be finite.
    pub fn from_values(grid: &Grid, values: Vec<f64>) -> Result<Self> {
        if values.len() != grid.len() {
            return Err(Error::InvalidParameter(format!(
                "{} values for a grid of {} nodes",
                values.len(),
                grid.len()
            )));
        }
        if let Some((node, &value)) = values.iter().enumerate().find(|(_, v)| !v.is_finite()) {
            return Err(Error::NonFinite { node, value });
        }
        Ok(Self {
            grid: grid.clone(),
            values,
        })
    }

    pub(crate) fn from_raw(grid: &Grid, values: Vec<f64>) -> Self {
        debug_assert_eq!(values.len(), grid.len());
        Self {
            grid: grid.clone(),
            values,
        }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn into_values(self) -> Vec<f64> {
        self.values
    }

    pub fn value(&self, node: usize) -> f64 {
        self.values[node]
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.values.iter().all(|&v| v == 0.0)
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self::from_raw(&self.grid, self.values.iter().map(|v| v * factor).collect())
    }

    /// `self + factor · other`.
    pub fn add_scaled(&self, factor: f64, other: &GridFunction) -> Result<Self> {
        self.check_same_grid(other)?;
        Ok(Self::from_raw(
            &self.grid,
            self.values
                .iter()
                .zip(&other.values)
                .map(|(a, b)| a + factor * b)
                .collect(),
        ))
    }

    pub fn sub(&self, other: &GridFunction) -> Result<Self> {
        self.add_scaled(-1.0, other)
    }

    /// Copy with every Dirichlet node set to zero.
    pub fn with_zero_boundary(&self) -> Self {
        let mut values = self.values.clone();
        for (node, v) in values.iter_mut().enumerate() {
            if self.grid.is_boundary(node) {
                *v = 0.0;
            }
        }
        Self::from_raw(&self.grid, values)
    }

    pub(crate) fn check_same_grid(&self, other: &GridFunction) -> Result<()> {
        if self.grid == other.grid {
            Ok(())
        } else {
            Err(Error::GridMismatch)
        }
    }
}
