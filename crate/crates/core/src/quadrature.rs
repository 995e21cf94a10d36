//! Composite Simpson quadrature, inner products and norms on grid functions.
//!
//! Disk integrals carry the radial weight `r` and omit the angular factor
//! `2π`; every quantity built from them is a ratio of integrals over the same
//! measure.

use crate::domain::{DomainKind, Grid};
use crate::error::Result;
use crate::function::GridFunction;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InnerProductKind {
    Unweighted,
    RadialR,
}

impl InnerProductKind {
    pub fn for_grid(grid: &Grid) -> Self {
        match grid.kind() {
            DomainKind::RadialDisk => InnerProductKind::RadialR,
            DomainKind::Interval | DomainKind::Square => InnerProductKind::Unweighted,
        }
    }
}

/// Composite Simpson weights `h/3 · [1, 4, 2, 4, …, 2, 4, 1]` on `n` (odd) nodes.
pub fn simpson_weights(n: usize, h: f64) -> Vec<f64> {
    debug_assert!(n % 2 == 1 && n >= 3);
    (0..n)
        .map(|i| {
            let c = if i == 0 || i + 1 == n {
                1.0
            } else if i % 2 == 1 {
                4.0
            } else {
                2.0
            };
            c * h / 3.0
        })
        .collect()
}

/// Full quadrature weight of every node, including the radial factor on the
/// disk and the tensor product on the square.
pub fn node_weights(grid: &Grid) -> Vec<f64> {
    let wx = simpson_weights(grid.nx(), grid.hx());
    match grid.kind() {
        DomainKind::Interval => wx,
        DomainKind::RadialDisk => wx.iter().enumerate().map(|(i, w)| w * grid.x(i)).collect(),
        DomainKind::Square => {
            let wy = simpson_weights(grid.ny(), grid.hy());
            wy.iter()
                .flat_map(|&b| wx.iter().map(move |&a| a * b))
                .collect()
        }
    }
}

/// `∫ f g w dx` by composite Simpson.
pub fn inner(f: &GridFunction, g: &GridFunction) -> Result<f64> {
    f.check_same_grid(g)?;
    Ok(weighted_dot(&node_weights(f.grid()), f.values(), g.values()))
}

pub(crate) fn weighted_dot(w: &[f64], a: &[f64], b: &[f64]) -> f64 {
    w.iter().zip(a).zip(b).map(|((w, a), b)| w * a * b).sum()
}

pub fn norm_l2(f: &GridFunction) -> f64 {
    let w = node_weights(f.grid());
    weighted_dot(&w, f.values(), f.values()).sqrt()
}

/// Discrete maximum norm over the nodes.
pub fn norm_linf(f: &GridFunction) -> f64 {
    f.values().iter().fold(0.0, |m, v| m.max(v.abs()))
}

/// Precomputed weights for repeated inner products on one grid.
#[derive(Debug, Clone)]
pub struct Quadrature {
    weights: Vec<f64>,
}

impl Quadrature {
    pub fn new(grid: &Grid) -> Self {
        Self {
            weights: node_weights(grid),
        }
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn inner(&self, f: &GridFunction, g: &GridFunction) -> Result<f64> {
        f.check_same_grid(g)?;
        Ok(self.dot(f.values(), g.values()))
    }

    pub fn norm_l2(&self, f: &GridFunction) -> f64 {
        self.dot(f.values(), f.values()).sqrt()
    }

    pub(crate) fn dot(&self, a: &[f64], b: &[f64]) -> f64 {
        weighted_dot(&self.weights, a, b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{build_grid, sample_function, DomainSpec};
    use std::f64::consts::PI;

    fn interval(n: usize) -> Grid {
        build_grid(DomainSpec::unit(DomainKind::Interval), &[n]).unwrap()
    }

    #[test]
    fn constants_and_cubics_are_exact() {
        let g = interval(11);
        let one = sample_function(&g, |_| 1.0).unwrap();
        assert!((inner(&one, &one).unwrap() - 1.0).abs() < 1e-15);
        let x = sample_function(&g, |[x, _]| x).unwrap();
        let x2 = sample_function(&g, |[x, _]| x * x).unwrap();
        assert!((inner(&x, &x2).unwrap() - 0.25).abs() < 1e-14);
        assert!((norm_l2(&one) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn sine_norms() {
        let g = interval(101);
        let s = sample_function(&g, |[x, _]| (PI * x).sin()).unwrap();
        assert!((inner(&s, &s).unwrap() - 0.5).abs() < 1e-8);
        assert!((norm_l2(&s) - 0.5f64.sqrt()).abs() < 1e-8);
        assert!((norm_linf(&s) - 1.0).abs() < 1e-15);
        assert!((norm_linf(&s.scaled(-2.0)) - 2.0).abs() < 1e-15);
        let z = GridFunction::zeros(&g);
        assert_eq!(norm_l2(&z), 0.0);
        assert_eq!(norm_linf(&z), 0.0);
    }

    #[test]
    fn fourth_order_convergence() {
        // sin²(πx) is integrated exactly to rounding by symmetry and
        // periodicity, so the h⁴ term is measured on e^{2x}.
        let err = |n| {
            let g = interval(n);
            let s = sample_function(&g, |[x, _]| x.exp()).unwrap();
            (inner(&s, &s).unwrap() - 0.5 * (2f64.exp() - 1.0)).abs()
        };
        let ratio = err(101) / err(201);
        assert!((12.0..=20.0).contains(&ratio), "ratio {ratio}");
    }

    #[test]
    fn square_tensor_simpson() {
        let g = build_grid(DomainSpec::unit(DomainKind::Square), &[11, 21]).unwrap();
        let f = sample_function(&g, |[x, y]| x * y * y).unwrap();
        let one = sample_function(&g, |_| 1.0).unwrap();
        // ∫∫ x y² = 1/2 · 1/3
        assert!((inner(&f, &one).unwrap() - 1.0 / 6.0).abs() < 1e-14);
    }

    #[test]
    fn disk_carries_radial_weight() {
        let g = build_grid(DomainSpec::unit(DomainKind::RadialDisk), &[21]).unwrap();
        let one = sample_function(&g, |_| 1.0).unwrap();
        // ∫₀¹ r dr = 1/2
        assert!((inner(&one, &one).unwrap() - 0.5).abs() < 1e-14);
        assert_eq!(InnerProductKind::for_grid(&g), InnerProductKind::RadialR);
    }

    #[test]
    fn mismatched_grids() {
        let a = sample_function(&interval(11), |_| 1.0).unwrap();
        let b = sample_function(&interval(13), |_| 1.0).unwrap();
        assert!(inner(&a, &b).is_err());
    }
}
