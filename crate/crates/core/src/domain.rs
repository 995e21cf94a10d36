//! Model domains, their finite-difference grids and reference spectra.
//!
//! Three domains are supported: the interval `[0, L]`, the disk of radius `R`
//! restricted to radial functions, and the square `[0, L]²`. Grids always
//! include the boundary nodes; Dirichlet values are stored as explicit zeros so
//! that a node index maps directly onto a coordinate.

use std::f64::consts::PI;
use std::fmt;

use crate::bessel::bessel_j0_zeros;
use crate::error::{Error, Result};
use crate::function::GridFunction;

/// Smallest admissible node count per axis.
pub const MIN_NODES: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DomainKind {
    Interval,
    RadialDisk,
    Square,
}

impl DomainKind {
    /// Spatial dimension of the underlying domain (the radial disk is 2D).
    pub fn dimension(self) -> usize {
        match self {
            DomainKind::Interval => 1,
            DomainKind::RadialDisk | DomainKind::Square => 2,
        }
    }

    /// Number of grid axes (the radial disk is discretized along `r` only).
    pub fn axes(self) -> usize {
        match self {
            DomainKind::Interval | DomainKind::RadialDisk => 1,
            DomainKind::Square => 2,
        }
    }
}

impl fmt::Display for DomainKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            DomainKind::Interval => "interval",
            DomainKind::RadialDisk => "disk",
            DomainKind::Square => "square",
        };
        f.write_str(name)
    }
}

impl std::str::FromStr for DomainKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "interval" => Ok(DomainKind::Interval),
            "disk" | "radial-disk" | "radialdisk" => Ok(DomainKind::RadialDisk),
            "square" => Ok(DomainKind::Square),
            other => Err(Error::InvalidParameter(format!("unknown domain `{other}`"))),
        }
    }
}

/// A model domain: its kind and its extent (length, radius or side).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DomainSpec {
    kind: DomainKind,
    extent: f64,
}

impl DomainSpec {
    pub fn new(kind: DomainKind, extent: f64) -> Result<Self> {
        if !(extent.is_finite() && extent > 0.0) {
            return Err(Error::InvalidParameter(format!(
                "domain extent must be positive and finite, got {extent}"
            )));
        }
        Ok(Self { kind, extent })
    }

    /// Unit interval, unit disk or unit square.
    pub fn unit(kind: DomainKind) -> Self {
        Self { kind, extent: 1.0 }
    }

    pub fn kind(&self) -> DomainKind {
        self.kind
    }

    pub fn extent(&self) -> f64 {
        self.extent
    }

    pub fn dimension(&self) -> usize {
        self.kind.dimension()
    }

    /// Lebesgue measure of the domain: `L`, `πR²` or `L²`.
    pub fn volume(&self) -> f64 {
        match self.kind {
            DomainKind::Interval => self.extent,
            DomainKind::RadialDisk => PI * self.extent * self.extent,
            DomainKind::Square => self.extent * self.extent,
        }
    }
}

/// Tensor-product grid over a [`DomainSpec`], boundary nodes included.
///
/// Values of 2D grid functions are stored row-major: node `(i, j)` (x index
/// `i`, y index `j`) lives at `j * nx + i`. One-dimensional grids have
/// `ny == 1`.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    spec: DomainSpec,
    nx: usize,
    ny: usize,
    hx: f64,
    hy: f64,
}

/// Builds a grid with `nodes` per axis.
///
/// `nodes` holds one count for the interval and the disk; for the square it
/// holds either one count (used on both axes) or one count per axis.
pub fn build_grid(spec: DomainSpec, nodes: &[usize]) -> Result<Grid> {
    let (nx, ny) = match (spec.kind().axes(), nodes) {
        (1, [n]) => (*n, 1),
        (2, [n]) => (*n, *n),
        (2, [nx, ny]) => (*nx, *ny),
        (axes, _) => {
            return Err(Error::InvalidGrid(format!(
                "{} grids take {} node count(s), got {}",
                spec.kind(),
                if axes == 1 { "one" } else { "one or two" },
                nodes.len()
            )))
        }
    };
    let counts: &[usize] = if spec.kind().axes() == 1 { &[nx] } else { &[nx, ny] };
    for &n in counts {
        if n < MIN_NODES {
            return Err(Error::InvalidGrid(format!(
                "{n} nodes per axis is below the minimum of {MIN_NODES}"
            )));
        }
        if n % 2 == 0 {
            return Err(Error::InvalidGrid(format!(
                "{n} nodes per axis is even; composite Simpson needs an even number of \
                 intervals, i.e. an odd node count"
            )));
        }
    }
    let hx = spec.extent() / (nx - 1) as f64;
    let hy = if ny > 1 { spec.extent() / (ny - 1) as f64 } else { 0.0 };
    Ok(Grid { spec, nx, ny, hx, hy })
}

impl Grid {
    pub fn spec(&self) -> &DomainSpec {
        &self.spec
    }

    pub fn kind(&self) -> DomainKind {
        self.spec.kind()
    }

    pub fn nx(&self) -> usize {
        self.nx
    }

    /// Node count along y; 1 on one-dimensional grids.
    pub fn ny(&self) -> usize {
        self.ny
    }

    /// Total number of nodes, boundary included.
    pub fn len(&self) -> usize {
        self.nx * self.ny
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Spacing along x (or r).
    pub fn hx(&self) -> f64 {
        self.hx
    }

    /// Spacing along y; 0 on one-dimensional grids.
    pub fn hy(&self) -> f64 {
        self.hy
    }

    pub fn index(&self, i: usize, j: usize) -> usize {
        j * self.nx + i
    }

    /// Axis indices `(i, j)` of a flat node index.
    pub fn axis_indices(&self, node: usize) -> (usize, usize) {
        (node % self.nx, node / self.nx)
    }

    fn axis_coordinate(&self, i: usize, n: usize, h: f64) -> f64 {
        if i + 1 == n {
            self.spec.extent()
        } else {
            i as f64 * h
        }
    }

    /// Coordinate of node `i` along x (or r). The last node sits exactly on the
    /// extent.
    pub fn x(&self, i: usize) -> f64 {
        self.axis_coordinate(i, self.nx, self.hx)
    }

    pub fn y(&self, j: usize) -> f64 {
        if self.ny == 1 {
            0.0
        } else {
            self.axis_coordinate(j, self.ny, self.hy)
        }
    }

    /// Coordinates of a flat node index; `[x, 0]` (or `[r, 0]`) in 1D.
    pub fn coordinate(&self, node: usize) -> [f64; 2] {
        let (i, j) = self.axis_indices(node);
        [self.x(i), self.y(j)]
    }

    /// True for nodes carrying a Dirichlet condition. On the radial disk only
    /// `r = R` is a boundary node; `r = 0` is an ordinary unknown.
    pub fn is_boundary(&self, node: usize) -> bool {
        let (i, j) = self.axis_indices(node);
        match self.kind() {
            DomainKind::Interval => i == 0 || i + 1 == self.nx,
            DomainKind::RadialDisk => i + 1 == self.nx,
            DomainKind::Square => i == 0 || j == 0 || i + 1 == self.nx || j + 1 == self.ny,
        }
    }

    /// Nodes that are unknowns of the discrete Dirichlet problem, in the
    /// order used by the linear system (row-major on the square).
    pub fn unknowns(&self) -> Vec<usize> {
        (0..self.len()).filter(|&n| !self.is_boundary(n)).collect()
    }

    pub fn unknown_count(&self) -> usize {
        match self.kind() {
            DomainKind::Interval => self.nx - 2,
            DomainKind::RadialDisk => self.nx - 1,
            DomainKind::Square => (self.nx - 2) * (self.ny - 2),
        }
    }
}

/// Mode label of a reference eigenvalue.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ModeLabel {
    /// `k`-th mode of the interval or `k`-th radial mode of the disk.
    Index(usize),
    /// `(n, m)` mode of the square.
    Pair(usize, usize),
}

impl fmt::Display for ModeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ModeLabel::Index(k) => write!(f, "{k}"),
            ModeLabel::Pair(n, m) => write!(f, "({n},{m})"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Provenance {
    /// Closed form (`k²π²/L²`, `(n²+m²)π²/L²`).
    Analytic,
    /// Computed numerically (Bessel zeros).
    Oracle,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ExactMode {
    pub eigenvalue: f64,
    pub label: ModeLabel,
}

/// Leading continuum eigenvalues of a domain, non-decreasing, with labels.
#[derive(Debug, Clone, PartialEq)]
pub struct ExactSpectrum {
    pub modes: Vec<ExactMode>,
    pub provenance: Provenance,
}

impl ExactSpectrum {
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.modes.iter().map(|m| m.eigenvalue).collect()
    }

    pub fn len(&self) -> usize {
        self.modes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.modes.is_empty()
    }

    /// Eigenvalues with repeated entries (multiplicities) collapsed, keeping
    /// the first label of each eigenspace.
    pub fn distinct(&self) -> Vec<ExactMode> {
        let mut out: Vec<ExactMode> = Vec::new();
        for mode in &self.modes {
            match out.last() {
                Some(last) if (mode.eigenvalue - last.eigenvalue).abs() <= 1e-12 * mode.eigenvalue => {}
                _ => out.push(*mode),
            }
        }
        out
    }

    /// Exact eigenvalue closest to `value`.
    pub fn closest(&self, value: f64) -> Option<ExactMode> {
        self.modes
            .iter()
            .copied()
            .min_by(|a, b| (a.eigenvalue - value).abs().total_cmp(&(b.eigenvalue - value).abs()))
    }
}

/// First `count` Dirichlet eigenvalues of `spec`, counted with multiplicity.
///
/// Square modes are sorted by `n² + m²` with ties broken by `(n, m)`, so both
/// `(1,2)` and `(2,1)` appear. Disk modes are the radial ones, `j₀,ₖ²/R²`.
pub fn exact_eigenvalues(spec: &DomainSpec, count: usize) -> Result<ExactSpectrum> {
    if count == 0 {
        return Err(Error::InvalidParameter("eigenvalue count must be at least 1".into()));
    }
    let l2 = spec.extent() * spec.extent();
    let (modes, provenance) = match spec.kind() {
        DomainKind::Interval => (
            (1..=count)
                .map(|k| ExactMode {
                    eigenvalue: (k * k) as f64 * PI * PI / l2,
                    label: ModeLabel::Index(k),
                })
                .collect(),
            Provenance::Analytic,
        ),
        DomainKind::RadialDisk => (
            bessel_j0_zeros(count)
                .into_iter()
                .enumerate()
                .map(|(k, z)| ExactMode {
                    eigenvalue: z * z / l2,
                    label: ModeLabel::Index(k + 1),
                })
                .collect(),
            Provenance::Oracle,
        ),
        DomainKind::Square => (square_modes(count, l2), Provenance::Analytic),
    };
    Ok(ExactSpectrum { modes, provenance })
}

fn square_modes(count: usize, l2: f64) -> Vec<ExactMode> {
    // Every pair with n² + m² ≤ radius² is collected, so the list is complete
    // below that radius once it holds `count` entries.
    let mut radius = ((count as f64).sqrt() as usize).max(2);
    loop {
        let r2 = radius * radius;
        let mut pairs: Vec<(usize, usize)> = (1..=radius)
            .flat_map(|n| (1..=radius).map(move |m| (n, m)))
            .filter(|&(n, m)| n * n + m * m <= r2)
            .collect();
        if pairs.len() >= count {
            pairs.sort_by_key(|&(n, m)| (n * n + m * m, n, m));
            return pairs
                .into_iter()
                .take(count)
                .map(|(n, m)| ExactMode {
                    eigenvalue: (n * n + m * m) as f64 * PI * PI / l2,
                    label: ModeLabel::Pair(n, m),
                })
                .collect();
        }
        radius *= 2;
    }
}

/// Lower-bound shift seeds `j^{2/N} / C` from the Li–Yau form of Weyl's law,
/// `C = (N+2)/N · (ω_N |Ω|)^{2/N} / (4π²)` with `ω_N` the unit-ball volume.
pub fn weyl_shift_seeds(spec: &DomainSpec, count: usize) -> Result<Vec<f64>> {
    if count == 0 {
        return Err(Error::InvalidParameter("seed count must be at least 1".into()));
    }
    let n = spec.dimension() as f64;
    let c = weyl_constant(spec);
    Ok((1..=count).map(|j| (j as f64).powf(2.0 / n) / c).collect())
}

/// The constant `C` of the Li–Yau lower bound `λ_j ≥ j^{2/N}/C`.
pub fn weyl_constant(spec: &DomainSpec) -> f64 {
    let n = spec.dimension() as f64;
    let ball = match spec.dimension() {
        1 => 2.0,
        _ => PI,
    };
    (n + 2.0) / n * (ball * spec.volume()).powf(2.0 / n) / (4.0 * PI * PI)
}

/// Samples a pointwise rule at every node. The rule receives `[x, y]`
/// (`[x, 0]` on the interval, `[r, 0]` on the disk).
pub fn sample_function<F>(grid: &Grid, rule: F) -> Result<GridFunction>
where
    F: Fn([f64; 2]) -> f64,
{
    let values = (0..grid.len()).map(|n| rule(grid.coordinate(n))).collect();
    GridFunction::from_values(grid, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(kind: DomainKind) -> DomainSpec {
        DomainSpec::unit(kind)
    }

    #[test]
    fn interval_grid_spacing_and_nodes() {
        let g = build_grid(unit(DomainKind::Interval), &[101]).unwrap();
        assert_eq!(g.len(), 101);
        assert!((g.hx() - 0.01).abs() < 1e-16);
        assert_eq!(g.x(0), 0.0);
        assert!((g.x(1) - 0.01).abs() < 1e-16);
        assert!((g.x(50) - 0.5).abs() < 1e-15);
        assert_eq!(g.x(100), 1.0);
        assert!((g.hx() * 100.0 - 1.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn square_grid_is_tensor_product() {
        let g = build_grid(unit(DomainKind::Square), &[201]).unwrap();
        assert_eq!((g.nx(), g.ny()), (201, 201));
        assert!((g.hx() - 0.005).abs() < 1e-16);
        assert!((g.hy() - 0.005).abs() < 1e-16);
        let node = g.index(3, 7);
        let [x, y] = g.coordinate(node);
        assert!((x - 0.015).abs() < 1e-15 && (y - 0.035).abs() < 1e-15);
        assert_eq!(g.unknown_count(), 199 * 199);

        let rect = build_grid(unit(DomainKind::Square), &[5, 9]).unwrap();
        assert_eq!((rect.nx(), rect.ny()), (5, 9));
        assert_eq!(rect.unknowns().len(), rect.unknown_count());
    }

    #[test]
    fn even_node_count_is_rejected() {
        let err = build_grid(unit(DomainKind::Interval), &[100]).unwrap_err();
        match err {
            Error::InvalidGrid(msg) => assert!(msg.contains("Simpson"), "{msg}"),
            other => panic!("unexpected {other:?}"),
        }
        assert!(build_grid(unit(DomainKind::Square), &[101, 100]).is_err());
        assert!(build_grid(unit(DomainKind::Interval), &[3]).is_err());
        assert!(build_grid(unit(DomainKind::Interval), &[101, 101]).is_err());
    }

    #[test]
    fn disk_boundary_is_outer_radius_only() {
        let g = build_grid(unit(DomainKind::RadialDisk), &[11]).unwrap();
        assert!(!g.is_boundary(0));
        assert!(g.is_boundary(10));
        assert_eq!(g.unknowns(), (0..10).collect::<Vec<_>>());
    }

    #[test]
    fn interval_and_square_exact_values() {
        let s = exact_eigenvalues(&unit(DomainKind::Interval), 2).unwrap();
        assert!((s.modes[0].eigenvalue - 9.869604401089358).abs() < 1e-12);
        assert!((s.modes[1].eigenvalue - 39.47841760435743).abs() < 1e-12);
        assert_eq!(s.provenance, Provenance::Analytic);

        let sq = exact_eigenvalues(&unit(DomainKind::Square), 1).unwrap();
        assert_eq!(sq.modes[0].label, ModeLabel::Pair(1, 1));
        assert!((sq.modes[0].eigenvalue - 19.7392).abs() < 1e-4);
    }

    #[test]
    fn square_multiplicity_is_visible() {
        let sq = exact_eigenvalues(&unit(DomainKind::Square), 6).unwrap();
        let labels: Vec<_> = sq.modes.iter().map(|m| m.label).collect();
        assert_eq!(
            labels,
            vec![
                ModeLabel::Pair(1, 1),
                ModeLabel::Pair(1, 2),
                ModeLabel::Pair(2, 1),
                ModeLabel::Pair(2, 2),
                ModeLabel::Pair(1, 3),
                ModeLabel::Pair(3, 1),
            ]
        );
        assert_eq!(sq.modes[1].eigenvalue, sq.modes[2].eigenvalue);
        assert_eq!(sq.distinct().len(), 4);
    }

    #[test]
    fn disk_exact_values_match_bessel_zeros() {
        let d = exact_eigenvalues(&unit(DomainKind::RadialDisk), 2).unwrap();
        assert!((d.modes[0].eigenvalue - 5.7832).abs() < 1e-4);
        assert!((d.modes[1].eigenvalue - 30.4713).abs() < 1e-4);
        assert_eq!(d.provenance, Provenance::Oracle);
    }

    #[test]
    fn extent_scales_spectrum() {
        let spec = DomainSpec::new(DomainKind::Interval, 2.0).unwrap();
        let s = exact_eigenvalues(&spec, 1).unwrap();
        assert!((s.modes[0].eigenvalue - PI * PI / 4.0).abs() < 1e-12);
        assert!(DomainSpec::new(DomainKind::Interval, 0.0).is_err());
        assert!(DomainSpec::new(DomainKind::Interval, f64::NAN).is_err());
    }

    #[test]
    fn weyl_seeds_interval() {
        let spec = unit(DomainKind::Interval);
        assert!((weyl_constant(&spec) - 3.0 / (PI * PI)).abs() < 1e-15);
        let seeds = weyl_shift_seeds(&spec, 4).unwrap();
        assert!((seeds[0] - PI * PI / 3.0).abs() < 1e-12);
        assert!((seeds[0] - 3.2899).abs() < 1e-4);
        for (j, s) in seeds.iter().enumerate() {
            let k = (j + 1) as f64;
            assert!((s - k * k * PI * PI / 3.0).abs() < 1e-9);
        }
    }

    #[test]
    fn weyl_seeds_square() {
        // N = 2, ω₂ = π, |Ω| = 1: C = 2·π/(4π²) = 1/(2π).
        let spec = unit(DomainKind::Square);
        assert!((weyl_constant(&spec) - 1.0 / (2.0 * PI)).abs() < 1e-15);
        let seeds = weyl_shift_seeds(&spec, 1).unwrap();
        assert!((seeds[0] - 2.0 * PI).abs() < 1e-12);
        assert!(seeds[0] <= 19.7392);
    }

    #[test]
    fn sampling() {
        let g = build_grid(unit(DomainKind::Interval), &[101]).unwrap();
        let one = sample_function(&g, |_| 1.0).unwrap();
        assert!(one.values().iter().all(|&v| v == 1.0));

        let s = sample_function(&g, |[x, _]| (PI * x).sin()).unwrap();
        assert_eq!(s.values()[0], 0.0);
        assert!(s.values()[100].abs() < 1e-15);

        let err = sample_function(&g, |[x, _]| if x > 0.5 { f64::NAN } else { 0.0 }).unwrap_err();
        assert!(matches!(err, Error::NonFinite { .. }));
    }
}
