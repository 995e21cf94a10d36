use eigenshift_core::operator::{lumped_inner, lumped_weights};
use eigenshift_core::*;
use proptest::prelude::*;
use std::f64::consts::PI;

fn grid(kind: DomainKind, nodes: &[usize]) -> Grid {
    build_grid(DomainSpec::unit(kind), nodes).unwrap()
}

fn discrete_interval_eigenvalue(k: usize, h: f64) -> f64 {
    4.0 / (h * h) * (k as f64 * PI * h / 2.0).sin().powi(2)
}

fn random_interior(g: &Grid, seed: u64) -> GridFunction {
    let mut state = seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) | 1;
    let values = (0..g.len())
        .map(|_| {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64 - 0.5
        })
        .collect();
    GridFunction::from_values(g, values).unwrap().with_zero_boundary()
}

fn max_abs_diff(a: &GridFunction, b: &GridFunction) -> f64 {
    a.values().iter().zip(b.values()).fold(0.0, |m, (x, y)| m.max((x - y).abs()))
}

#[test]
fn discrete_eigenvalue_triggers_near_singular() {
    let g = grid(DomainKind::Interval, &[101]);
    let l1 = discrete_interval_eigenvalue(1, g.hx());
    assert!((l1 - 9.86880).abs() < 1e-5);
    assert!(matches!(assemble_shifted(&g, l1), Err(Error::NearSingularShift { .. })));
}

#[test]
fn square_table_shift_factorizes() {
    let g = grid(DomainKind::Square, &[201, 201]);
    let op = assemble_shifted(&g, 19.6392).unwrap();
    assert!(op.pivot_min() > 1e-12 * op.max_entry());
}

#[test]
fn solve_recovers_discrete_sine() {
    let g = grid(DomainKind::Interval, &[101]);
    let l1 = discrete_interval_eigenvalue(1, g.hx());
    let s = sample_function(&g, |[x, _]| (PI * x).sin()).unwrap();
    let op = assemble_shifted(&g, 0.0).unwrap();
    let phi = op.solve(&s.scaled(l1)).unwrap();
    assert!(max_abs_diff(&phi, &s) < 1e-10);
    assert!(op.solve(&GridFunction::zeros(&g)).unwrap().is_zero());
    assert!(max_abs_diff(&op.apply(&s).unwrap(), &s.scaled(l1)) < 1e-10 * l1);
}

#[test]
fn apply_inverts_solve_on_every_domain() {
    for (kind, nodes, sigma) in [
        (DomainKind::Interval, vec![101], 250.0),
        (DomainKind::RadialDisk, vec![101], 75.0),
        (DomainKind::Square, vec![41, 41], 100.0),
        (DomainKind::Square, vec![31, 41], 60.0),
    ] {
        let g = grid(kind, &nodes);
        let op = assemble_shifted(&g, sigma).unwrap();
        for seed in 1..4 {
            let f = random_interior(&g, seed);
            let back = op.apply(&op.solve(&f).unwrap()).unwrap();
            let scale = f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            assert!(max_abs_diff(&back, &f) < 1e-10 * scale, "{kind}");
        }
    }
}

#[test]
fn shift_linearity_is_exact() {
    for (kind, nodes) in [(DomainKind::Interval, vec![51]), (DomainKind::RadialDisk, vec![51]), (DomainKind::Square, vec![21])] {
        let g = grid(kind, &nodes);
        let f = random_interior(&g, 11);
        let a5 = apply_stencil(&g, 5.0, &f).unwrap();
        let a0 = apply_stencil(&g, 0.0, &f).unwrap().add_scaled(-5.0, &f).unwrap();
        // Rounding is measured against the size of the stencil terms.
        let op = assemble_shifted(&g, 5.0).unwrap();
        let scale = op.max_entry() * norm_linf(&f);
        for node in g.unknowns() {
            let (x, y) = (a5.value(node), a0.value(node));
            assert!((x - y).abs() <= 16.0 * f64::EPSILON * scale, "{kind}");
        }
    }
}

#[test]
fn weighted_symmetry() {
    for (kind, nodes) in [
        (DomainKind::Interval, vec![101]),
        (DomainKind::RadialDisk, vec![101]),
        (DomainKind::Square, vec![31, 31]),
        (DomainKind::Square, vec![21, 35]),
    ] {
        let g = grid(kind, &nodes);
        let op = assemble_shifted(&g, 3.0).unwrap();
        let f = random_interior(&g, 5);
        let h = random_interior(&g, 6);
        let left = lumped_inner(&op.apply(&f).unwrap(), &h).unwrap();
        let right = lumped_inner(&f, &op.apply(&h).unwrap()).unwrap();
        assert!((left - right).abs() <= 1e-9 * left.abs().max(right.abs()), "{kind}: {left} vs {right}");
    }
}

#[test]
fn radial_weights_carry_r() {
    let g = grid(DomainKind::RadialDisk, &[11]);
    let w = lumped_weights(&g);
    assert!((w[0] - 0.01 / 8.0).abs() < 1e-18);
    assert!((w[3] - 0.3 * 0.1).abs() < 1e-15);
    assert_eq!(w[10], 0.0);
}

/// Sturm count: eigenvalues of the interval matrix below `sigma`, i.e. the
/// negative pivots of an LDLᵀ sweep of `T − σI`.
fn eigenvalues_below(sigma: f64, n: usize, h: f64) -> usize {
    let (d, e) = (2.0 / (h * h), -1.0 / (h * h));
    let mut count = 0;
    let mut q = d - sigma;
    for i in 0..n {
        if i > 0 {
            q = d - sigma - e * e / q;
        }
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

#[test]
fn singular_shifts_bracket_discrete_spectrum() {
    // Sweep shifts through a window around each of the first three discrete
    // eigenvalues; every shift flagged as singular lies inside the bracket
    // found independently by Sturm counting.
    let g = grid(DomainKind::Interval, &[21]);
    let n = g.unknown_count();
    for m in 1..=3 {
        let lm = discrete_interval_eigenvalue(m, g.hx());
        assert_eq!(eigenvalues_below(lm * (1.0 - 1e-9), n, g.hx()), m - 1);
        assert_eq!(eigenvalues_below(lm * (1.0 + 1e-9), n, g.hx()), m);
        for step in -20i32..=20 {
            let sigma = lm * (1.0 + step as f64 * 1e-14);
            if assemble_shifted(&g, sigma).is_err() {
                assert!((sigma - lm).abs() <= 1e-12 * 2.0 / (g.hx() * g.hx()) * 4.0);
            }
        }
        assert!(assemble_shifted(&g, lm).is_err());
    }
}

#[test]
fn factorization_reuse_is_bitwise() {
    let g = grid(DomainKind::Square, &[21]);
    let shared = assemble_shifted(&g, 40.0).unwrap();
    let mut a = sample_function(&g, |_| 1.0).unwrap();
    let mut b = a.clone();
    for _ in 0..30 {
        a = shared.solve(&a).unwrap();
        a = a.scaled(1.0 / norm_linf(&a));
        b = assemble_shifted(&g, 40.0).unwrap().solve(&b).unwrap();
        b = b.scaled(1.0 / norm_linf(&b));
        assert_eq!(a.values(), b.values());
    }
}

#[test]
fn concurrent_solves_share_one_operator() {
    let g = grid(DomainKind::Interval, &[201]);
    let op = assemble_shifted(&g, 12.0).unwrap();
    let rhs = random_interior(&g, 3);
    let expected = op.solve(&rhs).unwrap();
    std::thread::scope(|s| {
        for _ in 0..4 {
            s.spawn(|| assert_eq!(op.solve(&rhs).unwrap(), expected));
        }
    });
}

#[test]
fn grid_mismatch() {
    let op = assemble_shifted(&grid(DomainKind::Interval, &[11]), 0.0).unwrap();
    let f = GridFunction::zeros(&grid(DomainKind::Interval, &[21]));
    assert_eq!(op.solve(&f).unwrap_err(), Error::GridMismatch);
}

proptest! {
    #[test]
    fn inverse_consistency_for_random_shifts(sigma in -50.0f64..400.0, seed in 1u64..1000) {
        let g = grid(DomainKind::Interval, &[61]);
        if let Ok(op) = assemble_shifted(&g, sigma) {
            let f = random_interior(&g, seed);
            let back = op.apply(&op.solve(&f).unwrap()).unwrap();
            let scale = f.values().iter().fold(0.0f64, |m, v| m.max(v.abs()));
            prop_assert!(max_abs_diff(&back, &f) < 1e-8 * scale);
        }
    }

    #[test]
    fn radial_stencil_is_r_symmetric(seed in 1u64..1000, sigma in 0.0f64..100.0) {
        let g = grid(DomainKind::RadialDisk, &[41]);
        let f = random_interior(&g, seed);
        let h = random_interior(&g, seed + 7);
        let left = lumped_inner(&apply_stencil(&g, sigma, &f).unwrap(), &h).unwrap();
        let right = lumped_inner(&f, &apply_stencil(&g, sigma, &h).unwrap()).unwrap();
        prop_assert!((left - right).abs() <= 1e-9 * left.abs().max(right.abs()).max(1e-12));
    }
}
