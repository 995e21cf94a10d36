//! Bessel function `J₀` and its positive zeros.
//!
//! `J₀` is evaluated by its power series for `|x| ≤ 8`, by Miller's backward
//! recurrence on `(8, 25]` and by the Hankel asymptotic expansion beyond.
//! Zeros are bracketed on `((k − 3/4)π, (k + 1/4)π)` and bisected.

use std::f64::consts::{FRAC_PI_4, PI};

const SERIES_LIMIT: f64 = 8.0;
const RECURRENCE_LIMIT: f64 = 25.0;

/// Bessel function of the first kind of order zero.
pub fn j0(x: f64) -> f64 {
    let x = x.abs();
    if x <= SERIES_LIMIT {
        j0_series(x)
    } else if x <= RECURRENCE_LIMIT {
        j0_miller(x)
    } else {
        j0_asymptotic(x)
    }
}

fn j0_series(x: f64) -> f64 {
    // Σ (-1)^k (x²/4)^k / (k!)²
    let q = 0.25 * x * x;
    let mut term = 1.0f64;
    let mut sum = 1.0f64;
    let mut k = 1.0;
    while term.abs() > 1e-18 * sum.abs().max(1e-300) || k < 3.0 {
        term *= -q / (k * k);
        sum += term;
        k += 1.0;
        if k > 200.0 {
            break;
        }
    }
    sum
}

fn j0_miller(x: f64) -> f64 {
    // Downward recurrence J_{k-1} = (2k/x) J_k - J_{k+1}, normalized with
    // J₀ + 2 Σ J_{2k} = 1.
    let start = 2 * ((x + 30.0 + 6.0 * x.cbrt()) as usize / 2 + 1);
    let mut next = 0.0; // J_{k+1}
    let mut current = 1e-30; // J_k
    let mut even_sum = 0.0;
    let mut k = start;
    while k > 0 {
        let prev = 2.0 * k as f64 / x * current - next;
        next = current;
        current = prev;
        k -= 1;
        if k.is_multiple_of(2) && k > 0 {
            even_sum += current;
        }
        if current.abs() > 1e250 {
            next *= 1e-250;
            current *= 1e-250;
            even_sum *= 1e-250;
        }
    }
    current / (current + 2.0 * even_sum)
}

fn j0_asymptotic(x: f64) -> f64 {
    // J₀(x) ~ √(2/(πx)) (P cos χ − Q sin χ), χ = x − π/4, with
    // a_k = ∏_{i=1..k} (2i−1)² / (k! 8^k).
    let mut p = 1.0;
    let mut q = 0.0;
    let mut a = 1.0;
    let mut k = 1usize;
    loop {
        let odd = (2 * k - 1) as f64;
        a *= odd * odd / (k as f64 * 8.0 * x);
        // P = 1 − a₂ + a₄ − …, Q = −a₁ + a₃ − …
        let even_j = (k / 2).is_multiple_of(2);
        if k % 2 == 1 {
            q += if even_j { -a } else { a };
        } else {
            p += if even_j { a } else { -a };
        }
        if a < 1e-17 || k > 60 {
            break;
        }
        k += 1;
    }
    let chi = x - FRAC_PI_4;
    (2.0 / (PI * x)).sqrt() * (p * chi.cos() - q * chi.sin())
}

/// First `count` positive zeros of `J₀`, increasing.
pub fn bessel_j0_zeros(count: usize) -> Vec<f64> {
    (1..=count).map(j0_zero).collect()
}

fn j0_zero(k: usize) -> f64 {
    let k = k as f64;
    let mut lo = (k - 0.75) * PI;
    let mut hi = (k + 0.25) * PI;
    let mut f_lo = j0(lo);
    debug_assert!(f_lo * j0(hi) < 0.0, "J0 bracket without sign change");
    while hi - lo > 1e-12 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        let f_mid = j0(mid);
        if f_mid == 0.0 {
            return mid;
        }
        if (f_mid < 0.0) == (f_lo < 0.0) {
            lo = mid;
            f_lo = f_mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}
