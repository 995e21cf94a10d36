//! Banded LU factorization with partial pivoting.
//!
//! Storage follows the LAPACK `gbtrf` layout: column-major with leading
//! dimension `2·kl + ku + 1`, entry `A(i, j)` at row `kl + ku + i − j` of
//! column `j`. The top `kl` rows receive the fill-in produced by row
//! interchanges, so `U` has upper bandwidth `kl + ku`.

/// A square banded matrix in factorization-ready storage.
#[derive(Debug, Clone)]
pub struct BandMatrix {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    ab: Vec<f64>,
}

impl BandMatrix {
    pub fn zeros(n: usize, kl: usize, ku: usize) -> Self {
        let ldab = 2 * kl + ku + 1;
        Self {
            n,
            kl,
            ku,
            ldab,
            ab: vec![0.0; ldab * n],
        }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    #[inline]
    fn slot(&self, i: usize, j: usize) -> usize {
        debug_assert!(i + self.ku >= j && i <= j + self.kl, "({i}, {j}) outside the band");
        self.kl + self.ku + i - j + j * self.ldab
    }

    pub fn set(&mut self, i: usize, j: usize, value: f64) {
        let s = self.slot(i, j);
        self.ab[s] = value;
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i + self.ku < j || i > j + self.kl {
            0.0
        } else {
            self.ab[self.slot(i, j)]
        }
    }

    /// Largest absolute entry.
    pub fn max_abs(&self) -> f64 {
        self.ab.iter().fold(0.0, |m, v| m.max(v.abs()))
    }

    /// Factorizes in place. Never fails: a zero pivot is recorded in
    /// [`BandLu::pivot_min`] and left for the caller to judge.
    #[allow(clippy::needless_range_loop)]
    pub fn factorize(mut self) -> BandLu {
        let (n, kl, ku, ldab) = (self.n, self.kl, self.ku, self.ldab);
        let kv = kl + ku;
        let mut ipiv = vec![0usize; n];
        let mut pivot_min = f64::INFINITY;
        let mut ju = 0usize;

        for j in 0..n {
            let km = kl.min(n - 1 - j);
            let col = j * ldab + kv;
            let mut jp = 0;
            let mut best = self.ab[col].abs();
            for p in 1..=km {
                let v = self.ab[col + p].abs();
                if v > best {
                    best = v;
                    jp = p;
                }
            }
            ipiv[j] = j + jp;
            pivot_min = pivot_min.min(best);
            if best == 0.0 {
                continue;
            }

            ju = ju.max((j + ku + jp).min(n - 1));
            if jp != 0 {
                for c in j..=ju {
                    let a = kv + j - c + c * ldab;
                    self.ab.swap(a, a + jp);
                }
            }

            let pivot = self.ab[col];
            let inv = 1.0 / pivot;
            for v in &mut self.ab[col + 1..=col + km] {
                *v *= inv;
            }

            if km > 0 {
                let (head, tail) = self.ab.split_at_mut((j + 1) * ldab);
                let multipliers = &head[col + 1..=col + km];
                for c in (j + 1)..=ju {
                    let base = (c - j - 1) * ldab + kv + j - c;
                    let u = tail[base];
                    if u != 0.0 {
                        let target = &mut tail[base + 1..=base + km];
                        for (t, l) in target.iter_mut().zip(multipliers) {
                            *t -= l * u;
                        }
                    }
                }
            }
        }

        BandLu {
            n,
            kl,
            ku,
            ldab,
            ab: self.ab,
            ipiv,
            pivot_min,
        }
    }
}

/// `P·A = L·U` factors of a banded matrix.
#[derive(Debug, Clone)]
pub struct BandLu {
    n: usize,
    kl: usize,
    ku: usize,
    ldab: usize,
    ab: Vec<f64>,
    ipiv: Vec<usize>,
    pivot_min: f64,
}

impl BandLu {
    pub fn dim(&self) -> usize {
        self.n
    }

    /// Smallest absolute pivot met during elimination.
    pub fn pivot_min(&self) -> f64 {
        self.pivot_min
    }

    /// Solves `A x = b` in place.
    pub fn solve_in_place(&self, b: &mut [f64]) {
        assert_eq!(b.len(), self.n, "right-hand side length");
        let (n, kl, ldab) = (self.n, self.kl, self.ldab);
        let kv = kl + self.ku;

        if kl > 0 {
            for j in 0..n.saturating_sub(1) {
                let km = kl.min(n - 1 - j);
                let l = self.ipiv[j];
                if l != j {
                    b.swap(l, j);
                }
                let bj = b[j];
                if bj != 0.0 {
                    let col = j * ldab + kv;
                    for (t, m) in b[j + 1..=j + km].iter_mut().zip(&self.ab[col + 1..=col + km]) {
                        *t -= m * bj;
                    }
                }
            }
        }

        for j in (0..n).rev() {
            let col = j * ldab;
            b[j] /= self.ab[col + kv];
            let bj = b[j];
            if bj != 0.0 {
                let top = j.saturating_sub(kv);
                // U(i, j) for i in top..j lives at rows kv + i − j.
                let start = col + kv + top - j;
                for (t, u) in b[top..j].iter_mut().zip(&self.ab[start..col + kv]) {
                    *t -= u * bj;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense_mul(m: &BandMatrix, x: &[f64]) -> Vec<f64> {
        (0..m.dim())
            .map(|i| (0..m.dim()).map(|j| m.get(i, j) * x[j]).sum())
            .collect()
    }

    fn pseudo_random(seed: &mut u64) -> f64 {
        *seed = seed.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        ((*seed >> 11) as f64 / (1u64 << 53) as f64) - 0.5
    }

    #[test]
    fn tridiagonal_solve() {
        let n = 7;
        let mut m = BandMatrix::zeros(n, 1, 1);
        for i in 0..n {
            m.set(i, i, 2.0);
            if i > 0 {
                m.set(i, i - 1, -1.0);
            }
            if i + 1 < n {
                m.set(i, i + 1, -1.0);
            }
        }
        let x: Vec<f64> = (0..n).map(|i| i as f64 + 1.0).collect();
        let mut b = dense_mul(&m, &x);
        let lu = m.factorize();
        lu.solve_in_place(&mut b);
        for (a, e) in b.iter().zip(&x) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn pivoting_handles_zero_diagonal() {
        // Indefinite band matrix whose leading entry is zero.
        let n = 12;
        let (kl, ku) = (2, 3);
        let mut seed = 7;
        let mut m = BandMatrix::zeros(n, kl, ku);
        for j in 0..n {
            for i in j.saturating_sub(ku)..=(j + kl).min(n - 1) {
                m.set(i, j, pseudo_random(&mut seed));
            }
        }
        m.set(0, 0, 0.0);
        let x: Vec<f64> = (0..n).map(|_| pseudo_random(&mut seed)).collect();
        let mut b = dense_mul(&m, &x);
        let lu = m.factorize();
        assert!(lu.pivot_min() > 0.0);
        lu.solve_in_place(&mut b);
        for (a, e) in b.iter().zip(&x) {
            assert!((a - e).abs() < 1e-9, "{a} vs {e}");
        }
    }

    #[test]
    fn singular_matrix_reports_zero_pivot() {
        let mut m = BandMatrix::zeros(3, 1, 1);
        for i in 0..3 {
            m.set(i, i, 1.0);
        }
        m.set(1, 1, 0.0);
        m.set(0, 1, 0.0);
        m.set(1, 0, 0.0);
        m.set(2, 1, 0.0);
        m.set(1, 2, 0.0);
        assert_eq!(m.factorize().pivot_min(), 0.0);
    }
}
