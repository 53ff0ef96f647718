//! Small numeric helpers shared by the state constructors and moment code.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;

/// `ln k!` for `k = 0..=n`, by cumulative summation of `ln k`.
pub fn ln_factorials(n: usize) -> Vec<f64> {
    let mut out = Vec::with_capacity(n + 1);
    let mut acc = 0.0;
    out.push(0.0);
    for k in 1..=n {
        acc += (k as f64).ln();
        out.push(acc);
    }
    out
}

/// `ln C(n, k)` from a precomputed ln-factorial table.
pub fn ln_binomial(table: &[f64], n: usize, k: usize) -> f64 {
    table[n] - table[k] - table[n - k]
}

/// `sqrt(n! / (n - q)!)` as a direct product; zero when `q > n`.
pub fn sqrt_falling(n: usize, q: usize) -> f64 {
    if q > n {
        return 0.0;
    }
    ((n - q + 1)..=n).fold(1.0, |acc, k| acc * (k as f64).sqrt())
}

/// Falling factorial `n (n-1) ... (n-q+1)`.
pub fn falling(n: usize, q: usize) -> f64 {
    if q > n {
        return 0.0;
    }
    ((n - q + 1)..=n).fold(1.0, |acc, k| acc * k as f64)
}

pub fn norm_sqr(v: &DVector<C64>) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum()
}

/// `exp(G)` for an anti-Hermitian tridiagonal `G` with diagonal `diag` and
/// subdiagonal `sub` (`G[j+1][j] = sub[j]`, `G[j][j+1] = -conj(sub[j])`).
///
/// A diagonal phase similarity `D` makes `iG` real symmetric, so the spectral
/// factorisation `exp(G) = D Q diag(exp(-i lambda)) Q^T D^dagger` needs only a
/// real eigensolver.
pub struct TridiagonalExp {
    gauge: Vec<C64>,
    q: DMatrix<f64>,
    phases: Vec<C64>,
}

impl TridiagonalExp {
    pub fn new(diag: &[C64], sub: &[C64]) -> Self {
        let n = diag.len();
        assert_eq!(sub.len() + 1, n.max(1), "subdiagonal length");
        let i = C64::new(0.0, 1.0);
        let mut gauge = vec![C64::from(1.0); n];
        let mut t = DMatrix::<f64>::zeros(n, n);
        for j in 0..n {
            t[(j, j)] = (diag[j] * i).re;
        }
        for j in 0..n.saturating_sub(1) {
            let h = sub[j] * i;
            let mag = h.norm();
            gauge[j + 1] = if mag > 0.0 { gauge[j] * (h / mag) } else { gauge[j] };
            t[(j + 1, j)] = mag;
            t[(j, j + 1)] = mag;
        }
        let eig = t.symmetric_eigen();
        let phases = eig.eigenvalues.iter().map(|&l| C64::from_polar(1.0, -l)).collect();
        Self { gauge, q: eig.eigenvectors, phases }
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        let n = self.gauge.len();
        let mut y = DVector::<C64>::zeros(n);
        for k in 0..n {
            let mut acc = C64::from(0.0);
            for j in 0..n {
                acc += v[j] * self.gauge[j].conj() * self.q[(j, k)];
            }
            y[k] = acc * self.phases[k];
        }
        DVector::from_iterator(
            n,
            (0..n).map(|j| self.gauge[j] * (0..n).map(|k| y[k] * self.q[(j, k)]).sum::<C64>()),
        )
    }

    pub fn matrix(&self) -> DMatrix<C64> {
        let n = self.gauge.len();
        DMatrix::from_fn(n, n, |r, c| {
            let s: C64 = (0..n).map(|k| self.phases[k] * self.q[(r, k)] * self.q[(c, k)]).sum();
            self.gauge[r] * s * self.gauge[c].conj()
        })
    }
}

/// Least-squares slope of `ln y` against `ln x`. `None` when any `y <= 0`
/// or fewer than two points are given.
pub fn log_log_slope(xs: &[f64], ys: &[f64]) -> Option<f64> {
    if xs.len() != ys.len() || xs.len() < 2 {
        return None;
    }
    if ys.iter().any(|&y| !(y > 0.0) || !y.is_finite()) {
        return None;
    }
    let lx: Vec<f64> = xs.iter().map(|x| x.ln()).collect();
    let ly: Vec<f64> = ys.iter().map(|y| y.ln()).collect();
    let n = lx.len() as f64;
    let mx = lx.iter().sum::<f64>() / n;
    let my = ly.iter().sum::<f64>() / n;
    let sxy: f64 = lx.iter().zip(&ly).map(|(x, y)| (x - mx) * (y - my)).sum();
    let sxx: f64 = lx.iter().map(|x| (x - mx) * (x - mx)).sum();
    if sxx == 0.0 {
        return None;
    }
    Some(sxy / sxx)
}
