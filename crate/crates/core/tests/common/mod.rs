//! Oracles and random generators shared by the integration tests. Nothing here
//! calls into the library's numerical routines.

#![allow(dead_code)]

use hpnc::{BSParams, DensityOperator, SingleModeState, C64};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_amplitudes(rng: &mut ChaCha8Rng, dim: usize) -> Vec<C64> {
    (0..dim).map(|_| C64::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0))).collect()
}

pub fn random_pure(rng: &mut ChaCha8Rng, dim: usize) -> SingleModeState {
    SingleModeState::new(random_amplitudes(rng, dim)).expect("non-zero random vector")
}

/// Mixture of `k` random pure states with random weights.
pub fn random_mixed(rng: &mut ChaCha8Rng, dim: usize, k: usize) -> DensityOperator {
    let weights: Vec<f64> = (0..k).map(|_| rng.gen_range(0.05..1.0)).collect();
    let total: f64 = weights.iter().sum();
    let comps: Vec<(f64, SingleModeState)> = weights.iter().map(|w| (w / total, random_pure(rng, dim))).collect();
    DensityOperator::mixture(&comps).expect("valid mixture")
}

/// Random splitter with `t^2` in `[lo, hi]` and any phase.
pub fn random_params(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> BSParams {
    let t2 = rng.gen_range(lo..hi);
    let phi = rng.gen_range(-std::f64::consts::PI..std::f64::consts::PI);
    BSParams::from_t2(t2, phi).expect("t^2 inside (0, 1)")
}

/// Amplitudes of `B|n, 0>` from the Heisenberg action `a1^dag -> t e^{i phi} a1^dag - r a2^dag`
/// applied to `(a1^dag)^n |0,0> / sqrt(n!)` and expanded binomially.
/// Returned as `(k, n - k, amplitude)`.
pub fn binomial_bs_output(n: usize, p: &BSParams) -> Vec<(usize, usize, C64)> {
    let a = C64::from_polar(p.t, p.phi);
    let b = C64::from(-p.r);
    (0..=n)
        .map(|k| {
            let mut binom = 1.0f64;
            for j in 0..k {
                binom = binom * (n - j) as f64 / (j + 1) as f64;
            }
            (k, n - k, a.powu(k as u32) * b.powu((n - k) as u32) * binom.sqrt())
        })
        .collect()
}

/// Von Neumann entropy in bits of a one-mode Gaussian state with symplectic eigenvalue `nu`
/// (vacuum `nu = 1/2`).
pub fn gaussian_entropy_bits(nu: f64) -> f64 {
    if nu <= 0.5 + 1e-15 {
        return 0.0;
    }
    let (p, m) = (nu + 0.5, nu - 0.5);
    p * p.log2() - m * m.log2()
}

type M2 = [[f64; 2]; 2];

fn mul(a: &M2, b: &M2) -> M2 {
    let mut out = [[0.0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            out[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    out
}

fn transpose(a: &M2) -> M2 {
    [[a[0][0], a[1][0]], [a[0][1], a[1][1]]]
}

/// Entropy of one output arm when squeezed vacuum (`r_sq`, squeezing phase 0) and vacuum
/// meet on a splitter with power transmission `t2` and phase `phi`, from the
/// `(x, p)` covariance matrices (vacuum covariance `I/2`).
pub fn gaussian_output_entropy(r_sq: f64, t2: f64, phi: f64) -> f64 {
    let v_in: M2 = [[(-2.0 * r_sq).exp() / 2.0, 0.0], [0.0, (2.0 * r_sq).exp() / 2.0]];
    let (c, s) = (phi.cos(), phi.sin());
    // a -> e^{i phi} a is a phase-space rotation
    let rot: M2 = [[c, -s], [s, c]];
    let rotated = mul(&mul(&rot, &v_in), &transpose(&rot));
    let r2 = 1.0 - t2;
    let v_out: M2 = [
        [t2 * rotated[0][0] + r2 * 0.5, t2 * rotated[0][1]],
        [t2 * rotated[1][0], t2 * rotated[1][1] + r2 * 0.5],
    ];
    let det = v_out[0][0] * v_out[1][1] - v_out[0][1] * v_out[1][0];
    gaussian_entropy_bits(det.sqrt())
}

/// Maximum of [`gaussian_output_entropy`] over `t2` by golden-section search.
pub fn gaussian_potential(r_sq: f64) -> f64 {
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let f = |t2: f64| gaussian_output_entropy(r_sq, t2, 0.0);
    let (mut a, mut b) = (1e-9, 1.0 - 1e-9);
    while b - a > 1e-12 {
        let (x1, x2) = (b - g * (b - a), a + g * (b - a));
        if f(x1) < f(x2) {
            a = x1;
        } else {
            b = x2;
        }
    }
    f(0.5 * (a + b))
}

/// Two-sided `|a - b| <= tol` with a readable message.
pub fn close(a: f64, b: f64, tol: f64) -> bool {
    (a - b).abs() <= tol
}
