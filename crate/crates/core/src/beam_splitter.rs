//! Two-mode beam splitter on truncated Fock spaces.
//!
//! The splitter `B` is fixed by its Heisenberg action
//!
//! ```text
//! B^dagger a1 B =  t e^{i phi} a1 + r a2
//! B^dagger a2 B = -r a1 + t e^{-i phi} a2
//! ```
//!
//! i.e. by an SU(2) mode matrix `U`. Writing `U = exp(K)` with `K` anti-Hermitian,
//! `B = exp(sum_ij K_ij a_i^dagger a_j)`. That generator conserves `n1 + n2`, so `B`
//! is block diagonal over total photon number and each block is exponentiated
//! exactly; a block only has to fit inside both truncations. The block generator
//! is tridiagonal, so a diagonal phase gauge turns it into a real symmetric
//! eigenproblem.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::fock::{tail_mass, ModeState, SingleModeState, DEFAULT_TAIL_THRESHOLD};
use crate::math::{sqrt_falling, TridiagonalExp};

/// Default singular-value threshold for counting Schmidt components.
pub const DEFAULT_SCHMIDT_THRESHOLD: f64 = 1e-6;

/// Amplitude transmission `t`, reflection `r` and phase `phi`, with `t^2 + r^2 = 1`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BSParams {
    pub t: f64,
    pub r: f64,
    pub phi: f64,
}

impl BSParams {
    pub fn new(t: f64, r: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) || !(0.0..=1.0).contains(&r) || !phi.is_finite() {
            return Err(Error::InvalidParams(format!("t = {t}, r = {r} must lie in [0, 1], phi finite")));
        }
        if (t * t + r * r - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidParams(format!("t^2 + r^2 = {} != 1", t * t + r * r)));
        }
        Ok(Self { t, r, phi })
    }

    /// `r` derived as `sqrt(1 - t^2)`.
    pub fn from_transmission(t: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t) {
            return Err(Error::InvalidParams(format!("t = {t} must lie in [0, 1]")));
        }
        Self::new(t, (1.0 - t * t).max(0.0).sqrt(), phi)
    }

    /// Parameterized by the intensity transmission `t^2`.
    pub fn from_t2(t2: f64, phi: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&t2) {
            return Err(Error::InvalidParams(format!("t^2 = {t2} must lie in [0, 1]")));
        }
        Self::new(t2.sqrt(), (1.0 - t2).sqrt(), phi)
    }

    /// 50:50 splitter.
    pub fn balanced(phi: f64) -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self { t: h, r: h, phi }
    }

    pub fn mode_matrix(&self) -> ModeMatrix {
        ModeMatrix { alpha: C64::from_polar(self.t, self.phi), beta: C64::from(self.r) }
    }
}

/// SU(2) matrix `[[alpha, beta], [-beta^*, alpha^*]]` acting on `(a1, a2)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ModeMatrix {
    pub alpha: C64,
    pub beta: C64,
}

impl ModeMatrix {
    pub fn entries(&self) -> [[C64; 2]; 2] {
        [[self.alpha, self.beta], [-self.beta.conj(), self.alpha.conj()]]
    }

    /// The inverse transform.
    pub fn adjoint(&self) -> Self {
        Self { alpha: self.alpha.conj(), beta: -self.beta }
    }

    /// Principal logarithm `K` with `exp(K) = U`, anti-Hermitian and traceless.
    pub fn generator(&self) -> [[C64; 2]; 2] {
        let i = C64::new(0.0, 1.0);
        let s = (self.alpha.im * self.alpha.im + self.beta.norm_sqr()).sqrt();
        let z = C64::from(0.0);
        if s == 0.0 {
            if self.alpha.re > 0.0 {
                return [[z, z], [z, z]];
            }
            return [[i * std::f64::consts::PI, z], [z, -i * std::f64::consts::PI]];
        }
        let theta = s.atan2(self.alpha.re);
        let f = theta / s;
        [
            [i * self.alpha.im * f, self.beta * f],
            [-self.beta.conj() * f, -i * self.alpha.im * f],
        ]
    }

    /// Restriction of the number-conserving generator to total photon number
    /// `total`, in the basis `|k, total - k>`, `k = 0..=total`. Tridiagonal.
    fn block_generator(&self, total: usize) -> TridiagonalExp {
        let k = self.generator();
        let n = total;
        let diag: Vec<C64> = (0..=n).map(|j| k[0][0] * j as f64 + k[1][1] * (n - j) as f64).collect();
        // a1^dagger a2 |j, n - j> = sqrt((j + 1)(n - j)) |j + 1, n - j - 1>
        let sub: Vec<C64> = (0..n).map(|j| k[0][1] * ((j + 1) as f64 * (n - j) as f64).sqrt()).collect();
        TridiagonalExp::new(&diag, &sub)
    }

    /// Exact block of the two-mode unitary on total photon number `total`, in
    /// the basis `|k, total - k>`, `k = 0..=total`.
    pub fn block_unitary(&self, total: usize) -> DMatrix<C64> {
        self.block_generator(total).matrix()
    }
}

/// Pure state on `dim1 x dim2` truncated Fock levels; entry `(n1, n2)` is the
/// amplitude of `|n1, n2>`.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoModeState {
    amplitudes: DMatrix<C64>,
}

impl TwoModeState {
    pub fn new(amplitudes: DMatrix<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("two-mode dims must be positive".into()));
        }
        let n2: f64 = amplitudes.iter().map(|c| c.norm_sqr()).sum();
        if !n2.is_finite() || n2 <= 1e-300 {
            return Err(Error::InvalidState(format!("cannot normalize two-mode state with norm^2 = {n2}")));
        }
        Ok(Self { amplitudes: amplitudes / C64::from(n2.sqrt()) })
    }

    /// `|psi1> (x) |psi2>`.
    pub fn product(a: &SingleModeState, b: &SingleModeState) -> Self {
        Self { amplitudes: a.amplitudes() * b.amplitudes().transpose() }
    }

    pub fn dims(&self) -> (usize, usize) {
        self.amplitudes.shape()
    }

    pub fn amplitudes(&self) -> &DMatrix<C64> {
        &self.amplitudes
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amplitudes.iter().map(|c| c.norm_sqr()).sum()
    }

    /// `P(n1 + n2 = k)` for `k = 0..dim1 + dim2 - 1`.
    pub fn total_number_distribution(&self) -> Vec<f64> {
        let (d1, d2) = self.dims();
        let mut p = vec![0.0; d1 + d2 - 1];
        for n1 in 0..d1 {
            for n2 in 0..d2 {
                p[n1 + n2] += self.amplitudes[(n1, n2)].norm_sqr();
            }
        }
        p
    }

    /// `<a1^dagger^p1 a1^q1 a2^dagger^p2 a2^q2>` in the truncated space.
    pub fn moment(&self, p1: usize, q1: usize, p2: usize, q2: usize) -> C64 {
        let (d1, d2) = self.dims();
        let c = &self.amplitudes;
        let mut acc = C64::from(0.0);
        for n1 in q1..d1 {
            let m1 = n1 - q1 + p1;
            if m1 >= d1 {
                break;
            }
            let w1 = sqrt_falling(n1, q1) * sqrt_falling(m1, p1);
            for n2 in q2..d2 {
                let m2 = n2 - q2 + p2;
                if m2 >= d2 {
                    break;
                }
                let w2 = sqrt_falling(n2, q2) * sqrt_falling(m2, p2);
                acc += c[(m1, m2)].conj() * c[(n1, n2)] * (w1 * w2);
            }
        }
        acc
    }
}

/// `|psi>_1 (x) |0>_2`.
pub fn embed_with_vacuum(state: &SingleModeState, dim2: usize) -> Result<TwoModeState> {
    let vac = SingleModeState::vacuum(dim2)?;
    Ok(TwoModeState::product(state, &vac))
}

/// Applies the splitter `params`.
pub fn apply_bs(state: &TwoModeState, params: &BSParams) -> Result<TwoModeState> {
    apply_mode_matrix(state, &params.mode_matrix())
}

/// Applies the two-mode unitary whose Heisenberg action on `(a1, a2)` is `u`.
pub fn apply_mode_matrix(state: &TwoModeState, u: &ModeMatrix) -> Result<TwoModeState> {
    let (d1, d2) = state.dims();
    let limit = d1.min(d2) - 1;
    let c = state.amplitudes();
    let mut out = DMatrix::<C64>::zeros(d1, d2);
    for total in 0..(d1 + d2 - 1) {
        let lo = total.saturating_sub(d2 - 1);
        let hi = total.min(d1 - 1);
        let populated = (lo..=hi).any(|n1| c[(n1, total - n1)] != C64::from(0.0));
        if !populated {
            continue;
        }
        if total > limit {
            return Err(Error::BlockOverflow { total, limit });
        }
        let v = DVector::from_iterator(total + 1, (0..=total).map(|k| c[(k, total - k)]));
        let w = u.block_generator(total).apply(&v);
        for k in 0..=total {
            out[(k, total - k)] = w[k];
        }
    }
    Ok(TwoModeState { amplitudes: out })
}

/// Max elementwise deviation of `B^dagger a_i B` from the prescribed linear
/// combinations, on the subspace `n1 + n2 <= dim - 1` where `B` acts exactly.
pub fn verify_mode_transform(params: &BSParams, dim: usize) -> f64 {
    let nmax = dim.saturating_sub(1);
    let index = |n1: usize, n2: usize| (n1 + n2) * (n1 + n2 + 1) / 2 + n1;
    let size = (nmax + 1) * (nmax + 2) / 2;
    let u = params.mode_matrix();
    let mut b = DMatrix::<C64>::zeros(size, size);
    for total in 0..=nmax {
        let blk = u.block_unitary(total);
        for i in 0..=total {
            for j in 0..=total {
                b[(index(i, total - i), index(j, total - j))] = blk[(i, j)];
            }
        }
    }
    let mut a1 = DMatrix::<C64>::zeros(size, size);
    let mut a2 = DMatrix::<C64>::zeros(size, size);
    for total in 1..=nmax {
        for n1 in 0..=total {
            let n2 = total - n1;
            if n1 > 0 {
                a1[(index(n1 - 1, n2), index(n1, n2))] = C64::from((n1 as f64).sqrt());
            }
            if n2 > 0 {
                a2[(index(n1, n2 - 1), index(n1, n2))] = C64::from((n2 as f64).sqrt());
            }
        }
    }
    let e = u.entries();
    let bd = b.adjoint();
    let lhs1 = &bd * &a1 * &b;
    let lhs2 = &bd * &a2 * &b;
    let rhs1 = &a1 * e[0][0] + &a2 * e[0][1];
    let rhs2 = &a1 * e[1][0] + &a2 * e[1][1];
    (lhs1 - rhs1).camax().max((lhs2 - rhs2).camax())
}

#[derive(Clone, Debug, PartialEq)]
pub struct SchmidtResult {
    /// Non-increasing.
    pub singular_values: Vec<f64>,
    pub rank: usize,
    pub entropy_bits: f64,
    pub threshold: f64,
}

/// Singular value decomposition of the amplitude matrix.
pub fn schmidt_analysis(state: &TwoModeState, threshold: f64) -> SchmidtResult {
    let svd = state.amplitudes().clone().svd(false, false);
    let mut sv: Vec<f64> = svd.singular_values.iter().copied().collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    let retained: Vec<f64> = sv.iter().copied().filter(|&s| s > threshold).collect();
    let entropy_bits = retained
        .iter()
        .map(|s| s * s)
        .filter(|&p| p > 0.0)
        .map(|p| -p * p.log2())
        .sum::<f64>()
        .max(0.0);
    SchmidtResult { rank: retained.len(), singular_values: sv, entropy_bits, threshold }
}

/// `|<a1^m a2^dagger^n>|^2 - <a1^dagger^m a1^m a2^dagger^n a2^n>`; positive implies entanglement.
pub fn hz_two_mode_violation(state: &TwoModeState, m: usize, n: usize) -> Result<f64> {
    let (d1, d2) = state.dims();
    if m >= d1 || n >= d2 {
        return Err(Error::Dimension(format!("orders (m, n) = ({m}, {n}) need dims > orders, dims = ({d1}, {d2})")));
    }
    let lhs = state.moment(0, m, n, 0).norm_sqr();
    let rhs = state.moment(m, m, n, n).re;
    Ok(lhs - rhs)
}

/// Mandel margin recovered from the output of a splitter fed with `state` and vacuum:
/// the first-order two-mode margin divided by `t^2 r^2`. Mixed inputs are
/// handled through their spectral ensemble.
pub fn bs_route_mandel(state: &ModeState, params: &BSParams) -> Result<f64> {
    let tr = params.t * params.r;
    if tr < 1e-6 {
        return Err(Error::DegenerateBs(tr));
    }
    let mut cross = C64::from(0.0);
    let mut corr = 0.0;
    for (w, psi) in state.ensemble() {
        let out = apply_bs(&embed_with_vacuum(&psi, psi.dim())?, params)?;
        cross += out.moment(0, 1, 1, 0) * w;
        corr += w * out.moment(1, 1, 1, 1).re;
    }
    Ok((cross.norm_sqr() - corr) / (tr * tr))
}

/// Grid-then-refine search over splitter settings.
#[derive(Clone, Debug, PartialEq)]
pub struct SearchConfig {
    /// Grid points on `t^2`, placed at `i / (t2_points + 1)`.
    pub t2_points: usize,
    pub phi_points: usize,
    /// Coordinate steps are halved until both fall below this.
    pub tolerance: f64,
    /// When set, no search happens: the entropy at these settings is returned.
    pub fixed: Option<BSParams>,
    pub tail_threshold: f64,
}

impl Default for SearchConfig {
    fn default() -> Self {
        Self { t2_points: 33, phi_points: 16, tolerance: 1e-4, fixed: None, tail_threshold: DEFAULT_TAIL_THRESHOLD }
    }
}

impl SearchConfig {
    pub fn fixed(params: BSParams) -> Self {
        Self { fixed: Some(params), ..Self::default() }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Potential {
    pub entropy_bits: f64,
    pub params: BSParams,
}

/// Schmidt entropy of the splitter output for `state (x) |0>`.
pub fn output_entropy(state: &SingleModeState, params: &BSParams) -> Result<f64> {
    let out = apply_bs(&embed_with_vacuum(state, state.dim())?, params)?;
    Ok(schmidt_analysis(&out, 0.0).entropy_bits)
}

/// Maximal output entanglement over splitter settings.
pub fn entanglement_potential(state: &SingleModeState, search: &SearchConfig) -> Result<Potential> {
    let tail = tail_mass(state);
    if tail >= search.tail_threshold {
        return Err(Error::Truncation { tail_mass: tail, threshold: search.tail_threshold, dim: state.dim() });
    }
    if let Some(params) = search.fixed {
        return Ok(Potential { entropy_bits: output_entropy(state, &params)?, params });
    }
    if search.t2_points == 0 || search.phi_points == 0 {
        return Err(Error::Config("search grid must be non-empty".into()));
    }
    let two_pi = 2.0 * std::f64::consts::PI;
    let t2_step = 1.0 / (search.t2_points + 1) as f64;
    let phi_step = two_pi / search.phi_points as f64;
    let grid: Vec<(f64, f64)> = (1..=search.t2_points)
        .flat_map(|i| (0..search.phi_points).map(move |j| (i as f64 * t2_step, j as f64 * phi_step)))
        .collect();
    let eval = |t2: f64, phi: f64| -> Result<f64> { output_entropy(state, &BSParams::from_t2(t2, phi)?) };
    let values: Vec<f64> = grid.par_iter().map(|&(t2, phi)| eval(t2, phi)).collect::<Result<_>>()?;

    let mut best = 0;
    for (i, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = i;
        }
    }
    let (mut t2, mut phi) = grid[best];
    let mut value = values[best];

    let (mut dt, mut dphi) = (t2_step, phi_step);
    let t2_bounds = (1e-12, 1.0 - 1e-12);
    while dt >= search.tolerance || dphi >= search.tolerance {
        let mut moved = false;
        for cand in [t2 + dt, t2 - dt] {
            let cand = cand.clamp(t2_bounds.0, t2_bounds.1);
            let v = eval(cand, phi)?;
            if v > value {
                (t2, value, moved) = (cand, v, true);
                break;
            }
        }
        for cand in [phi + dphi, phi - dphi] {
            let v = eval(t2, cand)?;
            if v > value {
                (phi, value, moved) = (cand.rem_euclid(two_pi), v, true);
                break;
            }
        }
        if !moved {
            dt *= 0.5;
            dphi *= 0.5;
        }
    }
    Ok(Potential { entropy_bits: value, params: BSParams::from_t2(t2, phi)? })
}
