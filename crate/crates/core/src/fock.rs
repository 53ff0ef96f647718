//! Truncated single-mode Fock space.
//!
//! States live on levels `0..dim`. Pure states carry an amplitude vector,
//! mixed states a Hermitian unit-trace matrix. Moments are evaluated in the
//! truncated space: `a` lowers exactly, `a^dagger` annihilates the top level.
//!
//! The quadrature convention is `x_theta = (a^dagger e^{i theta} + a e^{-i theta}) / sqrt(2)`,
//! so the vacuum variance is exactly 1/2.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::math::{ln_factorials, norm_sqr, sqrt_falling};

/// Default bound on [`tail_mass`] accepted by [`state_from_spec`].
pub const DEFAULT_TAIL_THRESHOLD: f64 = 1e-10;

const NORM_TOL: f64 = 1e-12;

/// Pure state `sum_n c_n |n>` on a truncated Fock space.
#[derive(Clone, Debug, PartialEq)]
pub struct SingleModeState {
    amplitudes: DVector<C64>,
}

impl SingleModeState {
    /// Normalizes the given amplitudes. Fails on an empty, zero or non-finite vector.
    pub fn new(amplitudes: Vec<C64>) -> Result<Self> {
        Self::from_vector(DVector::from_vec(amplitudes))
    }

    pub fn from_vector(amplitudes: DVector<C64>) -> Result<Self> {
        if amplitudes.is_empty() {
            return Err(Error::InvalidState("dim must be at least 1".into()));
        }
        let n2 = norm_sqr(&amplitudes);
        if !n2.is_finite() || n2 <= 1e-300 {
            return Err(Error::InvalidState(format!("cannot normalize vector with norm^2 = {n2}")));
        }
        Ok(Self { amplitudes: amplitudes / C64::from(n2.sqrt()) })
    }

    pub fn fock(n: usize, dim: usize) -> Result<Self> {
        if n >= dim {
            return Err(Error::Dimension(format!("Fock level {n} does not fit in dim {dim}")));
        }
        let mut v = DVector::zeros(dim);
        v[n] = C64::from(1.0);
        Ok(Self { amplitudes: v })
    }

    pub fn vacuum(dim: usize) -> Result<Self> {
        Self::fock(0, dim)
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    pub fn probabilities(&self) -> Vec<f64> {
        self.amplitudes.iter().map(|c| c.norm_sqr()).collect()
    }

    /// `|psi><psi|`.
    pub fn to_density(&self) -> DensityOperator {
        DensityOperator { matrix: &self.amplitudes * self.amplitudes.adjoint() }
    }

    /// Copy into a larger (or equal) truncation, zero padded.
    pub fn padded(&self, dim: usize) -> Result<Self> {
        if dim < self.dim() {
            return Err(Error::Dimension(format!("cannot pad dim {} down to {dim}", self.dim())));
        }
        let mut v = DVector::zeros(dim);
        v.rows_mut(0, self.dim()).copy_from(&self.amplitudes);
        Ok(Self { amplitudes: v })
    }

    fn moment_unchecked(&self, p: usize, q: usize) -> C64 {
        let c = &self.amplitudes;
        let dim = c.len();
        let mut acc = C64::from(0.0);
        for n in q..dim {
            let m = n - q + p;
            if m >= dim {
                break;
            }
            let w = sqrt_falling(n, q) * sqrt_falling(m, p);
            acc += c[m].conj() * c[n] * w;
        }
        acc
    }
}

/// Mixed single-mode state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityOperator {
    matrix: DMatrix<C64>,
}

impl DensityOperator {
    /// Validates hermiticity, unit trace and positivity (eigenvalues >= -1e-10).
    pub fn new(matrix: DMatrix<C64>) -> Result<Self> {
        if matrix.nrows() == 0 || !matrix.is_square() {
            return Err(Error::InvalidState("density matrix must be square and non-empty".into()));
        }
        let herm = (&matrix - matrix.adjoint()).camax();
        if herm > NORM_TOL {
            return Err(Error::InvalidState(format!("not Hermitian (residual {herm:.3e})")));
        }
        let tr = matrix.trace();
        if (tr - C64::from(1.0)).norm() > NORM_TOL {
            return Err(Error::InvalidState(format!("trace {tr} != 1")));
        }
        let min_eig = matrix.clone().symmetric_eigenvalues().min();
        if min_eig < -1e-10 {
            return Err(Error::InvalidState(format!("negative eigenvalue {min_eig:.3e}")));
        }
        Ok(Self { matrix })
    }

    /// Diagonal state with the given (non-negative) populations, renormalized.
    pub fn diagonal(populations: &[f64]) -> Result<Self> {
        let total: f64 = populations.iter().sum();
        if populations.is_empty() || populations.iter().any(|&p| !(p >= 0.0)) || total <= 0.0 {
            return Err(Error::InvalidState("populations must be non-negative with positive sum".into()));
        }
        let d = DVector::from_iterator(populations.len(), populations.iter().map(|&p| C64::from(p / total)));
        Ok(Self { matrix: DMatrix::from_diagonal(&d) })
    }

    /// Thermal state with geometric weights `nbar^n / (nbar + 1)^(n + 1)`, renormalized on `0..dim`.
    pub fn thermal(nbar: f64, dim: usize) -> Result<Self> {
        if !(nbar >= 0.0) || !nbar.is_finite() {
            return Err(Error::InvalidSpec(format!("thermal nbar must be >= 0, got {nbar}")));
        }
        if dim == 0 {
            return Err(Error::Dimension("dim must be at least 1".into()));
        }
        let ratio = nbar / (nbar + 1.0);
        let pops: Vec<f64> = (0..dim).map(|n| ratio.powi(n as i32) / (nbar + 1.0)).collect();
        Self::diagonal(&pops)
    }

    /// Convex mixture of pure states with non-negative weights (renormalized).
    pub fn mixture(components: &[(f64, SingleModeState)]) -> Result<Self> {
        let Some(dim) = components.first().map(|(_, s)| s.dim()) else {
            return Err(Error::InvalidState("empty mixture".into()));
        };
        let total: f64 = components.iter().map(|(w, _)| *w).sum();
        if components.iter().any(|(w, s)| !(*w >= 0.0) || s.dim() != dim) || total <= 0.0 {
            return Err(Error::InvalidState("mixture weights must be non-negative on a common dim".into()));
        }
        let mut m = DMatrix::zeros(dim, dim);
        for (w, s) in components {
            m += s.to_density().matrix * C64::from(*w / total);
        }
        Ok(Self { matrix: m })
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.matrix
    }

    pub fn probabilities(&self) -> Vec<f64> {
        (0..self.dim()).map(|n| self.matrix[(n, n)].re).collect()
    }

    /// Spectral decomposition into weighted pure states; weights below 1e-15 are dropped.
    pub fn ensemble(&self) -> Vec<(f64, SingleModeState)> {
        let eig = self.matrix.clone().symmetric_eigen();
        let mut out = Vec::new();
        for (j, &w) in eig.eigenvalues.iter().enumerate() {
            if w > 1e-15 {
                let v = eig.eigenvectors.column(j).into_owned();
                if let Ok(s) = SingleModeState::from_vector(v) {
                    out.push((w, s));
                }
            }
        }
        out
    }

    fn moment_unchecked(&self, p: usize, q: usize) -> C64 {
        let dim = self.dim();
        let mut acc = C64::from(0.0);
        for n in q..dim {
            let m = n - q + p;
            if m >= dim {
                break;
            }
            acc += self.matrix[(n, m)] * (sqrt_falling(n, q) * sqrt_falling(m, p));
        }
        acc
    }
}

/// Either representation of a single-mode state.
#[derive(Clone, Debug, PartialEq)]
pub enum ModeState {
    Pure(SingleModeState),
    Mixed(DensityOperator),
}

impl From<SingleModeState> for ModeState {
    fn from(s: SingleModeState) -> Self {
        ModeState::Pure(s)
    }
}

impl From<DensityOperator> for ModeState {
    fn from(s: DensityOperator) -> Self {
        ModeState::Mixed(s)
    }
}

impl ModeState {
    pub fn as_pure(&self) -> Option<&SingleModeState> {
        match self {
            ModeState::Pure(s) => Some(s),
            ModeState::Mixed(_) => None,
        }
    }

    /// Weighted pure-state decomposition (a single unit-weight term for pure states).
    pub fn ensemble(&self) -> Vec<(f64, SingleModeState)> {
        match self {
            ModeState::Pure(s) => vec![(1.0, s.clone())],
            ModeState::Mixed(d) => d.ensemble(),
        }
    }
}

/// Common read-only interface of the single-mode representations.
pub trait SingleMode {
    fn dim(&self) -> usize;

    fn probabilities(&self) -> Vec<f64>;

    #[doc(hidden)]
    fn raw_moment(&self, p: usize, q: usize) -> C64;

    /// `<(a^dagger)^p a^q>` in the truncated space.
    fn moment(&self, p: usize, q: usize) -> Result<C64> {
        let dim = self.dim();
        if p >= dim || q >= dim {
            return Err(Error::Dimension(format!("moment order ({p}, {q}) needs dim > max(p, q), dim = {dim}")));
        }
        Ok(self.raw_moment(p, q))
    }

    /// Moment that reads as zero when an order does not fit the truncation.
    fn moment_or_zero(&self, p: usize, q: usize) -> C64 {
        if p >= self.dim() || q >= self.dim() {
            C64::from(0.0)
        } else {
            self.raw_moment(p, q)
        }
    }
}

impl SingleMode for SingleModeState {
    fn dim(&self) -> usize {
        SingleModeState::dim(self)
    }
    fn probabilities(&self) -> Vec<f64> {
        SingleModeState::probabilities(self)
    }
    fn raw_moment(&self, p: usize, q: usize) -> C64 {
        self.moment_unchecked(p, q)
    }
}

impl SingleMode for DensityOperator {
    fn dim(&self) -> usize {
        DensityOperator::dim(self)
    }
    fn probabilities(&self) -> Vec<f64> {
        DensityOperator::probabilities(self)
    }
    fn raw_moment(&self, p: usize, q: usize) -> C64 {
        self.moment_unchecked(p, q)
    }
}

impl SingleMode for ModeState {
    fn dim(&self) -> usize {
        match self {
            ModeState::Pure(s) => s.dim(),
            ModeState::Mixed(d) => d.dim(),
        }
    }
    fn probabilities(&self) -> Vec<f64> {
        match self {
            ModeState::Pure(s) => s.probabilities(),
            ModeState::Mixed(d) => d.probabilities(),
        }
    }
    fn raw_moment(&self, p: usize, q: usize) -> C64 {
        match self {
            ModeState::Pure(s) => s.moment_unchecked(p, q),
            ModeState::Mixed(d) => d.moment_unchecked(p, q),
        }
    }
}

/// `<(a^dagger)^p a^q>`; errors when `p` or `q` do not fit below `dim`.
pub fn expectation_moment<S: SingleMode + ?Sized>(state: &S, p: usize, q: usize) -> Result<C64> {
    state.moment(p, q)
}

/// Variance of `x_theta`, using `<a a^dagger> = <a^dagger a> + 1`.
pub fn quadrature_variance<S: SingleMode + ?Sized>(state: &S, theta: f64) -> f64 {
    let (n, mean, m2) = quadrature_moments(state);
    let rot = C64::from_polar(1.0, -theta);
    let x_mean = std::f64::consts::SQRT_2 * (rot * mean).re;
    let x2 = (rot * rot * m2).re + n + 0.5;
    (x2 - x_mean * x_mean).max(0.0)
}

/// Minimum quadrature variance over all angles and the minimizing angle in `[0, pi)`.
///
/// `V(theta) = 1/2 + <n> - |<a>|^2 + Re(e^{-2i theta} (<a^2> - <a>^2))`, so the
/// minimum sits at `theta = (arg(<a^2> - <a>^2) + pi) / 2`.
pub fn min_quadrature_variance<S: SingleMode + ?Sized>(state: &S) -> (f64, f64) {
    let (n, mean, m2) = quadrature_moments(state);
    let cov = m2 - mean * mean;
    let var = 0.5 + n - mean.norm_sqr() - cov.norm();
    let theta = if cov.norm() == 0.0 {
        0.0
    } else {
        (cov.arg() + std::f64::consts::PI) / 2.0
    };
    (var.max(0.0), theta.rem_euclid(std::f64::consts::PI))
}

fn quadrature_moments<S: SingleMode + ?Sized>(state: &S) -> (f64, C64, C64) {
    let n = state.moment_or_zero(1, 1).re;
    let mean = state.moment_or_zero(0, 1);
    let m2 = state.moment_or_zero(0, 2);
    (n, mean, m2)
}

/// Probability held in the top 10% of Fock levels (at least one level).
pub fn tail_mass<S: SingleMode + ?Sized>(state: &S) -> f64 {
    let probs = state.probabilities();
    let dim = probs.len();
    let k = dim.div_ceil(10).max(1);
    probs[dim - k..].iter().sum()
}

/// Complex number in the `{"re": .., "im": ..}` text encoding.
pub(crate) mod complex_serde {
    use num_complex::Complex64 as C64;
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    #[derive(Serialize, Deserialize)]
    #[serde(deny_unknown_fields)]
    struct Repr {
        re: f64,
        #[serde(default)]
        im: f64,
    }

    pub fn serialize<S: Serializer>(z: &C64, s: S) -> Result<S::Ok, S::Error> {
        Repr { re: z.re, im: z.im }.serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<C64, D::Error> {
        let r = Repr::deserialize(d)?;
        Ok(C64::new(r.re, r.im))
    }

    pub mod vec {
        use super::*;

        pub fn serialize<S: Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
            let reprs: Vec<Repr> = v.iter().map(|z| Repr { re: z.re, im: z.im }).collect();
            reprs.serialize(s)
        }

        pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Vec<C64>, D::Error> {
            let reprs = Vec::<Repr>::deserialize(d)?;
            Ok(reprs.into_iter().map(|r| C64::new(r.re, r.im)).collect())
        }
    }
}

/// One term `kappa |alpha>` of a coherent-state superposition.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatComponent {
    #[serde(with = "complex_serde")]
    pub weight: C64,
    #[serde(with = "complex_serde")]
    pub alpha: C64,
}

/// Declarative description of a single-mode state.
///
/// Serialized as `{"kind": .., "params": {..}}`; complex numbers as `{"re": .., "im": ..}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "params", rename_all = "snake_case", deny_unknown_fields)]
pub enum StateSpec {
    Fock {
        n: usize,
    },
    Coherent {
        #[serde(with = "complex_serde")]
        alpha: C64,
    },
    SqueezedVacuum {
        r_sq: f64,
        #[serde(default)]
        phase: f64,
    },
    Cat {
        components: Vec<CatComponent>,
    },
    Thermal {
        nbar: f64,
    },
}

impl StateSpec {
    pub fn vacuum() -> Self {
        StateSpec::Fock { n: 0 }
    }

    pub fn coherent(alpha: C64) -> Self {
        StateSpec::Coherent { alpha }
    }

    /// Equal-weight superposition of the given coherent amplitudes.
    pub fn cat(alphas: &[C64]) -> Self {
        StateSpec::Cat {
            components: alphas.iter().map(|&alpha| CatComponent { weight: C64::from(1.0), alpha }).collect(),
        }
    }

    pub fn is_pure(&self) -> bool {
        !matches!(self, StateSpec::Thermal { .. })
    }

    pub fn validate(&self) -> Result<()> {
        match self {
            StateSpec::Fock { .. } => Ok(()),
            StateSpec::Coherent { alpha } if !(alpha.re.is_finite() && alpha.im.is_finite()) => {
                Err(Error::InvalidSpec("coherent alpha must be finite".into()))
            }
            StateSpec::Coherent { .. } => Ok(()),
            StateSpec::SqueezedVacuum { r_sq, phase } if !(r_sq.is_finite() && phase.is_finite()) => {
                Err(Error::InvalidSpec("squeezing parameters must be finite".into()))
            }
            StateSpec::SqueezedVacuum { .. } => Ok(()),
            StateSpec::Cat { components } if components.is_empty() => {
                Err(Error::InvalidSpec("cat needs at least one component".into()))
            }
            StateSpec::Cat { components } => {
                if components.iter().all(|c| c.weight.norm() > 0.0 && c.alpha.norm().is_finite() && c.weight.norm().is_finite()) {
                    Ok(())
                } else {
                    Err(Error::InvalidSpec("cat weights must be finite and non-zero".into()))
                }
            }
            StateSpec::Thermal { nbar } if !(*nbar >= 0.0 && nbar.is_finite()) => {
                Err(Error::InvalidSpec(format!("thermal nbar must be >= 0, got {nbar}")))
            }
            StateSpec::Thermal { .. } => Ok(()),
        }
    }
}

/// Exact coherent-state coefficients `e^{-|alpha|^2/2} alpha^n / sqrt(n!)` for `n < dim`,
/// evaluated in log space. Not renormalized to the truncation.
pub fn coherent_amplitudes(alpha: C64, dim: usize) -> DVector<C64> {
    let lnf = ln_factorials(dim.max(1));
    let r = alpha.norm();
    let phase = alpha.arg();
    DVector::from_iterator(
        dim,
        (0..dim).map(|n| {
            if r == 0.0 {
                return if n == 0 { C64::from(1.0) } else { C64::from(0.0) };
            }
            let ln_mag = -0.5 * r * r + n as f64 * r.ln() - 0.5 * lnf[n];
            C64::from_polar(ln_mag.exp(), n as f64 * phase)
        }),
    )
}

/// `S(zeta)|0>` with `zeta = r_sq e^{i phase}` and `S(zeta) = exp((zeta^* a^2 - zeta a^dagger^2)/2)`,
/// so that phase 0 squeezes `x_0` to variance `e^{-2 r_sq} / 2`.
pub fn squeezed_vacuum_amplitudes(r_sq: f64, phase: f64, dim: usize) -> DVector<C64> {
    let lnf = ln_factorials(dim.max(1));
    let base = -C64::from_polar(1.0, phase) * r_sq.tanh();
    let pref = -0.5 * r_sq.cosh().ln();
    DVector::from_iterator(
        dim,
        (0..dim).map(|n| {
            if n % 2 == 1 {
                return C64::from(0.0);
            }
            let k = n / 2;
            if k == 0 {
                return C64::from(pref.exp());
            }
            if base.norm() == 0.0 {
                return C64::from(0.0);
            }
            let ln_mag = pref + k as f64 * base.norm().ln() + 0.5 * lnf[n]
                - k as f64 * std::f64::consts::LN_2
                - lnf[k];
            C64::from_polar(ln_mag.exp(), k as f64 * base.arg())
        }),
    )
}

/// Builds the state described by `spec` on `0..dim`, gated on [`DEFAULT_TAIL_THRESHOLD`].
pub fn state_from_spec(spec: &StateSpec, dim: usize) -> Result<ModeState> {
    state_from_spec_with(spec, dim, DEFAULT_TAIL_THRESHOLD)
}

/// As [`state_from_spec`] with an explicit tail-mass threshold.
pub fn state_from_spec_with(spec: &StateSpec, dim: usize, threshold: f64) -> Result<ModeState> {
    spec.validate()?;
    if dim == 0 {
        return Err(Error::Dimension("dim must be at least 1".into()));
    }
    let state: ModeState = match spec {
        StateSpec::Fock { n } => {
            if *n >= dim {
                return Err(Error::Truncation { tail_mass: 1.0, threshold, dim });
            }
            SingleModeState::fock(*n, dim)?.into()
        }
        StateSpec::Coherent { alpha } => SingleModeState::from_vector(coherent_amplitudes(*alpha, dim))?.into(),
        StateSpec::SqueezedVacuum { r_sq, phase } => {
            SingleModeState::from_vector(squeezed_vacuum_amplitudes(*r_sq, *phase, dim))?.into()
        }
        StateSpec::Cat { components } => {
            let mut v = DVector::zeros(dim);
            for c in components {
                v += coherent_amplitudes(c.alpha, dim) * c.weight;
            }
            if norm_sqr(&v) < 1e-24 {
                return Err(Error::InvalidSpec("cat components cancel to the zero vector".into()));
            }
            SingleModeState::from_vector(v)?.into()
        }
        StateSpec::Thermal { nbar } => DensityOperator::thermal(*nbar, dim)?.into(),
    };
    let tail = tail_mass(&state);
    if tail >= threshold {
        return Err(Error::Truncation { tail_mass: tail, threshold, dim });
    }
    Ok(state)
}

/// Pure-state convenience wrapper; thermal specs are rejected.
pub fn pure_state_from_spec(spec: &StateSpec, dim: usize) -> Result<SingleModeState> {
    match state_from_spec(spec, dim)? {
        ModeState::Pure(s) => Ok(s),
        ModeState::Mixed(_) => Err(Error::InvalidSpec("a pure state is required here".into())),
    }
}
