//! Symmetric Dicke sector of `N` two-level particles.
//!
//! Basis index `k = m + N/2` counts excited particles, which is also the
//! occupation of the excited-state mode `c_e` in the two-mode picture
//! (`n_g = N - k`). Ladder elements take the standard form
//! `<k+1|S+|k> = sqrt((k + 1)(N - k))`, i.e. `[(S - m)(S + m + 1)]^{1/2}`.
//!
//! The Holstein-Primakoff embedding identifies Fock level `n` with `k = n`, so
//! for `N >> <n>` we get `S+ ~ sqrt(N) b^dagger` and
//! `S_x ~ sqrt(N) (b + b^dagger) / 2 = sqrt(N / 2) x_0`.
//! Consequently the squared squeezing parameter
//! `xi^2 = N Var(S_x) / (<S_y>^2 + <S_z>^2)` tends to `2 Var(x_0)`, and the
//! `N^2`-normalized spin Mandel margin tends to `<n>^2 - <b^dagger^2 b^2>`.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64 as C64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fock::{complex_serde, SingleModeState};
use crate::math::{falling, ln_binomial, ln_factorials, norm_sqr, sqrt_falling};

/// Amplitude above level `N` that still counts as zero for [`hp_embed`].
pub const SUPPORT_TOL: f64 = 1e-14;

#[derive(Clone, Debug, PartialEq)]
pub struct DickeState {
    n_particles: usize,
    amplitudes: DVector<C64>,
}

impl DickeState {
    /// Normalizes; `amplitudes` must have length `n_particles + 1`.
    pub fn new(n_particles: usize, amplitudes: DVector<C64>) -> Result<Self> {
        if n_particles == 0 {
            return Err(Error::InvalidState("N must be at least 1".into()));
        }
        if amplitudes.len() != n_particles + 1 {
            return Err(Error::Dimension(format!(
                "Dicke state for N = {n_particles} needs {} amplitudes, got {}",
                n_particles + 1,
                amplitudes.len()
            )));
        }
        let n2 = norm_sqr(&amplitudes);
        if !n2.is_finite() || n2 <= 1e-300 {
            return Err(Error::InvalidState(format!("cannot normalize Dicke state with norm^2 = {n2}")));
        }
        Ok(Self { n_particles, amplitudes: amplitudes / C64::from(n2.sqrt()) })
    }

    /// `|S, -S>`: every particle in the ground state.
    pub fn ground(n_particles: usize) -> Result<Self> {
        let mut v = DVector::zeros(n_particles + 1);
        v[0] = C64::from(1.0);
        Self::new(n_particles, v)
    }

    pub fn n_particles(&self) -> usize {
        self.n_particles
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amplitudes
    }

    /// Reads the excitation ladder back as Fock amplitudes on `0..=N`.
    pub fn to_fock(&self) -> Result<SingleModeState> {
        SingleModeState::from_vector(self.amplitudes.clone())
    }

    /// `(<S_x>, <S_y>, <S_z>)`.
    pub fn mean_spin(&self) -> [f64; 3] {
        let ops = Ladder::new(self.n_particles);
        let v = &self.amplitudes;
        let sp = v.dotc(&ops.raise(v));
        let sz = v.dotc(&ops.z(v)).re;
        [sp.re, sp.im, sz]
    }

    /// `Var(n . S)`.
    pub fn spin_variance(&self, dir: &SpinDirection) -> f64 {
        let ops = Ladder::new(self.n_particles);
        let w = ops.component(dir.as_array(), &self.amplitudes);
        let mean = self.amplitudes.dotc(&w).re;
        (norm_sqr(&w) - mean * mean).max(0.0)
    }
}

#[derive(Serialize, Deserialize)]
struct DickeRepr {
    #[serde(rename = "N")]
    n: usize,
    #[serde(with = "complex_serde::vec")]
    amplitudes: Vec<C64>,
}

impl Serialize for DickeState {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        DickeRepr { n: self.n_particles, amplitudes: self.amplitudes.iter().copied().collect() }.serialize(s)
    }
}

impl<'de> Deserialize<'de> for DickeState {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = DickeRepr::deserialize(d)?;
        DickeState::new(r.n, DVector::from_vec(r.amplitudes)).map_err(serde::de::Error::custom)
    }
}

/// Unit 3-vector selecting a collective spin component.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "[f64; 3]", into = "[f64; 3]")]
pub struct SpinDirection([f64; 3]);

impl SpinDirection {
    pub const X: SpinDirection = SpinDirection([1.0, 0.0, 0.0]);
    pub const Y: SpinDirection = SpinDirection([0.0, 1.0, 0.0]);
    pub const Z: SpinDirection = SpinDirection([0.0, 0.0, 1.0]);

    /// Requires norm 1 within 1e-12.
    pub fn new(v: [f64; 3]) -> Result<Self> {
        let n = dot(&v, &v).sqrt();
        if (n - 1.0).abs() > 1e-12 {
            return Err(Error::Geometry(format!("direction {v:?} has norm {n}")));
        }
        Ok(Self(v))
    }

    /// Rescales a non-zero vector to unit length.
    pub fn normalized(v: [f64; 3]) -> Result<Self> {
        let n = dot(&v, &v).sqrt();
        if !(n > 1e-300) || !n.is_finite() {
            return Err(Error::Geometry(format!("cannot normalize {v:?}")));
        }
        Ok(Self([v[0] / n, v[1] / n, v[2] / n]))
    }

    pub fn as_array(&self) -> [f64; 3] {
        self.0
    }

    pub fn dot(&self, other: &SpinDirection) -> f64 {
        dot(&self.0, &other.0)
    }
}

impl TryFrom<[f64; 3]> for SpinDirection {
    type Error = Error;
    fn try_from(v: [f64; 3]) -> Result<Self> {
        SpinDirection::new(v)
    }
}

impl From<SpinDirection> for [f64; 3] {
    fn from(d: SpinDirection) -> Self {
        d.0
    }
}

fn dot(a: &[f64; 3], b: &[f64; 3]) -> f64 {
    a[0] * b[0] + a[1] * b[1] + a[2] * b[2]
}

fn cross(a: &[f64; 3], b: &[f64; 3]) -> [f64; 3] {
    [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
}

/// Banded action of the collective spin on amplitude vectors; O(N) per application.
#[derive(Clone, Debug)]
struct Ladder {
    /// `raise[k] = <k+1|S+|k>`
    raise: Vec<f64>,
    z: Vec<f64>,
}

impl Ladder {
    fn new(n: usize) -> Self {
        let half = n as f64 / 2.0;
        Self {
            raise: (0..n).map(|k| (((k + 1) * (n - k)) as f64).sqrt()).collect(),
            z: (0..=n).map(|k| k as f64 - half).collect(),
        }
    }

    fn raise(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(v.len());
        for (k, b) in self.raise.iter().enumerate() {
            out[k + 1] = v[k] * *b;
        }
        out
    }

    fn lower(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(v.len());
        for (k, b) in self.raise.iter().enumerate() {
            out[k] = v[k + 1] * *b;
        }
        out
    }

    fn z(&self, v: &DVector<C64>) -> DVector<C64> {
        DVector::from_iterator(v.len(), v.iter().zip(&self.z).map(|(a, z)| a * *z))
    }

    /// `(n . S) v` with `S_x = (S+ + S-)/2`, `S_y = (S+ - S-)/(2i)`.
    fn component(&self, n: [f64; 3], v: &DVector<C64>) -> DVector<C64> {
        let cp = C64::new(n[0], -n[1]) * 0.5;
        let cm = C64::new(n[0], n[1]) * 0.5;
        self.raise(v) * cp + self.lower(v) * cm + self.z(v) * C64::from(n[2])
    }
}

/// Collective spin matrices on the `N + 1` symmetric levels.
#[derive(Clone, Debug, PartialEq)]
pub struct SpinOperators {
    pub n_particles: usize,
    pub s_plus: DMatrix<C64>,
    pub s_minus: DMatrix<C64>,
    pub s_z: DMatrix<C64>,
    pub s_x: DMatrix<C64>,
    pub s_y: DMatrix<C64>,
}

/// Dense spin matrices for `N` particles.
pub fn spin_matrices(n_particles: usize) -> Result<SpinOperators> {
    if n_particles == 0 {
        return Err(Error::InvalidState("N must be at least 1".into()));
    }
    let ladder = Ladder::new(n_particles);
    let d = n_particles + 1;
    let mut s_plus = DMatrix::<C64>::zeros(d, d);
    for (k, b) in ladder.raise.iter().enumerate() {
        s_plus[(k + 1, k)] = C64::from(*b);
    }
    let s_minus = s_plus.adjoint();
    let s_z = DMatrix::from_diagonal(&DVector::from_iterator(d, ladder.z.iter().map(|&z| C64::from(z))));
    let s_x = (&s_plus + &s_minus) * C64::from(0.5);
    let s_y = (&s_plus - &s_minus) * C64::new(0.0, -0.5);
    Ok(SpinOperators { n_particles, s_plus, s_minus, s_z, s_x, s_y })
}

/// Residuals of `[S+, S-] = 2 S_z`, `[S_z, S+] = S+` and `S^2 = S(S+1)` evaluated
/// column by column with the banded operators, so it scales to large `N`.
/// Each residual is divided by `max(S(S+1), 1)`.
pub fn spin_algebra_residuals(n_particles: usize) -> [f64; 3] {
    let ops = Ladder::new(n_particles);
    let d = n_particles + 1;
    let s = n_particles as f64 / 2.0;
    let mut res = [0.0f64; 3];
    for k in 0..d {
        let mut e = DVector::<C64>::zeros(d);
        e[k] = C64::from(1.0);
        let pm = ops.raise(&ops.lower(&e));
        let mp = ops.lower(&ops.raise(&e));
        let z = ops.z(&e);
        let r1 = (&pm - &mp - &z * C64::from(2.0)).camax();
        let zp = ops.z(&ops.raise(&e));
        let pz = ops.raise(&z);
        let r2 = (&zp - &pz - ops.raise(&e)).camax();
        let cas = ops.z(&z) + (&pm + &mp) * C64::from(0.5) - &e * C64::from(s * (s + 1.0));
        let scale = (s * (s + 1.0)).max(1.0);
        res[0] = res[0].max(r1 / scale);
        res[1] = res[1].max(r2 / scale);
        res[2] = res[2].max(cas.camax() / scale);
    }
    res
}

/// Atomic coherent state `|N/2, z>`; amplitudes `C(N, k)^{1/2} z^k / (1 + |z|^2)^{N/2}`
/// evaluated in log space.
pub fn atomic_coherent_state(n_particles: usize, z: C64) -> Result<DickeState> {
    if n_particles == 0 {
        return Err(Error::InvalidState("N must be at least 1".into()));
    }
    if !(z.re.is_finite() && z.im.is_finite()) {
        return Err(Error::InvalidState("z must be finite".into()));
    }
    let lnf = ln_factorials(n_particles);
    let r = z.norm();
    let ln_norm = -0.5 * n_particles as f64 * (r * r).ln_1p();
    let v = DVector::from_iterator(
        n_particles + 1,
        (0..=n_particles).map(|k| {
            if k == 0 {
                return C64::from(ln_norm.exp());
            }
            if r == 0.0 {
                return C64::from(0.0);
            }
            let ln_mag = 0.5 * ln_binomial(&lnf, n_particles, k) + k as f64 * r.ln() + ln_norm;
            C64::from_polar(ln_mag.exp(), k as f64 * z.arg())
        }),
    );
    DickeState::new(n_particles, v)
}

/// Places Fock amplitude `n` on Dicke level `k = n`.
pub fn hp_embed(state: &SingleModeState, n_particles: usize) -> Result<DickeState> {
    if n_particles == 0 {
        return Err(Error::InvalidState("N must be at least 1".into()));
    }
    let amps = state.amplitudes();
    for level in (n_particles + 1)..amps.len() {
        let a = amps[level].norm();
        if a >= SUPPORT_TOL {
            return Err(Error::Support { level, amplitude: a, n_particles });
        }
    }
    let mut v = DVector::zeros(n_particles + 1);
    let keep = amps.len().min(n_particles + 1);
    v.rows_mut(0, keep).copy_from(&amps.rows(0, keep));
    DickeState::new(n_particles, v)
}

/// `(|<S+ S->|^2 - <S+^2 S-^2>) / N^2`.
pub fn dicke_mandel_violation(state: &DickeState) -> f64 {
    let ops = Ladder::new(state.n_particles);
    let once = ops.lower(&state.amplitudes);
    let twice = ops.lower(&once);
    let pm = norm_sqr(&once);
    let pm2 = norm_sqr(&twice);
    let n = state.n_particles as f64;
    (pm * pm - pm2) / (n * n)
}

/// `|<c_g^m c_e^dagger^n>|^2 - <c_g^dagger^m c_g^m c_e^dagger^n c_e^n>` on the Dicke
/// basis through `|k> = |n_g = N - k, n_e = k>`.
///
/// For `m != n` the first term changes the particle number and vanishes on every
/// fixed-`N` state, so only the (non-negative) second term survives.
pub fn hz_schwinger_violation(state: &DickeState, m: usize, n: usize) -> Result<f64> {
    let big_n = state.n_particles;
    if m > big_n || n > big_n {
        return Err(Error::Dimension(format!("orders (m, n) = ({m}, {n}) exceed N = {big_n}")));
    }
    let a = &state.amplitudes;
    let lhs = if m == n {
        let mut acc = C64::from(0.0);
        for k in 0..=(big_n - m) {
            let w = sqrt_falling(big_n - k, m) * sqrt_falling(k + m, m);
            acc += a[k + m].conj() * a[k] * w;
        }
        acc.norm_sqr()
    } else {
        0.0
    };
    let rhs: f64 = a.iter().enumerate().map(|(k, c)| c.norm_sqr() * falling(big_n - k, m) * falling(k, n)).sum();
    Ok(lhs - rhs)
}

/// Deviations of the normal-ordering identity
/// `c_g^dag^2 c_g^2 c_e^dag^2 c_e^2 = c_g^2 c_g^dag^2 c_e^dag^2 c_e^2 - 4 c_g c_g^dag c_e^dag^2 c_e^2 + 2 c_e^dag^2 c_e^2`
/// and of `S+^2 = c_e^dag^2 c_g^2` (with `S+ = c_e^dag c_g`), as matrices on
/// `0..=n_max` per mode restricted to input states with `n_g + n_e <= n_max - 2`.
///
/// Uses the integer representation `c|n> = n|n-1>`, `c^dag|n> = |n+1>`, which is
/// similar to the orthonormal one via `diag(sqrt(n!))` and keeps every matrix
/// element exact in `f64`.
pub fn schwinger_identity_deviations(n_max: usize) -> Result<(f64, f64)> {
    if n_max < 4 {
        return Err(Error::Dimension(format!("n_max must be at least 4, got {n_max}")));
    }
    let d = n_max + 1;
    let mut c = DMatrix::<C64>::zeros(d, d);
    let mut cd = DMatrix::<C64>::zeros(d, d);
    for n in 1..d {
        c[(n - 1, n)] = C64::from(n as f64);
        cd[(n, n - 1)] = C64::from(1.0);
    }
    Ok(identity_deviations(&c, &cd, n_max))
}

fn identity_deviations(c: &DMatrix<C64>, cd: &DMatrix<C64>, n_max: usize) -> (f64, f64) {
    let d = n_max + 1;
    let id = DMatrix::<C64>::identity(d, d);
    let c2 = c * c;
    let cd2 = cd * cd;
    let ee = &cd2 * &c2;
    // first Kronecker factor acts on c_g
    let lhs = (&cd2 * &c2).kronecker(&ee);
    let rhs = (&c2 * &cd2).kronecker(&ee) - (c * cd).kronecker(&ee) * C64::from(4.0) + id.kronecker(&ee) * C64::from(2.0);
    let s_plus = c.kronecker(cd);
    let s_plus_sq = &s_plus * &s_plus;
    let direct = c2.kronecker(&cd2);

    let mut dev = (0.0f64, 0.0f64);
    for ng in 0..d {
        for ne in 0..d {
            if ng + ne + 2 > n_max {
                continue;
            }
            let col = ng * d + ne;
            dev.0 = dev.0.max((lhs.column(col) - rhs.column(col)).camax());
            dev.1 = dev.1.max((s_plus_sq.column(col) - direct.column(col)).camax());
        }
    }
    dev
}

/// Largest of the two deviations of [`schwinger_identity_deviations`].
pub fn schwinger_identity_check(n_max: usize) -> Result<f64> {
    let (a, b) = schwinger_identity_deviations(n_max)?;
    Ok(a.max(b))
}

/// `xi^2 = N Var(S_n1) / (<S_n2>^2 + <S_n3>^2)`.
pub fn spin_squeezing_xi2(
    state: &DickeState,
    n1: &SpinDirection,
    n2: &SpinDirection,
    n3: &SpinDirection,
) -> Result<f64> {
    for (a, b, label) in [(n1, n2, "n1.n2"), (n1, n3, "n1.n3"), (n2, n3, "n2.n3")] {
        let d = a.dot(b);
        if d.abs() > 1e-10 {
            return Err(Error::Geometry(format!("{label} = {d:.3e}")));
        }
    }
    let mean = state.mean_spin();
    let m2 = dot(&mean, &n2.0);
    let m3 = dot(&mean, &n3.0);
    let denom = m2 * m2 + m3 * m3;
    if denom < 1e-12 {
        return Err(Error::DegenerateDenominator(denom));
    }
    Ok(state.n_particles as f64 * state.spin_variance(n1) / denom)
}

#[derive(Clone, Debug, PartialEq)]
pub struct OptimalSqueezing {
    pub xi2: f64,
    /// Minimal-variance direction, orthogonal to the mean spin.
    pub n1: SpinDirection,
    /// Mean-spin direction.
    pub n2: SpinDirection,
    pub n3: SpinDirection,
}

/// Minimizes `xi^2` over `n1` in the plane orthogonal to the mean spin, by
/// diagonalizing the symmetrized 2x2 spin covariance in that plane.
pub fn optimal_spin_squeezing(state: &DickeState) -> Result<OptimalSqueezing> {
    let mean = state.mean_spin();
    let len = dot(&mean, &mean).sqrt();
    if len <= 1e-10 {
        return Err(Error::DegenerateMeanSpin(len));
    }
    let n2 = [mean[0] / len, mean[1] / len, mean[2] / len];
    let seed = if n2[0].abs() < 0.9 { [1.0, 0.0, 0.0] } else { [0.0, 1.0, 0.0] };
    let e1 = {
        let c = cross(&n2, &seed);
        let l = dot(&c, &c).sqrt();
        [c[0] / l, c[1] / l, c[2] / l]
    };
    let e2 = cross(&n2, &e1);

    let ops = Ladder::new(state.n_particles);
    let v = &state.amplitudes;
    let w1 = ops.component(e1, v);
    let w2 = ops.component(e2, v);
    let m1 = v.dotc(&w1).re;
    let m2 = v.dotc(&w2).re;
    let c11 = norm_sqr(&w1) - m1 * m1;
    let c22 = norm_sqr(&w2) - m2 * m2;
    let c12 = w1.dotc(&w2).re - m1 * m2;

    // smallest eigenpair of [[c11, c12], [c12, c22]]
    let half_tr = 0.5 * (c11 + c22);
    let disc = (0.25 * (c11 - c22).powi(2) + c12 * c12).sqrt();
    let lmin = half_tr - disc;
    let angle = 0.5 * (2.0 * c12).atan2(c11 - c22) + std::f64::consts::FRAC_PI_2;
    let (ca, sa) = (angle.cos(), angle.sin());
    let dir = [ca * e1[0] + sa * e2[0], ca * e1[1] + sa * e2[1], ca * e1[2] + sa * e2[2]];
    let n1 = SpinDirection::normalized(dir)?;
    let n3 = SpinDirection::normalized(cross(&n1.0, &n2))?;
    Ok(OptimalSqueezing {
        xi2: state.n_particles as f64 * lmin.max(0.0) / (len * len),
        n1,
        n2: SpinDirection::normalized(n2)?,
        n3,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fock::{pure_state_from_spec, StateSpec};

    fn c(re: f64, im: f64) -> C64 {
        C64::new(re, im)
    }

    #[test]
    fn spin_half_matrices_are_pauli_over_two() {
        let ops = spin_matrices(1).unwrap();
        let half = c(0.5, 0.0);
        let sx = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), half, half, c(0.0, 0.0)]);
        let sy = DMatrix::from_row_slice(2, 2, &[c(0.0, 0.0), c(0.0, 0.5), c(0.0, -0.5), c(0.0, 0.0)]);
        let sz = DMatrix::from_row_slice(2, 2, &[c(-0.5, 0.0), c(0.0, 0.0), c(0.0, 0.0), half]);
        // basis order is (|g>, |e>) = (m = -1/2, m = +1/2)
        assert!((ops.s_x - sx).camax() < 1e-15);
        assert!((ops.s_y - sy).camax() < 1e-15);
        assert!((ops.s_z - sz).camax() < 1e-15);
    }

    #[test]
    fn ladder_element_n2() {
        let ops = spin_matrices(2).unwrap();
        assert!((ops.s_plus[(2, 1)] - c(2f64.sqrt(), 0.0)).norm() < 1e-15);
        assert!((&ops.s_plus - ops.s_minus.adjoint()).camax() == 0.0);
    }

    #[test]
    fn dense_algebra_small_n() {
        for n in [1, 2, 5, 17, 40] {
            let o = spin_matrices(n).unwrap();
            let comm = &o.s_plus * &o.s_minus - &o.s_minus * &o.s_plus - &o.s_z * C64::from(2.0);
            assert!(comm.camax() < 1e-12);
            let comm = &o.s_z * &o.s_plus - &o.s_plus * &o.s_z - &o.s_plus;
            assert!(comm.camax() < 1e-12);
            let s = n as f64 / 2.0;
            let cas = &o.s_x * &o.s_x + &o.s_y * &o.s_y + &o.s_z * &o.s_z
                - DMatrix::identity(n + 1, n + 1) * C64::from(s * (s + 1.0));
            assert!(cas.camax() < 1e-10);
        }
    }

    #[test]
    fn banded_algebra_large_n() {
        for n in [1, 100, 2000] {
            let r = spin_algebra_residuals(n);
            assert!(r.iter().all(|&x| x < 1e-12), "N = {n}: {r:?}");
        }
    }

    #[test]
    fn acs_examples() {
        let g = atomic_coherent_state(7, c(0.0, 0.0)).unwrap();
        assert_eq!(g.amplitudes()[0], c(1.0, 0.0));
        let s = atomic_coherent_state(2, c(1.0, 0.0)).unwrap();
        let expected = [0.5, std::f64::consts::FRAC_1_SQRT_2, 0.5];
        for k in 0..3 {
            assert!((s.amplitudes()[k] - c(expected[k], 0.0)).norm() < 1e-15);
        }
    }

    #[test]
    fn acs_matches_displacement_exponential() {
        for (n, xi) in [(1, c(0.3, 0.1)), (6, c(-0.4, 0.7)), (30, c(0.2, -0.25))] {
            let ops = spin_matrices(n).unwrap();
            let gen = &ops.s_plus * xi - &ops.s_minus * xi.conj();
            let ground = DickeState::ground(n).unwrap();
            let direct = gen.exp() * ground.amplitudes();
            let z = C64::from_polar(xi.norm().tan(), xi.arg());
            let acs = atomic_coherent_state(n, z).unwrap();
            assert!((direct - acs.amplitudes()).camax() < 1e-10, "N = {n}");
        }
    }

    #[test]
    fn acs_matches_product_expansion() {
        // single-particle state (|g> + z|e>)/sqrt(1 + |z|^2), tensored N times and
        // projected on the symmetric levels: amplitude_k = sqrt(C(N, k)) z^k c^N
        let n = 9;
        let z = c(0.6, -0.3);
        let norm = (1.0 + z.norm_sqr()).sqrt();
        let single = [c(1.0 / norm, 0.0), z / norm];
        let mut full = vec![c(1.0, 0.0)];
        for _ in 0..n {
            let mut next = vec![c(0.0, 0.0); full.len() * 2];
            for (i, a) in full.iter().enumerate() {
                next[2 * i] = a * single[0];
                next[2 * i + 1] = a * single[1];
            }
            full = next;
        }
        let acs = atomic_coherent_state(n, z).unwrap();
        for k in 0..=n {
            // symmetric Dicke vector: sum over bit strings with k ones / sqrt(C(N, k))
            let mut amp = c(0.0, 0.0);
            let mut count = 0usize;
            for (idx, a) in full.iter().enumerate() {
                if (idx as u32).count_ones() as usize == k {
                    amp += a;
                    count += 1;
                }
            }
            amp /= (count as f64).sqrt();
            assert!((amp - acs.amplitudes()[k]).norm() < 1e-14);
        }
    }

    #[test]
    fn hp_embed_examples() {
        let f1 = SingleModeState::fock(1, 5).unwrap();
        let d = hp_embed(&f1, 100).unwrap();
        assert_eq!(d.amplitudes()[1], c(1.0, 0.0));
        let coh = SingleModeState::from_vector(crate::fock::coherent_amplitudes(c(5.0, 0.0), 60)).unwrap();
        assert!(matches!(hp_embed(&coh, 40), Err(Error::Support { .. })));
    }

    #[test]
    fn number_state_ladder_expectation() {
        let n_big = 30;
        let ops = spin_matrices(n_big).unwrap();
        for n in 0..8 {
            let d = hp_embed(&SingleModeState::fock(n, 10).unwrap(), n_big).unwrap();
            let v = d.amplitudes();
            let val = (v.adjoint() * &ops.s_plus * &ops.s_minus * v)[(0, 0)].re;
            assert!((val - (n * (n_big - n + 1)) as f64).abs() < 1e-10);
        }
    }

    #[test]
    fn dicke_mandel_examples() {
        assert_eq!(dicke_mandel_violation(&DickeState::ground(10).unwrap()), 0.0);
        let d = hp_embed(&SingleModeState::fock(1, 4).unwrap(), 100).unwrap();
        assert!((dicke_mandel_violation(&d) - 1.0).abs() < 1e-12);
        let coh = pure_state_from_spec(&StateSpec::coherent(c(1.0, 0.0)), 30).unwrap();
        let d = hp_embed(&coh, 1000).unwrap();
        assert!(dicke_mandel_violation(&d).abs() < 5.0 / 1000.0);
    }

    #[test]
    fn hz_schwinger_examples() {
        let d = hp_embed(&SingleModeState::fock(1, 4).unwrap(), 10).unwrap();
        assert_eq!(hz_schwinger_violation(&d, 2, 2).unwrap(), 0.0);
        assert!(matches!(hz_schwinger_violation(&d, 11, 1), Err(Error::Dimension(_))));
    }

    #[test]
    fn hz_schwinger_against_dense_two_mode() {
        // brute force on the full (n_g, n_e) product space
        let n = 4;
        let a = atomic_coherent_state(n, c(0.5, 0.0)).unwrap();
        let b = atomic_coherent_state(n, c(-0.5, 0.0)).unwrap();
        let sup = DickeState::new(n, a.amplitudes() + b.amplitudes()).unwrap();
        let d = n + 1;
        let mut cm = DMatrix::<C64>::zeros(d, d);
        for k in 1..d {
            cm[(k - 1, k)] = C64::from((k as f64).sqrt());
        }
        let cdm = cm.adjoint();
        let mut psi = DVector::<C64>::zeros(d * d);
        for k in 0..=n {
            psi[(n - k) * d + k] = sup.amplitudes()[k];
        }
        for (m, nn) in [(1, 1), (2, 2), (1, 2), (3, 1)] {
            let cg_m = cm.pow(m as u32);
            let ce_dn = cdm.pow(nn as u32);
            let first = cg_m.kronecker(&ce_dn);
            let second = (cdm.pow(m as u32) * &cg_m).kronecker(&(&ce_dn * cm.pow(nn as u32)));
            let lhs = psi.dotc(&(first * &psi)).norm_sqr();
            let rhs = psi.dotc(&(second * &psi)).re;
            let v = hz_schwinger_violation(&sup, m, nn).unwrap();
            assert!((v - (lhs - rhs)).abs() < 1e-12, "(m, n) = ({m}, {nn})");
        }
    }

    #[test]
    fn hz_schwinger_fires_on_acs_first_order() {
        // closed form for a binomial excitation distribution: N p (1 - p)
        let n = 12;
        let z = c(0.8, 0.3);
        let p = z.norm_sqr() / (1.0 + z.norm_sqr());
        let acs = atomic_coherent_state(n, z).unwrap();
        let v = hz_schwinger_violation(&acs, 1, 1).unwrap();
        assert!((v - n as f64 * p * (1.0 - p)).abs() < 1e-10);
        assert!(hz_schwinger_violation(&acs, 1, 2).unwrap() <= 0.0);
    }

    #[test]
    fn schwinger_identity() {
        for n_max in [4, 6, 10, 20] {
            let (a, b) = schwinger_identity_deviations(n_max).unwrap();
            assert!(a < 1e-12 && b < 1e-12, "n_max = {n_max}: {a} {b}");
        }
        assert!(schwinger_identity_check(3).is_err());
    }

    #[test]
    fn schwinger_identity_orthonormal_representation() {
        // the sqrt-valued matrices only hold it up to a few ulp of entries ~ n_max^4
        for n_max in [6, 10, 20] {
            let d = n_max + 1;
            let mut c = DMatrix::<C64>::zeros(d, d);
            for n in 1..d {
                c[(n - 1, n)] = C64::from((n as f64).sqrt());
            }
            let (a, b) = identity_deviations(&c, &c.adjoint(), n_max);
            let scale = (n_max * n_max * n_max * n_max) as f64;
            assert!(a / scale < 1e-15 && b / scale < 1e-15, "n_max = {n_max}: {a} {b}");
        }
    }

    #[test]
    fn schwinger_splus_matches_dicke_ladder() {
        let n = 7;
        let ops = spin_matrices(n).unwrap();
        for k in 0..n {
            // c_e^dag c_g |N - k, k> = sqrt((N - k)(k + 1)) |N - k - 1, k + 1>
            let val = (((n - k) * (k + 1)) as f64).sqrt();
            assert!((ops.s_plus[(k + 1, k)].re - val).abs() < 1e-14);
        }
    }

    #[test]
    fn xi2_examples() {
        let g = DickeState::ground(20).unwrap();
        let xi = spin_squeezing_xi2(&g, &SpinDirection::X, &SpinDirection::Y, &SpinDirection::Z).unwrap();
        assert!((xi - 1.0).abs() < 1e-12);
        let bad = SpinDirection::normalized([1.0, 1.0, 0.0]).unwrap();
        assert!(matches!(
            spin_squeezing_xi2(&g, &SpinDirection::X, &bad, &SpinDirection::Z),
            Err(Error::Geometry(_))
        ));
        assert!(matches!(
            spin_squeezing_xi2(&g, &SpinDirection::Z, &SpinDirection::X, &SpinDirection::Y),
            Err(Error::DegenerateDenominator(_))
        ));
        assert!(SpinDirection::new([1.0, 1.0, 0.0]).is_err());
    }

    #[test]
    fn acs_in_mean_frame_is_unsqueezed() {
        let acs = atomic_coherent_state(50, c(0.4, 0.7)).unwrap();
        let m = acs.mean_spin();
        let n2 = SpinDirection::normalized(m).unwrap();
        let e1 = SpinDirection::normalized(cross(&n2.as_array(), &[0.0, 0.0, 1.0])).unwrap();
        let e3 = SpinDirection::normalized(cross(&n2.as_array(), &e1.as_array())).unwrap();
        let xi = spin_squeezing_xi2(&acs, &e1, &n2, &e3).unwrap();
        assert!((xi - 1.0).abs() < 1e-10);
        let xi = spin_squeezing_xi2(&acs, &e3, &n2, &e1).unwrap();
        assert!((xi - 1.0).abs() < 1e-10);
    }

    #[test]
    fn optimal_squeezing_examples() {
        let g = DickeState::ground(30).unwrap();
        assert!((optimal_spin_squeezing(&g).unwrap().xi2 - 1.0).abs() < 1e-12);
        let acs = atomic_coherent_state(40, c(0.3, 0.0)).unwrap();
        assert!((optimal_spin_squeezing(&acs).unwrap().xi2 - 1.0).abs() < 1e-9);
        let zero = DickeState::new(2, DVector::from_vec(vec![c(0.0, 0.0), c(1.0, 0.0), c(0.0, 0.0)])).unwrap();
        assert!(matches!(optimal_spin_squeezing(&zero), Err(Error::DegenerateMeanSpin(_))));
    }

    #[test]
    fn optimal_squeezing_is_phase_covariant() {
        let n = 500;
        let sq0 = pure_state_from_spec(&StateSpec::SqueezedVacuum { r_sq: 0.5, phase: 0.0 }, 40).unwrap();
        let sq1 = pure_state_from_spec(
            &StateSpec::SqueezedVacuum { r_sq: 0.5, phase: std::f64::consts::FRAC_PI_2 },
            40,
        )
        .unwrap();
        let o0 = optimal_spin_squeezing(&hp_embed(&sq0, n).unwrap()).unwrap();
        let o1 = optimal_spin_squeezing(&hp_embed(&sq1, n).unwrap()).unwrap();
        assert!((o0.xi2 - o1.xi2).abs() < 1e-9);
        let a0 = o0.n1.as_array();
        let a1 = o1.n1.as_array();
        let ang0 = a0[1].atan2(a0[0]);
        let ang1 = a1[1].atan2(a1[0]);
        let diff = (ang1 - ang0).rem_euclid(std::f64::consts::PI);
        let d = diff.min(std::f64::consts::PI - diff);
        assert!((d - std::f64::consts::FRAC_PI_4).abs() < 1e-6, "{diff}");
    }

    #[test]
    fn dicke_json_shape() {
        let s = atomic_coherent_state(2, c(1.0, 0.0)).unwrap();
        let text = serde_json::to_string(&s).unwrap();
        assert!(text.starts_with(r#"{"N":2,"amplitudes":[{"re":0.5"#));
        let back: DickeState = serde_json::from_str(&text).unwrap();
        assert!((back.amplitudes() - s.amplitudes()).camax() < 1e-15);
        assert!(serde_json::from_str::<DickeState>(r#"{"N":2,"amplitudes":[{"re":1,"im":0}]}"#).is_err());
        let d: SpinDirection = serde_json::from_str("[0.0, 1.0, 0.0]").unwrap();
        assert_eq!(d, SpinDirection::Y);
        assert!(serde_json::from_str::<SpinDirection>("[0.0, 2.0, 0.0]").is_err());
    }
}
