//! Finite-N sweeps and rank comparisons checking the single-mode limits.
//!
//! The beam-splitter transfer of the N-particle excitation mode needs no
//! separate code path: the Holstein-Primakoff image fed to [`apply_bs`] *is*
//! the `c_e` mode of the ensemble, so [`rank_equivalence`] exercises it directly.
//!
//! The `1/N` rates of the margin sweeps and the `1/N^2` rate of the ACS
//! infidelity checked by the tests are an observed property of these
//! observables, not something the underlying limits promise.

use std::time::Instant;

use nalgebra::DMatrix;
use num_complex::Complex64 as C64;
use rayon::prelude::*;

use crate::beam_splitter::{apply_bs, embed_with_vacuum, schmidt_analysis, BSParams, DEFAULT_SCHMIDT_THRESHOLD};
use crate::criteria::mandel_violation;
use crate::dicke::{atomic_coherent_state, dicke_mandel_violation, hp_embed, spin_squeezing_xi2, SpinDirection};
use crate::error::{Error, Result};
use crate::fock::{coherent_amplitudes, pure_state_from_spec, quadrature_variance, StateSpec};
use crate::math::log_log_slope;

#[derive(Clone, Debug, PartialEq)]
pub struct SweepRecord {
    pub n_particles: usize,
    pub finite_n_value: f64,
    pub limit_value: f64,
    pub abs_error: f64,
    pub runtime_ms: f64,
}

impl SweepRecord {
    fn new(n_particles: usize, finite_n_value: f64, limit_value: f64, started: Instant) -> Self {
        Self {
            n_particles,
            finite_n_value,
            limit_value,
            abs_error: (finite_n_value - limit_value).abs(),
            runtime_ms: started.elapsed().as_secs_f64() * 1e3,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RankRecord {
    pub r_input: usize,
    pub schmidt_rank: usize,
    pub acs_gram_rank: usize,
    /// `sigma_r / sigma_1` at the input rank `r`, smaller of the two spectra.
    pub min_singular_value_ratio: f64,
}

fn sweep<F>(n_values: &[usize], eval: F) -> Result<Vec<SweepRecord>>
where
    F: Fn(usize) -> Result<SweepRecord> + Sync,
{
    if n_values.is_empty() {
        return Err(Error::Config("empty N list".into()));
    }
    let mut out: Vec<SweepRecord> = n_values.par_iter().map(|&n| eval(n)).collect::<Result<_>>()?;
    out.sort_by_key(|r| r.n_particles);
    Ok(out)
}

/// `N^2`-normalized spin Mandel margin of the embedded state against the
/// single-mode Mandel margin.
pub fn sweep_hz_to_mandel(spec: &StateSpec, dim: usize, n_values: &[usize]) -> Result<Vec<SweepRecord>> {
    let psi = pure_state_from_spec(spec, dim)?;
    let limit = mandel_violation(&psi)?;
    sweep(n_values, |n| {
        let started = Instant::now();
        let finite = dicke_mandel_violation(&hp_embed(&psi, n)?);
        Ok(SweepRecord::new(n, finite, limit, started))
    })
}

/// `xi^2` in the `(x, y, z)` frame against `2 Var(x_0)`.
pub fn sweep_xi2_to_squeezing(spec: &StateSpec, dim: usize, n_values: &[usize]) -> Result<Vec<SweepRecord>> {
    let psi = pure_state_from_spec(spec, dim)?;
    let limit = 2.0 * quadrature_variance(&psi, 0.0);
    sweep(n_values, |n| {
        let started = Instant::now();
        let d = hp_embed(&psi, n)?;
        let xi2 = spin_squeezing_xi2(&d, &SpinDirection::X, &SpinDirection::Y, &SpinDirection::Z)?;
        Ok(SweepRecord::new(n, xi2, limit, started))
    })
}

/// Overlap of `|alpha>` with the Fock read-out of `|N/2, z = alpha / sqrt(N)>`.
pub fn acs_fidelity(alpha: C64, n_particles: usize) -> Result<f64> {
    let z = alpha / (n_particles as f64).sqrt();
    let acs = atomic_coherent_state(n_particles, z)?;
    let coh = coherent_amplitudes(alpha, n_particles + 1);
    Ok(coh.dotc(acs.amplitudes()).norm_sqr())
}

pub fn acs_fidelity_sweep(alpha: C64, n_values: &[usize]) -> Result<Vec<SweepRecord>> {
    sweep(n_values, |n| {
        let started = Instant::now();
        Ok(SweepRecord::new(n, acs_fidelity(alpha, n)?, 1.0, started))
    })
}

/// `r` coherent amplitudes spaced evenly on a circle.
pub fn circle_amplitudes(r: usize, radius: f64) -> Vec<C64> {
    (0..r)
        .map(|j| C64::from_polar(radius, 2.0 * std::f64::consts::PI * j as f64 / r as f64))
        .collect()
}

pub fn rank_equivalence(r: usize, radius: f64, params: &BSParams, n_particles: usize, dim: usize) -> Result<RankRecord> {
    rank_equivalence_with_threshold(r, radius, params, n_particles, dim, DEFAULT_SCHMIDT_THRESHOLD)
}

/// Schmidt rank of the splitter output for an `r`-component circle cat, and the
/// numerical rank of the matching family of atomic coherent states.
pub fn rank_equivalence_with_threshold(
    r: usize,
    radius: f64,
    params: &BSParams,
    n_particles: usize,
    dim: usize,
    threshold: f64,
) -> Result<RankRecord> {
    if r == 0 {
        return Err(Error::Config("r must be at least 1".into()));
    }
    if n_particles < r {
        return Err(Error::Config(format!("N = {n_particles} must be at least r = {r}")));
    }
    let alphas = circle_amplitudes(r, radius);
    let cat = pure_state_from_spec(&StateSpec::cat(&alphas), dim)?;
    let out = apply_bs(&embed_with_vacuum(&cat, dim)?, params)?;
    let schmidt = schmidt_analysis(&out, threshold);

    let scale = (n_particles as f64).sqrt();
    let mut factor = DMatrix::<C64>::zeros(n_particles + 1, r);
    for (j, a) in alphas.iter().enumerate() {
        let acs = atomic_coherent_state(n_particles, a / scale)?;
        factor.set_column(j, acs.amplitudes());
    }
    let mut gram_sv: Vec<f64> = factor.svd(false, false).singular_values.iter().copied().collect();
    gram_sv.sort_by(|a, b| b.total_cmp(a));
    let acs_gram_rank = gram_sv.iter().filter(|&&s| s > threshold).count();

    let ratio = |sv: &[f64]| -> f64 { sv.get(r - 1).map_or(0.0, |s| s / sv[0]) };
    Ok(RankRecord {
        r_input: r,
        schmidt_rank: schmidt.rank,
        acs_gram_rank,
        min_singular_value_ratio: ratio(&schmidt.singular_values).min(ratio(&gram_sv)),
    })
}

/// Log-log slope of `abs_error` against `N`; `None` if any error is zero.
pub fn error_slope(records: &[SweepRecord]) -> Option<f64> {
    let xs: Vec<f64> = records.iter().map(|r| r.n_particles as f64).collect();
    let ys: Vec<f64> = records.iter().map(|r| r.abs_error).collect();
    log_log_slope(&xs, &ys)
}
