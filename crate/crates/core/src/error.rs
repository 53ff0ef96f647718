use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Too much probability sits in the top Fock levels for moments to be trusted.
    #[error("truncation inadequate: tail mass {tail_mass:.3e} >= threshold {threshold:.3e} at dim {dim}")]
    Truncation { tail_mass: f64, threshold: f64, dim: usize },

    #[error("invalid state spec: {0}")]
    InvalidSpec(String),

    #[error("dimension error: {0}")]
    Dimension(String),

    /// A populated total-number block does not fit inside both modes.
    #[error("beam splitter block overflow: populated block with {total} photons exceeds limit {limit}")]
    BlockOverflow { total: usize, limit: usize },

    #[error("degenerate beam splitter: t*r = {0:.3e} < 1e-6")]
    DegenerateBs(f64),

    #[error("invalid beam splitter parameters: {0}")]
    InvalidParams(String),

    /// Fock amplitude above the Dicke ladder top.
    #[error("support error: amplitude {amplitude:.3e} at Fock level {level} exceeds N = {n_particles}")]
    Support { level: usize, amplitude: f64, n_particles: usize },

    #[error("directions not mutually orthogonal unit vectors: {0}")]
    Geometry(String),

    #[error("degenerate denominator: <S_n2>^2 + <S_n3>^2 = {0:.3e}")]
    DegenerateDenominator(f64),

    #[error("degenerate mean spin: |<S>| = {0:.3e}")]
    DegenerateMeanSpin(f64),

    #[error("invalid state: {0}")]
    InvalidState(String),

    #[error("config error: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// Numerical-precondition failures, as opposed to malformed input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::Truncation { .. }
                | Error::Support { .. }
                | Error::BlockOverflow { .. }
                | Error::DegenerateBs(_)
                | Error::DegenerateDenominator(_)
                | Error::DegenerateMeanSpin(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
