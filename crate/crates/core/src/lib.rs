//! Single-mode nonclassicality criteria in a truncated Fock space, cross-checked
//! through two routes: feeding the state into a beam splitter and reading off
//! two-mode entanglement, and embedding it in a collective spin of `N` two-level
//! particles, where the single-mode criteria reappear as `N -> infinity` limits.
//!
//! Runnable walkthroughs live in `examples/`:
//!
//! | example | capability |
//! |---|---|
//! | `fock_states` | state construction, moments, truncation guard |
//! | `criteria` | Mandel, higher-order, first-order and squeezing margins |
//! | `beam_splitter` | splitter output, Schmidt decomposition, two-mode HZ |
//! | `potential` | entanglement potential of squeezed vacuum |
//! | `dicke_spin` | atomic coherent states, embedding, spin squeezing |
//! | `hz_to_mandel` | finite-`N` spin Mandel margin against its limit |
//! | `squeezing_sweep` | `xi^2` against twice the quadrature variance |
//! | `rank_equivalence` | Schmidt rank vs ACS Gram rank for cats |
//! | `acs_fidelity` | ACS read-out converging to a coherent state |

pub mod beam_splitter;
pub mod cli;
pub mod criteria;
pub mod dicke;
pub mod error;
pub mod experiments;
pub mod fock;
pub mod io;
pub mod math;

pub use num_complex::Complex64 as C64;

pub use beam_splitter::{
    apply_bs, apply_mode_matrix, bs_route_mandel, embed_with_vacuum, entanglement_potential, hz_two_mode_violation,
    output_entropy, schmidt_analysis, verify_mode_transform, BSParams, ModeMatrix, Potential, SchmidtResult,
    SearchConfig, TwoModeState,
};
pub use criteria::{
    evaluate_all, first_order_violation, higher_order_violation, mandel_violation, squeezing_violation, Criterion,
    CriterionReport,
};
pub use dicke::{
    atomic_coherent_state, dicke_mandel_violation, hp_embed, hz_schwinger_violation, optimal_spin_squeezing,
    schwinger_identity_check, spin_squeezing_xi2, DickeState, SpinDirection,
};
pub use error::{Error, Result};
pub use experiments::{
    acs_fidelity_sweep, rank_equivalence, sweep_hz_to_mandel, sweep_xi2_to_squeezing, RankRecord, SweepRecord,
};
pub use fock::{
    min_quadrature_variance, pure_state_from_spec, quadrature_variance, state_from_spec, DensityOperator, ModeState,
    SingleMode, SingleModeState, StateSpec,
};
