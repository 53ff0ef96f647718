//! Single-mode nonclassicality conditions as signed margins.
//!
//! Every function returns `lhs - rhs` of its inequality, so a positive value
//! flags the state as nonclassical by that condition.

use std::fmt;

use crate::error::{Error, Result};
use crate::fock::{min_quadrature_variance, SingleMode};

/// Decision threshold applied to margins unless overridden.
pub const DEFAULT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Criterion {
    Mandel,
    HigherOrder(usize),
    FirstOrder,
    Squeezing,
}

impl Criterion {
    pub fn name(&self) -> &'static str {
        match self {
            Criterion::Mandel => "mandel",
            Criterion::HigherOrder(_) => "higher_order",
            Criterion::FirstOrder => "first_order",
            Criterion::Squeezing => "squeezing",
        }
    }

    pub fn order(&self) -> Option<usize> {
        match self {
            Criterion::HigherOrder(l) => Some(*l),
            Criterion::Mandel => Some(2),
            _ => None,
        }
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Criterion::HigherOrder(l) => write!(f, "higher_order({l})"),
            c => f.write_str(c.name()),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct CriterionReport {
    pub criterion: Criterion,
    pub value: f64,
    pub nonclassical: bool,
    pub tolerance: f64,
}

impl CriterionReport {
    pub fn new(criterion: Criterion, value: f64, tolerance: f64) -> Self {
        Self { criterion, value, nonclassical: value > tolerance, tolerance }
    }
}

/// `|<n>|^2 - <a^dagger^2 a^2>`: positive for sub-Poissonian statistics.
pub fn mandel_violation<S: SingleMode + ?Sized>(state: &S) -> Result<f64> {
    higher_order_violation(state, 2)
}

/// `|<n>|^l - <a^dagger^l a^l>` for `l >= 2`.
pub fn higher_order_violation<S: SingleMode + ?Sized>(state: &S, order: usize) -> Result<f64> {
    if order < 2 {
        return Err(Error::Dimension(format!("higher-order condition needs order >= 2, got {order}")));
    }
    let n = state.moment(1, 1)?;
    let corr = state.moment(order, order)?;
    Ok(n.norm().powi(order as i32) - corr.re)
}

/// `|<a>|^2 - <a^dagger a>`.
///
/// Cauchy-Schwarz makes this non-positive for every state, coherent states
/// sitting exactly on zero; it is evaluated as written all the same.
pub fn first_order_violation<S: SingleMode + ?Sized>(state: &S) -> f64 {
    let mean = state.moment_or_zero(0, 1);
    let n = state.moment_or_zero(1, 1);
    mean.norm_sqr() - n.re
}

/// `1/2 - min_theta Var(x_theta)` together with the minimizing angle in `[0, pi)`.
pub fn squeezing_violation<S: SingleMode + ?Sized>(state: &S) -> (f64, f64) {
    let (var, theta) = min_quadrature_variance(state);
    (0.5 - var, theta)
}

/// Mandel, one higher order, first order and squeezing, in that order.
pub fn evaluate_all<S: SingleMode + ?Sized>(state: &S, order: usize, tolerance: f64) -> Result<Vec<CriterionReport>> {
    Ok(vec![
        CriterionReport::new(Criterion::Mandel, mandel_violation(state)?, tolerance),
        CriterionReport::new(Criterion::HigherOrder(order), higher_order_violation(state, order)?, tolerance),
        CriterionReport::new(Criterion::FirstOrder, first_order_violation(state), tolerance),
        CriterionReport::new(Criterion::Squeezing, squeezing_violation(state).0, tolerance),
    ])
}
