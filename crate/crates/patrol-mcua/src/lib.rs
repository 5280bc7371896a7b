//! Monotone concave upper approximations (MCUA) of per-location value
//! functions.
//!
//! A location's revenue and payoff as functions of its inspection level are
//! piecewise linear with breaks at the type thresholds — revenue rises along
//! rays through the origin and drops just past each threshold, payoff rises
//! with partial-recovery slope and jumps at each threshold. Neither is
//! concave, so marginal-value sweeps cannot consume them directly. This
//! crate computes the pointwise-smallest continuous, concave, nondecreasing
//! function dominating each value function on `[0, t_l]` and emits it as
//! ordered linear segments that greedy sweeps can allocate through.

mod segments;
mod value_function;

pub use segments::{build_mcua, eval_mcua, Mcua, Segment};
pub use value_function::{location_value_function, Breakpoint, ValueFunction, ValueObjective};

use thiserror::Error;

/// Failure modes of value-function construction and evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum McuaError {
    /// A value function needs at least one user type.
    #[error("location `{id}` has no user types")]
    NoTypes { id: String },
    /// The domain endpoint must be a usable inspection level.
    #[error("domain endpoint must lie in (0, 1], got {t}")]
    InvalidDomain { t: f64 },
    /// Evaluation below zero is undefined.
    #[error("inspection level must be nonnegative, got {sigma}")]
    NegativeSigma { sigma: f64 },
}
