//! Inspection-effort solvers for instances where every location hosts a
//! single user population.
//!
//! With one population per location the location's response is governed by a
//! single deterrence threshold, which makes fast greedy methods possible:
//!
//! * [`greedy_revenue`] — fills thresholds in descending order of expected
//!   fine volume and is exactly optimal for the fine-revenue objective.
//! * [`greedy_payoff`] — affordability-adjusted bang-per-buck greedy for the
//!   collected-payoff objective, combined with the best single-location
//!   spend; guarantees at least half the optimal payoff.
//! * [`single_location_best`] — best strategy that concentrates all effort
//!   on one location (used as a safety arm by the greedy solvers).
//! * [`ptas_payoff`] — approximation scheme for the payoff objective that
//!   trades an exponential-in-`m` search and a small budget overshoot for a
//!   `1 - 1/(m+1)` guarantee.
//!
//! All solvers return a [`patrol_core::SolveResult`] whose diagnostics
//! record the allocation trace and whose `bound` field carries a certified
//! upper bound on the true optimum where the method provides one.

mod greedy;
mod ptas;
mod single;

pub use greedy::{greedy_payoff, greedy_payoff_naive, greedy_revenue};
pub use ptas::ptas_payoff;
pub use single::single_location_best;

use thiserror::Error;

/// Errors shared by the single-population solvers.
#[derive(Debug, Error, PartialEq)]
pub enum SolverError {
    /// A location carries more than one user population. These solvers rely
    /// on the single-threshold structure; mixed populations need the
    /// mixed-population solvers built on concave upper envelopes.
    #[error(
        "location `{id}` has {count} user types; this solver handles one type per \
         location — use the mixed-population solvers"
    )]
    MultiTypeLocation { id: String, count: usize },
    /// A tuning parameter is outside its valid range.
    #[error("parameter `{name}` is invalid: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
}

/// Checks that every location has exactly one user type.
pub(crate) fn require_single_type(
    instance: &patrol_core::Instance,
) -> Result<(), SolverError> {
    for loc in &instance.locations {
        if loc.types.len() != 1 {
            return Err(SolverError::MultiTypeLocation {
                id: loc.id.clone(),
                count: loc.types.len(),
            });
        }
    }
    Ok(())
}
