//! Inspection solvers for sites that host several user populations at once.
//!
//! Each location's return on inspection is a jumpy, non-concave curve: every
//! population switches from defaulting to complying at its own effort
//! threshold. The solvers here replace each curve by its monotone concave
//! upper approximation, merge all segments into one marginal-value queue, and
//! spend the budget down that queue:
//!
//! - [`greedy_revenue_het`] targets collected fines. It only ever takes whole
//!   segments and stops at the first one it cannot afford, so allocations land
//!   exactly on value-function breakpoints.
//! - [`greedy_payoff_het`] targets collected payments. It fills the last
//!   segment partially and keeps the budget fully utilised.
//!
//! Both compare their sweep against the best single-location plan and return
//! the better of the two, which makes the result at least half of the
//! optimum; `bound` carries twice the returned value as the matching
//! optimality ceiling, and the `mcua_bound` diagnostic records the (usually
//! tighter) concave-relaxation optimum.

mod solver;

pub use solver::{greedy_payoff_het, greedy_revenue_het};
