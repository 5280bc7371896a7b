//! Core model for threshold-based enforcement games.
//!
//! An administrator patrols a set of locations with a divisible inspection
//! budget. Each location hosts one or more user types `(count, benefit,
//! payoff)`; a user defaults (skips the required payment) whenever the
//! inspection probability at their location is below their indifference
//! threshold and complies otherwise:
//!
//! ```text
//! user utility:   U(sigma, y) = y * [(1 - beta * sigma) * d - sigma * k]
//! threshold:      tau = min(1, d / (beta * d + k))
//! best response:  y = 1  (default)  if sigma < tau
//!                 y = 0  (comply)   if sigma > tau
//!                 tie at sigma = tau broken in the administrator's favor,
//!                 which depends on the objective being maximized
//! ```
//!
//! where `d` is the benefit from defaulting, `k` the fine when caught,
//! `beta` the probability an inspection actually deters/catches, and
//! `sigma` the inspection probability the administrator commits to.
//!
//! Objectives evaluated here (each sums over all location/type pairs):
//!
//! ```text
//! revenue:  sigma * y * k * count                     (fines collected)
//! payoff:   beta*sigma*p + (1 - beta*sigma)*(1-y)*p   (payments recovered)
//! combined: revenue + alpha * payoff                  (contract objective)
//! ```
//!
//! At `beta = 1` the payoff term reduces to the familiar
//! `sigma*p + (1-sigma)*(1-y)*p`: a complying type always pays `p`, while a
//! defaulting type pays only when inspected.
//!
//! This crate is purely the model: instances, strategies, best responses,
//! objective evaluation, strategy validation, and the expected-value
//! flattening of probabilistic type distributions. Solvers and oracles live
//! in sibling crates and all evaluate through these functions, so every
//! reported objective value is an evaluation of the same arithmetic.

mod bayesian;
mod model;
mod objective;
mod quota;
mod response;
mod result;
mod validate;

pub use bayesian::{flatten_bayesian, BayesianLocation, TypeDistribution};
pub use model::{Instance, Location, ModelError, ObjectiveMode, Strategy, UserType};
pub use objective::{
    contract_objective, location_breakpoints, location_value, location_value_above, objective,
    payoff, payoff_under, revenue, revenue_under, EvalError,
};
pub use quota::QuotaSet;
pub use response::{best_response, is_never_deterred, threshold};
pub use result::{Branch, SolveResult};
pub use validate::{validate_strategy, Violation};

/// Absolute tolerance used for every floating-point comparison in the
/// workspace: threshold ties, budget feasibility, quota feasibility, and
/// objective-value assertions all compare against this bound.
pub const TOLERANCE: f64 = 1e-9;
