//! Reference solvers ("oracles") for small enforcement-game instances.
//!
//! These exist to validate the fast solvers, not to be fast themselves:
//!
//! - [`structural_oracle`] — exact. Optimal strategies put every location at a
//!   behavior breakpoint except at most one, which spends the residual budget
//!   inside a linear piece; enumerating that family exhaustively finds the
//!   optimum for every objective mode.
//! - [`grid_oracle`] — approximate but constraint-capable: exhaustive search
//!   over per-location grids (step multiples plus all breakpoints) with
//!   branch-and-bound pruning, reporting a certified error term.
//! - [`knapsack_lp_bound`] — a fractional-knapsack upper bound on the optimal
//!   payoff of homogeneous instances.
//!
//! All oracles are deterministic: enumeration order is fixed by the
//! instance's location order, so results are reproducible across runs.

mod grid;
mod knapsack;
mod structural;

pub use grid::{grid_oracle, grid_oracle_capped};
pub use knapsack::knapsack_lp_bound;
pub use structural::{structural_oracle, structural_oracle_capped, OracleLimits};

use thiserror::Error;

/// Failure modes of the reference solvers.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum OracleError {
    /// Instance exceeds an exhaustive-search location cap.
    #[error("instance has {count} locations, exceeding the exhaustive-search cap of {max}")]
    TooManyLocations { count: usize, max: usize },
    /// A location exceeds the per-location type cap.
    #[error("location `{id}` has {count} user types, exceeding the cap of {max}")]
    TooManyTypes {
        id: String,
        count: usize,
        max: usize,
    },
    /// The grid step is not a positive fraction.
    #[error("grid step must lie in (0, 1], got {step}")]
    InvalidStep { step: f64 },
    /// The fractional-knapsack bound only applies to single-type locations.
    #[error("bound requires one user type per location; location `{id}` has {count}")]
    NotHomogeneous { id: String, count: usize },
    /// A quota references a location the instance does not contain.
    #[error("quota `{quota}` references unknown location `{member}`")]
    UnknownQuotaMember { quota: String, member: String },
    /// A quota's bounds are not `0 <= lower <= upper`.
    #[error("quota `{quota}` has invalid bounds [{lower}, {upper}]")]
    InvalidQuotaBounds {
        quota: String,
        lower: f64,
        upper: f64,
    },
    /// No allocation satisfies every quota lower bound within the budget.
    #[error("no allocation satisfies the quota lower bounds within the budget")]
    InfeasibleConstraints,
}
