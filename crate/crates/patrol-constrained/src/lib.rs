//! Inspection planning under nested allocation quotas.
//!
//! Administrators often cannot spread inspection effort freely: regional
//! rules impose lower and upper bounds on how much effort whole groups of
//! locations may receive (a county cap inside a state cap, per-beat officer
//! quotas, and so on). This crate models those side constraints as a
//! *laminar* family of quota sets — any two sets are nested or disjoint —
//! and plans effort in two stages:
//!
//! 1. a marginal-value sweep over every location's concave upper
//!    approximation, clipping each allocation by the remaining budget and by
//!    every enclosing quota, which fixes an effort budget for each
//!    bottom-layer group;
//! 2. an independent payoff sweep inside each bottom-layer group with the
//!    budget stage 1 assigned to it.
//!
//! Arbitrary (non-laminar) families admit no constant-factor guarantee for
//! this scheme, and even laminar families can pull it below half of the
//! optimum, so [`constrained_greedy`] reports no certified bound. The
//! guarantees that do exist come from two directions: relaxing quotas by one
//! unit per group ([`relax_quotas`]) buys back full or half optimality
//! depending on which layer is relaxed, and lower quotas of at least two per
//! bottom group restore the half guarantee outright. Lower quotas are met
//! first by [`satisfy_lower_bounds`], after which the stage-1 sweep result
//! is final.

mod hierarchy;
mod solver;

pub use hierarchy::{relax_quotas, validate_hierarchy, Hierarchy, RelaxRegime};
pub use solver::{constrained_greedy, satisfy_lower_bounds};

use thiserror::Error;

/// Failure modes of quota validation and constrained planning.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum ConstrainedError {
    /// Two quota sets overlap without one containing the other, so no layer
    /// decomposition exists.
    #[error("quota sets `{first}` and `{second}` overlap without nesting; the family is not a hierarchy")]
    NotNested { first: String, second: String },
    /// A quota set names a location the instance does not have.
    #[error("quota set `{set}` names unknown location `{member}`")]
    UnknownMember { set: String, member: String },
    /// Quota bounds must satisfy `0 <= lower <= upper` with a finite lower.
    #[error("quota set `{set}` has invalid bounds [{lower}, {upper}]")]
    InvalidBounds { set: String, lower: f64, upper: f64 },
    /// A quota over no locations is meaningless.
    #[error("quota set `{set}` has no members")]
    EmptyMembers { set: String },
    /// Set identifiers must be unique within a family.
    #[error("quota set id `{id}` appears more than once")]
    DuplicateId { id: String },
    /// A lower quota cannot be met within the budget and the upper quotas.
    #[error(
        "lower quota of set `{set}` is unsatisfiable: needs {required} but only {capacity} can be placed"
    )]
    InfeasibleLowerBound {
        set: String,
        required: f64,
        capacity: f64,
    },
}
