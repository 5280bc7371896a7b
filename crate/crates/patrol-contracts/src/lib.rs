//! The revenue-share contract game.
//!
//! A payment-maximizing principal offers a revenue-maximizing enforcement
//! administrator a share `alpha` of the payments collected. The administrator
//! then allocates inspection effort to maximize its combined take — fines
//! plus the offered payment share — and users react as usual. The principal
//! keeps `(1 − alpha)` of the payments and picks the share that maximizes
//! that remainder.
//!
//! - [`contract_greedy`] computes the administrator's allocation for one
//!   share: an affordability-aware density fill scored under the combined
//!   objective, backed by a best-single-location arm, guaranteeing at least
//!   half the administrator's optimum.
//! - [`contract_greedy_unadjusted`] is the comparison variant that scores
//!   sites by their full deterrence value even when the budget cannot reach
//!   the deterrence threshold; it carries no approximation guarantee.
//! - [`dense_sample`] sweeps a share grid with [`contract_greedy`] and picks
//!   the principal's best share; [`dense_sample_oracle`] does the same with
//!   exact administrator responses, at exhaustive-search cost.
//!
//! Guarantees hold for single-population locations under certain detection;
//! the solvers enforce those preconditions.

mod greedy;
mod outcome;
mod sample;

pub use greedy::{contract_greedy, contract_greedy_unadjusted};
pub use outcome::ContractOutcome;
pub use sample::{dense_sample, dense_sample_oracle};

/// Ways a contract computation can be rejected.
#[derive(Debug, thiserror::Error)]
pub enum ContractError {
    /// The contract game is defined for one user population per location.
    #[error(
        "location `{id}` has {count} user types; the contract game handles \
         one population per location"
    )]
    MultiTypeLocation { id: String, count: usize },
    /// The guarantees require detection to be certain.
    #[error("the contract game requires certain detection, got probability {value}")]
    UncertainDetection { value: f64 },
    /// A parameter is outside its valid range.
    #[error("parameter `{name}` is invalid: {reason}")]
    InvalidParameter { name: &'static str, reason: String },
    /// The exact-response sweep exceeded the exhaustive-search limits.
    #[error(transparent)]
    Oracle(#[from] patrol_oracles::OracleError),
}

pub(crate) fn require_contract_instance(
    instance: &patrol_core::Instance,
) -> Result<(), ContractError> {
    for location in &instance.locations {
        if location.types.len() != 1 {
            return Err(ContractError::MultiTypeLocation {
                id: location.id.clone(),
                count: location.types.len(),
            });
        }
    }
    if (instance.deter_prob - 1.0).abs() > patrol_core::TOLERANCE {
        return Err(ContractError::UncertainDetection {
            value: instance.deter_prob,
        });
    }
    Ok(())
}

pub(crate) fn check_alpha(alpha: f64) -> Result<(), ContractError> {
    if !(alpha.is_finite() && (0.0..=1.0).contains(&alpha)) {
        return Err(ContractError::InvalidParameter {
            name: "alpha",
            reason: format!("the payment share must lie in [0, 1], got {alpha}"),
        });
    }
    Ok(())
}
