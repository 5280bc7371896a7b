//! The result of solving the administrator's problem at one payment share.

use patrol_core::{contract_objective, payoff_under, Instance, ObjectiveMode, Strategy};

/// Allocation and accounting for one payment share.
#[derive(Debug, Clone, PartialEq)]
pub struct ContractOutcome {
    /// Payment share offered to the administrator.
    pub alpha: f64,
    /// The administrator's inspection allocation.
    pub strategy: Strategy,
    /// The administrator's combined take: fines plus `alpha` times payments.
    pub admin_objective: f64,
    /// Payments collected, with threshold ties resolved the way the
    /// administrator under this contract would resolve them.
    pub payoff: f64,
    /// What the principal keeps: `(1 − alpha) · payoff`.
    pub principal_objective: f64,
}

impl ContractOutcome {
    /// Evaluates a strategy's accounting under the share `alpha`.
    pub(crate) fn from_strategy(instance: &Instance, alpha: f64, strategy: Strategy) -> Self {
        let admin_objective = contract_objective(instance, &strategy, alpha)
            .expect("strategy is aligned with the instance");
        let payoff = payoff_under(instance, &strategy, ObjectiveMode::Contract(alpha))
            .expect("strategy is aligned with the instance");
        ContractOutcome {
            alpha,
            strategy,
            admin_objective,
            payoff,
            principal_objective: (1.0 - alpha) * payoff,
        }
    }
}
