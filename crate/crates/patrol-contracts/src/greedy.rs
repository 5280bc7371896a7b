//! Per-share administrator solver.

use crate::{check_alpha, require_contract_instance, ContractError, ContractOutcome};
use patrol_core::{
    contract_objective, location_value, threshold, Instance, ObjectiveMode, Strategy, TOLERANCE,
};
use patrol_homogeneous::single_location_best;

/// How a site is scored for the density ordering.
#[derive(Clone, Copy)]
enum Scoring {
    /// Score what the budget can actually buy: sites whose deterrence
    /// threshold exceeds the budget are valued at their defaulting take.
    Achievable,
    /// Score the full deterrence-point value regardless of affordability —
    /// the comparison variant, which can chase sites it cannot finish.
    DeterrencePoint,
}

fn run(instance: &Instance, alpha: f64, scoring: Scoring) -> ContractOutcome {
    let mode = ObjectiveMode::Contract(alpha);

    struct Site<'a> {
        id: &'a str,
        tau: f64,
        density: f64,
    }
    let mut sites: Vec<Site> = instance
        .locations
        .iter()
        .map(|loc| {
            let tau = threshold(&loc.types[0], instance.fine, instance.deter_prob);
            let spend = match scoring {
                Scoring::Achievable => instance.budget.min(tau),
                Scoring::DeterrencePoint => tau,
            };
            let density = if spend <= 0.0 {
                0.0
            } else {
                location_value(loc, instance.fine, instance.deter_prob, mode, spend) / spend
            };
            Site {
                id: &loc.id,
                tau,
                density,
            }
        })
        .collect();
    sites.sort_by(|a, b| b.density.partial_cmp(&a.density).expect("finite densities"));

    let mut strategy = Strategy::zeros(instance);
    let mut remaining = instance.budget;
    for site in &sites {
        let take = remaining.min(site.tau);
        if take <= TOLERANCE {
            continue;
        }
        strategy.set(site.id, take);
        remaining -= take;
    }

    let greedy_value =
        contract_objective(instance, &strategy, alpha).expect("strategy is aligned");
    let single = single_location_best(instance, mode);

    let chosen = if single.objective_value > greedy_value + TOLERANCE {
        single.strategy
    } else {
        strategy
    };
    ContractOutcome::from_strategy(instance, alpha, chosen)
}

/// Administrator's allocation for payment share `alpha`: a density fill over
/// sites scored by what the budget can achieve there under the combined
/// fines-plus-share objective, backed by the best single-location plan. The
/// better candidate (by the administrator's combined take) is returned; it
/// collects at least half the administrator's optimum.
///
/// Requires one user population per location and certain detection.
pub fn contract_greedy(instance: &Instance, alpha: f64) -> Result<ContractOutcome, ContractError> {
    require_contract_instance(instance)?;
    check_alpha(alpha)?;
    Ok(run(instance, alpha, Scoring::Achievable))
}

/// Comparison variant of [`contract_greedy`] that scores every site at its
/// deterrence-point value even when the budget cannot reach the deterrence
/// threshold. Kept for diagnosing how much the affordability adjustment
/// matters; carries no approximation guarantee.
pub fn contract_greedy_unadjusted(
    instance: &Instance,
    alpha: f64,
) -> Result<ContractOutcome, ContractError> {
    require_contract_instance(instance)?;
    check_alpha(alpha)?;
    Ok(run(instance, alpha, Scoring::DeterrencePoint))
}
