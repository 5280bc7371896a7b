//! Fractional-knapsack upper bound on the optimal payoff of single-type
//! instances.
//!
//! Deterring location `l` outright costs its threshold; under budget `R` the
//! affordable level is `t_l = min(R, tau_l)`. The location's payoff at any
//! effort `sigma <= t_l` is at most the proportional share `sigma / t_l` of
//! the payoff achievable at `t_l` (the defaulting trickle is linear and lies
//! below the chord to the deterrence jump). The fractional knapsack with
//! sizes `t_l` and those achievable values therefore upper-bounds every
//! feasible strategy's payoff, including the optimum.

use patrol_core::{location_value, threshold, Instance, ObjectiveMode};

use crate::OracleError;

/// Fractional-knapsack optimum with sizes `t_l = min(R, tau_l)` and values
/// equal to the payoff achievable at `t_l` — the full payment `p_l` when the
/// threshold is affordable, the defaulting trickle at `t_l` otherwise. Sorts
/// by value density descending, fills the budget, and splits the last item
/// fractionally; with a zero budget nothing is achievable and the bound is
/// zero.
///
/// Requires one user type per location. The result is an upper bound on the
/// optimal payoff at every deterrence probability, and twice the greedy
/// payoff solver's value dominates it, which sandwiches the optimum.
pub fn knapsack_lp_bound(instance: &Instance) -> Result<f64, OracleError> {
    let mut items: Vec<(f64, f64)> = Vec::with_capacity(instance.locations.len());
    for loc in &instance.locations {
        if loc.types.len() != 1 {
            return Err(OracleError::NotHomogeneous {
                id: loc.id.clone(),
                count: loc.types.len(),
            });
        }
        let utype = &loc.types[0];
        let t = instance
            .budget
            .min(threshold(utype, instance.fine, instance.deter_prob));
        if t <= 0.0 {
            continue;
        }
        let achievable = location_value(
            loc,
            instance.fine,
            instance.deter_prob,
            ObjectiveMode::Payoff,
            t,
        );
        items.push((t, achievable));
    }
    items.sort_by(|a, b| {
        let ra = a.1 / a.0;
        let rb = b.1 / b.0;
        rb.partial_cmp(&ra).expect("finite densities")
    });
    let mut remaining = instance.budget;
    let mut value = 0.0;
    for (t, p) in items {
        if remaining <= 0.0 {
            break;
        }
        let fill = (remaining / t).min(1.0);
        value += fill * p;
        remaining -= fill * t;
    }
    Ok(value)
}
