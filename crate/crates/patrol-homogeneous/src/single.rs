//! Best strategy that concentrates the whole inspection budget on a single
//! location.

use patrol_core::{
    location_breakpoints, location_value, objective, Branch, Instance, ObjectiveMode,
    SolveResult, Strategy, TOLERANCE,
};

/// Finds the best strategy that spends on exactly one location.
///
/// For each location the candidate efforts are its response breakpoints (up
/// to the affordable cap `min(budget, 1)`) plus the cap itself; each is
/// valued under `mode` with every other location left uninspected. For the
/// collected-payoff objective this captures the jump at the deterrence
/// threshold: an affordable threshold earns the full payoff, while an
/// unaffordable one earns only the defaulting trickle at the cap. Ties are
/// broken toward the smaller effort, then the earlier location in input
/// order.
///
/// Works on any instance (multi-population locations included) and is used
/// by the greedy payoff solvers as a safety arm. No optimality bound is
/// claimed, so `bound` is `None`.
pub fn single_location_best(instance: &Instance, mode: ObjectiveMode) -> SolveResult {
    let cap = instance.budget.min(1.0);

    let mut best: Option<(usize, f64, f64)> = None; // (location index, effort, value)
    for (index, loc) in instance.locations.iter().enumerate() {
        let mut candidates: Vec<f64> = location_breakpoints(loc, instance.fine, instance.deter_prob)
            .into_iter()
            .filter(|&bp| bp <= cap + TOLERANCE)
            .map(|bp| bp.min(cap))
            .collect();
        candidates.push(cap);
        candidates.sort_by(|a, b| a.partial_cmp(b).unwrap());
        candidates.dedup_by(|a, b| (*a - *b).abs() <= TOLERANCE);

        for &sigma in &candidates {
            let value =
                location_value(loc, instance.fine, instance.deter_prob, mode, sigma);
            let better = match best {
                None => true,
                Some((_, best_sigma, best_value)) => {
                    value > best_value + TOLERANCE
                        || ((value - best_value).abs() <= TOLERANCE
                            && sigma < best_sigma - TOLERANCE)
                }
            };
            if better {
                best = Some((index, sigma, value));
            }
        }
    }

    let (index, sigma, _) = best.expect("instances always hold at least one location");
    let mut strategy = Strategy::zeros(instance);
    let id = instance.locations[index].id.clone();
    strategy.set(&id, sigma);
    let value = objective(instance, &strategy, mode)
        .expect("strategy is aligned with the instance");
    SolveResult {
        strategy,
        objective_value: value,
        branch: Branch::SingleLocationBranch,
        diagnostics: vec![(id, sigma)],
        bound: None,
    }
}
