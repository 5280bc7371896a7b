//! Marginal-value sweeps over concave upper approximations.

use patrol_core::{
    objective, threshold, Branch, Instance, ObjectiveMode, SolveResult, Strategy, TOLERANCE,
};
use patrol_homogeneous::single_location_best;
use patrol_mcua::{build_mcua, location_value_function, Segment, ValueObjective};

/// How the sweep treats a segment it cannot take in full.
#[derive(Clone, Copy, PartialEq, Eq)]
enum FillRule {
    /// Take whole segments only; the first unaffordable one ends the sweep,
    /// possibly leaving budget unspent.
    WholePieceOrStop,
    /// Fill the segment as far as the budget allows and keep going, so the
    /// budget is exhausted whenever the segments can absorb it.
    PartialAndContinue,
}

/// Per-location effort cap for the concave approximation: no more than the
/// budget, and no more than the largest population threshold (beyond which
/// nothing else can be deterred).
fn effort_cap(instance: &Instance, location_index: usize) -> f64 {
    let max_threshold = instance.locations[location_index]
        .types
        .iter()
        .map(|t| threshold(t, instance.fine, instance.deter_prob))
        .fold(0.0f64, f64::max);
    instance.budget.min(max_threshold)
}

/// Builds each location's concave upper approximation over `[0, cap]`.
fn approximations(instance: &Instance, objective: ValueObjective) -> Vec<Vec<Segment>> {
    instance
        .locations
        .iter()
        .enumerate()
        .map(|(index, loc)| {
            let cap = effort_cap(instance, index);
            let vf = location_value_function(loc, instance.fine, instance.deter_prob, objective, cap)
                .expect("validated locations have types and a positive cap");
            build_mcua(&loc.id, &vf)
        })
        .collect()
}

/// Global processing order: every positive-slope segment, steepest first.
/// The sort is stable, so equal slopes keep location input order and, within
/// a location, the concavity-given segment order. Plateau segments are
/// skipped — spending budget on a zero-slope piece can never help.
fn merged_order(per_location: &[Vec<Segment>]) -> Vec<(usize, usize, f64)> {
    let mut order: Vec<(usize, usize, f64)> = Vec::new();
    for (li, segments) in per_location.iter().enumerate() {
        for (si, seg) in segments.iter().enumerate() {
            if seg.slope > 1e-15 {
                order.push((li, si, seg.slope));
            }
        }
    }
    order.sort_by(|a, b| b.2.partial_cmp(&a.2).expect("finite slopes"));
    order
}

/// Optimum of the concave relaxation: spend the budget down the merged
/// queue, filling the last segment fractionally. Because every curve lies
/// below its approximation, this dominates the true optimum.
fn relaxation_optimum(per_location: &[Vec<Segment>], order: &[(usize, usize, f64)], budget: f64) -> f64 {
    let mut remaining = budget;
    let mut value = 0.0;
    for &(li, si, slope) in order {
        if remaining <= 0.0 {
            break;
        }
        let take = remaining.min(per_location[li][si].width);
        value += take * slope;
        remaining -= take;
    }
    value
}

fn solve(instance: &Instance, hull_objective: ValueObjective, mode: ObjectiveMode, rule: FillRule) -> SolveResult {
    if instance.budget <= 0.0 {
        let strategy = Strategy::zeros(instance);
        let value = objective(instance, &strategy, mode)
            .expect("the zero strategy is aligned with the instance");
        return SolveResult {
            strategy,
            objective_value: value,
            branch: Branch::GreedyBranch,
            diagnostics: vec![("mcua_bound".to_owned(), 0.0)],
            bound: Some(2.0 * value),
        };
    }

    let per_location = approximations(instance, hull_objective);
    let order = merged_order(&per_location);
    let relaxation = relaxation_optimum(&per_location, &order, instance.budget);

    let mut strategy = Strategy::zeros(instance);
    let mut trace: Vec<(String, f64)> = Vec::new();
    let mut remaining = instance.budget;
    for &(li, si, _) in &order {
        if remaining <= TOLERANCE {
            break;
        }
        let width = per_location[li][si].width;
        let take = match rule {
            FillRule::WholePieceOrStop => {
                if width > remaining + TOLERANCE {
                    break;
                }
                width.min(remaining)
            }
            FillRule::PartialAndContinue => remaining.min(width),
        };
        if take <= TOLERANCE {
            continue;
        }
        let id = &instance.locations[li].id;
        let current = strategy.get(id).expect("strategy covers every location");
        strategy.set(id, (current + take).min(1.0));
        trace.push((id.clone(), take));
        remaining -= take;
    }

    let greedy_value =
        objective(instance, &strategy, mode).expect("strategy is aligned with the instance");
    let single = single_location_best(instance, mode);

    let (strategy, value, branch, mut diagnostics) =
        if single.objective_value > greedy_value + TOLERANCE {
            (
                single.strategy,
                single.objective_value,
                Branch::SingleLocationBranch,
                single.diagnostics,
            )
        } else {
            (strategy, greedy_value, Branch::GreedyBranch, trace)
        };
    diagnostics.push(("mcua_bound".to_owned(), relaxation));

    // The sweep realises every whole segment it claims (whole-segment
    // prefixes land on points where the approximation meets the true curve),
    // and the best single-location plan covers the one fractional piece the
    // relaxation may add, so twice the better of the two dominates the
    // relaxation optimum — and with it the true optimum.
    let bound = Some(2.0 * value);

    SolveResult {
        strategy,
        objective_value: value,
        branch,
        diagnostics,
        bound,
    }
}

/// Fine-revenue solver for instances whose locations may host several user
/// populations.
///
/// Merges all concave-approximation segments into one steepest-first queue
/// and takes whole segments while they fit, stopping at the first segment
/// wider than the remaining budget — a conservative rule that can leave
/// budget unspent but keeps every allocation on a value-function breakpoint,
/// where the approximation is exact. The better of the sweep and the best
/// single-location plan is returned; twice its value (`bound`) caps the
/// optimum, and the `mcua_bound` diagnostic carries the relaxation optimum.
///
/// Single-population instances do *not* generally reproduce the exact
/// descending-count fill (the whole-segment stop can strand budget that the
/// exact solver would split across sites); the two coincide when the budget
/// covers every threshold or none.
pub fn greedy_revenue_het(instance: &Instance) -> SolveResult {
    solve(
        instance,
        ValueObjective::Revenue,
        ObjectiveMode::Revenue,
        FillRule::WholePieceOrStop,
    )
}

/// Collected-payment solver for instances whose locations may host several
/// user populations.
///
/// Same steepest-first sweep as [`greedy_revenue_het`], but the last segment
/// is filled partially so the whole budget is put to work. The better of the
/// sweep and the best single-location plan is returned and is at least half
/// the optimum; `bound` and `mcua_bound` are as for the revenue solver. On
/// single-population instances the sweep collapses to the affordability-aware
/// density fill of the single-population payoff solver.
pub fn greedy_payoff_het(instance: &Instance) -> SolveResult {
    solve(
        instance,
        ValueObjective::Payoff,
        ObjectiveMode::Payoff,
        FillRule::PartialAndContinue,
    )
}
