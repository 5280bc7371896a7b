//! Approximation scheme for the collected-payoff objective on
//! single-population instances.

use patrol_core::{
    objective, Branch, Instance, ObjectiveMode, SolveResult, Strategy, TOLERANCE,
};

use crate::{require_single_type, SolverError};

/// Approximation scheme for the collected-payoff objective.
///
/// Enumerates every way to fully deter a set `S` of at most `m` locations,
/// optionally combined with one extra location inspected at an effort drawn
/// from the grid `{0, delta, 2*delta, ...}` capped at (and always
/// including) that location's deterrence threshold. Each feasible
/// combination — total effort at most `budget + delta` — is completed
/// greedily: remaining locations are visited in descending payoff-per-
/// threshold order and receive their full threshold whenever it still fits,
/// otherwise they are skipped and the scan continues. The best completed
/// strategy wins; enumeration order breaks exact ties deterministically.
///
/// The returned strategy may spend up to `delta` more than the instance
/// budget; diagnostics report the spend (`budget_spent`) and the allowance
/// (`budget_limit`). With `delta = 1/(m+1)` and full detection efficacy the
/// result is within a factor `1 - 1/(m+1)` of the optimum *at the original
/// budget*, and `bound` certifies that; for other parameters `bound` is
/// `None`.
///
/// Runs in `O(n^(m+1))` evaluations, so `m` should stay small.
pub fn ptas_payoff(
    instance: &Instance,
    m: usize,
    delta: f64,
) -> Result<SolveResult, SolverError> {
    require_single_type(instance)?;
    if m == 0 {
        return Err(SolverError::InvalidParameter {
            name: "m",
            reason: "must be at least 1".into(),
        });
    }
    if !delta.is_finite() || delta <= 0.0 {
        return Err(SolverError::InvalidParameter {
            name: "delta",
            reason: format!("must be a positive finite number, got {delta}"),
        });
    }

    let n = instance.locations.len();
    let limit = instance.budget + delta;
    let thresholds: Vec<f64> = instance
        .locations
        .iter()
        .map(|loc| patrol_core::threshold(&loc.types[0], instance.fine, instance.deter_prob))
        .collect();

    // Global completion order: payoff per unit of threshold, descending,
    // ties keeping input order.
    let mut completion_order: Vec<usize> = (0..n).collect();
    completion_order.sort_by(|&a, &b| {
        let ra = instance.locations[a].types[0].payoff / thresholds[a];
        let rb = instance.locations[b].types[0].payoff / thresholds[b];
        rb.partial_cmp(&ra).expect("ratios of validated inputs are finite")
    });

    let mut best: Option<(Strategy, f64)> = None;
    let mut candidates = 0usize;

    let mut consider = |used: &[bool], efforts: &[(usize, f64)], spent: f64| {
        let mut strategy = Strategy::zeros(instance);
        let mut alloc: Vec<(usize, f64)> = efforts.to_vec();
        let mut remaining = limit - spent;
        for &idx in &completion_order {
            if used[idx] {
                continue;
            }
            if thresholds[idx] <= remaining + TOLERANCE {
                alloc.push((idx, thresholds[idx]));
                remaining -= thresholds[idx];
            }
        }
        for &(idx, effort) in &alloc {
            strategy.set(&instance.locations[idx].id, effort);
        }
        let value = objective(instance, &strategy, ObjectiveMode::Payoff)
            .expect("strategy is aligned with the instance");
        candidates += 1;
        if best.as_ref().is_none_or(|(_, bv)| value > bv + 1e-15) {
            best = Some((strategy, value));
        }
    };

    // Enumerate subsets of at most `m` fully deterred locations (the empty
    // set included), each optionally paired with one grid-inspected extra.
    let mut subset: Vec<usize> = Vec::with_capacity(m);
    let mut used = vec![false; n];
    enumerate_subsets(n, m, 0, &mut subset, &mut |subset: &[usize]| {
        let spent_s: f64 = subset.iter().map(|&i| thresholds[i]).sum();
        if spent_s > limit + TOLERANCE {
            return;
        }
        used.iter_mut().for_each(|u| *u = false);
        for &i in subset {
            used[i] = true;
        }
        let efforts: Vec<(usize, f64)> =
            subset.iter().map(|&i| (i, thresholds[i])).collect();

        consider(&used, &efforts, spent_s);

        for extra in 0..n {
            if used[extra] {
                continue;
            }
            used[extra] = true;
            for sigma in effort_grid(thresholds[extra], delta) {
                let spent = spent_s + sigma;
                if spent > limit + TOLERANCE {
                    break;
                }
                let mut with_extra = efforts.clone();
                with_extra.push((extra, sigma));
                consider(&used, &with_extra, spent);
            }
            used[extra] = false;
        }
    });

    let (strategy, _) = best.expect("the empty combination always yields a candidate");
    let value = objective(instance, &strategy, ObjectiveMode::Payoff)
        .expect("strategy is aligned with the instance");
    let spent = strategy.total();

    let certified = (instance.deter_prob - 1.0).abs() <= TOLERANCE
        && delta + 1e-12 >= 1.0 / (m as f64 + 1.0);
    let bound = certified.then(|| value * (m as f64 + 1.0) / m as f64);

    Ok(SolveResult {
        strategy,
        objective_value: value,
        branch: Branch::BruteForcePair,
        diagnostics: vec![
            ("budget_limit".to_string(), limit),
            ("budget_spent".to_string(), spent),
            ("candidates".to_string(), candidates as f64),
        ],
        bound,
    })
}

/// Grid of efforts `{0, delta, 2*delta, ...}` strictly below the threshold,
/// with the threshold itself always appended.
fn effort_grid(threshold: f64, delta: f64) -> Vec<f64> {
    let mut grid = Vec::new();
    let mut i = 0u64;
    loop {
        let x = i as f64 * delta;
        if x >= threshold - 1e-12 {
            break;
        }
        grid.push(x);
        i += 1;
    }
    grid.push(threshold);
    grid
}

/// Calls `f` with every subset of `{0, .., n-1}` of size at most `max_len`,
/// in increasing-size, lexicographic order (the empty subset first).
fn enumerate_subsets(
    n: usize,
    max_len: usize,
    start: usize,
    current: &mut Vec<usize>,
    f: &mut impl FnMut(&[usize]),
) {
    f(current);
    if current.len() == max_len {
        return;
    }
    for i in start..n {
        current.push(i);
        enumerate_subsets(n, max_len, i + 1, current, f);
        current.pop();
    }
}
