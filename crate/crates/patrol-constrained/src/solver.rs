//! Two-stage quota-constrained payoff planning.

use patrol_core::{
    objective, threshold, Branch, Instance, Location, ObjectiveMode, QuotaSet, SolveResult,
    Strategy, TOLERANCE,
};
use patrol_heterogeneous::greedy_payoff_het;
use patrol_mcua::{build_mcua, location_value_function, Segment, ValueObjective};

use crate::{ConstrainedError, Hierarchy};

/// Live upper-quota bookkeeping over the normalized layer entries.
struct QuotaLedger {
    /// Flattened normalized entries, bottom layer first.
    entries: Vec<QuotaSet>,
    /// Upper-bound headroom left per entry.
    remaining: Vec<f64>,
    /// Per instance location: indices of the entries containing it.
    enclosing: Vec<Vec<usize>>,
}

impl QuotaLedger {
    fn new(instance: &Instance, hierarchy: &Hierarchy) -> Self {
        let entries: Vec<QuotaSet> = hierarchy.layers().iter().flatten().cloned().collect();
        let remaining = entries.iter().map(|e| e.upper).collect();
        let enclosing = instance
            .locations
            .iter()
            .map(|loc| {
                entries
                    .iter()
                    .enumerate()
                    .filter(|(_, e)| e.members.contains(&loc.id))
                    .map(|(i, _)| i)
                    .collect()
            })
            .collect();
        QuotaLedger {
            entries,
            remaining,
            enclosing,
        }
    }

    /// Most that can still go to this location before some enclosing upper
    /// quota binds (infinite when nothing encloses it).
    fn headroom(&self, location: usize) -> f64 {
        self.enclosing[location]
            .iter()
            .map(|&i| self.remaining[i])
            .fold(f64::INFINITY, f64::min)
            .max(0.0)
    }

    /// Tightest enclosing upper bound before any spending; used as the
    /// effort-cap component of the approximation domain.
    fn upper_cap(&self, location: usize) -> f64 {
        self.enclosing[location]
            .iter()
            .map(|&i| self.entries[i].upper)
            .fold(f64::INFINITY, f64::min)
    }

    /// Records spending against every quota enclosing the location.
    fn charge(&mut self, location: usize, amount: f64) {
        for &i in &self.enclosing[location] {
            self.remaining[i] -= amount;
        }
    }
}

/// Largest threshold across a location's populations — effort beyond it
/// deters nobody else.
fn max_threshold(instance: &Instance, location: usize) -> f64 {
    instance.locations[location]
        .types
        .iter()
        .map(|t| threshold(t, instance.fine, instance.deter_prob))
        .fold(0.0f64, f64::max)
}

/// A location's positive-slope payoff-approximation pieces over `[0, cap]`,
/// steepest first, after removing what `consumed` already used up from the
/// steep end. Returns nothing when the cap leaves no usable domain.
fn remaining_segments(
    instance: &Instance,
    location: usize,
    cap: f64,
    consumed: f64,
) -> Vec<Segment> {
    if cap <= TOLERANCE {
        return Vec::new();
    }
    let loc = &instance.locations[location];
    let vf = location_value_function(
        loc,
        instance.fine,
        instance.deter_prob,
        ValueObjective::Payoff,
        cap.min(1.0),
    )
    .expect("validated locations have types and the cap was checked positive");
    let mut segments = build_mcua(&loc.id, &vf);
    let mut eat = consumed;
    segments.retain_mut(|seg| {
        if eat > TOLERANCE {
            let bite = eat.min(seg.width);
            seg.width -= bite;
            eat -= bite;
        }
        seg.width > 1e-12 && seg.slope > 1e-15
    });
    segments
}

/// Marginal-value sweep over all locations: steepest remaining piece first,
/// every take clipped by the remaining budget and by every enclosing quota.
/// `sigma` carries pre-placed effort in and the swept allocation out.
fn stage_one_sweep(
    instance: &Instance,
    ledger: &mut QuotaLedger,
    sigma: &mut [f64],
    mut remaining: f64,
) {
    let per_location: Vec<Vec<Segment>> = (0..instance.locations.len())
        .map(|l| {
            let cap = instance
                .budget
                .min(ledger.upper_cap(l))
                .min(max_threshold(instance, l));
            remaining_segments(instance, l, cap, sigma[l])
        })
        .collect();
    let mut order: Vec<(usize, usize, f64)> = Vec::new();
    for (li, segments) in per_location.iter().enumerate() {
        for (si, seg) in segments.iter().enumerate() {
            order.push((li, si, seg.slope));
        }
    }
    order.sort_by(|a, b| b.2.partial_cmp(&a.2).expect("finite slopes"));

    for &(li, si, _) in &order {
        if remaining <= TOLERANCE {
            break;
        }
        let take = per_location[li][si]
            .width
            .min(remaining)
            .min(ledger.headroom(li));
        if take <= TOLERANCE {
            continue;
        }
        sigma[li] = (sigma[li] + take).min(1.0);
        remaining -= take;
        ledger.charge(li, take);
    }
}

/// Meets every positive lower quota, bottom layer first, spending inside
/// each set along its steepest payoff-approximation pieces and falling back
/// to flat-value padding when the pieces run out, never violating an upper
/// quota or the budget. Returns the resulting pre-allocation.
///
/// When every lower quota is zero the result is the all-zeros strategy.
///
/// # Errors
///
/// [`ConstrainedError::InfeasibleLowerBound`] names the first set whose
/// lower quota cannot be met, with the level that was reachable.
pub fn satisfy_lower_bounds(
    instance: &Instance,
    hierarchy: &Hierarchy,
) -> Result<Strategy, ConstrainedError> {
    let n = instance.locations.len();
    let mut ledger = QuotaLedger::new(instance, hierarchy);
    let mut sigma = vec![0.0; n];
    let mut budget_left = instance.budget;

    for entry_index in 0..ledger.entries.len() {
        let entry = ledger.entries[entry_index].clone();
        if entry.lower <= TOLERANCE {
            continue;
        }
        let members: Vec<usize> = instance
            .locations
            .iter()
            .enumerate()
            .filter(|(_, loc)| entry.members.contains(&loc.id))
            .map(|(i, _)| i)
            .collect();
        let allocated: f64 = members.iter().map(|&l| sigma[l]).sum();
        let mut need = entry.lower - allocated;
        if need <= TOLERANCE {
            continue;
        }

        // Valuable effort first: the set's steepest remaining pieces.
        let per_member: Vec<(usize, Vec<Segment>)> = members
            .iter()
            .map(|&l| {
                let cap = max_threshold(instance, l).min(1.0);
                (l, remaining_segments(instance, l, cap, sigma[l]))
            })
            .collect();
        let mut order: Vec<(usize, f64, f64)> = Vec::new();
        for (l, segments) in &per_member {
            for seg in segments {
                order.push((*l, seg.slope, seg.width));
            }
        }
        order.sort_by(|a, b| b.1.partial_cmp(&a.1).expect("finite slopes"));
        for &(l, _, width) in &order {
            if need <= TOLERANCE {
                break;
            }
            let take = width
                .min(need)
                .min(budget_left)
                .min(ledger.headroom(l));
            if take <= TOLERANCE {
                continue;
            }
            sigma[l] = (sigma[l] + take).min(1.0);
            budget_left -= take;
            ledger.charge(l, take);
            need -= take;
        }

        // Flat-value padding: push members toward full inspection until the
        // quota is met.
        if need > TOLERANCE {
            for &l in &members {
                if need <= TOLERANCE {
                    break;
                }
                let take = (1.0 - sigma[l])
                    .min(need)
                    .min(budget_left)
                    .min(ledger.headroom(l));
                if take <= TOLERANCE {
                    continue;
                }
                sigma[l] += take;
                budget_left -= take;
                ledger.charge(l, take);
                need -= take;
            }
        }

        if need > TOLERANCE {
            return Err(ConstrainedError::InfeasibleLowerBound {
                set: entry.id.clone(),
                required: entry.lower,
                capacity: entry.lower - need,
            });
        }
    }

    let mut strategy = Strategy::zeros(instance);
    for (l, loc) in instance.locations.iter().enumerate() {
        strategy.set(&loc.id, sigma[l]);
    }
    Ok(strategy)
}

/// Quota-respecting payoff planner for a laminar constraint family.
///
/// With all lower quotas zero it runs in two stages: a marginal-value sweep
/// over every location's concave payoff approximation that clips each take
/// by the remaining budget and every enclosing quota (fixing how much effort
/// each bottom-layer group receives), then an independent payoff sweep
/// inside each bottom-layer group with that group budget (capped by the
/// group's own upper quota, a cap stage 1 already respects). With positive
/// lower quotas they are met first via [`satisfy_lower_bounds`] and the
/// stage-1 sweep continues from that pre-allocation; its result is then
/// final — no per-group second stage.
///
/// An empty family delegates to the unconstrained payoff sweep unchanged.
///
/// The result carries no certified optimality factor (`bound: None`):
/// binding quotas can pull this scheme below half of the constrained
/// optimum. Relaxing quotas via [`crate::relax_quotas`] and adding the
/// reported extra resources restores full (bottom-layer regime) or half
/// (second-layer regime) strength, and lower quotas of at least two per
/// bottom-layer group restore half strength as is. Diagnostics report
/// `stage1_total` (effort placed by the sweep) and, when the second stage
/// runs, `bottom_sets` (number of bottom-layer groups).
///
/// # Errors
///
/// [`ConstrainedError::InfeasibleLowerBound`] when the lower quotas cannot
/// all be met within the budget and upper quotas.
pub fn constrained_greedy(
    instance: &Instance,
    hierarchy: &Hierarchy,
) -> Result<SolveResult, ConstrainedError> {
    if hierarchy.sets().is_empty() {
        return Ok(greedy_payoff_het(instance));
    }
    let has_lower = hierarchy.sets().iter().any(|s| s.lower > TOLERANCE);

    let mut sigma = vec![0.0; instance.locations.len()];
    let mut ledger = QuotaLedger::new(instance, hierarchy);
    if has_lower {
        let pre = satisfy_lower_bounds(instance, hierarchy)?;
        for (l, loc) in instance.locations.iter().enumerate() {
            let placed = pre.get(&loc.id).unwrap_or(0.0);
            if placed > 0.0 {
                sigma[l] = placed;
                ledger.charge(l, placed);
            }
        }
    }
    let placed: f64 = sigma.iter().sum();
    stage_one_sweep(
        instance,
        &mut ledger,
        &mut sigma,
        (instance.budget - placed).max(0.0),
    );
    let stage1_total: f64 = sigma.iter().sum();

    if has_lower {
        // Lower quotas pin the shape of the allocation; redistributing
        // inside groups could break them, so the sweep result stands.
        let mut strategy = Strategy::zeros(instance);
        for (l, loc) in instance.locations.iter().enumerate() {
            strategy.set(&loc.id, sigma[l]);
        }
        let objective_value = objective(instance, &strategy, ObjectiveMode::Payoff)
            .expect("the swept strategy covers the instance");
        return Ok(SolveResult {
            strategy,
            objective_value,
            branch: Branch::GreedyBranch,
            diagnostics: vec![("stage1_total".to_owned(), stage1_total)],
            bound: None,
        });
    }

    // Second stage: re-plan each bottom-layer group with the effort budget
    // the sweep assigned to it, so each group gets the armed payoff sweep's
    // guarantee at its own budget.
    let mut strategy = Strategy::zeros(instance);
    let bottom = &hierarchy.layers()[0];
    for set in bottom {
        let member_indices: Vec<usize> = instance
            .locations
            .iter()
            .enumerate()
            .filter(|(_, loc)| set.members.contains(&loc.id))
            .map(|(i, _)| i)
            .collect();
        let group_budget: f64 = member_indices.iter().map(|&i| sigma[i]).sum();
        let group_budget = group_budget.min(set.upper).max(0.0);
        let group_locations: Vec<Location> = member_indices
            .iter()
            .map(|&i| instance.locations[i].clone())
            .collect();
        let sub = Instance::new(
            instance.fine,
            instance.deter_prob,
            group_budget,
            group_locations,
        )
        .expect("a validated instance's location subset is a valid instance");
        let planned = greedy_payoff_het(&sub);
        for (id, &value) in planned.strategy.iter() {
            strategy.set(id, value);
        }
    }
    let objective_value = objective(instance, &strategy, ObjectiveMode::Payoff)
        .expect("the combined strategy covers the instance");
    Ok(SolveResult {
        strategy,
        objective_value,
        branch: Branch::GreedyBranch,
        diagnostics: vec![
            ("stage1_total".to_owned(), stage1_total),
            ("bottom_sets".to_owned(), bottom.len() as f64),
        ],
        bound: None,
    })
}
