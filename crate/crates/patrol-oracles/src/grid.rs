//! Dense-grid reference search with branch-and-bound pruning.
//!
//! Each location's candidate set is the step multiples up to its cap, plus
//! every behavior breakpoint (so the per-location value's local maxima are
//! all candidates). Depth-first search over the candidate product is pruned
//! by budget, quota bounds, and a concave-envelope water-filling upper bound;
//! the best grid point is within `step * Σ_l max-slope_l` of the true
//! optimum, and that error term is reported with the result.

use patrol_core::{
    is_never_deterred, location_breakpoints, location_value, objective, Branch, Instance,
    ObjectiveMode, QuotaSet, SolveResult, Strategy, TOLERANCE,
};

use crate::OracleError;

/// Node budget before the search gives up on certifying the optimum. The
/// envelope bound prunes far below this in practice; hitting the limit drops
/// the certified `bound` (the returned value is still a feasible strategy's).
const NODE_LIMIT: u64 = 200_000_000;

/// Default size caps: quota constraints multiply the search space, so the
/// constrained cap is tighter.
const MAX_LOCATIONS_UNCONSTRAINED: usize = 5;
const MAX_LOCATIONS_CONSTRAINED: usize = 4;

/// Grid search under the default size caps (5 locations unconstrained,
/// 4 with quotas). See [`grid_oracle_capped`].
pub fn grid_oracle(
    instance: &Instance,
    mode: ObjectiveMode,
    step: f64,
    constraints: Option<&[QuotaSet]>,
) -> Result<SolveResult, OracleError> {
    let cap = if constraints.is_some_and(|q| !q.is_empty()) {
        MAX_LOCATIONS_CONSTRAINED
    } else {
        MAX_LOCATIONS_UNCONSTRAINED
    };
    grid_oracle_capped(instance, mode, step, constraints, cap)
}

/// Exhaustive grid search over per-location candidates
/// `{0, step, 2·step, …} ∪ {breakpoints} ∪ {cap}`, depth-first in location
/// order with candidates tried largest-first, pruned by budget, quotas, and
/// a concave-envelope bound seeded with greedy warm starts.
///
/// Diagnostics report the node count, the error term, and the warm-start
/// value. `bound` is `value + error term`, a certified upper bound on the
/// true optimum when no quota has a positive lower bound (lower bounds can
/// make the rounding argument behind the error term infeasible; the bound is
/// then still reported but only heuristic). Deterministic by construction.
pub fn grid_oracle_capped(
    instance: &Instance,
    mode: ObjectiveMode,
    step: f64,
    constraints: Option<&[QuotaSet]>,
    max_locations: usize,
) -> Result<SolveResult, OracleError> {
    if !(step.is_finite() && step > 0.0 && step <= 1.0) {
        return Err(OracleError::InvalidStep { step });
    }
    let n = instance.locations.len();
    if n > max_locations {
        return Err(OracleError::TooManyLocations {
            count: n,
            max: max_locations,
        });
    }
    let quotas: &[QuotaSet] = constraints.unwrap_or(&[]);
    for q in quotas {
        if !(q.lower.is_finite() && q.lower >= -TOLERANCE && q.upper >= q.lower - TOLERANCE)
            || q.upper.is_nan()
        {
            return Err(OracleError::InvalidQuotaBounds {
                quota: q.id.clone(),
                lower: q.lower,
                upper: q.upper,
            });
        }
        for member in &q.members {
            if instance.location_index(member).is_none() {
                return Err(OracleError::UnknownQuotaMember {
                    quota: q.id.clone(),
                    member: member.clone(),
                });
            }
        }
    }
    let has_lower = quotas.iter().any(|q| q.lower > TOLERANCE);

    // Which quotas enclose each location.
    let enclosing: Vec<Vec<usize>> = instance
        .locations
        .iter()
        .map(|loc| {
            quotas
                .iter()
                .enumerate()
                .filter(|(_, q)| q.members.contains(&loc.id))
                .map(|(qi, _)| qi)
                .collect()
        })
        .collect();

    // Per-location caps: 1, the budget, every enclosing quota's upper bound,
    // and — when nothing forces wasteful padding and no type defaults
    // forever — the largest breakpoint (value is flat or worse beyond it).
    let mut caps = Vec::with_capacity(n);
    let mut grids: Vec<LocGrid> = Vec::with_capacity(n);
    let mut error_term = 0.0;
    for (li, loc) in instance.locations.iter().enumerate() {
        let bps = location_breakpoints(loc, instance.fine, instance.deter_prob);
        let mut cap = 1.0f64.min(instance.budget);
        for &qi in &enclosing[li] {
            cap = cap.min(quotas[qi].upper);
        }
        if !has_lower {
            let any_never_deterred = loc
                .types
                .iter()
                .any(|t| is_never_deterred(t, instance.fine, instance.deter_prob));
            if !any_never_deterred {
                cap = cap.min(bps.last().copied().unwrap_or(0.0));
            }
        }
        cap = cap.max(0.0);
        let mut sigmas = Vec::new();
        let mut i = 0u64;
        loop {
            let s = i as f64 * step;
            if s > cap + 1e-12 {
                break;
            }
            sigmas.push(s.min(cap));
            i += 1;
        }
        sigmas.extend(bps.iter().copied().filter(|&b| b <= cap + 1e-12));
        sigmas.push(cap);
        sigmas.sort_by(|a, b| a.partial_cmp(b).expect("finite"));
        sigmas.dedup_by(|a, b| (*a - *b).abs() <= 1e-12);
        let values: Vec<f64> = sigmas
            .iter()
            .map(|&s| location_value(loc, instance.fine, instance.deter_prob, mode, s))
            .collect();
        let (count_sum, payoff_sum) = loc
            .types
            .iter()
            .fold((0.0, 0.0), |(c, p), t| (c + t.count, p + t.payoff));
        error_term += step
            * match mode {
                ObjectiveMode::Revenue => instance.fine * count_sum,
                ObjectiveMode::Payoff => instance.deter_prob * payoff_sum,
                ObjectiveMode::Contract(alpha) => {
                    instance.fine * count_sum + alpha * instance.deter_prob * payoff_sum
                }
            };
        caps.push(cap);
        grids.push(LocGrid { sigmas, values });
    }

    // Concave envelopes per location and pooled suffix segments for the
    // water-filling bound.
    let hulls: Vec<Vec<(f64, f64)>> = grids.iter().map(upper_hull_segments).collect();
    let pools: Vec<SegmentPool> = (0..=n)
        .map(|start| SegmentPool::over(&hulls[start..]))
        .collect();

    // Quota suffix capacities for lower-bound feasibility pruning.
    let quota_suffix_cap: Vec<Vec<f64>> = quotas
        .iter()
        .map(|q| {
            let mut suffix = vec![0.0; n + 1];
            for i in (0..n).rev() {
                let member = q.members.iter().any(|m| *m == instance.locations[i].id);
                suffix[i] = suffix[i + 1] + if member { caps[i] } else { 0.0 };
            }
            suffix
        })
        .collect();

    // Warm starts: greedy envelope sweeps, each skipping one location (or
    // none), snapped down to grid candidates.
    let mut best_value = f64::NEG_INFINITY;
    let mut best_alloc: Option<Vec<f64>> = None;
    let mut warm_value = f64::NEG_INFINITY;
    for skip in std::iter::once(None).chain((0..n).map(Some)) {
        if let Some((alloc, value)) = warm_start(
            instance, &grids, &hulls, quotas, &enclosing, skip,
        ) {
            warm_value = warm_value.max(value);
            if value > best_value {
                best_value = value;
                best_alloc = Some(alloc);
            }
        }
    }

    let mut search = GridSearch {
        budget: instance.budget,
        grids: &grids,
        pools: &pools,
        quotas,
        enclosing: &enclosing,
        quota_suffix_cap: &quota_suffix_cap,
        alloc: vec![0.0; n],
        quota_alloc: vec![0.0; quotas.len()],
        best_value,
        best_alloc,
        nodes: 0,
        limit_hit: false,
    };
    search.dfs(0, 0.0, 0.0);

    let Some(alloc) = search.best_alloc else {
        return Err(OracleError::InfeasibleConstraints);
    };
    let mut strategy = Strategy::default();
    for (loc, &sigma) in instance.locations.iter().zip(&alloc) {
        strategy.set(&loc.id, sigma);
    }
    let objective_value = objective(instance, &strategy, mode).expect("strategy covers instance");
    let mut diagnostics = vec![
        ("nodes".into(), search.nodes as f64),
        ("error_term".into(), error_term),
    ];
    if warm_value.is_finite() {
        diagnostics.push(("warm_start".into(), warm_value));
    }
    if search.limit_hit {
        diagnostics.push(("node_limit_reached".into(), 1.0));
    }
    Ok(SolveResult {
        strategy,
        objective_value,
        branch: Branch::BruteForcePair,
        diagnostics,
        bound: if search.limit_hit {
            None
        } else {
            Some(objective_value + error_term)
        },
    })
}

struct LocGrid {
    sigmas: Vec<f64>,
    values: Vec<f64>,
}

/// Positive-slope segments of the upper concave hull of a location's
/// candidate points, left to right (slopes descending).
fn upper_hull_segments(grid: &LocGrid) -> Vec<(f64, f64)> {
    let pts: Vec<(f64, f64)> = grid
        .sigmas
        .iter()
        .copied()
        .zip(grid.values.iter().copied())
        .collect();
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            // Keep b only if it lies strictly above the chord a→p.
            if (b.1 - a.1) * (p.0 - a.0) > (p.1 - a.1) * (b.0 - a.0) + 1e-15 {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let mut segments = Vec::new();
    for w in hull.windows(2) {
        let width = w[1].0 - w[0].0;
        if width <= 1e-15 {
            continue;
        }
        let slope = (w[1].1 - w[0].1) / width;
        if slope > 1e-15 {
            segments.push((slope, width));
        }
    }
    segments
}

/// All segments of a suffix of locations, sorted by slope descending, with
/// prefix sums for O(log n) water-filling bounds.
struct SegmentPool {
    slopes: Vec<f64>,
    prefix_width: Vec<f64>,
    prefix_value: Vec<f64>,
}

impl SegmentPool {
    fn over(hulls: &[Vec<(f64, f64)>]) -> Self {
        let mut segments: Vec<(f64, f64)> = hulls.iter().flatten().copied().collect();
        segments.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite slopes"));
        let mut prefix_width = Vec::with_capacity(segments.len() + 1);
        let mut prefix_value = Vec::with_capacity(segments.len() + 1);
        prefix_width.push(0.0);
        prefix_value.push(0.0);
        for &(slope, width) in &segments {
            prefix_width.push(prefix_width.last().unwrap() + width);
            prefix_value.push(prefix_value.last().unwrap() + slope * width);
        }
        SegmentPool {
            slopes: segments.into_iter().map(|(s, _)| s).collect(),
            prefix_width,
            prefix_value,
        }
    }

    /// Best value obtainable by pouring `budget` into the pooled segments.
    fn fill(&self, budget: f64) -> f64 {
        if budget <= 0.0 {
            return 0.0;
        }
        // Largest k with prefix_width[k] <= budget.
        let k = self.prefix_width.partition_point(|&w| w <= budget) - 1;
        let mut value = self.prefix_value[k];
        if k < self.slopes.len() {
            value += (budget - self.prefix_width[k]) * self.slopes[k];
        }
        value
    }
}

/// Greedy envelope sweep skipping one (or no) location: pour budget into
/// segments by slope, clipped by quota uppers, then snap each allocation
/// down to a grid candidate. Returns `None` when the result violates a
/// quota lower bound.
fn warm_start(
    instance: &Instance,
    grids: &[LocGrid],
    hulls: &[Vec<(f64, f64)>],
    quotas: &[QuotaSet],
    enclosing: &[Vec<usize>],
    skip: Option<usize>,
) -> Option<(Vec<f64>, f64)> {
    let n = grids.len();
    let mut tagged: Vec<(f64, f64, usize)> = Vec::new();
    for (li, hull) in hulls.iter().enumerate() {
        if Some(li) == skip {
            continue;
        }
        for &(slope, width) in hull {
            tagged.push((slope, width, li));
        }
    }
    tagged.sort_by(|a, b| b.0.partial_cmp(&a.0).expect("finite slopes"));
    let mut alloc = vec![0.0; n];
    let mut quota_used = vec![0.0; quotas.len()];
    let mut remaining = instance.budget;
    for (_, width, li) in tagged {
        if remaining <= 1e-15 {
            break;
        }
        let mut take = width.min(remaining);
        for &qi in &enclosing[li] {
            take = take.min(quotas[qi].upper - quota_used[qi]);
        }
        if take <= 1e-15 {
            continue;
        }
        alloc[li] += take;
        remaining -= take;
        for &qi in &enclosing[li] {
            quota_used[qi] += take;
        }
    }
    // Snap down to candidates (only frees budget and quota room).
    let mut value = 0.0;
    for li in 0..n {
        let sigmas = &grids[li].sigmas;
        let idx = sigmas.partition_point(|&s| s <= alloc[li] + 1e-12) - 1;
        alloc[li] = sigmas[idx];
        value += grids[li].values[idx];
    }
    for q in quotas {
        let used: f64 = q
            .members
            .iter()
            .map(|m| {
                instance
                    .location_index(m)
                    .map_or(0.0, |i| alloc[i])
            })
            .sum();
        if used < q.lower - TOLERANCE {
            return None;
        }
    }
    Some((alloc, value))
}

struct GridSearch<'a> {
    budget: f64,
    grids: &'a [LocGrid],
    pools: &'a [SegmentPool],
    quotas: &'a [QuotaSet],
    enclosing: &'a [Vec<usize>],
    quota_suffix_cap: &'a [Vec<f64>],
    alloc: Vec<f64>,
    quota_alloc: Vec<f64>,
    best_value: f64,
    best_alloc: Option<Vec<f64>>,
    nodes: u64,
    limit_hit: bool,
}

impl GridSearch<'_> {
    fn dfs(&mut self, pos: usize, spent: f64, value: f64) {
        if self.limit_hit {
            return;
        }
        self.nodes += 1;
        if self.nodes > NODE_LIMIT {
            self.limit_hit = true;
            return;
        }
        // A quota lower bound no suffix spending can reach kills the node.
        for (qi, q) in self.quotas.iter().enumerate() {
            if self.quota_alloc[qi] + self.quota_suffix_cap[qi][pos] < q.lower - TOLERANCE {
                return;
            }
        }
        if pos == self.grids.len() {
            if value > self.best_value {
                self.best_value = value;
                self.best_alloc = Some(self.alloc.clone());
            }
            return;
        }
        // Envelope bound: even ignoring quotas, the suffix cannot beat
        // water-filling the remaining budget into its hull segments.
        if value + self.pools[pos].fill(self.budget - spent) <= self.best_value + 1e-12 {
            return;
        }
        let grid = &self.grids[pos];
        for idx in (0..grid.sigmas.len()).rev() {
            let sigma = grid.sigmas[idx];
            if spent + sigma > self.budget + TOLERANCE {
                continue;
            }
            let mut violates = false;
            for &qi in &self.enclosing[pos] {
                if self.quota_alloc[qi] + sigma > self.quotas[qi].upper + TOLERANCE {
                    violates = true;
                    break;
                }
            }
            if violates {
                continue;
            }
            self.alloc[pos] = sigma;
            for &qi in &self.enclosing[pos] {
                self.quota_alloc[qi] += sigma;
            }
            self.dfs(pos + 1, spent + sigma, value + grid.values[idx]);
            for &qi in &self.enclosing[pos] {
                self.quota_alloc[qi] -= sigma;
            }
        }
        self.alloc[pos] = 0.0;
    }
}
