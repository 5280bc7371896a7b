//! Exact oracle via solution-structure enumeration.
//!
//! An optimal strategy can be normalized so that every location sits at a
//! behavior breakpoint (a type threshold, 0, or 1) except at most one
//! location, whose allocation lies strictly inside a linear piece and absorbs
//! the residual budget. Per-location value is piecewise linear between
//! breakpoints with nonnegative slopes, so within a piece the top is optimal;
//! pieces whose top is the next breakpoint are covered by the neighboring
//! breakpoint assignment. Enumerating all breakpoint assignments, each
//! optionally extended by one fractional location, therefore finds the exact
//! optimum for every objective mode.

use patrol_core::{
    location_breakpoints, location_value, objective, Branch, Instance, ObjectiveMode, SolveResult,
    Strategy, TOLERANCE,
};

use crate::OracleError;

/// Size caps for the exhaustive structural search. The enumeration visits
/// `O((max_types + 2)^|L| · |L|)` candidates, so caps keep it tractable.
#[derive(Debug, Clone, Copy)]
pub struct OracleLimits {
    /// Maximum number of locations.
    pub max_locations: usize,
    /// Maximum number of user types per location.
    pub max_types_per_location: usize,
}

impl Default for OracleLimits {
    fn default() -> Self {
        OracleLimits {
            max_locations: 6,
            max_types_per_location: 3,
        }
    }
}

/// Exact optimum of a small instance under the default size caps
/// (6 locations, 3 types per location). See [`structural_oracle_capped`].
pub fn structural_oracle(
    instance: &Instance,
    mode: ObjectiveMode,
) -> Result<SolveResult, OracleError> {
    structural_oracle_capped(instance, mode, &OracleLimits::default())
}

/// Exact optimum of a small instance by exhaustive structure enumeration.
///
/// Deterministic: locations are scanned in instance order and candidates in a
/// fixed order, so the returned strategy is reproducible. The `bound` field
/// equals the value (the search is exact).
pub fn structural_oracle_capped(
    instance: &Instance,
    mode: ObjectiveMode,
    limits: &OracleLimits,
) -> Result<SolveResult, OracleError> {
    if instance.locations.len() > limits.max_locations {
        return Err(OracleError::TooManyLocations {
            count: instance.locations.len(),
            max: limits.max_locations,
        });
    }
    for loc in &instance.locations {
        if loc.types.len() > limits.max_types_per_location {
            return Err(OracleError::TooManyTypes {
                id: loc.id.clone(),
                count: loc.types.len(),
                max: limits.max_types_per_location,
            });
        }
    }

    let n = instance.locations.len();
    // Candidate bases per location: 0, every breakpoint, and 1 (the top of
    // the final piece matters when some types can never be deterred).
    let mut bases: Vec<Vec<f64>> = Vec::with_capacity(n);
    let mut breakpoints: Vec<Vec<f64>> = Vec::with_capacity(n);
    for loc in &instance.locations {
        let bps = location_breakpoints(loc, instance.fine, instance.deter_prob);
        let mut b = Vec::with_capacity(bps.len() + 2);
        b.push(0.0);
        b.extend_from_slice(&bps);
        if b.last().is_none_or(|&x| x < 1.0 - 1e-12) {
            b.push(1.0);
        }
        bases.push(b);
        breakpoints.push(bps);
    }

    let values: Vec<Vec<f64>> = instance
        .locations
        .iter()
        .zip(&bases)
        .map(|(loc, b)| {
            b.iter()
                .map(|&sigma| {
                    location_value(loc, instance.fine, instance.deter_prob, mode, sigma)
                })
                .collect()
        })
        .collect();

    let mut search = Search {
        instance,
        mode,
        bases: &bases,
        breakpoints: &breakpoints,
        values: &values,
        assignment: vec![0usize; n],
        best_value: f64::NEG_INFINITY,
        best_alloc: vec![0.0; n],
        candidates: 0,
    };
    search.dfs(0, 0.0, 0.0);

    let mut strategy = Strategy::default();
    for (loc, &sigma) in instance.locations.iter().zip(&search.best_alloc) {
        strategy.set(&loc.id, sigma);
    }
    let objective_value = objective(instance, &strategy, mode).expect("strategy covers instance");
    Ok(SolveResult {
        strategy,
        objective_value,
        branch: Branch::BruteForcePair,
        diagnostics: vec![("candidates".into(), search.candidates as f64)],
        bound: Some(objective_value),
    })
}

struct Search<'a> {
    instance: &'a Instance,
    mode: ObjectiveMode,
    bases: &'a [Vec<f64>],
    breakpoints: &'a [Vec<f64>],
    values: &'a [Vec<f64>],
    assignment: Vec<usize>,
    best_value: f64,
    best_alloc: Vec<f64>,
    candidates: u64,
}

impl Search<'_> {
    fn dfs(&mut self, pos: usize, spent: f64, value: f64) {
        let n = self.bases.len();
        if pos == n {
            self.consider_leaf(spent, value);
            return;
        }
        for (idx, &sigma) in self.bases[pos].iter().enumerate() {
            if spent + sigma > self.instance.budget + TOLERANCE {
                break; // bases ascend; nothing later is affordable
            }
            self.assignment[pos] = idx;
            self.dfs(pos + 1, spent + sigma, value + self.values[pos][idx]);
        }
    }

    /// A complete breakpoint assignment, plus its one-fractional extensions.
    fn consider_leaf(&mut self, spent: f64, value: f64) {
        self.candidates += 1;
        if value > self.best_value {
            self.best_value = value;
            for (l, &idx) in self.assignment.iter().enumerate() {
                self.best_alloc[l] = self.bases[l][idx];
            }
        }
        let residual = self.instance.budget - spent;
        if residual <= TOLERANCE {
            return;
        }
        for l in 0..self.bases.len() {
            let base = self.bases[l][self.assignment[l]];
            // Top of the piece the fractional spend lives in: the next
            // breakpoint above the base, or 1 when the base is past them all.
            let piece_top = self.breakpoints[l]
                .iter()
                .copied()
                .find(|&bp| bp > base + TOLERANCE)
                .unwrap_or(1.0);
            let sigma = (base + residual).min(piece_top);
            if sigma <= base + TOLERANCE {
                continue; // nothing to add (base already at 1)
            }
            if sigma >= piece_top - 1e-12 {
                // Landing on the piece top is the neighboring breakpoint
                // assignment (or base = 1), which is enumerated separately.
                continue;
            }
            self.candidates += 1;
            let loc = &self.instance.locations[l];
            let frac_value = location_value(
                loc,
                self.instance.fine,
                self.instance.deter_prob,
                self.mode,
                sigma,
            );
            let total = value - self.values[l][self.assignment[l]] + frac_value;
            if total > self.best_value {
                self.best_value = total;
                for (j, &idx) in self.assignment.iter().enumerate() {
                    self.best_alloc[j] = self.bases[j][idx];
                }
                self.best_alloc[l] = sigma;
            }
        }
    }
}
