//! Flattening of distributional (Bayesian) type information into the
//! deterministic instance model.
//!
//! When a location's populations are described by probability distributions
//! over types rather than fixed types, the administrator's expected objective
//! is linear in the realization probabilities. Splitting each population into
//! one deterministic type per outcome — with mass and payment scaled by the
//! outcome's probability — therefore yields an ordinary instance whose
//! objective equals the expected objective of the distributional one, for
//! every strategy.

use crate::model::{Instance, Location, ModelError, UserType};
use crate::TOLERANCE;

/// A probability distribution over user types for one population.
#[derive(Debug, Clone, PartialEq)]
pub struct TypeDistribution {
    /// `(probability, type)` outcomes; probabilities must sum to 1.
    pub outcomes: Vec<(f64, UserType)>,
}

/// A location whose populations are described distributionally.
#[derive(Debug, Clone, PartialEq)]
pub struct BayesianLocation {
    /// Opaque identifier; unique within an instance.
    pub id: String,
    /// Independent populations, each with its own type distribution.
    pub populations: Vec<TypeDistribution>,
}

/// Expands every distributional population into one deterministic type per
/// outcome, scaling `count` and `payoff` by the outcome probability, and
/// validates the result as an ordinary [`Instance`].
///
/// Zero-probability outcomes are dropped. Each population's probabilities
/// must lie in `[0, 1]` and sum to 1 within [`TOLERANCE`].
pub fn flatten_bayesian(
    fine: f64,
    deter_prob: f64,
    budget: f64,
    locations: &[BayesianLocation],
) -> Result<Instance, ModelError> {
    let mut flat = Vec::with_capacity(locations.len());
    for loc in locations {
        let mut types = Vec::new();
        for (population, dist) in loc.populations.iter().enumerate() {
            let mut sum = 0.0;
            for &(q, utype) in &dist.outcomes {
                if !(q.is_finite() && (0.0..=1.0).contains(&q)) {
                    return Err(ModelError::InvalidProbability {
                        id: loc.id.clone(),
                        population,
                        value: q,
                    });
                }
                sum += q;
                if q == 0.0 {
                    continue;
                }
                types.push(UserType {
                    count: q * utype.count,
                    benefit: utype.benefit,
                    payoff: q * utype.payoff,
                });
            }
            if (sum - 1.0).abs() > TOLERANCE {
                return Err(ModelError::ProbabilitySum {
                    id: loc.id.clone(),
                    population,
                    sum,
                });
            }
        }
        flat.push(Location {
            id: loc.id.clone(),
            types,
        });
    }
    Instance::new(fine, deter_prob, budget, flat)
}
