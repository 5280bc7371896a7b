//! Instance and strategy data types with validated constructors.

use std::collections::BTreeMap;

use thiserror::Error;

/// Construction-time validation failures for [`Instance`] and the
/// probabilistic inputs of [`crate::flatten_bayesian`].
#[derive(Debug, Error, PartialEq)]
pub enum ModelError {
    #[error("fine must be positive and finite, got {value}")]
    InvalidFine { value: f64 },
    #[error("deterrence probability must lie in [0, 1], got {value}")]
    InvalidDeterProb { value: f64 },
    #[error("budget must be nonnegative and finite, got {value}")]
    InvalidBudget { value: f64 },
    #[error("an instance must contain at least one location")]
    NoLocations,
    #[error("duplicate location id `{id}`")]
    DuplicateLocation { id: String },
    #[error("location `{id}` must have at least one user type")]
    NoTypes { id: String },
    #[error("location `{id}` type {index}: count must be nonnegative and finite, got {value}")]
    InvalidCount { id: String, index: usize, value: f64 },
    #[error("location `{id}` type {index}: benefit must be positive and finite, got {value}")]
    InvalidBenefit { id: String, index: usize, value: f64 },
    #[error("location `{id}` type {index}: payoff must be nonnegative and finite, got {value}")]
    InvalidPayoff { id: String, index: usize, value: f64 },
    #[error("location `{id}` population {population}: probability must lie in [0, 1], got {value}")]
    InvalidProbability {
        id: String,
        population: usize,
        value: f64,
    },
    #[error("location `{id}` population {population}: probabilities sum to {sum}, expected 1")]
    ProbabilitySum {
        id: String,
        population: usize,
        sum: f64,
    },
}

/// One user population at a location: `count` users, each obtaining
/// `benefit` from defaulting, with `payoff` the total payment the
/// population owes when complying.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct UserType {
    /// Mass of users of this type (nonnegative, finite).
    pub count: f64,
    /// Benefit a user gains from defaulting (positive, finite). Drives the
    /// deterrence threshold.
    pub benefit: f64,
    /// Total payment owed by this type when complying (nonnegative, finite).
    pub payoff: f64,
}

/// A patrollable location and its user types.
///
/// Types are kept sorted by `benefit` ascending (stable, so ties keep their
/// input order); [`Instance::new`] establishes the order.
#[derive(Debug, Clone, PartialEq)]
pub struct Location {
    /// Opaque identifier; unique within an instance.
    pub id: String,
    /// User types, sorted by benefit ascending.
    pub types: Vec<UserType>,
}

/// A complete problem instance: game parameters plus locations.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    /// Fine collected per inspected defaulting user (positive).
    pub fine: f64,
    /// Probability that an inspection deters/catches (in `[0, 1]`).
    pub deter_prob: f64,
    /// Total divisible inspection budget (nonnegative).
    pub budget: f64,
    /// Locations in input order. Input order is the deterministic iteration
    /// order for every solver and emitter in the workspace.
    pub locations: Vec<Location>,
}

impl Instance {
    /// Validates all model invariants and normalizes each location's type
    /// list to benefit-ascending order (stable sort).
    pub fn new(
        fine: f64,
        deter_prob: f64,
        budget: f64,
        locations: Vec<Location>,
    ) -> Result<Self, ModelError> {
        if !(fine.is_finite() && fine > 0.0) {
            return Err(ModelError::InvalidFine { value: fine });
        }
        if !(deter_prob.is_finite() && (0.0..=1.0).contains(&deter_prob)) {
            return Err(ModelError::InvalidDeterProb { value: deter_prob });
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(ModelError::InvalidBudget { value: budget });
        }
        if locations.is_empty() {
            return Err(ModelError::NoLocations);
        }
        let mut seen = std::collections::BTreeSet::new();
        let mut locations = locations;
        for loc in &mut locations {
            if !seen.insert(loc.id.clone()) {
                return Err(ModelError::DuplicateLocation { id: loc.id.clone() });
            }
            if loc.types.is_empty() {
                return Err(ModelError::NoTypes { id: loc.id.clone() });
            }
            for (index, t) in loc.types.iter().enumerate() {
                if !(t.count.is_finite() && t.count >= 0.0) {
                    return Err(ModelError::InvalidCount {
                        id: loc.id.clone(),
                        index,
                        value: t.count,
                    });
                }
                if !(t.benefit.is_finite() && t.benefit > 0.0) {
                    return Err(ModelError::InvalidBenefit {
                        id: loc.id.clone(),
                        index,
                        value: t.benefit,
                    });
                }
                if !(t.payoff.is_finite() && t.payoff >= 0.0) {
                    return Err(ModelError::InvalidPayoff {
                        id: loc.id.clone(),
                        index,
                        value: t.payoff,
                    });
                }
            }
            loc.types
                .sort_by(|a, b| a.benefit.partial_cmp(&b.benefit).expect("finite benefits"));
        }
        Ok(Instance {
            fine,
            deter_prob,
            budget,
            locations,
        })
    }

    /// Same instance with a different budget (used for augmentation runs).
    pub fn with_budget(&self, budget: f64) -> Result<Self, ModelError> {
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(ModelError::InvalidBudget { value: budget });
        }
        let mut out = self.clone();
        out.budget = budget;
        Ok(out)
    }

    /// True when every location carries exactly one user type.
    pub fn is_homogeneous(&self) -> bool {
        self.locations.iter().all(|l| l.types.len() == 1)
    }

    /// Index of a location id in input order.
    pub fn location_index(&self, id: &str) -> Option<usize> {
        self.locations.iter().position(|l| l.id == id)
    }
}

/// The administrator objective being maximized; also selects how user
/// indifference at the threshold is tie-broken (always in the
/// administrator's favor).
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum ObjectiveMode {
    /// Fine revenue `Σ sigma·y·k·count`. Threshold ties keep `y = 1`.
    Revenue,
    /// Recovered payments. Threshold ties take `y = 0` (deterrence).
    Payoff,
    /// `revenue + alpha·payoff`. Threshold ties take `y = 0` exactly when
    /// the complying value `alpha·p` is at least the defaulting value
    /// `(k·count + alpha·p)·tau`.
    Contract(f64),
}

/// An inspection strategy: per-location inspection probabilities.
///
/// Evaluation requires the key set to match the instance's location ids
/// exactly; [`crate::validate_strategy`] reports mismatches, range and
/// budget violations without failing.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Strategy {
    /// Location id → inspection probability in `[0, 1]`.
    pub alloc: BTreeMap<String, f64>,
}

impl Strategy {
    /// All-zero strategy over the instance's locations.
    pub fn zeros(instance: &Instance) -> Self {
        Strategy {
            alloc: instance
                .locations
                .iter()
                .map(|l| (l.id.clone(), 0.0))
                .collect(),
        }
    }

    /// Allocation for a location, if present.
    pub fn get(&self, id: &str) -> Option<f64> {
        self.alloc.get(id).copied()
    }

    /// Sets (or inserts) one location's allocation.
    pub fn set(&mut self, id: &str, sigma: f64) {
        self.alloc.insert(id.to_owned(), sigma);
    }

    /// Sum of all allocations.
    pub fn total(&self) -> f64 {
        self.alloc.values().sum()
    }

    /// Iterates `(location id, allocation)` pairs in id order.
    pub fn iter(&self) -> impl Iterator<Item = (&String, &f64)> {
        self.alloc.iter()
    }
}
