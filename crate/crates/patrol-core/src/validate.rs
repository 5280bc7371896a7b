//! Non-failing strategy validation: collects violations instead of erroring,
//! so callers can report all problems at once.

use crate::model::{Instance, Strategy};
use crate::TOLERANCE;

/// One way a strategy can violate the model constraints.
#[derive(Debug, Clone, PartialEq)]
pub enum Violation {
    /// Allocation outside `[0, 1]` (beyond tolerance).
    AllocationOutOfRange { id: String, value: f64 },
    /// Allocation is NaN or infinite.
    NonFinite { id: String },
    /// Strategy allocates to a location the instance does not contain.
    UnknownLocation { id: String },
    /// Strategy has no entry for an instance location.
    MissingLocation { id: String },
    /// Total allocation exceeds the budget (beyond tolerance).
    BudgetExceeded { total: f64, budget: f64 },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::AllocationOutOfRange { id, value } => {
                write!(f, "allocation for `{id}` is {value}, outside [0, 1]")
            }
            Violation::NonFinite { id } => write!(f, "allocation for `{id}` is not finite"),
            Violation::UnknownLocation { id } => {
                write!(f, "allocation for `{id}`, which the instance does not contain")
            }
            Violation::MissingLocation { id } => write!(f, "no allocation for location `{id}`"),
            Violation::BudgetExceeded { total, budget } => {
                write!(f, "total allocation {total} exceeds budget {budget}")
            }
        }
    }
}

/// Checks a strategy against an instance: key-set alignment, per-location
/// range `[0, 1]`, finiteness, and the budget cap, each with a tolerance of
/// [`TOLERANCE`]. Returns every violation found (empty = valid).
pub fn validate_strategy(instance: &Instance, strategy: &Strategy) -> Vec<Violation> {
    let mut violations = Vec::new();
    let mut total = 0.0;
    let mut total_finite = true;
    for (id, &value) in strategy.iter() {
        if instance.location_index(id).is_none() {
            violations.push(Violation::UnknownLocation { id: id.clone() });
        }
        if !value.is_finite() {
            violations.push(Violation::NonFinite { id: id.clone() });
            total_finite = false;
            continue;
        }
        if !(-TOLERANCE..=1.0 + TOLERANCE).contains(&value) {
            violations.push(Violation::AllocationOutOfRange {
                id: id.clone(),
                value,
            });
        }
        total += value;
    }
    for location in &instance.locations {
        if strategy.get(&location.id).is_none() {
            violations.push(Violation::MissingLocation {
                id: location.id.clone(),
            });
        }
    }
    if total_finite && total > instance.budget + TOLERANCE {
        violations.push(Violation::BudgetExceeded {
            total,
            budget: instance.budget,
        });
    }
    violations
}
