//! Evaluation of administrator objectives at a fixed inspection strategy.
//!
//! Every solver in the workspace reports an objective value computed by
//! re-evaluating its final strategy through [`objective`], so these
//! definitions are the single source of truth for what a strategy is worth.

use thiserror::Error;

use crate::model::{Instance, Location, ObjectiveMode, Strategy};
use crate::response::{best_response, is_never_deterred, threshold};
use crate::TOLERANCE;

/// Errors raised when a strategy cannot be evaluated against an instance.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    /// The strategy has no entry for a location in the instance.
    #[error("strategy has no allocation for location {0:?}")]
    MissingLocation(String),
    /// The strategy allocates to a location the instance does not contain.
    #[error("strategy allocates to unknown location {0:?}")]
    UnknownLocation(String),
    /// An allocation is NaN or infinite.
    #[error("allocation for location {0:?} is not finite")]
    NonFiniteAllocation(String),
}

/// Value contributed by one location at inspection level `sigma` under the
/// given objective:
///
/// - `Revenue`: each defaulting type pays expected fines `sigma * k * count`;
/// - `Payoff`: deterred types pay in full (`p`), defaulting types pay the
///   expected recovered amount `beta * sigma * p`;
/// - `Contract(alpha)`: fine revenue plus `alpha` times the recovered payment,
///   with the user's indifference broken by the contract comparison.
pub fn location_value(
    location: &Location,
    fine: f64,
    deter_prob: f64,
    mode: ObjectiveMode,
    sigma: f64,
) -> f64 {
    let mut value = 0.0;
    for utype in &location.types {
        let defaults = best_response(utype, sigma, fine, deter_prob, mode);
        value += type_value(utype, fine, deter_prob, mode, sigma, defaults);
    }
    value
}

/// Value of one location at level `sigma` when behavior is frozen at a lower
/// level `base`: a type defaults iff its threshold exceeds `base` (or it can
/// never be deterred). This is the open-piece value used when reasoning about
/// what an extra sliver of inspection above `base` is worth before the next
/// behavior change.
pub fn location_value_above(
    location: &Location,
    fine: f64,
    deter_prob: f64,
    mode: ObjectiveMode,
    base: f64,
    sigma: f64,
) -> f64 {
    let mut value = 0.0;
    for utype in &location.types {
        let defaults = is_never_deterred(utype, fine, deter_prob)
            || threshold(utype, fine, deter_prob) > base + TOLERANCE;
        value += type_value(utype, fine, deter_prob, mode, sigma, defaults);
    }
    value
}

fn type_value(
    utype: &crate::model::UserType,
    fine: f64,
    deter_prob: f64,
    mode: ObjectiveMode,
    sigma: f64,
    defaults: bool,
) -> f64 {
    let revenue = if defaults {
        sigma * fine * utype.count
    } else {
        0.0
    };
    let payoff = if defaults {
        deter_prob * sigma * utype.payoff
    } else {
        utype.payoff
    };
    match mode {
        ObjectiveMode::Revenue => revenue,
        ObjectiveMode::Payoff => payoff,
        ObjectiveMode::Contract(alpha) => revenue + alpha * payoff,
    }
}

/// Distinct deterrence thresholds of a location's types, ascending, with
/// duplicates within [`TOLERANCE`] merged and never-deterred types excluded
/// (their behavior has no breakpoint inside `[0, 1]`).
pub fn location_breakpoints(location: &Location, fine: f64, deter_prob: f64) -> Vec<f64> {
    let mut taus: Vec<f64> = location
        .types
        .iter()
        .filter(|t| !is_never_deterred(t, fine, deter_prob))
        .map(|t| threshold(t, fine, deter_prob))
        .collect();
    taus.sort_by(|a, b| a.partial_cmp(b).expect("thresholds are finite"));
    taus.dedup_by(|a, b| (*a - *b).abs() <= TOLERANCE);
    taus
}

/// Total objective value of a strategy. The strategy must allocate to exactly
/// the instance's locations, with finite values; range and budget violations
/// are the caller's concern (see [`crate::validate_strategy`]).
pub fn objective(
    instance: &Instance,
    strategy: &Strategy,
    mode: ObjectiveMode,
) -> Result<f64, EvalError> {
    check_alignment(instance, strategy)?;
    let mut total = 0.0;
    for location in &instance.locations {
        let sigma = strategy
            .get(&location.id)
            .ok_or_else(|| EvalError::MissingLocation(location.id.clone()))?;
        total += location_value(location, instance.fine, instance.deter_prob, mode, sigma);
    }
    Ok(total)
}

/// Fine revenue of a strategy under the revenue tie-break.
pub fn revenue(instance: &Instance, strategy: &Strategy) -> Result<f64, EvalError> {
    objective(instance, strategy, ObjectiveMode::Revenue)
}

/// Recovered payments of a strategy under the payoff tie-break.
pub fn payoff(instance: &Instance, strategy: &Strategy) -> Result<f64, EvalError> {
    objective(instance, strategy, ObjectiveMode::Payoff)
}

/// Combined objective `revenue + alpha * payoff` under the contract
/// tie-break at share `alpha`.
pub fn contract_objective(
    instance: &Instance,
    strategy: &Strategy,
    alpha: f64,
) -> Result<f64, EvalError> {
    objective(instance, strategy, ObjectiveMode::Contract(alpha))
}

/// Fine-revenue component of a strategy with user behavior resolved under
/// `mode`'s tie-break. Differs from [`revenue`] only on ties, where e.g. a
/// contract may deter a user the pure revenue objective would keep defaulting.
pub fn revenue_under(
    instance: &Instance,
    strategy: &Strategy,
    mode: ObjectiveMode,
) -> Result<f64, EvalError> {
    component_under(instance, strategy, mode, ComponentKind::Revenue)
}

/// Recovered-payment component of a strategy with user behavior resolved
/// under `mode`'s tie-break.
pub fn payoff_under(
    instance: &Instance,
    strategy: &Strategy,
    mode: ObjectiveMode,
) -> Result<f64, EvalError> {
    component_under(instance, strategy, mode, ComponentKind::Payoff)
}

#[derive(Clone, Copy)]
enum ComponentKind {
    Revenue,
    Payoff,
}

fn component_under(
    instance: &Instance,
    strategy: &Strategy,
    mode: ObjectiveMode,
    kind: ComponentKind,
) -> Result<f64, EvalError> {
    check_alignment(instance, strategy)?;
    let mut total = 0.0;
    for location in &instance.locations {
        let sigma = strategy
            .get(&location.id)
            .ok_or_else(|| EvalError::MissingLocation(location.id.clone()))?;
        for utype in &location.types {
            let defaults = best_response(utype, sigma, instance.fine, instance.deter_prob, mode);
            let component_mode = match kind {
                ComponentKind::Revenue => ObjectiveMode::Revenue,
                ComponentKind::Payoff => ObjectiveMode::Payoff,
            };
            total += type_value(
                utype,
                instance.fine,
                instance.deter_prob,
                component_mode,
                sigma,
                defaults,
            );
        }
    }
    Ok(total)
}

fn check_alignment(instance: &Instance, strategy: &Strategy) -> Result<(), EvalError> {
    for (id, value) in strategy.iter() {
        if instance.location_index(id).is_none() {
            return Err(EvalError::UnknownLocation(id.clone()));
        }
        if !value.is_finite() {
            return Err(EvalError::NonFiniteAllocation(id.clone()));
        }
    }
    for location in &instance.locations {
        if strategy.get(&location.id).is_none() {
            return Err(EvalError::MissingLocation(location.id.clone()));
        }
    }
    Ok(())
}
