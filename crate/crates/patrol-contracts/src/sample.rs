//! Share selection by sweeping a grid of payment shares.

use crate::{require_contract_instance, ContractError, ContractOutcome};
use patrol_core::{Instance, ObjectiveMode, TOLERANCE};
use patrol_oracles::structural_oracle;

/// The share grid `{0, step, 2·step, …}` with `1.0` always appended, so the
/// payment-friendliest endpoint is sampled even when `1/step` is not
/// integral.
fn share_grid(step: f64) -> Result<Vec<f64>, ContractError> {
    if !(step.is_finite() && step > 0.0 && step <= 1.0) {
        return Err(ContractError::InvalidParameter {
            name: "step",
            reason: format!("the grid step must lie in (0, 1], got {step}"),
        });
    }
    let mut grid = Vec::new();
    let mut index = 0usize;
    loop {
        let alpha = index as f64 * step;
        if alpha >= 1.0 - 1e-12 {
            break;
        }
        grid.push(alpha);
        index += 1;
    }
    grid.push(1.0);
    Ok(grid)
}

/// The sweep entry maximizing the principal's keep; near-ties (within
/// tolerance) go to the smaller share.
fn pick_best(sweep: &[ContractOutcome]) -> ContractOutcome {
    let mut best = &sweep[0];
    for outcome in &sweep[1..] {
        if outcome.principal_objective > best.principal_objective + TOLERANCE {
            best = outcome;
        }
    }
    best.clone()
}

/// Sweeps the share grid with [`crate::contract_greedy`] and returns the
/// principal's best outcome along with the full sweep (for reporting).
pub fn dense_sample(
    instance: &Instance,
    step: f64,
) -> Result<(ContractOutcome, Vec<ContractOutcome>), ContractError> {
    require_contract_instance(instance)?;
    let grid = share_grid(step)?;
    let sweep: Vec<ContractOutcome> = grid
        .into_iter()
        .map(|alpha| crate::contract_greedy(instance, alpha).expect("preconditions checked"))
        .collect();
    Ok((pick_best(&sweep), sweep))
}

/// Like [`dense_sample`], but the administrator's response at each share is
/// the exact optimum from the exhaustive structural search instead of the
/// greedy solver. Exponential in the number of locations — meant for small
/// instances and for validating the sampling guarantees.
pub fn dense_sample_oracle(
    instance: &Instance,
    step: f64,
) -> Result<(ContractOutcome, Vec<ContractOutcome>), ContractError> {
    let grid = share_grid(step)?;
    let mut sweep = Vec::with_capacity(grid.len());
    for alpha in grid {
        let exact = structural_oracle(instance, ObjectiveMode::Contract(alpha))?;
        sweep.push(ContractOutcome::from_strategy(instance, alpha, exact.strategy));
    }
    Ok((pick_best(&sweep), sweep))
}
