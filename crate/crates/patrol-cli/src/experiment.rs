//! Experiment harnesses: a seeded synthetic parking campus with two
//! compliance counterfactuals, and a large synthetic enforcement-scenario
//! generator.

use crate::calibrate::{calibrate_exponential, discretize_exponential};
use crate::scenario::{ExperimentSection, Scenario, ScenarioLocation, ScenarioType};
use patrol_core::{objective, Instance, Location, ObjectiveMode, Strategy, UserType};
use patrol_heterogeneous::greedy_payoff_het;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

/// Annual permit fee by parking class, in currency units.
pub const PERMIT_FEES: [(&str, f64); 6] = [
    ("a", 6.65),
    ("c", 1.23),
    ("resident", 1.50),
    ("resident-c", 1.38),
    ("visitor", 35.68),
    ("other", 22.40),
];

/// Citation amount for parking without a permit.
pub const CAMPUS_FINE: f64 = 45.0;

/// Number of lots on the synthetic campus: four per permit class.
pub const CAMPUS_LOTS: usize = 24;

/// Daily patrol budget across the campus.
pub const CAMPUS_BUDGET: f64 = 3.0;

/// The status-quo patrol intensity: the budget spread evenly over the lots.
pub const STATUS_QUO_EFFORT: f64 = CAMPUS_BUDGET / CAMPUS_LOTS as f64;

/// Slack when checking whether a patrol level clears a permit-fee
/// threshold, so exact greedy allocations register as covering.
const THRESHOLD_SLACK: f64 = 1e-9;

/// One parking lot: its permit class fee and how many spaces it holds.
#[derive(Debug, Clone)]
pub struct CampusLot {
    pub id: String,
    pub fee: f64,
    pub spaces: f64,
}

fn exp_sample(rng: &mut ChaCha20Rng, mean: f64) -> f64 {
    let u: f64 = rng.random();
    -mean * (1.0 - u).ln()
}

/// Draws a campus: [`CAMPUS_LOTS`] lots cycling through the permit
/// classes, with space counts exponentially distributed around 80.
pub fn synthetic_campus(seed: u64) -> Vec<CampusLot> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    (0..CAMPUS_LOTS)
        .map(|i| {
            let (class, fee) = PERMIT_FEES[i % PERMIT_FEES.len()];
            CampusLot {
                id: format!("lot-{}-{}", class, i / PERMIT_FEES.len() + 1),
                fee,
                spaces: exp_sample(&mut rng, 80.0),
            }
        })
        .collect()
}

/// The campus as a solver instance for the all-or-nothing compliance
/// model. A driver paying fee `f` skips the permit exactly while the
/// expected citation `sigma * fine` is below `f`, so each lot is a single
/// population with benefit `f`; citations themselves are not convictions,
/// so the conviction probability is zero and recovered payments are pure
/// permit revenue.
pub fn campus_instance(lots: &[CampusLot]) -> Instance {
    let locations = lots
        .iter()
        .map(|lot| Location {
            id: lot.id.clone(),
            types: vec![UserType {
                count: lot.spaces,
                benefit: lot.fee,
                payoff: lot.spaces * lot.fee,
            }],
        })
        .collect();
    Instance::new(CAMPUS_FINE, 0.0, CAMPUS_BUDGET, locations)
        .expect("campus parameters are valid")
}

/// Spreads a fixed effort level over every location.
pub fn uniform_strategy(instance: &Instance, effort: f64) -> Strategy {
    let mut strategy = Strategy::zeros(instance);
    for location in &instance.locations {
        strategy.set(&location.id, effort);
    }
    strategy
}

/// Permit revenue when a fraction `strategic_frac` of drivers respond to
/// patrols and the rest always buy. A strategic driver at a lot buys
/// exactly when the patrol level there clears the lot's fee threshold.
pub fn permit_earnings(lots: &[CampusLot], strategy: &Strategy, strategic_frac: f64) -> f64 {
    lots.iter()
        .map(|lot| {
            let sigma = strategy.get(&lot.id).unwrap_or(0.0);
            let covered = sigma >= lot.fee / CAMPUS_FINE - THRESHOLD_SLACK;
            let paying = (1.0 - strategic_frac) + strategic_frac * f64::from(u8::from(covered));
            lot.spaces * lot.fee * paying
        })
        .sum()
}

/// Sweeps the all-or-nothing counterfactual: for each strategic fraction,
/// permit revenue under the payoff-greedy plan and under the status-quo
/// uniform spread. Returns `(strategic_frac, greedy, uniform)` rows.
pub fn threshold_sweep(seed: u64, fracs: &[f64]) -> Vec<(f64, f64, f64)> {
    let lots = synthetic_campus(seed);
    let instance = campus_instance(&lots);
    let greedy = greedy_payoff_het(&instance);
    let uniform = uniform_strategy(&instance, STATUS_QUO_EFFORT);
    fracs
        .iter()
        .map(|&frac| {
            (
                frac,
                permit_earnings(&lots, &greedy.strategy, frac),
                permit_earnings(&lots, &uniform, frac),
            )
        })
        .collect()
}

/// The campus under the smooth compliance model: each lot's drivers skip
/// payment with probability `exp(-gamma * sigma)`, with `gamma` calibrated
/// so the curve passes through that lot's observed non-payment fraction at
/// the status-quo effort. The curve is discretized into populations whose
/// recovered payments reproduce expected permit revenue.
pub fn exponential_instance(lots: &[CampusLot], nonpayment_fracs: &[f64]) -> Instance {
    assert_eq!(lots.len(), nonpayment_fracs.len());
    let locations = lots
        .iter()
        .zip(nonpayment_fracs)
        .map(|(lot, &frac)| {
            let gamma = calibrate_exponential(STATUS_QUO_EFFORT, frac)
                .expect("observed fractions lie in (0, 1]");
            Location {
                id: lot.id.clone(),
                types: discretize_exponential(gamma, lot.spaces, lot.fee, CAMPUS_FINE, 0.0, 0.01),
            }
        })
        .collect();
    Instance::new(CAMPUS_FINE, 0.0, CAMPUS_BUDGET, locations)
        .expect("discretized campus parameters are valid")
}

/// Sweeps the smooth counterfactual: per-lot observed non-payment
/// fractions are drawn once, then scaled by each multiplier (capped at
/// certain non-payment) before calibration. Returns `(multiplier, greedy,
/// uniform)` expected-revenue rows.
pub fn exponential_sweep(seed: u64, multipliers: &[f64]) -> Vec<(f64, f64, f64)> {
    let lots = synthetic_campus(seed);
    let mut rng = ChaCha20Rng::seed_from_u64(seed ^ 0x5EED);
    let base: Vec<f64> = lots.iter().map(|_| rng.random_range(0.05..0.95)).collect();
    multipliers
        .iter()
        .map(|&multiplier| {
            let scaled: Vec<f64> = base.iter().map(|b| (b * multiplier).min(1.0)).collect();
            let instance = exponential_instance(&lots, &scaled);
            let greedy = greedy_payoff_het(&instance);
            let uniform = uniform_strategy(&instance, STATUS_QUO_EFFORT);
            let uniform_value = objective(&instance, &uniform, ObjectiveMode::Payoff)
                .expect("uniform strategy aligns with the instance");
            (multiplier, greedy.objective_value, uniform_value)
        })
        .collect()
}

/// Number of sites in a generated enforcement scenario.
pub const SYNTHETIC_SITES: usize = 448;

/// Generates a large random enforcement scenario: 448 sites, user counts
/// exponential with mean 80, default gains exponential with mean 20, and
/// payment mass `count * gain^exponent`. Inspection always convicts.
pub fn synthetic_enforcement_scenario(
    seed: u64,
    fine: f64,
    budget: f64,
    payoff_exponent: f64,
) -> Scenario {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let locations = (0..SYNTHETIC_SITES)
        .map(|i| {
            let count = exp_sample(&mut rng, 80.0);
            let benefit = exp_sample(&mut rng, 20.0).max(1e-9);
            ScenarioLocation {
                id: format!("site-{:03}", i + 1),
                types: vec![ScenarioType {
                    count,
                    benefit,
                    payoff: count * benefit.powf(payoff_exponent),
                }],
            }
        })
        .collect();
    Scenario {
        fine,
        deter_prob: 1.0,
        budget,
        locations,
        constraints: None,
        contract: None,
        experiment: Some(ExperimentSection {
            counterfactual: None,
            strategic_frac: None,
            citation_multiplier: None,
            seed: Some(seed),
        }),
    }
}
