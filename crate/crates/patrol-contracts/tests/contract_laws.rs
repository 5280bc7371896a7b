//! Distribution-level laws for the contract game: the administrator's
//! approximation guarantee at every share, collapse cases, payment
//! monotonicity along the share axis, and the dense-sampling loss bound.

mod common;

use common::{hom, random_instance, rng};
use patrol_contracts::{contract_greedy, dense_sample, dense_sample_oracle};
use patrol_core::ObjectiveMode;
use patrol_homogeneous::greedy_revenue;
use patrol_oracles::structural_oracle;
use rand::Rng;

#[test]
fn admin_take_is_half_optimal_at_every_share() {
    let mut r = rng(81_001);
    for case in 0..200 {
        let instance = random_instance(&mut r, 5);
        for alpha in [0.0, 0.25, 0.5, 0.75, 1.0] {
            let outcome = contract_greedy(&instance, alpha).unwrap();
            let exact = structural_oracle(&instance, ObjectiveMode::Contract(alpha))
                .expect("within oracle limits")
                .objective_value;
            assert!(
                outcome.admin_objective >= 0.5 * exact - 1e-9,
                "case {case} share {alpha}: take {} below half of {exact}",
                outcome.admin_objective
            );
            assert!(
                outcome.admin_objective <= exact + 1e-9,
                "case {case} share {alpha}: take {} above the optimum {exact}",
                outcome.admin_objective
            );
        }
    }
}

#[test]
fn zero_share_matches_the_exact_revenue_solver() {
    let mut r = rng(81_002);
    for case in 0..100 {
        let instance = random_instance(&mut r, 5);
        let outcome = contract_greedy(&instance, 0.0).unwrap();
        let exact = greedy_revenue(&instance).expect("single-population instance");
        assert!(
            (outcome.admin_objective - exact.objective_value).abs() <= 1e-9,
            "case {case}: {} vs {}",
            outcome.admin_objective,
            exact.objective_value
        );
    }
}

#[test]
fn exact_response_payments_are_monotone_in_the_share() {
    let mut r = rng(81_003);
    for case in 0..50 {
        let instance = random_instance(&mut r, 4);
        let (_, sweep) = dense_sample_oracle(&instance, 0.2).unwrap();
        for pair in sweep.windows(2) {
            assert!(
                pair[1].payoff >= pair[0].payoff - 1e-7,
                "case {case}: payments fell from {} (share {}) to {} (share {})",
                pair[0].payoff,
                pair[0].alpha,
                pair[1].payoff,
                pair[1].alpha
            );
        }
    }
}

#[test]
fn greedy_payments_are_monotone_under_correlated_valuations() {
    // When every site has the same evasion benefit, payments and
    // payment-per-effort sort sites identically, and with at least one full
    // unit of budget the greedy sweep's payments are nondecreasing in the
    // share.
    let mut r = rng(81_004);
    for case in 0..50 {
        let fine = r.random_range(1.0..8.0);
        let budget = r.random_range(1.0..2.0);
        let benefit = r.random_range(0.5..6.0);
        let n = r.random_range(2..=5);
        let sites: Vec<(f64, f64, f64)> = (0..n)
            .map(|_| {
                (
                    r.random_range(0.5..5.0),
                    benefit,
                    r.random_range(0.1..8.0),
                )
            })
            .collect();
        let instance = patrol_core::Instance::new(
            fine,
            1.0,
            budget,
            sites
                .iter()
                .enumerate()
                .map(|(i, &(count, benefit, payoff))| patrol_core::Location {
                    id: format!("l{}", i + 1),
                    types: vec![patrol_core::UserType {
                        count,
                        benefit,
                        payoff,
                    }],
                })
                .collect(),
        )
        .unwrap();
        let (_, sweep) = dense_sample(&instance, 0.1).unwrap();
        for pair in sweep.windows(2) {
            assert!(
                pair[1].payoff >= pair[0].payoff - 1e-9,
                "case {case}: payments fell from {} (share {}) to {} (share {})",
                pair[0].payoff,
                pair[0].alpha,
                pair[1].payoff,
                pair[1].alpha
            );
        }
    }
}

#[test]
fn sampling_loses_at_most_epsilon_of_the_principal_keep() {
    // Step ≤ ε / (total payments) caps the principal's sampling loss at ε,
    // measured against a grid ten times finer with exact administrator
    // responses throughout.
    let epsilon = 0.01;
    let fixtures = [
        hom(2.0, 0.6, &[(1.0, 2.0, 0.6), (2.0, 1.0, 0.4)]),
        hom(5.0, 0.9, &[(0.8, 3.0, 0.3), (1.5, 0.7, 0.45)]),
    ];
    for (index, instance) in fixtures.iter().enumerate() {
        let total_payments: f64 = instance
            .locations
            .iter()
            .map(|l| l.types[0].payoff)
            .sum();
        let step = epsilon / total_payments;
        let (best, _) = dense_sample_oracle(instance, step).unwrap();
        let (_, fine_sweep) = dense_sample_oracle(instance, step / 10.0).unwrap();
        let fine_optimum = fine_sweep
            .iter()
            .map(|o| o.principal_objective)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            fine_optimum - best.principal_objective <= epsilon + 1e-9,
            "fixture {index}: sampled keep {} trails the fine-grid optimum \
             {fine_optimum} by more than {epsilon}",
            best.principal_objective
        );
    }
}

#[test]
fn sweeps_keep_consistent_accounts_and_pick_the_best_entry() {
    let mut r = rng(81_005);
    for case in 0..50 {
        let instance = random_instance(&mut r, 5);
        let (best, sweep) = dense_sample(&instance, 0.25).unwrap();
        let sweep_max = sweep
            .iter()
            .map(|o| o.principal_objective)
            .fold(f64::NEG_INFINITY, f64::max);
        assert!(
            (best.principal_objective - sweep_max).abs() <= 1e-9,
            "case {case}: picked {} but the sweep reaches {sweep_max}",
            best.principal_objective
        );
        for outcome in &sweep {
            assert!(
                (outcome.principal_objective - (1.0 - outcome.alpha) * outcome.payoff).abs()
                    <= 1e-9,
                "case {case} share {}: inconsistent principal accounting",
                outcome.alpha
            );
        }
    }
}

#[test]
fn with_no_fines_the_full_share_response_maximizes_payments() {
    // Zero user counts erase the fine term, so at share 1 the exact
    // contract response and the exact payment-maximizing response coincide.
    let mut r = rng(81_006);
    for case in 0..50 {
        let fine = r.random_range(1.0..8.0);
        let budget = r.random_range(0.0..1.5);
        let n = r.random_range(1..=4);
        let sites: Vec<(f64, f64, f64)> = (0..n)
            .map(|_| {
                (
                    0.0,
                    r.random_range(0.2..6.0),
                    r.random_range(0.1..8.0),
                )
            })
            .collect();
        let instance = hom(fine, budget, &sites);
        let contract = structural_oracle(&instance, ObjectiveMode::Contract(1.0))
            .unwrap()
            .objective_value;
        let payments = structural_oracle(&instance, ObjectiveMode::Payoff)
            .unwrap()
            .objective_value;
        assert!(
            (contract - payments).abs() <= 1e-9,
            "case {case}: contract take {contract} vs payment optimum {payments}"
        );
    }
}
