//! Shared instance builders for the oracle test suites.

use patrol_core::{Instance, Location, UserType};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Single-type instance from `(count, benefit, payoff)` triples.
pub fn hom(fine: f64, deter_prob: f64, budget: f64, sites: &[(f64, f64, f64)]) -> Instance {
    let locations = sites
        .iter()
        .enumerate()
        .map(|(i, &(count, benefit, payoff))| Location {
            id: format!("l{}", i + 1),
            types: vec![UserType {
                count,
                benefit,
                payoff,
            }],
        })
        .collect();
    Instance::new(fine, deter_prob, budget, locations).unwrap()
}

/// Random single-type instance with full deterrence probability.
pub fn random_homogeneous(rng: &mut ChaCha20Rng, max_locations: usize) -> Instance {
    let n = rng.random_range(1..=max_locations);
    let fine = rng.random_range(1.0..8.0);
    let budget = rng.random_range(0.0..1.5);
    let sites: Vec<(f64, f64, f64)> = (0..n)
        .map(|_| {
            (
                rng.random_range(0.5..5.0),
                rng.random_range(0.2..6.0),
                rng.random_range(0.1..8.0),
            )
        })
        .collect();
    hom(fine, 1.0, budget, &sites)
}

/// Random multi-type instance with full deterrence probability.
pub fn random_heterogeneous(
    rng: &mut ChaCha20Rng,
    max_locations: usize,
    max_types: usize,
) -> Instance {
    let n = rng.random_range(1..=max_locations);
    let fine = rng.random_range(1.0..8.0);
    let budget = rng.random_range(0.0..1.5);
    let locations = (0..n)
        .map(|i| Location {
            id: format!("l{}", i + 1),
            types: (0..rng.random_range(1..=max_types))
                .map(|_| UserType {
                    count: rng.random_range(0.5..5.0),
                    benefit: rng.random_range(0.2..6.0),
                    payoff: rng.random_range(0.1..8.0),
                })
                .collect(),
        })
        .collect();
    Instance::new(fine, 1.0, budget, locations).unwrap()
}

/// Three single-type sites where the budget falls just short of covering the
/// third site's threshold: thresholds (0.2, 0.2, 0.41), payments (1, 1, 2.2),
/// budget 0.405. The optimal payoff deters the first two sites and spends
/// the leftover 0.005 on the third: 1 + 1 + 0.005 * 2.2 = 2.011.
pub fn narrow_budget_fixture() -> Instance {
    let d3 = 4.0 * 0.41 / (1.0 - 0.41);
    hom(
        4.0,
        1.0,
        0.405,
        &[(1.0, 1.0, 1.0), (1.0, 1.0, 1.0), (1.0, d3, 2.2)],
    )
}
