//! Shared fixtures for the contract law tests.

use patrol_core::{Instance, Location, UserType};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

pub fn hom(fine: f64, budget: f64, sites: &[(f64, f64, f64)]) -> Instance {
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
    Instance::new(fine, 1.0, budget, locations).expect("valid test instance")
}

/// Random single-population instance under certain detection.
pub fn random_instance(rng: &mut ChaCha20Rng, max_locations: usize) -> Instance {
    let fine = rng.random_range(1.0..8.0);
    let budget = rng.random_range(0.0..1.5);
    let n = rng.random_range(1..=max_locations);
    let sites: Vec<(f64, f64, f64)> = (0..n)
        .map(|_| {
            (
                rng.random_range(0.5..5.0),
                rng.random_range(0.2..6.0),
                rng.random_range(0.1..8.0),
            )
        })
        .collect();
    hom(fine, budget, &sites)
}
