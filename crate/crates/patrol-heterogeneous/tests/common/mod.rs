//! Shared fixtures for the law tests.

use patrol_core::{Instance, Location, UserType};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn build(fine: f64, deter_prob: f64, budget: f64, locations: Vec<Location>) -> Instance {
    Instance::new(fine, deter_prob, budget, locations).expect("generated instances are valid")
}

fn random_type(rng: &mut ChaCha20Rng) -> UserType {
    UserType {
        count: rng.random_range(0.5..5.0),
        benefit: rng.random_range(0.2..6.0),
        payoff: rng.random_range(0.1..8.0),
    }
}

/// Random instance with up to `max_types` user populations per location.
pub fn random_heterogeneous(
    rng: &mut ChaCha20Rng,
    max_locations: usize,
    max_types: usize,
    deter_prob: f64,
) -> Instance {
    let fine = rng.random_range(1.0..8.0);
    let budget = rng.random_range(0.0..1.5);
    let n = rng.random_range(1..=max_locations);
    let locations = (0..n)
        .map(|i| Location {
            id: format!("l{}", i + 1),
            types: (0..rng.random_range(1..=max_types))
                .map(|_| random_type(rng))
                .collect(),
        })
        .collect();
    build(fine, deter_prob, budget, locations)
}

/// Random instance with exactly one user population per location.
pub fn random_homogeneous(rng: &mut ChaCha20Rng, max_locations: usize, deter_prob: f64) -> Instance {
    random_heterogeneous(rng, max_locations, 1, deter_prob)
}

/// Alternates certain detection with weaker random detection so every law
/// covers both regimes.
pub fn mixed_deter_prob(case: usize, rng: &mut ChaCha20Rng) -> f64 {
    if case.is_multiple_of(2) {
        1.0
    } else {
        rng.random_range(0.3..1.0)
    }
}
