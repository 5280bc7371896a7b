//! Shared fixtures for the quota-constrained law tests.

use patrol_core::{Instance, Location, QuotaSet, UserType};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

fn random_type(rng: &mut ChaCha20Rng) -> UserType {
    UserType {
        count: rng.random_range(0.5..5.0),
        benefit: rng.random_range(0.2..6.0),
        payoff: rng.random_range(0.1..8.0),
    }
}

/// Random instance with exactly `locations` sites so quota families can
/// reference every id, and up to `max_types` populations per site.
pub fn random_sites(
    rng: &mut ChaCha20Rng,
    locations: usize,
    max_types: usize,
    deter_prob: f64,
    budget: f64,
) -> Instance {
    let fine = rng.random_range(1.0..8.0);
    let locs = (0..locations)
        .map(|i| Location {
            id: format!("l{}", i + 1),
            types: (0..rng.random_range(1..=max_types))
                .map(|_| random_type(rng))
                .collect(),
        })
        .collect();
    Instance::new(fine, deter_prob, budget, locs).expect("generated instances are valid")
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

/// Single-population sites under certain detection, each pinned by its
/// deterrence point `tau` (benefit = fine·tau/(1−tau)) and payment mass.
pub fn sites_by_threshold(fine: f64, budget: f64, sites: &[(f64, f64)]) -> Instance {
    let locations = sites
        .iter()
        .enumerate()
        .map(|(i, &(tau, payoff))| Location {
            id: format!("l{}", i + 1),
            types: vec![UserType {
                count: 1.0,
                benefit: fine * tau / (1.0 - tau),
                payoff,
            }],
        })
        .collect();
    Instance::new(fine, 1.0, budget, locations).expect("threshold fixtures are valid")
}

/// Two-layer quota family covering every site: consecutive sites form
/// groups of one to three, consecutive groups form regions of one or two
/// groups. Group caps are tight enough to matter; region caps scale with
/// what their groups allow. All lower quotas are zero.
pub fn random_two_layer_family(rng: &mut ChaCha20Rng, instance: &Instance) -> Vec<QuotaSet> {
    let ids: Vec<String> = instance.locations.iter().map(|l| l.id.clone()).collect();
    let mut groups: Vec<Vec<String>> = Vec::new();
    let mut i = 0;
    while i < ids.len() {
        let size = rng.random_range(1..=3usize).min(ids.len() - i);
        groups.push(ids[i..i + size].to_vec());
        i += size;
    }
    let mut sets: Vec<QuotaSet> = groups
        .iter()
        .enumerate()
        .map(|(gi, members)| QuotaSet {
            id: format!("group-{}", gi + 1),
            members: members.clone(),
            lower: 0.0,
            upper: rng.random_range(0.08..0.6),
        })
        .collect();
    let mut gi = 0;
    let mut region = 0;
    while gi < groups.len() {
        let span = rng.random_range(1..=2usize).min(groups.len() - gi);
        let members: Vec<String> = groups[gi..gi + span].iter().flatten().cloned().collect();
        let child_total: f64 = sets[gi..gi + span].iter().map(|s| s.upper).sum();
        region += 1;
        sets.push(QuotaSet {
            id: format!("region-{}", region),
            members,
            lower: 0.0,
            upper: child_total * rng.random_range(0.5..1.1),
        });
        gi += span;
    }
    sets
}

/// Raises the lower quota on roughly half of the bottom groups. The result
/// is not always feasible; callers treat the infeasible outcome as a valid
/// error path.
pub fn with_random_lower_bounds(rng: &mut ChaCha20Rng, sets: &mut [QuotaSet]) {
    for set in sets.iter_mut() {
        if set.id.starts_with("group-") && rng.random_bool(0.5) {
            set.lower = set.upper * rng.random_range(0.2..0.8);
        }
    }
}
