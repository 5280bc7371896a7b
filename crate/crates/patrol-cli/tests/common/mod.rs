//! Shared builders for the command-layer law suite and the end-to-end
//! checklist. The two targets use different subsets of these helpers.
#![allow(dead_code)]

use patrol_cli::scenario::{ScenarioLocation, ScenarioQuota, ScenarioType};
use patrol_cli::{parse_scenario, Scenario};
use patrol_core::{
    objective, threshold, Instance, Location, ObjectiveMode, QuotaSet, Strategy, UserType,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;
use std::path::PathBuf;

pub fn rng(seed: u64) -> ChaCha20Rng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Absolute path of a shipped example scenario.
pub fn fixture_path(name: &str) -> String {
    format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"))
}

/// Parse a shipped example scenario.
pub fn shipped_scenario(name: &str) -> Scenario {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    parse_scenario(&text).expect("fixture parses")
}

/// Single-population instance from `(count, benefit, payoff)` triples.
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
    Instance::new(fine, deter_prob, budget, locations).expect("valid test instance")
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
    Instance::new(fine, deter_prob, budget, locations).expect("generated instances are valid")
}

/// Random single-population instance under certain detection.
pub fn random_homogeneous(rng: &mut ChaCha20Rng, max_locations: usize) -> Instance {
    random_heterogeneous(rng, max_locations, 1, 1.0)
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

/// Payoff sweep for an arbitrary (possibly overlapping) quota family on
/// single-population sites: densest payment-per-effort first, each site
/// brought to its deterrence point as far as the budget and every covering
/// cap allow, plus the single-site fallback arm. The hierarchy validator
/// rejects overlapping families, so the shared-hub check needs this
/// test-only variant.
pub fn quota_respecting_greedy(instance: &Instance, sets: &[QuotaSet]) -> f64 {
    let tau = |loc: &Location| threshold(&loc.types[0], instance.fine, instance.deter_prob);
    let mut order: Vec<usize> = (0..instance.locations.len()).collect();
    order.sort_by(|&a, &b| {
        let la = &instance.locations[a];
        let lb = &instance.locations[b];
        let da = la.types[0].payoff / tau(la);
        let db = lb.types[0].payoff / tau(lb);
        db.partial_cmp(&da).expect("finite densities")
    });

    let mut remaining_budget = instance.budget;
    let mut remaining_quota: Vec<f64> = sets.iter().map(|s| s.upper).collect();
    let mut swept = Strategy::zeros(instance);
    for &l in &order {
        let loc = &instance.locations[l];
        let headroom = sets
            .iter()
            .zip(&remaining_quota)
            .filter(|(s, _)| s.members.contains(&loc.id))
            .map(|(_, &r)| r)
            .fold(f64::INFINITY, f64::min)
            .max(0.0);
        let take = tau(loc).min(remaining_budget).min(headroom);
        if take <= 1e-12 {
            continue;
        }
        swept.set(&loc.id, take);
        remaining_budget -= take;
        for (s, r) in sets.iter().zip(remaining_quota.iter_mut()) {
            if s.members.contains(&loc.id) {
                *r -= take;
            }
        }
    }
    let swept_value = objective(instance, &swept, ObjectiveMode::Payoff).unwrap();

    let arm = instance
        .locations
        .iter()
        .map(|loc| {
            let headroom = sets
                .iter()
                .filter(|s| s.members.contains(&loc.id))
                .map(|s| s.upper)
                .fold(f64::INFINITY, f64::min);
            let mut single = Strategy::zeros(instance);
            single.set(&loc.id, tau(loc).min(instance.budget).min(headroom));
            objective(instance, &single, ObjectiveMode::Payoff).unwrap()
        })
        .fold(0.0f64, f64::max);

    swept_value.max(arm)
}

/// Rebuild the scenario-file form of an in-memory instance and quota family.
pub fn scenario_from_instance(instance: &Instance, sets: &[QuotaSet]) -> Scenario {
    Scenario {
        fine: instance.fine,
        deter_prob: instance.deter_prob,
        budget: instance.budget,
        locations: instance
            .locations
            .iter()
            .map(|loc| ScenarioLocation {
                id: loc.id.clone(),
                types: loc
                    .types
                    .iter()
                    .map(|t| ScenarioType {
                        count: t.count,
                        benefit: t.benefit,
                        payoff: t.payoff,
                    })
                    .collect(),
            })
            .collect(),
        constraints: if sets.is_empty() {
            None
        } else {
            Some(
                sets.iter()
                    .map(|s| ScenarioQuota {
                        id: s.id.clone(),
                        members: s.members.clone(),
                        lower: s.lower,
                        upper: s.upper,
                    })
                    .collect(),
            )
        },
        contract: None,
        experiment: None,
    }
}

/// Random scenario file content exercising every optional section; always
/// passes validation.
pub fn random_scenario(rng: &mut ChaCha20Rng) -> Scenario {
    use patrol_cli::scenario::{ContractSection, ExperimentSection};

    let n = rng.random_range(1..=6);
    let locations: Vec<ScenarioLocation> = (0..n)
        .map(|i| ScenarioLocation {
            id: format!("l{}", i + 1),
            types: (0..rng.random_range(1..=3))
                .map(|_| ScenarioType {
                    count: rng.random_range(0.0..5.0),
                    benefit: rng.random_range(0.2..6.0),
                    payoff: rng.random_range(0.0..8.0),
                })
                .collect(),
        })
        .collect();

    let constraints = if rng.random_bool(0.5) {
        let mut sets = Vec::new();
        let mut i = 0usize;
        while i < n {
            let size = rng.random_range(1..=3usize).min(n - i);
            let upper = rng.random_range(0.1..1.0);
            sets.push(ScenarioQuota {
                id: format!("g{}", sets.len() + 1),
                members: (i..i + size).map(|j| format!("l{}", j + 1)).collect(),
                lower: if rng.random_bool(0.3) {
                    upper * rng.random_range(0.0..0.8)
                } else {
                    0.0
                },
                upper,
            });
            i += size;
        }
        Some(sets)
    } else {
        None
    };

    let contract = if rng.random_bool(0.4) {
        Some(ContractSection {
            step: rng.random_range(0.01..0.5),
        })
    } else {
        None
    };

    let experiment = if rng.random_bool(0.4) {
        let counterfactual = if rng.random_bool(0.7) {
            Some(
                if rng.random_bool(0.5) {
                    "threshold"
                } else {
                    "exponential"
                }
                .to_owned(),
            )
        } else {
            None
        };
        let strategic_frac = if rng.random_bool(0.5) {
            Some(rng.random_range(0.0..=1.0))
        } else {
            None
        };
        let citation_multiplier = if rng.random_bool(0.5) {
            Some(rng.random_range(0.1..3.0))
        } else {
            None
        };
        let seed = if rng.random_bool(0.5) {
            Some(rng.random())
        } else {
            None
        };
        Some(ExperimentSection {
            counterfactual,
            strategic_frac,
            citation_multiplier,
            seed,
        })
    } else {
        None
    };

    Scenario {
        fine: rng.random_range(0.5..8.0),
        deter_prob: rng.random_range(0.0..=1.0),
        budget: rng.random_range(0.0..2.0),
        locations,
        constraints,
        contract,
        experiment,
    }
}

/// Unique writable path for a throwaway scenario file.
pub fn temp_scenario_path(tag: &str) -> PathBuf {
    std::env::temp_dir().join(format!("patrol-test-{}-{tag}.json", std::process::id()))
}
