//! Laminar quota families: validation, layer decomposition, normalization,
//! and quota relaxation.

use std::collections::BTreeSet;

use patrol_core::{Instance, QuotaSet};

use crate::ConstrainedError;

/// A validated laminar quota family together with its normalized layer
/// decomposition.
///
/// Layers are indexed bottom-up: `layers()[0]` holds the innermost sets
/// (those containing no other set of the family), and each higher layer the
/// minimal strict supersets of the ones below. Normalization adds a
/// pass-through singleton for every location a layer does not cover, so that
/// within every layer each location belongs to exactly one set. Pass-through
/// singletons are named `auto-{layer}-{location}`, carry a zero lower bound,
/// and inherit the tightest upper bound among the family's sets containing
/// the location in a strictly higher layer (infinite when none does). That
/// makes them redundant by construction: they never admit or forbid anything
/// the original family did not.
///
/// Two sets with identical membership are allowed; the one listed first is
/// placed in the lower layer. Member lists are de-duplicated on validation.
#[derive(Debug, Clone, PartialEq)]
pub struct Hierarchy {
    sets: Vec<QuotaSet>,
    layers: Vec<Vec<QuotaSet>>,
}

impl Hierarchy {
    /// The validated input family, in input order, with de-duplicated
    /// member lists.
    pub fn sets(&self) -> &[QuotaSet] {
        &self.sets
    }

    /// Normalized layers, bottom-up. Every instance location appears in
    /// exactly one set of every layer.
    pub fn layers(&self) -> &[Vec<QuotaSet>] {
        &self.layers
    }

    /// Number of layers (zero for an empty family).
    pub fn depth(&self) -> usize {
        self.layers.len()
    }
}

/// Which layer the relaxation grants one extra resource per set to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RelaxRegime {
    /// One extra resource per bottom-layer set: every bottom-layer upper
    /// quota grows by one unit and each higher set's upper grows by the
    /// number of bottom-layer sets it contains. Paired with that many extra
    /// resources, the constrained sweep recovers the full unrelaxed optimum.
    BottomLayer,
    /// One extra resource per second-layer set: every second-layer upper
    /// quota grows by one unit (increments propagating upward) and every
    /// bottom-layer quota also grows by one. Paired with that many extra
    /// resources, the constrained sweep recovers half the unrelaxed
    /// optimum. On a single-layer family the second layer is the overall
    /// budget itself, so only the bottom quotas grow and one extra resource
    /// is reported.
    SecondLayer,
}

/// Checks that `sets` forms a laminar family over `instance`'s locations and
/// derives its normalized layer decomposition.
///
/// Layers are peeled bottom-up: the first layer holds every set containing
/// no other set of the family, and each subsequent layer the sets whose only
/// remaining proper subsets have already been peeled. Each layer is then
/// padded with pass-through singletons for uncovered locations (see
/// [`Hierarchy`]).
///
/// Errors name the first offending pair or set: two sets that overlap
/// without nesting, an unknown member location, inverted or non-finite
/// bounds, empty member lists, and duplicated set ids are all rejected.
pub fn validate_hierarchy(
    sets: &[QuotaSet],
    instance: &Instance,
) -> Result<Hierarchy, ConstrainedError> {
    let mut seen_ids: BTreeSet<&str> = BTreeSet::new();
    let mut cleaned: Vec<QuotaSet> = Vec::with_capacity(sets.len());
    let mut memberships: Vec<BTreeSet<String>> = Vec::with_capacity(sets.len());
    for set in sets {
        if !seen_ids.insert(&set.id) {
            return Err(ConstrainedError::DuplicateId { id: set.id.clone() });
        }
        if set.members.is_empty() {
            return Err(ConstrainedError::EmptyMembers {
                set: set.id.clone(),
            });
        }
        if !(set.lower.is_finite() && set.lower >= 0.0 && set.upper >= set.lower)
            || set.upper.is_nan()
        {
            return Err(ConstrainedError::InvalidBounds {
                set: set.id.clone(),
                lower: set.lower,
                upper: set.upper,
            });
        }
        let mut members: Vec<String> = Vec::with_capacity(set.members.len());
        let mut membership: BTreeSet<String> = BTreeSet::new();
        for member in &set.members {
            if instance.location_index(member).is_none() {
                return Err(ConstrainedError::UnknownMember {
                    set: set.id.clone(),
                    member: member.clone(),
                });
            }
            if membership.insert(member.clone()) {
                members.push(member.clone());
            }
        }
        cleaned.push(QuotaSet {
            id: set.id.clone(),
            members,
            lower: set.lower,
            upper: set.upper,
        });
        memberships.push(membership);
    }

    for i in 0..memberships.len() {
        for j in (i + 1)..memberships.len() {
            let (a, b) = (&memberships[i], &memberships[j]);
            let overlaps = a.intersection(b).next().is_some();
            if overlaps && !(a.is_subset(b) || b.is_subset(a)) {
                return Err(ConstrainedError::NotNested {
                    first: cleaned[i].id.clone(),
                    second: cleaned[j].id.clone(),
                });
            }
        }
    }

    // Peel layers bottom-up. A set stays above the current layer while some
    // unpeeled set is properly inside it, or an earlier-listed set has the
    // same membership.
    let mut layer_of: Vec<usize> = vec![0; cleaned.len()];
    let mut remaining: Vec<usize> = (0..cleaned.len()).collect();
    let mut depth = 0;
    while !remaining.is_empty() {
        let bottom: Vec<usize> = remaining
            .iter()
            .copied()
            .filter(|&i| {
                !remaining.iter().any(|&j| {
                    j != i
                        && memberships[j].is_subset(&memberships[i])
                        && (memberships[j].len() < memberships[i].len() || j < i)
                })
            })
            .collect();
        debug_assert!(!bottom.is_empty(), "a finite laminar family has minimal sets");
        for &i in &bottom {
            layer_of[i] = depth;
        }
        remaining.retain(|i| !bottom.contains(i));
        depth += 1;
    }

    // Normalize: pad each layer with pass-through singletons so that every
    // location is covered exactly once per layer.
    let mut layers: Vec<Vec<QuotaSet>> = Vec::with_capacity(depth);
    for layer in 0..depth {
        let mut entries: Vec<QuotaSet> = Vec::new();
        let mut covered: BTreeSet<&str> = BTreeSet::new();
        for (i, set) in cleaned.iter().enumerate() {
            if layer_of[i] == layer {
                for member in &set.members {
                    covered.insert(member);
                }
                entries.push(set.clone());
            }
        }
        for location in &instance.locations {
            if covered.contains(location.id.as_str()) {
                continue;
            }
            let inherited = cleaned
                .iter()
                .enumerate()
                .filter(|(i, _)| layer_of[*i] > layer && memberships[*i].contains(&location.id))
                .map(|(_, set)| set.upper)
                .fold(f64::INFINITY, f64::min);
            entries.push(QuotaSet {
                id: format!("auto-{}-{}", layer + 1, location.id),
                members: vec![location.id.clone()],
                lower: 0.0,
                upper: inherited,
            });
        }
        layers.push(entries);
    }

    Ok(Hierarchy {
        sets: cleaned,
        layers,
    })
}

/// Grows the upper quotas by one unit per set of the chosen layer,
/// propagating the increments to every enclosing set, and reports how many
/// extra resources pair with the relaxation (one per relaxed set).
///
/// The returned family keeps the same sets, members, layers, and lower
/// bounds; only upper bounds grow, so it is still a valid [`Hierarchy`].
pub fn relax_quotas(hierarchy: &Hierarchy, regime: RelaxRegime) -> (Hierarchy, f64) {
    let depth = hierarchy.layers.len();
    if depth == 0 {
        return (hierarchy.clone(), 0.0);
    }

    let mut increments: Vec<Vec<f64>> = hierarchy
        .layers
        .iter()
        .map(|layer| vec![0.0; layer.len()])
        .collect();
    let extra = match regime {
        RelaxRegime::BottomLayer => {
            for inc in increments[0].iter_mut() {
                *inc = 1.0;
            }
            propagate_up(hierarchy, &mut increments, 1);
            hierarchy.layers[0].len() as f64
        }
        RelaxRegime::SecondLayer => {
            for inc in increments[0].iter_mut() {
                *inc = 1.0;
            }
            if depth == 1 {
                // The second layer is the overall budget constraint; its
                // single extra resource is the caller's to add to R.
                1.0
            } else {
                for inc in increments[1].iter_mut() {
                    *inc += 1.0;
                }
                propagate_up(hierarchy, &mut increments, 2);
                hierarchy.layers[1].len() as f64
            }
        }
    };

    let mut layers = hierarchy.layers.clone();
    for (layer, incs) in layers.iter_mut().zip(&increments) {
        for (entry, inc) in layer.iter_mut().zip(incs) {
            entry.upper += inc;
        }
    }
    let relaxed_upper = |id: &str| -> f64 {
        layers
            .iter()
            .flatten()
            .find(|entry| entry.id == id)
            .expect("every input set appears in exactly one layer")
            .upper
    };
    let sets = hierarchy
        .sets
        .iter()
        .map(|set| QuotaSet {
            id: set.id.clone(),
            members: set.members.clone(),
            lower: set.lower,
            upper: relaxed_upper(&set.id),
        })
        .collect();

    (Hierarchy { sets, layers }, extra)
}

/// Adds each set's increment to the enclosing set one layer up, from layer
/// `from` to the top. Propagation starts from the increments already written
/// one layer below `from`.
fn propagate_up(hierarchy: &Hierarchy, increments: &mut [Vec<f64>], from: usize) {
    for layer in from..hierarchy.layers.len() {
        for (e, entry) in hierarchy.layers[layer].iter().enumerate() {
            let members: BTreeSet<&str> = entry.members.iter().map(String::as_str).collect();
            let mut inherited = 0.0;
            for (c, child) in hierarchy.layers[layer - 1].iter().enumerate() {
                if child.members.iter().all(|m| members.contains(m.as_str())) {
                    inherited += increments[layer - 1][c];
                }
            }
            increments[layer][e] += inherited;
        }
    }
}
