//! Scenario files: strict parsing, validation, and instance construction.

use patrol_core::{Instance, Location, ModelError, QuotaSet, UserType};
use serde::{Deserialize, Serialize};

/// A problem description as read from disk: the game parameters, the sites
/// with their populations, and optional quota, contract-sweep, and
/// experiment sections.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Scenario {
    pub fine: f64,
    pub deter_prob: f64,
    pub budget: f64,
    pub locations: Vec<ScenarioLocation>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub constraints: Option<Vec<ScenarioQuota>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub contract: Option<ContractSection>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub experiment: Option<ExperimentSection>,
}

/// One site and its user populations.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioLocation {
    pub id: String,
    pub types: Vec<ScenarioType>,
}

/// One user population: how many users, what they gain by defaulting, and
/// the aggregate payment mass they represent.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioType {
    pub count: f64,
    pub benefit: f64,
    pub payoff: f64,
}

/// One group quota: lower and upper bounds on the total effort placed on
/// the member sites.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ScenarioQuota {
    pub id: String,
    pub members: Vec<String>,
    pub lower: f64,
    pub upper: f64,
}

/// Contract-sweep settings.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ContractSection {
    pub step: f64,
}

/// Experiment-harness settings; flags override these defaults.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentSection {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub counterfactual: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub strategic_frac: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub citation_multiplier: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
}

/// What can go wrong reading a scenario: malformed JSON (with line/column
/// from the parser, and unknown fields named), or a value check with the
/// offending field path.
#[derive(Debug, thiserror::Error)]
pub enum ScenarioError {
    #[error("scenario is not valid JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("{path} {message}")]
    Invalid { path: String, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

fn invalid(path: impl Into<String>, message: impl Into<String>) -> ScenarioError {
    ScenarioError::Invalid {
        path: path.into(),
        message: message.into(),
    }
}

/// Parses and validates a scenario document. Unknown fields are rejected;
/// every number must be finite; errors carry the offending field path.
pub fn parse_scenario(text: &str) -> Result<Scenario, ScenarioError> {
    let scenario: Scenario = serde_json::from_str(text)?;
    validate(&scenario)?;
    Ok(scenario)
}

/// Serializes a scenario so that parsing the output reproduces it exactly.
pub fn serialize_scenario(scenario: &Scenario) -> String {
    let mut text =
        serde_json::to_string_pretty(scenario).expect("scenario types serialize infallibly");
    text.push('\n');
    text
}

fn validate(scenario: &Scenario) -> Result<(), ScenarioError> {
    if !(scenario.fine.is_finite() && scenario.fine > 0.0) {
        return Err(invalid("fine", "must be positive"));
    }
    if !(scenario.deter_prob.is_finite() && (0.0..=1.0).contains(&scenario.deter_prob)) {
        return Err(invalid("deter_prob", "must lie in [0, 1]"));
    }
    if !(scenario.budget.is_finite() && scenario.budget >= 0.0) {
        return Err(invalid("budget", "must be nonnegative"));
    }
    if scenario.locations.is_empty() {
        return Err(invalid("locations", "must not be empty"));
    }
    for (li, location) in scenario.locations.iter().enumerate() {
        let path = format!("locations[{li}]");
        if location.id.is_empty() {
            return Err(invalid(format!("{path}.id"), "must not be empty"));
        }
        if scenario.locations[..li].iter().any(|l| l.id == location.id) {
            return Err(invalid(
                format!("{path}.id"),
                "duplicates an earlier location id",
            ));
        }
        if location.types.is_empty() {
            return Err(invalid(format!("{path}.types"), "must not be empty"));
        }
        for (ti, utype) in location.types.iter().enumerate() {
            let tpath = format!("{path}.types[{ti}]");
            if !(utype.count.is_finite() && utype.count >= 0.0) {
                return Err(invalid(format!("{tpath}.count"), "must be nonnegative"));
            }
            if !(utype.benefit.is_finite() && utype.benefit > 0.0) {
                return Err(invalid(format!("{tpath}.benefit"), "must be positive"));
            }
            if !(utype.payoff.is_finite() && utype.payoff >= 0.0) {
                return Err(invalid(format!("{tpath}.payoff"), "must be nonnegative"));
            }
        }
    }
    if let Some(constraints) = &scenario.constraints {
        for (ci, quota) in constraints.iter().enumerate() {
            let path = format!("constraints[{ci}]");
            if quota.id.is_empty() {
                return Err(invalid(format!("{path}.id"), "must not be empty"));
            }
            if quota.members.is_empty() {
                return Err(invalid(format!("{path}.members"), "must not be empty"));
            }
            if !(quota.lower.is_finite() && quota.lower >= 0.0) {
                return Err(invalid(format!("{path}.lower"), "must be nonnegative"));
            }
            if !(quota.upper.is_finite() && quota.upper >= quota.lower) {
                return Err(invalid(
                    format!("{path}.upper"),
                    "must be finite and at least the lower bound",
                ));
            }
        }
    }
    if let Some(contract) = &scenario.contract {
        if !(contract.step.is_finite() && contract.step > 0.0 && contract.step <= 1.0) {
            return Err(invalid("contract.step", "must lie in (0, 1]"));
        }
    }
    if let Some(experiment) = &scenario.experiment {
        if let Some(kind) = &experiment.counterfactual {
            if kind != "threshold" && kind != "exponential" {
                return Err(invalid(
                    "experiment.counterfactual",
                    "must be \"threshold\" or \"exponential\"",
                ));
            }
        }
        if let Some(frac) = experiment.strategic_frac {
            if !(frac.is_finite() && (0.0..=1.0).contains(&frac)) {
                return Err(invalid("experiment.strategic_frac", "must lie in [0, 1]"));
            }
        }
        if let Some(multiplier) = experiment.citation_multiplier {
            if !(multiplier.is_finite() && multiplier > 0.0) {
                return Err(invalid(
                    "experiment.citation_multiplier",
                    "must be positive",
                ));
            }
        }
    }
    Ok(())
}

impl Scenario {
    /// Builds the solver-facing instance this scenario describes.
    pub fn to_instance(&self) -> Result<Instance, ScenarioError> {
        let locations = self
            .locations
            .iter()
            .map(|l| Location {
                id: l.id.clone(),
                types: l
                    .types
                    .iter()
                    .map(|t| UserType {
                        count: t.count,
                        benefit: t.benefit,
                        payoff: t.payoff,
                    })
                    .collect(),
            })
            .collect();
        Ok(Instance::new(
            self.fine,
            self.deter_prob,
            self.budget,
            locations,
        )?)
    }

    /// The quota constraints, empty when the scenario declares none.
    pub fn quota_sets(&self) -> Vec<QuotaSet> {
        self.constraints
            .as_ref()
            .map(|sets| {
                sets.iter()
                    .map(|q| QuotaSet {
                        id: q.id.clone(),
                        members: q.members.clone(),
                        lower: q.lower,
                        upper: q.upper,
                    })
                    .collect()
            })
            .unwrap_or_default()
    }

    /// True when every site has exactly one user population, which routes
    /// `solve` to the single-population sweeps.
    pub fn is_single_population(&self) -> bool {
        self.locations.iter().all(|l| l.types.len() == 1)
    }
}
