//! Command-line dispatch: argument parsing, scenario loading, solver and
//! harness invocation, and CSV emission.
//!
//! Exit codes: 0 on success, 1 when `verify` finds a violated law, 2 on
//! any input problem (bad flags, unreadable files, invalid scenarios,
//! solver preconditions).

use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};

use crate::experiment::{exponential_sweep, synthetic_enforcement_scenario, threshold_sweep};
use crate::format::format_value;
use crate::scenario::{parse_scenario, serialize_scenario, Scenario, ScenarioError};
use patrol_constrained::{constrained_greedy, validate_hierarchy, ConstrainedError};
use patrol_contracts::{dense_sample, ContractError};
use patrol_core::{
    validate_strategy, Instance, ModelError, ObjectiveMode, SolveResult, Strategy,
};
use patrol_heterogeneous::{greedy_payoff_het, greedy_revenue_het};
use patrol_homogeneous::{greedy_payoff, greedy_revenue, ptas_payoff, SolverError};
use patrol_oracles::{
    grid_oracle, knapsack_lp_bound, structural_oracle, OracleError, OracleLimits,
};

/// Planning toolkit for budgeted inspection games: sweep solvers,
/// contract sweeps, quota-constrained planning, exhaustive oracles, and
/// seeded experiment harnesses.
#[derive(Parser, Debug)]
#[command(name = "patrol", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum ObjectiveArg {
    /// Maximize expected fine revenue.
    Revenue,
    /// Maximize recovered payments.
    Payoff,
}

impl ObjectiveArg {
    fn mode(self) -> ObjectiveMode {
        match self {
            ObjectiveArg::Revenue => ObjectiveMode::Revenue,
            ObjectiveArg::Payoff => ObjectiveMode::Payoff,
        }
    }
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum OracleMethod {
    /// Exhaustive search over deterrence-structure branches (exact).
    Structural,
    /// Exhaustive search over an effort grid plus known breakpoints.
    Grid,
}

#[derive(ValueEnum, Clone, Copy, Debug, PartialEq)]
enum Counterfactual {
    /// All-or-nothing compliance: strategic drivers pay exactly when
    /// patrols clear their fee threshold.
    Threshold,
    /// Smooth compliance: non-payment decays exponentially with patrol
    /// effort, calibrated through the observed operating point.
    Exponential,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Solve a scenario with the sweep solver for the chosen objective.
    Solve {
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        #[arg(long)]
        input: PathBuf,
        /// Replace the scenario's patrol budget.
        #[arg(long)]
        budget: Option<f64>,
        /// Extra patrol resources added on top of the budget.
        #[arg(long)]
        augment: Option<f64>,
    },
    /// Approximate the best recovered-payment plan within factor 1 - 1/(m+1).
    Ptas {
        #[arg(long)]
        input: PathBuf,
        /// Enumeration depth; larger m tightens the guarantee.
        #[arg(long)]
        m: usize,
        /// Effort granularity; defaults to 1/(m+1).
        #[arg(long)]
        delta: Option<f64>,
    },
    /// Sweep revenue-share contracts and emit the outcome grid as CSV.
    Contract {
        #[arg(long)]
        input: PathBuf,
        /// Share grid step; defaults to the scenario's contract.step, else 0.05.
        #[arg(long)]
        step: Option<f64>,
    },
    /// Solve a scenario whose constraints form a nested quota family.
    Constrained {
        #[arg(long)]
        input: PathBuf,
    },
    /// Compute a ground-truth optimum with an exhaustive oracle.
    Oracle {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OracleMethod::Structural)]
        method: OracleMethod,
        /// Effort grid step for the grid method (default 0.005).
        #[arg(long)]
        step: Option<f64>,
        #[arg(long, value_enum, default_value_t = ObjectiveArg::Payoff)]
        objective: ObjectiveArg,
    },
    /// Check solver guarantees against oracles on one scenario; prints one
    /// PASS/FAIL/SKIP line per law.
    Verify {
        #[arg(long)]
        input: PathBuf,
    },
    /// Seeded synthetic experiments: compliance counterfactuals on a
    /// generated campus, or a large random scenario file.
    Experiment {
        #[arg(long, value_enum)]
        counterfactual: Option<Counterfactual>,
        /// Evaluate one strategic fraction instead of the default sweep.
        #[arg(long)]
        strategic_frac: Option<f64>,
        /// Evaluate one citation multiplier instead of the default sweep.
        #[arg(long)]
        citation_multiplier: Option<f64>,
        /// Generate a large random enforcement scenario instead of
        /// running a counterfactual.
        #[arg(long)]
        synthetic_ipt: bool,
        /// Random seed; required for --synthetic-ipt, defaults to 2022
        /// for counterfactuals.
        #[arg(long)]
        seed: Option<u64>,
        /// Citation amount for generated scenarios.
        #[arg(long, default_value_t = 100.0)]
        fine: f64,
        /// Patrol budget for generated scenarios.
        #[arg(long, default_value_t = 10.0)]
        budget: f64,
        /// Exponent x in the payment mass count * gain^x of generated
        /// scenarios.
        #[arg(long, default_value_t = 1.0)]
        payoff_exponent: f64,
        /// Write the result here instead of stdout.
        #[arg(long)]
        output: Option<PathBuf>,
    },
}

#[derive(Debug, thiserror::Error)]
enum CommandError {
    #[error("cannot read {path}: {source}")]
    ReadFile {
        path: String,
        source: std::io::Error,
    },
    #[error("cannot write {path}: {source}")]
    WriteFile {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Scenario(#[from] ScenarioError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Solver(#[from] SolverError),
    #[error(transparent)]
    Contract(#[from] ContractError),
    #[error(transparent)]
    Constrained(#[from] ConstrainedError),
    #[error(transparent)]
    Oracle(#[from] OracleError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

fn input_error(message: impl Into<String>) -> CommandError {
    CommandError::Input(message.into())
}

/// Runs one CLI invocation against the given output sink and returns the
/// process exit code. Errors are printed to stderr.
pub fn run_command<I, T>(args: I, out: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            if matches!(err.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                let _ = write!(out, "{err}");
                return 0;
            }
            eprint!("{err}");
            return 2;
        }
    };
    match dispatch(cli.command, out) {
        Ok(code) => code,
        Err(err) => {
            eprintln!("error: {err}");
            2
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write) -> Result<i32, CommandError> {
    match command {
        Command::Solve {
            objective,
            input,
            budget,
            augment,
        } => run_solve(&input, objective, budget, augment, out),
        Command::Ptas { input, m, delta } => run_ptas(&input, m, delta, out),
        Command::Contract { input, step } => run_contract(&input, step, out),
        Command::Constrained { input } => run_constrained(&input, out),
        Command::Oracle {
            input,
            method,
            step,
            objective,
        } => run_oracle(&input, method, step, objective, out),
        Command::Verify { input } => run_verify(&input, out),
        Command::Experiment {
            counterfactual,
            strategic_frac,
            citation_multiplier,
            synthetic_ipt,
            seed,
            fine,
            budget,
            payoff_exponent,
            output,
        } => run_experiment(
            counterfactual,
            strategic_frac,
            citation_multiplier,
            synthetic_ipt,
            seed,
            fine,
            budget,
            payoff_exponent,
            output.as_deref(),
            out,
        ),
    }
}

fn load_scenario(path: &Path) -> Result<Scenario, CommandError> {
    let text = std::fs::read_to_string(path).map_err(|source| CommandError::ReadFile {
        path: path.display().to_string(),
        source,
    })?;
    Ok(parse_scenario(&text)?)
}

fn effective_instance(
    scenario: &Scenario,
    budget: Option<f64>,
    augment: Option<f64>,
) -> Result<Instance, CommandError> {
    let mut instance = scenario.to_instance()?;
    if let Some(budget) = budget {
        instance = instance.with_budget(budget)?;
    }
    if let Some(extra) = augment {
        if !(extra.is_finite() && extra >= 0.0) {
            return Err(input_error("--augment must be nonnegative"));
        }
        instance = instance.with_budget(instance.budget + extra)?;
    }
    Ok(instance)
}

/// Emits the solved value and one `location,effort` row per site, in the
/// scenario's location order.
fn emit_solution(
    out: &mut dyn Write,
    instance: &Instance,
    result: &SolveResult,
) -> Result<(), CommandError> {
    writeln!(out, "value,{}", format_value(result.objective_value))?;
    writeln!(out, "location,effort")?;
    for location in &instance.locations {
        let sigma = result.strategy.get(&location.id).unwrap_or(0.0);
        writeln!(out, "{},{}", location.id, format_value(sigma))?;
    }
    Ok(())
}

fn run_solve(
    input: &Path,
    objective: ObjectiveArg,
    budget: Option<f64>,
    augment: Option<f64>,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    let scenario = load_scenario(input)?;
    let instance = effective_instance(&scenario, budget, augment)?;
    let result = match (objective, scenario.is_single_population()) {
        (ObjectiveArg::Revenue, true) => greedy_revenue(&instance)?,
        (ObjectiveArg::Payoff, true) => greedy_payoff(&instance)?,
        (ObjectiveArg::Revenue, false) => greedy_revenue_het(&instance),
        (ObjectiveArg::Payoff, false) => greedy_payoff_het(&instance),
    };
    emit_solution(out, &instance, &result)?;
    Ok(0)
}

fn run_ptas(
    input: &Path,
    m: usize,
    delta: Option<f64>,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    let scenario = load_scenario(input)?;
    let instance = scenario.to_instance()?;
    let delta = delta.unwrap_or(1.0 / (m as f64 + 1.0));
    let result = ptas_payoff(&instance, m, delta)?;
    emit_solution(out, &instance, &result)?;
    Ok(0)
}

fn run_contract(
    input: &Path,
    step: Option<f64>,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    let scenario = load_scenario(input)?;
    let instance = scenario.to_instance()?;
    let step = step
        .or(scenario.contract.as_ref().map(|c| c.step))
        .unwrap_or(0.05);
    let (_best, sweep) = dense_sample(&instance, step)?;
    writeln!(out, "alpha,revenue,payoff,admin_objective,principal_objective")?;
    for outcome in &sweep {
        let revenue = outcome.admin_objective - outcome.alpha * outcome.payoff;
        writeln!(
            out,
            "{},{},{},{},{}",
            format_value(outcome.alpha),
            format_value(revenue),
            format_value(outcome.payoff),
            format_value(outcome.admin_objective),
            format_value(outcome.principal_objective),
        )?;
    }
    Ok(0)
}

fn run_constrained(input: &Path, out: &mut dyn Write) -> Result<i32, CommandError> {
    let scenario = load_scenario(input)?;
    let instance = scenario.to_instance()?;
    let sets = scenario.quota_sets();
    let hierarchy = validate_hierarchy(&sets, &instance)?;
    let result = constrained_greedy(&instance, &hierarchy)?;
    emit_solution(out, &instance, &result)?;
    Ok(0)
}

fn run_oracle(
    input: &Path,
    method: OracleMethod,
    step: Option<f64>,
    objective: ObjectiveArg,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    let scenario = load_scenario(input)?;
    let instance = scenario.to_instance()?;
    let sets = scenario.quota_sets();
    let result = match method {
        OracleMethod::Structural => {
            if !sets.is_empty() {
                return Err(input_error(
                    "the structural method does not support constraints; use --method grid",
                ));
            }
            if step.is_some() {
                return Err(input_error("--step applies to the grid method"));
            }
            structural_oracle(&instance, objective.mode())?
        }
        OracleMethod::Grid => {
            let step = step.unwrap_or(0.005);
            let constraints = (!sets.is_empty()).then_some(sets.as_slice());
            grid_oracle(&instance, objective.mode(), step, constraints)?
        }
    };
    emit_solution(out, &instance, &result)?;
    Ok(0)
}

enum LawOutcome {
    Pass,
    Fail(String),
    Skip(String),
}

fn check_at_least(value: f64, floor: f64) -> LawOutcome {
    if value >= floor - 1e-9 {
        LawOutcome::Pass
    } else {
        LawOutcome::Fail(format!("{value} < {floor}"))
    }
}

/// Runs the guarantee battery on one scenario. Laws beyond the exhaustive
/// oracle's limits are skipped; any failure drives the exit code to 1.
fn run_verify(input: &Path, out: &mut dyn Write) -> Result<i32, CommandError> {
    let scenario = load_scenario(input)?;
    let instance = scenario.to_instance()?;
    let sets = scenario.quota_sets();
    let hierarchy = if sets.is_empty() {
        None
    } else {
        Some(validate_hierarchy(&sets, &instance)?)
    };

    let limits = OracleLimits::default();
    let within_limits = instance.locations.len() <= limits.max_locations
        && instance
            .locations
            .iter()
            .all(|l| l.types.len() <= limits.max_types_per_location);
    let skip_reason = "beyond exhaustive-oracle limits";

    let mut failures = 0usize;
    let mut report = |out: &mut dyn Write, name: &str, outcome: LawOutcome| -> Result<(), CommandError> {
        match outcome {
            LawOutcome::Pass => writeln!(out, "PASS {name}")?,
            LawOutcome::Fail(why) => {
                failures += 1;
                writeln!(out, "FAIL {name} ({why})")?;
            }
            LawOutcome::Skip(why) => writeln!(out, "SKIP {name} ({why})")?,
        }
        Ok(())
    };

    if scenario.is_single_population() {
        if within_limits {
            let oracle_revenue = structural_oracle(&instance, ObjectiveMode::Revenue)?;
            let greedy = greedy_revenue(&instance)?;
            let gap = (greedy.objective_value - oracle_revenue.objective_value).abs();
            report(
                out,
                "revenue-sweep-equals-exhaustive-optimum",
                if gap <= 1e-9 {
                    LawOutcome::Pass
                } else {
                    LawOutcome::Fail(format!("gap {gap}"))
                },
            )?;

            let oracle_payoff = structural_oracle(&instance, ObjectiveMode::Payoff)?;
            let greedy = greedy_payoff(&instance)?;
            report(
                out,
                "payoff-sweep-within-half-of-optimum",
                check_at_least(greedy.objective_value, 0.5 * oracle_payoff.objective_value),
            )?;

            let relaxation = knapsack_lp_bound(&instance)?;
            let chain = [
                (2.0 * greedy.objective_value, relaxation),
                (relaxation, oracle_payoff.objective_value),
                (oracle_payoff.objective_value, greedy.objective_value),
            ];
            let broken = chain.iter().find(|(hi, lo)| hi < &(lo - 1e-9));
            report(
                out,
                "doubled-payoff-sweep-caps-relaxation-ceiling",
                match broken {
                    None => LawOutcome::Pass,
                    Some((hi, lo)) => LawOutcome::Fail(format!("{hi} < {lo}")),
                },
            )?;
        } else {
            for name in [
                "revenue-sweep-equals-exhaustive-optimum",
                "payoff-sweep-within-half-of-optimum",
                "doubled-payoff-sweep-caps-relaxation-ceiling",
            ] {
                report(out, name, LawOutcome::Skip(skip_reason.to_owned()))?;
            }
        }
    } else if within_limits {
        let oracle_payoff = structural_oracle(&instance, ObjectiveMode::Payoff)?;
        report(
            out,
            "recovery-sweep-within-half-of-optimum",
            check_at_least(
                greedy_payoff_het(&instance).objective_value,
                0.5 * oracle_payoff.objective_value,
            ),
        )?;
        let oracle_revenue = structural_oracle(&instance, ObjectiveMode::Revenue)?;
        report(
            out,
            "fine-sweep-within-half-of-optimum",
            check_at_least(
                greedy_revenue_het(&instance).objective_value,
                0.5 * oracle_revenue.objective_value,
            ),
        )?;
    } else {
        for name in [
            "recovery-sweep-within-half-of-optimum",
            "fine-sweep-within-half-of-optimum",
        ] {
            report(out, name, LawOutcome::Skip(skip_reason.to_owned()))?;
        }
    }

    if let Some(hierarchy) = &hierarchy {
        let outcome = match constrained_greedy(&instance, hierarchy) {
            Ok(result) => quota_respect_outcome(&scenario, &instance, &result.strategy),
            Err(ConstrainedError::InfeasibleLowerBound { set, .. }) => LawOutcome::Skip(format!(
                "lower bounds are infeasible within the budget (set `{set}`)"
            )),
            Err(other) => return Err(other.into()),
        };
        report(out, "plan-respects-every-quota", outcome)?;
    }

    Ok(if failures > 0 { 1 } else { 0 })
}

fn quota_respect_outcome(
    scenario: &Scenario,
    instance: &Instance,
    strategy: &Strategy,
) -> LawOutcome {
    let violations = validate_strategy(instance, strategy);
    if !violations.is_empty() {
        return LawOutcome::Fail(format!("{:?}", violations[0]));
    }
    for quota in scenario.quota_sets() {
        let allocated: f64 = quota
            .members
            .iter()
            .map(|id| strategy.get(id).unwrap_or(0.0))
            .sum();
        if allocated > quota.upper + 1e-9 || allocated < quota.lower - 1e-9 {
            return LawOutcome::Fail(format!(
                "set `{}` holds {} outside [{}, {}]",
                quota.id, allocated, quota.lower, quota.upper
            ));
        }
    }
    LawOutcome::Pass
}

#[allow(clippy::too_many_arguments)]
fn run_experiment(
    counterfactual: Option<Counterfactual>,
    strategic_frac: Option<f64>,
    citation_multiplier: Option<f64>,
    synthetic_ipt: bool,
    seed: Option<u64>,
    fine: f64,
    budget: f64,
    payoff_exponent: f64,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CommandError> {
    if synthetic_ipt {
        if counterfactual.is_some() || strategic_frac.is_some() || citation_multiplier.is_some() {
            return Err(input_error(
                "--synthetic-ipt does not combine with counterfactual flags",
            ));
        }
        let seed = seed.ok_or_else(|| input_error("--synthetic-ipt requires --seed"))?;
        if !(fine.is_finite() && fine > 0.0) {
            return Err(input_error("--fine must be positive"));
        }
        if !(budget.is_finite() && budget >= 0.0) {
            return Err(input_error("--budget must be nonnegative"));
        }
        if !payoff_exponent.is_finite() {
            return Err(input_error("--payoff-exponent must be finite"));
        }
        let scenario = synthetic_enforcement_scenario(seed, fine, budget, payoff_exponent);
        return write_output(out, output, &serialize_scenario(&scenario));
    }

    let Some(kind) = counterfactual else {
        return Err(input_error(
            "choose --counterfactual threshold|exponential or --synthetic-ipt",
        ));
    };
    let seed = seed.unwrap_or(2022);
    let mut text = format!("# seed {seed}\n");
    match kind {
        Counterfactual::Threshold => {
            if citation_multiplier.is_some() {
                return Err(input_error(
                    "--citation-multiplier applies to the exponential counterfactual",
                ));
            }
            let fracs: Vec<f64> = match strategic_frac {
                Some(frac) => {
                    if !(frac.is_finite() && (0.0..=1.0).contains(&frac)) {
                        return Err(input_error("--strategic-frac must lie in [0, 1]"));
                    }
                    vec![frac]
                }
                None => (0..=10).map(|i| f64::from(i) / 10.0).collect(),
            };
            text.push_str("strategic_frac,greedy_earnings,uniform_earnings\n");
            for (frac, greedy, uniform) in threshold_sweep(seed, &fracs) {
                text.push_str(&format!(
                    "{},{},{}\n",
                    format_value(frac),
                    format_value(greedy),
                    format_value(uniform)
                ));
            }
        }
        Counterfactual::Exponential => {
            if strategic_frac.is_some() {
                return Err(input_error(
                    "--strategic-frac applies to the threshold counterfactual",
                ));
            }
            let multipliers: Vec<f64> = match citation_multiplier {
                Some(multiplier) => {
                    if !(multiplier.is_finite() && multiplier > 0.0) {
                        return Err(input_error("--citation-multiplier must be positive"));
                    }
                    vec![multiplier]
                }
                None => (1..=8).map(|i| f64::from(i) * 0.25).collect(),
            };
            text.push_str("citation_multiplier,greedy_earnings,uniform_earnings\n");
            for (multiplier, greedy, uniform) in exponential_sweep(seed, &multipliers) {
                text.push_str(&format!(
                    "{},{},{}\n",
                    format_value(multiplier),
                    format_value(greedy),
                    format_value(uniform)
                ));
            }
        }
    }
    write_output(out, output, &text)
}

fn write_output(
    out: &mut dyn Write,
    path: Option<&Path>,
    text: &str,
) -> Result<i32, CommandError> {
    match path {
        Some(path) => std::fs::write(path, text).map_err(|source| CommandError::WriteFile {
            path: path.display().to_string(),
            source,
        })?,
        None => out.write_all(text.as_bytes())?,
    }
    Ok(0)
}
