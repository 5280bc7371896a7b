//! Common result type returned by every solver in the workspace.

use crate::model::Strategy;

/// Which internal candidate a solver's max-step selected.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The marginal-value sweep produced the winning strategy.
    GreedyBranch,
    /// Concentrating the whole usable budget on one location won.
    SingleLocationBranch,
    /// An exhaustive search over a small candidate family won (used by
    /// approximation-scheme and oracle solvers).
    BruteForcePair,
}

/// A solver's output: the chosen strategy, its value, and provenance.
#[derive(Debug, Clone, PartialEq)]
pub struct SolveResult {
    /// The inspection strategy returned.
    pub strategy: Strategy,
    /// Objective value of `strategy`, always computed by re-evaluating the
    /// final strategy through the shared objective definitions — never a
    /// running total carried through the solver.
    pub objective_value: f64,
    /// Which candidate won the solver's final comparison.
    pub branch: Branch,
    /// Ordered diagnostics: greedy solvers record their allocation trace as
    /// `(location id, amount)` pairs in allocation order; search solvers
    /// record named scalars (bounds, node counts, losing candidates).
    pub diagnostics: Vec<(String, f64)>,
    /// Certified upper bound on the true optimum, when the solver computes
    /// one (exhaustive searches report `value + error`; exact solvers may
    /// report their own value).
    pub bound: Option<f64>,
}

impl SolveResult {
    /// Looks up a diagnostic by name (first match).
    pub fn diagnostic(&self, name: &str) -> Option<f64> {
        self.diagnostics
            .iter()
            .find(|(n, _)| n == name)
            .map(|&(_, v)| v)
    }
}
