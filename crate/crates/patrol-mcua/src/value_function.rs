//! Per-location value functions on a restricted domain `[0, t_l]`.

use patrol_core::{is_never_deterred, threshold, Location, TOLERANCE};

use crate::McuaError;

/// Which per-location value a [`ValueFunction`] measures.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ValueObjective {
    /// Fine revenue: rays through the origin, dropping past each threshold.
    Revenue,
    /// Recovered payments: partial-recovery slope, jumping at thresholds.
    Payoff,
}

/// One breakpoint of a piecewise-linear value function.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Breakpoint {
    /// Inspection level of the break (a type threshold, or the domain end).
    pub sigma: f64,
    /// Limit of the value as the level approaches from below.
    pub value_left_limit: f64,
    /// Value exactly at the break, with ties resolved in the
    /// administrator's favor (revenue keeps the defaulter, payoff deters).
    pub value_at: f64,
}

/// A location's value as a function of its inspection level on `[0, t_l]`:
/// piecewise linear between breakpoints, with `value(0) = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct ValueFunction {
    /// Breakpoints, strictly increasing in sigma, all in `(0, t_l]`; the
    /// last one sits exactly at `domain_max`.
    pub breakpoints: Vec<Breakpoint>,
    /// Domain endpoint `t_l`.
    pub domain_max: f64,
    /// Which value the function measures.
    pub objective: ValueObjective,
}

impl ValueFunction {
    /// Evaluates the function at `sigma ∈ [0, domain_max]` (values beyond
    /// the domain continue the final piece's rule).
    ///
    /// Revenue pieces are rays through the origin aimed at the next
    /// breakpoint's value; payoff pieces interpolate from the previous
    /// breakpoint's value to the next one's left limit.
    pub fn eval(&self, sigma: f64) -> f64 {
        if sigma <= 0.0 {
            return 0.0;
        }
        let mut prev_sigma = 0.0;
        let mut prev_value = 0.0;
        for bp in &self.breakpoints {
            if sigma < bp.sigma - 1e-15 {
                return match self.objective {
                    ValueObjective::Revenue => sigma * (bp.value_left_limit / bp.sigma),
                    ValueObjective::Payoff => {
                        let t = (sigma - prev_sigma) / (bp.sigma - prev_sigma);
                        prev_value + t * (bp.value_left_limit - prev_value)
                    }
                };
            }
            if sigma <= bp.sigma + 1e-15 {
                return bp.value_at;
            }
            prev_sigma = bp.sigma;
            prev_value = bp.value_at;
        }
        // Past the final breakpoint (outside the nominal domain): revenue
        // keeps its last ray's slope of zero defaulters removed — continue
        // the value at the endpoint; payoff likewise stays flat.
        prev_value
    }
}

/// Builds the value function of one location under the given objective,
/// restricted to `[0, t_l]`.
///
/// Breakpoints sit at each distinct deterrable-type threshold `≤ t_l`, plus
/// `t_l` itself. Types that can never be deterred contribute their
/// defaulting value to every piece.
pub fn location_value_function(
    location: &Location,
    fine: f64,
    deter_prob: f64,
    objective: ValueObjective,
    t_l: f64,
) -> Result<ValueFunction, McuaError> {
    if location.types.is_empty() {
        return Err(McuaError::NoTypes {
            id: location.id.clone(),
        });
    }
    if !(t_l.is_finite() && t_l > 0.0 && t_l <= 1.0) {
        return Err(McuaError::InvalidDomain { t: t_l });
    }
    let mut sigmas: Vec<f64> = location
        .types
        .iter()
        .filter(|t| !is_never_deterred(t, fine, deter_prob))
        .map(|t| threshold(t, fine, deter_prob))
        .filter(|&tau| tau <= t_l + TOLERANCE)
        .map(|tau| tau.min(t_l))
        .collect();
    sigmas.push(t_l);
    sigmas.sort_by(|a, b| a.partial_cmp(b).expect("finite thresholds"));
    sigmas.dedup_by(|a, b| (*a - *b).abs() <= TOLERANCE);

    let value = |sigma: f64, tie_defaults: bool| -> f64 {
        let mut total = 0.0;
        for utype in &location.types {
            let never = is_never_deterred(utype, fine, deter_prob);
            let tau = threshold(utype, fine, deter_prob);
            let defaults = never
                || sigma < tau - TOLERANCE
                || ((sigma - tau).abs() <= TOLERANCE && tie_defaults);
            total += match objective {
                ValueObjective::Revenue => {
                    if defaults {
                        sigma * fine * utype.count
                    } else {
                        0.0
                    }
                }
                ValueObjective::Payoff => {
                    if defaults {
                        deter_prob * sigma * utype.payoff
                    } else {
                        utype.payoff
                    }
                }
            };
        }
        total
    };

    let breakpoints = sigmas
        .into_iter()
        .map(|sigma| Breakpoint {
            sigma,
            // Approaching from below, threshold types have not yet
            // switched: they still default.
            value_left_limit: value(sigma, true),
            // At the break itself the tie goes the administrator's way:
            // revenue keeps the defaulter, payoff deters.
            value_at: match objective {
                ValueObjective::Revenue => value(sigma, true),
                ValueObjective::Payoff => value(sigma, false),
            },
        })
        .collect();
    Ok(ValueFunction {
        breakpoints,
        domain_max: t_l,
        objective,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use patrol_core::UserType;

    fn loc(types: &[(f64, f64, f64)]) -> Location {
        Location {
            id: "l".into(),
            types: types
                .iter()
                .map(|&(count, benefit, payoff)| UserType {
                    count,
                    benefit,
                    payoff,
                })
                .collect(),
        }
    }

    #[test]
    fn revenue_example_values() {
        // Counts (2, 1) with thresholds (0.25, 0.5) at fine 1 (benefits
        // 1/3 and 1 give those thresholds at full deterrence probability).
        let location = loc(&[(2.0, 1.0 / 3.0, 0.0), (1.0, 1.0, 0.0)]);
        let vf =
            location_value_function(&location, 1.0, 1.0, ValueObjective::Revenue, 0.5).unwrap();
        assert!((vf.eval(0.25) - 0.75).abs() < 1e-12);
        assert!((vf.eval(0.5) - 0.5).abs() < 1e-12);
        assert_eq!(vf.eval(0.0), 0.0);
        // Just past the first threshold the big type complies: ray drops.
        assert!((vf.eval(0.26) - 0.26).abs() < 1e-12);
    }

    #[test]
    fn payoff_example_values() {
        // Single type, p = 1, threshold 0.5 (benefit = fine), beta = 1.
        let location = loc(&[(1.0, 4.0, 1.0)]);
        let vf = location_value_function(&location, 4.0, 1.0, ValueObjective::Payoff, 0.5).unwrap();
        assert!((vf.eval(0.5) - 1.0).abs() < 1e-12);
        assert!((vf.eval(0.49) - 0.49).abs() < 1e-12);
        assert_eq!(vf.eval(0.0), 0.0);
    }

    #[test]
    fn matches_the_shared_location_value_on_a_grid() {
        use patrol_core::{location_value, ObjectiveMode};
        let location = loc(&[(2.0, 0.5, 3.0), (1.0, 2.0, 1.0), (1.5, 4.0, 2.0)]);
        let (fine, beta, t_l) = (3.0, 1.0, 0.9);
        for (vf_obj, mode) in [
            (ValueObjective::Revenue, ObjectiveMode::Revenue),
            (ValueObjective::Payoff, ObjectiveMode::Payoff),
        ] {
            let vf = location_value_function(&location, fine, beta, vf_obj, t_l).unwrap();
            for i in 0..=900 {
                let sigma = i as f64 * 1e-3;
                let direct = location_value(&location, fine, beta, mode, sigma);
                assert!(
                    (vf.eval(sigma) - direct).abs() < 1e-9,
                    "{vf_obj:?} at {sigma}: {} vs {direct}",
                    vf.eval(sigma)
                );
            }
        }
    }

    #[test]
    fn breakpoints_are_strictly_increasing_and_end_at_the_domain() {
        let location = loc(&[(1.0, 1.0, 1.0), (1.0, 1.0, 2.0), (1.0, 3.0, 1.0)]);
        let vf = location_value_function(&location, 4.0, 1.0, ValueObjective::Payoff, 0.8).unwrap();
        for w in vf.breakpoints.windows(2) {
            assert!(w[0].sigma < w[1].sigma);
        }
        assert_eq!(vf.breakpoints.last().unwrap().sigma, 0.8);
    }

    #[test]
    fn thresholds_beyond_the_domain_are_dropped() {
        // Threshold 0.5 > t_l = 0.3: only the domain-end breakpoint remains,
        // and the payoff stays in its partial-recovery regime throughout.
        let location = loc(&[(1.0, 4.0, 2.0)]);
        let vf = location_value_function(&location, 4.0, 1.0, ValueObjective::Payoff, 0.3).unwrap();
        assert_eq!(vf.breakpoints.len(), 1);
        assert!((vf.eval(0.3) - 0.6).abs() < 1e-12);
    }

    #[test]
    fn never_deterred_types_default_in_every_piece() {
        // beta = 0 and benefit > fine: the type defaults everywhere, so
        // revenue is a single unbroken ray across the whole domain.
        let location = loc(&[(2.0, 5.0, 1.0)]);
        let vf = location_value_function(&location, 1.0, 0.0, ValueObjective::Revenue, 1.0)
            .unwrap();
        assert_eq!(vf.breakpoints.len(), 1);
        assert!((vf.eval(1.0) - 2.0).abs() < 1e-12);
        assert!((vf.eval(0.4) - 0.8).abs() < 1e-12);
    }

    #[test]
    fn rejects_bad_inputs() {
        let empty = Location {
            id: "l".into(),
            types: vec![],
        };
        assert!(matches!(
            location_value_function(&empty, 1.0, 1.0, ValueObjective::Revenue, 0.5),
            Err(McuaError::NoTypes { .. })
        ));
        let location = loc(&[(1.0, 1.0, 1.0)]);
        for bad in [0.0, -0.5, 1.5, f64::NAN] {
            assert!(matches!(
                location_value_function(&location, 1.0, 1.0, ValueObjective::Revenue, bad),
                Err(McuaError::InvalidDomain { .. })
            ));
        }
    }
}
