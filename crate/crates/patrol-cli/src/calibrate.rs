//! Calibration of the exponential compliance curve and its discretization
//! into user populations.
//!
//! The curve models the chance that a user skips payment as `exp(-gamma *
//! sigma)`: calibration picks `gamma` so the curve passes through an
//! observed operating point, and discretization turns the continuous
//! threshold distribution it implies into a finite set of user types.

use patrol_core::UserType;

/// Benefit assigned to the never-deterred tail when inspection always
/// convicts, standing in for an unbounded gain.
const TAIL_BENEFIT_CAP_FACTOR: f64 = 1e12;

/// What can go wrong calibrating the compliance curve.
#[derive(Debug, thiserror::Error, PartialEq)]
pub enum CalibrationError {
    #[error("observed effort must be nonnegative and finite, got {0}")]
    BadEffort(f64),
    #[error("observed non-payment fraction must lie in (0, 1], got {0}")]
    BadFraction(f64),
    #[error("a flat curve through zero effort cannot match a fraction below one")]
    FlatCurve,
}

/// Fits the decay rate `gamma` so that `exp(-gamma * effort)` equals the
/// observed non-payment fraction at the observed effort level.
pub fn calibrate_exponential(effort: f64, nonpayment_frac: f64) -> Result<f64, CalibrationError> {
    if !(effort.is_finite() && effort >= 0.0) {
        return Err(CalibrationError::BadEffort(effort));
    }
    if !(nonpayment_frac.is_finite() && nonpayment_frac > 0.0 && nonpayment_frac <= 1.0) {
        return Err(CalibrationError::BadFraction(nonpayment_frac));
    }
    if nonpayment_frac == 1.0 {
        return Ok(0.0);
    }
    if effort == 0.0 {
        return Err(CalibrationError::FlatCurve);
    }
    Ok(-nonpayment_frac.ln() / effort)
}

/// Converts the calibrated curve into user populations for one site.
///
/// Under the curve, a user keeps skipping payment at effort `sigma` with
/// probability `exp(-gamma * sigma)`, so the effort threshold at which a
/// random user starts paying has CDF `F(z) = 1 - exp(-gamma * z)` on
/// `[0, 1]`. Each bin of width `step` becomes one population whose benefit
/// is chosen so its best-response threshold sits at the bin midpoint:
/// solving `tau = d / (deter_prob * d + fine)` for `d` gives
/// `d = tau * fine / (1 - deter_prob * tau)`. The mass beyond effort 1
/// never pays and becomes a tail population whose benefit puts its
/// threshold above any feasible effort. Population counts sum to
/// `population` and payment masses to `population * fee` exactly.
pub fn discretize_exponential(
    gamma: f64,
    population: f64,
    fee: f64,
    fine: f64,
    deter_prob: f64,
    step: f64,
) -> Vec<UserType> {
    assert!(gamma.is_finite() && gamma >= 0.0, "decay rate must be nonnegative");
    assert!(population.is_finite() && population >= 0.0);
    assert!(fee.is_finite() && fee >= 0.0);
    assert!(fine.is_finite() && fine > 0.0);
    assert!((0.0..=1.0).contains(&deter_prob));
    assert!(step.is_finite() && step > 0.0 && step <= 1.0);

    let tail_benefit = if deter_prob < 1.0 {
        2.0 * fine / (1.0 - deter_prob)
    } else {
        fine * TAIL_BENEFIT_CAP_FACTOR
    };

    if gamma == 0.0 {
        // A flat curve: nobody ever pays, the whole site is tail mass.
        return vec![UserType {
            count: population,
            benefit: tail_benefit,
            payoff: population * fee,
        }];
    }

    let cdf = |z: f64| 1.0 - (-gamma * z).exp();
    let bins = (1.0 / step).round().max(1.0) as usize;
    let mut types = Vec::with_capacity(bins + 1);
    for i in 0..bins {
        let lo = i as f64 * step;
        let hi = ((i + 1) as f64 * step).min(1.0);
        if lo >= 1.0 {
            break;
        }
        let mass = population * (cdf(hi) - cdf(lo));
        if mass <= 0.0 {
            continue;
        }
        let mid = 0.5 * (lo + hi);
        let benefit = mid * fine / (1.0 - deter_prob * mid);
        types.push(UserType {
            count: mass,
            benefit,
            payoff: mass * fee,
        });
    }
    let tail_mass = population * (-gamma).exp();
    if tail_mass > 0.0 || types.is_empty() {
        // The zero-mass tail keeps an empty population list from ever
        // leaving this function; downstream models require at least one
        // type per site.
        types.push(UserType {
            count: tail_mass,
            benefit: tail_benefit,
            payoff: tail_mass * fee,
        });
    }
    types
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn the_curve_passes_through_the_observed_point() {
        let gamma = calibrate_exponential(0.5, (-1.0f64).exp()).unwrap();
        assert!((gamma - 2.0).abs() < 1e-12);
        assert!(((-gamma * 0.5f64).exp() - (-1.0f64).exp()).abs() < 1e-12);
    }

    #[test]
    fn full_nonpayment_calibrates_to_a_flat_curve() {
        assert_eq!(calibrate_exponential(0.125, 1.0).unwrap(), 0.0);
    }

    #[test]
    fn impossible_observations_are_rejected() {
        assert_eq!(
            calibrate_exponential(0.0, 0.5).unwrap_err(),
            CalibrationError::FlatCurve
        );
        assert!(matches!(
            calibrate_exponential(0.1, 0.0),
            Err(CalibrationError::BadFraction(_))
        ));
        assert!(matches!(
            calibrate_exponential(0.1, 1.5),
            Err(CalibrationError::BadFraction(_))
        ));
        assert!(matches!(
            calibrate_exponential(-0.1, 0.5),
            Err(CalibrationError::BadEffort(_))
        ));
    }

    #[test]
    fn discretization_conserves_population_and_payment_mass() {
        let population = 120.0;
        let fee = 1.23;
        let types = discretize_exponential(2.4, population, fee, 45.0, 0.0, 0.01);
        let total: f64 = types.iter().map(|t| t.count).sum();
        let mass: f64 = types.iter().map(|t| t.payoff).sum();
        assert!((total - population).abs() < 1e-9 * population);
        assert!((mass - population * fee).abs() < 1e-9 * population * fee);
    }

    #[test]
    fn bin_benefits_place_thresholds_at_bin_midpoints() {
        let fine = 45.0;
        let deter_prob = 0.7;
        let types = discretize_exponential(1.0, 10.0, 2.0, fine, deter_prob, 0.25);
        // First bin midpoint 0.125: check d / (beta d + k) recovers it.
        let d = types[0].benefit;
        let tau = d / (deter_prob * d + fine);
        assert!((tau - 0.125).abs() < 1e-12);
    }

    #[test]
    fn a_flat_curve_yields_a_single_undeterrable_population() {
        let types = discretize_exponential(0.0, 7.0, 3.0, 10.0, 0.0, 0.01);
        assert_eq!(types.len(), 1);
        assert_eq!(types[0].count, 7.0);
        assert_eq!(types[0].payoff, 21.0);
        assert!(types[0].benefit >= 2.0 * 10.0);
    }

    #[test]
    fn a_steep_curve_concentrates_mass_in_the_first_bins() {
        let types = discretize_exponential(40.0, 100.0, 1.0, 10.0, 0.0, 0.1);
        // 1 - exp(-4) of the mass sits in the first bin.
        assert!(types[0].count > 98.0);
        let tail: f64 = types.iter().skip(1).map(|t| t.count).sum();
        assert!(tail < 2.0);
    }
}
