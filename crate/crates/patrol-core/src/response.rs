//! Deterrence thresholds and the tie-broken user best response.

use crate::model::{ObjectiveMode, UserType};
use crate::TOLERANCE;

/// Indifference threshold of a user type, clamped to `[0, 1]`:
///
/// ```text
/// tau = min(1, d / (beta * d + k))
/// ```
///
/// Below `tau` the user strictly prefers defaulting; above it, complying.
/// Types whose unclamped ratio exceeds 1 can never be deterred (see
/// [`is_never_deterred`]); their clamped threshold is 1 but no inspection
/// level changes their behavior.
pub fn threshold(utype: &UserType, fine: f64, deter_prob: f64) -> f64 {
    raw_threshold(utype, fine, deter_prob).min(1.0)
}

/// True when the type defaults at every inspection level, including
/// `sigma = 1`: the defaulting benefit outweighs the worst-case expected
/// penalty, `d > beta*d + k`.
pub fn is_never_deterred(utype: &UserType, fine: f64, deter_prob: f64) -> bool {
    raw_threshold(utype, fine, deter_prob) > 1.0 + TOLERANCE
}

fn raw_threshold(utype: &UserType, fine: f64, deter_prob: f64) -> f64 {
    utype.benefit / (deter_prob * utype.benefit + fine)
}

/// The user's best response `y` (`true` = default, `false` = comply) under
/// an inspection probability `sigma`, with indifference at the threshold
/// broken in the administrator's favor according to `mode`:
///
/// - `Revenue`: the defaulting user keeps paying fines, so ties keep `y = 1`;
/// - `Payoff`: deterrence recovers the full payment, so ties take `y = 0`;
/// - `Contract(alpha)`: ties take `y = 0` exactly when the complying value
///   `alpha*p` weakly beats the defaulting value `(k*count + alpha*p)*tau`.
pub fn best_response(
    utype: &UserType,
    sigma: f64,
    fine: f64,
    deter_prob: f64,
    mode: ObjectiveMode,
) -> bool {
    if is_never_deterred(utype, fine, deter_prob) {
        return true;
    }
    let tau = threshold(utype, fine, deter_prob);
    if sigma < tau - TOLERANCE {
        return true;
    }
    if sigma > tau + TOLERANCE {
        return false;
    }
    // At the threshold the user is indifferent; the administrator picks.
    match mode {
        ObjectiveMode::Revenue => true,
        ObjectiveMode::Payoff => false,
        ObjectiveMode::Contract(alpha) => {
            let defaulting = (fine * utype.count + alpha * utype.payoff) * tau;
            let complying = alpha * utype.payoff;
            defaulting > complying + TOLERANCE
        }
    }
}
