//! Concave-hull segments over value-function breakpoints.

use crate::{McuaError, ValueFunction};

/// One linear segment of a location's concave upper approximation.
#[derive(Debug, Clone, PartialEq)]
pub struct Segment {
    /// Location the segment belongs to.
    pub location: String,
    /// Marginal value per unit of inspection (nonnegative).
    pub slope: f64,
    /// Inspection amount the segment spans (positive).
    pub width: f64,
    /// Inspection level where the segment starts.
    pub start_sigma: f64,
    /// Approximation value at the segment start.
    pub start_value: f64,
}

/// Concave upper approximations for a whole instance: per-location ordered
/// segment lists, in instance location order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct Mcua {
    /// `(location id, its segments)` in instance order.
    pub locations: Vec<(String, Vec<Segment>)>,
}

impl Mcua {
    /// Segments of one location, if present.
    pub fn segments(&self, id: &str) -> Option<&[Segment]> {
        self.locations
            .iter()
            .find(|(l, _)| l == id)
            .map(|(_, s)| s.as_slice())
    }
}

/// Builds the monotone concave upper approximation of a value function as
/// ordered segments: taking the function's breakpoint values (the points
/// that determine its concave closure), enforcing monotonicity with a
/// running maximum, and keeping the upper concave hull. Slopes are
/// nonincreasing, widths sum to the domain length, and zero-slope plateau
/// segments are retained so the sum property holds.
pub fn build_mcua(location: &str, vf: &ValueFunction) -> Vec<Segment> {
    let mut points: Vec<(f64, f64)> = Vec::with_capacity(vf.breakpoints.len() + 1);
    points.push((0.0, 0.0));
    for bp in &vf.breakpoints {
        points.push((bp.sigma, bp.value_at));
    }
    // Running maximum: the monotone closure can always keep an earlier,
    // higher value by not spending further.
    let mut running = f64::NEG_INFINITY;
    for p in &mut points {
        running = running.max(p.1);
        p.1 = running;
    }
    // Upper concave hull, left to right.
    let mut hull: Vec<(f64, f64)> = Vec::new();
    for &p in &points {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b.1 - a.1) * (p.0 - a.0) > (p.1 - a.1) * (b.0 - a.0) + 1e-15 {
                break;
            }
            hull.pop();
        }
        hull.push(p);
    }
    let mut segments = Vec::with_capacity(hull.len().saturating_sub(1));
    for w in hull.windows(2) {
        let width = w[1].0 - w[0].0;
        if width <= 1e-12 {
            continue;
        }
        segments.push(Segment {
            location: location.to_owned(),
            slope: ((w[1].1 - w[0].1) / width).max(0.0),
            width,
            start_sigma: w[0].0,
            start_value: w[0].1,
        });
    }
    segments
}

/// Evaluates a segment list at an inspection level: piecewise linear within
/// the covered range, constant continuation beyond it.
pub fn eval_mcua(segments: &[Segment], sigma: f64) -> Result<f64, McuaError> {
    if sigma < 0.0 || sigma.is_nan() {
        return Err(McuaError::NegativeSigma { sigma });
    }
    let mut remaining = sigma;
    let mut value = 0.0;
    for seg in segments {
        if remaining <= 0.0 {
            break;
        }
        let used = remaining.min(seg.width);
        value += used * seg.slope;
        remaining -= used;
    }
    Ok(value)
}
