//! Side-constraint data: per-set allocation quotas.

/// A quota over a set of locations: the summed allocation across `members`
/// must stay within `[lower, upper]`.
///
/// This is plain data; structural validation (laminarity, member existence,
/// bound sanity) lives with the constrained solver, while exhaustive searches
/// only need to test strategies against the bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct QuotaSet {
    /// Opaque identifier; unique within a constraint family.
    pub id: String,
    /// Location ids the quota covers.
    pub members: Vec<String>,
    /// Minimum total allocation across the members.
    pub lower: f64,
    /// Maximum total allocation across the members.
    pub upper: f64,
}

impl QuotaSet {
    /// Summed allocation of the member locations under a strategy; missing
    /// members contribute zero.
    pub fn allocated(&self, strategy: &crate::model::Strategy) -> f64 {
        self.members
            .iter()
            .map(|id| strategy.get(id).unwrap_or(0.0))
            .sum()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Strategy;

    #[test]
    fn allocated_sums_member_allocations() {
        let quota = QuotaSet {
            id: "q".into(),
            members: vec!["a".into(), "b".into()],
            lower: 0.0,
            upper: 1.0,
        };
        let mut s = Strategy::default();
        s.set("a", 0.3);
        s.set("b", 0.25);
        s.set("c", 0.9);
        assert!((quota.allocated(&s) - 0.55).abs() < 1e-15);
    }

    #[test]
    fn missing_members_count_as_zero() {
        let quota = QuotaSet {
            id: "q".into(),
            members: vec!["a".into(), "zzz".into()],
            lower: 0.0,
            upper: 1.0,
        };
        let mut s = Strategy::default();
        s.set("a", 0.3);
        assert!((quota.allocated(&s) - 0.3).abs() < 1e-15);
    }
}
