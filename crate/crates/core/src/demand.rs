//! Boost demands and suppression tolerances at a cutoff.

use serde::{Deserialize, Serialize};

use crate::election::{BoundarySets, HonestScores};

/// Sorted demand vectors at cutoff `B`, with the candidate behind each
/// entry.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DemandPair {
    /// `max(0, B - S_o)` over the outsiders, nonincreasing.
    pub boost: Vec<i64>,
    /// `max(0, B - 1 - S_t)` over the weak winners, nondecreasing.
    pub tolerance: Vec<i64>,
    /// Candidate id for each `boost` entry.
    pub boost_ids: Vec<usize>,
    /// Candidate id for each `tolerance` entry.
    pub tolerance_ids: Vec<usize>,
    pub cutoff: i64,
    pub level: usize,
    /// Some weak winner already scores at least `B`, so no nonnegative
    /// contribution keeps it below the cutoff. The clamped tolerance of such
    /// a winner reads 0 and would hide this.
    pub winner_at_cutoff: bool,
}

pub fn compute_demand_vectors(scores: &HonestScores, boundary: &BoundarySets, cutoff: i64) -> DemandPair {
    let mut boost: Vec<(i64, usize)> = boundary
        .outsiders_star
        .iter()
        .map(|&o| (cutoff.saturating_sub(scores.score(o)).max(0), o))
        .collect();
    boost.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));

    let mut winner_at_cutoff = false;
    let mut tolerance: Vec<(i64, usize)> = boundary
        .weak_winners
        .iter()
        .map(|&t| {
            let raw = cutoff.saturating_sub(1).saturating_sub(scores.score(t));
            winner_at_cutoff |= raw < 0;
            (raw.max(0), t)
        })
        .collect();
    tolerance.sort_by(|a, b| a.0.cmp(&b.0).then(a.1.cmp(&b.1)));

    DemandPair {
        boost: boost.iter().map(|e| e.0).collect(),
        boost_ids: boost.iter().map(|e| e.1).collect(),
        tolerance: tolerance.iter().map(|e| e.0).collect(),
        tolerance_ids: tolerance.iter().map(|e| e.1).collect(),
        cutoff,
        level: boundary.level,
        winner_at_cutoff,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{boundary_sets, honest_order};
    use proptest::prelude::*;

    fn sets(outsiders: Vec<usize>, winners: Vec<usize>) -> BoundarySets {
        let level = outsiders.len();
        BoundarySets {
            outsiders_star: outsiders,
            weak_winners: winners,
            level,
            committee: 2,
        }
    }

    #[test]
    fn direct_formula() {
        let s = HonestScores::new(vec![10, 7, 4, 6]).unwrap();
        let d = compute_demand_vectors(&s, &sets(vec![0, 1], vec![2, 3]), 12);
        assert_eq!(d.boost, vec![5, 2]);
        assert_eq!(d.boost_ids, vec![1, 0]);
        assert_eq!(d.tolerance, vec![5, 7]);
        assert_eq!(d.tolerance_ids, vec![3, 2]);
        assert!(!d.winner_at_cutoff);
    }

    #[test]
    fn clamps_and_flags() {
        let s = HonestScores::new(vec![10, 7, 4, 6]).unwrap();
        let d = compute_demand_vectors(&s, &sets(vec![0, 1], vec![2, 3]), -1_000_000_000);
        assert_eq!(d.boost, vec![0, 0]);
        assert_eq!(d.tolerance, vec![0, 0]);
        assert!(d.winner_at_cutoff);

        let d = compute_demand_vectors(&s, &sets(vec![], vec![]), 5);
        assert!(d.boost.is_empty() && d.tolerance.is_empty() && !d.winner_at_cutoff);
    }

    proptest! {
        #[test]
        fn monotone_in_cutoff(
            scores in prop::collection::vec(0i64..30, 4..12),
            b in -5i64..40,
            delta in 0i64..10,
        ) {
            let s = HonestScores::new(scores).unwrap();
            let x = s.len();
            let k = x / 2;
            let order = honest_order(&s);
            let bs = boundary_sets(&order, k, k.min(x - k)).unwrap();
            let lo = compute_demand_vectors(&s, &bs, b);
            let hi = compute_demand_vectors(&s, &bs, b + delta);
            for i in 0..bs.level {
                prop_assert!(lo.boost[i] <= hi.boost[i]);
                prop_assert!(lo.tolerance[i] <= hi.tolerance[i]);
            }
            let mut expected: Vec<i64> = bs.outsiders_star.iter().map(|&o| (b - s.score(o)).max(0)).collect();
            expected.sort_unstable_by(|a, b| b.cmp(a));
            prop_assert_eq!(&lo.boost, &expected);
            for w in lo.tolerance.windows(2) {
                prop_assert!(w[0] <= w[1]);
            }
            for (v, &c) in lo.boost.iter().zip(&lo.boost_ids) {
                prop_assert_eq!(*v, (b - s.score(c)).max(0));
            }
        }
    }
}
