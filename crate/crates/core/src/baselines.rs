//! A myopic one-target-per-ballot heuristic, for comparison with the exact
//! oracle.

use serde::{Deserialize, Serialize};

use crate::ballots::BallotSet;
use crate::election::{check_committee, HonestScores};
use crate::error::{Error, Result};
use crate::scoring::ScoringVector;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GreedyOutcome {
    /// Honest winners missing from the final Top-k, ties broken by the
    /// default priority.
    pub displaced: usize,
    /// Honest winners missing from the final Top-k when every tie goes
    /// against the outsiders; the same standard the exact oracle certifies.
    pub displaced_worst_case: usize,
    pub ballots: BallotSet,
}

/// Casts `m` ballots one at a time. Each puts the strongest honest outsider
/// still outside the current Top-k first and orders everyone else by
/// ascending current score, so the leaders get the fewest points.
pub fn greedy_promote(scores: &HonestScores, p: &ScoringVector, m: u64, k: usize) -> Result<GreedyOutcome> {
    let x = scores.len();
    if p.len() != x {
        return Err(Error::LengthMismatch {
            expected: x,
            found: p.len(),
        });
    }
    check_committee(x, k)?;
    let mut honest_winner = vec![false; x];
    for c in scores.ranked_slice(0, k) {
        honest_winner[c] = true;
    }
    let priority = scores.tie_priority();
    let mut current = scores.scores().to_vec();
    let top_k = |current: &[i64]| {
        let mut ids: Vec<usize> = (0..x).collect();
        ids.sort_by(|&a, &b| current[b].cmp(&current[a]).then(priority[a].cmp(&priority[b])));
        let mut inside = vec![false; x];
        for &c in &ids[..k] {
            inside[c] = true;
        }
        inside
    };

    let mut rankings = Vec::new();
    for _ in 0..m {
        let inside = top_k(&current);
        let target = (0..x)
            .filter(|&c| !honest_winner[c] && !inside[c])
            .max_by(|&a, &b| {
                current[a]
                    .cmp(&current[b])
                    .then(scores.score(a).cmp(&scores.score(b)))
                    .then(b.cmp(&a))
            });
        let mut rest: Vec<usize> = (0..x).filter(|&c| Some(c) != target).collect();
        rest.sort_by(|&a, &b| current[a].cmp(&current[b]).then(a.cmp(&b)));
        let ranking: Vec<usize> = target.into_iter().chain(rest).collect();
        for (pos, &c) in ranking.iter().enumerate() {
            current[c] += p.values()[pos];
        }
        rankings.push(ranking);
    }
    let inside = top_k(&current);
    let displaced = (0..x).filter(|&c| honest_winner[c] && !inside[c]).count();
    let mut adversarial: Vec<usize> = (0..x).collect();
    adversarial.sort_by(|&a, &b| {
        current[b]
            .cmp(&current[a])
            .then(honest_winner[b].cmp(&honest_winner[a]))
            .then(a.cmp(&b))
    });
    let displaced_worst_case = adversarial[k..].iter().filter(|&&c| honest_winner[c]).count();
    Ok(GreedyOutcome {
        displaced,
        displaced_worst_case,
        ballots: BallotSet { rankings },
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::envelope::{maximize_displacement, Strategy};
    use proptest::prelude::{prop, proptest, prop_assert, prop_assert_eq, ProptestConfig};
    use proptest::strategy::Strategy as Gen;

    #[test]
    fn four_candidate_instance() {
        let s = HonestScores::new(vec![6, 3, 3, 0]).unwrap();
        let p = ScoringVector::new(vec![3, 2, 1, 0]).unwrap();
        let out = greedy_promote(&s, &p, 1, 2).unwrap();
        assert_eq!(out.displaced, 1);
        assert_eq!(out.ballots.rankings, vec![vec![2, 3, 1, 0]]);
        assert_eq!(out.displaced_worst_case, 1);
        let none = greedy_promote(&s, &p, 0, 2).unwrap();
        assert_eq!(none.displaced, 0);
        assert!(none.ballots.rankings.is_empty());
    }

    #[test]
    fn ties_can_favour_the_default_order() {
        // Everyone finishes on 23; the default order admits candidate 1.
        let s = HonestScores::new(vec![14, 11, 14]).unwrap();
        let p = ScoringVector::new(vec![4, 3, 3]).unwrap();
        let out = greedy_promote(&s, &p, 3, 2).unwrap();
        assert_eq!((out.displaced, out.displaced_worst_case), (1, 0));
        assert_eq!(maximize_displacement(&s, &p, 2, 3, Strategy::Binary).unwrap().k_star, 0);
    }

    fn instance() -> impl Gen<Value = (Vec<i64>, Vec<i64>, usize, u64)> {
        (3usize..9).prop_flat_map(|x| {
            (
                prop::collection::vec(0i64..20, x),
                prop::collection::vec(0i64..5, x).prop_map(|mut p| {
                    p.sort_unstable_by(|a, b| b.cmp(a));
                    p
                }),
                1..x,
                0u64..5,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(300))]

        #[test]
        fn dominated_by_exact((s, p, k, m) in instance()) {
            let s = HonestScores::new(s).unwrap();
            let p = ScoringVector::new(p).unwrap();
            let g = greedy_promote(&s, &p, m, k).unwrap();
            let exact = maximize_displacement(&s, &p, k, m, Strategy::Binary).unwrap();
            prop_assert!(g.displaced_worst_case <= g.displaced);
            prop_assert!(g.displaced_worst_case <= exact.k_star);
            prop_assert_eq!(g, greedy_promote(&s, &p, m, k).unwrap());
        }
    }
}
