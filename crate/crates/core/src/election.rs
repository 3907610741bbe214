//! Honest profiles, tallies, the tie-broken honest order and the canonical
//! boundary sets.

use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scoring::ScoringVector;

/// A ranking cast by `multiplicity` identical voters.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedRanking {
    pub multiplicity: u64,
    pub ranking: Vec<usize>,
}

/// Complete strict rankings over candidates `0..num_candidates`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Profile {
    num_candidates: usize,
    ballots: Vec<WeightedRanking>,
}

impl Profile {
    pub fn new(num_candidates: usize, ballots: Vec<WeightedRanking>) -> Result<Self> {
        if num_candidates == 0 {
            return Err(Error::InvalidCandidates("no candidates".into()));
        }
        for (i, b) in ballots.iter().enumerate() {
            if b.multiplicity == 0 {
                return Err(Error::InvalidCandidates(format!("ballot {i} has multiplicity 0")));
            }
            if !is_permutation(&b.ranking, num_candidates) {
                return Err(Error::InvalidCandidates(format!(
                    "ballot {i} is not a permutation of 0..{num_candidates}"
                )));
            }
        }
        Ok(Profile {
            num_candidates,
            ballots,
        })
    }

    pub fn num_candidates(&self) -> usize {
        self.num_candidates
    }

    pub fn ballots(&self) -> &[WeightedRanking] {
        &self.ballots
    }

    pub fn num_voters(&self) -> u64 {
        self.ballots.iter().map(|b| b.multiplicity).sum()
    }

    /// Same profile with every ballot of multiplicity `c` split into `c`
    /// ballots of multiplicity one.
    pub fn expanded(&self) -> Profile {
        let ballots = self
            .ballots
            .iter()
            .flat_map(|b| {
                (0..b.multiplicity).map(move |_| WeightedRanking {
                    multiplicity: 1,
                    ranking: b.ranking.clone(),
                })
            })
            .collect();
        Profile {
            num_candidates: self.num_candidates,
            ballots,
        }
    }
}

pub(crate) fn is_permutation(ranking: &[usize], n: usize) -> bool {
    if ranking.len() != n {
        return false;
    }
    let mut seen = vec![false; n];
    for &c in ranking {
        if c >= n || seen[c] {
            return false;
        }
        seen[c] = true;
    }
    true
}

/// Honest score `S_c` and tie-break priority `tau(c)` per candidate; a lower
/// priority wins ties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HonestScores {
    scores: Vec<i64>,
    tie_priority: Vec<usize>,
}

impl HonestScores {
    /// Scores with the default priority (candidate id ascending).
    pub fn new(scores: Vec<i64>) -> Result<Self> {
        let tie_priority = (0..scores.len()).collect();
        Self::with_priority(scores, tie_priority)
    }

    pub fn with_priority(scores: Vec<i64>, tie_priority: Vec<usize>) -> Result<Self> {
        if scores.is_empty() {
            return Err(Error::InvalidCandidates("no candidates".into()));
        }
        if tie_priority.len() != scores.len() {
            return Err(Error::LengthMismatch {
                expected: scores.len(),
                found: tie_priority.len(),
            });
        }
        if !is_permutation(&tie_priority, scores.len()) {
            return Err(Error::InvalidCandidates(
                "tie priority is not a permutation".into(),
            ));
        }
        Ok(HonestScores {
            scores,
            tie_priority,
        })
    }

    pub fn scores(&self) -> &[i64] {
        &self.scores
    }

    pub fn tie_priority(&self) -> &[usize] {
        &self.tie_priority
    }

    pub fn len(&self) -> usize {
        self.scores.len()
    }

    pub fn is_empty(&self) -> bool {
        self.scores.is_empty()
    }

    pub fn score(&self, c: usize) -> i64 {
        self.scores[c]
    }

    /// Honest-order comparison: `Less` means `a` ranks above `b`.
    pub fn compare(&self, a: usize, b: usize) -> Ordering {
        self.scores[b]
            .cmp(&self.scores[a])
            .then(self.tie_priority[a].cmp(&self.tie_priority[b]))
    }

    /// Candidates at honest positions `lo..hi`, best first, without sorting
    /// the whole field.
    pub fn ranked_slice(&self, lo: usize, hi: usize) -> Vec<usize> {
        let x = self.len();
        let hi = hi.min(x);
        if lo >= hi {
            return Vec::new();
        }
        let mut ids: Vec<usize> = (0..x).collect();
        let cmp = |a: &usize, b: &usize| self.compare(*a, *b);
        if hi < x {
            ids.select_nth_unstable_by(hi, cmp);
            ids.truncate(hi);
        }
        if lo > 0 {
            ids.select_nth_unstable_by(lo, cmp);
            ids.drain(..lo);
        }
        ids.sort_unstable_by(cmp);
        ids
    }
}

pub fn tally(profile: &Profile, scoring: &ScoringVector) -> Result<HonestScores> {
    let x = profile.num_candidates();
    if scoring.len() != x {
        return Err(Error::LengthMismatch {
            expected: x,
            found: scoring.len(),
        });
    }
    let mut scores = vec![0i64; x];
    for ballot in profile.ballots() {
        let mult = i64::try_from(ballot.multiplicity).map_err(|_| Error::overflow("tally"))?;
        for (pos, &c) in ballot.ranking.iter().enumerate() {
            let add = mult
                .checked_mul(scoring.values()[pos])
                .ok_or_else(|| Error::overflow("tally"))?;
            scores[c] = scores[c]
                .checked_add(add)
                .ok_or_else(|| Error::overflow("tally"))?;
        }
    }
    HonestScores::new(scores)
}

/// All candidates best first: score descending, then priority ascending.
pub fn honest_order(scores: &HonestScores) -> Vec<usize> {
    let mut order: Vec<usize> = (0..scores.len()).collect();
    order.sort_unstable_by(|a, b| scores.compare(*a, *b));
    order
}

/// The `k'` strongest outsiders and `k'` weakest winners of a Top-k
/// election.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BoundarySets {
    /// Strongest first.
    pub outsiders_star: Vec<usize>,
    /// Weakest first.
    pub weak_winners: Vec<usize>,
    pub level: usize,
    pub committee: usize,
}

/// Largest admissible displacement level `min(k, x - k)`.
pub fn level_cap(x: usize, k: usize) -> usize {
    k.min(x.saturating_sub(k))
}

pub(crate) fn check_committee(x: usize, k: usize) -> Result<()> {
    if k == 0 || k >= x {
        return Err(Error::CommitteeOutOfRange {
            k,
            max: x.saturating_sub(1),
        });
    }
    Ok(())
}

pub fn boundary_sets(order: &[usize], k: usize, k_prime: usize) -> Result<BoundarySets> {
    check_committee(order.len(), k)?;
    let max = level_cap(order.len(), k);
    if k_prime > max {
        return Err(Error::LevelOutOfRange {
            level: k_prime,
            max,
        });
    }
    Ok(BoundarySets {
        outsiders_star: order[k..k + k_prime].to_vec(),
        weak_winners: order[k - k_prime..k].iter().rev().copied().collect(),
        level: k_prime,
        committee: k,
    })
}

/// The honest order around the committee boundary: positions
/// `k - cap .. k + cap` with `cap = min(k, x - k)`. Every boundary set of the
/// election is a slice of this window.
#[derive(Debug, Clone)]
pub struct BoundaryWindow {
    ids: Vec<usize>,
    cap: usize,
    committee: usize,
}

impl BoundaryWindow {
    pub fn new(scores: &HonestScores, k: usize) -> Result<Self> {
        check_committee(scores.len(), k)?;
        let cap = level_cap(scores.len(), k);
        Ok(BoundaryWindow {
            ids: scores.ranked_slice(k - cap, k + cap),
            cap,
            committee: k,
        })
    }

    pub fn cap(&self) -> usize {
        self.cap
    }

    pub fn committee(&self) -> usize {
        self.committee
    }

    pub fn boundary(&self, k_prime: usize) -> Result<BoundarySets> {
        if k_prime > self.cap {
            return Err(Error::LevelOutOfRange {
                level: k_prime,
                max: self.cap,
            });
        }
        let mid = self.cap;
        Ok(BoundarySets {
            outsiders_star: self.ids[mid..mid + k_prime].to_vec(),
            weak_winners: self.ids[mid - k_prime..mid].iter().rev().copied().collect(),
            level: k_prime,
            committee: self.committee,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ranking(multiplicity: u64, ranking: &[usize]) -> WeightedRanking {
        WeightedRanking {
            multiplicity,
            ranking: ranking.to_vec(),
        }
    }

    fn borda4() -> ScoringVector {
        ScoringVector::new(vec![3, 2, 1, 0]).unwrap()
    }

    #[test]
    fn tallies() {
        let profile = Profile::new(4, vec![ranking(1, &[0, 1, 2, 3]), ranking(1, &[0, 2, 1, 3])]).unwrap();
        assert_eq!(tally(&profile, &borda4()).unwrap().scores(), &[6, 3, 3, 0]);

        let empty = Profile::new(4, vec![]).unwrap();
        assert_eq!(tally(&empty, &borda4()).unwrap().scores(), &[0; 4]);

        let five = Profile::new(4, vec![ranking(5, &[2, 0, 3, 1])]).unwrap();
        assert_eq!(
            tally(&five, &borda4()).unwrap(),
            tally(&five.expanded(), &borda4()).unwrap()
        );

        let bad = ScoringVector::new(vec![1, 0]).unwrap();
        assert!(matches!(tally(&empty, &bad), Err(Error::LengthMismatch { .. })));
        assert!(Profile::new(3, vec![ranking(1, &[0, 0, 1])]).is_err());
    }

    #[test]
    fn orders() {
        let s = HonestScores::new(vec![6, 3, 3, 0]).unwrap();
        assert_eq!(honest_order(&s), vec![0, 1, 2, 3]);
        let s = HonestScores::with_priority(vec![5, 5], vec![1, 0]).unwrap();
        assert_eq!(honest_order(&s), vec![1, 0]);
        let s = HonestScores::with_priority(vec![2; 4], vec![3, 1, 0, 2]).unwrap();
        assert_eq!(honest_order(&s), vec![2, 1, 3, 0]);
    }

    #[test]
    fn boundaries() {
        let order = [0, 1, 2, 3];
        let b = boundary_sets(&order, 2, 1).unwrap();
        assert_eq!((b.outsiders_star, b.weak_winners), (vec![2], vec![1]));
        let b = boundary_sets(&order, 2, 2).unwrap();
        assert_eq!((b.outsiders_star, b.weak_winners), (vec![2, 3], vec![1, 0]));
        let b = boundary_sets(&order, 2, 0).unwrap();
        assert!(b.outsiders_star.is_empty() && b.weak_winners.is_empty());
        assert!(matches!(boundary_sets(&order, 3, 2), Err(Error::LevelOutOfRange { .. })));
        assert!(matches!(boundary_sets(&order, 4, 0), Err(Error::CommitteeOutOfRange { .. })));
    }

    proptest! {
        #[test]
        fn order_is_permutation(scores in prop::collection::vec(-5i64..5, 1..30)) {
            let s = HonestScores::new(scores).unwrap();
            let order = honest_order(&s);
            prop_assert!(is_permutation(&order, s.len()));
        }

        #[test]
        fn window_matches_full_order(scores in prop::collection::vec(0i64..6, 2..40), k_seed in 0usize..100) {
            let s = HonestScores::new(scores).unwrap();
            let x = s.len();
            let k = 1 + k_seed % (x - 1);
            let order = honest_order(&s);
            let window = BoundaryWindow::new(&s, k).unwrap();
            for kp in 0..=window.cap() {
                let a = boundary_sets(&order, k, kp).unwrap();
                let b = window.boundary(kp).unwrap();
                prop_assert_eq!(&a, &b);
                for o in &a.outsiders_star {
                    prop_assert!(!a.weak_winners.contains(o));
                }
                prop_assert_eq!(a.outsiders_star.len(), kp);
            }
        }

        #[test]
        fn multiplicity_is_linear(
            rankings in prop::collection::vec((1u64..4, Just((0..5).collect::<Vec<usize>>()).prop_shuffle()), 0..6)
        ) {
            let ballots = rankings.into_iter().map(|(m, r)| WeightedRanking { multiplicity: m, ranking: r }).collect();
            let p = Profile::new(5, ballots).unwrap();
            let v = ScoringVector::new(vec![4, 2, 2, 1, 0]).unwrap();
            prop_assert_eq!(tally(&p, &v).unwrap(), tally(&p.expanded(), &v).unwrap());
        }
    }
}
