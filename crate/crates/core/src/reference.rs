//! Naive enumeration oracles for small instances.
//!
//! Nothing here shares logic with the prefix/congruence oracles; the point is
//! to have an independent answer to compare against.

use std::collections::BTreeSet;

use crate::election::{honest_order, level_cap, HonestScores};
use crate::error::{Error, Result};
use crate::scoring::{ApLadder, ScoringVector};

/// Cap on the number of ballot-permutation combinations enumerated by
/// [`brute_force_realizable_set`].
pub const REALIZABLE_SET_CAP: u128 = 2_000_000;

/// Cap on the number of coalition multisets enumerated by
/// [`brute_force_k_star`].
pub const COALITION_CAP: u128 = 13_000_000;

/// Rearranges `v` into the next lexicographic permutation; false after the
/// last one.
pub fn next_permutation<T: Ord>(v: &mut [T]) -> bool {
    if v.len() < 2 {
        return false;
    }
    let mut i = v.len() - 1;
    while i > 0 && v[i - 1] >= v[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = v.len() - 1;
    while v[j] <= v[i - 1] {
        j -= 1;
    }
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

/// Every distinct rearrangement of `values`.
pub fn distinct_permutations(values: &[i64]) -> Vec<Vec<i64>> {
    let mut current = values.to_vec();
    current.sort_unstable();
    let mut out = vec![current.clone()];
    while next_permutation(&mut current) {
        out.push(current.clone());
    }
    out
}

/// The Minkowski sum of the ladders' permutation sets.
pub fn brute_force_realizable_set(ladders: &[ApLadder]) -> Result<BTreeSet<Vec<i64>>> {
    let first = ladders.first().ok_or(Error::Empty)?;
    let len = first.len();
    let per_ballot: Vec<Vec<Vec<i64>>> = ladders
        .iter()
        .map(|l| {
            if l.len() != len {
                return Err(Error::LengthMismatch {
                    expected: len,
                    found: l.len(),
                });
            }
            Ok(distinct_permutations(&l.scores()))
        })
        .collect::<Result<_>>()?;
    let combos = per_ballot
        .iter()
        .try_fold(1u128, |acc, p| acc.checked_mul(p.len() as u128))
        .filter(|&c| c <= REALIZABLE_SET_CAP);
    if combos.is_none() {
        return Err(Error::TooLarge(format!(
            "more than {REALIZABLE_SET_CAP} ballot permutation combinations"
        )));
    }
    let mut sums: BTreeSet<Vec<i64>> = BTreeSet::from([vec![0; len]]);
    for perms in &per_ballot {
        let mut next = BTreeSet::new();
        for s in &sums {
            for p in perms {
                next.insert(s.iter().zip(p).map(|(a, b)| a + b).collect());
            }
        }
        sums = next;
    }
    Ok(sums)
}

fn binomial(n: u128, r: u128) -> Option<u128> {
    let mut acc = 1u128;
    for i in 0..r {
        acc = acc.checked_mul(n - i)? / (i + 1);
    }
    Some(acc)
}

/// Largest level whose canonical boundary sets some coalition separates by
/// a full point, found by trying every multiset of `m` rankings.
pub fn brute_force_k_star(scores: &HonestScores, p: &ScoringVector, m: u64, k: usize) -> Result<usize> {
    let x = scores.len();
    if p.len() != x {
        return Err(Error::LengthMismatch {
            expected: x,
            found: p.len(),
        });
    }
    if k == 0 || k >= x {
        return Err(Error::CommitteeOutOfRange { k, max: x - 1 });
    }
    let rankings_count = (1..=x as u128).try_fold(1u128, |a, i| a.checked_mul(i));
    let multisets = rankings_count
        .and_then(|r| binomial(r + m as u128 - 1, m as u128))
        .filter(|&c| c <= COALITION_CAP);
    if multisets.is_none() {
        return Err(Error::TooLarge(format!(
            "more than {COALITION_CAP} coalition profiles for x={x}, m={m}"
        )));
    }

    // contributions[r][c]: points ranking r gives candidate c.
    let mut ranking: Vec<usize> = (0..x).collect();
    let mut contributions = Vec::new();
    loop {
        let mut row = vec![0i64; x];
        for (pos, &c) in ranking.iter().enumerate() {
            row[c] = p.values()[pos];
        }
        contributions.push(row);
        if !next_permutation(&mut ranking) {
            break;
        }
    }

    let order = honest_order(scores);
    let cap = level_cap(x, k);
    let mut best = 0usize;
    let mut finals = scores.scores().to_vec();
    let m = m as usize;
    let mut picks = vec![0usize; m];
    loop {
        finals.copy_from_slice(scores.scores());
        for &r in &picks {
            for (f, d) in finals.iter_mut().zip(&contributions[r]) {
                *f += d;
            }
        }
        for level in (best + 1..=cap).rev() {
            let weakest_outsider = order[k..k + level].iter().map(|&c| finals[c]).min();
            let strongest_winner = order[k - level..k].iter().map(|&c| finals[c]).max();
            if weakest_outsider >= strongest_winner.map(|s| s + 1) {
                best = level;
                break;
            }
        }
        if best == cap || !next_multiset(&mut picks, contributions.len()) {
            break;
        }
    }
    Ok(best)
}

/// Advances a nondecreasing index tuple over `0..n`.
fn next_multiset(picks: &mut [usize], n: usize) -> bool {
    let Some(i) = picks.iter().rposition(|&v| v + 1 < n) else {
        return false;
    };
    let v = picks[i] + 1;
    for slot in &mut picks[i..] {
        *slot = v;
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ladder(seg: &[i64]) -> ApLadder {
        ApLadder::from_segment(seg).unwrap()
    }

    #[test]
    fn permutations() {
        assert_eq!(distinct_permutations(&[1, 2, 3]).len(), 6);
        assert_eq!(distinct_permutations(&[1, 1, 2]).len(), 3);
        assert_eq!(distinct_permutations(&[]).len(), 1);
    }

    #[test]
    fn realizable_sets() {
        let set = brute_force_realizable_set(&[ladder(&[9, 5, 1]), ladder(&[10, 6, 2])]).unwrap();
        assert!(set.len() <= 36);
        assert!(set.contains(&vec![19, 11, 3]));
        assert!(set.contains(&vec![15, 7, 11]));
        assert!(!set.contains(&vec![18, 11, 4]));

        assert_eq!(brute_force_realizable_set(&[ladder(&[3, 2, 1])]).unwrap().len(), 6);
        assert_eq!(brute_force_realizable_set(&[ladder(&[3, 3, 1])]).unwrap().len(), 3);

        let flat = brute_force_realizable_set(&vec![ladder(&[4, 4, 4]); 3]).unwrap();
        assert_eq!(flat.into_iter().collect::<Vec<_>>(), vec![vec![12, 12, 12]]);

        let big = vec![ladder(&[6, 5, 4, 3, 2, 1, 0]); 2];
        assert!(matches!(brute_force_realizable_set(&big), Err(Error::TooLarge(_))));
    }

    #[test]
    fn k_star_by_enumeration() {
        let s = HonestScores::new(vec![6, 3, 3, 0]).unwrap();
        let borda = ScoringVector::new(vec![3, 2, 1, 0]).unwrap();
        assert_eq!(brute_force_k_star(&s, &borda, 1, 2).unwrap(), 1);

        let distinct = HonestScores::new(vec![9, 7, 5, 3]).unwrap();
        assert_eq!(brute_force_k_star(&distinct, &borda, 0, 2).unwrap(), 0);

        // Plurality, x=3, k=1, m=2: the two votes can lift one outsider to
        // 2 while the winner stays at 2, never strictly above.
        let s = HonestScores::new(vec![2, 0, 0]).unwrap();
        let plurality = ScoringVector::new(vec![1, 0, 0]).unwrap();
        assert_eq!(brute_force_k_star(&s, &plurality, 2, 1).unwrap(), 0);
        let s = HonestScores::new(vec![1, 0, 0]).unwrap();
        assert_eq!(brute_force_k_star(&s, &plurality, 2, 1).unwrap(), 1);

        let eight = HonestScores::new(vec![0; 8]).unwrap();
        let p8 = ScoringVector::new(vec![7, 6, 5, 4, 3, 2, 1, 0]).unwrap();
        assert!(matches!(brute_force_k_star(&eight, &p8, 2, 4), Err(Error::TooLarge(_))));
    }

    #[test]
    fn multiset_walk_counts() {
        let mut picks = vec![0usize; 2];
        let mut count = 1;
        while next_multiset(&mut picks, 6) {
            count += 1;
        }
        assert_eq!(count, 21);
        assert_eq!(binomial(7, 2), Some(21));
    }
}
