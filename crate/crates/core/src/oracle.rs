//! Feasibility oracles over aggregate coalition score vectors.
//!
//! A vector `y` indexed by targets is an aggregate if each coalition ballot
//! places its ladder on the targets in some order and `y` is the sum. The
//! tests here are prefix-sum bounds on the sorted vector plus a congruence
//! modulo the common step.

use crate::demand::DemandPair;
use crate::error::{Error, Result};
use crate::scoring::{ApLadder, PrefixCapacities};

/// Default bound on the sumset built by [`mixed_step_necessary`].
pub const DEFAULT_SUMSET_CAP: usize = 1_000_000;

fn check_step(g: i64) -> Result<()> {
    if g < 1 {
        return Err(Error::InvalidCandidates(format!("step must be positive, got {g}")));
    }
    Ok(())
}

/// Smallest value `>= v` congruent to `alpha` modulo `g`.
pub(crate) fn round_up(v: i64, g: i64, alpha: i64) -> Result<i64> {
    v.checked_add((alpha - v.rem_euclid(g)).rem_euclid(g))
        .ok_or_else(|| Error::overflow("lattice adjustment"))
}

/// Largest value `<= v` congruent to `alpha` modulo `g`.
pub(crate) fn round_down(v: i64, g: i64, alpha: i64) -> Result<i64> {
    v.checked_sub((v.rem_euclid(g) - alpha).rem_euclid(g))
        .ok_or_else(|| Error::overflow("lattice adjustment"))
}

pub fn lattice_adjust_up(q: &[i64], g: i64, alpha: i64) -> Result<Vec<i64>> {
    check_step(g)?;
    q.iter().map(|&v| round_up(v, g, alpha)).collect()
}

pub fn lattice_adjust_down(u: &[i64], g: i64, alpha: i64) -> Result<Vec<i64>> {
    check_step(g)?;
    u.iter().map(|&v| round_down(v, g, alpha)).collect()
}

fn check_len(y: &[i64], caps: &PrefixCapacities) -> Result<()> {
    if y.len() != caps.len() {
        return Err(Error::LengthMismatch {
            expected: caps.len(),
            found: y.len(),
        });
    }
    Ok(())
}

/// Sorted prefix sums of `y` stay within `caps`; returns the total on
/// success.
fn prefixes_fit(y: &[i64], prefix: &[i64]) -> Result<Option<i64>> {
    let mut sorted = y.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut acc = 0i64;
    for (v, cap) in sorted.iter().zip(prefix) {
        acc = acc
            .checked_add(*v)
            .ok_or_else(|| Error::overflow("prefix sums"))?;
        if acc > *cap {
            return Ok(None);
        }
    }
    Ok(Some(acc))
}

/// Membership in the coalition's convex envelope: sorted prefixes within
/// `F(t)` and total exactly `T`.
pub fn block_hlp_member(y: &[i64], caps: &PrefixCapacities) -> Result<bool> {
    check_len(y, caps)?;
    Ok(prefixes_fit(y, caps.prefix())? == Some(caps.total()))
}

/// Envelope membership plus `y_i = alpha (mod g)` for every coordinate.
pub fn realizable(y: &[i64], caps: &PrefixCapacities) -> Result<bool> {
    check_len(y, caps)?;
    let g = caps.step();
    let alpha = caps.residue();
    if y.iter().any(|&v| v.rem_euclid(g) != alpha) {
        return Ok(false);
    }
    block_hlp_member(y, caps)
}

/// Whether some aggregate dominates `q` coordinatewise.
pub fn ap_demand_feasible(q: &[i64], caps: &PrefixCapacities) -> Result<bool> {
    check_len(q, caps)?;
    let adjusted = lattice_adjust_up(q, caps.step(), caps.residue())?;
    Ok(prefixes_fit(&adjusted, caps.prefix())?.is_some())
}

pub fn boost_feasible(demand: &DemandPair, caps_high: &PrefixCapacities) -> Result<bool> {
    ap_demand_feasible(&demand.boost, caps_high)
}

/// Whether some aggregate of the bottom ladders stays below every tolerance.
///
/// With `M` the aggregate top score of the bottom ladders, `y <= u` holds for
/// an aggregate `y` iff `M - y >= M - u`, and `M - y` ranges over the
/// aggregates of the complement ladders. Rounding `u` down to the lattice
/// first loses nothing.
pub fn suppress_feasible(demand: &DemandPair, caps_low: &PrefixCapacities) -> Result<bool> {
    check_len(&demand.tolerance, caps_low)?;
    if demand.winner_at_cutoff {
        return Ok(false);
    }
    if caps_low.is_empty() {
        return Ok(true);
    }
    let adjusted = lattice_adjust_down(&demand.tolerance, caps_low.step(), caps_low.residue())?;
    let floor = caps_low.min_coordinate();
    if adjusted.iter().any(|&v| v < floor) {
        return Ok(false);
    }
    let top = caps_low.capacity(1);
    let slack = adjusted
        .iter()
        .map(|&v| top.checked_sub(v).ok_or_else(|| Error::overflow("suppression slack")))
        .collect::<Result<Vec<_>>>()?;
    ap_demand_feasible(&slack, &caps_low.complement()?)
}

/// Necessary condition for ladders with differing steps: envelope
/// membership and every coordinate in the sumset of the ballots' value sets.
pub fn mixed_step_necessary(y: &[i64], ladders: &[ApLadder], sumset_cap: usize) -> Result<bool> {
    let first = ladders.first().ok_or(Error::Empty)?;
    let len = first.len();
    if let Some(l) = ladders.iter().find(|l| l.len() != len) {
        return Err(Error::LengthMismatch {
            expected: len,
            found: l.len(),
        });
    }
    if y.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            found: y.len(),
        });
    }
    let mut prefix = vec![0i64; len];
    for ladder in ladders {
        let mut acc = 0i64;
        for (j, slot) in prefix.iter_mut().enumerate() {
            acc = acc
                .checked_add(ladder.score(j))
                .ok_or_else(|| Error::overflow("prefix capacities"))?;
            *slot = slot
                .checked_add(acc)
                .ok_or_else(|| Error::overflow("prefix capacities"))?;
        }
    }
    if prefixes_fit(y, &prefix)? != Some(prefix[len - 1]) {
        return Ok(false);
    }
    let sums = sumset(ladders, sumset_cap)?;
    Ok(y.iter().all(|v| sums.binary_search(v).is_ok()))
}

/// Sorted, deduplicated `S_1 + ... + S_m` of the ladders' value sets.
pub fn sumset(ladders: &[ApLadder], cap: usize) -> Result<Vec<i64>> {
    let mut acc = vec![0i64];
    for ladder in ladders {
        let mut values = ladder.scores();
        values.dedup();
        let mut next = Vec::with_capacity(acc.len() * values.len());
        for &a in &acc {
            for &v in &values {
                next.push(a.checked_add(v).ok_or_else(|| Error::overflow("sumset"))?);
            }
        }
        next.sort_unstable();
        next.dedup();
        if next.len() > cap {
            return Err(Error::SumsetTooLarge { cap });
        }
        acc = next;
    }
    Ok(acc)
}
