use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::oracle::realizable;
use crate::scoring::{aggregate_capacities, ApLadder};

const REPAIR_ROUNDS: usize = 20_000;
const SEARCH_NODES: u64 = 5_000_000;

/// Per-ballot scores by target: `assignments[v][i]` is what ballot `v` gives
/// target `i`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Realization {
    pub assignments: Vec<Vec<i64>>,
}

/// Splits a lattice point into one permutation of each ladder.
///
/// Tries nested-layer greedy selection first, then swap repair, then an
/// exhaustive search over residual multisets.
pub fn realize_ap(y: &[i64], ladders: &[ApLadder]) -> Result<Realization> {
    let caps = aggregate_capacities(ladders)?;
    if !realizable(y, &caps)? {
        return Err(Error::NotRealizable);
    }
    let g = caps.step();
    let scaled: Vec<i64> = y.iter().map(|&v| (v - caps.baseline_total()) / g).collect();
    let levels: Vec<&[i64]> = ladders.iter().map(|l| l.levels()).collect();

    let heights = nested_layers(&scaled, &levels)
        .or_else(|| swap_repair(&scaled, &levels))
        .map(Ok)
        .unwrap_or_else(|| exact_search(&scaled, &levels))?;

    let assignments: Vec<Vec<i64>> = heights
        .iter()
        .zip(ladders)
        .map(|(h, l)| h.iter().map(|&t| l.baseline() + g * t).collect())
        .collect();
    check(y, ladders, &assignments)?;
    Ok(Realization { assignments })
}

fn check(y: &[i64], ladders: &[ApLadder], assignments: &[Vec<i64>]) -> Result<()> {
    for (i, &target) in y.iter().enumerate() {
        let sum: i64 = assignments.iter().map(|a| a[i]).sum();
        if sum != target {
            return Err(Error::InternalRealizationFailure(format!(
                "target {i} receives {sum} instead of {target}"
            )));
        }
    }
    for (v, (a, l)) in assignments.iter().zip(ladders).enumerate() {
        let mut got = a.clone();
        got.sort_unstable_by(|p, q| q.cmp(p));
        if got != l.scores() {
            return Err(Error::InternalRealizationFailure(format!(
                "ballot {v} is not a rearrangement of its ladder"
            )));
        }
    }
    Ok(())
}

fn by_residual(rem: &[i64], pool: impl IntoIterator<Item = usize>) -> Vec<usize> {
    let mut ids: Vec<usize> = pool.into_iter().collect();
    ids.sort_by(|&a, &b| rem[b].cmp(&rem[a]).then(a.cmp(&b)));
    ids
}

/// Level by level, each ballot keeps the targets with the largest remaining
/// demand among those it selected one level below.
fn nested_layers(demand: &[i64], levels: &[&[i64]]) -> Option<Vec<Vec<i64>>> {
    let len = demand.len();
    let top = levels.iter().filter_map(|l| l.first()).copied().max().unwrap_or(0);
    let mut rem = demand.to_vec();
    let mut selected: Vec<Vec<usize>> = vec![(0..len).collect(); levels.len()];
    let mut heights = vec![vec![0i64; len]; levels.len()];
    for level in 1..=top {
        for (v, lv) in levels.iter().enumerate() {
            let count = lv.iter().filter(|&&l| l >= level).count();
            let mut pick = by_residual(&rem, selected[v].iter().copied());
            pick.truncate(count);
            for &i in &pick {
                rem[i] -= 1;
                heights[v][i] += 1;
            }
            selected[v] = pick;
        }
    }
    rem.iter().all(|&r| r == 0).then_some(heights)
}

/// Starts from a ballot-by-ballot greedy assignment and swaps pairs of
/// entries inside one ballot to move units from over-served to
/// under-served targets.
fn swap_repair(demand: &[i64], levels: &[&[i64]]) -> Option<Vec<Vec<i64>>> {
    let len = demand.len();
    let mut rem = demand.to_vec();
    let mut heights = Vec::with_capacity(levels.len());
    for lv in levels {
        let mut h = vec![0i64; len];
        for (pos, i) in by_residual(&rem, 0..len).into_iter().enumerate() {
            h[i] = lv[pos];
            rem[i] -= lv[pos];
        }
        heights.push(h);
    }
    if len < 2 {
        return rem.iter().all(|&r| r == 0).then_some(heights);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(len as u64);
    for _ in 0..REPAIR_ROUNDS {
        let error: i64 = rem.iter().map(|r| r.abs()).sum();
        if error == 0 {
            return Some(heights);
        }
        let short: Vec<usize> = (0..len).filter(|&i| rem[i] > 0).collect();
        let over: Vec<usize> = (0..len).filter(|&i| rem[i] < 0).collect();
        let mut best: Option<(i64, usize, usize, usize)> = None;
        for (v, h) in heights.iter().enumerate() {
            for &i in &short {
                for &j in &over {
                    let delta = h[j] - h[i];
                    if delta <= 0 {
                        continue;
                    }
                    let after = error - rem[i].abs() - rem[j].abs()
                        + (rem[i] - delta).abs()
                        + (rem[j] + delta).abs();
                    if best.map_or(true, |b| after < b.0) {
                        best = Some((after, v, i, j));
                    }
                }
            }
        }
        let (v, i, j) = match best {
            Some((after, v, i, j)) if after < error => (v, i, j),
            _ => {
                let i = rng.random_range(0..len);
                let j = (i + rng.random_range(1..len)) % len;
                (rng.random_range(0..levels.len()), i, j)
            }
        };
        let (a, b) = (heights[v][i], heights[v][j]);
        heights[v].swap(i, j);
        rem[i] += a - b;
        rem[j] += b - a;
    }
    None
}

/// Depth-first search over ballots. States are identified by the sorted
/// residual vector, so targets with equal residuals are interchangeable and
/// failed states are never revisited.
fn exact_search(demand: &[i64], levels: &[&[i64]]) -> Result<Vec<Vec<i64>>> {
    // suffix[v][t]: the most ballots v.. can place on any t targets.
    let len = demand.len();
    let mut suffix = vec![vec![0i64; len + 1]; levels.len() + 1];
    for v in (0..levels.len()).rev() {
        let mut acc = 0;
        for t in 0..=len {
            if t > 0 {
                acc += levels[v][t - 1];
            }
            suffix[v][t] = suffix[v + 1][t] + acc;
        }
    }
    let mut search = Search {
        levels,
        suffix,
        failed: HashSet::new(),
        nodes: 0,
        heights: vec![vec![0; len]; levels.len()],
    };
    match search.ballot(0, demand.to_vec()) {
        Some(true) => Ok(search.heights),
        Some(false) => Err(Error::InternalRealizationFailure(
            "the aggregate passes the lattice test but no decomposition exists".into(),
        )),
        None => Err(Error::InternalRealizationFailure(format!(
            "search budget of {SEARCH_NODES} nodes exhausted"
        ))),
    }
}

struct Search<'a> {
    levels: &'a [&'a [i64]],
    suffix: Vec<Vec<i64>>,
    failed: HashSet<(usize, Vec<i64>)>,
    nodes: u64,
    heights: Vec<Vec<i64>>,
}

impl Search<'_> {
    fn fits(&self, v: usize, rem: &[i64]) -> bool {
        let mut sorted = rem.to_vec();
        sorted.sort_unstable_by(|a, b| b.cmp(a));
        if sorted.last().is_some_and(|&r| r < 0) {
            return false;
        }
        let mut acc = 0;
        for (t, r) in sorted.iter().enumerate() {
            acc += r;
            if acc > self.suffix[v][t + 1] {
                return false;
            }
        }
        acc == self.suffix[v][rem.len()]
    }

    /// `None` when the budget runs out.
    fn ballot(&mut self, v: usize, rem: Vec<i64>) -> Option<bool> {
        if v == self.levels.len() {
            return Some(rem.iter().all(|&r| r == 0));
        }
        let mut key = rem.clone();
        key.sort_unstable();
        if self.failed.contains(&(v, key.clone())) || !self.fits(v, &rem) {
            return Some(false);
        }
        let order = by_residual(&rem, 0..rem.len());
        let mut pool: Vec<(i64, usize)> = Vec::new();
        for &l in self.levels[v] {
            match pool.last_mut() {
                Some((value, count)) if *value == l => *count += 1,
                _ => pool.push((l, 1)),
            }
        }
        let mut chosen = vec![0i64; rem.len()];
        let found = self.place(v, &rem, &order, 0, &mut pool, &mut chosen)?;
        if !found {
            self.failed.insert((v, key));
        }
        Some(found)
    }

    fn place(
        &mut self,
        v: usize,
        rem: &[i64],
        order: &[usize],
        pos: usize,
        pool: &mut Vec<(i64, usize)>,
        chosen: &mut Vec<i64>,
    ) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > SEARCH_NODES {
            return None;
        }
        if pos == order.len() {
            let next: Vec<i64> = rem.iter().zip(chosen.iter()).map(|(r, c)| r - c).collect();
            let found = self.ballot(v + 1, next)?;
            if found {
                self.heights[v].clone_from(chosen);
            }
            return Some(found);
        }
        let target = order[pos];
        // Equal residuals take nonincreasing levels, which fixes one
        // representative per symmetric assignment.
        let ceiling = match pos.checked_sub(1).map(|p| order[p]) {
            Some(prev) if rem[prev] == rem[target] => chosen[prev],
            _ => i64::MAX,
        };
        for slot in 0..pool.len() {
            let (value, count) = pool[slot];
            if count == 0 || value > ceiling || value > rem[target] {
                continue;
            }
            pool[slot].1 -= 1;
            chosen[target] = value;
            let found = self.place(v, rem, order, pos + 1, pool, chosen)?;
            pool[slot].1 += 1;
            if found {
                return Some(true);
            }
        }
        chosen[target] = 0;
        Some(false)
    }
}
