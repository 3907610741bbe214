//! Feasible cutoff intervals per displacement level and the maximal level.

use serde::{Deserialize, Serialize};

use crate::demand::compute_demand_vectors;
use crate::election::{BoundarySets, BoundaryWindow, HonestScores};
use crate::error::{Error, Result};
use crate::oracle::{boost_feasible, suppress_feasible};
use crate::scoring::{ApLadder, PrefixCapacities, ScoringVector};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EnvelopeResult {
    pub level: usize,
    pub feasible: bool,
    /// Smallest cutoff satisfying both sides.
    pub b_min: Option<i64>,
    /// Largest cutoff satisfying both sides.
    pub b_max: Option<i64>,
    /// Largest cutoff at which the boost side alone holds.
    pub boost_max: Option<i64>,
    /// Smallest cutoff at which the suppress side alone holds.
    pub suppress_min: Option<i64>,
}

impl EnvelopeResult {
    fn trivial() -> Self {
        EnvelopeResult {
            level: 0,
            feasible: true,
            b_min: None,
            b_max: None,
            boost_max: None,
            suppress_min: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DisplacementResult {
    pub k_star: usize,
    pub b_min: Option<i64>,
    pub b_max: Option<i64>,
    /// Every level the search evaluated, in evaluation order.
    pub per_level: Vec<EnvelopeResult>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Strategy {
    /// Bisection over levels; assumes feasibility is downward closed.
    #[default]
    Binary,
    /// Every level from the cap downwards.
    Linear,
}

/// `B_low = min_t (S_t + m p_x)` and `B_high = max_o (S_o + m p_1)`.
pub fn cutoff_bounds(
    scores: &HonestScores,
    boundary: &BoundarySets,
    m: u64,
    p: &ScoringVector,
) -> Result<(i64, i64)> {
    if boundary.level == 0 {
        return Err(Error::EmptyBoundary);
    }
    let m = i64::try_from(m).map_err(|_| Error::overflow("coalition size"))?;
    let lift = |s: i64, score: i64| {
        m.checked_mul(score)
            .and_then(|v| v.checked_add(s))
            .ok_or_else(|| Error::overflow("cutoff bounds"))
    };
    let mut low = i64::MAX;
    for &t in &boundary.weak_winners {
        low = low.min(lift(scores.score(t), p.bottom())?);
    }
    let mut high = i64::MIN;
    for &o in &boundary.outsiders_star {
        high = high.max(lift(scores.score(o), p.top())?);
    }
    Ok((low, high))
}

/// Capacities of `m` copies of the top and bottom `level` scores of `p`.
pub fn level_capacities(
    p: &ScoringVector,
    m: u64,
    level: usize,
) -> Result<(PrefixCapacities, PrefixCapacities)> {
    let high = ApLadder::from_segment(p.top_segment(level))?;
    let low = ApLadder::from_segment(p.bottom_segment(level))?;
    Ok((
        PrefixCapacities::replicated(&high, m)?,
        PrefixCapacities::replicated(&low, m)?,
    ))
}

/// Largest `v` in `[lo, hi]` with `pred(v)`, given `pred` holds at `lo` and
/// is downward closed.
fn last_true(mut lo: i64, mut hi: i64, mut pred: impl FnMut(i64) -> Result<bool>) -> Result<i64> {
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if pred(mid)? {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    Ok(lo)
}

/// Smallest `v` in `[lo, hi]` with `pred(v)`, given `pred` holds at `hi` and
/// is upward closed.
fn first_true(mut lo: i64, mut hi: i64, mut pred: impl FnMut(i64) -> Result<bool>) -> Result<i64> {
    while lo < hi {
        let mid = lo + (hi - lo) / 2;
        if pred(mid)? {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    Ok(hi)
}

pub fn feasible_envelope_at_level(
    scores: &HonestScores,
    boundary: &BoundarySets,
    caps_high: &PrefixCapacities,
    caps_low: &PrefixCapacities,
    bounds: (i64, i64),
) -> Result<EnvelopeResult> {
    if boundary.level == 0 {
        return Ok(EnvelopeResult::trivial());
    }
    let (low, high) = bounds;
    let boost = |b: i64| boost_feasible(&compute_demand_vectors(scores, boundary, b), caps_high);
    let suppress = |b: i64| suppress_feasible(&compute_demand_vectors(scores, boundary, b), caps_low);

    let boost_max = if low <= high && boost(low)? {
        Some(last_true(low, high, boost)?)
    } else {
        None
    };
    let suppress_min = if low <= high && suppress(high)? {
        Some(first_true(low, high, suppress)?)
    } else {
        None
    };
    let (feasible, b_min, b_max) = match (suppress_min, boost_max) {
        (Some(lo), Some(hi)) if lo <= hi => (true, Some(lo), Some(hi)),
        _ => (false, None, None),
    };
    Ok(EnvelopeResult {
        level: boundary.level,
        feasible,
        b_min,
        b_max,
        boost_max,
        suppress_min,
    })
}

/// Everything needed to evaluate any level of one instance.
#[derive(Debug, Clone)]
pub struct Instance<'a> {
    scores: &'a HonestScores,
    p: &'a ScoringVector,
    m: u64,
    window: BoundaryWindow,
}

impl<'a> Instance<'a> {
    pub fn new(scores: &'a HonestScores, p: &'a ScoringVector, k: usize, m: u64) -> Result<Self> {
        if p.len() != scores.len() {
            return Err(Error::LengthMismatch {
                expected: scores.len(),
                found: p.len(),
            });
        }
        p.require_nonnegative()?;
        let window = BoundaryWindow::new(scores, k)?;
        Ok(Instance {
            scores,
            p,
            m,
            window,
        })
    }

    pub fn level_cap(&self) -> usize {
        self.window.cap()
    }

    pub fn boundary(&self, level: usize) -> Result<BoundarySets> {
        self.window.boundary(level)
    }

    pub fn capacities(&self, level: usize) -> Result<(PrefixCapacities, PrefixCapacities)> {
        level_capacities(self.p, self.m, level)
    }

    pub fn envelope(&self, level: usize) -> Result<EnvelopeResult> {
        let boundary = self.boundary(level)?;
        if level == 0 {
            return Ok(EnvelopeResult::trivial());
        }
        let (high, low) = self.capacities(level)?;
        let bounds = cutoff_bounds(self.scores, &boundary, self.m, self.p)?;
        feasible_envelope_at_level(self.scores, &boundary, &high, &low, bounds)
    }

    pub fn maximize(&self, strategy: Strategy) -> Result<DisplacementResult> {
        let mut per_level = Vec::new();
        let best = match strategy {
            Strategy::Binary => {
                let (mut lo, mut hi) = (0usize, self.level_cap());
                while lo < hi {
                    let mid = lo + (hi - lo).div_ceil(2);
                    let env = self.envelope(mid)?;
                    let ok = env.feasible;
                    per_level.push(env);
                    if ok {
                        lo = mid;
                    } else {
                        hi = mid - 1;
                    }
                }
                lo
            }
            Strategy::Linear => {
                let mut found = 0;
                for level in (1..=self.level_cap()).rev() {
                    let env = self.envelope(level)?;
                    let ok = env.feasible;
                    per_level.push(env);
                    if ok {
                        found = level;
                        break;
                    }
                }
                found
            }
        };
        let at_best = per_level.iter().find(|e| e.level == best && best > 0);
        Ok(DisplacementResult {
            k_star: best,
            b_min: at_best.and_then(|e| e.b_min),
            b_max: at_best.and_then(|e| e.b_max),
            per_level,
        })
    }
}

pub fn maximize_displacement(
    scores: &HonestScores,
    p: &ScoringVector,
    k: usize,
    m: u64,
    strategy: Strategy,
) -> Result<DisplacementResult> {
    Instance::new(scores, p, k, m)?.maximize(strategy)
}

/// Envelopes of every level `1..=min(k, x - k)`.
pub fn envelope_sweep(
    scores: &HonestScores,
    p: &ScoringVector,
    k: usize,
    m: u64,
) -> Result<Vec<EnvelopeResult>> {
    let instance = Instance::new(scores, p, k, m)?;
    (1..=instance.level_cap()).map(|l| instance.envelope(l)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::election::{boundary_sets, honest_order};
    use proptest::prelude::{prop, proptest, prop_assert, prop_assert_eq, ProptestConfig};
    use proptest::strategy::Strategy as Gen;

    fn four() -> (HonestScores, ScoringVector) {
        (
            HonestScores::new(vec![6, 3, 3, 0]).unwrap(),
            ScoringVector::new(vec![3, 2, 1, 0]).unwrap(),
        )
    }

    #[test]
    fn bounds() {
        let (s, p) = four();
        let b = boundary_sets(&honest_order(&s), 2, 1).unwrap();
        assert_eq!(cutoff_bounds(&s, &b, 1, &p).unwrap(), (3, 6));
        assert_eq!(cutoff_bounds(&s, &b, 0, &p).unwrap(), (3, 3));
        let flat = ScoringVector::new(vec![2; 4]).unwrap();
        let (lo, hi) = cutoff_bounds(&s, &b, 3, &flat).unwrap();
        assert_eq!(hi - lo, 0);
        let empty = boundary_sets(&honest_order(&s), 2, 0).unwrap();
        assert_eq!(cutoff_bounds(&s, &empty, 1, &p), Err(Error::EmptyBoundary));
    }

    #[test]
    fn four_candidate_instance() {
        let (s, p) = four();
        let inst = Instance::new(&s, &p, 2, 1).unwrap();
        let env = inst.envelope(1).unwrap();
        assert!(env.feasible);
        assert_eq!((env.b_min, env.b_max), (Some(4), Some(6)));
        assert!(!inst.envelope(2).unwrap().feasible);
        let zero = inst.envelope(0).unwrap();
        assert!(zero.feasible);

        for strategy in [Strategy::Binary, Strategy::Linear] {
            let r = maximize_displacement(&s, &p, 2, 1, strategy).unwrap();
            assert_eq!((r.k_star, r.b_min, r.b_max), (1, Some(4), Some(6)));
        }
    }

    #[test]
    fn empty_coalition() {
        let s = HonestScores::new(vec![9, 7, 5, 3, 1]).unwrap();
        let p = ScoringVector::new(vec![4, 3, 2, 1, 0]).unwrap();
        let r = maximize_displacement(&s, &p, 2, 0, Strategy::Binary).unwrap();
        assert_eq!((r.k_star, r.b_min, r.b_max), (0, None, None));
    }

    #[test]
    fn rejects_bad_inputs() {
        let (s, _) = four();
        let neg = ScoringVector::new(vec![1, 0, 0, -1]).unwrap();
        assert!(matches!(
            maximize_displacement(&s, &neg, 2, 1, Strategy::Binary),
            Err(Error::NegativeScore { .. })
        ));
        let short = ScoringVector::new(vec![1, 0]).unwrap();
        assert!(matches!(
            maximize_displacement(&s, &short, 2, 1, Strategy::Binary),
            Err(Error::LengthMismatch { .. })
        ));
        let p = ScoringVector::new(vec![1, 0, 0, 0]).unwrap();
        assert!(matches!(
            maximize_displacement(&s, &p, 4, 1, Strategy::Binary),
            Err(Error::CommitteeOutOfRange { .. })
        ));
    }

    fn instance() -> impl Gen<Value = (Vec<i64>, Vec<i64>, usize, u64)> {
        (3usize..9).prop_flat_map(|x| {
            (
                prop::collection::vec(0i64..25, x),
                prop::collection::vec(0i64..5, x).prop_map(|mut p| {
                    p.sort_unstable_by(|a, b| b.cmp(a));
                    p
                }),
                1..x,
                0u64..4,
            )
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(200))]

        #[test]
        fn interval_matches_scan((s, p, k, m) in instance()) {
            let s = HonestScores::new(s).unwrap();
            let p = ScoringVector::new(p).unwrap();
            let inst = Instance::new(&s, &p, k, m).unwrap();
            for level in 1..=inst.level_cap() {
                let bs = inst.boundary(level).unwrap();
                let (high, low) = inst.capacities(level).unwrap();
                let (lo, hi) = cutoff_bounds(&s, &bs, m, &p).unwrap();
                let env = inst.envelope(level).unwrap();
                let mut both = Vec::new();
                let mut prev_boost = true;
                let mut prev_supp = false;
                for b in lo - 2..=hi + 2 {
                    let d = compute_demand_vectors(&s, &bs, b);
                    let bo = boost_feasible(&d, &high).unwrap();
                    let su = suppress_feasible(&d, &low).unwrap();
                    prop_assert!(prev_boost || !bo);
                    prop_assert!(!prev_supp || su);
                    prev_boost = bo;
                    prev_supp = su;
                    if bo && su {
                        both.push(b);
                    }
                }
                match (env.b_min, env.b_max) {
                    (Some(a), Some(z)) => {
                        prop_assert!(env.feasible);
                        prop_assert_eq!(both, (a..=z).collect::<Vec<_>>());
                    }
                    _ => {
                        prop_assert!(!env.feasible);
                        prop_assert!(both.is_empty());
                    }
                }
            }
        }

        #[test]
        fn strategies_agree_and_coalitions_help((s, p, k, m) in instance()) {
            let s = HonestScores::new(s).unwrap();
            let p = ScoringVector::new(p).unwrap();
            let bin = maximize_displacement(&s, &p, k, m, Strategy::Binary).unwrap();
            let lin = maximize_displacement(&s, &p, k, m, Strategy::Linear).unwrap();
            prop_assert_eq!(bin.k_star, lin.k_star);
            prop_assert_eq!((bin.b_min, bin.b_max), (lin.b_min, lin.b_max));
            let more = maximize_displacement(&s, &p, k, m + 1, Strategy::Linear).unwrap();
            prop_assert!(more.k_star >= lin.k_star);
        }
    }
}
