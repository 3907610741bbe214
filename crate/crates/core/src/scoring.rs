//! Positional scoring vectors, arithmetic-progression ladders and the
//! aggregate prefix capacities of a coalition.
//!
//! A ballot's `k'` highest (or lowest) positional scores form a ladder
//! `r_j = L + g * l_j` with baseline `L`, step `g` and nonincreasing integer
//! levels `l_j >= 0`. The step is always the gcd of the pairwise differences,
//! i.e. the largest step that represents the segment.

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points per rank, best rank first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i64>", into = "Vec<i64>")]
pub struct ScoringVector(Vec<i64>);

impl ScoringVector {
    pub fn new(values: Vec<i64>) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = first_increase(&values) {
            return Err(Error::NotNonincreasing { index });
        }
        Ok(ScoringVector(values))
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `p_1`, the score of the first rank.
    pub fn top(&self) -> i64 {
        self.0[0]
    }

    /// `p_x`, the score of the last rank.
    pub fn bottom(&self) -> i64 {
        self.0[self.0.len() - 1]
    }

    /// Scores of the `len` best ranks.
    pub fn top_segment(&self, len: usize) -> &[i64] {
        &self.0[..len]
    }

    /// Scores of the `len` worst ranks, still in rank order.
    pub fn bottom_segment(&self, len: usize) -> &[i64] {
        &self.0[self.0.len() - len..]
    }

    pub(crate) fn require_nonnegative(&self) -> Result<()> {
        match self.bottom() {
            v if v < 0 => Err(Error::NegativeScore { value: v }),
            _ => Ok(()),
        }
    }
}

impl TryFrom<Vec<i64>> for ScoringVector {
    type Error = Error;

    fn try_from(values: Vec<i64>) -> Result<Self> {
        ScoringVector::new(values)
    }
}

impl From<ScoringVector> for Vec<i64> {
    fn from(p: ScoringVector) -> Self {
        p.0
    }
}

pub fn validate_scoring_vector(values: &[i64]) -> Result<ScoringVector> {
    ScoringVector::new(values.to_vec())
}

/// Index of the first entry that is larger than its predecessor.
fn first_increase(values: &[i64]) -> Option<usize> {
    values.windows(2).position(|w| w[0] < w[1]).map(|i| i + 1)
}

/// One ballot's score segment written as `baseline + step * level`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ApLadder {
    baseline: i64,
    step: i64,
    levels: Vec<i64>,
}

impl ApLadder {
    /// Builds the ladder of a nonempty nonincreasing segment.
    ///
    /// Constant segments get step 1 and all-zero levels.
    pub fn from_segment(segment: &[i64]) -> Result<Self> {
        if segment.is_empty() {
            return Err(Error::Empty);
        }
        if let Some(index) = first_increase(segment) {
            return Err(Error::NotNonincreasing { index });
        }
        let baseline = segment[segment.len() - 1];
        let step = segment
            .windows(2)
            .map(|w| w[0] - w[1])
            .fold(0i64, |g, d| g.gcd(&d));
        let step = if step == 0 { 1 } else { step };
        let levels = segment.iter().map(|&r| (r - baseline) / step).collect();
        Ok(ApLadder {
            baseline,
            step,
            levels,
        })
    }

    pub fn baseline(&self) -> i64 {
        self.baseline
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn levels(&self) -> &[i64] {
        &self.levels
    }

    pub fn len(&self) -> usize {
        self.levels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.levels.is_empty()
    }

    pub fn score(&self, j: usize) -> i64 {
        self.baseline + self.step * self.levels[j]
    }

    /// Reconstructed scores `L + g * l_j`, nonincreasing.
    pub fn scores(&self) -> Vec<i64> {
        (0..self.len()).map(|j| self.score(j)).collect()
    }

    pub fn max_score(&self) -> i64 {
        self.score(0)
    }

    pub fn min_score(&self) -> i64 {
        self.baseline
    }
}

pub fn extract_ap_ladder(segment: &[i64]) -> Result<ApLadder> {
    ApLadder::from_segment(segment)
}

/// Aggregate prefix capacities `F(1..k')` of a coalition's ladders.
///
/// `F(t)` is the largest total the coalition can place on any `t` targets.
/// Every realizable aggregate coordinate is congruent to `residue` modulo
/// `step`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrefixCapacities {
    prefix: Vec<i64>,
    total: i64,
    step: i64,
    residue: i64,
    baseline_total: i64,
    ballot_count: u64,
}

impl PrefixCapacities {
    /// Capacities of `m` ballots that all carry the same ladder. `m = 0` is
    /// the empty coalition: every capacity is zero and the step is 1.
    pub fn replicated(ladder: &ApLadder, m: u64) -> Result<Self> {
        let len = ladder.len();
        if m == 0 {
            return Ok(PrefixCapacities {
                prefix: vec![0; len],
                total: 0,
                step: 1,
                residue: 0,
                baseline_total: 0,
                ballot_count: 0,
            });
        }
        let m = i64::try_from(m).map_err(|_| Error::overflow("coalition size"))?;
        // The largest magnitude is bounded by m * max|r| * k'.
        let widest = ladder.max_score().abs().max(ladder.min_score().abs());
        m.checked_mul(widest)
            .and_then(|v| v.checked_mul(len as i64))
            .ok_or_else(|| Error::overflow("prefix capacities"))?;
        let mut prefix = Vec::with_capacity(len);
        let mut acc = 0i64;
        for j in 0..len {
            acc += m * ladder.score(j);
            prefix.push(acc);
        }
        let baseline_total = m * ladder.baseline();
        Ok(Self::from_parts(prefix, ladder.step(), baseline_total, m as u64))
    }

    fn from_parts(prefix: Vec<i64>, step: i64, baseline_total: i64, ballot_count: u64) -> Self {
        PrefixCapacities {
            total: prefix.last().copied().unwrap_or(0),
            prefix,
            step,
            residue: baseline_total.rem_euclid(step),
            baseline_total,
            ballot_count,
        }
    }

    /// Number of targets `k'`.
    pub fn len(&self) -> usize {
        self.prefix.len()
    }

    pub fn is_empty(&self) -> bool {
        self.prefix.is_empty()
    }

    /// `F(1..k')`.
    pub fn prefix(&self) -> &[i64] {
        &self.prefix
    }

    /// `F(t)` with the convention `F(0) = 0`.
    pub fn capacity(&self, t: usize) -> i64 {
        if t == 0 {
            0
        } else {
            self.prefix[t - 1]
        }
    }

    pub fn total(&self) -> i64 {
        self.total
    }

    pub fn step(&self) -> i64 {
        self.step
    }

    pub fn residue(&self) -> i64 {
        self.residue
    }

    pub fn baseline_total(&self) -> i64 {
        self.baseline_total
    }

    pub fn ballot_count(&self) -> u64 {
        self.ballot_count
    }

    /// Smallest amount any single target can receive: the sum of every
    /// ballot's lowest score.
    pub fn min_coordinate(&self) -> i64 {
        if self.is_empty() {
            0
        } else {
            self.total - self.capacity(self.len() - 1)
        }
    }

    /// Capacities of the complement ladders `M_v - r^(v)` (reversed), where
    /// `M_v` is ballot `v`'s top score. A vector `y` is an aggregate of the
    /// original ladders iff `F(1) - y` is an aggregate of the complements, so
    /// upper-bound questions become lower-bound questions.
    ///
    /// `F_c(t) = t * F(1) - T + F(k' - t)`; the complement baseline is 0.
    pub fn complement(&self) -> Result<Self> {
        let len = self.len();
        let top = self.capacity(1.min(len));
        let mut prefix = Vec::with_capacity(len);
        for t in 1..=len {
            let value = (t as i64)
                .checked_mul(top)
                .and_then(|v| v.checked_sub(self.total))
                .and_then(|v| v.checked_add(self.capacity(len - t)))
                .ok_or_else(|| Error::overflow("complement capacities"))?;
            prefix.push(value);
        }
        Ok(Self::from_parts(prefix, self.step, 0, self.ballot_count))
    }
}

/// Aggregates the capacities of `m >= 1` ladders sharing length and step.
pub fn aggregate_capacities(ladders: &[ApLadder]) -> Result<PrefixCapacities> {
    let first = ladders.first().ok_or(Error::Empty)?;
    let len = first.len();
    // A constant ladder carries the conventional step 1 and is compatible
    // with any step.
    let varying = |l: &&ApLadder| l.levels().iter().any(|&v| v != 0);
    let step = ladders.iter().find(varying).map_or(1, |l| l.step());
    for ladder in ladders {
        if ladder.len() != len {
            return Err(Error::LengthMismatch {
                expected: len,
                found: ladder.len(),
            });
        }
        if varying(&ladder) && ladder.step() != step {
            return Err(Error::StepMismatch {
                first: step,
                other: ladder.step(),
            });
        }
    }
    let mut prefix = vec![0i64; len];
    let mut baseline_total = 0i64;
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
        baseline_total = baseline_total
            .checked_add(ladder.baseline())
            .ok_or_else(|| Error::overflow("baseline total"))?;
    }
    Ok(PrefixCapacities::from_parts(
        prefix,
        step,
        baseline_total,
        ladders.len() as u64,
    ))
}

/// Named positional rules.
///
/// Syntax: `borda`, `plurality`, `kapproval:<t>`, `truncborda:<t>`, `321`,
/// `scaled:<g>:borda`, `vec:<p1>,<p2>,...`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum ScoringRule {
    Borda,
    Plurality,
    KApproval(usize),
    TruncatedBorda(usize),
    ThreeTwoOne,
    ScaledBorda(i64),
    Explicit(Vec<i64>),
}

impl ScoringRule {
    pub fn parse(spec: &str) -> Result<Self> {
        let invalid = || Error::InvalidRule(spec.to_string());
        let spec = spec.trim();
        let rule = match spec {
            "borda" => ScoringRule::Borda,
            "plurality" => ScoringRule::Plurality,
            "321" => ScoringRule::ThreeTwoOne,
            _ => {
                let (head, tail) = spec.split_once(':').ok_or_else(invalid)?;
                match head {
                    "kapproval" => ScoringRule::KApproval(tail.parse().map_err(|_| invalid())?),
                    "truncborda" => {
                        ScoringRule::TruncatedBorda(tail.parse().map_err(|_| invalid())?)
                    }
                    "scaled" => {
                        let (g, base) = tail.split_once(':').ok_or_else(invalid)?;
                        if base != "borda" {
                            return Err(invalid());
                        }
                        let g: i64 = g.parse().map_err(|_| invalid())?;
                        if g < 1 {
                            return Err(invalid());
                        }
                        ScoringRule::ScaledBorda(g)
                    }
                    "vec" => ScoringRule::Explicit(
                        tail.split(',')
                            .map(|v| v.trim().parse::<i64>().map_err(|_| invalid()))
                            .collect::<Result<_>>()?,
                    ),
                    _ => return Err(invalid()),
                }
            }
        };
        Ok(rule)
    }

    /// The rule's scoring vector for `x` candidates.
    pub fn vector(&self, x: usize) -> Result<ScoringVector> {
        if x == 0 {
            return Err(Error::Empty);
        }
        let values: Vec<i64> = match self {
            ScoringRule::Borda => (0..x).rev().map(|v| v as i64).collect(),
            ScoringRule::ScaledBorda(g) => (0..x).rev().map(|v| g * v as i64).collect(),
            ScoringRule::Plurality => (0..x).map(|r| i64::from(r == 0)).collect(),
            ScoringRule::KApproval(t) => (0..x).map(|r| i64::from(r < *t)).collect(),
            ScoringRule::TruncatedBorda(t) => {
                (0..x).map(|r| (*t as i64 - r as i64).max(0)).collect()
            }
            ScoringRule::ThreeTwoOne => {
                let group = ((x - 1) / 3).max(1);
                (0..x)
                    .map(|r| if r < 3 * group { 3 - (r / group) as i64 } else { 0 })
                    .collect()
            }
            ScoringRule::Explicit(values) => {
                if values.len() != x {
                    return Err(Error::LengthMismatch {
                        expected: x,
                        found: values.len(),
                    });
                }
                values.clone()
            }
        };
        ScoringVector::new(values)
    }
}

impl std::str::FromStr for ScoringRule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        ScoringRule::parse(s)
    }
}
