//! Explicit coalition ballots for a certified level and cutoff, and an
//! independent recount of what they achieve.

mod extend;
mod realize;

pub use extend::extend_to_base;
pub use realize::{realize_ap, Realization};

use serde::{Deserialize, Serialize};

use crate::demand::compute_demand_vectors;
use crate::election::{BoundarySets, HonestScores};
use crate::error::{Error, Result};
use crate::oracle::{boost_feasible, lattice_adjust_down, lattice_adjust_up, suppress_feasible};
use crate::scoring::{ApLadder, PrefixCapacities, ScoringVector};

/// One full ranking per coalition member, best first.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct BallotSet {
    pub rankings: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Every targeted outsider ends at least one point above every targeted
    /// winner.
    pub separated: bool,
    /// Outsiders reach the cutoff and targeted winners stay below it.
    pub cutoff_respected: bool,
    pub min_outsider_final: Option<i64>,
    pub max_weak_winner_final: Option<i64>,
    /// Honest non-winners inside the final Top-k when every tie goes against
    /// them.
    pub outsiders_in_top_k: usize,
    /// Honest winners outside the final Top-k under the same tie-breaking.
    pub displaced_count: usize,
}

/// Ballots realizing level `boundary.level` at cutoff `cutoff`.
///
/// Each ballot puts the targeted outsiders in its top positions and the
/// targeted winners in its bottom positions; everyone else fills the middle
/// in honest order.
pub fn construct_ballots(
    scores: &HonestScores,
    boundary: &BoundarySets,
    p: &ScoringVector,
    m: u64,
    cutoff: i64,
) -> Result<BallotSet> {
    let x = scores.len();
    let level = boundary.level;
    if p.len() != x {
        return Err(Error::LengthMismatch {
            expected: x,
            found: p.len(),
        });
    }
    let m_usize = usize::try_from(m).map_err(|_| Error::overflow("coalition size"))?;
    let in_block: Vec<bool> = {
        let mut marks = vec![false; x];
        for &c in boundary.outsiders_star.iter().chain(&boundary.weak_winners) {
            marks[c] = true;
        }
        marks
    };
    let middle: Vec<usize> = crate::election::honest_order(scores)
        .into_iter()
        .filter(|&c| !in_block[c])
        .collect();

    if level == 0 {
        let honest = crate::election::honest_order(scores);
        return Ok(BallotSet {
            rankings: vec![honest; m_usize],
        });
    }
    let top = ApLadder::from_segment(p.top_segment(level))?;
    let bottom = ApLadder::from_segment(p.bottom_segment(level))?;
    let caps_high = PrefixCapacities::replicated(&top, m)?;
    let caps_low = PrefixCapacities::replicated(&bottom, m)?;
    let demand = compute_demand_vectors(scores, boundary, cutoff);
    if !boost_feasible(&demand, &caps_high)? || !suppress_feasible(&demand, &caps_low)? {
        return Err(Error::NotCertified { level, cutoff });
    }
    if m == 0 {
        return Ok(BallotSet { rankings: vec![] });
    }

    let boosted = lattice_adjust_up(&demand.boost, caps_high.step(), caps_high.residue())?;
    let y_high = extend_to_base(&boosted, &caps_high)?;
    let high = realize_ap(&y_high, &vec![top; m_usize])?;

    let ceiling = lattice_adjust_down(&demand.tolerance, caps_low.step(), caps_low.residue())?;
    let full = caps_low.capacity(1);
    let slack: Vec<i64> = ceiling.iter().map(|u| full - u).collect();
    let z = extend_to_base(&slack, &caps_low.complement()?)?;
    let y_low: Vec<i64> = z.iter().map(|v| full - v).collect();
    let low = realize_ap(&y_low, &vec![bottom; m_usize])?;

    let block = |ids: &[usize], assigned: &[i64]| {
        let mut pairs: Vec<(i64, usize)> = assigned.iter().copied().zip(ids.iter().copied()).collect();
        pairs.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        pairs.into_iter().map(|(_, c)| c)
    };
    let rankings = (0..m_usize)
        .map(|v| {
            let mut ranking = Vec::with_capacity(x);
            ranking.extend(block(&demand.boost_ids, &high.assignments[v]));
            ranking.extend_from_slice(&middle);
            ranking.extend(block(&demand.tolerance_ids, &low.assignments[v]));
            ranking
        })
        .collect();
    Ok(BallotSet { rankings })
}

/// Recounts the election with the coalition ballots added.
pub fn verify_manipulation(
    scores: &HonestScores,
    ballots: &BallotSet,
    p: &ScoringVector,
    k: usize,
    boundary: &BoundarySets,
    cutoff: i64,
) -> VerificationReport {
    let x = scores.len();
    let mut finals = scores.scores().to_vec();
    for ranking in &ballots.rankings {
        for (pos, &c) in ranking.iter().enumerate() {
            finals[c] += p.values()[pos];
        }
    }
    let min_outsider_final = boundary.outsiders_star.iter().map(|&c| finals[c]).min();
    let max_weak_winner_final = boundary.weak_winners.iter().map(|&c| finals[c]).max();
    let (separated, cutoff_respected) = match (min_outsider_final, max_weak_winner_final) {
        (Some(lo), Some(hi)) => (lo > hi, lo >= cutoff && hi < cutoff),
        _ => (true, true),
    };

    let mut honest_winner = vec![false; x];
    for c in scores.ranked_slice(0, k) {
        honest_winner[c] = true;
    }
    let mut adversarial: Vec<usize> = (0..x).collect();
    adversarial.sort_by(|&a, &b| {
        finals[b]
            .cmp(&finals[a])
            .then(honest_winner[b].cmp(&honest_winner[a]))
            .then(a.cmp(&b))
    });
    let outsiders_in_top_k = adversarial[..k.min(x)].iter().filter(|&&c| !honest_winner[c]).count();
    VerificationReport {
        separated,
        cutoff_respected,
        min_outsider_final,
        max_weak_winner_final,
        outsiders_in_top_k,
        displaced_count: outsiders_in_top_k,
    }
}
