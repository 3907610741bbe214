use rand::distr::{Distribution, Uniform};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::Zipf;
use serde::{Deserialize, Serialize};

use crate::election::HonestScores;
use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum ScoreDistribution {
    /// Integers drawn uniformly from `[low, high)`.
    Uniform { low: i64, high: i64 },
    /// Zipf ranks over `1..=x` with the given exponent, sorted nonincreasing.
    Zipf { exponent: f64 },
}

/// A score array of length `x`, deterministic in `seed`.
pub fn gen_synthetic_scores(x: usize, distribution: ScoreDistribution, seed: u64) -> Result<HonestScores> {
    if x == 0 {
        return Err(Error::InvalidCandidates("no candidates".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let scores = match distribution {
        ScoreDistribution::Uniform { low, high } => {
            let range = Uniform::new(low, high)
                .map_err(|e| Error::InvalidCandidates(format!("uniform range: {e}")))?;
            range.sample_iter(&mut rng).take(x).collect()
        }
        ScoreDistribution::Zipf { exponent } => {
            let zipf = Zipf::new(x as f64, exponent)
                .map_err(|e| Error::InvalidCandidates(format!("zipf: {e}")))?;
            let mut v: Vec<i64> = zipf.sample_iter(&mut rng).take(x).map(|s: f64| s as i64).collect();
            v.sort_unstable_by(|a, b| b.cmp(a));
            v
        }
    };
    HonestScores::new(scores)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn deterministic_uniform() {
        let d = ScoreDistribution::Uniform { low: 0, high: 100 };
        let a = gen_synthetic_scores(10, d, 5).unwrap();
        assert_eq!(a, gen_synthetic_scores(10, d, 5).unwrap());
        assert_ne!(a, gen_synthetic_scores(10, d, 6).unwrap());
        assert!(a.scores().iter().all(|s| (0..100).contains(s)));
    }

    #[test]
    fn zipf_sorted() {
        let s = gen_synthetic_scores(1000, ScoreDistribution::Zipf { exponent: 1.1 }, 1).unwrap();
        assert!(s.scores().windows(2).all(|w| w[0] >= w[1]));
        assert!(s.scores().iter().all(|&v| v >= 1));
    }

    #[test]
    fn rejects_bad_parameters() {
        assert!(gen_synthetic_scores(0, ScoreDistribution::Zipf { exponent: 1.1 }, 1).is_err());
        let d = ScoreDistribution::Uniform { low: 5, high: 5 };
        assert!(gen_synthetic_scores(3, d, 1).is_err());
    }
}
