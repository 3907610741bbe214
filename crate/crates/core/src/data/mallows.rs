use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::election::{is_permutation, Profile, WeightedRanking};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MallowsConfig {
    pub num_candidates: usize,
    pub num_voters: u64,
    /// In `(0, 1]`; 1 is uniform.
    pub dispersion: f64,
    pub reference: Vec<usize>,
    pub seed: u64,
}

impl MallowsConfig {
    /// Identity reference ranking.
    pub fn new(num_candidates: usize, num_voters: u64, dispersion: f64, seed: u64) -> Self {
        MallowsConfig {
            num_candidates,
            num_voters,
            dispersion,
            reference: (0..num_candidates).collect(),
            seed,
        }
    }
}

/// Draws rankings by repeated insertion: the `i`-th reference item goes to
/// position `j <= i` with weight `phi^(i - j)`.
pub fn sample_mallows(config: &MallowsConfig) -> Result<Profile> {
    let phi = config.dispersion;
    if !(phi > 0.0 && phi <= 1.0) {
        return Err(Error::InvalidDispersion(phi));
    }
    let x = config.num_candidates;
    if !is_permutation(&config.reference, x) {
        return Err(Error::InvalidCandidates(
            "reference is not a permutation of the candidates".into(),
        ));
    }
    let slots: Vec<WeightedIndex<f64>> = (0..x)
        .map(|i| {
            let weights = (0..=i).map(|j| phi.powi((i - j) as i32));
            WeightedIndex::new(weights).expect("positive weights")
        })
        .collect();
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    let ballots = (0..config.num_voters)
        .map(|_| {
            let mut ranking = Vec::with_capacity(x);
            for (i, slot) in slots.iter().enumerate() {
                ranking.insert(slot.sample(&mut rng), config.reference[i]);
            }
            WeightedRanking {
                multiplicity: 1,
                ranking,
            }
        })
        .collect();
    Profile::new(x.max(1), ballots)
}

#[cfg(test)]
mod tests {
    use super::*;
    use statrs::distribution::{ChiSquared, ContinuousCDF};
    use std::collections::HashMap;

    fn chi_square_p(observed: &[f64], expected: &[f64]) -> f64 {
        let stat: f64 = observed
            .iter()
            .zip(expected)
            .map(|(o, e)| (o - e) * (o - e) / e)
            .sum();
        let dist = ChiSquared::new((observed.len() - 1) as f64).unwrap();
        1.0 - dist.cdf(stat)
    }

    fn kendall(ranking: &[usize]) -> usize {
        let mut d = 0;
        for i in 0..ranking.len() {
            for j in i + 1..ranking.len() {
                if ranking[i] > ranking[j] {
                    d += 1;
                }
            }
        }
        d
    }

    #[test]
    fn uniform_at_phi_one() {
        let n = 60_000;
        let p = sample_mallows(&MallowsConfig::new(3, n, 1.0, 7)).unwrap();
        let mut counts: HashMap<Vec<usize>, f64> = HashMap::new();
        for b in p.ballots() {
            *counts.entry(b.ranking.clone()).or_default() += 1.0;
        }
        assert_eq!(counts.len(), 6);
        let observed: Vec<f64> = counts.values().copied().collect();
        let expected = vec![n as f64 / 6.0; 6];
        assert!(chi_square_p(&observed, &expected) > 0.01);
    }

    #[test]
    fn concentrated_at_small_phi() {
        let cfg = MallowsConfig {
            reference: vec![3, 1, 4, 0, 2],
            ..MallowsConfig::new(5, 5_000, 0.01, 11)
        };
        let p = sample_mallows(&cfg).unwrap();
        let hits = p.ballots().iter().filter(|b| b.ranking == cfg.reference).count();
        // Exact probability: prod_i 1 / (1 + phi + ... + phi^i) ~ 0.9606.
        let exact: f64 = (0..5)
            .map(|i| 1.0 / (0..=i).map(|j| 0.01f64.powi(j)).sum::<f64>())
            .product();
        assert!(exact > 0.96);
        assert!(hits as f64 / 5_000.0 > 0.95);
    }

    #[test]
    fn kendall_distribution_matches_model() {
        let phi: f64 = 0.6;
        let n = 100_000;
        let p = sample_mallows(&MallowsConfig::new(3, n, phi, 3)).unwrap();
        let mut observed = [0f64; 4];
        for b in p.ballots() {
            observed[kendall(&b.ranking)] += 1.0;
        }
        // Rankings of 3 items at distance 0,1,2,3: 1, 2, 2, 1.
        let mass = [1.0, 2.0 * phi, 2.0 * phi * phi, phi.powi(3)];
        let z: f64 = mass.iter().sum();
        let expected: Vec<f64> = mass.iter().map(|w| w / z * n as f64).collect();
        assert!(chi_square_p(&observed, &expected) > 0.01);
    }

    #[test]
    fn deterministic_and_validated() {
        let cfg = MallowsConfig::new(6, 50, 0.7, 99);
        assert_eq!(sample_mallows(&cfg).unwrap(), sample_mallows(&cfg).unwrap());
        for bad in [0.0, -0.5, 1.5, f64::NAN] {
            let cfg = MallowsConfig::new(3, 1, bad, 0);
            assert!(matches!(sample_mallows(&cfg), Err(Error::InvalidDispersion(_))));
        }
        let cfg = MallowsConfig {
            reference: vec![0, 0, 1],
            ..MallowsConfig::new(3, 1, 0.5, 0)
        };
        assert!(sample_mallows(&cfg).is_err());
    }
}
