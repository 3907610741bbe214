use std::fmt::Write;
use std::time::Instant;

use anyhow::Result;
use clap::Args;
use displace_core::baselines::greedy_promote;
use displace_core::data::{gen_synthetic_scores, real_data_committee, sample_mallows, MallowsConfig, ScoreDistribution};
use displace_core::election::{tally, HonestScores};
use displace_core::envelope::{maximize_displacement, Strategy};
use displace_core::reference::brute_force_k_star;
use displace_core::scoring::{ScoringRule, ScoringVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::millis;
use crate::exit::CheckFailed;
use crate::input::emit;

/// Independent generator for one trial, fixed by the seed and trial index.
fn trial_rng(seed: u64, trial: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(trial as u64);
    rng
}

/// Rule names used by the exactness protocol, plus any general rule spec.
///
/// `borda3` is Borda scaled by 3 and `truncated` is truncated Borda with
/// `ceil(x / 2)` scoring positions.
pub fn protocol_rule(name: &str, x: usize) -> displace_core::Result<ScoringVector> {
    let rule = match name {
        "borda3" => ScoringRule::ScaledBorda(3),
        "truncated" => ScoringRule::TruncatedBorda(x.div_ceil(2)),
        other => ScoringRule::parse(other)?,
    };
    rule.vector(x)
}

#[derive(Debug, Args)]
pub struct BruteCheckArgs {
    #[arg(long, default_value_t = 500)]
    pub trials: usize,
    /// Largest candidate count; instances use 3..=max-x.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(3..=8))]
    pub max_x: u64,
    /// Largest coalition size.
    #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_m: u64,
    /// Largest number of honest voters.
    #[arg(long, default_value_t = 6, value_parser = clap::value_parser!(u64).range(1..))]
    pub max_n: u64,
    #[arg(long, value_delimiter = ',', default_value = "borda,borda3,truncated,plurality,321")]
    pub rules: Vec<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

struct Trial {
    rule: String,
    scores: Vec<i64>,
    k: usize,
    m: u64,
    oracle: usize,
    brute: usize,
}

fn brute_trial(args: &BruteCheckArgs, index: usize) -> displace_core::Result<Trial> {
    let mut rng = trial_rng(args.seed, index);
    let x = rng.random_range(3..=args.max_x as usize);
    let k = rng.random_range(1..x);
    let m = rng.random_range(1..=args.max_m);
    let rule = args.rules[rng.random_range(0..args.rules.len())].clone();
    let p = protocol_rule(&rule, x)?;
    let n = rng.random_range(1..=args.max_n);
    let profile = sample_mallows(&MallowsConfig::new(x, n, 1.0, rng.random()))?;
    let s = tally(&profile, &p)?;
    let oracle = maximize_displacement(&s, &p, k, m, Strategy::Binary)?.k_star;
    let brute = brute_force_k_star(&s, &p, m, k)?;
    Ok(Trial {
        rule,
        scores: s.scores().to_vec(),
        k,
        m,
        oracle,
        brute,
    })
}

pub fn brute_check(args: &BruteCheckArgs) -> Result<()> {
    if args.rules.is_empty() {
        anyhow::bail!(displace_core::Error::InvalidRule(String::new()));
    }
    for r in &args.rules {
        protocol_rule(r, 3)?;
    }
    let trials = (0..args.trials)
        .into_par_iter()
        .map(|i| brute_trial(args, i))
        .collect::<displace_core::Result<Vec<_>>>()?;
    let mut report = String::new();
    let mut agree = 0;
    for (i, t) in trials.iter().enumerate() {
        if t.oracle == t.brute {
            agree += 1;
        } else {
            let _ = writeln!(
                report,
                "mismatch trial {i}: rule={} scores={:?} k={} m={} oracle={} brute={}",
                t.rule, t.scores, t.k, t.m, t.oracle, t.brute
            );
        }
    }
    let _ = writeln!(report, "agreement: {agree}/{}", args.trials);
    emit(None, &report)?;
    if agree != args.trials {
        return Err(CheckFailed(format!("{} disagreements", args.trials - agree)).into());
    }
    Ok(())
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// Candidate counts.
    #[arg(long, value_delimiter = ',', default_value = "100000,1000000,10000000")]
    pub x: Vec<usize>,
    /// Coalition sizes.
    #[arg(long, value_delimiter = ',', default_value = "1000,1000000")]
    pub m: Vec<u64>,
    /// Committee size; defaults to min(1000, x / 2).
    #[arg(short = 'k', long = "k")]
    pub k: Option<usize>,
    #[arg(long, default_value = "borda")]
    pub scoring: String,
    /// Timed runs per cell; the fastest is reported.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub repeats: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn bench(args: &BenchArgs) -> Result<()> {
    let rule = ScoringRule::parse(&args.scoring)?;
    let mut out = String::from("x,m,ms,k,k_star\n");
    for &x in &args.x {
        let dist = ScoreDistribution::Uniform { low: 0, high: 1_000_000_000 };
        let s = gen_synthetic_scores(x, dist, args.seed)?;
        let p = rule.vector(x)?;
        let k = args.k.unwrap_or((x / 2).min(1000));
        for &m in &args.m {
            let mut best = f64::INFINITY;
            let mut k_star = 0;
            for _ in 0..args.repeats {
                let start = Instant::now();
                k_star = maximize_displacement(&s, &p, k, m, Strategy::Binary)?.k_star;
                best = best.min(millis(start.elapsed()));
            }
            let _ = writeln!(out, "{x},{m},{best:.3},{k},{k_star}");
        }
    }
    emit(None, &out)
}

#[derive(Debug, Args)]
pub struct BaselineCompareArgs {
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    /// Number of candidates.
    #[arg(long, default_value_t = 100)]
    pub x: usize,
    /// Number of honest voters.
    #[arg(long, default_value_t = 1000)]
    pub n: u64,
    /// Mallows dispersion.
    #[arg(long, default_value_t = 0.8)]
    pub phi: f64,
    /// Coalition sizes.
    #[arg(long, value_delimiter = ',', default_value = "1,2,5,10,20,50,100,200")]
    pub m: Vec<u64>,
    /// Committee size; defaults to min(10, x / 2).
    #[arg(short = 'k', long = "k")]
    pub k: Option<usize>,
    #[arg(long, default_value = "borda")]
    pub scoring: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

struct Row {
    m: u64,
    oracle: usize,
    greedy: usize,
    greedy_worst: usize,
    ms_oracle: f64,
    ms_greedy: f64,
}

fn compare_trial(args: &BaselineCompareArgs, p: &ScoringVector, index: usize) -> displace_core::Result<Vec<Row>> {
    let mut rng = trial_rng(args.seed, index);
    let profile = sample_mallows(&MallowsConfig::new(args.x, args.n, args.phi, rng.random()))?;
    let s: HonestScores = tally(&profile, p)?;
    let k = args.k.unwrap_or_else(|| real_data_committee(args.x));
    args.m
        .iter()
        .map(|&m| {
            let start = Instant::now();
            let oracle = maximize_displacement(&s, p, k, m, Strategy::Binary)?.k_star;
            let ms_oracle = millis(start.elapsed());
            let start = Instant::now();
            let greedy = greedy_promote(&s, p, m, k)?;
            let ms_greedy = millis(start.elapsed());
            Ok(Row {
                m,
                oracle,
                greedy: greedy.displaced,
                greedy_worst: greedy.displaced_worst_case,
                ms_oracle,
                ms_greedy,
            })
        })
        .collect()
}

pub fn baseline_compare(args: &BaselineCompareArgs) -> Result<()> {
    let p = ScoringRule::parse(&args.scoring)?.vector(args.x)?;
    let trials = (0..args.trials)
        .into_par_iter()
        .map(|i| compare_trial(args, &p, i))
        .collect::<displace_core::Result<Vec<_>>>()?;
    let mut out = String::from("trial,m,k_oracle,k_greedy,k_greedy_worst_case,ms_oracle,ms_greedy\n");
    for (i, rows) in trials.iter().enumerate() {
        for r in rows {
            let _ = writeln!(
                out,
                "{i},{},{},{},{},{:.3},{:.3}",
                r.m, r.oracle, r.greedy, r.greedy_worst, r.ms_oracle, r.ms_greedy
            );
        }
    }
    emit(None, &out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn protocol_rules() {
        assert_eq!(protocol_rule("borda3", 4).unwrap().values(), [9, 6, 3, 0]);
        assert_eq!(protocol_rule("truncated", 5).unwrap().values(), [3, 2, 1, 0, 0]);
        assert_eq!(protocol_rule("plurality", 3).unwrap().values(), [1, 0, 0]);
        assert!(protocol_rule("nonsense", 3).is_err());
    }

    #[test]
    fn trial_streams_are_independent_of_order() {
        let a: u64 = trial_rng(7, 3).random();
        let _: u64 = trial_rng(7, 2).random();
        assert_eq!(a, trial_rng(7, 3).random::<u64>());
        assert_ne!(a, trial_rng(7, 4).random::<u64>());
    }
}
