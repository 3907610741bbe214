use std::fmt::Write;
use std::path::PathBuf;

use anyhow::Result;
use clap::Args;
use displace_core::data::{gen_synthetic_scores, sample_mallows, write_preflib, MallowsConfig, ScoreDistribution};

use crate::input::emit;

#[derive(Debug, Args)]
pub struct GenMallowsArgs {
    /// Number of candidates.
    #[arg(long)]
    pub x: usize,
    /// Number of voters.
    #[arg(long)]
    pub n: u64,
    /// Dispersion in (0, 1]; 1 is impartial culture.
    #[arg(long, default_value_t = 1.0)]
    pub phi: f64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn gen_mallows(args: &GenMallowsArgs) -> Result<()> {
    let profile = sample_mallows(&MallowsConfig::new(args.x, args.n, args.phi, args.seed))?;
    emit(args.out.as_deref(), &write_preflib(&profile))
}

/// `uniform:<low>:<high>` (high exclusive) or `zipf:<exponent>`.
pub fn parse_distribution(raw: &str) -> Result<ScoreDistribution, String> {
    let bad = || format!("expected uniform:<low>:<high> or zipf:<exponent>, got {raw:?}");
    let mut parts = raw.split(':');
    match (parts.next(), parts.next(), parts.next(), parts.next()) {
        (Some("uniform"), Some(low), Some(high), None) => Ok(ScoreDistribution::Uniform {
            low: low.parse().map_err(|_| bad())?,
            high: high.parse().map_err(|_| bad())?,
        }),
        (Some("zipf"), Some(s), None, None) => Ok(ScoreDistribution::Zipf {
            exponent: s.parse().map_err(|_| bad())?,
        }),
        _ => Err(bad()),
    }
}

#[derive(Debug, Args)]
pub struct GenScoresArgs {
    /// Number of candidates.
    #[arg(long)]
    pub x: usize,
    #[arg(long, default_value = "uniform:0:1000000000", value_parser = parse_distribution)]
    pub dist: ScoreDistribution,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn gen_scores(args: &GenScoresArgs) -> Result<()> {
    let scores = gen_synthetic_scores(args.x, args.dist, args.seed)?;
    let mut s = String::with_capacity(args.x * 11);
    for v in scores.scores() {
        let _ = writeln!(s, "{v}");
    }
    emit(args.out.as_deref(), &s)
}
