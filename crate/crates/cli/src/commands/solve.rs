use std::fmt::Write;

use anyhow::Result;
use clap::Args;
use displace_core::ballots::{construct_ballots, verify_manipulation, VerificationReport};
use displace_core::envelope::{EnvelopeResult, Instance, Strategy};
use serde::Serialize;

use crate::input::{emit, load, ScoreSource};

#[derive(Debug, Clone, Copy, clap::ValueEnum)]
pub enum StrategyArg {
    Binary,
    Linear,
}

impl From<StrategyArg> for Strategy {
    fn from(s: StrategyArg) -> Self {
        match s {
            StrategyArg::Binary => Strategy::Binary,
            StrategyArg::Linear => Strategy::Linear,
        }
    }
}

#[derive(Debug, Args)]
pub struct Problem {
    #[command(flatten)]
    pub source: ScoreSource,
    /// Scoring rule: borda, plurality, kapproval:<t>, truncborda:<t>, 321,
    /// scaled:<g>:borda or vec:<p1>,<p2>,...
    #[arg(long, default_value = "borda")]
    pub scoring: String,
    /// Committee size.
    #[arg(short = 'k', long = "k")]
    pub k: usize,
    /// Coalition size.
    #[arg(short = 'm', long = "m")]
    pub m: u64,
}

#[derive(Debug, Args)]
pub struct MaxDisplacementArgs {
    #[command(flatten)]
    pub problem: Problem,
    #[arg(long, value_enum, default_value = "binary")]
    pub strategy: StrategyArg,
    /// Emit coalition ballots achieving the maximal level.
    #[arg(long)]
    pub construct: bool,
    /// Recount with the constructed ballots (implies --construct).
    #[arg(long)]
    pub verify: bool,
    /// Cutoff used for construction; defaults to b_min.
    #[arg(long, allow_hyphen_values = true)]
    pub cutoff: Option<i64>,
    /// Include every evaluated level.
    #[arg(long)]
    pub per_level: bool,
}

#[derive(Debug, Serialize)]
struct MaxDisplacementOutput {
    k_star: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_min: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    b_max: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    cutoff: Option<i64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    ballots: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    verification: Option<VerificationReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    per_level: Option<Vec<EnvelopeResult>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    id_map: Option<Vec<i64>>,
}

pub fn max_displacement(args: &MaxDisplacementArgs) -> Result<()> {
    let pr = &args.problem;
    let problem = load(&pr.source, &pr.scoring)?;
    let instance = Instance::new(&problem.scores, &problem.p, pr.k, pr.m)?;
    let result = instance.maximize(args.strategy.into())?;
    let mut out = MaxDisplacementOutput {
        k_star: result.k_star,
        b_min: result.b_min,
        b_max: result.b_max,
        cutoff: None,
        ballots: None,
        verification: None,
        per_level: args.per_level.then(|| result.per_level.clone()),
        id_map: problem.id_map.clone(),
    };
    if (args.construct || args.verify) && result.k_star > 0 {
        let cutoff = args.cutoff.or(result.b_min).expect("feasible level has a cutoff");
        let boundary = instance.boundary(result.k_star)?;
        let ballots = construct_ballots(&problem.scores, &boundary, &problem.p, pr.m, cutoff)?;
        if args.verify {
            out.verification = Some(verify_manipulation(
                &problem.scores,
                &ballots,
                &problem.p,
                pr.k,
                &boundary,
                cutoff,
            ));
        }
        out.cutoff = Some(cutoff);
        out.ballots = Some(ballots.rankings);
    }
    let mut text = serde_json::to_string(&out)?;
    text.push('\n');
    emit(None, &text)
}

#[derive(Debug, Args)]
#[command(group(clap::ArgGroup::new("levels").required(true).args(["level", "sweep_levels"])))]
pub struct EnvelopeArgs {
    #[command(flatten)]
    pub problem: Problem,
    /// Displacement level to evaluate.
    #[arg(long)]
    pub level: Option<usize>,
    /// Every level from 1 to min(k, x - k), as CSV.
    #[arg(long)]
    pub sweep_levels: bool,
}

fn cell(v: Option<i64>) -> String {
    v.map(|v| v.to_string()).unwrap_or_default()
}

pub fn sweep_csv(rows: &[EnvelopeResult]) -> String {
    let mut s = String::from("level,b_min,b_max,feasible,boost_max,suppress_min\n");
    for r in rows {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{}",
            r.level,
            cell(r.b_min),
            cell(r.b_max),
            r.feasible,
            cell(r.boost_max),
            cell(r.suppress_min)
        );
    }
    s
}

pub fn envelope(args: &EnvelopeArgs) -> Result<()> {
    let pr = &args.problem;
    let problem = load(&pr.source, &pr.scoring)?;
    let instance = Instance::new(&problem.scores, &problem.p, pr.k, pr.m)?;
    let text = match args.level {
        Some(level) => {
            let mut t = serde_json::to_string(&instance.envelope(level)?)?;
            t.push('\n');
            t
        }
        None => {
            let rows = (1..=instance.level_cap())
                .map(|l| instance.envelope(l))
                .collect::<displace_core::Result<Vec<_>>>()?;
            sweep_csv(&rows)
        }
    };
    emit(None, &text)
}
