use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};

use anyhow::{Context, Result};
use displace_core::data::parse_preflib;
use displace_core::election::{tally, HonestScores};
use displace_core::scoring::{ScoringRule, ScoringVector};

use crate::exit::ParseFailure;

/// Where the honest scores come from.
#[derive(Debug, Clone, clap::Args)]
#[group(required = true, multiple = false)]
pub struct ScoreSource {
    /// One integer score per line; line i is candidate i.
    #[arg(long, value_name = "CSV")]
    pub scores: Option<PathBuf>,
    /// PrefLib strict-order profile, tallied with --scoring.
    #[arg(long, value_name = "SOC")]
    pub profile: Option<PathBuf>,
}

/// Honest scores, the scoring vector, and the original candidate ids when
/// they came from a profile.
pub struct Problem {
    pub scores: HonestScores,
    pub p: ScoringVector,
    pub id_map: Option<Vec<i64>>,
}

pub fn parse_scores(text: &str) -> Result<Vec<i64>> {
    let body = text.trim_end();
    if body.is_empty() {
        return Err(ParseFailure("score file is empty".into()).into());
    }
    body.lines()
        .enumerate()
        .map(|(i, line)| {
            line.trim().parse::<i64>().map_err(|_| {
                ParseFailure(format!("line {}: expected an integer score, found {line:?}", i + 1)).into()
            })
        })
        .collect()
}

pub fn load(source: &ScoreSource, rule: &str) -> Result<Problem> {
    let rule = ScoringRule::parse(rule)?;
    if let Some(path) = &source.scores {
        let values = parse_scores(&read(path)?)?;
        let p = rule.vector(values.len())?;
        return Ok(Problem {
            scores: HonestScores::new(values)?,
            p,
            id_map: None,
        });
    }
    let path = source.profile.as_ref().expect("clap enforces one source");
    let parsed = parse_preflib(&read(path)?)?;
    let p = rule.vector(parsed.profile.num_candidates())?;
    Ok(Problem {
        scores: tally(&parsed.profile, &p)?,
        p,
        id_map: Some(parsed.original_ids),
    })
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

/// Writes to `path`, or stdout when absent.
pub fn emit(path: Option<&Path>, text: &str) -> Result<()> {
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            let mut out = io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}
