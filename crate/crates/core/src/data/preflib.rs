use std::collections::{BTreeSet, HashMap};
use std::fmt::Write;

use crate::election::{Profile, WeightedRanking};
use crate::error::{Error, Result};

/// A parsed profile plus the original id of each dense candidate index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParsedProfile {
    pub profile: Profile,
    pub original_ids: Vec<i64>,
    /// Names from `# ALTERNATIVE NAME` lines, by dense index.
    pub names: Vec<Option<String>>,
}

fn header_value<'a>(line: &'a str, key: &str) -> Option<&'a str> {
    let body = line.trim_start_matches('#').trim();
    body.strip_prefix(key).map(str::trim)
}

/// Parses a strict-complete-order PrefLib file.
pub fn parse_preflib(text: &str) -> Result<ParsedProfile> {
    let mut declared: Option<usize> = None;
    let mut named: Vec<(i64, String)> = Vec::new();
    let mut rows: Vec<(usize, u64, Vec<i64>)> = Vec::new();

    for (index, raw) in text.lines().enumerate() {
        let line_no = index + 1;
        let line = raw.trim();
        let malformed = |message: &str| Error::MalformedLine {
            line: line_no,
            message: message.to_string(),
        };
        if line.is_empty() {
            continue;
        }
        if line.starts_with('#') {
            if let Some(v) = header_value(line, "NUMBER ALTERNATIVES:") {
                declared = Some(v.parse().map_err(|_| malformed("bad alternative count"))?);
            } else if let Some(v) = header_value(line, "ALTERNATIVE NAME") {
                let (id, name) = v.split_once(':').ok_or_else(|| malformed("bad alternative name"))?;
                let id = id.trim().parse().map_err(|_| malformed("bad alternative id"))?;
                named.push((id, name.trim().to_string()));
            }
            continue;
        }
        let (count, ranking) = line
            .split_once(':')
            .ok_or_else(|| malformed("expected `<multiplicity>: <ranking>`"))?;
        let count: u64 = count
            .trim()
            .parse()
            .map_err(|_| malformed("bad multiplicity"))?;
        if ranking.contains('{') || ranking.contains('}') {
            return Err(Error::IncompleteRanking { line: line_no });
        }
        let ids = ranking
            .split(',')
            .map(|t| t.trim().parse::<i64>().map_err(|_| malformed("bad candidate id")))
            .collect::<Result<Vec<_>>>()?;
        rows.push((line_no, count, ids));
    }

    let mut universe: BTreeSet<i64> = named.iter().map(|(id, _)| *id).collect();
    for (_, _, ids) in &rows {
        universe.extend(ids);
    }
    let x = match declared {
        Some(d) if universe.len() > d => {
            return Err(Error::CountMismatch {
                declared: d,
                observed: universe.len(),
            })
        }
        Some(d) => d,
        None if universe.is_empty() => return Err(Error::UndeclaredAlternatives),
        None => universe.len(),
    };
    if x == 0 {
        return Err(Error::UndeclaredAlternatives);
    }
    // Declared alternatives that never appear are only possible if every
    // ranking is empty; those rankings fail the completeness check below.
    let mut original_ids: Vec<i64> = universe.into_iter().collect();
    let mut next = original_ids.last().copied().unwrap_or(0);
    while original_ids.len() < x {
        next += 1;
        original_ids.push(next);
    }
    let dense: HashMap<i64, usize> = original_ids.iter().enumerate().map(|(i, &id)| (id, i)).collect();

    let mut ballots = Vec::with_capacity(rows.len());
    for (line, multiplicity, ids) in rows {
        let ranking: Vec<usize> = ids.iter().map(|id| dense[id]).collect();
        if !crate::election::is_permutation(&ranking, x) {
            return Err(Error::IncompleteRanking { line });
        }
        if multiplicity > 0 {
            ballots.push(WeightedRanking {
                multiplicity,
                ranking,
            });
        }
    }
    let mut names = vec![None; x];
    for (id, name) in named {
        names[dense[&id]] = Some(name);
    }
    Ok(ParsedProfile {
        profile: Profile::new(x, ballots)?,
        original_ids,
        names,
    })
}

/// Writes a profile in PrefLib strict-order form with ids `1..=x`.
pub fn write_preflib(profile: &Profile) -> String {
    let x = profile.num_candidates();
    let mut out = String::new();
    let _ = writeln!(out, "# DATA TYPE: soc");
    let _ = writeln!(out, "# NUMBER ALTERNATIVES: {x}");
    let _ = writeln!(out, "# NUMBER VOTERS: {}", profile.num_voters());
    let _ = writeln!(out, "# NUMBER UNIQUE ORDERS: {}", profile.ballots().len());
    for c in 0..x {
        let _ = writeln!(out, "# ALTERNATIVE NAME {}: candidate {}", c + 1, c + 1);
    }
    for b in profile.ballots() {
        let ids: Vec<String> = b.ranking.iter().map(|c| (c + 1).to_string()).collect();
        let _ = writeln!(out, "{}: {}", b.multiplicity, ids.join(","));
    }
    out
}
