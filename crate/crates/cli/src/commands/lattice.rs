use std::fmt::Write;

use anyhow::Result;
use clap::Args;
use displace_core::oracle::{block_hlp_member, realizable};
use displace_core::scoring::{ApLadder, PrefixCapacities};
use displace_core::Error;

use crate::input::emit;

/// Most points `lattice` will enumerate.
const POINT_CAP: u128 = 10_000_000;

#[derive(Debug, Args)]
pub struct LatticeArgs {
    /// Ladder scores, best first, e.g. 8,5,2.
    #[arg(long, value_delimiter = ',', required = true, allow_hyphen_values = true)]
    pub ladder: Vec<i64>,
    /// Number of identical ballots.
    #[arg(short = 'm', long = "m")]
    pub m: u64,
    /// Drop the last coordinate, which the total determines.
    #[arg(long)]
    pub project: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Tag {
    Realizable,
    PrefixOnly,
    Outside,
}

impl Tag {
    fn as_str(self) -> &'static str {
        match self {
            Tag::Realizable => "realizable",
            Tag::PrefixOnly => "prefix-only",
            Tag::Outside => "outside",
        }
    }
}

/// Every integer point of the box `[m min, m max]^len` whose coordinates sum
/// to the coalition total, with its tag.
pub fn classify(ladder: &[i64], m: u64) -> displace_core::Result<Vec<(Vec<i64>, Tag)>> {
    let l = ApLadder::from_segment(ladder)?;
    let caps = PrefixCapacities::replicated(&l, m)?;
    let m = i64::try_from(m).map_err(|_| Error::TooLarge("coalition size".into()))?;
    let lo = m.checked_mul(l.min_score()).ok_or(Error::Overflow { context: "lattice box" })?;
    let hi = m.checked_mul(l.max_score()).ok_or(Error::Overflow { context: "lattice box" })?;
    let free = l.len() - 1;
    let side = (hi - lo) as u128 + 1;
    let size = (0..free).try_fold(1u128, |acc, _| acc.checked_mul(side).filter(|&v| v <= POINT_CAP));
    if size.is_none() {
        return Err(Error::TooLarge(format!("{side}^{free} lattice points exceed {POINT_CAP}")));
    }
    let total = caps.total();
    let mut out = Vec::new();
    let mut point = vec![lo; l.len()];
    loop {
        let partial: i64 = point[..free].iter().sum();
        let last = total - partial;
        if (lo..=hi).contains(&last) {
            point[free] = last;
            let tag = if realizable(&point, &caps)? {
                Tag::Realizable
            } else if block_hlp_member(&point, &caps)? {
                Tag::PrefixOnly
            } else {
                Tag::Outside
            };
            out.push((point.clone(), tag));
        }
        let mut i = free;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if point[i] < hi {
                point[i] += 1;
                break;
            }
            point[i] = lo;
        }
    }
}

pub fn run(args: &LatticeArgs) -> Result<()> {
    let points = classify(&args.ladder, args.m)?;
    let dims = if args.project { args.ladder.len() - 1 } else { args.ladder.len() };
    let mut s = String::new();
    for i in 1..=dims {
        let _ = write!(s, "y{i},");
    }
    s.push_str("tag\n");
    let mut counts = [0usize; 3];
    for (y, tag) in &points {
        for v in &y[..dims] {
            let _ = write!(s, "{v},");
        }
        s.push_str(tag.as_str());
        s.push('\n');
        counts[*tag as usize] += 1;
    }
    emit(None, &s)?;
    eprintln!(
        "realizable: {}, prefix-only: {}, outside: {}",
        counts[0], counts[1], counts[2]
    );
    Ok(())
}
