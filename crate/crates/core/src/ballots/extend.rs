use crate::error::{Error, Result};
use crate::scoring::PrefixCapacities;

/// Raises `q` to a point of total `T` that still fits every sorted prefix
/// bound, staying on the residue class of `caps`.
///
/// Works in lattice units `z = (q - alpha) / g`: the smallest coordinates are
/// lifted to a common water level `h` (the largest one the total allows),
/// and the leftover units go one each to coordinates sitting at `h`.
pub fn extend_to_base(q: &[i64], caps: &PrefixCapacities) -> Result<Vec<i64>> {
    let len = caps.len();
    if q.len() != len {
        return Err(Error::LengthMismatch {
            expected: len,
            found: q.len(),
        });
    }
    if len == 0 {
        return Ok(Vec::new());
    }
    let g = caps.step();
    let alpha = caps.residue();
    if let Some(v) = q.iter().find(|v| v.rem_euclid(g) != alpha) {
        return Err(Error::InfeasibleInput(format!(
            "entry {v} is not congruent to {alpha} mod {g}"
        )));
    }
    let mut sorted = q.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    let mut acc = 0i128;
    for (t, v) in sorted.iter().enumerate() {
        acc += *v as i128;
        if acc > caps.capacity(t + 1) as i128 {
            return Err(Error::InfeasibleInput(format!(
                "top {} entries sum to {acc}, above the capacity {}",
                t + 1,
                caps.capacity(t + 1)
            )));
        }
    }

    let units = |v: i64| (v as i128 - alpha as i128) / g as i128;
    let z: Vec<i128> = q.iter().map(|&v| units(v)).collect();
    let target = (caps.total() as i128 - len as i128 * alpha as i128) / g as i128;
    let filled = |h: i128| z.iter().map(|&v| v.max(h)).sum::<i128>();

    let lowest = *z.iter().min().expect("nonempty");
    let slack = target - z.iter().sum::<i128>();
    let (mut lo, mut hi) = (lowest, lowest + slack);
    while lo < hi {
        let mid = lo + (hi - lo + 1) / 2;
        if filled(mid) <= target {
            lo = mid;
        } else {
            hi = mid - 1;
        }
    }
    let level = lo;
    let mut extra = target - filled(level);
    let mut out = Vec::with_capacity(len);
    for &v in &z {
        let mut lifted = v.max(level);
        if lifted == level && extra > 0 {
            lifted += 1;
            extra -= 1;
        }
        out.push((alpha as i128 + g as i128 * lifted) as i64);
    }
    debug_assert_eq!(extra, 0);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::{lattice_adjust_up, realizable};
    use crate::scoring::{aggregate_capacities, ApLadder};
    use proptest::prelude::*;

    fn caps(segs: &[&[i64]]) -> PrefixCapacities {
        let ladders: Vec<ApLadder> = segs.iter().map(|s| ApLadder::from_segment(s).unwrap()).collect();
        aggregate_capacities(&ladders).unwrap()
    }

    #[test]
    fn running_example() {
        let c = caps(&[&[9, 5, 1], &[10, 6, 2]]);
        let q = lattice_adjust_up(&[17, 8, 3], 4, 3).unwrap();
        let y = extend_to_base(&q, &c).unwrap();
        assert_eq!(y.iter().sum::<i64>(), 33);
        assert!(y.iter().zip(&q).all(|(a, b)| a >= b));
        assert!(realizable(&y, &c).unwrap());

        let base = vec![19, 11, 3];
        assert_eq!(extend_to_base(&base, &c).unwrap(), base);
    }

    #[test]
    fn zero_demand_on_unit_step() {
        let c = caps(&[&[5, 3, 2, 0]]);
        let y = extend_to_base(&[0, 0, 0, 0], &c).unwrap();
        assert_eq!(y.iter().sum::<i64>(), 10);
        assert!(realizable(&y, &c).unwrap());
    }

    #[test]
    fn rejects_bad_input() {
        let c = caps(&[&[9, 5, 1], &[10, 6, 2]]);
        assert!(matches!(extend_to_base(&[18, 11, 3], &c), Err(Error::InfeasibleInput(_))));
        assert!(matches!(extend_to_base(&[23, 11, 3], &c), Err(Error::InfeasibleInput(_))));
        assert!(matches!(extend_to_base(&[3, 3], &c), Err(Error::LengthMismatch { .. })));
    }

    proptest! {
        #[test]
        fn output_is_a_dominating_base(
            levels in prop::collection::vec(0i64..5, 1..7),
            g in 1i64..4,
            base in 0i64..3,
            m in 1u64..4,
            demand in prop::collection::vec(0i64..20, 7),
        ) {
            let mut levels = levels;
            levels.sort_unstable_by(|a, b| b.cmp(a));
            let seg: Vec<i64> = levels.iter().map(|l| base + g * l).collect();
            let ladder = ApLadder::from_segment(&seg).unwrap();
            let c = PrefixCapacities::replicated(&ladder, m).unwrap();
            let q = lattice_adjust_up(&demand[..seg.len()], c.step(), c.residue()).unwrap();
            match extend_to_base(&q, &c) {
                Ok(y) => {
                    prop_assert!(y.iter().zip(&q).all(|(a, b)| a >= b));
                    prop_assert!(realizable(&y, &c).unwrap());
                }
                Err(Error::InfeasibleInput(_)) => {
                    prop_assert!(!crate::oracle::ap_demand_feasible(&q, &c).unwrap());
                }
                Err(e) => prop_assert!(false, "unexpected {e}"),
            }
        }
    }
}
