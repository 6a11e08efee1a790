//! Rank-space representation shared by the miners and the oracle.
//!
//! A bound is an index into an attribute's sorted range, so stepping to the
//! adjacent range value is `±1` and comparisons are integer comparisons.

use crate::dataset::NumericalDataset;
use crate::patterns::{Interval, IntervalPattern};

/// One interval per attribute, as `(lo, hi)` indices into the ranges.
pub(crate) type RankPattern = Vec<(u32, u32)>;

pub(crate) fn to_pattern(ds: &NumericalDataset, ranks: &[(u32, u32)]) -> IntervalPattern {
    IntervalPattern::new(
        ranks
            .iter()
            .enumerate()
            .map(|(i, &(lo, hi))| {
                let range = ds.range(i);
                Interval::new(range[lo as usize], range[hi as usize]).expect("ordered ranks")
            })
            .collect(),
    )
}

/// Per-dimension min/max ranks over a non-empty extent: the rank form of
/// the extent's pattern hull.
pub(crate) fn extent_hull(ds: &NumericalDataset, extent: &[u32]) -> RankPattern {
    debug_assert!(!extent.is_empty());
    let mut hull: RankPattern = (0..ds.attribute_count())
        .map(|i| {
            let r = ds.rank(extent[0] as usize, i);
            (r, r)
        })
        .collect();
    for &g in &extent[1..] {
        for (i, bounds) in hull.iter_mut().enumerate() {
            let r = ds.rank(g as usize, i);
            bounds.0 = bounds.0.min(r);
            bounds.1 = bounds.1.max(r);
        }
    }
    hull
}

/// Members of `extent` whose rank on `attr` lies in `[lo, hi]`.
pub(crate) fn filter_extent(
    ds: &NumericalDataset,
    extent: &[u32],
    attr: usize,
    lo: u32,
    hi: u32,
) -> Vec<u32> {
    extent
        .iter()
        .copied()
        .filter(|&g| {
            let r = ds.rank(g as usize, attr);
            lo <= r && r <= hi
        })
        .collect()
}

/// `e ⊑ c` in rank space: every interval of `c` inside the one of `e`.
pub(crate) fn rank_leq(e: &[(u32, u32)], c: &[(u32, u32)]) -> bool {
    e.iter()
        .zip(c)
        .all(|(&(elo, ehi), &(clo, chi))| elo <= clo && chi <= ehi)
}
