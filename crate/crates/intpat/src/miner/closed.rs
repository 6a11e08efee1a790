//! Frequent closed interval pattern mining.
//!
//! The search starts from the hull of all objects — the unique minimal
//! closed pattern — and recursively applies minimal changes in lectic
//! order. After every change the candidate is replaced by its closure,
//! which skips the rest of its equivalence class. A closure is kept only
//! when it is canonically generated: it must not differ from the candidate
//! on any attribute before the changed one, nor on the upper bound of the
//! changed attribute after a left change (a right change there is no
//! longer reachable, so that closure belongs to an earlier branch).

use std::collections::HashSet;

use rayon::prelude::*;

use crate::dataset::NumericalDataset;
use crate::patterns::{Extent, IntervalPattern};
use crate::rank::{self, RankPattern};

use super::{ChangeSide, ChangeToken, MineStats, MinerConfig, MinerError};

/// One mined closed pattern with its extent.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedPattern {
    pub pattern: IntervalPattern,
    pub extent: Extent,
}

impl ClosedPattern {
    pub fn support(&self) -> usize {
        self.extent.len()
    }
}

struct Search<'a, F> {
    ds: &'a NumericalDataset,
    minsup: usize,
    stats: MineStats,
    sink: F,
    /// When false, the canonicity test is replaced by an exact
    /// seen-before check (used to validate the test itself).
    canonicity: bool,
    seen: HashSet<(RankPattern, usize)>,
}

impl<'a, F: FnMut(&RankPattern, &[u32])> Search<'a, F> {
    fn emit(&mut self, pattern: &RankPattern, extent: &[u32]) {
        self.stats.emitted += 1;
        (self.sink)(pattern, extent);
    }

    /// Expands the closed node `d` by every token at or after `from`.
    fn expand(&mut self, d: &RankPattern, extent: &[u32], from: usize, depth: usize) {
        self.stats.peak_depth = self.stats.peak_depth.max(depth);
        for index in from..d.len() * 2 {
            let token = ChangeToken::from_index(index);
            let (lo, hi) = d[token.attr];
            if lo == hi {
                continue;
            }
            let stepped = match token.side {
                ChangeSide::Right => (lo, hi - 1),
                ChangeSide::Left => (lo + 1, hi),
            };
            let child_extent =
                rank::filter_extent(self.ds, extent, token.attr, stepped.0, stepped.1);
            if child_extent.len() < self.minsup {
                self.stats.pruned_infrequent += 1;
                continue;
            }
            // A change away from a closed pattern always loses an object.
            debug_assert!(child_extent.len() < extent.len());

            let closure = rank::extent_hull(self.ds, &child_extent);
            let mut candidate = d.clone();
            candidate[token.attr] = stepped;
            if self.is_new(&candidate, &closure, token, index) {
                self.emit(&closure, &child_extent);
                self.expand(&closure, &child_extent, index, depth + 1);
            } else {
                self.stats.rejected += 1;
            }
        }
    }

    fn is_new(
        &mut self,
        candidate: &RankPattern,
        closure: &RankPattern,
        token: ChangeToken,
        index: usize,
    ) -> bool {
        if self.canonicity {
            let earlier_attr_touched = closure[..token.attr] != candidate[..token.attr];
            let right_bound_after_left =
                token.side == ChangeSide::Left && closure[token.attr].1 != candidate[token.attr].1;
            !(earlier_attr_touched || right_bound_after_left)
        } else {
            self.seen.insert((closure.clone(), index))
        }
    }
}

fn run<F: FnMut(&RankPattern, &[u32])>(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
    canonicity: bool,
    sink: F,
) -> Result<MineStats, MinerError> {
    cfg.validate(ds)?;
    let root_extent: Vec<u32> = (0..ds.object_count() as u32).collect();
    let root = rank::extent_hull(ds, &root_extent);
    let mut search = Search {
        ds,
        minsup: cfg.minsup,
        stats: MineStats::default(),
        sink,
        canonicity,
        seen: HashSet::new(),
    };
    search.emit(&root, &root_extent);
    search.expand(&root, &root_extent, 0, 1);
    Ok(search.stats)
}

/// Streams every frequent closed pattern to `sink` in depth-first order.
pub fn mine_closed_with(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
    mut sink: impl FnMut(ClosedPattern),
) -> Result<MineStats, MinerError> {
    run(ds, cfg, true, |pattern, extent| {
        sink(ClosedPattern {
            pattern: rank::to_pattern(ds, pattern),
            extent: Extent::from_indices(extent.to_vec()),
        })
    })
}

/// Collects every frequent closed pattern with its extent.
pub fn mine_closed(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
) -> Result<(Vec<ClosedPattern>, MineStats), MinerError> {
    let mut out = Vec::new();
    let stats = mine_closed_with(ds, cfg, |p| out.push(p))?;
    Ok((out, stats))
}

/// Cross-check variant: no canonicity test, duplicates removed by an
/// explicit seen-set over (closure, arrival token) nodes. Produces the
/// same pattern set as [`mine_closed`]; exists to validate that the
/// canonicity test is an optimization, not a semantics change.
pub fn mine_closed_without_canonicity(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
) -> Result<(Vec<ClosedPattern>, MineStats), MinerError> {
    let mut by_pattern: HashSet<RankPattern> = HashSet::new();
    let mut out = Vec::new();
    let stats = run(ds, cfg, false, |pattern, extent| {
        if by_pattern.insert(pattern.clone()) {
            out.push(ClosedPattern {
                pattern: rank::to_pattern(ds, pattern),
                extent: Extent::from_indices(extent.to_vec()),
            });
        }
    })?;
    Ok((out, stats))
}

/// Mines the top-level subtrees concurrently and merges the results in
/// canonical order; the output equals [`mine_closed`] exactly.
pub fn mine_closed_parallel(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
) -> Result<(Vec<ClosedPattern>, MineStats), MinerError> {
    cfg.validate(ds)?;
    let root_extent: Vec<u32> = (0..ds.object_count() as u32).collect();
    let root = rank::extent_hull(ds, &root_extent);

    let subtrees: Vec<(Vec<ClosedPattern>, MineStats)> = (0..root.len() * 2)
        .into_par_iter()
        .map(|index| {
            let mut out = Vec::new();
            let mut search = Search {
                ds,
                minsup: cfg.minsup,
                stats: MineStats::default(),
                sink: |pattern: &RankPattern, extent: &[u32]| {
                    out.push(ClosedPattern {
                        pattern: rank::to_pattern(ds, pattern),
                        extent: Extent::from_indices(extent.to_vec()),
                    });
                },
                canonicity: true,
                seen: HashSet::new(),
            };
            // Replay exactly one top-level token, then expand sequentially.
            let token = ChangeToken::from_index(index);
            let (lo, hi) = root[token.attr];
            if lo != hi {
                let stepped = match token.side {
                    ChangeSide::Right => (lo, hi - 1),
                    ChangeSide::Left => (lo + 1, hi),
                };
                let child_extent =
                    rank::filter_extent(ds, &root_extent, token.attr, stepped.0, stepped.1);
                if child_extent.len() < cfg.minsup {
                    search.stats.pruned_infrequent += 1;
                } else {
                    let closure = rank::extent_hull(ds, &child_extent);
                    let mut candidate = root.clone();
                    candidate[token.attr] = stepped;
                    if search.is_new(&candidate, &closure, token, index) {
                        search.emit(&closure, &child_extent);
                        search.expand(&closure, &child_extent, index, 2);
                    } else {
                        search.stats.rejected += 1;
                    }
                }
            }
            let stats = search.stats;
            (out, stats)
        })
        .collect();

    let mut out = vec![ClosedPattern {
        pattern: rank::to_pattern(ds, &root),
        extent: Extent::from_indices(root_extent),
    }];
    let mut stats = MineStats {
        emitted: 1,
        pruned_infrequent: 0,
        rejected: 0,
        peak_depth: 1,
    };
    for (patterns, sub) in subtrees {
        out.extend(patterns);
        stats.emitted += sub.emitted;
        stats.pruned_infrequent += sub.pruned_infrequent;
        stats.rejected += sub.rejected;
        stats.peak_depth = stats.peak_depth.max(sub.peak_depth);
    }
    Ok((out, stats))
}

/// Walks the full lectic enumeration tree — no closure, no pruning — and
/// counts the visited patterns. Visits every pattern of the search space
/// exactly once; exists to validate the tree structure.
pub fn count_lectic_enumeration(ds: &NumericalDataset) -> u64 {
    fn descend(pattern: &mut RankPattern, from: usize, count: &mut u64) {
        for index in from..pattern.len() * 2 {
            let token = ChangeToken::from_index(index);
            let (lo, hi) = pattern[token.attr];
            if lo == hi {
                continue;
            }
            let stepped = match token.side {
                ChangeSide::Right => (lo, hi - 1),
                ChangeSide::Left => (lo + 1, hi),
            };
            let saved = pattern[token.attr];
            pattern[token.attr] = stepped;
            *count += 1;
            descend(pattern, index, count);
            pattern[token.attr] = saved;
        }
    }

    let mut full: RankPattern = ds
        .ranges()
        .iter()
        .map(|w| (0, (w.len() - 1) as u32))
        .collect();
    let mut count = 1;
    descend(&mut full, 0, &mut count);
    count
}
