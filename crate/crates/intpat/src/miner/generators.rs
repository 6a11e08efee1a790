//! Frequent interval pattern generator mining.
//!
//! Generators are the largest rectangles of their equivalence classes, so
//! the search keeps candidates as large as possible: a child keeps every
//! bound of its parent except the moved one, and the moved bound steps
//! from the parent's *closure* bound — past the whole equivalence class,
//! which guarantees a strictly smaller support. Children are explored in
//! reverse lectic order; then, whenever a candidate is not a generator, a
//! generator of its class has necessarily been produced earlier and the
//! extent-keyed store rejects the candidate.
//!
//! Geometrically, a generator of support `k` is a maximal axis-parallel
//! box containing exactly `k` data points — for `k = 0` these would be
//! the maximal empty rectangles of the data. Only the frequent side
//! (`k >= minsup >= 1`) is mined here.

use crate::dataset::NumericalDataset;
use crate::patterns::{Extent, IntervalPattern};
use crate::rank::{self, RankPattern};

use super::store::{GeneratorStore, StoreKind};
use super::{ChangeSide, ChangeToken, MineStats, MinerConfig, MinerError};

/// One mined generator with its extent and the closed pattern of its class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeneratorPattern {
    pub pattern: IntervalPattern,
    pub extent: Extent,
    /// The closed pattern with the same image.
    pub closure: IntervalPattern,
}

impl GeneratorPattern {
    pub fn support(&self) -> usize {
        self.extent.len()
    }
}

struct Search<'a, F> {
    ds: &'a NumericalDataset,
    minsup: usize,
    store: Box<dyn GeneratorStore>,
    stats: MineStats,
    sink: F,
}

impl<'a, F: FnMut(&RankPattern, &[u32], &RankPattern)> Search<'a, F> {
    /// Expands candidate `b` whose image is `extent` and whose closure is
    /// `closure`, trying tokens at or after `from` in descending order.
    fn expand(
        &mut self,
        b: &RankPattern,
        extent: &[u32],
        closure: &RankPattern,
        from: usize,
        depth: usize,
    ) {
        self.stats.peak_depth = self.stats.peak_depth.max(depth);
        for index in (from..b.len() * 2).rev() {
            let token = ChangeToken::from_index(index);
            let (cl_lo, cl_hi) = closure[token.attr];
            if cl_lo == cl_hi {
                // Every object of the extent shares this value; stepping
                // past it would empty the image.
                continue;
            }
            let mut candidate = b.clone();
            candidate[token.attr] = match token.side {
                ChangeSide::Right => (b[token.attr].0, cl_hi - 1),
                ChangeSide::Left => (cl_lo + 1, b[token.attr].1),
            };
            let child_extent = rank::filter_extent(
                self.ds,
                extent,
                token.attr,
                candidate[token.attr].0,
                candidate[token.attr].1,
            );
            if child_extent.len() < self.minsup {
                self.stats.pruned_infrequent += 1;
                continue;
            }
            debug_assert!(child_extent.len() < extent.len());

            if self.store.check_and_insert(&child_extent, &candidate) {
                let child_closure = rank::extent_hull(self.ds, &child_extent);
                self.stats.emitted += 1;
                (self.sink)(&candidate, &child_extent, &child_closure);
                self.expand(&candidate, &child_extent, &child_closure, index, depth + 1);
            } else {
                self.stats.rejected += 1;
            }
        }
    }
}

/// Streams every frequent generator to `sink` in traversal order.
pub fn mine_generators_with(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
    store: StoreKind,
    mut sink: impl FnMut(GeneratorPattern),
) -> Result<MineStats, MinerError> {
    cfg.validate(ds)?;
    let root_extent: Vec<u32> = (0..ds.object_count() as u32).collect();
    let root: RankPattern = ds
        .ranges()
        .iter()
        .map(|w| (0, (w.len() - 1) as u32))
        .collect();
    let root_closure = rank::extent_hull(ds, &root_extent);

    let mut search = Search {
        ds,
        minsup: cfg.minsup,
        store: store.create(),
        stats: MineStats::default(),
        sink: |pattern: &RankPattern, extent: &[u32], closure: &RankPattern| {
            sink(GeneratorPattern {
                pattern: rank::to_pattern(ds, pattern),
                extent: Extent::from_indices(extent.to_vec()),
                closure: rank::to_pattern(ds, closure),
            })
        },
    };

    // The full-range pattern is the minimum of the order: nothing sits
    // below it, so it is a generator of the class of all objects.
    let accepted = search.store.check_and_insert(&root_extent, &root);
    debug_assert!(accepted);
    search.stats.emitted += 1;
    (search.sink)(&root, &root_extent, &root_closure);
    search.expand(&root, &root_extent, &root_closure, 0, 1);
    Ok(search.stats)
}

/// Collects every frequent generator with its extent and class closure.
pub fn mine_generators(
    ds: &NumericalDataset,
    cfg: &MinerConfig,
    store: StoreKind,
) -> Result<(Vec<GeneratorPattern>, MineStats), MinerError> {
    let mut out = Vec::new();
    let stats = mine_generators_with(ds, cfg, store, |g| out.push(g))?;
    Ok((out, stats))
}
