//! Naive itemset mining on the scaled context, and the redundancy
//! diagnostics that compare IS-itemsets with interval patterns.
//!
//! These are correctness baselines, not competitors: closed itemsets come
//! from the closure system of extents, generators and the exhaustive
//! itemset sweep from a pruned powerset walk. Both are guarded by an item
//! limit (and an object limit, since images are kept as 64-bit masks);
//! the limits are parameters, so exhaustive runs can raise them knowingly.

use std::collections::HashSet;

use num_bigint::BigUint;

use crate::dataset::NumericalDataset;
use crate::patterns::IntervalPattern;

use super::{BinaryContext, Direction, ScalingError};

/// Default item limit for the powerset-bounded operations.
pub const DEFAULT_ITEM_GUARD: usize = 24;

/// An itemset (sorted item indices) together with its extent (sorted
/// object indices).
pub type ItemsetWithExtent = (Vec<usize>, Vec<u32>);

const MAX_MASK_OBJECTS: usize = 64;

fn check_guards(ctx: &BinaryContext, max_items: usize) -> Result<(), ScalingError> {
    if ctx.item_count() > max_items {
        return Err(ScalingError::TooManyItems {
            items: ctx.item_count(),
            max: max_items,
        });
    }
    if ctx.object_count() > MAX_MASK_OBJECTS {
        return Err(ScalingError::TooManyObjects {
            objects: ctx.object_count(),
            max: MAX_MASK_OBJECTS,
        });
    }
    Ok(())
}

/// Per-item object masks; bit `g` is set when object `g` carries the item.
fn item_masks(ctx: &BinaryContext) -> Vec<u64> {
    (0..ctx.item_count())
        .map(|n| {
            (0..ctx.object_count())
                .filter(|&g| ctx.incident(g, n))
                .fold(0u64, |mask, g| mask | (1 << g))
        })
        .collect()
}

fn full_mask(ctx: &BinaryContext) -> u64 {
    if ctx.object_count() == MAX_MASK_OBJECTS {
        u64::MAX
    } else {
        (1u64 << ctx.object_count()) - 1
    }
}

fn mask_objects(mask: u64) -> Vec<u32> {
    (0..64).filter(|&g| mask & (1 << g) != 0).collect()
}

/// Visits every itemset with a non-empty image, the empty itemset
/// included, in lexicographic order of item indices. Supersets of an
/// empty-image itemset stay empty, so those subtrees are skipped.
fn for_each_nonempty_itemset(masks: &[u64], full: u64, visit: &mut impl FnMut(&[usize], u64)) {
    fn recurse(
        masks: &[u64],
        next: usize,
        items: &mut Vec<usize>,
        image: u64,
        visit: &mut impl FnMut(&[usize], u64),
    ) {
        visit(items, image);
        for n in next..masks.len() {
            let child = image & masks[n];
            if child != 0 {
                items.push(n);
                recurse(masks, n + 1, items, child, visit);
                items.pop();
            }
        }
    }
    recurse(masks, 0, &mut Vec::new(), full, visit);
}

/// All closed itemsets (`B = B''`) with support at least `minsup`, each
/// paired with its extent. Closed itemsets are exactly the derivations of
/// concept extents, and concept extents are the intersections of item
/// extents, so the closure system is collected by intersection saturation.
pub fn mine_closed_itemsets(
    ctx: &BinaryContext,
    minsup: usize,
    max_items: usize,
) -> Result<Vec<ItemsetWithExtent>, ScalingError> {
    check_guards(ctx, max_items)?;
    let masks = item_masks(ctx);
    let full = full_mask(ctx);

    let mut extents: HashSet<u64> = HashSet::from([full]);
    let mut worklist = vec![full];
    while let Some(extent) = worklist.pop() {
        for &mask in &masks {
            let child = extent & mask;
            if extents.insert(child) {
                worklist.push(child);
            }
        }
    }

    let mut sorted: Vec<u64> = extents
        .into_iter()
        .filter(|m| m.count_ones() as usize >= minsup)
        .collect();
    sorted.sort_by_key(|m| (std::cmp::Reverse(m.count_ones()), mask_objects(*m)));

    Ok(sorted
        .into_iter()
        .map(|extent| {
            let intent: Vec<usize> = masks
                .iter()
                .enumerate()
                .filter(|&(_, &mask)| extent & mask == extent)
                .map(|(n, _)| n)
                .collect();
            (intent, mask_objects(extent))
        })
        .collect())
}

/// All generator itemsets with support at least `minsup`: itemsets whose
/// image changes when any single item is removed.
pub fn mine_is_generators(
    ctx: &BinaryContext,
    minsup: usize,
    max_items: usize,
) -> Result<Vec<ItemsetWithExtent>, ScalingError> {
    check_guards(ctx, max_items)?;
    let masks = item_masks(ctx);
    let full = full_mask(ctx);

    let mut out = Vec::new();
    for_each_nonempty_itemset(&masks, full, &mut |items, image| {
        if (image.count_ones() as usize) < minsup {
            return;
        }
        let minimal = (0..items.len()).all(|skip| {
            let without = items
                .iter()
                .enumerate()
                .filter(|&(k, _)| k != skip)
                .fold(full, |m, (_, &n)| m & masks[n]);
            without != image
        });
        if minimal {
            out.push((items.to_vec(), mask_objects(image)));
        }
    });
    Ok(out)
}

/// Itemset sweep statistics: how many IS-itemsets describe how few
/// interval patterns.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RedundancyReport {
    /// Non-empty itemsets with a non-empty image.
    pub itemsets_nonempty_image: u64,
    /// Alternative reading that counts the empty itemset too.
    pub itemsets_including_empty: u64,
    /// All itemsets over the context: `2^items`.
    pub total_itemsets: BigUint,
    /// Distinct interval patterns the counted itemsets map to.
    pub distinct_patterns: u64,
    /// Itemsets in excess of their patterns:
    /// `itemsets_nonempty_image - distinct_patterns`.
    pub redundancy_gap: u64,
    /// `support_histogram[s]` = itemsets (empty included) whose image has
    /// exactly `s` objects, for `s >= 1`; index 0 is unused.
    pub support_histogram: Vec<u64>,
}

/// Sweeps every IS-itemset with a non-empty image and quantifies how
/// redundantly they map onto interval patterns.
pub fn redundancy_report(
    ctx: &BinaryContext,
    ds: &NumericalDataset,
    max_items: usize,
) -> Result<RedundancyReport, ScalingError> {
    check_guards(ctx, max_items)?;
    let masks = item_masks(ctx);
    let full = full_mask(ctx);

    // Items as (attribute, side, threshold rank) so the pattern of an
    // itemset can be folded without value lookups.
    let item_ranks: Vec<(usize, Direction, u32)> = ctx
        .items()
        .iter()
        .map(|item| {
            let rank = ds
                .range(item.attr)
                .binary_search(&item.threshold)
                .expect("threshold from the range") as u32;
            (item.attr, item.dir, rank)
        })
        .collect();
    let full_bounds: Vec<(u32, u32)> = ds
        .ranges()
        .iter()
        .map(|w| (0, (w.len() - 1) as u32))
        .collect();

    let mut with_empty = 0u64;
    let mut histogram = vec![0u64; ctx.object_count() + 1];
    let mut patterns: HashSet<Vec<(u32, u32)>> = HashSet::new();
    for_each_nonempty_itemset(&masks, full, &mut |items, image| {
        with_empty += 1;
        histogram[image.count_ones() as usize] += 1;
        let mut bounds = full_bounds.clone();
        for &n in items {
            let (attr, dir, rank) = item_ranks[n];
            match dir {
                Direction::Leq => bounds[attr].1 = bounds[attr].1.min(rank),
                Direction::Geq => bounds[attr].0 = bounds[attr].0.max(rank),
            }
        }
        patterns.insert(bounds);
    });

    let itemsets_nonempty_image = with_empty - 1;
    let distinct_patterns = patterns.len() as u64;
    Ok(RedundancyReport {
        itemsets_nonempty_image,
        itemsets_including_empty: with_empty,
        total_itemsets: BigUint::from(1u32) << ctx.item_count(),
        distinct_patterns,
        redundancy_gap: itemsets_nonempty_image - distinct_patterns,
        support_histogram: histogram,
    })
}

/// Two incomparable generator itemsets of the same class whose interval
/// patterns are comparable: `pattern_d ⊑ pattern_c`, so `pattern_c` is not
/// an interval pattern generator even though `itemset_c` is an IS-itemset
/// generator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GlobalRedundancyWitness {
    pub itemset_c: Vec<usize>,
    pub itemset_d: Vec<usize>,
    pub pattern_c: IntervalPattern,
    pub pattern_d: IntervalPattern,
    pub extent: Vec<u32>,
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    let mut b_iter = b.iter();
    a.iter().all(|x| b_iter.any(|y| y == x))
}

/// Finds every pair of incomparable IS-generators with equal image whose
/// patterns are ⊑-comparable.
pub fn global_redundancy_witnesses(
    ctx: &BinaryContext,
    ds: &NumericalDataset,
    minsup: usize,
    max_items: usize,
) -> Result<Vec<GlobalRedundancyWitness>, ScalingError> {
    let generators = mine_is_generators(ctx, minsup, max_items)?;

    let mut by_extent: Vec<(Vec<u32>, Vec<usize>)> = Vec::new();
    for (idx, (_, extent)) in generators.iter().enumerate() {
        match by_extent.iter_mut().find(|(e, _)| e == extent) {
            Some((_, group)) => group.push(idx),
            None => by_extent.push((extent.clone(), vec![idx])),
        }
    }

    let mut witnesses = Vec::new();
    for (extent, group) in by_extent {
        for (k, &i) in group.iter().enumerate() {
            for &j in &group[k + 1..] {
                let (items_i, _) = &generators[i];
                let (items_j, _) = &generators[j];
                if is_subset(items_i, items_j) || is_subset(items_j, items_i) {
                    continue;
                }
                let p_i = ctx.itemset_to_pattern(items_i, ds).expect("satisfiable");
                let p_j = ctx.itemset_to_pattern(items_j, ds).expect("satisfiable");
                // Arrange so that pattern_d ⊑ pattern_c.
                let witness = if p_j.leq(&p_i).expect("same dimensions") {
                    GlobalRedundancyWitness {
                        itemset_c: items_i.clone(),
                        itemset_d: items_j.clone(),
                        pattern_c: p_i,
                        pattern_d: p_j,
                        extent: extent.clone(),
                    }
                } else if p_i.leq(&p_j).expect("same dimensions") {
                    GlobalRedundancyWitness {
                        itemset_c: items_j.clone(),
                        itemset_d: items_i.clone(),
                        pattern_c: p_j,
                        pattern_d: p_i,
                        extent: extent.clone(),
                    }
                } else {
                    continue;
                };
                witnesses.push(witness);
            }
        }
    }
    Ok(witnesses)
}
