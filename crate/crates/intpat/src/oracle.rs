//! Brute-force ground truth over the whole pattern search space.
//!
//! Every pattern with bounds in the attribute ranges is enumerated, grouped
//! by image, and each equivalence class is labelled with its unique closed
//! pattern and its minimal members. This is a test fixture: it evaluates
//! the definitions directly and stays independent of the miners' search
//! strategy, at the price of exhaustive enumeration.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use crate::dataset::NumericalDataset;
use crate::patterns::{search_space_size, Extent, IntervalPattern};
use crate::rank::{self, RankPattern};

/// Default bound on the enumerated search space.
pub const DEFAULT_CAP: u64 = 10_000_000;

#[derive(Debug, thiserror::Error)]
pub enum OracleError {
    #[error("search space holds {size} patterns, above the cap of {cap}")]
    CapExceeded { size: BigUint, cap: u64 },
    #[error("minimal support must be at least 1")]
    ZeroMinsup,
}

/// All patterns sharing one image.
#[derive(Debug, Clone)]
pub struct EquivalenceClass {
    pub extent: Extent,
    /// Every pattern whose image equals `extent`.
    pub members: Vec<IntervalPattern>,
    /// The unique ⊑-maximal member (the smallest rectangle).
    pub closed: IntervalPattern,
    /// The ⊑-minimal members (the largest rectangles).
    pub generators: Vec<IntervalPattern>,
}

/// Outcome of a full search-space sweep.
#[derive(Debug)]
pub struct ClassifiedSpace {
    pub classes: Vec<EquivalenceClass>,
    /// Patterns whose image is empty; they belong to no class.
    pub empty_image_patterns: u64,
}

fn check_cap(ds: &NumericalDataset, cap: u64) -> Result<u64, OracleError> {
    let size = search_space_size(ds);
    match size.to_u64() {
        Some(n) if n <= cap => Ok(n),
        _ => Err(OracleError::CapExceeded { size, cap }),
    }
}

/// Calls `visit` with every rank pattern exactly once. Per dimension the
/// intervals run in (lo, hi) lexicographic order, last dimension fastest.
fn for_each_rank_pattern(ds: &NumericalDataset, visit: &mut impl FnMut(&RankPattern)) {
    fn recurse(
        ds: &NumericalDataset,
        attr: usize,
        current: &mut RankPattern,
        visit: &mut impl FnMut(&RankPattern),
    ) {
        if attr == ds.attribute_count() {
            visit(current);
            return;
        }
        let n = ds.range(attr).len() as u32;
        for lo in 0..n {
            for hi in lo..n {
                current.push((lo, hi));
                recurse(ds, attr + 1, current, visit);
                current.pop();
            }
        }
    }
    recurse(ds, 0, &mut Vec::with_capacity(ds.attribute_count()), visit);
}

/// Image of a rank pattern, straight from the definition.
fn rank_image(ds: &NumericalDataset, ranks: &RankPattern) -> Vec<u32> {
    (0..ds.object_count() as u32)
        .filter(|&g| {
            ranks.iter().enumerate().all(|(i, &(lo, hi))| {
                let r = ds.rank(g as usize, i);
                lo <= r && r <= hi
            })
        })
        .collect()
}

/// Iterates over the entire search space of the dataset.
pub fn enumerate_all(
    ds: &NumericalDataset,
    cap: u64,
) -> Result<impl Iterator<Item = IntervalPattern> + '_, OracleError> {
    check_cap(ds, cap)?;
    let mut all: Vec<RankPattern> = Vec::new();
    for_each_rank_pattern(ds, &mut |ranks| all.push(ranks.clone()));
    Ok(all
        .into_iter()
        .map(move |ranks| rank::to_pattern(ds, &ranks)))
}

/// Sweeps the search space and classifies every pattern by its image,
/// keeping classes with support at least `minsup`.
pub fn classify(
    ds: &NumericalDataset,
    minsup: usize,
    cap: u64,
) -> Result<ClassifiedSpace, OracleError> {
    if minsup == 0 {
        return Err(OracleError::ZeroMinsup);
    }
    check_cap(ds, cap)?;

    // Group patterns by image; remember each pattern's class so the
    // one-step generator test below is a plain lookup.
    let mut class_of_extent: HashMap<Vec<u32>, u32> = HashMap::new();
    let mut members_by_class: Vec<Vec<RankPattern>> = Vec::new();
    let mut extents: Vec<Vec<u32>> = Vec::new();
    let mut class_of_pattern: HashMap<RankPattern, u32> = HashMap::new();
    let mut empty_image_patterns = 0u64;

    for_each_rank_pattern(ds, &mut |ranks| {
        let image = rank_image(ds, ranks);
        if image.is_empty() {
            empty_image_patterns += 1;
            return;
        }
        let id = *class_of_extent.entry(image.clone()).or_insert_with(|| {
            members_by_class.push(Vec::new());
            extents.push(image);
            (members_by_class.len() - 1) as u32
        });
        members_by_class[id as usize].push(ranks.clone());
        class_of_pattern.insert(ranks.clone(), id);
    });

    let mut classes = Vec::new();
    for (id, members) in members_by_class.iter().enumerate() {
        let extent = &extents[id];
        if extent.len() < minsup {
            continue;
        }

        // The closed pattern is the member subsuming all others.
        let mut closed = &members[0];
        for m in members {
            if rank::rank_leq(closed, m) {
                closed = m;
            }
        }
        assert!(
            members.iter().all(|m| rank::rank_leq(m, closed)),
            "class has no unique maximal member"
        );

        // A member is a generator when no one-step widening stays in the
        // class (the first-step argument makes this the minimality test).
        let generators: Vec<&RankPattern> = members
            .iter()
            .filter(|m| {
                !(0..m.len()).any(|i| {
                    let (lo, hi) = m[i];
                    let mut wider = Vec::new();
                    if lo > 0 {
                        wider.push((lo - 1, hi));
                    }
                    if (hi as usize) + 1 < ds.range(i).len() {
                        wider.push((lo, hi + 1));
                    }
                    wider.into_iter().any(|bounds| {
                        let mut e = (*m).clone();
                        e[i] = bounds;
                        class_of_pattern.get(&e) == Some(&(id as u32))
                    })
                })
            })
            .collect();
        assert!(!generators.is_empty(), "class without generators");

        let mut member_patterns: Vec<IntervalPattern> =
            members.iter().map(|m| rank::to_pattern(ds, m)).collect();
        member_patterns.sort_by_key(|p| p.to_string());
        let mut generator_patterns: Vec<IntervalPattern> =
            generators.iter().map(|m| rank::to_pattern(ds, m)).collect();
        generator_patterns.sort_by_key(|p| p.to_string());

        classes.push(EquivalenceClass {
            extent: Extent::from_indices(extent.clone()),
            members: member_patterns,
            closed: rank::to_pattern(ds, closed),
            generators: generator_patterns,
        });
    }
    classes.sort_by(|a, b| a.extent.indices().cmp(b.extent.indices()));

    Ok(ClassifiedSpace {
        classes,
        empty_image_patterns,
    })
}

/// The closed patterns with support at least `minsup`, with their extents.
pub fn closed_patterns(
    ds: &NumericalDataset,
    minsup: usize,
    cap: u64,
) -> Result<Vec<(IntervalPattern, Extent)>, OracleError> {
    Ok(classify(ds, minsup, cap)?
        .classes
        .into_iter()
        .map(|c| (c.closed, c.extent))
        .collect())
}

/// The generator patterns with support at least `minsup`.
pub fn generator_patterns(
    ds: &NumericalDataset,
    minsup: usize,
    cap: u64,
) -> Result<Vec<(IntervalPattern, Extent)>, OracleError> {
    Ok(classify(ds, minsup, cap)?
        .classes
        .into_iter()
        .flat_map(|c| {
            let extent = c.extent;
            c.generators.into_iter().map(move |g| (g, extent.clone()))
        })
        .collect())
}
