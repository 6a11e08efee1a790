//! Interordinal scaling: the binary encoding of a numerical dataset.
//!
//! Every attribute value `w` contributes two binary items, `m <= w` and
//! `m >= w`; an object carries an item when its value satisfies the
//! constraint. The resulting formal context encodes every interval of
//! values, so itemsets over it (IS-itemsets) describe interval patterns —
//! redundantly, which is exactly what [`itemsets`] quantifies.

pub mod itemsets;

use std::fmt;
use std::fmt::Write as _;

use crate::dataset::NumericalDataset;
use crate::patterns::{Interval, IntervalPattern};
use crate::value::Value;

pub use itemsets::{
    global_redundancy_witnesses, mine_closed_itemsets, mine_is_generators, redundancy_report,
    GlobalRedundancyWitness, RedundancyReport, DEFAULT_ITEM_GUARD,
};

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum ScalingError {
    #[error("context has {items} items, above the limit of {max}; raise the limit explicitly for exhaustive runs")]
    TooManyItems { items: usize, max: usize },
    #[error("context has {objects} objects, above the limit of {max} for itemset sweeps")]
    TooManyObjects { objects: usize, max: usize },
    #[error("contradictory constraints on attribute {attribute}: lower bound {lo} above upper bound {hi}")]
    Contradiction {
        attribute: String,
        lo: Value,
        hi: Value,
    },
}

/// Direction of a scaled constraint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    Leq,
    Geq,
}

/// One binary item of the scaled context: a threshold constraint on an
/// attribute, rendered as `m<=w` or `m>=w`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct IsItem {
    pub attr: usize,
    pub dir: Direction,
    pub threshold: Value,
}

impl IsItem {
    pub fn satisfied_by(&self, value: Value) -> bool {
        match self.dir {
            Direction::Leq => value <= self.threshold,
            Direction::Geq => value >= self.threshold,
        }
    }

    pub fn label(&self, attribute_names: &[String]) -> String {
        let op = match self.dir {
            Direction::Leq => "<=",
            Direction::Geq => ">=",
        };
        format!("{}{op}{}", attribute_names[self.attr], self.threshold)
    }
}

/// The interordinally scaled formal context of a dataset.
///
/// Items are grouped by attribute in canonical order; within an attribute
/// all `<=` items come first with ascending thresholds, then all `>=`
/// items, again ascending.
#[derive(Debug, Clone)]
pub struct BinaryContext {
    object_ids: Vec<String>,
    attribute_names: Vec<String>,
    items: Vec<IsItem>,
    /// Bit-packed incidence, one row of `words_per_row` words per object.
    incidence: Vec<u64>,
    words_per_row: usize,
}

/// Scales a dataset into its interordinal binary context.
pub fn interordinal_scale(ds: &NumericalDataset) -> BinaryContext {
    let mut items = Vec::new();
    for attr in 0..ds.attribute_count() {
        for dir in [Direction::Leq, Direction::Geq] {
            items.extend(ds.range(attr).iter().map(|&threshold| IsItem {
                attr,
                dir,
                threshold,
            }));
        }
    }

    let words_per_row = items.len().div_ceil(64);
    let mut incidence = vec![0u64; ds.object_count() * words_per_row];
    for g in 0..ds.object_count() {
        for (n, item) in items.iter().enumerate() {
            if item.satisfied_by(ds.value(g, item.attr)) {
                incidence[g * words_per_row + n / 64] |= 1 << (n % 64);
            }
        }
    }

    BinaryContext {
        object_ids: ds.object_ids().to_vec(),
        attribute_names: ds.attribute_names().to_vec(),
        items,
        incidence,
        words_per_row,
    }
}

impl BinaryContext {
    pub fn object_count(&self) -> usize {
        self.object_ids.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.object_ids
    }

    pub fn item_count(&self) -> usize {
        self.items.len()
    }

    pub fn items(&self) -> &[IsItem] {
        &self.items
    }

    pub fn item_labels(&self) -> Vec<String> {
        self.items
            .iter()
            .map(|item| item.label(&self.attribute_names))
            .collect()
    }

    pub fn incident(&self, object: usize, item: usize) -> bool {
        self.incidence[object * self.words_per_row + item / 64] & (1 << (item % 64)) != 0
    }

    /// Items common to every object of `objects` (the prime operator on
    /// object sets), as sorted item indices.
    pub fn prime_objects(&self, objects: &[u32]) -> Vec<usize> {
        (0..self.items.len())
            .filter(|&n| objects.iter().all(|&g| self.incident(g as usize, n)))
            .collect()
    }

    /// Objects carrying every item of `items` (the prime operator on
    /// itemsets), as sorted object indices.
    pub fn prime_items(&self, items: &[usize]) -> Vec<u32> {
        (0..self.object_count() as u32)
            .filter(|&g| items.iter().all(|&n| self.incident(g as usize, n)))
            .collect()
    }

    /// Converts an itemset, given as item indices, into the interval
    /// pattern it constrains. Per attribute the lower bound is the largest
    /// `>=` threshold and the upper bound the smallest `<=` threshold;
    /// unconstrained sides fall back to the attribute's full range.
    pub fn itemset_to_pattern(
        &self,
        items: &[usize],
        ds: &NumericalDataset,
    ) -> Result<IntervalPattern, ScalingError> {
        itemset_to_pattern(items.iter().map(|&n| &self.items[n]), ds)
    }

    /// The incidence table as CSV: an `id` column, one `0`/`1` column per
    /// item.
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("id");
        for label in self.item_labels() {
            let _ = write!(out, ",{label}");
        }
        out.push('\n');
        for (g, id) in self.object_ids.iter().enumerate() {
            let _ = write!(out, "{id}");
            for n in 0..self.items.len() {
                let _ = write!(out, ",{}", u8::from(self.incident(g, n)));
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for BinaryContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "context of {} objects and {} items",
            self.object_count(),
            self.item_count()
        )
    }
}

/// Pattern constrained by a collection of scaled items; see
/// [`BinaryContext::itemset_to_pattern`].
pub fn itemset_to_pattern<'a>(
    items: impl IntoIterator<Item = &'a IsItem>,
    ds: &NumericalDataset,
) -> Result<IntervalPattern, ScalingError> {
    let mut bounds: Vec<(Value, Value)> = ds
        .ranges()
        .iter()
        .map(|w| (w[0], *w.last().expect("non-empty range")))
        .collect();
    for item in items {
        let (lo, hi) = &mut bounds[item.attr];
        match item.dir {
            Direction::Leq => *hi = (*hi).min(item.threshold),
            Direction::Geq => *lo = (*lo).max(item.threshold),
        }
    }
    let intervals = bounds
        .iter()
        .enumerate()
        .map(|(attr, &(lo, hi))| {
            Interval::new(lo, hi).map_err(|_| ScalingError::Contradiction {
                attribute: ds.attribute_names()[attr].clone(),
                lo,
                hi,
            })
        })
        .collect::<Result<_, _>>()?;
    Ok(IntervalPattern::new(intervals))
}
