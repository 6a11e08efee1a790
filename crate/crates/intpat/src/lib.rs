//! Mining closed interval patterns and interval pattern generators
//! directly from numerical tabular data.
//!
//! The crate revolves around a pattern structure on hyper-rectangles:
//! objects are rows of a numerical table, a pattern is one closed interval
//! per attribute, and the image of a pattern is the set of rows it
//! contains. On top of this sit:
//!
//! - [`dataset`] — loading and validating numerical CSV data,
//! - [`patterns`] — the interval-pattern algebra (meet, order, closure),
//! - [`miner`] — depth-first miners for frequent closed patterns and for
//!   pattern generators, driven by minimal bound changes in lectic order,
//! - [`scaling`] — the interordinal binarization of a dataset, naive
//!   closed/generator itemset mining on the scaled context, and the
//!   redundancy diagnostics comparing both representations,
//! - [`oracle`] — a brute-force enumerator of the whole pattern search
//!   space, used as ground truth in tests.

pub mod dataset;
pub mod miner;
pub mod oracle;
pub mod patterns;
mod rank;
pub mod scaling;
pub mod value;

pub use dataset::{DatasetError, NumericalDataset};
pub use patterns::{search_space_size, Extent, Interval, IntervalPattern, PatternError};
pub use value::Value;
