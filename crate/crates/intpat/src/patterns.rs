//! Interval patterns and their order: meet, image, closure, and the
//! definitional predicates (closed, generator, frequent, equivalent).
//!
//! A pattern is a vector of closed intervals, one per attribute — an
//! axis-parallel hyper-rectangle. Patterns form a meet-semi-lattice under
//! the interval hull; `c ⊑ d` holds when every interval of `d` is contained
//! in the corresponding interval of `c` (smaller rectangles sit higher).
//! The pair image/hull is a Galois connection between object sets and
//! patterns, and their composition is the closure operator.

use std::fmt;

use num_bigint::BigUint;
use serde::ser::{Serialize, SerializeSeq, Serializer};

use crate::dataset::NumericalDataset;
use crate::value::Value;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum PatternError {
    #[error("interval bounds out of order: [{lo},{hi}]")]
    BoundsOutOfOrder { lo: Value, hi: Value },
    #[error("pattern has {found} dimensions, expected {expected}")]
    DimensionMismatch { found: usize, expected: usize },
    #[error("empty extent has no pattern")]
    EmptyExtent,
    #[error("pattern has an empty image, closure is undefined")]
    EmptyImage,
    #[error("bound {value} of attribute {attribute} does not occur in the data")]
    BoundNotInRange { attribute: usize, value: Value },
}

/// A closed interval `[lo, hi]` with `lo <= hi`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Value,
    hi: Value,
}

impl Interval {
    pub fn new(lo: Value, hi: Value) -> Result<Interval, PatternError> {
        if lo > hi {
            return Err(PatternError::BoundsOutOfOrder { lo, hi });
        }
        Ok(Interval { lo, hi })
    }

    pub fn point(v: Value) -> Interval {
        Interval { lo: v, hi: v }
    }

    pub fn lo(&self) -> Value {
        self.lo
    }

    pub fn hi(&self) -> Value {
        self.hi
    }

    pub fn is_degenerate(&self) -> bool {
        self.lo == self.hi
    }

    pub fn contains(&self, v: Value) -> bool {
        self.lo <= v && v <= self.hi
    }

    /// Smallest interval containing both operands.
    pub fn hull(&self, other: &Interval) -> Interval {
        Interval {
            lo: self.lo.min(other.lo),
            hi: self.hi.max(other.hi),
        }
    }

    /// Set containment of `other` within `self`.
    pub fn includes(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.lo, self.hi)
    }
}

/// A vector of intervals in canonical attribute order.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct IntervalPattern {
    intervals: Vec<Interval>,
}

impl IntervalPattern {
    pub fn new(intervals: Vec<Interval>) -> IntervalPattern {
        IntervalPattern { intervals }
    }

    /// Builds a pattern from `(lo, hi)` pairs of integers; test convenience.
    pub fn from_pairs(pairs: &[(i64, i64)]) -> Result<IntervalPattern, PatternError> {
        let intervals = pairs
            .iter()
            .map(|&(lo, hi)| Interval::new(Value::from_int(lo), Value::from_int(hi)))
            .collect::<Result<_, _>>()?;
        Ok(IntervalPattern { intervals })
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn interval(&self, i: usize) -> &Interval {
        &self.intervals[i]
    }

    fn check_len(&self, other: &IntervalPattern) -> Result<(), PatternError> {
        if self.len() != other.len() {
            return Err(PatternError::DimensionMismatch {
                found: other.len(),
                expected: self.len(),
            });
        }
        Ok(())
    }

    fn check_dataset(&self, ds: &NumericalDataset) -> Result<(), PatternError> {
        if self.len() != ds.attribute_count() {
            return Err(PatternError::DimensionMismatch {
                found: self.len(),
                expected: ds.attribute_count(),
            });
        }
        Ok(())
    }

    /// Infimum: the per-dimension interval hull. Commutative, associative,
    /// idempotent; yields the greatest lower bound for `⊑`.
    pub fn meet(&self, other: &IntervalPattern) -> Result<IntervalPattern, PatternError> {
        self.check_len(other)?;
        Ok(IntervalPattern {
            intervals: self
                .intervals
                .iter()
                .zip(&other.intervals)
                .map(|(a, b)| a.hull(b))
                .collect(),
        })
    }

    /// The subsumption order `self ⊑ other`: every interval of `other`
    /// is contained in the corresponding interval of `self`.
    pub fn leq(&self, other: &IntervalPattern) -> Result<bool, PatternError> {
        self.check_len(other)?;
        Ok(self
            .intervals
            .iter()
            .zip(&other.intervals)
            .all(|(a, b)| a.includes(b)))
    }

    /// Objects whose description falls inside this rectangle.
    pub fn image(&self, ds: &NumericalDataset) -> Result<Extent, PatternError> {
        self.check_dataset(ds)?;
        let members = (0..ds.object_count())
            .filter(|&g| {
                self.intervals
                    .iter()
                    .enumerate()
                    .all(|(i, iv)| iv.contains(ds.value(g, i)))
            })
            .map(|g| g as u32)
            .collect();
        Ok(Extent { members })
    }

    pub fn support(&self, ds: &NumericalDataset) -> Result<usize, PatternError> {
        Ok(self.image(ds)?.len())
    }

    /// The smallest pattern with the same image: hull of the image.
    pub fn closure(&self, ds: &NumericalDataset) -> Result<IntervalPattern, PatternError> {
        let image = self.image(ds)?;
        if image.is_empty() {
            return Err(PatternError::EmptyImage);
        }
        image.hull(ds)
    }

    pub fn is_closed(&self, ds: &NumericalDataset) -> Result<bool, PatternError> {
        Ok(*self == self.closure(ds)?)
    }

    /// Equivalence: same image.
    pub fn equivalent(
        &self,
        other: &IntervalPattern,
        ds: &NumericalDataset,
    ) -> Result<bool, PatternError> {
        Ok(self.image(ds)? == other.image(ds)?)
    }

    pub fn is_frequent(&self, ds: &NumericalDataset, minsup: usize) -> Result<bool, PatternError> {
        Ok(self.support(ds)? >= minsup)
    }

    /// A generator has no one-step enlargement (lowering one `lo` to the
    /// next smaller range value, or raising one `hi` to the next larger)
    /// that keeps the image unchanged. One step suffices: any strictly
    /// larger rectangle with the same image contains an equal-image
    /// rectangle one step away.
    pub fn is_generator(&self, ds: &NumericalDataset) -> Result<bool, PatternError> {
        self.check_dataset(ds)?;
        let image = self.image(ds)?;
        for (i, iv) in self.intervals.iter().enumerate() {
            let range = ds.range(i);
            let lo_pos =
                range
                    .binary_search(&iv.lo)
                    .map_err(|_| PatternError::BoundNotInRange {
                        attribute: i,
                        value: iv.lo,
                    })?;
            let hi_pos =
                range
                    .binary_search(&iv.hi)
                    .map_err(|_| PatternError::BoundNotInRange {
                        attribute: i,
                        value: iv.hi,
                    })?;
            let mut enlargements = Vec::new();
            if lo_pos > 0 {
                enlargements.push(Interval {
                    lo: range[lo_pos - 1],
                    hi: iv.hi,
                });
            }
            if hi_pos + 1 < range.len() {
                enlargements.push(Interval {
                    lo: iv.lo,
                    hi: range[hi_pos + 1],
                });
            }
            for wider in enlargements {
                let mut candidate = self.clone();
                candidate.intervals[i] = wider;
                if candidate.image(ds)? == image {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Checks that every bound occurs in its attribute's range.
    pub fn validate_bounds(&self, ds: &NumericalDataset) -> Result<(), PatternError> {
        self.check_dataset(ds)?;
        for (i, iv) in self.intervals.iter().enumerate() {
            for value in [iv.lo, iv.hi] {
                if ds.range(i).binary_search(&value).is_err() {
                    return Err(PatternError::BoundNotInRange {
                        attribute: i,
                        value,
                    });
                }
            }
        }
        Ok(())
    }
}

impl fmt::Display for IntervalPattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("<")?;
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{iv}")?;
        }
        f.write_str(">")
    }
}

impl Serialize for IntervalPattern {
    /// Serializes as a JSON array of `[lo, hi]` pairs in attribute order.
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let mut seq = serializer.serialize_seq(Some(self.intervals.len()))?;
        for iv in &self.intervals {
            seq.serialize_element(&[iv.lo, iv.hi])?;
        }
        seq.end()
    }
}

/// A set of objects, held as sorted indices into the dataset's object list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Extent {
    members: Vec<u32>,
}

impl Extent {
    /// Builds an extent from object indices; sorts and deduplicates.
    pub fn from_indices(mut indices: Vec<u32>) -> Extent {
        indices.sort_unstable();
        indices.dedup();
        Extent { members: indices }
    }

    /// Builds an extent from object ids.
    pub fn from_ids(
        ids: &[&str],
        ds: &NumericalDataset,
    ) -> Result<Extent, crate::dataset::DatasetError> {
        let indices = ids
            .iter()
            .map(|id| {
                ds.object_index(id)
                    .map(|g| g as u32)
                    .ok_or_else(|| crate::dataset::DatasetError::UnknownObject(id.to_string()))
            })
            .collect::<Result<_, _>>()?;
        Ok(Extent::from_indices(indices))
    }

    pub fn all(ds: &NumericalDataset) -> Extent {
        Extent {
            members: (0..ds.object_count() as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn indices(&self) -> &[u32] {
        &self.members
    }

    pub fn contains(&self, index: u32) -> bool {
        self.members.binary_search(&index).is_ok()
    }

    /// Resolves members to object ids in dataset order.
    pub fn ids<'a>(&'a self, ds: &'a NumericalDataset) -> impl Iterator<Item = &'a str> + 'a {
        self.members
            .iter()
            .map(|&g| ds.object_ids()[g as usize].as_str())
    }

    /// The meet of all member descriptions: per dimension, the span from
    /// the smallest to the largest value over the extent. Geometrically
    /// this is the smallest axis-parallel box around the members'
    /// descriptions, their convex hull in rectangle space. Errors on the
    /// empty extent — the meet over zero descriptions is left undefined.
    pub fn hull(&self, ds: &NumericalDataset) -> Result<IntervalPattern, PatternError> {
        let (&first, rest) = self
            .members
            .split_first()
            .ok_or(PatternError::EmptyExtent)?;
        let mut intervals: Vec<Interval> = (0..ds.attribute_count())
            .map(|i| Interval::point(ds.value(first as usize, i)))
            .collect();
        for &g in rest {
            for (i, iv) in intervals.iter_mut().enumerate() {
                *iv = iv.hull(&Interval::point(ds.value(g as usize, i)));
            }
        }
        Ok(IntervalPattern { intervals })
    }
}

/// Number of interval patterns expressible over the dataset:
/// the product over attributes of `|W|·(|W|+1)/2`.
pub fn search_space_size(ds: &NumericalDataset) -> BigUint {
    let mut size = BigUint::from(1u32);
    for range in ds.ranges() {
        let n = BigUint::from(range.len());
        size *= &n * (&n + 1u32) / 2u32;
    }
    size
}

#[cfg(test)]
mod tests {
    use super::*;

    const TABLE1: &str = "\
id,m1,m2,m3
g1,5,7,6
g2,6,8,4
g3,4,8,5
g4,4,9,8
g5,5,8,5
";

    fn table1() -> NumericalDataset {
        NumericalDataset::from_csv_str(TABLE1).unwrap()
    }

    /// Columns m1 and m3 of the running example.
    fn table1_m1_m3() -> NumericalDataset {
        table1().project(&[0, 2]).unwrap()
    }

    fn pat(pairs: &[(i64, i64)]) -> IntervalPattern {
        IntervalPattern::from_pairs(pairs).unwrap()
    }

    fn ext(ids: &[&str], ds: &NumericalDataset) -> Extent {
        Extent::from_ids(ids, ds).unwrap()
    }

    #[test]
    fn meet_is_the_interval_hull() {
        let ds = table1();
        let d1 = ds.description("g1").unwrap();
        let d2 = ds.description("g2").unwrap();
        let d5 = ds.description("g5").unwrap();
        let m = d1.meet(&d2).unwrap().meet(&d5).unwrap();
        assert_eq!(m, pat(&[(5, 6), (7, 8), (4, 6)]));

        let d = pat(&[(4, 6), (7, 9)]);
        assert_eq!(d.meet(&d).unwrap(), d);
        assert_eq!(
            pat(&[(4, 4)]).meet(&pat(&[(6, 6)])).unwrap(),
            pat(&[(4, 6)])
        );
    }

    #[test]
    fn meet_rejects_dimension_mismatch() {
        let err = pat(&[(4, 4)]).meet(&pat(&[(4, 4), (5, 5)])).unwrap_err();
        assert!(matches!(err, PatternError::DimensionMismatch { .. }));
    }

    #[test]
    fn order_matches_interval_containment() {
        assert!(pat(&[(4, 6), (6, 8)]).leq(&pat(&[(4, 5), (6, 8)])).unwrap());
        let d = pat(&[(4, 5), (6, 8)]);
        assert!(d.leq(&d).unwrap());
        assert!(!pat(&[(4, 5)]).leq(&pat(&[(5, 6)])).unwrap());
        assert!(!pat(&[(5, 6)]).leq(&pat(&[(4, 5)])).unwrap());
    }

    #[test]
    fn image_of_running_example() {
        let ds = table1();
        let d = pat(&[(5, 6), (7, 8), (4, 6)]);
        assert_eq!(d.image(&ds).unwrap(), ext(&["g1", "g2", "g5"], &ds));
        assert_eq!(d.support(&ds).unwrap(), 3);

        let full = ds.full_range_pattern();
        assert_eq!(full.image(&ds).unwrap(), Extent::all(&ds));
    }

    #[test]
    fn image_in_two_dimensions() {
        let ds = table1_m1_m3();
        let d1 = pat(&[(4, 5), (5, 8)]);
        assert_eq!(d1.image(&ds).unwrap(), ext(&["g1", "g3", "g4", "g5"], &ds));
        let d2 = pat(&[(4, 5), (4, 5)]);
        assert_eq!(d2.image(&ds).unwrap(), ext(&["g3", "g5"], &ds));
        let d3 = pat(&[(5, 6), (4, 4)]);
        assert_eq!(d3.image(&ds).unwrap(), ext(&["g2"], &ds));
        let d4 = pat(&[(6, 6), (4, 8)]);
        assert_eq!(d4.image(&ds).unwrap(), ext(&["g2"], &ds));
    }

    #[test]
    fn extent_hull_of_running_example() {
        let ds = table1();
        assert_eq!(
            ext(&["g1", "g2", "g5"], &ds).hull(&ds).unwrap(),
            pat(&[(5, 6), (7, 8), (4, 6)])
        );
        assert_eq!(
            ext(&["g1"], &ds).hull(&ds).unwrap(),
            pat(&[(5, 5), (7, 7), (6, 6)])
        );
        assert_eq!(
            Extent::all(&ds).hull(&ds).unwrap(),
            pat(&[(4, 6), (7, 9), (4, 8)])
        );
        assert_eq!(
            Extent::default().hull(&ds).unwrap_err(),
            PatternError::EmptyExtent
        );
    }

    #[test]
    fn closure_shrinks_to_the_image_hull() {
        let ds = table1();
        assert_eq!(
            pat(&[(5, 6), (7, 8), (4, 8)]).closure(&ds).unwrap(),
            pat(&[(5, 6), (7, 8), (4, 6)])
        );
        assert_eq!(
            pat(&[(4, 5), (7, 9), (4, 8)]).closure(&ds).unwrap(),
            pat(&[(4, 5), (7, 9), (5, 8)])
        );
        let c = pat(&[(5, 6), (7, 8), (4, 8)]).closure(&ds).unwrap();
        assert_eq!(c.closure(&ds).unwrap(), c);
    }

    #[test]
    fn closure_preserves_the_image() {
        let ds = table1();
        let d = pat(&[(5, 6), (7, 8), (4, 8)]);
        let c = d.closure(&ds).unwrap();
        assert_eq!(d.image(&ds).unwrap(), c.image(&ds).unwrap());
        assert!(d.leq(&c).unwrap());
    }

    #[test]
    fn definitional_predicates_in_two_dimensions() {
        let ds = table1_m1_m3();
        assert!(pat(&[(4, 5), (5, 8)]).is_closed(&ds).unwrap());
        assert!(!pat(&[(4, 6), (6, 8)]).is_closed(&ds).unwrap());

        assert!(pat(&[(4, 6), (5, 8)]).is_generator(&ds).unwrap());
        assert!(pat(&[(4, 5), (4, 8)]).is_generator(&ds).unwrap());
        assert!(!pat(&[(4, 5), (5, 8)]).is_generator(&ds).unwrap());

        assert!(pat(&[(4, 5), (6, 8)])
            .equivalent(&pat(&[(4, 6), (6, 8)]), &ds)
            .unwrap());

        // Of the four patterns of the 2-D example, only d1 is frequent
        // at minsup 3.
        assert!(pat(&[(4, 5), (5, 8)]).is_frequent(&ds, 3).unwrap());
        for d in [
            pat(&[(4, 5), (4, 5)]),
            pat(&[(5, 6), (4, 4)]),
            pat(&[(6, 6), (4, 8)]),
        ] {
            assert!(!d.is_frequent(&ds, 3).unwrap());
        }
    }

    #[test]
    fn generator_check_requires_bounds_in_range() {
        let ds = table1();
        let err = pat(&[(4, 7), (7, 9), (4, 8)])
            .is_generator(&ds)
            .unwrap_err();
        assert!(matches!(err, PatternError::BoundNotInRange { .. }));
    }

    #[test]
    fn search_space_sizes() {
        let ds = table1();
        assert_eq!(search_space_size(&ds), BigUint::from(360u32));

        let one = NumericalDataset::from_csv_str("m1\n7\n").unwrap();
        assert_eq!(search_space_size(&one), BigUint::from(1u32));

        let m1 = ds.project(&[0]).unwrap();
        assert_eq!(search_space_size(&m1), BigUint::from(6u32));
    }

    #[test]
    fn pattern_serializes_as_pair_array() {
        let d = pat(&[(5, 6), (7, 8), (4, 6)]);
        assert_eq!(serde_json::to_string(&d).unwrap(), "[[5,6],[7,8],[4,6]]");
    }

    #[test]
    fn extent_iterates_in_dataset_order() {
        let ds = table1();
        let e = Extent::from_indices(vec![4, 0, 2]);
        let ids: Vec<&str> = e.ids(&ds).collect();
        assert_eq!(ids, ["g1", "g3", "g5"]);
    }
}
