//! Property tests for the pattern algebra and the dataset round-trip.

use intpat::{Extent, IntervalPattern, NumericalDataset, Value};
use proptest::prelude::*;

/// A dataset of 1..=6 objects, 1..=3 attributes, small integer values.
fn dataset_strategy() -> impl Strategy<Value = NumericalDataset> {
    (1usize..=6, 1usize..=3)
        .prop_flat_map(|(objects, attributes)| {
            proptest::collection::vec(proptest::collection::vec(0i64..=5, attributes), objects)
        })
        .prop_map(|rows| {
            let ids = (1..=rows.len()).map(|g| format!("g{g}")).collect();
            let names = (1..=rows[0].len()).map(|i| format!("m{i}")).collect();
            let values = rows
                .iter()
                .map(|row| row.iter().map(|&v| Value::from_int(v)).collect())
                .collect();
            NumericalDataset::new(ids, names, values).expect("valid dataset")
        })
}

/// A dataset together with one pattern whose bounds come from the ranges.
fn dataset_and_pattern() -> impl Strategy<Value = (NumericalDataset, IntervalPattern)> {
    dataset_strategy().prop_flat_map(|ds| {
        let bounds: Vec<_> = ds
            .ranges()
            .iter()
            .map(|w| {
                let n = w.len();
                (0..n, 0..n).prop_map(|(a, b)| (a.min(b), a.max(b)))
            })
            .collect();
        bounds.prop_map(move |picked| {
            let pattern = IntervalPattern::new(
                picked
                    .iter()
                    .enumerate()
                    .map(|(i, &(lo, hi))| {
                        intpat::Interval::new(ds.range(i)[lo], ds.range(i)[hi]).unwrap()
                    })
                    .collect(),
            );
            (ds.clone(), pattern)
        })
    })
}

fn dataset_and_two_patterns(
) -> impl Strategy<Value = (NumericalDataset, IntervalPattern, IntervalPattern)> {
    dataset_and_pattern().prop_flat_map(|(ds, first)| {
        let bounds: Vec<_> = ds
            .ranges()
            .iter()
            .map(|w| {
                let n = w.len();
                (0..n, 0..n).prop_map(|(a, b)| (a.min(b), a.max(b)))
            })
            .collect();
        bounds.prop_map(move |picked| {
            let second = IntervalPattern::new(
                picked
                    .iter()
                    .enumerate()
                    .map(|(i, &(lo, hi))| {
                        intpat::Interval::new(ds.range(i)[lo], ds.range(i)[hi]).unwrap()
                    })
                    .collect(),
            );
            (ds.clone(), first.clone(), second)
        })
    })
}

proptest! {
    /// Image and hull form a Galois connection: A ⊆ image(d) ⟺ d ⊑ hull(A).
    #[test]
    fn galois_connection(
        (ds, pattern) in dataset_and_pattern(),
        picked in proptest::collection::vec(proptest::bool::ANY, 6),
    ) {
        let subset = Extent::from_indices(
            picked
                .iter()
                .take(ds.object_count())
                .enumerate()
                .filter(|&(_, &take)| take)
                .map(|(g, _)| g as u32)
                .collect(),
        );
        prop_assume!(!subset.is_empty());
        let image = pattern.image(&ds).unwrap();
        let contained = subset.indices().iter().all(|&g| image.contains(g));
        let below_hull = pattern.leq(&subset.hull(&ds).unwrap()).unwrap();
        prop_assert_eq!(contained, below_hull);
    }

    /// c ⊑ d implies image(d) ⊆ image(c).
    #[test]
    fn image_is_antitone((ds, c, d) in dataset_and_two_patterns()) {
        if c.leq(&d).unwrap() {
            let image_c = c.image(&ds).unwrap();
            let image_d = d.image(&ds).unwrap();
            prop_assert!(image_d.indices().iter().all(|&g| image_c.contains(g)));
        }
    }

    /// The meet is the greatest lower bound, and characterizes the order.
    #[test]
    fn meet_is_the_greatest_lower_bound((ds, c, d) in dataset_and_two_patterns()) {
        let _ = &ds;
        let m = c.meet(&d).unwrap();
        prop_assert!(m.leq(&c).unwrap());
        prop_assert!(m.leq(&d).unwrap());
        prop_assert_eq!(c.leq(&d).unwrap(), m == c);
        prop_assert_eq!(c.meet(&d).unwrap(), d.meet(&c).unwrap());
        prop_assert_eq!(c.meet(&c).unwrap(), c.clone());
        // Any common lower bound sits below the meet.
        let lower = m.meet(&ds.full_range_pattern()).unwrap();
        prop_assert!(lower.leq(&m).unwrap());
    }

    /// Closure is extensive, idempotent, and monotone on its domain.
    #[test]
    fn closure_is_a_closure_operator((ds, c, d) in dataset_and_two_patterns()) {
        if !c.image(&ds).unwrap().is_empty() {
            let cc = c.closure(&ds).unwrap();
            prop_assert!(c.leq(&cc).unwrap());
            prop_assert_eq!(cc.closure(&ds).unwrap(), cc.clone());
            prop_assert_eq!(c.image(&ds).unwrap(), cc.image(&ds).unwrap());
            if c.leq(&d).unwrap() && !d.image(&ds).unwrap().is_empty() {
                prop_assert!(cc.leq(&d.closure(&ds).unwrap()).unwrap());
            }
        }
    }

    /// Equal support plus subsumption forces equal images; the generator
    /// store's extent keying rests on this.
    #[test]
    fn equal_support_and_subsumption_force_equal_images(
        (ds, e, c) in dataset_and_two_patterns()
    ) {
        if e.leq(&c).unwrap() {
            let image_e = e.image(&ds).unwrap();
            let image_c = c.image(&ds).unwrap();
            if image_e.len() == image_c.len() {
                prop_assert_eq!(image_e, image_c);
            }
        }
    }

    /// Every object lies in the image of its own description, which has
    /// support at least one.
    #[test]
    fn descriptions_contain_their_objects(ds in dataset_strategy()) {
        for g in 0..ds.object_count() {
            let d = ds.description_by_index(g);
            let image = d.image(&ds).unwrap();
            prop_assert!(image.contains(g as u32));
            prop_assert!(d.support(&ds).unwrap() >= 1);
        }
    }

    /// CSV serialization round-trips every cell numerically, fractional
    /// values included.
    #[test]
    fn csv_round_trip(
        rows in proptest::collection::vec(
            proptest::collection::vec((-9999i64..=9999, 0u32..=2), 1..=3),
            1..=6,
        )
    ) {
        let width = rows[0].len();
        prop_assume!(rows.iter().all(|r| r.len() == width));
        let ids = (1..=rows.len()).map(|g| format!("g{g}")).collect();
        let names = (1..=width).map(|i| format!("m{i}")).collect();
        let values: Vec<Vec<Value>> = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|&(mantissa, scale)| Value::from_scaled(mantissa, scale).unwrap())
                    .collect()
            })
            .collect();
        let ds = NumericalDataset::new(ids, names, values).unwrap();
        let again = NumericalDataset::from_csv_str(&ds.to_csv_string()).unwrap();
        for g in 0..ds.object_count() {
            for i in 0..ds.attribute_count() {
                prop_assert_eq!(ds.value(g, i), again.value(g, i));
            }
        }
    }
}
