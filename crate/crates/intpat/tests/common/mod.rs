//! Shared fixtures for the integration tests. Each test binary
//! compiles its own copy, so not every helper is used everywhere.
#![allow(dead_code)]

use std::path::PathBuf;

use intpat::{NumericalDataset, Value};
use rand::Rng;

pub fn testdata(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("../../testdata")
        .join(name)
}

pub fn table1() -> NumericalDataset {
    NumericalDataset::load_csv(testdata("table1.csv")).expect("fixture loads")
}

/// A small random dataset: up to 6 objects, up to 3 attributes, integer
/// values drawn from 0..=5. Collisions are frequent by construction, so
/// single-valued columns and duplicate rows occur naturally.
pub fn random_dataset(rng: &mut impl Rng) -> NumericalDataset {
    let objects = rng.random_range(1..=6);
    let attributes = rng.random_range(1..=3);
    let ids = (1..=objects).map(|g| format!("g{g}")).collect();
    let names = (1..=attributes).map(|i| format!("m{i}")).collect();
    let values = (0..objects)
        .map(|_| {
            (0..attributes)
                .map(|_| Value::from_int(rng.random_range(0..=5)))
                .collect()
        })
        .collect();
    NumericalDataset::new(ids, names, values).expect("valid random dataset")
}
