//! Numerical datasets: a set of objects described by numerical attributes.
//!
//! A dataset fixes everything the miners depend on: the canonical attribute
//! order (the column order of the input file), the per-attribute sorted
//! range of occurring values, and the rank of each cell within its
//! attribute's range. Datasets are immutable once built.

use std::fmt::Write as _;
use std::fs::File;
use std::io::Read;
use std::path::Path;

use crate::patterns::{Interval, IntervalPattern};
use crate::value::Value;

#[derive(Debug, thiserror::Error)]
pub enum DatasetError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("malformed CSV: {0}")]
    Csv(#[from] csv::Error),
    #[error("table has no data rows")]
    NoRows,
    #[error("table has no attribute columns")]
    NoAttributes,
    #[error("cell at row {row}, column {column} is not a number: {source}")]
    BadCell {
        row: usize,
        column: String,
        #[source]
        source: crate::value::ParseValueError,
    },
    #[error("row {row} has {found} cells, expected {expected}")]
    RaggedRow {
        row: usize,
        found: usize,
        expected: usize,
    },
    #[error("duplicate object id `{0}`")]
    DuplicateObjectId(String),
    #[error("duplicate attribute name `{0}`")]
    DuplicateAttribute(String),
    #[error("unknown object id `{0}`")]
    UnknownObject(String),
}

/// Immutable numerical dataset with precomputed per-attribute ranges.
#[derive(Debug, Clone)]
pub struct NumericalDataset {
    object_ids: Vec<String>,
    attribute_names: Vec<String>,
    /// Row-major value matrix, `values[g][i]`.
    values: Vec<Vec<Value>>,
    /// Sorted distinct values per attribute.
    ranges: Vec<Vec<Value>>,
    /// `ranks[g][i]` = index of `values[g][i]` inside `ranges[i]`.
    ranks: Vec<Vec<u32>>,
}

impl NumericalDataset {
    /// Builds a dataset from rows already parsed into values.
    pub fn new(
        object_ids: Vec<String>,
        attribute_names: Vec<String>,
        values: Vec<Vec<Value>>,
    ) -> Result<NumericalDataset, DatasetError> {
        if attribute_names.is_empty() {
            return Err(DatasetError::NoAttributes);
        }
        if values.is_empty() {
            return Err(DatasetError::NoRows);
        }
        for (g, row) in values.iter().enumerate() {
            if row.len() != attribute_names.len() {
                return Err(DatasetError::RaggedRow {
                    row: g + 1,
                    found: row.len(),
                    expected: attribute_names.len(),
                });
            }
        }
        debug_assert_eq!(object_ids.len(), values.len());
        for (i, id) in object_ids.iter().enumerate() {
            if object_ids[..i].contains(id) {
                return Err(DatasetError::DuplicateObjectId(id.clone()));
            }
        }
        for (i, name) in attribute_names.iter().enumerate() {
            if attribute_names[..i].contains(name) {
                return Err(DatasetError::DuplicateAttribute(name.clone()));
            }
        }

        let mut ranges = Vec::with_capacity(attribute_names.len());
        for i in 0..attribute_names.len() {
            let mut range: Vec<Value> = values.iter().map(|row| row[i]).collect();
            range.sort();
            range.dedup();
            ranges.push(range);
        }
        let ranks = values
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .map(|(i, v)| ranges[i].binary_search(v).expect("value is in its range") as u32)
                    .collect()
            })
            .collect();

        Ok(NumericalDataset {
            object_ids,
            attribute_names,
            values,
            ranges,
            ranks,
        })
    }

    /// Loads a dataset from a CSV file with a mandatory header row. If the
    /// first column is named `id` it supplies object identifiers; otherwise
    /// objects are named `g1`, `g2`, ... in row order.
    pub fn load_csv(path: impl AsRef<Path>) -> Result<NumericalDataset, DatasetError> {
        let path = path.as_ref();
        let mut text = String::new();
        File::open(path)
            .and_then(|mut f| f.read_to_string(&mut text))
            .map_err(|source| DatasetError::Io {
                path: path.display().to_string(),
                source,
            })?;
        Self::from_csv_str(&text)
    }

    /// Same as [`load_csv`](Self::load_csv) but from in-memory CSV text.
    pub fn from_csv_str(text: &str) -> Result<NumericalDataset, DatasetError> {
        let mut reader = csv::ReaderBuilder::new()
            .has_headers(true)
            .trim(csv::Trim::All)
            .flexible(true)
            .from_reader(text.as_bytes());

        let header = reader.headers()?.clone();
        let has_id_column = header.get(0) == Some("id");
        let attr_start = if has_id_column { 1 } else { 0 };
        let attribute_names: Vec<String> =
            header.iter().skip(attr_start).map(str::to_string).collect();
        if attribute_names.is_empty() {
            return Err(DatasetError::NoAttributes);
        }

        let mut object_ids = Vec::new();
        let mut values = Vec::new();
        for (row_idx, record) in reader.records().enumerate() {
            let record = record?;
            let row_no = row_idx + 1;
            if record.len() != header.len() {
                return Err(DatasetError::RaggedRow {
                    row: row_no,
                    found: record.len(),
                    expected: header.len(),
                });
            }
            object_ids.push(if has_id_column {
                record[0].to_string()
            } else {
                format!("g{row_no}")
            });
            let row: Vec<Value> = record
                .iter()
                .skip(attr_start)
                .zip(&attribute_names)
                .map(|(cell, name)| {
                    cell.parse().map_err(|source| DatasetError::BadCell {
                        row: row_no,
                        column: name.clone(),
                        source,
                    })
                })
                .collect::<Result<_, _>>()?;
            values.push(row);
        }

        NumericalDataset::new(object_ids, attribute_names, values)
    }

    /// Renders the dataset back to CSV (always with an `id` column).
    pub fn to_csv_string(&self) -> String {
        let mut out = String::from("id");
        for name in &self.attribute_names {
            let _ = write!(out, ",{name}");
        }
        out.push('\n');
        for (id, row) in self.object_ids.iter().zip(&self.values) {
            let _ = write!(out, "{id}");
            for v in row {
                let _ = write!(out, ",{v}");
            }
            out.push('\n');
        }
        out
    }

    pub fn object_count(&self) -> usize {
        self.object_ids.len()
    }

    pub fn attribute_count(&self) -> usize {
        self.attribute_names.len()
    }

    pub fn object_ids(&self) -> &[String] {
        &self.object_ids
    }

    pub fn attribute_names(&self) -> &[String] {
        &self.attribute_names
    }

    pub fn object_index(&self, id: &str) -> Option<usize> {
        self.object_ids.iter().position(|x| x == id)
    }

    pub fn value(&self, object: usize, attribute: usize) -> Value {
        self.values[object][attribute]
    }

    /// Sorted distinct values of one attribute.
    pub fn range(&self, attribute: usize) -> &[Value] {
        &self.ranges[attribute]
    }

    pub fn ranges(&self) -> &[Vec<Value>] {
        &self.ranges
    }

    /// Index of `values[object][attribute]` within its attribute range.
    pub fn rank(&self, object: usize, attribute: usize) -> u32 {
        self.ranks[object][attribute]
    }

    /// The object's description: one degenerate interval per attribute.
    pub fn description(&self, object_id: &str) -> Result<IntervalPattern, DatasetError> {
        let g = self
            .object_index(object_id)
            .ok_or_else(|| DatasetError::UnknownObject(object_id.to_string()))?;
        Ok(self.description_by_index(g))
    }

    pub fn description_by_index(&self, object: usize) -> IntervalPattern {
        IntervalPattern::new(
            self.values[object]
                .iter()
                .map(|&v| Interval::new(v, v).expect("degenerate interval"))
                .collect(),
        )
    }

    /// The widest pattern: the full range on every attribute.
    pub fn full_range_pattern(&self) -> IntervalPattern {
        IntervalPattern::new(
            self.ranges
                .iter()
                .map(|w| Interval::new(w[0], *w.last().expect("non-empty range")).unwrap())
                .collect(),
        )
    }

    /// Restriction to a subset of attribute columns, in the given order.
    pub fn project(&self, attributes: &[usize]) -> Result<NumericalDataset, DatasetError> {
        NumericalDataset::new(
            self.object_ids.clone(),
            attributes
                .iter()
                .map(|&i| self.attribute_names[i].clone())
                .collect(),
            self.values
                .iter()
                .map(|row| attributes.iter().map(|&i| row[i]).collect())
                .collect(),
        )
    }
}
