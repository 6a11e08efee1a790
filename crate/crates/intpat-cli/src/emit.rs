//! JSONL record construction and output plumbing.
//!
//! Records are serialized from structs so the JSON fields appear in the
//! documented order: `pattern`, `support`, `extent`, then `closure` for
//! generator records.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};

use intpat::miner::{ClosedPattern, GeneratorPattern};
use intpat::oracle::EquivalenceClass;
use intpat::{Extent, IntervalPattern, NumericalDataset, Value};
use serde::Serialize;

use crate::CliError;

/// Buffered writer to a file or stdout.
pub fn open_output(path: &Option<PathBuf>) -> Result<Box<dyn Write>, CliError> {
    Ok(match path {
        Some(path) => Box::new(BufWriter::new(create_file(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

pub fn create_file(path: &Path) -> Result<File, CliError> {
    File::create(path)
        .map_err(|e| CliError::data(anyhow::anyhow!("cannot write {}: {e}", path.display())))
}

fn extent_ids<'a>(extent: &'a Extent, ds: &'a NumericalDataset) -> Vec<&'a str> {
    extent.ids(ds).collect()
}

#[derive(Serialize)]
struct ClosedRecord<'a> {
    pattern: &'a IntervalPattern,
    support: usize,
    extent: Vec<&'a str>,
}

#[derive(Serialize)]
struct GeneratorRecord<'a> {
    pattern: &'a IntervalPattern,
    support: usize,
    extent: Vec<&'a str>,
    closure: &'a IntervalPattern,
}

#[derive(Serialize)]
struct ClassRecord<'a> {
    extent: Vec<&'a str>,
    support: usize,
    closed: &'a IntervalPattern,
    generators: &'a [IntervalPattern],
    members: usize,
}

fn write_record(out: &mut dyn Write, record: &impl Serialize) -> Result<(), CliError> {
    serde_json::to_writer(&mut *out, record)
        .map_err(|e| CliError::data(anyhow::anyhow!("cannot serialize record: {e}")))?;
    writeln!(out).map_err(|e| CliError::data(anyhow::anyhow!("cannot write output: {e}")))
}

pub fn write_closed(
    out: &mut dyn Write,
    c: &ClosedPattern,
    ds: &NumericalDataset,
) -> Result<(), CliError> {
    write_record(
        out,
        &ClosedRecord {
            pattern: &c.pattern,
            support: c.extent.len(),
            extent: extent_ids(&c.extent, ds),
        },
    )
}

pub fn write_generator(
    out: &mut dyn Write,
    g: &GeneratorPattern,
    ds: &NumericalDataset,
) -> Result<(), CliError> {
    write_record(
        out,
        &GeneratorRecord {
            pattern: &g.pattern,
            support: g.extent.len(),
            extent: extent_ids(&g.extent, ds),
            closure: &g.closure,
        },
    )
}

pub fn write_class(
    out: &mut dyn Write,
    class: &EquivalenceClass,
    ds: &NumericalDataset,
) -> Result<(), CliError> {
    write_record(
        out,
        &ClassRecord {
            extent: extent_ids(&class.extent, ds),
            support: class.extent.len(),
            closed: &class.closed,
            generators: &class.generators,
            members: class.members.len(),
        },
    )
}

/// Sort key ordering records lexicographically by interval bounds.
pub fn pattern_key(pattern: &IntervalPattern) -> Vec<(Value, Value)> {
    pattern
        .intervals()
        .iter()
        .map(|iv| (iv.lo(), iv.hi()))
        .collect()
}
