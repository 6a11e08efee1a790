//! Subcommand implementations.

use std::io::Write;
use std::path::Path;
use std::time::Instant;

use intpat::miner::{self, MineStats, MinerConfig, StoreKind};
use intpat::oracle;
use intpat::scaling;
use intpat::{search_space_size, NumericalDataset};
use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::json;

use crate::emit;
use crate::{
    BenchArgs, CliError, ContextFormat, MineArgs, Mode, OracleArgs, OracleEmit, ScaleArgs,
    StatsArgs,
};

fn load_dataset(path: &Path) -> Result<NumericalDataset, CliError> {
    NumericalDataset::load_csv(path).map_err(CliError::data)
}

/// Resolves `--min-support`: a plain count, or a percentage of the object
/// count rounded up. The result must land in `1..=objects`.
fn resolve_min_support(raw: &str, objects: usize) -> Result<usize, CliError> {
    let bad =
        |detail: &str| CliError::usage(anyhow::anyhow!("invalid --min-support `{raw}`: {detail}"));
    let minsup = if let Some(percent) = raw.trim().strip_suffix('%') {
        let percent: u64 = percent
            .trim()
            .parse()
            .map_err(|_| bad("expected an integer percentage like `60%`"))?;
        ((percent as u128 * objects as u128).div_ceil(100)) as usize
    } else {
        raw.trim()
            .parse()
            .map_err(|_| bad("expected a count or a percentage"))?
    };
    if minsup < 1 || minsup > objects {
        return Err(bad(&format!("resolves to {minsup}, outside 1..={objects}")));
    }
    Ok(minsup)
}

/// Per-run summary; counts always equal the emitted record count.
#[derive(Serialize)]
struct RunReport {
    dataset: String,
    objects: usize,
    attributes: usize,
    range_sizes: Vec<usize>,
    mode: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    store: Option<String>,
    min_support: usize,
    min_support_percent: f64,
    patterns: u64,
    elapsed_ms: u64,
    peak_depth: usize,
}

impl RunReport {
    fn new(
        path: &Path,
        ds: &NumericalDataset,
        mode: &'static str,
        store: Option<String>,
        minsup: usize,
        stats: &MineStats,
        elapsed_ms: u64,
    ) -> RunReport {
        RunReport {
            dataset: path.display().to_string(),
            objects: ds.object_count(),
            attributes: ds.attribute_count(),
            range_sizes: ds.ranges().iter().map(Vec::len).collect(),
            mode,
            store,
            min_support: minsup,
            min_support_percent: 100.0 * minsup as f64 / ds.object_count() as f64,
            patterns: stats.emitted,
            elapsed_ms,
            peak_depth: stats.peak_depth,
        }
    }

    fn write(&self, target: &Option<std::path::PathBuf>) -> Result<(), CliError> {
        let line = serde_json::to_string(self)
            .map_err(|e| CliError::data(anyhow::anyhow!("cannot serialize report: {e}")))?;
        match target {
            Some(path) => {
                let mut file = emit::create_file(path)?;
                writeln!(file, "{line}")
                    .map_err(|e| CliError::data(anyhow::anyhow!("cannot write report: {e}")))
            }
            None => {
                eprintln!("{line}");
                Ok(())
            }
        }
    }
}

pub fn mine(args: MineArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    let minsup = resolve_min_support(&args.min_support, ds.object_count())?;
    let cfg = MinerConfig::new(minsup);
    let mut out = emit::open_output(&args.output)?;

    let started = Instant::now();
    let (mode, store, stats) = match args.mode {
        Mode::Closed => {
            let stats = if args.parallel || args.sort {
                let (mut mined, stats) = if args.parallel {
                    miner::mine_closed_parallel(&ds, &cfg).map_err(CliError::usage)?
                } else {
                    miner::mine_closed(&ds, &cfg).map_err(CliError::usage)?
                };
                if args.sort {
                    mined.sort_by_key(|c| emit::pattern_key(&c.pattern));
                }
                for c in &mined {
                    emit::write_closed(&mut out, c, &ds)?;
                }
                stats
            } else {
                let mut pending = Ok(());
                let stats = miner::closed::mine_closed_with(&ds, &cfg, |c| {
                    if pending.is_ok() {
                        pending = emit::write_closed(&mut out, &c, &ds);
                    }
                })
                .map_err(CliError::usage)?;
                pending?;
                stats
            };
            ("closed", None, stats)
        }
        Mode::Generators => {
            if args.parallel {
                return Err(CliError::usage(anyhow::anyhow!(
                    "--parallel applies to --mode closed only; the generator store is order-sensitive"
                )));
            }
            let kind = args.store.kind();
            let stats = if args.sort {
                let (mut mined, stats) =
                    miner::mine_generators(&ds, &cfg, kind).map_err(CliError::usage)?;
                mined.sort_by_key(|g| emit::pattern_key(&g.pattern));
                for g in &mined {
                    emit::write_generator(&mut out, g, &ds)?;
                }
                stats
            } else {
                let mut pending = Ok(());
                let stats = miner::generators::mine_generators_with(&ds, &cfg, kind, |g| {
                    if pending.is_ok() {
                        pending = emit::write_generator(&mut out, &g, &ds);
                    }
                })
                .map_err(CliError::usage)?;
                pending?;
                stats
            };
            ("generators", Some(args.store.kind().to_string()), stats)
        }
    };
    let elapsed_ms = started.elapsed().as_millis() as u64;
    out.flush()
        .map_err(|e| CliError::data(anyhow::anyhow!("cannot flush output: {e}")))?;

    RunReport::new(&args.input, &ds, mode, store, minsup, &stats, elapsed_ms).write(&args.report)
}

pub fn scale(args: ScaleArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    let ctx = scaling::interordinal_scale(&ds);
    let mut out = emit::open_output(&args.output)?;
    let payload = match args.format {
        ContextFormat::Csv => ctx.to_csv_string(),
        ContextFormat::Json => {
            #[derive(Serialize)]
            struct ContextRecord<'a> {
                objects: &'a [String],
                attributes: &'a [String],
                items: Vec<String>,
                incidence: Vec<Vec<u8>>,
            }
            let record = ContextRecord {
                objects: ctx.object_ids(),
                attributes: ds.attribute_names(),
                items: ctx.item_labels(),
                incidence: (0..ctx.object_count())
                    .map(|g| {
                        (0..ctx.item_count())
                            .map(|n| u8::from(ctx.incident(g, n)))
                            .collect()
                    })
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&record)
                .map_err(|e| CliError::data(anyhow::anyhow!("cannot serialize context: {e}")))?;
            text.push('\n');
            text
        }
    };
    out.write_all(payload.as_bytes())
        .and_then(|()| out.flush())
        .map_err(|e| CliError::data(anyhow::anyhow!("cannot write output: {e}")))
}

fn oracle_cap(flag: Option<u64>) -> Result<u64, CliError> {
    if let Some(cap) = flag {
        return Ok(cap);
    }
    match std::env::var("INTPAT_ORACLE_CAP") {
        Ok(raw) => raw.parse().map_err(|_| {
            CliError::usage(anyhow::anyhow!(
                "INTPAT_ORACLE_CAP must be an integer, got `{raw}`"
            ))
        }),
        Err(_) => Ok(oracle::DEFAULT_CAP),
    }
}

pub fn oracle(args: OracleArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    let minsup = resolve_min_support(&args.min_support, ds.object_count())?;
    let cap = oracle_cap(args.cap)?;
    let mut out = emit::open_output(&args.output)?;

    let space = oracle::classify(&ds, minsup, cap).map_err(CliError::data)?;
    match args.emit {
        OracleEmit::Classes => {
            for class in &space.classes {
                emit::write_class(&mut out, class, &ds)?;
            }
        }
        OracleEmit::Closed => {
            let mut records: Vec<_> = space
                .classes
                .iter()
                .map(|c| (c.closed.clone(), c.extent.clone()))
                .collect();
            if args.sort {
                records.sort_by_key(|(p, _)| emit::pattern_key(p));
            }
            for (pattern, extent) in records {
                let c = miner::ClosedPattern { pattern, extent };
                emit::write_closed(&mut out, &c, &ds)?;
            }
        }
        OracleEmit::Generators => {
            let mut records: Vec<_> = space
                .classes
                .iter()
                .flat_map(|c| {
                    c.generators
                        .iter()
                        .map(|g| (g.clone(), c.extent.clone(), c.closed.clone()))
                })
                .collect();
            if args.sort {
                records.sort_by_key(|(p, _, _)| emit::pattern_key(p));
            }
            for (pattern, extent, closure) in records {
                let g = miner::GeneratorPattern {
                    pattern,
                    extent,
                    closure,
                };
                emit::write_generator(&mut out, &g, &ds)?;
            }
        }
    }
    out.flush()
        .map_err(|e| CliError::data(anyhow::anyhow!("cannot flush output: {e}")))
}

fn split_list(raw: &str) -> Vec<String> {
    raw.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::to_string)
        .collect()
}

struct BenchRow {
    min_support_raw: String,
    min_support: usize,
    mode: &'static str,
    store: String,
    patterns: u64,
    elapsed_ms: u64,
}

pub fn bench(args: BenchArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;

    let supports = split_list(&args.min_supports);
    if supports.is_empty() {
        return Err(CliError::usage(anyhow::anyhow!("--min-supports is empty")));
    }
    let modes = split_list(&args.modes);
    let stores = split_list(&args.stores);
    let mut rows = Vec::new();

    for raw_support in &supports {
        let minsup = resolve_min_support(raw_support, ds.object_count())?;
        let cfg = MinerConfig::new(minsup);
        for mode in &modes {
            match mode.as_str() {
                "closed" => {
                    let started = Instant::now();
                    let mut count = 0u64;
                    miner::closed::mine_closed_with(&ds, &cfg, |_| count += 1)
                        .map_err(CliError::usage)?;
                    rows.push(BenchRow {
                        min_support_raw: raw_support.clone(),
                        min_support: minsup,
                        mode: "closed",
                        store: "-".to_string(),
                        patterns: count,
                        elapsed_ms: started.elapsed().as_millis() as u64,
                    });
                }
                "generators" => {
                    for store in &stores {
                        let kind = match store.as_str() {
                            "trie" => StoreKind::Trie,
                            "hash" => StoreKind::Hash,
                            other => {
                                return Err(CliError::usage(anyhow::anyhow!(
                                    "unknown store `{other}` (expected trie or hash)"
                                )))
                            }
                        };
                        let started = Instant::now();
                        let mut count = 0u64;
                        miner::generators::mine_generators_with(&ds, &cfg, kind, |_| count += 1)
                            .map_err(CliError::usage)?;
                        rows.push(BenchRow {
                            min_support_raw: raw_support.clone(),
                            min_support: minsup,
                            mode: "generators",
                            store: store.clone(),
                            patterns: count,
                            elapsed_ms: started.elapsed().as_millis() as u64,
                        });
                    }
                }
                other => {
                    return Err(CliError::usage(anyhow::anyhow!(
                        "unknown mode `{other}` (expected closed or generators)"
                    )))
                }
            }
        }
    }

    println!(
        "{:<12} {:>8} {:<12} {:<6} {:>12} {:>10}",
        "min-support", "absolute", "mode", "store", "patterns", "ms"
    );
    for row in &rows {
        println!(
            "{:<12} {:>8} {:<12} {:<6} {:>12} {:>10}",
            row.min_support_raw, row.min_support, row.mode, row.store, row.patterns, row.elapsed_ms
        );
    }

    if let Some(path) = &args.csv {
        let mut file = emit::create_file(path)?;
        writeln!(
            file,
            "min_support_raw,min_support,mode,store,patterns,elapsed_ms"
        )
        .map_err(|e| CliError::data(anyhow::anyhow!("cannot write CSV: {e}")))?;
        for row in &rows {
            writeln!(
                file,
                "{},{},{},{},{},{}",
                row.min_support_raw,
                row.min_support,
                row.mode,
                row.store,
                row.patterns,
                row.elapsed_ms
            )
            .map_err(|e| CliError::data(anyhow::anyhow!("cannot write CSV: {e}")))?;
        }
    }
    Ok(())
}

pub fn stats(args: StatsArgs) -> Result<(), CliError> {
    let ds = load_dataset(&args.input)?;
    let minsup = resolve_min_support(&args.min_support, ds.object_count())?;
    let cfg = MinerConfig::new(minsup);

    let space = search_space_size(&ds);
    let space_f64 = space.to_f64().unwrap_or(f64::INFINITY);

    let mut closed = 0u64;
    miner::closed::mine_closed_with(&ds, &cfg, |_| closed += 1).map_err(CliError::usage)?;
    let mut generators = 0u64;
    miner::generators::mine_generators_with(&ds, &cfg, StoreKind::Trie, |_| generators += 1)
        .map_err(CliError::usage)?;

    let closed_ratio = closed as f64 / space_f64;
    let generator_ratio = generators as f64 / space_f64;

    if args.json {
        let record = json!({
            "dataset": args.input.display().to_string(),
            "objects": ds.object_count(),
            "attributes": ds.attribute_count(),
            "range_sizes": ds.ranges().iter().map(Vec::len).collect::<Vec<_>>(),
            "min_support": minsup,
            "search_space": space.to_string(),
            "closed": closed,
            "generators": generators,
            "closed_ratio": closed_ratio,
            "generator_ratio": generator_ratio,
        });
        println!("{record}");
    } else {
        println!(
            "dataset: {} ({} objects, {} attributes)",
            args.input.display(),
            ds.object_count(),
            ds.attribute_count()
        );
        println!("search space: {space} ({space_f64:.3e} patterns)");
        println!("closed patterns (min-support {minsup}): {closed} (ratio {closed_ratio:.3e})");
        println!("generators (min-support {minsup}): {generators} (ratio {generator_ratio:.3e})");
    }
    Ok(())
}
