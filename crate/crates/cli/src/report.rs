//! Family tables as records, with CSV and JSON output.

use std::io::Write;
use std::ops::RangeInclusive;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use denum_core::denumerant::{Denumerator, LShapePreference};
use denum_core::Integer;
use rayon::prelude::*;
use serde::Serialize;

use crate::families::Family;
use crate::CliError;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchRecord {
    pub family: Family,
    pub k: u32,
    pub gens: [Integer; 3],
    pub m: Integer,
    pub d: Integer,
    pub elapsed_ns: u64,
    pub case_id: String,
}

#[derive(Serialize)]
struct Row<'a> {
    family: String,
    k: u32,
    m: String,
    d: String,
    elapsed_ns: u64,
    case_id: &'a str,
}

#[derive(Serialize)]
struct JsonRecord<'a> {
    family: String,
    k: u32,
    gens: [String; 3],
    m: String,
    d: String,
    elapsed_ns: u64,
    case_id: &'a str,
}

impl BenchRecord {
    fn row(&self) -> Row<'_> {
        Row {
            family: self.family.to_string(),
            k: self.k,
            m: self.m.to_string(),
            d: self.d.to_string(),
            elapsed_ns: self.elapsed_ns,
            case_id: &self.case_id,
        }
    }

    fn json(&self) -> JsonRecord<'_> {
        JsonRecord {
            family: self.family.to_string(),
            k: self.k,
            gens: self.gens.clone().map(|g| g.to_string()),
            m: self.m.to_string(),
            d: self.d.to_string(),
            elapsed_ns: self.elapsed_ns,
            case_id: &self.case_id,
        }
    }
}

/// Evaluates one family member at its canonical target, timing the whole computation.
pub fn bench_one(family: Family, k: u32, pref: LShapePreference) -> Result<BenchRecord, CliError> {
    let t = family.semigroup(k)?;
    let m = Family::target(&t, k);
    let start = Instant::now();
    let (d, trace) = Denumerator::new(&t, pref)?.denumerant(&m)?;
    let elapsed_ns = start.elapsed().as_nanos().min(u64::MAX as u128) as u64;
    Ok(BenchRecord {
        family,
        k,
        gens: [t.a.clone(), t.b.clone(), t.c.clone()],
        m,
        d,
        elapsed_ns,
        case_id: trace.label(),
    })
}

/// Records in `k` order. Members not started before `budget` runs out are left out,
/// and the report is cut at the first missing one.
#[derive(Debug)]
pub struct TableReport {
    pub records: Vec<BenchRecord>,
    pub truncated_at: Option<u32>,
}

pub fn table_report(
    family: Family,
    ks: RangeInclusive<u32>,
    pref: LShapePreference,
    budget: Option<Duration>,
) -> Result<TableReport, CliError> {
    let start = Instant::now();
    let expired = AtomicBool::new(false);
    let results: Vec<Option<Result<BenchRecord, CliError>>> = ks
        .clone()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|k| {
            if budget.is_some_and(|b| start.elapsed() > b) {
                expired.store(true, Ordering::Relaxed);
                return None;
            }
            Some(bench_one(family, k, pref))
        })
        .collect();
    let mut records = Vec::new();
    let mut truncated_at = None;
    for (k, r) in ks.zip(results) {
        match r {
            Some(r) => records.push(r?),
            None => {
                truncated_at = Some(k);
                break;
            }
        }
    }
    Ok(TableReport { records, truncated_at })
}

pub const CSV_COLUMNS: [&str; 6] = ["family", "k", "m", "d", "elapsed_ns", "case_id"];

pub fn write_csv<W: Write>(records: &[BenchRecord], out: W) -> Result<(), CliError> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(CSV_COLUMNS)?;
    for r in records {
        w.serialize(r.row())?;
    }
    w.flush()?;
    Ok(())
}

pub fn to_json(records: &[BenchRecord]) -> String {
    let rows: Vec<JsonRecord<'_>> = records.iter().map(BenchRecord::json).collect();
    serde_json::to_string_pretty(&rows).expect("records serialize")
}
