//! Command-line front end for `denum-core`.

pub mod families;
pub mod report;
pub mod verify;

use std::fs::File;
use std::io::Write;
use std::ops::RangeInclusive;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use denum_core::arith::parse_decimal;
use denum_core::denumerant::{denumerant_full_with, CaseTrace, LShapePreference};
use denum_core::floor_sums::{s_sum, FloorSumQuery, Sign};
use denum_core::lshape::{compute_lshapes, LShape};
use denum_core::semigroup::{apery_set, enumerate_factorizations, GeneratorTriple, ReducedTarget, ReductionCertificate};
use denum_core::{Integer, Semigroup3};
use serde_json::{json, Value};

use crate::families::Family;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] denum_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0} mismatches")]
    Mismatch(usize),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Mismatch(_) => 3,
            _ => 2,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "denum", about = "Exact denumerants of three-generated numerical semigroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Number of factorizations of M over the generators.
    Denumerant {
        #[command(flatten)]
        target: Target,
        #[arg(long, value_enum, default_value = "h1")]
        lshape_pref: Pref,
        #[arg(long)]
        json: bool,
    },
    /// Lists the factorizations (x, y, z) of M; pairwise coprime generators only.
    Factorizations {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// Minimum distance diagrams of a pairwise coprime triple.
    Lshape {
        #[arg(long, value_parser = parse_gens)]
        gens: [Integer; 3],
        #[arg(long)]
        json: bool,
    },
    /// Apery set of the semigroup with respect to M.
    Apery {
        #[command(flatten)]
        target: Target,
        #[arg(long)]
        json: bool,
    },
    /// sum_{k=0}^{N} floor((s +- k t) / q).
    Sums {
        #[arg(long, value_enum)]
        sign: SignArg,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        s: Integer,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        t: Integer,
        #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
        q: Integer,
        #[arg(long = "N", value_parser = parse_int, allow_hyphen_values = true)]
        n: Integer,
    },
    /// Exhaustive oracle sweep over pairwise coprime triples with c <= C.
    Verify {
        #[arg(long)]
        max_c: u64,
        /// Also enumerate factorizations for triples with abc up to this bound.
        #[arg(long, default_value_t = 3000)]
        enumeration_max_p: u64,
        #[arg(long)]
        json: bool,
    },
    /// Family table at m_k = P_k - S_k - k.
    Bench {
        #[arg(long)]
        family: Family,
        #[arg(long, value_parser = parse_k_range)]
        k_range: RangeInclusive<u32>,
        #[arg(long, value_enum, default_value = "h1")]
        lshape_pref: Pref,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        csv: Option<std::path::PathBuf>,
        /// Stop starting new rows after this many seconds.
        #[arg(long)]
        budget_secs: Option<f64>,
    },
}

#[derive(Args, Debug)]
struct Target {
    #[arg(long, value_parser = parse_gens)]
    gens: [Integer; 3],
    #[arg(long, value_parser = parse_int, allow_hyphen_values = true)]
    m: Integer,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Pref {
    H1,
    H2,
}

impl From<Pref> for LShapePreference {
    fn from(p: Pref) -> Self {
        match p {
            Pref::H1 => LShapePreference::H1,
            Pref::H2 => LShapePreference::H2,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum SignArg {
    Plus,
    Minus,
}

fn parse_int(s: &str) -> Result<Integer, String> {
    parse_decimal(s).map_err(|e| e.to_string())
}

fn parse_gens(s: &str) -> Result<[Integer; 3], String> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let [a, b, c] = parts.as_slice() else {
        return Err(format!("expected three comma-separated generators, got `{s}`"));
    };
    Ok([parse_int(a)?, parse_int(b)?, parse_int(c)?])
}

fn parse_k_range(s: &str) -> Result<RangeInclusive<u32>, String> {
    let bound = |x: &str| x.trim().parse::<u32>().map_err(|e| format!("bad k `{x}`: {e}"));
    let (lo, hi) = match s.split_once("..") {
        Some((lo, hi)) => (bound(lo)?, bound(hi.trim_start_matches('='))?),
        None => (bound(s)?, bound(s)?),
    };
    if lo == 0 || lo > hi {
        return Err(format!("need 1 <= lo <= hi, got `{s}`"));
    }
    Ok(lo..=hi)
}

/// Parses `args` (program name first), runs the command, and returns the exit code:
/// 0 success, 1 usage error, 2 domain or runtime error, 3 verification mismatch.
pub fn run<I, S>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let text = e.render().to_string();
            let _ = if code == 0 { out.write_all(text.as_bytes()) } else { err.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out, err) {
        Ok(()) => 0,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn pcn(gens: &[Integer; 3]) -> Result<Semigroup3, CliError> {
    let [a, b, c] = gens.clone();
    Ok(Semigroup3::new(a, b, c)?)
}

fn strings(xs: &[Integer]) -> Vec<String> {
    xs.iter().map(Integer::to_string).collect()
}

fn shape_json(s: &LShape) -> Value {
    json!({
        "l": s.l.to_string(), "h": s.h.to_string(), "w": s.w.to_string(), "y": s.y.to_string(),
        "delta": s.delta.to_string(), "theta": s.theta.to_string(),
    })
}

fn trace_json(trace: &CaseTrace) -> Value {
    let opt = |x: &Option<Integer>| x.as_ref().map(Integer::to_string);
    json!({
        "route": trace.route.to_string(),
        "case_id": trace.case_id.map(|c| c.to_string()),
        "period_quotient": trace.period_quotient.to_string(),
        "lshape": trace.lshape.as_ref().map(shape_json),
        "basic": trace.basic.as_ref().map(|b| strings(&[b.x0.clone(), b.y0.clone(), b.z0.clone()])),
        "a_m": opt(&trace.a_m),
        "k0": opt(&trace.k0),
        "k1": opt(&trace.k1),
        "a_part": opt(&trace.a_part),
        "b_part": opt(&trace.b_part),
        "sum_queries": trace.sum_queries.len(),
    })
}

fn certificate_json(c: &ReductionCertificate) -> Value {
    json!({
        "g": c.g.to_string(),
        "pair_gcds": strings(&[c.g_a.clone(), c.g_b.clone(), c.g_c.clone()]),
        "reduced": strings(&[c.reduced.a.clone(), c.reduced.b.clone(), c.reduced.c.clone()]),
        "m_reduced": match &c.m_reduced {
            ReducedTarget::Value(m) => m.to_string(),
            ReducedTarget::Negative => "negative".to_string(),
            ReducedTarget::Indivisible => "indivisible".to_string(),
        },
    })
}

fn execute(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<(), CliError> {
    match command {
        Command::Denumerant { target, lshape_pref, json } => {
            let [a, b, c] = target.gens.clone();
            let gens = GeneratorTriple::new(a, b, c)?;
            let (d, cert, trace) = denumerant_full_with(&gens, &target.m, lshape_pref.into())?;
            if json {
                let v = json!({
                    "gens": strings(&target.gens),
                    "m": target.m.to_string(),
                    "d": d.to_string(),
                    "certificate": certificate_json(&cert),
                    "trace": trace_json(&trace),
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
            } else {
                writeln!(out, "{d}")?;
            }
        }
        Command::Factorizations { target, json } => {
            let t = pcn(&target.gens)?;
            let list = enumerate_factorizations(&target.m, &t)?;
            if json {
                let rows: Vec<Vec<String>> = list.iter().map(|(x, y, z)| strings(&[x.clone(), y.clone(), z.clone()])).collect();
                writeln!(out, "{}", serde_json::to_string(&rows).expect("json"))?;
            } else {
                for (x, y, z) in &list {
                    writeln!(out, "{x} {y} {z}")?;
                }
            }
        }
        Command::Lshape { gens, json } => {
            let shapes = compute_lshapes(&pcn(&gens)?)?;
            if json {
                let v: Vec<Value> = shapes.iter().map(shape_json).collect();
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
            } else {
                for s in &shapes {
                    writeln!(out, "{s}")?;
                }
            }
        }
        Command::Apery { target, json } => {
            let set = apery_set(&target.m, &pcn(&target.gens)?)?;
            if json {
                writeln!(out, "{}", serde_json::to_string(&strings(&set)).expect("json"))?;
            } else {
                writeln!(out, "{}", strings(&set).join(" "))?;
            }
        }
        Command::Sums { sign, s, t, q, n } => {
            let sign = match sign {
                SignArg::Plus => Sign::Plus,
                SignArg::Minus => Sign::Minus,
            };
            writeln!(out, "{}", s_sum(&FloorSumQuery::new(sign, s, t, q, n)?))?;
        }
        Command::Verify { max_c, enumeration_max_p, json } => {
            let opts = verify::SweepOptions { max_c, enumeration_max_p };
            let report = verify::sweep(&opts)?;
            let missing: Vec<String> = report.missing_cases().iter().map(|c| c.to_string()).collect();
            if json {
                let cases: serde_json::Map<String, Value> = report.cases.iter().map(|(k, v)| (k.to_string(), json!(v))).collect();
                let mismatches: Vec<Value> = report
                    .mismatches
                    .iter()
                    .map(|m| json!({"triple": m.triple, "m": m.m, "diagram": m.diagram, "got": m.got, "expected": m.expected, "oracle": m.oracle}))
                    .collect();
                let v = json!({
                    "max_c": max_c,
                    "triples": report.triples,
                    "evaluations": report.evaluations,
                    "enumerated": report.enumerated,
                    "mismatches": mismatches,
                    "cases": cases,
                    "missing_cases": missing,
                });
                writeln!(out, "{}", serde_json::to_string_pretty(&v).expect("json"))?;
            } else {
                writeln!(out, "triples {}", report.triples)?;
                writeln!(out, "evaluations {}", report.evaluations)?;
                writeln!(out, "enumerated {}", report.enumerated)?;
                for (id, n) in &report.cases {
                    writeln!(out, "case {id} {n}")?;
                }
                writeln!(out, "missing cases {}", if missing.is_empty() { "none".to_string() } else { missing.join(" ") })?;
                for m in report.mismatches.iter().take(20) {
                    writeln!(out, "mismatch {} m={} diagram={:?} got {} expected {} ({})", m.triple, m.m, m.diagram, m.got, m.expected, m.oracle)?;
                }
                writeln!(out, "mismatches {}", report.mismatches.len())?;
            }
            if !report.mismatches.is_empty() {
                return Err(CliError::Mismatch(report.mismatches.len()));
            }
        }
        Command::Bench { family, k_range, lshape_pref, json, csv, budget_secs } => {
            let budget = budget_secs.map(Duration::from_secs_f64);
            let table = report::table_report(family, k_range, lshape_pref.into(), budget)?;
            if let Some(path) = &csv {
                report::write_csv(&table.records, File::create(path)?)?;
            }
            if json {
                writeln!(out, "{}", report::to_json(&table.records))?;
            } else if csv.is_none() {
                let mut buf = Vec::new();
                report::write_csv(&table.records, &mut buf)?;
                out.write_all(&buf)?;
            }
            if let Some(k) = table.truncated_at {
                writeln!(err, "warning: time budget exhausted, rows from k={k} on were not computed")?;
            }
        }
    }
    Ok(())
}
