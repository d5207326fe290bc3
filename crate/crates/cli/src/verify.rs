//! Exhaustive comparison of the closed forms with the independent oracles.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use denum_core::denumerant::{CaseId, Denumerator, LShapePreference};
use denum_core::semigroup::{count_factorizations, denumerant_oracle_table, OracleBudget};
use denum_core::{Integer, Result, Semigroup3};
use rayon::prelude::*;

#[derive(Clone, Debug)]
pub struct SweepOptions {
    pub max_c: u64,
    /// Triples with `P` up to this bound are also checked by enumeration.
    pub enumeration_max_p: u64,
}

impl SweepOptions {
    pub fn new(max_c: u64) -> Self {
        Self { max_c, enumeration_max_p: 3000 }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mismatch {
    pub triple: String,
    pub m: u64,
    /// Diagram index, or `None` for the full pipeline.
    pub diagram: Option<usize>,
    pub got: String,
    pub expected: String,
    pub oracle: &'static str,
}

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    pub triples: u64,
    pub evaluations: u64,
    pub enumerated: u64,
    pub mismatches: Vec<Mismatch>,
    pub cases: BTreeMap<CaseId, u64>,
    pub elapsed: Duration,
}

impl SweepReport {
    pub fn missing_cases(&self) -> Vec<CaseId> {
        CaseId::all().into_iter().filter(|id| !self.cases.contains_key(id)).collect()
    }

    fn merge(mut self, other: SweepReport) -> SweepReport {
        self.triples += other.triples;
        self.evaluations += other.evaluations;
        self.enumerated += other.enumerated;
        self.mismatches.extend(other.mismatches);
        for (id, n) in other.cases {
            *self.cases.entry(id).or_default() += n;
        }
        self
    }
}

/// Pairwise coprime `1 <= a < b < c <= max_c`.
pub fn pcn_triples(max_c: u64) -> Vec<Semigroup3> {
    (3..=max_c)
        .flat_map(|c| (2..c).flat_map(move |b| (1..b).map(move |a| (a, b, c))))
        .filter_map(|(a, b, c)| Semigroup3::from_u64(a, b, c).ok())
        .collect()
}

/// For every triple and `0 <= m <= P`: every diagram's closed form against the layer
/// table, the full pipeline where it takes a different route, and enumeration on small triples.
pub fn sweep(opts: &SweepOptions) -> Result<SweepReport> {
    let start = Instant::now();
    let triples = pcn_triples(opts.max_c);
    let mut report = triples
        .par_iter()
        .map(|t| check_triple(t, opts))
        .try_reduce(SweepReport::default, |a, b| Ok(a.merge(b)))?;
    report.mismatches.sort_by(|a, b| (&a.triple, a.m).cmp(&(&b.triple, b.m)));
    report.elapsed = start.elapsed();
    Ok(report)
}

fn check_triple(t: &Semigroup3, opts: &SweepOptions) -> Result<SweepReport> {
    let mut report = SweepReport { triples: 1, ..Default::default() };
    let p = u64::try_from(&t.p).expect("small triple");
    let s = u64::try_from(&t.s).expect("small triple");
    let table = denumerant_oracle_table(t, p)?;
    let h1 = Denumerator::new(t, LShapePreference::H1)?;
    let h2 = Denumerator::new(t, LShapePreference::H2)?;
    let shapes = h1.lshapes().count();
    let fail = |m: u64, diagram, got: &Integer, expected: &Integer, oracle| Mismatch {
        triple: t.to_string(),
        m,
        diagram,
        got: got.to_string(),
        expected: expected.to_string(),
        oracle,
    };
    for m in 0..=p {
        let mi = Integer::from(m);
        let expected = Integer::from(table[m as usize]);
        for index in 0..shapes {
            let (v, trace) = h1.closed_form(&mi, index)?;
            report.evaluations += 1;
            if let Some(id) = trace.case_id {
                *report.cases.entry(id).or_default() += 1;
            }
            if v != expected {
                report.mismatches.push(fail(m, Some(index), &v, &expected, "layers"));
            }
        }
        if m + s > p {
            for d in [&h1, &h2] {
                let (v, _) = d.denumerant(&mi)?;
                report.evaluations += 1;
                if v != expected {
                    report.mismatches.push(fail(m, None, &v, &expected, "layers"));
                }
            }
        }
        if p <= opts.enumeration_max_p {
            let listed = count_factorizations(&mi, t, &OracleBudget::default())?;
            report.enumerated += 1;
            if listed != expected {
                report.mismatches.push(fail(m, None, &listed, &expected, "enumeration"));
            }
        }
    }
    Ok(report)
}
