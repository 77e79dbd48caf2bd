//! Batch runs of the solver over `(d, D)` grids, report files, a resumable
//! result journal, the imaginary-field shortlist and table regression.
//!
//! Only positive `d` are scanned: multiplying `d` by a unit `u` maps
//! `AP(a,b,c,du)` bijectively onto `AP(a,b,c,d)` via `t -> u·t`.

pub mod cache;
pub mod fixtures;
mod shortlist;
mod verify;

use std::collections::BTreeMap;
use std::io::Write;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::qfield::{AlgInt, FieldDesc};
use crate::solver::{solve_ap, APTriple, MRInstance, Pipeline};

pub use cache::{row_digest, CacheEntry, ResultCache, ScanKey};
pub use shortlist::{imaginary_shortlist, Shortlist};
pub use verify::{verify_tables, RowCheck, VerifyReport};

/// Printed at the top of every report file.
pub const OMEGA_HEADER: &str = crate::qfield::OMEGA_CONVENTION;

/// Triples column of a row whose solution set equals the one over `Q`.
pub const SAME_AS_RATIONAL: &str = "=Q";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum FieldSelection {
    /// Every field whose discriminant is a fundamental discriminant in
    /// `[min, max]`; `Q` itself is skipped.
    Discriminants { min: i64, max: i64 },
    /// Explicit radicands, reduced to squarefree parts and deduplicated.
    Radicands(Vec<i64>),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanSpec {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d_min: i64,
    pub d_max: i64,
    pub fields: FieldSelection,
}

impl ScanSpec {
    /// `a = b = c = 1` over `d_min..=d_max` and a discriminant window.
    pub fn markoff(d_min: i64, d_max: i64, disc_min: i64, disc_max: i64) -> Self {
        ScanSpec {
            a: 1,
            b: 1,
            c: 1,
            d_min,
            d_max,
            fields: FieldSelection::Discriminants { min: disc_min, max: disc_max },
        }
    }

    /// The long-running sweep `1 <= d <= 1000`, `1 < disc <= 10000`.
    pub fn full() -> Self {
        Self::markoff(1, 1000, 2, 10_000)
    }

    pub fn validate(&self) -> Result<()> {
        if self.d_min < 1 || self.d_min > self.d_max {
            return Err(Error::InvalidSpec(format!(
                "d range {}..={} must be nonempty and positive",
                self.d_min, self.d_max
            )));
        }
        if self.field_list()?.is_empty() {
            return Err(Error::InvalidSpec("no quadratic field in the selection".into()));
        }
        Ok(())
    }

    pub fn d_values(&self) -> impl Iterator<Item = i64> {
        self.d_min..=self.d_max
    }

    /// Selected quadratic fields, sorted by discriminant.
    pub fn field_list(&self) -> Result<Vec<FieldDesc>> {
        let mut out: Vec<FieldDesc> = match &self.fields {
            FieldSelection::Discriminants { min, max } => {
                if min > max {
                    return Err(Error::InvalidSpec(format!("empty discriminant range {min}..={max}")));
                }
                (*min..=*max).filter_map(FieldDesc::from_disc).collect()
            }
            FieldSelection::Radicands(list) => {
                list.iter().map(|&d| FieldDesc::new(d)).collect::<Result<_>>()?
            }
        };
        out.retain(|f| !f.is_rational());
        out.sort_by_key(|f| (f.disc(), f.radicand()));
        out.dedup();
        Ok(out)
    }

    pub fn keys(&self) -> Result<Vec<ScanKey>> {
        let fields = self.field_list()?;
        Ok(self
            .d_values()
            .flat_map(|d| fields.iter().map(move |f| self.key(d, *f)))
            .collect())
    }

    fn key(&self, d: i64, field: FieldDesc) -> ScanKey {
        ScanKey { a: self.a, b: self.b, c: self.c, d, radicand: field.radicand() }
    }
}

/// One `(d, D)` result.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRow {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    #[serde(rename = "D")]
    pub radicand: i64,
    pub disc: i64,
    pub count: usize,
    pub same_as_rational: bool,
    pub degenerate_fallback: bool,
    /// Every triple, rendered `first|diff`.
    pub triples: Vec<String>,
}

impl ScanRow {
    pub fn key(&self) -> ScanKey {
        ScanKey { a: self.a, b: self.b, c: self.c, d: self.d, radicand: self.radicand }
    }

    /// The triples column: the full list, or [`SAME_AS_RATIONAL`].
    pub fn triples_column(&self) -> String {
        if self.same_as_rational {
            SAME_AS_RATIONAL.to_string()
        } else {
            self.triples.join(";")
        }
    }

    fn build(key: ScanKey, field: FieldDesc, triples: &[APTriple], rational: &[APTriple], fallback: bool) -> Self {
        let lifted: Vec<APTriple> = rational.iter().filter_map(|t| t.lift(field)).collect();
        ScanRow {
            a: key.a,
            b: key.b,
            c: key.c,
            d: key.d,
            radicand: key.radicand,
            disc: field.disc(),
            count: triples.len(),
            same_as_rational: triples == lifted.as_slice(),
            degenerate_fallback: fallback,
            triples: triples.iter().map(ToString::to_string).collect(),
        }
    }
}

fn rational_int(field: FieldDesc, n: i64) -> AlgInt {
    AlgInt::from_int(field, n)
}

/// Solution sets over `Q` for every `d` in the scan.
fn rational_baseline(spec: &ScanSpec) -> Result<BTreeMap<i64, Vec<APTriple>>> {
    spec.d_values()
        .collect::<Vec<_>>()
        .into_par_iter()
        .map(|d| {
            let inst = MRInstance::from_ints(FieldDesc::RATIONAL, spec.a, spec.b, spec.c, d)?;
            Ok((d, solve_ap(&inst)?.triples))
        })
        .collect()
}

/// All rows of one field for the given `d` values.
fn field_rows(
    spec: &ScanSpec,
    field: FieldDesc,
    ds: &[i64],
    baseline: &BTreeMap<i64, Vec<APTriple>>,
) -> Result<Vec<ScanRow>> {
    let k = |n| rational_int(field, n);
    let pipeline = match Pipeline::new(&k(spec.a), &k(spec.b), &k(spec.c)) {
        Ok(p) => Some(p),
        Err(Error::Degenerate(_)) => None,
        Err(e) => return Err(e),
    };
    ds.iter()
        .map(|&d| {
            let report = match &pipeline {
                Some(p) => p.solve(&k(d))?,
                None => solve_ap(&MRInstance::from_ints(field, spec.a, spec.b, spec.c, d)?)?,
            };
            Ok(ScanRow::build(
                spec.key(d, field),
                field,
                &report.triples,
                &baseline[&d],
                report.degenerate_fallback,
            ))
        })
        .collect()
}

/// Runs the scan in memory. Rows are ordered by `d`, then discriminant.
pub fn scan(spec: &ScanSpec) -> Result<Vec<ScanRow>> {
    scan_inner(spec, None)
}

/// Runs the scan, skipping keys already in `cache` and journaling new rows.
pub fn scan_with_cache(spec: &ScanSpec, cache: &mut ResultCache) -> Result<Vec<ScanRow>> {
    scan_inner(spec, Some(cache))
}

fn scan_inner(spec: &ScanSpec, cache: Option<&mut ResultCache>) -> Result<Vec<ScanRow>> {
    spec.validate()?;
    let fields = spec.field_list()?;
    let ds: Vec<i64> = spec.d_values().collect();
    let baseline = rational_baseline(spec)?;

    let todo = |field: FieldDesc, cache: Option<&ResultCache>| -> Vec<i64> {
        ds.iter()
            .copied()
            .filter(|&d| cache.map_or(true, |c| c.get(&spec.key(d, field)).is_none()))
            .collect()
    };

    let mut rows: Vec<ScanRow> = match cache {
        None => fields
            .par_iter()
            .map(|&f| field_rows(spec, f, &ds, &baseline))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect(),
        Some(cache) => {
            let pending: Vec<(FieldDesc, Vec<i64>)> = fields
                .iter()
                .map(|&f| (f, todo(f, Some(cache))))
                .filter(|(_, ds)| !ds.is_empty())
                .collect();
            cache.record_parallel(pending, |(f, ds)| field_rows(spec, *f, ds, &baseline))?;
            spec.keys()?
                .iter()
                .map(|k| cache.get(k).map(|e| e.row.clone()).expect("journaled"))
                .collect()
        }
    };
    rows.sort_by_key(|r| (r.d, r.disc, r.radicand));
    Ok(rows)
}

pub const CSV_HEADER: &str = "a,b,c,d,D,disc,count,triples";

pub fn write_csv<W: Write>(rows: &[ScanRow], mut out: W) -> std::io::Result<()> {
    writeln!(out, "# {OMEGA_HEADER}")?;
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{}",
            r.a,
            r.b,
            r.c,
            r.d,
            r.radicand,
            r.disc,
            r.count,
            r.triples_column()
        )?;
    }
    Ok(())
}

#[derive(Serialize)]
struct JsonRow {
    a: i64,
    b: i64,
    c: i64,
    d: i64,
    #[serde(rename = "D")]
    radicand: i64,
    disc: i64,
    count: usize,
    triples: String,
}

#[derive(Serialize)]
struct JsonReport<'a> {
    omega_convention: &'a str,
    rows: Vec<JsonRow>,
}

pub fn write_json<W: Write>(rows: &[ScanRow], mut out: W) -> std::io::Result<()> {
    let report = JsonReport {
        omega_convention: OMEGA_HEADER,
        rows: rows
            .iter()
            .map(|r| JsonRow {
                a: r.a,
                b: r.b,
                c: r.c,
                d: r.d,
                radicand: r.radicand,
                disc: r.disc,
                count: r.count,
                triples: r.triples_column(),
            })
            .collect(),
    };
    serde_json::to_writer_pretty(&mut out, &report)?;
    writeln!(out)
}
