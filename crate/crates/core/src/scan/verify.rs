//! Regression of the solver against the known solution tables.

use std::collections::BTreeSet;
use std::fmt;

use rayon::prelude::*;

use super::fixtures::{
    gaussian_set, rational_set, table_row, COUNT_TABLE, ONE_ONE_FIVE_FIVE,
    ROSENBERGER_TUPLES, TOTAL_COUNT,
};
use crate::error::Result;
use crate::qfield::{AlgInt, FieldDesc};
use crate::solver::{has_nontrivial, solve_ap, sort_triples, APTriple, MRInstance};

/// Radicands checked for agreement with `Q`.
pub const STABLE_IMAGINARY: &[i64] = &[-2, -3, -5, -7, -11, -19, -43, -163];

/// Outcome of one fixture row.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowCheck {
    pub section: &'static str,
    pub label: String,
    pub expected_count: usize,
    pub count: usize,
    pub missing: Vec<String>,
    pub unexpected: Vec<String>,
    /// Failure that is not a set difference (solver error, clause mismatch).
    pub note: Option<String>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.missing.is_empty()
            && self.unexpected.is_empty()
            && self.note.is_none()
            && self.count == self.expected_count
    }

    fn compare(section: &'static str, label: String, expected: Vec<APTriple>, got: Result<Vec<APTriple>>) -> Self {
        let expected = sort_triples(expected);
        match got {
            Ok(got) => {
                let e: BTreeSet<&APTriple> = expected.iter().collect();
                let g: BTreeSet<&APTriple> = got.iter().collect();
                RowCheck {
                    section,
                    label,
                    expected_count: expected.len(),
                    count: got.len(),
                    missing: e.difference(&g).map(|t| t.to_string()).collect(),
                    unexpected: g.difference(&e).map(|t| t.to_string()).collect(),
                    note: None,
                }
            }
            Err(err) => RowCheck {
                section,
                label,
                expected_count: expected.len(),
                count: 0,
                missing: Vec::new(),
                unexpected: Vec::new(),
                note: Some(err.to_string()),
            },
        }
    }
}

impl fmt::Display for RowCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [{}] {} count {}/{}", self.section, self.label, self.count, self.expected_count)?;
        for t in &self.missing {
            write!(f, "\n    - {t}")?;
        }
        for t in &self.unexpected {
            write!(f, "\n    + {t}")?;
        }
        if let Some(n) = &self.note {
            write!(f, "\n    ! {n}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyReport {
    pub rows: Vec<RowCheck>,
    /// Sum of the counts over all quadratic table rows.
    pub total: usize,
    pub expected_total: usize,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(RowCheck::passed) && self.total == self.expected_total
    }

    pub fn failures(&self) -> impl Iterator<Item = &RowCheck> {
        self.rows.iter().filter(|r| !r.passed())
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rows {
            writeln!(f, "{r}")?;
        }
        let verdict = if self.total == self.expected_total { "PASS" } else { "FAIL" };
        write!(f, "{verdict} [total] union of table rows {}/{}", self.total, self.expected_total)
    }
}

fn solve_ints(field: FieldDesc, a: i64, b: i64, c: i64, d: i64) -> Result<Vec<APTriple>> {
    Ok(solve_ap(&MRInstance::from_ints(field, a, b, c, d)?)?.triples)
}

fn lift_all(ts: &[APTriple], field: FieldDesc) -> Vec<APTriple> {
    ts.iter().filter_map(|t| t.lift(field)).collect()
}

fn rational_rows() -> Vec<RowCheck> {
    (1..=20)
        .into_par_iter()
        .map(|d| {
            let got = solve_ints(FieldDesc::RATIONAL, 1, 1, 1, d);
            RowCheck::compare("Q", format!("d={d}"), rational_set(d), got)
        })
        .collect()
}

fn gaussian_rows() -> Vec<RowCheck> {
    let f = FieldDesc::new(-1).expect("valid");
    [1, 2]
        .into_iter()
        .map(|d| {
            let want = gaussian_set(d).expect("fixture parses");
            RowCheck::compare("Q(i)", format!("d={d}"), want, solve_ints(f, 1, 1, 1, d))
        })
        .collect()
}

fn stable_imaginary_rows() -> Vec<RowCheck> {
    let keys: Vec<(i64, i64)> =
        STABLE_IMAGINARY.iter().flat_map(|&r| (1..=3).map(move |d| (d, r))).collect();
    keys.into_par_iter()
        .map(|(d, r)| {
            let f = FieldDesc::new(r).expect("valid");
            let want = lift_all(&rational_set(d), f);
            RowCheck::compare("imaginary", format!("d={d} D={r}"), want, solve_ints(f, 1, 1, 1, d))
        })
        .collect()
}

fn quadratic_rows() -> Vec<RowCheck> {
    COUNT_TABLE
        .par_iter()
        .map(|&(d, r, count)| {
            let f = FieldDesc::new(r).expect("valid");
            let mut want = lift_all(&rational_set(d), f);
            want.extend(table_row(d, r).expect("fixture row parses"));
            let mut row = RowCheck::compare("table", format!("d={d} D={r}"), want, solve_ints(f, 1, 1, 1, d));
            if row.expected_count != count && row.note.is_none() {
                row.note = Some(format!("fixture lists {} triples, count table says {count}", row.expected_count));
            }
            row
        })
        .collect()
}

fn rosenberger_rows() -> Vec<RowCheck> {
    let q = FieldDesc::RATIONAL;
    ROSENBERGER_TUPLES
        .iter()
        .enumerate()
        .map(|(i, &[a, b, c, d])| {
            let label = format!("({a},{b},{c},{d})");
            let run = || -> Result<(Vec<APTriple>, Option<String>)> {
                let inst = MRInstance::from_ints(q, a, b, c, d)?;
                let rep = solve_ap(&inst)?;
                let p1 = has_nontrivial(&inst)?;
                let mut note = None;
                if !p1.nontrivial {
                    note = Some("no nontrivial solution".to_string());
                } else if i < 5 && !p1.clause_a {
                    note = Some("clause (a) does not fire".to_string());
                } else if !(p1.clause_a_nontrivial || p1.clause_b_integral) {
                    note = Some("no clause accounts for the solution".to_string());
                }
                Ok((rep.triples, note))
            };
            let k = |n: i64| AlgInt::from_int(q, n);
            let known: Vec<APTriple> = if [a, b, c, d] == [1, 1, 5, 5] {
                ONE_ONE_FIVE_FIVE
                    .iter()
                    .map(|[x, y, z]| APTriple::from_terms(&k(*x), &k(*y), &k(*z)).expect("a.p."))
                    .collect()
            } else {
                Vec::new()
            };
            match run() {
                Ok((triples, note)) => {
                    let missing: Vec<String> =
                        known.iter().filter(|t| !triples.contains(t)).map(ToString::to_string).collect();
                    RowCheck {
                        section: "rosenberger",
                        label,
                        expected_count: triples.len(),
                        count: triples.len(),
                        missing,
                        unexpected: Vec::new(),
                        note,
                    }
                }
                Err(e) => RowCheck::compare("rosenberger", label, known, Err(e)),
            }
        })
        .collect()
}

/// Runs every fixture against the solver. Never panics on a mismatch.
pub fn verify_tables() -> VerifyReport {
    let mut rows = rational_rows();
    rows.extend(gaussian_rows());
    rows.extend(stable_imaginary_rows());
    let table = quadratic_rows();
    let total = table.iter().map(|r| r.count).sum();
    rows.extend(table);
    rows.extend(rosenberger_rows());
    VerifyReport { rows, total, expected_total: TOTAL_COUNT }
}
