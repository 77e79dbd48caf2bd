//! Known solution sets for `x² + y² + z² = dxyz` and its relatives, used as
//! regression data.
//!
//! Table entries are `(first, diff)` pairs written in a basis element `α`
//! that is `sqrt(D)` when `D = 2, 3 (mod 4)` and `(-1 + sqrt(D))/2 = ω - 1`
//! when `D = 1 (mod 4)`. [`table_triple`] converts them to the `ω` basis.

use crate::error::Result;
use crate::qfield::{AlgInt, FieldDesc};
use crate::solver::APTriple;

/// Nontrivial triples for `a = b = c = 1` over `Q`, by `d`. Any other `d`
/// has only `(0, 0, 0)`.
pub const RATIONAL_SETS: &[(i64, &[[i64; 3]])] = &[
    (1, &[[3, 3, 3], [-15, -6, 3], [3, -6, -15]]),
    (3, &[[1, 1, 1], [-5, -2, 1], [1, -2, -5]]),
];

/// Full solution lists over `Q(i)` as term triples (`a = i`).
pub const GAUSSIAN_SETS: &[(i64, &[[&str; 3]])] = &[
    (
        1,
        &[
            ["0", "0", "0"],
            ["3", "3", "3"],
            ["-15", "-6", "3"],
            ["3", "-6", "-15"],
            ["2", "2+2a", "2+4a"],
            ["2", "2-2a", "2-4a"],
            ["2+a", "2", "2-a"],
            ["2-a", "2", "2+a"],
            ["2+a", "-1+2a", "-4+3a"],
            ["2-a", "-1-2a", "-4-3a"],
            ["-1+2a", "-1", "-1-2a"],
            ["-1-2a", "-1", "-1+2a"],
            ["2+4a", "2+2a", "2"],
            ["2-4a", "2-2a", "2"],
            ["-4+3a", "-1+2a", "2+a"],
            ["-4-3a", "-1-2a", "2-a"],
        ],
    ),
    (
        2,
        &[
            ["0", "0", "0"],
            ["1+2a", "1+a", "1"],
            ["1-2a", "1-a", "1"],
            ["1", "1+a", "1+2a"],
            ["1", "1-a", "1-2a"],
        ],
    ),
];

/// Non-rational triples over `Q(sqrt(D))` for `a = b = c = 1`, keyed by
/// `(d, D)`, in the table basis `α`.
pub const QUADRATIC_TABLE: &[(i64, i64, &[(&str, &str)])] = &[
    (
        1,
        -1,
        &[
            ("a+2", "a-3"),
            ("-a+2", "a"),
            ("2a-1", "-2a"),
            ("a+2", "-a"),
            ("-4a+2", "2a"),
            ("-3a-4", "a+3"),
            ("-2a-1", "2a"),
            ("4a+2", "-2a"),
            ("2", "2a"),
            ("2", "-2a"),
            ("3a-4", "-a+3"),
            ("-a+2", "-a-3"),
        ],
    ),
    (
        1,
        2,
        &[
            ("4a+8", "-4a"),
            ("11a-13", "-23a-6"),
            ("-4a+8", "4a"),
            ("-7a-7", "7a"),
            ("-11a-13", "23a-6"),
            ("-35a-25", "23a+6"),
            ("35a-25", "-23a+6"),
            ("7a-7", "-7a"),
        ],
    ),
    (1, 3, &[("9a+18", "-9a"), ("-9a+18", "9a")]),
    (
        1,
        5,
        &[
            ("-35a-5", "22a+11"),
            ("22a-11", "-22a-11"),
            ("-7a-6", "4a+5"),
            ("-9a+8", "22a+11"),
            ("35a+30", "-22a-11"),
            ("-7a-9", "2a+7"),
            ("a+4", "-5a+2"),
            ("-3a+5", "-2a-7"),
            ("-a+3", "4a-1"),
            ("7a+1", "-4a+1"),
            ("-a+3", "5a+7"),
            ("14a-3", "-10a-2"),
            ("-14a-17", "10a+8"),
            ("9a+17", "-22a-11"),
            ("-22a-33", "22a+11"),
            ("3a+8", "2a-5"),
            ("7a-2", "-2a+5"),
            ("-9a+8", "5a-2"),
            ("9a+17", "-5a-7"),
            ("6a-1", "-10a-8"),
            ("-6a-7", "10a+2"),
            ("a+4", "-4a-5"),
        ],
    ),
    (1, 6, &[("-6a-12", "6a"), ("6a-12", "-6a"), ("3a-3", "-3a"), ("-3a-3", "3a")]),
    (1, 11, &[("-2a-4", "4a-6"), ("6a-16", "-4a+6"), ("-6a-16", "4a+6"), ("2a-4", "-4a-6")]),
    (1, 14, &[("-2a-4", "2a"), ("2a-4", "-2a")]),
    (1, 17, &[("4a+13", "a-10"), ("-4a+9", "-a-11"), ("6a-7", "-a+10"), ("-6a-13", "a+11")]),
    (1, 21, &[("3a-3", "9"), ("-3a+12", "-9"), ("-3a-6", "9"), ("3a+15", "-9")]),
    (
        1,
        29,
        &[
            ("-11a-32", "7a+14"),
            ("11a-21", "-7a+7"),
            ("3a-4", "-2a+5"),
            ("-3a-7", "2a+7"),
            ("a+7", "-2a-7"),
            ("-3a-7", "7a-7"),
            ("-a+6", "2a-5"),
            ("3a-4", "-7a-14"),
        ],
    ),
    (
        1,
        41,
        &[
            ("-4a+15", "a-10"),
            ("2a-3", "-a+4"),
            ("5", "-a-5"),
            ("2a-3", "a+11"),
            ("-2a-5", "a+5"),
            ("5", "a-4"),
            ("4a+19", "-a-11"),
            ("-2a-5", "-a+10"),
        ],
    ),
    (2, -1, &[("1", "-a"), ("2a+1", "-a"), ("1", "a"), ("-2a+1", "a")]),
    (2, 2, &[("-2a+4", "2a"), ("2a+4", "-2a")]),
    (2, 6, &[("3a-6", "-3a"), ("-3a-6", "3a")]),
    (2, 11, &[("-3a-8", "2a+3"), ("3a-8", "-2a+3"), ("a-2", "-2a-3"), ("-a-2", "2a-3")]),
    (2, 14, &[("-a-2", "a"), ("a-2", "-a")]),
    (3, 3, &[("3a+6", "-3a"), ("-3a+6", "3a")]),
    (3, 6, &[("a-1", "-a"), ("-2a-4", "2a"), ("-a-1", "a"), ("2a-4", "-2a")]),
    (3, 21, &[("a+5", "-3"), ("a-1", "3"), ("-a+4", "-3"), ("-a-2", "3")]),
    (4, 2, &[("a+2", "-a"), ("-a+2", "a")]),
    (6, 6, &[("-a-2", "a"), ("a-2", "-a")]),
    (7, 2, &[("a-1", "-a"), ("-a-1", "a")]),
    (9, 3, &[("a+2", "-a"), ("-a+2", "a")]),
    (11, 5, &[("-2a-3", "2a+1"), ("2a-1", "-2a-1")]),
];

/// `#AP` for each `(d, D)` row, rational triples and `(0, 0, 0)` included.
pub const COUNT_TABLE: &[(i64, i64, usize)] = &[
    (1, -1, 16),
    (1, 2, 12),
    (1, 3, 6),
    (1, 5, 26),
    (1, 6, 8),
    (1, 11, 8),
    (1, 14, 6),
    (1, 17, 8),
    (1, 21, 8),
    (1, 29, 12),
    (1, 41, 12),
    (2, -1, 5),
    (2, 2, 3),
    (2, 6, 3),
    (2, 11, 5),
    (2, 14, 3),
    (3, 3, 6),
    (3, 6, 8),
    (3, 21, 8),
    (4, 2, 3),
    (6, 6, 3),
    (7, 2, 3),
    (9, 3, 3),
    (11, 5, 3),
];

/// Size of the union of all the rows above.
pub const TOTAL_COUNT: usize = 178;

/// Coefficient tuples `(a, b, c, d)` satisfying the classical divisibility
/// conditions, all with nontrivial a.p. solutions over `Q`.
pub const ROSENBERGER_TUPLES: &[[i64; 4]] =
    &[[1, 1, 1, 1], [1, 1, 1, 3], [1, 1, 2, 2], [1, 1, 2, 4], [1, 2, 3, 6], [1, 1, 5, 5]];

/// Triples known to lie in `AP(1, 1, 5, 5)` over `Q`.
pub const ONE_ONE_FIVE_FIVE: &[[i64; 3]] = &[[-3, -1, 1], [-7, -1, 5]];

/// Imaginary `(d, D)` with more solutions than over `Q`.
pub const IMAGINARY_EXCEPTIONS: &[(i64, i64)] = &[(1, -1), (2, -1)];

/// An element written in the table basis, moved to the `ω` basis.
pub fn table_element(field: FieldDesc, text: &str) -> Result<AlgInt> {
    let x = AlgInt::parse(field, text)?;
    if field.omega_is_half() {
        // u + v(ω - 1)
        Ok(AlgInt::new(field, x.u() - x.v(), x.v().clone()))
    } else {
        Ok(x)
    }
}

pub fn table_triple(field: FieldDesc, first: &str, diff: &str) -> Result<APTriple> {
    Ok(APTriple::new(table_element(field, first)?, table_element(field, diff)?))
}

/// The table row for `(d, D)` as triples in the `ω` basis.
pub fn table_row(d: i64, radicand: i64) -> Option<Vec<APTriple>> {
    let (_, _, entries) = QUADRATIC_TABLE.iter().find(|(dd, r, _)| *dd == d && *r == radicand)?;
    let field = FieldDesc::new(radicand).ok()?;
    entries
        .iter()
        .map(|(f, y)| table_triple(field, f, y).ok())
        .collect()
}

pub fn rational_set(d: i64) -> Vec<APTriple> {
    let q = FieldDesc::RATIONAL;
    let k = |n: i64| AlgInt::from_int(q, n);
    let mut out = vec![APTriple::zero(q)];
    if let Some((_, list)) = RATIONAL_SETS.iter().find(|(dd, _)| *dd == d) {
        out.extend(list.iter().map(|[x, y, z]| APTriple::from_terms(&k(*x), &k(*y), &k(*z)).unwrap()));
    }
    out
}

pub fn gaussian_set(d: i64) -> Option<Vec<APTriple>> {
    let f = FieldDesc::new(-1).ok()?;
    let (_, list) = GAUSSIAN_SETS.iter().find(|(dd, _)| *dd == d)?;
    list.iter()
        .map(|[x, y, z]| {
            let p = |s: &str| AlgInt::parse(f, s).ok();
            APTriple::from_terms(&p(x)?, &p(y)?, &p(z)?)
        })
        .collect()
}
