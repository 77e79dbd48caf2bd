//! Reduction of the imaginary-quadratic case to finitely many `(d, D)`.
//!
//! Every member of `A_i` has norm dividing `T = max |N(α β_i)|`. A member
//! with a nonzero `ω`-coordinate has norm at least `|D|` (or `|D|/4` when
//! `D = 1 mod 4`), so beyond those bounds the candidate sets and units are
//! the rational ones. Such a field can only gain solutions through the
//! `sqrt(Δ)` branch when `Δ(t)` is `D` times a square for a rational `t`;
//! those radicands are added to the search.
//!
//! For each field, `w = z·d` does not depend on `d`. An integral `z` needs
//! `d | w`, hence `d² | N(w) = r·s²` with `r` squarefree, i.e. `d | s`.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::qfield::util::{divisors, is_squarefree, squarefree_part};
use crate::qfield::{AlgInt, FieldDesc};
use crate::solver::{solve_ap, APTriple, MRInstance, Pipeline};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Shortlist {
    /// Radicands searched, in increasing absolute value.
    pub radicands: Vec<i64>,
    /// `(d, D)` pairs left by the norm factorization, sorted.
    pub candidates: Vec<(i64, i64)>,
    /// Candidates whose solution set over `Q(sqrt(D))` is larger than over `Q`.
    pub exceptions: Vec<(i64, i64)>,
}

/// Largest `|N(α β_i)|` over `Q(sqrt(D))`, i.e. `(α β_i)²`.
fn norm_bound(a: i64, b: i64, c: i64) -> Result<u64> {
    let alpha = BigInt::from(a) + c;
    let t = [BigInt::from(b) + 4 * c, BigInt::from(b) + 4 * a]
        .iter()
        .map(|beta| {
            let p = &alpha * beta;
            &p * &p
        })
        .max()
        .expect("two entries");
    if t.is_zero() {
        return Err(Error::Degenerate("a + c, b + 4c or b + 4a vanishes"));
    }
    t.to_u64().ok_or_else(|| Error::InvalidSpec("coefficients too large for the shortlist".into()))
}

fn imaginary_radicands(bound: u64) -> Vec<i64> {
    let bound = bound as i64;
    (1..=4 * bound)
        .map(|m| -m)
        .filter(|&d| is_squarefree(d))
        .filter(|&d| d.rem_euclid(4) == 1 || -d <= bound)
        .collect()
}

/// Negative squarefree cores of `Δ(t)` for the rational `t` values.
fn branch_radicands(a: i64, b: i64, c: i64) -> Result<BTreeSet<i64>> {
    let q = FieldDesc::RATIONAL;
    let inst = MRInstance::from_ints(q, a, b, c, 1)?;
    let rep = solve_ap(&inst)?;
    Ok(rep
        .records
        .iter()
        .filter_map(|r| r.extension.as_ref())
        .filter_map(|e| e.u().to_i64())
        .filter(|&r| r < 0)
        .collect())
}

/// Shortlist of `(d, D)` for `a x² + b y² + c z² = dxyz` over imaginary
/// quadratic fields, filtered by running the solver on every candidate.
pub fn imaginary_shortlist(a: i64, b: i64, c: i64) -> Result<Shortlist> {
    let bound = norm_bound(a, b, c)?;
    let mut radicands = imaginary_radicands(bound);
    radicands.extend(branch_radicands(a, b, c)?);
    radicands.sort_by_key(|d| (d.abs(), *d));
    radicands.dedup();

    let rational_cache: std::sync::Mutex<BTreeMap<i64, Vec<APTriple>>> = Default::default();
    let rational = |d: i64| -> Result<Vec<APTriple>> {
        if let Some(t) = rational_cache.lock().expect("poisoned").get(&d) {
            return Ok(t.clone());
        }
        let t = solve_ap(&MRInstance::from_ints(FieldDesc::RATIONAL, a, b, c, d)?)?.triples;
        rational_cache.lock().expect("poisoned").insert(d, t.clone());
        Ok(t)
    };

    let per_field: Vec<(Vec<(i64, i64)>, Vec<(i64, i64)>)> = radicands
        .par_iter()
        .map(|&dd| -> Result<_> {
            let field = FieldDesc::new(dd)?;
            let k = |n: i64| AlgInt::from_int(field, n);
            let pipeline = Pipeline::new(&k(a), &k(b), &k(c))?;
            let mut ds = BTreeSet::new();
            for w in pipeline.scaled_candidates() {
                let n = w.norm();
                if w.is_zero() || !n.is_integer() {
                    continue;
                }
                let (_, s) = squarefree_part(&n.to_integer());
                let s: BigUint = s.abs().to_biguint().expect("nonnegative");
                ds.extend(divisors(&s).iter().filter_map(|x| x.to_i64()));
            }
            let mut exceptions = Vec::new();
            for &d in &ds {
                let got = pipeline.solve(&k(d))?.triples;
                let base: Vec<APTriple> = rational(d)?.iter().filter_map(|t| t.lift(field)).collect();
                if got != base {
                    exceptions.push((d, dd));
                }
            }
            Ok((ds.into_iter().map(|d| (d, dd)).collect(), exceptions))
        })
        .collect::<Result<_>>()?;

    let mut candidates: Vec<(i64, i64)> = per_field.iter().flat_map(|(c, _)| c.iter().copied()).collect();
    let mut exceptions: Vec<(i64, i64)> = per_field.into_iter().flat_map(|(_, e)| e).collect();
    candidates.sort_unstable();
    exceptions.sort_unstable();
    Ok(Shortlist { radicands, candidates, exceptions })
}
