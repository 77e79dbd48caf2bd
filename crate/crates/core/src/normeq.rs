//! Norm equations `|N(k)| = n` and the candidate sets `A₁`, `A₂`.
//!
//! Over a real quadratic field every associate class of norm `±n` has a
//! member `ξ` with `sqrt(n/ε) <= |σ₁(ξ)| <= sqrt(n·ε)`, so both
//! embeddings are bounded by `sqrt(n·ε)` and therefore
//! `v²·disc = (σ₁(ξ) - σ₂(ξ))² <= 4nε`. For each `v` in that range the
//! norm form `(2u + qv)² - disc·v² = ±4n` pins down `u` by an exact
//! square root. Imaginary fields use the same identity with `+|disc|`,
//! which bounds `v` directly.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::qfield::util::{ceil_rational, divisors, exact_sqrt, floor_sqrt};
use crate::qfield::{AlgInt, FieldDesc, UnitGroup};

/// Elements whose norm divides `|N(α·β)|`, one per associate class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateSet {
    pub alpha: AlgInt,
    pub beta: AlgInt,
    pub target_norm: BigUint,
    pub members: Vec<AlgInt>,
}

impl CandidateSet {
    pub fn contains(&self, k: &AlgInt) -> bool {
        self.members.binary_search(k).is_ok()
    }
}

/// All solutions of `|N(k)| = n`, one canonical representative per class,
/// sorted by coordinates.
pub fn norm_eq_solutions(field: FieldDesc, n: &BigUint) -> Vec<AlgInt> {
    norm_eq_with_units(&UnitGroup::new(field), n)
}

pub fn norm_eq_with_units(units: &UnitGroup, n: &BigUint) -> Vec<AlgInt> {
    assert!(!n.is_zero(), "norm equation needs n >= 1");
    let field = units.field();
    let n = BigInt::from(n.clone());
    if field.is_rational() {
        return vec![AlgInt::from_int(field, n)];
    }
    let disc = BigInt::from(field.disc());
    let (q, _) = field.omega_relation();
    let four_n = &n * 4;
    let v_max = if field.is_imaginary() {
        floor_sqrt(&(&four_n / disc.abs()))
    } else {
        let eps = units.fundamental().expect("real field").to_num();
        let (s, t) = (eps.s().abs(), eps.t().abs());
        // ceil(σ₁(ε)) <= ceil(s) + ceil(|t|)·ceil(sqrt(D))
        let root_d = floor_sqrt(&BigInt::from(field.radicand())) + 1;
        let eps_ceil = ceil_rational(&s) + ceil_rational(&t) * root_d;
        floor_sqrt(&(&four_n * eps_ceil / &disc))
    };
    let mut found = BTreeSet::new();
    let mut v = -v_max.clone();
    while v <= v_max {
        let dv2 = &disc * &v * &v;
        let targets: &[BigInt] = &[&dv2 + &four_n, &dv2 - &four_n];
        for rhs in targets {
            // imaginary fields: rhs = 4n - |disc| v² arises as dv2 + 4n with disc < 0
            let Some(w) = exact_sqrt(rhs) else { continue };
            for w in [w.clone(), -w] {
                let num = &w - &v * q;
                if num.is_even() {
                    let k = AlgInt::new(field, num / 2, v.clone());
                    debug_assert_eq!(k.abs_norm(), n);
                    found.insert(units.canonical_associate(&k).expect("nonzero"));
                }
            }
        }
        v += 1;
    }
    found.into_iter().collect()
}

/// `A₁`, `A₂` for the coefficients `a`, `b`, `c`: `α = a + c`,
/// `β₁ = b + 4c`, `β₂ = b + 4a`, members ranging over every divisor of
/// `|N(α β_i)|`.
pub fn candidate_sets(
    field: FieldDesc,
    a: &AlgInt,
    b: &AlgInt,
    c: &AlgInt,
) -> Result<(CandidateSet, CandidateSet)> {
    candidate_sets_with_units(&UnitGroup::new(field), a, b, c)
}

pub fn candidate_sets_with_units(
    units: &UnitGroup,
    a: &AlgInt,
    b: &AlgInt,
    c: &AlgInt,
) -> Result<(CandidateSet, CandidateSet)> {
    let field = units.field();
    for x in [a, b, c] {
        field.check_same(&x.field())?;
    }
    let alpha = a + c;
    if alpha.is_zero() {
        return Err(Error::Degenerate("a + c = 0"));
    }
    let beta1 = b + &(c * 4);
    let beta2 = b + &(a * 4);
    if beta1.is_zero() {
        return Err(Error::Degenerate("b + 4c = 0"));
    }
    if beta2.is_zero() {
        return Err(Error::Degenerate("b + 4a = 0"));
    }
    let build = |beta: AlgInt| {
        let target = (&alpha * &beta).abs_norm().magnitude().clone();
        let mut members: Vec<AlgInt> = divisors(&target)
            .iter()
            .flat_map(|n| norm_eq_with_units(units, n))
            .collect();
        members.sort();
        CandidateSet { alpha: alpha.clone(), beta, target_norm: target, members }
    };
    let first = build(beta1);
    let second = if first.beta == beta2 {
        CandidateSet { beta: beta2, ..first.clone() }
    } else {
        build(beta2)
    };
    Ok((first, second))
}

/// Whether `|N(x)|` divides `target` (`x != 0`).
pub(crate) fn norm_divides(x: &AlgInt, target: &BigUint) -> bool {
    let n = x.abs_norm();
    !n.is_zero() && (BigInt::from(target.clone()) % n).is_zero()
}
