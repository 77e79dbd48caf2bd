//! The two-term unit equation `k₁u₁ + k₂u₂ = c₀` for unit rank at most 1.
//!
//! Rank 0 is a finite search over torsion pairs. For a real quadratic
//! field write `x = ζ k₁ ε^m`. A solution forces `N(c₀ - x) = ±N(k₂)`, and
//! `N(c₀ - x) = N(c₀) + N(x) - Tr(c₀ x̄)`, hence
//!
//! ```text
//! |Tr(c₀ x̄)| <= |N(c₀)| + |N(k₁)| + |N(k₂)| =: C.
//! ```
//!
//! With `P = c̄₀ k₁ ε^m` one has `|Tr(c₀ x̄)| >= |σ₁(P)| - |σ₂(P)|`, which is
//! strictly increasing in `m >= 0`; for `P = s + t·sqrt(D)` it equals
//! `2·min(|s|, |t|·sqrt(D))` when `st > 0` and is `<= 0` otherwise. The
//! first `m` with `st > 0`, `2|s| > C` and `4t²D > C²` therefore bounds
//! every nonnegative exponent. Negative exponents use `Q = c₀ k̄₁ ε^j` the
//! same way. Everything is decided in exact rational arithmetic.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Signed;

use crate::error::{Error, Result};
use crate::normeq::{norm_divides, CandidateSet};
use crate::qfield::{AlgInt, FieldDesc, UnitExponent, UnitGroup};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct UnitSolution {
    pub u1: AlgInt,
    pub u2: AlgInt,
    pub exp1: UnitExponent,
    pub exp2: UnitExponent,
}

/// Least `M` such that every solution has `u₁ = ±ε^m` with `|m| <= M`.
pub fn exponent_bound(field: FieldDesc, k1: &AlgInt, k2: &AlgInt, c0: &AlgInt) -> Result<u64> {
    exponent_bound_with_units(&UnitGroup::new(field), k1, k2, c0)
}

pub fn exponent_bound_with_units(
    units: &UnitGroup,
    k1: &AlgInt,
    k2: &AlgInt,
    c0: &AlgInt,
) -> Result<u64> {
    if units.rank() == 0 {
        return Err(Error::RankZero);
    }
    if k1.is_zero() || k2.is_zero() || c0.is_zero() {
        return Err(Error::ZeroInput("exponent_bound"));
    }
    let cap = k2.abs_norm();
    Ok(bound_for_norm_cap(units, k1, c0, &cap))
}

/// Same bound with `|N(k₂)|` replaced by an upper bound `cap`.
fn bound_for_norm_cap(units: &UnitGroup, k1: &AlgInt, c0: &AlgInt, cap: &BigInt) -> u64 {
    let eps = units.fundamental().expect("rank 1");
    let c = c0.abs_norm() + k1.abs_norm() + cap;
    let c_sq = BigRational::from_integer(&c * &c);
    let c_half = BigRational::new(c, BigInt::from(2));
    let d = BigRational::from_integer(BigInt::from(units.field().radicand()));
    let four_d = &d * BigRational::from_integer(BigInt::from(4));
    let excluded = |p: &AlgInt| {
        let p = p.to_num();
        let (s, t) = (p.s(), p.t());
        let same_sign = (s.is_positive() && t.is_positive()) || (s.is_negative() && t.is_negative());
        same_sign && s.abs() > c_half && t * t * &four_d > c_sq
    };
    let first_excluded = |start: AlgInt| {
        let mut p = start;
        let mut m = 0u64;
        while !excluded(&p) {
            p = &p * eps;
            m += 1;
        }
        m
    };
    let pos = first_excluded(&c0.conj() * k1);
    let neg = first_excluded(c0 * &k1.conj());
    pos.max(neg).saturating_sub(1)
}

/// Complete, duplicate-free solution list of `k₁u₁ + k₂u₂ = c₀`.
pub fn unit_eq(field: FieldDesc, k1: &AlgInt, k2: &AlgInt, c0: &AlgInt) -> Result<Vec<UnitSolution>> {
    unit_eq_with_units(&UnitGroup::new(field), k1, k2, c0)
}

pub fn unit_eq_with_units(
    units: &UnitGroup,
    k1: &AlgInt,
    k2: &AlgInt,
    c0: &AlgInt,
) -> Result<Vec<UnitSolution>> {
    if k1.is_zero() || k2.is_zero() || c0.is_zero() {
        return Err(Error::ZeroInput("unit_eq"));
    }
    let mut out = Vec::new();
    for (exp1, u1) in first_units(units, k1, c0, &k2.abs_norm()) {
        let rest = c0 - &(k1 * &u1);
        if let Some(u2) = rest.div_exact(k2).filter(AlgInt::is_unit) {
            let exp2 = units.log(&u2).expect("unit");
            out.push(UnitSolution { u1, u2, exp1, exp2 });
        }
    }
    out.sort();
    Ok(out)
}

/// One solution of the unit equation against a whole candidate set `A₂`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct PairedSolution {
    pub k2: AlgInt,
    pub solution: UnitSolution,
}

/// Solves `k₁u₁ + k₂u₂ = c₀` for every `k₂` in `second` at once.
///
/// Since `second` holds every class whose norm divides its target, a value
/// `c₀ - k₁u₁` lies in `k₂·O*` for some member exactly when its norm divides
/// the target; `k₂` is then its canonical associate. Equivalent to calling
/// [`unit_eq`] for each member, at a fraction of the cost.
pub fn unit_eq_against(
    units: &UnitGroup,
    k1: &AlgInt,
    second: &CandidateSet,
    c0: &AlgInt,
) -> Result<Vec<PairedSolution>> {
    if k1.is_zero() || c0.is_zero() {
        return Err(Error::ZeroInput("unit_eq"));
    }
    let cap = BigInt::from(second.target_norm.clone());
    let mut out = Vec::new();
    for (exp1, u1) in first_units(units, k1, c0, &cap) {
        let rest = c0 - &(k1 * &u1);
        if rest.is_zero() || !norm_divides(&rest, &second.target_norm) {
            continue;
        }
        let k2 = units.canonical_associate(&rest)?;
        if !second.contains(&k2) {
            debug_assert!(false, "candidate set misses the class of {k2}");
            continue;
        }
        let u2 = rest.div_exact(&k2).expect("associate");
        let exp2 = units.log(&u2).expect("unit");
        out.push(PairedSolution { k2, solution: UnitSolution { u1, u2, exp1, exp2 } });
    }
    out.sort();
    Ok(out)
}

/// Every `u₁` that can occur, given `|N(k₂)| <= cap`.
fn first_units(
    units: &UnitGroup,
    k1: &AlgInt,
    c0: &AlgInt,
    cap: &BigInt,
) -> Vec<(UnitExponent, AlgInt)> {
    let torsion_range = 0..units.torsion_order();
    if units.rank() == 0 {
        return torsion_range
            .map(|t| {
                let e = UnitExponent { torsion: t, power: 0 };
                (e, units.element(e))
            })
            .collect();
    }
    let m = bound_for_norm_cap(units, k1, c0, cap) as i64;
    let mut out = Vec::new();
    for power in -m..=m {
        let eps_m = units.eps_pow(power);
        for t in torsion_range.clone() {
            let e = UnitExponent { torsion: t, power };
            out.push((e, &units.torsion()[t as usize] * &eps_m));
        }
    }
    out
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::normeq::candidate_sets_with_units;
    use crate::qfield::unit_group;

    fn f(d: i64) -> FieldDesc {
        FieldDesc::new(d).unwrap()
    }

    fn pairs(sols: &[UnitSolution]) -> Vec<(AlgInt, AlgInt)> {
        sols.iter().map(|s| (s.u1.clone(), s.u2.clone())).collect()
    }

    /// Oracle: try `±ε^m` for `|m| <= span` directly.
    fn brute(units: &UnitGroup, k1: &AlgInt, k2: &AlgInt, c0: &AlgInt, span: i64) -> Vec<(AlgInt, AlgInt)> {
        let span = if units.rank() == 0 { 0 } else { span };
        let mut out = Vec::new();
        for m in -span..=span {
            for z in units.torsion() {
                let u1 = z * &units.eps_pow(m);
                let rest = c0 - &(k1 * &u1);
                if let Some(u2) = rest.div_exact(k2) {
                    if u2.is_unit() {
                        out.push((u1, u2));
                    }
                }
            }
        }
        out.sort();
        out
    }

    #[test]
    fn rational_examples() {
        let q = FieldDesc::rational();
        let x = |k| AlgInt::from_int(q, k);
        let sols = unit_eq(q, &x(1), &x(5), &x(-4)).unwrap();
        assert_eq!(pairs(&sols), vec![(x(1), x(-1))]);
        let sols = unit_eq(q, &x(2), &x(2), &x(-4)).unwrap();
        assert_eq!(pairs(&sols), vec![(x(-1), x(-1))]);
    }

    #[test]
    fn sqrt2_example() {
        let k = f(2);
        let x = |u, v| AlgInt::new(k, u, v);
        let sols = unit_eq(k, &x(2, 0), &x(2, 0), &x(-4, 0)).unwrap();
        let mut got = pairs(&sols);
        got.sort();
        let mut want = vec![(x(-1, 0), x(-1, 0)), (x(-1, -1), x(-1, 1)), (x(-1, 1), x(-1, -1))];
        want.sort();
        assert_eq!(got, want);
        for s in &sols {
            assert_eq!(&(&x(2, 0) * &s.u1) + &(&x(2, 0) * &s.u2), x(-4, 0));
        }
        let m = exponent_bound(k, &x(2, 0), &x(2, 0), &x(-4, 0)).unwrap();
        assert!(m >= 1);
    }

    #[test]
    fn gaussian_example() {
        let k = f(-1);
        let x = |u, v| AlgInt::new(k, u, v);
        let sols = unit_eq(k, &x(2, 0), &x(2, 0), &x(-4, 0)).unwrap();
        assert_eq!(pairs(&sols), vec![(x(-1, 0), x(-1, 0))]);
    }

    #[test]
    fn preconditions() {
        let k = f(5);
        let one = AlgInt::one(k);
        let zero = AlgInt::zero(k);
        assert!(matches!(unit_eq(k, &one, &one, &zero), Err(Error::ZeroInput(_))));
        assert!(matches!(exponent_bound(k, &one, &one, &zero), Err(Error::ZeroInput(_))));
        let g = f(-1);
        let one = AlgInt::one(g);
        assert!(matches!(exponent_bound(g, &one, &one, &one), Err(Error::RankZero)));
    }

    #[test]
    fn bound_has_safety_margin() {
        for d in [2, 3, 5, 6, 7, 13] {
            let field = f(d);
            let units = unit_group(field);
            for (k1, k2, c0) in [((2, 0), (2, 0), (-4, 0)), ((1, 1), (3, -1), (7, 2)), ((5, 0), (1, 0), (-4, 0)), ((1, -2), (2, 3), (-6, 1))] {
                let k1 = AlgInt::new(field, k1.0, k1.1);
                let k2 = AlgInt::new(field, k2.0, k2.1);
                let c0 = AlgInt::new(field, c0.0, c0.1);
                let m = exponent_bound_with_units(&units, &k1, &k2, &c0).unwrap() as i64;
                let wide = brute(&units, &k1, &k2, &c0, 2 * m + 10);
                let solved = unit_eq_with_units(&units, &k1, &k2, &c0).unwrap();
                assert_eq!(pairs(&solved).len(), wide.len(), "D={d}");
                let mut got = pairs(&solved);
                got.sort();
                assert_eq!(got, wide);
                for s in &solved {
                    assert!(s.exp1.power.abs() <= m);
                }
            }
        }
    }

    #[test]
    fn swap_symmetry() {
        let field = f(2);
        let x = |u, v| AlgInt::new(field, u, v);
        let (k1, k2, c0) = (x(1, 1), x(3, 2), x(-4, 0));
        let ab = pairs(&unit_eq(field, &k1, &k2, &c0).unwrap());
        let mut ba: Vec<_> = pairs(&unit_eq(field, &k2, &k1, &c0).unwrap())
            .into_iter()
            .map(|(a, b)| (b, a))
            .collect();
        ba.sort();
        let mut ab = ab;
        ab.sort();
        assert_eq!(ab, ba);
    }

    #[test]
    fn batched_matches_pairwise() {
        for d in [1, -1, -3, 2, 5, 17] {
            let field = f(d);
            let units = unit_group(field);
            let one = AlgInt::one(field);
            let (a1, a2) = candidate_sets_with_units(&units, &one, &one, &one).unwrap();
            let c0 = AlgInt::from_int(field, -4);
            for k1 in &a1.members {
                let batched = unit_eq_against(&units, k1, &a2, &c0).unwrap();
                let mut pairwise = Vec::new();
                for k2 in &a2.members {
                    for s in unit_eq_with_units(&units, k1, k2, &c0).unwrap() {
                        pairwise.push(PairedSolution { k2: k2.clone(), solution: s });
                    }
                }
                pairwise.sort();
                assert_eq!(batched, pairwise, "D={d} k1={k1}");
            }
        }
    }
}
