//! Bounded brute force over `x` and the common difference `Y`.
//!
//! For fixed `x` the equation becomes a quadratic in `Y`:
//!
//! ```text
//! (b + 4c - 2dx)Y² + (2b + 4c - 3dx)x·Y + ((a+b+c) - dx)x² = 0
//! ```
//!
//! so the inner loop is one exact square root instead of a second box scan.

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::qfield::{AlgInt, AlgNum, FieldDesc};
use crate::solver::{sort_triples, verify_triple, APTriple, MRInstance};

/// Bound on `|u|` and `|v|` of both `first` and `diff`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HeightBound(u64);

impl HeightBound {
    pub fn new(h: u64) -> Result<Self> {
        if h == 0 {
            return Err(Error::InvalidSpec("height bound must be at least 1".into()));
        }
        Ok(HeightBound(h))
    }

    pub fn get(self) -> u64 {
        self.0
    }

    fn contains(self, x: &AlgInt) -> bool {
        x.height() <= BigInt::from(self.0)
    }
}

/// Every element with both ω-coordinates in `[-h, h]`.
pub fn box_elements(field: FieldDesc, h: u64) -> Vec<AlgInt> {
    let h = h as i64;
    if field.is_rational() {
        return (-h..=h).map(|u| AlgInt::from_int(field, u)).collect();
    }
    (-h..=h)
        .flat_map(|u| (-h..=h).map(move |v| AlgInt::new(field, u, v)))
        .collect()
}

/// All a.p. triples with `first` and `diff` of height at most `bound`.
pub fn brute_force_ap(inst: &MRInstance, bound: HeightBound) -> Vec<APTriple> {
    let field = inst.field();
    let xs = box_elements(field, bound.get());
    let found: Vec<APTriple> = xs
        .par_iter()
        .flat_map_iter(|x| {
            differences(inst, x, bound)
                .into_iter()
                .map(move |y| APTriple::new(x.clone(), y))
        })
        .collect();
    debug_assert!(found.iter().all(|t| verify_triple(inst, t)));
    sort_triples(found)
}

fn differences(inst: &MRInstance, x: &AlgInt, bound: HeightBound) -> Vec<AlgInt> {
    let field = inst.field();
    let (a, b, c, d) = (inst.a(), inst.b(), inst.c(), inst.d());
    let dx = d * x;
    let qa = &(b + &(c * 4)) - &(&dx * 2);
    let qb = &(&(b * 2) + &(c * 4)) - &(&dx * 3);
    let qb = &qb * x;
    let qc = &(&(&(a + b) + c) - &dx) * &(x * x);

    let keep = |y: AlgNum| -> Option<AlgInt> {
        let y = y.to_alg_int()?;
        bound.contains(&y).then_some(y)
    };
    if qa.is_zero() {
        if qb.is_zero() {
            return if qc.is_zero() { box_elements(field, bound.get()) } else { Vec::new() };
        }
        return keep(-(qc.to_num() / qb.to_num())).into_iter().collect();
    }
    let disc = &(&qb * &qb) - &(&(&qa * &qc) * 4);
    let Some(root) = disc.to_num().sqrt() else {
        return Vec::new();
    };
    let two_a = (&qa * 2).to_num();
    let neg_b = -qb.to_num();
    let mut out: Vec<AlgInt> = [&neg_b + &root, &neg_b - &root]
        .into_iter()
        .filter_map(|num| keep(num / &two_a))
        .collect();
    out.dedup();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(a: i64, b: i64, c: i64, d: i64) -> MRInstance {
        MRInstance::from_ints(FieldDesc::RATIONAL, a, b, c, d).unwrap()
    }

    fn t(f: i64, y: i64, z: i64) -> APTriple {
        let k = |n| AlgInt::from_int(FieldDesc::RATIONAL, n);
        APTriple::from_terms(&k(f), &k(y), &k(z)).unwrap()
    }

    #[test]
    fn markoff_d3() {
        let got = brute_force_ap(&q(1, 1, 1, 3), HeightBound::new(20).unwrap());
        let want = sort_triples([t(0, 0, 0), t(1, 1, 1), t(-5, -2, 1), t(1, -2, -5)]);
        assert_eq!(got, want);
    }

    #[test]
    fn d5_trivial_only() {
        let got = brute_force_ap(&q(1, 1, 1, 5), HeightBound::new(50).unwrap());
        assert_eq!(got, vec![t(0, 0, 0)]);
    }

    #[test]
    fn height_one_and_zero() {
        assert!(HeightBound::new(0).is_err());
        let got = brute_force_ap(&q(1, 1, 1, 7), HeightBound::new(1).unwrap());
        assert!(got.contains(&t(0, 0, 0)));
    }

    #[test]
    fn monotone_in_height() {
        let f = FieldDesc::new(2).unwrap();
        let inst = MRInstance::from_ints(f, 1, 1, 1, 1).unwrap();
        let small = brute_force_ap(&inst, HeightBound::new(4).unwrap());
        let large = brute_force_ap(&inst, HeightBound::new(8).unwrap());
        assert!(small.iter().all(|t| large.contains(t)));
        assert!(large.iter().all(|t| verify_triple(&inst, t)));
    }

    #[test]
    fn matches_naive_scan() {
        let f = FieldDesc::new(-1).unwrap();
        let inst = MRInstance::from_ints(f, 1, 1, 1, 2).unwrap();
        let h = 3;
        let bx = box_elements(f, h);
        let mut naive = Vec::new();
        for x in &bx {
            for y in &bx {
                let cand = APTriple::new(x.clone(), y.clone());
                if verify_triple(&inst, &cand) {
                    naive.push(cand);
                }
            }
        }
        assert_eq!(brute_force_ap(&inst, HeightBound::new(h).unwrap()), sort_triples(naive));
    }
}
