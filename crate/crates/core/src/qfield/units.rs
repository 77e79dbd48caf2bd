//! Unit groups of quadratic rings of integers and canonical associates.

use num_bigint::{BigInt, Sign};
use num_integer::Roots;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use super::{AlgInt, AlgNum, FieldDesc};
use crate::error::{Error, Result};

/// A unit written as `ζ^torsion · ε^power`, `ζ` the torsion generator.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct UnitExponent {
    pub torsion: u32,
    pub power: i64,
}

/// Torsion units plus, for real quadratic fields, the fundamental unit `ε > 1`.
#[derive(Clone, Debug)]
pub struct UnitGroup {
    field: FieldDesc,
    torsion: Vec<AlgInt>,
    fundamental: Option<AlgInt>,
    fundamental_inv: Option<AlgInt>,
}

pub fn unit_group(field: FieldDesc) -> UnitGroup {
    UnitGroup::new(field)
}

/// Representative of the associate class of `x`; see [`UnitGroup::canonical_associate`].
pub fn canonical_associate(x: &AlgInt) -> Result<AlgInt> {
    unit_group(x.field()).canonical_associate(x)
}

pub fn is_associate(x: &AlgInt, y: &AlgInt) -> Result<bool> {
    x.field().check_same(&y.field())?;
    unit_group(x.field()).is_associate(x, y)
}

impl UnitGroup {
    pub fn new(field: FieldDesc) -> Self {
        let one = AlgInt::one(field);
        let generator = match field.radicand() {
            -1 => AlgInt::omega(field),
            // ω = (1+sqrt(-3))/2 is a primitive sixth root of unity
            -3 => AlgInt::omega(field),
            _ => -&one,
        };
        let mut torsion = vec![one.clone()];
        let mut z = generator.clone();
        while !z.is_one() {
            torsion.push(z.clone());
            z = &z * &generator;
        }
        let fundamental = field.is_real_quadratic().then(|| fundamental_unit(field));
        let fundamental_inv = fundamental.as_ref().map(|e| {
            let c = e.conj();
            if e.norm().is_one() {
                c
            } else {
                -c
            }
        });
        UnitGroup { field, torsion, fundamental, fundamental_inv }
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    /// Roots of unity `ζ^0, ζ^1, ...` in generator order.
    pub fn torsion(&self) -> &[AlgInt] {
        &self.torsion
    }

    pub fn torsion_order(&self) -> u32 {
        self.torsion.len() as u32
    }

    pub fn fundamental(&self) -> Option<&AlgInt> {
        self.fundamental.as_ref()
    }

    pub fn rank(&self) -> u32 {
        u32::from(self.fundamental.is_some())
    }

    /// `ε^m` for any integer `m`; `m = 0` for rank-0 groups.
    pub fn eps_pow(&self, m: i64) -> AlgInt {
        match (&self.fundamental, &self.fundamental_inv) {
            (Some(e), Some(ei)) => {
                let base = if m >= 0 { e } else { ei };
                base.pow(u32::try_from(m.unsigned_abs()).expect("exponent fits u32"))
            }
            _ => {
                assert_eq!(m, 0, "rank-0 unit group");
                AlgInt::one(self.field)
            }
        }
    }

    pub fn element(&self, e: UnitExponent) -> AlgInt {
        &self.torsion[e.torsion as usize] * &self.eps_pow(e.power)
    }

    /// Writes a unit as `ζ^i ε^m`. `None` if `u` is not a unit.
    pub fn log(&self, u: &AlgInt) -> Option<UnitExponent> {
        if !u.is_unit() {
            return None;
        }
        let mut y = u.clone();
        let mut power = 0i64;
        if let (Some(e), Some(ei)) = (&self.fundamental, &self.fundamental_inv) {
            // |σ₁(y)/σ₂(y)| = ε^(2m) for y = ±ε^m
            while y.embedding_skew() == Sign::Plus {
                y = &y * ei;
                power += 1;
            }
            while y.embedding_skew() == Sign::Minus {
                y = &y * e;
                power -= 1;
            }
        }
        let torsion = self.torsion.iter().position(|z| *z == y)? as u32;
        Some(UnitExponent { torsion, power })
    }

    pub fn is_unit(&self, x: &AlgInt) -> bool {
        x.is_unit()
    }

    /// Canonical representative of the associate class of a nonzero `x`.
    ///
    /// * `Q`: `|x|`.
    /// * imaginary fields: the torsion multiple with `u > 0, v >= 0` when
    ///   there are 4 or 6 roots of unity (the half-open cone between `1`
    ///   and `ω`), otherwise the one with positive real part (or positive
    ///   imaginary part when the real part vanishes).
    /// * real fields: the unique `±ε^m x` with `1 <= |σ₁/σ₂| < ε²`
    ///   and `σ₁ > 0`.
    pub fn canonical_associate(&self, x: &AlgInt) -> Result<AlgInt> {
        if x.is_zero() {
            return Err(Error::ZeroInput("canonical_associate"));
        }
        debug_assert_eq!(x.field(), self.field);
        if self.field.is_rational() {
            return Ok(if x.u() < &BigInt::zero() { -x } else { x.clone() });
        }
        if self.field.is_imaginary() {
            let wide = self.torsion.len() > 2;
            let (q, _) = self.field.omega_relation();
            let rep = self
                .torsion
                .iter()
                .map(|z| z * x)
                .find(|y| {
                    if wide {
                        y.u() > &BigInt::zero() && y.v() >= &BigInt::zero()
                    } else {
                        let twice_s: BigInt = y.u() * 2 + y.v() * q;
                        twice_s > BigInt::zero() || (twice_s.is_zero() && y.v() > &BigInt::zero())
                    }
                })
                .expect("some torsion multiple lies in the fundamental cone");
            return Ok(rep);
        }
        let e = self.fundamental.as_ref().expect("real field");
        let ei = self.fundamental_inv.as_ref().expect("real field");
        let mut y = x.clone();
        while y.embedding_skew() == Sign::Minus {
            y = &y * e;
        }
        loop {
            let down = &y * ei;
            if down.embedding_skew() == Sign::Minus {
                break;
            }
            y = down;
        }
        if y.real_sign() == Sign::Minus {
            y = -y;
        }
        Ok(y)
    }

    pub fn is_associate(&self, x: &AlgInt, y: &AlgInt) -> Result<bool> {
        Ok(self.canonical_associate(x)? == self.canonical_associate(y)?)
    }
}

/// Fundamental unit `ε > 1` of a real quadratic field, read off the
/// continued-fraction convergents `h/k` of `ω`: the first `h - kω` of
/// norm ±1, normalized to exceed 1.
fn fundamental_unit(field: FieldDesc) -> AlgInt {
    let d = i128::from(field.radicand());
    let root = d.sqrt();
    // complete quotient (p + sqrt(D))/q with q | D - p²
    let (mut p, mut q): (i128, i128) = if field.omega_is_half() { (1, 2) } else { (0, 1) };
    let (mut h_prev, mut h) = (BigInt::zero(), BigInt::one());
    let (mut k_prev, mut k) = (BigInt::one(), BigInt::zero());
    loop {
        debug_assert!(q > 0 && (d - p * p) % q == 0);
        let a = (p + root).div_euclid(q);
        let h_next = &h * a + &h_prev;
        let k_next = &k * a + &k_prev;
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let cand = AlgInt::new(field, h.clone(), -k.clone());
        if cand.is_unit() {
            return normalize_above_one(&cand);
        }
        p = a * q - p;
        q = (d - p * p) / q;
    }
}

/// The member of `{±x, ±conj(x)}` whose real embedding exceeds 1.
fn normalize_above_one(x: &AlgInt) -> AlgInt {
    let one = AlgNum::one(x.field());
    let c = x.conj();
    [x.clone(), -x, c.clone(), -c]
        .into_iter()
        .find(|y| y.to_num().real_cmp(&one).is_gt())
        .expect("a unit other than ±1 has a conjugate-sign variant above 1")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::qfield::util::{exact_sqrt, is_squarefree};

    fn f(d: i64) -> FieldDesc {
        FieldDesc::new(d).unwrap()
    }

    /// Smallest `v >= 1` with `disc·v² ± 4` a perfect square; the unit
    /// `(w + v·sqrt(disc))/2` is then the least unit above 1.
    fn pell_oracle(field: FieldDesc) -> AlgInt {
        let disc = BigInt::from(field.disc());
        let (q, _) = field.omega_relation();
        let mut v = BigInt::one();
        loop {
            for sign in [-4, 4] {
                if let Some(w) = exact_sqrt(&(&disc * &v * &v + sign)) {
                    let u = (w - &v * q) / 2;
                    return AlgInt::new(field, u, v);
                }
            }
            v += 1;
        }
    }

    #[test]
    fn small_fundamental_units() {
        let g = unit_group(f(2));
        assert_eq!(g.fundamental(), Some(&AlgInt::new(f(2), 1, 1)));
        let g = unit_group(f(5));
        assert_eq!(g.fundamental(), Some(&AlgInt::omega(f(5))));
        let g = unit_group(f(3));
        assert_eq!(g.fundamental(), Some(&AlgInt::new(f(3), 2, 1)));
    }

    #[test]
    fn big_unit_for_94() {
        let g = unit_group(f(94));
        assert_eq!(g.fundamental(), Some(&AlgInt::new(f(94), 2143295, 221064)));
    }

    #[test]
    fn continued_fraction_matches_pell_oracle() {
        for d in 2..=100 {
            if !is_squarefree(d) {
                continue;
            }
            let field = f(d);
            let g = unit_group(field);
            let eps = g.fundamental().unwrap();
            assert_eq!(eps, &pell_oracle(field), "D = {d}");
            assert!(eps.is_unit());
        }
    }

    #[test]
    fn torsion_groups() {
        assert_eq!(unit_group(f(-1)).torsion_order(), 4);
        assert_eq!(unit_group(f(-3)).torsion_order(), 6);
        assert_eq!(unit_group(f(-7)).torsion_order(), 2);
        assert_eq!(unit_group(f(13)).torsion_order(), 2);
        assert_eq!(unit_group(FieldDesc::rational()).torsion_order(), 2);
        let i = AlgInt::omega(f(-1));
        let tors = unit_group(f(-1)).torsion().to_vec();
        for z in [AlgInt::one(f(-1)), -AlgInt::one(f(-1)), i.clone(), -i] {
            assert!(tors.contains(&z));
        }
        for g in [unit_group(f(-1)), unit_group(f(-3)), unit_group(f(-5))] {
            let n = g.torsion_order();
            assert!(matches!(n, 2 | 4 | 6));
            for z in g.torsion() {
                assert!(z.pow(n).is_one());
            }
        }
    }

    #[test]
    fn unit_log_round_trip() {
        let g = unit_group(f(7));
        for torsion in 0..2 {
            for power in -4..=4 {
                let e = UnitExponent { torsion, power };
                assert_eq!(g.log(&g.element(e)), Some(e));
            }
        }
        let g = unit_group(f(-3));
        for torsion in 0..6 {
            let e = UnitExponent { torsion, power: 0 };
            assert_eq!(g.log(&g.element(e)), Some(e));
        }
        assert_eq!(g.log(&AlgInt::from_int(f(-3), 2)), None);
    }

    #[test]
    fn associate_examples() {
        let k = f(-1);
        assert!(is_associate(&AlgInt::new(k, 1, 2), &AlgInt::new(k, 2, -1)).unwrap());
        let k = f(2);
        assert!(is_associate(&AlgInt::from_int(k, 7), &AlgInt::new(k, 7, 7)).unwrap());
        let q = FieldDesc::rational();
        assert!(!is_associate(&AlgInt::from_int(q, 2), &AlgInt::from_int(q, 5)).unwrap());
        assert!(canonical_associate(&AlgInt::zero(k)).is_err());
    }

    #[test]
    fn canonical_is_constant_on_classes() {
        for d in [-3, -1, -2, -15, 2, 3, 5, 13, 46] {
            let field = f(d);
            let g = unit_group(field);
            let x = AlgInt::new(field, 5, -3);
            let rep = g.canonical_associate(&x).unwrap();
            assert_eq!(g.canonical_associate(&rep).unwrap(), rep);
            assert!(rep.div_exact(&x).unwrap().is_unit());
            let powers: &[i64] = if g.rank() == 1 { &[-3, -1, 0, 2, 5] } else { &[0] };
            for t in 0..g.torsion_order() {
                for &m in powers {
                    let y = &x * &g.element(UnitExponent { torsion: t, power: m });
                    assert_eq!(g.canonical_associate(&y).unwrap(), rep, "D={d} t={t} m={m}");
                }
            }
        }
    }
}
