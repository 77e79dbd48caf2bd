use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_bigint::{BigInt, Sign};
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::alg_int::render_coords;
use super::util::rational_sqrt;
use super::{AlgInt, FieldDesc};

/// Field element `s + t·sqrt(D)` with exact rational coordinates.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgNum {
    field: FieldDesc,
    s: BigRational,
    t: BigRational,
}

impl AlgNum {
    pub fn new(field: FieldDesc, s: BigRational, t: BigRational) -> Self {
        assert!(!field.is_rational() || t.is_zero(), "rational numbers have no sqrt(D) part");
        AlgNum { field, s, t }
    }

    pub fn from_rational(field: FieldDesc, s: BigRational) -> Self {
        AlgNum { field, s, t: BigRational::zero() }
    }

    pub fn from_int(field: FieldDesc, n: impl Into<BigInt>) -> Self {
        Self::from_rational(field, BigRational::from_integer(n.into()))
    }

    pub fn zero(field: FieldDesc) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: FieldDesc) -> Self {
        Self::from_int(field, 1)
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    /// Rational part `s`.
    pub fn s(&self) -> &BigRational {
        &self.s
    }

    /// Coefficient `t` of `sqrt(D)`.
    pub fn t(&self) -> &BigRational {
        &self.t
    }

    pub fn is_zero(&self) -> bool {
        self.s.is_zero() && self.t.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.t.is_zero()
    }

    pub fn conj(&self) -> AlgNum {
        AlgNum { field: self.field, s: self.s.clone(), t: -&self.t }
    }

    fn radicand(&self) -> BigRational {
        BigRational::from_integer(BigInt::from(self.field.radicand()))
    }

    /// `s² - D t²`; over `Q` the degree-1 norm, i.e. the number itself.
    pub fn norm(&self) -> BigRational {
        if self.field.is_rational() {
            return self.s.clone();
        }
        &self.s * &self.s - self.radicand() * &self.t * &self.t
    }

    /// `2s`; over `Q` the number itself.
    pub fn trace(&self) -> BigRational {
        if self.field.is_rational() {
            return self.s.clone();
        }
        &self.s * BigRational::from_integer(BigInt::from(2))
    }

    pub fn inv(&self) -> Option<AlgNum> {
        if self.is_zero() {
            return None;
        }
        let n = &self.s * &self.s - self.radicand() * &self.t * &self.t;
        Some(AlgNum { field: self.field, s: &self.s / &n, t: -&self.t / &n })
    }

    pub fn checked_div(&self, rhs: &AlgNum) -> Option<AlgNum> {
        rhs.inv().map(|r| self * &r)
    }

    /// Coordinates in the integral basis `{1, ω}`; they may be fractions.
    pub fn omega_coords(&self) -> (BigRational, BigRational) {
        if self.field.omega_is_half() {
            let two = BigRational::from_integer(BigInt::from(2));
            (&self.s - &self.t, &self.t * two)
        } else {
            (self.s.clone(), self.t.clone())
        }
    }

    /// Membership in the ring of integers: both ω-coordinates are integers.
    pub fn to_alg_int(&self) -> Option<AlgInt> {
        let (u, v) = self.omega_coords();
        (u.is_integer() && v.is_integer())
            .then(|| AlgInt::new(self.field, u.to_integer(), v.to_integer()))
    }

    pub fn is_integral(&self) -> bool {
        self.to_alg_int().is_some()
    }

    /// A square root inside the field, when one exists.
    pub fn sqrt(&self) -> Option<AlgNum> {
        let field = self.field;
        if self.is_zero() {
            return Some(AlgNum::zero(field));
        }
        if field.is_rational() {
            return rational_sqrt(&self.s).map(|r| AlgNum::from_rational(field, r));
        }
        let d = self.radicand();
        let half = BigRational::new(BigInt::one(), BigInt::from(2));
        if self.t.is_zero() {
            // (p)² = s or (q·sqrt(D))² = D q² = s
            if let Some(p) = rational_sqrt(&self.s) {
                return Some(AlgNum::from_rational(field, p));
            }
            return rational_sqrt(&(&self.s / &d))
                .map(|q| AlgNum { field, s: BigRational::zero(), t: q });
        }
        // r = p + q·sqrt(D): p² + D q² = s, 2pq = t, p² - D q² = ±sqrt(N(x)).
        let n = rational_sqrt(&self.norm())?;
        for cand in [&self.s + &n, &self.s - &n] {
            let p2 = cand * &half;
            if let Some(p) = rational_sqrt(&p2) {
                if p.is_zero() {
                    continue;
                }
                let q = &self.t * &half / &p;
                let r = AlgNum { field, s: p, t: q };
                if &(&r * &r) == self {
                    return Some(r);
                }
            }
        }
        None
    }

    /// Sign of `σ₁(self)`, the embedding with `sqrt(D) > 0`. Panics for
    /// imaginary fields.
    pub fn real_sign(&self) -> Sign {
        assert!(!self.field.is_imaginary(), "no real embedding");
        let ss = self.s.sign_num();
        let ts = self.t.sign_num();
        if ts == 0 {
            return to_sign(ss);
        }
        if ss == 0 || ss == ts {
            return to_sign(ts);
        }
        // opposite signs: compare s² with D t²
        match (&self.s * &self.s).cmp(&(self.radicand() * &self.t * &self.t)) {
            Ordering::Greater => to_sign(ss),
            Ordering::Less => to_sign(ts),
            Ordering::Equal => Sign::NoSign,
        }
    }

    /// Compares `σ₁(self)` with `σ₁(other)` exactly (real or rational fields).
    pub fn real_cmp(&self, other: &AlgNum) -> Ordering {
        match (self - other).real_sign() {
            Sign::Minus => Ordering::Less,
            Sign::NoSign => Ordering::Equal,
            Sign::Plus => Ordering::Greater,
        }
    }

    pub fn pow(&self, mut exp: u32) -> AlgNum {
        let mut base = self.clone();
        let mut acc = AlgNum::one(self.field);
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }
}

trait SignNum {
    fn sign_num(&self) -> i8;
}

impl SignNum for BigRational {
    fn sign_num(&self) -> i8 {
        if self.is_positive() {
            1
        } else if self.is_negative() {
            -1
        } else {
            0
        }
    }
}

fn to_sign(s: i8) -> Sign {
    match s {
        1 => Sign::Plus,
        -1 => Sign::Minus,
        _ => Sign::NoSign,
    }
}

impl From<&AlgInt> for AlgNum {
    fn from(x: &AlgInt) -> Self {
        x.to_num()
    }
}

impl From<AlgInt> for AlgNum {
    fn from(x: AlgInt) -> Self {
        x.to_num()
    }
}

impl fmt::Display for AlgNum {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (u, v) = self.omega_coords();
        render_coords(f, &u, &v)
    }
}

impl Neg for &AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        AlgNum { field: self.field, s: -&self.s, t: -&self.t }
    }
}

impl Neg for AlgNum {
    type Output = AlgNum;
    fn neg(self) -> AlgNum {
        -&self
    }
}

impl Add for &AlgNum {
    type Output = AlgNum;
    fn add(self, rhs: &AlgNum) -> AlgNum {
        debug_assert_eq!(self.field, rhs.field);
        AlgNum { field: self.field, s: &self.s + &rhs.s, t: &self.t + &rhs.t }
    }
}

impl Sub for &AlgNum {
    type Output = AlgNum;
    fn sub(self, rhs: &AlgNum) -> AlgNum {
        debug_assert_eq!(self.field, rhs.field);
        AlgNum { field: self.field, s: &self.s - &rhs.s, t: &self.t - &rhs.t }
    }
}

impl Mul for &AlgNum {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        debug_assert_eq!(self.field, rhs.field);
        let tt = &self.t * &rhs.t;
        AlgNum {
            field: self.field,
            s: &self.s * &rhs.s + self.radicand() * tt,
            t: &self.s * &rhs.t + &self.t * &rhs.s,
        }
    }
}

/// Panics on division by zero, like the primitive numeric types.
impl Div for &AlgNum {
    type Output = AlgNum;
    fn div(self, rhs: &AlgNum) -> AlgNum {
        self.checked_div(rhs).expect("division by zero")
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: AlgNum) -> AlgNum { (&self).$m(&rhs) }
        }
        impl $tr<&AlgNum> for AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: &AlgNum) -> AlgNum { (&self).$m(rhs) }
        }
        impl $tr<AlgNum> for &AlgNum {
            type Output = AlgNum;
            fn $m(self, rhs: AlgNum) -> AlgNum { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul, Div div);

impl Mul<&AlgNum> for i64 {
    type Output = AlgNum;
    fn mul(self, rhs: &AlgNum) -> AlgNum {
        let k = BigRational::from_integer(BigInt::from(self));
        AlgNum { field: rhs.field, s: &rhs.s * &k, t: &rhs.t * k }
    }
}

impl Mul<AlgNum> for i64 {
    type Output = AlgNum;
    fn mul(self, rhs: AlgNum) -> AlgNum {
        self * &rhs
    }
}
