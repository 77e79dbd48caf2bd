use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::{AlgNum, FieldDesc};
use crate::error::{Error, Result};

/// Element `u + v·ω` of the ring of integers.
///
/// For the rational field `v` is always zero.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct AlgInt {
    field: FieldDesc,
    u: BigInt,
    v: BigInt,
}

impl AlgInt {
    pub fn new(field: FieldDesc, u: impl Into<BigInt>, v: impl Into<BigInt>) -> Self {
        let v = v.into();
        assert!(
            !field.is_rational() || v.is_zero(),
            "rational integers have no omega coordinate"
        );
        AlgInt { field, u: u.into(), v }
    }

    pub fn from_int(field: FieldDesc, n: impl Into<BigInt>) -> Self {
        AlgInt { field, u: n.into(), v: BigInt::zero() }
    }

    pub fn zero(field: FieldDesc) -> Self {
        Self::from_int(field, 0)
    }

    pub fn one(field: FieldDesc) -> Self {
        Self::from_int(field, 1)
    }

    /// The basis element `ω`. Panics over `Q`.
    pub fn omega(field: FieldDesc) -> Self {
        Self::new(field, 0, 1)
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn u(&self) -> &BigInt {
        &self.u
    }

    pub fn v(&self) -> &BigInt {
        &self.v
    }

    pub fn is_zero(&self) -> bool {
        self.u.is_zero() && self.v.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.u.is_one() && self.v.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.v.is_zero()
    }

    /// Moves a rational integer into another field.
    pub fn lift(&self, field: FieldDesc) -> Option<AlgInt> {
        self.is_rational().then(|| AlgInt::from_int(field, self.u.clone()))
    }

    pub fn conj(&self) -> AlgInt {
        let (q, _) = self.field.omega_relation();
        AlgInt {
            field: self.field,
            u: &self.u + &self.v * q,
            v: -&self.v,
        }
    }

    /// Absolute norm. Over `Q` this is the element itself (degree-1 norm).
    pub fn norm(&self) -> BigInt {
        if self.field.is_rational() {
            return self.u.clone();
        }
        let (q, p) = self.field.omega_relation();
        &self.u * &self.u + &self.u * &self.v * q - &self.v * &self.v * p
    }

    pub fn abs_norm(&self) -> BigInt {
        self.norm().abs()
    }

    /// Trace. Over `Q` this is the element itself.
    pub fn trace(&self) -> BigInt {
        if self.field.is_rational() {
            return self.u.clone();
        }
        let (q, _) = self.field.omega_relation();
        &self.u * 2 + &self.v * q
    }

    pub fn is_unit(&self) -> bool {
        self.norm().abs().is_one()
    }

    /// `max(|u|, |v|)`: the box size used by the brute-force oracle.
    pub fn height(&self) -> BigInt {
        self.u.abs().max(self.v.abs())
    }

    /// `self / other` when the quotient lies in the ring.
    pub fn div_exact(&self, other: &AlgInt) -> Option<AlgInt> {
        debug_assert_eq!(self.field, other.field);
        if other.is_zero() {
            return None;
        }
        if self.field.is_rational() {
            let (q, r) = self.u.div_rem(&other.u);
            return r.is_zero().then(|| AlgInt::from_int(self.field, q));
        }
        let n = other.norm();
        let num = self * &other.conj();
        let (qu, ru) = num.u.div_rem(&n);
        let (qv, rv) = num.v.div_rem(&n);
        (ru.is_zero() && rv.is_zero()).then_some(AlgInt { field: self.field, u: qu, v: qv })
    }

    pub fn divides(&self, other: &AlgInt) -> bool {
        if self.is_zero() {
            return other.is_zero();
        }
        other.div_exact(self).is_some()
    }

    pub fn pow(&self, mut exp: u32) -> AlgInt {
        let mut base = self.clone();
        let mut acc = AlgInt::one(self.field);
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

    pub fn to_num(&self) -> AlgNum {
        let u = BigRational::from_integer(self.u.clone());
        let v = BigRational::from_integer(self.v.clone());
        if self.field.omega_is_half() {
            let half = BigRational::new(BigInt::one(), BigInt::from(2));
            AlgNum::new(self.field, u + &v * &half, v * half)
        } else {
            AlgNum::new(self.field, u, v)
        }
    }

    /// Sign of `s·t` where `self = s + t·sqrt(D)`. For real fields this is
    /// the sign of `|σ₁(x)| - |σ₂(x)|`, with `σ₁(sqrt(D)) > 0`.
    pub(crate) fn embedding_skew(&self) -> Sign {
        let (q, _) = self.field.omega_relation();
        let twice_s: BigInt = &self.u * 2 + &self.v * q;
        match (twice_s.sign(), self.v.sign()) {
            (Sign::NoSign, _) | (_, Sign::NoSign) => Sign::NoSign,
            (a, b) if a == b => Sign::Plus,
            _ => Sign::Minus,
        }
    }

    /// Sign of the image under `σ₁` (real or rational fields only).
    pub(crate) fn real_sign(&self) -> Sign {
        self.to_num().real_sign()
    }

    /// Parses `"u+v*a"`-style text (`"3"`, `"-a"`, `"2-7*a"`, `"4a+1"`).
    pub fn parse(field: FieldDesc, text: &str) -> Result<AlgInt> {
        let err = |reason: &str| Error::Parse { input: text.to_string(), reason: reason.to_string() };
        let compact: String = text.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(err("empty"));
        }
        let mut u = BigInt::zero();
        let mut v = BigInt::zero();
        let mut terms = Vec::new();
        let mut start = 0;
        for (i, ch) in compact.char_indices() {
            if (ch == '+' || ch == '-') && i > start {
                terms.push(&compact[start..i]);
                start = i;
            }
        }
        terms.push(&compact[start..]);
        for term in terms {
            let (neg, body) = match term.as_bytes().first() {
                Some(b'-') => (true, &term[1..]),
                Some(b'+') => (false, &term[1..]),
                _ => (false, term),
            };
            if body.is_empty() {
                return Err(err("dangling sign"));
            }
            let (is_omega, coeff) = match body.strip_suffix('a') {
                Some(c) => (true, c.strip_suffix('*').unwrap_or(c)),
                None => (false, body),
            };
            let mut value = if coeff.is_empty() {
                if !is_omega {
                    return Err(err("empty term"));
                }
                BigInt::one()
            } else {
                BigInt::from_str(coeff).map_err(|_| err("bad integer"))?
            };
            if neg {
                value = -value;
            }
            if is_omega {
                v += value;
            } else {
                u += value;
            }
        }
        if field.is_rational() && !v.is_zero() {
            return Err(err("omega term over Q"));
        }
        Ok(AlgInt { field, u, v })
    }
}

/// Renders `u+v*a` style text, the format used in every report.
pub(crate) fn render_coords<T: fmt::Display + Signed + Zero + One + PartialEq>(
    f: &mut fmt::Formatter<'_>,
    u: &T,
    v: &T,
) -> fmt::Result {
    if v.is_zero() {
        return write!(f, "{u}");
    }
    let omega_term = |f: &mut fmt::Formatter<'_>, mag: &T| {
        if mag.is_one() {
            write!(f, "a")
        } else {
            write!(f, "{mag}*a")
        }
    };
    if !u.is_zero() {
        write!(f, "{u}")?;
        write!(f, "{}", if v.is_negative() { "-" } else { "+" })?;
    } else if v.is_negative() {
        write!(f, "-")?;
    }
    omega_term(f, &v.abs())
}

impl fmt::Display for AlgInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        render_coords(f, &self.u, &self.v)
    }
}

impl Neg for &AlgInt {
    type Output = AlgInt;
    fn neg(self) -> AlgInt {
        AlgInt { field: self.field, u: -&self.u, v: -&self.v }
    }
}

impl Neg for AlgInt {
    type Output = AlgInt;
    fn neg(self) -> AlgInt {
        AlgInt { field: self.field, u: -self.u, v: -self.v }
    }
}

impl Add for &AlgInt {
    type Output = AlgInt;
    fn add(self, rhs: &AlgInt) -> AlgInt {
        debug_assert_eq!(self.field, rhs.field);
        AlgInt { field: self.field, u: &self.u + &rhs.u, v: &self.v + &rhs.v }
    }
}

impl Sub for &AlgInt {
    type Output = AlgInt;
    fn sub(self, rhs: &AlgInt) -> AlgInt {
        debug_assert_eq!(self.field, rhs.field);
        AlgInt { field: self.field, u: &self.u - &rhs.u, v: &self.v - &rhs.v }
    }
}

impl Mul for &AlgInt {
    type Output = AlgInt;
    fn mul(self, rhs: &AlgInt) -> AlgInt {
        debug_assert_eq!(self.field, rhs.field);
        let (q, p) = self.field.omega_relation();
        let vv = &self.v * &rhs.v;
        AlgInt {
            field: self.field,
            u: &self.u * &rhs.u + &vv * p,
            v: &self.u * &rhs.v + &self.v * &rhs.u + vv * q,
        }
    }
}

macro_rules! forward_owned {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr for AlgInt {
            type Output = AlgInt;
            fn $m(self, rhs: AlgInt) -> AlgInt { (&self).$m(&rhs) }
        }
        impl $tr<&AlgInt> for AlgInt {
            type Output = AlgInt;
            fn $m(self, rhs: &AlgInt) -> AlgInt { (&self).$m(rhs) }
        }
        impl $tr<AlgInt> for &AlgInt {
            type Output = AlgInt;
            fn $m(self, rhs: AlgInt) -> AlgInt { self.$m(&rhs) }
        }
    )*};
}

forward_owned!(Add add, Sub sub, Mul mul);

impl Mul<i64> for &AlgInt {
    type Output = AlgInt;
    fn mul(self, k: i64) -> AlgInt {
        AlgInt { field: self.field, u: &self.u * k, v: &self.v * k }
    }
}
