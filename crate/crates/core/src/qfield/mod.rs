//! Exact arithmetic in `Q` and in quadratic fields `Q(sqrt(D))`.
//!
//! A field is identified by its squarefree radicand `D`; `D = 1` is the
//! rational field. Integral elements are kept in the basis `{1, a}` where
//! `a` (written `ω` in the docs) is `sqrt(D)` for `D = 2, 3 (mod 4)` and
//! `(1 + sqrt(D))/2` for `D = 1 (mod 4)`. General field elements are
//! kept as `s + t*sqrt(D)` with rational `s`, `t`.

mod alg_int;
mod alg_num;
mod units;
pub mod util;

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub use alg_int::AlgInt;
pub use alg_num::AlgNum;
pub use units::{canonical_associate, is_associate, unit_group, UnitExponent, UnitGroup};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FieldKind {
    Rational,
    Quadratic,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Signature {
    Rational,
    Imaginary,
    Real,
}

/// `Q` (radicand 1) or `Q(sqrt(D))` for a squarefree `D != 0, 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "i64", into = "i64")]
pub struct FieldDesc {
    radicand: i64,
}

impl FieldDesc {
    pub const RATIONAL: FieldDesc = FieldDesc { radicand: 1 };

    /// Builds the field `Q(sqrt(d))`. `d` is reduced to its squarefree
    /// part first, so `new(12)` is `Q(sqrt(3))` and `new(4)` is `Q`.
    pub fn new(d: i64) -> Result<Self> {
        if d == 0 {
            return Err(Error::ZeroRadicand);
        }
        let (core, _) = util::squarefree_part_i64(d);
        Ok(FieldDesc { radicand: core })
    }

    pub fn rational() -> Self {
        Self::RATIONAL
    }

    /// The squarefree radicand `D`; 1 for the rational field.
    pub fn radicand(&self) -> i64 {
        self.radicand
    }

    pub fn kind(&self) -> FieldKind {
        if self.is_rational() {
            FieldKind::Rational
        } else {
            FieldKind::Quadratic
        }
    }

    pub fn signature(&self) -> Signature {
        match self.radicand {
            1 => Signature::Rational,
            d if d < 0 => Signature::Imaginary,
            _ => Signature::Real,
        }
    }

    pub fn is_rational(&self) -> bool {
        self.radicand == 1
    }

    pub fn is_real_quadratic(&self) -> bool {
        self.radicand > 1
    }

    pub fn is_imaginary(&self) -> bool {
        self.radicand < 0
    }

    pub fn degree(&self) -> u32 {
        if self.is_rational() {
            1
        } else {
            2
        }
    }

    /// Whether `ω = (1 + sqrt(D))/2`.
    pub fn omega_is_half(&self) -> bool {
        !self.is_rational() && self.radicand.rem_euclid(4) == 1
    }

    /// Field discriminant: `D` when `D = 1 (mod 4)`, else `4D`; 1 for `Q`.
    pub fn disc(&self) -> i64 {
        match self.radicand {
            1 => 1,
            d if d.rem_euclid(4) == 1 => d,
            d => 4 * d,
        }
    }

    /// The field with the given fundamental discriminant, if it is one.
    pub fn from_disc(disc: i64) -> Option<Self> {
        if disc == 1 {
            return Some(Self::RATIONAL);
        }
        if disc.rem_euclid(4) == 1 && util::is_squarefree(disc) {
            return Some(FieldDesc { radicand: disc });
        }
        if disc % 4 == 0 {
            let m = disc / 4;
            if matches!(m.rem_euclid(4), 2 | 3) && util::is_squarefree(m) {
                return Some(FieldDesc { radicand: m });
            }
        }
        None
    }

    /// `(q, p)` with `ω² = q·ω + p`.
    pub(crate) fn omega_relation(&self) -> (i64, i64) {
        if self.omega_is_half() {
            (1, (self.radicand - 1) / 4)
        } else if self.is_rational() {
            (0, 0)
        } else {
            (0, self.radicand)
        }
    }

    /// Human-readable statement of the integral basis, printed in report headers.
    pub fn omega_convention(&self) -> String {
        match self.radicand {
            1 => "integers of Q".to_string(),
            d if self.omega_is_half() => format!("a = (1+sqrt({d}))/2"),
            d => format!("a = sqrt({d})"),
        }
    }

    pub(crate) fn check_same(&self, other: &FieldDesc) -> Result<()> {
        if self == other {
            Ok(())
        } else {
            Err(Error::FieldMismatch(self.to_string(), other.to_string()))
        }
    }
}

impl fmt::Display for FieldDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.radicand {
            1 => write!(f, "Q"),
            -1 => write!(f, "Q(i)"),
            d => write!(f, "Q(sqrt({d}))"),
        }
    }
}

impl TryFrom<i64> for FieldDesc {
    type Error = Error;

    fn try_from(d: i64) -> Result<Self> {
        FieldDesc::new(d)
    }
}

impl From<FieldDesc> for i64 {
    fn from(f: FieldDesc) -> i64 {
        f.radicand
    }
}

/// Generic text for all quadratic fields, used in scan file headers.
pub const OMEGA_CONVENTION: &str =
    "a = sqrt(D) if D = 2,3 (mod 4); a = (1+sqrt(D))/2 if D = 1 (mod 4)";

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn mk_field_examples() {
        let f = FieldDesc::new(2).unwrap();
        assert_eq!(f.kind(), FieldKind::Quadratic);
        assert!(!f.omega_is_half());
        assert_eq!(f.disc(), 8);

        let f = FieldDesc::new(5).unwrap();
        assert!(f.omega_is_half());
        assert_eq!(f.disc(), 5);

        let f = FieldDesc::new(12).unwrap();
        assert_eq!(f.radicand(), 3);
        assert_eq!(f.disc(), 12);
    }

    #[test]
    fn perfect_squares_collapse_to_q() {
        assert!(FieldDesc::new(9).unwrap().is_rational());
        assert_eq!(FieldDesc::new(-4).unwrap().radicand(), -1);
        assert!(matches!(FieldDesc::new(0), Err(Error::ZeroRadicand)));
    }

    #[test]
    fn discriminant_round_trip() {
        for d in [-163, -7, -5, -3, -2, -1, 2, 3, 5, 6, 7, 13, 21, 94] {
            let f = FieldDesc::new(d).unwrap();
            assert_eq!(FieldDesc::from_disc(f.disc()), Some(f));
        }
        assert_eq!(FieldDesc::from_disc(12), Some(FieldDesc::new(3).unwrap()));
        assert_eq!(FieldDesc::from_disc(9), None);
        assert_eq!(FieldDesc::from_disc(20), None);
        assert_eq!(FieldDesc::from_disc(-4), Some(FieldDesc::new(-1).unwrap()));
    }
}
