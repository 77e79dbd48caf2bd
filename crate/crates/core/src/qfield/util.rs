//! Integer helpers shared by the field code: exact square roots,
//! trial-division factorization, divisors and squarefree parts.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

/// `Some(r)` with `r*r == n` when `n` is a perfect square (r >= 0).
pub fn exact_sqrt(n: &BigInt) -> Option<BigInt> {
    if n.is_negative() {
        return None;
    }
    let r = n.sqrt();
    (&r * &r == *n).then_some(r)
}

/// Floor of the square root of a nonnegative integer.
pub fn floor_sqrt(n: &BigInt) -> BigInt {
    assert!(!n.is_negative(), "floor_sqrt of a negative number");
    n.sqrt()
}

pub fn rational_sqrt(q: &BigRational) -> Option<BigRational> {
    // BigRational is kept reduced with a positive denominator.
    let num = exact_sqrt(q.numer())?;
    let den = exact_sqrt(q.denom())?;
    Some(BigRational::new(num, den))
}

/// Prime factorization by trial division. `n` must be positive.
pub fn factorize(n: &BigUint) -> Vec<(BigUint, u32)> {
    assert!(!n.is_zero(), "factorize(0)");
    if let Some(small) = n.to_u64() {
        return factorize_u64(small)
            .into_iter()
            .map(|(p, e)| (BigUint::from(p), e))
            .collect();
    }
    let mut out = Vec::new();
    let mut rest = n.clone();
    let mut p = BigUint::from(2u32);
    while &p * &p <= rest {
        let mut e = 0;
        while (&rest % &p).is_zero() {
            rest /= &p;
            e += 1;
        }
        if e > 0 {
            out.push((p.clone(), e));
        }
        p += 1u32;
    }
    if !rest.is_one() {
        out.push((rest, 1));
    }
    out
}

fn factorize_u64(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    let mut p = 2u64;
    while p.saturating_mul(p) <= n {
        let mut e = 0;
        while n % p == 0 {
            n /= p;
            e += 1;
        }
        if e > 0 {
            out.push((p, e));
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// All positive divisors of `n > 0`, ascending.
pub fn divisors(n: &BigUint) -> Vec<BigUint> {
    let mut divs = vec![BigUint::one()];
    for (p, e) in factorize(n) {
        let current = divs.len();
        let mut pk = BigUint::one();
        for _ in 0..e {
            pk *= &p;
            for i in 0..current {
                divs.push(&divs[i] * &pk);
            }
        }
    }
    divs.sort();
    divs
}

/// Writes `n = sign * core * square^2` with `core` squarefree and positive.
/// Returns `(signed core, square)`; `n` must be nonzero.
pub fn squarefree_part(n: &BigInt) -> (BigInt, BigInt) {
    assert!(!n.is_zero(), "squarefree_part(0)");
    let mut core = BigUint::one();
    let mut square = BigUint::one();
    for (p, e) in factorize(n.magnitude()) {
        square *= p.pow(e / 2);
        if e % 2 == 1 {
            core *= p;
        }
    }
    let sign = if n.sign() == Sign::Minus { Sign::Minus } else { Sign::Plus };
    (BigInt::from_biguint(sign, core), BigInt::from(square))
}

pub fn squarefree_part_i64(n: i64) -> (i64, i64) {
    let (core, sq) = squarefree_part(&BigInt::from(n));
    (core.to_i64().expect("core fits"), sq.to_i64().expect("square fits"))
}

pub fn is_squarefree(n: i64) -> bool {
    n != 0 && squarefree_part_i64(n).1 == 1
}

/// Ceiling of a nonnegative rational.
pub fn ceil_rational(q: &BigRational) -> BigInt {
    let (quot, rem) = q.numer().div_rem(q.denom());
    if rem.is_positive() {
        quot + 1
    } else {
        quot
    }
}
