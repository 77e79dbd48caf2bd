//! Closed-form expressions attached to the curve
//! `D: dY³ - (a+b+c)Y² - dX²Y + 2(a-c)XY - (a+c)X² = 0`.
//!
//! `f₁`, `f₂` generate the Riemann-Roch spaces at the points at infinity,
//! `R_i`, `S_i` are the monic cubics annihilating `α f_i` and `β_i / f_i`,
//! and `z`, `Δ` give the `X`-coordinate and branch discriminant attached to
//! a value `t = k₁u₁` with `s = k₂u₂ = -2(a+c) - t`.

use crate::qfield::AlgNum;

use super::MRInstance;

/// Instance coefficients promoted to field elements.
pub(crate) struct Coeffs {
    pub a: AlgNum,
    pub b: AlgNum,
    pub c: AlgNum,
    pub d: AlgNum,
}

fn monic_cubic(t: &AlgNum, c2: AlgNum, c1: AlgNum, c0: AlgNum) -> AlgNum {
    // Horner
    ((t + &c2) * t + c1) * t + c0
}

impl Coeffs {
    pub fn of(inst: &MRInstance) -> Self {
        Coeffs {
            a: inst.a().to_num(),
            b: inst.b().to_num(),
            c: inst.c().to_num(),
            d: inst.d().to_num(),
        }
    }

    pub fn alpha(&self) -> AlgNum {
        &self.a + &self.c
    }

    pub fn beta1(&self) -> AlgNum {
        &self.b + 4 * &self.c
    }

    pub fn beta2(&self) -> AlgNum {
        &self.b + 4 * &self.a
    }

    fn abc(&self) -> AlgNum {
        &self.a + &self.b + &self.c
    }

    /// Left-hand side of the affine equation of `D`.
    pub fn curve(&self, x: &AlgNum, y: &AlgNum) -> AlgNum {
        let (a, c, d) = (&self.a, &self.c, &self.d);
        let y2 = y * y;
        let x2 = x * x;
        d * &y2 * y - self.abc() * &y2 - d * &x2 * y + 2 * (a - c) * x * y - self.alpha() * x2
    }

    /// `(f₁, f₂)` at `(x, y)`; `None` when `x = 0`.
    pub fn f_pair(&self, x: &AlgNum, y: &AlgNum) -> Option<(AlgNum, AlgNum)> {
        if x.is_zero() {
            return None;
        }
        let (a, c, d) = (&self.a, &self.c, &self.d);
        let den = self.alpha() * x;
        let core = d * y * y - self.abc() * y - d * x * x;
        let f1 = (&core + (a - 3 * c) * x) / &den;
        let f2 = (-core + (c - 3 * a) * x) / &den;
        Some((f1, f2))
    }

    pub fn r1(&self, x: &AlgNum, t: &AlgNum) -> AlgNum {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let al = self.alpha();
        let dx = d * x;
        monic_cubic(
            t,
            &dx + a + 5 * c,
            &al * (2 * &dx + b + 8 * c),
            &al * &al * self.beta1(),
        )
    }

    pub fn r2(&self, x: &AlgNum, t: &AlgNum) -> AlgNum {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let al = self.alpha();
        let dx = d * x;
        monic_cubic(
            t,
            -&dx + 5 * a + c,
            &al * (-2 * &dx + 8 * a + b),
            &al * &al * self.beta2(),
        )
    }

    pub fn s1(&self, x: &AlgNum, t: &AlgNum) -> AlgNum {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let be = self.beta1();
        let dx = d * x;
        monic_cubic(
            t,
            2 * &dx + b + 8 * c,
            &be * (&dx + a + 5 * c),
            self.alpha() * &be * &be,
        )
    }

    pub fn s2(&self, x: &AlgNum, t: &AlgNum) -> AlgNum {
        let (a, b, c, d) = (&self.a, &self.b, &self.c, &self.d);
        let be = self.beta2();
        let dx = d * x;
        monic_cubic(
            t,
            -2 * &dx + 8 * a + b,
            &be * (-&dx + 5 * a + c),
            self.alpha() * &be * &be,
        )
    }

    /// `(a+c+t)(t² + 4ct + (a+c)(b+4c))`, the numerator of `z`.
    pub fn z_numerator(&self, t: &AlgNum) -> AlgNum {
        let al = self.alpha();
        let quad = t * t + 4 * &self.c * t + &al * self.beta1();
        (al + t) * quad
    }

    /// `z = (a+c+t)(t² + 4ct + (a+c)(b+4c)) / (t·s·d)`.
    pub fn z(&self, t: &AlgNum, s: &AlgNum) -> Option<AlgNum> {
        self.z_numerator(t).checked_div(&(t * s * &self.d))
    }

    pub fn delta(&self, t: &AlgNum) -> AlgNum {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let al = self.alpha();
        let be = self.beta1();
        let t2 = t * t;
        let quartic = 4 * &t2 * &t2;
        let cubic = 8 * (a + 3 * c) * &t2 * t;
        let quad_coeff = 4 * a * a + b * b + 8 * a * b + 56 * a * c + 8 * b * c + 52 * c * c;
        let lin = 2 * &al * &be * (6 * a + b + 6 * c) * t;
        quartic + cubic + quad_coeff * t2 + lin + &al * &al * &be * &be
    }

    /// The `Y` on the line through the node: `(a+c) z / (a+c+t)`.
    pub fn rational_y(&self, z: &AlgNum, t: &AlgNum) -> Option<AlgNum> {
        let al = self.alpha();
        (&al * z).checked_div(&(al + t))
    }

    /// `[(a+c)(b+4c) + (2a+b+2c)t + root](a+c+t) / (-2 t s d)`.
    pub fn delta_branch_y(&self, t: &AlgNum, s: &AlgNum, root: &AlgNum) -> Option<AlgNum> {
        let (a, b, c) = (&self.a, &self.b, &self.c);
        let al = self.alpha();
        let num = (&al * self.beta1() + (2 * a + b + 2 * c) * t + root) * (al + t);
        num.checked_div(&(-2 * t * s * &self.d))
    }
}
