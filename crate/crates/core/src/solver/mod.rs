//! The integral-points pipeline for a.p. solutions of
//! `ax² + by² + cz² = dxyz`.
//!
//! A triple `(x, x+Y', x+2Y')` is moved to the curve
//! `D: dY³ - (a+b+c)Y² - dX²Y + 2(a-c)XY - (a+c)X² = 0` via
//! `(x, y, z) = (Y - X, Y, Y + X)`. Integral points of `D` with `X != 0`
//! satisfy `α f₁(P) = k₁u₁ =: t`, `α f₂(P) = k₂u₂ =: s` with `k_i` from the
//! candidate sets and `t + s = -2(a+c)`, and then `X = z(t)`. Points with
//! `X = 0` are the node and `(0, (a+b+c)/d)`.

mod formulas;

use std::collections::BTreeSet;
use std::fmt;

use num_bigint::BigInt;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::normeq::{candidate_sets_with_units, CandidateSet};
use crate::oracle::{brute_force_ap, HeightBound};
use crate::qfield::util::squarefree_part;
use crate::qfield::{AlgInt, AlgNum, FieldDesc, UnitGroup};
use crate::uniteq::unit_eq_against;

pub(crate) use formulas::Coeffs;

/// Height used by the brute-force fallback when `a+c`, `b+4c` or `b+4a`
/// vanishes. Over `Q` the search is one-dimensional and can go much further.
pub const FALLBACK_HEIGHT_RATIONAL: u64 = 2000;
pub const FALLBACK_HEIGHT_QUADRATIC: u64 = 40;

/// Coefficients `(a, b, c, d)` of one equation over one field.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MRInstance {
    field: FieldDesc,
    a: AlgInt,
    b: AlgInt,
    c: AlgInt,
    d: AlgInt,
}

impl MRInstance {
    pub fn new(a: AlgInt, b: AlgInt, c: AlgInt, d: AlgInt) -> Result<Self> {
        let field = a.field();
        for x in [&b, &c, &d] {
            field.check_same(&x.field())?;
        }
        if d.is_zero() {
            return Err(Error::ZeroD);
        }
        Ok(MRInstance { field, a, b, c, d })
    }

    /// Rational-integer coefficients over `field`.
    pub fn from_ints(field: FieldDesc, a: i64, b: i64, c: i64, d: i64) -> Result<Self> {
        let x = |n| AlgInt::from_int(field, n);
        Self::new(x(a), x(b), x(c), x(d))
    }

    pub fn field(&self) -> FieldDesc {
        self.field
    }

    pub fn a(&self) -> &AlgInt {
        &self.a
    }

    pub fn b(&self) -> &AlgInt {
        &self.b
    }

    pub fn c(&self) -> &AlgInt {
        &self.c
    }

    pub fn d(&self) -> &AlgInt {
        &self.d
    }

    pub fn with_d(&self, d: AlgInt) -> Result<Self> {
        Self::new(self.a.clone(), self.b.clone(), self.c.clone(), d)
    }

    /// Same rational-integer coefficients over another field.
    pub fn lift(&self, field: FieldDesc) -> Option<Self> {
        let l = |x: &AlgInt| x.lift(field);
        Self::new(l(&self.a)?, l(&self.b)?, l(&self.c)?, l(&self.d)?).ok()
    }
}

impl fmt::Display for MRInstance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}, {}, {}) over {}", self.a, self.b, self.c, self.d, self.field)
    }
}

/// The triple `(first, first + diff, first + 2·diff)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct APTriple {
    pub first: AlgInt,
    pub diff: AlgInt,
}

impl APTriple {
    pub fn new(first: AlgInt, diff: AlgInt) -> Self {
        debug_assert_eq!(first.field(), diff.field());
        APTriple { first, diff }
    }

    pub fn zero(field: FieldDesc) -> Self {
        Self::new(AlgInt::zero(field), AlgInt::zero(field))
    }

    pub fn from_terms(x: &AlgInt, y: &AlgInt, z: &AlgInt) -> Option<Self> {
        let diff = y - x;
        (&(y + &diff) == z).then(|| Self::new(x.clone(), diff))
    }

    pub fn field(&self) -> FieldDesc {
        self.first.field()
    }

    pub fn terms(&self) -> [AlgInt; 3] {
        let y = &self.first + &self.diff;
        let z = &y + &self.diff;
        [self.first.clone(), y, z]
    }

    pub fn is_trivial(&self) -> bool {
        self.first.is_zero() && self.diff.is_zero()
    }

    pub fn is_rational(&self) -> bool {
        self.first.is_rational() && self.diff.is_rational()
    }

    /// Largest ω-coordinate (in absolute value) of `first` and `diff`.
    pub fn height(&self) -> BigInt {
        self.first.height().max(self.diff.height())
    }

    /// `(z, y, x)`.
    pub fn reversed(&self) -> Self {
        let [_, _, z] = self.terms();
        Self::new(z, -&self.diff)
    }

    pub fn conj(&self) -> Self {
        Self::new(self.first.conj(), self.diff.conj())
    }

    pub fn scale(&self, k: &AlgInt) -> Self {
        Self::new(&self.first * k, &self.diff * k)
    }

    /// Moves a triple of rational integers into another field.
    pub fn lift(&self, field: FieldDesc) -> Option<Self> {
        Some(Self::new(self.first.lift(field)?, self.diff.lift(field)?))
    }

    /// The point `(X, Y) = (diff, first + diff)` of the curve.
    pub fn to_point(&self) -> CurvePoint {
        CurvePoint { x: self.diff.to_num(), y: (&self.first + &self.diff).to_num() }
    }

    fn sort_key(&self) -> (BigInt, String) {
        (self.first.height(), self.to_string())
    }
}

impl fmt::Display for APTriple {
    /// `first|diff`, the column format of scan reports.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}|{}", self.first, self.diff)
    }
}

/// Sorts by height of the first term, then by rendering, and deduplicates.
pub fn sort_triples(triples: impl IntoIterator<Item = APTriple>) -> Vec<APTriple> {
    let set: BTreeSet<APTriple> = triples.into_iter().collect();
    let mut out: Vec<APTriple> = set.into_iter().collect();
    out.sort_by_cached_key(APTriple::sort_key);
    out
}

/// Affine point of `D`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CurvePoint {
    pub x: AlgNum,
    pub y: AlgNum,
}

impl CurvePoint {
    pub fn on_curve(&self, inst: &MRInstance) -> bool {
        Coeffs::of(inst).curve(&self.x, &self.y).is_zero()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Branch {
    /// `Y = (a+c) z / (a+c+t)`.
    RationalY,
    /// `Y` from `+sqrt(Δ)`.
    DeltaPlus,
    /// `Y` from `-sqrt(Δ)`.
    DeltaMinus,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchPoint {
    pub branch: Branch,
    pub point: CurvePoint,
    /// Present iff both coordinates are integral.
    pub triple: Option<APTriple>,
}

/// One `(k₁, u₁, k₂, u₂)` tuple and what it yields at a given `d`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CandidateRecord {
    pub k1: AlgInt,
    pub u1: AlgInt,
    pub k2: AlgInt,
    pub u2: AlgInt,
    /// `t = k₁u₁`.
    pub t: AlgInt,
    /// Candidate `X`-coordinate.
    pub z: AlgNum,
    pub delta: AlgInt,
    /// Radicand `r` of `L = K(sqrt(r))` when `Δ` is not a square in `K`;
    /// squarefree when `Δ` is a rational integer.
    pub extension: Option<AlgInt>,
    pub points: Vec<BranchPoint>,
}

impl CandidateRecord {
    pub fn z_is_integral(&self) -> bool {
        self.z.is_integral()
    }
}

/// `AP_{(a,b,c,d)}(K)` together with the evidence that produced it.
#[derive(Clone, Debug)]
pub struct SolutionReport {
    pub instance: MRInstance,
    pub triples: Vec<APTriple>,
    pub records: Vec<CandidateRecord>,
    pub degenerate_fallback: bool,
    /// Height bound of the brute-force search when it replaced the pipeline.
    pub fallback_height: Option<u64>,
}

impl SolutionReport {
    pub fn nontrivial(&self) -> impl Iterator<Item = &APTriple> {
        self.triples.iter().filter(|t| !t.is_trivial())
    }

    pub fn contains(&self, t: &APTriple) -> bool {
        self.triples.contains(t)
    }

    /// Every curve point produced by the candidate branches.
    pub fn curve_points(&self) -> impl Iterator<Item = &CurvePoint> {
        self.records.iter().flat_map(|r| r.points.iter().map(|p| &p.point))
    }
}

/// A `(k₁, u₁, k₂, u₂)` solution of the unit equation with its `d`-free data.
#[derive(Clone, Debug)]
struct UnitTuple {
    k1: AlgInt,
    u1: AlgInt,
    k2: AlgInt,
    u2: AlgInt,
    t: AlgInt,
    s: AlgInt,
    /// `z·d`.
    w: AlgNum,
}

/// The `d`-independent part of the pipeline for fixed `(a, b, c)` over `K`.
///
/// Candidate sets and unit equations only involve `a`, `b`, `c`, so a scan
/// over many `d` builds one pipeline per field and calls [`Pipeline::solve`]
/// repeatedly.
#[derive(Clone, Debug)]
pub struct Pipeline {
    units: UnitGroup,
    a: AlgInt,
    b: AlgInt,
    c: AlgInt,
    sets: (CandidateSet, CandidateSet),
    tuples: Vec<UnitTuple>,
}

impl Pipeline {
    pub fn new(a: &AlgInt, b: &AlgInt, c: &AlgInt) -> Result<Self> {
        Self::with_units(UnitGroup::new(a.field()), a, b, c)
    }

    pub fn with_units(units: UnitGroup, a: &AlgInt, b: &AlgInt, c: &AlgInt) -> Result<Self> {
        let field = units.field();
        let sets = candidate_sets_with_units(&units, a, b, c)?;
        let alpha = a + c;
        let c0 = &alpha * -2;
        let probe = MRInstance::new(a.clone(), b.clone(), c.clone(), AlgInt::one(field))?;
        let coeffs = Coeffs::of(&probe);
        let per_k1: Vec<Vec<UnitTuple>> = sets
            .0
            .members
            .par_iter()
            .map(|k1| -> Result<Vec<UnitTuple>> {
                let sols = unit_eq_against(&units, k1, &sets.1, &c0)?;
                Ok(sols
                    .into_iter()
                    .map(|p| {
                        let t = k1 * &p.solution.u1;
                        let s = &p.k2 * &p.solution.u2;
                        debug_assert_eq!(&t + &s, c0);
                        // unit = 1 here, so z(d=1) = z·d
                        let w = coeffs.z(&t.to_num(), &s.to_num()).expect("t, s nonzero");
                        UnitTuple {
                            k1: k1.clone(),
                            u1: p.solution.u1,
                            k2: p.k2,
                            u2: p.solution.u2,
                            t,
                            s,
                            w,
                        }
                    })
                    .collect())
            })
            .collect::<Result<_>>()?;
        Ok(Pipeline {
            units,
            a: a.clone(),
            b: b.clone(),
            c: c.clone(),
            sets,
            tuples: per_k1.into_iter().flatten().collect(),
        })
    }

    pub fn field(&self) -> FieldDesc {
        self.units.field()
    }

    pub fn units(&self) -> &UnitGroup {
        &self.units
    }

    pub fn candidate_sets(&self) -> &(CandidateSet, CandidateSet) {
        &self.sets
    }

    /// Number of `(k₁, u₁, k₂, u₂)` tuples.
    pub fn tuple_count(&self) -> usize {
        self.tuples.len()
    }

    /// The values `w = z·d`, one per tuple; they do not depend on `d`.
    pub fn scaled_candidates(&self) -> impl Iterator<Item = &AlgNum> {
        self.tuples.iter().map(|t| &t.w)
    }

    pub fn instance(&self, d: &AlgInt) -> Result<MRInstance> {
        MRInstance::new(self.a.clone(), self.b.clone(), self.c.clone(), d.clone())
    }

    pub fn solve(&self, d: &AlgInt) -> Result<SolutionReport> {
        let inst = self.instance(d)?;
        let coeffs = Coeffs::of(&inst);
        let records: Vec<CandidateRecord> = self
            .tuples
            .par_iter()
            .map(|tup| {
                let z = &tup.w / &coeffs.d;
                let mut rec = CandidateRecord {
                    k1: tup.k1.clone(),
                    u1: tup.u1.clone(),
                    k2: tup.k2.clone(),
                    u2: tup.u2.clone(),
                    t: tup.t.clone(),
                    z,
                    delta: AlgInt::zero(inst.field),
                    extension: None,
                    points: Vec::new(),
                };
                let (points, ext) = branch_points(&coeffs, &rec.t, &tup.s, &rec.z);
                rec.delta = coeffs.delta(&rec.t.to_num()).to_alg_int().expect("integral");
                rec.extension = ext;
                rec.points = points;
                rec
            })
            .collect();

        let mut triples = vec![APTriple::zero(inst.field)];
        if let Some(y0) = x_zero_value(&inst) {
            triples.push(APTriple::new(y0, AlgInt::zero(inst.field)));
        }
        for rec in &records {
            triples.extend(rec.points.iter().filter_map(|p| p.triple.clone()));
        }
        Ok(SolutionReport {
            instance: inst,
            triples: sort_triples(triples),
            records,
            degenerate_fallback: false,
            fallback_height: None,
        })
    }
}

/// `(a+b+c)/d` when it is integral: the `Y` of the `X = 0` point.
fn x_zero_value(inst: &MRInstance) -> Option<AlgInt> {
    (&(&inst.a + &inst.b) + &inst.c).div_exact(&inst.d)
}

fn radicand_descriptor(delta: &AlgInt) -> AlgInt {
    if delta.is_rational() && !delta.is_zero() {
        AlgInt::from_int(delta.field(), squarefree_part(delta.u()).0)
    } else {
        delta.clone()
    }
}

fn branch_points(
    coeffs: &Coeffs,
    t: &AlgInt,
    s: &AlgInt,
    z: &AlgNum,
) -> (Vec<BranchPoint>, Option<AlgInt>) {
    let tn = t.to_num();
    let sn = s.to_num();
    let mut ys = Vec::new();
    if let Some(y) = coeffs.rational_y(z, &tn) {
        ys.push((Branch::RationalY, y));
    }
    let delta = coeffs.delta(&tn);
    let extension = match delta.sqrt() {
        Some(root) => {
            let plus = coeffs.delta_branch_y(&tn, &sn, &root).expect("t, s, d nonzero");
            ys.push((Branch::DeltaPlus, plus));
            if !root.is_zero() {
                let minus = coeffs.delta_branch_y(&tn, &sn, &-root).expect("t, s, d nonzero");
                ys.push((Branch::DeltaMinus, minus));
            }
            None
        }
        None => Some(radicand_descriptor(&delta.to_alg_int().expect("integral"))),
    };
    let points = ys
        .into_iter()
        .map(|(branch, y)| {
            let point = CurvePoint { x: z.clone(), y };
            assert!(coeffs.curve(&point.x, &point.y).is_zero(), "branch point off the curve");
            let triple = point_to_triple(&point);
            BranchPoint { branch, point, triple }
        })
        .collect();
    (points, extension)
}

/// Runs the full pipeline, or the brute-force search with a documented
/// height when the candidate sets degenerate.
pub fn solve_ap(inst: &MRInstance) -> Result<SolutionReport> {
    match Pipeline::new(&inst.a, &inst.b, &inst.c) {
        Ok(p) => p.solve(&inst.d),
        Err(Error::Degenerate(_)) => {
            let h = if inst.field.is_rational() {
                FALLBACK_HEIGHT_RATIONAL
            } else {
                FALLBACK_HEIGHT_QUADRATIC
            };
            let triples = brute_force_ap(inst, HeightBound::new(h)?);
            Ok(SolutionReport {
                instance: inst.clone(),
                triples,
                records: Vec::new(),
                degenerate_fallback: true,
                fallback_height: Some(h),
            })
        }
        Err(e) => Err(e),
    }
}

/// `z_{k₁,u₁}`: the `X`-coordinate candidate of a tuple.
pub fn candidate_x(
    inst: &MRInstance,
    k1: &AlgInt,
    u1: &AlgInt,
    k2: &AlgInt,
    u2: &AlgInt,
) -> Result<AlgNum> {
    let t = (k1 * u1).to_num();
    let s = (k2 * u2).to_num();
    Coeffs::of(inst).z(&t, &s).ok_or(Error::ZeroDenominator("z"))
}

/// The branch discriminant `Δ(t)`.
pub fn delta(inst: &MRInstance, t: &AlgNum) -> AlgNum {
    Coeffs::of(inst).delta(t)
}

/// Curve points at `X = record.z` and the extension note for `Δ`.
pub fn points_from_candidate(
    inst: &MRInstance,
    record: &CandidateRecord,
) -> (Vec<BranchPoint>, Option<AlgInt>) {
    let s = &record.k2 * &record.u2;
    branch_points(&Coeffs::of(inst), &record.t, &s, &record.z)
}

/// `(X, Y) -> (Y - X, Y, Y + X)`; `None` unless both coordinates are integral.
pub fn point_to_triple(p: &CurvePoint) -> Option<APTriple> {
    let x = p.x.to_alg_int()?;
    let y = p.y.to_alg_int()?;
    Some(APTriple::new(&y - &x, x))
}

/// Exact check of `ax² + by² + cz² = dxyz`.
pub fn verify_triple(inst: &MRInstance, t: &APTriple) -> bool {
    if t.field() != inst.field {
        return false;
    }
    let [x, y, z] = t.terms();
    let lhs = &(&(&inst.a * &(&x * &x)) + &(&inst.b * &(&y * &y))) + &(&inst.c * &(&z * &z));
    let rhs = &(&(&inst.d * &x) * &y) * &z;
    lhs == rhs
}

/// Evaluates `f₁ + f₂ = -2`, `R_i(α f_i) = 0` and `S_i(β_i / f_i) = 0`
/// at `p`. The `S_i` identity is skipped where `f_i(p) = 0`.
pub fn identity_checks(inst: &MRInstance, p: &CurvePoint) -> Result<bool> {
    let co = Coeffs::of(inst);
    let alpha = co.alpha();
    if alpha.is_zero() {
        return Err(Error::Undefined("f_i (a + c = 0)"));
    }
    let (f1, f2) = co.f_pair(&p.x, &p.y).ok_or(Error::Undefined("f_i at X = 0"))?;
    let field = inst.field;
    let mut ok = &f1 + &f2 == AlgNum::from_int(field, -2);
    ok &= co.r1(&p.x, &(&alpha * &f1)).is_zero();
    ok &= co.r2(&p.x, &(&alpha * &f2)).is_zero();
    if !f1.is_zero() {
        ok &= co.s1(&p.x, &(&co.beta1() / &f1)).is_zero();
    }
    if !f2.is_zero() {
        ok &= co.s2(&p.x, &(&co.beta2() / &f2)).is_zero();
    }
    Ok(ok)
}

/// Which characterization clause accounts for a nontrivial solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExistenceReport {
    /// Some triple other than `(0,0,0)` exists.
    pub nontrivial: bool,
    /// Clause (a): `d | (a+b+c)`.
    pub clause_a: bool,
    /// Clause (a) produced a nonzero triple `(m, m, m)`.
    pub clause_a_nontrivial: bool,
    /// Clause (b) as printed: `d | (a+c+t)(t² + 4ct + (a+c)(b+4c))` for some tuple.
    pub clause_b_printed: bool,
    /// Some candidate `X = z` yields an integral nontrivial triple.
    pub clause_b_integral: bool,
    /// `(a+b+c,d)` triples used when the pipeline degenerated.
    pub degenerate_fallback: bool,
}

impl ExistenceReport {
    /// The printed divisibility and point integrality disagree.
    pub fn clause_b_disagrees(&self) -> bool {
        self.clause_b_printed != self.clause_b_integral
    }
}

pub fn has_nontrivial(inst: &MRInstance) -> Result<ExistenceReport> {
    let report = solve_ap(inst)?;
    let sum = &(&inst.a + &inst.b) + &inst.c;
    let clause_a = inst.d.divides(&sum);
    let clause_a_nontrivial = clause_a && !sum.is_zero();
    let coeffs = Coeffs::of(inst);
    let mut clause_b_printed = false;
    let mut clause_b_integral = false;
    for rec in &report.records {
        let num = coeffs.z_numerator(&rec.t.to_num()).to_alg_int().expect("integral");
        clause_b_printed |= inst.d.divides(&num);
        clause_b_integral |= rec
            .points
            .iter()
            .filter_map(|p| p.triple.as_ref())
            .any(|t| !t.is_trivial());
    }
    let nontrivial = report.nontrivial().next().is_some();
    Ok(ExistenceReport {
        nontrivial,
        clause_a,
        clause_a_nontrivial,
        clause_b_printed,
        clause_b_integral,
        degenerate_fallback: report.degenerate_fallback,
    })
}
