//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use mrap_core::oracle::{brute_force_ap, HeightBound};
use mrap_core::qfield::util::{exact_sqrt, is_squarefree};
use mrap_core::qfield::unit_group;
use mrap_core::scan::fixtures::{
    gaussian_set, rational_set, table_row, COUNT_TABLE, IMAGINARY_EXCEPTIONS, ONE_ONE_FIVE_FIVE,
    ROSENBERGER_TUPLES, TOTAL_COUNT,
};
use mrap_core::scan::{imaginary_shortlist, scan, ScanSpec};
use mrap_core::solver::{has_nontrivial, identity_checks, sort_triples, verify_triple};
use mrap_core::{solve_ap, APTriple, AlgInt, FieldDesc, MRInstance, SolutionReport};
use num_bigint::BigInt;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

type Outcome = Result<(), String>;

fn field(d: i64) -> FieldDesc {
    FieldDesc::new(d).expect("valid radicand")
}

fn markoff(f: FieldDesc, d: i64) -> MRInstance {
    MRInstance::from_ints(f, 1, 1, 1, d).expect("d != 0")
}

fn solve(inst: &MRInstance) -> Result<SolutionReport, String> {
    solve_ap(inst).map_err(|e| format!("{inst}: {e}"))
}

fn lift(ts: &[APTriple], f: FieldDesc) -> Vec<APTriple> {
    ts.iter().filter_map(|t| t.lift(f)).collect()
}

fn expect_set(inst: &MRInstance, got: &[APTriple], want: Vec<APTriple>) -> Outcome {
    let want = sort_triples(want);
    if got == want.as_slice() {
        return Ok(());
    }
    let g: BTreeSet<_> = got.iter().collect();
    let w: BTreeSet<_> = want.iter().collect();
    let missing: Vec<String> = w.difference(&g).map(|t| t.to_string()).collect();
    let extra: Vec<String> = g.difference(&w).map(|t| t.to_string()).collect();
    Err(format!("{inst}: missing {missing:?}, unexpected {extra:?}"))
}

fn within(limit: Duration, start: Instant) -> Outcome {
    let el = start.elapsed();
    if el <= limit {
        Ok(())
    } else {
        Err(format!("took {el:.1?}, limit {limit:?}"))
    }
}

/// Reports from criteria 1-5, checked again by criterion 9.
#[derive(Default)]
struct Collected {
    reports: Vec<SolutionReport>,
}

fn criterion_1(col: &mut Collected) -> Outcome {
    let start = Instant::now();
    let q = FieldDesc::RATIONAL;
    for d in 1..=20 {
        let inst = markoff(q, d);
        let rep = solve(&inst)?;
        expect_set(&inst, &rep.triples, rational_set(d))?;
        col.reports.push(rep);
    }
    within(Duration::from_secs(10), start)
}

fn criterion_2(col: &mut Collected) -> Outcome {
    let start = Instant::now();
    let f = field(-1);
    for (d, n) in [(1, 16), (2, 5)] {
        let inst = markoff(f, d);
        let rep = solve(&inst)?;
        if rep.triples.len() != n {
            return Err(format!("{inst}: {} triples, want {n}", rep.triples.len()));
        }
        expect_set(&inst, &rep.triples, gaussian_set(d).expect("fixture"))?;
        col.reports.push(rep);
    }
    within(Duration::from_secs(30), start)
}

fn criterion_3(col: &mut Collected) -> Outcome {
    let start = Instant::now();
    for r in [-2, -3, -5, -7, -11, -19, -43, -163] {
        let f = field(r);
        for d in 1..=3 {
            let inst = markoff(f, d);
            let rep = solve(&inst)?;
            expect_set(&inst, &rep.triples, lift(&rational_set(d), f))?;
            col.reports.push(rep);
        }
    }
    within(Duration::from_secs(120), start)
}

fn criterion_4() -> Outcome {
    let start = Instant::now();
    let s = imaginary_shortlist(1, 1, 1).map_err(|e| e.to_string())?;
    let want: Vec<(i64, i64)> = IMAGINARY_EXCEPTIONS.to_vec();
    if s.exceptions != want {
        return Err(format!("filtered shortlist {:?}, want {want:?}", s.exceptions));
    }
    if !want.iter().all(|p| s.candidates.contains(p)) {
        return Err("unfiltered shortlist misses an exception".into());
    }
    if !s.radicands.contains(&-399) || !s.radicands.contains(&-97) {
        return Err("search does not reach the |D| <= 100 / 400 bounds".into());
    }
    within(Duration::from_secs(600), start)
}

fn criterion_5(col: &mut Collected) -> Outcome {
    let start = Instant::now();
    let mut total = 0;
    for &(d, r, count) in COUNT_TABLE {
        let f = field(r);
        let inst = markoff(f, d);
        let rep = solve(&inst)?;
        let mut want = lift(&rational_set(d), f);
        want.extend(table_row(d, r).expect("fixture row"));
        expect_set(&inst, &rep.triples, want)?;
        if rep.triples.len() != count {
            return Err(format!("{inst}: count {} want {count}", rep.triples.len()));
        }
        total += rep.triples.len();
        col.reports.push(rep);
    }
    if total != TOTAL_COUNT {
        return Err(format!("total {total}, want {TOTAL_COUNT}"));
    }
    within(Duration::from_secs(600), start)
}

fn criterion_6() -> Outcome {
    let start = Instant::now();
    let rows = scan(&ScanSpec::markoff(1, 20, 2, 200)).map_err(|e| e.to_string())?;
    let table: BTreeSet<(i64, i64)> = COUNT_TABLE.iter().map(|&(d, r, _)| (d, r)).collect();
    let outside: Vec<(i64, i64)> = rows
        .iter()
        .filter(|r| !r.same_as_rational && !table.contains(&(r.d, r.radicand)))
        .map(|r| (r.d, r.radicand))
        .collect();
    if !outside.is_empty() {
        return Err(format!("new (d, D) with non-rational triples: {outside:?}"));
    }
    let found: BTreeSet<(i64, i64)> =
        rows.iter().filter(|r| !r.same_as_rational).map(|r| (r.d, r.radicand)).collect();
    let expected: BTreeSet<(i64, i64)> = table.iter().copied().filter(|&(_, r)| r > 0).collect();
    if found != expected {
        return Err(format!("rows found {found:?}, table rows {expected:?}"));
    }
    within(Duration::from_secs(3600), start)
}

fn criterion_7() -> Outcome {
    let start = Instant::now();
    let q = FieldDesc::RATIONAL;
    for (i, &[a, b, c, d]) in ROSENBERGER_TUPLES.iter().enumerate() {
        let inst = MRInstance::from_ints(q, a, b, c, d).map_err(|e| e.to_string())?;
        let p = has_nontrivial(&inst).map_err(|e| e.to_string())?;
        if !p.nontrivial {
            return Err(format!("{inst}: no nontrivial solution"));
        }
        if i < 5 && !p.clause_a {
            return Err(format!("{inst}: clause (a) does not fire"));
        }
        if p.clause_b_disagrees() {
            println!("  note: {inst}: divisibility and integrality forms of clause (b) disagree");
        }
    }
    let inst = MRInstance::from_ints(q, 1, 1, 5, 5).unwrap();
    let rep = solve(&inst)?;
    let k = |n: i64| AlgInt::from_int(q, n);
    for [x, y, z] in ONE_ONE_FIVE_FIVE {
        let t = APTriple::from_terms(&k(*x), &k(*y), &k(*z)).unwrap();
        if !rep.contains(&t) {
            return Err(format!("{inst}: missing {t}"));
        }
    }
    within(Duration::from_secs(10), start)
}

fn random_instance(rng: &mut ChaCha8Rng, f: FieldDesc) -> MRInstance {
    loop {
        let mut el = || {
            let u = rng.gen_range(-5..=5);
            let v = if f.is_rational() { 0 } else { rng.gen_range(-5..=5) };
            AlgInt::new(f, u, v)
        };
        let (a, b, c, d) = (el(), el(), el(), el());
        let degenerate = d.is_zero()
            || (&a + &c).is_zero()
            || (&b + &(&c * 4)).is_zero()
            || (&b + &(&a * 4)).is_zero();
        if !degenerate {
            return MRInstance::new(a, b, c, d).unwrap();
        }
    }
}

fn criterion_8() -> Outcome {
    let start = Instant::now();
    const PER_FIELD: usize = 50;
    const H: u64 = 50;
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed_a9);
    let mut instances = Vec::new();
    for r in [1, -1, 2, 5] {
        let f = field(r);
        instances.extend((0..PER_FIELD).map(|_| random_instance(&mut rng, f)));
    }
    let limit = BigInt::from(H);
    let bound = HeightBound::new(H).unwrap();
    let results: Vec<Result<usize, String>> = instances
        .par_iter()
        .map(|inst| {
            let solved: Vec<APTriple> = solve_ap(inst)
                .map_err(|e| format!("{inst}: {e}"))?
                .triples
                .into_iter()
                .filter(|t| t.height() <= limit)
                .collect();
            let brute = brute_force_ap(inst, bound);
            if solved != brute {
                return Err(format!("{inst}: solver {} vs oracle {}", solved.len(), brute.len()));
            }
            Ok(brute.len())
        })
        .collect();
    let failures: Vec<&String> = results.iter().filter_map(|r| r.as_ref().err()).collect();
    let nontrivial = results.iter().filter(|r| matches!(r, Ok(n) if *n > 1)).count();
    if let Some(f) = failures.first() {
        return Err(format!("{} of {} instances differ, first {f}", failures.len(), instances.len()));
    }
    println!(
        "  {} random instances agree with the oracle at H = {H}; {nontrivial} have nontrivial triples",
        instances.len()
    );
    within(Duration::from_secs(1800), start)
}

fn criterion_9(col: &Collected) -> Outcome {
    let mut checked = 0usize;
    for rep in &col.reports {
        let inst = &rep.instance;
        for t in &rep.triples {
            if !verify_triple(inst, t) {
                return Err(format!("{inst}: {t} does not satisfy the equation"));
            }
            let p = t.to_point();
            if !p.on_curve(inst) {
                return Err(format!("{inst}: {t} maps off the curve"));
            }
        }
        for p in rep.curve_points().cloned().chain(rep.triples.iter().map(|t| t.to_point())) {
            if p.x.is_zero() {
                continue;
            }
            match identity_checks(inst, &p) {
                Ok(true) => checked += 1,
                Ok(false) => return Err(format!("{inst}: identity fails at {p:?}")),
                Err(e) => return Err(format!("{inst}: {e}")),
            }
        }
    }
    if checked == 0 {
        return Err("no points collected".into());
    }
    println!("  identities hold at {checked} points");
    Ok(())
}

fn scaled(ts: &[APTriple], u: &AlgInt) -> Vec<APTriple> {
    sort_triples(ts.iter().map(|t| t.scale(u)))
}

fn unit_scaling() -> Outcome {
    let mut cases: Vec<(FieldDesc, AlgInt)> = Vec::new();
    for r in [1, -1, -3, 2, 3, 5] {
        let f = field(r);
        cases.push((f, AlgInt::from_int(f, -1)));
    }
    for r in [2, 3, 5] {
        let f = field(r);
        cases.push((f, unit_group(f).fundamental().unwrap().clone()));
    }
    for (f, u) in cases {
        for (a, b, c, d) in [(1, 1, 1, 1), (1, 1, 1, 2), (1, 1, 1, 3), (1, 2, 3, 6), (1, 1, 5, 5)] {
            let inst = MRInstance::from_ints(f, a, b, c, d).unwrap();
            let du = inst.with_d(inst.d() * &u).unwrap();
            let base = solve(&inst)?.triples;
            let moved = scaled(&solve(&du)?.triples, &u);
            if moved != base {
                return Err(format!("unit scaling by {u} fails for {inst}"));
            }
        }
    }
    Ok(())
}

fn reversal_and_galois() -> Outcome {
    for r in [1, -1, 2, 3, 5, 6, 21] {
        let f = field(r);
        for (a, b, c, d) in [(1, 1, 1, 1), (1, 1, 1, 3), (2, 1, 2, 1), (1, 3, 1, 2), (3, 2, 3, 4)] {
            let inst = MRInstance::from_ints(f, a, b, c, d).unwrap();
            let ts = solve(&inst)?.triples;
            for t in &ts {
                if a == c && !ts.contains(&t.reversed()) {
                    return Err(format!("{inst}: reversal of {t} missing"));
                }
                if !ts.contains(&t.conj()) {
                    return Err(format!("{inst}: conjugate of {t} missing"));
                }
            }
        }
    }
    Ok(())
}

fn norm_multiplicativity() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let radicands = [-163, -7, -3, -1, 2, 3, 5, 13, 94];
    for i in 0..10_000 {
        let f = field(radicands[i % radicands.len()]);
        let mut el = || AlgInt::new(f, rng.gen_range(-10_000..=10_000), rng.gen_range(-10_000..=10_000));
        let (x, y) = (el(), el());
        if (&x * &y).norm() != x.norm() * y.norm() {
            return Err(format!("N({x} * {y}) over {f}"));
        }
    }
    Ok(())
}

/// Smallest unit above 1 by scanning the second coordinate of `s + t sqrt(D)`.
fn smallest_unit_by_search(r: i64) -> (BigInt, BigInt) {
    // 2x = p + q sqrt(D) with p² - D q² = ±4; both coordinates of a unit > 1 are positive
    let allow_half = r.rem_euclid(4) == 1;
    let mut q = 1i64;
    loop {
        let dq2 = BigInt::from(r * q * q);
        let four = BigInt::from(4);
        for rhs in [&dq2 - &four, &dq2 + &four] {
            if rhs.sign() == num_bigint::Sign::Minus {
                continue;
            }
            if let Some(p) = exact_sqrt(&rhs) {
                let even = &p % 2 == BigInt::from(0) && q % 2 == 0;
                if p > BigInt::from(0) && (allow_half || even) {
                    return (p, BigInt::from(q));
                }
            }
        }
        q += 1;
    }
}

fn unit_minimality() -> Outcome {
    for r in (2..=100).filter(|&r| is_squarefree(r)) {
        let f = field(r);
        let eps = unit_group(f).fundamental().unwrap().to_num();
        let (p, q) = smallest_unit_by_search(r);
        let two = num_rational::BigRational::from_integer(BigInt::from(2));
        let twice = (eps.s() * &two, eps.t() * &two);
        if twice.0 != p.into() || twice.1 != q.into() {
            return Err(format!("D = {r}: fundamental unit {} is not minimal", unit_group(f).fundamental().unwrap()));
        }
    }
    Ok(())
}

fn criterion_10() -> Outcome {
    unit_scaling()?;
    reversal_and_galois()?;
    norm_multiplicativity()?;
    unit_minimality()
}

fn report(n: u32, name: &str, outcome: Outcome, start: Instant) -> bool {
    let el = start.elapsed();
    match outcome {
        Ok(()) => {
            println!("PASS criterion {n}: {name} ({el:.2?})");
            true
        }
        Err(e) => {
            println!("FAIL criterion {n}: {name}: {e}");
            false
        }
    }
}

fn main() -> ExitCode {
    let mut col = Collected::default();
    let mut ok = true;
    let mut run = |n: u32, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let start = Instant::now();
        ok &= report(n, name, f(), start);
    };
    run(1, "solutions over Q for d = 1..20", &mut || criterion_1(&mut col));
    run(2, "Q(i) with d = 1, 2", &mut || criterion_2(&mut col));
    run(3, "imaginary fields agree with Q", &mut || criterion_3(&mut col));
    run(4, "imaginary shortlist", &mut criterion_4);
    run(5, "real quadratic table and counts", &mut || criterion_5(&mut col));
    run(6, "scan d <= 20, disc <= 200", &mut criterion_6);
    run(7, "classical coefficient tuples", &mut criterion_7);
    run(8, "oracle equivalence on random instances", &mut criterion_8);
    run(9, "curve identities at every produced point", &mut || criterion_9(&col));
    run(10, "invariants", &mut criterion_10);
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
