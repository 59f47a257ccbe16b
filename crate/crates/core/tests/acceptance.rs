//! End-to-end acceptance checks. Runs as a plain binary and prints one
//! PASS/FAIL line per criterion; exits non-zero if any criterion fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use carlitz_core::{
    enumerate_monic, predict_low_coeffs, relative_zeta, relative_zeta_with, FieldCtx, FqPoly,
    IntPoly, Options, UnitSystem, ZetaReport,
};
use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::rngs::StdRng;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};

const EXAMPLE_ONE_LIMIT: Duration = Duration::from_secs(1);
const EXAMPLE_TWO_LIMIT: Duration = Duration::from_secs(5);
const SWEEP_LIMIT: Duration = Duration::from_secs(300);
const CANONICALITY_TRIALS: usize = 24;
const CANONICALITY_SEED: u64 = 0x5eed_2024;
/// Largest C_m allowed for quadratic moduli.
const C_M_MAX: u64 = 3;

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome { ok, detail: detail.into() }
}

fn poly(f: &FieldCtx, c: &[u32]) -> FqPoly {
    FqPoly::from_codes(f, c).unwrap()
}

fn ints(c: &[i64]) -> IntPoly {
    IntPoly::from_i64s(c)
}

fn with_oracle() -> Options {
    Options { with_oracle: true, ..Options::default() }
}

fn example_one() -> Outcome {
    let f = FieldCtx::prime(3).unwrap();
    let start = Instant::now();
    let r = match relative_zeta(&f, &poly(&f, &[1, 0, 1]), with_oracle()) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let expected = ints(&[1, 0, -2, 0, 9]);
    let ok = r.det_poly == expected
        && r.p_minus == expected
        && r.j_poly == IntPoly::one()
        && r.h_minus == BigInt::from(8)
        && elapsed < EXAMPLE_ONE_LIMIT;
    outcome(ok, format!("P = {}, h = {}, {:?}", r.p_minus, r.h_minus, elapsed))
}

fn example_two() -> Outcome {
    let f = FieldCtx::prime(3).unwrap();
    let start = Instant::now();
    let r = match relative_zeta(&f, &poly(&f, &[0, 0, 1, 1]), with_oracle()) {
        Ok(r) => r,
        Err(e) => return outcome(false, format!("error: {e}")),
    };
    let elapsed = start.elapsed();
    let ok = r.det_poly == ints(&[1, 0, 0, -6, -3, -6, 23, 30, 6, -18, -27])
        && r.j_poly == ints(&[1, 1, 0, -1, -1])
        && r.p_minus == ints(&[1, -1, 1, -6, 3, -9, 27])
        && r.h_minus == BigInt::from(16)
        && elapsed < EXAMPLE_TWO_LIMIT;
    outcome(ok, format!("P = {}, h = {}, {:?}", r.p_minus, r.h_minus, elapsed))
}

/// Every monic modulus of the sweep: q = 3, 5 up to degree 3 and q = 4 up to
/// degree 2.
fn sweep_fields() -> Vec<(FieldCtx, usize)> {
    vec![
        (FieldCtx::prime(3).unwrap(), 3),
        (FieldCtx::new(2, 2, None).unwrap(), 2),
        (FieldCtx::prime(5).unwrap(), 3),
    ]
}

struct SweepCase {
    field: FieldCtx,
    m: FqPoly,
    report: Result<ZetaReport, carlitz_core::Error>,
}

fn run_sweep() -> (Vec<SweepCase>, Duration) {
    let start = Instant::now();
    let mut cases = Vec::new();
    for (field, max_deg) in sweep_fields() {
        for d in 1..=max_deg {
            for m in enumerate_monic(&field, d) {
                let report = relative_zeta(&field, &m, with_oracle());
                cases.push(SweepCase { field: field.clone(), m, report });
            }
        }
    }
    (cases, start.elapsed())
}

fn oracle_sweep(cases: &[SweepCase], elapsed: Duration) -> Outcome {
    let oracle_checks = ["oracle_p_minus", "oracle_j_poly", "oracle_det_per_lambda"];
    let failures: Vec<String> = cases
        .iter()
        .filter(|c| match &c.report {
            Ok(r) => !oracle_checks.iter().all(|k| r.checks.get(*k) == Some(&true)),
            Err(_) => true,
        })
        .map(|c| format!("q = {}, m = {}", c.field.q(), c.m))
        .collect();
    outcome(
        failures.is_empty() && elapsed < SWEEP_LIMIT,
        format!("{} moduli, {} failures {:?}, {:?}", cases.len(), failures.len(), failures, elapsed),
    )
}

fn low_degree(cases: &[SweepCase]) -> Outcome {
    let mut failures = Vec::new();
    let mut quadratics = 0;
    for c in cases {
        let Ok(r) = &c.report else {
            failures.push(format!("{}: no report", c.m));
            continue;
        };
        if !r.det_poly.coeff(1).is_zero() {
            failures.push(format!("{}: a1 != 0", c.m));
        }
        if r.m.degree() == Some(1) {
            continue;
        }
        let sys = UnitSystem::new(&c.field, &c.m).unwrap();
        let pred = predict_low_coeffs(&c.field, &sys).unwrap();
        if !pred.matches(&r.det_poly) {
            failures.push(format!("q = {}, m = {}: predicted {:?}", c.field.q(), c.m, pred.a2));
        }
        if let Some(cm) = pred.c_m {
            quadratics += 1;
            if cm > C_M_MAX {
                failures.push(format!("q = {}, m = {}: C_m = {cm}", c.field.q(), c.m));
            }
        }
    }
    outcome(failures.is_empty(), format!("{quadratics} quadratic moduli, failures {failures:?}"))
}

fn corollary(cases: &[SweepCase]) -> Outcome {
    let failures: Vec<String> = cases
        .iter()
        .filter(|c| match &c.report {
            Ok(r) => r.maillet != &r.w_minus * &r.h_minus,
            Err(_) => true,
        })
        .map(|c| format!("q = {}, m = {}", c.field.q(), c.m))
        .collect();
    let vanishing = cases
        .iter()
        .filter(|c| c.report.as_ref().is_ok_and(|r| r.w_minus.is_zero()))
        .count();
    outcome(failures.is_empty(), format!("{vanishing} cases with W = 0, failures {failures:?}"))
}

fn degenerate(cases: &[SweepCase]) -> Outcome {
    let mut failures = Vec::new();
    let mut count = 0;
    let f2 = FieldCtx::prime(2).unwrap();
    for d in 1..=4 {
        for m in enumerate_monic(&f2, d) {
            count += 1;
            match relative_zeta(&f2, &m, with_oracle()) {
                Ok(r) if r.p_minus == IntPoly::one() => {}
                _ => failures.push(format!("q = 2, m = {m}")),
            }
        }
    }
    for (p, n) in [(3, 1), (5, 1), (7, 1), (2, 2), (2, 3), (3, 2), (11, 1)] {
        let f = FieldCtx::new(p, n, None).unwrap();
        for m in enumerate_monic(&f, 1) {
            count += 1;
            match relative_zeta(&f, &m, Options::default()) {
                Ok(r) if r.p_minus == IntPoly::one() && r.h_minus == BigInt::one() => {}
                _ => failures.push(format!("q = {}, m = {m}", f.q())),
            }
        }
    }
    for c in cases {
        if c.field.factorize(&c.m).unwrap().len() == 1 {
            count += 1;
            if !c.report.as_ref().is_ok_and(|r| r.j_poly == IntPoly::one()) {
                failures.push(format!("prime power q = {}, m = {}", c.field.q(), c.m));
            }
        }
    }
    outcome(failures.is_empty(), format!("{count} cases, failures {failures:?}"))
}

fn canonicality() -> Outcome {
    let mut rng = StdRng::seed_from_u64(CANONICALITY_SEED);
    let fields: Vec<FieldCtx> = [(3, 1), (5, 1), (7, 1), (2, 2), (3, 2)]
        .into_iter()
        .map(|(p, n)| FieldCtx::new(p, n, None).unwrap())
        .collect();
    let mut failures = Vec::new();
    let mut trials = 0;
    while trials < CANONICALITY_TRIALS {
        let field = fields.choose(&mut rng).unwrap();
        let max_deg = if field.q() <= 5 { 3 } else { 2 };
        let d = rng.gen_range(2..=max_deg);
        let all: Vec<FqPoly> = enumerate_monic(field, d).collect();
        let m = all.choose(&mut rng).unwrap().clone();
        let gens = field.generators();
        let alternatives: Vec<_> = gens.iter().filter(|&&g| g != field.generator()).collect();
        let Some(&&g) = alternatives.choose(&mut rng) else {
            continue;
        };
        trials += 1;
        let other = field.with_generator(g).unwrap();
        let mut reps = UnitSystem::new(field, &m).unwrap().reps().to_vec();
        reps.shuffle(&mut rng);
        let shuffled = UnitSystem::with_order(&other, &m, reps).unwrap();
        let a = relative_zeta(field, &m, Options::default());
        let b = relative_zeta_with(&other, &shuffled, Options::default());
        let same = match (&a, &b) {
            (Ok(a), Ok(b)) => {
                a.det_poly == b.det_poly
                    && a.j_poly == b.j_poly
                    && a.p_minus == b.p_minus
                    && a.h_minus == b.h_minus
                    && a.maillet == b.maillet
            }
            _ => false,
        };
        if !same {
            failures.push(format!("q = {}, m = {m}", field.q()));
        }
    }
    outcome(failures.is_empty(), format!("{trials} trials, failures {failures:?}"))
}

fn main() -> ExitCode {
    let mut results: Vec<(&str, Outcome)> = Vec::new();
    results.push(("1 first worked example", example_one()));
    results.push(("2 second worked example", example_two()));
    let (cases, elapsed) = run_sweep();
    results.push(("3 oracle equivalence sweep", oracle_sweep(&cases, elapsed)));
    results.push(("4 low-degree coefficients", low_degree(&cases)));
    results.push(("5 determinant at X = 1", corollary(&cases)));
    results.push(("6 degenerate cases", degenerate(&cases)));
    results.push(("7 canonicality", canonicality()));
    let mut all_ok = true;
    for (name, o) in &results {
        all_ok &= o.ok;
        println!("{} criterion {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
    }
    if all_ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
