//! The full pipeline for one modulus: `det D^(-)`, `J^(-)`, their quotient
//! `P^(-)`, the relative class number and every available cross-check.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_traits::{One, Signed};

use crate::cyclo::{CycCtx, IntPoly};
use crate::det::{det_lambdas, det_minus_at_one, product_of_dets, DetEngine};
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::lfun::{CharacterGroup, DEFAULT_GROUP_LIMIT};
use crate::poly::FqPoly;
use crate::splitting::{j_poly_from_split, split_all, w_minus, SplitData};
use crate::units::{check_modulus, UnitSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Options {
    /// Recompute `P`, `J` and every `det D^(λ)` through characters.
    pub with_oracle: bool,
    pub engine: DetEngine,
    /// Largest `Φ(m)` the oracle accepts.
    pub limit: u64,
}

impl Default for Options {
    fn default() -> Self {
        Options { with_oracle: false, engine: DetEngine::Bareiss, limit: DEFAULT_GROUP_LIMIT }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ZetaReport {
    pub q: u64,
    pub p: u64,
    pub n: u32,
    pub m: FqPoly,
    pub phi: u64,
    pub n_m: u64,
    pub det_poly: IntPoly,
    pub j_poly: IntPoly,
    pub p_minus: IntPoly,
    pub h_minus: BigInt,
    pub w_minus: BigInt,
    /// `Π_{λ ≠ 1} det(c_ij^λ)`.
    pub maillet: BigInt,
    pub split: Vec<SplitData>,
    /// Every check that ran, by name. A report only exists when all passed.
    pub checks: BTreeMap<String, bool>,
    pub timings: BTreeMap<String, Duration>,
}

impl ZetaReport {
    pub fn checks_passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }
}

struct Checks(BTreeMap<String, bool>);

impl Checks {
    fn require(&mut self, name: &str, ok: bool) -> Result<()> {
        self.0.insert(name.to_string(), ok);
        if ok {
            Ok(())
        } else {
            Err(Error::CheckFailed(name.to_string()))
        }
    }
}

fn timed<T>(timings: &mut BTreeMap<String, Duration>, stage: &str, f: impl FnOnce() -> T) -> T {
    let start = Instant::now();
    let out = f();
    timings.insert(stage.to_string(), start.elapsed());
    out
}

/// The relative zeta polynomial `P^(-)(X)` of the cyclotomic function field
/// of conductor `m`, with its class number and cross-checks.
pub fn relative_zeta(field: &FieldCtx, m: &FqPoly, options: Options) -> Result<ZetaReport> {
    check_modulus(m)?;
    let sys = UnitSystem::new(field, m)?;
    relative_zeta_with(field, &sys, options)
}

/// As [`relative_zeta`], over a caller-ordered system of representatives.
pub fn relative_zeta_with(field: &FieldCtx, sys: &UnitSystem, options: Options) -> Result<ZetaReport> {
    let m = sys.modulus();
    let mut timings = BTreeMap::new();
    let mut checks = Checks(BTreeMap::new());
    let phi = field.phi(m)?;
    let q = field.q();

    let cyc = (q > 2).then(|| CycCtx::new(q - 1));
    let dets = match &cyc {
        Some(cyc) => timed(&mut timings, "determinant", || det_lambdas(field, sys, cyc, options.engine))?,
        None => Vec::new(),
    };
    let det_poly = match &cyc {
        Some(cyc) => product_of_dets(cyc, &dets)?,
        None => IntPoly::one(),
    };
    checks.require("det_at_zero_is_one", det_poly.coeff(0) == BigInt::one())?;

    let split = timed(&mut timings, "splitting", || split_all(field, m))?;
    let j_poly = j_poly_from_split(split.clone())?.value;
    let w = w_minus(&split);

    let p_minus = timed(&mut timings, "division", || det_poly.exact_div(&j_poly))?;
    checks.require("det_equals_p_times_j", p_minus.mul(&j_poly) == det_poly)?;
    checks.require("p_at_zero_is_one", p_minus.coeff(0) == BigInt::one())?;
    let h_minus = p_minus.eval(&BigInt::one());
    checks.require("h_minus_positive", h_minus.is_positive())?;
    if m.degree() == Some(1) {
        checks.require("linear_modulus_has_trivial_p", p_minus == IntPoly::one())?;
    }
    checks.require("det_at_one_equals_w_times_h", det_poly.eval(&BigInt::one()) == &w * &h_minus)?;

    let maillet = timed(&mut timings, "maillet", || det_minus_at_one(field, sys))?;
    checks.require("maillet_identity", maillet == &w * &h_minus)?;

    if options.with_oracle {
        // For q = 2 the minus part is empty and every product below is 1.
        let start = Instant::now();
        let group = CharacterGroup::new(field, m, options.limit)?;
        let p_oracle = group.p_minus()?;
        checks.require("oracle_p_minus", p_oracle == p_minus)?;
        let j_char = group.j_minus()?;
        checks.require("oracle_j_poly", j_char == j_poly)?;
        let mut per_lambda = true;
        for (lambda, det) in &dets {
            let cyc = cyc.as_ref().expect("characters of F_q^× exist only for q > 2");
            per_lambda &= group.det_lambda(*lambda, cyc)? == *det;
        }
        checks.require("oracle_det_per_lambda", per_lambda)?;
        timings.insert("oracle".to_string(), start.elapsed());
    }

    Ok(ZetaReport {
        q,
        p: field.p(),
        n: field.n(),
        m: m.clone(),
        phi,
        n_m: sys.len() as u64,
        det_poly,
        j_poly,
        p_minus,
        h_minus,
        w_minus: w,
        maillet,
        split,
        checks: checks.0,
        timings,
    })
}

/// `Π_{λ ≠ 1} det(c_ij^λ)` and whether it equals `W⁻ h⁻`.
pub fn maillet_determinant(field: &FieldCtx, m: &FqPoly) -> Result<(BigInt, bool)> {
    check_modulus(m)?;
    let sys = UnitSystem::new(field, m)?;
    let value = det_minus_at_one(field, &sys)?;
    let split = split_all(field, m)?;
    let det_poly = if field.q() == 2 {
        IntPoly::one()
    } else {
        let cyc = CycCtx::new(field.q() - 1);
        product_of_dets(&cyc, &det_lambdas(field, &sys, &cyc, DetEngine::Bareiss)?)?
    };
    let j = j_poly_from_split(split.clone())?.value;
    let h = det_poly.exact_div(&j)?.eval(&BigInt::one());
    let holds = value == w_minus(&split) * h;
    Ok((value, holds))
}
