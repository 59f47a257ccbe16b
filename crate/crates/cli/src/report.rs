//! JSON form of a [`ZetaReport`].
//!
//! Integers are written as plain JSON numbers of any size. Polynomials over Z
//! are coefficient arrays, lowest degree first. Polynomials over F_q are
//! arrays of element codes `Σ c_i p^i`, lowest degree first, next to their
//! canonical text.

use std::collections::BTreeMap;
use std::time::Duration;

use carlitz_core::{DetEngine, FieldCtx, FqPoly, IntPoly, Options, SplitData, ZetaReport};
use num_bigint::BigInt;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::CliError;
use crate::parse::format_poly;

/// Bumped whenever the layout below changes; part of every cache key.
pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FieldJson {
    pub p: u64,
    pub n: u32,
    pub q: u64,
    /// Coefficients of the defining polynomial over F_p, constant first.
    pub defining_poly: Option<Vec<u32>>,
    /// Code of the fixed generator of F_q^×.
    pub generator: u32,
}

impl FieldJson {
    pub fn of(field: &FieldCtx) -> Self {
        FieldJson {
            p: field.p(),
            n: field.n(),
            q: field.q(),
            defining_poly: field.defining_poly().map(<[u32]>::to_vec),
            generator: field.generator().code(),
        }
    }

    pub fn to_field(&self) -> Result<FieldCtx, CliError> {
        let field = FieldCtx::new(self.p, self.n, self.defining_poly.clone())?;
        let g = field.elem(self.generator)?;
        Ok(if g == field.generator() { field } else { field.with_generator(g)? })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OptionsJson {
    pub oracle: bool,
    pub engine: String,
    pub limit: u64,
}

impl OptionsJson {
    pub fn of(options: &Options) -> Self {
        OptionsJson {
            oracle: options.with_oracle,
            engine: engine_name(options.engine).to_string(),
            limit: options.limit,
        }
    }
}

pub fn engine_name(engine: DetEngine) -> &'static str {
    match engine {
        DetEngine::Bareiss => "bareiss",
        DetEngine::Interpolation => "interpolation",
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SplitJson {
    pub prime: String,
    pub prime_codes: Vec<u32>,
    pub deg: usize,
    pub v: u32,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub e_plus: u64,
    pub f_plus: u64,
    pub g_plus: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReportJson {
    pub schema_version: u32,
    pub field: FieldJson,
    pub options: OptionsJson,
    pub modulus: String,
    pub modulus_codes: Vec<u32>,
    #[serde(rename = "Phi")]
    pub phi: u64,
    #[serde(rename = "N_m")]
    pub n_m: u64,
    #[serde(with = "int_poly")]
    pub det_poly: IntPoly,
    #[serde(with = "int_poly")]
    pub j_poly: IntPoly,
    #[serde(with = "int_poly")]
    pub p_minus: IntPoly,
    #[serde(with = "big")]
    pub h_minus: BigInt,
    #[serde(with = "big")]
    pub w_minus: BigInt,
    #[serde(with = "big")]
    pub maillet: BigInt,
    pub split: Vec<SplitJson>,
    pub checks: BTreeMap<String, bool>,
    pub timings_ns: BTreeMap<String, u64>,
}

impl ReportJson {
    pub fn from_report(field: &FieldCtx, options: &Options, r: &ZetaReport) -> Self {
        ReportJson {
            schema_version: SCHEMA_VERSION,
            field: FieldJson::of(field),
            options: OptionsJson::of(options),
            modulus: format_poly(&r.m, field),
            modulus_codes: r.m.codes(),
            phi: r.phi,
            n_m: r.n_m,
            det_poly: r.det_poly.clone(),
            j_poly: r.j_poly.clone(),
            p_minus: r.p_minus.clone(),
            h_minus: r.h_minus.clone(),
            w_minus: r.w_minus.clone(),
            maillet: r.maillet.clone(),
            split: r
                .split
                .iter()
                .map(|s| SplitJson {
                    prime: format_poly(&s.prime, field),
                    prime_codes: s.prime.codes(),
                    deg: s.deg,
                    v: s.v,
                    e: s.e,
                    f: s.f,
                    g: s.g,
                    e_plus: s.e_plus,
                    f_plus: s.f_plus,
                    g_plus: s.g_plus,
                })
                .collect(),
            checks: r.checks.clone(),
            timings_ns: r
                .timings
                .iter()
                .map(|(k, d)| (k.clone(), u64::try_from(d.as_nanos()).unwrap_or(u64::MAX)))
                .collect(),
        }
    }

    /// Rebuilds the report. The field context is rebuilt from the echoed
    /// field parameters.
    pub fn to_report(&self) -> Result<ZetaReport, CliError> {
        let field = self.field.to_field()?;
        let poly = |codes: &[u32]| FqPoly::from_codes(&field, codes).map_err(CliError::Core);
        Ok(ZetaReport {
            q: self.field.q,
            p: self.field.p,
            n: self.field.n,
            m: poly(&self.modulus_codes)?,
            phi: self.phi,
            n_m: self.n_m,
            det_poly: self.det_poly.clone(),
            j_poly: self.j_poly.clone(),
            p_minus: self.p_minus.clone(),
            h_minus: self.h_minus.clone(),
            w_minus: self.w_minus.clone(),
            maillet: self.maillet.clone(),
            split: self
                .split
                .iter()
                .map(|s| {
                    Ok(SplitData {
                        prime: poly(&s.prime_codes)?,
                        deg: s.deg,
                        v: s.v,
                        e: s.e,
                        f: s.f,
                        g: s.g,
                        e_plus: s.e_plus,
                        f_plus: s.f_plus,
                        g_plus: s.g_plus,
                    })
                })
                .collect::<Result<_, CliError>>()?,
            checks: self.checks.clone(),
            timings: self.timings_ns.iter().map(|(k, &ns)| (k.clone(), Duration::from_nanos(ns))).collect(),
        })
    }

    pub fn checks_passed(&self) -> bool {
        self.checks.values().all(|&ok| ok)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> Result<Self, CliError> {
        let r: ReportJson = serde_json::from_str(text).map_err(|e| CliError::Report(e.to_string()))?;
        if r.schema_version != SCHEMA_VERSION {
            return Err(CliError::Report(format!("schema version {} != {SCHEMA_VERSION}", r.schema_version)));
        }
        Ok(r)
    }

    /// Human-readable rendering.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mut line = |s: String| {
            out.push_str(&s);
            out.push('\n');
        };
        line(format!("q = {} (p = {}, n = {})", self.field.q, self.field.p, self.field.n));
        line(format!("m = {}", self.modulus));
        line(format!("Phi = {}", self.phi));
        line(format!("N_m = {}", self.n_m));
        line(format!("det D^(-)(X) = {}", self.det_poly));
        line(format!("J^(-)(X) = {}", self.j_poly));
        line(format!("P^(-)(X) = {}", self.p_minus));
        line(format!("h_minus = {}", self.h_minus));
        line(format!("w_minus = {}", self.w_minus));
        line(format!("det at X = 1 = {}", self.maillet));
        line("primes dividing m:".to_string());
        for s in &self.split {
            line(format!(
                "  {}  v = {}  e = {}  f = {}  g = {}  e+ = {}  f+ = {}  g+ = {}",
                s.prime, s.v, s.e, s.f, s.g, s.e_plus, s.f_plus, s.g_plus
            ));
        }
        line("checks:".to_string());
        for (name, ok) in &self.checks {
            line(format!("  {name}: {}", if *ok { "pass" } else { "FAIL" }));
        }
        out
    }
}

/// JSON number text for an integer of any size.
fn number(x: &BigInt) -> serde_json::Number {
    x.to_string().parse().expect("decimal integers are JSON numbers")
}

fn parse_number(n: &serde_json::Number) -> Result<BigInt, String> {
    n.to_string().parse().map_err(|_| format!("{n} is not an integer"))
}

mod big {
    use super::*;

    pub fn serialize<S: Serializer>(x: &BigInt, s: S) -> Result<S::Ok, S::Error> {
        number(x).serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<BigInt, D::Error> {
        let n = serde_json::Number::deserialize(d)?;
        parse_number(&n).map_err(serde::de::Error::custom)
    }
}

mod int_poly {
    use super::*;

    pub fn serialize<S: Serializer>(p: &IntPoly, s: S) -> Result<S::Ok, S::Error> {
        p.coeffs().iter().map(number).collect::<Vec<_>>().serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<IntPoly, D::Error> {
        let v = Vec::<serde_json::Number>::deserialize(d)?;
        let coeffs = v
            .iter()
            .map(parse_number)
            .collect::<Result<Vec<_>, _>>()
            .map_err(serde::de::Error::custom)?;
        Ok(IntPoly::new(coeffs))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use carlitz_core::relative_zeta;

    #[test]
    fn round_trip_and_big_integers() {
        let f = FieldCtx::prime(3).unwrap();
        let m = FqPoly::from_codes(&f, &[0, 0, 1, 1]).unwrap();
        let options = Options::default();
        let r = relative_zeta(&f, &m, options).unwrap();
        let j = ReportJson::from_report(&f, &options, &r);
        let text = j.to_json();
        assert!(text.contains("\"p_minus\": [\n    1,\n    -1,\n    1,\n    -6,\n    3,\n    -9,\n    27\n  ]"));
        let back = ReportJson::from_json(&text).unwrap();
        assert_eq!(back, j);
        assert_eq!(back.to_report().unwrap(), r);

        let mut huge = j.clone();
        huge.h_minus = BigInt::from(10).pow(40) + 7;
        let text = huge.to_json();
        assert!(text.contains("10000000000000000000000000000000000000007"));
        assert_eq!(ReportJson::from_json(&text).unwrap(), huge);
    }

    #[test]
    fn rejects_other_schema_versions() {
        let f = FieldCtx::prime(3).unwrap();
        let r = relative_zeta(&f, &FqPoly::t(), Options::default()).unwrap();
        let mut j = ReportJson::from_report(&f, &Options::default(), &r);
        j.schema_version += 1;
        assert!(matches!(ReportJson::from_json(&j.to_json()), Err(CliError::Report(_))));
    }
}
