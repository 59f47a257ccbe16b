//! Ramification and splitting of the primes `Q | m`, from group arithmetic
//! in (A/(m))^×, and the Euler-factor polynomial `J^(-)(X)` built from it.
//!
//! Write `m = Q^v m_Q` with `Q ∤ m_Q`. In the full field the residue degree
//! `f` is the order of `Q` in (A/(m_Q))^×, the ramification index is
//! `Φ(Q^v)` and `g = Φ(m_Q) / f`. In the maximal real subfield `f⁺` is the
//! order of `Q` modulo scalars, `g⁺ = |(A/(m_Q))^× / F_q^×| / f⁺`, and `e⁺`
//! follows from `e⁺ f⁺ g⁺ = Φ(m) / (q - 1)`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::cyclo::IntPoly;
use crate::error::{Error, Result};
use crate::field::FieldCtx;
use crate::poly::FqPoly;
use crate::units::check_modulus;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SplitData {
    pub prime: FqPoly,
    pub deg: usize,
    /// Exponent of `prime` in the modulus.
    pub v: u32,
    pub e: u64,
    pub f: u64,
    pub g: u64,
    pub e_plus: u64,
    pub f_plus: u64,
    pub g_plus: u64,
}

impl SplitData {
    /// `f⁻ = f / f⁺`.
    pub fn f_minus(&self) -> u64 {
        self.f / self.f_plus
    }

    /// `g⁻ = g / g⁺`.
    pub fn g_minus(&self) -> u64 {
        self.g / self.g_plus
    }
}

/// Splitting data of `Q` where `Q^v` exactly divides `m`.
pub fn split_data(field: &FieldCtx, m: &FqPoly, prime: &FqPoly, v: u32) -> Result<SplitData> {
    check_modulus(m)?;
    let qv = field.poly_pow(prime, v);
    let (m_q, r) = field.poly_divrem(m, &qv)?;
    if v == 0 || !r.is_zero() || field.poly_rem(&m_q, prime)?.is_zero() {
        return Err(Error::NotExactDivisor);
    }
    let phi_m = field.phi(m)?;
    let q1 = field.q() - 1;
    let e = field.phi(&qv)?;
    let deg = prime.degree().ok_or(Error::NotExactDivisor)?;

    let (f, f_plus, phi_mq, plus_order) = if m_q.degree() == Some(0) {
        (1, 1, 1, 1)
    } else {
        let phi_mq = field.phi(&m_q)?;
        let base = field.poly_rem(prime, &m_q)?;
        let mut x = base.clone();
        let mut k = 1u64;
        let mut f_plus = None;
        loop {
            if f_plus.is_none() && x.degree() == Some(0) {
                f_plus = Some(k);
            }
            if x.is_one() {
                break;
            }
            x = field.poly_mulmod(&x, &base, &m_q)?;
            k += 1;
        }
        (k, f_plus.expect("1 is a scalar"), phi_mq, phi_mq / q1)
    };
    let g = phi_mq / f;
    let g_plus = plus_order / f_plus;
    let plus_total = phi_m / q1;
    let e_plus = plus_total / (f_plus * g_plus);
    let data = SplitData { prime: prime.clone(), deg, v, e, f, g, e_plus, f_plus, g_plus };
    if e * f * g != phi_m || e_plus * f_plus * g_plus != plus_total {
        return Err(Error::CheckFailed(format!("fundamental identity for {prime}")));
    }
    Ok(data)
}

/// Splitting data for every prime divisor of `m`, in factorization order.
pub fn split_all(field: &FieldCtx, m: &FqPoly) -> Result<Vec<SplitData>> {
    field
        .factorize(m)?
        .iter()
        .map(|(prime, v)| split_data(field, m, prime, *v))
        .collect()
}

/// `J^(-)(X)` together with its per-prime factors
/// `(1 - X^{f deg Q})^g / (1 - X^{f⁺ deg Q})^{g⁺}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JPoly {
    pub value: IntPoly,
    pub per_prime: Vec<(SplitData, IntPoly, IntPoly)>,
}

/// `J^(-)(X)` from the splitting data of the primes dividing `m`.
pub fn j_poly(field: &FieldCtx, m: &FqPoly) -> Result<JPoly> {
    j_poly_from_split(split_all(field, m)?)
}

pub fn j_poly_from_split(split: Vec<SplitData>) -> Result<JPoly> {
    let mut value = IntPoly::one();
    let mut per_prime = Vec::with_capacity(split.len());
    for s in split {
        let num = IntPoly::one_minus_x_pow(s.f as usize * s.deg).pow(s.g);
        let den = IntPoly::one_minus_x_pow(s.f_plus as usize * s.deg).pow(s.g_plus);
        let factor = num.exact_div(&den)?;
        value = value.mul(&factor);
        per_prime.push((s, num, den));
    }
    Ok(JPoly { value, per_prime })
}

/// `W⁻ = Π_Q (f⁻_Q)^{g⁺_Q}` when every `g⁻_Q = 1`, and 0 otherwise.
pub fn w_minus(split: &[SplitData]) -> BigInt {
    if split.iter().any(|s| s.g_minus() != 1) {
        return BigInt::zero();
    }
    split.iter().fold(BigInt::one(), |acc, s| {
        acc * num_traits::pow(BigInt::from(s.f_minus()), s.g_plus as usize)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::poly::enumerate_monic;

    fn p(f: &FieldCtx, c: &[u32]) -> FqPoly {
        FqPoly::from_codes(f, c).unwrap()
    }

    #[test]
    fn example_two_split_data() {
        let f = FieldCtx::prime(3).unwrap();
        let m = p(&f, &[0, 0, 1, 1]);
        let t = split_data(&f, &m, &FqPoly::t(), 2).unwrap();
        assert_eq!((t.f, t.e, t.g, t.f_plus, t.g_plus, t.e_plus), (2, 6, 1, 1, 1, 6));
        let t1 = split_data(&f, &m, &p(&f, &[1, 1]), 1).unwrap();
        assert_eq!((t1.f, t1.e, t1.g, t1.f_plus, t1.g_plus, t1.e_plus), (3, 2, 2, 3, 1, 2));
        assert_eq!(split_data(&f, &m, &FqPoly::t(), 1), Err(Error::NotExactDivisor));
        assert_eq!(split_data(&f, &m, &p(&f, &[2, 1]), 1), Err(Error::NotExactDivisor));
    }

    #[test]
    fn example_two_j_and_w() {
        let f = FieldCtx::prime(3).unwrap();
        let m = p(&f, &[0, 0, 1, 1]);
        let j = j_poly(&f, &m).unwrap();
        assert_eq!(j.value, IntPoly::from_i64s(&[1, 1, 0, -1, -1]));
        let split = split_all(&f, &m).unwrap();
        assert_eq!(w_minus(&split), BigInt::zero());
    }

    #[test]
    fn prime_power_moduli_have_trivial_j() {
        let f = FieldCtx::prime(3).unwrap();
        for m in [p(&f, &[1, 0, 1]), p(&f, &[0, 0, 1]), p(&f, &[1, 2, 1]), p(&f, &[2, 1])] {
            let split = split_all(&f, &m).unwrap();
            assert_eq!(split.len(), 1);
            assert_eq!((split[0].f, split[0].g, split[0].f_plus, split[0].g_plus), (1, 1, 1, 1));
            assert_eq!(j_poly(&f, &m).unwrap().value, IntPoly::one());
            assert_eq!(w_minus(&split), BigInt::one());
        }
    }

    #[test]
    fn fundamental_identities_exhaustive() {
        for q in [2u64, 3, 5] {
            let f = FieldCtx::prime(q).unwrap();
            for d in 1..=3 {
                for m in enumerate_monic(&f, d) {
                    let phi = f.phi(&m).unwrap();
                    let split = split_all(&f, &m).unwrap();
                    for s in &split {
                        assert_eq!(s.e * s.f * s.g, phi);
                        assert_eq!(s.e_plus * s.f_plus * s.g_plus, phi / (q - 1));
                        assert_eq!(s.f % s.f_plus, 0);
                        assert_eq!(s.g % s.g_plus, 0);
                        assert_eq!(s.e % s.e_plus, 0);
                        assert_eq!(s.f_minus() * s.g_minus() * (s.e / s.e_plus), q - 1);
                    }
                    let j = j_poly_from_split(split.clone()).unwrap().value;
                    assert_eq!(j.coeff(0), BigInt::one());
                    assert_eq!(j.eval(&BigInt::one()), w_minus(&split), "m = {m}");
                }
            }
        }
    }
}
