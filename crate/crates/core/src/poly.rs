//! Dense polynomials over F_q: the ring A = F_q[T].

use std::cmp::Ordering;
use std::fmt;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};

/// A polynomial in T over F_q, lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct FqPoly {
    coeffs: Vec<FqElem>,
}

impl FqPoly {
    pub fn zero() -> Self {
        FqPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        FqPoly { coeffs: vec![FqElem::ONE] }
    }

    pub fn constant(c: FqElem) -> Self {
        Self::new(vec![c])
    }

    /// The monomial T.
    pub fn t() -> Self {
        FqPoly { coeffs: vec![FqElem::ZERO, FqElem::ONE] }
    }

    pub fn new(mut coeffs: Vec<FqElem>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        FqPoly { coeffs }
    }

    /// Builds a polynomial from element codes, constant term first.
    pub fn from_codes(field: &FieldCtx, codes: &[u32]) -> Result<Self> {
        let coeffs = codes
            .iter()
            .map(|&c| field.elem(c))
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(coeffs))
    }

    pub fn coeffs(&self) -> &[FqElem] {
        &self.coeffs
    }

    pub fn codes(&self) -> Vec<u32> {
        self.coeffs.iter().map(|c| c.code()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs.len() == 1 && self.coeffs[0] == FqElem::ONE
    }

    /// Degree, with `None` standing for the degree of the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<FqElem> {
        self.coeffs.last().copied()
    }

    pub fn coeff(&self, i: usize) -> FqElem {
        self.coeffs.get(i).copied().unwrap_or(FqElem::ZERO)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == Some(FqElem::ONE)
    }

    /// Evaluation index `Σ code_i q^i`. Equal-degree polynomials sort by this
    /// key exactly as [`enumerate_monic`] lists them.
    pub fn index(&self, q: u64) -> u128 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u128, |acc, c| acc * q as u128 + c.code() as u128)
    }

    /// Canonical total order: by degree, then constant-term-fastest
    /// lexicographic order of coefficient codes.
    pub fn canonical_cmp(&self, other: &Self) -> Ordering {
        self.coeffs
            .len()
            .cmp(&other.coeffs.len())
            .then_with(|| self.coeffs.iter().rev().cmp(other.coeffs.iter().rev()))
    }
}

impl fmt::Display for FqPoly {
    /// Plain rendering using element codes, e.g. `T^2 + 2T + 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match (i, c.code()) {
                (0, k) => write!(f, "{k}")?,
                (1, 1) => write!(f, "T")?,
                (1, k) => write!(f, "{k}T")?,
                (e, 1) => write!(f, "T^{e}")?,
                (e, k) => write!(f, "{k}T^{e}")?,
            }
        }
        Ok(())
    }
}

/// All `q^d` monic polynomials of degree `d`. The non-leading coefficients
/// count up like digits of a base-q number with the constant term as the
/// least significant digit, so for q = 3, d = 1 the order is T, T+1, T+2.
pub fn enumerate_monic(field: &FieldCtx, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = field.q();
    let count = (q as u128).pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d + 1);
        for _ in 0..d {
            coeffs.push(FqElem((idx % q as u128) as u32));
            idx /= q as u128;
        }
        coeffs.push(FqElem::ONE);
        FqPoly { coeffs }
    })
}

/// All polynomials of degree `< d` (including zero), in index order.
pub fn enumerate_below(field: &FieldCtx, d: usize) -> impl Iterator<Item = FqPoly> + '_ {
    let q = field.q();
    let count = (q as u128).pow(d as u32);
    (0..count).map(move |mut idx| {
        let mut coeffs = Vec::with_capacity(d);
        for _ in 0..d {
            coeffs.push(FqElem((idx % q as u128) as u32));
            idx /= q as u128;
        }
        FqPoly::new(coeffs)
    })
}

impl FieldCtx {
    pub fn poly_add(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new((0..n).map(|i| self.add(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_neg(&self, a: &FqPoly) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|&c| self.neg(c)).collect())
    }

    pub fn poly_sub(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        FqPoly::new((0..n).map(|i| self.sub(a.coeff(i), b.coeff(i))).collect())
    }

    pub fn poly_scale(&self, a: &FqPoly, c: FqElem) -> FqPoly {
        FqPoly::new(a.coeffs.iter().map(|&x| self.mul(x, c)).collect())
    }

    pub fn poly_mul(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        if a.is_zero() || b.is_zero() {
            return FqPoly::zero();
        }
        let mut out = vec![FqElem::ZERO; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, &x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, &y) in b.coeffs.iter().enumerate() {
                out[i + j] = self.add(out[i + j], self.mul(x, y));
            }
        }
        FqPoly::new(out)
    }

    /// Euclidean division: returns `(s, r)` with `a = s b + r`, `deg r < deg b`.
    pub fn poly_divrem(&self, a: &FqPoly, b: &FqPoly) -> Result<(FqPoly, FqPoly)> {
        let db = b.degree().ok_or(Error::DivisionByZero)?;
        let lead_inv = self.inv(b.coeffs[db])?;
        let mut r = a.coeffs.clone();
        if r.len() <= db {
            return Ok((FqPoly::zero(), a.clone()));
        }
        let mut s = vec![FqElem::ZERO; r.len() - db];
        for top in (db..r.len()).rev() {
            let c = self.mul(r[top], lead_inv);
            if c.is_zero() {
                continue;
            }
            let shift = top - db;
            s[shift] = c;
            for (i, &bi) in b.coeffs.iter().enumerate() {
                r[shift + i] = self.sub(r[shift + i], self.mul(c, bi));
            }
        }
        r.truncate(db);
        Ok((FqPoly::new(s), FqPoly::new(r)))
    }

    pub fn poly_rem(&self, a: &FqPoly, b: &FqPoly) -> Result<FqPoly> {
        Ok(self.poly_divrem(a, b)?.1)
    }

    /// Scales to leading coefficient 1; zero stays zero.
    pub fn poly_monic(&self, a: &FqPoly) -> FqPoly {
        match a.leading() {
            None => FqPoly::zero(),
            Some(l) => self.poly_scale(a, self.inv(l).expect("nonzero leading coefficient")),
        }
    }

    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn poly_gcd(&self, a: &FqPoly, b: &FqPoly) -> FqPoly {
        let (mut x, mut y) = (a.clone(), b.clone());
        while !y.is_zero() {
            let r = self.poly_rem(&x, &y).expect("nonzero divisor");
            x = y;
            y = r;
        }
        self.poly_monic(&x)
    }

    /// Extended Euclid: `(g, u, v)` with `u a + v b = g`, `g` monic.
    pub fn poly_ext_gcd(&self, a: &FqPoly, b: &FqPoly) -> (FqPoly, FqPoly, FqPoly) {
        let (mut r0, mut r1) = (a.clone(), b.clone());
        let (mut u0, mut u1) = (FqPoly::one(), FqPoly::zero());
        let (mut v0, mut v1) = (FqPoly::zero(), FqPoly::one());
        while !r1.is_zero() {
            let (s, r) = self.poly_divrem(&r0, &r1).expect("nonzero divisor");
            let u2 = self.poly_sub(&u0, &self.poly_mul(&s, &u1));
            let v2 = self.poly_sub(&v0, &self.poly_mul(&s, &v1));
            r0 = std::mem::replace(&mut r1, r);
            u0 = std::mem::replace(&mut u1, u2);
            v0 = std::mem::replace(&mut v1, v2);
        }
        match r0.leading() {
            None => (r0, u0, v0),
            Some(l) => {
                let li = self.inv(l).expect("nonzero");
                (
                    self.poly_scale(&r0, li),
                    self.poly_scale(&u0, li),
                    self.poly_scale(&v0, li),
                )
            }
        }
    }

    pub fn poly_mulmod(&self, a: &FqPoly, b: &FqPoly, m: &FqPoly) -> Result<FqPoly> {
        self.poly_rem(&self.poly_mul(a, b), m)
    }

    /// `a^e mod m` by square-and-multiply.
    pub fn poly_powmod(&self, a: &FqPoly, mut e: u128, m: &FqPoly) -> Result<FqPoly> {
        let mut result = self.poly_rem(&FqPoly::one(), m)?;
        let mut base = self.poly_rem(a, m)?;
        while e > 0 {
            if e & 1 == 1 {
                result = self.poly_mulmod(&result, &base, m)?;
            }
            base = self.poly_mulmod(&base, &base, m)?;
            e >>= 1;
        }
        Ok(result)
    }

    pub fn poly_pow(&self, a: &FqPoly, e: u32) -> FqPoly {
        (0..e).fold(FqPoly::one(), |acc, _| self.poly_mul(&acc, a))
    }

    pub fn poly_eval(&self, a: &FqPoly, x: FqElem) -> FqElem {
        a.coeffs
            .iter()
            .rev()
            .fold(FqElem::ZERO, |acc, &c| self.add(self.mul(acc, x), c))
    }

    /// Rabin's test: `f` of degree n is irreducible iff `T^{q^n} = T mod f`
    /// and `gcd(T^{q^{n/r}} - T, f) = 1` for each prime `r | n`.
    pub fn is_irreducible(&self, f: &FqPoly) -> bool {
        let n = match f.degree() {
            None | Some(0) => return false,
            Some(n) => n,
        };
        let q = self.q() as u128;
        let t = FqPoly::t();
        // T^{q^k} mod f by repeated q-th powering
        let frob = |k: usize| -> FqPoly {
            (0..k).fold(self.poly_rem(&t, f).unwrap(), |acc, _| {
                self.poly_powmod(&acc, q, f).unwrap()
            })
        };
        if self.poly_sub(&frob(n), &self.poly_rem(&t, f).unwrap()).is_zero() {
            crate::field::prime_divisors(n as u64).into_iter().all(|r| {
                let h = self.poly_sub(&frob(n / r as usize), &t);
                self.poly_gcd(&h, f).is_one()
            })
        } else {
            false
        }
    }

    /// Factorization of a monic polynomial by trial division, sorted by
    /// (degree, canonical order).
    pub fn factorize(&self, m: &FqPoly) -> Result<Vec<(FqPoly, u32)>> {
        if !m.is_monic() {
            return Err(Error::NotMonic);
        }
        let mut rest = m.clone();
        let mut out = Vec::new();
        let mut d = 1;
        while 2 * d <= rest.degree().unwrap_or(0) {
            for cand in enumerate_monic(self, d) {
                let mut v = 0;
                loop {
                    let (s, r) = self.poly_divrem(&rest, &cand)?;
                    if !r.is_zero() {
                        break;
                    }
                    rest = s;
                    v += 1;
                }
                if v > 0 {
                    out.push((cand, v));
                }
                if 2 * d > rest.degree().unwrap_or(0) {
                    break;
                }
            }
            d += 1;
        }
        if rest.degree().unwrap_or(0) >= 1 {
            match out.iter_mut().find(|(f, _)| *f == rest) {
                Some(entry) => entry.1 += 1,
                None => out.push((rest, 1)),
            }
        }
        out.sort_by(|a, b| a.0.canonical_cmp(&b.0));
        Ok(out)
    }

    /// Order of `(A/(m))^×`, from the factorization of `m`.
    pub fn phi(&self, m: &FqPoly) -> Result<u64> {
        if !m.is_monic() {
            return Err(Error::NotMonic);
        }
        let q = self.q();
        self.factorize(m)?.iter().try_fold(1u64, |acc, (f, v)| {
            let d = f.degree().unwrap() as u32;
            let qd = q.checked_pow(d).ok_or(Error::Overflow("Phi(m)"))?;
            let part = qd
                .checked_pow(v - 1)
                .and_then(|x| x.checked_mul(qd - 1))
                .ok_or(Error::Overflow("Phi(m)"))?;
            acc.checked_mul(part).ok_or(Error::Overflow("Phi(m)"))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f3() -> FieldCtx {
        FieldCtx::prime(3).unwrap()
    }

    fn p(f: &FieldCtx, c: &[u32]) -> FqPoly {
        FqPoly::from_codes(f, c).unwrap()
    }

    #[test]
    fn multiply_in_char_three() {
        let f = f3();
        // (T+1)(T+2) = T^2 + 2
        assert_eq!(f.poly_mul(&p(&f, &[1, 1]), &p(&f, &[2, 1])), p(&f, &[2, 0, 1]));
    }

    #[test]
    fn gcd_and_powmod() {
        let f = f3();
        let t = FqPoly::t();
        let t2 = p(&f, &[0, 0, 1]);
        assert_eq!(f.poly_gcd(&t2, &t), t);
        assert_eq!(f.poly_powmod(&p(&f, &[1, 1]), 3, &t2).unwrap(), FqPoly::one());
        assert_eq!(f.poly_divrem(&t, &FqPoly::zero()), Err(Error::DivisionByZero));
    }

    #[test]
    fn gcd_is_monic() {
        let f = f3();
        let a = p(&f, &[0, 2]); // 2T
        let b = p(&f, &[0, 0, 2]); // 2T^2
        assert_eq!(f.poly_gcd(&a, &b), FqPoly::t());
    }

    #[test]
    fn monic_enumeration_order() {
        let f = f3();
        let lin: Vec<_> = enumerate_monic(&f, 1).collect();
        assert_eq!(lin, vec![p(&f, &[0, 1]), p(&f, &[1, 1]), p(&f, &[2, 1])]);
        let c: Vec<_> = enumerate_monic(&f, 0).collect();
        assert_eq!(c, vec![FqPoly::one()]);
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(enumerate_monic(&f2, 2).count(), 4);
    }

    #[test]
    fn factorize_examples() {
        let f = f3();
        let m = p(&f, &[0, 0, 1, 1]); // T^3 + T^2
        assert_eq!(
            f.factorize(&m).unwrap(),
            vec![(FqPoly::t(), 2), (p(&f, &[1, 1]), 1)]
        );
        let m = p(&f, &[1, 0, 1]);
        assert_eq!(f.factorize(&m).unwrap(), vec![(m.clone(), 1)]);
        let lin = p(&f, &[2, 1]);
        assert_eq!(f.factorize(&lin).unwrap(), vec![(lin.clone(), 1)]);
        assert_eq!(f.factorize(&p(&f, &[1, 2])), Err(Error::NotMonic));
        // (T+1)^4 in F_3: trial division must keep dividing
        let m = f.poly_pow(&p(&f, &[1, 1]), 4);
        assert_eq!(f.factorize(&m).unwrap(), vec![(p(&f, &[1, 1]), 4)]);
    }

    #[test]
    fn phi_examples() {
        let f = f3();
        assert_eq!(f.phi(&p(&f, &[1, 0, 1])).unwrap(), 8);
        assert_eq!(f.phi(&p(&f, &[0, 0, 1, 1])).unwrap(), 12);
        for q in [2u64, 3, 5, 7] {
            let f = FieldCtx::prime(q).unwrap();
            assert_eq!(f.phi(&p(&f, &[1, 1])).unwrap(), q - 1);
        }
    }

    #[test]
    fn phi_counts_units_exhaustively() {
        for (pp, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FieldCtx::new(pp, n, None).unwrap();
            for d in 1..=3 {
                for m in enumerate_monic(&f, d) {
                    let units = enumerate_below(&f, d)
                        .filter(|a| f.poly_gcd(a, &m).is_one())
                        .count() as u64;
                    assert_eq!(f.phi(&m).unwrap(), units, "m = {m}");
                }
            }
        }
    }

    #[test]
    fn factors_remultiply_and_are_irreducible() {
        for (pp, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FieldCtx::new(pp, n, None).unwrap();
            for d in 1..=4 {
                for m in enumerate_monic(&f, d) {
                    let fac = f.factorize(&m).unwrap();
                    let back = fac
                        .iter()
                        .fold(FqPoly::one(), |acc, (q, v)| f.poly_mul(&acc, &f.poly_pow(q, *v)));
                    assert_eq!(back, m);
                    for (q, _) in &fac {
                        assert!(q.is_monic());
                        assert!(f.is_irreducible(q), "{q} reported irreducible");
                        if q.degree().unwrap() <= 3 {
                            assert!(f.elements().all(|x| !f.poly_eval(q, x).is_zero()) || q.degree() == Some(1));
                        }
                    }
                }
            }
        }
    }

    #[test]
    fn irreducibility_test_agrees_with_root_check_for_low_degree() {
        let f = FieldCtx::prime(5).unwrap();
        for d in 2..=3 {
            for m in enumerate_monic(&f, d) {
                let has_root = f.elements().any(|x| f.poly_eval(&m, x).is_zero());
                assert_eq!(f.is_irreducible(&m), !has_root, "m = {m}");
            }
        }
    }

    #[test]
    fn divrem_identity() {
        let f = FieldCtx::new(2, 2, None).unwrap();
        let a = FqPoly::from_codes(&f, &[1, 2, 3, 0, 1]).unwrap();
        let b = FqPoly::from_codes(&f, &[3, 1, 2]).unwrap();
        let (s, r) = f.poly_divrem(&a, &b).unwrap();
        assert!(r.degree() < b.degree());
        assert_eq!(f.poly_add(&f.poly_mul(&s, &b), &r), a);
    }
}
