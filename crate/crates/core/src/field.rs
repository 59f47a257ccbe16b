//! The finite field F_q, q = p^n.
//!
//! Elements are packed into a single integer code: the coordinate vector
//! `(c_0, .., c_{n-1})` over the basis `1, x, .., x^{n-1}` of
//! F_p[x]/(defining polynomial) is stored as `c_0 + c_1 p + .. + c_{n-1} p^{n-1}`.
//! The "canonical order" of elements used throughout the crate is the
//! numeric order of these codes, so `0, 1, .., p - 1` are the prime-field
//! elements in their usual order.
//!
//! Multiplication goes through discrete-log tables built from a fixed
//! generator of F_q^×; the same tables give the discrete logs needed by
//! the characters of F_q^×.

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported field order. Log tables are O(q).
pub const MAX_FIELD_ORDER: u64 = 1 << 16;

/// An element of F_q, as its canonical code.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FqElem(pub(crate) u32);

impl FqElem {
    pub const ZERO: FqElem = FqElem(0);
    pub const ONE: FqElem = FqElem(1);

    /// The canonical integer code of the element.
    pub fn code(self) -> u32 {
        self.0
    }

    pub fn is_zero(self) -> bool {
        self.0 == 0
    }
}

impl fmt::Display for FqElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// Context for F_q: characteristic, defining polynomial, fixed generator and
/// log tables. Immutable once built.
#[derive(Clone, Debug)]
pub struct FieldCtx {
    p: u32,
    n: u32,
    q: u32,
    /// Monic, lowest degree first, length n + 1. `None` for prime fields.
    defining_poly: Option<Vec<u32>>,
    generator: FqElem,
    /// `exp[k] = g^k` for `0 <= k < q - 1`.
    exp: Vec<FqElem>,
    /// `log[code]` for nonzero codes; `log[0]` is unused.
    log: Vec<u32>,
}

impl PartialEq for FieldCtx {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p
            && self.n == other.n
            && self.defining_poly == other.defining_poly
            && self.generator == other.generator
    }
}

impl Eq for FieldCtx {}

pub(crate) fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= p {
        if p % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Distinct prime divisors in increasing order.
pub(crate) fn prime_divisors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

// Dense F_p[x] helpers used only to build the field.
fn fp_trim(v: &mut Vec<u32>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn fp_rem(a: &[u32], b: &[u32], p: u32) -> Vec<u32> {
    let mut r = a.to_vec();
    fp_trim(&mut r);
    let db = b.len() - 1;
    let lead_inv = mod_inv(b[db], p);
    while r.len() > db {
        let top = r.len() - 1;
        let c = (r[top] as u64 * lead_inv as u64 % p as u64) as u32;
        let shift = top - db;
        for (i, &bi) in b.iter().enumerate() {
            let sub = (c as u64 * bi as u64 % p as u64) as u32;
            r[shift + i] = (r[shift + i] + p - sub) % p;
        }
        fp_trim(&mut r);
    }
    r
}

fn mod_inv(a: u32, p: u32) -> u32 {
    // p is prime, so a^(p-2).
    let mut result = 1u64;
    let mut base = a as u64 % p as u64;
    let mut e = p - 2;
    while e > 0 {
        if e & 1 == 1 {
            result = result * base % p as u64;
        }
        base = base * base % p as u64;
        e >>= 1;
    }
    result as u32
}

/// Monic polynomials over F_p of degree `d`, constant coefficient varying fastest.
fn fp_monic(p: u32, d: usize, index: u64) -> Vec<u32> {
    let mut v = Vec::with_capacity(d + 1);
    let mut x = index;
    for _ in 0..d {
        v.push((x % p as u64) as u32);
        x /= p as u64;
    }
    v.push(1);
    v
}

fn fp_is_irreducible(f: &[u32], p: u32) -> bool {
    let deg = f.len() - 1;
    if deg == 0 {
        return false;
    }
    for d in 1..=deg / 2 {
        let count = (p as u64).pow(d as u32);
        for idx in 0..count {
            let g = fp_monic(p, d, idx);
            if fp_rem(f, &g, p).is_empty() {
                return false;
            }
        }
    }
    true
}

/// Lexicographically first monic irreducible of degree `n` over F_p, in the
/// order used by [`crate::poly::enumerate_monic`] (constant term fastest).
pub fn smallest_irreducible(p: u32, n: u32) -> Vec<u32> {
    let count = (p as u64).pow(n);
    (0..count)
        .map(|idx| fp_monic(p, n as usize, idx))
        .find(|f| fp_is_irreducible(f, p))
        .expect("irreducible polynomials exist in every degree")
}

impl FieldCtx {
    /// Builds F_{p^n}. When `defining_poly` is absent and `n > 1`, the
    /// smallest monic irreducible of degree `n` is used. The generator is the
    /// smallest element (in code order) of multiplicative order `q - 1`.
    pub fn new(p: u64, n: u32, defining_poly: Option<Vec<u32>>) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidDegree);
        }
        let q = p
            .checked_pow(n)
            .filter(|&q| q <= MAX_FIELD_ORDER)
            .ok_or(Error::FieldTooLarge(p.saturating_pow(n)))?;
        let p = p as u32;
        let defining_poly = if n == 1 {
            if defining_poly.as_ref().is_some_and(|f| f.len() != 2 || f[1] != 1) {
                return Err(Error::NotIrreducible);
            }
            None
        } else {
            match defining_poly {
                Some(f) => {
                    let ok = f.len() == n as usize + 1
                        && f[n as usize] == 1
                        && f.iter().all(|&c| c < p)
                        && fp_is_irreducible(&f, p);
                    if !ok {
                        return Err(Error::NotIrreducible);
                    }
                    Some(f)
                }
                None => Some(smallest_irreducible(p, n)),
            }
        };
        let mut ctx = FieldCtx {
            p,
            n,
            q: q as u32,
            defining_poly,
            generator: FqElem::ONE,
            exp: Vec::new(),
            log: Vec::new(),
        };
        let g = (1..ctx.q)
            .map(FqElem)
            .find(|&g| ctx.slow_has_full_order(g))
            .expect("F_q^x is cyclic");
        ctx.install_generator(g);
        Ok(ctx)
    }

    /// Shorthand for a prime field F_p.
    pub fn prime(p: u64) -> Result<Self> {
        Self::new(p, 1, None)
    }

    /// The same field with a different fixed generator of F_q^×.
    pub fn with_generator(&self, g: FqElem) -> Result<Self> {
        if g.0 >= self.q || g.is_zero() || !self.slow_has_full_order(g) {
            return Err(Error::NotAGenerator);
        }
        let mut ctx = self.clone();
        ctx.install_generator(g);
        Ok(ctx)
    }

    /// All generators of F_q^×, in code order.
    pub fn generators(&self) -> Vec<FqElem> {
        (1..self.q)
            .map(FqElem)
            .filter(|&g| self.order(g) == (self.q - 1) as u64)
            .collect()
    }

    fn install_generator(&mut self, g: FqElem) {
        let order = (self.q - 1) as usize;
        let mut exp = Vec::with_capacity(order);
        let mut log = vec![0u32; self.q as usize];
        let mut x = FqElem::ONE;
        for k in 0..order {
            exp.push(x);
            log[x.0 as usize] = k as u32;
            x = self.slow_mul(x, g);
        }
        debug_assert_eq!(x, FqElem::ONE);
        self.generator = g;
        self.exp = exp;
        self.log = log;
    }

    fn slow_mul(&self, a: FqElem, b: FqElem) -> FqElem {
        match &self.defining_poly {
            None => FqElem(((a.0 as u64 * b.0 as u64) % self.p as u64) as u32),
            Some(f) => {
                let ca = self.coords(a);
                let cb = self.coords(b);
                let mut prod = vec![0u32; 2 * self.n as usize - 1];
                for (i, &x) in ca.iter().enumerate() {
                    for (j, &y) in cb.iter().enumerate() {
                        prod[i + j] = ((prod[i + j] as u64 + x as u64 * y as u64) % self.p as u64) as u32;
                    }
                }
                let r = fp_rem(&prod, f, self.p);
                self.from_coords_unchecked(&r)
            }
        }
    }

    fn slow_pow(&self, a: FqElem, mut e: u64) -> FqElem {
        let mut result = FqElem::ONE;
        let mut base = a;
        while e > 0 {
            if e & 1 == 1 {
                result = self.slow_mul(result, base);
            }
            base = self.slow_mul(base, base);
            e >>= 1;
        }
        result
    }

    fn slow_has_full_order(&self, g: FqElem) -> bool {
        let order = (self.q - 1) as u64;
        if order == 1 {
            return g == FqElem::ONE;
        }
        prime_divisors(order)
            .into_iter()
            .all(|r| self.slow_pow(g, order / r) != FqElem::ONE)
    }

    pub fn p(&self) -> u64 {
        self.p as u64
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q as u64
    }

    pub fn defining_poly(&self) -> Option<&[u32]> {
        self.defining_poly.as_deref()
    }

    pub fn generator(&self) -> FqElem {
        self.generator
    }

    /// All elements in canonical order.
    pub fn elements(&self) -> impl Iterator<Item = FqElem> {
        (0..self.q).map(FqElem)
    }

    pub fn elem(&self, code: u32) -> Result<FqElem> {
        if code < self.q {
            Ok(FqElem(code))
        } else {
            Err(Error::InvalidElement)
        }
    }

    /// Image of an integer in the prime field.
    pub fn from_int(&self, k: i64) -> FqElem {
        FqElem(k.rem_euclid(self.p as i64) as u32)
    }

    pub fn coords(&self, a: FqElem) -> Vec<u32> {
        let mut x = a.0;
        (0..self.n)
            .map(|_| {
                let c = x % self.p;
                x /= self.p;
                c
            })
            .collect()
    }

    fn from_coords_unchecked(&self, c: &[u32]) -> FqElem {
        FqElem(c.iter().rev().fold(0, |acc, &ci| acc * self.p + ci))
    }

    /// Element with the given coordinates; missing trailing coordinates are zero.
    pub fn from_coords(&self, c: &[u32]) -> Result<FqElem> {
        if c.len() > self.n as usize || c.iter().any(|&ci| ci >= self.p) {
            return Err(Error::InvalidElement);
        }
        Ok(self.from_coords_unchecked(c))
    }

    /// True when the element lies in the prime field F_p.
    pub fn is_prime_subfield(&self, a: FqElem) -> bool {
        a.0 < self.p
    }

    pub fn add(&self, a: FqElem, b: FqElem) -> FqElem {
        if self.n == 1 {
            let s = a.0 + b.0;
            return FqElem(if s >= self.p { s - self.p } else { s });
        }
        if self.p == 2 {
            return FqElem(a.0 ^ b.0);
        }
        let (mut x, mut y, mut out, mut place) = (a.0, b.0, 0, 1);
        while x > 0 || y > 0 {
            out += ((x % self.p + y % self.p) % self.p) * place;
            x /= self.p;
            y /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn neg(&self, a: FqElem) -> FqElem {
        if self.n == 1 {
            return FqElem(if a.0 == 0 { 0 } else { self.p - a.0 });
        }
        if self.p == 2 {
            return a;
        }
        let (mut x, mut out, mut place) = (a.0, 0, 1);
        while x > 0 {
            out += ((self.p - x % self.p) % self.p) * place;
            x /= self.p;
            place *= self.p;
        }
        FqElem(out)
    }

    pub fn sub(&self, a: FqElem, b: FqElem) -> FqElem {
        self.add(a, self.neg(b))
    }

    pub fn mul(&self, a: FqElem, b: FqElem) -> FqElem {
        if a.is_zero() || b.is_zero() {
            return FqElem::ZERO;
        }
        let order = self.q - 1;
        let k = self.log[a.0 as usize] + self.log[b.0 as usize];
        self.exp[(if k >= order { k - order } else { k }) as usize]
    }

    pub fn inv(&self, a: FqElem) -> Result<FqElem> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let order = self.q - 1;
        let k = self.log[a.0 as usize];
        Ok(self.exp[((order - k) % order) as usize])
    }

    pub fn div(&self, a: FqElem, b: FqElem) -> Result<FqElem> {
        Ok(self.mul(a, self.inv(b)?))
    }

    /// Square-and-multiply exponentiation; negative exponents invert first.
    pub fn pow(&self, a: FqElem, e: i64) -> Result<FqElem> {
        let base = if e < 0 { self.inv(a)? } else { a };
        let mut e = e.unsigned_abs();
        let mut result = FqElem::ONE;
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                result = self.mul(result, b);
            }
            b = self.mul(b, b);
            e >>= 1;
        }
        Ok(result)
    }

    /// Discrete log with respect to the fixed generator.
    pub fn log(&self, a: FqElem) -> Result<u64> {
        if a.is_zero() {
            return Err(Error::ZeroArgument);
        }
        Ok(self.log[a.0 as usize] as u64)
    }

    /// `g^k` for the fixed generator `g`; `k` is taken modulo `q - 1`.
    pub fn exp(&self, k: i64) -> FqElem {
        let order = (self.q - 1) as i64;
        self.exp[k.rem_euclid(order) as usize]
    }

    /// Multiplicative order of a nonzero element.
    pub fn order(&self, a: FqElem) -> u64 {
        assert!(!a.is_zero(), "order of zero");
        let group = (self.q - 1) as u64;
        let k = self.log[a.0 as usize] as u64;
        group / num_integer::gcd(group, k)
    }
}
