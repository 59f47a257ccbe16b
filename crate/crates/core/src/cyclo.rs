//! Exact arithmetic in Z[ζ_n] = Z[x]/(Φ_n(x)) and in polynomial rings over
//! it, with arbitrary-precision integer coordinates.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

/// Polynomial in X with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_i64s(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        IntPoly { coeffs: vec![BigInt::one()] }
    }

    /// `1 - X^k`.
    pub fn one_minus_x_pow(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[0] += 1;
        c[k] -= 1;
        Self::new(c)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_default()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn neg(&self) -> Self {
        Self::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u64) -> Self {
        (0..e).fold(Self::one(), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs
            .iter()
            .rev()
            .fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact quotient `self / divisor` in Z[X]. Fails unless the division
    /// leaves no remainder and every quotient coefficient is an integer.
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        let db = divisor.degree().ok_or(Error::DivisionByZero)?;
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let da = self.degree().unwrap();
        if da < db {
            return Err(Error::InexactDivision("integer polynomial division"));
        }
        let lead = &divisor.coeffs[db];
        let mut r = self.coeffs.clone();
        let mut quot = vec![BigInt::zero(); da - db + 1];
        for k in (0..=da - db).rev() {
            let (qk, rem) = r[k + db].div_rem(lead);
            if !rem.is_zero() {
                return Err(Error::InexactDivision("integer polynomial division"));
            }
            if qk.is_zero() {
                continue;
            }
            for (i, b) in divisor.coeffs.iter().enumerate() {
                r[k + i] -= &qk * b;
            }
            quot[k] = qk;
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision("integer polynomial division"));
        }
        Ok(Self::new(quot))
    }
}

impl fmt::Display for IntPoly {
    /// Renders as `1 - 2X^2 + 9X^4`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { '-' } else { '+' })?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}")?;
                    }
                    if i == 1 {
                        write!(f, "X")?;
                    } else {
                        write!(f, "X^{i}")?;
                    }
                }
            }
        }
        Ok(())
    }
}

fn divisors(n: u64) -> Vec<u64> {
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Euler's totient.
pub fn euler_phi(n: u64) -> u64 {
    crate::field::prime_divisors(n)
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// Φ_n(x), obtained from `x^n - 1` by exact division by Φ_d for every proper
/// divisor `d` of `n`.
pub fn cyclotomic_poly(n: u64) -> IntPoly {
    assert!(n >= 1, "cyclotomic_poly: n must be positive");
    let mut result = IntPoly::one_minus_x_pow(n as usize).neg();
    for d in divisors(n) {
        if d < n {
            result = result
                .exact_div(&cyclotomic_poly(d))
                .expect("Φ_d divides x^n - 1");
        }
    }
    result
}

/// Element of Z[ζ_n], as coordinates over `1, x, .., x^{φ(n)-1}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CycNum {
    coords: Vec<BigInt>,
}

impl CycNum {
    pub fn coords(&self) -> &[BigInt] {
        &self.coords
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    /// The integer value, when all non-constant coordinates vanish.
    pub fn to_integer(&self) -> Option<BigInt> {
        if self.coords[1..].iter().all(|c| c.is_zero()) {
            Some(self.coords[0].clone())
        } else {
            None
        }
    }

    /// `Some((sign, k))` when the element is `sign * x^k` for a basis monomial.
    fn as_signed_monomial(&self) -> Option<(bool, usize)> {
        let mut found = None;
        for (k, c) in self.coords.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if found.is_some() || !c.abs().is_one() {
                return None;
            }
            found = Some((c.is_positive(), k));
        }
        found
    }
}

/// Context for Z[ζ_n]: the modulus Φ_n and a table of the powers of ζ_n.
#[derive(Clone, Debug)]
pub struct CycCtx {
    n: u64,
    modulus: IntPoly,
    dim: usize,
    /// Low coefficients of Φ_n (the leading 1 omitted), as machine integers.
    reducer: Vec<i64>,
    powers: Vec<CycNum>,
}

impl PartialEq for CycCtx {
    fn eq(&self, other: &Self) -> bool {
        self.n == other.n
    }
}

impl CycCtx {
    pub fn new(n: u64) -> Self {
        assert!(n >= 1, "root of unity order must be positive");
        let modulus = cyclotomic_poly(n);
        let dim = modulus.degree().unwrap();
        let reducer = modulus.coeffs[..dim]
            .iter()
            .map(|c| i64::try_from(c).expect("cyclotomic coefficients are small"))
            .collect();
        let mut ctx = CycCtx { n, modulus, dim, reducer, powers: Vec::new() };
        let mut powers = Vec::with_capacity(n as usize);
        let mut x = ctx.one();
        let gen = ctx.x();
        for _ in 0..n {
            powers.push(x.clone());
            x = ctx.mul(&x, &gen);
        }
        ctx.powers = powers;
        ctx
    }

    pub fn order(&self) -> u64 {
        self.n
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn modulus(&self) -> &IntPoly {
        &self.modulus
    }

    pub fn zero(&self) -> CycNum {
        CycNum { coords: vec![BigInt::zero(); self.dim] }
    }

    pub fn one(&self) -> CycNum {
        self.from_int(BigInt::one())
    }

    pub fn from_int(&self, k: impl Into<BigInt>) -> CycNum {
        let mut z = self.zero();
        z.coords[0] = k.into();
        z
    }

    /// Builds an element from coordinates (missing entries are zero, extra
    /// entries are reduced).
    pub fn from_coords(&self, c: &[BigInt]) -> CycNum {
        if c.len() <= self.dim {
            let mut z = self.zero();
            for (i, x) in c.iter().enumerate() {
                z.coords[i] = x.clone();
            }
            z
        } else {
            self.reduce(c.to_vec())
        }
    }

    fn x(&self) -> CycNum {
        if self.dim == 1 {
            // ζ_1 = 1, ζ_2 = -1
            self.from_int(-self.reducer[0])
        } else {
            let mut z = self.zero();
            z.coords[1] = BigInt::one();
            z
        }
    }

    fn reduce(&self, mut buf: Vec<BigInt>) -> CycNum {
        for k in (self.dim..buf.len()).rev() {
            if buf[k].is_zero() {
                continue;
            }
            let c = std::mem::take(&mut buf[k]);
            for (i, &r) in self.reducer.iter().enumerate() {
                if r != 0 {
                    buf[k - self.dim + i] -= &c * r;
                }
            }
        }
        buf.truncate(self.dim);
        buf.resize(self.dim, BigInt::zero());
        CycNum { coords: buf }
    }

    pub fn add(&self, a: &CycNum, b: &CycNum) -> CycNum {
        CycNum { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x + y).collect() }
    }

    pub fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        CycNum { coords: a.coords.iter().zip(&b.coords).map(|(x, y)| x - y).collect() }
    }

    pub fn neg(&self, a: &CycNum) -> CycNum {
        CycNum { coords: a.coords.iter().map(|x| -x).collect() }
    }

    pub fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        if a.is_zero() || b.is_zero() {
            return self.zero();
        }
        if let Some(c) = self.mul_small(a, b) {
            return c;
        }
        let mut buf = vec![BigInt::zero(); 2 * self.dim - 1];
        for (i, x) in a.coords.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coords.iter().enumerate() {
                if !y.is_zero() {
                    buf[i + j] += x * y;
                }
            }
        }
        self.reduce(buf)
    }

    pub fn scale(&self, a: &CycNum, k: &BigInt) -> CycNum {
        CycNum { coords: a.coords.iter().map(|x| x * k).collect() }
    }

    /// ζ_n^k, with `k` taken modulo `n`.
    pub fn zeta_power(&self, k: i64) -> CycNum {
        self.powers[k.rem_euclid(self.n as i64) as usize].clone()
    }

    /// Adds `ζ_n^k` into `acc` in place.
    pub fn add_zeta_power(&self, acc: &mut CycNum, k: i64, times: &BigInt) {
        let p = &self.powers[k.rem_euclid(self.n as i64) as usize];
        for (a, c) in acc.coords.iter_mut().zip(&p.coords) {
            if !c.is_zero() {
                *a += c * times;
            }
        }
    }

    /// Σ_k counts[k] ζ_n^k for a table of exponent counts of length `n`.
    pub fn from_exponent_counts(&self, counts: &[i64]) -> CycNum {
        let mut acc = self.zero();
        for (k, &c) in counts.iter().enumerate() {
            if c != 0 {
                self.add_zeta_power(&mut acc, k as i64, &BigInt::from(c));
            }
        }
        acc
    }

    /// Inverse in the fraction field Q(ζ_n), via extended Euclid of the
    /// element against Φ_n over Q.
    pub fn rational_inverse(&self, a: &CycNum) -> Result<Vec<BigRational>> {
        if a.is_zero() {
            return Err(Error::DivisionByZero);
        }
        let to_rat = |v: &[BigInt]| -> Vec<BigRational> {
            v.iter().map(|c| BigRational::from_integer(c.clone())).collect()
        };
        let (g, u) = rat_ext_gcd(to_rat(&a.coords), to_rat(&self.modulus.coeffs));
        debug_assert_eq!(g.len(), 1, "Φ_n is irreducible");
        let inv_g = g[0].recip();
        Ok(u.into_iter().map(|c| c * &inv_g).collect())
    }

    /// Exact quotient `a / b` in Z[ζ_n]. Unit monomials `±ζ^k` are divided by
    /// multiplying with their inverse power; other divisors go through the
    /// fraction field with an integrality check.
    pub fn exact_div(&self, a: &CycNum, b: &CycNum) -> Result<CycNum> {
        self.divisor(b)?.divide(self, a)
    }

    pub(crate) fn divisor(&self, b: &CycNum) -> Result<Divisor> {
        if b.is_zero() {
            return Err(Error::DivisionByZero);
        }
        if let Some((positive, k)) = b.as_signed_monomial() {
            let inv = self.zeta_power(-(k as i64));
            return Ok(Divisor::Unit(if positive { inv } else { self.neg(&inv) }));
        }
        let inv = self.rational_inverse(b)?;
        let den = inv.iter().fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = inv.iter().map(|c| c.numer() * (&den / c.denom())).collect::<Vec<_>>();
        Ok(Divisor::General(self.from_coords(&num), den))
    }

    /// Image under Z[ζ_n] → Z[ζ_N], ζ_n ↦ ζ_N^{N/n}, for `n | N`.
    pub fn embed_into(&self, a: &CycNum, target: &CycCtx) -> Result<CycNum> {
        if target.n % self.n != 0 {
            return Err(Error::EmbeddingMismatch { from: self.n, to: target.n });
        }
        let step = (target.n / self.n) as i64;
        let mut acc = target.zero();
        for (k, c) in a.coords.iter().enumerate() {
            if !c.is_zero() {
                target.add_zeta_power(&mut acc, k as i64 * step, c);
            }
        }
        Ok(acc)
    }

    /// Preimage of `a ∈ Z[ζ_N]` under [`CycCtx::embed_into`], when `a` lies in
    /// the image of Z[ζ_n].
    pub fn descend_from(&self, a: &CycNum, source: &CycCtx) -> Result<Option<CycNum>> {
        if source.n % self.n != 0 {
            return Err(Error::EmbeddingMismatch { from: self.n, to: source.n });
        }
        // Columns: embedded basis monomials; solve M c = a over Q.
        let cols: Vec<CycNum> = (0..self.dim)
            .map(|k| {
                let mut e = self.zero();
                e.coords[k] = BigInt::one();
                self.embed_into(&e, source)
            })
            .collect::<Result<_>>()?;
        let rows = source.dim;
        let mut m: Vec<Vec<BigRational>> = (0..rows)
            .map(|r| {
                let mut row: Vec<BigRational> = cols
                    .iter()
                    .map(|c| BigRational::from_integer(c.coords[r].clone()))
                    .collect();
                row.push(BigRational::from_integer(a.coords[r].clone()));
                row
            })
            .collect();
        let ncols = self.dim;
        let mut pivot_cols = Vec::new();
        let mut row = 0;
        for col in 0..ncols {
            let Some(pr) = (row..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            m.swap(row, pr);
            let inv = m[row][col].recip();
            for x in m[row].iter_mut() {
                *x *= &inv;
            }
            for r in 0..rows {
                if r != row && !m[r][col].is_zero() {
                    let f = m[r][col].clone();
                    for c in 0..=ncols {
                        let delta = &f * &m[row][c];
                        m[r][c] -= delta;
                    }
                }
            }
            pivot_cols.push(col);
            row += 1;
        }
        if m[row..].iter().any(|r| !r[ncols].is_zero()) {
            return Ok(None);
        }
        let mut out = self.zero();
        for (r, &col) in pivot_cols.iter().enumerate() {
            let v = &m[r][ncols];
            if !v.is_integer() {
                return Ok(None);
            }
            out.coords[col] = v.to_integer();
        }
        Ok(Some(out))
    }

    /// Complex value of `a` at ζ_n = exp(2πi/n). Debugging aid only; no
    /// result of the library depends on floating point.
    pub fn approx(&self, a: &CycNum) -> (f64, f64) {
        let theta = 2.0 * std::f64::consts::PI / self.n as f64;
        a.coords.iter().enumerate().fold((0.0, 0.0), |(re, im), (k, c)| {
            let c: f64 = c.to_string().parse().unwrap_or(f64::NAN);
            let ang = theta * k as f64;
            (re + c * ang.cos(), im + c * ang.sin())
        })
    }
}

/// A prepared divisor for repeated exact division.
#[derive(Clone, Debug)]
pub(crate) enum Divisor {
    /// Multiply by this unit.
    Unit(CycNum),
    /// Inverse in Q(ζ_n) as `numerator / denominator` with an integral
    /// numerator and a positive integer denominator.
    General(CycNum, BigInt),
}

impl Divisor {
    pub(crate) fn divide(&self, ctx: &CycCtx, a: &CycNum) -> Result<CycNum> {
        match self {
            Divisor::Unit(u) => Ok(ctx.mul(a, u)),
            Divisor::General(num, den) => {
                let prod = ctx.mul(a, num);
                let mut coords = Vec::with_capacity(ctx.dim);
                for c in prod.coords {
                    let (q, r) = c.div_rem(den);
                    if !r.is_zero() {
                        return Err(Error::InexactDivision("cyclotomic integer division"));
                    }
                    coords.push(q);
                }
                Ok(CycNum { coords })
            }
        }
    }
}

fn rat_trim(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(|c| c.is_zero()) {
        v.pop();
    }
}

fn rat_divrem(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    rat_trim(&mut r);
    let db = b.len() - 1;
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut s = vec![BigRational::zero(); r.len() - db];
    for top in (db..r.len()).rev() {
        let c = &r[top] * &lead_inv;
        if c.is_zero() {
            continue;
        }
        let shift = top - db;
        for (i, bi) in b.iter().enumerate() {
            let delta = &c * bi;
            r[shift + i] -= delta;
        }
        s[shift] = c;
    }
    r.truncate(db);
    rat_trim(&mut r);
    rat_trim(&mut s);
    (s, r)
}

fn rat_mul(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigRational::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    rat_trim(&mut out);
    out
}

fn rat_sub(a: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let n = a.len().max(b.len());
    let zero = BigRational::zero();
    let mut out: Vec<BigRational> = (0..n)
        .map(|i| a.get(i).unwrap_or(&zero) - b.get(i).unwrap_or(&zero))
        .collect();
    rat_trim(&mut out);
    out
}

/// `(g, u)` with `u a ≡ g (mod b)` and `g = gcd(a, b)` (not normalized).
fn rat_ext_gcd(mut a: Vec<BigRational>, mut b: Vec<BigRational>) -> (Vec<BigRational>, Vec<BigRational>) {
    rat_trim(&mut a);
    rat_trim(&mut b);
    let (mut r0, mut r1) = (a, b);
    let (mut u0, mut u1) = (vec![BigRational::one()], Vec::new());
    while !r1.is_empty() {
        let (s, r) = rat_divrem(&r0, &r1);
        let u2 = rat_sub(&u0, &rat_mul(&s, &u1));
        r0 = std::mem::replace(&mut r1, r);
        u0 = std::mem::replace(&mut u1, u2);
    }
    (r0, u0)
}

/// Polynomial in X over Z[ζ_n], lowest degree first, without trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct CycPoly {
    coeffs: Vec<CycNum>,
}

impl CycPoly {
    pub fn new(mut coeffs: Vec<CycNum>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        CycPoly { coeffs }
    }

    pub fn zero() -> Self {
        CycPoly { coeffs: Vec::new() }
    }

    pub fn coeffs(&self) -> &[CycNum] {
        &self.coeffs
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Integer polynomial, when every coefficient is an integer.
    pub fn to_int_poly(&self) -> Option<IntPoly> {
        self.coeffs
            .iter()
            .map(CycNum::to_integer)
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }
}

impl CycCtx {
    pub fn poly_one(&self) -> CycPoly {
        CycPoly { coeffs: vec![self.one()] }
    }

    /// `c X^d`.
    pub fn monomial(&self, c: CycNum, d: usize) -> CycPoly {
        let mut coeffs = vec![self.zero(); d];
        coeffs.push(c);
        CycPoly::new(coeffs)
    }

    pub fn poly_from_int(&self, p: &IntPoly) -> CycPoly {
        CycPoly::new(p.coeffs.iter().map(|c| self.from_int(c.clone())).collect())
    }

    pub fn poly_add(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.zero();
        CycPoly::new(
            (0..n)
                .map(|i| self.add(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    pub fn poly_sub(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        let n = a.coeffs.len().max(b.coeffs.len());
        let zero = self.zero();
        CycPoly::new(
            (0..n)
                .map(|i| self.sub(a.coeffs.get(i).unwrap_or(&zero), b.coeffs.get(i).unwrap_or(&zero)))
                .collect(),
        )
    }

    pub fn poly_neg(&self, a: &CycPoly) -> CycPoly {
        CycPoly { coeffs: a.coeffs.iter().map(|c| self.neg(c)).collect() }
    }

    pub fn poly_mul(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        if a.is_zero() || b.is_zero() {
            return CycPoly::zero();
        }
        if let Some(c) = self.poly_mul_small(a, b) {
            return c;
        }
        // Accumulate unreduced products, reduce once per output coefficient.
        let width = 2 * self.dim - 1;
        let mut acc = vec![vec![BigInt::zero(); width]; a.coeffs.len() + b.coeffs.len() - 1];
        for (i, x) in a.coeffs.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (j, y) in b.coeffs.iter().enumerate() {
                if y.is_zero() {
                    continue;
                }
                let slot = &mut acc[i + j];
                for (s, xs) in x.coords.iter().enumerate() {
                    if xs.is_zero() {
                        continue;
                    }
                    for (t, yt) in y.coords.iter().enumerate() {
                        if !yt.is_zero() {
                            slot[s + t] += xs * yt;
                        }
                    }
                }
            }
        }
        CycPoly::new(acc.into_iter().map(|buf| self.reduce(buf)).collect())
    }

    /// Exact quotient `a / b` in Z[ζ_n][X]; the remainder must vanish.
    ///
    /// Division proceeds upward from the lowest nonzero coefficient of `b`,
    /// which is a unit for every divisor that arises from the determinant
    /// engine (leading minors have constant term 1).
    pub fn poly_exact_div(&self, a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
        let shift = b.coeffs.iter().position(|c| !c.is_zero()).ok_or(Error::DivisionByZero)?;
        if a.is_zero() {
            return Ok(CycPoly::zero());
        }
        let (da, db) = (a.coeffs.len() - 1, b.coeffs.len() - 1);
        if da < db {
            return Err(Error::InexactDivision("cyclotomic polynomial division"));
        }
        if a.coeffs[..shift].iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision("cyclotomic polynomial division"));
        }
        if b.coeffs[shift] == self.one() {
            if let Some(q) = self.poly_div_by_monic_low_small(a, b, shift) {
                return q;
            }
        }
        let div = self.divisor(&b.coeffs[shift])?;
        let mut r = a.coeffs.clone();
        let qlen = da - db + 1;
        let mut quot = Vec::with_capacity(qlen);
        for k in 0..qlen {
            let qk = div.divide(self, &r[k + shift])?;
            if !qk.is_zero() {
                for (i, bi) in b.coeffs.iter().enumerate().skip(shift) {
                    if !bi.is_zero() {
                        let prod = self.mul(&qk, bi);
                        r[k + i] = self.sub(&r[k + i], &prod);
                    }
                }
            }
            quot.push(qk);
        }
        if r.iter().any(|c| !c.is_zero()) {
            return Err(Error::InexactDivision("cyclotomic polynomial division"));
        }
        Ok(CycPoly::new(quot))
    }

    // Machine-integer fast paths. Every operation is checked; `None` means
    // some intermediate left i128 and the caller redoes the work with BigInt.

    fn flatten_small(&self, p: &CycPoly) -> Option<Vec<i128>> {
        let mut out = Vec::with_capacity(p.coeffs.len() * self.dim);
        for c in &p.coeffs {
            for x in &c.coords {
                out.push(x.to_i128()?);
            }
        }
        Some(out)
    }

    fn reduce_small(&self, buf: &mut [i128]) -> Option<()> {
        for k in (self.dim..buf.len()).rev() {
            let c = buf[k];
            if c == 0 {
                continue;
            }
            buf[k] = 0;
            for (i, &r) in self.reducer.iter().enumerate() {
                if r != 0 {
                    let slot = &mut buf[k - self.dim + i];
                    *slot = slot.checked_sub(c.checked_mul(r as i128)?)?;
                }
            }
        }
        Some(())
    }

    /// `acc += x y` for unreduced coordinate slices of length `dim`.
    fn mul_acc_small(acc: &mut [i128], x: &[i128], y: &[i128]) -> Option<()> {
        for (s, &xs) in x.iter().enumerate() {
            if xs == 0 {
                continue;
            }
            for (t, &yt) in y.iter().enumerate() {
                if yt != 0 {
                    acc[s + t] = acc[s + t].checked_add(xs.checked_mul(yt)?)?;
                }
            }
        }
        Some(())
    }

    fn unflatten_small(&self, flat: &[i128]) -> CycPoly {
        CycPoly::new(
            flat.chunks(self.dim)
                .map(|c| CycNum { coords: c.iter().map(|&x| BigInt::from(x)).collect() })
                .collect(),
        )
    }

    fn mul_small(&self, a: &CycNum, b: &CycNum) -> Option<CycNum> {
        let small = |c: &CycNum| c.coords.iter().map(|x| x.to_i128()).collect::<Option<Vec<_>>>();
        let (x, y) = (small(a)?, small(b)?);
        let mut buf = vec![0i128; 2 * self.dim - 1];
        Self::mul_acc_small(&mut buf, &x, &y)?;
        self.reduce_small(&mut buf)?;
        Some(CycNum { coords: buf[..self.dim].iter().map(|&v| BigInt::from(v)).collect() })
    }

    fn poly_mul_small(&self, a: &CycPoly, b: &CycPoly) -> Option<CycPoly> {
        let (fa, fb) = (self.flatten_small(a)?, self.flatten_small(b)?);
        let (dim, width) = (self.dim, 2 * self.dim - 1);
        let len = a.coeffs.len() + b.coeffs.len() - 1;
        let mut acc = vec![0i128; len * width];
        for (i, x) in fa.chunks(dim).enumerate() {
            if x.iter().all(|&v| v == 0) {
                continue;
            }
            for (j, y) in fb.chunks(dim).enumerate() {
                if y.iter().any(|&v| v != 0) {
                    let base = (i + j) * width;
                    Self::mul_acc_small(&mut acc[base..base + width], x, y)?;
                }
            }
        }
        let mut out = Vec::with_capacity(len * dim);
        for slot in acc.chunks_mut(width) {
            self.reduce_small(slot)?;
            out.extend_from_slice(&slot[..dim]);
        }
        Some(self.unflatten_small(&out))
    }

    /// `a / b` where the lowest nonzero coefficient of `b`, at `shift`, is 1.
    fn poly_div_by_monic_low_small(&self, a: &CycPoly, b: &CycPoly, shift: usize) -> Option<Result<CycPoly>> {
        let (mut r, fb) = (self.flatten_small(a)?, self.flatten_small(b)?);
        let (dim, width) = (self.dim, 2 * self.dim - 1);
        let (la, lb) = (a.coeffs.len(), b.coeffs.len());
        let qlen = la - lb + 1;
        let mut quot = Vec::with_capacity(qlen * dim);
        let mut tmp = vec![0i128; width];
        for k in 0..qlen {
            let qk: Vec<i128> = r[(k + shift) * dim..(k + shift + 1) * dim].to_vec();
            if qk.iter().any(|&v| v != 0) {
                for i in shift..lb {
                    let bi = &fb[i * dim..(i + 1) * dim];
                    if bi.iter().all(|&v| v == 0) {
                        continue;
                    }
                    tmp.iter_mut().for_each(|v| *v = 0);
                    Self::mul_acc_small(&mut tmp, &qk, bi)?;
                    self.reduce_small(&mut tmp)?;
                    for (slot, &t) in r[(k + i) * dim..(k + i + 1) * dim].iter_mut().zip(&tmp) {
                        *slot = slot.checked_sub(t)?;
                    }
                }
            }
            quot.extend_from_slice(&qk);
        }
        if r.iter().any(|&v| v != 0) {
            return Some(Err(Error::InexactDivision("cyclotomic polynomial division")));
        }
        Some(Ok(self.unflatten_small(&quot)))
    }

    /// Value at an integer point.
    pub fn poly_eval_int(&self, a: &CycPoly, x: &BigInt) -> CycNum {
        a.coeffs
            .iter()
            .rev()
            .fold(self.zero(), |acc, c| self.add(&self.scale(&acc, x), c))
    }

    pub fn poly_embed_into(&self, a: &CycPoly, target: &CycCtx) -> Result<CycPoly> {
        Ok(CycPoly::new(
            a.coeffs
                .iter()
                .map(|c| self.embed_into(c, target))
                .collect::<Result<_>>()?,
        ))
    }

    /// Coefficient-wise [`CycCtx::descend_from`].
    pub fn poly_descend_from(&self, a: &CycPoly, source: &CycCtx) -> Result<Option<CycPoly>> {
        let mut out = Vec::with_capacity(a.coeffs.len());
        for c in &a.coeffs {
            match self.descend_from(c, source)? {
                Some(x) => out.push(x),
                None => return Ok(None),
            }
        }
        Ok(Some(CycPoly::new(out)))
    }
}
