//! The character-twisted matrices `D^(λ)(X)` and their determinants.
//!
//! For a character `λ` of F_q^× the matrix has entries
//! `λ^{-1}(L(α_i α_j^{-1})) X^{Deg(α_i α_j^{-1})}` over the fixed
//! representatives `α_1, .., α_N`. Its determinant lives in Z[ζ_{q-1}][X];
//! the product over all nontrivial `λ` is an integer polynomial.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::cyclo::{CycCtx, CycNum, CycPoly, IntPoly};
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::units::UnitSystem;

/// A character of F_q^×: `λ_t(g^k) = ζ_{q-1}^{tk}` for the field's fixed
/// generator `g`. `t = 0` is the trivial character.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct FqStarChar {
    exponent: u64,
    order: u64,
}

impl FqStarChar {
    pub fn new(field: &FieldCtx, exponent: u64) -> Self {
        let order = field.q() - 1;
        FqStarChar { exponent: exponent % order, order }
    }

    /// All nontrivial characters, `t = 1, .., q - 2`.
    pub fn nontrivial(field: &FieldCtx) -> impl Iterator<Item = FqStarChar> {
        let order = field.q() - 1;
        (1..order).map(move |t| FqStarChar { exponent: t, order })
    }

    pub fn exponent(self) -> u64 {
        self.exponent
    }

    pub fn is_trivial(self) -> bool {
        self.exponent == 0
    }

    pub fn inverse(self) -> Self {
        FqStarChar { exponent: (self.order - self.exponent) % self.order, order: self.order }
    }

    /// `λ(a)` as an element of Z[ζ_{q-1}]; `cyc` must have order `q - 1`.
    pub fn value(self, field: &FieldCtx, cyc: &CycCtx, a: FqElem) -> Result<CycNum> {
        debug_assert_eq!(cyc.order(), self.order);
        let k = field.log(a)?;
        Ok(cyc.zeta_power(((self.exponent * k) % self.order) as i64))
    }
}

/// A ring in which fraction-free elimination can run.
pub trait ExactRing {
    type Elem: Clone;
    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn is_zero(&self, a: &Self::Elem) -> bool;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    /// `a / b`, which must be exact.
    fn exact_div(&self, a: &Self::Elem, b: &Self::Elem) -> Result<Self::Elem>;
}

/// Z[ζ_n].
pub struct CycRing<'a>(pub &'a CycCtx);

/// Z[ζ_n][X].
pub struct CycPolyRing<'a>(pub &'a CycCtx);

impl ExactRing for CycRing<'_> {
    type Elem = CycNum;
    fn zero(&self) -> CycNum {
        self.0.zero()
    }
    fn one(&self) -> CycNum {
        self.0.one()
    }
    fn is_zero(&self, a: &CycNum) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &CycNum, b: &CycNum) -> CycNum {
        self.0.mul(a, b)
    }
    fn sub(&self, a: &CycNum, b: &CycNum) -> CycNum {
        self.0.sub(a, b)
    }
    fn neg(&self, a: &CycNum) -> CycNum {
        self.0.neg(a)
    }
    fn exact_div(&self, a: &CycNum, b: &CycNum) -> Result<CycNum> {
        self.0.exact_div(a, b)
    }
}

impl ExactRing for CycPolyRing<'_> {
    type Elem = CycPoly;
    fn zero(&self) -> CycPoly {
        CycPoly::zero()
    }
    fn one(&self) -> CycPoly {
        self.0.poly_one()
    }
    fn is_zero(&self, a: &CycPoly) -> bool {
        a.is_zero()
    }
    fn mul(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        self.0.poly_mul(a, b)
    }
    fn sub(&self, a: &CycPoly, b: &CycPoly) -> CycPoly {
        self.0.poly_sub(a, b)
    }
    fn neg(&self, a: &CycPoly) -> CycPoly {
        self.0.poly_neg(a)
    }
    fn exact_div(&self, a: &CycPoly, b: &CycPoly) -> Result<CycPoly> {
        self.0.poly_exact_div(a, b)
    }
}

/// Determinant by fraction-free (Bareiss) elimination. A zero pivot is
/// replaced by the first nonzero entry below it (flipping the sign); an
/// all-zero column gives determinant zero.
pub fn bareiss_det<R: ExactRing>(ring: &R, mut m: Vec<Vec<R::Elem>>) -> Result<R::Elem> {
    let n = m.len();
    assert!(m.iter().all(|row| row.len() == n), "matrix must be square");
    if n == 0 {
        return Ok(ring.one());
    }
    let mut negate = false;
    let mut prev = ring.one();
    for k in 0..n - 1 {
        if ring.is_zero(&m[k][k]) {
            match (k + 1..n).find(|&r| !ring.is_zero(&m[r][k])) {
                Some(r) => {
                    m.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(ring.zero()),
            }
        }
        let (top, rest) = m.split_at_mut(k + 1);
        let pivot_row = &top[k];
        let pivot = &pivot_row[k];
        for row in rest.iter_mut() {
            let lead = row[k].clone();
            for j in k + 1..n {
                let a = ring.mul(pivot, &row[j]);
                let b = if ring.is_zero(&lead) {
                    None
                } else {
                    Some(ring.mul(&lead, &pivot_row[j]))
                };
                let num = match b {
                    Some(b) => ring.sub(&a, &b),
                    None => a,
                };
                row[j] = ring.exact_div(&num, &prev)?;
            }
            row[k] = ring.zero();
        }
        prev = m[k][k].clone();
    }
    let det = m[n - 1][n - 1].clone();
    Ok(if negate { ring.neg(&det) } else { det })
}

/// `D^(λ)(X)`: an `N × N` matrix of monomials `c X^d`.
#[derive(Clone, Debug, PartialEq)]
pub struct CharMatrix {
    size: usize,
    /// Row-major `(coefficient, degree)`.
    entries: Vec<(CycNum, usize)>,
}

impl CharMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn entry(&self, i: usize, j: usize) -> &(CycNum, usize) {
        &self.entries[i * self.size + j]
    }

    pub fn entry_poly(&self, cyc: &CycCtx, i: usize, j: usize) -> CycPoly {
        let (c, d) = self.entry(i, j);
        cyc.monomial(c.clone(), *d)
    }

    /// `Σ_i max_j d_ij`, an upper bound for the degree of the determinant.
    pub fn degree_bound(&self) -> usize {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j).1).max().unwrap_or(0))
            .sum()
    }

    pub fn to_poly_rows(&self, cyc: &CycCtx) -> Vec<Vec<CycPoly>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry_poly(cyc, i, j)).collect())
            .collect()
    }

    /// Entries evaluated at the integer `x`.
    pub fn eval_rows(&self, cyc: &CycCtx, x: &BigInt) -> Vec<Vec<CycNum>> {
        (0..self.size)
            .map(|i| {
                (0..self.size)
                    .map(|j| {
                        let (c, d) = self.entry(i, j);
                        cyc.scale(c, &num_traits::pow(x.clone(), *d))
                    })
                    .collect()
            })
            .collect()
    }

    /// The matrix of constant coefficients `c_ij` (the value at X = 1).
    pub fn constant_rows(&self) -> Vec<Vec<CycNum>> {
        (0..self.size)
            .map(|i| (0..self.size).map(|j| self.entry(i, j).0.clone()).collect())
            .collect()
    }
}

/// Builds `D^(λ)(X)`; `cyc` must have order `q - 1`.
pub fn build_matrix(field: &FieldCtx, sys: &UnitSystem, lambda: FqStarChar, cyc: &CycCtx) -> Result<CharMatrix> {
    let inv = lambda.inverse();
    let n = sys.len();
    let mut entries = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let (d, l) = sys.pair_data(i, j);
            entries.push((inv.value(field, cyc, l)?, d));
        }
    }
    Ok(CharMatrix { size: n, entries })
}

/// Which algorithm computes `det D^(λ)(X)`.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum DetEngine {
    /// Fraction-free elimination directly over Z[ζ][X].
    #[default]
    Bareiss,
    /// Elimination over Z[ζ] at integer points, then exact interpolation.
    Interpolation,
}

/// Determinant of a general square matrix over Z[ζ_n][X].
pub fn det_cycpoly(cyc: &CycCtx, rows: Vec<Vec<CycPoly>>) -> Result<CycPoly> {
    bareiss_det(&CycPolyRing(cyc), rows)
}

/// Determinant of `D^(λ)(X)` with the chosen engine. The degree bound
/// `Σ_i max_j d_ij` is enforced.
pub fn det_char_matrix(cyc: &CycCtx, m: &CharMatrix, engine: DetEngine) -> Result<CycPoly> {
    let det = match engine {
        DetEngine::Bareiss => det_cycpoly(cyc, m.to_poly_rows(cyc))?,
        DetEngine::Interpolation => det_by_interpolation(cyc, m)?,
    };
    if det.degree().is_some_and(|d| d > m.degree_bound()) {
        return Err(Error::CheckFailed("determinant degree bound".into()));
    }
    Ok(det)
}

fn det_by_interpolation(cyc: &CycCtx, m: &CharMatrix) -> Result<CycPoly> {
    let bound = m.degree_bound();
    let ring = CycRing(cyc);
    let values = (0..=bound)
        .map(|x| bareiss_det(&ring, m.eval_rows(cyc, &BigInt::from(x))))
        .collect::<Result<Vec<_>>>()?;
    // Each coordinate is an integer polynomial of degree <= bound.
    let mut coords: Vec<IntPoly> = Vec::with_capacity(cyc.dim());
    for k in 0..cyc.dim() {
        let ys: Vec<BigInt> = values.iter().map(|v| v.coords()[k].clone()).collect();
        coords.push(
            interpolate_consecutive(&ys)
                .ok_or(Error::NonIntegerCoefficient("determinant interpolation"))?,
        );
    }
    let len = coords.iter().map(|c| c.coeffs().len()).max().unwrap_or(0);
    Ok(CycPoly::new(
        (0..len)
            .map(|i| cyc.from_coords(&coords.iter().map(|c| c.coeff(i)).collect::<Vec<_>>()))
            .collect(),
    ))
}

/// The polynomial of degree `< ys.len()` taking the values `ys` at
/// `0, 1, .., ys.len() - 1`, when its coefficients are integers. Uses
/// Newton's forward-difference form.
pub fn interpolate_consecutive(ys: &[BigInt]) -> Option<IntPoly> {
    let n = ys.len();
    // Forward differences Δ^k y(0).
    let mut diffs = Vec::with_capacity(n);
    let mut row = ys.to_vec();
    for _ in 0..n {
        diffs.push(row[0].clone());
        row = row.windows(2).map(|w| &w[1] - &w[0]).collect();
    }
    // Σ_k Δ^k y(0) / k! · x(x-1)..(x-k+1)
    let mut acc = vec![BigRational::zero(); n];
    let mut falling = vec![BigInt::one()]; // x(x-1)..(x-k+1)
    let mut fact = BigInt::one();
    for (k, dk) in diffs.iter().enumerate() {
        if k > 0 {
            fact *= BigInt::from(k);
        }
        if !dk.is_zero() {
            let scale = BigRational::new(dk.clone(), fact.clone());
            for (i, c) in falling.iter().enumerate() {
                acc[i] += &scale * BigRational::from_integer(c.clone());
            }
        }
        // falling *= (x - k)
        let mut next = vec![BigInt::zero(); falling.len() + 1];
        for (i, c) in falling.iter().enumerate() {
            next[i + 1] += c;
            next[i] -= c * BigInt::from(k);
        }
        falling = next;
    }
    acc.into_iter()
        .map(|c| c.is_integer().then(|| c.to_integer()))
        .collect::<Option<Vec<_>>>()
        .map(IntPoly::new)
}

/// `det D^(λ)(X)` for one nontrivial character.
pub fn det_lambda(
    field: &FieldCtx,
    sys: &UnitSystem,
    lambda: FqStarChar,
    cyc: &CycCtx,
    engine: DetEngine,
) -> Result<CycPoly> {
    det_char_matrix(cyc, &build_matrix(field, sys, lambda, cyc)?, engine)
}

/// `det D^(λ)(X)` for every nontrivial `λ`, in the order `t = 1, 2, ..`.
/// The determinants are independent and computed in parallel.
pub fn det_lambdas(
    field: &FieldCtx,
    sys: &UnitSystem,
    cyc: &CycCtx,
    engine: DetEngine,
) -> Result<Vec<(FqStarChar, CycPoly)>> {
    let lambdas: Vec<FqStarChar> = FqStarChar::nontrivial(field).collect();
    lambdas
        .par_iter()
        .map(|&l| Ok((l, det_lambda(field, sys, l, cyc, engine)?)))
        .collect()
}

/// The product of per-character determinants, which must be an integer
/// polynomial.
pub fn product_of_dets(cyc: &CycCtx, dets: &[(FqStarChar, CycPoly)]) -> Result<IntPoly> {
    dets.iter()
        .fold(cyc.poly_one(), |acc, (_, d)| cyc.poly_mul(&acc, d))
        .to_int_poly()
        .ok_or(Error::NonIntegerCoefficient("det D^(-)"))
}

/// `det D^(-)(X) = Π_{λ ≠ 1} det D^(λ)(X)` as an integer polynomial.
pub fn det_minus(field: &FieldCtx, sys: &UnitSystem, engine: DetEngine) -> Result<IntPoly> {
    if field.q() == 2 {
        return Ok(IntPoly::one());
    }
    let cyc = CycCtx::new(field.q() - 1);
    product_of_dets(&cyc, &det_lambdas(field, sys, &cyc, engine)?)
}

/// `Π_{λ ≠ 1} det(c_ij^λ)`: the determinant product at X = 1, computed
/// directly from the constant matrices over Z[ζ_{q-1}].
pub fn det_minus_at_one(field: &FieldCtx, sys: &UnitSystem) -> Result<BigInt> {
    if field.q() == 2 {
        return Ok(BigInt::one());
    }
    let cyc = CycCtx::new(field.q() - 1);
    let ring = CycRing(&cyc);
    let dets = FqStarChar::nontrivial(field)
        .collect::<Vec<_>>()
        .par_iter()
        .map(|&l| bareiss_det(&ring, build_matrix(field, sys, l, &cyc)?.constant_rows()))
        .collect::<Result<Vec<_>>>()?;
    dets.iter()
        .fold(cyc.one(), |acc, d| cyc.mul(&acc, d))
        .to_integer()
        .ok_or(Error::NonIntegerCoefficient("determinant product at X = 1"))
}
