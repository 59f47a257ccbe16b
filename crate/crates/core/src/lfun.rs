//! Independent recomputation through Dirichlet characters.
//!
//! The unit group (A/(m))^× is decomposed into cyclic factors with a full
//! discrete-log table; characters are exponent tuples against that basis and
//! take values in Z[ζ_E], `E` the group exponent. From these the oracle
//! rebuilds
//!
//! * `P^(-)(X)` as the product of primitive L-polynomials over the
//!   characters that are nontrivial on F_q^×,
//! * `J^(-)(X)` as `Π_χ Π_{Q | m} (1 - χ(Q) X^{deg Q})`,
//! * each `det D^(λ)(X)` as the product of imprimitive L-polynomials over
//!   the characters restricting to `λ` on F_q^×.

use std::collections::HashMap;

use num_bigint::BigInt;
use num_traits::One;
use rayon::prelude::*;

use crate::cyclo::{CycCtx, CycNum, CycPoly, IntPoly};
use crate::det::FqStarChar;
use crate::error::{Error, Result};
use crate::field::{prime_divisors, FieldCtx};
use crate::poly::{enumerate_below, enumerate_monic, FqPoly};
use crate::units::check_modulus;

/// Default bound on `Φ(m)` for the oracle.
pub const DEFAULT_GROUP_LIMIT: u64 = 5000;

/// A decomposition of (A/(m))^× into a direct product of cyclic groups.
#[derive(Clone, Debug)]
pub struct AbelianBasis {
    modulus: FqPoly,
    gens: Vec<(FqPoly, u64)>,
    exponent: u64,
    /// Canonical unit representative → exponent tuple.
    dlog: HashMap<FqPoly, Vec<u64>>,
    /// All units in enumeration order.
    units: Vec<FqPoly>,
}

impl AbelianBasis {
    pub fn modulus(&self) -> &FqPoly {
        &self.modulus
    }

    /// Generators with their orders.
    pub fn gens(&self) -> &[(FqPoly, u64)] {
        &self.gens
    }

    /// `E`, the lcm of the generator orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn order(&self) -> u64 {
        self.gens.iter().map(|g| g.1).product()
    }

    pub fn units(&self) -> &[FqPoly] {
        &self.units
    }

    /// Exponent tuple of a canonical unit representative.
    pub fn dlog(&self, u: &FqPoly) -> Option<&[u64]> {
        self.dlog.get(u).map(Vec::as_slice)
    }
}

fn mixed_radix(mut idx: u64, orders: &[u64]) -> Vec<u64> {
    orders
        .iter()
        .map(|&o| {
            let d = idx % o;
            idx /= o;
            d
        })
        .collect()
}

/// Builds a basis by repeatedly taking an element of maximal order modulo
/// the subgroup generated so far and correcting it so that the new cyclic
/// factor meets that subgroup trivially.
pub fn abelian_basis(field: &FieldCtx, m: &FqPoly, limit: u64) -> Result<AbelianBasis> {
    check_modulus(m)?;
    let order = field.phi(m)?;
    if order > limit {
        return Err(Error::GroupTooLarge { order, limit });
    }
    let d = m.degree().unwrap();
    let units: Vec<FqPoly> = enumerate_below(field, d)
        .filter(|a| !a.is_zero() && field.poly_gcd(a, m).is_one())
        .collect();
    debug_assert_eq!(units.len() as u64, order);

    let mut gens: Vec<(FqPoly, u64)> = Vec::new();
    let mut sub: HashMap<FqPoly, Vec<u64>> = HashMap::from([(FqPoly::one(), Vec::new())]);
    while (sub.len() as u64) < order {
        let quotient = order / sub.len() as u64;
        // Order of x modulo the current subgroup.
        let rel_order = |x: &FqPoly| -> Result<u64> {
            let mut k = quotient;
            for r in prime_divisors(quotient) {
                while k % r == 0 && sub.contains_key(&field.poly_powmod(x, (k / r) as u128, m)?) {
                    k /= r;
                }
            }
            Ok(k)
        };
        let mut best: Option<(u64, &FqPoly)> = None;
        for x in &units {
            if sub.contains_key(x) {
                continue;
            }
            let k = rel_order(x)?;
            if best.is_none_or(|(bk, _)| k > bk) {
                best = Some((k, x));
            }
        }
        let (k, x) = best.expect("proper subgroup has an element outside it");
        // x^k = Π g_i^{a_i}; pick b_i with k b_i ≡ -a_i (mod o_i).
        let a = sub
            .get(&field.poly_powmod(x, k as u128, m)?)
            .expect("x^k lies in the subgroup")
            .clone();
        let mut y = x.clone();
        for ((g, o), ai) in gens.iter().zip(&a) {
            let b = solve_linear_congruence(k, (o - ai) % o, *o).ok_or_else(|| {
                Error::CheckFailed("cyclic factor correction".into())
            })?;
            y = field.poly_mulmod(&y, &field.poly_powmod(g, b as u128, m)?, m)?;
        }
        debug_assert!(field.poly_powmod(&y, k as u128, m)?.is_one());
        // Extend the subgroup table by the new factor.
        let mut extended = HashMap::with_capacity(sub.len() * k as usize);
        for (h, tuple) in &sub {
            let mut z = h.clone();
            for j in 0..k {
                let mut t = tuple.clone();
                t.push(j);
                extended.insert(z.clone(), t);
                z = field.poly_mulmod(&z, &y, m)?;
            }
        }
        sub = extended;
        gens.push((y, k));
    }
    // Tuples recorded during construction already refer to the final gens.
    let exponent = gens
        .iter()
        .fold(1u64, |acc, &(_, o)| num_integer::lcm(acc, o));
    let dlog = sub
        .into_iter()
        .map(|(u, mut t)| {
            t.resize(gens.len(), 0);
            (u, t)
        })
        .collect();
    Ok(AbelianBasis { modulus: m.clone(), gens, exponent, dlog, units })
}

/// Smallest `b ≥ 0` with `k b ≡ c (mod n)`.
fn solve_linear_congruence(k: u64, c: u64, n: u64) -> Option<u64> {
    let g = num_integer::gcd(k, n);
    if c % g != 0 {
        return None;
    }
    let (k, c, n) = (k / g, c / g, n / g);
    if n == 1 {
        return Some(0);
    }
    let inv = (1..n).find(|&x| (k % n) * x % n == 1)?;
    Some(c % n * inv % n)
}

/// A Dirichlet character modulo `m`: `χ(Π g_i^{u_i}) = ζ_E^{Σ exps_i (E/o_i) u_i}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DirichletChar {
    exps: Vec<u64>,
}

impl DirichletChar {
    pub fn exps(&self) -> &[u64] {
        &self.exps
    }

    pub fn is_trivial(&self) -> bool {
        self.exps.iter().all(|&e| e == 0)
    }
}

/// Which characters to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CharFilter {
    All,
    /// Nontrivial on the image of F_q^×.
    MinusPart,
    /// Restricting to the given character of F_q^×.
    Restricted(FqStarChar),
}

struct DivisorData {
    divisor: FqPoly,
    /// Exponent tuples of the units `≡ 1 (mod divisor)`.
    kernel: Vec<Vec<u64>>,
    /// Unit residue modulo `divisor` → a lift modulo `m`.
    lift: HashMap<FqPoly, FqPoly>,
}

/// The character group of (A/(m))^× with everything needed to evaluate
/// primitive characters. Immutable after construction.
pub struct CharacterGroup<'a> {
    field: &'a FieldCtx,
    basis: AbelianBasis,
    cyc: CycCtx,
    primes: Vec<(FqPoly, u32)>,
    /// Monic divisors of `m` in (degree, canonical) order.
    divisors: Vec<DivisorData>,
    /// Exponent of ζ_E giving `χ(g)` for a character with exps = e_i:
    /// `Σ e_i * gen_weight_i`.
    generator_dlog: Vec<u64>,
}

impl<'a> CharacterGroup<'a> {
    pub fn new(field: &'a FieldCtx, m: &FqPoly, limit: u64) -> Result<Self> {
        let basis = abelian_basis(field, m, limit)?;
        let cyc = CycCtx::new(basis.exponent);
        let primes = field.factorize(m)?;
        let mut divisors: Vec<FqPoly> = vec![FqPoly::one()];
        for (prime, v) in &primes {
            let mut next = Vec::new();
            for d in &divisors {
                let mut x = d.clone();
                for _ in 0..=*v {
                    next.push(x.clone());
                    x = field.poly_mul(&x, prime);
                }
            }
            divisors = next;
        }
        divisors.sort_by(|a, b| a.canonical_cmp(b));
        let divisors = divisors
            .into_iter()
            .map(|divisor| {
                let mut kernel = Vec::new();
                let mut lift = HashMap::new();
                for u in &basis.units {
                    let r = field.poly_rem(u, &divisor)?;
                    let r = if divisor.is_one() { FqPoly::one() } else { r };
                    if r.is_one() {
                        kernel.push(basis.dlog[u].clone());
                    }
                    lift.entry(r).or_insert_with(|| u.clone());
                }
                Ok(DivisorData { divisor, kernel, lift })
            })
            .collect::<Result<Vec<_>>>()?;
        let g = FqPoly::constant(field.generator());
        let generator_dlog = basis.dlog[&field.poly_rem(&g, m)?].clone();
        Ok(CharacterGroup { field, basis, cyc, primes, divisors, generator_dlog })
    }

    pub fn basis(&self) -> &AbelianBasis {
        &self.basis
    }

    /// Z[ζ_E], where all character values live.
    pub fn cyc(&self) -> &CycCtx {
        &self.cyc
    }

    fn weight(&self, i: usize) -> u64 {
        self.basis.exponent / self.basis.gens[i].1
    }

    /// `k` with `χ(u) = ζ_E^k`, for a unit exponent tuple `u`.
    fn exponent_at(&self, chi: &DirichletChar, tuple: &[u64]) -> u64 {
        let e = self.basis.exponent;
        chi.exps
            .iter()
            .zip(tuple)
            .enumerate()
            .fold(0u64, |acc, (i, (&c, &u))| (acc + c * self.weight(i) % e * u) % e)
    }

    /// `k` with `χ(a) = ζ_E^k`, or `None` when `a` is not a unit mod `m`.
    pub fn value_exponent(&self, chi: &DirichletChar, a: &FqPoly) -> Option<u64> {
        let r = self.field.poly_rem(a, &self.basis.modulus).ok()?;
        self.basis.dlog(&r).map(|t| self.exponent_at(chi, t))
    }

    pub fn value(&self, chi: &DirichletChar, a: &FqPoly) -> CycNum {
        match self.value_exponent(chi, a) {
            Some(k) => self.cyc.zeta_power(k as i64),
            None => self.cyc.zero(),
        }
    }

    /// `t` such that `χ` restricts to `λ_t` on F_q^×.
    pub fn restriction(&self, chi: &DirichletChar) -> FqStarChar {
        let k = self.exponent_at(chi, &self.generator_dlog);
        let q1 = self.field.q() - 1;
        // χ(g) = ζ_E^k = ζ_{q-1}^{k (q-1) / E}
        FqStarChar::new(self.field, k * q1 / self.basis.exponent)
    }

    /// Characters in mixed-radix order of their exponent tuples.
    pub fn characters(&self, filter: CharFilter) -> Vec<DirichletChar> {
        let orders: Vec<u64> = self.basis.gens.iter().map(|g| g.1).collect();
        (0..self.basis.order())
            .map(|i| DirichletChar { exps: mixed_radix(i, &orders) })
            .filter(|chi| match filter {
                CharFilter::All => true,
                CharFilter::MinusPart => !self.restriction(chi).is_trivial(),
                CharFilter::Restricted(l) => self.restriction(chi) == l,
            })
            .collect()
    }

    fn conductor_index(&self, chi: &DirichletChar) -> usize {
        self.divisors
            .iter()
            .position(|d| d.kernel.iter().all(|t| self.exponent_at(chi, t) == 0))
            .expect("m itself is a defining modulus")
    }

    /// The conductor: the least-degree monic divisor `f | m` such that `χ`
    /// is trivial on the kernel of (A/(m))^× → (A/(f))^×.
    pub fn conductor(&self, chi: &DirichletChar) -> FqPoly {
        self.divisors[self.conductor_index(chi)].divisor.clone()
    }

    /// Exponent of the primitive character attached to `χ` at `a`, or `None`
    /// when `a` shares a factor with the conductor.
    fn primitive_exponent(&self, chi: &DirichletChar, cond: usize, a: &FqPoly) -> Option<u64> {
        let data = &self.divisors[cond];
        if data.divisor.is_one() {
            return Some(0);
        }
        let r = self.field.poly_rem(a, &data.divisor).ok()?;
        let u = data.lift.get(&r)?;
        self.value_exponent(chi, u)
    }

    /// The primitive character attached to `χ`, evaluated at `a`.
    pub fn primitive_value(&self, chi: &DirichletChar, a: &FqPoly) -> CycNum {
        match self.primitive_exponent(chi, self.conductor_index(chi), a) {
            Some(k) => self.cyc.zeta_power(k as i64),
            None => self.cyc.zero(),
        }
    }

    /// L-polynomial of the primitive character attached to a nontrivial `χ`:
    /// the coefficient of `X^d` is the sum of `χ(a)` over monic `a` of
    /// degree `d`. Vanishing in degree `deg f_χ` is checked.
    pub fn l_poly(&self, chi: &DirichletChar) -> Result<LPoly> {
        let cond = self.conductor_index(chi);
        let conductor = self.divisors[cond].divisor.clone();
        let deg_f = conductor.degree().unwrap();
        if deg_f == 0 {
            return Err(Error::TrivialCharacter);
        }
        let e = self.basis.exponent as usize;
        let mut coeffs = Vec::with_capacity(deg_f);
        for d in 0..=deg_f {
            let mut counts = vec![0i64; e];
            for a in enumerate_monic(self.field, d) {
                if let Some(k) = self.primitive_exponent(chi, cond, &a) {
                    counts[k as usize] += 1;
                }
            }
            let c = self.cyc.from_exponent_counts(&counts);
            if d == deg_f {
                if !c.is_zero() {
                    return Err(Error::CheckFailed("character sum orthogonality".into()));
                }
            } else {
                coeffs.push(c);
            }
        }
        Ok(LPoly { chi: chi.clone(), conductor, value: CycPoly::new(coeffs) })
    }

    /// L-polynomial of `χ` itself as a character modulo `m`:
    /// `Σ_i χ(α_i) X^{Deg α_i}` over the monic units.
    pub fn l_poly_imprimitive(&self, chi: &DirichletChar) -> CycPoly {
        let d = self.basis.modulus.degree().unwrap();
        let e = self.basis.exponent as usize;
        CycPoly::new(
            (0..d)
                .map(|k| {
                    let mut counts = vec![0i64; e];
                    for a in enumerate_monic(self.field, k) {
                        if let Some(x) = self.value_exponent(chi, &a) {
                            counts[x as usize] += 1;
                        }
                    }
                    self.cyc.from_exponent_counts(&counts)
                })
                .collect(),
        )
    }

    /// `Π_{Q | m} (1 - χ(Q) X^{deg Q})` with the primitive `χ`.
    pub fn euler_correction(&self, chi: &DirichletChar) -> CycPoly {
        let cond = self.conductor_index(chi);
        self.primes.iter().fold(self.cyc.poly_one(), |acc, (prime, _)| {
            match self.primitive_exponent(chi, cond, prime) {
                None => acc,
                Some(k) => {
                    let term = self.cyc.poly_sub(
                        &self.cyc.poly_one(),
                        &self.cyc.monomial(self.cyc.zeta_power(k as i64), prime.degree().unwrap()),
                    );
                    self.cyc.poly_mul(&acc, &term)
                }
            }
        })
    }

    /// `P^(-)(X) = Π_{χ ∈ minus part} L(X, χ_primitive)`.
    ///
    /// The characters are grouped by their restriction to F_q^×; each group
    /// product already lies in Z[ζ_{q-1}][X] and is brought down there before
    /// the groups are multiplied.
    pub fn p_minus(&self) -> Result<IntPoly> {
        let p = self.minus_product(|chi| self.l_poly(chi).map(|l| l.value))?
            .to_int_poly()
            .ok_or(Error::NonIntegerCoefficient("oracle P^(-)"))?;
        if p.coeff(0) != BigInt::one() {
            return Err(Error::CheckFailed("oracle P^(-)(0) = 1".into()));
        }
        Ok(p)
    }

    /// `J^(-)(X) = Π_{χ ∈ minus part} Π_{Q | m} (1 - χ(Q) X^{deg Q})`.
    pub fn j_minus(&self) -> Result<IntPoly> {
        self.minus_product(|chi| Ok(self.euler_correction(chi)))?
            .to_int_poly()
            .ok_or(Error::NonIntegerCoefficient("oracle J^(-)"))
    }

    fn minus_product<F>(&self, factor: F) -> Result<CycPoly>
    where
        F: Fn(&DirichletChar) -> Result<CycPoly> + Sync,
    {
        let target = CycCtx::new(self.field.q() - 1);
        let mut acc = target.poly_one();
        for lambda in FqStarChar::nontrivial(self.field) {
            let fiber = self.fiber_product(lambda, &target, &factor)?;
            acc = target.poly_mul(&acc, &fiber);
        }
        Ok(acc)
    }

    fn fiber_product<F>(&self, lambda: FqStarChar, target: &CycCtx, factor: &F) -> Result<CycPoly>
    where
        F: Fn(&DirichletChar) -> Result<CycPoly> + Sync,
    {
        let chars = self.characters(CharFilter::Restricted(lambda));
        let factors = chars.par_iter().map(factor).collect::<Result<Vec<_>>>()?;
        let prod = self.product(factors);
        target
            .poly_descend_from(&prod, &self.cyc)?
            .ok_or(Error::EmbeddingMismatch { from: target.order(), to: self.cyc.order() })
    }

    /// `Π_{χ|F_q^× = λ} L(X, χ_primitive) Π_{Q | m} (1 - χ(Q) X^{deg Q})`,
    /// brought down to Z[ζ_{q-1}][X].
    pub fn det_lambda(&self, lambda: FqStarChar, target: &CycCtx) -> Result<CycPoly> {
        if lambda.is_trivial() {
            return Err(Error::TrivialCharacter);
        }
        self.fiber_product(lambda, target, &|chi: &DirichletChar| {
            let l = self.l_poly(chi)?.value;
            Ok(self.cyc.poly_mul(&l, &self.euler_correction(chi)))
        })
    }

    /// Product in a fixed balanced-tree order over the given sequence.
    fn product(&self, mut factors: Vec<CycPoly>) -> CycPoly {
        if factors.is_empty() {
            return self.cyc.poly_one();
        }
        while factors.len() > 1 {
            let pairs: Vec<(CycPoly, Option<CycPoly>)> = {
                let mut it = factors.into_iter();
                let mut out = Vec::new();
                while let Some(a) = it.next() {
                    out.push((a, it.next()));
                }
                out
            };
            factors = pairs
                .into_par_iter()
                .map(|(a, b)| match b {
                    Some(b) => self.cyc.poly_mul(&a, &b),
                    None => a,
                })
                .collect();
        }
        factors.pop().unwrap()
    }
}

/// Primitive L-polynomial of a character.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LPoly {
    pub chi: DirichletChar,
    pub conductor: FqPoly,
    pub value: CycPoly,
}

/// `P^(-)(X)` through L-functions. The empty product for q = 2 is 1.
pub fn p_minus_oracle(field: &FieldCtx, m: &FqPoly, limit: u64) -> Result<IntPoly> {
    if field.q() == 2 {
        check_modulus(m)?;
        return Ok(IntPoly::one());
    }
    CharacterGroup::new(field, m, limit)?.p_minus()
}

/// `J^(-)(X)` through characters.
pub fn j_poly_char(field: &FieldCtx, m: &FqPoly, limit: u64) -> Result<IntPoly> {
    if field.q() == 2 {
        check_modulus(m)?;
        return Ok(IntPoly::one());
    }
    CharacterGroup::new(field, m, limit)?.j_minus()
}

/// `det D^(λ)(X)` through characters, in Z[ζ_{q-1}][X].
pub fn det_lambda_oracle(field: &FieldCtx, m: &FqPoly, lambda: FqStarChar, limit: u64) -> Result<CycPoly> {
    let target = CycCtx::new(field.q() - 1);
    let group = CharacterGroup::new(field, m, limit)?;
    if (group.basis.exponent) % (field.q() - 1) != 0 {
        return Err(Error::EmbeddingMismatch { from: field.q() - 1, to: group.basis.exponent });
    }
    group.det_lambda(lambda, &target)
}

/// Complex-valued shadow of an integer-valued character product, for
/// debugging: each coefficient must round to an integer within `1e-6`.
pub fn shadow_is_integral(cyc: &CycCtx, p: &CycPoly) -> bool {
    p.coeffs().iter().all(|c| {
        let (re, im) = cyc.approx(c);
        im.abs() < 1e-6 && (re - re.round()).abs() < 1e-6
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::det::{det_lambda, DetEngine};
    use crate::units::UnitSystem;

    fn p(f: &FieldCtx, c: &[u32]) -> FqPoly {
        FqPoly::from_codes(f, c).unwrap()
    }

    #[test]
    fn basis_examples() {
        let f = FieldCtx::prime(3).unwrap();
        let b = abelian_basis(&f, &p(&f, &[1, 0, 1]), 5000).unwrap();
        assert_eq!(b.gens().len(), 1);
        assert_eq!(b.gens()[0].1, 8);
        let b = abelian_basis(&f, &p(&f, &[1, 1]), 5000).unwrap();
        assert_eq!(b.gens().iter().map(|g| g.1).collect::<Vec<_>>(), vec![2]);
        let b = abelian_basis(&f, &p(&f, &[0, 0, 1, 1]), 5000).unwrap();
        assert_eq!(b.order(), 12);
        assert_eq!(b.exponent(), 6);
        assert!(matches!(
            abelian_basis(&f, &p(&f, &[0, 0, 1, 1]), 10),
            Err(Error::GroupTooLarge { order: 12, limit: 10 })
        ));
    }

    #[test]
    fn basis_dlogs_are_consistent() {
        for (pp, n) in [(2, 1), (3, 1), (2, 2), (5, 1)] {
            let f = FieldCtx::new(pp, n, None).unwrap();
            for d in 1..=3 {
                for m in enumerate_monic(&f, d) {
                    let b = abelian_basis(&f, &m, 5000).unwrap();
                    assert_eq!(b.order(), f.phi(&m).unwrap());
                    assert_eq!(b.dlog.len() as u64, b.order());
                    for (g, o) in b.gens() {
                        // exact order
                        assert!(f.poly_powmod(g, *o as u128, &m).unwrap().is_one());
                        for r in prime_divisors(*o) {
                            assert!(!f.poly_powmod(g, (*o / r) as u128, &m).unwrap().is_one());
                        }
                    }
                    // every unit reconstructs from its tuple; tuples are distinct
                    let mut seen = std::collections::HashSet::new();
                    for u in b.units() {
                        let t = b.dlog(u).unwrap();
                        assert!(seen.insert(t.to_vec()));
                        let back = b.gens().iter().zip(t).fold(FqPoly::one(), |acc, ((g, _), &e)| {
                            f.poly_mulmod(&acc, &f.poly_powmod(g, e as u128, &m).unwrap(), &m).unwrap()
                        });
                        assert_eq!(&back, u);
                    }
                }
            }
        }
    }

    #[test]
    fn character_counts() {
        let f = FieldCtx::prime(3).unwrap();
        let m = p(&f, &[0, 0, 1, 1]);
        let g = CharacterGroup::new(&f, &m, 5000).unwrap();
        assert_eq!(g.characters(CharFilter::All).len(), 12);
        assert_eq!(g.characters(CharFilter::MinusPart).len(), 12 - 6);
        let f2 = FieldCtx::prime(2).unwrap();
        let g2 = CharacterGroup::new(&f2, &p(&f2, &[1, 1, 1]), 5000).unwrap();
        assert!(g2.characters(CharFilter::MinusPart).is_empty());
    }

    #[test]
    fn conductors() {
        let f = FieldCtx::prime(3).unwrap();
        let m = p(&f, &[1, 0, 1]);
        let g = CharacterGroup::new(&f, &m, 5000).unwrap();
        for chi in g.characters(CharFilter::All) {
            let c = g.conductor(&chi);
            if chi.is_trivial() {
                assert!(c.is_one());
            } else {
                assert_eq!(c, m);
            }
        }
        // m = T^3 + T^2: every conductor divides m, and characters trivial on
        // the kernel mod T^2 have conductor dividing T^2.
        let m = p(&f, &[0, 0, 1, 1]);
        let g = CharacterGroup::new(&f, &m, 5000).unwrap();
        let t2 = p(&f, &[0, 0, 1]);
        for chi in g.characters(CharFilter::All) {
            let c = g.conductor(&chi);
            assert!(f.poly_rem(&m, &c).unwrap().is_zero());
            let trivial_mod_t2 = g
                .basis()
                .units()
                .iter()
                .filter(|u| f.poly_rem(u, &t2).unwrap().is_one())
                .all(|u| g.value_exponent(&chi, u) == Some(0));
            if trivial_mod_t2 {
                assert!(f.poly_rem(&t2, &c).unwrap().is_zero(), "conductor {c}");
            }
        }
    }

    #[test]
    fn l_poly_examples() {
        let f = FieldCtx::prime(3).unwrap();
        let m = p(&f, &[1, 0, 1]);
        let g = CharacterGroup::new(&f, &m, 5000).unwrap();
        let cyc = g.cyc();
        for chi in g.characters(CharFilter::All) {
            if chi.is_trivial() {
                assert_eq!(g.l_poly(&chi), Err(Error::TrivialCharacter));
                continue;
            }
            let l = g.l_poly(&chi).unwrap();
            let lin = [p(&f, &[0, 1]), p(&f, &[1, 1]), p(&f, &[2, 1])]
                .iter()
                .fold(cyc.zero(), |acc, a| cyc.add(&acc, &g.value(&chi, a)));
            let expected = CycPoly::new(vec![cyc.one(), lin]);
            assert_eq!(l.value, expected);
        }
        // linear conductor → constant 1
        let m = p(&f, &[1, 1]);
        let g = CharacterGroup::new(&f, &m, 5000).unwrap();
        for chi in g.characters(CharFilter::MinusPart) {
            assert_eq!(g.l_poly(&chi).unwrap().value, g.cyc().poly_one());
        }
    }

    #[test]
    fn imprimitive_l_factors_through_primitive() {
        for q in [3u64, 5] {
            let f = FieldCtx::prime(q).unwrap();
            for d in 1..=3 {
                for m in enumerate_monic(&f, d) {
                    let g = CharacterGroup::new(&f, &m, 5000).unwrap();
                    for chi in g.characters(CharFilter::All).into_iter().filter(|c| !c.is_trivial()) {
                        let lhs = g.l_poly_imprimitive(&chi);
                        let rhs = g.cyc().poly_mul(&g.l_poly(&chi).unwrap().value, &g.euler_correction(&chi));
                        assert_eq!(lhs, rhs, "q = {q}, m = {m}");
                    }
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        let f = FieldCtx::prime(3).unwrap();
        let m1 = p(&f, &[1, 0, 1]);
        let m2 = p(&f, &[0, 0, 1, 1]);
        assert_eq!(p_minus_oracle(&f, &m1, 5000).unwrap(), IntPoly::from_i64s(&[1, 0, -2, 0, 9]));
        assert_eq!(
            p_minus_oracle(&f, &m2, 5000).unwrap(),
            IntPoly::from_i64s(&[1, -1, 1, -6, 3, -9, 27])
        );
        assert_eq!(j_poly_char(&f, &m2, 5000).unwrap(), IntPoly::from_i64s(&[1, 1, 0, -1, -1]));
        assert_eq!(j_poly_char(&f, &m1, 5000).unwrap(), IntPoly::one());
        let lam = FqStarChar::new(&f, 1);
        assert_eq!(
            det_lambda_oracle(&f, &m1, lam, 5000).unwrap().to_int_poly().unwrap(),
            IntPoly::from_i64s(&[1, 0, -2, 0, 9])
        );
        assert_eq!(
            det_lambda_oracle(&f, &m2, lam, 5000).unwrap().to_int_poly().unwrap(),
            IntPoly::from_i64s(&[1, 0, 0, -6, -3, -6, 23, 30, 6, -18, -27])
        );
        assert_eq!(det_lambda_oracle(&f, &p(&f, &[2, 1]), lam, 5000).unwrap().to_int_poly().unwrap(), IntPoly::one());
        let f2 = FieldCtx::prime(2).unwrap();
        assert_eq!(p_minus_oracle(&f2, &p(&f2, &[1, 1, 1]), 5000).unwrap(), IntPoly::one());
        assert_eq!(j_poly_char(&f2, &p(&f2, &[0, 1, 1]), 5000).unwrap(), IntPoly::one());
    }

    #[test]
    fn per_lambda_oracle_matches_engine_f5() {
        let f = FieldCtx::prime(5).unwrap();
        let cyc = CycCtx::new(4);
        for d in 1..=2 {
            for m in enumerate_monic(&f, d) {
                let sys = UnitSystem::new(&f, &m).unwrap();
                let g = CharacterGroup::new(&f, &m, 5000).unwrap();
                for lam in FqStarChar::nontrivial(&f) {
                    let engine = det_lambda(&f, &sys, lam, &cyc, DetEngine::Bareiss).unwrap();
                    let oracle = g.det_lambda(lam, &cyc).unwrap();
                    assert_eq!(engine, oracle, "m = {m}, t = {}", lam.exponent());
                }
            }
        }
    }

    #[test]
    fn shadow_mode_flags_integral_products() {
        let f = FieldCtx::prime(3).unwrap();
        let g = CharacterGroup::new(&f, &p(&f, &[1, 0, 1]), 5000).unwrap();
        let chars = g.characters(CharFilter::MinusPart);
        let all = chars
            .iter()
            .fold(g.cyc().poly_one(), |acc, c| g.cyc().poly_mul(&acc, &g.l_poly(c).unwrap().value));
        assert!(shadow_is_integral(g.cyc(), &all));
        let one = g.l_poly(&chars[0]).unwrap().value;
        assert!(!shadow_is_integral(g.cyc(), &one));
    }

    #[test]
    fn congruence_solver() {
        assert_eq!(solve_linear_congruence(3, 6, 9), Some(2));
        assert_eq!(solve_linear_congruence(2, 1, 4), None);
        assert_eq!(solve_linear_congruence(5, 0, 1), Some(0));
    }
}
