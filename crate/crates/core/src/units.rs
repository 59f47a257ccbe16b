//! The unit group (A/(m))^× and its monic representatives.
//!
//! Every unit class has a unique representative `r` of degree `< deg m`.
//! Its degree and leading coefficient are written `Deg` and `L` below.
//! Scaling by F_q^× changes only `L`, so the classes of
//! (A/(m))^× / F_q^× are indexed by the monic unit representatives.

use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::poly::{enumerate_monic, FqPoly};

/// The residue of `a` modulo the monic modulus `m` (degree `< deg m`).
pub fn canonical_rep(field: &FieldCtx, a: &FqPoly, m: &FqPoly) -> Result<FqPoly> {
    check_modulus(m)?;
    field.poly_rem(a, m)
}

/// `(Deg, L)` of a nonzero canonical representative.
pub fn deg_and_leading(rep: &FqPoly) -> (usize, FqElem) {
    let deg = rep.degree().expect("units are nonzero");
    (deg, rep.coeff(deg))
}

/// Inverse of `a` modulo `m`, as a canonical representative.
pub fn inverse_mod(field: &FieldCtx, a: &FqPoly, m: &FqPoly) -> Result<FqPoly> {
    check_modulus(m)?;
    let (g, u, _) = field.poly_ext_gcd(&field.poly_rem(a, m)?, m);
    if !g.is_one() {
        return Err(Error::NotAUnit);
    }
    field.poly_rem(&u, m)
}

pub(crate) fn check_modulus(m: &FqPoly) -> Result<()> {
    match m.degree() {
        None => Err(Error::ConstantModulus),
        Some(_) if !m.is_monic() => Err(Error::NotMonic),
        Some(0) => Err(Error::ConstantModulus),
        Some(_) => Ok(()),
    }
}

/// The fixed list `α_1, .., α_N` of monic unit representatives modulo `m`,
/// with the pairwise data `Deg(α_i α_j^{-1})` and `L(α_i α_j^{-1})`
/// precomputed.
#[derive(Clone, Debug)]
pub struct UnitSystem {
    modulus: FqPoly,
    reps: Vec<FqPoly>,
    index: HashMap<FqPoly, usize>,
    /// Row-major `N × N` table of `(Deg, L)` of `α_i α_j^{-1}`.
    pairs: Vec<(usize, FqElem)>,
}

impl UnitSystem {
    /// Builds the system in canonical order: monic polynomials of degree
    /// `< deg m` coprime to `m`, by degree and then in the order of
    /// [`enumerate_monic`].
    pub fn new(field: &FieldCtx, m: &FqPoly) -> Result<Self> {
        check_modulus(m)?;
        let d = m.degree().unwrap();
        let reps: Vec<FqPoly> = (0..d)
            .flat_map(|k| enumerate_monic(field, k))
            .filter(|a| field.poly_gcd(a, m).is_one())
            .collect();
        Self::build(field, m, reps)
    }

    /// Builds the system with a caller-chosen ordering of the representatives.
    /// `reps` must be a permutation of the canonical list.
    pub fn with_order(field: &FieldCtx, m: &FqPoly, reps: Vec<FqPoly>) -> Result<Self> {
        let canonical = Self::new(field, m)?;
        if reps.len() != canonical.reps.len()
            || reps.iter().any(|r| !canonical.index.contains_key(r))
        {
            return Err(Error::InvalidRepresentatives);
        }
        let distinct: std::collections::HashSet<_> = reps.iter().collect();
        if distinct.len() != reps.len() {
            return Err(Error::InvalidRepresentatives);
        }
        Self::build(field, m, reps)
    }

    fn build(field: &FieldCtx, m: &FqPoly, reps: Vec<FqPoly>) -> Result<Self> {
        let index: HashMap<FqPoly, usize> =
            reps.iter().cloned().enumerate().map(|(i, r)| (r, i)).collect();
        let inverses = reps
            .iter()
            .map(|r| inverse_mod(field, r, m))
            .collect::<Result<Vec<_>>>()?;
        let n = reps.len();
        let mut pairs = Vec::with_capacity(n * n);
        for a in &reps {
            for b_inv in &inverses {
                let r = field.poly_mulmod(a, b_inv, m)?;
                pairs.push(deg_and_leading(&r));
            }
        }
        Ok(UnitSystem { modulus: m.clone(), reps, index, pairs })
    }

    pub fn modulus(&self) -> &FqPoly {
        &self.modulus
    }

    pub fn reps(&self) -> &[FqPoly] {
        &self.reps
    }

    /// `N_m = Φ(m) / (q - 1)`.
    pub fn len(&self) -> usize {
        self.reps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.reps.is_empty()
    }

    pub fn position(&self, rep: &FqPoly) -> Option<usize> {
        self.index.get(rep).copied()
    }

    /// `(d_ij, L(α_i α_j^{-1}))`.
    pub fn pair_data(&self, i: usize, j: usize) -> (usize, FqElem) {
        self.pairs[i * self.reps.len() + j]
    }

    /// Position of the class of the unit `a` in (A/(m))^× / F_q^×, together
    /// with the scalar `c` such that `a ≡ c α_k (mod m)`.
    pub fn classify(&self, field: &FieldCtx, a: &FqPoly) -> Result<(usize, FqElem)> {
        let r = field.poly_rem(a, &self.modulus)?;
        let lead = r.leading().ok_or(Error::NotAUnit)?;
        let monic = field.poly_monic(&r);
        let k = self.position(&monic).ok_or(Error::NotAUnit)?;
        Ok((k, lead))
    }
}
