//! Closed forms for the coefficients of `X` and `X^2` in `det D^(-)(X)`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::Zero;

use crate::cyclo::IntPoly;
use crate::error::{Error, Result};
use crate::field::{FieldCtx, FqElem};
use crate::units::{inverse_mod, UnitSystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LowDegPrediction {
    pub a1: BigInt,
    /// `None` for linear moduli.
    pub a2: Option<BigInt>,
    /// Only computed for quadratic moduli.
    pub c_m: Option<u64>,
}

impl LowDegPrediction {
    /// Whether `det` has the predicted coefficients.
    pub fn matches(&self, det: &IntPoly) -> bool {
        det.coeff(1) == self.a1 && self.a2.as_ref().is_none_or(|a2| det.coeff(2) == *a2)
    }
}

/// Number of representatives `α_i` whose inverse has leading coefficient 1.
pub fn c_m(field: &FieldCtx, sys: &UnitSystem) -> Result<u64> {
    let mut count = 0;
    for a in sys.reps() {
        let inv = inverse_mod(field, a, sys.modulus())?;
        if inv.leading() == Some(FqElem::ONE) {
            count += 1;
        }
    }
    Ok(count)
}

/// `a_1 = 0`; `a_2 = 0` for `deg m > 2` and
/// `a_2 = (N/2) [(q - 1)(1 - C_m) + N - 1]` for `deg m = 2`.
pub fn predict_low_coeffs(field: &FieldCtx, sys: &UnitSystem) -> Result<LowDegPrediction> {
    let d = sys.modulus().degree().unwrap_or(0);
    if d < 2 {
        return Err(Error::DegreeTooSmall);
    }
    if d > 2 {
        return Ok(LowDegPrediction { a1: BigInt::zero(), a2: Some(BigInt::zero()), c_m: None });
    }
    let c = c_m(field, sys)?;
    let n = BigInt::from(sys.len());
    let bracket: BigInt = BigInt::from(field.q() - 1) * (BigInt::from(1) - BigInt::from(c)) + &n - 1;
    let (a2, rem) = (n * bracket).div_rem(&BigInt::from(2));
    if !rem.is_zero() {
        return Err(Error::CheckFailed("N_m [(q - 1)(1 - C_m) + N_m - 1] is even".into()));
    }
    Ok(LowDegPrediction { a1: BigInt::zero(), a2: Some(a2), c_m: Some(c) })
}
