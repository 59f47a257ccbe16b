//! Relative zeta polynomials and relative class numbers of cyclotomic
//! function fields over F_q[T].

pub mod cyclo;
pub mod det;
pub mod error;
pub mod field;
pub mod lfun;
pub mod lowdeg;
pub mod poly;
pub mod splitting;
pub mod units;
pub mod zeta;

pub use cyclo::{cyclotomic_poly, CycCtx, CycNum, CycPoly, IntPoly};
pub use error::{Error, Result};
pub use field::{FieldCtx, FqElem};
pub use poly::{enumerate_monic, FqPoly};
pub use det::{DetEngine, FqStarChar};
pub use lfun::{CharacterGroup, DEFAULT_GROUP_LIMIT};
pub use lowdeg::{predict_low_coeffs, LowDegPrediction};
pub use splitting::{j_poly, w_minus, SplitData};
pub use units::UnitSystem;
pub use zeta::{maillet_determinant, relative_zeta, relative_zeta_with, Options, ZetaReport};
