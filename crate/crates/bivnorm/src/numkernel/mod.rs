//! Numeric foundation: the precision-generic scalar trait, the standard
//! normal CDF, incomplete gamma recursions, and arctangent series.

pub mod arctan;
pub mod gamma;
#[cfg(feature = "highprec")]
pub mod mp;
pub mod scalar;

pub use arctan::{arctan_arcsin_series, arctan_euler, ArctanSeries};
pub use gamma::{reg_gamma_half_seq, reg_gamma_q_seq, GammaSeqState};
#[cfg(feature = "highprec")]
pub use mp::MpFloat;
pub use scalar::{std_normal_cdf, ulp, RealScalar};
