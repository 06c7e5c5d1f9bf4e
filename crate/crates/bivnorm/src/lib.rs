//! Bivariate standard normal CDF and Owen's T function via regularized
//! incomplete gamma series.
//!
//! The centerpiece is a pair of complementary series for Owen's T function
//! obtained by damping Euler's arctangent series with regularized incomplete
//! gamma factors.  Both series have nonnegative terms, converge for every
//! argument, and come with provable truncation bounds; a transformation of
//! the argument pair keeps the convergence quotient at or below 1/2.  On top
//! of them sit:
//!
//! - [`owent`]: the series engine, truncation bounds, a classic alternating
//!   series for comparison, and batch evaluation;
//! - [`bvn`]: the bivariate normal CDF `phi2` with stabilized slope
//!   decomposition, a critical-correlation split, and a single-series form;
//! - [`tetrachoric`]: a tetrachoric-series reference implementation;
//! - [`oracle`]: brute-force quadrature and direct-summation cross-checks;
//! - [`numkernel`]: the precision-generic scalar trait, normal CDF,
//!   incomplete gamma recursions, and arctangent series;
//! - [`cli`]: grid, random-stress, and precision-study drivers shared by the
//!   `bivnorm` binary.
//!
//! # Example
//! ```
//! use bivnorm::{owen_t, phi2, Correlation, Phi2Options, SeriesVariant};
//!
//! let t = owen_t(2.1, 1.0, SeriesVariant::AtanExtYes, -1.0).unwrap();
//! assert!((t.value - 0.008772641520385687).abs() < 1e-15);
//!
//! let rho = Correlation::new(0.4).unwrap();
//! let p = phi2(0.5, 0.3, rho, Phi2Options::default()).unwrap();
//! assert!((p - 0.4838023414903439).abs() < 1e-13);
//! ```

pub mod bvn;
pub mod cli;
pub mod numkernel;
pub mod oracle;
pub mod owent;
pub mod tetrachoric;

pub use bvn::{
    decompose, density, l_complement, phi2, phi2_h0, phi2_h0_with, phi2_report, phi2_unified,
    BvnDecomposition, Correlation, CriticalSplit, Phi2Options, Phi2Report,
};
pub use numkernel::{std_normal_cdf, RealScalar};
pub use owent::{
    owen_t, owen_t_alternating, owen_t_batch, owen_u, std_normal_cdf_via_series, truncation_bound,
    EvalReport, OwenParams, SeriesVariant,
};
pub use tetrachoric::{phi2_tetrachoric_h0, phi2_tetrachoric_xy, TetraReport};

/// Error type shared by the whole crate.
#[derive(thiserror::Error, Debug, Clone, PartialEq)]
pub enum OwenError {
    /// An input was outside the function's domain.
    #[error("domain error: {what}")]
    Domain { what: &'static str },
    /// A series failed to settle within its iteration allowance.
    #[error("series did not converge after {terms} terms")]
    NonConvergence { terms: usize },
    /// Batch inputs had incompatible lengths.
    #[error("batch length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    /// A correlation outside [-1, 1] (or non-finite) was supplied.
    #[error("correlation must be finite with |rho| <= 1, got {value}")]
    InvalidCorrelation { value: f64 },
}
