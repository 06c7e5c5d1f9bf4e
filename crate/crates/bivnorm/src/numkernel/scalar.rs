//! Precision-generic scalar contract and its binary64 realization.
//!
//! Every series in this crate is written against [`RealScalar`], so the same
//! recursions run unchanged at binary64 and, with the `highprec` feature, at
//! arbitrary MPFR precision.  The binary64 realization pays particular
//! attention to the lower tail of the normal CDF: the accelerated series
//! evaluate `phi` at arguments up to ~140, where naive `erfc(h/sqrt(2))`
//! loses hundreds of ulps to argument rounding alone.

use core::fmt::{Debug, Display};
use core::ops::{Add, Div, Mul, Neg, Sub};

/// Scalar contract required by the series recursions.
///
/// Implementations must provide `exp`, `sqrt` and `atan` with relative error
/// within 4 units in the last place of their precision, a machine-epsilon
/// query, and the smallest positive normal value (the underflow threshold
/// `eta` used to short-circuit dead series tails).
///
/// Constructors take a prototype value so that realizations with a run-time
/// precision (MPFR) can inherit it; the binary64 realization ignores the
/// prototype.
pub trait RealScalar:
    Clone
    + PartialOrd
    + Debug
    + Display
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Div<Output = Self>
    + Neg<Output = Self>
{
    /// Value of `v` at the prototype's precision.
    fn from_f64(proto: &Self, v: f64) -> Self;
    /// Value of `n` at the prototype's precision (exact for the index
    /// ranges used by the recursions).
    fn from_usize(proto: &Self, n: usize) -> Self;
    /// Additive identity at the prototype's precision.
    fn zero(proto: &Self) -> Self {
        Self::from_f64(proto, 0.0)
    }
    /// Multiplicative identity at the prototype's precision.
    fn one(proto: &Self) -> Self {
        Self::from_f64(proto, 1.0)
    }
    /// Pi at the prototype's precision.
    fn pi(proto: &Self) -> Self;
    /// Machine epsilon, `2^(1-precision_bits)`.
    fn epsilon(proto: &Self) -> Self;
    /// Smallest positive normal value (`eta`).
    fn min_positive(proto: &Self) -> Self;
    /// Significand width in bits (53 for binary64).
    fn precision_bits(&self) -> u32;
    fn abs(self) -> Self;
    fn sqrt(self) -> Self;
    fn exp(self) -> Self;
    fn ln(self) -> Self;
    fn atan(self) -> Self;
    /// Standard normal CDF at the value.
    fn norm_cdf(self) -> Self;
    fn is_finite(&self) -> bool;
    fn is_nan(&self) -> bool;
    /// Nearest binary64 value, for reporting.
    fn to_f64(&self) -> f64;
}

// 1/sqrt(2) split into a rounded head and its exact residual, so that
// x/sqrt(2) can be formed with an error far below one ulp of the product.
const INV_SQRT2_HI: f64 = std::f64::consts::FRAC_1_SQRT_2;
const INV_SQRT2_LO: f64 = -4.833_646_656_726_457e-17;
const TWO_OVER_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

/// Standard normal cumulative distribution function at binary64.
///
/// Relative error stays within a few ulp all the way into the deep lower
/// tail (down to where the result itself becomes subnormal, near
/// `h = -37.6`).  The upper tail is benign because the result is close
/// to 1.
///
/// # Example
/// ```
/// let p = bivnorm::numkernel::std_normal_cdf(0.0);
/// assert_eq!(p, 0.5);
/// ```
pub fn std_normal_cdf(h: f64) -> f64 {
    if h.is_nan() {
        return f64::NAN;
    }
    if h >= -1.0 {
        // Result >= Phi(-1) ~ 0.159, so argument rounding costs at most a
        // couple of ulp here.
        return 0.5 * libm::erfc(-h * INV_SQRT2_HI);
    }
    // Lower tail: erfc is evaluated at the rounded argument x*INV_SQRT2_HI
    // and corrected to first order for the rounding residual.  The residual
    // is exact thanks to fused multiply-add plus the split constant.
    let x = -h;
    let xe = x * INV_SQRT2_HI;
    let e = libm::erfc(xe);
    if e == 0.0 {
        return 0.0;
    }
    let delta = f64::mul_add(x, INV_SQRT2_HI, -xe) + x * INV_SQRT2_LO;
    let slope = TWO_OVER_SQRT_PI * (-xe * xe).exp();
    0.5 * (e - slope * delta)
}

impl RealScalar for f64 {
    fn from_f64(_proto: &Self, v: f64) -> Self {
        v
    }
    fn from_usize(_proto: &Self, n: usize) -> Self {
        n as f64
    }
    fn pi(_proto: &Self) -> Self {
        core::f64::consts::PI
    }
    fn epsilon(_proto: &Self) -> Self {
        f64::EPSILON
    }
    fn min_positive(_proto: &Self) -> Self {
        f64::MIN_POSITIVE
    }
    fn precision_bits(&self) -> u32 {
        53
    }
    fn abs(self) -> Self {
        f64::abs(self)
    }
    fn sqrt(self) -> Self {
        f64::sqrt(self)
    }
    fn exp(self) -> Self {
        f64::exp(self)
    }
    fn ln(self) -> Self {
        f64::ln(self)
    }
    fn atan(self) -> Self {
        f64::atan(self)
    }
    fn norm_cdf(self) -> Self {
        std_normal_cdf(self)
    }
    fn is_finite(&self) -> bool {
        f64::is_finite(*self)
    }
    fn is_nan(&self) -> bool {
        f64::is_nan(*self)
    }
    fn to_f64(&self) -> f64 {
        *self
    }
}

/// Spacing between `x` and the next representable binary64 value of the
/// same sign at the same magnitude.  `ulp(0)` is the smallest subnormal.
pub fn ulp(x: f64) -> f64 {
    let a = x.abs();
    if !a.is_finite() {
        return f64::NAN;
    }
    f64::from_bits(a.to_bits() + 1) - a
}
