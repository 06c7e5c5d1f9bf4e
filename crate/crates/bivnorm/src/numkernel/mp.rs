//! Arbitrary-precision scalar backed by MPFR (via the `rug` crate).
//!
//! Enabled by the `highprec` feature.  An [`MpFloat`] carries its own
//! precision; the series code picks it up through the prototype-passing
//! constructors of [`RealScalar`], so one high-precision seed value is
//! enough to run a whole recursion at that precision.

use core::cmp::Ordering;
use core::fmt;
use core::ops::{Add, Div, Mul, Neg, Sub};

use rug::float::Constant;
use rug::Float;

use crate::numkernel::scalar::RealScalar;

/// Multiple-precision floating-point value with value-semantics operators.
#[derive(Clone, Debug)]
pub struct MpFloat(pub Float);

impl MpFloat {
    /// A value of `v` at `prec` bits of precision.
    pub fn with_precision(prec: u32, v: f64) -> Self {
        MpFloat(Float::with_val(prec, v))
    }
}

impl fmt::Display for MpFloat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(&self.0, f)
    }
}

impl PartialEq for MpFloat {
    fn eq(&self, other: &Self) -> bool {
        self.0 == other.0
    }
}

impl PartialOrd for MpFloat {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        self.0.partial_cmp(&other.0)
    }
}

impl Add for MpFloat {
    type Output = MpFloat;
    fn add(self, rhs: Self) -> Self {
        MpFloat(self.0 + rhs.0)
    }
}

impl Sub for MpFloat {
    type Output = MpFloat;
    fn sub(self, rhs: Self) -> Self {
        MpFloat(self.0 - rhs.0)
    }
}

impl Mul for MpFloat {
    type Output = MpFloat;
    fn mul(self, rhs: Self) -> Self {
        MpFloat(self.0 * rhs.0)
    }
}

impl Div for MpFloat {
    type Output = MpFloat;
    fn div(self, rhs: Self) -> Self {
        MpFloat(self.0 / rhs.0)
    }
}

impl Neg for MpFloat {
    type Output = MpFloat;
    fn neg(self) -> Self {
        MpFloat(-self.0)
    }
}

impl RealScalar for MpFloat {
    fn from_f64(proto: &Self, v: f64) -> Self {
        MpFloat(Float::with_val(proto.0.prec(), v))
    }
    fn from_usize(proto: &Self, n: usize) -> Self {
        MpFloat(Float::with_val(proto.0.prec(), n as u64))
    }
    fn pi(proto: &Self) -> Self {
        MpFloat(Float::with_val(proto.0.prec(), Constant::Pi))
    }
    fn epsilon(proto: &Self) -> Self {
        let p = proto.0.prec();
        MpFloat(Float::with_val(p, Float::i_exp(1, 1 - p as i32)))
    }
    fn min_positive(proto: &Self) -> Self {
        // MPFR's exponent range is so wide that the underflow short-circuit
        // in the series code never fires; any tiny positive value works.
        let p = proto.0.prec();
        MpFloat(Float::with_val(p, Float::i_exp(1, -(1 << 30))))
    }
    fn precision_bits(&self) -> u32 {
        self.0.prec()
    }
    fn abs(self) -> Self {
        MpFloat(self.0.abs())
    }
    fn sqrt(self) -> Self {
        MpFloat(self.0.sqrt())
    }
    fn exp(self) -> Self {
        MpFloat(self.0.exp())
    }
    fn ln(self) -> Self {
        MpFloat(self.0.ln())
    }
    fn atan(self) -> Self {
        MpFloat(self.0.atan())
    }
    fn norm_cdf(self) -> Self {
        // Phi(h) = erfc(-h/sqrt(2)) / 2, carried with 32 guard bits and
        // rounded back to the working precision.
        let p = self.0.prec();
        let wide = p + 32;
        let h = Float::with_val(wide, &self.0);
        let sqrt2 = Float::with_val(wide, 2u32).sqrt();
        let x = -h / sqrt2;
        let e = x.erfc();
        MpFloat(Float::with_val(p, e / 2u32))
    }
    fn is_finite(&self) -> bool {
        self.0.is_finite()
    }
    fn is_nan(&self) -> bool {
        self.0.is_nan()
    }
    fn to_f64(&self) -> f64 {
        self.0.to_f64()
    }
}
