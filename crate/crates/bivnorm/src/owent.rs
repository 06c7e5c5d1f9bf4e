//! Owen's T function via gamma-damped arctangent series.
//!
//! T(h, r) = (1/(2 pi)) * integral from 0 to r of
//! exp(-h^2 (1 + x^2) / 2) / (1 + x^2) dx.
//!
//! Writing p = r^2/(1+r^2) and q = (1+r^2) h^2 / 2, Euler's arctangent
//! series for arctan(r) turns into two complementary series for T once each
//! coefficient is damped by a regularized incomplete gamma factor at
//! integer shape:
//!
//! - [`SeriesVariant::AtanExtNo`] sums terms carrying Q(k+1, q) and
//!   converges upward to T(h, r) directly;
//! - [`SeriesVariant::AtanExtYes`] sums terms carrying P(k+1, q) = 1 - Q
//!   and converges upward to arctan(r)/(2 pi) - T(h, r).
//!
//! Both series have nonnegative terms for r >= 0 and converge for every
//! real (h, r); the running bound e_k in [`recursion_core`] equals the
//! provable cap on the remaining truncation error after k+... terms (see
//! [`truncation_bound`]).  For |r| > 1 the evaluator [`owen_t`] switches to
//! the transformed pair (r h, 1/r), which shares the same q, and assembles
//! the result through the two-CDF combination [`owen_u`]; this keeps the
//! convergence quotient at or below 1/2 everywhere.

use crate::numkernel::scalar::RealScalar;
use crate::OwenError;

/// Which of the two complementary gamma-damped series to sum.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SeriesVariant {
    /// Terms carry the upper regularized gamma Q(k+1, q); partial sums
    /// approach T from below.
    AtanExtNo,
    /// Terms carry the lower regularized gamma P(k+1, q); partial sums
    /// approach arctan(r)/(2 pi) - T from below.
    AtanExtYes,
}

impl SeriesVariant {
    /// Stable machine-readable name, as used by the CLI.
    pub fn label(self) -> &'static str {
        match self {
            SeriesVariant::AtanExtNo => "atan-ext-no",
            SeriesVariant::AtanExtYes => "atan-ext-yes",
        }
    }
}

impl core::fmt::Display for SeriesVariant {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(self.label())
    }
}

/// Argument pair (h, r) for the series, with its derived quantities.
#[derive(Clone, Debug)]
pub struct OwenParams<T> {
    pub h: T,
    pub r: T,
}

impl<T: RealScalar> OwenParams<T> {
    /// Requires finite h and r.
    pub fn new(h: T, r: T) -> Result<Self, OwenError> {
        if !h.is_finite() || !r.is_finite() {
            return Err(OwenError::Domain {
                what: "owen t arguments must be finite",
            });
        }
        Ok(Self { h, r })
    }

    /// Convergence quotient p = r^2 / (1 + r^2), in [0, 1).
    pub fn p(&self) -> T {
        let one = T::one(&self.r);
        let r2 = self.r.clone() * self.r.clone();
        r2.clone() / (one + r2)
    }

    /// Gamma argument q = (1 + r^2) h^2 / 2; invariant under
    /// [`OwenParams::transformed`].
    pub fn q(&self) -> T {
        let one = T::one(&self.r);
        let half = T::from_f64(&self.r, 0.5);
        let r2 = self.r.clone() * self.r.clone();
        half * (one + r2) * self.h.clone() * self.h.clone()
    }

    /// The transformed pair (r h, 1/r).  Requires r != 0; the product r h
    /// may overflow for extreme inputs, which callers must tolerate.
    pub fn transformed(&self) -> Self {
        let one = T::one(&self.r);
        Self {
            h: self.r.clone() * self.h.clone(),
            r: one / self.r.clone(),
        }
    }
}

/// Raw result of running one series recursion to its stopping point.
#[derive(Clone, Debug)]
pub struct RecursionOutcome<T> {
    /// Signed partial sum: sgn(r) times the nonnegative series sum.
    pub s: T,
    /// Loop passes executed (at least 1).
    pub iterations: usize,
    /// Error cap e_k at exit; an upper bound on the truncation error left
    /// in |s| unless the run stagnated below it.
    pub e_final: T,
    /// The partial sum stopped changing at working precision.
    pub stagnated: bool,
    /// exp(-q) fell below the smallest positive normal value, so every
    /// term of the recursion is dead; s is reported as zero.
    pub underflowed: bool,
    /// The iteration cap (10 x precision bits) was hit first.
    pub capped: bool,
}

/// Run one gamma-damped series recursion for [`owen_t`].
///
/// Shared state: p = r^2/(1+r^2), q = (1+r^2)h^2/2, a_0 = |r|/(2 pi (1+r^2)),
/// b_0 = exp(-q), d_0 = b_0.  Each pass updates
///
/// ```text
/// a_{k+1} = (2k+2) p a_k / (2k+3)
/// b_{k+1} = q b_k / (k+1)
/// d_{k+1} = d_k + b_{k+1}
/// S_{k+1} = S_k + a_{k+1} d_{k+1}        (AtanExtNo)
/// S_{k+1} = S_k + a_{k+1} (1 - d_{k+1})  (AtanExtYes)
/// e_{k+1} = (2k+4) g e_k / (2k+5)
/// ```
///
/// with g = p for AtanExtNo and g = (1 - exp(-q)) p for AtanExtYes, and
/// stops as soon as e_k < eps or the sum stops growing.  A non-positive
/// `eps` therefore runs the series to stagnation at working precision.
/// The returned sum carries the sign of r.
///
/// Intended for |r| <= 1 (where the quotient is at most 1/2); [`owen_t`]
/// reaches larger |r| through the argument transformation.  The recursion
/// itself converges for any finite pair whose intermediates stay finite.
pub fn recursion_core<T: RealScalar>(
    params: &OwenParams<T>,
    variant: SeriesVariant,
    eps: &T,
) -> RecursionOutcome<T> {
    let h = &params.h;
    let r = &params.r;
    let zero = T::zero(h);
    let one = T::one(h);
    let two_pi = T::from_f64(h, 2.0) * T::pi(h);
    let three_pi = T::from_f64(h, 3.0) * T::pi(h);

    let r2 = r.clone() * r.clone();
    let opr2 = one.clone() + r2.clone();
    let q = T::from_f64(h, 0.5) * opr2.clone() * h.clone() * h.clone();
    let b0 = (-q.clone()).exp();
    if b0 < T::min_positive(h) {
        // Every term carries exp(-q); once that is subnormal or zero the
        // whole series is dead at working precision.
        return RecursionOutcome {
            s: zero.clone(),
            iterations: 1,
            e_final: zero,
            stagnated: false,
            underflowed: true,
            capped: false,
        };
    }
    let p = r2 / opr2.clone();
    let a0 = r.clone().abs() / (two_pi * opr2);

    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut d = b0.clone();
    let (g, mut s, mut e) = match variant {
        SeriesVariant::AtanExtNo => (
            p.clone(),
            a0 * d.clone(),
            r.clone().abs() * p.clone() / three_pi,
        ),
        SeriesVariant::AtanExtYes => {
            let om = one.clone() - b0;
            let g = om.clone() * p.clone();
            (
                g.clone(),
                a0 * om.clone(),
                r.clone().abs() * om * g / three_pi,
            )
        }
    };

    let cap = 10 * h.precision_bits() as usize;
    let mut k = 0usize;
    let mut stagnated = false;
    let mut capped = false;
    loop {
        let prev = s.clone();
        let n2 = T::from_usize(h, 2 * k + 2);
        let n3 = T::from_usize(h, 2 * k + 3);
        let n4 = T::from_usize(h, 2 * k + 4);
        let n5 = T::from_usize(h, 2 * k + 5);
        a = n2 * p.clone() * a / n3;
        b = q.clone() * b / T::from_usize(h, k + 1);
        d = d.clone() + b.clone();
        let term = match variant {
            SeriesVariant::AtanExtNo => a.clone() * d.clone(),
            SeriesVariant::AtanExtYes => a.clone() * (one.clone() - d.clone()),
        };
        s = s + term;
        let e_prev = e.clone();
        e = n4 * g.clone() * e / n5;
        debug_assert!(e <= e_prev, "error cap must not grow");
        k += 1;
        if e < *eps {
            break;
        }
        if s <= prev {
            stagnated = true;
            break;
        }
        if k >= cap {
            capped = true;
            break;
        }
    }
    if *r < zero {
        s = -s;
    }
    RecursionOutcome {
        s,
        iterations: k,
        e_final: e,
        stagnated,
        underflowed: false,
        capped,
    }
}

/// Modified AtanExtYes recursion whose partial sums bracket -T from below.
///
/// Identical to [`recursion_core`] with [`SeriesVariant::AtanExtYes`]
/// except that the sum starts at a_0 (1 - d_0) - arctan(|r|)/(2 pi), so for
/// r > 0 the negated partial sums -S_k decrease toward T(h, r) from above
/// while the plain AtanExtNo partial sums increase toward it from below.
/// The returned sum carries the sign of r, like [`recursion_core`].
pub fn recursion_core_shifted<T: RealScalar>(
    params: &OwenParams<T>,
    eps: &T,
) -> RecursionOutcome<T> {
    let h = &params.h;
    let r = &params.r;
    let zero = T::zero(h);
    let one = T::one(h);
    let two_pi = T::from_f64(h, 2.0) * T::pi(h);
    let three_pi = T::from_f64(h, 3.0) * T::pi(h);

    let r2 = r.clone() * r.clone();
    let opr2 = one.clone() + r2.clone();
    let q = T::from_f64(h, 0.5) * opr2.clone() * h.clone() * h.clone();
    let mut b0 = (-q.clone()).exp();
    let mut underflowed = false;
    if b0 < T::min_positive(h) {
        // Dead gamma tail: the damped factors 1 - d_k are all one, so the
        // run degrades gracefully to Euler's series minus arctan.
        b0 = zero.clone();
        underflowed = true;
    }
    let p = r2 / opr2.clone();
    let a0 = r.clone().abs() / (two_pi.clone() * opr2);
    let atan_term = r.clone().abs().atan() / two_pi;

    let om0 = one.clone() - b0.clone();
    let g = om0.clone() * p.clone();
    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut d = b0;
    let mut s = a0 * om0.clone() - atan_term;
    let mut e = r.clone().abs() * om0 * g.clone() / three_pi;

    let cap = 10 * h.precision_bits() as usize;
    let mut k = 0usize;
    let mut stagnated = false;
    let mut capped = false;
    loop {
        let prev = s.clone();
        let n2 = T::from_usize(h, 2 * k + 2);
        let n3 = T::from_usize(h, 2 * k + 3);
        let n4 = T::from_usize(h, 2 * k + 4);
        let n5 = T::from_usize(h, 2 * k + 5);
        a = n2 * p.clone() * a / n3;
        b = q.clone() * b / T::from_usize(h, k + 1);
        d = d.clone() + b.clone();
        s = s + a.clone() * (one.clone() - d.clone());
        e = n4 * g.clone() * e / n5;
        k += 1;
        if e < *eps {
            break;
        }
        if s <= prev {
            stagnated = true;
            break;
        }
        if k >= cap {
            capped = true;
            break;
        }
    }
    if *r < zero {
        s = -s;
    }
    RecursionOutcome {
        s,
        iterations: k,
        e_final: e,
        stagnated,
        underflowed,
        capped,
    }
}

/// Unsigned partial sums S_0 ..= S_n of the selected series at (|h|, |r|).
///
/// Useful for examples and for checking [`truncation_bound`] against the
/// actual remainder.
pub fn series_partial_sums<T: RealScalar>(
    params: &OwenParams<T>,
    variant: SeriesVariant,
    n: usize,
) -> Vec<T> {
    let h = params.h.clone().abs();
    let r = params.r.clone().abs();
    let one = T::one(&h);
    let two_pi = T::from_f64(&h, 2.0) * T::pi(&h);
    let r2 = r.clone() * r.clone();
    let opr2 = one.clone() + r2.clone();
    let q = T::from_f64(&h, 0.5) * opr2.clone() * h.clone() * h.clone();
    let p = r2 / opr2.clone();
    let b0 = (-q.clone()).exp();
    let a0 = r / (two_pi * opr2);

    let mut a = a0.clone();
    let mut b = b0.clone();
    let mut d = b0.clone();
    let mut s = match variant {
        SeriesVariant::AtanExtNo => a0 * d.clone(),
        SeriesVariant::AtanExtYes => a0 * (one.clone() - d.clone()),
    };
    let mut out = Vec::with_capacity(n + 1);
    out.push(s.clone());
    for k in 0..n {
        let n2 = T::from_usize(&h, 2 * k + 2);
        let n3 = T::from_usize(&h, 2 * k + 3);
        a = n2 * p.clone() * a / n3;
        b = q.clone() * b / T::from_usize(&h, k + 1);
        d = d.clone() + b.clone();
        let term = match variant {
            SeriesVariant::AtanExtNo => a.clone() * d.clone(),
            SeriesVariant::AtanExtYes => a.clone() * (one.clone() - d.clone()),
        };
        s = s + term;
        out.push(s.clone());
    }
    out
}

/// One evaluation of Owen's T function, with diagnostics.
#[derive(Clone, Debug)]
pub struct EvalReport<T> {
    /// The function value.
    pub value: T,
    /// Series loop passes spent.
    pub iterations: usize,
    /// Certified cap on the truncation error of the series sum that went
    /// into `value`, or zero when the series stagnated at working
    /// precision (or underflowed entirely).
    pub bound: T,
    /// Which series produced the value.
    pub variant: SeriesVariant,
    /// Whether the transformed pair (r h, 1/r) was evaluated instead of the
    /// given one.
    pub transformed: bool,
    /// Additive constant applied by the two-CDF combination; always zero on
    /// the canonical path because the recursion runs on |r|.
    pub beta_applied: f64,
    /// The iteration cap was hit before the stopping rule fired.
    pub capped: bool,
}

/// Two-CDF combination U(h, r) = (Phi(h) + Phi(r h))/2 - Phi(h) Phi(r h)
/// - beta, with beta = 1/2 exactly when r < 0.
///
/// Satisfies T(h, r) + T(r h, 1/r) = U(h, r) for r != 0.  Evaluated in the
/// complement form (Phi(h) Phi(-r h) + Phi(r h) Phi(-h))/2 - beta, which
/// avoids cancellation between the half-sum and the product when both CDFs
/// are close to one.
pub fn owen_u<T: RealScalar>(h: T, r: T) -> T {
    let zero = T::zero(&h);
    let half = T::from_f64(&h, 0.5);
    let rh = r.clone() * h.clone();
    let u = half.clone()
        * (h.clone().norm_cdf() * (-rh.clone()).norm_cdf() + rh.norm_cdf() * (-h).norm_cdf());
    if r < zero {
        u - half
    } else {
        u
    }
}

/// Evaluate Owen's T function T(h, r).
///
/// The evaluation is canonical in (|h|, |r|): the result is even in h and
/// odd in r bit-for-bit.  For |r| <= 1 the selected series is summed
/// directly; for |r| > 1 the series runs on the transformed pair
/// (|r h|, 1/|r|) and the result is assembled through [`owen_u`], so the
/// convergence quotient never exceeds 1/2.  When exp(-q) underflows, the
/// series is skipped: T is then zero (untransformed) or U (transformed) to
/// well below working precision.
///
/// `eps` is the absolute stopping threshold on the running error cap; any
/// non-positive value runs the series to stagnation, which is the accuracy
/// sweet spot and the default used by the higher-level drivers.
///
/// # Example
/// ```
/// use bivnorm::{owen_t, SeriesVariant};
/// let rep = owen_t(0.5, 0.25, SeriesVariant::AtanExtNo, -1.0).unwrap();
/// assert!((rep.value - 0.03432021712709421).abs() < 1e-16);
/// ```
pub fn owen_t<T: RealScalar>(
    h: T,
    r: T,
    variant: SeriesVariant,
    eps: T,
) -> Result<EvalReport<T>, OwenError> {
    if !h.is_finite() || !r.is_finite() {
        return Err(OwenError::Domain {
            what: "owen t arguments must be finite",
        });
    }
    if eps.is_nan() {
        return Err(OwenError::Domain {
            what: "eps must not be NaN",
        });
    }
    let zero = T::zero(&h);
    let one = T::one(&h);
    let two_pi = T::from_f64(&h, 2.0) * T::pi(&h);
    let negative = r < zero;
    let hh = h.abs();
    let rr = r.abs();

    let (t_abs, outcome, transformed) = if rr <= one {
        let params = OwenParams::new(hh, rr.clone())?;
        let out = recursion_core(&params, variant, &eps);
        let t = if out.underflowed {
            zero.clone()
        } else {
            match variant {
                SeriesVariant::AtanExtNo => out.s.clone(),
                SeriesVariant::AtanExtYes => rr.atan() / two_pi - out.s.clone(),
            }
        };
        (t, out, false)
    } else {
        let u = owen_u(hh.clone(), rr.clone());
        let hbar = rr.clone() * hh;
        if !hbar.is_finite() {
            // r h overflowed, so q is far beyond the underflow threshold
            // and the series contribution is identically zero.
            let out = RecursionOutcome {
                s: zero.clone(),
                iterations: 1,
                e_final: zero.clone(),
                stagnated: false,
                underflowed: true,
                capped: false,
            };
            (u, out, true)
        } else {
            let rbar = one / rr;
            let params = OwenParams::new(hbar, rbar.clone())?;
            let out = recursion_core(&params, variant, &eps);
            let t = if out.underflowed {
                u
            } else {
                match variant {
                    SeriesVariant::AtanExtNo => u - out.s.clone(),
                    SeriesVariant::AtanExtYes => u - rbar.atan() / two_pi + out.s.clone(),
                }
            };
            (t, out, true)
        }
    };

    let bound = if outcome.stagnated || outcome.underflowed {
        zero
    } else {
        outcome.e_final
    };
    Ok(EvalReport {
        value: if negative { -t_abs } else { t_abs },
        iterations: outcome.iterations,
        bound,
        variant,
        transformed,
        beta_applied: 0.0,
        capped: outcome.capped,
    })
}

/// Provable cap on the series truncation error after the partial sum S_n.
#[derive(Clone, Debug)]
pub struct TruncationBound<T> {
    /// Index of the last term included; -1 means the empty sum.
    pub n: i64,
    /// The bound B_n >= S - S_n >= 0.
    pub value: T,
    pub variant: SeriesVariant,
    /// The bound applies to the series on the transformed pair (because
    /// |r| > 1).
    pub transformed: bool,
}

/// Compute the truncation bound B_n for the series that [`owen_t`] would
/// sum at these parameters.
///
/// With c(n) = (2n+2)!!/(2n+3)!! (and c(-1) = 1),
///
/// ```text
/// AtanExtNo:  B_n = c(n) (|r| / (2 pi)) p^(n+1)
/// AtanExtYes: B_n = c(n) (|r| / (2 pi)) p^(n+1) (1 - exp(-q))^(n+2)
/// ```
///
/// and the remainder S - S_n of the nonnegative series lies in [0, B_n].
/// For |r| > 1 the bound is computed on the transformed pair, matching the
/// series [`owen_t`] actually sums there.  `n >= -1` is required; B_(-1)
/// bounds the entire sum.
pub fn truncation_bound<T: RealScalar>(
    n: i64,
    params: &OwenParams<T>,
    variant: SeriesVariant,
) -> Result<TruncationBound<T>, OwenError> {
    if n < -1 {
        return Err(OwenError::Domain {
            what: "bound index must be >= -1",
        });
    }
    if !params.h.is_finite() || !params.r.is_finite() {
        return Err(OwenError::Domain {
            what: "owen t arguments must be finite",
        });
    }
    let one = T::one(&params.h);
    let abs_params = OwenParams {
        h: params.h.clone().abs(),
        r: params.r.clone().abs(),
    };
    let (eff, transformed) = if abs_params.r <= one {
        (abs_params, false)
    } else {
        (abs_params.transformed(), true)
    };
    let two_pi = T::from_f64(&eff.h, 2.0) * T::pi(&eff.h);
    let p = eff.p();
    let q = eff.q();
    // Start from B_(-1) = |r|/(2 pi); each step multiplies in one double
    // factorial ratio and one power of p.
    let mut value = eff.r.clone() / two_pi;
    let mut k: i64 = 0;
    while k <= n {
        let n2 = T::from_usize(&eff.h, (2 * k + 2) as usize);
        let n3 = T::from_usize(&eff.h, (2 * k + 3) as usize);
        value = value * n2 * p.clone() / n3;
        k += 1;
    }
    if let SeriesVariant::AtanExtYes = variant {
        let om = one - (-q).exp();
        let mut j: i64 = -1;
        while j <= n {
            value = value * om.clone();
            j += 1;
        }
    }
    Ok(TruncationBound {
        n,
        value,
        variant,
        transformed,
    })
}

/// Classic alternating series for Owen's T function, kept as a foil.
///
/// T(h, a) = (1/(2 pi)) sum over k of (-1)^k a^(2k+1)/(2k+1) Q(k+1, h^2/2).
/// The terms alternate in sign and, for |a| > 1, grow enormously before
/// the gamma factor finally wins, so the sum cancels catastrophically or
/// overflows outright; that failure mode is reported as
/// [`OwenError::NonConvergence`] rather than hidden.
#[derive(Clone, Copy, Debug)]
pub struct AlternatingReport {
    pub value: f64,
    /// Terms actually added.
    pub terms: usize,
    /// Magnitude of the last term folded in.
    pub last_term: f64,
}

/// Sum the classic alternating series until it stagnates at working
/// precision, or fail after `max_terms`.
pub fn owen_t_alternating(
    h: f64,
    a: f64,
    max_terms: usize,
) -> Result<AlternatingReport, OwenError> {
    if !h.is_finite() || !a.is_finite() {
        return Err(OwenError::Domain {
            what: "owen t arguments must be finite",
        });
    }
    if max_terms == 0 {
        return Err(OwenError::Domain {
            what: "max_terms must be positive",
        });
    }
    let w = 0.5 * h * h;
    let mut gamma = crate::numkernel::gamma::GammaSeqState::new_integer(w)?;
    let inv_two_pi = 0.5 / core::f64::consts::PI;
    // pow carries (-1)^k a^(2k+1).
    let mut pow = a;
    let mut sum = 0.0f64;
    let mut k = 0usize;
    loop {
        let term = inv_two_pi * pow * gamma.d / (2 * k + 1) as f64;
        // |T| <= 1/4, so terms far above unit scale can only cancel each
        // other; the roundoff they leave behind already exceeds any useful
        // accuracy, and later terms may fake stagnation at exact zeros of
        // the gamma factor.  Declare divergence instead of summing on.
        if !term.is_finite() || term.abs() > 1e6 {
            return Err(OwenError::NonConvergence { terms: k });
        }
        let next = sum + term;
        k += 1;
        if next == sum {
            return Ok(AlternatingReport {
                value: next,
                terms: k,
                last_term: term.abs(),
            });
        }
        sum = next;
        if k >= max_terms {
            return Err(OwenError::NonConvergence { terms: k });
        }
        pow *= -(a * a);
        gamma.step();
    }
}

/// Evaluate Owen's T function over broadcast slices.
///
/// `h` and `r` must have equal lengths, or either may have length 1 to be
/// repeated against the other.  Values are bit-identical to scalar
/// [`owen_t`] calls; the reports all carry the same `iterations`, the
/// maximum over the batch, mirroring a lockstep evaluation in which every
/// lane runs until the slowest one stops.
pub fn owen_t_batch(
    h: &[f64],
    r: &[f64],
    variant: SeriesVariant,
    eps: f64,
) -> Result<Vec<EvalReport<f64>>, OwenError> {
    if h.is_empty() && r.is_empty() {
        return Ok(Vec::new());
    }
    let n = h.len().max(r.len());
    let ok = |len: usize| len == n || len == 1;
    if h.is_empty() || r.is_empty() || !ok(h.len()) || !ok(r.len()) {
        return Err(OwenError::LengthMismatch {
            left: h.len(),
            right: r.len(),
        });
    }
    let mut out = Vec::with_capacity(n);
    let mut max_iterations = 0usize;
    for i in 0..n {
        let hi = h[if h.len() == 1 { 0 } else { i }];
        let ri = r[if r.len() == 1 { 0 } else { i }];
        let rep = owen_t(hi, ri, variant, eps)?;
        max_iterations = max_iterations.max(rep.iterations);
        out.push(rep);
    }
    for rep in &mut out {
        rep.iterations = max_iterations;
    }
    Ok(out)
}

/// Standard normal CDF recovered from the AtanExtYes series at r = 1.
///
/// At r = 1 the series sum S satisfies 2 S = (Phi(|h|) - 1/2)^2, so
/// Phi(h) = 1/2 + sgn(h) sqrt(2 S).  This exercises the series against a
/// univariate special case; absolute accuracy is better than 1e-14 for
/// 0.002 <= |h| <= 26 and degrades like eps/h closer to zero, where the
/// factor 1 - exp(-q) collapses into the last bits of 1.
pub fn std_normal_cdf_via_series(h: f64) -> f64 {
    if h.is_nan() {
        return f64::NAN;
    }
    if h.is_infinite() {
        return if h > 0.0 { 1.0 } else { 0.0 };
    }
    let params = OwenParams::new(h.abs(), 1.0).expect("finite by construction");
    let out = recursion_core(&params, SeriesVariant::AtanExtYes, &-1.0);
    // Underflow means T(|h|, 1) = 0 and S = arctan(1)/(2 pi) = 1/8.
    let s = if out.underflowed { 0.125 } else { out.s };
    let dev = (2.0 * s).max(0.0).sqrt();
    if h >= 0.0 {
        0.5 + dev
    } else {
        0.5 - dev
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::scalar::{std_normal_cdf, ulp};

    const STAGNATE: f64 = -1.0;

    // Reference values frozen from a 60-digit mpmath computation.
    const T_CASES: &[(f64, f64, f64)] = &[
        (2.1, 1.0, 0.008772641520385687),
        (0.5, 0.25, 0.03432021712709421),
        (2.1, 0.25, 0.004112062500508091),
        (2.1, 4.0, 0.008932210281408278),
        (5.0, 4.0, 1.4332578593959696e-7),
        (10.0, 0.25, 3.76569591480348e-24),
        (1.5, 2.0, 0.03338324536216734),
        (3.0, 0.7, 0.0006591075201029098),
        (0.25, 0.75, 0.0987545360999829),
        (2.0, 0.5, 0.008625077985521507),
        (0.125, 0.999, 0.12368467096097814),
        (7.0, 0.9, 6.399062718378875e-13),
        (4.0, 0.03125, 1.663579202938919e-6),
    ];

    #[test]
    fn atan_ext_no_matches_oracle_with_relative_accuracy() {
        // The AtanExtNo sum has no cancellation when untransformed, so even
        // T values near 1e-24 keep relative accuracy; transformed cases go
        // through U and stay relatively accurate unless U >> T.
        for &(h, r, want) in T_CASES {
            let got = owen_t(h, r, SeriesVariant::AtanExtNo, STAGNATE)
                .unwrap()
                .value;
            let err = (got - want).abs();
            assert!(
                err <= 64.0 * ulp(want),
                "T({h},{r}): got {got:e}, want {want:e}, err {err:e}"
            );
        }
    }

    #[test]
    fn atan_ext_yes_matches_oracle_with_absolute_accuracy() {
        // AtanExtYes subtracts the sum from arctan(r)/(2 pi), so its error
        // floor is absolute, a few ulp of that arctangent scale.
        for &(h, r, want) in T_CASES {
            let got = owen_t(h, r, SeriesVariant::AtanExtYes, STAGNATE)
                .unwrap()
                .value;
            let err = (got - want).abs();
            assert!(
                err <= 8.0 * ulp(want) + 4.0 * f64::EPSILON * 0.25,
                "T({h},{r}): got {got:e}, want {want:e}, err {err:e}"
            );
        }
    }

    #[test]
    fn zero_slope_and_zero_height_are_exact() {
        for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
            let rep = owen_t(1.7, 0.0, variant, STAGNATE).unwrap();
            assert_eq!(rep.value, 0.0);
            assert_eq!(rep.iterations, 1);
        }
        let rep = owen_t(0.0, 0.25, SeriesVariant::AtanExtYes, STAGNATE).unwrap();
        let want = 0.25f64.atan() / core::f64::consts::TAU;
        assert!((rep.value - want).abs() <= 2.0 * ulp(want));
    }

    #[test]
    fn odd_in_r_and_even_in_h_bit_for_bit() {
        for &(h, r, _) in T_CASES {
            for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
                let base = owen_t(h, r, variant, STAGNATE).unwrap().value;
                let neg_r = owen_t(h, -r, variant, STAGNATE).unwrap().value;
                let neg_h = owen_t(-h, r, variant, STAGNATE).unwrap().value;
                assert_eq!(neg_r, -base);
                assert_eq!(neg_h, base);
            }
        }
    }

    #[test]
    fn unit_slope_matches_closed_form() {
        for h in [0.5f64, 2.1, 5.0] {
            let phi = std_normal_cdf(h);
            let want = 0.5 * phi * (1.0 - phi);
            for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
                let got = owen_t(h, 1.0, variant, STAGNATE).unwrap().value;
                assert!(
                    (got - want).abs() <= 4.0 * f64::EPSILON,
                    "variant {variant}, h {h}"
                );
            }
        }
    }

    #[test]
    fn transform_identity_holds_for_large_slope() {
        // T(h, r) + T(r h, 1/r) = U(h, r), exercised across the |r| = 1
        // boundary from both sides.
        for (h, r) in [(0.5, 3.0), (1.5, 2.0), (2.1, 4.0), (0.7, 0.8)] {
            let lhs = owen_t(h, r, SeriesVariant::AtanExtYes, STAGNATE)
                .unwrap()
                .value
                + owen_t(r * h, 1.0 / r, SeriesVariant::AtanExtYes, STAGNATE)
                    .unwrap()
                    .value;
            let rhs = owen_u(h, r);
            assert!((lhs - rhs).abs() <= 8.0 * f64::EPSILON, "h {h}, r {r}");
        }
    }

    #[test]
    fn underflow_regime_reports_and_stays_finite() {
        // Untransformed: q = h^2 (1 + r^2) / 2 > 745 kills exp(-q).
        let rep = owen_t(40.0, 0.5, SeriesVariant::AtanExtNo, STAGNATE).unwrap();
        assert_eq!(rep.value, 0.0);
        assert_eq!(rep.iterations, 1);
        assert!(!rep.transformed);
        // Transformed: same q through the pair (r h, 1/r).
        let rep = owen_t(10.0, 7.0, SeriesVariant::AtanExtYes, STAGNATE).unwrap();
        assert!(rep.transformed);
        assert_eq!(rep.iterations, 1);
        let want = owen_u(10.0, 7.0);
        assert_eq!(rep.value, want);
    }

    #[test]
    fn extreme_slope_overflow_falls_back_to_u() {
        // r h overflows f64; T(h, r) equals U(h, r) far below working
        // precision there.
        let rep = owen_t(1e300, 1e300, SeriesVariant::AtanExtNo, STAGNATE).unwrap();
        assert!(rep.value.is_finite());
        assert_eq!(rep.value, owen_u(1e300, 1e300));
    }

    #[test]
    fn stagnation_and_eps_stopping_both_terminate() {
        let params = OwenParams::new(0.5f64, 0.9).unwrap();
        let full = recursion_core(&params, SeriesVariant::AtanExtNo, &STAGNATE);
        assert!(full.stagnated);
        assert!(!full.capped);
        let coarse = recursion_core(&params, SeriesVariant::AtanExtNo, &1e-6);
        assert!(!coarse.stagnated);
        assert!(coarse.iterations < full.iterations);
        assert!(coarse.e_final < 1e-6);
        // The coarse sum is below the full one by at most the reported cap.
        let gap = full.s - coarse.s;
        assert!(gap >= 0.0 && gap <= coarse.e_final * (1.0 + 1e-12));
    }

    #[test]
    fn report_bound_covers_true_truncation_error() {
        let rep = owen_t(1.0, 0.6, SeriesVariant::AtanExtNo, 1e-8).unwrap();
        let exact = owen_t(1.0, 0.6, SeriesVariant::AtanExtNo, STAGNATE)
            .unwrap()
            .value;
        assert!(rep.bound > 0.0);
        assert!((exact - rep.value).abs() <= rep.bound * (1.0 + 1e-12));
        let full = owen_t(1.0, 0.6, SeriesVariant::AtanExtNo, STAGNATE).unwrap();
        assert_eq!(full.bound, 0.0);
    }

    #[test]
    fn truncation_bound_matches_running_cap() {
        // e_0 of the recursion equals B_0 for both variants.
        let params = OwenParams::new(1.3f64, 0.8).unwrap();
        for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
            let b0 = truncation_bound(0, &params, variant).unwrap().value;
            let b5 = truncation_bound(5, &params, variant).unwrap().value;
            assert!(b5 < b0);
            let sums = series_partial_sums(&params, variant, 60);
            let full = sums.last().unwrap();
            let rem0 = full - sums[0];
            let rem5 = full - sums[5];
            assert!(rem0 >= 0.0 && rem0 <= b0 * (1.0 + 1e-12), "{variant}");
            assert!(rem5 >= 0.0 && rem5 <= b5 * (1.0 + 1e-12), "{variant}");
        }
    }

    #[test]
    fn empty_sum_bound_covers_whole_series() {
        let params = OwenParams::new(0.9f64, 0.7).unwrap();
        for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
            let b = truncation_bound(-1, &params, variant).unwrap();
            assert_eq!(b.n, -1);
            let sums = series_partial_sums(&params, variant, 80);
            assert!(*sums.last().unwrap() <= b.value);
        }
    }

    #[test]
    fn truncation_bound_switches_to_transformed_series() {
        let params = OwenParams::new(0.5f64, 3.0).unwrap();
        let b = truncation_bound(2, &params, SeriesVariant::AtanExtNo).unwrap();
        assert!(b.transformed);
        let manual = OwenParams::new(1.5f64, 1.0 / 3.0).unwrap();
        let bm = truncation_bound(2, &manual, SeriesVariant::AtanExtNo).unwrap();
        assert_eq!(b.value, bm.value);
        assert!(truncation_bound(-2, &params, SeriesVariant::AtanExtNo).is_err());
    }

    #[test]
    fn shifted_recursion_brackets_from_above() {
        // For r in (0, 1], -S_k of the shifted run decreases to T while the
        // AtanExtNo partial sums increase to it.
        for (h, r) in [(0.5f64, 0.8), (2.1, 1.0), (1.0, 0.3)] {
            let params = OwenParams::new(h, r).unwrap();
            let t = owen_t(h, r, SeriesVariant::AtanExtNo, STAGNATE)
                .unwrap()
                .value;
            let upper = -recursion_core_shifted(&params, &STAGNATE).s;
            let lower = recursion_core(&params, SeriesVariant::AtanExtNo, &1e-4).s;
            assert!(lower <= t + 2.0 * f64::EPSILON, "h {h}, r {r}");
            assert!(upper >= t - 2.0 * f64::EPSILON, "h {h}, r {r}");
            assert!((upper - t).abs() <= 8.0 * f64::EPSILON, "h {h}, r {r}");
        }
    }

    #[test]
    fn alternating_series_agrees_inside_unit_slope() {
        for &(h, r, want) in T_CASES.iter().filter(|c| c.1.abs() <= 0.9) {
            let rep = owen_t_alternating(h, r, 400).unwrap();
            assert!(
                (rep.value - want).abs() <= 1e-14 + 8.0 * ulp(want),
                "T({h},{r})"
            );
        }
    }

    #[test]
    fn alternating_series_slows_to_a_crawl_near_unit_slope() {
        // Scenario: |a| just inside 1, where terms shrink like a^(2k).
        // Expected: still correct, but only after thousands of terms; at
        // |a| = 1 exactly the terms decay like 1/(2k+1) and the sum never
        // stagnates in any practical budget.
        let (h, r, want) = (0.125, 0.999, 0.12368467096097814);
        let rep = owen_t_alternating(h, r, 40_000).unwrap();
        assert!((rep.value - want).abs() <= 1e-14 + 8.0 * ulp(want));
        assert!(rep.terms > 10_000, "terms {}", rep.terms);
        let err = owen_t_alternating(2.1, 1.0, 400).unwrap_err();
        assert!(matches!(err, OwenError::NonConvergence { .. }));
    }

    #[test]
    fn alternating_series_blows_up_for_steep_slope() {
        // Scenario: |a| well above 1 with sizable h.
        // Expected: terms overflow before the gamma damping can win.
        let err = owen_t_alternating(10.0, 7.0, 100_000).unwrap_err();
        assert!(matches!(err, OwenError::NonConvergence { .. }));
        let err = owen_t_alternating(5.0, 4.0, 100_000).unwrap_err();
        assert!(matches!(err, OwenError::NonConvergence { .. }));
    }

    #[test]
    fn batch_broadcasts_and_matches_scalar_bitwise() {
        let h = [0.5f64, 2.1, 10.0];
        let r = [0.25f64];
        let reps = owen_t_batch(&h, &r, SeriesVariant::AtanExtNo, STAGNATE).unwrap();
        assert_eq!(reps.len(), 3);
        let mut max_it = 0;
        for (i, rep) in reps.iter().enumerate() {
            let scalar = owen_t(h[i], 0.25, SeriesVariant::AtanExtNo, STAGNATE).unwrap();
            assert_eq!(rep.value, scalar.value);
            max_it = max_it.max(scalar.iterations);
        }
        for rep in &reps {
            assert_eq!(rep.iterations, max_it);
        }
        assert!(owen_t_batch(&h, &[0.1, 0.2], SeriesVariant::AtanExtNo, STAGNATE).is_err());
        assert!(owen_t_batch(&[], &[], SeriesVariant::AtanExtNo, STAGNATE)
            .unwrap()
            .is_empty());
        assert!(owen_t_batch(&h, &[], SeriesVariant::AtanExtNo, STAGNATE).is_err());
    }

    #[test]
    fn normal_cdf_recovered_from_series() {
        let mut h = 0.01f64;
        while h <= 8.0 {
            for s in [h, -h] {
                let got = std_normal_cdf_via_series(s);
                let want = std_normal_cdf(s);
                assert!((got - want).abs() <= 1e-14, "h = {s}: got {got}, want {want}");
            }
            h += 0.37;
        }
        assert_eq!(std_normal_cdf_via_series(0.0), 0.5);
        assert_eq!(std_normal_cdf_via_series(30.0), 1.0);
    }

    #[test]
    fn non_finite_inputs_are_rejected() {
        assert!(owen_t(f64::NAN, 0.5, SeriesVariant::AtanExtNo, STAGNATE).is_err());
        assert!(owen_t(1.0, f64::INFINITY, SeriesVariant::AtanExtNo, STAGNATE).is_err());
        assert!(owen_t(1.0, 0.5, SeriesVariant::AtanExtNo, f64::NAN).is_err());
        assert!(owen_t_alternating(f64::INFINITY, 0.5, 10).is_err());
    }
}
