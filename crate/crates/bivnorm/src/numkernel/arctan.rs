//! Euler's arctangent series and an arcsine-flavoured variant.
//!
//! Euler's series writes arctan(r) = (r/(1+r^2)) * sum_k c_k * p^k with
//! p = r^2/(1+r^2) and c_k = (2k)!!/(2k+1)!!.  Unlike the Maclaurin series
//! it converges for every real r (p < 1 always), with all-positive terms,
//! and its truncation error is sandwiched between the first omitted term
//! and (1+r^2) times that term.  The main series for Owen's T function is
//! this series with each coefficient damped by an incomplete gamma factor,
//! so the undamped version here doubles as a structural cross-check.

use crate::numkernel::scalar::RealScalar;

/// Result of summing Euler's arctangent series.
#[derive(Clone, Debug)]
pub struct ArctanSeries<T> {
    /// Partial sum, an approximation of arctan(r) from below for r > 0.
    pub value: T,
    /// Number of terms added.
    pub terms: usize,
    /// First omitted term, a lower bound on the magnitude of the
    /// truncation error (the upper bound is (1+r^2) times this).
    pub bound: T,
}

/// Sum Euler's series for arctan(r) until the next term drops below `eps`.
///
/// A non-positive `eps` runs the series to stagnation (the partial sum no
/// longer changes).  Terms are generated by the ratio
/// t_{k+1} = t_k * p * (2k+2)/(2k+3).
///
/// # Example
/// ```
/// let s = bivnorm::numkernel::arctan_euler(1.0_f64, 0.0);
/// assert!((s.value - std::f64::consts::FRAC_PI_4).abs() < 1e-15);
/// ```
pub fn arctan_euler<T: RealScalar>(r: T, eps: T) -> ArctanSeries<T> {
    let one = T::one(&r);
    let p = r.clone() * r.clone() / (one.clone() + r.clone() * r.clone());
    // t_0 = r/(1+r^2) = r * (1 - p) / 1, formed directly.
    let mut t = r.clone() / (one + r.clone() * r.clone());
    let mut s = t.clone();
    let mut terms = 1usize;
    loop {
        let num = T::from_usize(&r, 2 * terms);
        let den = T::from_usize(&r, 2 * terms + 1);
        t = t * p.clone() * num / den;
        if t.clone().abs() < eps {
            break;
        }
        let next = s.clone() + t.clone();
        if next == s {
            break;
        }
        s = next;
        terms += 1;
        if terms > 200_000 {
            break;
        }
    }
    ArctanSeries {
        value: s,
        terms,
        bound: t.abs(),
    }
}

/// Arcsine-flavoured arctangent series: arctan(r) = arcsin(r/sqrt(1+r^2)),
/// summed as z + z^3/6 + ... with z = r/sqrt(1+r^2).
///
/// Converges for every real r since |z| < 1; at |r| = 1 the argument is
/// sqrt(2)/2 and convergence is geometric with quotient 1/2.
pub fn arctan_arcsin_series<T: RealScalar>(r: T, eps: T) -> T {
    let one = T::one(&r);
    let z = r.clone() / (one + r.clone() * r.clone()).sqrt();
    let z2 = z.clone() * z.clone();
    let mut t = z;
    let mut s = t.clone();
    let mut k = 0usize;
    loop {
        let a = T::from_usize(&r, 2 * k + 1);
        let b = T::from_usize(&r, 2 * k + 2);
        let c = T::from_usize(&r, 2 * k + 3);
        t = t * z2.clone() * a.clone() * a / (b * c);
        if t.clone().abs() < eps {
            break;
        }
        let next = s.clone() + t.clone();
        if next == s {
            break;
        }
        s = next;
        k += 1;
        if k > 200_000 {
            break;
        }
    }
    s
}
