//! Bivariate standard normal CDF built on Owen's T function.
//!
//! Phi2(x, y; rho) = P(X <= x, Y <= y) for standard normal X, Y with
//! correlation rho.  The workhorse decomposition is
//!
//! Phi2 = (Phi(x) + Phi(y))/2 - T(x, r_x) - T(y, r_y) - beta
//!
//! with slopes r_x = (y - rho x)/(x sqrt(1-rho^2)) and symmetrically r_y,
//! and beta = 1/2 exactly when x y < 0 (or x y = 0 with x + y < 0).  Near
//! |rho| = 1 the slopes are rewritten in a difference form that cancels
//! exactly (see [`decompose`]), and when the density at (x, y) exceeds 1 a
//! critical-correlation split (see [`critical_split`]) rewrites the point
//! as two milder evaluations at correlation -sqrt((1-|rho|)/2).  A single
//! mixed series covering both slopes at once is available as
//! [`phi2_unified`].

use crate::numkernel::scalar::{std_normal_cdf, RealScalar};
use crate::owent::{owen_t, EvalReport, SeriesVariant};
use crate::OwenError;

/// A validated correlation coefficient: finite with |rho| <= 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Correlation(f64);

impl Correlation {
    pub fn new(rho: f64) -> Result<Self, OwenError> {
        if !rho.is_finite() || rho.abs() > 1.0 {
            return Err(OwenError::InvalidCorrelation { value: rho });
        }
        Ok(Self(rho))
    }

    pub fn value(self) -> f64 {
        self.0
    }
}

impl core::fmt::Display for Correlation {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        core::fmt::Display::fmt(&self.0, f)
    }
}

/// Evaluation options for [`phi2`].
#[derive(Clone, Copy, Debug)]
pub struct Phi2Options {
    /// Series used for the Owen T evaluations.
    pub variant: SeriesVariant,
    /// Stopping threshold; non-positive runs every series to stagnation.
    pub eps: f64,
    /// Allow the critical-correlation split when the density at the
    /// evaluation point exceeds 1.
    pub split: bool,
}

impl Default for Phi2Options {
    fn default() -> Self {
        Self {
            variant: SeriesVariant::AtanExtYes,
            eps: -1.0,
            split: true,
        }
    }
}

/// One bivariate CDF evaluation, with diagnostics.
#[derive(Clone, Copy, Debug)]
pub struct Phi2Report {
    pub value: f64,
    /// The additive constant applied by the slope decomposition (0 on the
    /// split and boundary paths, which carry no beta of their own).
    pub beta: f64,
    /// Whether the critical-correlation split was taken.
    pub split_used: bool,
    /// Total series passes across all Owen T evaluations involved.
    pub iterations: usize,
    /// Bivariate normal density at (x, y); infinite on the degenerate
    /// |rho| = 1 diagonal.
    pub density: f64,
}

/// Slope decomposition of Phi2(x, y; rho), with its beta constant and the
/// exponent q = (x^2 - 2 rho x y + y^2) / (2 (1 - rho^2)).
#[derive(Clone, Copy, Debug)]
pub struct BvnDecomposition {
    pub r_x: f64,
    pub r_y: f64,
    pub beta: f64,
    pub q: f64,
}

fn require_finite(v: f64) -> Result<(), OwenError> {
    if v.is_finite() {
        Ok(())
    } else {
        Err(OwenError::Domain {
            what: "coordinates must be finite",
        })
    }
}

fn beta_for(x: f64, y: f64) -> f64 {
    let same_sign = (x > 0.0 && y > 0.0) || (x < 0.0 && y < 0.0);
    if same_sign || ((x == 0.0 || y == 0.0) && x + y >= 0.0) {
        0.0
    } else {
        0.5
    }
}

/// Quadratic form x^2 - 2 rho x y + y^2, grouped so that the dominant part
/// is a perfect square and nothing cancels near |rho| = 1.
fn quad_form(x: f64, y: f64, rho: f64) -> f64 {
    if rho >= 0.0 {
        (x - y) * (x - y) + 2.0 * (1.0 - rho) * x * y
    } else {
        (x + y) * (x + y) - 2.0 * (1.0 + rho) * x * y
    }
}

/// Compute the slope decomposition of Phi2(x, y; rho).
///
/// For |rho| < 0.9 the textbook slopes are used directly.  From 0.9 on,
/// each slope is split into a difference quotient plus an exact square
/// root, e.g. for rho > 0
///
/// r_x = (y - x)/(x sqrt(1-rho^2)) + sqrt((1-rho)/(1+rho)),
///
/// which is identical algebraically but immune to the cancellation
/// y - rho x = (y - x) + (1 - rho) x that destroys the plain form near the
/// diagonal.  At |rho| = 1 with x = y sgn(rho) the difference quotient is
/// 0/0 and is defined as 0, the correct directional limit.  A zero
/// coordinate sends the opposite slope to +-infinity (its T value has the
/// finite limit sgn(r) Phi(-|h|)/2); [`phi2`] routes such points to the
/// boundary form instead.  x = y = 0 is rejected.
pub fn decompose(x: f64, y: f64, rho: Correlation) -> Result<BvnDecomposition, OwenError> {
    require_finite(x)?;
    require_finite(y)?;
    if x == 0.0 && y == 0.0 {
        return Err(OwenError::Domain {
            what: "slope decomposition is undefined at the origin",
        });
    }
    let rho = rho.value();
    let s = ((1.0 - rho) * (1.0 + rho)).sqrt();
    let q = quad_form(x, y, rho) / (2.0 * (1.0 - rho) * (1.0 + rho));
    let (r_x, r_y) = if rho >= 0.9 {
        let root = ((1.0 - rho) / (1.0 + rho)).sqrt();
        let dx = y - x;
        let term_x = if dx == 0.0 { 0.0 } else { dx / (x * s) };
        let term_y = if dx == 0.0 { 0.0 } else { -dx / (y * s) };
        (term_x + root, term_y + root)
    } else if rho <= -0.9 {
        let root = ((1.0 + rho) / (1.0 - rho)).sqrt();
        let sum = y + x;
        let term_x = if sum == 0.0 { 0.0 } else { sum / (x * s) };
        let term_y = if sum == 0.0 { 0.0 } else { sum / (y * s) };
        (term_x - root, term_y - root)
    } else {
        ((y - rho * x) / (x * s), (x - rho * y) / (y * s))
    };
    Ok(BvnDecomposition {
        r_x,
        r_y,
        beta: beta_for(x, y),
        q,
    })
}

/// Bivariate standard normal density at (x, y); rejects |rho| = 1.
pub fn density(x: f64, y: f64, rho: Correlation) -> Result<f64, OwenError> {
    require_finite(x)?;
    require_finite(y)?;
    let rho = rho.value();
    if rho.abs() >= 1.0 {
        return Err(OwenError::Domain {
            what: "density is degenerate at |rho| = 1",
        });
    }
    let om = (1.0 - rho) * (1.0 + rho);
    let q = quad_form(x, y, rho) / (2.0 * om);
    Ok((-q).exp() / (core::f64::consts::TAU * om.sqrt()))
}

/// The critical-correlation split of one Phi2 evaluation.
///
/// Phi2(x, y; rho) = leading + sign * (Phi2(z, y~; rho~) + Phi2(-z, x; rho~))
///
/// with rho~ = -sqrt((1-|rho|)/2), y~ = y sgn(rho),
/// z = (x - y~)/sqrt(2 (1-|rho|)), leading = (1 - sgn(rho))/2 * Phi(x) and
/// sign = sgn(rho).  Both sub-evaluations share the exponent q of the
/// original point and sit at a mild negative correlation in
/// [-sqrt(2)/2, 0), where the series are fast and the density is below 1.
#[derive(Clone, Copy, Debug)]
pub struct CriticalSplit {
    pub rho_tilde: f64,
    pub y_tilde: f64,
    pub z: f64,
    /// Constant term (1 - sgn(rho))/2 * Phi(x).
    pub leading: f64,
    /// sgn(rho), the factor on the two sub-evaluations.
    pub sign: f64,
    /// The original x, the second coordinate of the second sub-point.
    pub x: f64,
}

impl CriticalSplit {
    /// The two sub-evaluation points, both at correlation `rho_tilde`.
    pub fn sub_points(&self) -> [(f64, f64); 2] {
        [(self.z, self.y_tilde), (-self.z, self.x)]
    }
}

/// Build the critical-correlation split; requires 0 < |rho| < 1.
pub fn critical_split(x: f64, y: f64, rho: Correlation) -> Result<CriticalSplit, OwenError> {
    require_finite(x)?;
    require_finite(y)?;
    let rho = rho.value();
    if rho == 0.0 || rho.abs() >= 1.0 {
        return Err(OwenError::Domain {
            what: "critical split requires 0 < |rho| < 1",
        });
    }
    let sign = if rho > 0.0 { 1.0 } else { -1.0 };
    let om = 1.0 - rho.abs();
    let y_tilde = y * sign;
    Ok(CriticalSplit {
        rho_tilde: -(0.5 * om).sqrt(),
        y_tilde,
        z: (x - y_tilde) / (2.0 * om).sqrt(),
        leading: if rho > 0.0 { 0.0 } else { std_normal_cdf(x) },
        sign,
        x,
    })
}

/// T(h, r) tolerating infinite slope, where T has the finite limit
/// sgn(r) Phi(-|h|)/2.
fn owen_t_or_limit(
    h: f64,
    r: f64,
    variant: SeriesVariant,
    eps: f64,
) -> Result<(f64, usize), OwenError> {
    if r.is_infinite() {
        return Ok((r.signum() * 0.5 * std_normal_cdf(-h.abs()), 0));
    }
    let rep = owen_t(h, r, variant, eps)?;
    Ok((rep.value, rep.iterations))
}

/// Boundary value Phi2(h, 0; rho) at any scalar precision.
///
/// Evaluates Phi(h)/2 + T(h, rho/sqrt(1-rho^2)) through the selected
/// series; |rho| = 1 is answered by the degenerate closed form
/// (min(Phi(h), 1/2) resp. max(Phi(h) - 1/2, 0)) with zero iterations.
/// The returned report carries the T-series diagnostics; its `value` is
/// the CDF value.
pub fn phi2_h0_with<T: RealScalar>(
    h: T,
    rho: T,
    variant: SeriesVariant,
    eps: T,
) -> Result<EvalReport<T>, OwenError> {
    if !h.is_finite() {
        return Err(OwenError::Domain {
            what: "coordinates must be finite",
        });
    }
    let one = T::one(&h);
    if !rho.is_finite() || rho.clone().abs() > one {
        return Err(OwenError::InvalidCorrelation {
            value: rho.to_f64(),
        });
    }
    let zero = T::zero(&h);
    let half = T::from_f64(&h, 0.5);
    let phi = h.clone().norm_cdf();
    if rho == one {
        let value = if phi > half.clone() { half } else { phi };
        return Ok(EvalReport {
            value,
            iterations: 0,
            bound: zero,
            variant,
            transformed: false,
            beta_applied: 0.0,
            capped: false,
        });
    }
    if rho == -one.clone() {
        let shifted = phi - half;
        let value = if shifted < zero { T::zero(&h) } else { shifted };
        return Ok(EvalReport {
            value,
            iterations: 0,
            bound: T::zero(&h),
            variant,
            transformed: false,
            beta_applied: 0.0,
            capped: false,
        });
    }
    // Plain 1 - rho^2 keeps the slope bit-identical with the tetrachoric
    // boundary series, so the two routes disagree only through their sums.
    let s = (one - rho.clone() * rho.clone()).sqrt();
    let r = rho / s;
    let mut rep = owen_t(h, r, variant, eps)?;
    rep.value = half * phi + rep.value;
    Ok(rep)
}

/// Boundary value Phi2(h, 0; rho) at binary64 with default settings.
pub fn phi2_h0(h: f64, rho: Correlation) -> Result<f64, OwenError> {
    phi2_h0_with(h, rho.value(), SeriesVariant::AtanExtYes, -1.0).map(|rep| rep.value)
}

/// Bivariate standard normal CDF with diagnostics.
///
/// Routing: degenerate |rho| = 1 and the origin get closed forms; a point
/// with exactly one zero coordinate goes through the boundary form
/// [`phi2_h0_with`]; everywhere else the slope decomposition runs, behind
/// an optional critical-correlation split whenever the density at the
/// point exceeds 1 (only possible for |rho| > 0.987).  The result is not
/// clamped: values a rounding error outside [0, 1] are reported as
/// computed.
pub fn phi2_report(x: f64, y: f64, rho: Correlation, opts: Phi2Options) -> Result<Phi2Report, OwenError> {
    require_finite(x)?;
    require_finite(y)?;
    if opts.eps.is_nan() {
        return Err(OwenError::Domain {
            what: "eps must not be NaN",
        });
    }
    let r = rho.value();
    if r == 1.0 {
        return Ok(Phi2Report {
            value: std_normal_cdf(x).min(std_normal_cdf(y)),
            beta: 0.0,
            split_used: false,
            iterations: 0,
            density: f64::INFINITY,
        });
    }
    if r == -1.0 {
        return Ok(Phi2Report {
            value: (std_normal_cdf(x) + std_normal_cdf(y) - 1.0).max(0.0),
            beta: 0.0,
            split_used: false,
            iterations: 0,
            density: f64::INFINITY,
        });
    }
    let dens = density(x, y, rho).expect("non-degenerate here");
    if x == 0.0 && y == 0.0 {
        return Ok(Phi2Report {
            value: 0.25 + r.asin() / core::f64::consts::TAU,
            beta: 0.0,
            split_used: false,
            iterations: 0,
            density: dens,
        });
    }
    if x == 0.0 || y == 0.0 {
        let h = x + y;
        let rep = phi2_h0_with(h, r, opts.variant, opts.eps)?;
        return Ok(Phi2Report {
            value: rep.value,
            beta: 0.0,
            split_used: false,
            iterations: rep.iterations,
            density: dens,
        });
    }
    if opts.split && dens > 1.0 {
        let split = critical_split(x, y, rho)?;
        let sub_rho = Correlation::new(split.rho_tilde).expect("split correlation is valid");
        let sub_opts = Phi2Options {
            split: false,
            ..opts
        };
        let [(x1, y1), (x2, y2)] = split.sub_points();
        let a = phi2_report(x1, y1, sub_rho, sub_opts)?;
        let b = phi2_report(x2, y2, sub_rho, sub_opts)?;
        return Ok(Phi2Report {
            value: split.leading + split.sign * (a.value + b.value),
            beta: 0.0,
            split_used: true,
            iterations: a.iterations + b.iterations,
            density: dens,
        });
    }
    let dec = decompose(x, y, rho)?;
    let (t_x, it_x) = owen_t_or_limit(x, dec.r_x, opts.variant, opts.eps)?;
    let (t_y, it_y) = owen_t_or_limit(y, dec.r_y, opts.variant, opts.eps)?;
    Ok(Phi2Report {
        value: 0.5 * (std_normal_cdf(x) + std_normal_cdf(y)) - t_x - t_y - dec.beta,
        beta: dec.beta,
        split_used: false,
        iterations: it_x + it_y,
        density: dens,
    })
}

/// Bivariate standard normal CDF P(X <= x, Y <= y).
///
/// # Example
/// ```
/// use bivnorm::{phi2, Correlation, Phi2Options};
/// let rho = Correlation::new(-0.8).unwrap();
/// let p = phi2(-1.2, 2.3, rho, Phi2Options::default()).unwrap();
/// assert!((p - 0.105177044562771).abs() < 1e-13);
/// ```
pub fn phi2(x: f64, y: f64, rho: Correlation, opts: Phi2Options) -> Result<f64, OwenError> {
    phi2_report(x, y, rho, opts).map(|rep| rep.value)
}

/// Upper orthant probability P(X > x, Y > y) = Phi2(-x, -y; rho).
pub fn l_complement(x: f64, y: f64, rho: Correlation, opts: Phi2Options) -> Result<f64, OwenError> {
    phi2(-x, -y, rho, opts)
}

/// Single mixed series for Phi2 covering both slopes at once.
///
/// With N = x^2 - 2 rho x y + y^2, q = N / (2 (1 - rho^2)),
/// rho_x = (rho x - y) sgn(x) / sqrt(N) and rho_y symmetrically
/// (sgn(0) = +1), the CDF is
///
/// ```text
/// (Phi(x)+Phi(y))/2 + (asin rho_x + asin rho_y)/(2 pi) - S_P - beta
/// (Phi(x)+Phi(y))/2 + S_Q - beta
/// ```
///
/// where S_G = (1/(2 pi sqrt(2 q))) sum_k ((2k)!!/(2k+1)!!) G(k+1, q)
/// (|x| rho_x^(2k+1) + |y| rho_y^(2k+1)); [`SeriesVariant::AtanExtYes`]
/// selects the P-form and [`SeriesVariant::AtanExtNo`] the Q-form.  The
/// P-form terms die factorially once k exceeds q, so it stays practical
/// even when a slope magnitude is near 1 (a coordinate near zero); the
/// Q-form then converges too slowly and fails with
/// [`OwenError::NonConvergence`].  Runs to stagnation (sum unchanged twice
/// in a row); requires |rho| < 1 and (x, y) != (0, 0).
pub fn phi2_unified(
    x: f64,
    y: f64,
    rho: Correlation,
    variant: SeriesVariant,
) -> Result<f64, OwenError> {
    require_finite(x)?;
    require_finite(y)?;
    let rho = rho.value();
    if rho.abs() >= 1.0 {
        return Err(OwenError::Domain {
            what: "unified series requires |rho| < 1",
        });
    }
    if x == 0.0 && y == 0.0 {
        return Err(OwenError::Domain {
            what: "unified series is undefined at the origin",
        });
    }
    let sgnp = |v: f64| if v < 0.0 { -1.0 } else { 1.0 };
    let om = (1.0 - rho) * (1.0 + rho);
    let n = quad_form(x, y, rho);
    if n == 0.0 {
        // Both coordinates are denormal-tiny; the origin limit applies.
        return Ok(0.25 + rho.asin() / core::f64::consts::TAU);
    }
    let q = n / (2.0 * om);
    let sqrt_n = n.sqrt();
    let rho_x = ((rho * x - y) * sgnp(x) / sqrt_n).clamp(-1.0, 1.0);
    let rho_y = ((rho * y - x) * sgnp(y) / sqrt_n).clamp(-1.0, 1.0);
    let wx = x.abs();
    let wy = y.abs();
    let c0 = 1.0 / (core::f64::consts::TAU * (2.0 * q).sqrt());
    let mut gamma = crate::numkernel::gamma::GammaSeqState::new_integer(q)?;
    let mut euler = 1.0f64;
    let mut pow_x = rho_x;
    let mut pow_y = rho_y;
    let mut sum = 0.0f64;
    let mut unchanged = 0usize;
    let mut k = 0usize;
    const CAP: usize = 530;
    loop {
        let damp = match variant {
            SeriesVariant::AtanExtNo => gamma.d,
            SeriesVariant::AtanExtYes => 1.0 - gamma.d,
        };
        let term = euler * damp * (wx * pow_x + wy * pow_y);
        let next = sum + term;
        unchanged = if next == sum { unchanged + 1 } else { 0 };
        sum = next;
        k += 1;
        if unchanged >= 2 {
            break;
        }
        if k >= CAP {
            return Err(OwenError::NonConvergence { terms: k });
        }
        let kf = k as f64;
        euler *= 2.0 * kf / (2.0 * kf + 1.0);
        pow_x *= rho_x * rho_x;
        pow_y *= rho_y * rho_y;
        gamma.step();
    }
    let half_sum = 0.5 * (std_normal_cdf(x) + std_normal_cdf(y));
    let beta = beta_for(x, y);
    let value = match variant {
        SeriesVariant::AtanExtNo => half_sum + c0 * sum - beta,
        SeriesVariant::AtanExtYes => {
            half_sum + (rho_x.asin() + rho_y.asin()) / core::f64::consts::TAU - c0 * sum - beta
        }
    };
    Ok(value)
}

/// Residual of the boundary-transform identity
///
/// Phi2(h, 0; rho) + Phi2(r h, 0; rho_bar)
///   = Phi(h) + Phi(r h) - Phi(h) Phi(r h) - beta
///
/// with r = rho/sqrt(1-rho^2), rho_bar = sgn(rho) sqrt(1-rho^2) and
/// beta = 1/2 exactly when rho < 0.  Requires 0 < |rho| < 1.  Returns
/// lhs - rhs, which should vanish to rounding error.
pub fn owen5_transform_identity(h: f64, rho: f64) -> Result<f64, OwenError> {
    require_finite(h)?;
    if !rho.is_finite() || rho == 0.0 || rho.abs() >= 1.0 {
        return Err(OwenError::Domain {
            what: "transform identity requires 0 < |rho| < 1",
        });
    }
    let s = ((1.0 - rho) * (1.0 + rho)).sqrt();
    let r = rho / s;
    let rho_bar = rho.signum() * s;
    let beta = if rho < 0.0 { 0.5 } else { 0.0 };
    let lhs = phi2_h0(h, Correlation::new(rho)?)? + phi2_h0(r * h, Correlation::new(rho_bar)?)?;
    let phi_h = std_normal_cdf(h);
    let phi_rh = std_normal_cdf(r * h);
    let rhs = phi_h + phi_rh - phi_h * phi_rh - beta;
    Ok(lhs - rhs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numkernel::scalar::ulp;

    fn rho(v: f64) -> Correlation {
        Correlation::new(v).unwrap()
    }

    // Reference values frozen from a 60-digit mpmath computation.
    const PHI2_CASES: &[(f64, f64, f64, f64)] = &[
        (0.5, 0.3, 0.4, 0.4838023414903439),
        (-1.2, 2.3, -0.8, 0.105177044562771),
        (1.0, 1.0, 0.99, 0.8276930269850803),
        (2.0, -3.0, 0.35, 0.0013493479780347496),
        (-0.5, -0.5, -0.5, 0.03629818648857651),
        (3.0, 3.0, 0.9999, 0.9986250996081594),
        (1.0, 1.001, 0.999999, 0.8412964628895405),
        (-1.0, -1.0, 0.999999, 0.15851873656915985),
        (0.3, 0.3, -0.9999, 0.23582284437790527),
        (0.25, 0.625, 0.984375, 0.59831457774388),
        (1.5, 0.5, 0.9921875, 0.6914624612740131),
    ];

    #[test]
    fn phi2_matches_oracle_across_regimes() {
        for &(x, y, r, want) in PHI2_CASES {
            let got = phi2(x, y, rho(r), Phi2Options::default()).unwrap();
            assert!(
                (got - want).abs() <= 5e-15,
                "Phi2({x},{y},{r}): got {got:e}, want {want:e}, err {:e}",
                (got - want).abs()
            );
        }
    }

    #[test]
    fn phi2_is_symmetric_in_x_and_y() {
        for &(x, y, r, _) in PHI2_CASES {
            let a = phi2(x, y, rho(r), Phi2Options::default()).unwrap();
            let b = phi2(y, x, rho(r), Phi2Options::default()).unwrap();
            assert!((a - b).abs() <= 2.0 * f64::EPSILON, "({x},{y},{r})");
        }
    }

    #[test]
    fn origin_and_degenerate_closed_forms() {
        let got = phi2(0.0, 0.0, rho(0.5), Phi2Options::default()).unwrap();
        let want = 0.25 + 0.5f64.asin() / core::f64::consts::TAU;
        assert_eq!(got, want);
        let got = phi2(1.0, 2.0, rho(1.0), Phi2Options::default()).unwrap();
        assert_eq!(got, std_normal_cdf(1.0));
        let got = phi2(1.0, -2.0, rho(-1.0), Phi2Options::default()).unwrap();
        assert_eq!(got, 0.0);
        let got = phi2(1.0, 0.5, rho(-1.0), Phi2Options::default()).unwrap();
        assert_eq!(got, std_normal_cdf(1.0) + std_normal_cdf(0.5) - 1.0);
    }

    #[test]
    fn boundary_route_matches_frozen_values() {
        // Phi2(2.1, 0; +-sqrt(2)/2), where the interior slope is 1 up to
        // rounding and elementary closed forms exist.
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let a = phi2(2.1, 0.0, rho(r), Phi2Options::default()).unwrap();
        assert!((a - 0.4998404312389774).abs() <= 4.0 * f64::EPSILON);
        let b = phi2(0.0, 2.1, rho(-r), Phi2Options::default()).unwrap();
        assert!((b - 0.482295148198206).abs() <= 4.0 * f64::EPSILON);
        let direct = phi2_h0(2.1, rho(r)).unwrap();
        assert_eq!(a, direct);
    }

    #[test]
    fn phi2_h0_degenerate_and_slope_one() {
        let rep = phi2_h0_with(2.1f64, 1.0, SeriesVariant::AtanExtYes, -1.0).unwrap();
        assert_eq!(rep.value, 0.5);
        assert_eq!(rep.iterations, 0);
        let rep = phi2_h0_with(-0.4f64, -1.0, SeriesVariant::AtanExtYes, -1.0).unwrap();
        assert_eq!(rep.value, 0.0);
        // rho = sqrt(2)/2 maps to unit slope up to a final rounding; the
        // binary64 constant sits 0.43 ulp above sqrt(1/2), so the quotient
        // lands one ulp past 1 rather than on it.
        let r = core::f64::consts::FRAC_1_SQRT_2;
        let s = (1.0 - r * r).sqrt();
        assert!((r / s - 1.0).abs() <= f64::EPSILON);
    }

    #[test]
    fn decompose_uses_exact_difference_form_near_diagonal() {
        // On the diagonal the difference quotient vanishes and both slopes
        // collapse to sqrt((1-rho)/(1+rho)) exactly.
        let d = decompose(1.3, 1.3, rho(0.95)).unwrap();
        let root = ((1.0 - 0.95) / (1.0 + 0.95)).sqrt();
        assert_eq!(d.r_x, root);
        assert_eq!(d.r_y, root);
        assert_eq!(d.beta, 0.0);
        // Anti-diagonal at strongly negative correlation.
        let d = decompose(0.7, -0.7, rho(-0.97)).unwrap();
        let root = ((1.0 - 0.97) / (1.0 + 0.97)).sqrt();
        assert_eq!(d.r_x, -root);
        assert_eq!(d.r_y, -root);
        assert_eq!(d.beta, 0.5);
    }

    #[test]
    fn decompose_agrees_with_plain_form_in_mild_regime() {
        let (x, y, r) = (0.8, -0.3, 0.55);
        let d = decompose(x, y, rho(r)).unwrap();
        let s = (1.0f64 - r * r).sqrt();
        assert!((d.r_x - (y - r * x) / (x * s)).abs() <= 4.0 * ulp(d.r_x.abs()));
        assert!((d.r_y - (x - r * y) / (y * s)).abs() <= 4.0 * ulp(d.r_y.abs()));
        assert_eq!(d.beta, 0.5);
        let qq = (x * x - 2.0 * r * x * y + y * y) / (2.0 * (1.0 - r * r));
        assert!((d.q - qq).abs() <= 4.0 * ulp(qq));
    }

    #[test]
    fn decompose_handles_zero_coordinate_and_origin() {
        let d = decompose(0.0, 2.0, rho(0.3)).unwrap();
        assert!(d.r_x.is_infinite() && d.r_x > 0.0);
        assert!(d.r_y.is_finite());
        assert_eq!(d.beta, 0.0);
        let d = decompose(0.0, -2.0, rho(0.3)).unwrap();
        assert!(d.r_x.is_infinite() && d.r_x < 0.0);
        assert_eq!(d.beta, 0.5);
        assert!(decompose(0.0, 0.0, rho(0.3)).is_err());
    }

    #[test]
    fn split_fires_only_when_density_exceeds_one() {
        let opts = Phi2Options::default();
        let hot = phi2_report(1.0, 1.001, rho(0.999999), opts).unwrap();
        assert!(hot.density > 1.0);
        assert!(hot.split_used);
        let cold = phi2_report(0.5, 0.3, rho(0.4), opts).unwrap();
        assert!(!cold.split_used);
        let disabled = Phi2Options {
            split: false,
            ..opts
        };
        let no_split = phi2_report(1.0, 1.001, rho(0.999999), disabled).unwrap();
        assert!(!no_split.split_used);
        assert!(no_split.value.is_finite());
    }

    #[test]
    fn split_sub_points_share_exponent_and_density() {
        // Both sub-evaluations sit at the same density
        // exp(-q) / (pi sqrt(2 (1 + |rho|))), with the original q.
        let (x, y, r) = (0.3, 0.32, 0.998);
        let split = critical_split(x, y, rho(r)).unwrap();
        let sub_rho = rho(split.rho_tilde);
        let [(x1, y1), (x2, y2)] = split.sub_points();
        let d1 = density(x1, y1, sub_rho).unwrap();
        let d2 = density(x2, y2, sub_rho).unwrap();
        assert!((d1 - d2).abs() <= 4.0 * ulp(d1));
        let q = decompose(x, y, rho(r)).unwrap().q;
        let want = (-q).exp() / (core::f64::consts::PI * (2.0 * (1.0 + r)).sqrt());
        assert!((d1 - want).abs() <= 8.0 * ulp(want));
    }

    #[test]
    fn split_is_idempotent_on_mild_points() {
        // Forcing the split on a point that does not need it must agree
        // with the direct evaluation.
        let (x, y, r) = (0.9, 0.7, 0.996);
        let opts = Phi2Options::default();
        let direct = phi2(
            x,
            y,
            rho(r),
            Phi2Options {
                split: false,
                ..opts
            },
        )
        .unwrap();
        let split = critical_split(x, y, rho(r)).unwrap();
        let sub_rho = rho(split.rho_tilde);
        let [(x1, y1), (x2, y2)] = split.sub_points();
        let via_split = split.leading
            + split.sign
                * (phi2(x1, y1, sub_rho, opts).unwrap() + phi2(x2, y2, sub_rho, opts).unwrap());
        assert!((direct - via_split).abs() <= 2e-15, "{direct} vs {via_split}");
    }

    #[test]
    fn near_zero_coordinate_goes_through_slope_limit() {
        // x tiny but nonzero: the slope overflows to infinity and the
        // T-limit takes over; the value must approach the boundary form.
        let tiny = phi2(1e-300, 1.7, rho(0.6), Phi2Options::default()).unwrap();
        let boundary = phi2(0.0, 1.7, rho(0.6), Phi2Options::default()).unwrap();
        assert!((tiny - boundary).abs() <= 4.0 * f64::EPSILON);
    }

    #[test]
    fn complement_identity_holds() {
        for &(x, y, r, _) in PHI2_CASES {
            let opts = Phi2Options::default();
            let lhs = l_complement(x, y, rho(r), opts).unwrap();
            let rhs =
                1.0 - std_normal_cdf(x) - std_normal_cdf(y) + phi2(x, y, rho(r), opts).unwrap();
            assert!((lhs - rhs).abs() <= 1e-14, "({x},{y},{r})");
        }
    }

    #[test]
    fn unified_series_agrees_with_decomposed_evaluation() {
        let cases = [
            (0.5, 0.3, 0.4),
            (2.0, -3.0, 0.35),
            (-0.5, -0.5, -0.5),
            (1.2, 0.4, 0.85),
            (0.002, 1.5, 0.6),
            (3.0, 0.0, -0.25),
        ];
        for &(x, y, r) in &cases {
            let want = phi2(x, y, rho(r), Phi2Options::default()).unwrap();
            let p_form = phi2_unified(x, y, rho(r), SeriesVariant::AtanExtYes).unwrap();
            assert!(
                (p_form - want).abs() <= 5e-13,
                "P-form ({x},{y},{r}): {p_form} vs {want}"
            );
        }
        // The Q-form works away from the axes.
        let want = phi2(0.5, 0.3, rho(0.4), Phi2Options::default()).unwrap();
        let q_form = phi2_unified(0.5, 0.3, rho(0.4), SeriesVariant::AtanExtNo).unwrap();
        assert!((q_form - want).abs() <= 5e-13);
    }

    #[test]
    fn unified_series_rejects_origin_and_degenerate_rho() {
        assert!(phi2_unified(0.0, 0.0, rho(0.5), SeriesVariant::AtanExtYes).is_err());
        assert!(phi2_unified(1.0, 1.0, rho(1.0), SeriesVariant::AtanExtYes).is_err());
    }

    #[test]
    fn transform_identity_residual_is_rounding_level() {
        for r in [0.3f64, -0.8, 0.9921875, -0.5] {
            for h in [0.5f64, 2.1, -3.0] {
                let res = owen5_transform_identity(h, r).unwrap().abs();
                assert!(res <= 8.0 * f64::EPSILON, "h {h}, rho {r}: residual {res:e}");
            }
        }
        assert!(owen5_transform_identity(1.0, 0.0).is_err());
        assert!(owen5_transform_identity(1.0, 1.0).is_err());
    }

    #[test]
    fn correlation_newtype_validates() {
        assert!(Correlation::new(0.5).is_ok());
        assert!(Correlation::new(1.0).is_ok());
        assert!(Correlation::new(1.0000001).is_err());
        assert!(Correlation::new(f64::NAN).is_err());
    }

    #[test]
    fn monotone_in_rho_on_a_sample() {
        let mut prev = 0.0f64;
        let mut first = true;
        for j in -9..=9 {
            let r = j as f64 / 10.0;
            let v = phi2(0.6, -0.2, rho(r), Phi2Options::default()).unwrap();
            if !first {
                assert!(v >= prev - 4.0 * f64::EPSILON, "rho = {r}");
            }
            prev = v;
            first = false;
        }
    }
}
