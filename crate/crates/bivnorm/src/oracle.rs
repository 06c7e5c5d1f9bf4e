//! Brute-force reference evaluations.
//!
//! Everything here trades speed for independence from the series code: an
//! adaptive Gauss-Kronrod quadrature over the defining integral of Owen's
//! T function, a single-integral form of the bivariate CDF, and a direct
//! compensated sum for the regularized incomplete gamma ratios.  The
//! acceptance suite and the `random` CLI subcommand compare the fast
//! implementations against these.

use crate::numkernel::scalar::std_normal_cdf;
use crate::OwenError;

/// One adaptive quadrature result.
#[derive(Clone, Copy, Debug)]
pub struct QuadResult {
    pub value: f64,
    /// Sum of the per-panel Kronrod error estimates.
    pub error_estimate: f64,
    /// False when some panel hit the depth limit above its tolerance.
    pub converged: bool,
}

// 15-point Kronrod abscissae (positive half) with the embedded 7-point
// Gauss rule on the odd indices; weights from the QUADPACK tabulation.
const XGK: [f64; 8] = [
    0.9914553711208126,
    0.9491079123427585,
    0.8648644233597691,
    0.7415311855993944,
    0.5860872354676911,
    0.4058451513773972,
    0.2077849550078985,
    0.0,
];
const WGK: [f64; 8] = [
    0.0229353220105292,
    0.0630920926299786,
    0.1047900103222502,
    0.1406532597155259,
    0.1690047266392679,
    0.1903505780647854,
    0.2044329400752989,
    0.2094821410847278,
];
const WG: [f64; 4] = [
    0.1294849661688697,
    0.2797053914892767,
    0.3818300505051189,
    0.4179591836734694,
];

/// One 15-point Kronrod panel over [a, b]: (integral, |K15 - G7| estimate).
fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> (f64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let fc = f(center);
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for (i, (&x, &w)) in XGK.iter().zip(WGK.iter()).enumerate().take(7) {
        let dx = half * x;
        let pair = f(center - dx) + f(center + dx);
        kronrod += w * pair;
        if i % 2 == 1 {
            gauss += WG[i / 2] * pair;
        }
    }
    (kronrod * half, ((kronrod - gauss) * half).abs())
}

struct AdaptiveState {
    error: f64,
    failed: bool,
}

/// Bisect until each panel's estimate is below its tolerance share, down
/// to `depth` levels; panels that bottom out unresolved mark the result
/// as non-converged.
fn adaptive<F: Fn(f64) -> f64>(
    f: &F,
    a: f64,
    b: f64,
    tol: f64,
    depth: usize,
    state: &mut AdaptiveState,
) -> f64 {
    let (value, err) = gk15(f, a, b);
    if err <= tol || depth == 0 {
        state.error += err;
        if err > tol {
            state.failed = true;
        }
        return value;
    }
    let mid = 0.5 * (a + b);
    let half_tol = 0.5 * tol;
    adaptive(f, a, mid, half_tol, depth - 1, state)
        + adaptive(f, mid, b, half_tol, depth - 1, state)
}

const MAX_DEPTH: usize = 60;
const TOL_FLOOR: f64 = 1e-14;

fn checked_tol(tol: f64) -> Result<f64, OwenError> {
    if !tol.is_finite() || tol <= 0.0 {
        return Err(OwenError::Domain {
            what: "quadrature tolerance must be finite and positive",
        });
    }
    Ok(tol.max(TOL_FLOOR))
}

/// Owen's T function by adaptive quadrature of its defining integral
///
/// T(h, a) = (1/(2 pi)) integral_0^a exp(-h^2 (1 + x^2) / 2) / (1 + x^2) dx.
///
/// Integrates over [0, |a|] and restores the sign of `a` afterwards.
pub fn owen_t_quadrature(h: f64, a: f64, tol: f64) -> Result<QuadResult, OwenError> {
    if !h.is_finite() || !a.is_finite() {
        return Err(OwenError::Domain {
            what: "quadrature arguments must be finite",
        });
    }
    let tol = checked_tol(tol)?;
    let hh = 0.5 * h * h;
    let integrand = move |x: f64| {
        let opx = 1.0 + x * x;
        (-hh * opx).exp() / (core::f64::consts::TAU * opx)
    };
    let mut state = AdaptiveState {
        error: 0.0,
        failed: false,
    };
    let value = adaptive(&integrand, 0.0, a.abs(), tol, MAX_DEPTH, &mut state);
    Ok(QuadResult {
        value: if a < 0.0 { -value } else { value },
        error_estimate: state.error,
        converged: !state.failed,
    })
}

/// Bivariate standard normal CDF by the single-integral form
///
/// ```text
/// Phi2(x, y; rho) = Phi(x) Phi(y)
///   + (1/(2 pi)) integral_0^(asin rho)
///       exp(-(x^2 - 2 x y sin t + y^2) / (2 cos^2 t)) dt.
/// ```
///
/// The exponent is regrouped so nothing cancels as t approaches +-pi/2:
/// for x y >= 0 it is -((x-y)^2/(2 cos^2 t) + x y/(1 + sin t)), and for
/// x y < 0 the (x+y)^2 form with 1 - sin t.  The integrand peaks where
/// sin t = x/y (or y/x); when that angle lies strictly inside the
/// interval the integration is split there so each half is monotone.
pub fn phi2_plackett_quadrature(
    x: f64,
    y: f64,
    rho: f64,
    tol: f64,
) -> Result<QuadResult, OwenError> {
    if !x.is_finite() || !y.is_finite() {
        return Err(OwenError::Domain {
            what: "quadrature arguments must be finite",
        });
    }
    if !rho.is_finite() || rho.abs() > 1.0 {
        return Err(OwenError::InvalidCorrelation { value: rho });
    }
    let tol = checked_tol(tol)?;
    let integrand = move |t: f64| {
        let s = t.sin();
        let c = t.cos();
        let c2 = c * c;
        let exponent = if x * y >= 0.0 {
            -((x - y) * (x - y) / (2.0 * c2) + x * y / (1.0 + s))
        } else {
            -((x + y) * (x + y) / (2.0 * c2) - x * y / (1.0 - s))
        };
        exponent.exp() / core::f64::consts::TAU
    };
    let theta_end = rho.asin();
    let s_star = if x == 0.0 || y == 0.0 {
        0.0
    } else if x.abs() < y.abs() {
        x / y
    } else {
        y / x
    };
    let theta_star = s_star.asin();
    let split_inside = if theta_end > 0.0 {
        theta_star > 0.0 && theta_star < theta_end
    } else {
        theta_star < 0.0 && theta_star > theta_end
    };
    let mut state = AdaptiveState {
        error: 0.0,
        failed: false,
    };
    let integral = if split_inside {
        let half_tol = 0.5 * tol;
        adaptive(&integrand, 0.0, theta_star, half_tol, MAX_DEPTH, &mut state)
            + adaptive(&integrand, theta_star, theta_end, half_tol, MAX_DEPTH, &mut state)
    } else {
        adaptive(&integrand, 0.0, theta_end, tol, MAX_DEPTH, &mut state)
    };
    Ok(QuadResult {
        value: std_normal_cdf(x) * std_normal_cdf(y) + integral,
        error_estimate: state.error,
        converged: !state.failed,
    })
}

/// Q(k+1, q) = exp(-q) sum_(j=0..k) q^j / j! by direct compensated
/// summation, independent of the recursion in `numkernel::gamma`.
///
/// Every term carries the exp(-q) factor, so nothing overflows; for
/// q beyond roughly 708 that factor underflows to zero and so does the
/// result, which is only wrong when k is of the order of q or larger.
pub fn incomplete_gamma_direct(k: usize, q: f64) -> Result<f64, OwenError> {
    if !q.is_finite() || q < 0.0 {
        return Err(OwenError::Domain {
            what: "gamma argument must be finite and non-negative",
        });
    }
    let mut term = (-q).exp();
    let mut sum = term;
    let mut carry = 0.0f64;
    for j in 0..k {
        term *= q / (j + 1) as f64;
        let adjusted = term - carry;
        let next = sum + adjusted;
        carry = (next - sum) - adjusted;
        sum = next;
    }
    Ok(sum.min(1.0))
}
