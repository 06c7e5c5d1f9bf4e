//! The `grid` subcommand: Owen T over the canonical (h, rho) grid.
//!
//! 201 heights h = -10.0, -9.9, ..., 10.0 cross 199 correlations
//! rho = -0.99, ..., 0.99, each mapped to the slope
//! r = rho/sqrt(1-rho^2): 39,999 points spanning the benign center and
//! the deep-tail and near-degenerate edges.  Every value is checked
//! against a closed form where one exists and the adaptive quadrature
//! oracle elsewhere; the summary reports the error profile and two
//! iteration averages (row-lockstep maxima and plain per-point).

use std::io::Write;
use std::path::PathBuf;

use super::{csv_f64, open_sinks, usage_error, Method};
use crate::numkernel::scalar::std_normal_cdf;
use crate::oracle::owen_t_quadrature;
use crate::owent::SeriesVariant;

/// Arguments for the `grid` subcommand.
#[derive(Clone, Debug)]
pub struct GridArgs {
    pub method: Method,
    /// Restrict `novel` to a single series variant.
    pub variant: Option<SeriesVariant>,
    pub eps: f64,
    pub out: Option<PathBuf>,
}

/// Canonical benchmark grid dimensions and axes.
pub struct GridSpec;

impl GridSpec {
    pub const HEIGHTS: usize = 201;
    pub const CORRELATIONS: usize = 199;
    pub const POINTS: usize = Self::HEIGHTS * Self::CORRELATIONS;

    pub fn height(i: usize) -> f64 {
        (i as f64 - 100.0) / 10.0
    }

    pub fn correlation(j: usize) -> f64 {
        (j as f64 - 99.0) / 100.0
    }

    pub fn slope(rho: f64) -> f64 {
        rho / ((1.0 - rho) * (1.0 + rho)).sqrt()
    }
}

/// Closed form where one exists, quadrature at 1e-14 elsewhere.
fn reference_value(h: f64, rho: f64, r: f64) -> f64 {
    if rho == 0.0 {
        0.0
    } else if h == 0.0 {
        r.atan() / core::f64::consts::TAU
    } else if r == 1.0 {
        0.5 * std_normal_cdf(h) * (1.0 - std_normal_cdf(h))
    } else if r == -1.0 {
        -0.5 * std_normal_cdf(h) * (1.0 - std_normal_cdf(h))
    } else {
        owen_t_quadrature(h, r, 1e-14)
            .map(|q| q.value)
            .unwrap_or(f64::NAN)
    }
}

struct MethodStats {
    label: String,
    max_err: f64,
    sum_err: f64,
    sum_row_max_iter: f64,
    sum_iter: f64,
    points: usize,
    error_rows: usize,
}

pub fn cmd_grid(args: &GridArgs) -> i32 {
    let runs: Vec<(Method, Option<SeriesVariant>)> = match (args.method, args.variant) {
        (Method::Novel, Some(v)) => vec![(Method::Novel, Some(v))],
        (Method::Novel, None) => vec![
            (Method::Novel, Some(SeriesVariant::AtanExtNo)),
            (Method::Novel, Some(SeriesVariant::AtanExtYes)),
        ],
        (Method::TetrachoricAccelerated | Method::Tetrachoric, _) => {
            return usage_error("grid evaluates Owen's T; tetrachoric methods apply to --phi2");
        }
        (m, _) => vec![(m, None)],
    };
    let mut sinks = match open_sinks(&args.out) {
        Ok(s) => s,
        Err(err) => return usage_error(&format!("cannot open output: {err}")),
    };
    // References are method-independent; compute them once per point.
    let mut references = vec![0.0f64; GridSpec::POINTS];
    for j in 0..GridSpec::CORRELATIONS {
        let rho = GridSpec::correlation(j);
        let r = GridSpec::slope(rho);
        for i in 0..GridSpec::HEIGHTS {
            references[j * GridSpec::HEIGHTS + i] = reference_value(GridSpec::height(i), rho, r);
        }
    }
    let mut stats: Vec<MethodStats> = Vec::new();
    let io_fail = |err: std::io::Error| usage_error(&format!("write failed: {err}"));
    if let Err(err) = writeln!(
        sinks.csv,
        "h,rho,r,method,value,iterations,bound,abs_err_vs_reference"
    ) {
        return io_fail(err);
    }
    for (method, variant) in runs {
        let label = match (method, variant) {
            (Method::Novel, Some(v)) => format!("novel-{}", v.label()),
            (m, _) => m.to_string(),
        };
        let mut st = MethodStats {
            label: label.clone(),
            max_err: 0.0,
            sum_err: 0.0,
            sum_row_max_iter: 0.0,
            sum_iter: 0.0,
            points: 0,
            error_rows: 0,
        };
        for j in 0..GridSpec::CORRELATIONS {
            let rho = GridSpec::correlation(j);
            let r = GridSpec::slope(rho);
            let mut row_max_iter = 0usize;
            for i in 0..GridSpec::HEIGHTS {
                let h = GridSpec::height(i);
                let reference = references[j * GridSpec::HEIGHTS + i];
                let (value, iterations, bound) = match method {
                    Method::Novel => {
                        match crate::owen_t(h, r, variant.unwrap(), args.eps) {
                            Ok(rep) => (rep.value, rep.iterations, rep.bound),
                            Err(_) => (f64::NAN, 0, f64::NAN),
                        }
                    }
                    Method::Alternating => match crate::owen_t_alternating(h, r, 10_000) {
                        Ok(rep) => (rep.value, rep.terms, f64::NAN),
                        Err(_) => (f64::NAN, 0, f64::NAN),
                    },
                    Method::Oracle => match owen_t_quadrature(h, r, 1e-13) {
                        Ok(q) => (q.value, 0, q.error_estimate),
                        Err(_) => (f64::NAN, 0, f64::NAN),
                    },
                    Method::Tetrachoric | Method::TetrachoricAccelerated => unreachable!(),
                };
                let abs_err = (value - reference).abs();
                if let Err(err) = writeln!(
                    sinks.csv,
                    "{},{},{},{label},{},{iterations},{},{}",
                    csv_f64(h),
                    csv_f64(rho),
                    csv_f64(r),
                    csv_f64(value),
                    csv_f64(bound),
                    csv_f64(abs_err)
                ) {
                    return io_fail(err);
                }
                if value.is_nan() || abs_err.is_nan() {
                    st.error_rows += 1;
                } else {
                    st.max_err = st.max_err.max(abs_err);
                    st.sum_err += abs_err;
                }
                st.sum_iter += iterations as f64;
                row_max_iter = row_max_iter.max(iterations);
                st.points += 1;
            }
            st.sum_row_max_iter += row_max_iter as f64;
        }
        stats.push(st);
    }
    if let Err(err) = sinks.csv.flush() {
        return io_fail(err);
    }
    let mut had_errors = false;
    for st in &stats {
        let clean = (st.points - st.error_rows) as f64;
        let _ = writeln!(
            sinks.summary,
            "{}: points {}, error rows {}, max abs err {:.3e}, mean abs err {:.3e}",
            st.label,
            st.points,
            st.error_rows,
            st.max_err,
            if clean > 0.0 { st.sum_err / clean } else { f64::NAN }
        );
        let _ = writeln!(
            sinks.summary,
            "{}: Average iter. 1 {:.2} (lockstep row maxima), Average iter. 2 {:.2} (per point)",
            st.label,
            st.sum_row_max_iter / GridSpec::CORRELATIONS as f64,
            st.sum_iter / st.points as f64
        );
        had_errors |= st.error_rows > 0;
    }
    if had_errors {
        1
    } else {
        0
    }
}
