//! The `compare` subcommand: working-precision ladder on two boundary
//! points with exact closed forms.
//!
//! The point pair is Phi2(2.1, 0; rho) at rho = +-sqrt(2)/2, where the
//! interior slope is exactly +-1 and the value has the closed forms
//! Phi(h)(1 - Phi(h)/2) and Phi(h)^2 / 2.  Both series variants run the
//! evaluation at each precision (with rho recomputed as sqrt(2)/2 at
//! that precision), the closed form is evaluated at twice the working
//! precision, and the row passes when the error stays below 2^-bits.
//! Above 53 bits this needs the `highprec` build; without it the wider
//! rows are reported as skipped.

use std::io::Write;
use std::path::PathBuf;

use super::{csv_f64, open_sinks, usage_error};
use crate::bvn::phi2_h0_with;
use crate::owent::SeriesVariant;

/// Arguments for the `compare` subcommand.
#[derive(Clone, Debug)]
pub struct CompareArgs {
    /// Explicit precision ladder; `None` means the default
    /// 53, 64, 128, 256, 512, 1024.
    pub precision_bits: Option<Vec<u32>>,
    pub out: Option<PathBuf>,
}

pub const DEFAULT_LADDER: [u32; 6] = [53, 64, 128, 256, 512, 1024];

/// One ladder row; `err_log2` is log2 of the absolute error against the
/// doubled-precision closed form.
pub struct CompareRow {
    pub bits: u32,
    pub point: char,
    pub variant: SeriesVariant,
    pub iterations: usize,
    pub err_log2: f64,
    pub within: bool,
}

/// Frozen closed-form values of the two points, correctly rounded to
/// binary64, used when no wide backend is available.
pub const POINT_A_REF: f64 = 0.4998404312389774;
pub const POINT_B_REF: f64 = 0.482295148198206;

/// The 53-bit rows through plain binary64 arithmetic.
pub fn binary64_rows() -> Vec<CompareRow> {
    let rho = core::f64::consts::FRAC_1_SQRT_2;
    let mut rows = Vec::new();
    for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
        for (point, r, reference) in [('A', rho, POINT_A_REF), ('B', -rho, POINT_B_REF)] {
            let rep = phi2_h0_with(2.1f64, r, variant, -1.0).expect("valid boundary point");
            let err = (rep.value - reference).abs();
            rows.push(CompareRow {
                bits: 53,
                point,
                variant,
                iterations: rep.iterations,
                err_log2: err.log2(),
                within: err <= 2f64.powi(-53),
            });
        }
    }
    rows
}

/// Ladder rows at an arbitrary working precision.
#[cfg(feature = "highprec")]
pub fn wide_rows(bits: u32) -> Vec<CompareRow> {
    use crate::numkernel::mp::MpFloat;
    use crate::numkernel::scalar::RealScalar;

    // Closed forms at twice the working precision.
    let proto2 = MpFloat::with_precision(2 * bits, 0.0);
    let h2 = MpFloat::from_f64(&proto2, 2.1);
    let phi = h2.norm_cdf();
    let one = MpFloat::from_f64(&proto2, 1.0);
    let half = MpFloat::from_f64(&proto2, 0.5);
    let a_ref = phi.clone() * (one - half.clone() * phi.clone());
    let b_ref = half * phi.clone() * phi;

    let proto = MpFloat::with_precision(bits, 0.0);
    let h = MpFloat::from_f64(&proto, 2.1);
    let two = MpFloat::from_f64(&proto, 2.0);
    let rho = two.clone().sqrt() / two;
    let eps = MpFloat::from_f64(&proto, -1.0);
    let threshold = MpFloat(rug::Float::with_val(64, rug::Float::i_exp(1, -(bits as i32))));

    let mut rows = Vec::new();
    for variant in [SeriesVariant::AtanExtNo, SeriesVariant::AtanExtYes] {
        for (point, r, reference) in [
            ('A', rho.clone(), &a_ref),
            ('B', -rho.clone(), &b_ref),
        ] {
            let rep = phi2_h0_with(h.clone(), r, variant, eps.clone())
                .expect("valid boundary point");
            let err = (rep.value - reference.clone()).abs();
            let within = err.0 <= threshold.0;
            rows.push(CompareRow {
                bits,
                point,
                variant,
                iterations: rep.iterations,
                err_log2: err.0.log2().to_f64(),
                within,
            });
        }
    }
    rows
}

#[cfg(feature = "highprec")]
fn rows_for(bits: u32, _skipped: &mut Vec<u32>) -> Vec<CompareRow> {
    wide_rows(bits)
}

#[cfg(not(feature = "highprec"))]
fn rows_for(bits: u32, skipped: &mut Vec<u32>) -> Vec<CompareRow> {
    if bits == 53 {
        binary64_rows()
    } else {
        skipped.push(bits);
        Vec::new()
    }
}

pub fn cmd_compare(args: &CompareArgs) -> i32 {
    let explicit = args.precision_bits.is_some();
    let ladder = args
        .precision_bits
        .clone()
        .unwrap_or_else(|| DEFAULT_LADDER.to_vec());
    if let Some(&bad) = ladder.iter().find(|&&b| b < 53) {
        return usage_error(&format!(
            "precision of {bad} bits is below binary64; the ladder starts at 53"
        ));
    }
    if !cfg!(feature = "highprec") && explicit && ladder.iter().any(|&b| b != 53) {
        return usage_error(
            "precision above 53 bits needs the wide backend; rebuild with --features highprec",
        );
    }
    let mut sinks = match open_sinks(&args.out) {
        Ok(s) => s,
        Err(err) => return usage_error(&format!("cannot open output: {err}")),
    };
    if writeln!(sinks.csv, "bits,point,variant,iterations,abs_err_log2,within").is_err() {
        return usage_error("write failed");
    }
    let mut all_within = true;
    let mut skipped: Vec<u32> = Vec::new();
    for &bits in &ladder {
        let rows = rows_for(bits, &mut skipped);
        for row in rows {
            all_within &= row.within;
            if writeln!(
                sinks.csv,
                "{},{},{},{},{},{}",
                row.bits,
                row.point,
                row.variant.label(),
                row.iterations,
                csv_f64(row.err_log2),
                row.within
            )
            .is_err()
            {
                return usage_error("write failed");
            }
        }
    }
    if sinks.csv.flush().is_err() {
        return usage_error("write failed");
    }
    for bits in &skipped {
        let _ = writeln!(
            sinks.summary,
            "bits {bits}: skipped (needs a build with --features highprec)"
        );
    }
    let _ = writeln!(
        sinks.summary,
        "all rows within 2^-bits of the closed forms: {all_within}"
    );
    if all_within {
        0
    } else {
        1
    }
}
