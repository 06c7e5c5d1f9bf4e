//! The `random` subcommand: randomized stress runs against the oracles.
//!
//! In `--phi2` mode it draws (x, y, rho) triplets from independent
//! SplitMix64 streams, evaluates the density everywhere (counting how
//! often the critical split would fire), and fully evaluates a leading
//! subsample against the single-integral quadrature oracle.  `--star`
//! warps the correlation draw through rho* = 2 Phi(8 rho) - 1, pushing
//! most of the mass to |rho*| > 0.9999 to hammer the near-degenerate
//! regime.  In `--owen-t` mode it draws (h, a) pairs and compares the
//! series against the direct integral.  Reference points with frozen
//! 60-digit oracle values ride along at the end of the CSV.

use std::io::Write;
use std::path::PathBuf;

use super::rng::SplitMix64;
use super::{csv_f64, open_sinks, usage_error, Target};
use crate::numkernel::scalar::std_normal_cdf;
use crate::oracle::{owen_t_quadrature, phi2_plackett_quadrature};
use crate::{phi2_report, Correlation, Phi2Options};

/// Arguments for the `random` subcommand.
#[derive(Clone, Debug)]
pub struct RandomArgs {
    pub target: Target,
    pub count: usize,
    pub seed: u64,
    /// Warp correlations toward the degenerate edges.
    pub star: bool,
    /// How many leading draws get a full evaluation and oracle check.
    pub subsample: usize,
    pub oracle_tol: f64,
    pub out: Option<PathBuf>,
}

impl Default for RandomArgs {
    fn default() -> Self {
        Self {
            target: Target::Phi2,
            count: 1_000_000,
            seed: 1,
            star: false,
            subsample: 10_000,
            oracle_tol: 1e-13,
            out: None,
        }
    }
}

/// Frozen reference triplets (x, y, rho, Phi2) from a 60-digit mpmath run.
pub const PHI2_REGISTRY: &[(f64, f64, f64, f64)] = &[
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

/// Frozen reference pairs (h, a, T) from a 60-digit mpmath run.
pub const OWEN_T_REGISTRY: &[(f64, f64, f64)] = &[
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

fn nearest_rank(sorted: &[f64], p: f64) -> f64 {
    if sorted.is_empty() {
        return f64::NAN;
    }
    let rank = (p * sorted.len() as f64).ceil() as usize;
    sorted[rank.clamp(1, sorted.len()) - 1]
}

pub fn cmd_random(args: &RandomArgs) -> i32 {
    if args.count == 0 {
        return usage_error("--count must be positive");
    }
    let mut sinks = match open_sinks(&args.out) {
        Ok(s) => s,
        Err(err) => return usage_error(&format!("cannot open output: {err}")),
    };
    match args.target {
        Target::Phi2 => random_phi2(args, &mut sinks),
        Target::OwenT => random_owen_t(args, &mut sinks),
    }
}

fn random_phi2(args: &RandomArgs, sinks: &mut super::Sinks) -> i32 {
    let mut master = SplitMix64::new(args.seed);
    let mut sx = master.split();
    let mut sy = master.split();
    let mut sr = master.split();
    let opts = Phi2Options::default();
    let mut errs: Vec<f64> = Vec::new();
    let mut split_triggers = 0usize;
    let mut failures = 0usize;
    let mut evaluated = 0usize;
    if writeln!(
        sinks.csv,
        "source,x,y,rho,value,oracle,abs_err,iterations,split_used,density"
    )
    .is_err()
    {
        return usage_error("write failed");
    }
    for draw in 0..args.count {
        let x = sx.open_uniform(-10.0, 10.0);
        let y = sy.open_uniform(-10.0, 10.0);
        let mut rho = sr.open_uniform(-1.0, 1.0);
        if args.star {
            rho = 2.0 * std_normal_cdf(8.0 * rho) - 1.0;
        }
        let corr = Correlation::new(rho).expect("open interval draw");
        let dens = crate::density(x, y, corr).expect("|rho| < 1");
        if dens > 1.0 {
            split_triggers += 1;
        }
        if draw >= args.subsample {
            continue;
        }
        evaluated += 1;
        let (value, iterations, split_used) = match phi2_report(x, y, corr, opts) {
            Ok(rep) => (rep.value, rep.iterations, rep.split_used),
            Err(_) => (f64::NAN, 0, false),
        };
        let oracle = match phi2_plackett_quadrature(x, y, rho, args.oracle_tol) {
            Ok(q) if q.converged => q.value,
            _ => f64::NAN,
        };
        let abs_err = (value - oracle).abs();
        if abs_err.is_nan() {
            failures += 1;
        } else {
            errs.push(abs_err);
        }
        if writeln!(
            sinks.csv,
            "random,{},{},{},{},{},{},{iterations},{split_used},{}",
            csv_f64(x),
            csv_f64(y),
            csv_f64(rho),
            csv_f64(value),
            csv_f64(oracle),
            csv_f64(abs_err),
            csv_f64(dens)
        )
        .is_err()
        {
            return usage_error("write failed");
        }
    }
    for &(x, y, rho, want) in PHI2_REGISTRY {
        let corr = Correlation::new(rho).expect("registry rho is valid");
        let dens = crate::density(x, y, corr).unwrap_or(f64::INFINITY);
        evaluated += 1;
        let (value, iterations, split_used) = match phi2_report(x, y, corr, opts) {
            Ok(rep) => (rep.value, rep.iterations, rep.split_used),
            Err(_) => (f64::NAN, 0, false),
        };
        let abs_err = (value - want).abs();
        if abs_err.is_nan() {
            failures += 1;
        } else {
            errs.push(abs_err);
        }
        if writeln!(
            sinks.csv,
            "registry,{},{},{},{},{},{},{iterations},{split_used},{}",
            csv_f64(x),
            csv_f64(y),
            csv_f64(rho),
            csv_f64(value),
            csv_f64(want),
            csv_f64(abs_err),
            csv_f64(dens)
        )
        .is_err()
        {
            return usage_error("write failed");
        }
    }
    if sinks.csv.flush().is_err() {
        return usage_error("write failed");
    }
    errs.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in errs"));
    let mean = errs.iter().sum::<f64>() / errs.len().max(1) as f64;
    let _ = writeln!(
        sinks.summary,
        "draws {}, split-trigger rate {:.4}, evaluated {evaluated}, oracle failures {failures}",
        args.count,
        split_triggers as f64 / args.count as f64
    );
    let _ = writeln!(
        sinks.summary,
        "abs err vs oracle: median {:.3e}, mean {:.3e}, q3 {:.3e}, p99 {:.3e}, max {:.3e}",
        nearest_rank(&errs, 0.5),
        mean,
        nearest_rank(&errs, 0.75),
        nearest_rank(&errs, 0.99),
        errs.last().copied().unwrap_or(f64::NAN)
    );
    if failures > 0 {
        1
    } else {
        0
    }
}

fn random_owen_t(args: &RandomArgs, sinks: &mut super::Sinks) -> i32 {
    let mut master = SplitMix64::new(args.seed);
    let mut sh = master.split();
    let mut sa = master.split();
    let mut errs: Vec<f64> = Vec::new();
    let mut failures = 0usize;
    let mut evaluated = 0usize;
    if writeln!(sinks.csv, "source,h,a,value,oracle,abs_err,iterations,bound").is_err() {
        return usage_error("write failed");
    }
    for _ in 0..args.count.min(args.subsample) {
        let h = sh.open_uniform(-10.0, 10.0);
        let a = sa.open_uniform(-10.0, 10.0);
        evaluated += 1;
        let (value, iterations, bound) =
            match crate::owen_t(h, a, crate::SeriesVariant::AtanExtYes, -1.0) {
                Ok(rep) => (rep.value, rep.iterations, rep.bound),
                Err(_) => (f64::NAN, 0, f64::NAN),
            };
        let oracle = match owen_t_quadrature(h, a, args.oracle_tol) {
            Ok(q) if q.converged => q.value,
            _ => f64::NAN,
        };
        let abs_err = (value - oracle).abs();
        if abs_err.is_nan() {
            failures += 1;
        } else {
            errs.push(abs_err);
        }
        if writeln!(
            sinks.csv,
            "random,{},{},{},{},{},{iterations},{}",
            csv_f64(h),
            csv_f64(a),
            csv_f64(value),
            csv_f64(oracle),
            csv_f64(abs_err),
            csv_f64(bound)
        )
        .is_err()
        {
            return usage_error("write failed");
        }
    }
    for &(h, a, want) in OWEN_T_REGISTRY {
        evaluated += 1;
        let (value, iterations, bound) =
            match crate::owen_t(h, a, crate::SeriesVariant::AtanExtYes, -1.0) {
                Ok(rep) => (rep.value, rep.iterations, rep.bound),
                Err(_) => (f64::NAN, 0, f64::NAN),
            };
        let abs_err = (value - want).abs();
        if abs_err.is_nan() {
            failures += 1;
        } else {
            errs.push(abs_err);
        }
        if writeln!(
            sinks.csv,
            "registry,{},{},{},{},{},{iterations},{}",
            csv_f64(h),
            csv_f64(a),
            csv_f64(value),
            csv_f64(want),
            csv_f64(abs_err),
            csv_f64(bound)
        )
        .is_err()
        {
            return usage_error("write failed");
        }
    }
    if sinks.csv.flush().is_err() {
        return usage_error("write failed");
    }
    errs.sort_by(|a, b| a.partial_cmp(b).expect("no NaN in errs"));
    let mean = errs.iter().sum::<f64>() / errs.len().max(1) as f64;
    let _ = writeln!(
        sinks.summary,
        "evaluated {evaluated}, oracle failures {failures}"
    );
    let _ = writeln!(
        sinks.summary,
        "abs err vs oracle: median {:.3e}, mean {:.3e}, q3 {:.3e}, p99 {:.3e}, max {:.3e}",
        nearest_rank(&errs, 0.5),
        mean,
        nearest_rank(&errs, 0.75),
        nearest_rank(&errs, 0.99),
        errs.last().copied().unwrap_or(f64::NAN)
    );
    if failures > 0 {
        1
    } else {
        0
    }
}
