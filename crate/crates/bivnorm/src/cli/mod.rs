//! Typed argument structs and runners for the command-line interface.
//!
//! The binary in `main.rs` only parses flags; everything it then calls
//! lives here so the subcommands stay testable without a terminal.  Each
//! runner returns a process exit code: 0 for success, 1 when the run
//! completed but produced error rows (for example a series that refused
//! to converge), 2 for unusable arguments.  CSV goes to `--out` when
//! given (with the human summary on stdout), otherwise CSV goes to
//! stdout and the summary to stderr, so piping the data never mixes the
//! two.

pub mod compare;
pub mod grid;
pub mod random;
pub mod rng;

use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::str::FromStr;

use crate::owent::SeriesVariant;

/// Which function a subcommand operates on.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Target {
    OwenT,
    Phi2,
}

/// Evaluation method selector shared by `eval` and `grid`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    /// The gamma-series evaluation this crate is about.
    Novel,
    /// Hermite-polynomial tetrachoric series.
    Tetrachoric,
    /// Tetrachoric series behind the boundary transform.
    TetrachoricAccelerated,
    /// Alternating single-slope series (diverges for |r| > 1).
    Alternating,
    /// Adaptive quadrature reference.
    Oracle,
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "novel" => Ok(Self::Novel),
            "tetrachoric" => Ok(Self::Tetrachoric),
            "tetrachoric-accelerated" => Ok(Self::TetrachoricAccelerated),
            "alternating" => Ok(Self::Alternating),
            "oracle" => Ok(Self::Oracle),
            other => Err(format!(
                "unknown method '{other}' (expected novel, tetrachoric, \
                 tetrachoric-accelerated, alternating, or oracle)"
            )),
        }
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Self::Novel => "novel",
            Self::Tetrachoric => "tetrachoric",
            Self::TetrachoricAccelerated => "tetrachoric-accelerated",
            Self::Alternating => "alternating",
            Self::Oracle => "oracle",
        };
        f.write_str(name)
    }
}

pub fn parse_variant(s: &str) -> Result<SeriesVariant, String> {
    match s {
        "atan-ext-no" => Ok(SeriesVariant::AtanExtNo),
        "atan-ext-yes" => Ok(SeriesVariant::AtanExtYes),
        other => Err(format!(
            "unknown variant '{other}' (expected atan-ext-no or atan-ext-yes)"
        )),
    }
}

/// Fixed-width scientific float formatting used in every CSV cell, wide
/// enough to round-trip any binary64 value byte-identically.
pub fn csv_f64(v: f64) -> String {
    format!("{v:.16e}")
}

/// Output sinks for one subcommand run: (csv, summary).
pub struct Sinks {
    pub csv: Box<dyn Write>,
    pub summary: Box<dyn Write>,
}

pub fn open_sinks(out: &Option<PathBuf>) -> io::Result<Sinks> {
    Ok(match out {
        Some(path) => Sinks {
            csv: Box::new(BufWriter::new(File::create(path)?)),
            summary: Box::new(io::stdout()),
        },
        None => Sinks {
            csv: Box::new(BufWriter::new(io::stdout())),
            summary: Box::new(io::stderr()),
        },
    })
}

pub fn usage_error(msg: &str) -> i32 {
    eprintln!("error: {msg}");
    2
}

/// Arguments for the `eval` subcommand.
#[derive(Clone, Debug)]
pub struct EvalArgs {
    pub target: Target,
    /// Height h for Owen T; first coordinate x for Phi2.
    pub h: f64,
    /// Second coordinate for Phi2 (default 0, the boundary form).
    pub y: f64,
    /// Direct slope (Owen T only; exclusive with rho).
    pub slope: Option<f64>,
    /// Correlation; for Owen T it is mapped to r = rho/sqrt(1-rho^2).
    pub rho: Option<f64>,
    pub method: Method,
    pub variant: SeriesVariant,
    pub eps: f64,
}

/// Run `eval`, printing key-value diagnostics to stdout.
pub fn cmd_eval(args: &EvalArgs) -> i32 {
    match args.target {
        Target::OwenT => eval_owen_t(args),
        Target::Phi2 => eval_phi2(args),
    }
}

fn eval_owen_t(args: &EvalArgs) -> i32 {
    let r = match (args.slope, args.rho) {
        (Some(r), None) => r,
        (None, Some(rho)) => {
            if rho.abs() >= 1.0 {
                return usage_error("--rho with |rho| = 1 gives an infinite slope; use --r");
            }
            rho / ((1.0 - rho) * (1.0 + rho)).sqrt()
        }
        (Some(_), Some(_)) => return usage_error("--r and --rho are mutually exclusive"),
        (None, None) => return usage_error("--owen-t needs a slope: pass --r or --rho"),
    };
    match args.method {
        Method::Novel => match crate::owen_t(args.h, r, args.variant, args.eps) {
            Ok(rep) => {
                println!("value {}", csv_f64(rep.value));
                println!("method novel-{}", rep.variant.label());
                println!("iterations {}", rep.iterations);
                println!("bound {}", csv_f64(rep.bound));
                println!("transformed {}", rep.transformed);
                0
            }
            Err(err) => usage_error(&err.to_string()),
        },
        Method::Alternating => match crate::owen_t_alternating(args.h, r, 10_000) {
            Ok(rep) => {
                println!("value {}", csv_f64(rep.value));
                println!("method alternating");
                println!("iterations {}", rep.terms);
                println!("last_term {}", csv_f64(rep.last_term));
                0
            }
            Err(err) => {
                eprintln!("error: {err}");
                1
            }
        },
        Method::Oracle => match crate::oracle::owen_t_quadrature(args.h, r, 1e-13) {
            Ok(q) => {
                println!("value {}", csv_f64(q.value));
                println!("method oracle");
                println!("error_estimate {}", csv_f64(q.error_estimate));
                println!("converged {}", q.converged);
                if q.converged {
                    0
                } else {
                    1
                }
            }
            Err(err) => usage_error(&err.to_string()),
        },
        Method::Tetrachoric | Method::TetrachoricAccelerated => {
            usage_error("tetrachoric methods evaluate --phi2, not --owen-t")
        }
    }
}

fn eval_phi2(args: &EvalArgs) -> i32 {
    if args.slope.is_some() {
        return usage_error("--r applies to --owen-t; use --rho with --phi2");
    }
    let rho = match args.rho {
        Some(r) => r,
        None => return usage_error("--phi2 needs --rho"),
    };
    let corr = match crate::Correlation::new(rho) {
        Ok(c) => c,
        Err(err) => return usage_error(&err.to_string()),
    };
    let (x, y) = (args.h, args.y);
    match args.method {
        Method::Novel => {
            let opts = crate::Phi2Options {
                variant: args.variant,
                eps: args.eps,
                split: true,
            };
            match crate::phi2_report(x, y, corr, opts) {
                Ok(rep) => {
                    println!("value {}", csv_f64(rep.value));
                    println!("method novel-{}", args.variant.label());
                    println!("iterations {}", rep.iterations);
                    println!("beta {}", csv_f64(rep.beta));
                    println!("split_used {}", rep.split_used);
                    println!("density {}", csv_f64(rep.density));
                    0
                }
                Err(err) => usage_error(&err.to_string()),
            }
        }
        Method::Tetrachoric => {
            let result = if y == 0.0 {
                crate::phi2_tetrachoric_h0(x, rho, false, 0.0)
            } else {
                crate::phi2_tetrachoric_xy(x, y, rho, 0.0)
            };
            match result {
                Ok(rep) => {
                    println!("value {}", csv_f64(rep.value));
                    println!("method tetrachoric");
                    println!("iterations {}", rep.terms);
                    println!("slow_regime {}", rep.slow_regime);
                    0
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    1
                }
            }
        }
        Method::TetrachoricAccelerated => {
            if y != 0.0 {
                return usage_error("tetrachoric-accelerated is a boundary method; it needs -y 0");
            }
            match crate::phi2_tetrachoric_h0(x, rho, true, 0.0) {
                Ok(rep) => {
                    println!("value {}", csv_f64(rep.value));
                    println!("method tetrachoric-accelerated");
                    println!("iterations {}", rep.terms);
                    println!("slow_regime {}", rep.slow_regime);
                    0
                }
                Err(err) => {
                    eprintln!("error: {err}");
                    1
                }
            }
        }
        Method::Oracle => match crate::oracle::phi2_plackett_quadrature(x, y, rho, 1e-13) {
            Ok(q) => {
                println!("value {}", csv_f64(q.value));
                println!("method oracle");
                println!("error_estimate {}", csv_f64(q.error_estimate));
                println!("converged {}", q.converged);
                if q.converged {
                    0
                } else {
                    1
                }
            }
            Err(err) => usage_error(&err.to_string()),
        },
        Method::Alternating => usage_error("alternating evaluates --owen-t, not --phi2"),
    }
}
