//! Command-line front end; all real work lives in `bivnorm::cli`.
//!
//! `-h` is the height argument, not help, so automatic help flags are
//! disabled and `--help` is registered by hand on every level.

use clap::{Arg, ArgAction, ArgMatches, Command};

use bivnorm::cli::compare::{cmd_compare, CompareArgs};
use bivnorm::cli::grid::{cmd_grid, GridArgs};
use bivnorm::cli::random::{cmd_random, RandomArgs};
use bivnorm::cli::{cmd_eval, parse_variant, usage_error, EvalArgs, Method, Target};
use bivnorm::SeriesVariant;

fn help_arg() -> Arg {
    Arg::new("help")
        .long("help")
        .action(ArgAction::Help)
        .help("Print help")
}

fn float_arg(id: &'static str) -> Arg {
    Arg::new(id)
        .long(id)
        .allow_hyphen_values(true)
        .value_parser(clap::value_parser!(f64))
}

fn target_args(cmd: Command) -> Command {
    cmd.arg(
        Arg::new("owen-t")
            .long("owen-t")
            .action(ArgAction::SetTrue)
            .conflicts_with("phi2")
            .help("Operate on Owen's T function"),
    )
    .arg(
        Arg::new("phi2")
            .long("phi2")
            .action(ArgAction::SetTrue)
            .help("Operate on the bivariate normal CDF"),
    )
}

fn out_arg() -> Arg {
    Arg::new("out")
        .long("out")
        .value_parser(clap::value_parser!(std::path::PathBuf))
        .help("Write CSV here instead of stdout (summary then goes to stdout)")
}

fn cli() -> Command {
    Command::new("bivnorm")
        .about("Owen's T function and the bivariate standard normal CDF")
        .disable_help_flag(true)
        .arg(help_arg())
        .subcommand_required(true)
        .arg_required_else_help(true)
        .subcommand(target_args(
            Command::new("eval")
                .about("Evaluate a single point with diagnostics")
                .disable_help_flag(true)
                .arg(help_arg())
                .arg(
                    float_arg("height")
                        .short('h')
                        .help("Height h (Owen T) or first coordinate x (Phi2)"),
                )
                .arg(float_arg("x").help("Alias for the first coordinate"))
                .arg(float_arg("y").short('y').help("Second coordinate for --phi2 (default 0)"))
                .arg(float_arg("r").help("Slope for --owen-t"))
                .arg(float_arg("rho").help("Correlation in [-1, 1]"))
                .arg(
                    Arg::new("method")
                        .long("method")
                        .default_value("novel")
                        .help("novel | tetrachoric | tetrachoric-accelerated | alternating | oracle"),
                )
                .arg(
                    Arg::new("variant")
                        .long("variant")
                        .default_value("atan-ext-yes")
                        .help("atan-ext-no | atan-ext-yes"),
                )
                .arg(
                    float_arg("eps")
                        .default_value("-1.0")
                        .help("Stopping threshold; non-positive runs to stagnation"),
                ),
        ))
        .subcommand(
            Command::new("grid")
                .about("Owen T error and iteration profile over the canonical 39,999-point grid")
                .disable_help_flag(true)
                .arg(help_arg())
                .arg(
                    Arg::new("method")
                        .long("method")
                        .default_value("novel")
                        .help("novel | alternating | oracle"),
                )
                .arg(
                    Arg::new("variant")
                        .long("variant")
                        .help("Restrict novel to one variant: atan-ext-no | atan-ext-yes"),
                )
                .arg(
                    float_arg("eps")
                        .default_value("-1.0")
                        .help("Stopping threshold; non-positive runs to stagnation"),
                )
                .arg(out_arg()),
        )
        .subcommand(target_args(
            Command::new("random")
                .about("Randomized comparison against the quadrature oracles")
                .disable_help_flag(true)
                .arg(help_arg())
                .arg(
                    Arg::new("count")
                        .long("count")
                        .default_value("1000000")
                        .value_parser(clap::value_parser!(usize))
                        .help("Number of random draws"),
                )
                .arg(
                    Arg::new("seed")
                        .long("seed")
                        .default_value("1")
                        .value_parser(clap::value_parser!(u64))
                        .help("SplitMix64 seed"),
                )
                .arg(
                    Arg::new("star")
                        .long("star")
                        .action(ArgAction::SetTrue)
                        .help("Warp correlations toward |rho| near 1"),
                )
                .arg(
                    Arg::new("subsample")
                        .long("subsample")
                        .default_value("10000")
                        .value_parser(clap::value_parser!(usize))
                        .help("Leading draws that get a full oracle comparison"),
                )
                .arg(
                    Arg::new("oracle-tol")
                        .long("oracle-tol")
                        .default_value("1e-13")
                        .allow_hyphen_values(true)
                        .value_parser(clap::value_parser!(f64))
                        .help("Quadrature tolerance for the oracle"),
                )
                .arg(out_arg()),
        ))
        .subcommand(
            Command::new("compare")
                .about("Working-precision ladder on two closed-form boundary points")
                .disable_help_flag(true)
                .arg(help_arg())
                .arg(
                    Arg::new("precision-bits")
                        .long("precision-bits")
                        .value_delimiter(',')
                        .value_parser(clap::value_parser!(u32))
                        .help("Comma-separated ladder, e.g. 53,64,128 (default up to 1024)"),
                )
                .arg(out_arg()),
        )
}

fn target_of(matches: &ArgMatches, default: Target) -> Target {
    if matches.get_flag("owen-t") {
        Target::OwenT
    } else if matches.get_flag("phi2") {
        Target::Phi2
    } else {
        default
    }
}

fn main() {
    let matches = cli().get_matches();
    let code = match matches.subcommand() {
        Some(("eval", m)) => run_eval(m),
        Some(("grid", m)) => run_grid(m),
        Some(("random", m)) => run_random(m),
        Some(("compare", m)) => run_compare(m),
        _ => unreachable!("subcommand is required"),
    };
    std::process::exit(code);
}

fn run_eval(m: &ArgMatches) -> i32 {
    if !m.get_flag("owen-t") && !m.get_flag("phi2") {
        return usage_error("eval needs --owen-t or --phi2");
    }
    let method: Method = match m.get_one::<String>("method").unwrap().parse() {
        Ok(v) => v,
        Err(msg) => return usage_error(&msg),
    };
    let variant: SeriesVariant = match parse_variant(m.get_one::<String>("variant").unwrap()) {
        Ok(v) => v,
        Err(msg) => return usage_error(&msg),
    };
    let h = match (m.get_one::<f64>("height"), m.get_one::<f64>("x")) {
        (Some(h), None) => *h,
        (None, Some(x)) => *x,
        (Some(_), Some(_)) => return usage_error("-h and --x are the same argument; pass one"),
        (None, None) => return usage_error("eval needs the first coordinate: -h (or --x)"),
    };
    let args = EvalArgs {
        target: target_of(m, Target::OwenT),
        h,
        y: m.get_one::<f64>("y").copied().unwrap_or(0.0),
        slope: m.get_one::<f64>("r").copied(),
        rho: m.get_one::<f64>("rho").copied(),
        method,
        variant,
        eps: *m.get_one::<f64>("eps").unwrap(),
    };
    cmd_eval(&args)
}

fn run_grid(m: &ArgMatches) -> i32 {
    let method: Method = match m.get_one::<String>("method").unwrap().parse() {
        Ok(v) => v,
        Err(msg) => return usage_error(&msg),
    };
    let variant = match m.get_one::<String>("variant") {
        Some(s) => match parse_variant(s) {
            Ok(v) => Some(v),
            Err(msg) => return usage_error(&msg),
        },
        None => None,
    };
    cmd_grid(&GridArgs {
        method,
        variant,
        eps: *m.get_one::<f64>("eps").unwrap(),
        out: m.get_one::<std::path::PathBuf>("out").cloned(),
    })
}

fn run_random(m: &ArgMatches) -> i32 {
    cmd_random(&RandomArgs {
        target: target_of(m, Target::Phi2),
        count: *m.get_one::<usize>("count").unwrap(),
        seed: *m.get_one::<u64>("seed").unwrap(),
        star: m.get_flag("star"),
        subsample: *m.get_one::<usize>("subsample").unwrap(),
        oracle_tol: *m.get_one::<f64>("oracle-tol").unwrap(),
        out: m.get_one::<std::path::PathBuf>("out").cloned(),
    })
}

fn run_compare(m: &ArgMatches) -> i32 {
    cmd_compare(&CompareArgs {
        precision_bits: m
            .get_many::<u32>("precision-bits")
            .map(|vals| vals.copied().collect()),
        out: m.get_one::<std::path::PathBuf>("out").cloned(),
    })
}
