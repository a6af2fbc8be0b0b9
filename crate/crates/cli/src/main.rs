//! `twistvol`: hyperbolic invariants of twist-link cone-manifolds W_p(α, β).

use clap::{Args, Parser, Subcommand};
use twistvol_cli::angles::parse_angle;
use twistvol_cli::output::Format;
use twistvol_cli::run::{
    cmd_check, cmd_lengths, cmd_regime, cmd_roots, cmd_sweep, cmd_volume, CmdOutput, Quantities,
};
use twistvol_cli::EXIT_USAGE;

#[derive(Parser)]
#[command(
    name = "twistvol",
    version,
    about = "Volumes, geodesic lengths, and holonomy checks for twist-link cone-manifolds W_p(alpha, beta)",
    after_help = "Angles are radians by default; pass --degrees for degrees, or use pi literals \
                  such as pi/3, 2pi/5, 0.5pi (always radians). Exit codes: 0 ok, 1 usage, \
                  2 outside the hyperbolic regime, 3 check-suite failure."
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct PointArgs {
    /// Twist parameter of the link W_p
    #[arg(long)]
    p: u32,
    /// Cone angle of the first component
    #[arg(long)]
    alpha: String,
    /// Cone angle of the second component
    #[arg(long)]
    beta: String,
    /// Interpret plain decimal angles as degrees
    #[arg(long)]
    degrees: bool,
    /// Output format
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

#[derive(Subcommand)]
enum Cmd {
    /// Hyperbolic volume of W_p(alpha, beta) (p = 1 or 2)
    Volume {
        #[command(flatten)]
        point: PointArgs,
        /// Quadrature error target
        #[arg(long)]
        tolerance: Option<f64>,
    },
    /// Complex and real lengths of the singular geodesics (p = 1, 2, 3)
    Lengths {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Selected distance-equation and zeta roots with residuals
    Roots {
        #[command(flatten)]
        point: PointArgs,
    },
    /// Geometric regime of W_2(alpha, alpha) from the diagonal discriminant
    Regime {
        /// Diagonal cone angle
        #[arg(long)]
        alpha: String,
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Run the built-in identity suites (exit 3 on failure)
    Check {
        /// Suite name (all, tangent-rule, sine-rule, cosine-rule, oracle,
        /// schlafli, halving, w1-cusp, diagonal, regime)
        #[arg(long, default_value = "all")]
        suite: String,
        /// Restrict p-parametrized suites to one p
        #[arg(long)]
        p: Option<u32>,
        #[arg(long, value_enum, default_value = "table")]
        format: Format,
    },
    /// Evaluate a rectangular (alpha, beta) grid, one record per point
    Sweep {
        #[arg(long)]
        p: u32,
        /// start,stop,steps (angles accept pi literals)
        #[arg(long, value_name = "START,STOP,STEPS")]
        alpha_range: String,
        #[arg(long, value_name = "START,STOP,STEPS")]
        beta_range: String,
        /// Comma list of: volume, lengths, zeta, regime, residuals, all
        #[arg(long, default_value = "all")]
        quantities: String,
        #[arg(long)]
        degrees: bool,
        #[arg(long, value_enum, default_value = "csv")]
        format: Format,
        #[arg(long)]
        tolerance: Option<f64>,
    },
}

fn parse_range(spec: &str, degrees: bool) -> Result<(f64, f64, usize), String> {
    let parts: Vec<&str> = spec.split(',').map(str::trim).collect();
    if parts.len() != 3 {
        return Err(format!("range '{spec}' must be start,stop,steps"));
    }
    let start = parse_angle(parts[0], degrees)?;
    let stop = parse_angle(parts[1], degrees)?;
    let steps: usize = parts[2]
        .parse()
        .map_err(|_| format!("bad step count '{}'", parts[2]))?;
    Ok((start, stop, steps))
}

fn dispatch(cli: Cli) -> CmdOutput {
    match cli.cmd {
        Cmd::Volume { point, tolerance } => {
            match (
                parse_angle(&point.alpha, point.degrees),
                parse_angle(&point.beta, point.degrees),
            ) {
                (Ok(a), Ok(b)) => cmd_volume(point.p, a, b, tolerance, point.format),
                (Err(e), _) | (_, Err(e)) => usage(e),
            }
        }
        Cmd::Lengths { point } => {
            match (
                parse_angle(&point.alpha, point.degrees),
                parse_angle(&point.beta, point.degrees),
            ) {
                (Ok(a), Ok(b)) => cmd_lengths(point.p, a, b, point.format),
                (Err(e), _) | (_, Err(e)) => usage(e),
            }
        }
        Cmd::Roots { point } => {
            match (
                parse_angle(&point.alpha, point.degrees),
                parse_angle(&point.beta, point.degrees),
            ) {
                (Ok(a), Ok(b)) => cmd_roots(point.p, a, b, point.format),
                (Err(e), _) | (_, Err(e)) => usage(e),
            }
        }
        Cmd::Regime {
            alpha,
            degrees,
            format,
        } => match parse_angle(&alpha, degrees) {
            Ok(a) => cmd_regime(a, format),
            Err(e) => usage(e),
        },
        Cmd::Check { suite, p, format } => cmd_check(&suite, p, format),
        Cmd::Sweep {
            p,
            alpha_range,
            beta_range,
            quantities,
            degrees,
            format,
            tolerance,
        } => {
            let ar = match parse_range(&alpha_range, degrees) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let br = match parse_range(&beta_range, degrees) {
                Ok(r) => r,
                Err(e) => return usage(e),
            };
            let q = match Quantities::parse(&quantities) {
                Ok(q) => q,
                Err(e) => return usage(e),
            };
            cmd_sweep(p, ar, br, q, tolerance, format)
        }
    }
}

fn usage(msg: String) -> CmdOutput {
    CmdOutput {
        stdout: String::new(),
        stderr: format!("error: {msg}"),
        exit: EXIT_USAGE,
    }
}

fn main() {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            // --help/--version print and exit 0; genuine usage errors exit 1
            let kind = e.kind();
            let _ = e.print();
            let code = match kind {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => 0,
                _ => EXIT_USAGE,
            };
            std::process::exit(code);
        }
    };
    let out = dispatch(cli);
    if !out.stdout.is_empty() {
        println!("{}", out.stdout);
    }
    if !out.stderr.is_empty() {
        eprintln!("{}", out.stderr);
    }
    std::process::exit(out.exit);
}
