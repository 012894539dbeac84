//! Command-line front end.
//!
//! Five subcommands expose the library: `coeffs`, `weights`, `verify`,
//! `converge`, and `stencil`. Scalars are read as exact fractions
//! (`"1/2"`), integers, or decimal literals expanded exactly
//! (`0.5` -> 1/2). Output is deterministic: identical invocations produce
//! byte-identical output.
//!
//! Exit codes: 0 success, 1 domain or verification failure, 2 usage
//! error.

use std::fs;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::error::Error;
use crate::generator::{BetaVectorDoc, GeneratorSpec};
use crate::operator::{estimate_order_side, halving_spacings, Side};
use crate::scalar::{parse_rational, Rational};
use crate::stencil::{integer_stencil, render_stencil, RenderFormat};
use crate::verify::{verify_order, verify_vector};
use crate::weights::miller_weights;

#[derive(Parser, Debug)]
#[command(
    name = "grunwald",
    version,
    about = "Grünwald-type approximations of fractional derivatives and finite-difference stencils"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct SpecArgs {
    /// Fractional order alpha, as "num/den", integer, or decimal
    #[arg(long)]
    alpha: String,
    /// Approximation order p >= 1
    #[arg(long)]
    p: usize,
    /// Shift r, as "num/den", integer, or decimal
    #[arg(long)]
    r: String,
}

impl SpecArgs {
    fn to_spec(&self) -> Result<GeneratorSpec<Rational>, Error> {
        GeneratorSpec::new(
            parse_rational(&self.alpha)?,
            self.p,
            parse_rational(&self.r)?,
        )
    }
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Generator-polynomial coefficients for (alpha, p, r)
    Coeffs {
        #[command(flatten)]
        spec: SpecArgs,
        /// Output format: json
        #[arg(long, default_value = "json")]
        format: String,
        /// Write output to a file instead of standard output
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Expand the Grünwald weight sequence w_0..w_M
    Weights {
        #[command(flatten)]
        spec: SpecArgs,
        /// Truncation length M (produces M+1 weights)
        #[arg(long = "M")]
        m: usize,
        /// Output format: csv
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Verify the approximation order symbolically
    Verify {
        #[command(flatten)]
        spec: SpecArgs,
        /// Series truncation order (default p + 4)
        #[arg(long = "K")]
        k: Option<usize>,
        /// Verify the coefficients stored in this JSON file instead of
        /// regenerating them
        #[arg(long)]
        beta: Option<PathBuf>,
        /// Output format: json
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Empirical convergence study against the closed-form derivative of
    /// x^mu on [0, 2 x0]
    Converge {
        #[command(flatten)]
        spec: SpecArgs,
        /// Power of the test function
        #[arg(long, default_value_t = 8.0)]
        mu: f64,
        /// Evaluation point
        #[arg(long, default_value_t = 1.0)]
        x0: f64,
        /// Largest grid spacing
        #[arg(long = "h-start", default_value_t = 0.0625)]
        h_start: f64,
        /// Number of spacings (halved each step)
        #[arg(long = "h-count", default_value_t = 6)]
        h_count: usize,
        /// Operator side: left or right
        #[arg(long, default_value = "left")]
        side: String,
        /// Output format: csv
        #[arg(long, default_value = "csv")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Finite-difference stencil for the n-th derivative
    Stencil {
        /// Derivative order n >= 1
        #[arg(long)]
        n: usize,
        /// Accuracy order p >= 1
        #[arg(long)]
        p: usize,
        /// Shift r
        #[arg(long)]
        r: String,
        /// Output format: json or text
        #[arg(long, default_value = "json")]
        format: String,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Parse the process arguments, dispatch, and return the exit code.
pub fn run() -> i32 {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let (destination, result) = dispatch(cli.command);
    let (output, code) = match result {
        Ok(pair) => pair,
        Err(e) => {
            eprintln!("error: {e}");
            return exit_class(&e);
        }
    };
    match destination {
        None => {
            print!("{output}");
            code
        }
        Some(path) => match fs::write(&path, &output) {
            Ok(()) => code,
            Err(e) => {
                eprintln!("error: cannot write {}: {e}", path.display());
                1
            }
        },
    }
}

type CmdResult = Result<(String, i32), Error>;

fn dispatch(command: Command) -> (Option<PathBuf>, CmdResult) {
    match command {
        Command::Coeffs { spec, format, out } => (out, cmd_coeffs(spec, &format)),
        Command::Weights { spec, m, format, out } => (out, cmd_weights(spec, m, &format)),
        Command::Verify { spec, k, beta, format, out } => {
            (out, cmd_verify(spec, k, beta, &format))
        }
        Command::Converge { spec, mu, x0, h_start, h_count, side, format, out } => {
            (out, cmd_converge(spec, mu, x0, h_start, h_count, &side, &format))
        }
        Command::Stencil { n, p, r, format, out } => (out, cmd_stencil(n, p, &r, &format)),
    }
}

/// 2 for malformed input, 1 for domain failures.
fn exit_class(e: &Error) -> i32 {
    match e {
        Error::Parse(_)
        | Error::UnknownFormat(_)
        | Error::InvalidSpec(_)
        | Error::ZeroAlpha => 2,
        _ => 1,
    }
}

fn require_format(format: &str, allowed: &[&str]) -> Result<(), Error> {
    if allowed.contains(&format) {
        Ok(())
    } else {
        Err(Error::UnknownFormat(format.to_string()))
    }
}

fn cmd_coeffs(args: SpecArgs, format: &str) -> CmdResult {
    require_format(format, &["json"])?;
    let spec = args.to_spec()?;
    let beta = spec.beta()?;
    let doc = BetaVectorDoc::from_parts(&spec, &beta);
    let json = serde_json::to_string(&doc).expect("coefficients serialize");
    Ok((format!("{json}\n"), 0))
}

fn cmd_weights(args: SpecArgs, m: usize, format: &str) -> CmdResult {
    require_format(format, &["csv"])?;
    let spec = args.to_spec()?;
    let w = miller_weights(&spec.beta()?, &spec.alpha, m)?;
    Ok((w.to_csv(), 0))
}

fn cmd_verify(
    args: SpecArgs,
    k: Option<usize>,
    beta_file: Option<PathBuf>,
    format: &str,
) -> CmdResult {
    require_format(format, &["json"])?;
    let (spec, report) = match beta_file {
        None => {
            let spec = args.to_spec()?;
            let k = k.unwrap_or(spec.p + 4);
            let report = verify_order(&spec, k)?;
            (spec, report)
        }
        Some(path) => {
            let text = fs::read_to_string(&path)?;
            let doc: BetaVectorDoc =
                serde_json::from_str(&text).map_err(|e| Error::Parse(e.to_string()))?;
            let (spec, beta) = doc.to_parts()?;
            let k = k.unwrap_or(spec.p + 4);
            let report = verify_vector(&spec, &beta, k)?;
            (spec, report)
        }
    };
    let achieved = report.confirmed_order >= spec.p;
    let json = serde_json::to_string(&report.to_doc()).expect("report serializes");
    Ok((format!("{json}\n"), if achieved { 0 } else { 1 }))
}

fn cmd_converge(
    args: SpecArgs,
    mu: f64,
    x0: f64,
    h_start: f64,
    h_count: usize,
    side: &str,
    format: &str,
) -> CmdResult {
    require_format(format, &["csv"])?;
    let spec = args.to_spec()?;
    let side: Side = side.parse()?;
    let table = estimate_order_side(&spec, mu, x0, &halving_spacings(h_start, h_count), side)?;
    Ok((table.to_csv(), 0))
}

fn cmd_stencil(n: usize, p: usize, r: &str, format: &str) -> CmdResult {
    let format: RenderFormat = format.parse()?;
    let stencil = integer_stencil(n, p, &parse_rational(r)?)?;
    Ok((format!("{}\n", render_stencil(&stencil, format)), 0))
}
