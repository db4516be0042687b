//! Command-line front end.
//!
//! Exit codes are a stable contract for CI use:
//! - 0: success (for `check`, the suite passed)
//! - 1: an identity suite failed (or `--verify` caught a violation)
//! - 2: usage, parse, or validation errors
//!
//! Carrier dimensions are capped at 64: every suite runs exhaustive basis
//! loops, so cost grows with the sixth power of the dimension.

use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use bihom::error::Error;
use bihom::format::AlgebraFile;
use bihom::identities::Suite;
use bihom::linalg::LinearMap;
use bihom::rational::Rat;
use bihom::report::{render, ReportFormat};
use bihom::run::{
    run_check, run_construct, run_gen, ConstructKind, ConstructParams, ElementSpec, GenFamily,
    GenParams,
};

#[derive(Parser)]
#[command(
    name = "bihom",
    about = "Exact identity checking and constructions for BiHom-Novikov-Poisson algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check an algebra file against a named identity suite.
    Check(CheckArgs),
    /// Apply a construction to one or two algebra files.
    Construct(ConstructArgs),
    /// Emit a generator-family instance as an algebra file.
    Gen(GenArgs),
}

#[derive(Args)]
struct CheckArgs {
    /// Input algebra file (JSON).
    file: PathBuf,
    /// Suite name: bihom-assoc, bihom-comm, bihom-novikov, bhnp-compat,
    /// bhnp, bihom-lie, bihom-leibniz, bihom-poisson, left-bihom-assoc,
    /// classical-np.
    suite: String,
    /// Report format.
    #[arg(long, default_value = "text")]
    format: String,
    /// Cap on stored witnesses per identity.
    #[arg(long, default_value_t = 16)]
    max_witnesses: usize,
}

#[derive(Args)]
struct ConstructArgs {
    /// Construction kind: yau-twist, twist-power, tensor, perturb-mu,
    /// perturb-thm1, perturb-thm2, perturb-double, derivation-bhnp,
    /// derivation-perturbed, bracket.
    kind: String,
    /// Input algebra file(s); tensor takes two.
    inputs: Vec<PathBuf>,
    /// Perturbation element: comma-separated rationals, or `auto` for the
    /// first fixed-subspace basis vector.
    #[arg(long, allow_hyphen_values = true)]
    element: Option<String>,
    /// Second perturbation element (perturb-double, derivation-perturbed).
    #[arg(long, allow_hyphen_values = true)]
    element_b: Option<String>,
    /// Twist power (twist-power).
    #[arg(long)]
    n: Option<u32>,
    /// First twisting map for yau-twist: row-major JSON matrix of rational
    /// strings, or @path to read it from a file.
    #[arg(long)]
    ta: Option<String>,
    /// Second twisting map for yau-twist.
    #[arg(long)]
    tb: Option<String>,
    /// Re-run the construction's promised identity suite on the output and
    /// fail if it does not pass.
    #[arg(long)]
    verify: bool,
    /// Output path (stdout when omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    /// Family: truncated-poly, nilpotent, zero.
    family: String,
    /// Carrier size for truncated-poly and zero.
    #[arg(long)]
    n: Option<usize>,
    /// Carrier size for nilpotent.
    #[arg(long)]
    m: Option<usize>,
    /// Scaling of the first structure map (rational).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    a: String,
    /// Scaling of the second structure map (rational).
    #[arg(long, default_value = "1", allow_hyphen_values = true)]
    b: String,
    /// Output path (stdout when omitted).
    #[arg(long, short)]
    out: Option<PathBuf>,
}

const EXIT_OK: u8 = 0;
const EXIT_SUITE_FAILED: u8 = 1;
const EXIT_ERROR: u8 = 2;

fn fail(msg: impl std::fmt::Display) -> u8 {
    eprintln!("error: {msg}");
    EXIT_ERROR
}

fn read_algebra(path: &PathBuf) -> Result<AlgebraFile, Error> {
    let text = fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    AlgebraFile::from_json(&text)
}

fn write_output(text: &str, out: &Option<PathBuf>) -> Result<(), Error> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Error::Parse(format!("cannot write {}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses a matrix argument: inline JSON `[["1","0"],["0","-1"]]` or
/// `@path` to a file holding the same JSON.
fn parse_matrix_arg(arg: &str, what: &str) -> Result<LinearMap, Error> {
    let text = match arg.strip_prefix('@') {
        Some(path) => fs::read_to_string(path)
            .map_err(|e| Error::Parse(format!("{what}: cannot read {path}: {e}")))?,
        None => arg.to_string(),
    };
    let rows: Vec<Vec<String>> = serde_json::from_str(&text)
        .map_err(|e| Error::Parse(format!("{what}: not a JSON matrix of strings: {e}")))?;
    let parsed = rows
        .iter()
        .map(|row| row.iter().map(|s| Rat::parse_canonical(s)).collect::<Result<Vec<_>, _>>())
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| Error::Parse(format!("{what}: {e}")))?;
    LinearMap::from_rows(parsed)
}

fn cmd_check(args: &CheckArgs) -> u8 {
    let format = match ReportFormat::parse(&args.format) {
        Some(f) => f,
        None => return fail(format!("unknown format {:?}; expected text or json", args.format)),
    };
    let suite = match Suite::parse(&args.suite) {
        Ok(s) => s,
        Err(e) => return fail(e),
    };
    let file = match read_algebra(&args.file) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    match run_check(&file, suite, args.max_witnesses) {
        Ok(report) => {
            print!("{}", render(&report, format));
            if report.passed() {
                EXIT_OK
            } else {
                EXIT_SUITE_FAILED
            }
        }
        Err(e) => fail(e),
    }
}

fn cmd_construct(args: &ConstructArgs) -> u8 {
    let kind = match ConstructKind::parse(&args.kind) {
        Ok(k) => k,
        Err(e) => return fail(e),
    };
    let mut inputs = Vec::new();
    for path in &args.inputs {
        match read_algebra(path) {
            Ok(f) => inputs.push(f),
            Err(e) => return fail(e),
        }
    }
    let element = match args.element.as_deref().map(ElementSpec::parse).transpose() {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let element_b = match args.element_b.as_deref().map(ElementSpec::parse).transpose() {
        Ok(e) => e,
        Err(e) => return fail(e),
    };
    let twist_alpha = match args.ta.as_deref().map(|m| parse_matrix_arg(m, "--ta")).transpose() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let twist_beta = match args.tb.as_deref().map(|m| parse_matrix_arg(m, "--tb")).transpose() {
        Ok(m) => m,
        Err(e) => return fail(e),
    };
    let params =
        ConstructParams { element, element_b, power: args.n, twist_alpha, twist_beta };
    match run_construct(kind, &inputs, &params, args.verify) {
        Ok(file) => match write_output(&file.to_json(), &args.out) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(e),
        },
        // A --verify violation is an identity failure, not a usage error.
        Err(Error::InvariantViolation(msg)) => {
            eprintln!("verification failed: {msg}");
            EXIT_SUITE_FAILED
        }
        Err(e) => fail(e),
    }
}

fn cmd_gen(args: &GenArgs) -> u8 {
    let family = match GenFamily::parse(&args.family) {
        Ok(f) => f,
        Err(e) => return fail(e),
    };
    let a_scale = match Rat::parse_canonical(&args.a) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let b_scale = match Rat::parse_canonical(&args.b) {
        Ok(r) => r,
        Err(e) => return fail(e),
    };
    let params = GenParams { n: args.n, m: args.m, a_scale, b_scale };
    match run_gen(family, &params) {
        Ok(file) => match write_output(&file.to_json(), &args.out) {
            Ok(()) => EXIT_OK,
            Err(e) => fail(e),
        },
        Err(e) => fail(e),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match &cli.command {
        Command::Check(args) => cmd_check(args),
        Command::Construct(args) => cmd_construct(args),
        Command::Gen(args) => cmd_gen(args),
    };
    ExitCode::from(code)
}
