//! `semihilb` — zeta functions, subsemimodule trees and point-count
//! verification for numerical-semigroup curve singularities.
//!
//! Exit codes: `0` success, `1` I/O failure, `2` usage or unsupported input,
//! `3` no stabilization within the requested colength (the series is still
//! printed), `4` the two symbolic class methods disagree, `5` oracle
//! mismatches in `verify`, `6` a work budget was exceeded.

mod render;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use semihilb::motivic::zeta_series;
use semihilb::oracle::{verify_classes, DEFAULT_POINT_BUDGET};
use semihilb::strata::{homfly_pq, motivic_gen_zeta};
use semihilb::tree::build_tree;
use semihilb::{Error, NumericalSemigroup};

#[derive(Parser)]
#[command(
    name = "semihilb",
    version,
    about = "Hilbert zeta functions of numerical-semigroup curve singularities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Motivic Hilbert zeta function: one class [C^[l]] per colength
    Zeta(ZetaArgs),
    /// Subsemimodule tree with generator-deletion edges
    Tree(TreeArgs),
    /// Zeta function refined by minimal generator count, optionally with HOMFLY
    Genzeta(GenzetaArgs),
    /// Finite-field point counts checked against the symbolic classes
    Verify(VerifyArgs),
}

#[derive(Args)]
struct CommonArgs {
    /// Semigroup generators, comma separated (e.g. 3,7)
    #[arg(long, value_delimiter = ',', required = true)]
    gens: Vec<u64>,

    /// Largest colength to enumerate; defaults to 2*delta + max generator
    #[arg(long)]
    lmax: Option<u64>,

    /// Write the report to this path (atomically) instead of stdout
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum SeriesFormat {
    Text,
    Json,
    Latex,
}

#[derive(Copy, Clone, ValueEnum)]
enum TreeFormat {
    Text,
    Json,
    Dot,
}

#[derive(Copy, Clone, ValueEnum)]
enum VerifyFormat {
    Text,
    Json,
    Csv,
}

#[derive(Args)]
struct ZetaArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output format
    #[arg(long, env = "SEMIHILB_FORMAT", default_value = "text")]
    format: SeriesFormat,
}

#[derive(Args)]
struct TreeArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output format
    #[arg(long, env = "SEMIHILB_FORMAT", default_value = "text")]
    format: TreeFormat,
}

#[derive(Args)]
struct GenzetaArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output format
    #[arg(long, env = "SEMIHILB_FORMAT", default_value = "text")]
    format: SeriesFormat,

    /// Exponent offset: the m-generator stratum contributes s^(m - offset)
    #[arg(long, default_value_t = 1)]
    offset: u8,

    /// Append the HOMFLY polynomial of the associated torus knot
    #[arg(long)]
    homfly: bool,
}

#[derive(Args)]
struct VerifyArgs {
    #[command(flatten)]
    common: CommonArgs,

    /// Output format
    #[arg(long, env = "SEMIHILB_FORMAT", default_value = "text")]
    format: VerifyFormat,

    /// Prime fields to count points over, comma separated
    #[arg(long, value_delimiter = ',', default_value = "2,3")]
    fields: Vec<u64>,
}

#[derive(Debug)]
enum CliError {
    Lib(Error),
    Io(std::io::Error),
    Usage(String),
}

impl From<Error> for CliError {
    fn from(err: Error) -> Self {
        CliError::Lib(err)
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        CliError::Io(err)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Lib(err) => write!(f, "{err}"),
            CliError::Io(err) => write!(f, "{err}"),
            CliError::Usage(msg) => write!(f, "{msg}"),
        }
    }
}

fn exit_code(err: &CliError) -> u8 {
    match err {
        CliError::Usage(_) => 2,
        CliError::Io(_) => 1,
        CliError::Lib(err) => match err {
            Error::NoStabilization { .. } => 3,
            Error::MethodDisagreement { .. } => 4,
            Error::BudgetExceeded { .. } | Error::InterpolationBudgetExceeded { .. } => 6,
            Error::TruncationTooSmall | Error::NotAnIdeal => 1,
            _ => 2,
        },
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(exit_code(&err))
        }
    }
}

fn run(cli: Cli) -> Result<u8, CliError> {
    match cli.command {
        Command::Zeta(args) => cmd_zeta(args),
        Command::Tree(args) => cmd_tree(args),
        Command::Genzeta(args) => cmd_genzeta(args),
        Command::Verify(args) => cmd_verify(args),
    }
}

/// Builds the semigroup and resolves `--lmax`, widening the colength budget
/// when the requested range exceeds the default.
fn build_semigroup(common: &CommonArgs) -> Result<(Arc<NumericalSemigroup>, u64), CliError> {
    let probe = NumericalSemigroup::new(&common.gens)?;
    let default_lmax = 2 * probe.delta() + probe.generators().last().copied().unwrap_or(1);
    let lmax = common.lmax.unwrap_or(default_lmax);
    let semigroup = if lmax > probe.colength_budget() {
        NumericalSemigroup::with_budget(&common.gens, lmax)?
    } else {
        probe
    };
    Ok((Arc::new(semigroup), lmax))
}

/// Prints to stdout, or writes to `--output` via a sibling temp file and an
/// atomic rename so readers never observe a partial report.
fn emit(output: Option<&Path>, content: &str) -> Result<(), CliError> {
    let Some(path) = output else {
        print!("{content}");
        return Ok(());
    };
    let Some(file_name) = path.file_name() else {
        return Err(CliError::Usage(format!(
            "--output {} has no file name",
            path.display()
        )));
    };
    let mut tmp_name = file_name.to_os_string();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    fs::write(&tmp, content)?;
    fs::rename(&tmp, path)?;
    Ok(())
}

fn cmd_zeta(args: ZetaArgs) -> Result<u8, CliError> {
    let (semigroup, lmax) = build_semigroup(&args.common)?;
    let series = zeta_series(&semigroup, lmax)?;
    let rendered = match args.format {
        SeriesFormat::Text => render::zeta_text(&semigroup, lmax, &series),
        SeriesFormat::Json => render::zeta_json(&series),
        SeriesFormat::Latex => render::zeta_latex(&semigroup, lmax, &series),
    };
    emit(args.common.output.as_deref(), &rendered)?;
    if series.numerator.is_none() {
        eprintln!("warning: no stable tail within colength {lmax}; rational form omitted");
        return Ok(3);
    }
    Ok(0)
}

fn cmd_tree(args: TreeArgs) -> Result<u8, CliError> {
    let (semigroup, lmax) = build_semigroup(&args.common)?;
    let tree = build_tree(&semigroup, lmax)?;
    let rendered = match args.format {
        TreeFormat::Text => render::tree_text(&tree),
        TreeFormat::Json => render::tree_json(&tree),
        TreeFormat::Dot => render::tree_dot(&tree),
    };
    emit(args.common.output.as_deref(), &rendered)?;
    Ok(0)
}

fn cmd_genzeta(args: GenzetaArgs) -> Result<u8, CliError> {
    if args.offset > 1 {
        return Err(CliError::Usage(format!(
            "--offset must be 0 or 1, got {}",
            args.offset
        )));
    }
    let (semigroup, lmax) = build_semigroup(&args.common)?;
    let series = motivic_gen_zeta(&semigroup, lmax, args.offset)?;
    let mut code = 0;
    let homfly = if args.homfly {
        let (p, q) = semigroup.pq()?;
        match homfly_pq(p, q, lmax) {
            Ok(h) => Some(h),
            Err(Error::NoStabilization { .. }) => {
                eprintln!("warning: no stable tail within colength {lmax}; HOMFLY omitted");
                code = 3;
                None
            }
            Err(err) => return Err(err.into()),
        }
    } else {
        None
    };
    let rendered = match args.format {
        SeriesFormat::Text => render::genzeta_text(&semigroup, &series, homfly.as_ref()),
        SeriesFormat::Json => render::genzeta_json(&series, homfly.as_ref()),
        SeriesFormat::Latex => render::genzeta_latex(&semigroup, &series, homfly.as_ref()),
    };
    emit(args.common.output.as_deref(), &rendered)?;
    Ok(code)
}

fn cmd_verify(args: VerifyArgs) -> Result<u8, CliError> {
    if args.fields.is_empty() {
        return Err(CliError::Usage("at least one prime field is required".into()));
    }
    for &p in &args.fields {
        if !is_prime(p) {
            return Err(CliError::Usage(format!("field size {p} is not prime")));
        }
    }
    let (semigroup, lmax) = build_semigroup(&args.common)?;
    let report = verify_classes(&semigroup, lmax, &args.fields, DEFAULT_POINT_BUDGET)?;
    let rendered = match args.format {
        VerifyFormat::Text => render::verify_text(&report),
        VerifyFormat::Json => render::verify_json(&report),
        VerifyFormat::Csv => render::verify_csv(&report),
    };
    emit(args.common.output.as_deref(), &rendered)?;
    if report.mismatches() > 0 {
        eprintln!("error: {} oracle mismatches", report.mismatches());
        return Ok(5);
    }
    Ok(0)
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}
