//! `fgtrace`: character tables, coset multiplicities and trace identities
//! for finite groups.
//!
//! Exit status: 0 when every check passes, 1 when a verification fails,
//! 2 for invalid input.

mod commands;
mod input;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use fgtrace::{Error, FunctionSpec, Tolerances};

use crate::commands::{Perturb, Setup};
use crate::input::{resolve_group, SubgroupChoice};
use crate::output::{Format, Report};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Verification(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Input(_) => 2,
        }
    }
}

impl From<Error> for CliError {
    fn from(e: Error) -> Self {
        match e {
            Error::DegenerateSpectrum { .. }
            | Error::OrthogonalityFailure { .. }
            | Error::NonIntegralDegree { .. }
            | Error::NonIntegralMultiplicity { .. }
            | Error::DimensionMismatch { .. } => CliError::Verification(e.to_string()),
            _ => CliError::Input(e.to_string()),
        }
    }
}

#[derive(Debug, Parser)]
#[command(
    name = "fgtrace",
    version,
    about = "Harmonic analysis on finite groups"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    common: Common,
}

#[derive(Debug, Args)]
struct Common {
    /// `catalog:<name>` or a TOML run file
    #[arg(long, global = true)]
    group: Option<String>,
    /// Generating elements (`1,4`), `full` or `trivial`; empty means trivial
    #[arg(long, global = true)]
    subgroup: Option<String>,
    /// Dimension of the coefficient space V [default: 1]
    #[arg(long, global = true)]
    dimv: Option<usize>,
    /// Relative tolerance for comparisons and integer rounding
    #[arg(long, global = true, default_value_t = 1e-6)]
    tol: f64,
    /// Seed for the character-table weights and random functions
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// Write to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Largest matrix the direct trace route may build
    #[arg(long, global = true, default_value_t = fgtrace::trace::DEFAULT_ORACLE_CAP)]
    oracle_cap: usize,
    /// Add <delta> to one character value: <irrep>:<class>:<delta>
    #[arg(long, global = true)]
    perturb: Option<Perturb>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List the built-in groups
    Catalog,
    /// Order, elements and inverses
    Info,
    /// Conjugacy classes
    Classes,
    /// Character table
    Chartable,
    /// Fixed cosets of each element
    FixedPoints,
    /// Multiplicity of each irreducible in L2(Gamma\G, V)
    Multiplicities,
    /// Trace of R(f) along every route
    Trace {
        /// `delta:<g>`, `class:<k>`, `constant:<re>[,<im>]` or `random:<seed>`; repeatable
        #[arg(long = "function")]
        functions: Vec<FunctionSpec>,
    },
    /// Run every identity check
    Verify {
        /// Sweep the whole catalog instead of one group
        #[arg(long)]
        all: bool,
        /// Number of random test functions
        #[arg(long, default_value_t = 5)]
        seeds: usize,
    },
}

fn setup(common: &Common, functions: &[FunctionSpec]) -> Result<Setup, CliError> {
    let arg = common
        .group
        .as_deref()
        .ok_or_else(|| CliError::Input("--group is required".into()))?;
    let source = resolve_group(arg)?;
    let file = source.file.as_ref();
    let subgroup = match &common.subgroup {
        Some(s) => s.parse()?,
        None => file
            .and_then(|f| f.subgroup.clone())
            .unwrap_or(SubgroupChoice::Trivial),
    };
    let dimv = common.dimv.or(file.and_then(|f| f.dimv)).unwrap_or(1);
    let functions = if functions.is_empty() {
        file.map(|f| f.functions.clone()).unwrap_or_default()
    } else {
        functions.to_vec()
    };
    Ok(Setup {
        name: source.name,
        spec: source.spec,
        subgroup,
        dimv,
        tol: tolerances(common.tol)?,
        seed: common.seed,
        oracle_cap: common.oracle_cap,
        perturb: common.perturb,
        functions,
    })
}

fn tolerances(tol: f64) -> Result<Tolerances, CliError> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(CliError::Input(format!(
            "--tol must be positive, got {tol}"
        )));
    }
    Ok(Tolerances::uniform(tol))
}

fn run(cli: &Cli) -> Result<Report, CliError> {
    let c = &cli.common;
    match &cli.command {
        Command::Catalog => Ok(commands::catalog_list()),
        Command::Info => commands::info(&setup(c, &[])?),
        Command::Classes => commands::classes(&setup(c, &[])?),
        Command::Chartable => commands::chartable(&setup(c, &[])?),
        Command::FixedPoints => commands::fixed_points(&setup(c, &[])?),
        Command::Multiplicities => commands::multiplicities(&setup(c, &[])?),
        Command::Trace { functions } => commands::trace(&setup(c, functions)?),
        Command::Verify { all: false, seeds } => commands::verify(&setup(c, &[])?, *seeds),
        Command::Verify { all: true, seeds } => {
            if c.group.is_some() || c.subgroup.is_some() {
                return Err(CliError::Input(
                    "--all sweeps the catalog; drop --group and --subgroup".into(),
                ));
            }
            let dims: Vec<usize> = match c.dimv {
                Some(d) => vec![d],
                None => vec![1, 2, 3],
            };
            let s = Setup {
                name: String::new(),
                spec: input::GroupSpec::Named {
                    name: String::new(),
                },
                subgroup: SubgroupChoice::Trivial,
                dimv: dims[0],
                tol: tolerances(c.tol)?,
                seed: c.seed,
                oracle_cap: c.oracle_cap,
                perturb: c.perturb,
                functions: Vec::new(),
            };
            commands::verify_catalog(&s, &dims, *seeds)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = run(&cli).and_then(|report| {
        let rendered = report.render(cli.common.format)?;
        match &cli.common.out {
            Some(path) => std::fs::write(path, &rendered)
                .map_err(|e| CliError::Input(format!("cannot write {}: {e}", path.display())))?,
            None => print!("{rendered}"),
        }
        // text output already carries its warnings
        if cli.common.format != Format::Text || cli.common.out.is_some() {
            for w in &report.warnings {
                eprintln!("warning: {w}");
            }
        }
        Ok(report.pass)
    });
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
