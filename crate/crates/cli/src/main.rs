//! `monogenic`: build bases of Dunkl monogenics and run the identity suites.

mod config;
mod emit;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use monogenic::{build_basis, run_suite, BasisKind, SUITES};

use config::{resolve_format, resolve_kind, ConfigError, FileConfig, Format, GroupFlags, Session};

#[derive(Parser, Debug)]
#[command(name = "monogenic", version, about = "Exact Dunkl monogenic bases and identity checks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a certified basis of M_n.
    Basis(BasisArgs),
    /// Run a named identity suite.
    Verify(VerifyArgs),
    /// Tabulate dim M_n against the certified rank.
    Dims(DimsArgs),
}

#[derive(Args, Debug, Clone)]
struct Common {
    /// TOML file with keys group, kappa, epsilon, degree, max_degree, suite, kind, format.
    #[arg(long)]
    config: Option<PathBuf>,
    /// z2^d or b2
    #[arg(long)]
    group: Option<String>,
    /// Comma-separated exact rationals, one per coordinate (z2^d) or short,long (b2).
    #[arg(long)]
    kappa: Option<String>,
    /// +1 or -1 (default -1)
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<String>,
    /// json, csv, latex or text
    #[arg(long)]
    format: Option<String>,
}

#[derive(Args, Debug)]
struct BasisArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    degree: Option<usize>,
    /// maxwell, ck or partial-z
    #[arg(long)]
    kind: Option<String>,
    /// Write to this file instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct VerifyArgs {
    #[command(flatten)]
    common: Common,
    #[arg(long)]
    suite: Option<String>,
    /// Highest input degree for operator identities (default 5).
    #[arg(long)]
    max_degree: Option<usize>,
}

#[derive(Args, Debug)]
struct DimsArgs {
    #[command(flatten)]
    common: Common,
    /// Tabulate n = 0..=max-degree (default 4).
    #[arg(long)]
    max_degree: Option<usize>,
}

enum Failure {
    Config(ConfigError),
    Check(String),
}

impl From<ConfigError> for Failure {
    fn from(e: ConfigError) -> Self {
        Failure::Config(e)
    }
}

fn load(common: &Common) -> Result<(FileConfig, Session), ConfigError> {
    let file = match &common.config {
        Some(p) => FileConfig::load(p)?,
        None => FileConfig::default(),
    };
    let flags = GroupFlags { group: common.group.clone(), kappa: common.kappa.clone(), eps: common.eps.clone() };
    let session = Session::resolve(&flags, &file)?;
    Ok((file, session))
}

fn write_out(text: &str, path: Option<&PathBuf>) -> Result<(), Failure> {
    match path {
        Some(p) => std::fs::write(p, text)
            .map_err(|source| Failure::Config(ConfigError::Write { path: p.display().to_string(), source })),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn cmd_basis(args: &BasisArgs) -> Result<(), Failure> {
    let (file, session) = load(&args.common)?;
    let kind: BasisKind = resolve_kind(args.kind.as_deref(), &file)?;
    session.require_z2_for(kind)?;
    let degree = args.degree.or(file.degree).ok_or(ConfigError::Missing("--degree"))?;
    let format = resolve_format(args.common.format.as_deref(), &file, Format::Json)?;
    let ctx = session.context()?;
    let basis = build_basis(&ctx, kind, degree).map_err(|e| Failure::Check(e.to_string()))?;
    let text = match format {
        Format::Json | Format::Text => emit::basis_json(&session, &basis),
        Format::Csv => emit::basis_csv(&basis),
        Format::Latex => emit::basis_latex(&session, &basis),
    };
    write_out(&text, args.output.as_ref())
}

fn cmd_verify(args: &VerifyArgs) -> Result<(), Failure> {
    let (file, session) = load(&args.common)?;
    let suite = args.suite.clone().or(file.suite.clone()).unwrap_or_else(|| "all".to_string());
    if !SUITES.contains(&suite.as_str()) {
        return Err(ConfigError::Suite(suite).into());
    }
    let max_degree = args.max_degree.or(file.max_degree).unwrap_or(5);
    let format = resolve_format(args.common.format.as_deref(), &file, Format::Text)?;
    let ctx = session.context()?;
    let report = run_suite(&ctx, &suite, max_degree).expect("suite name checked above");
    let text = match format {
        Format::Json => emit::report_json(&session, &report, max_degree),
        _ => emit::report_text(&report),
    };
    print!("{text}");
    if report.passed() {
        Ok(())
    } else {
        Err(Failure::Check(format!("{} of {} checks failed", report.failures(), report.checks.len())))
    }
}

fn cmd_dims(args: &DimsArgs) -> Result<(), Failure> {
    let (file, session) = load(&args.common)?;
    let top = args.max_degree.or(file.max_degree).unwrap_or(4);
    let format = resolve_format(args.common.format.as_deref(), &file, Format::Text)?;
    let ctx = session.context()?;
    let mut rows = Vec::new();
    for n in 0..=top {
        let basis = build_basis(&ctx, BasisKind::Maxwell, n).map_err(|e| Failure::Check(e.to_string()))?;
        rows.push((n, basis.certificate.expected, basis.certificate.rank));
    }
    let text = match format {
        Format::Text => emit::dims_text(&rows),
        Format::Csv => emit::dims_csv(&rows),
        Format::Json => emit::dims_json(&session, &rows),
        Format::Latex => emit::dims_latex(&rows),
    };
    print!("{text}");
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Basis(a) => cmd_basis(a),
        Command::Verify(a) => cmd_verify(a),
        Command::Dims(a) => cmd_dims(a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Config(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
