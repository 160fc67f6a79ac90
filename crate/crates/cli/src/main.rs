//! `fident`: solve and check functional identities on triangular algebras.
//!
//! Exit status: 0 when every check passed, 1 when a report contains a failed
//! check, 2 on malformed input.

mod commands;
mod inputs;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Args, Parser, Subcommand};
use fident_core::replay::Theorem;

use commands::{Bindings, Expect, IdentitySource, Outcome};

#[derive(Parser)]
#[command(name = "fident", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build or inspect an algebra.
    #[command(subcommand)]
    Algebra(AlgebraCommand),
    /// Solve or check a functional identity.
    #[command(subcommand)]
    Identity(IdentityCommand),
    /// Work with a single linear map.
    #[command(subcommand)]
    Map(MapCommand),
    /// Re-check every step of a classification argument on concrete solutions.
    Replay(ReplayArgs),
    /// Check the background facts on derivations and Jordan derivations.
    Lemmas {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Subcommand)]
enum AlgebraCommand {
    /// Write the structure constants of a builtin or a triangular spec.
    Build {
        /// One of T2, T3, T4, M2, TriM2x1.
        #[arg(long, conflicts_with = "spec")]
        kind: Option<String>,
        /// JSON file with components `A`, `B` and bimodule `M`.
        #[arg(long)]
        spec: Option<PathBuf>,
        #[command(flatten)]
        out: Output,
    },
    /// Center, Condition (P), faithfulness and derivation dimensions.
    Info {
        #[arg(long)]
        algebra: String,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct IdentityArgs {
    /// Builtin name or algebra file.
    #[arg(long)]
    algebra: String,
    /// Identity text, e.g. "Psi(X^2) = g*X*Omega(X) = g*Omega(X)*X".
    #[arg(long, group = "source")]
    text: Option<String>,
    #[arg(long, group = "source")]
    file: Option<PathBuf>,
    /// power-centralizer, shifted-centralizer, symmetric-generalized or symmetric-self.
    #[arg(long, group = "source")]
    shape: Option<String>,
    /// Degree; required with --shape, checked against the text otherwise.
    #[arg(long)]
    n: Option<u32>,
    /// NAME=VALUE for a central symbol; VALUE is a scalar or comma-separated coordinates.
    #[arg(long = "central", value_name = "NAME=VALUE")]
    centrals: Vec<String>,
    /// Invertible central value bound to `g`.
    #[arg(long)]
    gamma: Option<String>,
    /// NAME=FILE fixing a map to the matrix in FILE.
    #[arg(long = "map", value_name = "NAME=FILE")]
    maps: Vec<String>,
    #[command(flatten)]
    out: Output,
}

impl IdentityArgs {
    fn source(&self) -> IdentitySource<'_> {
        IdentitySource {
            text: self.text.as_deref(),
            file: self.file.as_ref(),
            shape: self.shape.as_deref(),
            n: self.n,
        }
    }

    fn bindings<'a>(&'a self, constraints: &'a [String]) -> Bindings<'a> {
        Bindings {
            centrals: &self.centrals,
            gamma: self.gamma.as_deref(),
            maps: &self.maps,
            constraints,
        }
    }
}

#[derive(Subcommand)]
enum IdentityCommand {
    /// Solve for the maps not fixed by --map.
    Solve {
        #[command(flatten)]
        args: IdentityArgs,
        /// "F(1) in Z" or "F = G".
        #[arg(long = "constrain", value_name = "CONSTRAINT")]
        constraints: Vec<String>,
        /// Compare the solution space with a known family.
        #[arg(long, value_enum)]
        expect: Option<Expect>,
    },
    /// Check an identity whose maps are all given by --map.
    Verify {
        #[command(flatten)]
        args: IdentityArgs,
    },
}

#[derive(Subcommand)]
enum MapCommand {
    /// Report which map classes a map belongs to.
    Classify {
        #[arg(long)]
        algebra: String,
        #[arg(long)]
        map: PathBuf,
        #[command(flatten)]
        out: Output,
    },
}

#[derive(Args)]
struct ReplayArgs {
    /// thm21, cor22, thm25 or cor-final.
    theorem: Theorem,
    #[arg(long)]
    algebra: String,
    #[arg(long)]
    n: u32,
    #[arg(long, default_value = "1")]
    gamma: String,
    /// Replay this pair instead of a basis of the solution space.
    #[arg(long)]
    psi: Option<PathBuf>,
    #[arg(long, requires = "psi")]
    omega: Option<PathBuf>,
    #[command(flatten)]
    out: Output,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

impl Output {
    fn path(&self) -> Option<&Path> {
        self.out.as_deref()
    }
}

fn emit(value: &serde_json::Value, path: Option<&Path>) -> Result<()> {
    let mut text = serde_json::to_string_pretty(value)?;
    text.push('\n');
    match path {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn run(cli: Cli) -> Result<bool> {
    let (outcome, out): (Outcome, Option<&Path>) = match &cli.command {
        Command::Algebra(AlgebraCommand::Build { kind, spec, out }) => {
            let (outcome, validation) = commands::algebra_build(kind.as_deref(), spec.as_deref())?;
            if !validation.passed() {
                eprintln!("validation failed: {}", serde_json::to_string(&validation)?);
            }
            (outcome, out.path())
        }
        Command::Algebra(AlgebraCommand::Info { algebra, out }) => (commands::algebra_info(algebra)?, out.path()),
        Command::Identity(IdentityCommand::Solve {
            args,
            constraints,
            expect,
        }) => (
            commands::identity_solve(&args.algebra, &args.source(), &args.bindings(constraints), *expect)?,
            args.out.path(),
        ),
        Command::Identity(IdentityCommand::Verify { args }) => (
            commands::identity_verify(&args.algebra, &args.source(), &args.bindings(&[]))?,
            args.out.path(),
        ),
        Command::Map(MapCommand::Classify { algebra, map, out }) => (commands::map_classify(algebra, map)?, out.path()),
        Command::Replay(r) => (
            commands::replay(r.theorem, &r.algebra, r.n, &r.gamma, r.psi.as_deref(), r.omega.as_deref())?,
            r.out.path(),
        ),
        Command::Lemmas { algebra, out } => (commands::lemmas(algebra)?, out.path()),
    };
    emit(&outcome.report, out)?;
    Ok(outcome.ok)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
