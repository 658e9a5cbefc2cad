//! Batch front end: load a JSON description of a ring plus one object
//! (complex, Koszul algebra, trivial-differential algebra or multiplicative
//! set), dispatch to the library and emit a deterministic report.

use clap::{Parser, Subcommand, ValueEnum};
use dgdim_core::error::Error;
use dgdim_core::jobs::{exit_code, render_text, run_job, Command, JobOptions, JobSpec};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "dgdim",
    about = "Exact dimension computations for complexes and Koszul DG algebras over polynomial rings",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: CliCommand,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(clap::Args, Clone)]
struct CommonArgs {
    /// Input document (JSON), omitted only for `corpus`
    input: Option<PathBuf>,
    /// Seed for randomized pools and property sampling
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Comma-separated polynomials for candidate pools
    #[arg(long)]
    pool: Option<String>,
    /// Exhaustive search limit (max candidate sequence length)
    #[arg(long)]
    limit: Option<usize>,
    /// Comma-separated candidate sequence
    #[arg(long)]
    seq: Option<String>,
    /// Comma-separated variables generating a monomial prime
    #[arg(long)]
    prime: Option<String>,
    /// Corpus name filter (`*` wildcards)
    #[arg(long)]
    filter: Option<String>,
    /// Output format
    #[arg(long, value_enum, default_value_t = Format::Text)]
    format: Format,
}

#[derive(Subcommand)]
enum CliCommand {
    /// Homology presentations, Fitting ideals and dimensions per degree
    Homology(CommonArgs),
    /// Infimum and Krull dimension of a complex
    Dim(CommonArgs),
    /// Length dimension: bounds, witness and verdict
    Ldim(CommonArgs),
    /// Anchor primes among monomial primes in the support
    Anchor(CommonArgs),
    /// Evaluate the system-of-parameters predicates on --seq
    Sop(CommonArgs),
    /// DG Krull dimension of a Koszul or trivial-differential algebra
    Dgdim(CommonArgs),
    /// Enumerate DG primes with monomial degree-zero data
    Dgspec(CommonArgs),
    /// Run the localization property suite for a multiplicative set
    LocalizeCheck(CommonArgs),
    /// Check the predicate equivalences and dimension equalities
    VerifyTheorem(CommonArgs),
    /// Run the bundled verification corpus
    Corpus(CommonArgs),
}

impl CliCommand {
    fn split(self) -> (Command, CommonArgs) {
        match self {
            CliCommand::Homology(a) => (Command::Homology, a),
            CliCommand::Dim(a) => (Command::Dim, a),
            CliCommand::Ldim(a) => (Command::Ldim, a),
            CliCommand::Anchor(a) => (Command::Anchor, a),
            CliCommand::Sop(a) => (Command::Sop, a),
            CliCommand::Dgdim(a) => (Command::Dgdim, a),
            CliCommand::Dgspec(a) => (Command::Dgspec, a),
            CliCommand::LocalizeCheck(a) => (Command::LocalizeCheck, a),
            CliCommand::VerifyTheorem(a) => (Command::VerifyTheorem, a),
            CliCommand::Corpus(a) => (Command::Corpus, a),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (command, args) = cli.command.split();

    let input = match &args.input {
        None if command == Command::Corpus => None,
        None => {
            eprintln!("error: {} needs an input file", command.name());
            return ExitCode::from(1);
        }
        Some(path) => match std::fs::read_to_string(path) {
            Ok(text) => Some(text),
            Err(e) => {
                eprintln!("error: cannot read {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
    };

    let spec = JobSpec {
        command,
        input,
        options: JobOptions {
            seed: args.seed,
            pool: args.pool.clone(),
            limit: args.limit,
            seq: args.seq.clone(),
            prime: args.prime.clone(),
            filter: args.filter.clone(),
        },
    };

    let outcome = run_job(&spec);
    let code = exit_code(&outcome);
    match &outcome {
        Ok(result) => match args.format {
            Format::Json => println!(
                "{}",
                serde_json::to_string_pretty(&result.report).expect("report serializes")
            ),
            Format::Text => match &result.text {
                Some(text) => print!("{text}"),
                None => print!("{}", render_text(&result.report)),
            },
        },
        Err(e) => {
            let kind = match e {
                Error::Parse { .. } => "parse error",
                Error::Unsupported(_) => "unsupported",
                Error::ComplexViolation { .. } => "verification failure",
                _ => "error",
            };
            eprintln!("{kind}: {e}");
        }
    }
    ExitCode::from(u8::try_from(code).unwrap_or(1))
}
