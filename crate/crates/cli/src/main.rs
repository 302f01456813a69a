//! `cnormal`: decide membership in GS, build witnesses for rank-one
//! perturbations of normal matrices, and generate test matrices.
//!
//! Exit codes: 0 yes/success, 1 no, 2 unknown, 64 malformed input,
//! 65 matrix not normal where required, 70 numerical or internal failure.

mod commands;
mod doc;

use std::io::Read;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use cnormal::{DecideOptions, Error, Tolerances};

use doc::{InputError, MatrixDocument};

pub const EXIT_YES: u8 = 0;
pub const EXIT_NO: u8 = 1;
pub const EXIT_UNKNOWN: u8 = 2;
pub const EXIT_INPUT: u8 = 64;
pub const EXIT_NOT_NORMAL: u8 = 65;
pub const EXIT_FAILURE: u8 = 70;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Output {
    Json,
    Summary,
}

#[derive(Debug, Parser)]
#[command(
    name = "cnormal",
    version,
    about = "Conjugations, C-normal matrices and rank-one perturbations"
)]
pub struct Cli {
    /// Absolute residual tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_residual: f64,
    /// Relative eigenvalue clustering tolerance.
    #[arg(long, global = true, default_value_t = 1e-8)]
    tol_cluster: f64,
    /// Relative rank tolerance.
    #[arg(long, global = true, default_value_t = 1e-10)]
    tol_rank: f64,
    /// Maximum word length for trace obstructions.
    #[arg(long, global = true, default_value_t = 6)]
    word_len: usize,
    /// Random restarts of the witness search.
    #[arg(long, global = true, default_value_t = 64)]
    restarts: usize,
    /// Seed for the witness search and generators.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads (batch decisions, or search restarts for one input).
    #[arg(long, global = true, default_value_t = 1)]
    jobs: usize,
    #[arg(long, global = true, value_enum, default_value_t = Output::Json)]
    output: Output,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether a matrix is C-normal for some conjugation C.
    Decide {
        /// Matrix documents (`-` for standard input).
        #[arg(required = true)]
        inputs: Vec<PathBuf>,
    },
    /// Build a conjugation for N + λ·y⊗x from (N, x, y, λ).
    WitnessPerturbation(PerturbationArgs),
    /// Check the two spectral conditions on (N, x, y).
    CheckHypotheses(PerturbationArgs),
    /// Compute M(A) with both algorithms.
    Mspace { input: PathBuf },
    /// Evaluate the trace functional that vanishes on complex symmetric matrices.
    CsTrace { input: PathBuf },
    /// Check a witness conjugation or an obstruction certificate against a matrix.
    Verify {
        matrix: PathBuf,
        /// Conjugation matrix `u`, verdict document, or witness-perturbation output.
        evidence: PathBuf,
    },
    /// Emit a matrix document.
    Gen {
        /// block-corollary, random-normal, random-conjugation, or a fixture name.
        kind: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// Which of the four block constructions (block-corollary).
        #[arg(long, default_value_t = 0)]
        variant: usize,
    },
}

#[derive(Debug, clap::Args)]
pub struct PerturbationArgs {
    /// Document with an embedded perturbation, or the matrix N itself.
    input: PathBuf,
    /// x as a JSON array of [re, im] pairs (when the document is N).
    #[arg(long)]
    x: Option<String>,
    /// y as a JSON array of [re, im] pairs.
    #[arg(long)]
    y: Option<String>,
    /// λ as [re, im].
    #[arg(long)]
    lambda: Option<String>,
}

/// A failed command: exit code plus diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl From<InputError> for Failure {
    fn from(e: InputError) -> Self {
        Failure {
            code: EXIT_INPUT,
            message: e.0,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::NotSquare { .. }
            | Error::Empty
            | Error::NonFinite { .. }
            | Error::DimensionMismatch { .. }
            | Error::InvalidTolerance { .. } => EXIT_INPUT,
            Error::NotNormal { .. } => EXIT_NOT_NORMAL,
            _ => EXIT_FAILURE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

pub struct Settings {
    pub tol: Tolerances,
    pub opts: DecideOptions,
    pub jobs: usize,
    pub output: Output,
}

pub fn read_text(path: &Path) -> Result<String, Failure> {
    let mut s = String::new();
    let res = if path.as_os_str() == "-" {
        std::io::stdin().read_to_string(&mut s).map(|_| ())
    } else {
        std::fs::read_to_string(path).map(|t| s = t)
    };
    res.map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })?;
    Ok(s)
}

pub fn parse_document(path: &Path, text: &str) -> Result<MatrixDocument, Failure> {
    serde_json::from_str(text).map_err(|e| Failure {
        code: EXIT_INPUT,
        message: format!("{}: {e}", path.display()),
    })
}

pub fn read_document(path: &Path) -> Result<MatrixDocument, Failure> {
    parse_document(path, &read_text(path)?)
}

fn run(cli: Cli) -> Result<u8, Failure> {
    let tol = Tolerances::new(cli.tol_cluster, cli.tol_residual, cli.tol_rank)?;
    let settings = Settings {
        tol,
        opts: DecideOptions {
            word_len: cli.word_len,
            restarts: cli.restarts,
            seed: cli.seed,
            jobs: cli.jobs.max(1),
            ..DecideOptions::default()
        },
        jobs: cli.jobs.max(1),
        output: cli.output,
    };
    match cli.command {
        Command::Decide { inputs } => commands::decide(&inputs, &settings),
        Command::WitnessPerturbation(args) => commands::witness_perturbation(&args, &settings),
        Command::CheckHypotheses(args) => commands::check_hypotheses(&args, &settings),
        Command::Mspace { input } => commands::mspace(&input, &settings),
        Command::CsTrace { input } => commands::cs_trace(&input, &settings),
        Command::Verify { matrix, evidence } => commands::verify(&matrix, &evidence, &settings),
        Command::Gen { kind, dim, variant } => commands::generate(&kind, dim, variant, cli.seed, &settings),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_INPUT } else { EXIT_YES });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
