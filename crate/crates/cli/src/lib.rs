//! Command-line front end for the `apolar` toolkit.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};

pub mod commands;
pub mod config;
pub mod error;
pub mod report;
pub mod sweeps;

use config::Config;
use error::{CliError, EXIT_INTERNAL, EXIT_OK};
use report::{Report, SCHEMA_VERSION};

#[derive(Debug, Parser)]
#[command(name = "apolar", version, about = "Exact apolarity, secant-variety and border-rank computations")]
pub struct Cli {
    /// Emit the machine-readable JSON report
    #[arg(long, global = true)]
    pub json: bool,

    /// Run sweeps and flattening profiles on all cores
    #[arg(long, global = true)]
    pub parallel: bool,

    /// Config file (default: ./apolar.toml when present)
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Rank, border rank and decomposition of a binary form
    RankBinary(FormArg),
    /// Catalecticant matrix, or the full flattening profile
    Catalecticant {
        #[command(flatten)]
        form: FormArg,
        /// Flattening degree; omit for all degrees up to d/2
        #[arg(long)]
        a: Option<u32>,
    },
    /// Certify that a Waring decomposition is the unique one
    CertifyUnique {
        #[command(flatten)]
        form: FormArg,
        /// JSON file: [{"coef": "p/q", "point": ["1", "0", ...]}, ...]
        #[arg(long)]
        decomp: PathBuf,
    },
    /// Gotzmann decomposition of a Hilbert polynomial
    Gotzmann {
        /// Ascending coefficients, e.g. "1,3" for 3d+1
        #[arg(short = 'p', long = "poly")]
        poly: String,
        /// Secant order for the Veronese degree thresholds
        #[arg(long)]
        r: Option<u64>,
    },
    /// Witnesses in Σ₂ᵈ(X) outside σ₂(v_d(X)) for cones over points
    Counterexample(CounterexampleArgs),
    /// Schönhage's degeneration of M_{e,1,l} ⊕ M_{1,h,1}
    Schoenhage {
        #[arg(long, default_value_t = 3)]
        e: usize,
        #[arg(long, default_value_t = 2)]
        l: usize,
        /// Run e in 2..=4, l in 2..=3
        #[arg(long)]
        sweep: bool,
    },
    /// Check the approximate algorithm for partially filled 2×2 matrices
    Bini,
    /// Evaluate a tensor rank expression given as JSON (literal or file)
    TensorEval {
        /// `{"dims": [na, nb, nc], "terms": [[[u...], [v...], [w...]], ...]}`
        input: String,
    },
    /// Recover the degree-two scheme of a form of border rank two
    Recover(FormArg),
    /// Random instances of the span intersection identity
    MainLemma {
        #[arg(long, default_value_t = 200)]
        count: usize,
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Random rank-two forms checked for uniqueness against a point grid
    Uniqueness {
        #[arg(long, default_value_t = 50)]
        count: usize,
        #[arg(long, default_value_t = 5)]
        d: u32,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Debug, Args)]
pub struct FormArg {
    /// Homogeneous form in x0..x9, e.g. "x0^3*x1 - 1/2*x1^4"
    #[arg(short = 'e', long = "form")]
    pub form: String,
}

#[derive(Debug, Args)]
pub struct CounterexampleArgs {
    /// Number of lines through the vertex
    #[arg(long)]
    pub k: Option<usize>,
    /// The complete-intersection cubics example
    #[arg(long)]
    pub ci_cubics: bool,
    /// Run k in 3..=6 and d in 3..=8
    #[arg(long)]
    pub grid: bool,
    /// Veronese degree
    #[arg(long)]
    pub d: Option<u32>,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::RankBinary(_) => "rank-binary",
            Command::Catalecticant { .. } => "catalecticant",
            Command::CertifyUnique { .. } => "certify-unique",
            Command::Gotzmann { .. } => "gotzmann",
            Command::Counterexample(_) => "counterexample",
            Command::Schoenhage { .. } => "schoenhage",
            Command::Bini => "bini",
            Command::TensorEval { .. } => "tensor-eval",
            Command::Recover(_) => "recover",
            Command::MainLemma { .. } => "main-lemma",
            Command::Uniqueness { .. } => "uniqueness",
        }
    }
}

/// Runs one command, writing the report to `out` and diagnostics to `err`;
/// returns the process exit code.
pub fn run(cli: &Cli, out: &mut impl Write, err: &mut impl Write) -> u8 {
    let fail = |err: &mut dyn Write, e: &CliError| {
        let _ = writeln!(err, "error[{}]: {e}", e.kind());
        e.exit_code()
    };
    let config = match Config::load(cli.config.as_deref()) {
        Ok(c) => c,
        Err(e) => return fail(err, &e),
    };
    let ctx = commands::Context { config, parallel: cli.parallel };
    let start = Instant::now();
    let outcome = match commands::execute(&cli.command, &ctx) {
        Ok(o) => o,
        Err(e) => return fail(err, &e),
    };
    let report = Report {
        version: SCHEMA_VERSION.to_string(),
        command: cli.command.name().to_string(),
        input: outcome.input,
        result: outcome.result,
        certificates: outcome.certificates,
        warnings: outcome.warnings,
        elapsed_ms: start.elapsed().as_millis() as u64,
    };
    let text = if cli.json { report.to_json() } else { report.to_text() };
    let _ = writeln!(out, "{}", text.trim_end());
    if outcome.breaches.is_empty() {
        return EXIT_OK;
    }
    for b in &outcome.breaches {
        let _ = writeln!(err, "error[Invariant]: {b}");
    }
    EXIT_INTERNAL
}
