//! The `witt` command-line tool. [`run`] is the whole program minus process
//! I/O, so tests can drive it in-process.

pub mod commands;
pub mod input;
pub mod report;

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};

use report::RunReport;

#[derive(Debug, Parser)]
#[command(
    name = "witt",
    version,
    about = "Exact checks on Witt type Lie algebras and their transposed Poisson structures"
)]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    pub format: Format,
    /// Cap on worker threads for parallel checks.
    #[arg(long, global = true)]
    pub threads: Option<usize>,
    /// Include wall-clock time in the report (makes output run-dependent).
    #[arg(long, global = true)]
    pub timing: bool,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Check f(0) = 0 and the Lie condition; report the case.
    Validate { instance: PathBuf },
    /// Case partition: Γ₀, the case tag, and τ in case Three.
    Classify { instance: PathBuf },
    /// Solve for ½-derivations and compare with the classified family.
    Derivations {
        instance: PathBuf,
        /// Degree range `a..b` (inclusive) on each free coordinate; infinite groups only.
        #[arg(long, allow_hyphen_values = true)]
        degrees: Option<String>,
        #[arg(long)]
        radius: Option<u64>,
    },
    /// Transposed Poisson structures.
    Tpp {
        #[command(subcommand)]
        command: TppCommand,
    },
    /// Check the Hom-Lie identity for a linear map.
    Homlie {
        instance: PathBuf,
        /// `id`, `scalar:<s>`, `shift:<elem>[:<s>]`, `shift0:<elem>[:<s>]` or JSON.
        #[arg(long)]
        map: String,
        #[arg(long)]
        radius: Option<u64>,
        /// Use the non-cyclic middle term `[φ(y),[z,y]]` instead.
        #[arg(long)]
        literal_form: bool,
    },
    /// Run validate, classify, derivations, tpp random and Hom-Lie checks of the classified maps.
    Report {
        instance: PathBuf,
        #[arg(long, default_value_t = 10)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        radius: Option<u64>,
    },
}

#[derive(Debug, Subcommand)]
pub enum TppCommand {
    /// Check a product against the axioms, by both routes.
    Verify {
        instance: PathBuf,
        /// Product JSON, inline or as a file path.
        #[arg(long)]
        product: String,
        #[arg(long)]
        radius: Option<u64>,
    },
    /// Draw classified products from a seed and verify each one.
    Random {
        instance: PathBuf,
        #[arg(long, default_value_t = 50)]
        trials: usize,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        radius: Option<u64>,
    },
    /// Recover the classified parameters of a verified product.
    Classify {
        instance: PathBuf,
        #[arg(long)]
        product: String,
        /// Expected mutation vector; required on infinite groups.
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        radius: Option<u64>,
    },
}

/// What the process should print and return.
#[derive(Debug)]
pub struct RunOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

pub fn run<I, S>(argv: I) -> RunOutput
where
    I: IntoIterator<Item = S>,
    S: Into<std::ffi::OsString> + Clone,
{
    let argv: Vec<std::ffi::OsString> = argv.into_iter().map(Into::into).collect();
    let cli = match Cli::try_parse_from(&argv) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { 2 } else { 0 };
            let text = e.render().to_string();
            return if code == 0 {
                RunOutput {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                RunOutput {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    let echo: Vec<String> = argv.iter().skip(1).map(|a| a.to_string_lossy().into_owned()).collect();

    let start = Instant::now();
    let outcome = match cli.threads {
        Some(n) => match rayon::ThreadPoolBuilder::new().num_threads(n).build() {
            Ok(pool) => pool.install(|| commands::dispatch(&cli.command)),
            Err(e) => Err(commands::Failure::input(format!("cannot start {n} threads: {e}"))),
        },
        None => commands::dispatch(&cli.command),
    };
    let elapsed = start.elapsed();

    let mut stderr = String::new();
    let report = match outcome {
        Ok(done) => RunReport {
            tool: "witt",
            version: env!("CARGO_PKG_VERSION"),
            command: echo,
            verdict: done.status,
            case: done.case,
            result: Some(done.result),
            error: None,
            timing_ms: None,
        },
        Err(failure) => {
            stderr = format!("witt: {}\n", failure.message);
            RunReport {
                tool: "witt",
                version: env!("CARGO_PKG_VERSION"),
                command: echo,
                verdict: failure.status,
                case: None,
                result: None,
                error: Some(failure.message),
                timing_ms: None,
            }
        }
    };
    let report = RunReport {
        timing_ms: cli.timing.then_some(elapsed.as_secs_f64() * 1e3),
        ..report
    };
    let stdout = match cli.format {
        Format::Json => report.to_json(),
        Format::Text => report.to_text(),
    };
    RunOutput {
        code: report.verdict.exit_code(),
        stdout,
        stderr,
    }
}
