//! Argument handling and dispatch for the `axisproj` binary. Kept in a
//! library so the exit-code mapping can be tested without spawning processes.

use std::path::PathBuf;

use axisproj::io::{parse_problem, result_to_json, InputError};
use axisproj::verify::{run_verification, VerifyOptions};
use axisproj::ProjError;
use clap::{Parser, Subcommand};

pub const EXIT_OK: i32 = 0;
pub const EXIT_NOT_INTERIOR: i32 = 2;
pub const EXIT_PARSE: i32 = 3;
pub const EXIT_NUMERICAL: i32 = 4;
pub const EXIT_CHECK_FAILED: i32 = 5;

#[derive(Debug, Parser)]
#[command(
    name = "axisproj",
    version,
    about = "Minimum L1 distance to the boundary of a convex set"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Project the query point onto the boundary and print the result as JSON.
    Project { file: PathBuf },
    /// Cross-check the projection with the brute-force oracles.
    Verify {
        file: PathBuf,
        /// Number of random ray directions.
        #[arg(long, default_value_t = 10_000)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Include the tolerances used by every check in the report.
        #[arg(long)]
        tolerance_report: bool,
        /// Override the norm exponent; values above 1 use the Lp norm.
        #[arg(long = "p", value_name = "P")]
        p: Option<f64>,
        /// Multiply the reported distance before checking.
        #[arg(long, default_value_t = 1.0, hide = true)]
        inflate: f64,
    },
}

/// What the process should print and return.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Self {
            code: EXIT_OK,
            stdout,
            stderr: String::new(),
        }
    }

    fn fail(code: i32, stderr: String) -> Self {
        Self {
            code,
            stdout: String::new(),
            stderr,
        }
    }
}

/// Exit status for a failed projection.
pub fn exit_code(err: &ProjError) -> i32 {
    match err {
        ProjError::NotInterior => EXIT_NOT_INTERIOR,
        ProjError::Lp(_) | ProjError::RadiusHintViolation { .. } => EXIT_NUMERICAL,
        ProjError::Dimension { .. }
        | ProjError::Empty(_)
        | ProjError::ZeroRow(_)
        | ProjError::NonFinite(_)
        | ProjError::InvalidNorm(_)
        | ProjError::Domain(_) => EXIT_PARSE,
    }
}

fn proj_failure(err: ProjError) -> Outcome {
    Outcome::fail(exit_code(&err), format!("error: {err}\n"))
}

fn load(path: &PathBuf) -> Result<axisproj::Problem, Outcome> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        Outcome::fail(
            EXIT_PARSE,
            format!("error: cannot read {}: {e}\n", path.display()),
        )
    })?;
    parse_problem(&text).map_err(|e| match e {
        InputError::Invalid(err @ ProjError::NotInterior) => proj_failure(err),
        other => Outcome::fail(EXIT_PARSE, format!("error: {other}\n")),
    })
}

pub fn run_command(cli: Cli) -> Outcome {
    match cli.command {
        Command::Project { file } => {
            let problem = match load(&file) {
                Ok(p) => p,
                Err(out) => return out,
            };
            match problem.project() {
                Ok(result) => Outcome::ok(result_to_json(&result) + "\n"),
                Err(err) => proj_failure(err),
            }
        }
        Command::Verify {
            file,
            samples,
            seed,
            tolerance_report,
            p,
            inflate,
        } => {
            let problem = match load(&file) {
                Ok(p) => p,
                Err(out) => return out,
            };
            let opts = VerifyOptions {
                samples,
                seed,
                inflate,
                p_override: p,
                tolerance_report,
            };
            match run_verification(&problem, &opts) {
                Ok(report) => {
                    let json = serde_json::to_string_pretty(&report)
                        .expect("verification reports always serialize")
                        + "\n";
                    if report.passed {
                        Outcome::ok(json)
                    } else {
                        let failed: Vec<String> = report
                            .checks
                            .iter()
                            .filter(|c| !c.passed)
                            .map(|c| match &c.message {
                                Some(m) => format!("check {} failed: {m}", c.name),
                                None => format!("check {} failed", c.name),
                            })
                            .collect();
                        Outcome {
                            code: EXIT_CHECK_FAILED,
                            stdout: json,
                            stderr: failed.join("\n") + "\n",
                        }
                    }
                }
                Err(err) => proj_failure(err),
            }
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(args) {
        Ok(cli) => run_command(cli),
        Err(e) => {
            let code = if e.use_stderr() { EXIT_PARSE } else { EXIT_OK };
            let text = e.render().to_string();
            if e.use_stderr() {
                Outcome::fail(code, text)
            } else {
                Outcome::ok(text)
            }
        }
    }
}
