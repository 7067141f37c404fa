//! Command-line driver. Every invocation prints exactly one canonical JSON
//! document on stdout and maps its status to the process exit code.

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::coloring::{extension_check, lemma1_coloring, verify_coloring, ContinuousColoring, Verdict};
use crate::discrete::{compute_rado, SearchError, SearchOptions};
use crate::equations::{formula_continuous, formula_degenerate_k1, formula_discrete, ProblemSpec};
use crate::forcing::{certify_upper, verify_certificate, CertifyOptions, ForcingCertificate, ForcingError};
use crate::rational::Rational;
use crate::reproduce;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    WitnessFound,
    Unproved,
    InvalidInput,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Ok => 0,
            Status::WitnessFound => 1,
            Status::Unproved => 2,
            Status::InvalidInput => 64,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CommandResult {
    pub command: String,
    pub spec: Option<Value>,
    pub payload: Value,
    pub status: Status,
}

impl CommandResult {
    fn new(command: &str, spec: Option<&ProblemSpec>, status: Status, payload: Value) -> Self {
        CommandResult {
            command: command.to_string(),
            spec: spec.map(|s| serde_json::to_value(s).expect("spec serializes")),
            payload,
            status,
        }
    }

    fn invalid(command: &str, message: impl ToString) -> Self {
        CommandResult::new(command, None, Status::InvalidInput, json!({ "error": message.to_string() }))
    }

    /// Canonical JSON: keys sorted, no whitespace.
    pub fn to_json(&self) -> String {
        serde_json::to_value(self).expect("result serializes").to_string()
    }
}

#[derive(Debug, Parser)]
#[command(name = "rado", version, about = "Off-diagonal Rado numbers for x1 + ... + xm = x0")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Discrete,
    Continuous,
    K1,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Closed-form value.
    Formula {
        k: u32,
        l: u32,
        #[arg(long)]
        gamma: Option<Rational>,
        #[arg(long, value_enum, default_value = "continuous")]
        mode: Mode,
    },
    /// Exact discrete value by search.
    Discrete {
        k: u32,
        l: u32,
        #[arg(long)]
        max_n: Option<u32>,
        /// Disable unit forcing (prune on monochromatic solutions only).
        #[arg(long)]
        no_propagation: bool,
        /// Record colorability of every n up to the cap.
        #[arg(long)]
        scan: bool,
    },
    /// Write and self-check the extremal lower-bound coloring.
    LowerBound {
        k: u32,
        l: u32,
        #[arg(long)]
        gamma: Option<Rational>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a coloring file.
    VerifyColoring {
        #[arg(long)]
        file: PathBuf,
        k: u32,
        l: u32,
    },
    /// Build, verify, and write an upper-bound certificate.
    CertifyUpper {
        k: u32,
        l: u32,
        #[arg(long)]
        gamma: Option<Rational>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Find every branch with the automatic prover on this grid.
        #[arg(long)]
        grid_denominator: Option<u32>,
        #[arg(long, default_value_t = 64)]
        max_depth: u32,
    },
    /// Replay a certificate file.
    VerifyCertificate {
        #[arg(long)]
        file: PathBuf,
    },
    /// Run every reproduction check and print a summary table.
    ReproducePaper,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Formula { .. } => "formula",
            Command::Discrete { .. } => "discrete",
            Command::LowerBound { .. } => "lower-bound",
            Command::VerifyColoring { .. } => "verify-coloring",
            Command::CertifyUpper { .. } => "certify-upper",
            Command::VerifyCertificate { .. } => "verify-certificate",
            Command::ReproducePaper => "reproduce-paper",
        }
    }
}

/// `RADO_THREADS`: 0 = automatic, 1 = deterministic single thread.
fn threads_from_env() -> Result<usize, String> {
    match std::env::var("RADO_THREADS") {
        Err(_) => Ok(1),
        Ok(v) => v.trim().parse().map_err(|_| format!("RADO_THREADS must be an integer, got {v:?}")),
    }
}

fn spec_or_invalid(cmd: &str, k: u32, l: u32, gamma: Option<Rational>) -> Result<ProblemSpec, CommandResult> {
    ProblemSpec::with_gamma(k, l, gamma.unwrap_or_else(Rational::one)).map_err(|e| CommandResult::invalid(cmd, e))
}

fn write_out(cmd: &str, path: &PathBuf, text: &str) -> Result<(), CommandResult> {
    fs::write(path, text).map_err(|e| CommandResult::invalid(cmd, format!("cannot write {}: {e}", path.display())))
}

fn read_in(cmd: &str, path: &PathBuf) -> Result<String, CommandResult> {
    fs::read_to_string(path).map_err(|e| CommandResult::invalid(cmd, format!("cannot read {}: {e}", path.display())))
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I) -> CommandResult
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) if matches!(e.kind(), clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion) => {
            e.exit()
        }
        Err(e) => {
            eprintln!("{e}");
            return CommandResult::invalid("parse", e.kind());
        }
    };
    let cmd = cli.command.name();
    execute(cli.command).unwrap_or_else(|r| r).with_command(cmd)
}

impl CommandResult {
    fn with_command(mut self, cmd: &str) -> Self {
        self.command = cmd.to_string();
        self
    }
}

fn execute(command: Command) -> Result<CommandResult, CommandResult> {
    let cmd = command.name();
    match command {
        Command::Formula { k, l, gamma, mode } => {
            let (spec, value) = match mode {
                Mode::Discrete => {
                    if gamma.is_some() {
                        return Err(CommandResult::invalid(cmd, "--gamma does not apply to --mode discrete"));
                    }
                    let spec = spec_or_invalid(cmd, k, l, None)?;
                    (Some(spec), formula_discrete(k, l))
                }
                Mode::Continuous => {
                    let spec = spec_or_invalid(cmd, k, l, gamma)?;
                    let v = formula_continuous(k, l, &spec.gamma);
                    (Some(spec), v)
                }
                Mode::K1 => {
                    if k != 1 {
                        return Err(CommandResult::invalid(cmd, "--mode k1 requires k = 1"));
                    }
                    if gamma.is_some() {
                        return Err(CommandResult::invalid(cmd, "--gamma does not apply to --mode k1"));
                    }
                    (None, formula_degenerate_k1(l))
                }
            };
            let value = value.map_err(|e| CommandResult::invalid(cmd, e))?;
            Ok(CommandResult::new(cmd, spec.as_ref(), Status::Ok, json!({ "value": value.value })))
        }

        Command::Discrete {
            k,
            l,
            max_n,
            no_propagation,
            scan,
        } => {
            let spec = spec_or_invalid(cmd, k, l, None)?;
            let threads = threads_from_env().map_err(|e| CommandResult::invalid(cmd, e))?;
            let opts = SearchOptions {
                max_n,
                unit_forcing: !no_propagation,
                scan,
                threads,
            };
            match compute_rado(&spec, &opts) {
                Ok(report) => Ok(CommandResult::new(cmd, Some(&spec), Status::Ok, report.to_json_value())),
                Err(SearchError::CapExhausted { cap, stats }) => Ok(CommandResult::new(
                    cmd,
                    Some(&spec),
                    Status::Unproved,
                    json!({ "error": "cap exhausted", "cap": cap, "stats": stats }),
                )),
                Err(e) => Ok(CommandResult::new(cmd, Some(&spec), Status::Unproved, json!({ "error": e.to_string() }))),
            }
        }

        Command::LowerBound { k, l, gamma, out } => {
            let spec = spec_or_invalid(cmd, k, l, gamma)?;
            let coloring = lemma1_coloring(&spec);
            let verdict = verify_coloring(&coloring, &spec).expect("constructed coloring is well formed");
            assert!(
                verdict.is_valid(),
                "lower-bound coloring failed its own check: {verdict:?}"
            );
            let (red, blue) = extension_check(&spec);
            let mut payload = json!({
                "verdict": "Valid",
                "coloring": coloring.to_json_value(),
                "boundary_witnesses": { "red": red, "blue": blue },
            });
            if let Some(path) = out {
                write_out(cmd, &path, &coloring.to_json())?;
                payload["file"] = json!(path.display().to_string());
            }
            Ok(CommandResult::new(cmd, Some(&spec), Status::Ok, payload))
        }

        Command::VerifyColoring { file, k, l } => {
            let text = read_in(cmd, &file)?;
            let coloring = ContinuousColoring::from_json(&text).map_err(|e| CommandResult::invalid(cmd, e))?;
            let spec = spec_or_invalid(cmd, k, l, Some(coloring.domain().lo().clone()))?;
            let verdict = verify_coloring(&coloring, &spec).map_err(|e| CommandResult::invalid(cmd, e))?;
            let status = match verdict {
                Verdict::Valid => Status::Ok,
                Verdict::WitnessFound { .. } => Status::WitnessFound,
            };
            Ok(CommandResult::new(cmd, Some(&spec), status, serde_json::to_value(&verdict).expect("verdict")))
        }

        Command::CertifyUpper {
            k,
            l,
            gamma,
            out,
            grid_denominator,
            max_depth,
        } => {
            let spec = spec_or_invalid(cmd, k, l, gamma)?;
            if grid_denominator == Some(0) {
                return Err(CommandResult::invalid(cmd, "--grid-denominator must be positive"));
            }
            let opts = CertifyOptions {
                grid_denominator,
                max_depth,
            };
            let cert = match certify_upper(&spec, &opts) {
                Ok(cert) => cert,
                Err(e @ ForcingError::Unproved { .. }) => {
                    return Ok(CommandResult::new(cmd, Some(&spec), Status::Unproved, json!({ "error": e.to_string() })))
                }
                Err(e) => return Err(CommandResult::invalid(cmd, e)),
            };
            let mut payload = json!({
                "domain_end": cert.domain_end,
                "branches": cert.leaves(),
                "steps": cert.step_count(),
                "points_used": cert.points_used(),
            });
            match out {
                Some(path) => {
                    write_out(cmd, &path, &cert.to_json())?;
                    payload["file"] = json!(path.display().to_string());
                }
                None => payload["certificate"] = cert.to_json_value(),
            }
            Ok(CommandResult::new(cmd, Some(&spec), Status::Ok, payload))
        }

        Command::VerifyCertificate { file } => {
            let text = read_in(cmd, &file)?;
            let cert = ForcingCertificate::from_json(&text).map_err(|e| CommandResult::invalid(cmd, e))?;
            cert.check_shape().map_err(|e| CommandResult::invalid(cmd, e))?;
            match verify_certificate(&cert) {
                Ok(summary) => Ok(CommandResult::new(
                    cmd,
                    Some(&cert.spec),
                    Status::Ok,
                    json!({ "branches": summary.leaves, "steps": summary.steps }),
                )),
                Err(failure) => Ok(CommandResult::new(
                    cmd,
                    Some(&cert.spec),
                    Status::WitnessFound,
                    json!({ "failure": failure, "message": failure.to_string() }),
                )),
            }
        }

        Command::ReproducePaper => {
            let threads = threads_from_env().map_err(|e| CommandResult::invalid(cmd, e))?;
            let checks = reproduce::run_all(threads);
            for c in &checks {
                eprintln!("{} {:<40} {}", if c.pass { "PASS" } else { "FAIL" }, c.name, c.detail);
            }
            let status = if checks.iter().all(|c| c.pass) {
                Status::Ok
            } else {
                Status::Unproved
            };
            Ok(CommandResult::new(cmd, None, status, json!({ "checks": checks })))
        }
    }
}
