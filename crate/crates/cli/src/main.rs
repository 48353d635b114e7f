use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};

mod analyze;
mod deform;

#[derive(Parser)]
#[command(name = "chartan", version, about = "Trivial-character deformations of SL₂ character varieties")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// H₁, tangent-space dimensions and a smoothness verdict for a presentation file.
    Analyze {
        path: PathBuf,
        #[arg(long)]
        json: bool,
        /// File describing a surjection onto F₂ (`target: x y`, then `gen = WORD` lines).
        #[arg(long)]
        witness: Option<PathBuf>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Runs seeded identity suites.
    Check(CheckArgs),
    /// Jet, obstruction, deformation and lifting workflows (JSON output).
    #[command(subcommand)]
    Deform(DeformCommand),
}

#[derive(Args)]
struct CheckArgs {
    /// Comma-separated suite names, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    #[arg(long, default_value_t = 3)]
    rank: usize,
    #[arg(long, default_value_t = 100)]
    iters: usize,
    #[arg(long, default_value_t = 10)]
    len: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    /// Matrix size for the frobenius suite.
    #[arg(long, default_value_t = 2)]
    n: usize,
    #[arg(long)]
    json: bool,
}

#[derive(Subcommand)]
enum DeformCommand {
    /// Extracts and verifies the character jet of a representation file.
    Jet {
        #[arg(long)]
        rep: PathBuf,
        #[arg(long)]
        order: Option<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Obstructions to extending a first-order deformation `(q, φ)`.
    Obstruct {
        #[arg(long)]
        f1: PathBuf,
    },
    /// Factors a rank ≤ 2 form and builds the parabolic deformation.
    Parabolic {
        #[arg(long)]
        q: PathBuf,
        #[arg(long, default_value_t = 1)]
        order: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
    /// Lifts a two-generator trace triple to a pair of matrices.
    Lift {
        #[arg(long)]
        traces: PathBuf,
        #[arg(long)]
        order: Option<usize>,
    },
}

#[derive(Debug)]
pub enum CliError {
    /// Exit 2.
    Input(String),
    /// Exit 3.
    CrossCheck(String),
    /// Exit 4, with a machine-readable kind.
    Degenerate { kind: &'static str, reason: String },
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 2,
            CliError::CrossCheck(_) => 3,
            CliError::Degenerate { .. } => 4,
        }
    }
}

pub fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
}

/// Pretty JSON with arrays of scalars kept on one line.
pub fn render_json(v: &Value) -> String {
    fn go(v: &Value, indent: usize, out: &mut String) {
        let pad = "  ".repeat(indent + 1);
        match v {
            Value::Array(items) if items.iter().all(|x| !x.is_array() && !x.is_object()) => {
                out.push_str(&serde_json::to_string(v).expect("JSON values serialize"))
            }
            Value::Array(items) if !items.is_empty() => {
                out.push_str("[\n");
                for (i, x) in items.iter().enumerate() {
                    out.push_str(&pad);
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push(']');
            }
            Value::Object(m) if !m.is_empty() => {
                out.push_str("{\n");
                for (i, (k, x)) in m.iter().enumerate() {
                    out.push_str(&pad);
                    out.push_str(&serde_json::to_string(k).expect("strings serialize"));
                    out.push_str(": ");
                    go(x, indent + 1, out);
                    out.push_str(if i + 1 < m.len() { ",\n" } else { "\n" });
                }
                out.push_str(&"  ".repeat(indent));
                out.push('}');
            }
            other => out.push_str(&serde_json::to_string(other).expect("JSON values serialize")),
        }
    }
    let mut out = String::new();
    go(v, 0, &mut out);
    out
}

pub fn print_json(v: &Value) {
    emit(&render_json(v));
}

/// Writes a line to stdout, ignoring a closed pipe.
pub fn emit(line: &str) {
    use std::io::Write;
    let _ = writeln!(std::io::stdout().lock(), "{line}");
}

fn run_check(args: &CheckArgs) -> Result<bool, CliError> {
    use chartan::suites::{run_suites, Suite, SuiteConfig};
    let suites: Vec<Suite> = if args.suite.trim().eq_ignore_ascii_case("all") {
        Suite::ALL.to_vec()
    } else {
        args.suite.split(',').map(str::parse).collect::<Result<_, _>>().map_err(CliError::Input)?
    };
    let cfg = SuiteConfig { rank: args.rank, iters: args.iters, len: args.len, seed: args.seed, n: args.n };
    let reports = run_suites(&suites, &cfg);
    let passed = reports.iter().all(|r| r.passed);
    if args.json {
        print_json(&json!({ "seed": args.seed, "passed": passed, "suites": reports }));
    } else {
        for r in &reports {
            let residual = match &r.max_residual {
                Value::String(s) => s.clone(),
                other => other.to_string(),
            };
            emit(&format!(
                "{:<14} {}  trials {:>5}  failures {:>3}  max residual {}",
                r.suite.name(),
                if r.passed { "PASS" } else { "FAIL" },
                r.trials,
                r.failures,
                residual
            ));
            if let Some(f) = &r.first_failure {
                emit(&format!("    first failure: {f}"));
            }
        }
        emit(if passed { "PASS" } else { "FAIL" });
    }
    Ok(passed)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match &cli.command {
        Command::Analyze { path, json, witness, seed } => {
            analyze::run(path, witness.as_deref(), *seed, *json).map(|()| true)
        }
        Command::Check(args) => run_check(args),
        Command::Deform(cmd) => deform::run(cmd).map(|()| true),
    };
    match result {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            match &e {
                CliError::Input(msg) => eprintln!("error: {msg}"),
                CliError::CrossCheck(msg) => eprintln!("cross-check failed: {msg}"),
                CliError::Degenerate { kind, reason } => print_json(&json!({ "error": kind, "reason": reason })),
            }
            ExitCode::from(e.code())
        }
    }
}
