mod calc;
mod formats;
mod gca;
mod lattice;
mod pfaff;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ulrich_core::acceptance::{self, Config, Faults, CRITERIA, DEFAULT_SEED};
use ulrich_core::geomcalc::{numerology_replay_with, LedgerStatus};

#[derive(Parser)]
#[command(
    name = "ulrich",
    version,
    about = "Exact checks for generalized Clifford algebras, Pfaffians, Picard lattices and K3 numerology"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    /// More detail in text output.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Generalized Clifford algebra representations.
    #[command(subcommand)]
    Gca(gca::GcaCommand),
    /// Pfaffians, determinants and nondegeneracy.
    #[command(subcommand)]
    Pfaff(pfaff::PfaffCommand),
    /// Picard lattice computations.
    #[command(subcommand)]
    Lattice(lattice::LatticeCommand),
    /// Closed-form numerical calculators.
    #[command(subcommand)]
    Calc(calc::CalcCommand),
    /// Replays recorded computations.
    #[command(subcommand)]
    Replay(ReplayCommand),
    /// Runs the acceptance criteria.
    Acceptance(AcceptanceArgs),
}

#[derive(Subcommand)]
enum ReplayCommand {
    /// Recomputes every ledger entry and compares it with its recorded value.
    Numerology {
        /// Print the ledger as JSON.
        #[arg(long)]
        json: bool,
        /// Replace a recorded value, as ID=VALUE (repeatable).
        #[arg(long = "recorded-value", value_parser = parse_override)]
        overrides: Vec<(usize, i64)>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Fault {
    PfaffianSign,
    ClockMatrix,
    LedgerConstant,
}

#[derive(Args)]
struct AcceptanceArgs {
    /// Seed for the randomized criteria.
    #[arg(long, default_value_t = DEFAULT_SEED)]
    seed: u64,
    /// Inject a fault (repeatable).
    #[arg(long, value_enum)]
    inject: Vec<Fault>,
    /// Run only these criteria, e.g. `1,8`.
    #[arg(long, value_delimiter = ',')]
    only: Vec<u32>,
}

/// Why a command did not succeed.
#[derive(Debug)]
pub enum Failure {
    /// Malformed input or usage; exit code 2.
    Input(String),
    /// Well-formed input whose mathematical check failed; exit code 1.
    Check(String),
}

pub type CmdResult = Result<(), Failure>;

pub struct Ctx {
    pub format: Format,
    pub verbose: u8,
}

impl Ctx {
    pub fn json(&self) -> bool {
        self.format == Format::Json
    }

    pub fn emit_json(&self, value: &serde_json::Value) {
        println!(
            "{}",
            serde_json::to_string_pretty(value).expect("serializable")
        );
    }
}

pub fn read_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    let text = fs::read_to_string(path)
        .map_err(|e| Failure::Input(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| Failure::Input(format!("{}: {e}", path.display())))
}

pub fn write_or_print(out: Option<&PathBuf>, text: &str) -> CmdResult {
    match out {
        Some(path) => fs::write(path, format!("{text}\n"))
            .map_err(|e| Failure::Input(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn parse_override(s: &str) -> Result<(usize, i64), String> {
    let (id, value) = s
        .split_once('=')
        .ok_or_else(|| format!("expected ID=VALUE, got {s:?}"))?;
    let id = id.trim().parse().map_err(|e| format!("bad id {id:?}: {e}"))?;
    let value = value
        .trim()
        .parse()
        .map_err(|e| format!("bad value {value:?}: {e}"))?;
    Ok((id, value))
}

fn replay(ctx: &Ctx, cmd: ReplayCommand) -> CmdResult {
    let ReplayCommand::Numerology { json, overrides } = cmd;
    let ledger = numerology_replay_with(&overrides);
    if json || ctx.json() {
        ctx.emit_json(&serde_json::to_value(&ledger).expect("serializable"));
    } else {
        println!(
            "{:>3}  {:<22} {:>8} {:>11}  status",
            "id", "key", "recorded", "recomputed"
        );
        for e in &ledger {
            let status = match e.status {
                LedgerStatus::Match => "match",
                LedgerStatus::Mismatch => "MISMATCH",
            };
            println!(
                "{:>3}  {:<22} {:>8} {:>11}  {}",
                e.id, e.key, e.paper_value, e.recomputed_value, status
            );
            if ctx.verbose > 0 {
                println!("       {}: {}", e.description, e.derivation);
                for a in &e.assumptions {
                    println!("       assumes {a}");
                }
            }
        }
    }
    let bad: Vec<String> = ledger
        .iter()
        .filter(|e| e.status == LedgerStatus::Mismatch)
        .map(|e| format!("#{} {}", e.id, e.key))
        .collect();
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("ledger mismatch: {}", bad.join(", "))))
    }
}

fn run_acceptance(ctx: &Ctx, args: AcceptanceArgs) -> CmdResult {
    let mut faults = Faults::default();
    for f in &args.inject {
        match f {
            Fault::PfaffianSign => faults.pfaffian_sign = true,
            Fault::ClockMatrix => faults.clock_matrix = true,
            Fault::LedgerConstant => faults.ledger_constant = true,
        }
    }
    let ids: Vec<u32> = if args.only.is_empty() {
        CRITERIA.iter().map(|c| c.id).collect()
    } else {
        for id in &args.only {
            if !CRITERIA.iter().any(|c| c.id == *id) {
                return Err(Failure::Input(format!("no criterion {id}")));
            }
        }
        args.only.clone()
    };
    let config = Config {
        seed: args.seed,
        faults,
    };
    let report = acceptance::run_selected(&config, &ids);
    if ctx.json() {
        ctx.emit_json(&serde_json::to_value(&report).expect("serializable"));
    } else {
        for r in &report.results {
            println!("{r}");
        }
    }
    let failed: Vec<String> = report
        .failed()
        .map(|r| format!("criterion {} ({})", r.id, r.name))
        .collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Check(format!("failed {}", failed.join(", "))))
    }
}

// Die quietly when stdout is closed early, e.g. piped into `head`.
#[cfg(unix)]
fn reset_sigpipe() {
    // SAFETY: runs before any other thread exists; SIG_DFL is a valid handler.
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
}

#[cfg(not(unix))]
fn reset_sigpipe() {}

fn main() -> ExitCode {
    reset_sigpipe();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            eprintln!("{}", text.lines().next().unwrap_or("usage error"));
            return ExitCode::from(2);
        }
    };
    let ctx = Ctx {
        format: cli.format,
        verbose: cli.verbose,
    };
    let result = match cli.command {
        Command::Gca(c) => gca::run(&ctx, c),
        Command::Pfaff(c) => pfaff::run(&ctx, c),
        Command::Lattice(c) => lattice::run(&ctx, c),
        Command::Calc(c) => calc::run(&ctx, c),
        Command::Replay(c) => replay(&ctx, c),
        Command::Acceptance(a) => run_acceptance(&ctx, a),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Input(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
