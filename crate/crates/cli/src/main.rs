mod commands;
mod defs;
mod session;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use serde_json::json;

use commands::{Ctx, Outcome};
use session::{SessionLog, SCHEMA};

#[derive(Parser, Debug)]
#[command(name = "liaison", version, about = "Module liaison over graded polynomial rings")]
struct Cli {
    /// Definition file; the built-in fixtures are used when absent.
    #[arg(long, short = 'd', global = true)]
    defs: Option<PathBuf>,
    /// Print the JSON report instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[arg(long, global = true, env = "LIAISON_LAB_SEED")]
    seed: Option<u64>,
    /// Degree window `lo:hi` for Hilbert and cohomology checks.
    #[arg(long, global = true, allow_hyphen_values = true, value_parser = parse_window)]
    window: Option<(i64, i64)>,
    /// Session log to append to (or to verify).
    #[arg(long, global = true)]
    session: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct By {
    /// Quasi-Gorenstein module to link by.
    #[arg(long, conflicts_with = "auto", required_unless_present = "auto")]
    by: Option<String>,
    /// Build the linking module automatically.
    #[arg(long)]
    auto: bool,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Minimal free resolution and Betti table.
    Resolve {
        #[arg(long)]
        module: String,
    },
    /// Hilbert data, Hilbert function and local cohomology on the window.
    Hilbert {
        #[arg(long)]
        module: String,
    },
    /// Certify that a module is quasi-Gorenstein.
    QgorCheck {
        #[arg(long)]
        module: String,
    },
    /// Link a module once.
    Link {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        by: By,
    },
    /// Link twice by the same module and compare with the input.
    DoubleLink {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        by: By,
    },
    /// Q-type resolution of the linked module.
    Exchange {
        #[arg(long)]
        module: String,
        #[command(flatten)]
        by: By,
    },
    /// Stable classes of the E- and Q-type tails.
    PhiPsi {
        #[arg(long)]
        module: String,
    },
    /// Stable equivalence of two modules.
    StableEquiv {
        #[arg(long)]
        module: String,
        #[arg(long)]
        other: String,
    },
    /// Reduce a square matrix to a single entry by matrix links.
    Matreduce {
        #[arg(long)]
        matrix: String,
    },
    /// Whether `R/I` and `R/J` are linked by the Gorenstein ideal `C`.
    SmLink {
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        other: String,
        #[arg(long)]
        by: String,
    },
    /// Re-verify every certificate in the session log.
    VerifyChain,
    /// Even chain from `M` to `M(shift)`.
    ShiftChain {
        #[arg(long)]
        module: String,
        #[arg(long, allow_hyphen_values = true)]
        shift: i64,
    },
    /// Chain from `M ⊕ D` back to `M` for a quasi-Gorenstein `D`.
    SplitChain {
        #[arg(long)]
        module: String,
        #[arg(long)]
        summand: String,
    },
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Resolve { .. } => "resolve",
            Command::Hilbert { .. } => "hilbert",
            Command::QgorCheck { .. } => "qgor-check",
            Command::Link { .. } => "link",
            Command::DoubleLink { .. } => "double-link",
            Command::Exchange { .. } => "exchange",
            Command::PhiPsi { .. } => "phi-psi",
            Command::StableEquiv { .. } => "stable-equiv",
            Command::Matreduce { .. } => "matreduce",
            Command::SmLink { .. } => "sm-link",
            Command::VerifyChain => "verify-chain",
            Command::ShiftChain { .. } => "shift-chain",
            Command::SplitChain { .. } => "split-chain",
        }
    }
}

fn parse_window(s: &str) -> Result<(i64, i64), String> {
    let (lo, hi) = s.split_once(':').ok_or("expected `lo:hi`")?;
    let lo: i64 = lo.trim().parse().map_err(|_| format!("bad bound `{lo}`"))?;
    let hi: i64 = hi.trim().parse().map_err(|_| format!("bad bound `{hi}`"))?;
    if lo > hi {
        return Err(format!("empty window {lo}:{hi}"));
    }
    Ok((lo, hi))
}

/// A failed check, as opposed to bad input.
struct VerificationFailed;

fn run(cli: &Cli) -> Result<Result<(), VerificationFailed>> {
    let mut seed = cli.seed.unwrap_or_else(rand::random);
    let out: Outcome = if let Command::VerifyChain = cli.command {
        let path = cli.session.as_ref().ok_or_else(|| anyhow!("verify-chain needs --session"))?;
        if !path.exists() {
            return Err(anyhow!("no session at {}", path.display()));
        }
        match SessionLog::load(path) {
            Ok(log) => {
                seed = log.seed;
                commands::verify_chain(&log)?
            }
            Err(e) => {
                eprintln!("error: {e:#}");
                return Ok(Err(VerificationFailed));
            }
        }
    } else {
        let defs = match &cli.defs {
            Some(p) => {
                let text = std::fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?;
                defs::parse(&text).with_context(|| format!("in {}", p.display()))?
            }
            None => defs::parse(defs::BUILTIN)?,
        };
        let mut ctx = Ctx::new(&defs, seed, cli.window);
        let ctx = &mut ctx;
        let out = match &cli.command {
            Command::Resolve { module } => commands::resolve(ctx, module)?,
            Command::Hilbert { module } => commands::hilbert(ctx, module)?,
            Command::QgorCheck { module } => commands::qgor_check(ctx, module)?,
            Command::Link { module, by } => commands::link_cmd(ctx, module, by.by.as_deref())?,
            Command::DoubleLink { module, by } => commands::double_link(ctx, module, by.by.as_deref())?,
            Command::Exchange { module, by } => commands::exchange_cmd(ctx, module, by.by.as_deref())?,
            Command::PhiPsi { module } => commands::phi_psi_cmd(ctx, module)?,
            Command::StableEquiv { module, other } => commands::stable_equiv_cmd(ctx, module, other)?,
            Command::Matreduce { matrix } => commands::matreduce(ctx, matrix)?,
            Command::SmLink { ideal, other, by } => commands::sm_link(ctx, ideal, other, by)?,
            Command::ShiftChain { module, shift } => commands::shift_chain(ctx, module, *shift)?,
            Command::SplitChain { module, summand } => commands::split_chain(ctx, module, summand)?,
            Command::VerifyChain => unreachable!("handled above"),
        };
        if let (Some(path), Some(rec)) = (&cli.session, &out.record) {
            SessionLog::append(path, &defs.ring, seed, rec.clone())?;
        }
        out
    };
    if cli.json {
        let doc = json!({
            "schema": SCHEMA,
            "command": cli.command.name(),
            "seed": seed,
            "ok": out.ok,
            "result": out.json,
        });
        println!("{}", serde_json::to_string_pretty(&doc)?);
    } else {
        print!("{}", out.text);
        println!("seed {seed}");
    }
    Ok(if out.ok { Ok(()) } else { Err(VerificationFailed) })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(Ok(())) => ExitCode::SUCCESS,
        Ok(Err(VerificationFailed)) => ExitCode::from(2),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
    }
}
