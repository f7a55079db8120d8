//! `ramsey`: solve small online Ramsey games, sweep the star-versus-path
//! strategies, audit and replay transcripts, play in the terminal, or run
//! the play service.
//!
//! Exit status: 0 on success, 2 when a check finds a counterexample or
//! violation, 1 on usage or internal errors.

mod play;

use std::fs;
use std::io::{self, BufRead};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use ramsey_core::engine::{Status, Transcript};
use ramsey_core::graph::{TargetPair, TargetSpec};
use ramsey_core::solver::{
    audit_blocking_painter, verify_lower_with_budget, verify_upper_with_cap, RamseyValue, Solver,
    VerificationReport,
};

#[derive(Parser, Debug)]
#[command(name = "ramsey", version, about = "Online Ramsey game tools")]
struct Cli {
    /// print reports as JSON on standard output
    #[arg(long, global = true)]
    json: bool,

    /// worker threads for the sweeps (default: one per core)
    #[arg(long, global = true, env = "RAMSEY_WORKERS")]
    workers: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact online Ramsey number of a target pair by minimax search
    Solve {
        /// red target, e.g. S3, P4, C3, K3, M2 or E[0-1,1-2]
        #[arg(long)]
        red: TargetSpec,
        #[arg(long)]
        blue: TargetSpec,
        /// give up above this many rounds
        #[arg(long, default_value_t = 8)]
        max_budget: usize,
    },
    /// Check the constructive Builder against every Painter reply
    VerifyUpper {
        #[arg(long, value_parser = parse_order)]
        l: usize,
        /// round cap (default floor(3l/2))
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Check the blocking painter against every Builder line
    VerifyLower {
        #[arg(long, value_parser = parse_order)]
        l: usize,
        /// Builder moves to survive (default floor(3l/2) - 1)
        #[arg(long)]
        budget: Option<usize>,
    },
    /// Audit a transcript played against the blocking painter
    Audit {
        #[arg(long = "in")]
        input: PathBuf,
        /// path order; defaults to the transcript's blue target
        #[arg(long, value_parser = parse_order)]
        l: Option<usize>,
    },
    /// Play in the terminal
    Play {
        #[arg(long, value_parser = parse_order)]
        l: usize,
        #[arg(long = "as", value_enum, default_value_t = Side::Painter)]
        side: Side,
        /// machine painter when playing Builder: blocking or random(<seed>)
        #[arg(long)]
        opponent: Option<String>,
        /// write the finished transcript here
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Pretty-print a transcript after replaying it
    Replay {
        #[arg(long = "in")]
        input: PathBuf,
    },
    /// Start the HTTP play service
    Serve {
        #[arg(long, default_value_t = 8080)]
        port: u16,
        #[arg(long)]
        data_dir: Option<PathBuf>,
        /// seconds before an idle session is dropped
        #[arg(long, default_value_t = 1800)]
        idle_timeout: u64,
        #[arg(long, default_value = "127.0.0.1")]
        host: String,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Side {
    Painter,
    Builder,
}

fn parse_order(s: &str) -> Result<usize, String> {
    let l: usize = s.parse().map_err(|_| format!("not a number: {s}"))?;
    if l < 2 {
        return Err("path order must be at least 2".into());
    }
    let max = ramsey_service::Config::default().max_l;
    if l > max {
        return Err(format!("path order must be at most {max}"));
    }
    Ok(l)
}

/// What a command found. `Failed` maps to exit status 2.
enum Outcome {
    Ok,
    Failed,
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            let _ = e.print();
            return match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => ExitCode::SUCCESS,
                _ => ExitCode::from(1),
            };
        }
    };
    if let Some(n) = cli.workers {
        if n == 0 {
            eprintln!("error: --workers must be positive");
            return ExitCode::from(1);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
        {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(&cli) {
        Ok(Outcome::Ok) => ExitCode::SUCCESS,
        Ok(Outcome::Failed) => ExitCode::from(2),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome, String> {
    match &cli.command {
        Command::Solve {
            red,
            blue,
            max_budget,
        } => solve(cli.json, red, blue, *max_budget),
        Command::VerifyUpper { l, budget } => {
            let cap = budget.unwrap_or(ramsey_core::builder::budget(*l));
            report(cli.json, verify_upper_with_cap(*l, cap))
        }
        Command::VerifyLower { l, budget } => {
            let rounds = budget.unwrap_or(ramsey_core::builder::budget(*l) - 1);
            let r = verify_lower_with_budget(*l, rounds).map_err(|e| e.to_string())?;
            report(cli.json, r)
        }
        Command::Audit { input, l } => audit(cli.json, input, *l),
        Command::Replay { input } => replay(cli.json, input),
        Command::Play {
            l,
            side,
            opponent,
            out,
        } => {
            let stdin = io::stdin();
            let mut input = stdin.lock();
            play::run(
                &mut input as &mut dyn BufRead,
                &mut io::stdout(),
                *l,
                *side == Side::Builder,
                opponent.as_deref(),
                out.as_deref(),
            )
        }
        Command::Serve {
            port,
            data_dir,
            idle_timeout,
            host,
        } => {
            let addr = format!("{host}:{port}")
                .parse()
                .map_err(|e| format!("bad address {host}:{port}: {e}"))?;
            let config = ramsey_service::Config {
                data_dir: data_dir.clone(),
                idle_timeout: Duration::from_secs(*idle_timeout),
                ..ramsey_service::Config::default()
            };
            let rt = tokio::runtime::Runtime::new().map_err(|e| e.to_string())?;
            rt.block_on(ramsey_service::serve(addr, config))
                .map_err(|e| e.to_string())?;
            Ok(Outcome::Ok)
        }
    }
}

fn solve(
    json: bool,
    red: &TargetSpec,
    blue: &TargetSpec,
    max_budget: usize,
) -> Result<Outcome, String> {
    let started = Instant::now();
    let mut solver =
        Solver::new(TargetPair::new(red.clone(), blue.clone())).map_err(|e| e.to_string())?;
    let value = solver
        .ramsey_number(max_budget)
        .map_err(|e| e.to_string())?;
    if json {
        let body = json!({
            "red": red,
            "blue": blue,
            "max_budget": max_budget,
            "value": match value {
                RamseyValue::Exact(v) => json!(v),
                RamseyValue::UnknownAbove(_) => json!(null),
            },
            "nodes": solver.nodes(),
            "memo": solver.memo_len(),
            "seconds": started.elapsed().as_secs_f64(),
        });
        println!("{body}");
    } else {
        match value {
            RamseyValue::Exact(v) => println!("{v}"),
            RamseyValue::UnknownAbove(b) => println!("unknown, exceeds {b}"),
        }
    }
    Ok(Outcome::Ok)
}

fn report(json: bool, r: VerificationReport) -> Result<Outcome, String> {
    if json {
        println!("{}", r.to_json());
    } else if r.is_verified() {
        println!("verified, max_rounds={}", r.max_rounds);
    } else {
        println!("counterexample");
        if let Some(d) = &r.detail {
            println!("{d}");
        }
        if let Some(t) = &r.transcript {
            println!("{}", t.to_json());
        }
    }
    Ok(if r.is_verified() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn load(path: &Path) -> Result<Transcript, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    Transcript::from_json(&text).map_err(|e| format!("{}: {e}", path.display()))
}

fn audit(json: bool, input: &Path, l: Option<usize>) -> Result<Outcome, String> {
    let t = load(input)?;
    let l = match (l, &t.targets.blue) {
        (Some(l), _) => l,
        (None, TargetSpec::Path(n)) => *n,
        (None, other) => return Err(format!("blue target is {other}, pass --l")),
    };
    match audit_blocking_painter(&t.moves, l) {
        Ok(a) => {
            if json {
                println!("{}", json!({"result": "ok", "audit": a}));
            } else {
                println!(
                    "ok: red_edges={} blue_edges={} x={} s={} longest_blue={}",
                    a.red_edges, a.blue_edges, a.x, a.s, a.longest_blue
                );
            }
            Ok(Outcome::Ok)
        }
        Err(v) => {
            if json {
                println!(
                    "{}",
                    json!({"result": "violation", "index": v.index, "reason": v.reason})
                );
            } else {
                println!("violation: {v}");
            }
            Ok(Outcome::Failed)
        }
    }
}

fn replay(json: bool, input: &Path) -> Result<Outcome, String> {
    let t = load(input)?;
    let checked = t.replay();
    if json {
        let mut body = json!({"transcript": t, "consistent": checked.is_ok()});
        if let Err(e) = &checked {
            body["error"] = json!(e.to_string());
        }
        println!("{body}");
    } else {
        println!(
            "red {} vs blue {}, cap {}",
            t.targets.red, t.targets.blue, t.cap
        );
        let notes = t.trace.as_deref().unwrap_or(&[]);
        for (i, m) in t.moves.iter().enumerate() {
            match notes.get(i) {
                Some(n) if !n.frame.is_empty() => {
                    println!(
                        "{:>3}. {}-{} {}  [{} {}]",
                        m.round, m.u, m.v, m.color, n.frame, n.label
                    )
                }
                _ => println!("{:>3}. {}-{} {}", m.round, m.u, m.v, m.color),
            }
        }
        println!("{} after {} rounds", status_word(t.status), t.rounds);
        if let Err(e) = &checked {
            println!("replay mismatch: {e}");
        }
    }
    Ok(if checked.is_ok() {
        Outcome::Ok
    } else {
        Outcome::Failed
    })
}

fn status_word(s: Status) -> &'static str {
    match s {
        Status::Ongoing => "ongoing",
        Status::RedHit => "red_hit",
        Status::BlueHit => "blue_hit",
    }
}
