//! Verification pipeline for the arithmetic of quadratic 5-cycles and the
//! rational points of the associated genus-2 curve.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use pentacycle::cert::Certificate;
use pentacycle::stages::{find_stage, run_all, run_stage, StageConfig};

#[derive(Parser)]
#[command(
    name = "pentacycle",
    version,
    about = "exact verification chain for 5-cycles of z^2 + c and the genus-2 curve behind them"
)]
struct Cli {
    /// Emit the certificate tree as JSON (deterministic, no run metadata)
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Degree and genus table of the period curves
    Genus {
        /// largest period to tabulate
        #[arg(long, default_value_t = 10)]
        max: u64,
    },
    /// Birational chain from the trace curve to the sextic model
    Model {
        /// print each intermediate curve of the chain
        #[arg(long)]
        emit_chain: bool,
    },
    /// Multiples of the base divisor over Q and over F_3
    Multiples {
        #[arg(long, default_value_t = 11)]
        limit: usize,
    },
    /// Point counts and Frobenius characteristic polynomials
    Frobenius {
        /// primes of good reduction
        #[arg(long = "p", default_value = "3,5,7", value_delimiter = ',')]
        primes: Vec<u64>,
    },
    /// The full 2-descent; exits 0 iff the rank certificate is produced
    Descent,
    /// The 3-adic argument and the six-point certificate
    RationalPoints,
    /// Endomorphism ring and non-modularity certificate
    Endomorphisms,
    /// Bounded-height scan of the 6-cycle trace curve
    Tau6Scan {
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// resumable checkpoint file
        #[arg(long)]
        checkpoint: Option<PathBuf>,
    },
    /// Run every stage and assemble the root certificate
    All {
        /// run a single stage by name
        #[arg(long)]
        only: Option<String>,
        #[arg(long, default_value_t = 100)]
        bound: i64,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
}

fn emit(cert: &Certificate, json: bool) -> ExitCode {
    if json {
        println!("{}", cert.to_json());
    } else {
        let mut out = String::new();
        cert.render_lines(0, &mut out);
        print!("{out}");
    }
    if cert.is_verified() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let mut cfg = StageConfig::default();
    let cert = match cli.command {
        Command::Genus { max } => {
            cfg.genus_max = max;
            run_named("genus", &cfg)
        }
        Command::Model { emit_chain } => {
            let c = run_named("model", &cfg);
            if emit_chain && !cli.json {
                if let Ok((_, steps)) = pentacycle::model::hyperelliptic_chain() {
                    for s in &steps {
                        println!(
                            "step {:?}: {} (cleared {})",
                            s.kind, s.substitution, s.divisor_cleared
                        );
                        let mut terms: Vec<String> = s
                            .after
                            .terms
                            .iter()
                            .map(|(&(i, j), v)| format!("({v}) a^{i} b^{j}"))
                            .collect();
                        terms.sort();
                        println!("  {}", terms.join(" + "));
                    }
                }
            }
            c
        }
        Command::Multiples { limit } => {
            cfg.multiples_limit = limit;
            run_named("multiples", &cfg)
        }
        Command::Frobenius { primes } => {
            cfg.frobenius_primes = primes;
            run_named("frobenius", &cfg)
        }
        Command::Descent => run_named("descent", &cfg),
        Command::RationalPoints => run_named("rational-points", &cfg),
        Command::Endomorphisms => run_named("endomorphisms", &cfg),
        Command::Tau6Scan {
            bound,
            jobs,
            checkpoint,
        } => {
            cfg.scan_bound = bound;
            cfg.jobs = jobs;
            cfg.checkpoint = checkpoint;
            run_named("tau6-scan", &cfg)
        }
        Command::All { only, bound, jobs } => {
            cfg.scan_bound = bound;
            cfg.jobs = jobs;
            match only {
                Some(name) => match find_stage(&name) {
                    Some(stage) => run_stage(stage.as_ref(), &cfg),
                    None => {
                        eprintln!("unknown stage: {name}");
                        return ExitCode::from(2);
                    }
                },
                None => run_all(&cfg),
            }
        }
    };
    emit(&cert, cli.json)
}

fn run_named(name: &str, cfg: &StageConfig) -> Certificate {
    let stage = find_stage(name).expect("registered stage");
    run_stage(stage.as_ref(), cfg)
}
