//! Argument parsing, report envelope, and exit codes.
//!
//! Exit codes: 0 every requested check passed; 1 a check failed;
//! 2 usage or input error; 3 result could not be certified
//! (inconclusive genericity).

use std::path::PathBuf;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use luroth_core::exactalg::{PrimeField, DEFAULT_PRIMES};
use luroth_core::secant::GenericityConfig;
use serde_json::{json, Value};

use crate::commands::{self, Agreement, Outcome};
use crate::wire::TensorKind;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INCONCLUSIVE: i32 = 3;

/// Name of the environment variable overriding the default prime list
/// (comma-separated; each entry must be a prime above 10^6).
pub const PRIMES_ENV: &str = "LUROTH_PRIMES";

#[derive(Parser)]
#[command(
    name = "luroth",
    version,
    about = "Seeded, reproducible exact-arithmetic rank and dimension experiments",
    after_help = "Exit codes: 0 pass, 1 check failed, 2 usage error, 3 inconclusive."
)]
pub struct Cli {
    /// Comma-separated prime moduli (> 10^6); overrides LUROTH_PRIMES
    /// and the built-in defaults.
    #[arg(long, global = true, value_delimiter = ',')]
    pub primes: Option<Vec<u64>>,

    /// Comma-separated RNG seeds (default: 7).
    #[arg(long, global = true, value_delimiter = ',')]
    pub seeds: Option<Vec<u64>>,

    /// Resampling cap for generic draws.
    #[arg(long, global = true, default_value_t = 10)]
    pub retry_cap: u32,

    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    pub output: Option<PathBuf>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum KindArg {
    /// Fully decomposable summands u (x) v (x) w.
    Segre,
    /// Partially symmetric summands u (x) v^2.
    #[value(name = "segre-veronese", alias = "sym")]
    SegreVeronese,
}

impl KindArg {
    fn wire(self) -> TensorKind {
        match self {
            KindArg::Segre => TensorKind::Segre,
            KindArg::SegreVeronese => TensorKind::Sym,
        }
    }

    fn as_str(self) -> &'static str {
        match self {
            KindArg::Segre => "segre",
            KindArg::SegreVeronese => "segre-veronese",
        }
    }
}

#[derive(Subcommand)]
pub enum Command {
    /// Dimension of the k-th secant variety via stacked tangent spaces.
    Terracini {
        #[arg(long)]
        kind: KindArg,
        #[arg(long)]
        n: usize,
        #[arg(long)]
        k: usize,
    },
    /// Check the three-factor block congruence and its determinant
    /// corollary on seeded or supplied slices.
    StrassenIdentity {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Rank of the skew contraction of a seeded or supplied tensor.
    GenericRank {
        #[arg(long, default_value = "segre-veronese")]
        kind: KindArg,
        #[arg(long)]
        n: Option<usize>,
        /// Number of decomposable summands; omit for a dense tensor.
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Pfaffian of the contraction: vanishing on the deficient secant,
    /// nonvanishing generically, and pencil degree 3n/2.
    PfaffianHypersurface {
        #[arg(long)]
        n: usize,
    },
    /// For odd n, the explicit point list whose tangents span everything.
    SpanningList {
        #[arg(long)]
        n: usize,
    },
    /// The degree-n determinantal curve of a partially symmetric tensor.
    Delta {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// The determinant identity for a polygon of n + 1 lines.
    Gon {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Certificate that the curve of an (n+1)-summand tensor passes
    /// through every vertex of its line configuration.
    Darboux {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Two routes to the determinantal curve of a rank-one-slice family.
    JumpingExpansion {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Dimension of the infinitesimal symmetry algebra of a tensor.
    Stabilizer {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Twisted-kernel section count of the section maps of a tensor.
    #[command(name = "monad-h0e1")]
    MonadH0e1 {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        r: usize,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Corank-5 check of the twisted map on a rank-one tensor.
    FourTerm {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Rank of the commutator of two symmetric matrices.
    Commutator {
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        input: Option<PathBuf>,
    },
    /// Closed-form counts and dimensions for the pair (r, n).
    Numerology {
        #[arg(long)]
        r: usize,
        #[arg(long)]
        n: usize,
    },
    /// Run the full acceptance suite, one pass/fail line per criterion.
    AllAcceptance,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Terracini { .. } => "terracini",
            Command::StrassenIdentity { .. } => "strassen-identity",
            Command::GenericRank { .. } => "generic-rank",
            Command::PfaffianHypersurface { .. } => "pfaffian-hypersurface",
            Command::SpanningList { .. } => "spanning-list",
            Command::Delta { .. } => "delta",
            Command::Gon { .. } => "gon",
            Command::Darboux { .. } => "darboux",
            Command::JumpingExpansion { .. } => "jumping-expansion",
            Command::Stabilizer { .. } => "stabilizer",
            Command::MonadH0e1 { .. } => "monad-h0e1",
            Command::FourTerm { .. } => "four-term",
            Command::Commutator { .. } => "commutator",
            Command::Numerology { .. } => "numerology",
            Command::AllAcceptance => "all-acceptance",
        }
    }
}

fn parse_prime_list(raw: &str) -> Result<Vec<u64>, String> {
    raw.split(',')
        .map(|s| s.trim().parse::<u64>().map_err(|_| format!("bad prime {s:?} in {PRIMES_ENV}")))
        .collect()
}

/// Flag > environment > built-in defaults; every entry validated.
pub fn resolve_config(cli: &Cli) -> Result<GenericityConfig, String> {
    let primes = match &cli.primes {
        Some(p) => p.clone(),
        None => match std::env::var(PRIMES_ENV) {
            Ok(raw) => parse_prime_list(&raw)?,
            Err(_) => DEFAULT_PRIMES.to_vec(),
        },
    };
    if primes.is_empty() {
        return Err("at least one prime is required".into());
    }
    for &p in &primes {
        PrimeField::new(p).map_err(|e| format!("invalid prime {p}: {e}"))?;
    }
    let seeds = cli.seeds.clone().unwrap_or_else(|| vec![7]);
    if seeds.is_empty() {
        return Err("at least one seed is required".into());
    }
    Ok(GenericityConfig { primes, seeds, retry_cap: cli.retry_cap })
}

fn load_input(path: &Option<PathBuf>) -> Result<Option<Value>, String> {
    match path {
        None => Ok(None),
        Some(p) => {
            let raw = std::fs::read_to_string(p)
                .map_err(|e| format!("cannot read {}: {e}", p.display()))?;
            let v: Value =
                serde_json::from_str(&raw).map_err(|e| format!("bad JSON in {}: {e}", p.display()))?;
            Ok(Some(v))
        }
    }
}

/// Per-command argument echo merged into the config block.
fn command_echo(cmd: &Command) -> Value {
    match cmd {
        Command::Terracini { kind, n, k } => {
            json!({"kind": kind.as_str(), "n": n, "k": k})
        }
        Command::StrassenIdentity { n, input } => {
            json!({"n": n, "input": input})
        }
        Command::GenericRank { kind, n, k, input } => {
            json!({"kind": kind.as_str(), "n": n, "k": k, "input": input})
        }
        Command::PfaffianHypersurface { n } | Command::SpanningList { n } => json!({"n": n}),
        Command::Delta { n, k, input } | Command::JumpingExpansion { n, k, input } => {
            json!({"n": n, "k": k, "input": input})
        }
        Command::Gon { n, input }
        | Command::Darboux { n, input }
        | Command::FourTerm { n, input }
        | Command::Commutator { n, input } => {
            json!({"n": n, "input": input})
        }
        Command::Stabilizer { n, k, input } => {
            json!({"n": n, "k": k, "input": input})
        }
        Command::MonadH0e1 { n, r, k, input } => {
            json!({"n": n, "r": r, "k": k, "input": input})
        }
        Command::Numerology { r, n } => json!({"r": r, "n": n}),
        Command::AllAcceptance => json!({}),
    }
}

fn dispatch(cmd: &Command, cfg: &GenericityConfig) -> Result<Outcome, String> {
    match cmd {
        Command::Terracini { kind, n, k } => commands::cmd_terracini(kind.wire(), *n, *k, cfg),
        Command::StrassenIdentity { n, input } => {
            commands::cmd_strassen_identity(*n, load_input(input)?.as_ref(), cfg)
        }
        Command::GenericRank { kind, n, k, input } => {
            commands::cmd_generic_rank(kind.wire(), *n, *k, load_input(input)?.as_ref(), cfg)
        }
        Command::PfaffianHypersurface { n } => commands::cmd_pfaffian_hypersurface(*n, cfg),
        Command::SpanningList { n } => commands::cmd_spanning_list(*n, cfg),
        Command::Delta { n, k, input } => {
            commands::cmd_delta(*n, *k, load_input(input)?.as_ref(), cfg)
        }
        Command::Gon { n, input } => commands::cmd_gon(*n, load_input(input)?.as_ref(), cfg),
        Command::Darboux { n, input } => {
            commands::cmd_darboux(*n, load_input(input)?.as_ref(), cfg)
        }
        Command::JumpingExpansion { n, k, input } => {
            commands::cmd_jumping_expansion(*n, *k, load_input(input)?.as_ref(), cfg)
        }
        Command::Stabilizer { n, k, input } => {
            commands::cmd_stabilizer(*n, *k, load_input(input)?.as_ref(), cfg)
        }
        Command::MonadH0e1 { n, r, k, input } => {
            commands::cmd_monad_h0e1(*n, *r, *k, load_input(input)?.as_ref(), cfg)
        }
        Command::FourTerm { n, input } => {
            commands::cmd_four_term(*n, load_input(input)?.as_ref(), cfg)
        }
        Command::Commutator { n, input } => {
            commands::cmd_commutator(*n, load_input(input)?.as_ref(), cfg)
        }
        Command::Numerology { r, n } => commands::cmd_numerology(*r, *n),
        Command::AllAcceptance => commands::cmd_all_acceptance(cfg),
    }
}

fn envelope(cmd: &Command, cfg: &GenericityConfig, outcome: &Outcome, elapsed_ms: u128) -> Value {
    let mut config = command_echo(cmd);
    let map = config.as_object_mut().expect("command echo is an object");
    map.insert("primes".into(), json!(cfg.primes));
    map.insert("seeds".into(), json!(cfg.seeds));
    map.insert("retry_cap".into(), json!(cfg.retry_cap));
    json!({
        "schema": 1,
        "command": cmd.name(),
        "claim": outcome.claim,
        "config": config,
        "agreement": outcome.agreement.as_str(),
        "passed": outcome.passed,
        "result": outcome.result,
        "elapsed_ms": elapsed_ms,
    })
}

/// Parse arguments from the process environment, run, print the report,
/// and return the exit code.
pub fn run() -> i32 {
    let cli = Cli::parse();
    run_parsed(&cli)
}

pub fn run_parsed(cli: &Cli) -> i32 {
    let cfg = match resolve_config(cli) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let started = Instant::now();
    let outcome = match dispatch(&cli.command, &cfg) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    if matches!(cli.command, Command::AllAcceptance) {
        if let Some(criteria) = outcome.result.get("criteria").and_then(Value::as_array) {
            for c in criteria {
                eprintln!(
                    "criterion {:>2} [{}] {}: {}",
                    c["id"],
                    c["claim"].as_str().unwrap_or("?"),
                    if c["passed"].as_bool() == Some(true) { "PASS" } else { "FAIL" },
                    c["details"].as_str().unwrap_or(""),
                );
            }
        }
    }
    let report = envelope(&cli.command, &cfg, &outcome, started.elapsed().as_millis());
    let rendered = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cli.output {
        None => println!("{rendered}"),
        Some(path) => {
            if let Err(e) = std::fs::write(path, rendered + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
    }
    exit_code(outcome.agreement, outcome.passed)
}

/// 3 when the result could not be certified, else 0/1 by pass/fail.
pub fn exit_code(agreement: Agreement, passed: bool) -> i32 {
    if agreement == Agreement::Inconclusive {
        EXIT_INCONCLUSIVE
    } else if passed {
        EXIT_PASS
    } else {
        EXIT_FAIL
    }
}
