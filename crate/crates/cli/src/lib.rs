//! Command-line experiment runner.
//!
//! Every subcommand prints a table with a fixed column order, one row per
//! parameter cell, and a final `pass` column. Exit status is 0 when every cell
//! passes, 1 when some cell violates its asserted bound, and 2 on usage or
//! parameter errors.
//!
//! ```text
//! quditbench ebv --q 2..16 --n 1..3 --exact
//! quditbench keyrec --n 8 --q 23 --eta 1 --delta 0.01 --trials 100
//! quditbench qft-check --q 7 --format json --output qft.json
//! quditbench relabel-quantum --config relabel.conf --draws 20
//! ```

use std::ffi::OsString;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

pub mod commands;
pub mod config;
pub mod report;

use config::{EtaRule, IntList, List};
use report::{Format, Report};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_BOUND_VIOLATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "quditbench", version, about = "Seeded experiments for quantum learning and symmetric-key attacks")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Deutsch–Jozsa on constant and balanced functions.
    Dj(DjArgs),
    /// Bernstein–Vazirani recovery of parity secrets.
    Bv(BvArgs),
    /// Quantum parity learning under a global Bernoulli error bit.
    Lpn(LpnArgs),
    /// Extended Bernstein–Vazirani over Z_q without noise.
    Ebv(EbvArgs),
    /// Extended Bernstein–Vazirani on examples with per-input LWE errors.
    EbvLwe(EbvLweArgs),
    /// LWE key recovery from a decryption oracle, optionally with IND games.
    Keyrec(KeyrecArgs),
    /// One IND-CPA or IND-CCA1 game between a scheme and an adversary.
    IndGame(IndGameArgs),
    /// Classical distinguishing advantage against a relabeled function.
    RelabelClassical(RelabelClassicalArgs),
    /// Trace distance between query circuits run on f and its relabeling.
    RelabelQuantum(RelabelQuantumArgs),
    /// QFT unitarity, root-of-unity orthogonality and shift diagonality.
    QftCheck(QftCheckArgs),
    /// Validity of single-qubit channel outputs on random density matrices.
    Channels(ChannelsArgs),
    /// Three-qubit bit-flip code and 3-bit repetition code.
    Code3(Code3Args),
    /// Totient lower bound and brute-force totient cross-checks.
    Numbers(NumbersArgs),
}

#[derive(Debug, Clone, Args, Serialize)]
pub struct Common {
    /// Master seed; every cell derives its own stream from it.
    #[arg(long, env = "QUDITBENCH_SEED", default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value_t = Format::Csv)]
    pub format: Format,
    /// Write the report here instead of stdout.
    #[arg(long, short)]
    #[serde(skip)]
    pub output: Option<PathBuf>,
    /// File of `key=value` lines; explicit flags take precedence.
    #[arg(long)]
    #[serde(skip)]
    pub config: Option<PathBuf>,
    /// Leave `wall_time_s` out of JSON output.
    #[arg(long)]
    #[serde(skip)]
    pub no_timing: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum DjKind {
    Constant,
    Balanced,
}

macro_rules! parse_by_value_enum {
    ($($t:ty),*) => {$(
        impl std::str::FromStr for $t {
            type Err = String;

            fn from_str(s: &str) -> Result<Self, String> {
                <Self as clap::ValueEnum>::from_str(s, false)
            }
        }
    )*};
}

parse_by_value_enum!(DjKind, Dist);

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct DjArgs {
    /// Input bits, e.g. `1..6`.
    #[arg(long, default_value = "1..6")]
    pub n: IntList,
    /// Function kinds: constant, balanced.
    #[arg(long, default_value = "constant,balanced")]
    pub kind: List<DjKind>,
    /// Random functions per (n, kind).
    #[arg(long, default_value_t = 4)]
    pub functions: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct BvArgs {
    #[arg(long, default_value = "1..6")]
    pub n: IntList,
    /// Random secrets per n; 0 enumerates all 2ⁿ.
    #[arg(long, default_value_t = 0)]
    pub secrets: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct LpnArgs {
    #[arg(long, default_value = "1..6")]
    pub n: IntList,
    /// Bernoulli error rates.
    #[arg(long, default_value = "0,0.1,0.25,0.49")]
    pub eta: List<f64>,
    /// Random nonzero secrets per cell.
    #[arg(long, default_value_t = 20)]
    pub secrets: usize,
    /// Sampled runs per secret; 0 skips sampling.
    #[arg(long, default_value_t = 10)]
    pub trials: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct EbvArgs {
    #[arg(long, default_value = "2..16")]
    pub q: IntList,
    #[arg(long, default_value = "1..3")]
    pub n: IntList,
    /// Random secrets per (q, n).
    #[arg(long, default_value_t = 25)]
    pub secrets: usize,
    /// Report exact probabilities only, with no sampled runs.
    #[arg(long)]
    pub exact: bool,
    /// Sampled runs per secret when not `--exact`.
    #[arg(long, default_value_t = 4)]
    pub trials: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Dist {
    Uniform,
    Gaussian,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct EbvLweArgs {
    #[arg(long, default_value = "5,7,11,13")]
    pub q: IntList,
    #[arg(long, default_value = "1..2")]
    pub n: IntList,
    /// Error bounds; `q/6` means max(1, ⌊q/6⌋).
    #[arg(long, default_value = "1,q/6")]
    pub eta: List<EtaRule>,
    /// Error distributions: uniform, gaussian.
    #[arg(long, default_value = "uniform,gaussian")]
    pub dist: List<Dist>,
    /// Realized error vectors per cell.
    #[arg(long, default_value_t = 200)]
    pub draws: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Estimator {
    Consistency,
    CircularMean,
    PlainMean,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct KeyrecArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 23)]
    pub q: u64,
    /// Bound of the uniform error distribution.
    #[arg(long, default_value_t = 1)]
    pub eta: u64,
    /// Allowed failure probability of key recovery.
    #[arg(long, default_value_t = 0.01)]
    pub delta: f64,
    /// Independent keys to recover.
    #[arg(long, default_value_t = 100)]
    pub trials: usize,
    /// Decryption queries per key coordinate; derived from δ when omitted.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long, value_enum, default_value_t = Estimator::Consistency)]
    pub estimator: Estimator,
    /// Also play this many IND-CCA1 and IND-CPA games with the attack.
    #[arg(long, default_value_t = 0)]
    pub games: usize,
    /// Write game transcripts as JSON lines.
    #[arg(long)]
    #[serde(skip)]
    pub transcripts: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum SchemeKind {
    Prf,
    Periodized,
    Lwe,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum AdversaryKind {
    Random,
    Replay,
    ChallengeDecryptor,
    KeyRecovery,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ModeArg {
    Cpa,
    Cca1,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct IndGameArgs {
    #[arg(long, value_enum, default_value_t = SchemeKind::Lwe)]
    pub scheme: SchemeKind,
    #[arg(long, value_enum, default_value_t = AdversaryKind::Random)]
    pub adversary: AdversaryKind,
    #[arg(long, value_enum, default_value_t = ModeArg::Cca1)]
    pub mode: ModeArg,
    #[arg(long, default_value_t = 1000)]
    pub trials: usize,
    /// PRF input/output bits, periodized-PRF base bits, or LWE dimension.
    #[arg(long)]
    pub n: Option<usize>,
    /// LWE modulus.
    #[arg(long, default_value_t = 23)]
    pub q: u64,
    /// LWE uniform error bound.
    #[arg(long, default_value_t = 1)]
    pub eta: u64,
    /// Key-recovery queries per coordinate; derived for δ = 0.01 when omitted.
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    #[serde(skip)]
    pub transcripts: Option<PathBuf>,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum RelabelMode {
    Exhaustive,
    Sampled,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct RelabelClassicalArgs {
    #[arg(long, default_value = "1..12")]
    pub n: IntList,
    /// Output bits.
    #[arg(long, default_value = "1,4")]
    pub m: IntList,
    /// Query budgets; budgets above 2ⁿ are capped.
    #[arg(long, default_value = "1,4,16,64")]
    pub t: IntList,
    #[arg(long, value_enum, default_value_t = RelabelMode::Exhaustive)]
    pub mode: RelabelMode,
    /// Monte-Carlo trials in sampled mode.
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct RelabelQuantumArgs {
    #[arg(long, default_value_t = 8)]
    pub n: usize,
    #[arg(long, default_value_t = 4)]
    pub m: usize,
    /// Number of fixed high input bits.
    #[arg(long, default_value = "4,6,8")]
    pub mu: IntList,
    #[arg(long, default_value = "1,2,4")]
    pub t: IntList,
    /// Random (f, r*, s, circuit) draws per cell.
    #[arg(long, default_value_t = 100)]
    pub draws: usize,
    /// Queries to f used to prepare the advice state.
    #[arg(long, default_value_t = 1)]
    pub advice_queries: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct QftCheckArgs {
    #[arg(long, default_value = "2..16")]
    pub q: IntList,
    /// Largest deviation accepted.
    #[arg(long, default_value_t = 1e-10)]
    pub tol: f64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct ChannelsArgs {
    /// Channel parameters.
    #[arg(long, default_value = "0,0.1,0.25,0.5,0.9,1")]
    pub p: List<f64>,
    /// Random input density matrices per (channel, p).
    #[arg(long, default_value_t = 200)]
    pub samples: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct Code3Args {
    /// Flip rates for the repetition code.
    #[arg(long, default_value = "0.05,0.1,0.3")]
    pub p: List<f64>,
    /// Monte-Carlo transmissions per flip rate.
    #[arg(long, default_value_t = 100_000)]
    pub trials: usize,
    /// Random logical states pushed through the quantum code.
    #[arg(long, default_value_t = 100)]
    pub inputs: usize,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

#[derive(Debug, Clone, Args, Serialize)]
#[command(args_override_self = true)]
pub struct NumbersArgs {
    /// Moduli for the totient lower bound (q ≥ 3).
    #[arg(long, default_value = "3..1000000")]
    pub q: IntList,
    /// Brute-force totients are checked for 1..=brute-max.
    #[arg(long, default_value_t = 10_000)]
    pub brute_max: u64,
    #[command(flatten)]
    #[serde(flatten)]
    pub common: Common,
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Self::Dj(a) => &a.common,
            Self::Bv(a) => &a.common,
            Self::Lpn(a) => &a.common,
            Self::Ebv(a) => &a.common,
            Self::EbvLwe(a) => &a.common,
            Self::Keyrec(a) => &a.common,
            Self::IndGame(a) => &a.common,
            Self::RelabelClassical(a) => &a.common,
            Self::RelabelQuantum(a) => &a.common,
            Self::QftCheck(a) => &a.common,
            Self::Channels(a) => &a.common,
            Self::Code3(a) => &a.common,
            Self::Numbers(a) => &a.common,
        }
    }

    fn execute(&self) -> quditbench::Result<Report> {
        match self {
            Self::Dj(a) => commands::dj(a),
            Self::Bv(a) => commands::bv(a),
            Self::Lpn(a) => commands::lpn(a),
            Self::Ebv(a) => commands::ebv(a),
            Self::EbvLwe(a) => commands::ebv_lwe(a),
            Self::Keyrec(a) => commands::keyrec(a),
            Self::IndGame(a) => commands::ind_game(a),
            Self::RelabelClassical(a) => commands::relabel_classical(a),
            Self::RelabelQuantum(a) => commands::relabel_quantum(a),
            Self::QftCheck(a) => commands::qft_check(a),
            Self::Channels(a) => commands::channels(a),
            Self::Code3(a) => commands::code3(a),
            Self::Numbers(a) => commands::numbers(a),
        }
    }
}

/// Parses `argv` (program name first), runs the experiment and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString>,
{
    let argv: Vec<String> = argv.into_iter().map(|a| a.into().to_string_lossy().into_owned()).collect();
    let argv = match config::expand_argv(argv) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_PASS };
            let _ = e.print();
            return code;
        }
    };
    let common = cli.command.common().clone();
    let start = Instant::now();
    let report = match cli.command.execute() {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_USAGE;
        }
    };
    let elapsed = start.elapsed();
    let text = match common.format {
        Format::Csv => report.to_csv(),
        Format::Json => report.to_json((!common.no_timing).then_some(elapsed)),
    };
    match &common.output {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return EXIT_USAGE;
            }
        }
        None => print!("{text}"),
    }
    eprintln!("{} cells in {:.3} s", report.rows(), elapsed.as_secs_f64());
    if report.failing().is_empty() {
        EXIT_PASS
    } else {
        eprintln!("bound violated in {} cell(s):", report.failing().len());
        for cell in report.failing() {
            eprintln!("  {cell}");
        }
        EXIT_BOUND_VIOLATION
    }
}
