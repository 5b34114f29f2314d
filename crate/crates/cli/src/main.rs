//! `adesign`: build, lift, develop and verify difference families and designs.
//!
//! Exit status: 0 when the object verifies or was constructed, 1 when a
//! verdict is negative, 2 on usage or input errors.

mod certificate;
mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

pub const THREADS_ENV: &str = "ADESIGN_THREADS";

#[derive(Parser, Debug)]
#[command(
    name = "adesign",
    version,
    about = "Additive and super-regular 2-designs from difference families"
)]
struct Cli {
    /// Worker threads (defaults to $ADESIGN_THREADS, then the number of CPUs).
    #[arg(long, global = true)]
    threads: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Verify a family file and write `<file>.cert`.
    Verify {
        #[arg(value_enum)]
        role: VerifyRole,
        file: PathBuf,
        /// Do not write a certificate file.
        #[arg(long)]
        no_cert: bool,
    },
    /// Build one of the explicit constructions.
    Build {
        #[command(subcommand)]
        what: BuildCommand,
    },
    /// Lift a strong difference family over G to a relative family over G x F_q.
    Lift {
        /// Strong difference family file.
        file: PathBuf,
        #[arg(long, value_enum)]
        strategy: LiftStrategy,
        /// Field order q.
        #[arg(long)]
        q: u64,
        /// Ascending coefficients of the field modulus, e.g. 2,1,1.
        #[arg(long)]
        modulus: Option<String>,
        /// Candidate order seed (and first psi seed).
        #[arg(long)]
        seed: Option<u64>,
        /// Search node budget.
        #[arg(long, default_value_t = additive_designs::lifting::DEFAULT_BUDGET)]
        budget: u64,
        /// Number of psi assignments tried by the greedy and zero-sum searches.
        #[arg(long, default_value_t = 10_000)]
        psi_attempts: u64,
        /// For the simple strategy: use a symmetric set and halve lambda.
        #[arg(long)]
        signed: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Develop a relative difference family into a design.
    Develop {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Extend the field of a (G x F_q, G x {0}, k, 1) family to F_{q^n}.
    Extend {
        file: PathBuf,
        #[arg(long)]
        degree: u32,
        /// Also translate the blocks to make the family additive.
        #[arg(long)]
        zero_sum: bool,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Look for two lines whose closure is not a plane in a 2-(p^n,p,1) design.
    Anomaly {
        file: PathBuf,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = additive_designs::designs::DEFAULT_ANOMALY_CAP)]
        cap: usize,
        #[arg(long)]
        no_cert: bool,
    },
    /// Arithmetic admissibility of (v, k), or classification of k alone.
    Admissibility {
        /// Number of points; products of powers such as 3*2^6*5^10 are accepted.
        #[arg(long)]
        v: Option<String>,
        #[arg(long)]
        k: u64,
    },
    /// Fixtures shipped with the library.
    Catalog {
        #[command(subcommand)]
        what: CatalogCommand,
    },
}

#[derive(Subcommand, Debug)]
pub enum BuildCommand {
    /// The Paley multiset {0} u 2*squares over F_q.
    Paley {
        #[arg(long)]
        q: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// The Paley-union (q, k, k(k-1)/q)-SDF for a constructible block size.
    Theorem82 {
        #[arg(long)]
        k: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// All zero-sum k-tuples over Z_n1 x ... as a difference matrix.
    ZeroSumDm {
        /// Cyclic factors, comma separated.
        #[arg(long, value_delimiter = ',')]
        group: Vec<u64>,
        #[arg(long)]
        k: usize,
        #[arg(long, default_value_t = 1 << 20)]
        cap: u128,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Points and lines of AG(n, q).
    Ag {
        #[arg(long)]
        n: u32,
        #[arg(long)]
        q: u64,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Compose an SDF over G with a difference matrix over H.
    Jungnickel {
        #[arg(long)]
        sdf: PathBuf,
        #[arg(long)]
        dm: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Subcommand, Debug)]
pub enum CatalogCommand {
    List,
    Emit {
        name: String,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum VerifyRole {
    Sdf,
    Df,
    Rdf,
    Dm,
    Design,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum LiftStrategy {
    Greedy,
    ZeroSum,
    Signed,
    Simple,
}

/// Outcome of a command that ran to completion.
pub enum Outcome {
    Positive,
    Negative,
}

fn configure_threads(flag: Option<usize>) -> anyhow::Result<()> {
    let n = match flag {
        Some(n) => Some(n),
        None => match std::env::var(THREADS_ENV) {
            Ok(s) => Some(s.trim().parse().map_err(|_| {
                anyhow::anyhow!("{THREADS_ENV} must be a positive integer, got {s:?}")
            })?),
            Err(_) => None,
        },
    };
    if let Some(n) = n {
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()?;
    }
    Ok(())
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn"))
        .format_timestamp(None)
        .init();
    let cli = Cli::parse();
    if let Err(e) = configure_threads(cli.threads) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    match commands::run(cli.command) {
        Ok(Outcome::Positive) => ExitCode::SUCCESS,
        Ok(Outcome::Negative) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
