use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Text,
    Csv,
}

/// Coefficient order of `--coeffs`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Convention {
    /// Highest degree first, as for a Weil polynomial in `x`.
    Descending,
    /// Constant term first, as for an L-polynomial in `t`.
    Ascending,
}

pub const DEFAULT_SEED: u64 = 0x5eed;

#[derive(Debug, Parser)]
#[command(name = "brauer", version, about = "Brauer and Neron-Severi invariants of abelian surfaces over finite fields")]
pub struct Cli {
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    pub format: Format,
    /// Seed for anything randomised.
    #[arg(long, default_value_t = DEFAULT_SEED, global = true)]
    pub seed: u64,
    #[command(subcommand)]
    pub command: Command,
}

/// A polynomial given either by coefficients or by `(s1, s2)` for a surface.
#[derive(Debug, Args)]
pub struct PolyInput {
    #[arg(long)]
    pub q: u64,
    /// Comma-separated integer coefficients.
    #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with_all = ["s1", "s2"])]
    pub coeffs: Option<Vec<String>>,
    #[arg(long, value_enum, default_value_t = Convention::Descending)]
    pub convention: Convention,
    #[arg(long, allow_hyphen_values = true, requires = "s2")]
    pub s1: Option<i64>,
    #[arg(long, allow_hyphen_values = true, requires = "s1")]
    pub s2: Option<i64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Decide whether a polynomial is a q-Weil polynomial of the given weight.
    CheckWeil {
        #[command(flatten)]
        poly: PolyInput,
        #[arg(long, default_value_t = 1)]
        weight: u8,
    },
    /// Full invariant report for one isogeny class of abelian surfaces.
    Invariants {
        #[command(flatten)]
        poly: PolyInput,
        /// A JSON report from an earlier run to recompute and compare.
        #[arg(long)]
        verify: Option<PathBuf>,
    },
    /// All isogeny classes over F_q that pass the existence filter.
    Enumerate {
        #[arg(long)]
        q: u64,
        #[arg(long, conflicts_with_all = ["p_rank", "rho_bar"])]
        supersingular: bool,
        #[arg(long, conflicts_with = "rho_bar")]
        p_rank: Option<usize>,
        #[arg(long)]
        rho_bar: Option<u64>,
        /// Report a seeded random sample of this many classes.
        #[arg(long)]
        sample: Option<usize>,
    },
    /// Cyclotomic profiles with a given tau and their omega.
    OmegaCatalog {
        #[arg(long)]
        tau: u64,
    },
    /// Reproduce a table: ss-catalog, prime-field:P, omega-catalog:T or square-counts.
    Table {
        #[arg(long)]
        id: String,
    },
    /// Check the Brauer bounds and extremal classes over a set of q.
    BoundScan {
        #[arg(long, value_delimiter = ',', default_values_t = [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 25])]
        q: Vec<u64>,
    },
    /// Reconcile the local enumeration with LMFDB isogeny-class records.
    LmfdbVerify {
        #[arg(long)]
        q: u64,
        #[arg(long)]
        p_rank: Option<u32>,
        /// Use bundled fixtures only.
        #[arg(long)]
        offline: bool,
        #[arg(long)]
        cache: Option<PathBuf>,
        #[arg(long)]
        fixtures: Option<PathBuf>,
        #[arg(long)]
        base_url: Option<String>,
    },
}
