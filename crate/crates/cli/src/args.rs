use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::output::Format;

#[derive(Debug, Parser)]
#[command(name = "numfac", version, about = "Factorization invariants of numerical monoids")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct MonoidArgs {
    /// Comma-separated generators, e.g. 6,9,20. Redundant ones are dropped.
    #[arg(long, value_name = "N1,N2,...")]
    pub gens: String,
    /// Output format [default: plain, csv for plotdata]
    #[arg(long, value_enum)]
    pub format: Option<Format>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DomainArg {
    Monoid,
    Quotient,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Dynamic algorithm; reports (value, length) pairs
    Dp,
    /// Apéry-set intersections
    Apery,
    /// Exhaustive search
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Plot {
    Delta,
    Omega,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal generators, Frobenius number, genus and type
    Info {
        #[command(flatten)]
        monoid: MonoidArgs,
    },
    /// Whether n is an element
    Contains {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Apéry set of an element, or the intersection of generator Apéry sets
    Apery {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Base element [default: multiplicity]
        #[arg(long, allow_hyphen_values = true, conflicts_with = "subset")]
        n: Option<i64>,
        /// Comma-separated generators whose Apéry sets are intersected
        #[arg(long, value_delimiter = ',')]
        subset: Option<Vec<i64>>,
    },
    /// Pseudo-Frobenius numbers
    PseudoFrobenius {
        #[command(flatten)]
        monoid: MonoidArgs,
    },
    /// Factorization set Z(n)
    Factorizations {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Emit JSON Lines, one factorization per line
        #[arg(long)]
        stream: bool,
    },
    /// Z(m) for every element m ≤ n
    FactorizationsUpTo {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        /// Emit JSON Lines, one element per line
        #[arg(long)]
        stream: bool,
    },
    /// Length set L(n)
    Lengths {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Delta set Δ(n) of an element
    Delta {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// Delta set Δ(S) of the monoid
    DeltaSet {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Known start N of periodic behaviour; scans up to N + lcm(n_1, n_k)
        #[arg(long)]
        bound: Option<i64>,
    },
    /// Eventual period of Δ(m) and the last element breaking it
    DeltaPeriodicity {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Last element scanned [default: scan limit of delta-set + lcm(n_1, n_k)]
        #[arg(long)]
        horizon: Option<i64>,
        /// Known start of periodic behaviour, used for the default horizon
        #[arg(long)]
        bound: Option<i64>,
    },
    /// ω(n)
    Omega {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
    },
    /// ω(m) for every m ≤ n in the chosen domain
    OmegaUpTo {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = DomainArg::Monoid)]
        domain: DomainArg,
        /// Emit JSON Lines, one value per line
        #[arg(long)]
        stream: bool,
    },
    /// Maximal bullets of n
    Bullets {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, allow_hyphen_values = true)]
        n: i64,
        #[arg(long, value_enum, default_value_t = Method::Dp)]
        method: Method,
    },
    /// Quasilinear threshold, offsets and dissonance of ω
    Quasilinear {
        #[command(flatten)]
        monoid: MonoidArgs,
    },
    /// Point past which ω(n + n_1) = ω(n) + 1
    Dissonance {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, value_enum, default_value_t = DomainArg::Monoid)]
        domain: DomainArg,
    },
    /// Rows for plotting Δ(n) or ω(n)
    Plotdata {
        #[command(flatten)]
        monoid: MonoidArgs,
        #[arg(long, value_enum)]
        plot: Plot,
        /// Last n plotted
        #[arg(long, allow_hyphen_values = true)]
        horizon: i64,
        /// Emit JSON Lines, one row per line
        #[arg(long)]
        stream: bool,
    },
    /// Cross-check the dynamic algorithms against brute-force oracles
    Verify {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Largest element checked
        #[arg(long, default_value_t = 500)]
        n: i64,
    },
    /// Time dynamic against naive computation
    Bench {
        #[command(flatten)]
        monoid: MonoidArgs,
        /// Largest element computed
        #[arg(long, default_value_t = 300)]
        n: i64,
    },
}
