use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

mod cli;

/// Construct, validate, and instantiate complete families of
/// pairing-friendly elliptic curves with exact rational arithmetic.
#[derive(Parser)]
#[command(name = "bwfamily", version, max_term_width = 100)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the k-th cyclotomic polynomial.
    Cyclotomic {
        /// Index k >= 1.
        k: u64,
    },
    /// Run the construction in Q[x]/(r) and validate the result.
    Construct(ConstructArgs),
    /// Check the five defining conditions of a stored family.
    Validate {
        /// Registry name (bn, example-k4-d2, example-k6-d1) or a JSON file path.
        family: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Scan integer arguments for certified curve parameters.
    Instantiate(InstantiateArgs),
    /// Rebuild registry families or rerun the nonexistence checks.
    Reproduce {
        /// bn | example-k4-d2 | example-k6-d1 | theorem1 | theorem3-scan
        target: String,
        /// Emit JSON instead of text.
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct ConstructArgs {
    /// Embedding degree.
    #[arg(long)]
    k: u64,
    /// CM discriminant (square-free, positive).
    #[arg(long = "D", visible_alias = "d")]
    d: u64,
    /// Subgroup order polynomial r(x), irreducible with positive leading
    /// coefficient.
    #[arg(long)]
    r: String,
    /// Image of a primitive k-th root of unity in Q[x]/(r).
    #[arg(long)]
    zeta: String,
    /// Square root of -D in Q[x]/(r); defaults to the built-in table.
    #[arg(long)]
    sqrt: Option<String>,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

#[derive(Args)]
#[group(id = "range", requires_all = ["x_start", "x_end"], multiple = true, conflicts_with = "bitsgroup")]
struct RangeArgs {
    /// First argument of the scan range.
    #[arg(long, allow_hyphen_values = true)]
    x_start: Option<String>,
    /// Last argument of the scan range.
    #[arg(long, allow_hyphen_values = true)]
    x_end: Option<String>,
}

#[derive(Args)]
struct InstantiateArgs {
    /// Registry name or JSON file path.
    family: String,
    #[command(flatten)]
    range: RangeArgs,
    /// Target bit length of r; scans arguments with r in [2^(bits-1), 2^(bits+1)].
    #[arg(long, group = "bitsgroup", requires = "count")]
    bits: Option<u32>,
    /// Stop after this many certified hits.
    #[arg(long)]
    count: Option<usize>,
    /// Seed for primality witnesses above the deterministic range.
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Emit JSON instead of text.
    #[arg(long)]
    json: bool,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Cyclotomic { k } => cli::cmd_cyclotomic(k),
        Command::Construct(args) => cli::cmd_construct(
            &args.r,
            &args.zeta,
            args.k,
            args.d,
            args.sqrt.as_deref(),
            args.json,
        ),
        Command::Validate { family, json } => cli::cmd_validate(&family, json),
        Command::Instantiate(args) => cli::cmd_instantiate(
            &args.family,
            args.range.x_start.as_deref(),
            args.range.x_end.as_deref(),
            args.bits,
            args.count,
            args.seed,
            args.json,
        ),
        Command::Reproduce { target, json } => cli::cmd_reproduce(&target, json),
    };
    if !result.payload.is_empty() {
        println!("{}", result.payload);
    }
    ExitCode::from(result.code)
}
