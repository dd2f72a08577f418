use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

mod commands;

#[derive(Parser)]
#[command(name = "multifold", version)]
#[command(about = "Multifold ball packings and unitrades in Hamming graphs")]
struct Cli {
    /// Machine-readable JSON output
    #[arg(long, global = true)]
    json: bool,

    /// Worker threads for the scans (0 = all cores)
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check that a code is a lambda-fold r-packing
    Verify(VerifyArgs),
    /// Full JSON report on a code
    Analyze(AnalyzeArgs),
    /// All applicable upper bounds for (n, q, lambda, r)
    Bound(BoundArgs),
    /// Write one of the built-in codes
    Construct(ConstructArgs),
    /// Classify extended 1-perfect unitrades up to equivalence
    Classify(ClassifyArgs),
    /// Distance partition or the five-cell partition of a code
    Partition(PartitionArgs),
}

#[derive(Args)]
struct VerifyArgs {
    /// Code file (stdin when omitted or `-`)
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Also require a 1-perfect unitrade
    #[arg(long)]
    unitrade: bool,
    /// Also require an extended 1-perfect unitrade
    #[arg(long, conflicts_with = "unitrade")]
    extended: bool,
}

#[derive(Args)]
struct AnalyzeArgs {
    input: Option<PathBuf>,
    /// Lambda used for the packing section
    #[arg(long, default_value_t = 1)]
    lambda: usize,
    /// Word whose weight distribution A_i(x) is reported
    #[arg(long)]
    x: Option<String>,
}

#[derive(Args)]
struct BoundArgs {
    #[arg(long)]
    n: usize,
    #[arg(long, default_value_t = 2)]
    q: usize,
    #[arg(long)]
    lambda: usize,
    #[arg(long, default_value_t = 1)]
    r: usize,
    /// Restrict to even-weight binary codes
    #[arg(long)]
    even_weight: bool,
}

#[derive(Clone, Copy, ValueEnum)]
enum Kind {
    Mds,
    Hamming,
    Lstar,
    Diag,
    P96a,
    P96b,
    P96c,
    Concat,
}

#[derive(Clone, Copy, ValueEnum)]
enum Part {
    /// The size-96 unitrade of length 10
    C4,
    /// The length-10 completely regular code
    C0,
    /// The size-96 two-fold packing of length 9
    Packing,
}

#[derive(Args)]
struct ConstructArgs {
    kind: Kind,
    /// Input files (concat)
    inputs: Vec<PathBuf>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    q: Option<usize>,
    /// Number of cosets (hamming)
    #[arg(long)]
    lambda: Option<usize>,
    /// Explicit coset syndromes `a,b;c,d` (hamming)
    #[arg(long)]
    syndromes: Option<String>,
    /// Which set of a size-96 construction to write
    #[arg(long, value_enum, default_value = "c4")]
    part: Part,
    /// Output file (stdout when omitted)
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    #[arg(long)]
    n: usize,
    /// Keep only non-bipartite classes
    #[arg(long)]
    nonbipartite: bool,
    #[arg(long)]
    max_cardinality: Option<usize>,
    /// Resume from and save to this file after every level
    #[arg(long)]
    checkpoint: Option<PathBuf>,
    /// Directory for one code file per class and a manifest
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum CellFormat {
    Words,
    Digest,
}

#[derive(Args)]
struct PartitionArgs {
    input: Option<PathBuf>,
    /// Split the distance-3 cell by this code
    #[arg(long, conflicts_with = "from_unitrade")]
    c4: Option<PathBuf>,
    /// Treat the input as a size-96 unitrade and rebuild its five cells
    #[arg(long)]
    from_unitrade: bool,
    #[arg(long, value_enum, default_value = "digest")]
    cells: CellFormat,
}

/// Failure classes mapped to exit codes.
enum Failure {
    /// The input was checked and the claim does not hold.
    Check(String),
    /// Bad arguments, unreadable or malformed input, unsupported parameters.
    Usage(String),
}

impl From<multifold::Error> for Failure {
    fn from(e: multifold::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn read_input(path: &Option<PathBuf>) -> Result<String, Failure> {
    match path {
        Some(p) if p.as_os_str() != "-" => {
            std::fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            Ok(s)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = multifold::par::with_threads(cli.threads, || commands::run(&cli));
    match out {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Check(msg)) => {
            eprintln!("check failed: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
