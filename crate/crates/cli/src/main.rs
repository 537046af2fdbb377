//! `cbasis`: closure systems and implicational bases from the command line.
//!
//! Exit status: 0 on success, 1 when a check fails or the input does not
//! meet a precondition, 2 on usage, parse or I/O errors.

mod commands;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser, Debug)]
#[command(name = "cbasis", version, about = "Closure systems and implicational bases")]
pub struct Cli {
    /// Input format; inferred from the file extension when omitted.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    /// Closed sets, one per line.
    Fam,
    /// Implications `LHS -> RHS`, one per line.
    Imp,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Close a set under a basis or a closed family.
    Closure(ClosureArgs),
    /// Build a basis of a system.
    Basis(BasisArgs),
    /// Reduce (and optionally standardize) a system.
    Reduce(ReduceArgs),
    /// Report the structure and basis sizes of a system.
    Analyze(AnalyzeArgs),
    /// Check that a list of implications is ordered direct for a system.
    Verify(VerifyArgs),
    /// Search for an order making a basis ordered direct.
    Order(OrderArgs),
    /// Write random closed families.
    Generate(GenerateArgs),
    /// Run the closure-cost experiment and write a CSV summary.
    Bench(BenchArgs),
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algorithm {
    /// Repeated full sweeps until nothing changes.
    Folklore,
    /// One sweep in list order.
    Ordered,
    /// Per-element clause lists and premise countdowns.
    Forward,
    /// Repeatedly fire every applicable implication.
    Wild,
    /// Intersection of the closed supersets (needs `--system`).
    Phi,
}

#[derive(Args, Debug)]
pub struct ClosureArgs {
    /// Implications to close under (.imp).
    #[arg(long, required_unless_present = "system")]
    pub basis: Option<PathBuf>,
    /// A system, for its closed family (.fam or .imp).
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// The set to close, labels separated by spaces; `{}` for empty.
    #[arg(long)]
    pub set: String,
    /// Defaults to `folklore` with `--basis` and `phi` otherwise.
    #[arg(long, value_enum)]
    pub algorithm: Option<Algorithm>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Kind {
    /// Canonical direct unit basis.
    Delta,
    /// D-basis.
    D,
    /// Reduced D-basis, printed as its ordered direct sequence.
    DPlus,
    /// E-basis (systems without D-cycles).
    E,
    /// Canonical basis of pseudo-closed sets.
    Dg,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum FormArg {
    Unit,
    Aggregated,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum OrderArg {
    /// Construction order.
    None,
    /// Binary implications first, otherwise stable.
    BinaryFirst,
    /// Binary first, then by the D-rank of the premise.
    Rank,
}

#[derive(Args, Debug)]
pub struct BasisArgs {
    #[arg(long, value_enum)]
    pub kind: Kind,
    /// Defaults to aggregated for `dg` and unit otherwise.
    #[arg(long, value_enum)]
    pub form: Option<FormArg>,
    #[arg(long, value_enum, default_value = "none")]
    pub order: OrderArg,
    /// The system (.fam, or .imp for the system a basis generates).
    #[arg(long)]
    pub from: PathBuf,
    /// List implications that follow from the others on stderr.
    #[arg(long)]
    pub report_redundant: bool,
    #[arg(long)]
    pub json: bool,
    /// Write the basis here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct ReduceArgs {
    /// The system (.fam or .imp).
    pub input: PathBuf,
    /// Also drop elements whose closure minus themselves is not closed.
    #[arg(long)]
    pub standard: bool,
    /// Write the reduced family here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Where to write the element map; defaults to the output path with a
    /// `.map` extension, or stderr when writing to stdout.
    #[arg(long)]
    pub map: Option<PathBuf>,
}

#[derive(Args, Debug)]
pub struct AnalyzeArgs {
    /// The system (.fam or .imp).
    pub input: PathBuf,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// The implication list to check (.imp), in its file order.
    #[arg(long = "ordered-direct")]
    pub ordered_direct: PathBuf,
    /// The system it should compute (.fam or .imp).
    #[arg(long)]
    pub system: PathBuf,
}

#[derive(Args, Debug)]
pub struct OrderArgs {
    /// The basis to reorder (.imp).
    #[arg(long)]
    pub search: PathBuf,
    /// The system (.fam or .imp); defaults to the one the basis generates.
    #[arg(long)]
    pub system: Option<PathBuf>,
    /// Largest basis to search.
    #[arg(long, default_value_t = 10)]
    pub search_cap: usize,
}

#[derive(Args, Debug)]
pub struct GenerateArgs {
    #[arg(long)]
    pub domain: usize,
    #[arg(long, default_value_t = 1)]
    pub count: usize,
    #[arg(long)]
    pub seed: u64,
    /// Generator subsets per system, `MIN..MAX` inclusive.
    #[arg(long, default_value = "3..8")]
    pub subsets: String,
    #[arg(long)]
    pub out_dir: PathBuf,
}

#[derive(Args, Debug)]
pub struct BenchArgs {
    /// Domain sizes, `MIN..MAX` inclusive, or a single size.
    #[arg(long, default_value = "6..7")]
    pub domains: String,
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long)]
    pub seed: u64,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also time each closure strategy (median of `--repetitions` runs).
    #[arg(long)]
    pub timing: bool,
    #[arg(long, default_value_t = 1000)]
    pub repetitions: usize,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match commands::run(&cli) {
        Ok(code) => code,
        Err(failure) => {
            eprintln!("error: {}", failure.message());
            failure.exit_code()
        }
    }
}
