//! `rkit`: distances, scenarios and graphs for genomes with duplicated markers.

mod commands;
mod output;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

#[derive(Parser)]
#[command(name = "rkit", version, about = "Rearrangement distances and scenarios for duplicated genomes")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Distance between two non-duplicated genomes.
    Distance {
        #[arg(long, value_enum)]
        model: DistanceModel,
        /// Telomere weighting for the breakpoint model.
        #[arg(long, value_enum, default_value_t = Telomeres::Full)]
        telomeres: Telomeres,
        source: PathBuf,
        target: PathBuf,
    },
    /// Optimal sorting scenario between two non-duplicated genomes.
    Scenario {
        #[arg(long, value_enum)]
        model: SortModel,
        source: PathBuf,
        target: PathBuf,
    },
    /// Halve a totally duplicated genome into a perfectly duplicated one.
    Halve { genome: PathBuf },
    /// Halve a unilinear genome into a 1-tandem duplicated one.
    Tandem {
        #[arg(long, value_enum)]
        model: TandemModel,
        genome: PathBuf,
    },
    /// Bounds and a heuristic scenario for disrupted tandem halving.
    Disrupted { genome: PathBuf },
    /// Dedouble a duplicated genome.
    Dedouble(DedoubleArgs),
    /// Classification flags of a genome.
    Classify { genome: PathBuf },
    /// Census of a graph of the genome, optionally written as DOT.
    Graph {
        #[arg(long, value_enum, default_value_t = GraphKind::Natural)]
        kind: GraphKind,
        /// Write the graph in DOT format to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
        genome: PathBuf,
    },
    /// Exhaustive search distance; `RKIT_ORACLE_CAP` overrides the caps.
    Oracle {
        #[arg(long, value_enum)]
        goal: OracleGoal,
        #[arg(long, value_enum)]
        model: OracleModel,
        /// Also print an optimal scenario.
        #[arg(long)]
        scenario: bool,
        genome: PathBuf,
    },
    /// Check formulas and scenarios against exhaustive search.
    Verify(VerifyArgs),
    /// Print a seeded random genome.
    Random(RandomArgs),
}

#[derive(Args)]
struct DedoubleArgs {
    #[arg(long, value_enum, default_value_t = DedoubleModel::Dcj)]
    model: DedoubleModel,
    #[arg(long, value_enum, default_value_t = Packing::Exact)]
    packing: Packing,
    /// Keep a single linear chromosome throughout.
    #[arg(long)]
    linear: bool,
    /// Also lift the scenario to breakpoint duplications.
    #[arg(long)]
    bd: bool,
    /// Largest number of candidate cycles for exact packing.
    #[arg(long, default_value_t = rkit::dedouble::DEFAULT_CYCLE_CAP)]
    cap: usize,
    genome: PathBuf,
}

#[derive(Args)]
struct VerifyArgs {
    /// Suite name, or `all`.
    #[arg(long, default_value = "all")]
    suite: String,
    /// Check every unilinear genome up to this many families.
    #[arg(long, default_value_t = 3)]
    max_n: usize,
    #[arg(long, default_value_t = 42)]
    seed: u64,
    /// Random genomes added to the exhaustive set.
    #[arg(long, default_value_t = 0)]
    random: usize,
    /// Families of the random genomes; defaults to `max-n + 1`.
    #[arg(long)]
    random_n: Option<usize>,
    /// Write the per-suite CSV report here.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long)]
    n: usize,
    /// `none`, `total` or `partial:<p>`.
    #[arg(long, default_value = "total")]
    duplication: String,
    /// `linear:<k>`, `circular:<k>` or `mixed:<k>`.
    #[arg(long, default_value = "linear:1")]
    shape: String,
    #[arg(long)]
    same_signed: bool,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Clone, Copy, ValueEnum)]
enum DistanceModel {
    Breakpoint,
    Bi,
    Dcj,
}

#[derive(Clone, Copy, ValueEnum)]
enum Telomeres {
    Full,
    Half,
}

#[derive(Clone, Copy, ValueEnum)]
enum SortModel {
    Bi,
    Dcj,
}

#[derive(Clone, Copy, ValueEnum)]
enum TandemModel {
    Bi,
    Dcj,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DedoubleModel {
    Dcj,
    Reversal,
}

#[derive(Clone, Copy, ValueEnum)]
enum Packing {
    Exact,
    Greedy,
}

#[derive(Clone, Copy, ValueEnum)]
enum GraphKind {
    Natural,
    Adjacency,
    Overlap,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleGoal {
    Sorted,
    Perfect,
    Tandem,
    Dedoubled,
    DedoubledLinear,
    GatheredTandem,
}

#[derive(Clone, Copy, ValueEnum)]
enum OracleModel {
    Dcj,
    Bi,
    Reversal,
    BdDcj,
}

/// Exit status of a failed run.
#[derive(Debug)]
enum Failure {
    /// Bad input or usage.
    Usage(anyhow::Error),
    /// The method declined the instance.
    Refused(anyhow::Error),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Failure {
        match e.downcast_ref::<rkit::Error>() {
            Some(inner) if inner.is_refusal() => Failure::Refused(e),
            _ => Failure::Usage(e),
        }
    }
}

impl From<rkit::Error> for Failure {
    fn from(e: rkit::Error) -> Failure {
        Failure::from(anyhow::Error::new(e))
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(
                e.kind(),
                ErrorKind::DisplayHelp
                    | ErrorKind::DisplayVersion
                    | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand
            ) {
                let _ = e.print();
                return ExitCode::SUCCESS;
            }
            let _ = e.print();
            return ExitCode::from(1);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Usage(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(1)
        }
        Err(Failure::Refused(e)) => {
            eprintln!("refused: {e:#}");
            ExitCode::from(2)
        }
    }
}
