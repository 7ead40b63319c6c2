use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use lamconvex::commands::{
    cmd_combine, cmd_gsequence, cmd_oscillate, cmd_params, CombineArgs, OscillateArgs,
    SequenceArgs,
};
use lamconvex::convexity::COMBINATION_TOLERANCE;
use lamconvex::counterexample::DEFAULT_SEARCH_CAP;
use lamconvex::{Coordinate, LimitOrientation, Report};

#[derive(Debug, Parser)]
#[command(name = "lamconvex", version)]
#[command(about = "Lamination parameters, exact convex combination of layups, interleaving counterexample")]
struct Cli {
    /// Machine-readable JSON output.
    #[arg(long, global = true)]
    json: bool,

    /// Map file breakpoints affinely onto [-1, 1] before use.
    #[arg(long, global = true)]
    normalize: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print the 12 lamination parameters of a laminate file.
    Params { file: PathBuf },

    /// Build a layup realizing (1 - alpha) xi[file1] + alpha xi[file2].
    Combine {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Where to write the constructed laminate.
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, default_value_t = COMBINATION_TOLERANCE, allow_negative_numbers = true)]
        tolerance: f64,
    },

    /// Parameters of the interleaving sequence and their distance to its limit.
    Gsequence {
        file1: PathBuf,
        file2: PathBuf,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        /// Comma-separated cell counts.
        #[arg(long = "n", value_delimiter = ',', required = true)]
        n_list: Vec<u64>,
        /// Compare against (1 - alpha) xi[file1] + alpha xi[file2] instead.
        #[arg(long)]
        swap_limit: bool,
    },

    /// Witness indices showing the sequence has no pointwise limit at x.
    Oscillate {
        /// Point in (-1, 1); `p/q` selects exact arithmetic.
        #[arg(long, allow_hyphen_values = true)]
        x: String,
        #[arg(long, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = 5)]
        count: usize,
        /// Exclusive upper bound on the searched indices.
        #[arg(long, default_value_t = DEFAULT_SEARCH_CAP)]
        cap: u64,
        /// First laminate (default: single 0 degree ply).
        #[arg(long)]
        t1: Option<PathBuf>,
        /// Second laminate (default: single 90 degree ply).
        #[arg(long)]
        t2: Option<PathBuf>,
    },
}

fn run(cli: &Cli) -> lamconvex::Result<Report> {
    match &cli.command {
        Command::Params { file } => cmd_params(file, cli.normalize),
        Command::Combine {
            file1,
            file2,
            alpha,
            out,
            tolerance,
        } => cmd_combine(&CombineArgs {
            file1,
            file2,
            alpha: *alpha,
            out: out.as_deref(),
            tolerance: *tolerance,
            normalize: cli.normalize,
        }),
        Command::Gsequence {
            file1,
            file2,
            alpha,
            n_list,
            swap_limit,
        } => cmd_gsequence(&SequenceArgs {
            file1,
            file2,
            alpha: *alpha,
            n_list,
            orientation: if *swap_limit {
                LimitOrientation::Swapped
            } else {
                LimitOrientation::AsConstructed
            },
            normalize: cli.normalize,
        }),
        Command::Oscillate {
            x,
            alpha,
            count,
            cap,
            t1,
            t2,
        } => cmd_oscillate(&OscillateArgs {
            x: x.parse::<Coordinate>()?,
            alpha: *alpha,
            count: *count,
            cap: *cap,
            file1: t1.as_deref(),
            file2: t2.as_deref(),
            normalize: cli.normalize,
        }),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(report) => {
            if cli.json {
                println!("{}", report.to_json());
            } else {
                print!("{}", report.to_text());
            }
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            if cli.json {
                let body = serde_json::json!({"error": {"code": err.code(), "message": err.to_string()}});
                println!("{}", serde_json::to_string_pretty(&body).expect("error serializes"));
            } else {
                eprintln!("error [{}]: {err}", err.code());
            }
            ExitCode::from(err.exit_code())
        }
    }
}
