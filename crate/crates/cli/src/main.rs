mod commands;
mod documents;

use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

/// Trees minimizing the vertex-weighted Wiener index for given weights and degrees.
#[derive(Parser)]
#[command(name = "wh", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Dot,
    Edgelist,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Order {
    /// Degree-monotone weights
    Monotone,
    /// Some lower-degree internal vertex heavier than a higher-degree one
    Inverted,
    /// Unconstrained weights
    Any,
}

#[derive(Subcommand)]
enum Command {
    /// Build the Huffman tree of a tuple document
    Build {
        /// Tuple document path, or `-` for standard input
        input: String,
        #[arg(long, value_enum, default_value_t = Format::Json)]
        format: Format,
        /// Include the star sequence
        #[arg(long)]
        trace: bool,
    },
    /// Evaluate the indices of a tree document or edge list
    Eval {
        /// Tree document or edge list path, or `-` for standard input
        input: String,
        /// Root used for the rooted formula and the properness check
        /// (default: the proper root)
        #[arg(long)]
        root: Option<i64>,
    },
    /// Compare Huffman trees against exhaustive enumeration
    Verify {
        /// Tuple document path, or `-` for standard input
        #[arg(required_unless_present = "random", conflicts_with = "random")]
        input: Option<String>,
        /// Check this many random tuples instead of a file
        #[arg(long)]
        random: Option<usize>,
        #[arg(long, default_value_t = 3)]
        min_vertices: usize,
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_weight: i64,
        #[arg(long, default_value_t = 4)]
        max_denominator: i64,
        #[arg(long, value_enum, default_value_t = Order::Monotone)]
        order: Order,
    },
    /// Search for a tuple whose Huffman tree is not optimal
    Counterexample {
        #[arg(long, default_value_t = 8)]
        max_vertices: usize,
        #[arg(long, default_value_t = 10_000)]
        attempts: u64,
        #[arg(long, default_value_t = 42)]
        seed: u64,
        #[arg(long, default_value_t = 20)]
        max_weight: i64,
        /// Tuples whose class exceeds this many trees are skipped
        #[arg(long, default_value_t = 20_000)]
        class_cap: u64,
        /// Search degree-monotone tuples only
        #[arg(long)]
        monotone_only: bool,
    },
}

/// A failed command: exit code and message for standard error.
pub struct Failure {
    pub code: u8,
    pub message: String,
}

impl Failure {
    pub const USAGE: u8 = 2;
    pub const VIOLATION: u8 = 3;
    pub const CAP: u8 = 4;

    pub fn usage(message: impl ToString) -> Self {
        Failure {
            code: Self::USAGE,
            message: message.to_string(),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Build { input, format, trace } => commands::build(&input, format, trace),
        Command::Eval { input, root } => commands::eval(&input, root),
        Command::Verify {
            input,
            random,
            min_vertices,
            max_vertices,
            seed,
            max_weight,
            max_denominator,
            order,
        } => match (input, random) {
            (Some(path), _) => commands::verify_file(&path),
            (None, Some(count)) => commands::verify_random(&commands::RandomCampaign {
                count,
                min_vertices,
                max_vertices,
                seed,
                max_weight,
                max_denominator,
                order,
            }),
            (None, None) => Err(Failure::usage("either an input file or --random is required")),
        },
        Command::Counterexample {
            max_vertices,
            attempts,
            seed,
            max_weight,
            class_cap,
            monotone_only,
        } => commands::counterexample(&wh_core::SearchLimits {
            max_vertices,
            max_weight,
            seed,
            attempts,
            monotone_only,
            class_cap,
        }),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            if !failure.message.is_empty() {
                eprintln!("error: {}", failure.message);
            }
            ExitCode::from(failure.code)
        }
    }
}
