mod commands;
mod output;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};

use crate::output::Format;

#[derive(Parser, Debug)]
#[command(name = "charvar", version, about = "Character varieties of once-punctured torus bundles")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug, Clone)]
pub struct Common {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    pub format: Format,
    /// Work budget of each Gröbner basis computation.
    #[arg(long, default_value_t = charvar::ideal_engine::DEFAULT_MAX_STEPS, global = true)]
    pub budget: u64,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Invariants, fixed ideal, decomposition and reducible data of one word.
    Analyze {
        /// Monodromy word such as "A^2*B^-2".
        word: String,
        #[command(flatten)]
        common: Common,
    },
    /// Census of short hyperbolic words.
    Census {
        /// Largest word length, counted with exponents.
        #[arg(long, default_value_t = 6)]
        max_length: u64,
        /// Alphabet: "AB" for words in A and B, "ABinv" for words in A and B^-1.
        #[arg(long, default_value = "ABinv")]
        alphabet: String,
        /// Comma-separated word list used instead of the enumeration.
        #[arg(long)]
        words: Option<String>,
        /// Keep every rotation instead of one word per cyclic class.
        #[arg(long)]
        no_dedup: bool,
        #[command(flatten)]
        common: Common,
    },
    /// Reports on the families M, N and L against their closed forms.
    Family {
        /// Family tag: M, N or L.
        tag: String,
        /// Odd parameter n; may be repeated.
        #[arg(long = "n")]
        n: Vec<i64>,
        /// Inclusive range of odd n, written "a..b".
        #[arg(long)]
        range: Option<String>,
        #[command(flatten)]
        common: Common,
    },
    /// Numeric representation checks for one word.
    Verify {
        word: String,
        /// Number of fixed-point samples.
        #[arg(long, default_value_t = 50)]
        samples: usize,
        /// Random seed of the sampler.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Relation and membership tolerance.
        #[arg(long, default_value_t = 1e-8)]
        tol: f64,
        #[command(flatten)]
        common: Common,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Analyze { word, common } => commands::analyze(&word, &common),
        Command::Census { max_length, alphabet, words, no_dedup, common } => {
            commands::census(max_length, &alphabet, words.as_deref(), no_dedup, &common)
        }
        Command::Family { tag, n, range, common } => commands::family(&tag, &n, range.as_deref(), &common),
        Command::Verify { word, samples, seed, tol, common } => commands::verify(&word, samples, seed, tol, &common),
    };
    match result {
        Ok(outcome) => {
            print!("{}", outcome.text);
            for w in &outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(outcome.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(commands::exit_code(&e))
        }
    }
}
