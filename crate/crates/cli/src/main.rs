//! Command-line frontend: evaluate plat-closure Jones values along two
//! independent routes, sample random braid ensembles, and run the design /
//! anti-concentration experiments with reproducible, byte-stable output
//! files.

mod experiment_cmd;
mod jones_cmd;
mod output;
mod sample_cmd;

use clap::{Parser, Subcommand};

#[derive(Parser)]
#[command(
    name = "platjones",
    version,
    about = "Jones values of plat closures, two ways, plus random-braid ensemble experiments",
    propagate_version = true
)]
struct Cli {
    /// Worker threads for parallel ensembles (0 = one per core). Results are
    /// byte-identical for any worker count.
    #[arg(long, global = true, default_value_t = 0)]
    workers: usize,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate the Jones value of a braid's plat closure at exp(2*pi*i/k).
    Jones(jones_cmd::JonesArgs),
    /// Sample uniform random braid words, optionally with their cap-outcome
    /// probabilities.
    Sample(sample_cmd::SampleArgs),
    /// Random-ensemble experiments over seeded braid words.
    #[command(subcommand)]
    Experiment(experiment_cmd::ExperimentKind),
}

/// Failure categories, one exit code each; errors also land on stderr as a
/// single JSON object so scripts never have to parse prose.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Category {
    /// Malformed invocation or braid word (clap's own usage errors share this code).
    Usage,
    /// The exact oracle refused a word above its crossing budget.
    Budget,
    /// A checked numerical contract failed (routes disagree, bound violated).
    Contract,
    /// Parameters are structurally valid but outside the supported ranges.
    Config,
    /// Filesystem trouble.
    Io,
}

impl Category {
    pub fn exit_code(self) -> i32 {
        match self {
            Category::Usage => 2,
            Category::Budget => 3,
            Category::Contract => 4,
            Category::Config => 5,
            Category::Io => 6,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Category::Usage => "usage",
            Category::Budget => "budget",
            Category::Contract => "contract",
            Category::Config => "config",
            Category::Io => "io",
        }
    }
}

#[derive(Debug)]
pub struct CliError {
    pub category: Category,
    pub message: String,
}

impl CliError {
    pub fn usage(message: impl Into<String>) -> Self {
        Self { category: Category::Usage, message: message.into() }
    }

    pub fn contract(message: impl Into<String>) -> Self {
        Self { category: Category::Contract, message: message.into() }
    }

    pub fn config(message: impl Into<String>) -> Self {
        Self { category: Category::Config, message: message.into() }
    }
}

impl From<platjones::Error> for CliError {
    fn from(err: platjones::Error) -> Self {
        let category = match &err {
            platjones::Error::InvalidBraidWord(_) => Category::Usage,
            platjones::Error::OracleBudget { .. } => Category::Budget,
            platjones::Error::Mismatch(_) => Category::Contract,
            platjones::Error::DimensionGuard { .. } | platjones::Error::InvalidParameter(_) => {
                Category::Config
            }
        };
        Self { category, message: err.to_string() }
    }
}

impl From<std::io::Error> for CliError {
    fn from(err: std::io::Error) -> Self {
        Self { category: Category::Io, message: err.to_string() }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(err: serde_json::Error) -> Self {
        Self { category: Category::Io, message: err.to_string() }
    }
}

pub type CliResult<T = ()> = Result<T, CliError>;

fn run(cli: Cli) -> CliResult {
    let Cli { workers, command } = cli;
    let dispatch = move || match command {
        Command::Jones(args) => jones_cmd::run(args),
        Command::Sample(args) => sample_cmd::run(args),
        Command::Experiment(kind) => experiment_cmd::run(kind),
    };
    if workers == 0 {
        dispatch()
    } else {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build()
            .map_err(|err| CliError::config(format!("worker pool: {err}")))?;
        pool.install(dispatch)
    }
}

fn main() {
    if let Err(err) = run(Cli::parse()) {
        let code = err.category.exit_code();
        let payload = serde_json::json!({
            "error": {
                "category": err.category.name(),
                "exit_code": code,
                "message": err.message,
            }
        });
        eprintln!("{payload}");
        std::process::exit(code);
    }
}
