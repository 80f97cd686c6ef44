//! Command-line front end for the forgetting library.
//!
//! Exit codes: 0 for true or success, 1 for a false verdict, 2 for usage,
//! input and parse errors, 3 when a configured cap is exceeded.

/// `println!` that stops quietly when stdout is closed (for example by `head`).
macro_rules! out {
    ($($arg:tt)*) => {{
        use std::io::Write;
        let _ = writeln!(std::io::stdout().lock(), $($arg)*);
    }};
}

mod commands;
mod json;

use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Lib(#[from] epiforget::Error),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Lib(e) if e.is_cap() => 3,
            _ => 2,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Mode {
    Fw,
    F,
    Fs,
    Fd,
}

#[derive(Debug, Parser)]
#[command(name = "epiforget", version, about = "Forgetting in epistemic logic over Kripke models")]
struct Cli {
    /// Output format for verdicts.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    /// Worker threads for search (0 picks the number of cores).
    #[arg(long, default_value_t = 0, global = true)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a formula at a pointed model.
    Check {
        /// Model JSON file, or `-` for stdin.
        model: PathBuf,
        /// Formula text, or `-` for stdin.
        formula: String,
        #[arg(long)]
        point: Option<String>,
        /// Show the verdict of each outcome of the outermost forgetting modality.
        #[arg(long)]
        trace: bool,
    },
    /// Print the clausal form of a propositional formula.
    Clauses { formula: String },
    /// Build the models produced by a forgetting operation.
    Forget {
        model: PathBuf,
        #[arg(value_enum)]
        mode: Mode,
        /// The propositional argument.
        pi: String,
        #[arg(long)]
        point: Option<String>,
        /// For `fd`: emit one model per forgetting function pair.
        #[arg(long, conflicts_with = "pairs")]
        enumerate: bool,
        /// For `fd`: a JSON file `{"f1": {world: clause}, "f2": {...}}`.
        #[arg(long)]
        pairs: Option<PathBuf>,
        /// For `fd --enumerate`: most pairs to emit.
        #[arg(long, default_value_t = epiforget::Limits::default().dependent_pairs)]
        cap: u128,
    },
    /// Rewrite a formula into the basic modal language.
    Translate { formula: String },
    /// Search all small pointed models for a countermodel.
    Valid {
        formula: String,
        #[arg(long, default_value_t = 3)]
        worlds: usize,
        /// Comma-separated atom universe; defaults to the formula's atoms.
        #[arg(long, value_delimiter = ',')]
        atoms: Vec<String>,
        /// Frame class: K, T, K4, K5, S4, S5 or serial.
        #[arg(long, default_value = "K")]
        class: String,
        #[arg(long, default_value_t = epiforget::search::DEFAULT_SEARCH_CAP)]
        cap: u128,
    },
    /// Decide bisimilarity of two pointed models.
    Bisim {
        first: PathBuf,
        second: PathBuf,
        #[arg(long)]
        first_point: Option<String>,
        #[arg(long)]
        second_point: Option<String>,
    },
    /// List the frame properties of a model.
    Frame { model: PathBuf },
}

/// Reads a file, or stdin for `-`.
pub fn read_source(path: &std::path::Path) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Input(format!("stdin: {e}")))?;
        Ok(s)
    } else {
        std::fs::read_to_string(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))
    }
}

/// Formula arguments given as `-` are read from stdin.
pub fn formula_text(arg: &str) -> Result<String, CliError> {
    if arg == "-" {
        Ok(read_source(std::path::Path::new("-"))?.trim().to_string())
    } else {
        Ok(arg.to_string())
    }
}

fn run(cli: Cli) -> Result<bool, CliError> {
    if cli.jobs > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.jobs)
            .build_global()
            .map_err(|e| CliError::Input(format!("--jobs: {e}")))?;
    }
    let fmt = cli.format;
    match cli.command {
        Command::Check {
            model,
            formula,
            point,
            trace,
        } => commands::check(&model, &formula, point.as_deref(), trace, fmt),
        Command::Clauses { formula } => commands::clauses(&formula, fmt),
        Command::Forget {
            model,
            mode,
            pi,
            point,
            enumerate,
            pairs,
            cap,
        } => commands::forget(&model, mode, &pi, point.as_deref(), enumerate, pairs.as_deref(), cap),
        Command::Translate { formula } => commands::translate(&formula, fmt),
        Command::Valid {
            formula,
            worlds,
            atoms,
            class,
            cap,
        } => commands::valid(&formula, worlds, &atoms, &class, cap, fmt),
        Command::Bisim {
            first,
            second,
            first_point,
            second_point,
        } => commands::bisim(&first, &second, first_point.as_deref(), second_point.as_deref(), fmt),
        Command::Frame { model } => commands::frame(&model, fmt),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
