use clap::{Parser, Subcommand, ValueEnum};
use enriques18::Execution;
use enriques18_cli::*;
use serde::Serialize;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser, Debug)]
#[command(name = "enriques18", version, about = "Rank-18 log Enriques surface classification")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Directory holding index3.json and index2_4.json.
    #[arg(long, global = true, env = "ENRIQUES18_GOLDEN_DIR")]
    golden_dir: Option<PathBuf>,

    /// Run batch work on one thread.
    #[arg(long, global = true)]
    sequential: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// List the candidate types for an index.
    Enumerate {
        #[arg(long)]
        index: u32,
    },
    /// Show every labeling of a type.
    Label {
        #[arg(long)]
        index: u32,
        #[arg(long = "type")]
        type_name: String,
    },
    /// Search for a witness embedding of a type.
    Realize {
        #[arg(long)]
        index: u32,
        #[arg(long = "type")]
        type_name: String,
    },
    /// Re-run the classification and compare with the reference tables.
    Verify {
        #[arg(long, value_enum, value_delimiter = ',')]
        only: Vec<Section>,
    },
    /// Evaluate the Lefschetz identities.
    Lefschetz {
        #[arg(long)]
        index: Option<u32>,
    },
    /// Print a host curve graph.
    HostGraph {
        #[arg(long)]
        index: u32,
    },
}

fn emit<T: Serialize>(format: Format, value: &T, text: impl FnOnce(&T) -> String) -> CliResult<()> {
    match format {
        Format::Text => print!("{}", text(value)),
        Format::Json => println!(
            "{}",
            serde_json::to_string_pretty(value).map_err(|e| CliError::Failure(e.to_string()))?
        ),
    }
    Ok(())
}

fn run(cli: Cli) -> CliResult<i32> {
    let exec = if cli.sequential {
        Execution::Sequential
    } else {
        Execution::Parallel
    };
    match cli.command {
        Command::Enumerate { index } => {
            let list = enumerate_report(parse_index(index)?);
            emit(cli.format, &list, render_enumerate)?;
        }
        Command::Label { index, type_name } => {
            let r = label_report(&parse_type(&type_name)?, parse_index(index)?)?;
            emit(cli.format, &r, render_label)?;
        }
        Command::Realize { index, type_name } => {
            let r = realize_report(&parse_type(&type_name)?, parse_index(index)?)?;
            emit(cli.format, &r, render_realize)?;
        }
        Command::Verify { only } => {
            let golden = load_golden(cli.golden_dir.as_deref())?;
            let r = verify_report(&golden, &only, exec)?;
            emit(cli.format, &r, render_verify)?;
            if !r.ok {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::Lefschetz { index } => {
            let r = lefschetz_report(index.map(parse_index).transpose()?)?;
            emit(cli.format, &r, render_lefschetz)?;
            if r.identities.iter().any(|c| !c.exact) {
                return Ok(EXIT_MISMATCH);
            }
        }
        Command::HostGraph { index } => {
            let g = host_graph_report(parse_index(index)?)?;
            emit(cli.format, &g, render_host_graph)?;
        }
    }
    Ok(EXIT_OK)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let code = match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.exit_code()
        }
    };
    ExitCode::from(code as u8)
}
