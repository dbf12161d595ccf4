//! Command-line front end for picardkit.
//!
//! Exit codes: 0 success, 1 input or other error, 2 an axiom or property
//! failed, 3 a group was infinite or a search exceeded the budget.

mod commands;
mod doc;

use std::io::{Read, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, ValueEnum};

use commands::{render_human, run, CliError};
use doc::{input_json, parse_document, Command, Format};

#[derive(Clone, Copy, Debug, ValueEnum)]
enum CommandArg {
    Validate,
    Strictify,
    Qmap,
    H3sym,
    Equiv,
    Cokernel,
    Les,
    Postnikov,
    Sphere,
    Act,
    Doublecheck,
}

impl From<CommandArg> for Command {
    fn from(c: CommandArg) -> Self {
        match c {
            CommandArg::Validate => Command::Validate,
            CommandArg::Strictify => Command::Strictify,
            CommandArg::Qmap => Command::Qmap,
            CommandArg::H3sym => Command::H3sym,
            CommandArg::Equiv => Command::Equiv,
            CommandArg::Cokernel => Command::Cokernel,
            CommandArg::Les => Command::Les,
            CommandArg::Postnikov => Command::Postnikov,
            CommandArg::Sphere => Command::Sphere,
            CommandArg::Act => Command::Act,
            CommandArg::Doublecheck => Command::Doublecheck,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormatArg {
    Human,
    Machine,
}

/// Computations with Picard groupoids presented by symmetric 3-cocycles.
#[derive(Debug, Parser)]
#[command(name = "picardkit", version)]
struct Args {
    command: CommandArg,
    /// Input JSON document; `-` reads standard input.
    #[arg(long = "in", value_name = "FILE")]
    input: PathBuf,
    #[arg(long, value_enum, default_value = "human")]
    format: FormatArg,
    /// Bound on exhaustive enumerations.
    #[arg(long, env = "PICARDKIT_BUDGET", default_value_t = picardkit::DEFAULT_BUDGET)]
    budget: u64,
}

fn read_input(path: &PathBuf) -> Result<String, CliError> {
    if path.as_os_str() == "-" {
        let mut s = String::new();
        std::io::stdin()
            .read_to_string(&mut s)
            .map_err(|e| CliError::Io(format!("reading standard input: {e}")))?;
        return Ok(s);
    }
    std::fs::read_to_string(path).map_err(|e| CliError::Io(format!("reading {}: {e}", path.display())))
}

/// Writes to stdout, ignoring a closed pipe.
fn emit(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn main() -> ExitCode {
    let args = Args::parse();
    let format = match args.format {
        FormatArg::Human => Format::Human,
        FormatArg::Machine => Format::Machine,
    };
    let result = read_input(&args.input)
        .and_then(|text| Ok(parse_document(args.command.into(), &text, format)?))
        .and_then(|job| Ok((run(&job, args.budget)?, job)));
    match result {
        Ok((mut outcome, job)) => {
            match format {
                Format::Machine => {
                    if let Some(map) = outcome.value.as_object_mut() {
                        map.insert("input".into(), input_json(&job.input));
                    }
                    let text = serde_json::to_string_pretty(&outcome.value).expect("serializable");
                    emit(&format!("{text}\n"));
                }
                Format::Human => emit(&render_human(&outcome.value)),
            }
            ExitCode::from(if outcome.holds { 0 } else { 2 })
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
