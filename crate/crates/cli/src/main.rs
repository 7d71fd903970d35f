//! `tropgrass`: JSON in, JSON out, for every operation of the library.
//!
//! Exit codes: 0 success, 1 domain error (with a machine-readable reason),
//! 2 malformed input or usage, 64 unknown subcommand.

mod commands;
mod svg;

use std::io::Read;
use std::process::ExitCode;

use clap::error::{ContextKind, ErrorKind};
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde_json::Value;

use commands::{curve_of, run, seed_from_env, CmdError, Command, Convention, Options};

const DEFAULT_SEED: u64 = 20240611;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Svg,
}

#[derive(Parser, Debug)]
#[command(
    name = "tropgrass",
    version,
    about = "Exact tropical geometry: Plücker vectors, trees, plane curves, skeleta"
)]
struct Cli {
    #[arg(value_enum)]
    command: Command,
    /// Inline JSON, a file path, or `-` for stdin (the default).
    input: Option<String>,
    /// Read input from this file.
    #[arg(long, conflicts_with = "input")]
    input_file: Option<String>,
    /// Write output here instead of stdout.
    #[arg(long, short)]
    output: Option<String>,
    /// Display scalar values in valuation (min) or log (max) convention.
    #[arg(long, value_enum)]
    convention: Option<Convention>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Also write an SVG drawing of the curve to this path (trop-curve, balance-check).
    #[arg(long)]
    svg: Option<String>,
    /// SVG units per coordinate unit.
    #[arg(long, default_value_t = 40)]
    scale: i64,
    /// Treat the input as a JSON array and process its items in parallel.
    #[arg(long)]
    batch: bool,
}

fn read_input(cli: &Cli) -> Result<String, CmdError> {
    let io = |e: std::io::Error| CmdError::Schema(format!("cannot read input: {e}"));
    if let Some(path) = &cli.input_file {
        return std::fs::read_to_string(path).map_err(io);
    }
    match cli.input.as_deref() {
        None | Some("-") => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s).map_err(io)?;
            Ok(s)
        }
        Some(s) if s.trim_start().starts_with(['{', '[']) => Ok(s.to_string()),
        Some(path) => std::fs::read_to_string(path).map_err(io),
    }
}

fn emit(cli: &Cli, text: &str) -> Result<(), CmdError> {
    match &cli.output {
        Some(path) => std::fs::write(path, text).map_err(|e| CmdError::Schema(format!("cannot write {path}: {e}"))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn svg_of(cli: &Cli, input: &Value) -> Result<String, CmdError> {
    let curve = match cli.command {
        Command::TropCurve => curve_of(input)?.0,
        Command::BalanceCheck => {
            serde_json::from_value(input.clone()).map_err(|e| CmdError::Schema(format!("curve: {e}")))?
        }
        _ => return Err(CmdError::Schema("SVG output is only available for curves".into())),
    };
    Ok(svg::curve_svg(&curve, cli.scale))
}

fn execute(cli: &Cli) -> Result<(Value, u8), CmdError> {
    let text = read_input(cli)?;
    let input: Value = serde_json::from_str(&text).map_err(|e| CmdError::Schema(format!("malformed JSON: {e}")))?;
    let opts = Options { convention: cli.convention, seed: seed_from_env(DEFAULT_SEED)? };
    if cli.batch {
        let items = input.as_array().ok_or_else(|| CmdError::Schema("--batch expects a JSON array".into()))?;
        let results: Vec<Result<Value, CmdError>> = items.par_iter().map(|v| run(cli.command, v, &opts)).collect();
        let code = results.iter().filter_map(|r| r.as_ref().err()).map(CmdError::exit_code).max().unwrap_or(0);
        let out = results.into_iter().map(|r| r.unwrap_or_else(|e| e.to_json())).collect();
        return Ok((Value::Array(out), code));
    }
    if cli.format == Format::Svg || cli.svg.is_some() {
        let drawing = svg_of(cli, &input)?;
        if cli.format == Format::Svg {
            return Ok((Value::String(drawing), 0));
        }
        let path = cli.svg.as_ref().expect("checked above");
        std::fs::write(path, drawing).map_err(|e| CmdError::Schema(format!("cannot write {path}: {e}")))?;
    }
    Ok((run(cli.command, &input, &opts)?, 0))
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                // the subcommand is a positional value, so an unknown one is an invalid value
                ErrorKind::InvalidValue
                    if e.get(ContextKind::InvalidArg).is_some_and(|a| a.to_string() == "<COMMAND>") =>
                {
                    64
                }
                _ => 2,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    let (text, code) = match execute(&cli) {
        Ok((Value::String(s), code)) if cli.format == Format::Svg && !cli.batch => (s, code),
        Ok((v, code)) => (pretty(&v), code),
        Err(e) => {
            eprintln!("tropgrass: {e}");
            (pretty(&e.to_json()), e.exit_code())
        }
    };
    if let Err(e) = emit(&cli, &text) {
        eprintln!("tropgrass: {e}");
        return ExitCode::from(2);
    }
    ExitCode::from(code)
}
