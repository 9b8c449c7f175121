//! Scenario-replay CLI for the emotion engine.
//!
//! Exit codes: 0 success, 1 validation error (bad KB, scenario, stimulus or
//! params file), 2 runtime error.

use clap::{Parser, Subcommand};
use occ_core::{
    categorize, emit_trace, load_kb, parse_scenario, quantify, run_scenario, EngineParams,
    ExpressionMode, ExpressionProfile, History, KnowledgeBase, ParamsOverride, Stimulus,
    TraceFormat,
};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "occ", about = "Deterministic OCC emotion appraisal engine")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Load and validate a knowledge base file.
    Validate {
        #[arg(long)]
        kb: PathBuf,
    },
    /// Replay a scenario and emit the trace.
    Run {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        scenario: PathBuf,
        /// Expression profile: full22 | ortony | ekman6
        #[arg(long, default_value = "ekman6")]
        profile: String,
        /// dominant | blend
        #[arg(long, default_value = "blend")]
        mode: String,
        /// Optional JSON file overriding engine parameters.
        #[arg(long)]
        params: Option<PathBuf>,
        /// jsonl | csv
        #[arg(long, default_value = "jsonl")]
        format: String,
        /// Write the trace here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One-shot categorize + quantify of a single stimulus file.
    Appraise {
        #[arg(long)]
        kb: PathBuf,
        #[arg(long)]
        stimulus: PathBuf,
        #[arg(long)]
        params: Option<PathBuf>,
    },
}

/// Errors that should exit with code 1 (input validation) vs 2 (runtime).
enum CliError {
    Validation(String),
    Runtime(String),
}

impl CliError {
    fn code(&self) -> ExitCode {
        match self {
            CliError::Validation(_) => ExitCode::from(1),
            CliError::Runtime(_) => ExitCode::from(2),
        }
    }

    fn message(&self) -> &str {
        match self {
            CliError::Validation(m) | CliError::Runtime(m) => m,
        }
    }
}

fn read_file(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path)
        .map_err(|e| CliError::Validation(format!("cannot read {}: {e}", path.display())))
}

fn load_kb_file(path: &Path) -> Result<KnowledgeBase, CliError> {
    load_kb(&read_file(path)?)
        .map_err(|e| CliError::Validation(format!("invalid KB {}: {e}", path.display())))
}

fn load_params(path: Option<&Path>) -> Result<EngineParams, CliError> {
    let base = EngineParams::default();
    let Some(path) = path else {
        return Ok(base);
    };
    let text = read_file(path)?;
    let overrides: ParamsOverride = serde_json::from_str(&text)
        .map_err(|e| CliError::Validation(format!("invalid params {}: {e}", path.display())))?;
    overrides
        .apply(&base)
        .map_err(|e| CliError::Validation(format!("invalid params {}: {e}", path.display())))
}

fn run(cli: Cli) -> Result<(), CliError> {
    match cli.command {
        Command::Validate { kb } => {
            let loaded = load_kb_file(&kb)?;
            println!(
                "ok: {} concepts, {} goals, user models: {}",
                loaded.taxonomy().len(),
                loaded.goals().len(),
                if loaded.has_user_models() { "yes" } else { "no" }
            );
            Ok(())
        }
        Command::Run {
            kb,
            scenario,
            profile,
            mode,
            params,
            format,
            out,
        } => {
            let kb = load_kb_file(&kb)?;
            let scenario_doc = read_file(&scenario)?;
            let scenario = parse_scenario(&scenario_doc).map_err(|e| {
                CliError::Validation(format!("invalid scenario: {e}"))
            })?;
            let profile = ExpressionProfile::parse(&profile)
                .ok_or_else(|| CliError::Validation(format!("unknown profile '{profile}'")))?;
            let mode = match mode.as_str() {
                "dominant" => ExpressionMode::Dominant,
                "blend" => ExpressionMode::Blend,
                other => return Err(CliError::Validation(format!("unknown mode '{other}'"))),
            };
            let format = TraceFormat::parse(&format)
                .ok_or_else(|| CliError::Validation(format!("unknown format '{format}'")))?;
            let params = load_params(params.as_deref())?;

            let trace = run_scenario(&kb, &scenario, profile, mode, &params)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let output = emit_trace(&trace, format);
            match out {
                Some(path) => std::fs::write(&path, output).map_err(|e| {
                    CliError::Runtime(format!("cannot write {}: {e}", path.display()))
                })?,
                None => print!("{output}"),
            }
            Ok(())
        }
        Command::Appraise {
            kb,
            stimulus,
            params,
        } => {
            let kb = load_kb_file(&kb)?;
            let text = read_file(&stimulus)?;
            let stimulus: Stimulus = serde_json::from_str(&text).map_err(|e| {
                CliError::Validation(format!("invalid stimulus: {e}"))
            })?;
            stimulus
                .validate()
                .map_err(|e| CliError::Validation(format!("invalid stimulus: {e}")))?;
            let params = load_params(params.as_deref())?;

            let history = History::new();
            let fires = categorize(&stimulus, &kb, &history, &params)
                .map_err(|e| CliError::Runtime(e.to_string()))?;
            let signals = quantify(&fires, &stimulus, &kb, &history, 0, &params);
            for signal in &signals {
                println!("{}", serde_json::to_string(signal).expect("signal serializes"));
            }
            if signals.is_empty() {
                eprintln!("no categories fired");
            }
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {}", e.message());
            e.code()
        }
    }
}
