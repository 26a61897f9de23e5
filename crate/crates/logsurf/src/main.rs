use std::io::Write;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use logsurf::commands::{self, MboundSource, Minimalize};
use logsurf::Report;

#[derive(Parser)]
#[command(name = "logsurf", version, about = "Peeling, Zariski decomposition and multicanonical fibration bounds for SNC pairs")]
struct Cli {
    /// Report format.
    #[arg(long, value_enum, default_value_t = Format::Text, global = true)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, ValueEnum)]
enum Mode {
    Almost,
    Strongly,
}

#[derive(Subcommand)]
enum Command {
    /// Check a model file against the SNC and connectivity rules.
    Validate { path: String },
    /// Twigs, bark and D# of a model.
    Peel {
        path: String,
        /// Run the minimalization first and report its contractions.
        #[arg(long, value_enum)]
        minimalize: Option<Mode>,
    },
    /// Log Kodaira dimension, after contracting what the peeling allows.
    Kappa { path: String },
    /// Zariski decomposition of K + D, after contracting what the peeling allows.
    Zariski { path: String },
    /// Degree of the base divisor and exact threshold for fibration data,
    /// given inline (`g=0 t=1 horiz=2sec fibers=(2,3),(2,2)`) or read off a
    /// model with a fiber assignment.
    Mbound {
        /// Inline data tokens.
        data: Vec<String>,
        #[arg(long, requires = "assignment", conflicts_with = "data")]
        model: Option<String>,
        #[arg(long, requires = "model")]
        assignment: Option<String>,
        /// Evaluate the criterion at this m.
        #[arg(long)]
        m: Option<u64>,
        /// Compute the exact threshold (the default when --m is absent).
        #[arg(long)]
        threshold: bool,
    },
    /// Check the criterion at m for every case family.
    VerifyTheorem {
        #[arg(long)]
        m: u64,
    },
    /// Replay a bundled model and check its stated facts end to end.
    Examples {
        /// example-3-2, prop-4-1, prop-4-2, or all.
        name: String,
    },
}

fn run(cmd: Command) -> Vec<Report> {
    match cmd {
        Command::Validate { path } => vec![commands::cmd_validate(&path)],
        Command::Peel { path, minimalize } => {
            let mode = match minimalize {
                None => Minimalize::None,
                Some(Mode::Almost) => Minimalize::Almost,
                Some(Mode::Strongly) => Minimalize::Strongly,
            };
            vec![commands::cmd_peel(&path, mode)]
        }
        Command::Kappa { path } => vec![commands::cmd_kappa(&path)],
        Command::Zariski { path } => vec![commands::cmd_zariski(&path)],
        Command::Mbound {
            data,
            model,
            assignment,
            m,
            threshold,
        } => {
            let source = match (model, assignment) {
                (Some(model), Some(assignment)) => MboundSource::Model { model, assignment },
                _ => MboundSource::Inline(data.join(" ")),
            };
            vec![commands::cmd_mbound(&source, m, threshold)]
        }
        Command::VerifyTheorem { m } => vec![commands::cmd_verify_theorem(m)],
        Command::Examples { name } if name == "all" => commands::example_names()
            .into_iter()
            .map(commands::cmd_examples)
            .collect(),
        Command::Examples { name } => vec![commands::cmd_examples(&name)],
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let reports = run(cli.command);
    let mut out = std::io::stdout().lock();
    for r in &reports {
        let text = match cli.format {
            Format::Text => r.render_text(),
            Format::Json => r.render_json(),
        };
        let _ = out.write_all(text.as_bytes());
        for failed in r.failed_claims() {
            eprintln!("logsurf: claim failed: {failed}");
        }
        if let Some(serde_json::Value::String(e)) = r.result.get("error") {
            eprintln!("logsurf: {e}");
        }
    }
    let code = reports.iter().map(Report::exit_code).max().unwrap_or(0);
    ExitCode::from(code)
}
