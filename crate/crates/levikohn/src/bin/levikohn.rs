//! Thin command-line front end over the library: reads a JSON problem file,
//! dispatches one command, prints a deterministic report.

use clap::{Parser, Subcommand};
use levikohn::cli::{run_command, Command, CommandFlags};
use levikohn::problem::parse_problem;
use levikohn::report::{emit_report, ReportFormat};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "levikohn",
    about = "Levi-form analysis and multiplier-ideal chains for polynomial domains in C^n"
)]
struct Args {
    #[command(subcommand)]
    command: Cmd,
}

#[derive(clap::Args)]
struct Common {
    /// Path to the JSON problem file.
    #[arg(long)]
    input: String,
    /// Form degree q (falls back to the problem file).
    #[arg(long)]
    q: Option<usize>,
    /// Chain step budget / bracket depth.
    #[arg(long = "max-steps")]
    max_steps: Option<usize>,
    /// Sample count override.
    #[arg(long)]
    samples: Option<usize>,
    /// Sampling seed override.
    #[arg(long)]
    seed: Option<u64>,
    /// Numeric tolerance override.
    #[arg(long)]
    tol: Option<f64>,
    /// Named metric from the problem file.
    #[arg(long)]
    metric: Option<String>,
    /// Tangency-order cap.
    #[arg(long = "max-order")]
    max_order: Option<u32>,
    /// Named variety selector.
    #[arg(long)]
    variety: Option<String>,
    /// Named vector-field family selector.
    #[arg(long)]
    fields: Option<String>,
    /// Named holomorphic map selector.
    #[arg(long)]
    map: Option<String>,
    /// Output format: json or text.
    #[arg(long, default_value = "json")]
    format: String,
}

#[derive(Subcommand)]
enum Cmd {
    /// Symbolic Levi data: gradient, Hessian, graph frame, trace and det.
    Levi(Common),
    /// Classify sampled boundary points: signature, margins, verdicts.
    Classify(Common),
    /// Run the multiplier-ideal chain on q-forms.
    Kohn(Common),
    /// Holomorphic dimension of a named variety.
    Holdim(Common),
    /// Bracket flag and involutivity of a named field family on a variety.
    Brackets(Common),
    /// Order of tangency of a named holomorphic map image.
    Tangency(Common),
    /// Complex-tangency check of a named variety.
    Ctangent(Common),
}

fn split(cmd: Cmd) -> (Command, Common) {
    match cmd {
        Cmd::Levi(c) => (Command::Levi, c),
        Cmd::Classify(c) => (Command::Classify, c),
        Cmd::Kohn(c) => (Command::Kohn, c),
        Cmd::Holdim(c) => (Command::Holdim, c),
        Cmd::Brackets(c) => (Command::Brackets, c),
        Cmd::Tangency(c) => (Command::Tangency, c),
        Cmd::Ctangent(c) => (Command::Ctangent, c),
    }
}

fn main() -> ExitCode {
    let args = Args::parse();
    let (command, common) = split(args.command);
    let format = match common.format.parse::<ReportFormat>() {
        Ok(f) => f,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let text = match std::fs::read_to_string(&common.input) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read '{}': {e}", common.input);
            return ExitCode::from(1);
        }
    };
    let problem = match parse_problem(&text) {
        Ok(p) => p,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let flags = CommandFlags {
        q: common.q,
        max_steps: common.max_steps,
        samples: common.samples,
        seed: common.seed,
        tol: common.tol,
        metric: common.metric,
        max_order: common.max_order,
        variety: common.variety,
        fields: common.fields,
        map: common.map,
    };
    match run_command(command, &problem, &flags) {
        Ok(report) => {
            match emit_report(&report, format) {
                Ok(s) => print!("{s}"),
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(3);
                }
            }
            ExitCode::from(report.exit_code as u8)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
