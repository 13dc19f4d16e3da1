use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use cancellation_lab::action::DEFAULT_BOUND;
use cancellation_lab::suite::DEFAULT_SEED;
use clap::{Parser, Subcommand};

mod commands;
mod input;
mod report;

use commands::{ActionCheck, CheckArgs, GenerateArgs, SearchArgs};
use report::Report;

pub const SEED_VAR: &str = "CANCELLATION_LAB_SEED";

#[derive(Parser)]
#[command(name = "cancellation-lab", version, about = "Checks and experiments for C(4)-T(4) small cancellation complexes")]
struct Cli {
    /// Emit the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a complex or presentation and scan face intersections.
    Check {
        input: PathBuf,
        #[arg(long, default_value_t = 4)]
        p: usize,
        #[arg(long, default_value_t = 4)]
        q: usize,
        /// Cross-check T(q) against diagrams of at most this area.
        #[arg(long)]
        oracle_area: Option<usize>,
        /// Attach a bigon along every free edge first.
        #[arg(long)]
        thicken: bool,
    },
    /// Torsion catalog of a presentation.
    Torsion { presentation: PathBuf },
    /// Print the quadrization of a complex.
    Quadrize {
        complex: PathBuf,
        /// Search for double ladders with cap up to this length.
        #[arg(long, value_name = "N")]
        find_dlwc: Option<usize>,
    },
    /// Disc diagram tools.
    #[command(subcommand)]
    Diagram(DiagramCommand),
    /// Check a finite group action on a complex.
    Action {
        complex: PathBuf,
        actions: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        check: ActionCheck,
        /// Largest group closure to enumerate.
        #[arg(long, default_value_t = DEFAULT_BOUND)]
        bound: usize,
    },
    /// Write a complex from a named family.
    Generate {
        family: String,
        #[arg(long)]
        seed: Option<u64>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// For ngon:K, also emit the rotation by this many steps.
        #[arg(long)]
        rotation: Option<usize>,
        #[arg(long, requires = "rotation")]
        action_out: Option<PathBuf>,
    },
    /// Run a property suite.
    Suite {
        name: String,
        #[arg(long)]
        seed: Option<u64>,
    },
}

#[derive(Subcommand)]
enum DiagramCommand {
    /// Validate a diagram file and audit its curvature.
    Audit {
        diagram: PathBuf,
        /// Target complex for labelled diagrams.
        #[arg(long)]
        complex: Option<PathBuf>,
    },
    /// Find a minimal-area diagram with a given boundary.
    Search {
        complex: PathBuf,
        /// Boundary path as signed edge names, e.g. "a +b -c".
        #[arg(long)]
        word: Option<String>,
        /// Use the boundary of this face.
        #[arg(long)]
        face: Option<String>,
        #[arg(long, default_value_t = 6)]
        bound: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn seed(flag: Option<u64>) -> Result<u64> {
    if let Some(s) = flag {
        return Ok(s);
    }
    match std::env::var(SEED_VAR) {
        Ok(v) => v.trim().parse().with_context(|| format!("{SEED_VAR} is not an unsigned integer: '{v}'")),
        Err(_) => Ok(DEFAULT_SEED),
    }
}

fn write_or_print(path: Option<&PathBuf>, text: &str) -> Result<()> {
    match path {
        Some(p) => std::fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn emit(r: &Report, json: bool) -> ExitCode {
    print!("{}", r.render(json));
    ExitCode::from(if r.pass { 0 } else { 1 })
}

fn run(cli: Cli) -> Result<ExitCode> {
    let json = cli.json;
    Ok(match cli.command {
        Command::Check { input, p, q, oracle_area, thicken } => {
            emit(&commands::check(&CheckArgs { input, p, q, oracle_area, thicken })?, json)
        }
        Command::Torsion { presentation } => emit(&commands::torsion(&presentation)?, json),
        Command::Quadrize { complex, find_dlwc } => {
            let (text, ok) = commands::quadrize_file(&complex, find_dlwc)?;
            print!("{text}");
            ExitCode::from(if ok { 0 } else { 1 })
        }
        Command::Diagram(DiagramCommand::Audit { diagram, complex }) => {
            emit(&commands::diagram_audit(&diagram, complex.as_deref())?, json)
        }
        Command::Diagram(DiagramCommand::Search { complex, word, face, bound, out }) => {
            emit(&commands::diagram_search(&SearchArgs { complex, word, face, bound, out })?, json)
        }
        Command::Action { complex, actions, check, bound } => emit(&commands::action(&complex, &actions, check, bound)?, json),
        Command::Generate { family, seed: s, out, rotation, action_out } => {
            let g = commands::generate(&GenerateArgs { family, seed: seed(s)?, rotation })?;
            write_or_print(out.as_ref(), &g.complex)?;
            if let Some(a) = &g.action {
                write_or_print(action_out.as_ref(), a)?;
            }
            ExitCode::SUCCESS
        }
        Command::Suite { name, seed: s } => {
            let (r, elapsed) = commands::suite(&name, seed(s)?)?;
            eprintln!("runtime: {elapsed:.2?}");
            emit(&r, json)
        }
    })
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
