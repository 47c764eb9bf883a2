//! Command-line front end: decide entailment, run the model-enumeration
//! oracle, and export tableau / argumentation artifacts.

use clap::{Args, Parser, Subcommand, ValueEnum};
use paralogic::argumentation::complete_af;
use paralogic::argumentation::export::{af_to_dot, af_to_json};
use paralogic::entailment::decide_lpm;
use paralogic::semantics::{
    conflict_minimal_models, model_line, oracle_lp_entails, oracle_lpm_entails,
};
use paralogic::syntax::{parse_kb, parse_proposition, signature_with, KnowledgeBase, Proposition};
use paralogic::tableaux::export::{tableau_to_dot, tableau_to_json};
use paralogic::tableaux::{prove, GoalLabel, ProofResult};
use paralogic::{Error, Limits, SubsumptionMode};
use serde_json::json;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "paralogic",
    version,
    about = "Paraconsistent ALC reasoner: conflict-tolerant models, signed tableaux, argumentation"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide whether the query holds in every conflict-minimal model.
    Entail(QueryArgs),
    /// Enumerate conflict-minimal models and report both entailment notions.
    Oracle(QueryArgs),
    /// Write tableau or argumentation-framework artifacts (DOT + JSON).
    Export {
        /// Which artifact to produce.
        #[arg(value_enum)]
        what: ExportKind,
        #[command(flatten)]
        query: QueryArgs,
        /// Output directory for the artifacts.
        #[arg(long, default_value = ".")]
        dot_dir: PathBuf,
    },
}

#[derive(Args)]
struct QueryArgs {
    /// Knowledge base file (one statement per line, `#` comments).
    kb_path: PathBuf,
    /// Query proposition, e.g. "a : C" or "C <= D".
    query: String,
    /// Reading of subsumption axioms.
    #[arg(long, value_enum, env = "PARALOGIC_MODE", default_value_t = ModeArg::Material)]
    mode: ModeArg,
    /// Report format.
    #[arg(long, value_enum, default_value_t = OutputArg::Text)]
    output: OutputArg,
    /// Tableau node budget.
    #[arg(long, default_value_t = Limits::default().max_nodes)]
    max_nodes: usize,
    /// Argument budget for framework saturation.
    #[arg(long, default_value_t = Limits::default().max_arguments)]
    max_args: usize,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ModeArg {
    Material,
    Internal,
}

impl From<ModeArg> for SubsumptionMode {
    fn from(m: ModeArg) -> Self {
        match m {
            ModeArg::Material => SubsumptionMode::Material,
            ModeArg::Internal => SubsumptionMode::Internal,
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum OutputArg {
    Text,
    Json,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum ExportKind {
    Tableau,
    Af,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => ExitCode::from(code),
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(error_exit_code(&err))
        }
    }
}

/// 2 for bad input, 3 for resource caps and reasoning diagnostics.
fn error_exit_code(err: &Error) -> u8 {
    match err {
        Error::Parse(_)
        | Error::UnknownIdentifier { .. }
        | Error::InvalidInterpretation(_)
        | Error::Io(_) => 2,
        Error::OracleInapplicable(_)
        | Error::NodeBudgetExceeded { .. }
        | Error::ArgumentBudgetExceeded { .. }
        | Error::NoStableExtensions => 3,
    }
}

struct Loaded {
    kb: KnowledgeBase,
    goal: Proposition,
    mode: SubsumptionMode,
    limits: Limits,
}

fn load(args: &QueryArgs) -> paralogic::Result<Loaded> {
    let text = fs::read_to_string(&args.kb_path).map_err(|e| {
        Error::Io(std::io::Error::new(e.kind(), format!("{}: {e}", args.kb_path.display())))
    })?;
    let kb = parse_kb(&text)?;
    let goal = parse_proposition(&args.query)?;
    Ok(Loaded {
        kb,
        goal,
        mode: args.mode.into(),
        limits: Limits { max_nodes: args.max_nodes, max_arguments: args.max_args },
    })
}

fn run(command: Command) -> paralogic::Result<u8> {
    match command {
        Command::Entail(args) => cmd_entail(&args),
        Command::Oracle(args) => cmd_oracle(&args),
        Command::Export { what, query, dot_dir } => cmd_export(what, &query, &dot_dir),
    }
}

fn cmd_entail(args: &QueryArgs) -> paralogic::Result<u8> {
    let loaded = load(args)?;
    let decision = decide_lpm(&loaded.kb, GoalLabel::T, &loaded.goal, loaded.mode, &loaded.limits)?;
    match args.output {
        OutputArg::Text => print!("{}", decision.to_text()),
        OutputArg::Json => println!("{:#}", decision.to_json()),
    }
    Ok(if decision.verdict.is_entailed() { 0 } else { 1 })
}

fn cmd_oracle(args: &QueryArgs) -> paralogic::Result<u8> {
    let loaded = load(args)?;
    let sig = signature_with(&loaded.kb, [&loaded.goal]);
    let models = conflict_minimal_models(&loaded.kb, &sig, loaded.mode)?;
    let lp = oracle_lp_entails(&loaded.kb, &loaded.goal, loaded.mode)?;
    let lpm = oracle_lpm_entails(&loaded.kb, &loaded.goal, loaded.mode)?;
    let lines: Vec<String> =
        models.iter().map(|m| model_line(m, &sig)).collect::<paralogic::Result<_>>()?;
    match args.output {
        OutputArg::Text => {
            for line in &lines {
                println!("{line}");
            }
            println!("lp={lp} lpm={lpm}");
        }
        OutputArg::Json => {
            println!(
                "{:#}",
                json!({
                    "query": loaded.goal.to_string(),
                    "mode": loaded.mode.to_string(),
                    "conflict_minimal_models": lines,
                    "lp": lp,
                    "lpm": lpm,
                })
            );
        }
    }
    Ok(if lpm { 0 } else { 1 })
}

fn cmd_export(what: ExportKind, args: &QueryArgs, dot_dir: &Path) -> paralogic::Result<u8> {
    let loaded = load(args)?;
    fs::create_dir_all(dot_dir)?;
    let (dot_path, json_path, dot, json_value) = match what {
        ExportKind::Tableau => {
            let result =
                prove(&loaded.kb, GoalLabel::T, &loaded.goal, loaded.mode, &loaded.limits)?;
            let tableau = result.tableau();
            (
                dot_dir.join("tableau.dot"),
                dot_dir.join("tableau.json"),
                tableau_to_dot(tableau),
                tableau_to_json(tableau),
            )
        }
        ExportKind::Af => {
            let result =
                prove(&loaded.kb, GoalLabel::T, &loaded.goal, loaded.mode, &loaded.limits)?;
            if matches!(result, ProofResult::Proved { .. }) {
                eprintln!(
                    "refusing argumentation export: the query is provable without assumptions \
                     (monotone), so the framework degenerates; export the tableau instead"
                );
                return Ok(3);
            }
            let af =
                complete_af(&loaded.kb, GoalLabel::T, &loaded.goal, loaded.mode, &loaded.limits)?;
            (dot_dir.join("af.dot"), dot_dir.join("af.json"), af_to_dot(&af), af_to_json(&af))
        }
    };
    fs::write(&dot_path, dot)?;
    fs::write(&json_path, format!("{json_value:#}\n"))?;
    match args.output {
        OutputArg::Text => {
            println!("wrote {}", dot_path.display());
            println!("wrote {}", json_path.display());
        }
        OutputArg::Json => {
            println!(
                "{:#}",
                json!({ "written": [dot_path.display().to_string(), json_path.display().to_string()] })
            );
        }
    }
    Ok(0)
}
