use branchsat::formula::Fragment;
use branchsat::model::{check_ctl, export_dot, export_json, import_json};
use branchsat::{parse, solve, to_nnf, SolveError, SolveOptions, Verdict};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

const EXIT_SAT: u8 = 10;
const EXIT_UNSAT: u8 = 20;
const EXIT_ERROR: u8 = 1;
const EXIT_BUDGET: u8 = 2;

#[derive(Parser)]
#[command(
    name = "branchsat",
    about = "Satisfiability games for the branching-time logics CTL, CTL+ and CTL*",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide satisfiability and optionally extract a model.
    /// Exit codes: 10 satisfiable, 20 unsatisfiable, 1 error, 2 budget.
    Solve(SolveArgs),
    /// Check a CTL formula against a model in the JSON format.
    /// Exit code 0 iff the model satisfies the formula.
    CheckModel(CheckModelArgs),
    /// Run a corpus of `<sat|unsat> <formula>` lines and report mismatches.
    Corpus { path: PathBuf },
}

#[derive(Args)]
struct SolveArgs {
    /// File containing the formula; alternative to -e.
    file: Option<PathBuf>,
    /// Formula given inline.
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
    /// Pipeline selection; `auto` picks the smallest fragment.
    #[arg(long, default_value = "auto")]
    logic: String,
    /// Write the extracted model as JSON.
    #[arg(long)]
    model: Option<PathBuf>,
    /// Write the extracted model as DOT.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Write the game graph in the line-based node format.
    #[arg(long = "export-game")]
    export_game: Option<PathBuf>,
    /// Print construction statistics as JSON.
    #[arg(long)]
    stats: bool,
    /// Print the reachable acceptance-automaton states.
    #[arg(long = "dump-acceptance")]
    dump_acceptance: bool,
    /// Cap on game nodes before giving up.
    #[arg(long = "node-budget", default_value_t = branchsat::solve::DEFAULT_NODE_BUDGET)]
    node_budget: usize,
}

#[derive(Args)]
struct CheckModelArgs {
    /// Model in the JSON export format.
    model: PathBuf,
    /// File containing the formula; alternative to -e.
    file: Option<PathBuf>,
    #[arg(short = 'e', long = "expr")]
    expr: Option<String>,
}

fn main() -> ExitCode {
    match Cli::parse().command {
        Command::Solve(args) => cmd_solve(args),
        Command::CheckModel(args) => cmd_check_model(args),
        Command::Corpus { path } => cmd_corpus(&path),
    }
}

fn read_formula(file: &Option<PathBuf>, expr: &Option<String>) -> Result<String, String> {
    match (file, expr) {
        (None, Some(e)) => Ok(e.clone()),
        (Some(f), None) => {
            std::fs::read_to_string(f).map_err(|e| format!("cannot read {}: {e}", f.display()))
        }
        (None, None) => Err("no formula given; use -e or a file argument".to_string()),
        (Some(_), Some(_)) => Err("give either -e or a file, not both".to_string()),
    }
}

fn cmd_solve(args: SolveArgs) -> ExitCode {
    let text = match read_formula(&args.file, &args.expr) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let logic = match args.logic.as_str() {
        "auto" => None,
        other => match Fragment::parse_name(other) {
            Some(f) => Some(f),
            None => {
                eprintln!("error: unknown logic '{other}' (auto|ctl|ctlplus|ctlstar)");
                return ExitCode::from(EXIT_ERROR);
            }
        },
    };
    let opts = SolveOptions {
        logic,
        node_budget: args.node_budget,
        want_model: true,
        want_game_export: args.export_game.is_some(),
        want_acceptance_dump: args.dump_acceptance,
    };
    let report = match solve(text.trim(), &opts) {
        Ok(r) => r,
        Err(SolveError::Budget { budget }) => {
            eprintln!("error: node budget exceeded ({budget} nodes)");
            return ExitCode::from(EXIT_BUDGET);
        }
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    println!("{}", report.verdict);
    if args.stats {
        println!("{}", serde_json::to_string_pretty(&report.stats).unwrap());
    }
    if args.dump_acceptance {
        if let Some(dump) = &report.acceptance_dump {
            print!("{dump}");
        }
    }
    eprintln!("solved as {} in {} ms", report.pipeline, report.wall.as_millis());
    if let Some(path) = &args.export_game {
        if let Err(e) = std::fs::write(path, report.game_export.as_deref().unwrap_or("")) {
            eprintln!("error: cannot write {}: {e}", path.display());
            return ExitCode::from(EXIT_ERROR);
        }
    }
    if let Some(model) = &report.model {
        if let Some(path) = &args.model {
            if let Err(e) = std::fs::write(path, export_json(model)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
        }
        if let Some(path) = &args.dot {
            if let Err(e) = std::fs::write(path, export_dot(model)) {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(EXIT_ERROR);
            }
        }
    }
    match report.verdict {
        Verdict::Sat => ExitCode::from(EXIT_SAT),
        Verdict::Unsat => ExitCode::from(EXIT_UNSAT),
    }
}

fn cmd_check_model(args: CheckModelArgs) -> ExitCode {
    let text = match read_formula(&args.file, &args.expr) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let model_text = match std::fs::read_to_string(&args.model) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", args.model.display());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let model = match import_json(&model_text) {
        Ok(m) => m,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let ast = match parse(text.trim()) {
        Ok(a) => to_nnf(&a),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(EXIT_ERROR);
        }
    };
    match check_ctl(&model, &ast) {
        Ok(true) => {
            println!("holds");
            ExitCode::SUCCESS
        }
        Ok(false) => {
            println!("fails");
            ExitCode::from(EXIT_ERROR)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_ERROR)
        }
    }
}

fn cmd_corpus(path: &PathBuf) -> ExitCode {
    let text = match std::fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) => {
            eprintln!("error: cannot read {}: {e}", path.display());
            return ExitCode::from(EXIT_ERROR);
        }
    };
    let mut run = 0usize;
    let mut failures = Vec::new();
    for (lineno, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or_default().trim();
        if line.is_empty() {
            continue;
        }
        let Some((expect_str, formula)) = line.split_once(char::is_whitespace) else {
            eprintln!("error: line {}: expected '<sat|unsat> <formula>'", lineno + 1);
            return ExitCode::from(EXIT_ERROR);
        };
        let expected = match expect_str {
            "sat" => Verdict::Sat,
            "unsat" => Verdict::Unsat,
            other => {
                eprintln!("error: line {}: unknown status '{other}'", lineno + 1);
                return ExitCode::from(EXIT_ERROR);
            }
        };
        run += 1;
        match solve(formula.trim(), &SolveOptions { want_model: false, ..Default::default() }) {
            Ok(r) if r.verdict == expected => {}
            Ok(r) => {
                println!(
                    "MISMATCH line {}: expected {expected}, got {} for {formula}",
                    lineno + 1,
                    r.verdict
                );
                failures.push(lineno + 1);
            }
            Err(e) => {
                println!("ERROR line {}: {e}", lineno + 1);
                failures.push(lineno + 1);
            }
        }
    }
    println!("{run} run, {} failed", failures.len());
    if failures.is_empty() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(EXIT_ERROR)
    }
}
