use std::fs;
use std::io::{self, IsTerminal};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use doxa::hilbert::{falsify, parse_proof, verify_proof};
use doxa::model::parse_model;
use doxa::random::ModelClass;
use doxa::semantics::evaluate_all;
use doxa::syntax::parse_formula;
use doxa::translation::{complexity, translate};
use doxa::{Formula, Model};
use doxa_cli::{QueryResult, Session};

/// Exact model checker and proof checker for dynamic doxastic Łukasiewicz
/// logic.
///
/// Exit status: 0 when the result is fully true (or a check succeeds),
/// 1 when it is not, 2 on any input error.
#[derive(Parser)]
#[command(name = "doxa", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evaluate a formula at one state, or at every state when -s is omitted
    Check {
        #[arg(short, long)]
        model: PathBuf,
        #[arg(short, long)]
        state: Option<String>,
        #[arg(short, long)]
        formula: String,
    },
    /// Rewrite a formula into an equivalent announcement-free one
    Translate {
        #[arg(short, long)]
        formula: String,
        /// Compare the values of the formula and its translation at every state
        #[arg(long, requires = "model")]
        verify: bool,
        #[arg(short, long)]
        model: Option<PathBuf>,
    },
    /// Print the complexity measure of a formula
    Complexity {
        #[arg(short, long)]
        formula: String,
    },
    /// Proof script commands
    Proof {
        #[command(subcommand)]
        action: ProofAction,
    },
    /// Search random models for a state where the formula is not fully true
    Falsify {
        #[arg(short, long)]
        formula: String,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1000)]
        budget: usize,
        #[arg(long, value_enum, default_value_t = Class::All)]
        class: Class,
    },
    /// Interactive announcement session on a model
    Repl {
        #[arg(short, long)]
        model: PathBuf,
    },
}

#[derive(Subcommand)]
enum ProofAction {
    /// Check a proof script
    Verify { file: PathBuf },
}

#[derive(Clone, Copy, ValueEnum)]
enum Class {
    All,
    Serial,
}

impl From<Class> for ModelClass {
    fn from(c: Class) -> Self {
        match c {
            Class::All => ModelClass::All,
            Class::Serial => ModelClass::Serial,
        }
    }
}

/// Input problems; always exit status 2.
struct Failure(String);

impl<E: std::fmt::Display> From<E> for Failure {
    fn from(e: E) -> Self {
        Failure(e.to_string())
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn load_model(path: &Path) -> Result<Model, Failure> {
    parse_model(&read(path)?).map_err(|e| Failure(format!("{}: {e}", path.display())))
}

fn formula(text: &str) -> Result<Formula, Failure> {
    parse_formula(text).map_err(|e| Failure(format!("formula {e}")))
}

fn status(ok: bool) -> ExitCode {
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}

fn run(cli: Cli) -> Result<ExitCode, Failure> {
    match cli.command {
        Command::Check {
            model,
            state,
            formula: text,
        } => {
            let m = load_model(&model)?;
            let f = formula(&text)?;
            let values = evaluate_all(&m, &f)?;
            match state {
                Some(s) => {
                    let idx = m
                        .state_index(&s)
                        .ok_or_else(|| Failure(format!("undeclared state `{s}`")))?;
                    println!("{}", QueryResult::from(&values[idx]));
                    Ok(status(values[idx].is_one()))
                }
                None => {
                    for (s, v) in m.states().iter().zip(&values) {
                        println!("{s}: {}", QueryResult::from(v));
                    }
                    Ok(status(values.iter().all(|v| v.is_one())))
                }
            }
        }
        Command::Translate {
            formula: text,
            verify,
            model,
        } => {
            let f = formula(&text)?;
            let t = translate(&f);
            println!("{t}");
            if !verify {
                return Ok(ExitCode::SUCCESS);
            }
            let m = load_model(model.as_deref().expect("clap enforces --model"))?;
            let (before, after) = (evaluate_all(&m, &f)?, evaluate_all(&m, &t)?);
            let mut agree = true;
            for ((s, a), b) in m.states().iter().zip(&before).zip(&after) {
                if a != b {
                    agree = false;
                    println!(
                        "mismatch at {s}: {} vs {}",
                        QueryResult::from(a),
                        QueryResult::from(b)
                    );
                }
            }
            if agree {
                println!("verified: equal values at all {} states", m.states().len());
            }
            Ok(status(agree))
        }
        Command::Complexity { formula: text } => {
            println!("{}", complexity(&formula(&text)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Proof {
            action: ProofAction::Verify { file },
        } => {
            let script = parse_proof(&read(&file)?)
                .map_err(|e| Failure(format!("{}: {e}", file.display())))?;
            let report = verify_proof(&script);
            if report.is_valid() {
                let conclusion = report
                    .conclusion
                    .as_ref()
                    .expect("valid reports have a conclusion");
                println!("OK: {} derives {conclusion}", script.name);
            } else {
                for v in &report.violations {
                    println!("{v}");
                }
                println!(
                    "REJECTED: {} problem(s) in {}",
                    report.violations.len(),
                    script.name
                );
            }
            Ok(status(report.is_valid()))
        }
        Command::Falsify {
            formula: text,
            seed,
            budget,
            class,
        } => {
            let f = formula(&text)?;
            match falsify(&f, budget, class.into(), seed) {
                Some(cx) => {
                    println!(
                        "counterexample at {}: {}",
                        cx.state,
                        QueryResult::from(&cx.value)
                    );
                    print!("{}", cx.model.to_text());
                    Ok(ExitCode::from(1))
                }
                None => {
                    println!("no counterexample in {budget} models");
                    Ok(ExitCode::SUCCESS)
                }
            }
        }
        Command::Repl { model } => {
            let mut session = Session::new(load_model(&model)?);
            let stdin = io::stdin();
            let prompt = stdin.is_terminal().then_some("doxa> ");
            session.run(stdin.lock(), io::stdout().lock(), prompt)?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(2)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    run(cli).unwrap_or_else(|Failure(message)| {
        eprintln!("error: {message}");
        ExitCode::from(2)
    })
}
