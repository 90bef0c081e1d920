//! Output formatting and the interactive announcement session behind the
//! `doxa` binary.

use std::fmt;
use std::io::{self, BufRead, Write};

use doxa::semantics::{evaluate, UpdateTrace};
use doxa::syntax::{parse_formula, parse_threshold_claim};
use doxa::{Model, TruthValue};

/// Digits shown for values whose decimal expansion does not terminate.
pub const APPROX_PLACES: usize = 6;

/// A truth value as printed by the CLI: the exact fraction first, then a
/// decimal reading that is marked with `~` when it is rounded.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct QueryResult {
    pub exact: String,
    pub decimal: String,
    pub approximate: bool,
    pub crisp: Option<bool>,
}

impl From<&TruthValue> for QueryResult {
    fn from(v: &TruthValue) -> Self {
        let r = v.as_rational();
        let (decimal, exact) = v.to_decimal(APPROX_PLACES);
        Self {
            exact: format!("{}/{}", r.numer(), r.denom()),
            decimal,
            approximate: !exact,
            crisp: v.as_crisp(),
        }
    }
}

impl fmt::Display for QueryResult {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mark = if self.approximate { "~" } else { "" };
        write!(f, "{} ({mark}{})", self.exact, self.decimal)
    }
}

/// What the session wants the caller to do after a command.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Reply {
    Print(String),
    Quit,
}

const HELP: &str = "\
commands:
  announce <formula> >= <g>   restrict the model to states where the claim holds
  eval <state> <formula>      value of a formula at a state of the current model
  states                      states of the current model
  undo                        drop the last announcement
  trace                       list the announcements made so far
  quit                        leave the session";

/// A sequence of announcements applied to a starting model.
pub struct Session {
    trace: UpdateTrace,
}

impl Session {
    pub fn new(model: Model) -> Self {
        Self {
            trace: UpdateTrace::new(model),
        }
    }

    pub fn trace(&self) -> &UpdateTrace {
        &self.trace
    }

    /// Runs one command line. Errors leave the session unchanged.
    pub fn execute(&mut self, line: &str) -> Result<Reply, String> {
        let line = line.trim();
        let (command, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        let text = match command {
            "" => String::new(),
            "quit" | "exit" => return Ok(Reply::Quit),
            "help" => HELP.to_string(),
            "announce" => {
                let (content, g) = parse_threshold_claim(rest).map_err(|e| e.to_string())?;
                let step = self.trace.announce(content, g).map_err(|e| e.to_string())?;
                if step.removed.is_empty() {
                    "removed: (none)".to_string()
                } else {
                    format!("removed: {}", step.removed.join(" "))
                }
            }
            "eval" => {
                let (state, formula) = rest
                    .split_once(char::is_whitespace)
                    .ok_or("usage: eval <state> <formula>")?;
                let f = parse_formula(formula.trim()).map_err(|e| e.to_string())?;
                let v = evaluate(self.trace.current(), state, &f).map_err(|e| e.to_string())?;
                QueryResult::from(&v).to_string()
            }
            "states" => self.trace.current().states().join(" "),
            "undo" => match self.trace.undo() {
                Some(step) => format!("undone: {} >= {}", step.content, step.threshold),
                None => "nothing to undo".to_string(),
            },
            "trace" => {
                let mut lines = vec![format!(
                    "0. initial: {}",
                    self.trace.initial().states().join(" ")
                )];
                for (i, step) in self.trace.steps().iter().enumerate() {
                    let removed = if step.removed.is_empty() {
                        "(none)".to_string()
                    } else {
                        step.removed.join(" ")
                    };
                    lines.push(format!(
                        "{}. {} >= {}: removed {removed}",
                        i + 1,
                        step.content,
                        step.threshold
                    ));
                }
                lines.join("\n")
            }
            other => return Err(format!("unknown command `{other}`; try `help`")),
        };
        Ok(Reply::Print(text))
    }

    /// Reads commands until `quit` or end of input. Errors are reported on
    /// `output` and the loop continues.
    pub fn run<R: BufRead, W: Write>(
        &mut self,
        input: R,
        mut output: W,
        prompt: Option<&str>,
    ) -> io::Result<()> {
        let mut lines = input.lines();
        loop {
            if let Some(p) = prompt {
                write!(output, "{p}")?;
                output.flush()?;
            }
            let Some(line) = lines.next().transpose()? else {
                break;
            };
            match self.execute(&line) {
                Ok(Reply::Quit) => break,
                Ok(Reply::Print(text)) if text.is_empty() => {}
                Ok(Reply::Print(text)) => writeln!(output, "{text}")?,
                Err(e) => writeln!(output, "error: {e}")?,
            }
        }
        Ok(())
    }
}
