//! Proof scripts: a line-oriented derivation format.
//!
//! ```text
//! proof gamma_geq
//! premise "p"
//! premise "q"
//! goal "(p >= 1/2) & (q >= 4/5)"
//! 1: premise "p"
//! 2: premise "q"
//! 3: conj 1 2                      |- "p & q"
//! 4: rg 3 g=4/5
//! 5: axiom LG0 phi="p" psi="q" g=4/5
//! 6: mp 4 5
//! qed 6
//! ```
//!
//! `mp i j` needs line `j` to be the implication from line `i`. `rb i a=A`
//! and `rg i g=G` are belief and threshold necessitation. `conj i j` and
//! `syl i j` are checker-side shorthands for adjunction and hypothetical
//! syllogism; they expand into registered theorems and modus ponens. Any line
//! may end with `|- "formula"` to state what it derives.

use std::fmt;

use thiserror::Error;

use crate::syntax::{is_identifier, parse_formula, Formula};
use crate::truth::Threshold;

use super::schema::{Binding, MetaKind, SchemaId, Substitution};

pub type LineIndex = u32;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Justification {
    Premise(Formula),
    Axiom(SchemaId, Substitution),
    /// A registered propositional theorem.
    Registered(SchemaId, Substitution),
    MP(LineIndex, LineIndex),
    NecB(LineIndex, String),
    NecG(LineIndex, Threshold),
    /// Adjunction shorthand: from `A` and `B` derive `A & B`.
    Conj(LineIndex, LineIndex),
    /// Syllogism shorthand: from `A -> B` and `B -> C` derive `A -> C`.
    Syl(LineIndex, LineIndex),
}

impl Justification {
    pub fn references(&self) -> Vec<LineIndex> {
        match self {
            Justification::Premise(_)
            | Justification::Axiom(..)
            | Justification::Registered(..) => vec![],
            Justification::NecB(i, _) | Justification::NecG(i, _) => vec![*i],
            Justification::MP(i, j) | Justification::Conj(i, j) | Justification::Syl(i, j) => {
                vec![*i, *j]
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofLine {
    pub index: LineIndex,
    pub justification: Justification,
    pub claim: Option<Formula>,
    /// 1-based line in the source text, when parsed from text.
    pub source_line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub premises: Vec<Formula>,
    pub goal: Option<Formula>,
    pub lines: Vec<ProofLine>,
    pub conclusion: LineIndex,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {message}")]
pub struct ScriptError {
    pub line: usize,
    pub message: String,
}

fn tokenize(text: &str) -> Result<Vec<String>, String> {
    let mut out = Vec::new();
    let mut cur = String::new();
    let mut quoted = false;
    let mut started = false;
    for c in text.chars() {
        match c {
            '"' => {
                quoted = !quoted;
                cur.push(c);
                started = true;
            }
            '#' if !quoted => break,
            c if c.is_whitespace() && !quoted => {
                if started {
                    out.push(std::mem::take(&mut cur));
                    started = false;
                }
            }
            c => {
                cur.push(c);
                started = true;
            }
        }
    }
    if quoted {
        return Err("unterminated string".into());
    }
    if started {
        out.push(cur);
    }
    Ok(out)
}

fn unquote(token: &str) -> Result<&str, String> {
    token
        .strip_prefix('"')
        .and_then(|t| t.strip_suffix('"'))
        .filter(|t| !t.contains('"'))
        .ok_or_else(|| format!("expected a quoted formula, found `{token}`"))
}

fn formula(token: &str) -> Result<Formula, String> {
    let text = unquote(token)?;
    parse_formula(text).map_err(|e| format!("in `{text}`: {e}"))
}

fn index(token: &str) -> Result<LineIndex, String> {
    token
        .parse()
        .map_err(|_| format!("expected a line number, found `{token}`"))
}

fn key_value<'t>(token: &'t str, key: &str) -> Result<&'t str, String> {
    token
        .split_once('=')
        .filter(|(k, _)| *k == key)
        .map(|(_, v)| v)
        .ok_or_else(|| format!("expected `{key}=...`, found `{token}`"))
}

fn threshold(text: &str) -> Result<Threshold, String> {
    text.parse()
        .map_err(|e| format!("bad threshold `{text}`: {e}"))
}

fn substitution(id: SchemaId, tokens: &[String]) -> Result<Substitution, String> {
    let mut subst = Substitution::new();
    for token in tokens {
        let (key, value) = token
            .split_once('=')
            .ok_or_else(|| format!("expected `name=value`, found `{token}`"))?;
        let kind = id
            .metavariables()
            .iter()
            .find(|(name, _)| *name == key)
            .map(|(_, kind)| *kind)
            .ok_or_else(|| format!("{id} has no metavariable `{key}`"))?;
        let binding = match kind {
            MetaKind::Formula | MetaKind::Atom => Binding::Formula(formula(value)?),
            MetaKind::Agent => Binding::Agent(value.to_string()),
            MetaKind::Threshold => Binding::Threshold(threshold(value)?),
        };
        if subst.0.insert(key.to_string(), binding).is_some() {
            return Err(format!("`{key}` bound twice"));
        }
    }
    Ok(subst)
}

fn justification(tokens: &[String]) -> Result<Justification, String> {
    let (rule, args) = tokens.split_first().ok_or("missing justification")?;
    let arity = |n: usize| {
        if args.len() == n {
            Ok(())
        } else {
            Err(format!(
                "`{rule}` takes {n} argument(s), got {}",
                args.len()
            ))
        }
    };
    Ok(match rule.as_str() {
        "premise" => {
            arity(1)?;
            Justification::Premise(formula(&args[0])?)
        }
        "axiom" | "theorem" => {
            let (name, bindings) = args.split_first().ok_or("missing schema name")?;
            let id = SchemaId::from_name(name).ok_or_else(|| format!("unknown schema `{name}`"))?;
            match (rule.as_str(), id.is_registered()) {
                ("axiom", true) => {
                    return Err(format!("`{name}` is a registered theorem; use `theorem`"))
                }
                ("theorem", false) => return Err(format!("`{name}` is an axiom; use `axiom`")),
                _ => {}
            }
            let subst = substitution(id, bindings)?;
            if id.is_registered() {
                Justification::Registered(id, subst)
            } else {
                Justification::Axiom(id, subst)
            }
        }
        "mp" | "conj" | "syl" => {
            arity(2)?;
            let (i, j) = (index(&args[0])?, index(&args[1])?);
            match rule.as_str() {
                "mp" => Justification::MP(i, j),
                "conj" => Justification::Conj(i, j),
                _ => Justification::Syl(i, j),
            }
        }
        "rb" => {
            arity(2)?;
            let agent = key_value(&args[1], "a")?;
            if !is_identifier(agent) {
                return Err(format!("`{agent}` is not an agent name"));
            }
            Justification::NecB(index(&args[0])?, agent.to_string())
        }
        "rg" => {
            arity(2)?;
            Justification::NecG(index(&args[0])?, threshold(key_value(&args[1], "g")?)?)
        }
        other => return Err(format!("unknown rule `{other}`")),
    })
}

pub fn parse_proof(text: &str) -> Result<ProofScript, ScriptError> {
    let mut name = None;
    let mut premises = Vec::new();
    let mut goal = None;
    let mut lines = Vec::new();
    let mut conclusion = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let err = |message: String| ScriptError { line, message };
        let tokens = tokenize(raw).map_err(err)?;
        let Some(head) = tokens.first() else { continue };
        if conclusion.is_some() {
            return Err(err("nothing may follow `qed`".into()));
        }
        match head.as_str() {
            "proof" if name.is_none() && tokens.len() == 2 => name = Some(tokens[1].clone()),
            "proof" => return Err(err("expected a single `proof NAME` header".into())),
            "premise" if tokens.len() == 2 => premises.push(formula(&tokens[1]).map_err(err)?),
            "goal" if tokens.len() == 2 && goal.is_none() => {
                goal = Some(formula(&tokens[1]).map_err(err)?)
            }
            "qed" if tokens.len() == 2 => conclusion = Some(index(&tokens[1]).map_err(err)?),
            label if label.ends_with(':') => {
                let index = index(&label[..label.len() - 1]).map_err(err)?;
                let body = &tokens[1..];
                let (body, claim) = match body.iter().position(|t| t == "|-") {
                    Some(pos) if pos + 2 == body.len() => {
                        (&body[..pos], Some(formula(&body[pos + 1]).map_err(err)?))
                    }
                    Some(_) => {
                        return Err(err("`|-` must be followed by exactly one formula".into()))
                    }
                    None => (body, None),
                };
                let justification = justification(body).map_err(err)?;
                lines.push(ProofLine {
                    index,
                    justification,
                    claim,
                    source_line: Some(line),
                });
            }
            other => return Err(err(format!("unexpected `{other}`"))),
        }
    }
    let end = text.lines().count();
    Ok(ProofScript {
        name: name.ok_or(ScriptError {
            line: 1,
            message: "missing `proof NAME` header".into(),
        })?,
        premises,
        goal,
        lines,
        conclusion: conclusion.ok_or(ScriptError {
            line: end,
            message: "missing `qed`".into(),
        })?,
    })
}

fn write_subst(f: &mut fmt::Formatter<'_>, subst: &Substitution) -> fmt::Result {
    for (name, binding) in &subst.0 {
        match binding {
            Binding::Formula(g) => write!(f, " {name}=\"{g}\"")?,
            Binding::Agent(a) => write!(f, " {name}={a}")?,
            Binding::Threshold(g) => write!(f, " {name}={g}")?,
        }
    }
    Ok(())
}

impl fmt::Display for Justification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Justification::Premise(p) => write!(f, "premise \"{p}\""),
            Justification::Axiom(id, s) => {
                write!(f, "axiom {id}")?;
                write_subst(f, s)
            }
            Justification::Registered(id, s) => {
                write!(f, "theorem {id}")?;
                write_subst(f, s)
            }
            Justification::MP(i, j) => write!(f, "mp {i} {j}"),
            Justification::NecB(i, a) => write!(f, "rb {i} a={a}"),
            Justification::NecG(i, g) => write!(f, "rg {i} g={g}"),
            Justification::Conj(i, j) => write!(f, "conj {i} {j}"),
            Justification::Syl(i, j) => write!(f, "syl {i} {j}"),
        }
    }
}

/// Renders the script in the text format; `parse_proof` reads it back.
impl fmt::Display for ProofScript {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "proof {}", self.name)?;
        for p in &self.premises {
            writeln!(f, "premise \"{p}\"")?;
        }
        if let Some(goal) = &self.goal {
            writeln!(f, "goal \"{goal}\"")?;
        }
        for line in &self.lines {
            write!(f, "{}: {}", line.index, line.justification)?;
            if let Some(claim) = &line.claim {
                write!(f, " |- \"{claim}\"")?;
            }
            writeln!(f)?;
        }
        writeln!(f, "qed {}", self.conclusion)
    }
}
