//! Finite fuzzy Kripke models and their line-oriented text format.
//!
//! ```text
//! agents a b c
//! atoms  ma mb mc
//! states s1 s2 s3
//! val s1 ma 0.1
//! rel c s1 s2 0.95
//! reflexive 1
//! symmetric
//! ```
//!
//! Unlisted valuation and accessibility entries are 0. `reflexive d` sets
//! every `r_a(s, s)` not given by a `rel` line to `d`; `symmetric` replaces
//! both directions of every pair by their maximum.

use std::collections::{HashMap, HashSet};
use std::fmt;

use num_rational::BigRational;
use thiserror::Error;

use crate::syntax::{is_atom_name, is_identifier};
use crate::truth::{parse_rational, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ClosureDirectives {
    pub reflexive_degree: Option<TruthValue>,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ValuationEntry {
    pub state: String,
    pub atom: String,
    pub value: BigRational,
    pub line: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RelationEntry {
    pub agent: String,
    pub from: String,
    pub to: String,
    pub value: BigRational,
    pub line: Option<usize>,
}

/// An unchecked model description, as read from a file or assembled by hand.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ModelDraft {
    pub agents: Vec<String>,
    pub atoms: Vec<String>,
    pub states: Vec<String>,
    pub valuation: Vec<ValuationEntry>,
    pub accessibility: Vec<RelationEntry>,
    pub reflexive: Option<(BigRational, Option<usize>)>,
    pub symmetric: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ViolationKind {
    #[error("the model declares no states")]
    NoStates,
    #[error("{kind} `{name}` declared twice")]
    Duplicate { kind: &'static str, name: String },
    #[error("{what} has value {value}, outside [0, 1]")]
    OutOfRange { what: String, value: BigRational },
    #[error("undeclared {kind} `{name}`")]
    Undeclared { kind: &'static str, name: String },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub line: Option<usize>,
    pub kind: ViolationKind,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(line) => write!(f, "line {line}: {}", self.kind),
            None => write!(f, "{}", self.kind),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("invalid model: {}", .0.iter().map(ToString::to_string).collect::<Vec<_>>().join("; "))]
    Invalid(Vec<Violation>),
}

impl ModelDraft {
    pub fn new<S: AsRef<str>>(agents: &[S], atoms: &[S], states: &[S]) -> Self {
        let own = |xs: &[S]| xs.iter().map(|x| x.as_ref().to_string()).collect();
        Self {
            agents: own(agents),
            atoms: own(atoms),
            states: own(states),
            ..Self::default()
        }
    }

    pub fn val(&mut self, state: &str, atom: &str, value: BigRational) -> &mut Self {
        self.valuation.push(ValuationEntry {
            state: state.into(),
            atom: atom.into(),
            value,
            line: None,
        });
        self
    }

    pub fn rel(&mut self, agent: &str, from: &str, to: &str, value: BigRational) -> &mut Self {
        self.accessibility.push(RelationEntry {
            agent: agent.into(),
            from: from.into(),
            to: to.into(),
            value,
            line: None,
        });
        self
    }

    pub fn build(&self) -> Result<Model, ModelError> {
        let violations = validate_model(self);
        if !violations.is_empty() {
            return Err(ModelError::Invalid(violations));
        }
        let mut model = Model::empty(self.states.clone(), self.agents.clone(), self.atoms.clone());
        for entry in &self.valuation {
            let (s, p) = (
                model.state_index[&entry.state],
                model.atom_index[&entry.atom],
            );
            model.val[s][p] = TruthValue::new(entry.value.clone()).expect("validated");
        }
        let mut explicit = HashSet::new();
        for entry in &self.accessibility {
            let a = model.agent_index[&entry.agent];
            let (s, t) = (model.state_index[&entry.from], model.state_index[&entry.to]);
            model.rel[a][s][t] = TruthValue::new(entry.value.clone()).expect("validated");
            explicit.insert((a, s, t));
        }
        if let Some((degree, _)) = &self.reflexive {
            let degree = TruthValue::new(degree.clone()).expect("validated");
            for a in 0..model.agents.len() {
                for s in 0..model.states.len() {
                    if !explicit.contains(&(a, s, s)) {
                        model.rel[a][s][s] = degree.clone();
                    }
                }
            }
        }
        if self.symmetric {
            model = model.symmetric_closure();
        }
        Ok(model)
    }
}

/// Lists every invariant violation of `draft`; empty when it builds cleanly.
pub fn validate_model(draft: &ModelDraft) -> Vec<Violation> {
    let mut out = Vec::new();
    let mut push = |line, kind| out.push(Violation { line, kind });
    if draft.states.is_empty() {
        push(None, ViolationKind::NoStates);
    }
    fn declared<'a>(
        names: &'a [String],
        kind: &'static str,
        push: &mut impl FnMut(Option<usize>, ViolationKind),
    ) -> HashSet<&'a str> {
        let mut seen = HashSet::new();
        for name in names {
            if !seen.insert(name.as_str()) {
                push(
                    None,
                    ViolationKind::Duplicate {
                        kind,
                        name: name.clone(),
                    },
                );
            }
        }
        seen
    }
    let states = declared(&draft.states, "state", &mut push);
    let agents = declared(&draft.agents, "agent", &mut push);
    let atoms = declared(&draft.atoms, "atom", &mut push);

    let in_range = |v: &BigRational| TruthValue::new(v.clone()).is_ok();
    let mut seen_val = HashSet::new();
    for e in &draft.valuation {
        let mut ok = true;
        if !states.contains(e.state.as_str()) {
            push(
                e.line,
                ViolationKind::Undeclared {
                    kind: "state",
                    name: e.state.clone(),
                },
            );
            ok = false;
        }
        if !atoms.contains(e.atom.as_str()) {
            push(
                e.line,
                ViolationKind::Undeclared {
                    kind: "atom",
                    name: e.atom.clone(),
                },
            );
            ok = false;
        }
        if !in_range(&e.value) {
            let what = format!("valuation of {} at {}", e.atom, e.state);
            push(
                e.line,
                ViolationKind::OutOfRange {
                    what,
                    value: e.value.clone(),
                },
            );
        }
        if ok && !seen_val.insert((&e.state, &e.atom)) {
            let name = format!("{} {}", e.state, e.atom);
            push(
                e.line,
                ViolationKind::Duplicate {
                    kind: "valuation entry",
                    name,
                },
            );
        }
    }
    let mut seen_rel = HashSet::new();
    for e in &draft.accessibility {
        let mut ok = true;
        if !agents.contains(e.agent.as_str()) {
            push(
                e.line,
                ViolationKind::Undeclared {
                    kind: "agent",
                    name: e.agent.clone(),
                },
            );
            ok = false;
        }
        for s in [&e.from, &e.to] {
            if !states.contains(s.as_str()) {
                push(
                    e.line,
                    ViolationKind::Undeclared {
                        kind: "state",
                        name: s.clone(),
                    },
                );
                ok = false;
            }
        }
        if !in_range(&e.value) {
            let what = format!("relation {} from {} to {}", e.agent, e.from, e.to);
            push(
                e.line,
                ViolationKind::OutOfRange {
                    what,
                    value: e.value.clone(),
                },
            );
        }
        if ok && !seen_rel.insert((&e.agent, &e.from, &e.to)) {
            let name = format!("{} {} {}", e.agent, e.from, e.to);
            push(
                e.line,
                ViolationKind::Duplicate {
                    kind: "relation entry",
                    name,
                },
            );
        }
    }
    if let Some((degree, line)) = &draft.reflexive {
        if !in_range(degree) {
            push(
                *line,
                ViolationKind::OutOfRange {
                    what: "reflexive degree".into(),
                    value: degree.clone(),
                },
            );
        }
    }
    out
}

/// Reads the text format without checking declarations or ranges.
pub fn parse_model_draft(text: &str) -> Result<ModelDraft, ModelError> {
    let mut draft = ModelDraft::default();
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let content = raw.split('#').next().unwrap_or("");
        let mut words = content.split_whitespace();
        let Some(directive) = words.next() else {
            continue;
        };
        let args: Vec<&str> = words.collect();
        let syntax = |message: String| ModelError::Syntax { line, message };
        let arity = |n: usize| {
            if args.len() == n {
                Ok(())
            } else {
                Err(syntax(format!(
                    "`{directive}` takes {n} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let ident = |name: &str, atom: bool| {
            let ok = if atom {
                is_atom_name(name)
            } else {
                is_identifier(name)
            };
            if ok {
                Ok(name.to_string())
            } else {
                Err(syntax(format!("`{name}` is not a valid identifier")))
            }
        };
        let number = |text: &str| parse_rational(text).map_err(|e| syntax(e.to_string()));
        match directive {
            "agents" | "atoms" | "states" => {
                let names = args
                    .iter()
                    .map(|n| ident(n, directive == "atoms"))
                    .collect::<Result<Vec<_>, _>>()?;
                match directive {
                    "agents" => draft.agents.extend(names),
                    "atoms" => draft.atoms.extend(names),
                    _ => draft.states.extend(names),
                }
            }
            "val" => {
                arity(3)?;
                draft.valuation.push(ValuationEntry {
                    state: ident(args[0], false)?,
                    atom: ident(args[1], true)?,
                    value: number(args[2])?,
                    line: Some(line),
                });
            }
            "rel" => {
                arity(4)?;
                draft.accessibility.push(RelationEntry {
                    agent: ident(args[0], false)?,
                    from: ident(args[1], false)?,
                    to: ident(args[2], false)?,
                    value: number(args[3])?,
                    line: Some(line),
                });
            }
            "reflexive" => {
                arity(1)?;
                if draft.reflexive.is_some() {
                    return Err(syntax("`reflexive` given twice".into()));
                }
                draft.reflexive = Some((number(args[0])?, Some(line)));
            }
            "symmetric" => {
                arity(0)?;
                draft.symmetric = true;
            }
            other => return Err(syntax(format!("unknown directive `{other}`"))),
        }
    }
    Ok(draft)
}

pub fn parse_model(text: &str) -> Result<Model, ModelError> {
    parse_model_draft(text)?.build()
}

/// A validated finite model. Immutable once built.
#[derive(Clone)]
pub struct Model {
    states: Vec<String>,
    agents: Vec<String>,
    atoms: Vec<String>,
    state_index: HashMap<String, usize>,
    agent_index: HashMap<String, usize>,
    atom_index: HashMap<String, usize>,
    // rel[agent][from][to]
    rel: Vec<Vec<Vec<TruthValue>>>,
    // val[state][atom]
    val: Vec<Vec<TruthValue>>,
}

fn index_of(names: &[String]) -> HashMap<String, usize> {
    names
        .iter()
        .enumerate()
        .map(|(i, n)| (n.clone(), i))
        .collect()
}

impl Model {
    fn empty(states: Vec<String>, agents: Vec<String>, atoms: Vec<String>) -> Self {
        let n = states.len();
        Self {
            state_index: index_of(&states),
            agent_index: index_of(&agents),
            atom_index: index_of(&atoms),
            rel: vec![vec![vec![TruthValue::zero(); n]; n]; agents.len()],
            val: vec![vec![TruthValue::zero(); atoms.len()]; n],
            states,
            agents,
            atoms,
        }
    }

    /// Builds a model from dense tables: `rel[agent][from][to]` and
    /// `val[state][atom]`.
    pub fn from_tables(
        states: Vec<String>,
        agents: Vec<String>,
        atoms: Vec<String>,
        rel: Vec<Vec<Vec<TruthValue>>>,
        val: Vec<Vec<TruthValue>>,
    ) -> Result<Self, ModelError> {
        let mut draft = ModelDraft {
            states,
            agents,
            atoms,
            ..ModelDraft::default()
        };
        let violations = validate_model(&draft);
        if !violations.is_empty() {
            return Err(ModelError::Invalid(violations));
        }
        let n = draft.states.len();
        let shape_ok = rel.len() == draft.agents.len()
            && rel
                .iter()
                .all(|m| m.len() == n && m.iter().all(|row| row.len() == n))
            && val.len() == n
            && val.iter().all(|row| row.len() == draft.atoms.len());
        if !shape_ok {
            return Err(ModelError::Syntax {
                line: 0,
                message: "table dimensions do not match declarations".into(),
            });
        }
        let (states, agents, atoms) = (
            std::mem::take(&mut draft.states),
            std::mem::take(&mut draft.agents),
            std::mem::take(&mut draft.atoms),
        );
        Ok(Self {
            rel,
            val,
            ..Self::empty(states, agents, atoms)
        })
    }

    pub fn states(&self) -> &[String] {
        &self.states
    }

    pub fn agents(&self) -> &[String] {
        &self.agents
    }

    pub fn atoms(&self) -> &[String] {
        &self.atoms
    }

    pub fn state_index(&self, state: &str) -> Option<usize> {
        self.state_index.get(state).copied()
    }

    pub fn agent_index(&self, agent: &str) -> Option<usize> {
        self.agent_index.get(agent).copied()
    }

    pub fn atom_index(&self, atom: &str) -> Option<usize> {
        self.atom_index.get(atom).copied()
    }

    pub fn valuation(&self, state: &str, atom: &str) -> Option<&TruthValue> {
        Some(&self.val[self.state_index(state)?][self.atom_index(atom)?])
    }

    pub fn accessibility(&self, agent: &str, from: &str, to: &str) -> Option<&TruthValue> {
        Some(&self.rel[self.agent_index(agent)?][self.state_index(from)?][self.state_index(to)?])
    }

    pub fn valuation_at(&self, state: usize, atom: usize) -> &TruthValue {
        &self.val[state][atom]
    }

    pub fn accessibility_at(&self, agent: usize, from: usize, to: usize) -> &TruthValue {
        &self.rel[agent][from][to]
    }

    /// Every state has itself as a fully related successor, for every agent.
    pub fn is_serial(&self) -> bool {
        self.rel
            .iter()
            .all(|m| (0..self.states.len()).all(|s| m[s][s].is_one()))
    }

    // index loops read best for a pairwise update of a square matrix
    #[allow(clippy::needless_range_loop)]
    pub fn symmetric_closure(&self) -> Model {
        let mut out = self.clone();
        let n = self.states.len();
        for m in &mut out.rel {
            for s in 0..n {
                for t in s + 1..n {
                    let hi = m[s][t].join(&m[t][s]);
                    m[s][t] = hi.clone();
                    m[t][s] = hi;
                }
            }
        }
        out
    }

    /// The submodel on the given state indices, in the given order, with
    /// relations and valuation restricted unchanged.
    pub fn restrict(&self, keep: &[usize]) -> Model {
        let states = keep.iter().map(|&s| self.states[s].clone()).collect();
        let rel = self
            .rel
            .iter()
            .map(|m| {
                keep.iter()
                    .map(|&s| keep.iter().map(|&t| m[s][t].clone()).collect())
                    .collect()
            })
            .collect();
        let val = keep.iter().map(|&s| self.val[s].clone()).collect();
        Model {
            rel,
            val,
            ..Model::empty(states, self.agents.clone(), self.atoms.clone())
        }
    }

    /// Serializes to the text format; reparsing yields an equal model.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let line = |out: &mut String, head: &str, names: &[String]| {
            out.push_str(head);
            for n in names {
                out.push(' ');
                out.push_str(n);
            }
            out.push('\n');
        };
        line(&mut out, "agents", &self.agents);
        line(&mut out, "atoms", &self.atoms);
        line(&mut out, "states", &self.states);
        for (s, state) in self.states.iter().enumerate() {
            for (p, atom) in self.atoms.iter().enumerate() {
                out.push_str(&format!("val {state} {atom} {}\n", self.val[s][p]));
            }
        }
        for (a, agent) in self.agents.iter().enumerate() {
            for (s, from) in self.states.iter().enumerate() {
                for (t, to) in self.states.iter().enumerate() {
                    let v = &self.rel[a][s][t];
                    if !v.is_zero() {
                        out.push_str(&format!("rel {agent} {from} {to} {v}\n"));
                    }
                }
            }
        }
        out
    }
}

fn same_names(a: &[String], b: &[String]) -> bool {
    a.len() == b.len() && a.iter().collect::<HashSet<_>>() == b.iter().collect::<HashSet<_>>()
}

/// Equality by names: declaration order does not matter.
impl PartialEq for Model {
    fn eq(&self, other: &Self) -> bool {
        if !(same_names(&self.states, &other.states)
            && same_names(&self.agents, &other.agents)
            && same_names(&self.atoms, &other.atoms))
        {
            return false;
        }
        let s_map: Vec<usize> = self.states.iter().map(|s| other.state_index[s]).collect();
        let p_map: Vec<usize> = self.atoms.iter().map(|p| other.atom_index[p]).collect();
        let a_map: Vec<usize> = self.agents.iter().map(|a| other.agent_index[a]).collect();
        let vals = (0..self.states.len()).all(|s| {
            (0..self.atoms.len()).all(|p| self.val[s][p] == other.val[s_map[s]][p_map[p]])
        });
        vals && (0..self.agents.len()).all(|a| {
            (0..self.states.len()).all(|s| {
                (0..self.states.len())
                    .all(|t| self.rel[a][s][t] == other.rel[a_map[a]][s_map[s]][s_map[t]])
            })
        })
    }
}

impl Eq for Model {}

impl fmt::Debug for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
