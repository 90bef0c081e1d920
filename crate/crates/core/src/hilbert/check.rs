use std::collections::BTreeMap;
use std::fmt;

use crate::syntax::Formula;

use super::schema::{instantiate_schema, SchemaId, Substitution};
use super::script::{Justification, LineIndex, ProofScript};

/// One rejected line, or a problem with the script as a whole when `line` is
/// `None`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofViolation {
    pub line: Option<LineIndex>,
    pub reason: String,
}

impl fmt::Display for ProofViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.line {
            Some(i) => write!(f, "line {i}: {}", self.reason),
            None => write!(f, "script: {}", self.reason),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProofReport {
    pub violations: Vec<ProofViolation>,
    /// The formula on the `qed` line, when that line checked.
    pub conclusion: Option<Formula>,
    /// Every accepted line with the formula it derives.
    pub derived: BTreeMap<LineIndex, Formula>,
}

impl ProofReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

/// `minor`, `minor -> x` gives `x`.
fn modus_ponens(minor: &Formula, major: &Formula) -> Option<Formula> {
    match major {
        Formula::Impl(a, b) if **a == *minor => Some((**b).clone()),
        _ => None,
    }
}

fn registered(id: SchemaId, bindings: &[(&str, &Formula)]) -> Formula {
    let subst = bindings.iter().fold(Substitution::new(), |s, (name, f)| {
        s.formula(name, (*f).clone())
    });
    instantiate_schema(id, &subst).expect("registered theorem bindings are complete")
}

struct Checker<'a> {
    script: &'a ProofScript,
    derived: BTreeMap<LineIndex, Formula>,
    /// Lines seen so far, accepted or not.
    seen: BTreeMap<LineIndex, bool>,
}

impl Checker<'_> {
    fn cited(&self, i: LineIndex, at: LineIndex) -> Result<&Formula, String> {
        if i >= at {
            return Err(format!("cites line {i}, which is not earlier"));
        }
        match self.seen.get(&i) {
            None => Err(format!("cites line {i}, which does not exist")),
            Some(false) => Err(format!("cites line {i}, which was rejected")),
            Some(true) => Ok(&self.derived[&i]),
        }
    }

    fn derive(&self, at: LineIndex, justification: &Justification) -> Result<Formula, String> {
        match justification {
            Justification::Premise(f) => {
                if self.script.premises.contains(f) {
                    Ok(f.clone())
                } else {
                    Err(format!("`{f}` is not a declared premise"))
                }
            }
            Justification::Axiom(id, subst) | Justification::Registered(id, subst) => {
                instantiate_schema(*id, subst).map_err(|e| e.to_string())
            }
            Justification::MP(i, j) => {
                let (minor, major) = (self.cited(*i, at)?, self.cited(*j, at)?);
                modus_ponens(minor, major).ok_or_else(|| {
                    format!("modus ponens needs line {j} to be `{minor} -> ...`, found `{major}`")
                })
            }
            Justification::NecB(i, agent) => Ok(Formula::believes(
                agent.as_str(),
                self.cited(*i, at)?.clone(),
            )),
            Justification::NecG(i, g) => Ok(Formula::geq(self.cited(*i, at)?.clone(), g.clone())),
            Justification::Conj(i, j) => {
                let (a, b) = (self.cited(*i, at)?, self.cited(*j, at)?);
                // adj: a -> (b -> a & b), then two modus ponens steps
                let adj = registered(SchemaId::Adjunction, &[("phi", a), ("psi", b)]);
                let step = modus_ponens(a, &adj).ok_or("adjunction expansion failed")?;
                Ok(modus_ponens(b, &step).ok_or("adjunction expansion failed")?)
            }
            Justification::Syl(i, j) => {
                let (first, second) = (self.cited(*i, at)?, self.cited(*j, at)?);
                let (Formula::Impl(a, b), Formula::Impl(b2, c)) = (first, second) else {
                    return Err(format!(
                        "syllogism needs two implications, found `{first}` and `{second}`"
                    ));
                };
                if b != b2 {
                    return Err(format!(
                        "syllogism needs line {j} to start with `{b}`, found `{b2}`"
                    ));
                }
                // trans: (a -> b) -> ((b -> c) -> (a -> c)), then two modus ponens steps
                let trans = registered(
                    SchemaId::Transitivity,
                    &[("phi", a), ("psi", b), ("chi", c)],
                );
                let step = modus_ponens(first, &trans).ok_or("syllogism expansion failed")?;
                Ok(modus_ponens(second, &step).ok_or("syllogism expansion failed")?)
            }
        }
    }
}

/// Checks every line of `script`. The report is empty exactly when the script
/// derives its conclusion (and its goal, if stated) from its premises.
pub fn verify_proof(script: &ProofScript) -> ProofReport {
    let mut checker = Checker {
        script,
        derived: BTreeMap::new(),
        seen: BTreeMap::new(),
    };
    let mut violations = Vec::new();
    let mut previous: Option<LineIndex> = None;

    for line in &script.lines {
        let at = line.index;
        let mut reject = |reason: String| {
            violations.push(ProofViolation {
                line: Some(at),
                reason,
            })
        };
        if checker.seen.contains_key(&at) {
            reject("duplicate line number".into());
            continue;
        }
        if previous.is_some_and(|p| at <= p) {
            reject(format!(
                "line numbers must increase (previous was {})",
                previous.unwrap()
            ));
        }
        previous = Some(previous.map_or(at, |p| p.max(at)));

        let outcome = checker
            .derive(at, &line.justification)
            .and_then(|f| match &line.claim {
                Some(claim) if *claim != f => Err(format!(
                    "claims `{claim}` but the justification gives `{f}`"
                )),
                _ => Ok(f),
            });
        match outcome {
            Ok(f) => {
                checker.seen.insert(at, true);
                checker.derived.insert(at, f);
            }
            Err(reason) => {
                checker.seen.insert(at, false);
                reject(reason);
            }
        }
    }

    let conclusion = checker.derived.get(&script.conclusion).cloned();
    match checker.seen.get(&script.conclusion) {
        None => violations.push(ProofViolation {
            line: None,
            reason: format!("qed cites missing line {}", script.conclusion),
        }),
        Some(false) => violations.push(ProofViolation {
            line: None,
            reason: format!("qed cites rejected line {}", script.conclusion),
        }),
        Some(true) => {}
    }
    if let (Some(goal), Some(got)) = (&script.goal, &conclusion) {
        if goal != got {
            violations.push(ProofViolation {
                line: None,
                reason: format!("goal is `{goal}` but the proof ends with `{got}`"),
            });
        }
    }

    ProofReport {
        violations,
        conclusion,
        derived: checker.derived,
    }
}
