//! The valuation function on finite models, public-announcement updates,
//! and traces of repeated announcements.
//!
//! Evaluation is global: every subformula is computed once for all states of
//! the current (sub)model, bottom-up. An announcement evaluates its body over
//! the surviving states only, so values never leak across an update.

use thiserror::Error;

use crate::model::Model;
use crate::syntax::Formula;
use crate::truth::{Threshold, TruthValue};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EvalError {
    #[error("undeclared state `{0}`")]
    UndeclaredState(String),
    #[error("undeclared atom `{0}`")]
    UndeclaredAtom(String),
    #[error("undeclared agent `{0}`")]
    UndeclaredAgent(String),
    #[error("announcement content `{0}` contains an announcement")]
    DynamicContent(Formula),
    #[error("announcing {content} >= {threshold} leaves no state")]
    EmptyUpdate {
        content: Box<Formula>,
        threshold: Threshold,
    },
}

fn check_signature(m: &Model, f: &Formula) -> Result<(), EvalError> {
    for p in f.atoms() {
        m.atom_index(p)
            .ok_or_else(|| EvalError::UndeclaredAtom(p.to_string()))?;
    }
    for a in f.agents() {
        m.agent_index(a)
            .ok_or_else(|| EvalError::UndeclaredAgent(a.to_string()))?;
    }
    Ok(())
}

fn state(m: &Model, s: &str) -> Result<usize, EvalError> {
    m.state_index(s)
        .ok_or_else(|| EvalError::UndeclaredState(s.to_string()))
}

/// Values of `f` over the submodel of `m` on `live` (indices into `m`),
/// position-aligned with `live`. The signature must already be checked.
fn eval_on(m: &Model, live: &[usize], f: &Formula) -> Vec<TruthValue> {
    match f {
        Formula::Bottom => vec![TruthValue::zero(); live.len()],
        Formula::Atom(p) => {
            let p = m.atom_index(p).expect("checked signature");
            live.iter().map(|&s| m.valuation_at(s, p).clone()).collect()
        }
        Formula::Not(g) => eval_on(m, live, g).iter().map(TruthValue::neg).collect(),
        Formula::Geq(g, t) => eval_on(m, live, g).iter().map(|v| v.geq(t)).collect(),
        Formula::Conj(a, b) => {
            let (a, b) = (eval_on(m, live, a), eval_on(m, live, b));
            a.iter().zip(&b).map(|(x, y)| x.conj(y)).collect()
        }
        Formula::Impl(a, b) => {
            let (a, b) = (eval_on(m, live, a), eval_on(m, live, b));
            a.iter().zip(&b).map(|(x, y)| x.implies(y)).collect()
        }
        Formula::Believes(agent, g) => {
            let agent = m.agent_index(agent).expect("checked signature");
            let inner = eval_on(m, live, g);
            live.iter()
                .map(|&s| belief(m, live, agent, s, &inner))
                .collect()
        }
        Formula::Announce(content, t, body) => {
            let holds: Vec<bool> = eval_on(m, live, content)
                .iter()
                .map(|v| v.geq(t).is_one())
                .collect();
            let survivors: Vec<usize> = live
                .iter()
                .zip(&holds)
                .filter(|(_, h)| **h)
                .map(|(s, _)| *s)
                .collect();
            let mut after = eval_on(m, &survivors, body).into_iter();
            holds
                .iter()
                .map(|&h| {
                    if h {
                        after.next().expect("one value per survivor")
                    } else {
                        TruthValue::one()
                    }
                })
                .collect()
        }
    }
}

// inf over live states t of max(1 - r_a(s, t), V_t); finite, so a minimum
fn belief(m: &Model, live: &[usize], agent: usize, s: usize, inner: &[TruthValue]) -> TruthValue {
    live.iter()
        .zip(inner)
        .map(|(&t, v)| m.accessibility_at(agent, s, t).neg().join(v))
        .min()
        .unwrap_or_else(TruthValue::one)
}

/// Values of `f` at every state of `m`, in declaration order.
pub fn evaluate_all(m: &Model, f: &Formula) -> Result<Vec<TruthValue>, EvalError> {
    check_signature(m, f)?;
    let live: Vec<usize> = (0..m.states().len()).collect();
    Ok(eval_on(m, &live, f))
}

/// The value of `f` at state `s` of `m`.
pub fn evaluate(m: &Model, s: &str, f: &Formula) -> Result<TruthValue, EvalError> {
    let idx = state(m, s)?;
    Ok(evaluate_all(m, f)?.swap_remove(idx))
}

/// The graded belief of agent `a` in `f` at state `s`.
pub fn believe_value(m: &Model, s: &str, a: &str, f: &Formula) -> Result<TruthValue, EvalError> {
    let idx = state(m, s)?;
    let agent = m
        .agent_index(a)
        .ok_or_else(|| EvalError::UndeclaredAgent(a.to_string()))?;
    let inner = evaluate_all(m, f)?;
    let live: Vec<usize> = (0..m.states().len()).collect();
    Ok(belief(m, &live, agent, idx, &inner))
}

/// The result of publicly announcing `content >= g`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Update {
    pub model: Model,
    pub surviving: Vec<String>,
    pub removed: Vec<String>,
}

/// Restricts `m` to the states where `content >= g` holds.
///
/// Fails when no state survives: announcements are assumed truthful, so an
/// announcement false everywhere has no update model.
pub fn update_model(m: &Model, content: &Formula, g: &Threshold) -> Result<Update, EvalError> {
    if !content.is_announcement_free() {
        return Err(EvalError::DynamicContent(content.clone()));
    }
    let values = evaluate_all(m, content)?;
    let (keep, drop): (Vec<usize>, Vec<usize>) =
        (0..m.states().len()).partition(|&s| values[s].geq(g).is_one());
    if keep.is_empty() {
        return Err(EvalError::EmptyUpdate {
            content: Box::new(content.clone()),
            threshold: g.clone(),
        });
    }
    let names = |idx: &[usize]| idx.iter().map(|&s| m.states()[s].clone()).collect();
    Ok(Update {
        model: m.restrict(&keep),
        surviving: names(&keep),
        removed: names(&drop),
    })
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateStep {
    pub content: Formula,
    pub threshold: Threshold,
    pub surviving: Vec<String>,
    pub removed: Vec<String>,
    pub model: Model,
}

/// A model followed by the models produced by successive announcements.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UpdateTrace {
    initial: Model,
    steps: Vec<UpdateStep>,
}

impl UpdateTrace {
    pub fn new(initial: Model) -> Self {
        Self {
            initial,
            steps: Vec::new(),
        }
    }

    pub fn initial(&self) -> &Model {
        &self.initial
    }

    pub fn steps(&self) -> &[UpdateStep] {
        &self.steps
    }

    pub fn current(&self) -> &Model {
        self.steps.last().map_or(&self.initial, |s| &s.model)
    }

    /// Applies one announcement to the current model. On error the trace is
    /// left unchanged.
    pub fn announce(
        &mut self,
        content: Formula,
        threshold: Threshold,
    ) -> Result<&UpdateStep, EvalError> {
        let Update {
            model,
            surviving,
            removed,
        } = update_model(self.current(), &content, &threshold)?;
        self.steps.push(UpdateStep {
            content,
            threshold,
            surviving,
            removed,
            model,
        });
        Ok(self.steps.last().expect("just pushed"))
    }

    pub fn undo(&mut self) -> Option<UpdateStep> {
        self.steps.pop()
    }
}

/// Applies the announcements left to right, stopping at the first failure.
pub fn run_announcements(
    m: &Model,
    anns: &[(Formula, Threshold)],
) -> Result<UpdateTrace, EvalError> {
    let mut trace = UpdateTrace::new(m.clone());
    for (content, g) in anns {
        trace.announce(content.clone(), g.clone())?;
    }
    Ok(trace)
}


#[cfg(test)]
mod properties {
    use proptest::prelude::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    use super::*;
    use crate::random::{random_formula, random_model, random_threshold, FormulaShape, ModelClass};

    const ATOMS: [&str; 3] = ["p", "q", "r"];
    const AGENTS: [&str; 2] = ["a", "b"];

    fn setup(seed: u64) -> (ChaCha8Rng, Model) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let m = random_model(&mut rng, &AGENTS, &ATOMS, ModelClass::All);
        (rng, m)
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(256))]

        #[test]
        fn derived_connectives_match_fast_paths(seed in any::<u64>()) {
            let (mut rng, m) = setup(seed);
            let shape = FormulaShape::new(3, &ATOMS, &AGENTS);
            let (x, y) = (random_formula(&mut rng, &shape), random_formula(&mut rng, &shape));
            let (vx, vy) = (evaluate_all(&m, &x).unwrap(), evaluate_all(&m, &y).unwrap());
            let or = evaluate_all(&m, &Formula::or(x.clone(), y.clone())).unwrap();
            let and = evaluate_all(&m, &Formula::and(x.clone(), y.clone())).unwrap();
            let sdisj = evaluate_all(&m, &Formula::sdisj(x, y)).unwrap();
            for s in 0..m.states().len() {
                prop_assert_eq!(&or[s], &vx[s].join(&vy[s]));
                prop_assert_eq!(&and[s], &vx[s].meet(&vy[s]));
                prop_assert_eq!(&sdisj[s], &vx[s].sdisj(&vy[s]));
            }
        }

        #[test]
        fn thresholds_are_crisp(seed in any::<u64>()) {
            let (mut rng, m) = setup(seed);
            let f = random_formula(&mut rng, &FormulaShape::new(4, &ATOMS, &AGENTS));
            let g = random_threshold(&mut rng);
            for v in evaluate_all(&m, &Formula::geq(f, g)).unwrap() {
                prop_assert!(v.as_crisp().is_some());
            }
        }

        #[test]
        fn self_conjunction_never_increases(seed in any::<u64>()) {
            let (mut rng, m) = setup(seed);
            let f = random_formula(&mut rng, &FormulaShape::new(4, &ATOMS, &AGENTS));
            let single = evaluate_all(&m, &f).unwrap();
            let double = evaluate_all(&m, &Formula::conj(f.clone(), f)).unwrap();
            prop_assert!(single.iter().zip(&double).all(|(a, b)| b <= a));
        }

        #[test]
        fn updates_preserve_atoms_and_partition_states(seed in any::<u64>()) {
            let (mut rng, m) = setup(seed);
            let content = random_formula(&mut rng, &FormulaShape::new(3, &ATOMS, &AGENTS).static_only());
            let g = random_threshold(&mut rng);
            let Ok(update) = update_model(&m, &content, &g) else { return Ok(()) };
            prop_assert_eq!(update.surviving.len() + update.removed.len(), m.states().len());
            for s in &update.surviving {
                prop_assert!(!update.removed.contains(s));
                for p in ATOMS {
                    prop_assert_eq!(update.model.valuation(s, p), m.valuation(s, p));
                }
                for a in AGENTS {
                    for t in &update.surviving {
                        prop_assert_eq!(update.model.accessibility(a, s, t), m.accessibility(a, s, t));
                    }
                }
            }
        }

        #[test]
        fn propositional_announcements_are_idempotent(seed in any::<u64>()) {
            let (mut rng, m) = setup(seed);
            let content = random_formula(&mut rng, &FormulaShape::new(3, &ATOMS, &[]).static_only());
            let g = random_threshold(&mut rng);
            let Ok(once) = update_model(&m, &content, &g) else { return Ok(()) };
            let twice = update_model(&once.model, &content, &g).unwrap();
            prop_assert!(twice.removed.is_empty());
            prop_assert_eq!(twice.model, once.model);
        }

        #[test]
        fn announcement_is_vacuous_where_it_fails(seed in any::<u64>()) {
            let (mut rng, m) = setup(seed);
            let shape = FormulaShape::new(3, &ATOMS, &AGENTS);
            let content = random_formula(&mut rng, &shape.clone().static_only());
            let g = random_threshold(&mut rng);
            let body = random_formula(&mut rng, &shape);
            let pre = evaluate_all(&m, &Formula::geq(content.clone(), g.clone())).unwrap();
            let ann = evaluate_all(&m, &Formula::announce(content, g, body).unwrap()).unwrap();
            for (p, v) in pre.iter().zip(&ann) {
                if p.is_zero() {
                    prop_assert!(v.is_one());
                }
            }
        }
    }
}
