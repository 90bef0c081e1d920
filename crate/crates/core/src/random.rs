//! Seeded generators for models, formulas and schema substitutions.
//!
//! Every generator draws from a caller-supplied RNG, so a fixed seed gives a
//! fixed stream. Values are rationals with denominators up to
//! [`MAX_DENOMINATOR`], with 0 and 1 over-represented because the threshold
//! operator is most sensitive at the boundaries.

use rand::seq::SliceRandom;
use rand::Rng;

use crate::hilbert::{Binding, MetaKind, SchemaId, Substitution};
use crate::model::Model;
use crate::syntax::Formula;
use crate::truth::{Threshold, TruthValue};

pub const MAX_STATES: usize = 6;
pub const MAX_DENOMINATOR: i64 = 20;

/// Which models a generator may produce.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ModelClass {
    #[default]
    All,
    /// Every state is fully related to itself for every agent.
    Serial,
}

pub fn random_value<R: Rng + ?Sized>(rng: &mut R) -> TruthValue {
    match rng.gen_range(0..8) {
        0 => TruthValue::zero(),
        1 => TruthValue::one(),
        _ => {
            let den = rng.gen_range(1..=MAX_DENOMINATOR);
            TruthValue::ratio(rng.gen_range(0..=den), den)
        }
    }
}

pub fn random_threshold<R: Rng + ?Sized>(rng: &mut R) -> Threshold {
    random_value(rng).into()
}

/// A model over the given signature with 1 to [`MAX_STATES`] states named
/// `s1`, `s2`, ... Relations are sparse: about half the pairs are unrelated.
pub fn random_model<R: Rng + ?Sized>(
    rng: &mut R,
    agents: &[&str],
    atoms: &[&str],
    class: ModelClass,
) -> Model {
    let n = rng.gen_range(1..=MAX_STATES);
    let states: Vec<String> = (1..=n).map(|i| format!("s{i}")).collect();
    let rel = agents
        .iter()
        .map(|_| {
            (0..n)
                .map(|s| {
                    (0..n)
                        .map(|t| match class {
                            ModelClass::Serial if s == t => TruthValue::one(),
                            _ if rng.gen_bool(0.5) => TruthValue::zero(),
                            _ => random_value(rng),
                        })
                        .collect()
                })
                .collect()
        })
        .collect();
    let val = (0..n)
        .map(|_| atoms.iter().map(|_| random_value(rng)).collect())
        .collect();
    Model::from_tables(
        states,
        agents.iter().map(|a| a.to_string()).collect(),
        atoms.iter().map(|p| p.to_string()).collect(),
        rel,
        val,
    )
    .expect("generated tables are well formed")
}

/// Shape parameters for [`random_formula`].
#[derive(Debug, Clone)]
pub struct FormulaShape<'a> {
    pub depth: usize,
    pub atoms: &'a [&'a str],
    pub agents: &'a [&'a str],
    pub announcements: bool,
}

impl<'a> FormulaShape<'a> {
    pub fn new(depth: usize, atoms: &'a [&'a str], agents: &'a [&'a str]) -> Self {
        Self {
            depth,
            atoms,
            agents,
            announcements: true,
        }
    }

    pub fn static_only(self) -> Self {
        Self {
            announcements: false,
            ..self
        }
    }

    fn shallower(&self, by: usize) -> Self {
        Self {
            depth: self.depth.saturating_sub(by),
            ..self.clone()
        }
    }
}

/// A formula of depth at most `shape.depth`, where a leaf has depth 1. Announced contents are always
/// announcement-free.
pub fn random_formula<R: Rng + ?Sized>(rng: &mut R, shape: &FormulaShape<'_>) -> Formula {
    let leaf = |rng: &mut R| {
        if rng.gen_bool(0.1) {
            Formula::Bottom
        } else {
            Formula::atom(*shape.atoms.choose(rng).expect("at least one atom"))
        }
    };
    if shape.depth <= 1 || rng.gen_bool(0.2) {
        return leaf(rng);
    }
    let sub = shape.shallower(1);
    let kinds = if shape.announcements { 7 } else { 6 };
    match rng.gen_range(0..kinds) {
        0 => Formula::not(random_formula(rng, &sub)),
        1 => Formula::geq(random_formula(rng, &sub), random_threshold(rng)),
        2 => Formula::conj(random_formula(rng, &sub), random_formula(rng, &sub)),
        3 => Formula::implies(random_formula(rng, &sub), random_formula(rng, &sub)),
        4 if !shape.agents.is_empty() => Formula::believes(
            *shape.agents.choose(rng).expect("nonempty"),
            random_formula(rng, &sub),
        ),
        4 | 5 => leaf(rng),
        _ => {
            let content = random_formula(rng, &shape.shallower(2).static_only());
            Formula::announce(content, random_threshold(rng), random_formula(rng, &sub))
                .expect("content is announcement-free")
        }
    }
}

/// Bindings for every metavariable of `id`. Formula slots get formulas of
/// depth at most `shape.depth`; announced contents are kept static, and the
/// side condition of LG1 is met by ordering the thresholds.
pub fn random_substitution<R: Rng + ?Sized>(
    rng: &mut R,
    id: SchemaId,
    shape: &FormulaShape<'_>,
) -> Substitution {
    let mut subst = Substitution::new();
    for &(name, kind) in id.metavariables() {
        subst = match kind {
            MetaKind::Formula if name == "phi" && !id.is_static() => {
                subst.formula(name, random_formula(rng, &shape.clone().static_only()))
            }
            MetaKind::Formula => subst.formula(name, random_formula(rng, shape)),
            MetaKind::Atom => subst.formula(
                name,
                Formula::atom(*shape.atoms.choose(rng).expect("at least one atom")),
            ),
            MetaKind::Agent => {
                subst.agent(name, shape.agents.choose(rng).expect("at least one agent"))
            }
            MetaKind::Threshold => subst.threshold(name, random_threshold(rng)),
        };
    }
    if let (Some(Binding::Threshold(g)), Some(Binding::Threshold(g2))) =
        (subst.0.get("g").cloned(), subst.0.get("g''").cloned())
    {
        if g < g2 {
            subst = subst.threshold("g", g2).threshold("g''", g);
        }
    }
    subst
}
