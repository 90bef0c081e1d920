use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::syntax::{is_identifier, Formula};
use crate::truth::Threshold;

/// Axiom schemata of the static and dynamic systems, plus the registered
/// propositional theorems that stand in for "all Łukasiewicz tautologies".
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SchemaId {
    A1,
    A2,
    L0,
    L1,
    L2,
    LB1,
    LB2,
    LG0,
    LG1,
    LD1,
    LD2,
    LD3,
    LD4,
    LD5,
    /// `(phi -> psi) -> (~psi -> ~phi)`
    Contraposition,
    /// `phi -> (psi -> phi & psi)`
    Adjunction,
    /// `(phi -> psi) -> ((psi -> chi) -> (phi -> chi))`
    Transitivity,
    /// `(phi -> psi) <-> ~(phi & ~psi)`
    ImplNegConj,
    /// `phi -> phi`
    Identity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MetaKind {
    Formula,
    Atom,
    Agent,
    Threshold,
}

impl fmt::Display for MetaKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MetaKind::Formula => "a formula",
            MetaKind::Atom => "an atom",
            MetaKind::Agent => "an agent",
            MetaKind::Threshold => "a threshold",
        })
    }
}

const PHI: (&str, MetaKind) = ("phi", MetaKind::Formula);
const PSI: (&str, MetaKind) = ("psi", MetaKind::Formula);
const CHI: (&str, MetaKind) = ("chi", MetaKind::Formula);
const ATOM: (&str, MetaKind) = ("p", MetaKind::Atom);
const AGENT: (&str, MetaKind) = ("a", MetaKind::Agent);
const G: (&str, MetaKind) = ("g", MetaKind::Threshold);

impl SchemaId {
    pub const AXIOMS: [SchemaId; 14] = [
        SchemaId::A1,
        SchemaId::A2,
        SchemaId::L0,
        SchemaId::L1,
        SchemaId::L2,
        SchemaId::LB1,
        SchemaId::LB2,
        SchemaId::LG0,
        SchemaId::LG1,
        SchemaId::LD1,
        SchemaId::LD2,
        SchemaId::LD3,
        SchemaId::LD4,
        SchemaId::LD5,
    ];

    pub const THEOREMS: [SchemaId; 5] = [
        SchemaId::Contraposition,
        SchemaId::Adjunction,
        SchemaId::Transitivity,
        SchemaId::ImplNegConj,
        SchemaId::Identity,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SchemaId::A1 => "A1",
            SchemaId::A2 => "A2",
            SchemaId::L0 => "L0",
            SchemaId::L1 => "L1",
            SchemaId::L2 => "L2",
            SchemaId::LB1 => "LB1",
            SchemaId::LB2 => "LB2",
            SchemaId::LG0 => "LG0",
            SchemaId::LG1 => "LG1",
            SchemaId::LD1 => "LD1",
            SchemaId::LD2 => "LD2",
            SchemaId::LD3 => "LD3",
            SchemaId::LD4 => "LD4",
            SchemaId::LD5 => "LD5",
            SchemaId::Contraposition => "contra",
            SchemaId::Adjunction => "adj",
            SchemaId::Transitivity => "trans",
            SchemaId::ImplNegConj => "impl_negconj",
            SchemaId::Identity => "refl",
        }
    }

    pub fn from_name(name: &str) -> Option<Self> {
        Self::AXIOMS
            .into_iter()
            .chain(Self::THEOREMS)
            .find(|id| id.name() == name)
    }

    /// Registered propositional theorems, as opposed to listed axioms.
    pub fn is_registered(self) -> bool {
        Self::THEOREMS.contains(&self)
    }

    /// Schemata over the announcement-free language only.
    pub fn is_static(self) -> bool {
        !matches!(
            self,
            SchemaId::LD1 | SchemaId::LD2 | SchemaId::LD3 | SchemaId::LD4 | SchemaId::LD5
        )
    }

    pub fn metavariables(self) -> &'static [(&'static str, MetaKind)] {
        match self {
            SchemaId::A1 | SchemaId::A2 | SchemaId::L1 => &[PHI, PSI],
            SchemaId::L0 | SchemaId::Identity => &[PHI],
            SchemaId::L2 => &[
                ("phi1", MetaKind::Formula),
                ("psi1", MetaKind::Formula),
                ("phi2", MetaKind::Formula),
                ("psi2", MetaKind::Formula),
            ],
            SchemaId::LB1 => &[AGENT, PHI, PSI],
            SchemaId::LB2 => &[AGENT],
            SchemaId::LG0 => &[PHI, PSI, G],
            SchemaId::LG1 => &[
                PHI,
                PSI,
                G,
                ("g'", MetaKind::Threshold),
                ("g''", MetaKind::Threshold),
            ],
            SchemaId::LD1 => &[PHI, G, ATOM],
            SchemaId::LD2 => &[PHI, G, PSI],
            SchemaId::LD3 | SchemaId::LD4 => &[PHI, G, PSI, CHI],
            SchemaId::LD5 => &[PHI, G, AGENT, PSI],
            SchemaId::Contraposition | SchemaId::Adjunction | SchemaId::ImplNegConj => &[PHI, PSI],
            SchemaId::Transitivity => &[PHI, PSI, CHI],
        }
    }
}

impl fmt::Display for SchemaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Binding {
    Formula(Formula),
    Agent(String),
    Threshold(Threshold),
}

/// Metavariable name to value.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Substitution(pub BTreeMap<String, Binding>);

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn formula(mut self, name: &str, f: Formula) -> Self {
        self.0.insert(name.into(), Binding::Formula(f));
        self
    }

    pub fn agent(mut self, name: &str, agent: &str) -> Self {
        self.0.insert(name.into(), Binding::Agent(agent.into()));
        self
    }

    pub fn threshold(mut self, name: &str, g: Threshold) -> Self {
        self.0.insert(name.into(), Binding::Threshold(g));
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SchemaError {
    #[error("{schema}: no binding for `{name}`")]
    MissingBinding {
        schema: SchemaId,
        name: &'static str,
    },
    #[error("{schema}: `{name}` is not a metavariable of this schema")]
    UnknownMetavariable { schema: SchemaId, name: String },
    #[error("{schema}: `{name}` must be bound to {expected}")]
    WrongKind {
        schema: SchemaId,
        name: String,
        expected: MetaKind,
    },
    #[error("{schema}: side condition {condition} fails")]
    SideCondition {
        schema: SchemaId,
        condition: &'static str,
    },
    #[error("{schema}: announced formula must be announcement-free")]
    DynamicContent { schema: SchemaId },
}

struct Bound<'a> {
    schema: SchemaId,
    subst: &'a Substitution,
}

impl Bound<'_> {
    fn formula(&self, name: &'static str) -> Formula {
        match self.subst.0.get(name) {
            Some(Binding::Formula(f)) => f.clone(),
            _ => unreachable!("kinds checked before building"),
        }
    }

    fn agent(&self, name: &'static str) -> String {
        match self.subst.0.get(name) {
            Some(Binding::Agent(a)) => a.clone(),
            _ => unreachable!("kinds checked before building"),
        }
    }

    fn threshold(&self, name: &'static str) -> Threshold {
        match self.subst.0.get(name) {
            Some(Binding::Threshold(g)) => g.clone(),
            _ => unreachable!("kinds checked before building"),
        }
    }

    fn announce(
        &self,
        content: &Formula,
        g: &Threshold,
        body: Formula,
    ) -> Result<Formula, SchemaError> {
        Formula::announce(content.clone(), g.clone(), body).map_err(|_| {
            SchemaError::DynamicContent {
                schema: self.schema,
            }
        })
    }
}

/// Fills the metavariables of `id` from `subst`.
///
/// Every metavariable must be bound, with a value of the right kind, and no
/// other names may appear.
pub fn instantiate_schema(id: SchemaId, subst: &Substitution) -> Result<Formula, SchemaError> {
    let vars = id.metavariables();
    for name in subst.0.keys() {
        if !vars.iter().any(|(v, _)| v == name) {
            return Err(SchemaError::UnknownMetavariable {
                schema: id,
                name: name.clone(),
            });
        }
    }
    for &(name, kind) in vars {
        let binding = subst
            .0
            .get(name)
            .ok_or(SchemaError::MissingBinding { schema: id, name })?;
        let ok = match (kind, binding) {
            (MetaKind::Formula, Binding::Formula(_))
            | (MetaKind::Threshold, Binding::Threshold(_)) => true,
            (MetaKind::Atom, Binding::Formula(f)) => matches!(f, Formula::Atom(_)),
            (MetaKind::Agent, Binding::Agent(a)) => is_identifier(a),
            _ => false,
        };
        if !ok {
            return Err(SchemaError::WrongKind {
                schema: id,
                name: name.into(),
                expected: kind,
            });
        }
    }

    let b = Bound { schema: id, subst };
    use Formula as F;
    let formula = match id {
        SchemaId::A1 => F::implies(
            F::conj(b.formula("phi"), b.formula("psi")),
            b.formula("phi"),
        ),
        SchemaId::A2 => {
            let (phi, psi) = (b.formula("phi"), b.formula("psi"));
            F::implies(F::conj(phi.clone(), psi.clone()), F::conj(psi, phi))
        }
        SchemaId::L0 => {
            let phi = b.formula("phi");
            F::iff(F::not(F::not(phi.clone())), phi)
        }
        SchemaId::L1 => {
            let (phi, psi) = (b.formula("phi"), b.formula("psi"));
            F::implies(
                F::implies(F::not(phi.clone()), F::not(psi.clone())),
                F::implies(psi, phi),
            )
        }
        SchemaId::L2 => {
            let (phi1, psi1) = (b.formula("phi1"), b.formula("psi1"));
            let (phi2, psi2) = (b.formula("phi2"), b.formula("psi2"));
            F::implies(
                F::conj(
                    F::implies(phi1.clone(), psi1.clone()),
                    F::implies(phi2.clone(), psi2.clone()),
                ),
                F::implies(F::conj(phi1, phi2), F::conj(psi1, psi2)),
            )
        }
        SchemaId::LB1 => {
            let (a, phi, psi) = (b.agent("a"), b.formula("phi"), b.formula("psi"));
            F::implies(
                F::conj(
                    F::believes(&a, phi.clone()),
                    F::believes(&a, F::implies(phi, psi.clone())),
                ),
                F::believes(&a, psi),
            )
        }
        SchemaId::LB2 => F::not(F::believes(b.agent("a"), F::Bottom)),
        SchemaId::LG0 => {
            let (phi, psi, g) = (b.formula("phi"), b.formula("psi"), b.threshold("g"));
            F::implies(
                F::geq(F::conj(phi.clone(), psi.clone()), g.clone()),
                F::conj(F::geq(phi, g.clone()), F::geq(psi, g)),
            )
        }
        SchemaId::LG1 => {
            let (phi, psi) = (b.formula("phi"), b.formula("psi"));
            let (g, g1, g2) = (b.threshold("g"), b.threshold("g'"), b.threshold("g''"));
            if g < g2 {
                return Err(SchemaError::SideCondition {
                    schema: id,
                    condition: "g >= g''",
                });
            }
            F::implies(
                F::conj(F::geq(phi.clone(), g), F::geq(psi.clone(), g1.clone())),
                F::conj(F::geq(phi, g2), F::geq(psi, g1)),
            )
        }
        SchemaId::LD1 => {
            let (phi, g, p) = (b.formula("phi"), b.threshold("g"), b.formula("p"));
            F::iff(
                b.announce(&phi, &g, p.clone())?,
                F::implies(F::geq(phi, g), p),
            )
        }
        SchemaId::LD2 => {
            let (phi, g, psi) = (b.formula("phi"), b.threshold("g"), b.formula("psi"));
            F::iff(
                b.announce(&phi, &g, F::not(psi.clone()))?,
                F::implies(
                    F::geq(phi.clone(), g.clone()),
                    F::not(b.announce(&phi, &g, psi)?),
                ),
            )
        }
        SchemaId::LD3 => {
            let (phi, g) = (b.formula("phi"), b.threshold("g"));
            let (psi, chi) = (b.formula("psi"), b.formula("chi"));
            F::iff(
                b.announce(&phi, &g, F::conj(psi.clone(), chi.clone()))?,
                F::conj(b.announce(&phi, &g, psi)?, b.announce(&phi, &g, chi)?),
            )
        }
        SchemaId::LD4 => {
            let (phi, g) = (b.formula("phi"), b.threshold("g"));
            let (psi, chi) = (b.formula("psi"), b.formula("chi"));
            F::iff(
                b.announce(&phi, &g, F::implies(psi.clone(), chi.clone()))?,
                b.announce(&phi, &g, F::not(F::conj(psi, F::not(chi))))?,
            )
        }
        SchemaId::LD5 => {
            let (phi, g) = (b.formula("phi"), b.threshold("g"));
            let (a, psi) = (b.agent("a"), b.formula("psi"));
            F::iff(
                b.announce(&phi, &g, F::believes(&a, psi.clone()))?,
                F::implies(
                    F::geq(phi.clone(), g.clone()),
                    F::believes(&a, b.announce(&phi, &g, psi)?),
                ),
            )
        }
        SchemaId::Contraposition => {
            let (phi, psi) = (b.formula("phi"), b.formula("psi"));
            F::implies(
                F::implies(phi.clone(), psi.clone()),
                F::implies(F::not(psi), F::not(phi)),
            )
        }
        SchemaId::Adjunction => {
            let (phi, psi) = (b.formula("phi"), b.formula("psi"));
            F::implies(phi.clone(), F::implies(psi.clone(), F::conj(phi, psi)))
        }
        SchemaId::Transitivity => {
            let (phi, psi, chi) = (b.formula("phi"), b.formula("psi"), b.formula("chi"));
            F::implies(
                F::implies(phi.clone(), psi.clone()),
                F::implies(F::implies(psi, chi.clone()), F::implies(phi, chi)),
            )
        }
        SchemaId::ImplNegConj => {
            let (phi, psi) = (b.formula("phi"), b.formula("psi"));
            F::iff(
                F::implies(phi.clone(), psi.clone()),
                F::not(F::conj(phi, F::not(psi))),
            )
        }
        SchemaId::Identity => {
            let phi = b.formula("phi");
            F::implies(phi.clone(), phi)
        }
    };
    Ok(formula)
}
