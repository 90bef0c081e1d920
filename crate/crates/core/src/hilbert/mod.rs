//! Hilbert-style derivations: axiom schemata with explicit substitutions,
//! a line-oriented proof script format, the proof checker, and a random
//! search for countermodels.
//!
//! Propositional tautologies are not decided. Instead a small registry of
//! named theorems (see [`SchemaId::THEOREMS`]) may be cited with `theorem`
//! lines, and [`falsify`] gives a sound way to refute a candidate.

mod check;
mod falsify;
mod schema;
mod script;

pub use check::{verify_proof, ProofReport, ProofViolation};
pub use falsify::{falsify, Counterexample};
pub use schema::{instantiate_schema, Binding, MetaKind, SchemaError, SchemaId, Substitution};
pub use script::{parse_proof, Justification, LineIndex, ProofLine, ProofScript, ScriptError};

#[cfg(test)]
mod validity;
