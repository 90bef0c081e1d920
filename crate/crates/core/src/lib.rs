//! Exact model checking and proof checking for a dynamic doxastic
//! Łukasiewicz logic.
//!
//! Formulas are evaluated on finite fuzzy Kripke models with exact rational
//! truth values. Public announcements of threshold claims restrict a model to
//! the states where the claim holds; [`translation`] rewrites them away, and
//! [`hilbert`] checks derivations in the accompanying axiom systems.
//!
//! ```
//! use doxa::{assets, model::parse_model, semantics::evaluate, syntax::parse_formula};
//!
//! let m = parse_model(assets::MUDDY_I).unwrap();
//! let v = evaluate(&m, "s3", &parse_formula("B[c] mc").unwrap()).unwrap();
//! assert_eq!(v.to_string(), "1/5");
//! ```

pub mod assets;
pub mod hilbert;
pub mod model;
pub mod random;
pub mod semantics;
pub mod syntax;
pub mod translation;
pub mod truth;

pub use model::Model;
pub use syntax::Formula;
pub use truth::{Threshold, TruthValue};
