//! Text syntax for formulas.
//!
//! ```text
//! formula  := implies
//! implies  := conj ( "->" implies )? | conj "<->" conj
//! conj     := unary ( ("&" | "|" | "^" | "(+)") unary )*
//! unary    := "~" unary | "B" "[" ident "]" unary
//!           | "[" formula ">=" rational "]" unary | atom
//! atom     := "bot" | ident | "(" formula ")" | "(" formula ">=" rational ")"
//! rational := int "/" int | decimal | int
//! ```
//!
//! The binary operators of one level may not be mixed without parentheses.

mod formula;
mod parse;
mod print;

use thiserror::Error;

use crate::truth::ValueError;

pub use formula::{is_atom_name, is_identifier, Formula, FormulaMetrics, Subformulas};
pub use parse::{parse_formula, parse_threshold_claim};
pub use print::print_formula;

pub fn is_announcement_free(f: &Formula) -> bool {
    f.is_announcement_free()
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}")]
pub struct SyntaxError {
    pub line: usize,
    pub column: usize,
    pub kind: SyntaxErrorKind,
}

impl SyntaxError {
    pub fn new(line: usize, column: usize, kind: SyntaxErrorKind) -> Self {
        Self { line, column, kind }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SyntaxErrorKind {
    #[error("unexpected character `{0}`")]
    UnexpectedChar(char),
    #[error("expected {expected}, found `{found}`")]
    UnexpectedToken {
        expected: &'static str,
        found: String,
    },
    #[error("expected {expected}, found end of input")]
    UnexpectedEnd { expected: &'static str },
    #[error("bad threshold: {0}")]
    Threshold(#[from] ValueError),
    #[error("`{0}` and `{1}` mixed without parentheses")]
    MixedOperators(&'static str, &'static str),
    #[error("`<->` is not associative; add parentheses")]
    NonAssociative,
    #[error("announcement content must be announcement-free")]
    NestedAnnouncementContent,
}
