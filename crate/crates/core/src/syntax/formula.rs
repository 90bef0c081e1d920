use std::collections::BTreeSet;
use std::fmt;

use crate::truth::Threshold;

use super::{print::print_formula, SyntaxError, SyntaxErrorKind};

/// A formula of the dynamic doxastic language.
///
/// Only the primitive connectives appear here; `|`, `^`, `(+)` and `<->` are
/// desugared by the parser and by the helper constructors below.
///
/// The content of an [`Formula::Announce`] must be announcement-free. The
/// variants are public for pattern matching; build announcements through
/// [`Formula::announce`] to have that checked.
#[derive(Clone, PartialEq, Eq, Hash)]
pub enum Formula {
    Bottom,
    Atom(String),
    Not(Box<Formula>),
    Geq(Box<Formula>, Threshold),
    Conj(Box<Formula>, Box<Formula>),
    Impl(Box<Formula>, Box<Formula>),
    Believes(String, Box<Formula>),
    Announce(Box<Formula>, Threshold, Box<Formula>),
}

/// Size figures for a formula.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FormulaMetrics {
    pub node_count: usize,
    pub announcement_count: usize,
}

pub fn is_identifier(name: &str) -> bool {
    let mut bytes = name.bytes();
    match bytes.next() {
        Some(b) if b.is_ascii_alphabetic() || b == b'_' => {}
        _ => return false,
    }
    bytes.all(|b| b.is_ascii_alphanumeric() || b == b'_')
}

/// Identifiers usable as atoms: `bot` is reserved.
pub fn is_atom_name(name: &str) -> bool {
    is_identifier(name) && name != "bot"
}

impl Formula {
    /// # Panics
    /// If `name` is not a valid atom identifier.
    pub fn atom(name: impl Into<String>) -> Self {
        let name = name.into();
        assert!(is_atom_name(&name), "invalid atom name `{name}`");
        Formula::Atom(name)
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn geq(f: Formula, g: Threshold) -> Self {
        Formula::Geq(Box::new(f), g)
    }

    pub fn conj(a: Formula, b: Formula) -> Self {
        Formula::Conj(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Impl(Box::new(a), Box::new(b))
    }

    /// # Panics
    /// If `agent` is not a valid identifier.
    pub fn believes(agent: impl Into<String>, f: Formula) -> Self {
        let agent = agent.into();
        assert!(is_identifier(&agent), "invalid agent name `{agent}`");
        Formula::Believes(agent, Box::new(f))
    }

    pub fn announce(content: Formula, g: Threshold, body: Formula) -> Result<Self, SyntaxError> {
        if !content.is_announcement_free() {
            return Err(SyntaxError::new(
                1,
                1,
                SyntaxErrorKind::NestedAnnouncementContent,
            ));
        }
        Ok(Formula::Announce(Box::new(content), g, Box::new(body)))
    }

    /// `(a -> b) -> b`, the max of both values.
    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::implies(Formula::implies(a, b.clone()), b)
    }

    /// `~(~a | ~b)`, the min of both values.
    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::or(Formula::not(a), Formula::not(b)))
    }

    /// `~(~a & ~b)`, the strong disjunction.
    pub fn sdisj(a: Formula, b: Formula) -> Self {
        Formula::not(Formula::conj(Formula::not(a), Formula::not(b)))
    }

    /// `(a -> b) & (b -> a)`
    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::conj(
            Formula::implies(a.clone(), b.clone()),
            Formula::implies(b, a),
        )
    }

    /// Immediate subformulas, announcement content before body.
    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::Bottom | Formula::Atom(_) => vec![],
            Formula::Not(f) | Formula::Geq(f, _) | Formula::Believes(_, f) => vec![f],
            Formula::Conj(a, b) | Formula::Impl(a, b) | Formula::Announce(a, _, b) => vec![a, b],
        }
    }

    /// Preorder walk over every subformula occurrence, `self` included.
    pub fn subformulas(&self) -> Subformulas<'_> {
        Subformulas { stack: vec![self] }
    }

    pub fn is_announcement_free(&self) -> bool {
        !self
            .subformulas()
            .any(|f| matches!(f, Formula::Announce(..)))
    }

    pub fn metrics(&self) -> FormulaMetrics {
        let mut metrics = FormulaMetrics {
            node_count: 0,
            announcement_count: 0,
        };
        for f in self.subformulas() {
            metrics.node_count += 1;
            if matches!(f, Formula::Announce(..)) {
                metrics.announcement_count += 1;
            }
        }
        metrics
    }

    pub fn depth(&self) -> usize {
        1 + self
            .children()
            .into_iter()
            .map(Formula::depth)
            .max()
            .unwrap_or(0)
    }

    pub fn atoms(&self) -> BTreeSet<&str> {
        self.subformulas()
            .filter_map(|f| match f {
                Formula::Atom(p) => Some(p.as_str()),
                _ => None,
            })
            .collect()
    }

    pub fn agents(&self) -> BTreeSet<&str> {
        self.subformulas()
            .filter_map(|f| match f {
                Formula::Believes(a, _) => Some(a.as_str()),
                _ => None,
            })
            .collect()
    }
}

pub struct Subformulas<'a> {
    stack: Vec<&'a Formula>,
}

impl<'a> Iterator for Subformulas<'a> {
    type Item = &'a Formula;

    fn next(&mut self) -> Option<Self::Item> {
        let f = self.stack.pop()?;
        self.stack.extend(f.children().into_iter().rev());
        Some(f)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&print_formula(self))
    }
}

impl fmt::Debug for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "`{self}`")
    }
}
