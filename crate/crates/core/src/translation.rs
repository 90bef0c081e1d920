//! Announcement elimination and the complexity measure that bounds it.
//!
//! `translate` pushes announcements inward with the reduction equivalences
//! until none is left. Implication is rewritten as `~(a & ~b)` throughout.
//! Besides the usual clauses, announcements over `bot`, over a threshold
//! formula and over another announcement are handled; each of these is
//! checked against the evaluator in the test suites.

use std::fmt;

use crate::syntax::Formula;
use crate::truth::Threshold;

/// Value of the complexity measure; always at least 1.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Complexity(pub u128);

impl fmt::Display for Complexity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn complexity(f: &Formula) -> Complexity {
    Complexity(measure(f))
}

fn measure(f: &Formula) -> u128 {
    match f {
        Formula::Bottom | Formula::Atom(_) => 1,
        Formula::Not(g) | Formula::Geq(g, _) | Formula::Believes(_, g) => 1 + measure(g),
        Formula::Conj(a, b) => 1 + measure(a).max(measure(b)),
        Formula::Impl(a, b) => 3 + measure(a).max(measure(b)),
        Formula::Announce(content, _, body) => (5 + measure(content)) * measure(body),
    }
}

/// Which reduction removed (or pushed inward) an announcement.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Reduction {
    /// `[c>=g]p` becomes `(c>=g) -> p`
    Atom,
    /// `[c>=g]~x` becomes `(c>=g) -> ~[c>=g]x`
    Not,
    /// `[c>=g](x & y)` becomes `[c>=g]x & [c>=g]y`
    Conj,
    /// `[c>=g](x -> y)` becomes `[c>=g]~(x & ~y)`
    Impl,
    /// `[c>=g]B_a x` becomes `(c>=g) -> B_a [c>=g]x`
    Believes,
    /// `[c>=g]bot` becomes `(c>=g) -> bot`
    Bottom,
    /// `[c>=g](x>=h)` becomes `(c>=g) -> ([c>=g]x >= h)`
    Geq,
    /// `[c>=g][d>=h]x` becomes `[c>=g] t([d>=h]x)`
    Nested,
}

impl Reduction {
    /// The complexity-lemma item this reduction corresponds to, if any.
    pub fn lemma_item(self) -> Option<u8> {
        match self {
            Reduction::Atom => Some(2),
            Reduction::Not => Some(3),
            Reduction::Conj => Some(4),
            Reduction::Impl => Some(5),
            Reduction::Believes => Some(6),
            Reduction::Bottom | Reduction::Geq | Reduction::Nested => None,
        }
    }
}

/// One announcement-eliminating rewrite performed by [`translate_traced`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Elimination {
    pub reduction: Reduction,
    pub before: Formula,
    pub after: Formula,
    pub before_complexity: Complexity,
    pub after_complexity: Complexity,
}

/// Rewrites `f` into an equivalent announcement-free formula.
pub fn translate(f: &Formula) -> Formula {
    Translator { log: None }.run(f)
}

/// Like [`translate`], also returning every announcement rewrite in the order
/// it was applied.
pub fn translate_traced(f: &Formula) -> (Formula, Vec<Elimination>) {
    let mut log = Vec::new();
    let out = Translator {
        log: Some(&mut log),
    }
    .run(f);
    (out, log)
}

struct Translator<'a> {
    log: Option<&'a mut Vec<Elimination>>,
}

fn announce(content: &Formula, g: &Threshold, body: Formula) -> Formula {
    Formula::Announce(Box::new(content.clone()), g.clone(), Box::new(body))
}

impl Translator<'_> {
    fn run(&mut self, f: &Formula) -> Formula {
        match f {
            Formula::Bottom | Formula::Atom(_) => f.clone(),
            Formula::Not(g) => Formula::not(self.run(g)),
            Formula::Geq(g, t) => Formula::geq(self.run(g), t.clone()),
            Formula::Conj(a, b) => Formula::conj(self.run(a), self.run(b)),
            Formula::Impl(a, b) => {
                let rewritten =
                    Formula::not(Formula::conj((**a).clone(), Formula::not((**b).clone())));
                self.run(&rewritten)
            }
            Formula::Believes(agent, g) => Formula::Believes(agent.clone(), Box::new(self.run(g))),
            Formula::Announce(content, g, body) => {
                let precondition = || Formula::geq((**content).clone(), g.clone());
                let (reduction, next) = match &**body {
                    Formula::Atom(_) => (
                        Reduction::Atom,
                        Formula::implies(precondition(), (**body).clone()),
                    ),
                    Formula::Bottom => (
                        Reduction::Bottom,
                        Formula::implies(precondition(), Formula::Bottom),
                    ),
                    Formula::Not(x) => (
                        Reduction::Not,
                        Formula::implies(
                            precondition(),
                            Formula::not(announce(content, g, (**x).clone())),
                        ),
                    ),
                    Formula::Conj(x, y) => (
                        Reduction::Conj,
                        Formula::conj(
                            announce(content, g, (**x).clone()),
                            announce(content, g, (**y).clone()),
                        ),
                    ),
                    Formula::Impl(x, y) => (
                        Reduction::Impl,
                        announce(
                            content,
                            g,
                            Formula::not(Formula::conj((**x).clone(), Formula::not((**y).clone()))),
                        ),
                    ),
                    Formula::Believes(agent, x) => (
                        Reduction::Believes,
                        Formula::implies(
                            precondition(),
                            Formula::Believes(
                                agent.clone(),
                                Box::new(announce(content, g, (**x).clone())),
                            ),
                        ),
                    ),
                    Formula::Geq(x, h) => (
                        Reduction::Geq,
                        Formula::implies(
                            precondition(),
                            Formula::geq(announce(content, g, (**x).clone()), h.clone()),
                        ),
                    ),
                    Formula::Announce(..) => {
                        // innermost first: the body becomes announcement-free
                        let inner = self.run(body);
                        (Reduction::Nested, announce(content, g, inner))
                    }
                };
                if let Some(log) = self.log.as_deref_mut() {
                    log.push(Elimination {
                        reduction,
                        before_complexity: complexity(f),
                        after_complexity: complexity(&next),
                        before: f.clone(),
                        after: next.clone(),
                    });
                }
                self.run(&next)
            }
        }
    }
}

/// One failed instance of the complexity lemma.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaViolation {
    pub item: u8,
    pub formula: Formula,
    pub lhs: Complexity,
    pub rhs: Complexity,
}

impl fmt::Display for LemmaViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let relation = if self.item == 1 { ">=" } else { ">" };
        write!(
            f,
            "item {} fails at `{}`: {} {relation} {} does not hold",
            self.item, self.formula, self.lhs, self.rhs
        )
    }
}

/// Checks every instance of the six complexity inequalities inside `f`:
/// subformula monotonicity at every node, and the strict decrease of each
/// reduction shape at every announcement whose body has that shape.
pub fn check_complexity_lemma(f: &Formula) -> Vec<LemmaViolation> {
    let mut out = Vec::new();
    for node in f.subformulas() {
        let c = complexity(node);
        for child in node.children() {
            let cc = complexity(child);
            if c < cc {
                out.push(LemmaViolation {
                    item: 1,
                    formula: node.clone(),
                    lhs: c,
                    rhs: cc,
                });
            }
        }
        let Formula::Announce(content, g, body) = node else {
            continue;
        };
        let pre = || Formula::geq((**content).clone(), g.clone());
        let shape = match &**body {
            Formula::Atom(_) => Some((2, Formula::implies(pre(), (**body).clone()))),
            Formula::Not(x) => Some((
                3,
                Formula::implies(pre(), Formula::not(announce(content, g, (**x).clone()))),
            )),
            Formula::Conj(x, y) => Some((
                4,
                Formula::conj(
                    announce(content, g, (**x).clone()),
                    announce(content, g, (**y).clone()),
                ),
            )),
            Formula::Impl(x, y) => Some((
                5,
                announce(
                    content,
                    g,
                    Formula::not(Formula::conj((**x).clone(), Formula::not((**y).clone()))),
                ),
            )),
            Formula::Believes(a, x) => Some((
                6,
                Formula::implies(
                    pre(),
                    Formula::Believes(a.clone(), Box::new(announce(content, g, (**x).clone()))),
                ),
            )),
            _ => None,
        };
        if let Some((item, rhs)) = shape {
            let rhs = complexity(&rhs);
            if c <= rhs {
                out.push(LemmaViolation {
                    item,
                    formula: node.clone(),
                    lhs: c,
                    rhs,
                });
            }
        }
    }
    out
}
