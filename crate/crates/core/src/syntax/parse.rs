use crate::truth::{parse_rational, Threshold};

use super::{Formula, SyntaxError, SyntaxErrorKind};

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Number(String),
    Tilde,
    Amp,
    Pipe,
    Caret,
    OPlus,
    Arrow,
    Iff,
    Geq,
    LParen,
    RParen,
    LBracket,
    RBracket,
}

impl Tok {
    fn text(&self) -> String {
        match self {
            Tok::Ident(s) | Tok::Number(s) => s.clone(),
            Tok::Tilde => "~".into(),
            Tok::Amp => "&".into(),
            Tok::Pipe => "|".into(),
            Tok::Caret => "^".into(),
            Tok::OPlus => "(+)".into(),
            Tok::Arrow => "->".into(),
            Tok::Iff => "<->".into(),
            Tok::Geq => ">=".into(),
            Tok::LParen => "(".into(),
            Tok::RParen => ")".into(),
            Tok::LBracket => "[".into(),
            Tok::RBracket => "]".into(),
        }
    }
}

#[derive(Debug, Clone)]
struct Spanned {
    tok: Tok,
    line: usize,
    column: usize,
}

fn lex(text: &str) -> Result<Vec<Spanned>, SyntaxError> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut column) = (0, 1, 1);
    while i < chars.len() {
        let c = chars[i];
        let start = (line, column);
        let rest = &chars[i..];
        let starts_with =
            |s: &str| rest.len() >= s.len() && s.chars().zip(rest).all(|(a, b)| a == *b);
        let (tok, len) = if c == '\n' {
            i += 1;
            line += 1;
            column = 1;
            continue;
        } else if c.is_whitespace() {
            i += 1;
            column += 1;
            continue;
        } else if starts_with("(+)") {
            (Tok::OPlus, 3)
        } else if starts_with("<->") {
            (Tok::Iff, 3)
        } else if starts_with("->") {
            (Tok::Arrow, 2)
        } else if starts_with(">=") {
            (Tok::Geq, 2)
        } else if c.is_ascii_alphabetic() || c == '_' {
            let len = rest
                .iter()
                .take_while(|c| c.is_ascii_alphanumeric() || **c == '_')
                .count();
            (Tok::Ident(rest[..len].iter().collect()), len)
        } else if c.is_ascii_digit() || c == '.' {
            // digits, optionally followed by `.digits` or `/digits`
            let mut len = rest.iter().take_while(|c| c.is_ascii_digit()).count();
            if len < rest.len() && (rest[len] == '.' || rest[len] == '/') {
                let tail = rest[len + 1..]
                    .iter()
                    .take_while(|c| c.is_ascii_digit())
                    .count();
                len += 1 + tail;
            }
            (Tok::Number(rest[..len].iter().collect()), len)
        } else {
            let tok = match c {
                '~' => Tok::Tilde,
                '&' => Tok::Amp,
                '|' => Tok::Pipe,
                '^' => Tok::Caret,
                '(' => Tok::LParen,
                ')' => Tok::RParen,
                '[' => Tok::LBracket,
                ']' => Tok::RBracket,
                other => {
                    return Err(SyntaxError::new(
                        line,
                        column,
                        SyntaxErrorKind::UnexpectedChar(other),
                    ))
                }
            };
            (tok, 1)
        };
        out.push(Spanned {
            tok,
            line: start.0,
            column: start.1,
        });
        i += len;
        column += len;
    }
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ConjOp {
    Strong,
    Or,
    And,
    SDisj,
}

impl ConjOp {
    fn of(tok: &Tok) -> Option<Self> {
        match tok {
            Tok::Amp => Some(ConjOp::Strong),
            Tok::Pipe => Some(ConjOp::Or),
            Tok::Caret => Some(ConjOp::And),
            Tok::OPlus => Some(ConjOp::SDisj),
            _ => None,
        }
    }

    fn symbol(self) -> &'static str {
        match self {
            ConjOp::Strong => "&",
            ConjOp::Or => "|",
            ConjOp::And => "^",
            ConjOp::SDisj => "(+)",
        }
    }

    fn build(self, a: Formula, b: Formula) -> Formula {
        match self {
            ConjOp::Strong => Formula::conj(a, b),
            ConjOp::Or => Formula::or(a, b),
            ConjOp::And => Formula::and(a, b),
            ConjOp::SDisj => Formula::sdisj(a, b),
        }
    }
}

struct Parser {
    toks: Vec<Spanned>,
    pos: usize,
    end: (usize, usize),
}

impl Parser {
    fn new(text: &str) -> Result<Self, SyntaxError> {
        let toks = lex(text)?;
        let lines = text.split('\n').count();
        let last = text.rsplit('\n').next().unwrap_or("").chars().count();
        Ok(Self {
            toks,
            pos: 0,
            end: (lines, last + 1),
        })
    }

    fn peek(&self) -> Option<&Tok> {
        self.toks.get(self.pos).map(|s| &s.tok)
    }

    fn peek_at(&self, offset: usize) -> Option<&Tok> {
        self.toks.get(self.pos + offset).map(|s| &s.tok)
    }

    fn here(&self) -> (usize, usize) {
        self.toks
            .get(self.pos)
            .map_or(self.end, |s| (s.line, s.column))
    }

    fn error(&self, kind: SyntaxErrorKind) -> SyntaxError {
        let (line, column) = self.here();
        SyntaxError::new(line, column, kind)
    }

    fn unexpected(&self, expected: &'static str) -> SyntaxError {
        match self.peek() {
            Some(tok) => self.error(SyntaxErrorKind::UnexpectedToken {
                expected,
                found: tok.text(),
            }),
            None => self.error(SyntaxErrorKind::UnexpectedEnd { expected }),
        }
    }

    fn expect(&mut self, tok: Tok, expected: &'static str) -> Result<(), SyntaxError> {
        if self.peek() == Some(&tok) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.unexpected(expected))
        }
    }

    fn finish(&self) -> Result<(), SyntaxError> {
        match self.peek() {
            None => Ok(()),
            Some(_) => Err(self.unexpected("end of input")),
        }
    }

    fn formula(&mut self) -> Result<Formula, SyntaxError> {
        let mut operands = vec![self.conj()?];
        let mut iff = None;
        while let Some(tok @ (Tok::Arrow | Tok::Iff)) = self.peek() {
            let is_iff = *tok == Tok::Iff;
            match iff {
                None => iff = Some(is_iff),
                Some(prev) if prev != is_iff => {
                    return Err(self.error(SyntaxErrorKind::MixedOperators("->", "<->")));
                }
                Some(true) => return Err(self.error(SyntaxErrorKind::NonAssociative)),
                Some(false) => {}
            }
            self.pos += 1;
            operands.push(self.conj()?);
        }
        if iff == Some(true) {
            let b = operands.pop().expect("two operands");
            let a = operands.pop().expect("two operands");
            return Ok(Formula::iff(a, b));
        }
        let mut acc = operands.pop().expect("at least one operand");
        while let Some(lhs) = operands.pop() {
            acc = Formula::implies(lhs, acc);
        }
        Ok(acc)
    }

    fn conj(&mut self) -> Result<Formula, SyntaxError> {
        let mut acc = self.unary()?;
        let mut chain: Option<ConjOp> = None;
        while let Some(op) = self.peek().and_then(ConjOp::of) {
            match chain {
                Some(prev) if prev != op => {
                    return Err(
                        self.error(SyntaxErrorKind::MixedOperators(prev.symbol(), op.symbol()))
                    );
                }
                _ => chain = Some(op),
            }
            self.pos += 1;
            let rhs = self.unary()?;
            acc = op.build(acc, rhs);
        }
        Ok(acc)
    }

    fn unary(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek() {
            Some(Tok::Tilde) => {
                self.pos += 1;
                Ok(Formula::not(self.unary()?))
            }
            Some(Tok::Ident(name)) if name == "B" && self.peek_at(1) == Some(&Tok::LBracket) => {
                self.pos += 2;
                let agent = self.ident("agent name")?;
                self.expect(Tok::RBracket, "`]`")?;
                Ok(Formula::believes(agent, self.unary()?))
            }
            Some(Tok::LBracket) => {
                let open = self.here();
                self.pos += 1;
                let content = self.formula()?;
                self.expect(Tok::Geq, "`>=`")?;
                let g = self.threshold()?;
                self.expect(Tok::RBracket, "`]`")?;
                let body = self.unary()?;
                Formula::announce(content, g, body).map_err(|mut e| {
                    (e.line, e.column) = open;
                    e
                })
            }
            _ => self.atom(),
        }
    }

    fn atom(&mut self) -> Result<Formula, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(if name == "bot" {
                    Formula::Bottom
                } else {
                    Formula::Atom(name)
                })
            }
            Some(Tok::LParen) => {
                self.pos += 1;
                let inner = self.formula()?;
                if self.peek() == Some(&Tok::Geq) {
                    self.pos += 1;
                    let g = self.threshold()?;
                    self.expect(Tok::RParen, "`)`")?;
                    Ok(Formula::geq(inner, g))
                } else {
                    self.expect(Tok::RParen, "`)` or `>=`")?;
                    Ok(inner)
                }
            }
            _ => Err(self.unexpected("a formula")),
        }
    }

    fn ident(&mut self, expected: &'static str) -> Result<String, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Ident(name)) => {
                self.pos += 1;
                Ok(name)
            }
            _ => Err(self.unexpected(expected)),
        }
    }

    fn threshold(&mut self) -> Result<Threshold, SyntaxError> {
        match self.peek().cloned() {
            Some(Tok::Number(text)) => {
                let value = parse_rational(&text)
                    .and_then(Threshold::new)
                    .map_err(|e| self.error(SyntaxErrorKind::Threshold(e)))?;
                self.pos += 1;
                Ok(value)
            }
            _ => Err(self.unexpected("a rational threshold")),
        }
    }
}

pub fn parse_formula(text: &str) -> Result<Formula, SyntaxError> {
    let mut parser = Parser::new(text)?;
    let f = parser.formula()?;
    parser.finish()?;
    Ok(f)
}

/// Parses `formula >= rational`, the form used for announcements typed at a
/// prompt.
pub fn parse_threshold_claim(text: &str) -> Result<(Formula, Threshold), SyntaxError> {
    let mut parser = Parser::new(text)?;
    let f = parser.formula()?;
    parser.expect(Tok::Geq, "`>=`")?;
    let g = parser.threshold()?;
    parser.finish()?;
    Ok((f, g))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn atom(p: &str) -> Formula {
        Formula::atom(p)
    }

    #[test]
    fn bottom_literal() {
        assert_eq!(parse_formula("bot").unwrap(), Formula::Bottom);
    }

    #[test]
    fn muddy_children_announcement() {
        let f = parse_formula("[~(~ma & ~mb & ~mc) >= 4/5] B[c] mc").unwrap();
        let content = Formula::not(Formula::conj(
            Formula::conj(Formula::not(atom("ma")), Formula::not(atom("mb"))),
            Formula::not(atom("mc")),
        ));
        let expected = Formula::announce(
            content,
            Threshold::ratio(4, 5),
            Formula::believes("c", atom("mc")),
        )
        .unwrap();
        assert_eq!(f, expected);
    }

    #[test]
    fn decimal_threshold_is_exact() {
        // 0.95 = 95/100 = 19/20
        assert_eq!(
            parse_formula("(p >= 0.95)").unwrap(),
            Formula::geq(atom("p"), Threshold::ratio(19, 20))
        );
    }

    #[test]
    fn implication_is_right_associative_and_loosest() {
        let f = parse_formula("p & q -> r -> s").unwrap();
        let expected = Formula::implies(
            Formula::conj(atom("p"), atom("q")),
            Formula::implies(atom("r"), atom("s")),
        );
        assert_eq!(f, expected);
    }

    #[test]
    fn derived_connectives_desugar() {
        let (p, q) = (atom("p"), atom("q"));
        assert_eq!(
            parse_formula("p | q").unwrap(),
            Formula::or(p.clone(), q.clone())
        );
        assert_eq!(
            parse_formula("p ^ q").unwrap(),
            Formula::and(p.clone(), q.clone())
        );
        assert_eq!(
            parse_formula("p (+) q").unwrap(),
            Formula::sdisj(p.clone(), q.clone())
        );
        assert_eq!(parse_formula("p <-> q").unwrap(), Formula::iff(p, q));
    }

    #[test]
    fn belief_binds_like_negation() {
        let f = parse_formula("B[a] p & q").unwrap();
        assert_eq!(
            f,
            Formula::conj(Formula::believes("a", atom("p")), atom("q"))
        );
        // an atom may be called B when no bracket follows
        assert_eq!(
            parse_formula("B & q").unwrap(),
            Formula::conj(atom("B"), atom("q"))
        );
    }

    #[test]
    fn mixing_operators_is_rejected() {
        let err = parse_formula("p & q | r").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::MixedOperators("&", "|"));
        assert_eq!((err.line, err.column), (1, 7));
        assert!(parse_formula("(p & q) | r").is_ok());
        assert_eq!(
            parse_formula("p -> q <-> r").unwrap_err().kind,
            SyntaxErrorKind::MixedOperators("->", "<->")
        );
        assert_eq!(
            parse_formula("p <-> q <-> r").unwrap_err().kind,
            SyntaxErrorKind::NonAssociative
        );
    }

    #[test]
    fn errors_carry_positions() {
        let err = parse_formula("p &\n  (q >= 3/2)").unwrap_err();
        assert!(matches!(err.kind, SyntaxErrorKind::Threshold(_)));
        assert_eq!((err.line, err.column), (2, 9));

        let err = parse_formula("p & ").unwrap_err();
        assert_eq!(
            err.kind,
            SyntaxErrorKind::UnexpectedEnd {
                expected: "a formula"
            }
        );

        let err = parse_formula("p $ q").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::UnexpectedChar('$'));
        assert_eq!(err.column, 3);

        assert!(parse_formula("p q").is_err());
        assert!(parse_formula("(p >= 1/0)").is_err());
        assert!(parse_formula("[p >= 1/2]").is_err());
    }

    #[test]
    fn announcement_content_must_be_static() {
        let err = parse_formula("[[p >= 1] q >= 1/2] r").unwrap_err();
        assert_eq!(err.kind, SyntaxErrorKind::NestedAnnouncementContent);
        assert_eq!((err.line, err.column), (1, 1));
        // announcements may nest in body position
        assert!(parse_formula("[p >= 1/2] [q >= 1] r").is_ok());
    }

    #[test]
    fn threshold_claims() {
        let (f, g) = parse_threshold_claim("~(~ma & ~mb & ~mc) >= 0.8").unwrap();
        assert_eq!(g, Threshold::ratio(4, 5));
        assert!(matches!(f, Formula::Not(_)));
        assert!(parse_threshold_claim("p").is_err());
    }
}
