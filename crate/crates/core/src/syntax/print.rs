use std::fmt::Write;

use super::Formula;

// Binding levels, loosest first.
const IMPLIES: u8 = 0;
const CONJ: u8 = 1;
const UNARY: u8 = 2;

fn level(f: &Formula) -> u8 {
    match f {
        Formula::Impl(..) => IMPLIES,
        Formula::Conj(..) => CONJ,
        _ => UNARY,
    }
}

/// Renders `f` with the fewest parentheses the grammar allows.
pub fn print_formula(f: &Formula) -> String {
    let mut out = String::new();
    write_at(&mut out, f, IMPLIES);
    out
}

fn write_at(out: &mut String, f: &Formula, min_level: u8) {
    if level(f) < min_level {
        out.push('(');
        write_at(out, f, IMPLIES);
        out.push(')');
        return;
    }
    match f {
        Formula::Bottom => out.push_str("bot"),
        Formula::Atom(p) => out.push_str(p),
        Formula::Not(g) => {
            out.push('~');
            write_at(out, g, UNARY);
        }
        Formula::Geq(g, t) => {
            out.push('(');
            write_at(out, g, IMPLIES);
            let _ = write!(out, " >= {t})");
        }
        Formula::Conj(a, b) => {
            write_at(out, a, CONJ);
            out.push_str(" & ");
            write_at(out, b, UNARY);
        }
        Formula::Impl(a, b) => {
            write_at(out, a, CONJ);
            out.push_str(" -> ");
            write_at(out, b, IMPLIES);
        }
        Formula::Believes(agent, g) => {
            let _ = write!(out, "B[{agent}] ");
            write_at(out, g, UNARY);
        }
        Formula::Announce(content, t, body) => {
            out.push('[');
            write_at(out, content, IMPLIES);
            let _ = write!(out, " >= {t}] ");
            write_at(out, body, UNARY);
        }
    }
}
