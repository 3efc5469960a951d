//! Canonical ASCII rendering. Parallel composition is left-associative and
//! binds loosest; every prefix form takes a prefix-level continuation, so a
//! parallel composition in a continuation, a branch, or a replicated body is
//! parenthesised. Conditionals always print their `else` branch.

use crate::process::Process;
use crate::term::{Pattern, Term};

pub fn pretty(p: &Process) -> String {
    let mut out = String::new();
    write_par(p, &mut out);
    out
}

pub fn pretty_term(t: &Term) -> String {
    let mut out = String::new();
    write_term(t, &mut out);
    out
}

pub fn pretty_pattern(p: &Pattern) -> String {
    let mut out = String::new();
    write_pattern(p, &mut out);
    out
}

fn write_term(t: &Term, out: &mut String) {
    match t {
        Term::Name(n) => out.push_str(n.as_str()),
        Term::Compound(l, r) => {
            write_term(l, out);
            out.push('*');
            if r.is_compound() {
                out.push('(');
                write_term(r, out);
                out.push(')');
            } else {
                write_term(r, out);
            }
        }
    }
}

/// Channel subjects sit directly before `<` or `(`, so compounds are
/// parenthesised.
fn write_channel(t: &Term, out: &mut String) {
    out.push('\'');
    if t.is_compound() {
        out.push('(');
        write_term(t, out);
        out.push(')');
    } else {
        write_term(t, out);
    }
}

fn write_pattern(p: &Pattern, out: &mut String) {
    match p {
        Pattern::Bind(n) => out.push_str(n.as_str()),
        Pattern::Match(n) => {
            out.push('=');
            out.push_str(n.as_str());
        }
        Pattern::Compound(l, r) => {
            write_pattern(l, out);
            out.push('*');
            if matches!(**r, Pattern::Compound(..)) {
                out.push('(');
                write_pattern(r, out);
                out.push(')');
            } else {
                write_pattern(r, out);
            }
        }
    }
}

fn write_seq<T>(items: &[T], out: &mut String, each: fn(&T, &mut String)) {
    for (i, it) in items.iter().enumerate() {
        if i > 0 {
            out.push_str(", ");
        }
        each(it, out);
    }
}

fn write_par(p: &Process, out: &mut String) {
    match p {
        Process::Par(l, r) => {
            write_par(l, out);
            out.push_str(" | ");
            write_prefix(r, out);
        }
        _ => write_prefix(p, out),
    }
}

fn write_prefix(p: &Process, out: &mut String) {
    match p {
        Process::Par(..) => {
            out.push('(');
            write_par(p, out);
            out.push(')');
        }
        Process::Nil => out.push('0'),
        Process::Ok => out.push_str("ok"),
        Process::Output { channel, args, cont } => {
            if let Some(c) = channel {
                write_channel(c, out);
            }
            out.push('<');
            write_seq(args, out, write_term);
            out.push('>');
            if let Some(k) = cont {
                out.push('.');
                write_prefix(k, out);
            }
        }
        Process::Input {
            channel,
            patterns,
            cont,
        } => {
            if let Some(c) = channel {
                write_channel(c, out);
            }
            out.push('(');
            write_seq(patterns, out, write_pattern);
            out.push_str(").");
            write_prefix(cont, out);
        }
        Process::Restrict(n, body) => {
            out.push_str("new ");
            out.push_str(n.as_str());
            out.push('.');
            write_prefix(body, out);
        }
        Process::Repl(body) => {
            out.push('!');
            write_prefix(body, out);
        }
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => {
            out.push_str("if ");
            write_term(lhs, out);
            out.push_str(" = ");
            write_term(rhs, out);
            out.push_str(" then ");
            write_prefix(then, out);
            out.push_str(" else ");
            write_prefix(otherwise, out);
        }
    }
}
