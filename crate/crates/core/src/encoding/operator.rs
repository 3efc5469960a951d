//! A process seen as an operator applied to its immediate sub-processes.

use std::collections::BTreeSet;

use crate::process::Process;
use crate::term::{Name, Pattern, Term};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Operator {
    Nil,
    Ok,
    /// `has_cont` tells whether the output takes its continuation as an
    /// argument.
    Output {
        channel: Option<Term>,
        args: Vec<Term>,
        has_cont: bool,
    },
    Input {
        channel: Option<Term>,
        patterns: Vec<Pattern>,
    },
    Restrict(Name),
    Par,
    Cond {
        lhs: Term,
        rhs: Term,
    },
    Repl,
}

impl Operator {
    pub fn split(p: &Process) -> (Operator, Vec<Process>) {
        match p {
            Process::Nil => (Operator::Nil, vec![]),
            Process::Ok => (Operator::Ok, vec![]),
            Process::Output { channel, args, cont } => (
                Operator::Output {
                    channel: channel.clone(),
                    args: args.clone(),
                    has_cont: cont.is_some(),
                },
                cont.iter().map(|k| (**k).clone()).collect(),
            ),
            Process::Input {
                channel,
                patterns,
                cont,
            } => (
                Operator::Input {
                    channel: channel.clone(),
                    patterns: patterns.clone(),
                },
                vec![(**cont).clone()],
            ),
            Process::Restrict(n, body) => (Operator::Restrict(n.clone()), vec![(**body).clone()]),
            Process::Par(l, r) => (Operator::Par, vec![(**l).clone(), (**r).clone()]),
            Process::Cond {
                lhs,
                rhs,
                then,
                otherwise,
            } => (
                Operator::Cond {
                    lhs: lhs.clone(),
                    rhs: rhs.clone(),
                },
                vec![(**then).clone(), (**otherwise).clone()],
            ),
            Process::Repl(body) => (Operator::Repl, vec![(**body).clone()]),
        }
    }

    pub fn arity(&self) -> usize {
        match self {
            Operator::Nil | Operator::Ok => 0,
            Operator::Output { has_cont, .. } => usize::from(*has_cont),
            Operator::Input { .. } | Operator::Restrict(_) | Operator::Repl => 1,
            Operator::Par | Operator::Cond { .. } => 2,
        }
    }

    /// Rebuilds the process. Panics if `parts` has the wrong length.
    pub fn apply(&self, parts: &[Process]) -> Process {
        assert_eq!(parts.len(), self.arity(), "operator arity");
        match self {
            Operator::Nil => Process::Nil,
            Operator::Ok => Process::Ok,
            Operator::Output { channel, args, .. } => {
                Process::output(channel.clone(), args.clone(), parts.first().cloned())
            }
            Operator::Input { channel, patterns } => {
                Process::input(channel.clone(), patterns.clone(), parts[0].clone())
            }
            Operator::Restrict(n) => Process::restrict(n.clone(), parts[0].clone()),
            Operator::Par => Process::par(parts[0].clone(), parts[1].clone()),
            Operator::Cond { lhs, rhs } => {
                Process::cond(lhs.clone(), rhs.clone(), parts[0].clone(), parts[1].clone())
            }
            Operator::Repl => Process::repl(parts[0].clone()),
        }
    }

    /// Names written in the operator itself.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        match self {
            Operator::Nil | Operator::Ok | Operator::Par | Operator::Repl => {}
            Operator::Output { channel, args, .. } => {
                channel.iter().for_each(|c| c.names_into(&mut out));
                args.iter().for_each(|a| a.names_into(&mut out));
            }
            Operator::Input { channel, patterns } => {
                channel.iter().for_each(|c| c.names_into(&mut out));
                patterns.iter().for_each(|p| p.names_into(&mut out));
            }
            Operator::Restrict(n) => {
                out.insert(n.clone());
            }
            Operator::Cond { lhs, rhs } => {
                lhs.names_into(&mut out);
                rhs.names_into(&mut out);
            }
        }
        out
    }

    pub fn label(&self) -> &'static str {
        match self {
            Operator::Nil => "nil",
            Operator::Ok => "ok",
            Operator::Output { .. } => "output",
            Operator::Input { .. } => "input",
            Operator::Restrict(_) => "restriction",
            Operator::Par => "parallel",
            Operator::Cond { .. } => "conditional",
            Operator::Repl => "replication",
        }
    }
}

/// Homomorphic traversal with overridable prefix cases.
pub(crate) trait Rewrite {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process;
    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process;

    fn ok(&mut self) -> Process {
        Process::Ok
    }

    fn par(&mut self, l: &Process, r: &Process) -> Process
    where
        Self: Sized,
    {
        Process::par(rewrite(self, l), rewrite(self, r))
    }
}

pub(crate) fn rewrite<R: Rewrite>(rw: &mut R, p: &Process) -> Process {
    match p {
        Process::Nil => Process::Nil,
        Process::Ok => rw.ok(),
        Process::Output { channel, args, cont } => rw.output(channel.as_ref(), args, cont.as_deref()),
        Process::Input {
            channel,
            patterns,
            cont,
        } => rw.input(channel.as_ref(), patterns, cont),
        Process::Restrict(n, body) => Process::restrict(n.clone(), rewrite(rw, body)),
        Process::Par(l, r) => rw.par(l, r),
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => Process::cond(lhs.clone(), rhs.clone(), rewrite(rw, then), rewrite(rw, otherwise)),
        Process::Repl(body) => Process::repl(rewrite(rw, body)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_unchecked as parse;

    #[test]
    fn split_then_apply_is_identity() {
        for s in ["0", "ok", "<a>.ok", "'c(x).0", "new a.<a>", "<a> | <b>", "if a = b then ok else 0", "!<a>"] {
            let p = parse(s);
            let (op, parts) = Operator::split(&p);
            assert_eq!(op.apply(&parts), p, "{s}");
        }
    }
}
