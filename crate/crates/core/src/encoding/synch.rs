//! Synchronous output through an acknowledgement.
//!
//! ```text
//! [s(p, p~).P]    = s(x*p, p~).('x<x> | [P])
//! [s<t, t~>.Q]    = new x.('s<x*t, t~> | 'x(=x).[Q])
//! ```
//!
//! `x` is a fresh reserved name. Channels are dropped in dataspace
//! languages, leaving `<x>` and `(=x)` as the acknowledgement pair.

use std::collections::BTreeSet;

use super::operator::{rewrite, Operator, Rewrite};
use super::{EncodingKind, Encoder};
use crate::fresh::FreshNames;
use crate::language::{Language, Matching, Synchronism};
use crate::process::Process;
use crate::term::{Name, Pattern, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SynchVariant {
    Faithful,
    /// Inputs never acknowledge; synchronous continuations stay blocked.
    DropAck,
    /// Inputs also install a replicated echo of the acknowledgement.
    LoopAck,
}

#[derive(Debug, Clone)]
pub struct Synch {
    source: Language,
    variant: SynchVariant,
}

impl Synch {
    pub fn new(source: Language) -> Self {
        Synch::with_variant(source, SynchVariant::Faithful)
    }

    pub fn with_variant(source: Language, variant: SynchVariant) -> Self {
        assert!(source.is_synchronous(), "synch encoder needs a synchronous source");
        Synch { source, variant }
    }

    fn ack_out(&self, x: &Name) -> Process {
        let chan = self.source.has_channels().then(|| Term::Name(x.clone()));
        Process::output(chan, vec![Term::Name(x.clone())], None)
    }

    fn ack_in(&self, x: &Name, cont: Process) -> Process {
        let chan = self.source.has_channels().then(|| Term::Name(x.clone()));
        Process::input(chan, vec![Pattern::Match(x.clone())], cont)
    }

    fn input_body(&self, x: &Name, cont: Process) -> Process {
        match self.variant {
            SynchVariant::Faithful => Process::par(self.ack_out(x), cont),
            SynchVariant::DropAck => cont,
            SynchVariant::LoopAck => {
                let echo = Process::repl(self.ack_in(x, self.ack_out(x)));
                Process::par_all([self.ack_out(x), echo, cont])
            }
        }
    }

    fn input_with(&self, x: Name, channel: Option<&Term>, patterns: &[Pattern], cont: Process) -> Process {
        let mut ps = patterns.to_vec();
        ps[0] = Pattern::compound(Pattern::Bind(x.clone()), ps[0].clone());
        Process::input(channel.cloned(), ps, self.input_body(&x, cont))
    }

    fn output_with(&self, x: Name, channel: Option<&Term>, args: &[Term], cont: Process) -> Process {
        let mut ts = args.to_vec();
        ts[0] = Term::compound(Term::Name(x.clone()), ts[0].clone());
        let send = Process::output(channel.cloned(), ts, None);
        Process::restrict(x.clone(), Process::par(send, self.ack_in(&x, cont)))
    }
}

struct Run<'a> {
    enc: &'a Synch,
    fresh: FreshNames,
}

impl Rewrite for Run<'_> {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process {
        let x = self.fresh.fresh();
        let cont = cont.map_or(Process::Nil, |k| rewrite(self, k));
        self.enc.output_with(x, channel, args, cont)
    }

    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process {
        let x = self.fresh.fresh();
        let cont = rewrite(self, cont);
        self.enc.input_with(x, channel, patterns, cont)
    }
}

impl Encoder for Synch {
    fn kind(&self) -> EncodingKind {
        match self.variant {
            SynchVariant::Faithful => EncodingKind::Synch,
            SynchVariant::DropAck => EncodingKind::Mutant(super::Mutant::DropAck),
            SynchVariant::LoopAck => EncodingKind::Mutant(super::Mutant::LoopAck),
        }
    }

    fn source(&self) -> Language {
        self.source
    }

    fn target(&self) -> Language {
        self.source
            .with_synchronism(Synchronism::Asynchronous)
            .with_matching(Matching::Intensional)
    }

    fn profile(&self) -> usize {
        2
    }

    fn encode(&self, p: &Process) -> Process {
        let mut run = Run {
            enc: self,
            fresh: FreshNames::new("f", p.names()),
        };
        rewrite(&mut run, p)
    }

    fn context(&self, op: &Operator, parts: &[Process]) -> Process {
        let mut avoid: BTreeSet<Name> = op.names();
        for q in parts {
            avoid.extend(q.names());
        }
        let mut fresh = FreshNames::new("f", avoid);
        match op {
            Operator::Output { channel, args, .. } => {
                let cont = parts.first().cloned().unwrap_or(Process::Nil);
                self.output_with(fresh.fresh(), channel.as_ref(), args, cont)
            }
            Operator::Input { channel, patterns } => {
                self.input_with(fresh.fresh(), channel.as_ref(), patterns, parts[0].clone())
            }
            other => other.apply(parts),
        }
    }
}

/// Translates a process of the synchronous language `lang`.
pub fn encode_synch(p: &Process, lang: &Language) -> Process {
    Synch::new(*lang).encode(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::semantics::{explore, struct_eq, Limits};
    use crate::syntax::{parse_any, parse_unchecked as parse, pretty};

    fn lang(code: &str) -> Language {
        code.parse().unwrap()
    }

    #[test]
    fn output_clause() {
        let out = encode_synch(&parse("<a>.ok"), &lang("SMDO"));
        assert_eq!(pretty(&out), "new #f0.(<#f0*a> | (=#f0).ok)");
    }

    #[test]
    fn input_clause() {
        let out = encode_synch(&parse("(y).0"), &lang("SMDO"));
        assert_eq!(pretty(&out), "(#f0*y).(<#f0> | 0)");
    }

    #[test]
    fn channel_clauses() {
        let out = encode_synch(&parse("'c<a, b>.ok"), &lang("SPCO"));
        assert_eq!(out, parse_any("new #f0.('c<#f0*a, b> | '#f0(=#f0).ok)").unwrap());
        let out = encode_synch(&parse("'c(x, y).0"), &lang("SPCO"));
        assert_eq!(out, parse_any("'c(#f0*x, y).('#f0<#f0> | 0)").unwrap());
    }

    #[test]
    fn fresh_names_avoid_existing_ones() {
        let out = encode_synch(&parse_any("<#f0>.0").unwrap(), &lang("SMDO"));
        assert_eq!(pretty(&out), "new #f1.(<#f1*#f0> | (=#f1).0)");
    }

    #[test]
    fn one_source_step_is_two_target_steps() {
        let l = lang("SMDO");
        let src = parse("<a>.ok | (y).0");
        let enc = encode_synch(&src, &l);
        let g = explore(&enc, &Synch::new(l).target(), Limits::default());
        let goal = encode_synch(&parse("ok | 0"), &l);
        let hits: Vec<usize> = (0..g.nodes.len())
            .filter(|&i| struct_eq(&g.nodes[i].to_process(), &goal))
            .collect();
        assert_eq!(hits.len(), 1);
        assert_eq!(g.depth[hits[0]], 2);
    }
}
