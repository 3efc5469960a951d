//! Tuples folded into one left-nested compound tagged by a reserved name.
//!
//! ```text
//! [s(p1, ..., pi).P]   = s(=#r*p1*...*pi).[P]
//! [s<t1, ..., ti>.Q]   = s<#r*t1*...*ti>.[Q]
//! ```
//!
//! A spine of length `i` only matches a pattern spine of length `i`, so
//! tuples of different arities never meet.

use super::operator::{rewrite, Operator, Rewrite};
use super::{EncodingKind, Encoder};
use crate::language::{self, Language};
use crate::process::Process;
use crate::term::{Name, Pattern, Term};

pub const RESERVED_TAG: &str = "#r";

fn tag() -> Name {
    Name::reserved("r")
}

pub(crate) fn tag_term(args: &[Term]) -> Term {
    args.iter()
        .cloned()
        .fold(Term::Name(tag()), Term::compound)
}

pub(crate) fn tag_pattern(patterns: &[Pattern]) -> Pattern {
    patterns
        .iter()
        .cloned()
        .fold(Pattern::Match(tag()), Pattern::compound)
}

#[derive(Debug, Clone)]
pub struct Arity {
    source: Language,
}

impl Arity {
    pub fn new(source: Language) -> Self {
        assert!(source.is_polyadic(), "arity encoder needs a polyadic source");
        Arity { source }
    }
}

struct Run;

impl Rewrite for Run {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process {
        let cont = cont.map(|k| rewrite(self, k));
        Process::output(channel.cloned(), vec![tag_term(args)], cont)
    }

    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process {
        Process::input(channel.cloned(), vec![tag_pattern(patterns)], rewrite(self, cont))
    }
}

impl Encoder for Arity {
    fn kind(&self) -> EncodingKind {
        EncodingKind::Arity
    }

    fn source(&self) -> Language {
        self.source
    }

    fn target(&self) -> Language {
        self.source
            .with_arity(language::Arity::Monadic)
            .with_matching(language::Matching::Intensional)
    }

    fn encode(&self, p: &Process) -> Process {
        rewrite(&mut Run, p)
    }

    fn context(&self, op: &Operator, parts: &[Process]) -> Process {
        match op {
            Operator::Output { channel, args, .. } => {
                Process::output(channel.clone(), vec![tag_term(args)], parts.first().cloned())
            }
            Operator::Input { channel, patterns } => {
                Process::input(channel.clone(), vec![tag_pattern(patterns)], parts[0].clone())
            }
            other => other.apply(parts),
        }
    }
}

pub fn encode_arity(p: &Process, lang: &Language) -> Process {
    Arity::new(*lang).encode(p)
}
