//! Embeddings along the language order. Each moves one coordinate up:
//! asynchronous outputs gain a `0` continuation, monadic tuples are already
//! polyadic ones, dataspace prefixes move onto the channel `#k<i>` for their
//! arity `i`, and patterns are unchanged by a richer matching degree.

use super::operator::{rewrite, Operator, Rewrite};
use super::{EncodeError, EncodingKind, Encoder};
use crate::language::{self, Language};
use crate::process::Process;
use crate::term::{Name, Pattern, Term};

/// The reserved channel standing for tuples of arity `i`.
pub fn channel_for_arity(i: usize) -> Term {
    Term::Name(Name::reserved(&format!("k{i}")))
}

#[derive(Debug, Clone)]
pub struct Embed {
    kind: EncodingKind,
    source: Language,
    target: Language,
}

impl Embed {
    fn add_cont(&self) -> bool {
        self.kind == EncodingKind::EmbedA2S
    }

    fn add_channel(&self) -> bool {
        self.kind == EncodingKind::EmbedD2C
    }

    fn output_with(&self, channel: Option<&Term>, args: &[Term], cont: Option<Process>) -> Process {
        let channel = if self.add_channel() {
            Some(channel_for_arity(args.len()))
        } else {
            channel.cloned()
        };
        let cont = if self.add_cont() {
            Some(cont.unwrap_or(Process::Nil))
        } else {
            cont
        };
        Process::output(channel, args.to_vec(), cont)
    }

    fn input_with(&self, channel: Option<&Term>, patterns: &[Pattern], cont: Process) -> Process {
        let channel = if self.add_channel() {
            Some(channel_for_arity(patterns.len()))
        } else {
            channel.cloned()
        };
        Process::input(channel, patterns.to_vec(), cont)
    }
}

struct Run<'a>(&'a Embed);

impl Rewrite for Run<'_> {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process {
        let cont = cont.map(|k| rewrite(self, k));
        self.0.output_with(channel, args, cont)
    }

    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process {
        let cont = rewrite(self, cont);
        self.0.input_with(channel, patterns, cont)
    }
}

impl Encoder for Embed {
    fn kind(&self) -> EncodingKind {
        self.kind
    }

    fn source(&self) -> Language {
        self.source
    }

    fn target(&self) -> Language {
        self.target
    }

    fn encode(&self, p: &Process) -> Process {
        match self.kind {
            EncodingKind::EmbedA2S | EncodingKind::EmbedD2C => rewrite(&mut Run(self), p),
            _ => p.clone(),
        }
    }

    fn context(&self, op: &Operator, parts: &[Process]) -> Process {
        match op {
            Operator::Output { channel, args, .. } => {
                self.output_with(channel.as_ref(), args, parts.first().cloned())
            }
            Operator::Input { channel, patterns } => {
                self.input_with(channel.as_ref(), patterns, parts[0].clone())
            }
            other => other.apply(parts),
        }
    }
}

/// One-coordinate embeddings from `from` up to `to`, matching first.
/// Panics unless `from <= to`.
pub fn embed_stages(from: Language, to: Language) -> Vec<Embed> {
    assert!(from.leq(&to), "embedding needs {from} <= {to}");
    let mut out = Vec::new();
    let mut cur = from;
    let mut step = |kind, next: Language, cur: &mut Language| {
        out.push(Embed {
            kind,
            source: *cur,
            target: next,
        });
        *cur = next;
    };
    if cur.matching != to.matching {
        step(EncodingKind::EmbedMatch, cur.with_matching(to.matching), &mut cur);
    }
    if cur.synchronism != to.synchronism {
        step(
            EncodingKind::EmbedA2S,
            cur.with_synchronism(language::Synchronism::Synchronous),
            &mut cur,
        );
    }
    if cur.arity != to.arity {
        step(EncodingKind::EmbedM2P, cur.with_arity(language::Arity::Polyadic), &mut cur);
    }
    if cur.medium != to.medium {
        step(EncodingKind::EmbedD2C, cur.with_medium(language::Medium::Channel), &mut cur);
    }
    out
}

/// Lifts a process of `from` into the larger language `to`.
pub fn embed(p: &Process, from: Language, to: Language) -> Result<Process, EncodeError> {
    if !from.leq(&to) {
        return Err(EncodeError::NotOrdered { from, to });
    }
    Ok(embed_stages(from, to).iter().fold(p.clone(), |acc, s| s.encode(&acc)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_any, parse_unchecked as parse};

    fn lang(code: &str) -> Language {
        code.parse().unwrap()
    }

    #[test]
    fn asynchronous_outputs_gain_nil() {
        assert_eq!(embed(&parse("<a>"), lang("AMDO"), lang("SMDO")).unwrap(), parse("<a>.0"));
    }

    #[test]
    fn dataspace_prefixes_gain_arity_channels() {
        assert_eq!(
            embed(&parse("<a>"), lang("AMDO"), lang("AMCO")).unwrap(),
            parse_any("'#k1<a>").unwrap()
        );
        assert_eq!(
            embed(&parse("<a, b> | (x).0"), lang("APDO"), lang("APCO")).unwrap(),
            parse_any("'#k2<a, b> | '#k1(x).0").unwrap()
        );
    }

    #[test]
    fn reflexive_embedding_is_identity() {
        for l in Language::all() {
            assert!(embed_stages(l, l).is_empty());
        }
        let p = parse("<a> | (x).ok");
        assert_eq!(embed(&p, lang("AMDO"), lang("AMDO")).unwrap(), p);
    }

    #[test]
    fn unordered_pairs_are_rejected() {
        assert!(embed(&parse("<a>.0"), lang("SMDO"), lang("AMDO")).is_err());
    }

    #[test]
    fn results_conform() {
        let p = parse("<a> | (x).if x = a then ok else <b>");
        for to in Language::all() {
            if lang("AMDO").leq(&to) {
                let q = embed(&p, lang("AMDO"), to).unwrap();
                assert!(crate::conform::is_conformant(&q, &to), "{to}: {q}");
            }
        }
    }
}
