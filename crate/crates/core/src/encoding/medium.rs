//! Channels folded into the first tuple element.
//!
//! ```text
//! [s(p, p~).P]   = (=s*p, p~).[P]
//! [s<t, t~>.Q]   = <s*t, t~>.[Q]
//! ```

use super::operator::{rewrite, Operator, Rewrite};
use super::{EncodingKind, Encoder};
use crate::language::{self, Language};
use crate::process::Process;
use crate::term::{Pattern, Term};

#[derive(Debug, Clone)]
pub struct Medium {
    source: Language,
}

impl Medium {
    pub fn new(source: Language) -> Self {
        assert!(source.has_channels(), "medium encoder needs a channel-based source");
        Medium { source }
    }
}

fn fold_output(channel: Option<&Term>, args: &[Term]) -> Vec<Term> {
    let mut ts = args.to_vec();
    let s = channel.expect("channel-based output has a channel").clone();
    ts[0] = Term::compound(s, ts[0].clone());
    ts
}

fn fold_input(channel: Option<&Term>, patterns: &[Pattern]) -> Vec<Pattern> {
    let mut ps = patterns.to_vec();
    let s = channel.expect("channel-based input has a channel");
    ps[0] = Pattern::compound(Pattern::name_match(s), ps[0].clone());
    ps
}

struct Run;

impl Rewrite for Run {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process {
        let cont = cont.map(|k| rewrite(self, k));
        Process::output(None, fold_output(channel, args), cont)
    }

    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process {
        Process::input(None, fold_input(channel, patterns), rewrite(self, cont))
    }
}

impl Encoder for Medium {
    fn kind(&self) -> EncodingKind {
        EncodingKind::Medium
    }

    fn source(&self) -> Language {
        self.source
    }

    fn target(&self) -> Language {
        self.source
            .with_medium(language::Medium::Dataspace)
            .with_matching(language::Matching::Intensional)
    }

    fn encode(&self, p: &Process) -> Process {
        rewrite(&mut Run, p)
    }

    fn context(&self, op: &Operator, parts: &[Process]) -> Process {
        match op {
            Operator::Output { channel, args, .. } => {
                Process::output(None, fold_output(channel.as_ref(), args), parts.first().cloned())
            }
            Operator::Input { channel, patterns } => {
                Process::input(None, fold_input(channel.as_ref(), patterns), parts[0].clone())
            }
            other => other.apply(parts),
        }
    }
}

pub fn encode_medium(p: &Process, lang: &Language) -> Process {
    Medium::new(*lang).encode(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_unchecked as parse;

    fn l() -> Language {
        "AMCI".parse().unwrap()
    }

    #[test]
    fn output_clause() {
        assert_eq!(encode_medium(&parse("'a<b>"), &l()), parse("<a*b>"));
    }

    #[test]
    fn input_clause() {
        assert_eq!(encode_medium(&parse("'a(x).ok"), &l()), parse("(=a*x).ok"));
    }

    #[test]
    fn compound_channels_expand_into_name_matches() {
        assert_eq!(
            encode_medium(&parse("'(a*b)(x).0"), &l()),
            parse("((=a*=b)*x).0")
        );
    }

    #[test]
    fn only_the_first_element_carries_the_channel() {
        let p: Language = "SPCO".parse().unwrap();
        assert_eq!(
            encode_medium(&parse("'c<a, b>.'c(x, y).0"), &p),
            parse("<c*a, b>.(=c*x, y).0")
        );
    }
}
