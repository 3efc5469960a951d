//! Translations between languages of the family.
//!
//! Three translations move a feature into intensional pattern matching:
//! synchronism ([`Synch`]), polyadicity ([`Arity`]), and channels
//! ([`Medium`]). The [`Embed`] steps lift a process along the language order.
//! [`encode_to`] strings them into a [`Pipeline`].
//!
//! Every encoder also exposes, per operator, the context its translation
//! places the translated arguments in, so that compositionality can be
//! checked against the translation itself.

mod arity;
mod embed;
mod medium;
mod mutant;
mod operator;
mod synch;

use std::fmt;

use thiserror::Error;

use crate::conform::{conforms, Violation};
use crate::language::{Language, Matching};
use crate::process::Process;

pub use arity::{encode_arity, Arity, RESERVED_TAG};
pub use embed::{channel_for_arity, embed, embed_stages, Embed};
pub use medium::{encode_medium, Medium};
pub use mutant::{DropSuccess, LeakName, Mutant, LEAKED_NAME};
pub use operator::Operator;
pub use synch::{encode_synch, Synch, SynchVariant};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EncodingKind {
    Synch,
    Arity,
    Medium,
    EmbedA2S,
    EmbedM2P,
    EmbedD2C,
    EmbedMatch,
    Mutant(Mutant),
}

impl fmt::Display for EncodingKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodingKind::Synch => f.write_str("synch"),
            EncodingKind::Arity => f.write_str("arity"),
            EncodingKind::Medium => f.write_str("medium"),
            EncodingKind::EmbedA2S => f.write_str("embed-a2s"),
            EncodingKind::EmbedM2P => f.write_str("embed-m2p"),
            EncodingKind::EmbedD2C => f.write_str("embed-d2c"),
            EncodingKind::EmbedMatch => f.write_str("embed-match"),
            EncodingKind::Mutant(m) => write!(f, "mutant-{m}"),
        }
    }
}

/// One translation step from `source()` into `target()`.
pub trait Encoder: Send + Sync {
    fn kind(&self) -> EncodingKind;
    fn source(&self) -> Language;
    fn target(&self) -> Language;

    /// Target reductions per source reduction.
    fn profile(&self) -> usize {
        1
    }

    fn encode(&self, p: &Process) -> Process;

    /// The translation of `op` applied to already translated arguments.
    fn context(&self, op: &Operator, parts: &[Process]) -> Process;
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error(
        "no valid encoding exists from {from} into {to}: a target without intensional \
         matching must be at least the source in every coordinate"
    )]
    Unreachable { from: Language, to: Language },
    #[error("{kind} expects a source in {expected}, got a process of {found}")]
    WrongSource {
        kind: EncodingKind,
        expected: String,
        found: Language,
    },
    #[error("{stage}: process leaves {language}: {}", join(.violations))]
    Nonconformant {
        stage: String,
        language: Language,
        violations: Vec<Violation>,
    },
    #[error("{from} is not below {to} in the language order")]
    NotOrdered { from: Language, to: Language },
    #[error("mutant {mutant} needs a pipeline with a {needs} step")]
    MutantNotApplicable { mutant: Mutant, needs: EncodingKind },
}

fn join(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

/// A sequence of encoders, each stage's target being the next one's source.
pub struct Pipeline {
    stages: Vec<Box<dyn Encoder>>,
    source: Language,
}

impl fmt::Debug for Pipeline {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Pipeline({})", self.describe())
    }
}

impl Pipeline {
    /// The empty pipeline over `lang`.
    pub fn identity(lang: Language) -> Self {
        Pipeline {
            stages: Vec::new(),
            source: lang,
        }
    }

    pub fn push(&mut self, stage: Box<dyn Encoder>) {
        assert_eq!(stage.source(), self.target(), "pipeline stages must chain");
        self.stages.push(stage);
    }

    /// Runs `next` after `self`.
    pub fn then(mut self, next: Pipeline) -> Pipeline {
        for s in next.stages {
            self.push(s);
        }
        self
    }

    pub fn stages(&self) -> &[Box<dyn Encoder>] {
        &self.stages
    }

    pub fn source(&self) -> Language {
        self.source
    }

    pub fn target(&self) -> Language {
        self.stages.last().map_or(self.source, |s| s.target())
    }

    pub fn profile(&self) -> usize {
        self.stages.iter().map(|s| s.profile()).product()
    }

    pub fn describe(&self) -> String {
        if self.stages.is_empty() {
            return format!("identity {}", self.source);
        }
        self.stages
            .iter()
            .map(|s| format!("{} {}->{}", s.kind(), s.source(), s.target()))
            .collect::<Vec<_>>()
            .join(" ; ")
    }

    /// Runs every stage, checking conformance before and after each.
    pub fn encode(&self, p: &Process) -> Result<Process, EncodeError> {
        Ok(self.encode_stages(p)?.pop().expect("at least the input"))
    }

    /// The input followed by the output of every stage.
    pub fn encode_stages(&self, p: &Process) -> Result<Vec<Process>, EncodeError> {
        check(p, &self.source, "input")?;
        let mut out = vec![p.clone()];
        for s in &self.stages {
            let next = s.encode(out.last().expect("nonempty"));
            check(&next, &s.target(), &s.kind().to_string())?;
            out.push(next);
        }
        Ok(out)
    }

    /// Encoding without the conformance checks; for processes known to fit.
    pub fn encode_unchecked(&self, p: &Process) -> Process {
        self.stages.iter().fold(p.clone(), |acc, s| s.encode(&acc))
    }

    /// Replaces the synchronism stage by a mutated one, or appends a mutant
    /// stage at the end.
    pub fn with_mutant(mut self, m: Mutant) -> Result<Pipeline, EncodeError> {
        match m {
            Mutant::DropAck | Mutant::LoopAck => {
                let variant = if m == Mutant::DropAck {
                    SynchVariant::DropAck
                } else {
                    SynchVariant::LoopAck
                };
                let at = self
                    .stages
                    .iter()
                    .position(|s| s.kind() == EncodingKind::Synch)
                    .ok_or(EncodeError::MutantNotApplicable {
                        mutant: m,
                        needs: EncodingKind::Synch,
                    })?;
                let source = self.stages[at].source();
                self.stages[at] = Box::new(Synch::with_variant(source, variant));
                Ok(self)
            }
            Mutant::DropSuccess => {
                let t = self.target();
                self.stages.push(Box::new(DropSuccess::new(t)));
                Ok(self)
            }
            Mutant::LeakName => {
                let t = self.target();
                self.stages.push(Box::new(LeakName::new(t)));
                Ok(self)
            }
        }
    }
}

fn check(p: &Process, lang: &Language, stage: &str) -> Result<(), EncodeError> {
    let violations = conforms(p, lang);
    if violations.is_empty() {
        Ok(())
    } else {
        Err(EncodeError::Nonconformant {
            stage: stage.to_string(),
            language: *lang,
            violations,
        })
    }
}

/// The stages translating `from` into `to`: a plain embedding when
/// `from <= to`, otherwise (for intensional targets) matching is raised to
/// intensional, then synchronism, arity, and medium are translated away as
/// needed, and the remaining coordinates are embedded.
pub fn pipeline(from: Language, to: Language) -> Result<Pipeline, EncodeError> {
    let mut p = Pipeline::identity(from);
    if from.leq(&to) {
        for s in embed_stages(from, to) {
            p.push(Box::new(s));
        }
        return Ok(p);
    }
    if to.matching != Matching::Intensional {
        return Err(EncodeError::Unreachable { from, to });
    }
    let mut cur = from;
    if cur.matching != Matching::Intensional {
        let next = cur.with_matching(Matching::Intensional);
        for s in embed_stages(cur, next) {
            p.push(Box::new(s));
        }
        cur = next;
    }
    if cur.is_synchronous() && !to.is_synchronous() {
        let s = Synch::new(cur);
        cur = s.target();
        p.push(Box::new(s));
    }
    if cur.is_polyadic() && !to.is_polyadic() {
        let s = Arity::new(cur);
        cur = s.target();
        p.push(Box::new(s));
    }
    if cur.has_channels() && !to.has_channels() {
        let s = Medium::new(cur);
        cur = s.target();
        p.push(Box::new(s));
    }
    debug_assert!(cur.leq(&to));
    for s in embed_stages(cur, to) {
        p.push(Box::new(s));
    }
    Ok(p)
}

/// Translates `p`, a process of `from`, into `to`.
pub fn encode_to(p: &Process, from: Language, to: Language) -> Result<Process, EncodeError> {
    pipeline(from, to)?.encode(p)
}

/// Single-translation pipelines for a unit in `lang`: matching is raised to
/// intensional first when needed.
pub fn single(kind: EncodingKind, lang: Language) -> Result<Pipeline, EncodeError> {
    let wrong = |expected: &str| EncodeError::WrongSource {
        kind,
        expected: expected.to_string(),
        found: lang,
    };
    let mut p = Pipeline::identity(lang);
    let ready = lang.with_matching(Matching::Intensional);
    match kind {
        EncodingKind::Synch => {
            if !lang.is_synchronous() {
                return Err(wrong("a synchronous language"));
            }
            p.push(Box::new(Synch::new(lang)));
        }
        EncodingKind::Arity => {
            if !lang.is_polyadic() {
                return Err(wrong("a polyadic language"));
            }
            for s in embed_stages(lang, ready) {
                p.push(Box::new(s));
            }
            p.push(Box::new(Arity::new(ready)));
        }
        EncodingKind::Medium => {
            if !lang.has_channels() {
                return Err(wrong("a channel-based language"));
            }
            for s in embed_stages(lang, ready) {
                p.push(Box::new(s));
            }
            p.push(Box::new(Medium::new(ready)));
        }
        other => {
            return Err(EncodeError::WrongSource {
                kind: other,
                expected: "one of synch, arity, medium".into(),
                found: lang,
            })
        }
    }
    Ok(p)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_any, parse_unchecked as parse, pretty};

    fn lang(code: &str) -> Language {
        code.parse().unwrap()
    }

    #[test]
    fn route_from_the_top_language() {
        let p = pipeline(lang("SPCN"), lang("AMDI")).unwrap();
        let kinds: Vec<_> = p.stages().iter().map(|s| s.kind()).collect();
        assert_eq!(
            kinds,
            vec![
                EncodingKind::EmbedMatch,
                EncodingKind::Synch,
                EncodingKind::Arity,
                EncodingKind::Medium
            ]
        );
        let src = parse("'c<a, b>.ok | 'c(x, =b).'x<x>.0");
        let out = p.encode(&src).unwrap();
        assert!(crate::conform::is_conformant(&out, &lang("AMDI")));
        assert_eq!(p.profile(), 2);
    }

    #[test]
    fn embeddings_for_ordered_pairs() {
        let p = pipeline(lang("AMDO"), lang("AMDI")).unwrap();
        assert_eq!(p.stages().len(), 1);
        assert_eq!(p.encode(&parse("<a>")).unwrap(), parse("<a>"));
        let p = pipeline(lang("AMDI"), lang("AMDI")).unwrap();
        assert!(p.stages().is_empty());
    }

    #[test]
    fn unreachable_targets() {
        let e = pipeline(lang("AMDI"), lang("SPCN")).unwrap_err();
        assert!(matches!(e, EncodeError::Unreachable { .. }));
        assert!(pipeline(lang("AMDI"), lang("AMDN")).is_err());
        assert!(!e.to_string().contains("Theorem"));
    }

    #[test]
    fn synchronous_into_asynchronous_non_intensional_is_unreachable() {
        assert!(matches!(
            pipeline(lang("SMDO"), lang("AMDO")),
            Err(EncodeError::Unreachable { .. })
        ));
    }

    #[test]
    fn wrong_source_is_rejected() {
        assert!(single(EncodingKind::Synch, lang("AMDO")).is_err());
        assert!(single(EncodingKind::Arity, lang("AMDO")).is_err());
        assert!(single(EncodingKind::Medium, lang("AMDO")).is_err());
    }

    #[test]
    fn nonconformant_input_is_reported() {
        let p = pipeline(lang("AMDO"), lang("AMDI")).unwrap();
        assert!(matches!(
            p.encode(&parse("<a, b>")),
            Err(EncodeError::Nonconformant { .. })
        ));
    }

    #[test]
    fn medium_after_arity_keeps_the_channel_outside_the_tag() {
        let p = pipeline(lang("APCI"), lang("AMDI")).unwrap();
        let out = p.encode(&parse("'c<a, b>")).unwrap();
        assert_eq!(pretty(&out), "<c*(#r*a*b)>");
        assert_eq!(out, parse_any("<c*(#r*a*b)>").unwrap());
    }
}
