//! Membership of a process in a language.

use std::fmt;

use crate::language::{Language, Matching};
use crate::process::Process;
use crate::term::{duplicate_binder, pattern_class, Name, Term};

/// Path from the root of a process to one of its sub-processes.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Position(Vec<&'static str>);

impl Position {
    pub fn root() -> Self {
        Position(Vec::new())
    }

    pub fn child(&self, step: &'static str) -> Position {
        let mut steps = self.0.clone();
        steps.push(step);
        Position(steps)
    }

    pub fn steps(&self) -> &[&'static str] {
        &self.0
    }
}

impl fmt::Display for Position {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("$")?;
        for s in &self.0 {
            write!(f, ".{s}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Feature {
    /// Output or input names a channel in a dataspace language.
    ChannelPresent,
    ChannelMissing,
    /// Output carries a continuation in an asynchronous language.
    ContinuationPresent,
    ContinuationMissing,
    /// Tuple of length other than one in a monadic language.
    Polyadic(usize),
    EmptyTuple,
    PatternClass { found: Matching, allowed: Matching },
    CompoundTerm,
    CompoundChannel,
    CompoundCondition,
    DuplicateBinder(Name),
}

impl fmt::Display for Feature {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Feature::ChannelPresent => f.write_str("channel present in a dataspace language"),
            Feature::ChannelMissing => f.write_str("channel missing in a channel-based language"),
            Feature::ContinuationPresent => {
                f.write_str("output continuation present in an asynchronous language")
            }
            Feature::ContinuationMissing => {
                f.write_str("output continuation missing in a synchronous language")
            }
            Feature::Polyadic(n) => write!(f, "tuple of arity {n} in a monadic language"),
            Feature::EmptyTuple => f.write_str("empty tuple"),
            Feature::PatternClass { found, allowed } => {
                let need = match found {
                    Matching::Intensional => "compound pattern needs I",
                    Matching::NameMatch => "name-match pattern needs NM",
                    Matching::NoMatch => "binding pattern",
                };
                write!(f, "{need} (language allows {allowed})")
            }
            Feature::CompoundTerm => f.write_str("compound output term needs I"),
            Feature::CompoundChannel => f.write_str("compound channel term needs I"),
            Feature::CompoundCondition => f.write_str("compound conditional term needs I"),
            Feature::DuplicateBinder(n) => write!(f, "binding name `{n}` occurs twice in one input"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Violation {
    pub position: Position,
    pub feature: Feature,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {}: {}", self.position, self.feature)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConformOptions {
    /// Restrict conditional terms to names outside the intensional
    /// languages.
    pub names_only_conditions: bool,
}

impl Default for ConformOptions {
    fn default() -> Self {
        ConformOptions {
            names_only_conditions: true,
        }
    }
}

/// Violations of `lang`'s production table; empty iff `p` belongs to it.
pub fn conforms(p: &Process, lang: &Language) -> Vec<Violation> {
    conforms_with(p, lang, ConformOptions::default())
}

pub fn is_conformant(p: &Process, lang: &Language) -> bool {
    conforms(p, lang).is_empty()
}

pub fn conforms_with(p: &Process, lang: &Language, opts: ConformOptions) -> Vec<Violation> {
    let mut out = Vec::new();
    check(p, lang, opts, Position::root(), &mut out);
    out
}

fn check(p: &Process, lang: &Language, opts: ConformOptions, at: Position, out: &mut Vec<Violation>) {
    let mut flag = |feature: Feature| {
        out.push(Violation {
            position: at.clone(),
            feature,
        })
    };
    let intensional = lang.matching == Matching::Intensional;
    match p {
        Process::Nil | Process::Ok => {}
        Process::Output { channel, args, cont } => {
            check_channel(channel.as_ref(), lang, &mut flag);
            check_arity(args.len(), lang, &mut flag);
            if !intensional && args.iter().any(Term::is_compound) {
                flag(Feature::CompoundTerm);
            }
            match (cont, lang.is_synchronous()) {
                (Some(_), false) => flag(Feature::ContinuationPresent),
                (None, true) => flag(Feature::ContinuationMissing),
                _ => {}
            }
            if let Some(k) = cont {
                check(k, lang, opts, at.child("cont"), out);
            }
        }
        Process::Input {
            channel,
            patterns,
            cont,
        } => {
            check_channel(channel.as_ref(), lang, &mut flag);
            check_arity(patterns.len(), lang, &mut flag);
            for pat in patterns {
                let found = pattern_class(pat);
                if found > lang.matching {
                    flag(Feature::PatternClass {
                        found,
                        allowed: lang.matching,
                    });
                }
            }
            if let Some(d) = duplicate_binder(patterns) {
                flag(Feature::DuplicateBinder(d));
            }
            check(cont, lang, opts, at.child("cont"), out);
        }
        Process::Restrict(_, body) => check(body, lang, opts, at.child("body"), out),
        Process::Par(l, r) => {
            check(l, lang, opts, at.child("left"), out);
            check(r, lang, opts, at.child("right"), out);
        }
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => {
            if opts.names_only_conditions && !intensional && (lhs.is_compound() || rhs.is_compound()) {
                flag(Feature::CompoundCondition);
            }
            check(then, lang, opts, at.child("then"), out);
            check(otherwise, lang, opts, at.child("else"), out);
        }
        Process::Repl(body) => check(body, lang, opts, at.child("body"), out),
    }
}

fn check_channel(channel: Option<&Term>, lang: &Language, flag: &mut impl FnMut(Feature)) {
    match (channel, lang.has_channels()) {
        (Some(_), false) => flag(Feature::ChannelPresent),
        (None, true) => flag(Feature::ChannelMissing),
        (Some(c), true) if c.is_compound() && !lang.is_intensional() => flag(Feature::CompoundChannel),
        _ => {}
    }
}

fn check_arity(n: usize, lang: &Language, flag: &mut impl FnMut(Feature)) {
    if n == 0 {
        flag(Feature::EmptyTuple);
    } else if n > 1 && !lang.is_polyadic() {
        flag(Feature::Polyadic(n));
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_unchecked as parse;

    fn lang(code: &str) -> Language {
        code.parse().unwrap()
    }

    fn features(p: &str, l: &str) -> Vec<Feature> {
        conforms(&parse(p), &lang(l)).into_iter().map(|v| v.feature).collect()
    }

    #[test]
    fn production_table_examples() {
        assert!(features("<a>", "AMDO").is_empty());
        assert_eq!(
            features("'c<a>.ok", "AMDO"),
            vec![Feature::ChannelPresent, Feature::ContinuationPresent]
        );
        assert_eq!(
            features("(x*y).0", "AMDN"),
            vec![Feature::PatternClass {
                found: Matching::Intensional,
                allowed: Matching::NameMatch
            }]
        );
    }

    #[test]
    fn slot_and_shape_violations() {
        assert_eq!(features("<a>", "SMDO"), vec![Feature::ContinuationMissing]);
        assert_eq!(features("<a>", "AMCO"), vec![Feature::ChannelMissing]);
        assert_eq!(features("<a, b>", "AMDO"), vec![Feature::Polyadic(2)]);
        assert!(features("<a, b>", "APDO").is_empty());
        assert!(features("<a>", "APDO").is_empty());
        assert_eq!(features("<a*b>", "APDN"), vec![Feature::CompoundTerm]);
        assert_eq!(features("'(a*b)<c>", "AMCN"), vec![Feature::CompoundChannel]);
        assert!(features("'(a*b)<c>", "AMCI").is_empty());
        assert_eq!(
            features("(=a).0", "AMDO"),
            vec![Feature::PatternClass {
                found: Matching::NameMatch,
                allowed: Matching::NoMatch
            }]
        );
        assert_eq!(
            features("if a*b = c then 0 else 0", "AMDN"),
            vec![Feature::CompoundCondition]
        );
        let relaxed = ConformOptions {
            names_only_conditions: false,
        };
        assert!(conforms_with(&parse("if a*b = c then 0 else 0"), &lang("AMDN"), relaxed).is_empty());
    }

    #[test]
    fn duplicate_binders_across_a_tuple() {
        use crate::term::{name, Pattern};
        let x = || Pattern::Bind(name("x"));
        let p = Process::input(None, vec![x(), x()], Process::Nil);
        let found: Vec<_> = conforms(&p, &lang("APDO")).into_iter().map(|v| v.feature).collect();
        assert_eq!(found, vec![Feature::DuplicateBinder(name("x"))]);
    }

    #[test]
    fn positions_point_at_the_offending_node() {
        let v = conforms(&parse("<a> | (x).<b, c>"), &lang("AMDO"));
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].position.to_string(), "$.right.cont");
    }
}
