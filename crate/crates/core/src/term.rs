//! Names, terms, patterns, substitutions, and the match rules.
//!
//! Terms are binary trees of names built with the compound operator.
//! Patterns mirror terms but have two kinds of leaves: binding names, which
//! capture whatever they meet, and name-matches, which only accept an exact
//! name. A name-match over a compound term is always stored expanded into a
//! compound of name-matches, so [`Pattern::Match`] only ever holds a name and
//! matching is purely structural.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::Arc;

use thiserror::Error;

use crate::language::Matching;

/// A name. Names starting with `#` are reserved for encodings and canonical
/// forms; source programs cannot mention them.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name(Arc<str>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid name `{0}`")]
pub struct NameError(pub String);

impl Name {
    /// Builds a name, checking the lexical rules: nonempty, first character
    /// alphabetic or `#`, the rest alphanumeric or `_`.
    pub fn new(text: &str) -> Result<Name, NameError> {
        let mut chars = text.chars();
        let ok = match chars.next() {
            Some('#') => {
                let rest = &text[1..];
                !rest.is_empty() && rest.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            Some(c) if c.is_ascii_alphabetic() => {
                chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
            }
            _ => false,
        };
        if ok {
            Ok(Name(Arc::from(text)))
        } else {
            Err(NameError(text.to_string()))
        }
    }

    /// A reserved name `#<suffix>`.
    pub fn reserved(suffix: &str) -> Name {
        Name::new(&format!("#{suffix}")).expect("reserved name suffix must be alphanumeric")
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }

    pub fn is_reserved(&self) -> bool {
        self.0.starts_with('#')
    }
}

impl fmt::Debug for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

/// Builds a name from a literal; panics on invalid input. Intended for tests
/// and fixed names inside the crate.
pub fn name(text: &str) -> Name {
    Name::new(text).unwrap_or_else(|e| panic!("{e}"))
}

/// `s, t ::= a | s * t`
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Name(Name),
    Compound(Box<Term>, Box<Term>),
}

impl Term {
    pub fn name(n: Name) -> Term {
        Term::Name(n)
    }

    pub fn compound(left: Term, right: Term) -> Term {
        Term::Compound(Box::new(left), Box::new(right))
    }

    /// Left-nested compound of a nonempty sequence: `((t1 * t2) * ...) * tn`.
    pub fn spine<I: IntoIterator<Item = Term>>(items: I) -> Option<Term> {
        items.into_iter().reduce(Term::compound)
    }

    pub fn as_name(&self) -> Option<&Name> {
        match self {
            Term::Name(n) => Some(n),
            Term::Compound(..) => None,
        }
    }

    pub fn is_compound(&self) -> bool {
        matches!(self, Term::Compound(..))
    }

    /// Depth with names at depth 1.
    pub fn depth(&self) -> usize {
        match self {
            Term::Name(_) => 1,
            Term::Compound(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    pub fn names_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Term::Name(n) => {
                out.insert(n.clone());
            }
            Term::Compound(l, r) => {
                l.names_into(out);
                r.names_into(out);
            }
        }
    }

    pub fn mentions(&self, n: &Name) -> bool {
        match self {
            Term::Name(m) => m == n,
            Term::Compound(l, r) => l.mentions(n) || r.mentions(n),
        }
    }
}

impl From<Name> for Term {
    fn from(n: Name) -> Term {
        Term::Name(n)
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::pretty_term(self))
    }
}

/// Set of all names in a term.
pub fn free_names_term(t: &Term) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    t.names_into(&mut out);
    out
}

/// `p, q ::= x | =a | p * q`
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Pattern {
    Bind(Name),
    Match(Name),
    Compound(Box<Pattern>, Box<Pattern>),
}

impl Pattern {
    pub fn bind(n: Name) -> Pattern {
        Pattern::Bind(n)
    }

    /// Name-match of an arbitrary term, expanded so that `=(s*t)` becomes
    /// `=s * =t`.
    pub fn name_match(subject: &Term) -> Pattern {
        match subject {
            Term::Name(n) => Pattern::Match(n.clone()),
            Term::Compound(l, r) => Pattern::compound(Pattern::name_match(l), Pattern::name_match(r)),
        }
    }

    pub fn compound(left: Pattern, right: Pattern) -> Pattern {
        Pattern::Compound(Box::new(left), Box::new(right))
    }

    pub fn spine<I: IntoIterator<Item = Pattern>>(items: I) -> Option<Pattern> {
        items.into_iter().reduce(Pattern::compound)
    }

    pub fn depth(&self) -> usize {
        match self {
            Pattern::Bind(_) | Pattern::Match(_) => 1,
            Pattern::Compound(l, r) => 1 + l.depth().max(r.depth()),
        }
    }

    /// Binding names in left-to-right order, duplicates kept.
    pub fn binders(&self) -> Vec<Name> {
        let mut out = Vec::new();
        self.binders_into(&mut out);
        out
    }

    pub fn binders_into(&self, out: &mut Vec<Name>) {
        match self {
            Pattern::Bind(n) => out.push(n.clone()),
            Pattern::Match(_) => {}
            Pattern::Compound(l, r) => {
                l.binders_into(out);
                r.binders_into(out);
            }
        }
    }

    pub fn matched_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Pattern::Bind(_) => {}
            Pattern::Match(n) => {
                out.insert(n.clone());
            }
            Pattern::Compound(l, r) => {
                l.matched_into(out);
                r.matched_into(out);
            }
        }
    }

    /// All names occurring in the pattern, binding or matched.
    pub fn names_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Pattern::Bind(n) | Pattern::Match(n) => {
                out.insert(n.clone());
            }
            Pattern::Compound(l, r) => {
                l.names_into(out);
                r.names_into(out);
            }
        }
    }

    /// Renames binding names only; name-match subjects are left alone.
    pub fn rename_binders(&self, map: &BTreeMap<Name, Name>) -> Pattern {
        match self {
            Pattern::Bind(n) => Pattern::Bind(map.get(n).cloned().unwrap_or_else(|| n.clone())),
            Pattern::Match(n) => Pattern::Match(n.clone()),
            Pattern::Compound(l, r) => Pattern::compound(l.rename_binders(map), r.rename_binders(map)),
        }
    }
}

impl fmt::Debug for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", crate::syntax::pretty_pattern(self))
    }
}

/// Binding names and matched names of a pattern. Returned even when the
/// pattern is ill-formed.
pub fn pattern_names(p: &Pattern) -> (BTreeSet<Name>, BTreeSet<Name>) {
    let binding = p.binders().into_iter().collect();
    let mut matched = BTreeSet::new();
    p.matched_into(&mut matched);
    (binding, matched)
}

/// A pattern is well-formed iff its binding names are pairwise distinct.
pub fn is_well_formed(p: &Pattern) -> bool {
    distinct(&p.binders())
}

/// Well-formedness of a whole input: binding names distinct across every
/// pattern of the sequence.
pub fn sequence_well_formed(ps: &[Pattern]) -> bool {
    let mut all = Vec::new();
    for p in ps {
        p.binders_into(&mut all);
    }
    distinct(&all)
}

/// First binding name that occurs twice across a pattern sequence.
pub fn duplicate_binder(ps: &[Pattern]) -> Option<Name> {
    let mut seen = BTreeSet::new();
    for p in ps {
        for b in p.binders() {
            if !seen.insert(b.clone()) {
                return Some(b);
            }
        }
    }
    None
}

fn distinct(names: &[Name]) -> bool {
    let set: BTreeSet<&Name> = names.iter().collect();
    set.len() == names.len()
}

/// Least matching degree admitting the pattern.
pub fn pattern_class(p: &Pattern) -> Matching {
    match p {
        Pattern::Bind(_) => Matching::NoMatch,
        Pattern::Match(_) => Matching::NameMatch,
        Pattern::Compound(..) => Matching::Intensional,
    }
}

/// Finite map from names to terms.
#[derive(Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Substitution {
    bindings: BTreeMap<Name, Term>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubstError {
    #[error("substitution would capture binding name `{0}`")]
    Capture(Name),
    #[error("substitution maps `{0}` to a compound term, which a non-intensional language cannot carry")]
    CompoundInNonIntensional(Name),
}

impl Substitution {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn singleton(n: Name, t: Term) -> Self {
        let mut s = Self::new();
        s.bindings.insert(n, t);
        s
    }

    pub fn from_pairs<I: IntoIterator<Item = (Name, Term)>>(pairs: I) -> Self {
        Substitution {
            bindings: pairs.into_iter().collect(),
        }
    }

    pub fn insert(&mut self, n: Name, t: Term) -> Option<Term> {
        self.bindings.insert(n, t)
    }

    pub fn get(&self, n: &Name) -> Option<&Term> {
        self.bindings.get(n)
    }

    pub fn is_empty(&self) -> bool {
        self.bindings.is_empty()
    }

    pub fn len(&self) -> usize {
        self.bindings.len()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Name, &Term)> {
        self.bindings.iter()
    }

    pub fn domain(&self) -> BTreeSet<Name> {
        self.bindings.keys().cloned().collect()
    }

    /// Names occurring in the images.
    pub fn range_names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        for t in self.bindings.values() {
            t.names_into(&mut out);
        }
        out
    }

    pub fn names_only(&self) -> bool {
        self.bindings.values().all(|t| !t.is_compound())
    }

    /// Rejects compound images; substitutions in non-intensional languages
    /// map names to names.
    pub fn check_names_only(&self) -> Result<(), SubstError> {
        match self.bindings.iter().find(|(_, t)| t.is_compound()) {
            Some((n, _)) => Err(SubstError::CompoundInNonIntensional(n.clone())),
            None => Ok(()),
        }
    }

    /// Copy without the given names in the domain.
    pub fn without<'a, I: IntoIterator<Item = &'a Name>>(&self, names: I) -> Substitution {
        let mut out = self.clone();
        for n in names {
            out.bindings.remove(n);
        }
        out
    }

    /// Disjoint union; `None` when the domains overlap.
    pub fn disjoint_union(mut self, other: Substitution) -> Option<Substitution> {
        for (n, t) in other.bindings {
            if self.bindings.insert(n, t).is_some() {
                return None;
            }
        }
        Some(self)
    }

    pub fn apply_name(&self, n: &Name) -> Term {
        self.bindings.get(n).cloned().unwrap_or_else(|| Term::Name(n.clone()))
    }

    pub fn apply_term(&self, t: &Term) -> Term {
        apply_subst_term(self, t)
    }
}

impl fmt::Debug for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Written `{a/x, b*c/y}`: image first, then the replaced name.
impl fmt::Display for Substitution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, (n, t)) in self.bindings.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{}/{}", crate::syntax::pretty_term(t), n)?;
        }
        f.write_str("}")
    }
}

/// Simultaneous replacement of every name in the domain.
pub fn apply_subst_term(s: &Substitution, t: &Term) -> Term {
    if s.is_empty() {
        return t.clone();
    }
    match t {
        Term::Name(n) => s.apply_name(n),
        Term::Compound(l, r) => Term::compound(apply_subst_term(s, l), apply_subst_term(s, r)),
    }
}

/// Applies a substitution to a pattern. Binding names are left untouched;
/// name-match subjects are substituted and expanded when they become
/// compound. Fails when a binding name occurs in the range of the
/// substitution, since it would capture that occurrence in the continuation;
/// callers rename binders first.
pub fn apply_subst_pattern(s: &Substitution, p: &Pattern) -> Result<Pattern, SubstError> {
    let range = s.range_names();
    if let Some(b) = p.binders().into_iter().find(|b| range.contains(b)) {
        return Err(SubstError::Capture(b));
    }
    Ok(subst_pattern_unchecked(s, p))
}

pub(crate) fn subst_pattern_unchecked(s: &Substitution, p: &Pattern) -> Pattern {
    match p {
        Pattern::Bind(n) => Pattern::Bind(n.clone()),
        Pattern::Match(n) => match s.get(n) {
            Some(t) => Pattern::name_match(t),
            None => Pattern::Match(n.clone()),
        },
        Pattern::Compound(l, r) => {
            Pattern::compound(subst_pattern_unchecked(s, l), subst_pattern_unchecked(s, r))
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("ill-formed pattern: binding name `{0}` occurs more than once")]
    IllFormed(Name),
}

/// Matches one term against one pattern. `Ok(None)` is the undefined match.
pub fn match_one(t: &Term, p: &Pattern) -> Result<Option<Substitution>, MatchError> {
    if let Some(d) = duplicate_binder(std::slice::from_ref(p)) {
        return Err(MatchError::IllFormed(d));
    }
    Ok(match_term(t, p))
}

/// Matching without the well-formedness check; patterns reaching the
/// reduction engine were validated when they were built.
pub(crate) fn match_term(t: &Term, p: &Pattern) -> Option<Substitution> {
    let mut out = Substitution::new();
    if match_into(t, p, &mut out) {
        Some(out)
    } else {
        None
    }
}

fn match_into(t: &Term, p: &Pattern, acc: &mut Substitution) -> bool {
    match (p, t) {
        (Pattern::Bind(x), _) => {
            acc.insert(x.clone(), t.clone());
            true
        }
        (Pattern::Match(a), Term::Name(b)) => a == b,
        (Pattern::Match(_), Term::Compound(..)) => false,
        (Pattern::Compound(pl, pr), Term::Compound(tl, tr)) => {
            match_into(tl, pl, acc) && match_into(tr, pr, acc)
        }
        (Pattern::Compound(..), Term::Name(_)) => false,
    }
}

/// Pointwise match of a term sequence against a pattern sequence.
pub fn poly_match(ts: &[Term], ps: &[Pattern]) -> Result<Option<Substitution>, MatchError> {
    if let Some(d) = duplicate_binder(ps) {
        return Err(MatchError::IllFormed(d));
    }
    Ok(poly_match_unchecked(ts, ps))
}

pub(crate) fn poly_match_unchecked(ts: &[Term], ps: &[Pattern]) -> Option<Substitution> {
    if ts.len() != ps.len() {
        return None;
    }
    let mut acc = Substitution::new();
    for (t, p) in ts.iter().zip(ps) {
        if !match_into(t, p, &mut acc) {
            return None;
        }
    }
    Some(acc)
}
