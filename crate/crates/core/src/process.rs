//! The universal process AST shared by all 24 languages.
//!
//! Slots that only some languages use (output channel, output continuation,
//! tuple length) are optional here; [`crate::conform`] decides whether a
//! given process belongs to a given language.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::fresh::{FreshNames, LevelNames};
use crate::language::Matching;
use crate::term::{subst_pattern_unchecked, Name, Pattern, SubstError, Substitution, Term};

#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Process {
    Nil,
    Output {
        channel: Option<Term>,
        args: Vec<Term>,
        cont: Option<Box<Process>>,
    },
    Input {
        channel: Option<Term>,
        patterns: Vec<Pattern>,
        cont: Box<Process>,
    },
    Restrict(Name, Box<Process>),
    Par(Box<Process>, Box<Process>),
    Cond {
        lhs: Term,
        rhs: Term,
        then: Box<Process>,
        otherwise: Box<Process>,
    },
    Repl(Box<Process>),
    Ok,
}

impl fmt::Debug for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty(self))
    }
}

impl fmt::Display for Process {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::syntax::pretty(self))
    }
}

impl Process {
    pub fn output(channel: Option<Term>, args: Vec<Term>, cont: Option<Process>) -> Process {
        Process::Output {
            channel,
            args,
            cont: cont.map(Box::new),
        }
    }

    pub fn input(channel: Option<Term>, patterns: Vec<Pattern>, cont: Process) -> Process {
        Process::Input {
            channel,
            patterns,
            cont: Box::new(cont),
        }
    }

    pub fn restrict(n: Name, body: Process) -> Process {
        Process::Restrict(n, Box::new(body))
    }

    pub fn par(left: Process, right: Process) -> Process {
        Process::Par(Box::new(left), Box::new(right))
    }

    /// Left-nested parallel composition; `0` for an empty sequence.
    pub fn par_all<I: IntoIterator<Item = Process>>(items: I) -> Process {
        items.into_iter().reduce(Process::par).unwrap_or(Process::Nil)
    }

    pub fn cond(lhs: Term, rhs: Term, then: Process, otherwise: Process) -> Process {
        Process::Cond {
            lhs,
            rhs,
            then: Box::new(then),
            otherwise: Box::new(otherwise),
        }
    }

    pub fn repl(body: Process) -> Process {
        Process::Repl(Box::new(body))
    }

    /// Nested restrictions `new n1.new n2. ... body`.
    pub fn restrict_all<I>(names: I, body: Process) -> Process
    where
        I: IntoIterator<Item = Name>,
        I::IntoIter: DoubleEndedIterator,
    {
        names
            .into_iter()
            .rev()
            .fold(body, |acc, n| Process::restrict(n, acc))
    }

    pub fn is_nil(&self) -> bool {
        matches!(self, Process::Nil)
    }

    pub fn contains_repl(&self) -> bool {
        match self {
            Process::Nil | Process::Ok => false,
            Process::Repl(_) => true,
            Process::Output { cont, .. } => cont.as_deref().is_some_and(Process::contains_repl),
            Process::Input { cont, .. } => cont.contains_repl(),
            Process::Restrict(_, p) => p.contains_repl(),
            Process::Par(l, r) => l.contains_repl() || r.contains_repl(),
            Process::Cond { then, otherwise, .. } => then.contains_repl() || otherwise.contains_repl(),
        }
    }

    /// Number of AST nodes.
    pub fn size(&self) -> usize {
        match self {
            Process::Nil | Process::Ok => 1,
            Process::Output { cont, .. } => 1 + cont.as_deref().map_or(0, Process::size),
            Process::Input { cont, .. } => 1 + cont.size(),
            Process::Restrict(_, p) | Process::Repl(p) => 1 + p.size(),
            Process::Par(l, r) => 1 + l.size() + r.size(),
            Process::Cond { then, otherwise, .. } => 1 + then.size() + otherwise.size(),
        }
    }

    /// Every name occurring anywhere, bound or free.
    pub fn names(&self) -> BTreeSet<Name> {
        let mut out = BTreeSet::new();
        self.names_into(&mut out);
        out
    }

    fn names_into(&self, out: &mut BTreeSet<Name>) {
        match self {
            Process::Nil | Process::Ok => {}
            Process::Output { channel, args, cont } => {
                if let Some(c) = channel {
                    c.names_into(out);
                }
                for a in args {
                    a.names_into(out);
                }
                if let Some(k) = cont {
                    k.names_into(out);
                }
            }
            Process::Input {
                channel,
                patterns,
                cont,
            } => {
                if let Some(c) = channel {
                    c.names_into(out);
                }
                for p in patterns {
                    p.names_into(out);
                }
                cont.names_into(out);
            }
            Process::Restrict(n, p) => {
                out.insert(n.clone());
                p.names_into(out);
            }
            Process::Par(l, r) => {
                l.names_into(out);
                r.names_into(out);
            }
            Process::Cond {
                lhs,
                rhs,
                then,
                otherwise,
            } => {
                lhs.names_into(out);
                rhs.names_into(out);
                then.names_into(out);
                otherwise.names_into(out);
            }
            Process::Repl(p) => p.names_into(out),
        }
    }

    pub fn free_names(&self) -> BTreeSet<Name> {
        free_names_proc(self)
    }

    pub fn substitute(&self, s: &Substitution) -> Process {
        apply_subst_proc(s, self)
    }
}

/// Binding names of an input, in pattern order.
pub fn input_binders(patterns: &[Pattern]) -> Vec<Name> {
    let mut out = Vec::new();
    for p in patterns {
        p.binders_into(&mut out);
    }
    out
}

/// Free names. Channels and name-match subjects are free; an input binds its
/// binding names in the continuation only; a restriction binds its name.
pub fn free_names_proc(p: &Process) -> BTreeSet<Name> {
    let mut out = BTreeSet::new();
    free_into(p, &mut out);
    out
}

fn free_into(p: &Process, out: &mut BTreeSet<Name>) {
    match p {
        Process::Nil | Process::Ok => {}
        Process::Output { channel, args, cont } => {
            if let Some(c) = channel {
                c.names_into(out);
            }
            for a in args {
                a.names_into(out);
            }
            if let Some(k) = cont {
                free_into(k, out);
            }
        }
        Process::Input {
            channel,
            patterns,
            cont,
        } => {
            if let Some(c) = channel {
                c.names_into(out);
            }
            for pat in patterns {
                pat.matched_into(out);
            }
            let mut inner = free_names_proc(cont);
            for b in input_binders(patterns) {
                inner.remove(&b);
            }
            out.extend(inner);
        }
        Process::Restrict(n, body) => {
            let mut inner = free_names_proc(body);
            inner.remove(n);
            out.extend(inner);
        }
        Process::Par(l, r) => {
            free_into(l, out);
            free_into(r, out);
        }
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => {
            lhs.names_into(out);
            rhs.names_into(out);
            free_into(then, out);
            free_into(otherwise, out);
        }
        Process::Repl(body) => free_into(body, out),
    }
}

/// Capture-avoiding substitution. Bound names that would capture a name in
/// the range are renamed to fresh `#f<n>` names; the counter skips every
/// name already present, so the result is deterministic.
pub fn apply_subst_proc(s: &Substitution, p: &Process) -> Process {
    if s.is_empty() {
        return p.clone();
    }
    let mut avoid = p.names();
    avoid.extend(s.domain());
    avoid.extend(s.range_names());
    let mut fresh = FreshNames::new("f", avoid);
    subst_proc(s, p, &mut fresh)
}

/// [`apply_subst_proc`] guarded for the target matching degree: outside the
/// intensional languages substitutions carry names only.
pub fn apply_subst_proc_checked(
    s: &Substitution,
    p: &Process,
    matching: Matching,
) -> Result<Process, SubstError> {
    if matching != Matching::Intensional {
        s.check_names_only()?;
    }
    Ok(apply_subst_proc(s, p))
}

/// Names in the images of those domain entries that actually occur free in
/// `body`.
fn hazards(s: &Substitution, body: &Process) -> BTreeSet<Name> {
    let free = free_names_proc(body);
    let mut out = BTreeSet::new();
    for (n, t) in s.iter() {
        if free.contains(n) {
            t.names_into(&mut out);
        }
    }
    out
}

fn relevant(s: &Substitution, body: &Process) -> bool {
    if s.is_empty() {
        return false;
    }
    let free = free_names_proc(body);
    s.iter().any(|(n, _)| free.contains(n))
}

pub(crate) fn subst_proc(s: &Substitution, p: &Process, fresh: &mut FreshNames) -> Process {
    match p {
        Process::Nil => Process::Nil,
        Process::Ok => Process::Ok,
        Process::Output { channel, args, cont } => Process::Output {
            channel: channel.as_ref().map(|c| s.apply_term(c)),
            args: args.iter().map(|a| s.apply_term(a)).collect(),
            cont: cont.as_ref().map(|k| Box::new(subst_proc(s, k, fresh))),
        },
        Process::Input {
            channel,
            patterns,
            cont,
        } => {
            let channel = channel.as_ref().map(|c| s.apply_term(c));
            let binders = input_binders(patterns);
            let mut inner = s.without(binders.iter());
            let mut patterns: Vec<Pattern> =
                patterns.iter().map(|pat| subst_pattern_unchecked(s, pat)).collect();
            if !relevant(&inner, cont) {
                return Process::Input {
                    channel,
                    patterns,
                    cont: cont.clone(),
                };
            }
            let danger = hazards(&inner, cont);
            let mut renaming = BTreeMap::new();
            for b in binders {
                if danger.contains(&b) {
                    let b2 = fresh.fresh();
                    inner.insert(b.clone(), Term::Name(b2.clone()));
                    renaming.insert(b, b2);
                }
            }
            if !renaming.is_empty() {
                patterns = patterns.iter().map(|pat| pat.rename_binders(&renaming)).collect();
            }
            Process::Input {
                channel,
                patterns,
                cont: Box::new(subst_proc(&inner, cont, fresh)),
            }
        }
        Process::Restrict(n, body) => {
            let mut inner = s.without([n]);
            if !relevant(&inner, body) {
                return p.clone();
            }
            if hazards(&inner, body).contains(n) {
                let n2 = fresh.fresh();
                inner.insert(n.clone(), Term::Name(n2.clone()));
                Process::restrict(n2, subst_proc(&inner, body, fresh))
            } else {
                Process::restrict(n.clone(), subst_proc(&inner, body, fresh))
            }
        }
        Process::Par(l, r) => Process::par(subst_proc(s, l, fresh), subst_proc(s, r, fresh)),
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => Process::cond(
            s.apply_term(lhs),
            s.apply_term(rhs),
            subst_proc(s, then, fresh),
            subst_proc(s, otherwise, fresh),
        ),
        Process::Repl(body) => Process::repl(subst_proc(s, body, fresh)),
    }
}

pub(crate) fn rename_term(t: &Term, env: &BTreeMap<Name, Name>) -> Term {
    match t {
        Term::Name(n) => Term::Name(env.get(n).cloned().unwrap_or_else(|| n.clone())),
        Term::Compound(l, r) => Term::compound(rename_term(l, env), rename_term(r, env)),
    }
}

pub(crate) fn rename_matched(p: &Pattern, env: &BTreeMap<Name, Name>) -> Pattern {
    match p {
        Pattern::Bind(n) => Pattern::Bind(n.clone()),
        Pattern::Match(n) => Pattern::Match(env.get(n).cloned().unwrap_or_else(|| n.clone())),
        Pattern::Compound(l, r) => Pattern::compound(rename_matched(l, env), rename_matched(r, env)),
    }
}

/// Renames every bound name to its binder depth (`#n<level>`), leaving the
/// shape untouched. Two processes are alpha-equivalent exactly when their
/// free names agree and these forms are equal.
pub fn alpha_normal(p: &Process) -> Process {
    let mut levels = LevelNames::new(free_names_proc(p));
    alpha_rename(p, &BTreeMap::new(), 0, &mut levels)
}

pub(crate) fn alpha_rename(
    p: &Process,
    env: &BTreeMap<Name, Name>,
    level: usize,
    levels: &mut LevelNames,
) -> Process {
    match p {
        Process::Nil => Process::Nil,
        Process::Ok => Process::Ok,
        Process::Output { channel, args, cont } => Process::Output {
            channel: channel.as_ref().map(|c| rename_term(c, env)),
            args: args.iter().map(|a| rename_term(a, env)).collect(),
            cont: cont.as_ref().map(|k| Box::new(alpha_rename(k, env, level, levels))),
        },
        Process::Input {
            channel,
            patterns,
            cont,
        } => {
            let channel = channel.as_ref().map(|c| rename_term(c, env));
            let patterns: Vec<Pattern> = patterns.iter().map(|pat| rename_matched(pat, env)).collect();
            let binders = input_binders(&patterns);
            let mut local = BTreeMap::new();
            let mut inner = env.clone();
            for (i, b) in binders.iter().enumerate() {
                let canon = levels.level(level + i);
                local.insert(b.clone(), canon.clone());
                inner.insert(b.clone(), canon);
            }
            let patterns = patterns.iter().map(|pat| pat.rename_binders(&local)).collect();
            Process::Input {
                channel,
                patterns,
                cont: Box::new(alpha_rename(cont, &inner, level + binders.len(), levels)),
            }
        }
        Process::Restrict(n, body) => {
            let canon = levels.level(level);
            let mut inner = env.clone();
            inner.insert(n.clone(), canon.clone());
            Process::restrict(canon, alpha_rename(body, &inner, level + 1, levels))
        }
        Process::Par(l, r) => Process::par(
            alpha_rename(l, env, level, levels),
            alpha_rename(r, env, level, levels),
        ),
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => Process::cond(
            rename_term(lhs, env),
            rename_term(rhs, env),
            alpha_rename(then, env, level, levels),
            alpha_rename(otherwise, env, level, levels),
        ),
        Process::Repl(body) => Process::repl(alpha_rename(body, env, level, levels)),
    }
}

/// Equality up to consistent renaming of bound names.
pub fn alpha_eq(p: &Process, q: &Process) -> bool {
    let fp = free_names_proc(p);
    if fp != free_names_proc(q) {
        return false;
    }
    let mut lp = LevelNames::new(fp.clone());
    let mut lq = LevelNames::new(fp);
    alpha_rename(p, &BTreeMap::new(), 0, &mut lp) == alpha_rename(q, &BTreeMap::new(), 0, &mut lq)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_unchecked as parse;
    use crate::term::name;

    fn set(xs: &[&str]) -> BTreeSet<Name> {
        xs.iter().map(|x| name(x)).collect()
    }

    #[test]
    fn free_names_examples() {
        assert_eq!(free_names_proc(&parse("(x).<x>")), set(&[]));
        assert_eq!(free_names_proc(&parse("'a(=b, y).<y*b>")), set(&["a", "b"]));
        assert_eq!(free_names_proc(&parse("new a.<a>")), set(&[]));
        assert_eq!(free_names_proc(&parse("(x*=x).<x>")), set(&["x"]));
        assert_eq!(free_names_proc(&parse("if a = b then ok else <c>")), set(&["a", "b", "c"]));
    }

    #[test]
    fn substitution_examples() {
        let s = Substitution::singleton(name("x"), Term::Name(name("a")));
        assert_eq!(apply_subst_proc(&s, &parse("<x> | (z).0")), parse("<a> | (z).0"));

        // capture avoidance renames the restriction
        let out = apply_subst_proc(&s, &parse("new a.<x>"));
        assert_eq!(out, parse("new #f0.<a>"));
        assert!(alpha_eq(&out, &parse("new b.<a>")));

        // binding names shadow the domain
        assert_eq!(apply_subst_proc(&s, &parse("(x).<x>")), parse("(x).<x>"));

        // input binder renamed when it would capture
        let s = Substitution::singleton(name("w"), Term::Name(name("y")));
        let out = apply_subst_proc(&s, &parse("(y).<w*y>"));
        assert!(alpha_eq(&out, &parse("(q).<y*q>")));
    }

    #[test]
    fn substitution_into_name_matches_expands() {
        let s = Substitution::singleton(
            name("y"),
            Term::compound(Term::Name(name("a")), Term::Name(name("b"))),
        );
        assert_eq!(apply_subst_proc(&s, &parse("(=y*z).ok")), parse("(=a*=b*z).ok"));
    }

    #[test]
    fn checked_substitution_rejects_terms_outside_intensional() {
        let s = Substitution::singleton(
            name("x"),
            Term::compound(Term::Name(name("a")), Term::Name(name("b"))),
        );
        let p = parse("<x>");
        assert!(apply_subst_proc_checked(&s, &p, Matching::NameMatch).is_err());
        assert!(apply_subst_proc_checked(&s, &p, Matching::Intensional).is_ok());
    }

    #[test]
    fn alpha_equivalence() {
        assert!(alpha_eq(&parse("new a.<a>"), &parse("new b.<b>")));
        assert!(alpha_eq(&parse("(x).<x>"), &parse("(y).<y>")));
        assert!(!alpha_eq(&parse("<a>"), &parse("<b>")));
        assert!(!alpha_eq(&parse("new a.new b.<a>"), &parse("new a.new b.<b>")));
        assert!(alpha_eq(&parse("new a.new a.<a>"), &parse("new a.new b.<b>")));
        // bound name colliding with a reserved free name
        assert!(!alpha_eq(&parse("new a.<#n0, a>"), &parse("new a.<a, a>")));
        assert!(alpha_eq(&parse("(x, y).<y>"), &parse("(u, v).<v>")));
        assert!(!alpha_eq(&parse("(x, y).<y>"), &parse("(u, v).<u>")));
    }
}
