//! Normal forms for structural congruence.
//!
//! Every process position that holds a parallel composition is treated as a
//! block: a set of restricted names over a multiset of threads. Within a
//! block, `0` threads vanish, restrictions are pulled to the front, unused
//! restrictions are dropped, and conditionals are resolved unless they test
//! a name bound by an enclosing input. Bound names are then renamed to
//! binder-depth names `#n<i>`:
//! the restrictions of a block get consecutive levels, ordered so that the
//! rendered thread list is minimal, and the threads are sorted by their
//! rendering.
//!
//! Two processes with equal canonical forms are structurally congruent.
//! Replication is never unfolded here, so `!P` and `P | !P` stay apart.

use std::collections::{BTreeMap, BTreeSet};

use crate::fresh::{FreshNames, LevelNames};
use crate::process::{free_names_proc, input_binders, Process};
use crate::syntax::pretty;
use crate::term::{Name, Pattern, Term};

/// Above this many candidate orderings of one block's restrictions, the
/// signature order is taken as is. The form is then still congruent to the
/// input but may differ from that of an alpha-variant.
pub const PERMUTATION_CAP: usize = 720;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalForm {
    /// Top-level restrictions, `#n0`, `#n1`, ... in level order.
    pub restricted: Vec<Name>,
    /// Sorted by rendering. Each is an output, input, replication, or `ok`.
    pub threads: Vec<Process>,
}

impl CanonicalForm {
    pub fn to_process(&self) -> Process {
        Process::restrict_all(self.restricted.clone(), Process::par_all(self.threads.clone()))
    }

    pub fn has_ok(&self) -> bool {
        self.threads.iter().any(|t| matches!(t, Process::Ok))
    }

    pub fn is_nil(&self) -> bool {
        self.threads.is_empty()
    }
}

impl std::fmt::Display for CanonicalForm {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&pretty(&self.to_process()))
    }
}

pub fn canonicalize(p: &Process) -> CanonicalForm {
    let mut cx = Canon::new(p);
    let unique = cx.uniquify(p, &BTreeMap::new());
    let unique = resolve_conditionals(&unique, &BTreeSet::new());
    let (restricted, threads) = cx.block(&unique, 0, &BTreeSet::new());
    CanonicalForm {
        restricted,
        threads,
    }
}

/// Canonical process: [`canonicalize`] read back as a process.
pub fn normalize(p: &Process) -> Process {
    canonicalize(p).to_process()
}

pub fn struct_eq(p: &Process, q: &Process) -> bool {
    canonicalize(p) == canonicalize(q)
}

struct Canon {
    temps: FreshNames,
    levels: LevelNames,
    self_mark: Name,
    other_mark: Name,
}

impl Canon {
    fn new(p: &Process) -> Self {
        Canon {
            temps: FreshNames::new("u", p.names()),
            levels: LevelNames::new(free_names_proc(p)),
            self_mark: Name::reserved("zself"),
            other_mark: Name::reserved("zother"),
        }
    }

    /// Gives every binder a distinct temporary name so that later renamings
    /// can act on all occurrences at once.
    fn uniquify(&mut self, p: &Process, env: &BTreeMap<Name, Name>) -> Process {
        match p {
            Process::Nil => Process::Nil,
            Process::Ok => Process::Ok,
            Process::Output { channel, args, cont } => Process::Output {
                channel: channel.as_ref().map(|c| rename_term(c, env)),
                args: args.iter().map(|a| rename_term(a, env)).collect(),
                cont: cont.as_ref().map(|k| Box::new(self.uniquify(k, env))),
            },
            Process::Input {
                channel,
                patterns,
                cont,
            } => {
                let channel = channel.as_ref().map(|c| rename_term(c, env));
                let mut local = BTreeMap::new();
                let mut inner = env.clone();
                for b in input_binders(patterns) {
                    let t = self.temps.fresh();
                    local.insert(b.clone(), t.clone());
                    inner.insert(b, t);
                }
                let patterns = patterns
                    .iter()
                    .map(|pat| rename_pattern_matched(pat, env).rename_binders(&local))
                    .collect();
                Process::Input {
                    channel,
                    patterns,
                    cont: Box::new(self.uniquify(cont, &inner)),
                }
            }
            Process::Restrict(n, body) => {
                let t = self.temps.fresh();
                let mut inner = env.clone();
                inner.insert(n.clone(), t.clone());
                Process::restrict(t, self.uniquify(body, &inner))
            }
            Process::Par(l, r) => Process::par(self.uniquify(l, env), self.uniquify(r, env)),
            Process::Cond {
                lhs,
                rhs,
                then,
                otherwise,
            } => Process::cond(
                rename_term(lhs, env),
                rename_term(rhs, env),
                self.uniquify(then, env),
                self.uniquify(otherwise, env),
            ),
            Process::Repl(body) => Process::repl(self.uniquify(body, env)),
        }
    }

    /// Canonical block at binder depth `level`. Every name free in `p` other
    /// than its own restrictions is already final.
    fn block(&mut self, p: &Process, level: usize, bound: &BTreeSet<Name>) -> (Vec<Name>, Vec<Process>) {
        let mut restricted = Vec::new();
        let mut raw = Vec::new();
        flatten(p, bound, &mut restricted, &mut raw);
        let mut used = BTreeSet::new();
        for t in &raw {
            used.extend(free_names_proc(t));
        }
        restricted.retain(|r| used.contains(r));
        let k = restricted.len();
        if k == 0 {
            let threads = self.sorted_threads(&raw, level, bound);
            return (Vec::new(), threads);
        }

        let mut signed: Vec<(Vec<String>, Name)> = restricted
            .iter()
            .map(|r| (self.signature(r, &restricted, &raw, level + k, bound), r.clone()))
            .collect();
        signed.sort();
        let mut classes: Vec<Vec<Name>> = Vec::new();
        let mut prev: Option<&Vec<String>> = None;
        for (sig, r) in &signed {
            if prev == Some(sig) {
                classes.last_mut().expect("class exists").push(r.clone());
            } else {
                classes.push(vec![r.clone()]);
            }
            prev = Some(sig);
        }
        let total = classes
            .iter()
            .try_fold(1usize, |acc, c| acc.checked_mul(factorial(c.len())))
            .unwrap_or(usize::MAX);
        let orders: Vec<Vec<Name>> = if total <= PERMUTATION_CAP {
            class_orders(&classes)
        } else {
            vec![classes.concat()]
        };

        let canon: Vec<Name> = (0..k).map(|i| self.levels.level(level + i)).collect();
        let mut best: Option<(String, Vec<Process>)> = None;
        for order in orders {
            let map: BTreeMap<Name, Name> = order.iter().cloned().zip(canon.iter().cloned()).collect();
            let renamed: Vec<Process> = raw.iter().map(|t| rename_all(t, &map)).collect();
            let threads = self.sorted_threads(&renamed, level + k, bound);
            let key = join_rendered(&threads);
            if best.as_ref().is_none_or(|(b, _)| key < *b) {
                best = Some((key, threads));
            }
        }
        (canon, best.expect("at least one ordering").1)
    }

    /// Rendered threads mentioning `r`, with `r` and its siblings replaced by
    /// markers. Invariant under renaming of the block's restrictions.
    fn signature(
        &mut self,
        r: &Name,
        siblings: &[Name],
        raw: &[Process],
        level: usize,
        bound: &BTreeSet<Name>,
    ) -> Vec<String> {
        let map: BTreeMap<Name, Name> = siblings
            .iter()
            .map(|s| {
                let mark = if s == r { &self.self_mark } else { &self.other_mark };
                (s.clone(), mark.clone())
            })
            .collect();
        let mut out: Vec<String> = raw
            .iter()
            .filter(|t| free_names_proc(t).contains(r))
            .map(|t| {
                let t = rename_all(t, &map);
                pretty(&self.thread(&t, level, bound))
            })
            .collect();
        out.sort();
        out
    }

    fn sorted_threads(&mut self, raw: &[Process], level: usize, bound: &BTreeSet<Name>) -> Vec<Process> {
        let mut keyed: Vec<(String, Process)> = raw
            .iter()
            .map(|t| {
                let c = self.thread(t, level, bound);
                (pretty(&c), c)
            })
            .collect();
        keyed.sort_by(|a, b| a.0.cmp(&b.0));
        keyed.into_iter().map(|(_, t)| t).collect()
    }

    fn block_process(&mut self, p: &Process, level: usize, bound: &BTreeSet<Name>) -> Process {
        let (restricted, threads) = self.block(p, level, bound);
        Process::restrict_all(restricted, Process::par_all(threads))
    }

    fn thread(&mut self, t: &Process, level: usize, bound: &BTreeSet<Name>) -> Process {
        match t {
            Process::Ok => Process::Ok,
            Process::Output { channel, args, cont } => Process::Output {
                channel: channel.clone(),
                args: args.clone(),
                cont: cont
                    .as_ref()
                    .map(|k| Box::new(self.block_process(k, level, bound))),
            },
            Process::Input {
                channel,
                patterns,
                cont,
            } => {
                let binders = input_binders(patterns);
                let map: BTreeMap<Name, Name> = binders
                    .iter()
                    .enumerate()
                    .map(|(i, b)| (b.clone(), self.levels.level(level + i)))
                    .collect();
                let patterns = patterns.iter().map(|pat| pat.rename_binders(&map)).collect();
                let cont = rename_all(cont, &map);
                let mut inner = bound.clone();
                inner.extend(map.into_values());
                Process::Input {
                    channel: channel.clone(),
                    patterns,
                    cont: Box::new(self.block_process(&cont, level + binders.len(), &inner)),
                }
            }
            Process::Repl(body) => Process::repl(self.block_process(body, level, bound)),
            Process::Cond {
                lhs,
                rhs,
                then,
                otherwise,
            } => Process::cond(
                lhs.clone(),
                rhs.clone(),
                self.block_process(then, level, bound),
                self.block_process(otherwise, level, bound),
            ),
            Process::Nil | Process::Par(..) | Process::Restrict(..) => {
                unreachable!("flatten never yields a bare block as a thread")
            }
        }
    }
}

fn flatten(p: &Process, bound: &BTreeSet<Name>, restricted: &mut Vec<Name>, raw: &mut Vec<Process>) {
    match p {
        Process::Nil => {}
        Process::Par(l, r) => {
            flatten(l, bound, restricted, raw);
            flatten(r, bound, restricted, raw);
        }
        Process::Restrict(n, body) => {
            restricted.push(n.clone());
            flatten(body, bound, restricted, raw);
        }
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } if !mentions_any(lhs, bound) && !mentions_any(rhs, bound) => {
            let branch = if lhs == rhs { then } else { otherwise };
            flatten(branch, bound, restricted, raw);
        }
        other => raw.push(other.clone()),
    }
}

/// Replaces every conditional that tests no name in `bound` by its branch,
/// so that restriction usage is final before blocks are built.
fn resolve_conditionals(p: &Process, bound: &BTreeSet<Name>) -> Process {
    match p {
        Process::Nil | Process::Ok => p.clone(),
        Process::Output { channel, args, cont } => Process::Output {
            channel: channel.clone(),
            args: args.clone(),
            cont: cont.as_ref().map(|k| Box::new(resolve_conditionals(k, bound))),
        },
        Process::Input {
            channel,
            patterns,
            cont,
        } => {
            let mut inner = bound.clone();
            inner.extend(input_binders(patterns));
            Process::Input {
                channel: channel.clone(),
                patterns: patterns.clone(),
                cont: Box::new(resolve_conditionals(cont, &inner)),
            }
        }
        Process::Restrict(n, body) => Process::restrict(n.clone(), resolve_conditionals(body, bound)),
        Process::Par(l, r) => Process::par(resolve_conditionals(l, bound), resolve_conditionals(r, bound)),
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => {
            if mentions_any(lhs, bound) || mentions_any(rhs, bound) {
                Process::cond(
                    lhs.clone(),
                    rhs.clone(),
                    resolve_conditionals(then, bound),
                    resolve_conditionals(otherwise, bound),
                )
            } else {
                resolve_conditionals(if lhs == rhs { then } else { otherwise }, bound)
            }
        }
        Process::Repl(body) => Process::repl(resolve_conditionals(body, bound)),
    }
}

fn mentions_any(t: &Term, names: &BTreeSet<Name>) -> bool {
    names.iter().any(|n| t.mentions(n))
}

fn factorial(n: usize) -> usize {
    (1..=n).try_fold(1usize, |a, b| a.checked_mul(b)).unwrap_or(usize::MAX)
}

/// Every concatenation of one permutation per class, classes kept in order.
fn class_orders(classes: &[Vec<Name>]) -> Vec<Vec<Name>> {
    let mut acc: Vec<Vec<Name>> = vec![Vec::new()];
    for class in classes {
        let perms = permutations(class);
        let mut next = Vec::with_capacity(acc.len() * perms.len());
        for prefix in &acc {
            for p in &perms {
                let mut v = prefix.clone();
                v.extend(p.iter().cloned());
                next.push(v);
            }
        }
        acc = next;
    }
    acc
}

fn permutations(items: &[Name]) -> Vec<Vec<Name>> {
    if items.len() <= 1 {
        return vec![items.to_vec()];
    }
    let mut out = Vec::new();
    for i in 0..items.len() {
        let mut rest = items.to_vec();
        let head = rest.remove(i);
        for mut tail in permutations(&rest) {
            tail.insert(0, head.clone());
            out.push(tail);
        }
    }
    out
}

fn join_rendered(threads: &[Process]) -> String {
    threads.iter().map(pretty).collect::<Vec<_>>().join(" | ")
}

fn rename_term(t: &Term, env: &BTreeMap<Name, Name>) -> Term {
    match t {
        Term::Name(n) => Term::Name(env.get(n).cloned().unwrap_or_else(|| n.clone())),
        Term::Compound(l, r) => Term::compound(rename_term(l, env), rename_term(r, env)),
    }
}

fn rename_pattern_matched(p: &Pattern, env: &BTreeMap<Name, Name>) -> Pattern {
    match p {
        Pattern::Bind(n) => Pattern::Bind(n.clone()),
        Pattern::Match(n) => Pattern::Match(env.get(n).cloned().unwrap_or_else(|| n.clone())),
        Pattern::Compound(l, r) => {
            Pattern::compound(rename_pattern_matched(l, env), rename_pattern_matched(r, env))
        }
    }
}

fn rename_pattern_all(p: &Pattern, env: &BTreeMap<Name, Name>) -> Pattern {
    let get = |n: &Name| env.get(n).cloned().unwrap_or_else(|| n.clone());
    match p {
        Pattern::Bind(n) => Pattern::Bind(get(n)),
        Pattern::Match(n) => Pattern::Match(get(n)),
        Pattern::Compound(l, r) => Pattern::compound(rename_pattern_all(l, env), rename_pattern_all(r, env)),
    }
}

/// Renames every occurrence, binders included. Only sound when the renamed
/// names are not rebound anywhere inside `p`.
pub(crate) fn rename_all(p: &Process, env: &BTreeMap<Name, Name>) -> Process {
    if env.is_empty() {
        return p.clone();
    }
    let get = |n: &Name| env.get(n).cloned().unwrap_or_else(|| n.clone());
    match p {
        Process::Nil => Process::Nil,
        Process::Ok => Process::Ok,
        Process::Output { channel, args, cont } => Process::Output {
            channel: channel.as_ref().map(|c| rename_term(c, env)),
            args: args.iter().map(|a| rename_term(a, env)).collect(),
            cont: cont.as_ref().map(|k| Box::new(rename_all(k, env))),
        },
        Process::Input {
            channel,
            patterns,
            cont,
        } => Process::Input {
            channel: channel.as_ref().map(|c| rename_term(c, env)),
            patterns: patterns.iter().map(|pat| rename_pattern_all(pat, env)).collect(),
            cont: Box::new(rename_all(cont, env)),
        },
        Process::Restrict(n, body) => Process::restrict(get(n), rename_all(body, env)),
        Process::Par(l, r) => Process::par(rename_all(l, env), rename_all(r, env)),
        Process::Cond {
            lhs,
            rhs,
            then,
            otherwise,
        } => Process::cond(
            rename_term(lhs, env),
            rename_term(rhs, env),
            rename_all(then, env),
            rename_all(otherwise, env),
        ),
        Process::Repl(body) => Process::repl(rename_all(body, env)),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_unchecked as parse;

    fn canon(s: &str) -> String {
        canonicalize(&parse(s)).to_string()
    }

    fn eq(a: &str, b: &str) -> bool {
        struct_eq(&parse(a), &parse(b))
    }

    #[test]
    fn nil_is_a_unit() {
        let c = canonicalize(&parse("0 | <a>"));
        assert!(c.restricted.is_empty());
        assert_eq!(c.threads, vec![parse("<a>")]);
        assert!(canonicalize(&parse("0 | 0")).is_nil());
    }

    #[test]
    fn restriction_order_is_irrelevant() {
        assert!(eq("new a.new b.<c>", "new b.new a.<c>"));
        assert!(eq("new a.new b.(<a> | <b*a>)", "new b.new a.(<a> | <b*a>)"));
        assert!(!eq("new a.new b.(<a> | <b*a>)", "new a.new b.(<a> | <a*b>)"));
    }

    #[test]
    fn unused_restrictions_are_dropped() {
        assert_eq!(canon("new a.<c>"), "<c>");
        assert_eq!(canon("new a.0"), "0");
    }

    #[test]
    fn top_level_conditionals_resolve() {
        assert_eq!(canon("if a = a then <b> else <c>"), "<b>");
        assert_eq!(canon("if a = b then <b> else <c>"), "<c>");
        // distinct restricted names are distinct
        assert_eq!(canon("new a.new b.if a = b then ok else <c>"), "<c>");
    }

    #[test]
    fn conditionals_on_input_binders_stay() {
        assert_eq!(canon("(x).if x = a then ok"), "(#n0).if #n0 = a then ok else 0");
        assert_eq!(canon("(x).(y).if x = a then ok"), "(#n0).(#n1).if #n0 = a then ok else 0");
        // no binder is tested, so no substitution can change the outcome
        assert_eq!(canon("(x).if a = a then ok"), "(#n0).ok");
        assert_eq!(canon("(x).<x>.if a = b then ok"), "(#n0).<#n0>.0");
    }

    #[test]
    fn par_is_a_multiset() {
        assert!(eq("<a> | <b>", "<b> | <a>"));
        assert!(eq("(<a> | <b>) | <c>", "<c> | (<b> | <a>)"));
        assert!(!eq("<a> | <a>", "<a>"));
    }

    #[test]
    fn scope_extrusion() {
        assert!(eq("new a.((x).ok | <a>)", "(x).ok | new a.<a>"));
    }

    #[test]
    fn replication_is_not_unfolded() {
        assert!(!eq("!(x).ok", "(x).ok | !(x).ok"));
        assert!(eq("!(x).ok", "!(y).ok"));
    }

    #[test]
    fn blocks_under_prefixes_are_normalised() {
        assert!(eq("(x).(<x> | 0 | <a>)", "(y).(<a> | <y>)"));
        assert!(eq("<a>.new b.(<b> | ok)", "<a>.(ok | new c.<c>)"));
    }

    #[test]
    fn alpha_variants_share_a_form() {
        assert!(eq(
            "new a.new b.((x).<a*x> | (y).<b*y> | <a>)",
            "new q.new p.((y).<p*y> | <q> | (x).<q*x>)"
        ));
    }

    #[test]
    fn nested_restrictions_under_prefix_with_outer_names() {
        assert!(eq(
            "new a.new b.(x).(<a> | <b>)",
            "new b.new a.(x).(<b> | <a>)"
        ));
        assert!(eq(
            "new a.new b.((x).(<a> | <b>) | <a*b>)",
            "new b.new a.((x).(<b> | <a>) | <b*a>)"
        ));
    }

    #[test]
    fn canonical_form_is_idempotent() {
        for s in [
            "new a.((x).<a*x> | <a>) | !(y).<y>",
            "(x).new b.(<b*x> | (=b).ok)",
            "new a.new b.new c.(<a*b> | <b*c> | <c*a>)",
        ] {
            let once = normalize(&parse(s));
            assert_eq!(normalize(&once), once, "{s}");
        }
    }

    #[test]
    fn symmetric_restrictions_are_canonical() {
        // a 3-cycle under every relabelling of its names
        let base = ["a", "b", "c"];
        let mut forms = BTreeSet::new();
        for p in permutations(&base.iter().map(|s| crate::term::name(s)).collect::<Vec<_>>()) {
            let src = format!(
                "new a.new b.new c.(<{0}*{1}> | <{1}*{2}> | <{2}*{0}>)",
                p[0], p[1], p[2]
            );
            forms.insert(canon(&src));
        }
        assert_eq!(forms.len(), 1, "{forms:?}");
    }
}
