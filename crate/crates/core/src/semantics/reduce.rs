//! Redex enumeration and single reduction steps.
//!
//! Threads are addressed by site paths. `[i]` is top-level thread `i`;
//! `[i, j]` is thread `j` of one unfolded copy of the replication at `[i]`,
//! and so on for nested replications. Each replication is unfolded once, so
//! interactions needing two copies of the same replication are not
//! enumerated.

use std::collections::BTreeMap;

use thiserror::Error;

use super::canonical::{canonicalize, rename_all, CanonicalForm};
use crate::fresh::FreshNames;
use crate::language::{Language, Matching};
use crate::process::{apply_subst_proc, Process};
use crate::term::{poly_match_unchecked, Name, Substitution};

pub type Site = Vec<usize>;

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Redex {
    pub output: Site,
    pub input: Site,
    pub substitution: Substitution,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StepError {
    #[error("redex {output:?} -> {input:?} does not occur in this state")]
    Stale { output: Site, input: Site },
}

/// The threads of a block together with one unfolding of each replication.
struct Unfolding {
    restricted: Vec<Name>,
    threads: Vec<Process>,
    copies: BTreeMap<usize, Unfolding>,
}

impl Unfolding {
    fn of(form: &CanonicalForm) -> Unfolding {
        let mut fresh = FreshNames::new("c", form.to_process().names());
        unfold(Vec::new(), form.threads.clone(), &mut fresh)
    }

    fn slots(&self, prefix: &mut Site, out: &mut Vec<(Site, Process)>) {
        for (j, t) in self.threads.iter().enumerate() {
            prefix.push(j);
            if matches!(t, Process::Output { .. } | Process::Input { .. }) {
                out.push((prefix.clone(), t.clone()));
            }
            if let Some(copy) = self.copies.get(&j) {
                copy.slots(prefix, out);
            }
            prefix.pop();
        }
    }

    fn at(&self, site: &[usize]) -> Option<&Process> {
        match site {
            [] => None,
            [j] => self.threads.get(*j),
            [j, rest @ ..] => self.copies.get(j)?.at(rest),
        }
    }

    /// Threads and restrictions after replacing the threads at `edits`,
    /// materialising only the copies on the way to an edited site.
    fn materialise(&self, edits: &[(Site, Option<Process>)], restricted: &mut Vec<Name>, out: &mut Vec<Process>) {
        restricted.extend(self.restricted.iter().cloned());
        for (j, t) in self.threads.iter().enumerate() {
            match edits.iter().find(|(s, _)| s.len() == 1 && s[0] == j) {
                Some((_, Some(replacement))) => out.push(replacement.clone()),
                Some((_, None)) => {}
                None => out.push(t.clone()),
            }
            let deeper: Vec<(Site, Option<Process>)> = edits
                .iter()
                .filter(|(s, _)| s.len() > 1 && s[0] == j)
                .map(|(s, r)| (s[1..].to_vec(), r.clone()))
                .collect();
            if !deeper.is_empty() {
                self.copies[&j].materialise(&deeper, restricted, out);
            }
        }
    }
}

fn unfold(restricted: Vec<Name>, threads: Vec<Process>, fresh: &mut FreshNames) -> Unfolding {
    let mut copies = BTreeMap::new();
    for (j, t) in threads.iter().enumerate() {
        if let Process::Repl(body) = t {
            let (names, inner) = split_block(body, fresh);
            copies.insert(j, unfold(names, inner, fresh));
        }
    }
    Unfolding {
        restricted,
        threads,
        copies,
    }
}

/// Splits a canonical block into its restrictions, renamed apart, and its
/// threads.
fn split_block(p: &Process, fresh: &mut FreshNames) -> (Vec<Name>, Vec<Process>) {
    let mut names = Vec::new();
    let mut map = BTreeMap::new();
    let mut cur = p;
    while let Process::Restrict(n, body) = cur {
        let n2 = fresh.fresh();
        map.insert(n.clone(), n2.clone());
        names.push(n2);
        cur = body;
    }
    let mut threads = Vec::new();
    collect_par(cur, &mut threads);
    let threads = threads.into_iter().map(|t| rename_all(&t, &map)).collect();
    (names, threads)
}

fn collect_par(p: &Process, out: &mut Vec<Process>) {
    match p {
        Process::Par(l, r) => {
            collect_par(l, out);
            collect_par(r, out);
        }
        Process::Nil => {}
        other => out.push(other.clone()),
    }
}

fn interact(output: &Process, input: &Process, lang: &Language) -> Option<Substitution> {
    let (
        Process::Output {
            channel: oc, args, ..
        },
        Process::Input {
            channel: ic,
            patterns,
            ..
        },
    ) = (output, input)
    else {
        return None;
    };
    if oc != ic {
        return None;
    }
    let s = poly_match_unchecked(args, patterns)?;
    if lang.matching != Matching::Intensional && !s.names_only() {
        return None;
    }
    Some(s)
}

/// All redexes of `form`, outputs in site order, then inputs in site order.
pub fn redexes(form: &CanonicalForm, lang: &Language) -> Vec<Redex> {
    let unfolding = Unfolding::of(form);
    let mut slots = Vec::new();
    unfolding.slots(&mut Vec::new(), &mut slots);
    let mut out = Vec::new();
    for (os, o) in slots.iter().filter(|(_, t)| matches!(t, Process::Output { .. })) {
        for (is, i) in slots.iter().filter(|(_, t)| matches!(t, Process::Input { .. })) {
            if let Some(substitution) = interact(o, i, lang) {
                out.push(Redex {
                    output: os.clone(),
                    input: is.clone(),
                    substitution,
                });
            }
        }
    }
    out
}

/// Fires `r`: the input is replaced by its instantiated continuation, the
/// output by its continuation if it has one.
pub fn step(form: &CanonicalForm, r: &Redex, lang: &Language) -> Result<CanonicalForm, StepError> {
    let stale = || StepError::Stale {
        output: r.output.clone(),
        input: r.input.clone(),
    };
    let unfolding = Unfolding::of(form);
    let (Some(o), Some(i)) = (unfolding.at(&r.output), unfolding.at(&r.input)) else {
        return Err(stale());
    };
    if interact(o, i, lang).as_ref() != Some(&r.substitution) {
        return Err(stale());
    }
    let Process::Output { cont: ocont, .. } = o else {
        return Err(stale());
    };
    let Process::Input { cont: icont, .. } = i else {
        return Err(stale());
    };
    let released = ocont.as_deref().cloned();
    let instantiated = apply_subst_proc(&r.substitution, icont);
    let edits = vec![(r.output.clone(), released), (r.input.clone(), Some(instantiated))];
    let mut restricted = form.restricted.clone();
    let mut threads = Vec::new();
    unfolding.materialise(&edits, &mut restricted, &mut threads);
    let next = Process::restrict_all(restricted, Process::par_all(threads));
    Ok(canonicalize(&next))
}

/// Every one-step successor, in redex order, duplicates kept.
pub fn successors(form: &CanonicalForm, lang: &Language) -> Vec<CanonicalForm> {
    redexes(form, lang)
        .iter()
        .map(|r| step(form, r, lang).expect("fresh redexes are never stale"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_unchecked as parse;
    use crate::term::name;

    fn lang(code: &str) -> Language {
        code.parse().unwrap()
    }

    fn form(s: &str) -> CanonicalForm {
        canonicalize(&parse(s))
    }

    #[test]
    fn compound_output_meets_compound_input() {
        let f = form("<a*b> | (x*y).ok");
        let rs = redexes(&f, &lang("AMDI"));
        assert_eq!(rs.len(), 1);
        // binders carry their canonical level names
        assert_eq!(rs[0].substitution.to_string(), "{a/#n0, b/#n1}");
        assert_eq!(step(&f, &rs[0], &lang("AMDI")).unwrap(), form("ok"));
    }

    #[test]
    fn mismatches_do_not_react() {
        assert!(redexes(&form("<a> | (=b).ok"), &lang("AMDN")).is_empty());
        assert!(redexes(&form("'a<c> | 'b(x).0"), &lang("AMCO")).is_empty());
        for s in ["0", "ok", "(x).ok", "<a>"] {
            assert!(redexes(&form(s), &lang("AMDI")).is_empty(), "{s}");
        }
    }

    #[test]
    fn whole_compound_binds_one_name() {
        let f = form("<a*b> | (z).<z>");
        let rs = redexes(&f, &lang("AMDI"));
        assert_eq!(rs.len(), 1);
        assert_eq!(step(&f, &rs[0], &lang("AMDI")).unwrap(), form("<a*b>"));
    }

    #[test]
    fn synchronous_output_releases_its_continuation() {
        let l = lang("SMCO");
        let f = form("'c<a>.ok | 'c(x).0");
        let rs = redexes(&f, &l);
        assert_eq!(rs.len(), 1);
        assert_eq!(step(&f, &rs[0], &l).unwrap(), form("ok"));
    }

    #[test]
    fn replication_unfolds_once() {
        let l = lang("AMDO");
        let f = form("!(x).<x> | <a>");
        let rs = redexes(&f, &l);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].input.len(), 2);
        assert_eq!(step(&f, &rs[0], &l).unwrap(), f);
    }

    #[test]
    fn replicated_restrictions_are_fresh_per_copy() {
        let l = lang("AMDI");
        let f = form("!new k.<k> | (x).<x*x>");
        let rs = redexes(&f, &l);
        assert_eq!(rs.len(), 1);
        let g = step(&f, &rs[0], &l).unwrap();
        assert_eq!(g, form("!new k.<k> | new k.<k*k>"));
    }

    #[test]
    fn nested_replication_sites() {
        let l = lang("AMDO");
        let f = form("!!<a> | (x).ok");
        let rs = redexes(&f, &l);
        assert_eq!(rs.len(), 1);
        assert_eq!(rs[0].output, vec![0, 0, 0]);
        assert_eq!(step(&f, &rs[0], &l).unwrap(), form("!!<a> | !<a> | ok"));
    }

    #[test]
    fn stale_redexes_are_rejected() {
        let l = lang("AMDI");
        let f = form("<a*b> | (x*y).ok");
        let mut r = redexes(&f, &l).remove(0);
        r.substitution = Substitution::singleton(name("x"), crate::term::Term::Name(name("c")));
        assert!(matches!(step(&f, &r, &l), Err(StepError::Stale { .. })));
        let r = Redex {
            output: vec![7],
            input: vec![0],
            substitution: Substitution::new(),
        };
        assert!(step(&f, &r, &l).is_err());
    }

    #[test]
    fn names_only_outside_intensional_languages() {
        // a compound would need an intensional language to travel
        let f = form("<a*b> | (x).ok");
        assert_eq!(redexes(&f, &lang("AMDI")).len(), 1);
        assert!(redexes(&f, &lang("AMDO")).is_empty());
    }
}
