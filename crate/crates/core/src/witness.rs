//! The witness processes of the impossibility argument for matching
//! degree. All of them live in `AMDI`.
//!
//! ```text
//! S0       = (x).<m>
//! S1       = <a>
//! S2(k)    = <a1*...*a(k+2)>
//! S3(k)    = (=a1*...*=a(k+2)).<m>
//! S4(k, i) = S3(k) with `ai` and `m` swapped
//! ```

use crate::language::Language;
use crate::process::Process;
use crate::syntax::SourceUnit;
use crate::term::{name, Name, Pattern, Term};

pub fn language() -> Language {
    "AMDI".parse().expect("valid code")
}

fn a(i: usize) -> Name {
    name(&format!("a{i}"))
}

fn m() -> Name {
    name("m")
}

fn out(t: Term) -> Process {
    Process::output(None, vec![t], None)
}

pub fn s0() -> Process {
    Process::input(None, vec![Pattern::Bind(name("x"))], out(Term::Name(m())))
}

pub fn s1() -> Process {
    out(Term::Name(name("a")))
}

/// Outputs the `k + 2` names `a1 .. a(k+2)` as one term.
pub fn s2(k: usize) -> Process {
    out(Term::spine((1..=k + 2).map(|i| Term::Name(a(i)))).expect("nonempty"))
}

fn matcher(names: impl IntoIterator<Item = Name>, then: Name) -> Process {
    let pat = Pattern::spine(names.into_iter().map(Pattern::Match)).expect("nonempty");
    Process::input(None, vec![pat], out(Term::Name(then)))
}

pub fn s3(k: usize) -> Process {
    matcher((1..=k + 2).map(a), m())
}

/// `S3(k)` with the `i`-th name (1-based) and `m` swapped.
pub fn s4(k: usize, i: usize) -> Process {
    assert!((1..=k + 2).contains(&i), "position out of range");
    matcher((1..=k + 2).map(|j| if j == i { m() } else { a(j) }), a(i))
}

/// The compositions used by the argument, as named units for `k = 1..=3`.
pub fn witness_units() -> Vec<SourceUnit> {
    let lang = language();
    let mut out = vec![
        SourceUnit::new("s0", lang, s0()),
        SourceUnit::new("s1", lang, s1()),
        SourceUnit::new("s0-s1", lang, Process::par(s0(), s1())),
    ];
    for k in 1..=3 {
        out.push(SourceUnit::new(format!("s2-k{k}"), lang, s2(k)));
        out.push(SourceUnit::new(format!("s3-k{k}"), lang, s3(k)));
        out.push(SourceUnit::new(format!("s0-s2-k{k}"), lang, Process::par(s0(), s2(k))));
        out.push(SourceUnit::new(format!("s2-s3-k{k}"), lang, Process::par(s2(k), s3(k))));
        for i in 1..=k + 2 {
            out.push(SourceUnit::new(format!("s4-k{k}-i{i}"), lang, s4(k, i)));
            out.push(SourceUnit::new(
                format!("s2-s4-k{k}-i{i}"),
                lang,
                Process::par(s2(k), s4(k, i)),
            ));
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::pretty;

    #[test]
    fn shapes() {
        assert_eq!(pretty(&s2(1)), "<a1*a2*a3>");
        assert_eq!(pretty(&s3(1)), "(=a1*=a2*=a3).<m>");
        assert_eq!(pretty(&s4(1, 2)), "(=a1*=m*=a3).<a2>");
    }

    #[test]
    fn units_conform() {
        for u in witness_units() {
            assert!(crate::is_conformant(&u.body, &u.language), "{}", u.name);
        }
    }
}
