//! One test per acceptance criterion. Each prints a single
//! `criterion N ... PASS|FAIL` line with its wall time, then asserts.

mod common;

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use pcalc::encoding::{single, Arity, Encoder, EncodingKind, Mutant};
use pcalc::generate::{generate, Generator};
use pcalc::semantics::{canonicalize, explore, successors, Limits};
use pcalc::syntax::{parse_process, pretty};
use pcalc::validity::{
    graph_isomorphism, prop1_stuck_preserved, run_corpus, synch_profile, EncodingChoice, Status,
};
use pcalc::witness::{s2, s3, s4};
use pcalc::{alpha_eq, conforms, match_one, poly_match, Language, Name, Pattern, Process, Term};

use common::{lang, standard_corpus};

fn report(n: u8, title: &str, started: Instant, budget: Duration, problems: &[String]) {
    let took = started.elapsed();
    let ok = problems.is_empty() && took < budget;
    println!(
        "criterion {n} {title}: {} ({:.3}s, budget {}s)",
        if ok { "PASS" } else { "FAIL" },
        took.as_secs_f64(),
        budget.as_secs()
    );
    for p in problems.iter().take(10) {
        println!("  {p}");
    }
    assert!(problems.is_empty(), "criterion {n}: {} problems", problems.len());
    assert!(took < budget, "criterion {n}: took {took:?}, budget {budget:?}");
}

fn n(s: &str) -> Name {
    Name::new(s).unwrap()
}

#[test]
fn criterion_1_intro_golden_triple() {
    let t = Instant::now();
    let amdi = lang("AMDI");
    let cases = [
        ("<a*b> | (x*y).<y*x>", "<b*a>"),
        ("<a*b> | (z).<z*z>", "<a*b*(a*b)>"),
        ("<a*b> | (=a*=b).ok", "ok"),
    ];
    let mut problems = Vec::new();
    for (src, golden) in cases {
        let p = parse_process(src, &amdi).unwrap();
        let next = successors(&canonicalize(&p), &amdi);
        let got: Vec<String> = next.iter().map(|f| pretty(&f.to_process())).collect();
        if got != [golden] {
            problems.push(format!("`{src}`: expected [{golden}], got {got:?}"));
        }
    }
    report(1, "intro golden triple", t, Duration::from_secs(1), &problems);
}

fn all_terms(depth: usize) -> Vec<Term> {
    let mut layer: Vec<Term> = ["a", "b"].into_iter().map(|s| Term::Name(n(s))).collect();
    for _ in 1..depth {
        let prev = layer.clone();
        layer = ["a", "b"].into_iter().map(|s| Term::Name(n(s))).collect();
        for l in &prev {
            for r in &prev {
                layer.push(Term::compound(l.clone(), r.clone()));
            }
        }
    }
    layer
}

fn all_patterns(depth: usize) -> Vec<Pattern> {
    let atoms = || {
        vec![
            Pattern::Bind(n("x")),
            Pattern::Bind(n("y")),
            Pattern::Match(n("a")),
            Pattern::Match(n("b")),
        ]
    };
    let mut layer = atoms();
    for _ in 1..depth {
        let prev = layer.clone();
        layer = atoms();
        for l in &prev {
            for r in &prev {
                layer.push(Pattern::compound(l.clone(), r.clone()));
            }
        }
    }
    layer
}

fn subterms(t: &Term, out: &mut Vec<Term>) {
    if !out.contains(t) {
        out.push(t.clone());
    }
    if let Term::Compound(l, r) = t {
        subterms(l, out);
        subterms(r, out);
    }
}

fn binders(p: &Pattern, out: &mut Vec<Name>) {
    match p {
        Pattern::Bind(x) => out.push(x.clone()),
        Pattern::Match(_) => {}
        Pattern::Compound(l, r) => {
            binders(l, out);
            binders(r, out);
        }
    }
}

fn instantiate(p: &Pattern, env: &BTreeMap<Name, Term>) -> Term {
    match p {
        Pattern::Bind(x) => env[x].clone(),
        Pattern::Match(a) => Term::Name(a.clone()),
        Pattern::Compound(l, r) => Term::compound(instantiate(l, env), instantiate(r, env)),
    }
}

/// Every assignment of subterms of `t` to the binders of `p` whose
/// instance is `t`.
fn oracle(t: &Term, p: &Pattern) -> Vec<BTreeMap<Name, Term>> {
    let mut subs = Vec::new();
    subterms(t, &mut subs);
    let mut bs = Vec::new();
    binders(p, &mut bs);
    let mut found = Vec::new();
    let total = subs.len().pow(bs.len() as u32);
    for mut code in 0..total {
        let mut env = BTreeMap::new();
        for b in &bs {
            env.insert(b.clone(), subs[code % subs.len()].clone());
            code /= subs.len();
        }
        if &instantiate(p, &env) == t {
            found.push(env);
        }
    }
    found
}

#[test]
fn criterion_2_match_oracle() {
    let t = Instant::now();
    let terms = all_terms(3);
    let patterns = all_patterns(3);
    let mut problems = Vec::new();
    let mut cases = 0usize;
    for p in &patterns {
        let mut bs = Vec::new();
        binders(p, &mut bs);
        let well_formed = bs.iter().enumerate().all(|(i, b)| !bs[..i].contains(b));
        for term in &terms {
            let got = match_one(term, p);
            if !well_formed {
                if got.is_ok() {
                    problems.push(format!("{term:?} vs ill-formed {p:?} was accepted"));
                }
                continue;
            }
            cases += 1;
            let want = oracle(term, p);
            let got: Option<BTreeMap<Name, Term>> = got
                .expect("well-formed")
                .map(|s| s.iter().map(|(k, v)| (k.clone(), v.clone())).collect());
            let agree = match (&got, want.as_slice()) {
                (None, []) => true,
                (Some(g), [w]) => g == w,
                _ => false,
            };
            if !agree {
                problems.push(format!("{term:?} vs {p:?}: match_one {got:?}, oracle {want:?}"));
            }
        }
    }
    println!("criterion 2: {cases} well-formed cases over {} terms", terms.len());
    if cases < 2000 {
        problems.push(format!("only {cases} cases"));
    }
    report(2, "match oracle", t, Duration::from_secs(10), &problems);
}

#[test]
fn criterion_3_encoding_lemmas_as_graph_checks() {
    let t = Instant::now();
    let units = standard_corpus();
    let limits = Limits::default();
    let mut problems = Vec::new();
    let mut checks = 0usize;
    for u in &units {
        assert!(!u.body.contains_repl(), "{} is replicated", u.name);
        let l = u.language;
        let mut run = |kind: EncodingKind, iso: bool| {
            let p = single(kind, l).unwrap();
            checks += 1;
            let r = if iso {
                graph_isomorphism(u, &p, limits)
            } else {
                synch_profile(u, &p, limits)
            };
            if let Err(e) = r {
                problems.push(format!("{} under {kind}: {e}", u.name));
            }
        };
        if l.is_polyadic() {
            run(EncodingKind::Arity, true);
        }
        if l.has_channels() {
            run(EncodingKind::Medium, true);
        }
        if l.is_synchronous() {
            run(EncodingKind::Synch, false);
        }
    }
    println!("criterion 3: {} units, {checks} lemma checks", units.len());
    if units.len() < 30 {
        problems.push(format!("corpus has {} units", units.len()));
    }
    report(3, "encoding lemmas", t, Duration::from_secs(30), &problems);
}

fn choices() -> Vec<EncodingChoice> {
    vec![
        EncodingChoice::Single(EncodingKind::Synch),
        EncodingChoice::Single(EncodingKind::Arity),
        EncodingChoice::Single(EncodingKind::Medium),
        EncodingChoice::Route {
            from: lang("SPCN"),
            to: lang("AMDI"),
        },
        EncodingChoice::Route {
            from: lang("SPCO"),
            to: lang("AMDI"),
        },
    ]
}

#[test]
fn criterion_4_validity_battery() {
    let t = Instant::now();
    let units = standard_corpus();
    let limits = Limits::default();
    let mut problems = Vec::new();
    for choice in choices() {
        let r = run_corpus(&units, choice, None, limits).unwrap();
        println!("criterion 4: {choice}: {}", r.summary());
        if r.verdicts.is_empty() {
            problems.push(format!("{choice} applies to no unit"));
        }
        for v in r.verdicts.iter().filter(|v| v.status != Status::Pass) {
            problems.push(format!("{choice}: {v}"));
        }
    }
    let mutants = [
        (Mutant::DropAck, EncodingChoice::Single(EncodingKind::Synch)),
        (Mutant::DropSuccess, EncodingChoice::Single(EncodingKind::Synch)),
        (Mutant::LoopAck, EncodingChoice::Single(EncodingKind::Synch)),
        (Mutant::LeakName, EncodingChoice::Single(EncodingKind::Arity)),
    ];
    for (m, choice) in mutants {
        let r = run_corpus(&units, choice, Some(m), limits).unwrap();
        let first = r.failures().next().cloned();
        match first {
            Some(v) if v.witness.is_some() => println!("criterion 4: mutant {m}: {}; first: {v}", r.summary()),
            _ => problems.push(format!("mutant {m} was not caught")),
        }
    }
    report(4, "validity battery", t, Duration::from_secs(120), &problems);
}

#[test]
fn criterion_5_stuck_units_stay_stuck() {
    let t = Instant::now();
    let units = standard_corpus();
    let mut problems = Vec::new();
    let mut stuck = 0usize;
    for u in &units {
        if successors(&canonicalize(&u.body), &u.language).is_empty() {
            stuck += 1;
        }
        for choice in choices() {
            if let Some(p) = pcalc::validity::pipeline_for(u, choice, None).unwrap() {
                if let Err(e) = prop1_stuck_preserved(u, &p) {
                    problems.push(format!("{} under {choice}: {e}", u.name));
                }
            }
        }
    }
    println!("criterion 5: {stuck} stuck units");
    if stuck == 0 {
        problems.push("corpus has no stuck unit".into());
    }
    report(5, "stuck preservation", t, Duration::from_secs(30), &problems);
}

#[test]
fn criterion_6_arity_firewall() {
    let t = Instant::now();
    let enc = Arity::new(lang("APDI"));
    let alphabet: Vec<Name> = ["a", "b", "c", "d"].into_iter().map(n).collect();
    let tuples = |len: usize| -> Vec<Vec<usize>> {
        let mut out = vec![vec![]];
        for _ in 0..len {
            out = out
                .into_iter()
                .flat_map(|v| (0..alphabet.len()).map(move |i| [v.clone(), vec![i]].concat()))
                .collect();
        }
        out
    };
    let mut problems = Vec::new();
    let mut cases = 0usize;
    for i in 1..=4 {
        let outputs: Vec<(Vec<usize>, Vec<Term>)> = tuples(i)
            .into_iter()
            .map(|ix| {
                let args = ix.iter().map(|&k| Term::Name(alphabet[k].clone())).collect();
                match enc.encode(&Process::output(None, args, None)) {
                    Process::Output { args, .. } => (ix, args),
                    other => panic!("output encoded to {other:?}"),
                }
            })
            .collect();
        for j in 1..=4 {
            // Position k is a binder when the index is `alphabet.len()`.
            let inputs: Vec<(Vec<usize>, Vec<Pattern>)> = {
                let mut all = vec![vec![]];
                for _ in 0..j {
                    all = all
                        .into_iter()
                        .flat_map(|v: Vec<usize>| (0..=alphabet.len()).map(move |k| [v.clone(), vec![k]].concat()))
                        .collect();
                }
                all.into_iter()
                    .map(|ix| {
                        let pats = ix
                            .iter()
                            .enumerate()
                            .map(|(pos, &k)| match alphabet.get(k) {
                                Some(a) => Pattern::Match(a.clone()),
                                None => Pattern::Bind(n(&format!("x{pos}"))),
                            })
                            .collect();
                        match enc.encode(&Process::input(None, pats, Process::Nil)) {
                            Process::Input { patterns, .. } => (ix, patterns),
                            other => panic!("input encoded to {other:?}"),
                        }
                    })
                    .collect()
            };
            for (oix, args) in &outputs {
                for (iix, pats) in &inputs {
                    cases += 1;
                    let matched = poly_match(args, pats).unwrap().is_some();
                    let expected =
                        i == j && oix.iter().zip(iix).all(|(o, p)| *p == alphabet.len() || o == p);
                    if matched != expected {
                        problems.push(format!("{i}-ary {oix:?} vs {j}-ary {iix:?}: matched {matched}"));
                    }
                }
            }
        }
    }
    println!("criterion 6: {cases} output/input pairs");
    report(6, "arity firewall", t, Duration::from_secs(60), &problems);
}

#[test]
fn criterion_7_impossibility_witnesses() {
    let t = Instant::now();
    let amdi = lang("AMDI");
    let mut problems = Vec::new();
    for k in 1..=3 {
        let next = successors(&canonicalize(&Process::par(s2(k), s3(k))), &amdi);
        let got: Vec<String> = next.iter().map(|f| pretty(&f.to_process())).collect();
        if got != ["<m>"] {
            problems.push(format!("k={k}: S2 | S3 reduces to {got:?}"));
        }
        for i in 1..=k + 2 {
            let next = successors(&canonicalize(&Process::par(s2(k), s4(k, i))), &amdi);
            if !next.is_empty() {
                problems.push(format!("k={k}, i={i}: S2 | S4 reduces"));
            }
        }
    }
    report(7, "impossibility witnesses", t, Duration::from_secs(10), &problems);
}

#[test]
fn criterion_8_round_trip_and_conformance() {
    let t = Instant::now();
    let mut problems = Vec::new();
    for l in Language::all() {
        for (idx, p) in generate(&Generator::new(l), 0x5eed ^ idx_seed(&l), 1000).iter().enumerate() {
            let text = pretty(p);
            match parse_process(&text, &l) {
                Ok(q) if alpha_eq(p, &q) => {}
                Ok(q) => problems.push(format!("{l} #{idx}: `{text}` reparsed as `{}`", pretty(&q))),
                Err(e) => problems.push(format!("{l} #{idx}: `{text}`: {e}")),
            }
        }
    }
    let mut nodes = 0usize;
    for u in standard_corpus().iter().chain(&common::corpus("witnesses.corpus")) {
        let g = explore(&u.body, &u.language, Limits::default());
        for f in &g.nodes {
            nodes += 1;
            let vs = conforms(&f.to_process(), &u.language);
            if !vs.is_empty() {
                problems.push(format!("{}: state `{f}` leaves {}: {:?}", u.name, u.language, vs));
            }
        }
    }
    println!("criterion 8: 24000 round trips, {nodes} explored states");
    report(8, "round trip and conformance", t, Duration::from_secs(120), &problems);
}

fn idx_seed(l: &Language) -> u64 {
    l.code().bytes().fold(0u64, |acc, b| acc.wrapping_mul(31).wrapping_add(u64::from(b)))
}
