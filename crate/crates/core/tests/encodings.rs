mod common;

use proptest::prelude::*;
use proptest::sample::select;

use pcalc::encoding::{encode_to, pipeline, single, EncodingKind};
use pcalc::generate::{generate, Generator};
use pcalc::semantics::{canonicalize, redexes, Limits};
use pcalc::syntax::{parse_process, pretty, SourceUnit};
use pcalc::validity::{
    check_compositionality, check_name_invariance, default_renaming, pipeline_for, run_unit,
    EncodingChoice, Status,
};
use pcalc::{Language, Process};

use common::{lang, standard_corpus};

const KINDS: [EncodingKind; 3] = [EncodingKind::Synch, EncodingKind::Arity, EncodingKind::Medium];

fn unit(l: Language, seed: u64, replication: bool) -> SourceUnit {
    let mut g = Generator::new(l);
    g.depth = 3;
    g.max_arity = 2;
    if !replication {
        g = g.without_replication();
    }
    SourceUnit::new(format!("gen-{seed}"), l, generate(&g, seed, 1).pop().unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn syntactic_criteria_hold(l in select(Language::all()), seed in any::<u64>(), k in select(KINDS.to_vec())) {
        let u = unit(l, seed, true);
        let Ok(p) = single(k, l) else { return Ok(()) };
        let c = check_compositionality(&u, &p);
        prop_assert_eq!(c.status, Status::Pass, "{}", c);
        let n = check_name_invariance(&u, &p, &default_renaming(&u.body)).unwrap();
        prop_assert_eq!(n.status, Status::Pass, "{}", n);
    }

    #[test]
    fn generated_units_pass_single_encodings(l in select(Language::all()), seed in any::<u64>(), k in select(KINDS.to_vec())) {
        let u = unit(l, seed, false);
        let Ok(p) = single(k, l) else { return Ok(()) };
        for v in run_unit(&u, &p, Limits::new(12, 2000)) {
            prop_assert!(v.status != Status::Fail, "{} on `{}`", v, pretty(&u.body));
        }
    }

    #[test]
    fn generated_units_pass_the_full_route(l in select(Language::all()), seed in any::<u64>()) {
        let u = unit(l, seed, false);
        let choice = EncodingChoice::Route { from: lang("SPCN"), to: lang("AMDI") };
        let Some(p) = pipeline_for(&u, choice, None).unwrap() else { return Ok(()) };
        for v in run_unit(&u, &p, Limits::new(12, 2000)) {
            prop_assert!(v.status != Status::Fail, "{} on `{}`", v, pretty(&u.body));
        }
    }
}

fn prefixes(p: &Process, out: &mut Vec<Process>) {
    match p {
        Process::Output { .. } | Process::Input { .. } => out.push(p.clone()),
        Process::Par(l, r) => {
            prefixes(l, out);
            prefixes(r, out);
        }
        Process::Restrict(_, b) => prefixes(b, out),
        _ => {}
    }
}

/// An encoded pair interacts exactly when the source pair does.
#[test]
fn interaction_reflection_over_corpus_pairs() {
    let units = standard_corpus();
    let mut pairs = 0;
    for l in Language::all() {
        let mut outs = Vec::new();
        let mut ins = Vec::new();
        for u in units.iter().filter(|u| u.language == l) {
            let mut ps = Vec::new();
            prefixes(&u.body, &mut ps);
            for p in ps {
                match p {
                    Process::Output { .. } => outs.push(p),
                    _ => ins.push(p),
                }
            }
        }
        for k in KINDS {
            let Ok(enc) = single(k, l) else { continue };
            for o in &outs {
                for i in &ins {
                    pairs += 1;
                    let src = Process::par(o.clone(), i.clone());
                    let before = !redexes(&canonicalize(&src), &l).is_empty();
                    let image = enc.encode(&src).unwrap();
                    let after = !redexes(&canonicalize(&image), &enc.target()).is_empty();
                    assert_eq!(before, after, "{k} on `{}`", pretty(&src));
                }
            }
        }
    }
    assert!(pairs > 50, "only {pairs} pairs");
}

#[test]
fn stage_order_of_the_full_route() {
    let p = pipeline(lang("SPCN"), lang("AMDI")).unwrap();
    let kinds: Vec<String> = p.stages().iter().map(|s| s.kind().to_string()).collect();
    assert_eq!(kinds, ["embed-match", "synch", "arity", "medium"]);
    assert_eq!(p.profile(), 2);
}

#[test]
fn encoder_goldens() {
    let cases = [
        ("SMDO", "AMDI", "<a>.ok | (y).0", "new #f0.(<#f0*a> | (=#f0).ok) | (#f1*y).(<#f1> | 0)"),
        ("APDI", "AMDI", "<a, b> | (x, y).ok", "<#r*a*b> | (=#r*x*y).ok"),
        ("AMCI", "AMDI", "'c<a> | c(x).ok", "<c*a> | (=c*x).ok"),
        ("AMDO", "AMCO", "<a> | (x).<x>", "'#k1<a> | '#k1(x).'#k1<x>"),
        ("AMDI", "AMDI", "<a*b> | (=a*=b).ok", "<a*b> | (=a*=b).ok"),
    ];
    for (from, to, src, golden) in cases {
        let p = parse_process(src, &lang(from)).unwrap();
        let out = encode_to(&p, lang(from), lang(to)).unwrap();
        assert_eq!(pretty(&out), golden, "{from}->{to} on `{src}`");
    }
}

#[test]
fn shipped_corpus_encodes_to_the_golden_file() {
    let mut out = String::new();
    let choice = EncodingChoice::Route { from: lang("SPCN"), to: lang("AMDI") };
    for u in standard_corpus() {
        if let Some(p) = pipeline_for(&u, choice, None).unwrap() {
            let body = p.encode(&u.body).unwrap();
            out.push_str(&SourceUnit::new(u.name, p.target(), body).to_string());
            out.push('\n');
        }
    }
    let path = std::path::Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/golden/standard_spcn_amdi.corpus");
    let golden = std::fs::read_to_string(&path).expect("golden file");
    assert_eq!(out, golden);
}
