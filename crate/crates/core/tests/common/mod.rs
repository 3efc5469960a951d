#![allow(dead_code)]

use std::path::PathBuf;

use pcalc::syntax::{load_corpus, SourceUnit};

pub fn corpus_path(file: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("corpus").join(file)
}

pub fn corpus(file: &str) -> Vec<SourceUnit> {
    load_corpus(&corpus_path(file)).unwrap_or_else(|errs| {
        let msgs: Vec<String> = errs.iter().map(|e| e.to_string()).collect();
        panic!("{file}: {}", msgs.join("\n"))
    })
}

pub fn standard_corpus() -> Vec<SourceUnit> {
    corpus("standard.corpus")
}

pub fn lang(code: &str) -> pcalc::Language {
    code.parse().expect("language code")
}
