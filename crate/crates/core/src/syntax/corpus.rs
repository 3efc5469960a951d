//! Line-oriented corpus files.
//!
//! ```text
//! # comment
//! unit <name> @ <LANG> := <process>
//! ```
//!
//! A unit occupies one line. Blank lines and lines starting with `#` are
//! ignored.

use std::fmt;
use std::path::Path;

use thiserror::Error;

use super::parser::{parse_process_with, ParseError, ParseOptions};
use super::pretty::pretty;
use crate::language::Language;
use crate::process::Process;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SourceUnit {
    pub name: String,
    pub language: Language,
    pub body: Process,
}

impl SourceUnit {
    pub fn new(name: impl Into<String>, language: Language, body: Process) -> Self {
        SourceUnit {
            name: name.into(),
            language,
            body,
        }
    }
}

/// Renders the unit as one corpus line.
impl fmt::Display for SourceUnit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "unit {} @ {} := {}", self.name, self.language, pretty(&self.body))
    }
}

#[derive(Debug, Error)]
pub enum CorpusError {
    #[error("cannot read {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
    #[error("line {line}: {message}")]
    Header { line: usize, message: String },
    #[error("line {line}, unit `{unit}`: {source}")]
    Unit {
        line: usize,
        unit: String,
        #[source]
        source: ParseError,
    },
    #[error("line {line}: duplicate unit name `{unit}`")]
    DuplicateUnit { line: usize, unit: String },
}

/// Parses every unit, collecting all errors rather than stopping at the
/// first. The options apply to each unit body.
pub fn parse_corpus(text: &str, opts: ParseOptions) -> Result<Vec<SourceUnit>, Vec<CorpusError>> {
    let mut units: Vec<SourceUnit> = Vec::new();
    let mut errors = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        match parse_line(trimmed, line, opts) {
            Ok(u) => {
                if units.iter().any(|v| v.name == u.name) {
                    errors.push(CorpusError::DuplicateUnit { line, unit: u.name });
                } else {
                    units.push(u);
                }
            }
            Err(e) => errors.push(e),
        }
    }
    if errors.is_empty() {
        Ok(units)
    } else {
        Err(errors)
    }
}

fn parse_line(line_text: &str, line: usize, opts: ParseOptions) -> Result<SourceUnit, CorpusError> {
    let header = |message: &str| CorpusError::Header {
        line,
        message: message.to_string(),
    };
    let rest = line_text
        .strip_prefix("unit")
        .filter(|r| r.starts_with(char::is_whitespace))
        .ok_or_else(|| header("expected `unit <name> @ <LANG> := <process>`"))?;
    let (head, body) = rest
        .split_once(":=")
        .ok_or_else(|| header("missing `:=` after the unit header"))?;
    let (name, code) = head
        .split_once('@')
        .ok_or_else(|| header("missing `@ <LANG>` in the unit header"))?;
    let name = name.trim();
    if name.is_empty() || name.chars().any(char::is_whitespace) {
        return Err(header("unit names are nonempty and contain no spaces"));
    }
    let language: Language = code
        .trim()
        .parse()
        .map_err(|e: crate::language::LanguageCodeError| header(&e.to_string()))?;
    let body = parse_process_with(body, &language, opts).map_err(|source| CorpusError::Unit {
        line,
        unit: name.to_string(),
        source,
    })?;
    Ok(SourceUnit::new(name, language, body))
}

/// Reads a user corpus: reserved names are rejected.
pub fn load_corpus(path: &Path) -> Result<Vec<SourceUnit>, Vec<CorpusError>> {
    let text = std::fs::read_to_string(path).map_err(|source| {
        vec![CorpusError::Io {
            path: path.display().to_string(),
            source,
        }]
    })?;
    parse_corpus(&text, ParseOptions::default())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reads_units_and_skips_comments() {
        let text = "# header\n\nunit p @ AMDI := <a*b> | (x*y).ok\nunit q @ SPCN := 'c<a, b>.0\n";
        let units = parse_corpus(text, ParseOptions::default()).unwrap();
        assert_eq!(units.len(), 2);
        assert_eq!(units[0].name, "p");
        assert_eq!(units[1].language.to_string(), "SPCN");
        assert_eq!(units[1].to_string(), "unit q @ SPCN := 'c<a, b>.0");
    }

    #[test]
    fn collects_every_error() {
        let text = "unit p @ AMDO := <a, b>\nunit q @ XXXX := 0\nbogus\nunit r @ AMDO := <#r>\n";
        let errs = parse_corpus(text, ParseOptions::default()).unwrap_err();
        assert_eq!(errs.len(), 4);
        assert!(errs[0].to_string().contains("unit `p`"));
        assert!(matches!(errs[3], CorpusError::Unit { source: ParseError::ReservedName { .. }, .. }));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let errs = parse_corpus("unit p @ AMDO := 0\nunit p @ AMDO := ok\n", ParseOptions::default())
            .unwrap_err();
        assert!(matches!(errs[0], CorpusError::DuplicateUnit { line: 2, .. }));
    }

    #[test]
    fn empty_corpus_is_fine() {
        assert!(parse_corpus("# nothing\n", ParseOptions::default()).unwrap().is_empty());
    }
}
