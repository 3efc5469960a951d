//! Concrete syntax: parser, printer, and the corpus file format.

mod corpus;
mod parser;
mod pretty;

pub use corpus::{load_corpus, parse_corpus, CorpusError, SourceUnit};
pub use parser::{
    parse_any, parse_pattern, parse_process, parse_process_with, parse_term, parse_with, Location,
    ParseError, ParseOptions,
};
pub use pretty::{pretty, pretty_pattern, pretty_term};

#[cfg(test)]
pub(crate) fn parse_unchecked(text: &str) -> crate::process::Process {
    parse_any(text).unwrap_or_else(|e| panic!("{text}: {e}"))
}
