//! A workbench for the 24 process calculi obtained by choosing synchronism,
//! arity, communication medium, and pattern-matching degree.

pub mod conform;
pub mod encoding;
pub mod fresh;
pub mod generate;
pub mod language;
pub mod process;
pub mod semantics;
pub mod syntax;
pub mod term;
pub mod validity;
pub mod witness;

pub use conform::{conforms, is_conformant, Violation};
pub use language::Language;
pub use process::{alpha_eq, apply_subst_proc, free_names_proc, Process};
pub use syntax::{parse_any, parse_process, pretty, SourceUnit};
pub use term::{match_one, poly_match, Name, Pattern, Substitution, Term};
