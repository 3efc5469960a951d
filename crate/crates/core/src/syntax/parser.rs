//! Lexer and recursive-descent parser for the ASCII process syntax.
//!
//! ```text
//! process ::= prefix ('|' prefix)*
//! prefix  ::= '0' | 'ok' | 'new' name '.' prefix | '!' prefix
//!           | 'if' term '=' term 'then' prefix ('else' prefix)?
//!           | '<' terms '>' ('.' prefix)?
//!           | "'" term '<' terms '>' ('.' prefix)?
//!           | "'" term '(' patterns ')' '.' prefix
//!           | name '(' patterns ')' '.' prefix
//!           | '(' patterns ')' '.' prefix
//!           | '(' process ')'
//! term    ::= tatom ('*' tatom)*        tatom ::= name | '(' term ')'
//! pattern ::= patom ('*' patom)*        patom ::= name | '=' tatom | '(' pattern ')'
//! ```
//!
//! A leading `(` is first tried as a dataspace input and, failing that, as a
//! parenthesised process.

use std::fmt;

use thiserror::Error;

use crate::conform::{conforms, Violation};
use crate::language::Language;
use crate::process::Process;
use crate::term::{duplicate_binder, Name, Pattern, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Location {
    pub line: usize,
    pub col: usize,
}

impl fmt::Display for Location {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.line, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("syntax error at {at}: {message}")]
    Syntax { at: Location, message: String },
    #[error("reserved name `{name}` at {at}: names starting with `#` are internal")]
    ReservedName { at: Location, name: String },
    #[error("duplicate binding name `{name}` in input at {at}")]
    DuplicateBinding { at: Location, name: String },
    #[error("process is not in language {language}: {}", join_violations(.violations))]
    Conformance {
        language: Language,
        violations: Vec<Violation>,
    },
}

fn join_violations(vs: &[Violation]) -> String {
    vs.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; ")
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ParseOptions {
    /// Accept `#`-names, as found in encoder output and canonical forms.
    pub allow_reserved: bool,
}

#[derive(Debug, Clone, PartialEq, Eq)]
enum Tok {
    Ident(String),
    Zero,
    LParen,
    RParen,
    Lt,
    Gt,
    Comma,
    Dot,
    Bar,
    Star,
    Eq,
    Bang,
    Quote,
    Eof,
}

impl fmt::Display for Tok {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Tok::Ident(s) => write!(f, "`{s}`"),
            Tok::Zero => f.write_str("`0`"),
            Tok::LParen => f.write_str("`(`"),
            Tok::RParen => f.write_str("`)`"),
            Tok::Lt => f.write_str("`<`"),
            Tok::Gt => f.write_str("`>`"),
            Tok::Comma => f.write_str("`,`"),
            Tok::Dot => f.write_str("`.`"),
            Tok::Bar => f.write_str("`|`"),
            Tok::Star => f.write_str("`*`"),
            Tok::Eq => f.write_str("`=`"),
            Tok::Bang => f.write_str("`!`"),
            Tok::Quote => f.write_str("`'`"),
            Tok::Eof => f.write_str("end of input"),
        }
    }
}

const KEYWORDS: [&str; 5] = ["new", "if", "then", "else", "ok"];

fn lex(text: &str) -> Result<Vec<(Tok, Location)>, ParseError> {
    let mut out = Vec::new();
    let mut line = 1;
    let mut col = 1;
    let chars: Vec<char> = text.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let at = Location { line, col };
        if c == '\n' {
            line += 1;
            col = 1;
            i += 1;
            continue;
        }
        if c.is_whitespace() {
            col += 1;
            i += 1;
            continue;
        }
        let single = match c {
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            '<' => Some(Tok::Lt),
            '>' => Some(Tok::Gt),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            '|' => Some(Tok::Bar),
            '*' => Some(Tok::Star),
            '=' => Some(Tok::Eq),
            '!' => Some(Tok::Bang),
            '\'' => Some(Tok::Quote),
            _ => None,
        };
        if let Some(t) = single {
            out.push((t, at));
            col += 1;
            i += 1;
            continue;
        }
        if c.is_ascii_digit() {
            let start = i;
            while i < chars.len() && chars[i].is_ascii_alphanumeric() {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word != "0" {
                return Err(ParseError::Syntax {
                    at,
                    message: format!("unexpected `{word}`; only `0` may start with a digit"),
                });
            }
            out.push((Tok::Zero, at));
            col += i - start;
            continue;
        }
        if c.is_ascii_alphabetic() || c == '#' {
            let start = i;
            i += 1;
            while i < chars.len() && (chars[i].is_ascii_alphanumeric() || chars[i] == '_') {
                i += 1;
            }
            let word: String = chars[start..i].iter().collect();
            if word == "#" {
                return Err(ParseError::Syntax {
                    at,
                    message: "`#` must be followed by a name".into(),
                });
            }
            out.push((Tok::Ident(word), at));
            col += i - start;
            continue;
        }
        return Err(ParseError::Syntax {
            at,
            message: format!("unexpected character `{c}`"),
        });
    }
    out.push((Tok::Eof, Location { line, col }));
    Ok(out)
}

struct Parser {
    toks: Vec<(Tok, Location)>,
    pos: usize,
    opts: ParseOptions,
}

type PResult<T> = Result<T, ParseError>;

fn error_position(e: &ParseError) -> Option<Location> {
    match e {
        ParseError::Syntax { at, .. }
        | ParseError::ReservedName { at, .. }
        | ParseError::DuplicateBinding { at, .. } => Some(*at),
        ParseError::Conformance { .. } => None,
    }
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].0
    }

    fn peek_at(&self, k: usize) -> &Tok {
        let i = (self.pos + k).min(self.toks.len() - 1);
        &self.toks[i].0
    }

    fn loc(&self) -> Location {
        self.toks[self.pos].1
    }

    fn bump(&mut self) -> Tok {
        let t = self.toks[self.pos].0.clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn unexpected<T>(&self, expected: &str) -> PResult<T> {
        Err(ParseError::Syntax {
            at: self.loc(),
            message: format!("expected {expected}, found {}", self.peek()),
        })
    }

    fn expect(&mut self, t: Tok, what: &str) -> PResult<()> {
        if *self.peek() == t {
            self.bump();
            Ok(())
        } else {
            self.unexpected(what)
        }
    }

    fn is_keyword(&self, kw: &str) -> bool {
        matches!(self.peek(), Tok::Ident(s) if s == kw)
    }

    fn is_name(&self) -> bool {
        matches!(self.peek(), Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()))
    }

    fn name(&mut self) -> PResult<Name> {
        let at = self.loc();
        match self.peek().clone() {
            Tok::Ident(s) if !KEYWORDS.contains(&s.as_str()) => {
                if s.starts_with('#') && !self.opts.allow_reserved {
                    return Err(ParseError::ReservedName { at, name: s });
                }
                self.bump();
                Name::new(&s).map_err(|e| ParseError::Syntax {
                    at,
                    message: e.to_string(),
                })
            }
            _ => self.unexpected("a name"),
        }
    }

    fn process(&mut self) -> PResult<Process> {
        let mut acc = self.prefix()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let rhs = self.prefix()?;
            acc = Process::par(acc, rhs);
        }
        Ok(acc)
    }

    fn prefix(&mut self) -> PResult<Process> {
        match self.peek().clone() {
            Tok::Zero => {
                self.bump();
                Ok(Process::Nil)
            }
            Tok::Bang => {
                self.bump();
                Ok(Process::repl(self.prefix()?))
            }
            Tok::Lt => self.output_tail(None),
            Tok::Quote => {
                self.bump();
                let channel = self.term()?;
                match self.peek() {
                    Tok::Lt => self.output_tail(Some(channel)),
                    Tok::LParen => self.input_tail(Some(channel)),
                    _ => self.unexpected("`<` or `(` after a channel"),
                }
            }
            Tok::LParen => self.paren_prefix(),
            Tok::Ident(s) if s == "ok" => {
                self.bump();
                Ok(Process::Ok)
            }
            Tok::Ident(s) if s == "new" => {
                self.bump();
                let n = self.name()?;
                self.expect(Tok::Dot, "`.` after a restricted name")?;
                Ok(Process::restrict(n, self.prefix()?))
            }
            Tok::Ident(s) if s == "if" => {
                self.bump();
                let lhs = self.term()?;
                self.expect(Tok::Eq, "`=` in a conditional")?;
                let rhs = self.term()?;
                if !self.is_keyword("then") {
                    return self.unexpected("`then`");
                }
                self.bump();
                let then = self.prefix()?;
                let otherwise = if self.is_keyword("else") {
                    self.bump();
                    self.prefix()?
                } else {
                    Process::Nil
                };
                Ok(Process::cond(lhs, rhs, then, otherwise))
            }
            Tok::Ident(_) if self.is_name() && *self.peek_at(1) == Tok::LParen => {
                let n = self.name()?;
                self.input_tail(Some(Term::Name(n)))
            }
            _ => self.unexpected("a process"),
        }
    }

    fn paren_prefix(&mut self) -> PResult<Process> {
        let start = self.pos;
        let as_input = self.input_tail(None);
        let input_err = match as_input {
            Ok(p) => return Ok(p),
            Err(e @ ParseError::DuplicateBinding { .. }) => return Err(e),
            Err(e) => e,
        };
        let input_end = self.pos;
        self.pos = start;
        let as_process = (|| {
            self.expect(Tok::LParen, "`(`")?;
            let p = self.process()?;
            self.expect(Tok::RParen, "`)`")?;
            Ok(p)
        })();
        match as_process {
            Ok(p) => Ok(p),
            Err(proc_err) => {
                // report whichever reading got further
                let pe = error_position(&proc_err);
                let ie = error_position(&input_err);
                if ie > pe || (ie == pe && input_end > self.pos) {
                    Err(input_err)
                } else {
                    Err(proc_err)
                }
            }
        }
    }

    fn output_tail(&mut self, channel: Option<Term>) -> PResult<Process> {
        self.expect(Tok::Lt, "`<`")?;
        let mut args = vec![self.term()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            args.push(self.term()?);
        }
        self.expect(Tok::Gt, "`,` or `>`")?;
        let cont = if *self.peek() == Tok::Dot {
            self.bump();
            Some(self.prefix()?)
        } else {
            None
        };
        Ok(Process::output(channel, args, cont))
    }

    fn input_tail(&mut self, channel: Option<Term>) -> PResult<Process> {
        let at = self.loc();
        self.expect(Tok::LParen, "`(`")?;
        let mut patterns = vec![self.pattern()?];
        while *self.peek() == Tok::Comma {
            self.bump();
            patterns.push(self.pattern()?);
        }
        self.expect(Tok::RParen, "`,` or `)`")?;
        self.expect(Tok::Dot, "`.` after an input")?;
        if let Some(d) = duplicate_binder(&patterns) {
            return Err(ParseError::DuplicateBinding {
                at,
                name: d.to_string(),
            });
        }
        let cont = self.prefix()?;
        Ok(Process::input(channel, patterns, cont))
    }

    fn term(&mut self) -> PResult<Term> {
        let mut acc = self.term_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.term_atom()?;
            acc = Term::compound(acc, rhs);
        }
        Ok(acc)
    }

    fn term_atom(&mut self) -> PResult<Term> {
        if *self.peek() == Tok::LParen {
            self.bump();
            let t = self.term()?;
            self.expect(Tok::RParen, "`)` closing a term")?;
            Ok(t)
        } else {
            Ok(Term::Name(self.name()?))
        }
    }

    fn pattern(&mut self) -> PResult<Pattern> {
        let mut acc = self.pattern_atom()?;
        while *self.peek() == Tok::Star {
            self.bump();
            let rhs = self.pattern_atom()?;
            acc = Pattern::compound(acc, rhs);
        }
        Ok(acc)
    }

    fn pattern_atom(&mut self) -> PResult<Pattern> {
        match self.peek() {
            Tok::Eq => {
                self.bump();
                let t = self.term_atom()?;
                Ok(Pattern::name_match(&t))
            }
            Tok::LParen => {
                self.bump();
                let p = self.pattern()?;
                self.expect(Tok::RParen, "`)` closing a pattern")?;
                Ok(p)
            }
            _ => Ok(Pattern::Bind(self.name()?)),
        }
    }
}

/// Parses without checking membership in any language.
pub fn parse_with(text: &str, opts: ParseOptions) -> Result<Process, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        opts,
    };
    let out = p.process()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("`|` or end of input");
    }
    Ok(out)
}

/// Parses a user process of language `lang`: reserved names are rejected and
/// the result must conform to `lang`.
pub fn parse_process(text: &str, lang: &Language) -> Result<Process, ParseError> {
    parse_process_with(text, lang, ParseOptions::default())
}

pub fn parse_process_with(
    text: &str,
    lang: &Language,
    opts: ParseOptions,
) -> Result<Process, ParseError> {
    let p = parse_with(text, opts)?;
    let violations = conforms(&p, lang);
    if violations.is_empty() {
        Ok(p)
    } else {
        Err(ParseError::Conformance {
            language: *lang,
            violations,
        })
    }
}

/// Parses any process, reserved names allowed, no language check.
pub fn parse_any(text: &str) -> Result<Process, ParseError> {
    parse_with(
        text,
        ParseOptions {
            allow_reserved: true,
        },
    )
}

/// Terms on their own, e.g. for command-line arguments.
pub fn parse_term(text: &str) -> Result<Term, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        opts: ParseOptions {
            allow_reserved: true,
        },
    };
    let t = p.term()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of term");
    }
    Ok(t)
}

pub fn parse_pattern(text: &str) -> Result<Pattern, ParseError> {
    let mut p = Parser {
        toks: lex(text)?,
        pos: 0,
        opts: ParseOptions {
            allow_reserved: true,
        },
    };
    let t = p.pattern()?;
    if *p.peek() != Tok::Eof {
        return p.unexpected("end of pattern");
    }
    Ok(t)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::conform::Feature;
    use crate::term::name;

    fn lang(code: &str) -> Language {
        code.parse().unwrap()
    }

    #[test]
    fn channel_output() {
        let p = parse_process("'a<b>", &lang("AMCO")).unwrap();
        assert_eq!(
            p,
            Process::output(Some(Term::Name(name("a"))), vec![Term::Name(name("b"))], None)
        );
    }

    #[test]
    fn compound_input() {
        let p = parse_process("(x*y).ok", &lang("AMDI")).unwrap();
        assert_eq!(
            p,
            Process::input(
                None,
                vec![Pattern::compound(Pattern::Bind(name("x")), Pattern::Bind(name("y")))],
                Process::Ok
            )
        );
    }

    #[test]
    fn duplicate_binding_is_rejected() {
        let e = parse_process("(x*x).0", &lang("AMDI")).unwrap_err();
        assert!(matches!(e, ParseError::DuplicateBinding { ref name, .. } if name == "x"), "{e}");
        let e = parse_process("(x, x).0", &lang("APDO")).unwrap_err();
        assert!(matches!(e, ParseError::DuplicateBinding { .. }));
    }

    #[test]
    fn reserved_names_are_rejected_by_default() {
        let e = parse_process("<#r>", &lang("AMDO")).unwrap_err();
        assert!(matches!(e, ParseError::ReservedName { .. }));
        assert!(parse_any("<#r>").is_ok());
    }

    #[test]
    fn conformance_is_checked() {
        let e = parse_process("<a, b>", &lang("AMDO")).unwrap_err();
        match e {
            ParseError::Conformance { violations, .. } => {
                assert_eq!(violations[0].feature, Feature::Polyadic(2))
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn syntax_errors_carry_locations() {
        let e = parse_any("<a> |\n  (x.0").unwrap_err();
        match e {
            ParseError::Syntax { at, .. } => assert_eq!(at.line, 2),
            other => panic!("{other}"),
        }
        assert!(parse_any("").is_err());
        assert!(parse_any("<a> <b>").is_err());
        assert!(parse_any("12").is_err());
    }

    #[test]
    fn parenthesised_processes_and_inputs() {
        let p = parse_any("((x).0 | <a>)").unwrap();
        assert!(matches!(p, Process::Par(..)));
        let p = parse_any("((x*y)).0").unwrap();
        assert!(matches!(p, Process::Input { .. }));
        let p = parse_any("(a(x).0)").unwrap();
        assert!(matches!(p, Process::Input { channel: Some(_), .. }));
    }

    #[test]
    fn prefix_binds_tighter_than_par() {
        let p = parse_any("new a.<a> | <b>").unwrap();
        assert!(matches!(p, Process::Par(..)));
        let p = parse_any("!(x).0 | <b>").unwrap();
        assert!(matches!(p, Process::Par(..)));
        let p = parse_any("if a = b then ok | <c>").unwrap();
        assert!(matches!(p, Process::Par(..)));
    }

    #[test]
    fn else_is_optional() {
        assert_eq!(
            parse_any("if a = b then ok").unwrap(),
            parse_any("if a = b then ok else 0").unwrap()
        );
        // dangling else attaches to the innermost conditional
        let p = parse_any("if a = b then if c = d then ok else <e>").unwrap();
        match p {
            Process::Cond { then, otherwise, .. } => {
                assert!(otherwise.is_nil());
                assert!(matches!(*then, Process::Cond { .. }));
            }
            other => panic!("{other}"),
        }
    }

    #[test]
    fn name_match_of_parenthesised_term_expands() {
        assert_eq!(parse_any("(=(a*b)).0").unwrap(), parse_any("(=a*=b).0").unwrap());
    }

    #[test]
    fn quoted_and_bare_channel_inputs_agree() {
        assert_eq!(parse_any("a(x).0").unwrap(), parse_any("'a(x).0").unwrap());
        assert!(parse_any("'(a*b)(x).0").is_ok());
    }
}
