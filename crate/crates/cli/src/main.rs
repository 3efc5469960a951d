//! `pcalc`: parse, trace, encode, verify, and test success of processes.
//!
//! Exit codes: 0 success, 1 input error or failed verification, 2 no valid
//! encoding exists, 3 success not reached within the limits.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use pcalc::encoding::{EncodeError, EncodingKind, Mutant};
use pcalc::semantics::{explore, succeeds, Limits, Success};
use pcalc::syntax::{parse_corpus, parse_process, ParseOptions, SourceUnit};
use pcalc::validity::{pipeline_for, run_corpus, EncodingChoice};
use pcalc::Language;

#[derive(Parser)]
#[command(name = "pcalc", version, about = "Workbench for the 24 intensional process calculi")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Parse and pretty-print, checking conformance.
    Parse(Input),
    /// Explore the reduction graph breadth-first.
    Trace {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: LimitArgs,
        /// Emit the edge-list format.
        #[arg(long, conflicts_with = "dot")]
        graph: bool,
        /// Emit a Graphviz description.
        #[arg(long)]
        dot: bool,
    },
    /// Translate units into another language.
    Encode {
        #[command(flatten)]
        input: Input,
        /// Source language; defaults to each unit's own.
        #[arg(long)]
        from: Option<Language>,
        #[arg(long)]
        to: Language,
    },
    /// Check the validity criteria over a corpus.
    Verify {
        corpus: PathBuf,
        #[arg(long, requires = "to", conflicts_with = "encoding")]
        from: Option<Language>,
        #[arg(long, requires = "from")]
        to: Option<Language>,
        /// A single translation instead of a route.
        #[arg(long, required_unless_present = "from")]
        encoding: Option<Single>,
        #[arg(long)]
        mutant: Option<MutantArg>,
        #[command(flatten)]
        limits: LimitArgs,
    },
    /// Report whether success is reachable.
    Succeeds {
        #[command(flatten)]
        input: Input,
        #[command(flatten)]
        limits: LimitArgs,
    },
}

/// A corpus file, or one process given with `--lang`.
#[derive(Args)]
struct Input {
    /// Corpus file, or a file holding one process when `--lang` is given.
    #[arg(required_unless_present = "expr")]
    file: Option<PathBuf>,
    /// Process text; needs `--lang`.
    #[arg(short = 'e', long = "expr", requires = "lang", conflicts_with = "file")]
    expr: Option<String>,
    #[arg(long)]
    lang: Option<Language>,
    /// Select one unit of a corpus by name.
    #[arg(long)]
    unit: Option<String>,
}

#[derive(Args, Clone, Copy)]
struct LimitArgs {
    #[arg(long, default_value_t = 64)]
    depth: usize,
    #[arg(long, default_value_t = 10_000)]
    nodes: usize,
}

impl From<LimitArgs> for Limits {
    fn from(a: LimitArgs) -> Limits {
        Limits::new(a.depth, a.nodes)
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Single {
    Synch,
    Arity,
    Medium,
}

#[derive(Clone, Copy, ValueEnum)]
enum MutantArg {
    DropAck,
    DropSuccess,
    LoopAck,
    LeakName,
}

impl From<MutantArg> for Mutant {
    fn from(m: MutantArg) -> Mutant {
        match m {
            MutantArg::DropAck => Mutant::DropAck,
            MutantArg::DropSuccess => Mutant::DropSuccess,
            MutantArg::LoopAck => Mutant::LoopAck,
            MutantArg::LeakName => Mutant::LeakName,
        }
    }
}

/// A failure carrying its exit code.
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn input(message: impl Into<String>) -> Self {
        Failure {
            code: 1,
            message: message.into(),
        }
    }
}

impl From<EncodeError> for Failure {
    fn from(e: EncodeError) -> Self {
        let code = if matches!(e, EncodeError::Unreachable { .. }) { 2 } else { 1 };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

fn read(path: &PathBuf) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::input(format!("cannot read {}: {e}", path.display())))
}

fn load(input: &Input) -> Result<Vec<SourceUnit>, Failure> {
    let units = match (&input.expr, &input.file, input.lang) {
        (Some(text), _, Some(lang)) => vec![single_unit(text, lang)?],
        (None, Some(path), Some(lang)) => vec![single_unit(&read(path)?, lang)?],
        (None, Some(path), None) => parse_corpus(&read(path)?, ParseOptions::default()).map_err(|errs| {
            let lines: Vec<String> = errs.iter().map(|e| format!("{}: {e}", path.display())).collect();
            Failure::input(lines.join("\n"))
        })?,
        _ => return Err(Failure::input("give a corpus file, or a process with --lang")),
    };
    match &input.unit {
        None => Ok(units),
        Some(name) => units
            .into_iter()
            .find(|u| &u.name == name)
            .map(|u| vec![u])
            .ok_or_else(|| Failure::input(format!("no unit named `{name}`"))),
    }
}

fn single_unit(text: &str, lang: Language) -> Result<SourceUnit, Failure> {
    let body = parse_process(text.trim(), &lang).map_err(|e| Failure::input(e.to_string()))?;
    Ok(SourceUnit::new("main", lang, body))
}

fn only(units: Vec<SourceUnit>) -> Result<SourceUnit, Failure> {
    let mut units = units;
    match units.len() {
        1 => Ok(units.pop().expect("one unit")),
        0 => Err(Failure::input("the corpus is empty")),
        n => Err(Failure::input(format!("the corpus has {n} units; pick one with --unit"))),
    }
}

fn run(cli: Cli) -> Result<u8, Failure> {
    match cli.command {
        Command::Parse(input) => {
            for u in load(&input)? {
                println!("{u}");
            }
            Ok(0)
        }
        Command::Trace {
            input,
            limits,
            graph,
            dot,
        } => {
            let u = only(load(&input)?)?;
            let g = explore(&u.body, &u.language, limits.into());
            if graph {
                print!("{}", g.edge_list());
            } else if dot {
                print!("{}", g.to_dot());
            } else {
                for (i, n) in g.nodes.iter().enumerate() {
                    println!("{i} (depth {}): {n}", g.depth[i]);
                    for j in g.successors(i) {
                        println!("  -> {j}");
                    }
                }
                println!("{} nodes, {} edges", g.nodes.len(), g.edges.len());
                if g.cycle_found {
                    println!("cycle: some state reduces back to itself");
                }
            }
            let mut notes = Vec::new();
            if g.depth_truncated {
                notes.push(format!("truncated: depth limit {} reached with redexes left", limits.depth));
            }
            if g.node_truncated {
                notes.push(format!("truncated: node limit {} reached", limits.nodes));
            }
            for n in notes {
                // Graph formats stay machine-readable on stdout.
                if graph || dot {
                    eprintln!("{n}");
                } else {
                    println!("{n}");
                }
            }
            Ok(0)
        }
        Command::Encode { input, from, to } => {
            let units = load(&input)?;
            if let Some(from) = from {
                pcalc::encoding::pipeline(from, to)?;
            }
            for u in units {
                let from = from.unwrap_or(u.language);
                let choice = EncodingChoice::Route { from, to };
                let p = pipeline_for(&u, choice, None)?.ok_or_else(|| {
                    Failure::input(format!("unit `{}` is in {}, which is not below {from}", u.name, u.language))
                })?;
                let body = p.encode(&u.body)?;
                println!("{}", SourceUnit::new(u.name, to, body));
            }
            Ok(0)
        }
        Command::Verify {
            corpus,
            from,
            to,
            encoding,
            mutant,
            limits,
        } => {
            let units = load(&Input {
                file: Some(corpus),
                expr: None,
                lang: None,
                unit: None,
            })?;
            let choice = match (from, to, encoding) {
                (Some(from), Some(to), _) => EncodingChoice::Route { from, to },
                (_, _, Some(e)) => EncodingChoice::Single(match e {
                    Single::Synch => EncodingKind::Synch,
                    Single::Arity => EncodingKind::Arity,
                    Single::Medium => EncodingKind::Medium,
                }),
                _ => return Err(Failure::input("give --from and --to, or --encoding")),
            };
            let report = run_corpus(&units, choice, mutant.map(Mutant::from), limits.into())?;
            print!("{}", report.render());
            if !report.skipped.is_empty() {
                eprintln!("not applicable to: {}", report.skipped.join(", "));
            }
            Ok(report.exit_code() as u8)
        }
        Command::Succeeds { input, limits } => {
            let u = only(load(&input)?)?;
            let verdict = succeeds(&u.body, &u.language, limits.into());
            println!("{verdict}");
            Ok(match verdict {
                Success::Yes => 0,
                Success::NotWithinBounds => 3,
            })
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            // Usage errors are input errors; 2 is kept for missing encodings.
            return ExitCode::from(u8::from(e.use_stderr()));
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("pcalc: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
