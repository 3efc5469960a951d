//! Deliberately broken encoders. Each one violates exactly one validity
//! criterion, so a harness that accepts them is not checking that criterion.

use std::fmt;
use std::str::FromStr;

use super::operator::{rewrite, Operator, Rewrite};
use super::{EncodingKind, Encoder};
use crate::language::Language;
use crate::process::Process;
use crate::term::{Name, Pattern, Term};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Mutant {
    /// Synchronism without the acknowledgement output.
    DropAck,
    /// Every `ok` becomes `0`.
    DropSuccess,
    /// Acknowledgements echoed forever by a replicated input.
    LoopAck,
    /// Parallel composition adds an output on a name from outside.
    LeakName,
}

impl Mutant {
    pub fn all() -> [Mutant; 4] {
        [Mutant::DropAck, Mutant::DropSuccess, Mutant::LoopAck, Mutant::LeakName]
    }
}

impl fmt::Display for Mutant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Mutant::DropAck => "drop-ack",
            Mutant::DropSuccess => "drop-success",
            Mutant::LoopAck => "loop-ack",
            Mutant::LeakName => "leak-name",
        })
    }
}

impl FromStr for Mutant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Mutant::all()
            .into_iter()
            .find(|m| m.to_string() == s)
            .ok_or_else(|| format!("unknown mutant `{s}` (expected drop-ack, drop-success, loop-ack, leak-name)"))
    }
}

/// Identity except that `ok` is erased.
#[derive(Debug, Clone)]
pub struct DropSuccess {
    lang: Language,
}

impl DropSuccess {
    pub fn new(lang: Language) -> Self {
        DropSuccess { lang }
    }
}

struct Erase;

impl Rewrite for Erase {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process {
        Process::output(channel.cloned(), args.to_vec(), cont.map(|k| rewrite(self, k)))
    }

    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process {
        Process::input(channel.cloned(), patterns.to_vec(), rewrite(self, cont))
    }

    fn ok(&mut self) -> Process {
        Process::Nil
    }
}

impl Encoder for DropSuccess {
    fn kind(&self) -> EncodingKind {
        EncodingKind::Mutant(Mutant::DropSuccess)
    }

    fn source(&self) -> Language {
        self.lang
    }

    fn target(&self) -> Language {
        self.lang
    }

    fn encode(&self, p: &Process) -> Process {
        rewrite(&mut Erase, p)
    }

    fn context(&self, op: &Operator, parts: &[Process]) -> Process {
        match op {
            Operator::Ok => Process::Nil,
            other => other.apply(parts),
        }
    }
}

/// The free name the leaking context mentions.
pub const LEAKED_NAME: &str = "leaked";

/// Identity except that each parallel composition also emits `leaked`.
#[derive(Debug, Clone)]
pub struct LeakName {
    lang: Language,
}

impl LeakName {
    pub fn new(lang: Language) -> Self {
        LeakName { lang }
    }

    fn leak(&self) -> Process {
        let n = Term::Name(Name::new(LEAKED_NAME).expect("valid name"));
        let channel = self.lang.has_channels().then(|| n.clone());
        let cont = self.lang.is_synchronous().then_some(Process::Nil);
        Process::output(channel, vec![n], cont)
    }
}

struct Leak<'a>(&'a LeakName);

impl Rewrite for Leak<'_> {
    fn output(&mut self, channel: Option<&Term>, args: &[Term], cont: Option<&Process>) -> Process {
        Process::output(channel.cloned(), args.to_vec(), cont.map(|k| rewrite(self, k)))
    }

    fn input(&mut self, channel: Option<&Term>, patterns: &[Pattern], cont: &Process) -> Process {
        Process::input(channel.cloned(), patterns.to_vec(), rewrite(self, cont))
    }

    fn par(&mut self, l: &Process, r: &Process) -> Process {
        let l = rewrite(self, l);
        let r = rewrite(self, r);
        Process::par_all([l, r, self.0.leak()])
    }
}

impl Encoder for LeakName {
    fn kind(&self) -> EncodingKind {
        EncodingKind::Mutant(Mutant::LeakName)
    }

    fn source(&self) -> Language {
        self.lang
    }

    fn target(&self) -> Language {
        self.lang
    }

    fn encode(&self, p: &Process) -> Process {
        rewrite(&mut Leak(self), p)
    }

    fn context(&self, op: &Operator, parts: &[Process]) -> Process {
        match op {
            Operator::Par => Process::par_all([parts[0].clone(), parts[1].clone(), self.leak()]),
            other => other.apply(parts),
        }
    }
}
