//! Seeded random processes that conform to a given language.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::language::{Language, Matching};
use crate::process::Process;
use crate::term::{name, Name, Pattern, Term};

#[derive(Debug, Clone)]
pub struct Generator {
    pub lang: Language,
    /// Nesting depth of process constructors.
    pub depth: usize,
    /// Depth of compound terms and patterns.
    pub term_depth: usize,
    /// Largest tuple in polyadic languages.
    pub max_arity: usize,
    pub replication: bool,
    free: Vec<Name>,
}

impl Generator {
    pub fn new(lang: Language) -> Self {
        Generator {
            lang,
            depth: 4,
            term_depth: 2,
            max_arity: 3,
            replication: true,
            free: ["a", "b", "c"].into_iter().map(name).collect(),
        }
    }

    pub fn without_replication(mut self) -> Self {
        self.replication = false;
        self
    }

    pub fn process<R: Rng>(&self, rng: &mut R) -> Process {
        let mut st = State {
            gen: self,
            scope: self.free.clone(),
            counter: 0,
        };
        st.process(rng, self.depth)
    }
}

/// `count` processes from one seed; identical seeds give identical lists.
pub fn generate(gen: &Generator, seed: u64, count: usize) -> Vec<Process> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| gen.process(&mut rng)).collect()
}

struct State<'g> {
    gen: &'g Generator,
    /// Names usable in terms at the current point.
    scope: Vec<Name>,
    counter: usize,
}

impl State<'_> {
    fn fresh(&mut self, prefix: &str) -> Name {
        self.counter += 1;
        name(&format!("{prefix}{}", self.counter))
    }

    fn intensional(&self) -> bool {
        self.gen.lang.matching == Matching::Intensional
    }

    fn pick<R: Rng>(&self, rng: &mut R) -> Name {
        self.scope.choose(rng).expect("scope has free names").clone()
    }

    fn term<R: Rng>(&self, rng: &mut R, depth: usize) -> Term {
        if depth == 0 || !self.intensional() || rng.gen_bool(0.6) {
            return Term::Name(self.pick(rng));
        }
        Term::compound(self.term(rng, depth - 1), self.term(rng, depth - 1))
    }

    fn pattern<R: Rng>(&mut self, rng: &mut R, depth: usize) -> Pattern {
        let lang = self.gen.lang.matching;
        let roll = rng.gen_range(0..10);
        if lang == Matching::Intensional && depth > 0 && roll < 3 {
            return Pattern::compound(self.pattern(rng, depth - 1), self.pattern(rng, depth - 1));
        }
        if lang >= Matching::NameMatch && roll < 6 {
            let t = if lang == Matching::Intensional {
                self.term(rng, depth.min(1))
            } else {
                Term::Name(self.pick(rng))
            };
            return Pattern::name_match(&t);
        }
        Pattern::Bind(self.fresh("x"))
    }

    fn tuple_len<R: Rng>(&self, rng: &mut R) -> usize {
        if self.gen.lang.is_polyadic() {
            rng.gen_range(1..=self.gen.max_arity)
        } else {
            1
        }
    }

    fn channel<R: Rng>(&self, rng: &mut R) -> Option<Term> {
        self.gen
            .lang
            .has_channels()
            .then(|| self.term(rng, self.gen.term_depth.min(1)))
    }

    fn process<R: Rng>(&mut self, rng: &mut R, depth: usize) -> Process {
        let leaf = depth == 0 || rng.gen_bool(0.15);
        if leaf {
            return match rng.gen_range(0..3) {
                0 => Process::Nil,
                1 => Process::Ok,
                _ => self.output(rng, 0),
            };
        }
        let kinds = if self.gen.replication { 7 } else { 6 };
        match rng.gen_range(0..kinds) {
            0 => self.output(rng, depth),
            1 | 2 => {
                let chan = self.channel(rng);
                let n = self.tuple_len(rng);
                let pats: Vec<Pattern> = (0..n).map(|_| self.pattern(rng, self.gen.term_depth)).collect();
                let mark = self.scope.len();
                for p in &pats {
                    self.scope.extend(p.binders());
                }
                let cont = self.process(rng, depth - 1);
                self.scope.truncate(mark);
                Process::input(chan, pats, cont)
            }
            3 => {
                let n = self.fresh("n");
                self.scope.push(n.clone());
                let body = self.process(rng, depth - 1);
                self.scope.pop();
                Process::restrict(n, body)
            }
            4 => Process::par(self.process(rng, depth - 1), self.process(rng, depth - 1)),
            5 => {
                let lhs = self.term(rng, 1);
                let rhs = self.term(rng, 1);
                Process::cond(lhs, rhs, self.process(rng, depth - 1), self.process(rng, depth - 1))
            }
            _ => Process::repl(self.process(rng, depth - 1)),
        }
    }

    fn output<R: Rng>(&mut self, rng: &mut R, depth: usize) -> Process {
        let chan = self.channel(rng);
        let n = self.tuple_len(rng);
        let args = (0..n).map(|_| self.term(rng, self.gen.term_depth)).collect();
        let cont = self
            .gen
            .lang
            .is_synchronous()
            .then(|| if depth == 0 { Process::Nil } else { self.process(rng, depth - 1) });
        Process::output(chan, args, cont)
    }
}
