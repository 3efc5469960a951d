//! Deterministic supplies of reserved names.

use std::collections::BTreeSet;

use crate::term::Name;

/// Hands out `#<prefix>0`, `#<prefix>1`, ... skipping anything in the avoid
/// set. The counter is monotone, so every name handed out is distinct.
#[derive(Debug, Clone)]
pub struct FreshNames {
    prefix: &'static str,
    next: usize,
    avoid: BTreeSet<Name>,
}

impl FreshNames {
    pub fn new(prefix: &'static str, avoid: BTreeSet<Name>) -> Self {
        FreshNames {
            prefix,
            next: 0,
            avoid,
        }
    }

    pub fn avoid(&mut self, n: Name) {
        self.avoid.insert(n);
    }

    pub fn avoid_all<I: IntoIterator<Item = Name>>(&mut self, names: I) {
        self.avoid.extend(names);
    }

    pub fn fresh(&mut self) -> Name {
        loop {
            let candidate = Name::reserved(&format!("{}{}", self.prefix, self.next));
            self.next += 1;
            if !self.avoid.contains(&candidate) {
                self.avoid.insert(candidate.clone());
                return candidate;
            }
        }
    }
}

/// Canonical names indexed by binder depth: level `i` maps to the `i`-th
/// member of `#n0, #n1, ...` that is not a free name of the process being
/// normalised. Distinct levels give distinct names, and no level name can
/// collide with a free name.
#[derive(Debug, Clone)]
pub struct LevelNames {
    free: BTreeSet<Name>,
    names: Vec<Name>,
    cursor: usize,
}

impl LevelNames {
    pub fn new(free: BTreeSet<Name>) -> Self {
        LevelNames {
            free,
            names: Vec::new(),
            cursor: 0,
        }
    }

    pub fn level(&mut self, i: usize) -> Name {
        while self.names.len() <= i {
            let candidate = Name::reserved(&format!("n{}", self.cursor));
            self.cursor += 1;
            if !self.free.contains(&candidate) {
                self.names.push(candidate);
            }
        }
        self.names[i].clone()
    }
}
