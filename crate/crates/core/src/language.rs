//! Language descriptors: the four communication features that select one of
//! the 24 calculi.
//!
//! Each feature is a small ordered enum; the derived `Ord` follows the
//! expressiveness order of the family (`A < S`, `M < P`, `D < C`,
//! `NO < NM < I`), so the componentwise order on [`Language`] is just the
//! conjunction of four `<=` comparisons.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// Whether outputs carry a continuation released on interaction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Synchronism {
    Asynchronous,
    Synchronous,
}

/// Whether a single interaction exchanges one value or a tuple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Arity {
    Monadic,
    Polyadic,
}

/// Whether outputs meet inputs in a shared space or along a channel.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Medium {
    Dataspace,
    Channel,
}

/// How much an input pattern may inspect.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Matching {
    /// Binding names only.
    NoMatch,
    /// Binding names and name equality tests.
    NameMatch,
    /// Compound patterns over structured terms.
    Intensional,
}

/// One point in the 24-language family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Language {
    pub synchronism: Synchronism,
    pub arity: Arity,
    pub medium: Medium,
    pub matching: Matching,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("invalid language code `{0}`: expected four letters from [AS][MP][DC][ONI]")]
pub struct LanguageCodeError(pub String);

impl Language {
    pub const fn new(
        synchronism: Synchronism,
        arity: Arity,
        medium: Medium,
        matching: Matching,
    ) -> Self {
        Language {
            synchronism,
            arity,
            medium,
            matching,
        }
    }

    /// All 24 languages in code order (`AMDO`, `AMDN`, `AMDI`, `AMCO`, ...).
    pub fn all() -> Vec<Language> {
        let mut out = Vec::with_capacity(24);
        for s in [Synchronism::Asynchronous, Synchronism::Synchronous] {
            for a in [Arity::Monadic, Arity::Polyadic] {
                for m in [Medium::Dataspace, Medium::Channel] {
                    for p in [Matching::NoMatch, Matching::NameMatch, Matching::Intensional] {
                        out.push(Language::new(s, a, m, p));
                    }
                }
            }
        }
        out
    }

    /// Componentwise order: `self` is a special case of `other`.
    pub fn leq(&self, other: &Language) -> bool {
        self.synchronism <= other.synchronism
            && self.arity <= other.arity
            && self.medium <= other.medium
            && self.matching <= other.matching
    }

    pub fn is_synchronous(&self) -> bool {
        self.synchronism == Synchronism::Synchronous
    }

    pub fn is_polyadic(&self) -> bool {
        self.arity == Arity::Polyadic
    }

    pub fn has_channels(&self) -> bool {
        self.medium == Medium::Channel
    }

    pub fn is_intensional(&self) -> bool {
        self.matching == Matching::Intensional
    }

    pub fn with_synchronism(mut self, s: Synchronism) -> Self {
        self.synchronism = s;
        self
    }

    pub fn with_arity(mut self, a: Arity) -> Self {
        self.arity = a;
        self
    }

    pub fn with_medium(mut self, m: Medium) -> Self {
        self.medium = m;
        self
    }

    pub fn with_matching(mut self, m: Matching) -> Self {
        self.matching = m;
        self
    }

    /// The four-letter code, e.g. `SPCN`.
    pub fn code(&self) -> String {
        self.to_string()
    }
}

impl fmt::Display for Language {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self.synchronism {
            Synchronism::Asynchronous => 'A',
            Synchronism::Synchronous => 'S',
        };
        let a = match self.arity {
            Arity::Monadic => 'M',
            Arity::Polyadic => 'P',
        };
        let m = match self.medium {
            Medium::Dataspace => 'D',
            Medium::Channel => 'C',
        };
        let p = match self.matching {
            Matching::NoMatch => 'O',
            Matching::NameMatch => 'N',
            Matching::Intensional => 'I',
        };
        write!(f, "{s}{a}{m}{p}")
    }
}

impl FromStr for Language {
    type Err = LanguageCodeError;

    fn from_str(code: &str) -> Result<Self, Self::Err> {
        let err = || LanguageCodeError(code.to_string());
        let chars: Vec<char> = code.trim().chars().collect();
        if chars.len() != 4 {
            return Err(err());
        }
        let synchronism = match chars[0] {
            'A' => Synchronism::Asynchronous,
            'S' => Synchronism::Synchronous,
            _ => return Err(err()),
        };
        let arity = match chars[1] {
            'M' => Arity::Monadic,
            'P' => Arity::Polyadic,
            _ => return Err(err()),
        };
        let medium = match chars[2] {
            'D' => Medium::Dataspace,
            'C' => Medium::Channel,
            _ => return Err(err()),
        };
        let matching = match chars[3] {
            'O' => Matching::NoMatch,
            'N' => Matching::NameMatch,
            'I' => Matching::Intensional,
            _ => return Err(err()),
        };
        Ok(Language::new(synchronism, arity, medium, matching))
    }
}

impl fmt::Display for Matching {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Matching::NoMatch => "NO",
            Matching::NameMatch => "NM",
            Matching::Intensional => "I",
        })
    }
}
