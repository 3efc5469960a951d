//! Bounded checks of the five validity criteria for an encoding.
//!
//! Behavioural equivalence on the target side is replaced by structural
//! congruence, which is stronger; a `Fail` is therefore exact for the
//! shipped encoders and advisory for others.

mod checks;
mod lemmas;
mod report;

use std::fmt;

use thiserror::Error;

pub use checks::{
    check_compositionality, check_compositionality_op, check_divergence_reflection,
    check_name_invariance, check_operational_correspondence, check_success_sensitiveness,
    default_renaming, UnitRun,
};
pub use lemmas::{graph_isomorphism, prop1_stuck_preserved, synch_profile};
pub use report::{pipeline_for, run_corpus, run_unit, EncodingChoice, Report};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Criterion {
    Compositionality,
    NameInvariance,
    OperationalCorrespondence,
    DivergenceReflection,
    SuccessSensitiveness,
}

impl Criterion {
    pub fn all() -> [Criterion; 5] {
        [
            Criterion::Compositionality,
            Criterion::NameInvariance,
            Criterion::OperationalCorrespondence,
            Criterion::DivergenceReflection,
            Criterion::SuccessSensitiveness,
        ]
    }
}

impl fmt::Display for Criterion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Criterion::Compositionality => "compositionality",
            Criterion::NameInvariance => "name-invariance",
            Criterion::OperationalCorrespondence => "operational-correspondence",
            Criterion::DivergenceReflection => "divergence-reflection",
            Criterion::SuccessSensitiveness => "success-sensitiveness",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// A `Fail` always carries a witness; an `Inconclusive` says which bound
/// was hit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Verdict {
    pub unit: String,
    pub criterion: Criterion,
    pub status: Status,
    pub witness: Option<String>,
}

impl Verdict {
    pub fn pass(unit: &str, criterion: Criterion) -> Self {
        Verdict {
            unit: unit.to_string(),
            criterion,
            status: Status::Pass,
            witness: None,
        }
    }

    pub fn fail(unit: &str, criterion: Criterion, witness: impl Into<String>) -> Self {
        Verdict {
            unit: unit.to_string(),
            criterion,
            status: Status::Fail,
            witness: Some(witness.into()),
        }
    }

    pub fn inconclusive(unit: &str, criterion: Criterion, why: impl Into<String>) -> Self {
        Verdict {
            unit: unit.to_string(),
            criterion,
            status: Status::Inconclusive,
            witness: Some(why.into()),
        }
    }
}

/// One report line: `unit<TAB>criterion<TAB>status[<TAB>witness]`.
impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}\t{}\t{}", self.unit, self.criterion, self.status)?;
        if let Some(w) = &self.witness {
            let flat: String = w
                .chars()
                .map(|c| if c == '\t' || c == '\n' { ' ' } else { c })
                .collect();
            write!(f, "\t{flat}")?;
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum HarnessError {
    #[error("renaming touches reserved name `{0}`")]
    ReservedInRenaming(String),
}
