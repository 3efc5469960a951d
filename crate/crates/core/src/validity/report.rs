use std::fmt;

use rayon::prelude::*;

use super::checks::{
    check_compositionality, check_divergence_reflection, check_name_invariance,
    check_operational_correspondence, check_success_sensitiveness, default_renaming, UnitRun,
};
use super::{Criterion, Status, Verdict};
use crate::encoding::{embed_stages, pipeline, single, EncodeError, EncodingKind, Mutant, Pipeline};
use crate::language::Language;
use crate::semantics::Limits;
use crate::syntax::SourceUnit;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EncodingChoice {
    /// One translation, applied to every unit it fits.
    Single(EncodingKind),
    /// The full route `from -> to`, applied to every unit of a language
    /// below `from`.
    Route { from: Language, to: Language },
}

impl fmt::Display for EncodingChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            EncodingChoice::Single(k) => write!(f, "{k}"),
            EncodingChoice::Route { from, to } => write!(f, "route {from}->{to}"),
        }
    }
}

/// The pipeline to check `unit` under, or `None` when the choice does not
/// apply to its language.
pub fn pipeline_for(
    unit: &SourceUnit,
    choice: EncodingChoice,
    mutant: Option<Mutant>,
) -> Result<Option<Pipeline>, EncodeError> {
    let base = match choice {
        EncodingChoice::Single(kind) => match single(kind, unit.language) {
            Ok(p) => p,
            Err(EncodeError::WrongSource { .. }) => return Ok(None),
            Err(e) => return Err(e),
        },
        EncodingChoice::Route { from, to } => {
            if !unit.language.leq(&from) {
                return Ok(None);
            }
            let mut p = Pipeline::identity(unit.language);
            for s in embed_stages(unit.language, from) {
                p.push(Box::new(s));
            }
            p.then(pipeline(from, to)?)
        }
    };
    match mutant {
        None => Ok(Some(base)),
        Some(m) => match base.with_mutant(m) {
            Ok(p) => Ok(Some(p)),
            Err(EncodeError::MutantNotApplicable { .. }) => Ok(None),
            Err(e) => Err(e),
        },
    }
}

/// All five verdicts for one unit, in criterion order.
pub fn run_unit(unit: &SourceUnit, pipeline: &Pipeline, limits: Limits) -> Vec<Verdict> {
    let sigma = default_renaming(&unit.body);
    let invariance = check_name_invariance(unit, pipeline, &sigma)
        .unwrap_or_else(|e| Verdict::fail(&unit.name, Criterion::NameInvariance, e.to_string()));
    let run = UnitRun::new(unit, pipeline, limits);
    vec![
        check_compositionality(unit, pipeline),
        invariance,
        check_operational_correspondence(&run),
        check_divergence_reflection(&run),
        check_success_sensitiveness(&run),
    ]
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Report {
    /// Sorted by unit name, then criterion.
    pub verdicts: Vec<Verdict>,
    /// Units the encoding does not apply to.
    pub skipped: Vec<String>,
}

impl Report {
    pub fn count(&self, status: Status) -> usize {
        self.verdicts.iter().filter(|v| v.status == status).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "PASS {} / FAIL {} / INCONCLUSIVE {}",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Inconclusive)
        )
    }

    /// Verdict lines followed by the summary line.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for v in &self.verdicts {
            out.push_str(&v.to_string());
            out.push('\n');
        }
        out.push_str(&self.summary());
        out.push('\n');
        out
    }

    pub fn failures(&self) -> impl Iterator<Item = &Verdict> {
        self.verdicts.iter().filter(|v| v.status == Status::Fail)
    }

    /// 0 iff nothing failed.
    pub fn exit_code(&self) -> i32 {
        i32::from(self.count(Status::Fail) > 0)
    }
}

/// Checks every applicable unit. Fails only when the route itself does not
/// exist.
pub fn run_corpus(
    units: &[SourceUnit],
    choice: EncodingChoice,
    mutant: Option<Mutant>,
    limits: Limits,
) -> Result<Report, EncodeError> {
    if let EncodingChoice::Route { from, to } = choice {
        pipeline(from, to)?;
    }
    let results: Vec<Result<Result<Vec<Verdict>, String>, EncodeError>> = units
        .par_iter()
        .map(|u| {
            Ok(match pipeline_for(u, choice, mutant)? {
                Some(p) => Ok(run_unit(u, &p, limits)),
                None => Err(u.name.clone()),
            })
        })
        .collect();
    let mut report = Report::default();
    for r in results {
        match r? {
            Ok(vs) => report.verdicts.extend(vs),
            Err(name) => report.skipped.push(name),
        }
    }
    report
        .verdicts
        .sort_by(|a, b| (&a.unit, a.criterion).cmp(&(&b.unit, b.criterion)));
    report.skipped.sort();
    Ok(report)
}
