use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};

use super::{Criterion, HarnessError, Status, Verdict};
use crate::encoding::{EncodeError, Encoder, Operator, Pipeline};
use crate::process::{alpha_eq, apply_subst_proc, free_names_proc, Process};
use crate::semantics::{canonicalize, explore, CanonicalForm, Limits, ReductionGraph};
use crate::syntax::{pretty, SourceUnit};
use crate::term::{Name, Substitution, Term};

/// Slack allowed on top of the step profile when a target state must get
/// back to the image of a source state.
pub const BACKWARD_SLACK: usize = 2;

/// Source graph, encoding, and target graph of one unit, shared by the
/// behavioural criteria.
pub struct UnitRun<'a> {
    pub unit: &'a SourceUnit,
    pub pipeline: &'a Pipeline,
    pub source: ReductionGraph,
    pub encoded: Result<Process, EncodeError>,
    pub target: Option<ReductionGraph>,
    /// Target node id of the image of each source node, if explored.
    images: Vec<Option<usize>>,
    image_errors: Vec<String>,
}

impl<'a> UnitRun<'a> {
    pub fn new(unit: &'a SourceUnit, pipeline: &'a Pipeline, limits: Limits) -> Self {
        let source = explore(&unit.body, &unit.language, limits);
        let encoded = pipeline.encode(&unit.body);
        let profile = pipeline.profile().max(1);
        let target_limits = Limits::new(
            limits.depth.saturating_mul(profile).saturating_add(BACKWARD_SLACK),
            limits.nodes.saturating_mul(profile),
        );
        let target = encoded
            .as_ref()
            .ok()
            .map(|e| explore(e, &pipeline.target(), target_limits));
        let mut images = Vec::new();
        let mut image_errors = Vec::new();
        if let Some(t) = &target {
            let index: HashMap<&CanonicalForm, usize> =
                t.nodes.iter().enumerate().map(|(i, n)| (n, i)).collect();
            for n in &source.nodes {
                match pipeline.encode(&n.to_process()) {
                    Ok(img) => images.push(index.get(&canonicalize(&img)).copied()),
                    Err(e) => {
                        image_errors.push(format!("state `{n}` does not encode: {e}"));
                        images.push(None);
                    }
                }
            }
        }
        UnitRun {
            unit,
            pipeline,
            source,
            encoded,
            target,
            images,
            image_errors,
        }
    }

    fn name(&self) -> &str {
        &self.unit.name
    }

    fn broken(&self, c: Criterion) -> Option<Verdict> {
        match &self.encoded {
            Err(e) => Some(Verdict::fail(self.name(), c, format!("encoding failed: {e}"))),
            Ok(_) => self
                .image_errors
                .first()
                .map(|e| Verdict::fail(self.name(), c, e.clone())),
        }
    }

    fn target(&self) -> &ReductionGraph {
        self.target.as_ref().expect("encoding succeeded")
    }

    fn bound_note(&self) -> Option<String> {
        let t = self.target();
        match (self.source.truncated(), t.truncated()) {
            (false, false) => None,
            (true, false) => Some("source exploration hit a bound".into()),
            (false, true) => Some("target exploration hit a bound".into()),
            (true, true) => Some("source and target explorations hit a bound".into()),
        }
    }

    /// Ids of target nodes that are images of source nodes.
    fn image_set(&self) -> BTreeSet<usize> {
        self.images.iter().flatten().copied().collect()
    }
}

/// Forward: each source state at depth `d` has its image among the target
/// states within `d * profile` steps. Backward: each target state reaches an
/// image within `profile + 2` steps.
pub fn check_operational_correspondence(run: &UnitRun) -> Verdict {
    let c = Criterion::OperationalCorrespondence;
    if let Some(v) = run.broken(c) {
        return v;
    }
    let t = run.target();
    let profile = run.pipeline.profile().max(1);
    let mut failure = None;
    for (i, n) in run.source.nodes.iter().enumerate() {
        let d = run.source.depth[i];
        match run.images[i] {
            Some(j) if t.depth[j] <= d * profile => {}
            Some(j) => {
                failure = Some(format!(
                    "image of source state `{n}` (depth {d}) first appears at target depth {}, beyond {}",
                    t.depth[j],
                    d * profile
                ));
                break;
            }
            None => {
                let images = run.image_set();
                let stuck = (0..t.nodes.len())
                    .find(|j| t.is_terminal(*j) && !images.contains(j))
                    .map(|j| format!("; target is stuck at `{}`", t.nodes[j]))
                    .unwrap_or_default();
                failure = Some(format!(
                    "image of source state `{n}` (depth {d}) is not reachable from the encoding{stuck}"
                ));
                break;
            }
        }
    }
    if failure.is_none() {
        let images = run.image_set();
        let horizon = profile + BACKWARD_SLACK;
        for (j, m) in t.nodes.iter().enumerate() {
            if !reaches_within(t, j, &images, horizon) {
                failure = Some(format!(
                    "target state `{m}` reaches no image of a source state within {horizon} steps"
                ));
                break;
            }
        }
    }
    match (failure, run.bound_note()) {
        (_, Some(note)) => Verdict::inconclusive(run.name(), c, note),
        (Some(w), None) => Verdict::fail(run.name(), c, w),
        (None, None) => Verdict::pass(run.name(), c),
    }
}

fn reaches_within(g: &ReductionGraph, from: usize, goals: &BTreeSet<usize>, steps: usize) -> bool {
    let mut seen = BTreeSet::from([from]);
    let mut queue = VecDeque::from([(from, 0usize)]);
    while let Some((v, d)) = queue.pop_front() {
        if goals.contains(&v) {
            return true;
        }
        if d == steps {
            continue;
        }
        for w in g.successors(v) {
            if seen.insert(w) {
                queue.push_back((w, d + 1));
            }
        }
    }
    false
}

/// Success is reachable in the source iff it is in the target.
pub fn check_success_sensitiveness(run: &UnitRun) -> Verdict {
    let c = Criterion::SuccessSensitiveness;
    if let Some(v) = run.broken(c) {
        return v;
    }
    let t = run.target();
    let s_yes = !run.source.success_nodes.is_empty();
    let t_yes = !t.success_nodes.is_empty();
    if s_yes == t_yes {
        if s_yes || !(run.source.truncated() || t.truncated()) {
            return Verdict::pass(run.name(), c);
        }
        return Verdict::inconclusive(run.name(), c, "neither side succeeds within bounds");
    }
    let (quiet, quiet_truncated) = if s_yes {
        ("target", t.truncated())
    } else {
        ("source", run.source.truncated())
    };
    if quiet_truncated {
        return Verdict::inconclusive(
            run.name(),
            c,
            format!("{quiet} shows no success within bounds"),
        );
    }
    let witness = if s_yes {
        let s = &run.source.nodes[*run.source.success_nodes.iter().next().expect("nonempty")];
        format!("source reaches success at `{s}`; the encoding never does")
    } else {
        let m = &t.nodes[*t.success_nodes.iter().next().expect("nonempty")];
        format!("encoding reaches success at `{m}`; the source never does")
    };
    Verdict::fail(run.name(), c, witness)
}

/// A target that loops or outruns its depth bound while the source is
/// finite and acyclic has an infinite computation the source lacks.
pub fn check_divergence_reflection(run: &UnitRun) -> Verdict {
    let c = Criterion::DivergenceReflection;
    if let Some(v) = run.broken(c) {
        return v;
    }
    let t = run.target();
    let source_finite = !run.source.truncated() && !run.source.cycle_found;
    if !source_finite {
        if run.source.cycle_found {
            return Verdict::pass(run.name(), c);
        }
        return Verdict::inconclusive(run.name(), c, "source exploration hit a bound");
    }
    if t.cycle_found {
        let witness = cycle_witness(t).unwrap_or_else(|| "target graph has a cycle".into());
        return Verdict::fail(
            run.name(),
            c,
            format!("target diverges though the source terminates: {witness}"),
        );
    }
    if t.depth_truncated {
        return Verdict::fail(
            run.name(),
            c,
            "target runs past its depth bound though the source terminates",
        );
    }
    if t.node_truncated {
        return Verdict::inconclusive(run.name(), c, "target exploration hit the node bound");
    }
    Verdict::pass(run.name(), c)
}

fn cycle_witness(g: &ReductionGraph) -> Option<String> {
    for &(a, b) in &g.edges {
        if a == b {
            return Some(format!("`{}` reduces to itself", g.nodes[a]));
        }
    }
    for &(a, b) in &g.edges {
        let goal = BTreeSet::from([a]);
        if reaches_within(g, b, &goal, g.nodes.len()) {
            return Some(format!("`{}` reduces back to itself through `{}`", g.nodes[a], g.nodes[b]));
        }
    }
    None
}

/// Rotates the free user names of `p` and sends the last one to a name not
/// occurring in `p`. Injective by construction.
pub fn default_renaming(p: &Process) -> BTreeMap<Name, Name> {
    let free: Vec<Name> = free_names_proc(p)
        .into_iter()
        .filter(|n| !n.is_reserved())
        .collect();
    if free.is_empty() {
        return BTreeMap::new();
    }
    let used = p.names();
    let spare = (0..)
        .map(|i| Name::new(&format!("v{i}")).expect("valid name"))
        .find(|n| !used.contains(n))
        .expect("unbounded supply");
    let mut out = BTreeMap::new();
    for (i, n) in free.iter().enumerate() {
        let image = free.get(i + 1).cloned().unwrap_or_else(|| spare.clone());
        out.insert(n.clone(), image);
    }
    out
}

/// `[sigma S]` against `sigma [S]`, where sigma leaves reserved names alone.
pub fn check_name_invariance(
    unit: &SourceUnit,
    pipeline: &Pipeline,
    sigma: &BTreeMap<Name, Name>,
) -> Result<Verdict, HarnessError> {
    let c = Criterion::NameInvariance;
    if let Some((k, v)) = sigma.iter().find(|(k, v)| k.is_reserved() || v.is_reserved()) {
        let bad = if k.is_reserved() { k } else { v };
        return Err(HarnessError::ReservedInRenaming(bad.to_string()));
    }
    let free = free_names_proc(&unit.body);
    let images: Vec<&Name> = free.iter().map(|n| sigma.get(n).unwrap_or(n)).collect();
    let distinct: BTreeSet<&Name> = images.iter().copied().collect();
    if distinct.len() != images.len() {
        return Ok(Verdict::inconclusive(
            &unit.name,
            c,
            "renaming is not injective on the free names; that case needs a behavioural equivalence",
        ));
    }
    let s = Substitution::from_pairs(sigma.iter().map(|(k, v)| (k.clone(), Term::Name(v.clone()))));
    let renamed = apply_subst_proc(&s, &unit.body);
    let lhs = match pipeline.encode(&renamed) {
        Ok(p) => p,
        Err(e) => return Ok(Verdict::fail(&unit.name, c, format!("renamed unit does not encode: {e}"))),
    };
    let rhs = match pipeline.encode(&unit.body) {
        Ok(p) => apply_subst_proc(&s, &p),
        Err(e) => return Ok(Verdict::fail(&unit.name, c, format!("encoding failed: {e}"))),
    };
    if alpha_eq(&lhs, &rhs) {
        Ok(Verdict::pass(&unit.name, c))
    } else {
        Ok(Verdict::fail(
            &unit.name,
            c,
            format!("[sigma S] = `{}` but sigma [S] = `{}`", pretty(&lhs), pretty(&rhs)),
        ))
    }
}

/// Checks the operator at the root of `p` against the encoder's context:
/// the translation must equal the context filled with the translated
/// arguments, and the context may only add names from the arguments, the
/// operator, or the reserved space.
pub fn check_compositionality_op(enc: &dyn Encoder, p: &Process) -> Result<(), String> {
    let (op, parts) = Operator::split(p);
    let encoded: Vec<Process> = parts.iter().map(|q| enc.encode(q)).collect();
    let filled = enc.context(&op, &encoded);
    let direct = enc.encode(p);
    if !alpha_eq(&direct, &filled) {
        return Err(format!(
            "{} operator in `{}`: translation `{}` differs from its context `{}`",
            op.label(),
            pretty(p),
            pretty(&direct),
            pretty(&filled)
        ));
    }
    let mut allowed = op.names();
    for q in &parts {
        allowed.extend(free_names_proc(q));
    }
    if let Some(extra) = free_names_proc(&filled)
        .into_iter()
        .find(|n| !n.is_reserved() && !allowed.contains(n))
    {
        return Err(format!(
            "{} context for `{}` depends on the outside name `{extra}`",
            op.label(),
            pretty(p)
        ));
    }
    Ok(())
}

/// Every operator occurrence, stage by stage along the pipeline.
pub fn check_compositionality(unit: &SourceUnit, pipeline: &Pipeline) -> Verdict {
    let c = Criterion::Compositionality;
    let inputs = match pipeline.encode_stages(&unit.body) {
        Ok(v) => v,
        Err(e) => return Verdict::fail(&unit.name, c, format!("encoding failed: {e}")),
    };
    for (stage, input) in pipeline.stages().iter().zip(&inputs) {
        let mut subs = Vec::new();
        subprocesses(input, &mut subs);
        for q in subs {
            if let Err(w) = check_compositionality_op(stage.as_ref(), q) {
                return Verdict::fail(&unit.name, c, format!("stage {}: {w}", stage.kind()));
            }
        }
    }
    Verdict::pass(&unit.name, c)
}

fn subprocesses<'p>(p: &'p Process, out: &mut Vec<&'p Process>) {
    out.push(p);
    match p {
        Process::Nil | Process::Ok => {}
        Process::Output { cont, .. } => {
            if let Some(k) = cont {
                subprocesses(k, out);
            }
        }
        Process::Input { cont, .. } => subprocesses(cont, out),
        Process::Restrict(_, b) | Process::Repl(b) => subprocesses(b, out),
        Process::Par(l, r) => {
            subprocesses(l, out);
            subprocesses(r, out);
        }
        Process::Cond { then, otherwise, .. } => {
            subprocesses(then, out);
            subprocesses(otherwise, out);
        }
    }
}

impl Verdict {
    pub fn is_fail(&self) -> bool {
        self.status == Status::Fail
    }
}
