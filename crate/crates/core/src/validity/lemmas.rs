//! Graph-level forms of the per-encoding lemmas, for finite source graphs.

use std::collections::BTreeSet;

use crate::encoding::Pipeline;
use crate::semantics::{canonicalize, explore, redexes, Limits, ReductionGraph};
use crate::syntax::SourceUnit;

/// Target node id of the image of every source node.
fn image_map(
    source: &ReductionGraph,
    target: &ReductionGraph,
    pipeline: &Pipeline,
) -> Result<Vec<usize>, String> {
    source
        .nodes
        .iter()
        .map(|n| {
            let img = pipeline
                .encode(&n.to_process())
                .map_err(|e| format!("state `{n}` does not encode: {e}"))?;
            let form = canonicalize(&img);
            target
                .id_of(&form)
                .ok_or_else(|| format!("image `{form}` of state `{n}` is not reachable"))
        })
        .collect()
}

fn graphs(unit: &SourceUnit, pipeline: &Pipeline, limits: Limits, target_depth: usize) -> Result<(ReductionGraph, ReductionGraph), String> {
    let source = explore(&unit.body, &unit.language, limits);
    if source.truncated() {
        return Err("source graph is not finite within the limits".into());
    }
    let encoded = pipeline.encode(&unit.body).map_err(|e| e.to_string())?;
    let target = explore(
        &encoded,
        &pipeline.target(),
        Limits::new(target_depth, limits.nodes.saturating_mul(pipeline.profile().max(1))),
    );
    if target.truncated() {
        return Err("target graph is not finite within the limits".into());
    }
    Ok((source, target))
}

/// The encoding maps the source graph onto the target graph node for node
/// and edge for edge.
pub fn graph_isomorphism(unit: &SourceUnit, pipeline: &Pipeline, limits: Limits) -> Result<(), String> {
    let (source, target) = graphs(unit, pipeline, limits, limits.depth)?;
    let f = image_map(&source, &target, pipeline)?;
    let distinct: BTreeSet<usize> = f.iter().copied().collect();
    if distinct.len() != f.len() {
        return Err("two source states share an image".into());
    }
    if target.nodes.len() != source.nodes.len() {
        let extra = (0..target.nodes.len())
            .find(|i| !distinct.contains(i))
            .expect("more target nodes than images");
        return Err(format!("target state `{}` is no image", target.nodes[extra]));
    }
    let mapped: BTreeSet<(usize, usize)> = source.edges.iter().map(|&(a, b)| (f[a], f[b])).collect();
    if let Some(&(a, b)) = mapped.symmetric_difference(&target.edges).next() {
        let side = if mapped.contains(&(a, b)) { "missing from" } else { "extra in" };
        return Err(format!(
            "step `{}` -> `{}` is {side} the target",
            target.nodes[a], target.nodes[b]
        ));
    }
    Ok(())
}

/// Each source step `i -> j` is matched by two target steps through some
/// intermediate state, and every target step out of an image can be
/// completed to the image of a source successor.
pub fn synch_profile(unit: &SourceUnit, pipeline: &Pipeline, limits: Limits) -> Result<(), String> {
    let (source, target) = graphs(unit, pipeline, limits, limits.depth.saturating_mul(2) + 2)?;
    let f = image_map(&source, &target, pipeline)?;
    for (i, &fi) in f.iter().enumerate() {
        let goals: BTreeSet<usize> = source.successors(i).map(|j| f[j]).collect();
        for j in source.successors(i) {
            let two_step = target
                .successors(fi)
                .any(|k| target.edges.contains(&(k, f[j])));
            if !two_step {
                return Err(format!(
                    "step `{}` -> `{}` has no two-step image",
                    source.nodes[i], source.nodes[j]
                ));
            }
        }
        for k in target.successors(fi) {
            if !target.successors(k).any(|m| goals.contains(&m)) {
                return Err(format!(
                    "intermediate `{}` after `{}` completes to no image",
                    target.nodes[k], target.nodes[fi]
                ));
            }
        }
    }
    Ok(())
}

/// A stuck unit stays stuck once encoded.
pub fn prop1_stuck_preserved(unit: &SourceUnit, pipeline: &Pipeline) -> Result<(), String> {
    if !redexes(&canonicalize(&unit.body), &unit.language).is_empty() {
        return Ok(());
    }
    let encoded = pipeline.encode(&unit.body).map_err(|e| e.to_string())?;
    let form = canonicalize(&encoded);
    match redexes(&form, &pipeline.target()).first() {
        None => Ok(()),
        Some(r) => Err(format!("encoding `{form}` of a stuck unit has a redex at {:?}", r.output)),
    }
}
