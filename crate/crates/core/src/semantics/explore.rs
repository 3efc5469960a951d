//! Bounded breadth-first exploration of the reduction relation.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt::Write as _;

use super::canonical::{canonicalize, CanonicalForm};
use super::reduce::successors;
use crate::language::Language;
use crate::process::Process;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Limits {
    /// Nodes at this BFS depth are not expanded.
    pub depth: usize,
    pub nodes: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            depth: 64,
            nodes: 10_000,
        }
    }
}

impl Limits {
    pub fn new(depth: usize, nodes: usize) -> Self {
        Limits { depth, nodes }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReductionGraph {
    /// Node `0` is the root; ids follow discovery order.
    pub nodes: Vec<CanonicalForm>,
    pub depth: Vec<usize>,
    pub edges: BTreeSet<(usize, usize)>,
    /// Some node at the depth limit still had a redex.
    pub depth_truncated: bool,
    /// Exploration stopped because the node limit was reached.
    pub node_truncated: bool,
    pub success_nodes: BTreeSet<usize>,
    pub cycle_found: bool,
}

impl ReductionGraph {
    pub fn root(&self) -> &CanonicalForm {
        &self.nodes[0]
    }

    pub fn truncated(&self) -> bool {
        self.depth_truncated || self.node_truncated
    }

    pub fn successors(&self, id: usize) -> impl Iterator<Item = usize> + '_ {
        self.edges.range((id, 0)..=(id, usize::MAX)).map(|&(_, b)| b)
    }

    pub fn id_of(&self, form: &CanonicalForm) -> Option<usize> {
        self.nodes.iter().position(|n| n == form)
    }

    /// Nodes with no outgoing edge that were fully expanded.
    pub fn is_terminal(&self, id: usize) -> bool {
        self.successors(id).next().is_none()
    }

    /// `node-id: pretty-form` lines, then `edge: id -> id` lines.
    pub fn edge_list(&self) -> String {
        let mut out = String::new();
        for (i, n) in self.nodes.iter().enumerate() {
            let _ = writeln!(out, "{i}: {n}");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "edge: {a} -> {b}");
        }
        out
    }

    /// Graphviz rendering; success nodes are drawn doubled.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reductions {\n");
        for (i, n) in self.nodes.iter().enumerate() {
            let label = n.to_string().replace('\\', "\\\\").replace('"', "\\\"");
            let shape = if self.success_nodes.contains(&i) {
                ", peripheries=2"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{i} [label=\"{label}\"{shape}];");
        }
        for (a, b) in &self.edges {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn explore(p: &Process, lang: &Language, limits: Limits) -> ReductionGraph {
    explore_form(canonicalize(p), lang, limits)
}

pub fn explore_form(root: CanonicalForm, lang: &Language, limits: Limits) -> ReductionGraph {
    let mut nodes = vec![root.clone()];
    let mut depth = vec![0];
    let mut index: HashMap<CanonicalForm, usize> = HashMap::new();
    index.insert(root, 0);
    let mut edges = BTreeSet::new();
    let mut depth_truncated = false;
    let mut node_truncated = false;
    let mut queue = VecDeque::from([0usize]);

    'bfs: while let Some(id) = queue.pop_front() {
        let next = successors(&nodes[id], lang);
        if depth[id] >= limits.depth {
            if !next.is_empty() {
                depth_truncated = true;
            }
            continue;
        }
        for succ in next {
            let target = match index.get(&succ) {
                Some(&t) => t,
                None => {
                    if nodes.len() >= limits.nodes {
                        node_truncated = true;
                        break 'bfs;
                    }
                    let t = nodes.len();
                    index.insert(succ.clone(), t);
                    nodes.push(succ);
                    depth.push(depth[id] + 1);
                    queue.push_back(t);
                    t
                }
            };
            edges.insert((id, target));
        }
    }

    let success_nodes = nodes
        .iter()
        .enumerate()
        .filter(|(_, n)| n.has_ok())
        .map(|(i, _)| i)
        .collect();
    let cycle_found = has_cycle(nodes.len(), &edges);
    ReductionGraph {
        nodes,
        depth,
        edges,
        depth_truncated,
        node_truncated,
        success_nodes,
        cycle_found,
    }
}

fn has_cycle(n: usize, edges: &BTreeSet<(usize, usize)>) -> bool {
    let mut adj = vec![Vec::new(); n];
    for &(a, b) in edges {
        adj[a].push(b);
    }
    // 0 unvisited, 1 on the stack, 2 done
    let mut mark = vec![0u8; n];
    for start in 0..n {
        if mark[start] != 0 {
            continue;
        }
        let mut stack = vec![(start, 0usize)];
        mark[start] = 1;
        while let Some(&mut (v, ref mut next)) = stack.last_mut() {
            if *next < adj[v].len() {
                let w = adj[v][*next];
                *next += 1;
                match mark[w] {
                    1 => return true,
                    0 => {
                        mark[w] = 1;
                        stack.push((w, 0));
                    }
                    _ => {}
                }
            } else {
                mark[v] = 2;
                stack.pop();
            }
        }
    }
    false
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Success {
    Yes,
    NotWithinBounds,
}

impl std::fmt::Display for Success {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Success::Yes => "Yes",
            Success::NotWithinBounds => "NotWithinBounds",
        })
    }
}

pub fn succeeds(p: &Process, lang: &Language, limits: Limits) -> Success {
    if explore(p, lang, limits).success_nodes.is_empty() {
        Success::NotWithinBounds
    } else {
        Success::Yes
    }
}
