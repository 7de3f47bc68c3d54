//! Two constructions that only work on some graphs: concatenating two Euler
//! circuits with disjoint transitions, and gluing per-block traces at the
//! cutvertices. Both report a reason code when they give up.

use std::collections::HashSet;
use std::fmt;
use std::sync::Arc;

use crate::construct::{euler_circuit, parallel_2_stable_relaxed, parallel_d_stable};
use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Graph, VertexId};
use crate::trace::DoubleTrace;

/// Default node budget of the second-circuit search.
pub const DEFAULT_SEARCH_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum FailureReason {
    BlockDegree,
    JunctionRepetition,
    SearchExhausted,
    SearchTimeout,
}

impl FailureReason {
    pub fn code(self) -> &'static str {
        match self {
            FailureReason::BlockDegree => "BLOCK_DEGREE",
            FailureReason::JunctionRepetition => "JUNCTION_REPETITION",
            FailureReason::SearchExhausted => "SEARCH_EXHAUSTED",
            FailureReason::SearchTimeout => "SEARCH_TIMEOUT",
        }
    }
}

impl fmt::Display for FailureReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Failure {
    pub reason: FailureReason,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum HeuristicOutcome {
    Found(DoubleTrace),
    Failed(Failure),
}

impl HeuristicOutcome {
    fn fail(reason: FailureReason, detail: impl Into<String>) -> Self {
        HeuristicOutcome::Failed(Failure {
            reason,
            detail: detail.into(),
        })
    }

    pub fn trace(&self) -> Option<&DoubleTrace> {
        match self {
            HeuristicOutcome::Found(w) => Some(w),
            HeuristicOutcome::Failed(_) => None,
        }
    }

    pub fn failure(&self) -> Option<&Failure> {
        match self {
            HeuristicOutcome::Found(_) => None,
            HeuristicOutcome::Failed(f) => Some(f),
        }
    }
}

/// Transition maps of a closed walk: `maps[v]` lists `(from, to)` for every
/// `from -> v -> to` in the walk.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionFunctions {
    pub maps: Vec<Vec<(VertexId, VertexId)>>,
}

impl TransitionFunctions {
    pub fn of_circuit(g: &Graph, circuit: &[VertexId]) -> TransitionFunctions {
        let len = circuit.len();
        let mut maps = vec![Vec::new(); g.vertex_count()];
        for i in 0..len {
            maps[circuit[i]].push((circuit[(i + len - 1) % len], circuit[(i + 1) % len]));
        }
        maps.iter_mut().for_each(|m| m.sort_unstable());
        TransitionFunctions { maps }
    }

    /// `pi_v(from)`, if `from` enters `v`.
    pub fn image(&self, v: VertexId, from: VertexId) -> Option<VertexId> {
        self.maps[v]
            .iter()
            .find(|&&(a, _)| a == from)
            .map(|&(_, b)| b)
    }
}

/// Result of the search for a second Euler circuit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SearchOutcome {
    Found(Vec<VertexId>),
    Exhausted { nodes: u64 },
    Timeout { nodes: u64 },
}

/// Depth-first enumeration of Euler circuits of the orientation induced by a
/// first circuit, avoiding every transition the first circuit uses.
///
/// A circuit is forbidden to contain `x -> v -> u` whenever the first one
/// contains `x -> v -> u`, and also `u -> v -> x`.
pub struct SecondCircuitSearch<'g> {
    g: &'g Graph,
    out_arcs: Vec<Vec<VertexId>>,
    forbidden: HashSet<(VertexId, VertexId, VertexId)>,
    used: Vec<Vec<bool>>,
    arc_total: usize,
    arcs_used: usize,
    start: VertexId,
    path: Vec<VertexId>,
    /// `(next slot to try, slot of the arc that led here)` per path entry.
    frames: Vec<(usize, Option<usize>)>,
    nodes: u64,
    budget: u64,
    done: bool,
}

impl<'g> SecondCircuitSearch<'g> {
    pub fn new(g: &'g Graph, first: &[VertexId], budget: u64) -> Self {
        let len = first.len();
        let mut out_arcs = vec![Vec::new(); g.vertex_count()];
        let mut forbidden = HashSet::new();
        for i in 0..len {
            let (x, v, u) = (first[(i + len - 1) % len], first[i], first[(i + 1) % len]);
            out_arcs[v].push(u);
            forbidden.insert((x, v, u));
            forbidden.insert((u, v, x));
        }
        out_arcs.iter_mut().for_each(|o| o.sort_unstable());
        let used = out_arcs.iter().map(|o| vec![false; o.len()]).collect();
        let start = first.iter().copied().min().unwrap_or(0);
        SecondCircuitSearch {
            g,
            out_arcs,
            forbidden,
            used,
            arc_total: len,
            arcs_used: 0,
            start,
            path: vec![start],
            frames: vec![(0, None)],
            nodes: 0,
            budget,
            done: len == 0,
        }
    }

    pub fn nodes(&self) -> u64 {
        self.nodes
    }

    fn allowed(&self, from: Option<VertexId>, v: VertexId, to: VertexId) -> bool {
        from.is_none_or(|x| !self.forbidden.contains(&(x, v, to)))
    }

    fn backtrack(&mut self) {
        self.path.pop();
        if let Some((_, Some(slot))) = self.frames.pop() {
            let prev = *self.path.last().expect("arc has a tail");
            self.used[prev][slot] = false;
            self.arcs_used -= 1;
        }
    }

    /// Next circuit in search order.
    pub fn next_circuit(&mut self) -> SearchOutcome {
        while !self.done {
            let Some(&(next_slot, _)) = self.frames.last() else {
                self.done = true;
                break;
            };
            let depth = self.path.len();
            let v = self.path[depth - 1];
            let prev = (depth >= 2).then(|| self.path[depth - 2]);

            if self.arcs_used == self.arc_total {
                let closes = v == self.start && self.allowed(prev, self.start, self.path[1]);
                let found = closes.then(|| self.path[..depth - 1].to_vec());
                self.backtrack();
                if let Some(circuit) = found {
                    return SearchOutcome::Found(circuit);
                }
                continue;
            }

            let candidate = (next_slot..self.out_arcs[v].len())
                .find(|&s| !self.used[v][s] && self.allowed(prev, v, self.out_arcs[v][s]));
            match candidate {
                Some(slot) => {
                    self.frames.last_mut().expect("frame").0 = slot + 1;
                    self.nodes += 1;
                    if self.nodes > self.budget {
                        return SearchOutcome::Timeout { nodes: self.nodes };
                    }
                    self.used[v][slot] = true;
                    self.arcs_used += 1;
                    self.path.push(self.out_arcs[v][slot]);
                    self.frames.push((0, Some(slot)));
                }
                None => self.backtrack(),
            }
        }
        SearchOutcome::Exhausted { nodes: self.nodes }
    }

    pub fn graph(&self) -> &Graph {
        self.g
    }
}

/// Concatenates a deterministic Euler circuit with a second Euler circuit
/// that reuses its edge directions but none of its transitions.
pub fn euler_concatenation(g: &Arc<Graph>, budget: u64) -> Result<HeuristicOutcome> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    if g.min_degree() < 4 {
        return Err(Error::MinDegreeTooLow {
            min_degree: g.min_degree(),
            required: 4,
        });
    }
    let first = euler_circuit(g)?;
    let mut search = SecondCircuitSearch::new(g, &first, budget);
    let mut candidates = 0usize;
    loop {
        match search.next_circuit() {
            SearchOutcome::Found(second) => {
                candidates += 1;
                if let Some(w) = join_circuits(g, &first, &second)? {
                    return Ok(HeuristicOutcome::Found(w));
                }
            }
            SearchOutcome::Exhausted { nodes } if candidates == 0 => {
                return Ok(HeuristicOutcome::fail(
                    FailureReason::SearchExhausted,
                    format!("no second Euler circuit avoids the first one's transitions ({nodes} nodes)"),
                ));
            }
            SearchOutcome::Exhausted { nodes } => {
                return Ok(HeuristicOutcome::fail(
                    FailureReason::JunctionRepetition,
                    format!("{candidates} second circuits found, none joins without a repetition ({nodes} nodes)"),
                ));
            }
            SearchOutcome::Timeout { nodes } => {
                return Ok(HeuristicOutcome::fail(
                    FailureReason::SearchTimeout,
                    format!("node budget {budget} exceeded after {nodes} nodes"),
                ));
            }
        }
    }
}

/// Tries junction vertices in ascending order and every pair of visits to
/// the junction.
fn join_circuits(
    g: &Arc<Graph>,
    first: &[VertexId],
    second: &[VertexId],
) -> Result<Option<DoubleTrace>> {
    for junction in g.vertices() {
        let at =
            |c: &[VertexId]| -> Vec<usize> { (0..c.len()).filter(|&i| c[i] == junction).collect() };
        for &i in &at(first) {
            for &j in &at(second) {
                let mut steps = Vec::with_capacity(first.len() + second.len());
                steps.extend(first[i..].iter().chain(&first[..i]));
                steps.extend(second[j..].iter().chain(&second[..j]));
                let w = DoubleTrace::from_ids(Arc::clone(g), steps)?;
                if w.is_parallel_d_stable(2)? {
                    return Ok(Some(w));
                }
            }
        }
    }
    Ok(None)
}

/// Builds a trace per block and splices them together at the cutvertices.
///
/// Strict mode requires a parallel 2-stable trace of every block on its own.
/// Relaxed mode only requires each block to be Eulerian, tolerating blocks
/// whose cutvertices have degree two there.
pub fn block_concatenation(g: &Arc<Graph>, relaxed: bool) -> Result<HeuristicOutcome> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    if g.min_degree() < 4 {
        return Err(Error::MinDegreeTooLow {
            min_degree: g.min_degree(),
            required: 4,
        });
    }
    let decomposition = g.blocks_and_cutvertices();
    let subgraphs: Vec<Arc<Graph>> = decomposition
        .blocks
        .iter()
        .map(|b| g.edge_subgraph(&b.edges).map(Arc::new))
        .collect::<Result<_>>()?;

    let per_block = Execution::default().map_slice(&subgraphs, |block| {
        if relaxed {
            parallel_2_stable_relaxed(block)
        } else {
            parallel_d_stable(block, 2)
        }
    });

    let mut traces = Vec::with_capacity(per_block.len());
    for (k, result) in per_block.into_iter().enumerate() {
        match result {
            Ok(w) => traces.push(w),
            Err(e) if e.is_precondition() => {
                let names: Vec<&str> = subgraphs[k].names().iter().map(String::as_str).collect();
                return Ok(HeuristicOutcome::fail(
                    FailureReason::BlockDegree,
                    format!("block {k} {{{}}}: {e}", names.join(",")),
                ));
            }
            Err(e) => return Err(e),
        }
    }

    // Global ids of each block trace.
    let global: Vec<Vec<VertexId>> = traces
        .iter()
        .map(|w| {
            w.step_names()
                .iter()
                .map(|n| g.id(n).expect("block vertex"))
                .collect()
        })
        .collect();

    let mut merged = global[0].clone();
    let mut in_merged = vec![false; g.vertex_count()];
    merged.iter().for_each(|&v| in_merged[v] = true);
    let mut pending: Vec<usize> = (1..global.len()).collect();
    while !pending.is_empty() {
        let (pos, joint) = pending
            .iter()
            .enumerate()
            .find_map(|(pos, &b)| {
                decomposition.blocks[b]
                    .vertices
                    .iter()
                    .find(|&&v| in_merged[v])
                    .map(|&v| (pos, v))
            })
            .expect("blocks of a connected graph form a tree");
        let block = pending.remove(pos);
        merged = splice(&merged, &global[block], joint);
        merged.iter().for_each(|&v| in_merged[v] = true);
    }

    let w = DoubleTrace::from_ids(Arc::clone(g), merged)?;
    let report = w.stability_report(2)?;
    if report.stable {
        return Ok(HeuristicOutcome::Found(w));
    }
    let witnesses: Vec<String> = report.repetitions.iter().map(|r| r.describe(g)).collect();
    Ok(HeuristicOutcome::fail(
        FailureReason::JunctionRepetition,
        format!("repetitions after concatenation: {}", witnesses.join(" ")),
    ))
}

/// Inserts the closed walk `block` into `merged` at a visit of `joint`,
/// choosing the pair of visits that leaves the smallest passage component
/// at `joint` as large as possible.
fn splice(merged: &[VertexId], block: &[VertexId], joint: VertexId) -> Vec<VertexId> {
    let visits =
        |c: &[VertexId]| -> Vec<usize> { (0..c.len()).filter(|&i| c[i] == joint).collect() };
    let mut best: Option<(usize, Vec<VertexId>)> = None;
    for &i in &visits(merged) {
        for &j in &visits(block) {
            let mut steps = Vec::with_capacity(merged.len() + block.len());
            steps.extend_from_slice(&merged[..=i]);
            steps.extend(block[j + 1..].iter().chain(&block[..j]));
            steps.push(joint);
            steps.extend_from_slice(&merged[i + 1..]);
            let score = smallest_component_at(&steps, joint);
            if best.as_ref().is_none_or(|(s, _)| score > *s) {
                best = Some((score, steps));
            }
        }
    }
    best.expect("joint occurs in both walks").1
}

fn smallest_component_at(steps: &[VertexId], v: VertexId) -> usize {
    let len = steps.len();
    let mut nbrs: Vec<VertexId> = Vec::new();
    let mut pairs = Vec::new();
    for i in (0..len).filter(|&i| steps[i] == v) {
        let (a, b) = (steps[(i + len - 1) % len], steps[(i + 1) % len]);
        pairs.push((a, b));
        nbrs.extend([a, b]);
    }
    nbrs.sort_unstable();
    nbrs.dedup();
    let mut parent: Vec<usize> = (0..nbrs.len()).collect();
    fn find(p: &mut [usize], mut x: usize) -> usize {
        while p[x] != x {
            p[x] = p[p[x]];
            x = p[x];
        }
        x
    }
    for (a, b) in pairs {
        let (i, j) = (
            nbrs.binary_search(&a).expect("neighbor"),
            nbrs.binary_search(&b).expect("neighbor"),
        );
        let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
        parent[ri] = rj;
    }
    let mut sizes = vec![0usize; nbrs.len()];
    for i in 0..nbrs.len() {
        let r = find(&mut parent, i);
        sizes[r] += 1;
    }
    sizes.into_iter().filter(|&s| s > 0).min().unwrap_or(0)
}
