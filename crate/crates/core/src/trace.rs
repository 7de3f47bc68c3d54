//! Double traces and the passage structure at each vertex.
//!
//! A double trace is stored as its cyclic vertex sequence without repeating
//! the start vertex: arc `i` goes from `steps[i]` to `steps[(i + 1) % len]`.
//!
//! Repetitions are read off the undirected passage multigraph at a vertex
//! `v`: one edge `{in, out}` per visit of the walk to `v`. Every neighbor has
//! incidence two in it, so it is a disjoint union of cycles, and a nonempty
//! proper subset `N` of `N(v)` is a repetition exactly when it is a union of
//! those cycles.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::exec::Execution;
use crate::graph::{Graph, VertexId};

/// Largest vertex degree the subset-enumeration oracle accepts.
pub const ORACLE_MAX_DEGREE: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DoubleTrace {
    host: Arc<Graph>,
    steps: Vec<VertexId>,
}

impl DoubleTrace {
    /// Validates a sequence of vertex ids as a double trace of `host`.
    pub fn from_ids(host: Arc<Graph>, steps: Vec<VertexId>) -> Result<DoubleTrace> {
        let expected = 2 * host.edge_count();
        if steps.len() != expected {
            return Err(Error::WrongLength {
                expected,
                found: steps.len(),
            });
        }
        if let Some(&bad) = steps.iter().find(|&&v| v >= host.vertex_count()) {
            return Err(Error::UnknownVertex(format!("#{bad}")));
        }
        let mut counts = vec![0usize; host.edge_count()];
        for i in 0..steps.len() {
            let (a, b) = (steps[i], steps[(i + 1) % steps.len()]);
            match host.edge_index(a, b) {
                Some(e) if a != b => counts[e] += 1,
                _ => {
                    return Err(Error::NonEdgeStep {
                        position: i,
                        from: host.name(a).to_owned(),
                        to: host.name(b).to_owned(),
                    })
                }
            }
        }
        if let Some((e, &count)) = counts.iter().enumerate().find(|(_, &c)| c != 2) {
            let (u, v) = host.edges()[e];
            return Err(Error::EdgeCountMismatch {
                u: host.name(u).to_owned(),
                v: host.name(v).to_owned(),
                count,
            });
        }
        Ok(DoubleTrace { host, steps })
    }

    /// Validates a sequence of vertex names.
    pub fn from_names<S: AsRef<str>>(host: Arc<Graph>, names: &[S]) -> Result<DoubleTrace> {
        let steps = names
            .iter()
            .map(|n| host.require_id(n.as_ref()))
            .collect::<Result<Vec<_>>>()?;
        DoubleTrace::from_ids(host, steps)
    }

    /// Parses the whitespace-separated trace format against `host`.
    pub fn parse(host: Arc<Graph>, text: &str) -> Result<DoubleTrace> {
        let tokens: Vec<&str> = text
            .lines()
            .filter(|l| !l.trim_start().starts_with('#'))
            .flat_map(str::split_whitespace)
            .collect();
        DoubleTrace::from_names(host, &tokens)
    }

    pub fn host(&self) -> &Arc<Graph> {
        &self.host
    }

    pub fn steps(&self) -> &[VertexId] {
        &self.steps
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn step_names(&self) -> Vec<&str> {
        self.steps.iter().map(|&v| self.host.name(v)).collect()
    }

    /// Arc `i` as `(tail, head)`.
    pub fn arc(&self, i: usize) -> (VertexId, VertexId) {
        (self.steps[i], self.steps[(i + 1) % self.steps.len()])
    }

    pub fn arcs(&self) -> impl Iterator<Item = (VertexId, VertexId)> + '_ {
        (0..self.steps.len()).map(|i| self.arc(i))
    }

    /// Sorted multiset of directed arcs.
    pub fn arc_multiset(&self) -> Vec<(VertexId, VertexId)> {
        let mut arcs: Vec<_> = self.arcs().collect();
        arcs.sort_unstable();
        arcs
    }

    /// The same closed walk traversed backwards.
    pub fn reversed(&self) -> DoubleTrace {
        let mut steps = self.steps.clone();
        steps.reverse();
        DoubleTrace {
            host: Arc::clone(&self.host),
            steps,
        }
    }

    /// The same closed walk started at position `offset`.
    pub fn rotated(&self, offset: usize) -> DoubleTrace {
        let mut steps = self.steps.clone();
        let len = steps.len().max(1);
        steps.rotate_left(offset % len);
        DoubleTrace {
            host: Arc::clone(&self.host),
            steps,
        }
    }

    /// Trace text: vertex names separated by single spaces.
    pub fn to_text(&self) -> String {
        self.step_names().join(" ")
    }

    pub fn classify_edges(&self) -> EdgeClassification {
        let mut forward = vec![0u8; self.host.edge_count()];
        for (a, b) in self.arcs() {
            let e = self.host.edge_index(a, b).expect("validated trace");
            if a < b {
                forward[e] += 1;
            }
        }
        EdgeClassification {
            tags: forward
                .into_iter()
                .map(|f| {
                    if f == 1 {
                        EdgeTag::Antiparallel
                    } else {
                        EdgeTag::Parallel
                    }
                })
                .collect(),
        }
    }

    pub fn is_parallel(&self) -> bool {
        self.classify_edges().kind() == TraceKind::Parallel
    }

    /// Positions at which the walk visits `v`.
    pub fn occurrences(&self, v: VertexId) -> Vec<usize> {
        (0..self.steps.len())
            .filter(|&i| self.steps[i] == v)
            .collect()
    }

    pub fn transition_multigraph(&self, v: VertexId) -> TransitionSystem {
        let len = self.steps.len();
        let passages = self
            .occurrences(v)
            .into_iter()
            .map(|i| (self.steps[(i + len - 1) % len], self.steps[(i + 1) % len]))
            .collect();
        TransitionSystem::new(&self.host, v, passages)
    }

    /// Transition multigraphs of all vertices, in one pass over the walk.
    pub fn transition_systems(&self) -> Vec<TransitionSystem> {
        let len = self.steps.len();
        let mut passages: Vec<Vec<(VertexId, VertexId)>> =
            vec![Vec::new(); self.host.vertex_count()];
        for i in 0..len {
            passages[self.steps[i]]
                .push((self.steps[(i + len - 1) % len], self.steps[(i + 1) % len]));
        }
        passages
            .into_iter()
            .enumerate()
            .map(|(v, p)| TransitionSystem::new(&self.host, v, p))
            .collect()
    }

    pub fn find_repetitions(&self, d: usize) -> Result<Vec<Repetition>> {
        self.find_repetitions_with(d, Execution::default())
    }

    /// Minimal repetitions of order at most `d`: every component of a
    /// passage multigraph with at least two components whose size is `<= d`.
    pub fn find_repetitions_with(&self, d: usize, exec: Execution) -> Result<Vec<Repetition>> {
        if d == 0 {
            return Err(Error::InvalidOrder(d));
        }
        let components = self.components_with(exec);
        Ok(repetitions_from(&components, d))
    }

    /// Passage components of every vertex, one entry per vertex.
    fn components_with(&self, exec: Execution) -> Vec<Vec<Vec<VertexId>>> {
        exec.map_slice(&self.transition_systems(), TransitionSystem::components)
    }

    pub fn find_repetitions_bruteforce(&self, d: usize) -> Result<Vec<Repetition>> {
        self.find_repetitions_bruteforce_with(d, Execution::default())
    }

    /// Definition check by subset enumeration: every `N` with
    /// `1 <= |N| <= d`, `N != N(v)` such that each passage through `v`
    /// touching `N` has both ends in `N`. Returns every witness, not only
    /// minimal ones.
    pub fn find_repetitions_bruteforce_with(
        &self,
        d: usize,
        exec: Execution,
    ) -> Result<Vec<Repetition>> {
        if d == 0 {
            return Err(Error::InvalidOrder(d));
        }
        if let Some(v) = self
            .host
            .vertices()
            .find(|&v| self.host.degree(v) > ORACLE_MAX_DEGREE)
        {
            return Err(Error::DegreeTooLargeForOracle {
                vertex: self.host.name(v).to_owned(),
                degree: self.host.degree(v),
            });
        }
        let per_vertex = exec.map_slice(&self.transition_systems(), |ts| {
            let v = ts.center;
            let nbrs = self.host.neighbors(v);
            let deg = nbrs.len();
            let bit = |w: VertexId| 1u32 << nbrs.binary_search(&w).expect("neighbor");
            let passages: Vec<u32> = ts
                .directed_passages
                .iter()
                .map(|&(a, b)| bit(a) | bit(b))
                .collect();
            let full = (1u32 << deg) - 1;
            let mut found = Vec::new();
            for mask in 1..full {
                if mask.count_ones() as usize > d {
                    continue;
                }
                // A passage touching N must lie inside N.
                let closed = passages.iter().all(|&p| p & mask == 0 || p & !mask == 0);
                if closed {
                    let subset = (0..deg)
                        .filter(|&k| mask & (1 << k) != 0)
                        .map(|k| nbrs[k])
                        .collect();
                    found.push(Repetition::new(v, subset));
                }
            }
            found
        });
        Ok(per_vertex.into_iter().flatten().collect())
    }

    pub fn stability_report(&self, d: usize) -> Result<StabilityReport> {
        self.stability_report_with(d, Execution::default())
    }

    /// Verdict plus diagnostics for "parallel and free of repetitions of
    /// order `<= d`".
    pub fn stability_report_with(&self, d: usize, exec: Execution) -> Result<StabilityReport> {
        if d == 0 {
            return Err(Error::InvalidOrder(d));
        }
        let classification = self.classify_edges();
        let components = self.components_with(exec);
        let component_sizes: Vec<Vec<usize>> = components
            .iter()
            .map(|comps| {
                let mut sizes: Vec<usize> = comps.iter().map(Vec::len).collect();
                sizes.sort_unstable();
                sizes
            })
            .collect();
        let max_stable_order = component_sizes
            .iter()
            .filter(|sizes| sizes.len() >= 2)
            .map(|sizes| sizes[0] - 1)
            .min();
        let repetitions = repetitions_from(&components, d);
        let kind = classification.kind();
        Ok(StabilityReport {
            order: d,
            kind,
            stable: kind == TraceKind::Parallel && repetitions.is_empty(),
            min_degree: self.host.min_degree(),
            max_stable_order,
            component_sizes,
            repetitions,
        })
    }

    /// `true` iff the trace is all-parallel and has no repetition of order
    /// at most `d`.
    pub fn is_parallel_d_stable(&self, d: usize) -> Result<bool> {
        Ok(self.stability_report(d)?.stable)
    }
}

impl fmt::Display for DoubleTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeTag {
    Parallel,
    Antiparallel,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TraceKind {
    Parallel,
    Antiparallel,
    Mixed,
}

impl fmt::Display for TraceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TraceKind::Parallel => "parallel",
            TraceKind::Antiparallel => "antiparallel",
            TraceKind::Mixed => "mixed",
        })
    }
}

/// One tag per host edge, indexed like [`Graph::edges`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeClassification {
    pub tags: Vec<EdgeTag>,
}

impl EdgeClassification {
    pub fn kind(&self) -> TraceKind {
        let parallel = self
            .tags
            .iter()
            .filter(|&&t| t == EdgeTag::Parallel)
            .count();
        if parallel == self.tags.len() {
            TraceKind::Parallel
        } else if parallel == 0 {
            TraceKind::Antiparallel
        } else {
            TraceKind::Mixed
        }
    }

    pub fn count(&self, tag: EdgeTag) -> usize {
        self.tags.iter().filter(|&&t| t == tag).count()
    }
}

/// Passages of the walk through `center`, one `(in, out)` pair per visit.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    pub center: VertexId,
    /// Sorted `N(center)`.
    pub neighbors: Vec<VertexId>,
    pub directed_passages: Vec<(VertexId, VertexId)>,
}

impl TransitionSystem {
    fn new(host: &Graph, center: VertexId, directed_passages: Vec<(VertexId, VertexId)>) -> Self {
        TransitionSystem {
            center,
            neighbors: host.neighbors(center).to_vec(),
            directed_passages,
        }
    }

    /// Passages as unordered pairs `(min, max)`, sorted.
    pub fn passages(&self) -> Vec<(VertexId, VertexId)> {
        let mut p: Vec<_> = self
            .directed_passages
            .iter()
            .map(|&(a, b)| (a.min(b), a.max(b)))
            .collect();
        p.sort_unstable();
        p
    }

    /// Incidence of each neighbor in the undirected passage multigraph,
    /// loops counted twice.
    pub fn incidence(&self) -> Vec<usize> {
        let mut inc = vec![0; self.neighbors.len()];
        for &(a, b) in &self.directed_passages {
            for w in [a, b] {
                if let Ok(k) = self.neighbors.binary_search(&w) {
                    inc[k] += 1;
                }
            }
        }
        inc
    }

    pub fn is_two_regular(&self) -> bool {
        self.directed_passages.len() == self.neighbors.len()
            && self.incidence().iter().all(|&c| c == 2)
    }

    /// Connected components of the passage multigraph, each a sorted list of
    /// neighbors; components are ordered by their smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let k = self.neighbors.len();
        let mut parent: Vec<usize> = (0..k).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for &(a, b) in &self.directed_passages {
            let (Ok(i), Ok(j)) = (
                self.neighbors.binary_search(&a),
                self.neighbors.binary_search(&b),
            ) else {
                continue;
            };
            let (ri, rj) = (find(&mut parent, i), find(&mut parent, j));
            if ri != rj {
                parent[ri.max(rj)] = ri.min(rj);
            }
        }
        let mut groups: Vec<Vec<VertexId>> = vec![Vec::new(); k];
        for i in 0..k {
            let r = find(&mut parent, i);
            groups[r].push(self.neighbors[i]);
        }
        groups.into_iter().filter(|g| !g.is_empty()).collect()
    }
}

/// An `N`-repetition at `vertex` with `N = subset`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Repetition {
    pub vertex: VertexId,
    /// Sorted.
    pub subset: Vec<VertexId>,
    pub order: usize,
}

impl Repetition {
    pub fn new(vertex: VertexId, mut subset: Vec<VertexId>) -> Repetition {
        subset.sort_unstable();
        let order = subset.len();
        Repetition {
            vertex,
            subset,
            order,
        }
    }

    pub fn describe(&self, host: &Graph) -> String {
        let members: Vec<&str> = self.subset.iter().map(|&w| host.name(w)).collect();
        format!("{}:{{{}}}", host.name(self.vertex), members.join(","))
    }
}

/// Every component of size `<= d` at a vertex whose passage multigraph has at
/// least two components.
fn repetitions_from(components: &[Vec<Vec<VertexId>>], d: usize) -> Vec<Repetition> {
    components
        .iter()
        .enumerate()
        .filter(|(_, comps)| comps.len() >= 2)
        .flat_map(|(v, comps)| {
            comps
                .iter()
                .filter(|c| c.len() <= d)
                .map(move |c| Repetition::new(v, c.clone()))
        })
        .collect()
}

/// Keeps the witnesses that have no other witness at the same vertex as a
/// proper subset. Output is sorted.
pub fn minimal_witnesses(witnesses: &[Repetition]) -> Vec<Repetition> {
    let is_subset = |a: &[VertexId], b: &[VertexId]| a.iter().all(|x| b.binary_search(x).is_ok());
    let mut out: Vec<Repetition> = witnesses
        .iter()
        .filter(|r| {
            !witnesses.iter().any(|o| {
                o.vertex == r.vertex && o.order < r.order && is_subset(&o.subset, &r.subset)
            })
        })
        .cloned()
        .collect();
    out.sort();
    out.dedup();
    out
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StabilityReport {
    pub order: usize,
    pub kind: TraceKind,
    pub stable: bool,
    pub min_degree: usize,
    /// Largest `d'` with no repetition of order `<= d'`; `None` when every
    /// passage multigraph is connected.
    pub max_stable_order: Option<usize>,
    /// Sorted component sizes per vertex.
    pub component_sizes: Vec<Vec<usize>>,
    /// Minimal witnesses of order `<= order`.
    pub repetitions: Vec<Repetition>,
}
