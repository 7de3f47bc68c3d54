//! Construction of parallel d-stable traces.
//!
//! The pipeline for `d >= 2` is: expand every vertex of degree above four
//! into a path, double an Euler circuit of the resulting 4-regular graph,
//! merge the two passage cycles at every vertex that still has a
//! 2-repetition, and project the walk back onto the original graph.

use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::graph::{Graph, VertexId};
use crate::trace::DoubleTrace;
use crate::transform::{expand_high_degree, expand_to_4_regular, project_trace};

/// Euler circuit by Hierholzer's algorithm, starting at the smallest vertex
/// and always taking the smallest unused neighbor. The closing return to the
/// start is implicit.
pub fn euler_circuit(g: &Graph) -> Result<Vec<VertexId>> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let mut used = vec![false; g.edge_count()];
    let mut cursor = vec![0usize; g.vertex_count()];
    let mut stack = vec![0];
    let mut circuit = Vec::with_capacity(g.edge_count() + 1);
    while let Some(&v) = stack.last() {
        let nbrs = g.neighbors(v);
        while cursor[v] < nbrs.len() && used[g.edge_index(v, nbrs[cursor[v]]).expect("edge")] {
            cursor[v] += 1;
        }
        if cursor[v] < nbrs.len() {
            let w = nbrs[cursor[v]];
            used[g.edge_index(v, w).expect("edge")] = true;
            stack.push(w);
        } else {
            circuit.push(v);
            stack.pop();
        }
    }
    circuit.reverse();
    circuit.pop();
    Ok(circuit)
}

/// An Euler circuit traversed twice in the same direction.
pub fn parallel_1_stable(g: &Arc<Graph>) -> Result<DoubleTrace> {
    let circuit = euler_circuit(g)?;
    let mut steps = circuit.clone();
    steps.extend_from_slice(&circuit);
    DoubleTrace::from_ids(Arc::clone(g), steps)
}

/// How the two repeated passages sit along the walk.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Arrangement {
    Aabb,
    Abab,
}

impl fmt::Display for Arrangement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Arrangement::Aabb => "AABB",
            Arrangement::Abab => "ABAB",
        })
    }
}

/// Record of one 2-repetition removal at a degree-4 vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassageRewrite {
    pub vertex: VertexId,
    /// `(in, out)` of the passage at the first visit.
    pub a: (VertexId, VertexId),
    /// `(in, out)` of the other repeated passage.
    pub b: (VertexId, VertexId),
    pub arrangement: Arrangement,
    /// `exits[k]`: index of the segment taken after the `k`-th visit, where
    /// segment `s` originally followed visit `s`.
    pub exits: [usize; 4],
}

/// Removes the two 2-repetitions at a degree-4 vertex `v` of a 4-regular
/// host by re-pairing entries and exits at `v`.
pub fn remove_2_repetition(w: &DoubleTrace, v: VertexId) -> Result<(DoubleTrace, PassageRewrite)> {
    let g = w.host();
    if let Some(bad) = g.vertices().find(|&u| g.degree(u) != 4) {
        return Err(Error::NotFourRegular {
            vertex: g.name(bad).to_owned(),
            degree: g.degree(bad),
        });
    }
    rewrite_at(w, v)
}

/// Only `v` itself has to have degree 4.
fn rewrite_at(w: &DoubleTrace, v: VertexId) -> Result<(DoubleTrace, PassageRewrite)> {
    let g = w.host();
    if g.degree(v) != 4 {
        return Err(Error::NotFourRegular {
            vertex: g.name(v).to_owned(),
            degree: g.degree(v),
        });
    }
    if !w.is_parallel() {
        return Err(Error::NotParallel);
    }
    let comps = w.transition_multigraph(v).components();
    if comps.len() != 2 || comps.iter().any(|c| c.len() != 2) {
        return Err(Error::NoRepetitionAtVertex(g.name(v).to_owned()));
    }

    // Cut the walk at v: v S0 v S1 v S2 v S3.
    let first = w.occurrences(v)[0];
    let mut steps = w.steps().to_vec();
    steps.rotate_left(first);
    let mut visits: Vec<usize> = (0..steps.len()).filter(|&i| steps[i] == v).collect();
    visits.push(steps.len());
    let segments: Vec<&[VertexId]> = visits.windows(2).map(|p| &steps[p[0] + 1..p[1]]).collect();
    let entry = |k: usize| *segments[(k + 3) % 4].last().expect("segment");
    let exit = |s: usize| segments[s][0];

    let passage = |k: usize| (entry(k), exit(k));
    let a = passage(0);
    let labels: Vec<bool> = (0..4).map(|k| passage(k) == a).collect();
    let b = passage(labels.iter().position(|&l| !l).expect("second passage"));
    let arrangement = if labels[2] {
        Arrangement::Abab
    } else {
        Arrangement::Aabb
    };

    for exits in permutations4() {
        if exits == [0, 1, 2, 3] {
            continue;
        }
        // single closed walk: following the exits from visit 0 returns
        // to visit 0 only after all four segments
        let mut k = 0;
        let mut length = 0;
        loop {
            k = (exits[k] + 1) % 4;
            length += 1;
            if k == 0 {
                break;
            }
        }
        if length != 4 {
            continue;
        }
        // single passage component: each entry class gets both exit classes
        let pairs: Vec<(VertexId, VertexId)> = (0..4).map(|k| (entry(k), exit(exits[k]))).collect();
        let merged = pairs.contains(&(a.0, a.1))
            && pairs.contains(&(a.0, b.1))
            && pairs.contains(&(b.0, a.1))
            && pairs.contains(&(b.0, b.1));
        if !merged {
            continue;
        }
        let mut rebuilt = Vec::with_capacity(steps.len());
        let mut k = 0;
        for _ in 0..4 {
            rebuilt.push(v);
            rebuilt.extend_from_slice(segments[exits[k]]);
            k = (exits[k] + 1) % 4;
        }
        let out = DoubleTrace::from_ids(Arc::clone(g), rebuilt)?;
        if out.transition_multigraph(v).components().len() != 1 {
            return Err(Error::InternalStabilityCheckFailed(format!(
                "rewrite at {} left a split passage multigraph",
                g.name(v)
            )));
        }
        return Ok((
            out,
            PassageRewrite {
                vertex: v,
                a,
                b,
                arrangement,
                exits,
            },
        ));
    }
    Err(Error::InternalStabilityCheckFailed(format!(
        "no connected re-pairing at {}",
        g.name(v)
    )))
}

fn permutations4() -> impl Iterator<Item = [usize; 4]> {
    (0..4usize).flat_map(|a| {
        (0..4usize).flat_map(move |b| {
            (0..4usize).flat_map(move |c| {
                (0..4usize).filter_map(move |d| {
                    let p = [a, b, c, d];
                    let distinct = (0..4).all(|i| (i + 1..4).all(|j| p[i] != p[j]));
                    distinct.then_some(p)
                })
            })
        })
    })
}

/// Parallel 2-stable trace of a connected 4-regular graph.
pub fn parallel_2_stable_4regular(g: &Arc<Graph>) -> Result<DoubleTrace> {
    if let Some(bad) = g.vertices().find(|&u| g.degree(u) != 4) {
        return Err(Error::NotFourRegular {
            vertex: g.name(bad).to_owned(),
            degree: g.degree(bad),
        });
    }
    Ok(stabilize_degree_four(g)?.0)
}

/// Doubles an Euler circuit and repairs every degree-4 vertex carrying a
/// 2-repetition, in ascending vertex order. Vertices of degree 2 have a
/// single passage component in any parallel trace and are left alone.
pub(crate) fn stabilize_degree_four(g: &Arc<Graph>) -> Result<(DoubleTrace, Vec<PassageRewrite>)> {
    if let Some(bad) = g.vertices().find(|&u| !matches!(g.degree(u), 2 | 4)) {
        return Err(Error::NotFourRegular {
            vertex: g.name(bad).to_owned(),
            degree: g.degree(bad),
        });
    }
    let mut w = parallel_1_stable(g)?;
    let mut rewrites = Vec::new();
    for v in g.vertices().filter(|&v| g.degree(v) == 4) {
        if w.transition_multigraph(v).components().len() > 1 {
            let (next, rewrite) = rewrite_at(&w, v)?;
            w = next;
            rewrites.push(rewrite);
        }
    }
    Ok((w, rewrites))
}

/// Parallel d-stable trace of a connected Eulerian graph with minimum degree
/// above `d`.
pub fn parallel_d_stable(g: &Arc<Graph>, d: usize) -> Result<DoubleTrace> {
    if d == 0 {
        return Err(Error::InvalidOrder(d));
    }
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    if g.min_degree() <= d {
        return Err(Error::MinDegreeTooLow {
            min_degree: g.min_degree(),
            required: d + 1,
        });
    }
    let w = if d == 1 {
        parallel_1_stable(g)?
    } else {
        let (expanded, map) = expand_to_4_regular(g)?;
        let w4 = parallel_2_stable_4regular(&Arc::new(expanded))?;
        project_trace(&w4, &map, g)?
    };
    check_stable(&w, d)?;
    Ok(w)
}

/// Parallel trace with no repetition of order at most 2 at any vertex of
/// degree four or more. Degree-2 vertices are allowed.
pub(crate) fn parallel_2_stable_relaxed(g: &Arc<Graph>) -> Result<DoubleTrace> {
    if !g.is_eulerian() {
        return Err(Error::NotEulerian);
    }
    let (expanded, map) = expand_high_degree(g)?;
    let (w4, _) = stabilize_degree_four(&Arc::new(expanded))?;
    let w = project_trace(&w4, &map, g)?;
    check_stable(&w, 2)?;
    Ok(w)
}

fn check_stable(w: &DoubleTrace, d: usize) -> Result<()> {
    let report = w.stability_report(d)?;
    if report.stable {
        return Ok(());
    }
    let witnesses: Vec<String> = report
        .repetitions
        .iter()
        .map(|r| r.describe(w.host()))
        .collect();
    Err(Error::InternalStabilityCheckFailed(format!(
        "{} trace, d = {d}, repetitions: {}",
        report.kind,
        witnesses.join(" ")
    )))
}
