//! Named graph generators and the bundled fixture graphs.
//!
//! Random generation is seeded through ChaCha8, so a `(name, params, seed)`
//! triple produces the same graph on every platform.

use std::collections::HashSet;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::trace::DoubleTrace;

pub const FIG7_EDGES: &str = include_str!("../fixtures/fig7.edges");
pub const FIG7_TRACE: &str = include_str!("../fixtures/fig7.trace");
pub const FIG8_EDGES: &str = include_str!("../fixtures/fig8.edges");

/// Generator names accepted by [`generate`].
pub const GENERATORS: &[&str] = &[
    "complete",
    "cycle",
    "octahedron",
    "circulant",
    "fig7",
    "fig8",
    "random_eulerian",
];

const MAX_RESAMPLES: usize = 10_000;

pub fn fig7() -> Graph {
    Graph::parse(FIG7_EDGES).expect("bundled fixture")
}

pub fn fig8() -> Graph {
    Graph::parse(FIG8_EDGES).expect("bundled fixture")
}

/// The bundled 44-step parallel 2-stable trace of [`fig7`].
pub fn fig7_trace() -> DoubleTrace {
    DoubleTrace::parse(Arc::new(fig7()), FIG7_TRACE).expect("bundled fixture")
}

#[derive(Debug, Clone)]
pub struct FixtureSet {
    pub fig7: Arc<Graph>,
    pub fig8: Arc<Graph>,
    pub fig7_trace: DoubleTrace,
}

impl FixtureSet {
    pub fn load() -> FixtureSet {
        let fig7_trace = fig7_trace();
        FixtureSet {
            fig7: Arc::clone(fig7_trace.host()),
            fig8: Arc::new(fig8()),
            fig7_trace,
        }
    }
}

fn vertex_names(n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("v{i}")).collect()
}

pub fn complete(n: usize) -> Result<Graph> {
    if n < 2 {
        return Err(Error::BadParams(format!("complete needs n >= 2, got {n}")));
    }
    let names = vertex_names(n);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((names[i].as_str(), names[j].as_str()));
        }
    }
    Graph::from_edges(edges)
}

pub fn cycle(n: usize) -> Result<Graph> {
    if n < 3 {
        return Err(Error::BadParams(format!("cycle needs n >= 3, got {n}")));
    }
    circulant(n, &[1])
}

/// `K_{2,2,2}` on `v1..v6` with antipodal pairs `(v1,v2)`, `(v3,v4)`, `(v5,v6)`.
pub fn octahedron() -> Graph {
    let names = vertex_names(6);
    let mut edges = Vec::new();
    for i in 0..6 {
        for j in i + 1..6 {
            if i / 2 != j / 2 {
                edges.push((names[i].as_str(), names[j].as_str()));
            }
        }
    }
    Graph::from_edges(edges).expect("octahedron")
}

/// Circulant graph: `vi` is joined to `v(i ± j)` for every jump `j`.
pub fn circulant(n: usize, jumps: &[usize]) -> Result<Graph> {
    if n < 3 || jumps.is_empty() || jumps.iter().any(|&j| j == 0 || j >= n) {
        return Err(Error::BadParams(format!(
            "circulant needs n >= 3 and jumps in 1..n, got n = {n}, jumps = {jumps:?}"
        )));
    }
    let names = vertex_names(n);
    let mut seen = HashSet::new();
    let mut edges = Vec::new();
    for i in 0..n {
        for &j in jumps {
            let k = (i + j) % n;
            if seen.insert((i.min(k), i.max(k))) {
                edges.push((names[i].as_str(), names[k].as_str()));
            }
        }
    }
    Graph::from_edges(edges)
}

/// Union of `cycles >= 2` edge-disjoint random Hamiltonian cycles on `n`
/// vertices, plus `extra` edge-disjoint random shorter cycles (which make the
/// degrees uneven). Every degree is even and at least `2 * cycles`.
pub fn random_eulerian(n: usize, cycles: usize, extra: usize, seed: u64) -> Result<Graph> {
    if cycles < 2 || n < 2 * cycles + 1 {
        return Err(Error::BadParams(format!(
            "random_eulerian needs cycles >= 2 and n >= 2 * cycles + 1, got n = {n}, cycles = {cycles}"
        )));
    }
    let width = n.to_string().len();
    let names: Vec<String> = (0..n).map(|i| format!("r{i:0width$}")).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut used: HashSet<(usize, usize)> = HashSet::new();

    let place_cycle = |rng: &mut ChaCha8Rng, len: usize, used: &mut HashSet<(usize, usize)>| {
        let mut order: Vec<usize> = (0..n).collect();
        for _ in 0..MAX_RESAMPLES {
            order.shuffle(rng);
            let cyc = &order[..len];
            let edges: Vec<(usize, usize)> = (0..len)
                .map(|i| {
                    let (a, b) = (cyc[i], cyc[(i + 1) % len]);
                    (a.min(b), a.max(b))
                })
                .collect();
            if edges.iter().all(|e| !used.contains(e)) {
                used.extend(edges);
                return true;
            }
        }
        false
    };

    'restart: for _ in 0..MAX_RESAMPLES {
        used.clear();
        for _ in 0..cycles {
            if !place_cycle(&mut rng, n, &mut used) {
                continue 'restart;
            }
        }
        for _ in 0..extra {
            let len = rng.gen_range(3..=n);
            // a short cycle that cannot be placed is skipped
            place_cycle(&mut rng, len, &mut used);
        }
        let mut edges: Vec<&(usize, usize)> = used.iter().collect();
        edges.sort_unstable();
        return Graph::from_edges(
            edges
                .into_iter()
                .map(|&(a, b)| (names[a].as_str(), names[b].as_str())),
        );
    }
    Err(Error::BadParams(format!(
        "could not place {cycles} edge-disjoint Hamiltonian cycles on {n} vertices"
    )))
}

/// Dispatches on a generator name.
///
/// | name | params |
/// |---|---|
/// | `complete` | `n` |
/// | `cycle` | `n` |
/// | `octahedron` | none |
/// | `circulant` | `n [jump ...]`, jumps default to `1 2` |
/// | `fig7`, `fig8` | none |
/// | `random_eulerian` | `n [cycles [extra]]`, defaults `2 0` |
pub fn generate(name: &str, params: &[usize], seed: u64) -> Result<Graph> {
    let arity = |lo: usize, hi: usize| {
        if params.len() < lo || params.len() > hi {
            Err(Error::BadParams(format!(
                "{name} takes {lo}..={hi} parameters, got {}",
                params.len()
            )))
        } else {
            Ok(())
        }
    };
    match name {
        "complete" => {
            arity(1, 1)?;
            complete(params[0])
        }
        "cycle" => {
            arity(1, 1)?;
            cycle(params[0])
        }
        "octahedron" => {
            arity(0, 0)?;
            Ok(octahedron())
        }
        "circulant" => {
            arity(1, usize::MAX)?;
            if params.len() == 1 {
                circulant(params[0], &[1, 2])
            } else {
                circulant(params[0], &params[1..])
            }
        }
        "fig7" => {
            arity(0, 0)?;
            Ok(fig7())
        }
        "fig8" => {
            arity(0, 0)?;
            Ok(fig8())
        }
        "random_eulerian" => {
            arity(1, 3)?;
            random_eulerian(
                params[0],
                params.get(1).copied().unwrap_or(2),
                params.get(2).copied().unwrap_or(0),
                seed,
            )
        }
        other => Err(Error::UnknownName(other.to_owned())),
    }
}
