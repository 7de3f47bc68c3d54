//! Trace builders and perturbations shared by the integration targets.
#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use stabletrace::corpus;
use stabletrace::{euler_circuit, parallel_1_stable, DoubleTrace, Graph, VertexId};

/// Eulerian graphs with minimum degree at least 4 and maximum degree at
/// most 10, small enough for the subset oracle.
pub fn small_corpus() -> Vec<Arc<Graph>> {
    static CACHE: OnceLock<Vec<Arc<Graph>>> = OnceLock::new();
    CACHE.get_or_init(build_small_corpus).clone()
}

fn build_small_corpus() -> Vec<Arc<Graph>> {
    let mut out = vec![
        corpus::complete(5).unwrap(),
        corpus::complete(7).unwrap(),
        corpus::complete(9).unwrap(),
        corpus::complete(11).unwrap(),
        corpus::octahedron(),
        corpus::fig7(),
        corpus::fig8(),
        corpus::circulant(9, &[1, 2]).unwrap(),
        corpus::circulant(13, &[1, 3, 5]).unwrap(),
        corpus::circulant(16, &[2, 3]).unwrap(),
    ];
    for seed in 0..10 {
        out.push(corpus::random_eulerian(10 + seed as usize, 2, 3, seed).unwrap());
    }
    out.retain(|g| g.max_degree() <= 10 && g.is_connected());
    out.into_iter().map(Arc::new).collect()
}

/// Only 4-regular members of [`small_corpus`] plus a few circulants.
pub fn four_regular_corpus() -> Vec<Arc<Graph>> {
    static CACHE: OnceLock<Vec<Arc<Graph>>> = OnceLock::new();
    CACHE.get_or_init(build_four_regular_corpus).clone()
}

fn build_four_regular_corpus() -> Vec<Arc<Graph>> {
    let mut out: Vec<Arc<Graph>> = small_corpus()
        .into_iter()
        .filter(|g| g.min_degree() == 4 && g.max_degree() == 4)
        .collect();
    for n in [7, 10, 15] {
        out.push(Arc::new(corpus::circulant(n, &[1, 2]).unwrap()));
    }
    for seed in 100..104 {
        out.push(Arc::new(corpus::random_eulerian(12, 2, 0, seed).unwrap()));
    }
    out
}

/// A circuit followed by the same circuit reversed: every edge antiparallel.
pub fn antiparallel_trace(g: &Arc<Graph>) -> DoubleTrace {
    let circuit = euler_circuit(g).unwrap();
    let mut steps = circuit.clone();
    steps.push(circuit[0]);
    steps.extend(circuit[1..].iter().rev());
    DoubleTrace::from_ids(Arc::clone(g), steps).unwrap()
}

fn two_visits(steps: &[VertexId], rng: &mut ChaCha8Rng) -> Option<(usize, usize)> {
    let v = *steps.choose(rng)?;
    let mut occ: Vec<usize> = (0..steps.len()).filter(|&i| steps[i] == v).collect();
    occ.shuffle(rng);
    let (a, b) = (occ[0].min(occ[1]), occ[0].max(occ[1]));
    Some((a, b))
}

/// Reverses the closed sub-walk between two visits of one vertex. The result
/// is again a double trace, usually with some edges flipped to antiparallel.
pub fn reverse_segment(w: &DoubleTrace, rng: &mut ChaCha8Rng) -> DoubleTrace {
    let mut steps = w.steps().to_vec();
    if let Some((a, b)) = two_visits(&steps, rng) {
        steps[a..=b].reverse();
    }
    DoubleTrace::from_ids(Arc::clone(w.host()), steps).unwrap()
}

/// Exchanges two closed sub-walks that start at successive visits of one
/// vertex. Edge directions are untouched, so a parallel trace stays parallel.
pub fn swap_segments(w: &DoubleTrace, rng: &mut ChaCha8Rng) -> DoubleTrace {
    let steps = w.steps();
    let v = *steps.choose(rng).unwrap();
    let occ: Vec<usize> = (0..steps.len()).filter(|&i| steps[i] == v).collect();
    if occ.len() < 3 {
        return w.clone();
    }
    let k = rng.gen_range(0..occ.len());
    let (i, j, l) = (occ[k], occ[(k + 1) % occ.len()], occ[(k + 2) % occ.len()]);
    // rotate so that the three visits are increasing
    let rotated = w.rotated(i);
    let n = steps.len();
    let (j, l) = ((j + n - i) % n, (l + n - i) % n);
    let s = rotated.steps();
    let mut out = Vec::with_capacity(n);
    out.extend_from_slice(&s[j..l]);
    out.extend_from_slice(&s[..j]);
    out.extend_from_slice(&s[l..]);
    DoubleTrace::from_ids(Arc::clone(w.host()), out).unwrap()
}

/// A mix of doubled circuits, antiparallel traces and random perturbations.
pub fn random_trace(g: &Arc<Graph>, rng: &mut ChaCha8Rng) -> DoubleTrace {
    let mut w = match rng.gen_range(0..3) {
        0 => parallel_1_stable(g).unwrap(),
        1 => antiparallel_trace(g),
        _ => stabletrace::parallel_d_stable(g, 2.min(g.min_degree() - 1)).unwrap(),
    };
    for _ in 0..rng.gen_range(0..4) {
        w = if rng.gen_bool(0.5) {
            swap_segments(&w, rng)
        } else {
            reverse_segment(&w, rng)
        };
    }
    w
}

/// Random parallel trace: a doubled circuit followed by direction-preserving
/// perturbations.
pub fn random_parallel_trace(g: &Arc<Graph>, rng: &mut ChaCha8Rng) -> DoubleTrace {
    let mut w = parallel_1_stable(g).unwrap();
    for _ in 0..rng.gen_range(0..6) {
        w = swap_segments(&w, rng);
    }
    w
}
