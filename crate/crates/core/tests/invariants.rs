//! Property tests over the corpus: structural invariants of double traces,
//! the repetition detector, the local rewrite and the expansion round trip.

mod common;

use std::collections::BTreeMap;
use std::sync::Arc;

use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use stabletrace::corpus;
use stabletrace::{
    expand_to_4_regular, minimal_witnesses, parallel_1_stable, parallel_d_stable, project_trace,
    remove_2_repetition, DoubleTrace, Graph, TraceKind,
};

fn pick<T: Clone>(items: &[T], i: usize) -> T {
    items[i % items.len()].clone()
}

fn vertices_with_short_repetition(w: &DoubleTrace) -> usize {
    let mut vs: Vec<_> = w
        .find_repetitions(2)
        .unwrap()
        .iter()
        .map(|r| r.vertex)
        .collect();
    vs.dedup();
    vs.len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn passage_multigraphs_are_two_regular(idx in 0usize..64, seed in any::<u64>()) {
        let g = pick(&common::small_corpus(), idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_trace(&g, &mut rng);
        for ts in w.transition_systems() {
            prop_assert!(ts.is_two_regular());
            prop_assert_eq!(ts.directed_passages.len() * 2, 2 * g.degree(ts.center));
        }
    }

    #[test]
    fn parallel_components_have_even_size(idx in 0usize..64, seed in any::<u64>()) {
        let g = pick(&common::small_corpus(), idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_parallel_trace(&g, &mut rng);
        prop_assert_eq!(w.classify_edges().kind(), TraceKind::Parallel);
        for ts in w.transition_systems() {
            for c in ts.components() {
                prop_assert_eq!(c.len() % 2, 0);
            }
        }
    }

    #[test]
    fn detector_matches_subset_oracle(idx in 0usize..64, seed in any::<u64>(), d in 1usize..=3) {
        let g = pick(&common::small_corpus(), idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_trace(&g, &mut rng);
        let mut fast = w.find_repetitions(d).unwrap();
        fast.sort();
        let slow = minimal_witnesses(&w.find_repetitions_bruteforce(d).unwrap());
        prop_assert_eq!(fast, slow);
    }

    #[test]
    fn repetitions_close_under_complement(idx in 0usize..64, seed in any::<u64>()) {
        let g = pick(&common::small_corpus(), idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_trace(&g, &mut rng);
        let all = w.find_repetitions_bruteforce(g.max_degree()).unwrap();
        for r in &all {
            let complement: Vec<_> = g
                .neighbors(r.vertex)
                .iter()
                .copied()
                .filter(|x| r.subset.binary_search(x).is_err())
                .collect();
            prop_assert!(all.iter().any(|o| o.vertex == r.vertex && o.subset == complement));
        }
    }

    #[test]
    fn verdict_ignores_reversal_and_rotation(idx in 0usize..64, seed in any::<u64>(), shift in 0usize..400) {
        let g = pick(&common::small_corpus(), idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_trace(&g, &mut rng);
        let base = w.stability_report(2).unwrap();
        for other in [w.reversed(), w.rotated(shift)] {
            let r = other.stability_report(2).unwrap();
            prop_assert_eq!(r.stable, base.stable);
            prop_assert_eq!(&r.component_sizes, &base.component_sizes);
            prop_assert_eq!(r.kind, base.kind);
        }
    }

    #[test]
    fn rewrite_keeps_arcs_and_makes_progress(idx in 0usize..64, seed in any::<u64>()) {
        let g = pick(&common::four_regular_corpus(), idx);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut w = common::random_parallel_trace(&g, &mut rng);
        let arcs = w.arc_multiset();
        loop {
            let before = vertices_with_short_repetition(&w);
            let Some(rep) = w.find_repetitions(2).unwrap().first().cloned() else { break };
            let (next, _) = remove_2_repetition(&w, rep.vertex).unwrap();
            prop_assert_eq!(next.arc_multiset(), arcs.clone());
            prop_assert!(next.is_parallel());
            prop_assert!(vertices_with_short_repetition(&next) < before);
            w = next;
        }
        prop_assert!(w.is_parallel_d_stable(2).unwrap());
    }

    #[test]
    fn projection_keeps_shared_arc_directions(n in 5usize..=11, seed in any::<u64>()) {
        let n = n | 1;
        let original = Arc::new(corpus::complete(n).unwrap());
        let (expanded, map) = expand_to_4_regular(&original).unwrap();
        let expanded = Arc::new(expanded);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let w = common::random_trace(&expanded, &mut rng);
        let projected = project_trace(&w, &map, &original).unwrap();

        let owners = map.owners();
        let owner = |name: &str| owners.get(name).copied().unwrap_or(name).to_owned();
        let mut expected: BTreeMap<(String, String), usize> = BTreeMap::new();
        for (a, b) in w.arcs() {
            let (a, b) = (owner(expanded.name(a)), owner(expanded.name(b)));
            if a != b {
                *expected.entry((a, b)).or_default() += 1;
            }
        }
        let mut actual: BTreeMap<(String, String), usize> = BTreeMap::new();
        for (a, b) in projected.arcs() {
            *actual.entry((original.name(a).to_owned(), original.name(b).to_owned())).or_default() += 1;
        }
        prop_assert_eq!(actual, expected);
    }

    #[test]
    fn graph_text_round_trip(seed in any::<u64>(), n in 7usize..30) {
        let g = corpus::random_eulerian(n, 2, 2, seed).unwrap();
        let back = Graph::parse(&g.to_text()).unwrap();
        prop_assert_eq!(&back, &g);
        let degree_sum: usize = g.vertices().map(|v| g.degree(v)).sum();
        prop_assert_eq!(degree_sum, 2 * g.edge_count());
    }

    #[test]
    fn blocks_partition_edges(seed in any::<u64>(), n in 5usize..14, glue in 2usize..4) {
        // several random Eulerian pieces sharing one vertex each
        let mut edges: Vec<(String, String)> = Vec::new();
        for piece in 0..glue {
            let g = corpus::random_eulerian(n, 2, 1, seed.wrapping_add(piece as u64)).unwrap();
            let rename = |name: &str| {
                if name == g.name(0) { "hub".to_owned() } else { format!("p{piece}{name}") }
            };
            edges.extend(g.edges().iter().map(|&(a, b)| (rename(g.name(a)), rename(g.name(b)))));
        }
        let g = Graph::from_edges(edges).unwrap();
        let dec = g.blocks_and_cutvertices();
        let mut seen = vec![0usize; g.edge_count()];
        for b in &dec.blocks {
            for &e in &b.edges {
                seen[e] += 1;
            }
        }
        prop_assert!(seen.iter().all(|&c| c == 1));
        prop_assert_eq!(dec.cutvertices, brute_force_cutvertices(&g));
    }

    #[test]
    fn expansion_round_trips(seed in any::<u64>(), n in 9usize..25, extra in 0usize..6) {
        let g = corpus::random_eulerian(n, 3, extra, seed).unwrap();
        let (expanded, map) = expand_to_4_regular(&g).unwrap();
        prop_assert!(expanded.vertices().all(|v| expanded.degree(v) == 4));
        prop_assert_eq!(expanded.contract_subtrees(&map.inverse_spec()).unwrap(), g.clone());
        prop_assert_eq!(stabletrace::ExpansionMap::parse(&map.to_text()).unwrap(), map);
    }

    #[test]
    fn pipeline_output_verifies(seed in any::<u64>(), n in 7usize..30, cycles in 2usize..4, extra in 0usize..4) {
        prop_assume!(n > 2 * cycles);
        let g = Arc::new(corpus::random_eulerian(n, cycles, extra, seed).unwrap());
        for d in 1..g.min_degree() {
            let w = parallel_d_stable(&g, d).unwrap();
            prop_assert!(w.is_parallel_d_stable(d).unwrap());
            prop_assert_eq!(w.len(), 2 * g.edge_count());
        }
        prop_assert!(parallel_1_stable(&g).unwrap().is_parallel());
    }
}

fn brute_force_cutvertices(g: &Graph) -> Vec<usize> {
    g.vertices()
        .filter(|&cut| {
            let keep: Vec<usize> = (0..g.edge_count())
                .filter(|&e| g.edges()[e].0 != cut && g.edges()[e].1 != cut)
                .collect();
            // vertices other than `cut` stay covered since every degree exceeds 1
            match g.edge_subgraph(&keep) {
                Ok(h) => !h.is_connected() || h.vertex_count() < g.vertex_count() - 1,
                Err(_) => true,
            }
        })
        .collect()
}

#[test]
fn fixture_blocks_against_oracle() {
    let fig7 = corpus::fig7();
    let dec = fig7.blocks_and_cutvertices();
    let names = |vs: &[usize]| {
        vs.iter()
            .map(|&v| fig7.name(v).to_owned())
            .collect::<Vec<_>>()
    };
    assert_eq!(dec.blocks.len(), 2);
    assert_eq!(names(&dec.cutvertices), ["v6"]);
    assert_eq!(
        names(&dec.blocks[0].vertices),
        ["v1", "v2", "v3", "v4", "v5", "v6"]
    );
    assert_eq!(
        names(&dec.blocks[1].vertices),
        ["v10", "v11", "v6", "v7", "v8", "v9"]
    );
    assert_eq!(dec.cutvertices, brute_force_cutvertices(&fig7));

    // fig8 closes into a ring through both cross edges,
    // so it is 2-connected.
    let fig8 = corpus::fig8();
    let dec = fig8.blocks_and_cutvertices();
    assert_eq!(dec.blocks.len(), 1);
    assert!(dec.cutvertices.is_empty());
    assert!(brute_force_cutvertices(&fig8).is_empty());
}
