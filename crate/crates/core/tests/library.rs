use indecomp::extension::{check_partial_criticality_conditions, is_critical_according_to};
use indecomp::families::{classify_2covered, enumerate_class, make_halfgraph, make_path, make_q, Budget, ClassId};
use indecomp::format::{parse_edge_list, parse_graph6, to_edge_list, to_graph6};
use indecomp::indec::{covers_of_size_at_most, indecomposability_graph, is_set_covered};
use indecomp::modular::{interval_closure, is_indecomposable, is_interval, nontrivial_intervals};
use indecomp::verify::oracle::{oracle_indecomposability_edges, oracle_indecomposable};
use indecomp::verify::sample::{random_indecomposable, random_relabel, rng_for};
use indecomp::{Error, Graph, VertexSet};
use proptest::prelude::*;

fn set(n: usize, vs: &[usize]) -> VertexSet {
    VertexSet::from_vertices(n, vs.iter().copied()).unwrap()
}

#[test]
fn h1_does_not_depend_on_block_order() {
    let text = "10 13\n1 2\n1 9\n2 3\n2 9\n3 4\n3 9\n4 5\n5 6\n6 7\n6 10\n7 8\n8 10\n9 10\n";
    let g = parse_edge_list(text.as_bytes()).unwrap();
    let x = VertexSet::from_mask(10, 0xff);
    let report = check_partial_criticality_conditions(&g, &x).unwrap();
    assert!(report.h1);
    assert_eq!(report.h_all(), is_critical_according_to(&g, &x).unwrap());
}

#[test]
fn path_indecomposability_graph_is_oracle_exact() {
    for n in 5..=10 {
        let g = make_path(n);
        let ig = indecomposability_graph(&g).unwrap();
        let mut ours: Vec<(usize, usize)> = ig.edges().collect();
        ours.sort();
        let mut theirs = oracle_indecomposability_edges(&g).unwrap();
        theirs.sort();
        assert_eq!(ours, theirs, "n = {n}");
    }
}

#[test]
fn path_is_covered_by_its_ends() {
    let g = make_path(14);
    let ig = indecomposability_graph(&g).unwrap();
    assert!(is_set_covered(&ig, &set(14, &[0, 13])));
    assert!(covers_of_size_at_most(&ig, 1).unwrap().is_empty());
}

#[test]
fn halfgraph_is_prime_for_even_sizes() {
    for n in (4..=14).step_by(2) {
        assert!(is_indecomposable(&make_halfgraph(n).unwrap()));
    }
    assert!(matches!(make_halfgraph(7), Err(Error::SizeOdd(7))));
}

#[test]
fn q_is_prime() {
    for n in 6..=16 {
        assert!(is_indecomposable(&make_q(n).unwrap()), "n = {n}");
    }
}

#[test]
fn classify_recovers_relabelled_members() {
    for (i, class) in ClassId::ALL.into_iter().enumerate() {
        let n = class.min_n().max(14);
        let members = enumerate_class(class, n, Budget::Sampled { count: 3, seed: 7 }).unwrap();
        for (j, m) in members.iter().enumerate() {
            let mut rng = rng_for(11, (i * 10 + j) as u64);
            let g = random_relabel(&mut rng, m);
            for h in [g.clone(), g.complement()] {
                let r = classify_2covered(&h).unwrap();
                assert!(r.two_covered);
                let class_found = r.class.unwrap();
                let relabel = r.relabel.unwrap();
                let member = enumerate_class(class_found, n, Budget::Exhaustive)
                    .unwrap()
                    .into_iter()
                    .find(|c| {
                        let target = if r.complemented { h.complement() } else { h.clone() };
                        target.is_isomorphism(c, &relabel)
                    });
                assert!(member.is_some(), "{class:?} member {j}");
            }
        }
    }
}

#[test]
fn classify_rejects_non_covered_and_small() {
    let mut rng = rng_for(5, 0);
    let g = loop {
        let g = random_indecomposable(&mut rng, 14);
        let ig = indecomposability_graph(&g).unwrap();
        if covers_of_size_at_most(&ig, 2).unwrap().is_empty() {
            break g;
        }
    };
    assert!(!classify_2covered(&g).unwrap().two_covered);
    assert!(matches!(
        classify_2covered(&make_path(12)),
        Err(Error::SizeBelowTheoremBound { n: 12, min: 14 })
    ));
}

#[test]
fn not_indecomposable_is_reported() {
    let k = Graph::complete(5);
    assert!(matches!(indecomposability_graph(&k), Err(Error::NotIndecomposable)));
}

#[test]
fn parse_errors() {
    assert!(matches!(
        parse_edge_list(b"2 1\n1 3\n"),
        Err(Error::VertexOutOfRange { vertex: 2, n: 2 })
    ));
    assert!(matches!(parse_edge_list(b"3 1\n2 2\n"), Err(Error::LoopEdge(1))));
    assert!(parse_graph6(b"\x7f").is_err());
}

fn arb_graph(max_n: usize) -> impl Strategy<Value = Graph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
            let mut it = bits.into_iter();
            let mut edges = Vec::new();
            for v in 1..n {
                for u in 0..v {
                    if it.next().unwrap() {
                        edges.push((u, v));
                    }
                }
            }
            Graph::from_edges(n, edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph6_roundtrip(g in arb_graph(20)) {
        prop_assert_eq!(parse_graph6(to_graph6(&g).as_bytes()).unwrap(), g.clone());
        prop_assert_eq!(parse_edge_list(to_edge_list(&g).as_bytes()).unwrap(), g);
    }

    #[test]
    fn primality_matches_oracle(g in arb_graph(10)) {
        prop_assert_eq!(is_indecomposable(&g), oracle_indecomposable(&g).unwrap());
    }

    #[test]
    fn closure_is_least_interval(g in arb_graph(9), a in 0usize..9, b in 0usize..9) {
        let n = g.n();
        let seed = VertexSet::from_mask(n, (1u64 << (a % n)) | (1u64 << (b % n)));
        let c = interval_closure(&g, &seed);
        prop_assert!(seed.is_subset(&c));
        prop_assert!(is_interval(&g, &c));
        if n >= 2 {
            for i in nontrivial_intervals(&g).unwrap() {
                if seed.is_subset(&i) {
                    prop_assert!(c.is_subset(&i));
                }
            }
        }
    }

    #[test]
    fn intervals_survive_complement(g in arb_graph(9)) {
        prop_assert_eq!(nontrivial_intervals(&g).unwrap(), nontrivial_intervals(&g.complement()).unwrap());
    }
}
