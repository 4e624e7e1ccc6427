use commgraph::oracle::Apsp;
use commgraph::{enumerate, CommGraph, Distance, Group, GroupSpec, Permutation};
use proptest::prelude::*;

fn perm(degree: usize) -> impl Strategy<Value = Permutation> {
    Just((0..degree as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|images| Permutation::new(images).unwrap())
}

/// Groups generated by two random permutations of degree at most 5.
fn small_group() -> impl Strategy<Value = Group> {
    (2usize..=5)
        .prop_flat_map(|d| (perm(d), perm(d)))
        .prop_map(|(a, b)| enumerate(&GroupSpec::new("random", vec![a, b])).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn engine_matches_brute_force(g in small_group()) {
        prop_assume!(g.order() > 1);
        let graph = CommGraph::new(&g);
        let apsp = Apsp::compute(&g);
        let n = g.order() as u32;
        for x in 1..n {
            for y in 1..n {
                prop_assert_eq!(graph.distance(x, y).unwrap(), apsp.get(x, y));
            }
        }
        prop_assert_eq!(graph.components().len(), apsp.component_count());
        prop_assert_eq!(Some(graph.diameter().unwrap()), apsp.diameter());
    }

    #[test]
    fn distance_is_a_metric(g in small_group()) {
        prop_assume!(g.order() > 1);
        let graph = CommGraph::new(&g);
        let n = g.order() as u32;
        let d = |x, y| graph.distance(x, y).unwrap();
        for x in 1..n {
            prop_assert_eq!(d(x, x), Distance::ZERO);
            for y in 1..n {
                prop_assert_eq!(d(x, y), d(y, x));
                prop_assert_eq!(d(x, y) == Distance::Finite(1), x != y && g.commutes(x, y));
                for z in 1..n {
                    if let (Distance::Finite(a), Distance::Finite(b)) = (d(x, y), d(y, z)) {
                        prop_assert!(d(x, z) <= Distance::Finite(a + b));
                    }
                }
            }
        }
    }

    #[test]
    fn balanced_search_agrees_with_brute_force(g in small_group()) {
        prop_assume!(g.order() > 1);
        let graph = CommGraph::new(&g);
        let apsp = Apsp::compute(&g);
        let engine = graph.find_balanced_pair().witness;
        let brute = apsp.find_balanced_pair(&g);
        prop_assert_eq!(engine.is_some(), brute.is_some());
        if let Some(w) = engine {
            prop_assert!(apsp.witness(&g, w.x, w.y).is_positive());
        }
    }
}
