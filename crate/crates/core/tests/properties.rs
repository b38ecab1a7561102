use proptest::prelude::*;

use derangetree_core::{
    classify_tree, forward, inverse, perm_to_tree, tree_to_perm, CycleDecomposition, IncreasingTree, Label, MarkedTree,
    PermWord, Relabeling,
};

/// A random increasing tree on `0..n` from independent parent choices.
fn tree_strategy(max: usize) -> impl Strategy<Value = IncreasingTree> {
    (1..=max).prop_flat_map(|n| {
        (1..n)
            .map(|v| (0..v).boxed())
            .collect::<Vec<_>>()
            .prop_map(|parents| IncreasingTree::from_parents(&parents).unwrap())
    })
}

/// A random derangement of `0..n`, by rejection from shuffled permutations.
fn derangement_strategy(min: usize, max: usize) -> impl Strategy<Value = CycleDecomposition> {
    (min..=max)
        .prop_flat_map(|n| Just((0..n).collect::<Vec<Label>>()).prop_shuffle())
        .prop_filter("derangement", |p| p.iter().enumerate().all(|(i, &x)| i != x))
        .prop_map(|p| CycleDecomposition::from_images(&p).unwrap())
}

proptest! {
    #[test]
    fn tree_word_round_trip(t in tree_strategy(14)) {
        let w = tree_to_perm(&t).unwrap();
        prop_assert_eq!(perm_to_tree(&w), t.clone());
        prop_assert_eq!(t.leaves().len(), w.descents() + 1);
        let text = w.to_string();
        prop_assert_eq!(text.parse::<PermWord>().unwrap(), w);
    }

    #[test]
    fn tree_text_round_trip(t in tree_strategy(14)) {
        prop_assert_eq!(t.to_string().parse::<IncreasingTree>().unwrap(), t);
    }

    #[test]
    fn cycle_text_round_trip(p in derangement_strategy(2, 20)) {
        let text = p.to_string();
        prop_assert_eq!(text.parse::<CycleDecomposition>().unwrap(), p.clone());
        prop_assert_eq!(CycleDecomposition::from_images(&p.to_images().unwrap()).unwrap(), p);
    }

    /// Beyond the exhaustive range: round trip and well-formedness on random
    /// derangements of size up to 16.
    #[test]
    fn bijection_round_trip_large(p in derangement_strategy(9, 16)) {
        let mt = forward(&p).unwrap();
        prop_assert_eq!(mt.size(), p.size());
        prop_assert_eq!(mt.tree().rank(mt.mark()).unwrap(), 1);
        prop_assert!(classify_tree(&mt).is_ok());
        prop_assert_eq!(inverse(&mt).unwrap(), p);
        let text = mt.to_string();
        prop_assert_eq!(text.parse::<MarkedTree>().unwrap(), mt);
    }

    #[test]
    fn relabeling_is_order_isomorphic(labels in proptest::collection::btree_set(0usize..100, 1..20)) {
        let r = Relabeling::order_isomorphism(labels.iter().copied()).unwrap();
        let images: Vec<Label> = labels.iter().map(|&x| r.forward(x).unwrap()).collect();
        prop_assert_eq!(images, (0..labels.len()).collect::<Vec<_>>());
        for &x in &labels {
            prop_assert_eq!(r.backward(r.forward(x).unwrap()).unwrap(), x);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Random marked trees of larger size map back and forth.
    #[test]
    fn marked_tree_round_trip_large(t in tree_strategy(13), pick in any::<prop::sample::Index>()) {
        let candidates: Vec<MarkedTree> = MarkedTree::all_markings(&t).collect();
        prop_assume!(!candidates.is_empty());
        let mt = pick.get(&candidates).clone();
        prop_assume!(mt.size() >= 2);
        let p = inverse(&mt).unwrap();
        prop_assert!(p.is_derangement());
        prop_assert_eq!(forward(&p).unwrap(), mt);
    }
}
