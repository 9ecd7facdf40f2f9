use std::sync::Arc;

use proptest::prelude::*;
use strict_univalence::corpus::{finset_fn, z2_corpus};
use strict_univalence::fincat::{preorder_to_poset, Preorder};
use strict_univalence::groups::{automorphisms, inn_out, is_complete, FinGroup};
use strict_univalence::internal::{build_internal_cat, iso_object, iso_object_alt, iso_over_bb, vergura_object};
use strict_univalence::presheaf::limits::pullback;
use strict_univalence::presheaf::omega::subobjects;
use strict_univalence::presheaf::{all_maps, count_cart_squares, Presheaf, PresheafMap};
use strict_univalence::segal::{check_complete, check_segal, nerve_of_category, nerve_of_internal, nerve_of_morphism};
use strict_univalence::univalence::{check_bruteforce, check_completeness, default_family, finset_fiber_criterion};

fn finset_map() -> impl Strategy<Value = PresheafMap> {
    (0usize..4, 1usize..4).prop_flat_map(|(n, m)| {
        proptest::collection::vec(0..m, n).prop_map(move |f| finset_fn(n, m, &f))
    })
}

/// A map between `Z/2`-sets with at most three points each.
fn z2_map() -> impl Strategy<Value = PresheafMap> {
    let objects = z2_corpus().objects(3);
    let maps: Vec<PresheafMap> =
        objects.iter().flat_map(|e| objects.iter().flat_map(move |b| all_maps(e, b))).collect();
    let maps = Arc::new(maps);
    (0..maps.len()).prop_map(move |i| maps[i].clone())
}

fn any_map() -> impl Strategy<Value = PresheafMap> {
    prop_oneof![finset_map(), z2_map()]
}

fn preorder() -> impl Strategy<Value = Preorder> {
    (1usize..6).prop_flat_map(|n| {
        proptest::collection::vec((0..n, 0..n), 0..8).prop_map(move |pairs| {
            Preorder::generated_by((0..n).map(|i| format!("x{i}")).collect(), &pairs)
        })
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn nerves_of_maps_are_segal(p in any_map()) {
        let n = nerve_of_morphism(&p).unwrap();
        prop_assert!(n.identity_failures().is_empty());
        prop_assert!(check_segal(&n).unwrap().pass);
    }

    #[test]
    fn completeness_is_the_section_being_iso(p in any_map()) {
        let ic = build_internal_cat(&p).unwrap();
        let complete = check_complete(&nerve_of_internal(&ic).unwrap()).unwrap().pass;
        prop_assert_eq!(complete, iso_object(&ic).unwrap().section.is_iso());
    }

    #[test]
    fn equivalence_objects_agree(p in any_map()) {
        let ic = build_internal_cat(&p).unwrap();
        let iso = iso_object(&ic).unwrap();
        let (alt, _) = iso_object_alt(&ic).unwrap();
        let verg = vergura_object(&p).unwrap();
        prop_assert!(iso_over_bb(&iso, &alt).is_some());
        prop_assert!(iso_over_bb(&iso, &verg).is_some());
    }

    /// A map of finite sets is univalent iff its fibers are pairwise distinct
    /// subsingletons.
    #[test]
    fn finset_univalence_by_fiber_sizes(p in finset_map()) {
        let mut sizes = p.fiber_sizes()[0].clone();
        sizes.sort_unstable();
        let oracle = sizes.iter().all(|&k| k <= 1) && sizes.windows(2).all(|w| w[0] != w[1]);
        prop_assert_eq!(check_completeness(&p).unwrap().pass, oracle);
        prop_assert_eq!(finset_fiber_criterion(&p).unwrap().pass, oracle);
    }

    #[test]
    fn at_most_one_square_into_a_univalent_map(p in any_map(), q in any_map()) {
        prop_assume!(p.source.same_base(&q.source));
        if check_completeness(&p).unwrap().pass {
            prop_assert!(count_cart_squares(&q, &p, 2) <= 1);
        }
    }

    #[test]
    fn refuter_never_contradicts_completeness(p in z2_map()) {
        let family = default_family(&p, None, 6).unwrap();
        let brute = check_bruteforce(&p, &family, 6).unwrap();
        if check_completeness(&p).unwrap().pass {
            prop_assert!(brute.pass);
        }
    }

    #[test]
    fn univalence_is_stable_under_mono_pullback(p in any_map()) {
        prop_assume!(check_completeness(&p).unwrap().pass);
        for m in subobjects(&p.target) {
            let q = pullback(&m, &p).unwrap().proj1;
            prop_assert!(check_completeness(&q).unwrap().pass);
        }
    }

    #[test]
    fn poset_reflection_is_idempotent(p in preorder()) {
        let once = preorder_to_poset(&p);
        prop_assert!(once.poset.is_antisymmetric());
        prop_assert!(p.is_monotone(&once.class_of, &once.poset));
        let twice = preorder_to_poset(&once.poset);
        // classes are renamed; the order and the quotient map are unchanged
        prop_assert_eq!(twice.poset.relation(), once.poset.relation());
        prop_assert_eq!(twice.class_of, (0..once.poset.len()).collect::<Vec<_>>());
    }

    #[test]
    fn nerves_of_posets_are_complete(p in preorder()) {
        let q = preorder_to_poset(&p).poset;
        let n = nerve_of_category(&q.to_category(), 3).unwrap();
        prop_assert!(check_complete(&n).unwrap().pass);
        // the nerve of a preorder with a non-trivial class is not
        let expect = p.is_antisymmetric();
        prop_assert_eq!(check_complete(&nerve_of_category(&p.to_category(), 3).unwrap()).unwrap().pass, expect);
    }

    #[test]
    fn class_equations_for_abelian_products(a in 1usize..5, b in 1usize..5) {
        let g = FinGroup::direct_product(&FinGroup::cyclic(a), &FinGroup::cyclic(b));
        let io = inn_out(&g);
        prop_assert_eq!(g.order(), g.center().len() * io.inn.len());
        prop_assert_eq!(automorphisms(&g).maps.len(), io.inn.len() * io.out.order());
        prop_assert_eq!(is_complete(&g).complete, g.order() == 1);
    }
}

#[test]
fn presheaf_strategy_covers_empty_maps() {
    let p = finset_fn(0, 1, &[]);
    let empty: &Presheaf = &p.source;
    assert_eq!(empty.total_size(), 0);
    assert!(check_completeness(&p).unwrap().pass);
}
