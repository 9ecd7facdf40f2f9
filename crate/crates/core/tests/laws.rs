mod common;

use common::*;

fn assert_clean(name: &str, r: LawReport) {
    assert!(r.checks > 0, "{name}: nothing checked");
    assert!(r.failures.is_empty(), "{name}: {:#?}", r.failures);
}

#[test]
fn brute_force_counter_agrees_on_small_sets() {
    let a = &ambients()[0];
    let (x, y) = (&a.objects[3], &a.objects[2]);
    assert_eq!(brute_hom_count(x, y), Some(8));
}

#[test]
fn subobjects_are_classified() {
    for a in ambients() {
        assert_clean(a.name, subobject_law(&a));
    }
}

#[test]
fn yoneda_counting() {
    for a in ambients() {
        assert_clean(a.name, yoneda_law(&a));
    }
}

#[test]
fn limits_have_their_universal_properties() {
    for a in ambients() {
        assert_clean(a.name, limit_laws(&a));
    }
}

#[test]
fn exponential_adjunction() {
    for a in ambients() {
        assert_clean(a.name, exponential_law(&a));
    }
}

#[test]
fn hom_over_base_adjunction() {
    for a in ambients() {
        assert_clean(a.name, hom_over_base_law(&a));
    }
}
