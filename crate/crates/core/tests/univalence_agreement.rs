use rayon::prelude::*;
use strict_univalence::corpus::{finset_maps, s3_corpus, z2_corpus};
use strict_univalence::presheaf::PresheafMap;
use strict_univalence::univalence::{check, Method, DEFAULT_FAMILY_BOUND};

fn corpus() -> Vec<PresheafMap> {
    let mut maps = finset_maps(3, 3);
    maps.extend(z2_corpus().maps(4));
    maps.extend(s3_corpus().maps(4));
    maps
}

#[test]
fn checkers_agree_on_the_corpus() {
    let maps = corpus();
    assert_eq!(maps.len(), 18 + z2_corpus().maps(4).len() + s3_corpus().maps(4).len());
    let bad: Vec<String> = maps
        .par_iter()
        .filter_map(|p| {
            let v = check(p, Method::All, DEFAULT_FAMILY_BOUND).unwrap();
            (!v.conflicts.is_empty() || !v.refuter_gaps.is_empty())
                .then(|| format!("{}: {:?} {:?}", v.morphism, v.conflicts, v.refuter_gaps))
        })
        .collect();
    assert!(bad.is_empty(), "{bad:#?}");
}

#[test]
fn omega_agrees_on_monos() {
    for p in corpus().iter().filter(|p| p.is_mono()) {
        let v = check(p, Method::All, DEFAULT_FAMILY_BOUND).unwrap();
        assert_eq!(v.omega.as_ref().unwrap().verdict(), v.univalent(), "{}", v.morphism);
    }
}
