//! `G`-sets as presheaves on the one-object groupoid `BG`.
//!
//! Composition in `BG` is `compose(a, b) = b·a`, so a presheaf is a right
//! action `x·g = X(g)x`. Transitive right `G`-sets are coset spaces `H\G`.

use std::collections::BTreeSet;
use std::sync::Arc;

use super::{tuple_label, Presheaf, PresheafMap};
use crate::fincat::{all_functions, one_object_category, FinCat};
use crate::groups::FinGroup;

/// `BG`: one object `*`, one morphism per group element, named as in `G`.
/// The identity element becomes morphism 0.
pub fn delooping(g: &FinGroup) -> Arc<FinCat> {
    // reorder so the identity comes first
    let order: Vec<usize> = std::iter::once(g.identity())
        .chain((0..g.order()).filter(|&a| a != g.identity()))
        .collect();
    let mut pos = vec![0; g.order()];
    for (i, &a) in order.iter().enumerate() {
        pos[a] = i;
    }
    let names: Vec<String> = order.iter().map(|&a| g.name(a).to_string()).collect();
    let cat = one_object_category(&names, |first, then| pos[g.mul(order[then], order[first])])
        .expect("a group is a one-object category");
    Arc::new(cat)
}

/// The morphism of `BG` for a group element.
pub fn element_morphism(base: &FinCat, g: &FinGroup, a: usize) -> usize {
    base.morphism_id(g.name(a)).expect("BG has a morphism per element")
}

/// A right `G`-set with the given points and action `act(x, g) = x·g`.
pub fn gset(
    base: &Arc<FinCat>,
    g: &FinGroup,
    labels: Vec<String>,
    act: impl Fn(usize, usize) -> usize,
) -> crate::error::Result<Presheaf> {
    let action = (0..g.order())
        .map(|m| {
            let a = g.element(base.morphism_name(m)).expect("BG morphisms are group elements");
            (0..labels.len()).map(|x| act(x, a)).collect()
        })
        .collect();
    Presheaf::new(base.clone(), vec![labels], action)
}

/// Right cosets `H\G` with `(Hx)·g = H(xg)`; cosets are labelled by their
/// elements, e.g. `{e,s}`.
pub fn coset_space(base: &Arc<FinCat>, g: &FinGroup, h: &[usize]) -> Presheaf {
    let mut cosets: Vec<Vec<usize>> = Vec::new();
    let mut coset_of = vec![usize::MAX; g.order()];
    for x in 0..g.order() {
        if coset_of[x] != usize::MAX {
            continue;
        }
        let mut c: Vec<usize> = h.iter().map(|&k| g.mul(k, x)).collect();
        c.sort_unstable();
        for &y in &c {
            coset_of[y] = cosets.len();
        }
        cosets.push(c);
    }
    let labels = cosets
        .iter()
        .map(|c| format!("{{{}}}", c.iter().map(|&y| g.name(y)).collect::<Vec<_>>().join(",")))
        .collect();
    gset(base, g, labels, |i, a| coset_of[g.mul(cosets[i][0], a)]).expect("cosets form a G-set")
}

/// `G` acting on itself by right multiplication.
pub fn regular(base: &Arc<FinCat>, g: &FinGroup) -> Presheaf {
    let labels = g.names().to_vec();
    gset(base, g, labels, |x, a| g.mul(x, a)).expect("regular action")
}

/// `n` points with trivial action.
pub fn trivial_gset(base: &Arc<FinCat>, labels: Vec<String>) -> Presheaf {
    Presheaf::constant(base.clone(), labels)
}

/// `Sₙ` acting on `{1..n}` by `i·σ = σ⁻¹(i)`, with the group and its
/// delooping. Group elements are the permutations in lexicographic order.
pub fn symmetric_points(n: usize) -> (FinGroup, Arc<FinCat>, Arc<Presheaf>) {
    let perms = crate::fincat::permutations(n);
    let g = FinGroup::from_permutation_list(perms.clone()).expect("permutations form a group");
    let base = delooping(&g);
    let labels = (1..=n).map(|i| i.to_string()).collect();
    let x = gset(&base, &g, labels, |i, a| {
        perms[a].iter().position(|&j| j == i).expect("permutation")
    })
    .expect("point action");
    (g, base, Arc::new(x))
}

/// All subgroups of `G` as sorted element lists.
pub fn subgroups(g: &FinGroup) -> Vec<Vec<usize>> {
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut todo = vec![g.generated(&[])];
    while let Some(h) = todo.pop() {
        if !found.insert(h.clone()) {
            continue;
        }
        for a in 0..g.order() {
            if h.binary_search(&a).is_err() {
                let mut gens = h.clone();
                gens.push(a);
                todo.push(g.generated(&gens));
            }
        }
    }
    found.into_iter().collect()
}

/// One subgroup per conjugacy class, smallest first.
pub fn subgroup_classes(g: &FinGroup) -> Vec<Vec<usize>> {
    let mut reps: Vec<Vec<usize>> = Vec::new();
    let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut all = subgroups(g);
    all.sort_by_key(|h| (h.len(), h.clone()));
    for h in all {
        if seen.contains(&h) {
            continue;
        }
        for x in 0..g.order() {
            let mut c: Vec<usize> = h.iter().map(|&k| g.conjugate(x, k)).collect();
            c.sort_unstable();
            seen.insert(c);
        }
        reps.push(h);
    }
    reps
}

/// `⟨Y,Z⟩_X` over `BG` by the fiberwise formula: elements are pairs
/// `(x, φ: Y_x → Z_x)` with `(x, φ)·g = (x·g, y ↦ φ(y·g⁻¹)·g)`.
pub fn hom_over_base_gset(g: &FinGroup, f: &PresheafMap, h: &PresheafMap) -> (Arc<Presheaf>, PresheafMap) {
    let x = &f.target;
    let base = x.base().clone();
    assert_eq!(base.num_objects(), 1, "G-sets live over a one-object base");
    let (y, z) = (&f.source, &h.source);
    let mut elems: Vec<(usize, Vec<usize>)> = Vec::new();
    let mut labels = Vec::new();
    let ys: Vec<Vec<usize>> = (0..x.size(0)).map(|xi| f.fiber(0, xi)).collect();
    let zs: Vec<Vec<usize>> = (0..x.size(0)).map(|xi| h.fiber(0, xi)).collect();
    for xi in 0..x.size(0) {
        for func in all_functions(ys[xi].len(), zs[xi].len()) {
            let phi: Vec<usize> = func.iter().map(|&j| zs[xi][j]).collect();
            let parts: Vec<&str> = phi.iter().map(|&zz| z.label(0, zz)).collect();
            labels.push(tuple_label(&[x.label(0, xi), &format!("[{}]", parts.join(","))]));
            elems.push((xi, phi));
        }
    }
    let index: std::collections::HashMap<(usize, Vec<usize>), usize> =
        elems.iter().cloned().enumerate().map(|(i, e)| (e, i)).collect();
    let action = (0..base.num_morphisms())
        .map(|m| {
            let a = g.element(base.morphism_name(m)).expect("BG morphisms are group elements");
            let inv = element_morphism(&base, g, g.inv(a));
            elems
                .iter()
                .map(|(xi, phi)| {
                    let xg = x.restrict(m, *xi);
                    let moved: Vec<usize> = ys[xg]
                        .iter()
                        .map(|&yy| {
                            let back = y.restrict(inv, yy);
                            let pos = ys[*xi].binary_search(&back).expect("fiber is stable");
                            z.restrict(m, phi[pos])
                        })
                        .collect();
                    index[&(xg, moved)]
                })
                .collect()
        })
        .collect();
    let to_base = vec![elems.iter().map(|e| e.0).collect()];
    let obj = Arc::new(Presheaf::new(base, vec![labels], action).expect("conjugation action"));
    let map = PresheafMap::from_parts(obj.clone(), x.clone(), to_base);
    (obj, map)
}
