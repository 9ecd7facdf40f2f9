//! Fixture corpora: finite sets, `G`-sets built from orbits, arbitrary
//! presheaves of bounded size, and maps between them up to isomorphism of
//! arrows.

use std::collections::{BTreeMap, HashSet};
use std::sync::Arc;

use crate::fincat::{terminal_category, FinCat};
use crate::groups::FinGroup;
use crate::presheaf::gset::{coset_space, delooping, subgroup_classes};
use crate::presheaf::hom::{all_maps, find_iso, HomSearch};
use crate::presheaf::{tuple_label, Presheaf, PresheafMap};

/// The base for finite sets.
pub fn finset() -> Arc<FinCat> {
    Arc::new(terminal_category())
}

/// The set `{0, …, n-1}` over any base with one object.
pub fn set(base: &Arc<FinCat>, n: usize) -> Arc<Presheaf> {
    Arc::new(Presheaf::constant(base.clone(), (0..n).map(|i| i.to_string()).collect()))
}

/// A function between constant presheaves on a one-object base.
pub fn finset_map(e: &Arc<Presheaf>, b: &Arc<Presheaf>, f: &[usize]) -> PresheafMap {
    PresheafMap::new(e.clone(), b.clone(), vec![f.to_vec()]).expect("function between sets")
}

/// `f: {0..n} → {0..m}` in FinSet.
pub fn finset_fn(n: usize, m: usize, f: &[usize]) -> PresheafMap {
    let base = finset();
    assert_eq!(f.len(), n);
    finset_map(&set(&base, n), &set(&base, m), f)
}

/// Coproduct of several presheaves; elements are labelled `(i,x)`.
pub fn sum(base: &Arc<FinCat>, parts: &[Arc<Presheaf>]) -> Arc<Presheaf> {
    let n = base.num_objects();
    let mut labels = vec![Vec::new(); n];
    let mut offsets = vec![vec![0; parts.len()]; n];
    for c in 0..n {
        for (i, x) in parts.iter().enumerate() {
            offsets[c][i] = labels[c].len();
            for xi in 0..x.size(c) {
                labels[c].push(tuple_label(&[i.to_string().as_str(), x.label(c, xi)]));
            }
        }
    }
    let action = (0..base.num_morphisms())
        .map(|f| {
            let (c, d) = (base.src(f), base.tgt(f));
            parts
                .iter()
                .enumerate()
                .flat_map(|(i, x)| (0..x.size(d)).map(move |xi| (i, x.restrict(f, xi))))
                .map(|(i, y)| offsets[c][i] + y)
                .collect()
        })
        .collect();
    Arc::new(Presheaf::from_parts(base.clone(), labels, action))
}

/// `G`-sets as sums of transitive ones.
#[derive(Debug, Clone)]
pub struct GsetCorpus {
    pub name: String,
    pub group: FinGroup,
    pub base: Arc<FinCat>,
    /// One coset space per conjugacy class of subgroups, smallest orbit first.
    pub orbits: Vec<Arc<Presheaf>>,
}

impl GsetCorpus {
    pub fn new(name: impl Into<String>, group: FinGroup) -> GsetCorpus {
        let base = delooping(&group);
        let mut orbits: Vec<Arc<Presheaf>> = subgroup_classes(&group)
            .iter()
            .map(|h| Arc::new(coset_space(&base, &group, h)))
            .collect();
        orbits.sort_by_key(|x| x.size(0));
        GsetCorpus { name: name.into(), group, base, orbits }
    }

    /// Every `G`-set with at most `max` points, one per isomorphism class,
    /// ordered by size.
    pub fn objects(&self, max: usize) -> Vec<Arc<Presheaf>> {
        let mut out = Vec::new();
        let mut counts = vec![0usize; self.orbits.len()];
        self.multisets(0, max, &mut counts, &mut out);
        out.sort_by_key(|x| x.total_size());
        out
    }

    fn multisets(&self, i: usize, left: usize, counts: &mut Vec<usize>, out: &mut Vec<Arc<Presheaf>>) {
        if i == self.orbits.len() {
            let parts: Vec<Arc<Presheaf>> = counts
                .iter()
                .enumerate()
                .flat_map(|(k, &n)| std::iter::repeat_n(self.orbits[k].clone(), n))
                .collect();
            out.push(sum(&self.base, &parts));
            return;
        }
        let size = self.orbits[i].size(0);
        let mut n = 0;
        while n * size <= left {
            counts[i] = n;
            self.multisets(i + 1, left - n * size, counts, out);
            n += 1;
        }
        counts[i] = 0;
    }

    /// Maps `E → B` with `|E| + |B| ≤ max_total`, up to isomorphism.
    pub fn maps(&self, max_total: usize) -> Vec<PresheafMap> {
        let objects = self.objects(max_total);
        maps_up_to_iso(&objects, |e, b| e.total_size() + b.total_size() <= max_total)
    }
}

/// Finite sets `0..=max`.
pub fn finset_objects(max: usize) -> Vec<Arc<Presheaf>> {
    let base = finset();
    (0..=max).map(|n| set(&base, n)).collect()
}

/// FinSet maps with `|E| ≤ max_e` and `|B| ≤ max_b`, up to isomorphism.
pub fn finset_maps(max_e: usize, max_b: usize) -> Vec<PresheafMap> {
    let objects = finset_objects(max_e.max(max_b));
    maps_up_to_iso(&objects, |e, b| e.size(0) <= max_e && b.size(0) <= max_b)
}

fn automorphisms(x: &Arc<Presheaf>) -> Vec<Vec<Vec<usize>>> {
    HomSearch::new(x, x).injective().collect()
}

/// The lexicographically least `b ∘ p ∘ a⁻¹` over automorphisms `a`, `b`.
fn canonical_form(p: &PresheafMap, aut_e: &[Vec<Vec<usize>>], aut_b: &[Vec<Vec<usize>>]) -> Vec<Vec<usize>> {
    let mut best: Option<Vec<Vec<usize>>> = None;
    for a in aut_e {
        for b in aut_b {
            let form: Vec<Vec<usize>> = p
                .components
                .iter()
                .enumerate()
                .map(|(c, comp)| {
                    let mut out = vec![0; comp.len()];
                    for (e, &y) in comp.iter().enumerate() {
                        out[a[c][e]] = b[c][y];
                    }
                    out
                })
                .collect();
            if best.as_ref().is_none_or(|cur| form < *cur) {
                best = Some(form);
            }
        }
    }
    best.expect("automorphism groups are non-empty")
}

/// All maps between the given pairwise non-isomorphic objects, one per
/// isomorphism class of arrows, keeping pairs `(E, B)` with `keep(E, B)`.
pub fn maps_up_to_iso(objects: &[Arc<Presheaf>], keep: impl Fn(&Presheaf, &Presheaf) -> bool) -> Vec<PresheafMap> {
    let auts: Vec<_> = objects.iter().map(automorphisms).collect();
    let mut out = Vec::new();
    for (j, b) in objects.iter().enumerate() {
        for (i, e) in objects.iter().enumerate() {
            if !keep(e, b) {
                continue;
            }
            let mut seen = HashSet::new();
            for p in all_maps(e, b) {
                if seen.insert(canonical_form(&p, &auts[i], &auts[j])) {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Whether two arrows are isomorphic in the arrow category.
pub fn arrows_isomorphic(p: &PresheafMap, q: &PresheafMap) -> bool {
    if p.source.sizes() != q.source.sizes() || p.target.sizes() != q.target.sizes() {
        return false;
    }
    let key = |m: &PresheafMap| {
        m.fiber_sizes()
            .into_iter()
            .map(|mut v| {
                v.sort_unstable();
                v
            })
            .collect::<Vec<_>>()
    };
    if key(p) != key(q) {
        return false;
    }
    let mut found = false;
    HomSearch::new(&p.target, &q.target).injective().run(|b| {
        let ok = HomSearch::new(&p.source, &q.source)
            .allowed(|c, e, e2| q.apply(c, e2) == b[c][p.apply(c, e)])
            .injective()
            .first()
            .is_some();
        found = ok;
        if ok {
            std::ops::ControlFlow::Break(())
        } else {
            std::ops::ControlFlow::Continue(())
        }
    });
    found
}

/// Every presheaf on `base` with total size `≤ max`, one per isomorphism
/// class, by backtracking over actions. Practical for small bases and sizes.
pub fn presheaves_up_to_iso(base: &Arc<FinCat>, max: usize) -> Vec<Arc<Presheaf>> {
    let n = base.num_objects();
    let mut out: Vec<Arc<Presheaf>> = Vec::new();
    let mut buckets: BTreeMap<Vec<usize>, Vec<usize>> = BTreeMap::new();
    for sizes in size_vectors(n, max) {
        let mut found = Vec::new();
        let mut action: Vec<Option<Vec<usize>>> = vec![None; base.num_morphisms()];
        for c in 0..n {
            action[base.identity(c)] = Some((0..sizes[c]).collect());
        }
        assign(base, &sizes, 0, &mut action, &mut found);
        for act in found {
            let labels = sizes.iter().map(|&k| (0..k).map(|i| i.to_string()).collect()).collect();
            let x = Arc::new(Presheaf::from_parts(base.clone(), labels, act));
            let key = invariant(&x);
            let bucket = buckets.entry(key).or_default();
            if bucket.iter().all(|&k| find_iso(&out[k], &x).is_none()) {
                bucket.push(out.len());
                out.push(x);
            }
        }
    }
    out
}

fn size_vectors(n: usize, max: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    fn go(n: usize, left: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for k in 0..=left {
            cur.push(k);
            go(n, left - k, cur, out);
            cur.pop();
        }
    }
    go(n, max, &mut Vec::new(), &mut out);
    out.sort_by_key(|v| (v.iter().sum::<usize>(), v.clone()));
    out
}

fn assign(
    base: &FinCat,
    sizes: &[usize],
    f: usize,
    action: &mut Vec<Option<Vec<usize>>>,
    found: &mut Vec<Vec<Vec<usize>>>,
) {
    if f == base.num_morphisms() {
        found.push(action.iter().map(|a| a.clone().expect("assigned")).collect());
        return;
    }
    if action[f].is_some() {
        return assign(base, sizes, f + 1, action, found);
    }
    let (c, d) = (base.src(f), base.tgt(f));
    for func in crate::fincat::all_functions(sizes[d], sizes[c]) {
        action[f] = Some(func);
        if consistent(base, action, f) {
            assign(base, sizes, f + 1, action, found);
        }
    }
    action[f] = None;
}

/// Functoriality on every composable pair whose three actions are known.
fn consistent(base: &FinCat, action: &[Option<Vec<usize>>], f: usize) -> bool {
    let m = base.num_morphisms();
    (0..m).all(|g| {
        [(f, g), (g, f)].into_iter().all(|(a, b)| {
            let Some(ab) = base.try_compose(a, b) else { return true };
            match (&action[a], &action[b], &action[ab]) {
                // X(b ∘ a) = X(a) ∘ X(b)
                (Some(xa), Some(xb), Some(xab)) => xb.iter().zip(xab).all(|(&y, &z)| xa[y] == z),
                _ => true,
            }
        })
    })
}

fn invariant(x: &Presheaf) -> Vec<usize> {
    let base = x.base();
    let mut key = x.sizes();
    for f in 0..base.num_morphisms() {
        let act = x.action(f);
        let mut img = act.to_vec();
        img.sort_unstable();
        img.dedup();
        key.push(img.len());
        if base.src(f) == base.tgt(f) {
            key.push((0..act.len()).filter(|&i| act[i] == i).count());
        }
    }
    key
}

/// `S₃`-sets and `Z/2`-sets, the two group ambients used throughout.
pub fn s3_corpus() -> GsetCorpus {
    GsetCorpus::new("S3", FinGroup::symmetric(3))
}

pub fn z2_corpus() -> GsetCorpus {
    GsetCorpus::new("Z/2", FinGroup::cyclic(2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::Preorder;

    #[test]
    fn finset_map_counts() {
        // iso classes of maps m → n are multisets of n fiber sizes summing to m
        assert_eq!(finset_maps(2, 1).len(), 4);
        assert_eq!(finset_maps(3, 3).len(), 4 + 3 + 5 + 6);
    }

    #[test]
    fn gset_objects() {
        let z2 = z2_corpus();
        assert_eq!(z2.orbits.len(), 2);
        // a + 2b ≤ 4
        assert_eq!(z2.objects(4).len(), 9);
        let s3 = s3_corpus();
        assert_eq!(s3.orbits.iter().map(|o| o.size(0)).collect::<Vec<_>>(), vec![1, 2, 3, 6]);
    }

    #[test]
    fn arrow_presheaves() {
        let base = Arc::new(Preorder::generated_by(vec!["0".into(), "1".into()], &[(0, 1)]).to_category());
        // functions X(1) → X(0) with total size ≤ 2, by (|X(0)|, |X(1)|):
        // (0,0) (1,0) (2,0) (1,1)
        assert_eq!(presheaves_up_to_iso(&base, 2).len(), 4);
        assert_eq!(presheaves_up_to_iso(&base, 3).len(), 4 + 3);
    }

    #[test]
    fn arrow_isomorphism() {
        let a = finset_fn(3, 2, &[0, 0, 1]);
        let b = finset_fn(3, 2, &[1, 0, 1]);
        let c = finset_fn(3, 2, &[0, 0, 0]);
        assert!(arrows_isomorphic(&a, &b));
        assert!(!arrows_isomorphic(&a, &c));
    }
}
