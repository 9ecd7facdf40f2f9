//! Finite limits and binary coproducts, computed pointwise.

use std::collections::HashMap;
use std::sync::Arc;

use super::{tuple_label, Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::fincat::FinCat;

pub fn terminal(base: &Arc<FinCat>) -> Arc<Presheaf> {
    Arc::new(Presheaf::constant(base.clone(), vec!["*".to_string()]))
}

pub fn initial(base: &Arc<FinCat>) -> Arc<Presheaf> {
    Arc::new(Presheaf::constant(base.clone(), Vec::new()))
}

/// The unique map to a terminal presheaf.
pub fn to_terminal(x: &Arc<Presheaf>, one: &Arc<Presheaf>) -> PresheafMap {
    let components = x.sizes().into_iter().map(|n| vec![0; n]).collect();
    PresheafMap::from_parts(x.clone(), one.clone(), components)
}

/// `X ×_Z Y` with its projections. Elements are the pairs `(a,b)` with
/// `f(a) = g(b)`, ordered lexicographically.
#[derive(Debug, Clone)]
pub struct Pullback {
    pub obj: Arc<Presheaf>,
    pub proj1: PresheafMap,
    pub proj2: PresheafMap,
    pairs: Vec<Vec<(usize, usize)>>,
    index: Vec<HashMap<(usize, usize), usize>>,
}

fn same_presheaf(a: &Arc<Presheaf>, b: &Arc<Presheaf>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

pub fn pullback(f: &PresheafMap, g: &PresheafMap) -> Result<Pullback> {
    if !f.source.same_base(&g.source) {
        return Err(Error::BaseMismatch);
    }
    if !same_presheaf(&f.target, &g.target) {
        return Err(Error::TargetMismatch);
    }
    let x = &f.source;
    let y = &g.source;
    let base = x.base().clone();
    let n = base.num_objects();
    let mut pairs = Vec::with_capacity(n);
    let mut index = Vec::with_capacity(n);
    let mut labels = Vec::with_capacity(n);
    for c in 0..n {
        let mut over: Vec<Vec<usize>> = vec![Vec::new(); f.target.size(c)];
        for b in 0..y.size(c) {
            over[g.apply(c, b)].push(b);
        }
        let mut ps = Vec::new();
        for a in 0..x.size(c) {
            for &b in &over[f.apply(c, a)] {
                ps.push((a, b));
            }
        }
        let idx: HashMap<(usize, usize), usize> =
            ps.iter().enumerate().map(|(i, &p)| (p, i)).collect();
        labels.push(
            ps.iter().map(|&(a, b)| tuple_label(&[x.label(c, a), y.label(c, b)])).collect(),
        );
        pairs.push(ps);
        index.push(idx);
    }
    let action = (0..base.num_morphisms())
        .map(|h| {
            let (c, d) = (base.src(h), base.tgt(h));
            pairs[d]
                .iter()
                .map(|&(a, b)| index[c][&(x.restrict(h, a), y.restrict(h, b))])
                .collect()
        })
        .collect();
    let obj = Arc::new(Presheaf::from_parts(base, labels, action));
    let proj1 = PresheafMap::from_parts(
        obj.clone(),
        x.clone(),
        pairs.iter().map(|ps| ps.iter().map(|p| p.0).collect()).collect(),
    );
    let proj2 = PresheafMap::from_parts(
        obj.clone(),
        y.clone(),
        pairs.iter().map(|ps| ps.iter().map(|p| p.1).collect()).collect(),
    );
    Ok(Pullback { obj, proj1, proj2, pairs, index })
}

/// Binary product, as the pullback over the terminal presheaf.
pub fn product(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<Pullback> {
    if !x.same_base(y) {
        return Err(Error::BaseMismatch);
    }
    let one = terminal(x.base());
    pullback(&to_terminal(x, &one), &to_terminal(y, &one))
}

impl Pullback {
    pub fn pair(&self, c: usize, i: usize) -> (usize, usize) {
        self.pairs[c][i]
    }

    pub fn pairs(&self, c: usize) -> &[(usize, usize)] {
        &self.pairs[c]
    }

    pub fn index_of(&self, c: usize, a: usize, b: usize) -> Option<usize> {
        self.index[c].get(&(a, b)).copied()
    }

    /// The unique map `W → X ×_Z Y` induced by a commuting cone.
    /// Panics if the cone does not commute.
    pub fn factor(&self, m1: &PresheafMap, m2: &PresheafMap) -> PresheafMap {
        self.try_factor(m1, m2).expect("cone does not commute")
    }

    pub fn try_factor(&self, m1: &PresheafMap, m2: &PresheafMap) -> Option<PresheafMap> {
        let w = &m1.source;
        let mut components = Vec::with_capacity(w.base().num_objects());
        for c in 0..w.base().num_objects() {
            let mut comp = Vec::with_capacity(w.size(c));
            for i in 0..w.size(c) {
                comp.push(self.index_of(c, m1.apply(c, i), m2.apply(c, i))?);
            }
            components.push(comp);
        }
        Some(PresheafMap::from_parts(w.clone(), self.obj.clone(), components))
    }
}

/// Equalizer of two parallel maps with its inclusion.
pub fn equalizer(f: &PresheafMap, g: &PresheafMap) -> Result<(Arc<Presheaf>, PresheafMap)> {
    if !same_presheaf(&f.source, &g.source) || !same_presheaf(&f.target, &g.target) {
        return Err(Error::TargetMismatch);
    }
    let keep: Vec<Vec<bool>> = (0..f.source.base().num_objects())
        .map(|c| (0..f.source.size(c)).map(|a| f.apply(c, a) == g.apply(c, a)).collect())
        .collect();
    Ok(subpresheaf(&f.source, &keep))
}

/// The subpresheaf on the kept elements (which must be closed under
/// restriction) together with its inclusion.
pub fn subpresheaf(x: &Arc<Presheaf>, keep: &[Vec<bool>]) -> (Arc<Presheaf>, PresheafMap) {
    let base = x.base().clone();
    let n = base.num_objects();
    let kept: Vec<Vec<usize>> =
        (0..n).map(|c| (0..x.size(c)).filter(|&a| keep[c][a]).collect()).collect();
    let mut position = vec![Vec::new(); n];
    for c in 0..n {
        position[c] = vec![usize::MAX; x.size(c)];
        for (i, &a) in kept[c].iter().enumerate() {
            position[c][a] = i;
        }
    }
    let labels = kept
        .iter()
        .enumerate()
        .map(|(c, ks)| ks.iter().map(|&a| x.label(c, a).to_string()).collect())
        .collect();
    let action = (0..base.num_morphisms())
        .map(|h| {
            let c = base.src(h);
            kept[base.tgt(h)].iter().map(|&a| position[c][x.restrict(h, a)]).collect()
        })
        .collect();
    let obj = Arc::new(Presheaf::from_parts(base, labels, action));
    let incl = PresheafMap::from_parts(obj.clone(), x.clone(), kept);
    (obj, incl)
}

/// `X ⊔ Y`; elements are labelled `(0,a)` and `(1,b)`.
#[derive(Debug, Clone)]
pub struct Coproduct {
    pub obj: Arc<Presheaf>,
    pub inj1: PresheafMap,
    pub inj2: PresheafMap,
}

pub fn coproduct(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Result<Coproduct> {
    if !x.same_base(y) {
        return Err(Error::BaseMismatch);
    }
    let base = x.base().clone();
    let n = base.num_objects();
    let labels = (0..n)
        .map(|c| {
            let left = x.labels(c).iter().map(|l| tuple_label(&["0", l]));
            let right = y.labels(c).iter().map(|l| tuple_label(&["1", l]));
            left.chain(right).collect()
        })
        .collect();
    let action = (0..base.num_morphisms())
        .map(|h| {
            let (c, d) = (base.src(h), base.tgt(h));
            let off = x.size(c);
            let left = (0..x.size(d)).map(|a| x.restrict(h, a));
            let right = (0..y.size(d)).map(|b| off + y.restrict(h, b));
            left.chain(right).collect()
        })
        .collect();
    let obj = Arc::new(Presheaf::from_parts(base, labels, action));
    let inj1 = PresheafMap::from_parts(
        x.clone(),
        obj.clone(),
        (0..n).map(|c| (0..x.size(c)).collect()).collect(),
    );
    let inj2 = PresheafMap::from_parts(
        y.clone(),
        obj.clone(),
        (0..n).map(|c| (0..y.size(c)).map(|b| x.size(c) + b).collect()).collect(),
    );
    Ok(Coproduct { obj, inj1, inj2 })
}

impl Coproduct {
    pub fn copair(&self, f: &PresheafMap, g: &PresheafMap) -> PresheafMap {
        let components = (0..self.obj.base().num_objects())
            .map(|c| f.components[c].iter().chain(&g.components[c]).copied().collect())
            .collect();
        PresheafMap::from_parts(self.obj.clone(), f.target.clone(), components)
    }
}

/// `f × g: X × Y → X' × Y'` between given products.
pub fn product_map(
    domain: &Pullback,
    codomain: &Pullback,
    f: &PresheafMap,
    g: &PresheafMap,
) -> PresheafMap {
    codomain.factor(&domain.proj1.then(f), &domain.proj2.then(g))
}

/// `⟨id, id⟩: X → X × X`.
pub fn diagonal(xx: &Pullback) -> PresheafMap {
    let id = PresheafMap::identity(&xx.proj1.target);
    xx.factor(&id, &id)
}

/// The swap `X × Y → Y × X`.
pub fn swap(xy: &Pullback, yx: &Pullback) -> PresheafMap {
    yx.factor(&xy.proj2, &xy.proj1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{one_object_category, terminal_category};

    fn set(n: usize) -> Arc<Presheaf> {
        let base = Arc::new(terminal_category());
        Arc::new(Presheaf::constant(base, (0..n).map(|i| i.to_string()).collect()))
    }

    #[test]
    fn pullback_over_point_is_product() {
        let (two, three) = (set(2), set(3));
        let one = terminal(two.base());
        let pb = pullback(&to_terminal(&two, &one), &to_terminal(&three, &one)).unwrap();
        assert_eq!(pb.obj.sizes(), vec![6]);
        assert_eq!(pb.obj.label(0, 1), "(0,1)");
    }

    #[test]
    fn z2_fold_pullback() {
        let base = Arc::new(one_object_category(&["e".into(), "s".into()], |a, b| a ^ b).unwrap());
        let regular = Arc::new(
            Presheaf::new(base.clone(), vec![vec!["e".into(), "s".into()]], vec![vec![0, 1], vec![1, 0]])
                .unwrap(),
        );
        let one = terminal(&base);
        let fold = to_terminal(&regular, &one);
        let pb = pullback(&fold, &fold).unwrap();
        assert_eq!(pb.obj.sizes(), vec![4]);
        // free action: no fixed points
        let s = base.morphism_id("s").unwrap();
        assert!((0..4).all(|i| pb.obj.restrict(s, i) != i));
    }

    #[test]
    fn equalizer_and_coproduct() {
        let (two, three) = (set(2), set(3));
        let f = PresheafMap::new(three.clone(), two.clone(), vec![vec![0, 1, 1]]).unwrap();
        let g = PresheafMap::new(three.clone(), two.clone(), vec![vec![0, 0, 1]]).unwrap();
        let (eq, incl) = equalizer(&f, &g).unwrap();
        assert_eq!(eq.sizes(), vec![2]);
        assert_eq!(incl.components, vec![vec![0, 2]]);
        let co = coproduct(&two, &three).unwrap();
        assert_eq!(co.obj.sizes(), vec![5]);
        let back = co.copair(&PresheafMap::identity(&two), &f);
        assert_eq!(back.components, vec![vec![0, 1, 0, 1, 1]]);
    }
}
