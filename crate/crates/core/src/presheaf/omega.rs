//! The subobject classifier `Ω` of sieves, characteristic maps, and
//! enumeration of subpresheaves.

use std::collections::{BTreeSet, HashMap};
use std::sync::Arc;

use super::limits::{pullback, subpresheaf, terminal};
use super::{Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// A sieve on `c`: a set of morphisms into `c` closed under precomposition,
/// stored as a sorted list of morphism ids.
pub type Sieve = Vec<usize>;

#[derive(Debug, Clone)]
pub struct SubobjectClassifier {
    pub omega: Arc<Presheaf>,
    pub terminal: Arc<Presheaf>,
    /// `true: 1 → Ω`, picking the maximal sieve.
    pub true_map: PresheafMap,
    sieves: Vec<Vec<Sieve>>,
    index: Vec<HashMap<Sieve, usize>>,
}

/// All sieves on `c`, as unions of principal sieves, in a canonical order
/// (by size, then lexicographically).
pub fn sieves_on(base: &FinCat, c: usize) -> Vec<Sieve> {
    let principal: Vec<BTreeSet<usize>> = base
        .arrows_into(c)
        .iter()
        .map(|&f| {
            let d = base.src(f);
            base.arrows_into(d).iter().map(|&g| base.compose(g, f)).collect()
        })
        .collect();
    let mut found: BTreeSet<Vec<usize>> = BTreeSet::new();
    let mut frontier = vec![BTreeSet::new()];
    found.insert(Vec::new());
    while let Some(s) = frontier.pop() {
        for p in &principal {
            if p.is_subset(&s) {
                continue;
            }
            let u: BTreeSet<usize> = s.union(p).copied().collect();
            let v: Vec<usize> = u.iter().copied().collect();
            if found.insert(v) {
                frontier.push(u);
            }
        }
    }
    let mut out: Vec<Sieve> = found.into_iter().collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    out
}

impl SubobjectClassifier {
    pub fn new(base: &Arc<FinCat>) -> SubobjectClassifier {
        let n = base.num_objects();
        let sieves: Vec<Vec<Sieve>> = (0..n).map(|c| sieves_on(base, c)).collect();
        let index: Vec<HashMap<Sieve, usize>> = sieves
            .iter()
            .map(|ss| ss.iter().enumerate().map(|(i, s)| (s.clone(), i)).collect())
            .collect();
        let labels = sieves
            .iter()
            .map(|ss| {
                ss.iter()
                    .map(|s| {
                        let names: Vec<&str> = s.iter().map(|&f| base.morphism_name(f)).collect();
                        format!("{{{}}}", names.join(","))
                    })
                    .collect()
            })
            .collect();
        // g: c' → c sends S to g*S = {h : d → c' | g∘h ∈ S}
        let action = (0..base.num_morphisms())
            .map(|g| {
                let (c2, c) = (base.src(g), base.tgt(g));
                sieves[c]
                    .iter()
                    .map(|s| {
                        let pulled: Sieve = base
                            .arrows_into(c2)
                            .iter()
                            .copied()
                            .filter(|&h| s.binary_search(&base.compose(h, g)).is_ok())
                            .collect::<BTreeSet<_>>()
                            .into_iter()
                            .collect();
                        index[c2][&pulled]
                    })
                    .collect()
            })
            .collect();
        let omega = Arc::new(Presheaf::from_parts(base.clone(), labels, action));
        let one = terminal(base);
        let true_map = PresheafMap::from_parts(
            one.clone(),
            omega.clone(),
            (0..n).map(|c| vec![sieves[c].len() - 1]).collect(),
        );
        debug_assert!((0..n).all(|c| sieves[c].last().map(Vec::len) == Some(base.arrows_into(c).len())));
        SubobjectClassifier { omega, terminal: one, true_map, sieves, index }
    }

    pub fn sieve(&self, c: usize, i: usize) -> &Sieve {
        &self.sieves[c][i]
    }

    /// The characteristic map `χ_c(x) = {f : X(f)x ∈ im m}` of a mono.
    pub fn classify(&self, m: &PresheafMap) -> Result<PresheafMap> {
        if !m.is_mono() {
            return Err(Error::NotMono);
        }
        let x = &m.target;
        let base = x.base();
        let image: Vec<Vec<bool>> = (0..base.num_objects()).map(|c| m.image(c)).collect();
        Ok(self.classify_subset(x, &image))
    }

    /// Characteristic map of a subpresheaf given by membership flags.
    pub fn classify_subset(&self, x: &Arc<Presheaf>, member: &[Vec<bool>]) -> PresheafMap {
        let base = x.base();
        let components = (0..base.num_objects())
            .map(|c| {
                (0..x.size(c))
                    .map(|xi| {
                        let s: Sieve = base
                            .arrows_into(c)
                            .iter()
                            .copied()
                            .filter(|&f| member[base.src(f)][x.restrict(f, xi)])
                            .collect::<BTreeSet<_>>()
                            .into_iter()
                            .collect();
                        self.index[c][&s]
                    })
                    .collect()
            })
            .collect();
        PresheafMap::from_parts(x.clone(), self.omega.clone(), components)
    }

    /// Pullback of `true` along `χ`, as an inclusion into `X`.
    pub fn subobject_of(&self, chi: &PresheafMap) -> PresheafMap {
        let pb = pullback(chi, &self.true_map).expect("χ lands in Ω");
        pb.proj1
    }
}

/// All subpresheaves of `X`, as membership flags, in a canonical order.
pub fn subpresheaves(x: &Presheaf) -> Vec<Vec<Vec<bool>>> {
    let base = x.base();
    let slots: Vec<(usize, usize)> = x.elements().collect();
    let mut member: Vec<Vec<bool>> = x.sizes().into_iter().map(|n| vec![false; n]).collect();
    let mut decided: Vec<Vec<bool>> = member.clone();
    let mut out = Vec::new();
    fn go(
        x: &Presheaf,
        base: &FinCat,
        slots: &[(usize, usize)],
        i: usize,
        member: &mut Vec<Vec<bool>>,
        decided: &mut Vec<Vec<bool>>,
        out: &mut Vec<Vec<Vec<bool>>>,
    ) {
        if i == slots.len() {
            out.push(member.clone());
            return;
        }
        let (c, xi) = slots[i];
        for choice in [false, true] {
            // membership must be closed under restriction both ways we can check now
            let consistent = base.arrows_into(c).iter().all(|&f| {
                let (d, y) = (base.src(f), x.restrict(f, xi));
                !decided[d][y] || !choice || member[d][y]
            }) && (0..base.num_objects()).all(|d| {
                base.hom(c, d).iter().all(|&f| {
                    (0..x.size(d)).all(|z| {
                        !(decided[d][z] && member[d][z] && x.restrict(f, z) == xi) || choice
                    })
                })
            });
            if !consistent {
                continue;
            }
            member[c][xi] = choice;
            decided[c][xi] = true;
            go(x, base, slots, i + 1, member, decided, out);
            decided[c][xi] = false;
            member[c][xi] = false;
        }
    }
    go(x, base, &slots, 0, &mut member, &mut decided, &mut out);
    out
}

/// All subobjects of `X` as inclusion maps.
pub fn subobjects(x: &Arc<Presheaf>) -> Vec<PresheafMap> {
    subpresheaves(x).iter().map(|keep| subpresheaf(x, keep).1).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{one_object_category, terminal_category};

    #[test]
    fn finset_omega_has_two_elements() {
        let base = Arc::new(terminal_category());
        let o = SubobjectClassifier::new(&base);
        assert_eq!(o.omega.sizes(), vec![2]);
        let two = Arc::new(Presheaf::constant(base.clone(), vec!["0".into(), "1".into()]));
        let one = Arc::new(Presheaf::constant(base, vec!["1".into()]));
        let incl = PresheafMap::new(one, two.clone(), vec![vec![1]]).unwrap();
        let chi = o.classify(&incl).unwrap();
        assert_eq!(chi.components, vec![vec![0, 1]]);
        assert!(chi.is_iso());
        let all = o.classify(&PresheafMap::identity(&two)).unwrap();
        assert_eq!(all.components, vec![vec![1, 1]]);
    }

    #[test]
    fn gset_omega_is_two_fixed_points() {
        let base = Arc::new(one_object_category(&["e".into(), "s".into()], |a, b| a ^ b).unwrap());
        let o = SubobjectClassifier::new(&base);
        assert_eq!(o.omega.sizes(), vec![2]);
        let s = base.morphism_id("s").unwrap();
        assert_eq!(o.omega.action(s), &[0, 1]);
    }

    #[test]
    fn subpresheaves_of_sets() {
        let base = Arc::new(terminal_category());
        let three = Presheaf::constant(base, vec!["a".into(), "b".into(), "c".into()]);
        assert_eq!(subpresheaves(&three).len(), 8);
    }

    #[test]
    fn subpresheaves_of_regular_z2_set() {
        let base = Arc::new(one_object_category(&["e".into(), "s".into()], |a, b| a ^ b).unwrap());
        let reg = Presheaf::new(base, vec![vec!["e".into(), "s".into()]], vec![vec![0, 1], vec![1, 0]])
            .unwrap();
        assert_eq!(subpresheaves(&reg).len(), 2);
    }
}
