//! Group homomorphisms, enumerated by assigning images to a generating set.

use std::collections::VecDeque;
use std::sync::Arc;

use super::FinGroup;
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GroupHom {
    pub source: Arc<FinGroup>,
    pub target: Arc<FinGroup>,
    pub map: Vec<usize>,
}

impl GroupHom {
    pub fn new(source: Arc<FinGroup>, target: Arc<FinGroup>, map: Vec<usize>) -> Result<GroupHom> {
        let h = GroupHom { source, target, map };
        if h.map.len() != h.source.order() || h.map.iter().any(|&y| y >= h.target.order()) {
            return Err(Error::InvalidGroup("map has the wrong shape".into()));
        }
        if !h.is_multiplicative() {
            return Err(Error::InvalidGroup("map is not multiplicative".into()));
        }
        Ok(h)
    }

    pub fn is_multiplicative(&self) -> bool {
        let (g, h) = (&self.source, &self.target);
        (0..g.order()).all(|a| {
            (0..g.order()).all(|b| self.map[g.mul(a, b)] == h.mul(self.map[a], self.map[b]))
        })
    }

    pub fn identity(g: &Arc<FinGroup>) -> GroupHom {
        GroupHom { source: g.clone(), target: g.clone(), map: (0..g.order()).collect() }
    }

    pub fn trivial(source: &Arc<FinGroup>, target: &Arc<FinGroup>) -> GroupHom {
        GroupHom {
            source: source.clone(),
            target: target.clone(),
            map: vec![target.identity(); source.order()],
        }
    }

    pub fn apply(&self, a: usize) -> usize {
        self.map[a]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &GroupHom) -> GroupHom {
        GroupHom {
            source: self.source.clone(),
            target: then.target.clone(),
            map: self.map.iter().map(|&y| then.map[y]).collect(),
        }
    }

    pub fn kernel(&self) -> Vec<usize> {
        (0..self.source.order()).filter(|&a| self.map[a] == self.target.identity()).collect()
    }

    pub fn is_injective(&self) -> bool {
        self.kernel().len() == 1
    }

    pub fn is_surjective(&self) -> bool {
        let mut seen = vec![false; self.target.order()];
        for &y in &self.map {
            seen[y] = true;
        }
        seen.into_iter().all(|b| b)
    }
}

/// Extends generator images to a full map if they define a homomorphism.
fn extend(g: &FinGroup, h: &FinGroup, gens: &[usize], imgs: &[usize]) -> Option<Vec<usize>> {
    let mut map = vec![usize::MAX; g.order()];
    map[g.identity()] = h.identity();
    let mut queue = VecDeque::from([g.identity()]);
    while let Some(x) = queue.pop_front() {
        for (&s, &t) in gens.iter().zip(imgs) {
            let y = g.mul(x, s);
            let want = h.mul(map[x], t);
            if map[y] == usize::MAX {
                map[y] = want;
                queue.push_back(y);
            } else if map[y] != want {
                return None;
            }
        }
    }
    Some(map)
}

/// Calls `visit` with every homomorphism `G → H`; stops when it returns `false`.
pub fn visit_homomorphisms(g: &FinGroup, h: &FinGroup, mut visit: impl FnMut(&[usize]) -> bool) {
    let gens = g.generating_set();
    let orders: Vec<usize> = gens.iter().map(|&s| g.element_order(s)).collect();
    let candidates: Vec<Vec<usize>> = orders
        .iter()
        .map(|&k| (0..h.order()).filter(|&t| k % h.element_order(t) == 0).collect())
        .collect();
    let mut imgs = Vec::with_capacity(gens.len());
    fn go(
        g: &FinGroup,
        h: &FinGroup,
        gens: &[usize],
        candidates: &[Vec<usize>],
        imgs: &mut Vec<usize>,
        visit: &mut impl FnMut(&[usize]) -> bool,
    ) -> bool {
        let i = imgs.len();
        if i == gens.len() {
            return match extend(g, h, gens, imgs) {
                Some(map) => visit(&map),
                None => true,
            };
        }
        for &t in &candidates[i] {
            imgs.push(t);
            // prune: the partial assignment must already be consistent
            let ok = extend(g, h, &gens[..=i], imgs).is_some();
            let keep_going = !ok || go(g, h, gens, candidates, imgs, visit);
            imgs.pop();
            if !keep_going {
                return false;
            }
        }
        true
    }
    go(g, h, &gens, &candidates, &mut imgs, &mut visit);
}

/// All homomorphisms `G → H` as element maps, in a deterministic order.
pub fn homomorphisms(g: &FinGroup, h: &FinGroup) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    visit_homomorphisms(g, h, |m| {
        out.push(m.to_vec());
        true
    });
    out
}

pub fn find_isomorphism(g: &FinGroup, h: &FinGroup) -> Option<Vec<usize>> {
    if g.order() != h.order() {
        return None;
    }
    let mut found = None;
    visit_homomorphisms(g, h, |m| {
        let mut seen = vec![false; h.order()];
        let bij = m.iter().all(|&y| !std::mem::replace(&mut seen[y], true));
        if bij {
            found = Some(m.to_vec());
        }
        !bij
    });
    found
}

pub fn is_isomorphic(g: &FinGroup, h: &FinGroup) -> bool {
    find_isomorphism(g, h).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_counts() {
        let z2 = FinGroup::cyclic(2);
        let z3 = FinGroup::cyclic(3);
        let z4 = FinGroup::cyclic(4);
        let s3 = FinGroup::symmetric(3);
        assert_eq!(homomorphisms(&z2, &z3).len(), 1);
        assert_eq!(homomorphisms(&z4, &z2).len(), 2);
        assert_eq!(homomorphisms(&z2, &s3).len(), 4);
        assert_eq!(homomorphisms(&s3, &z2).len(), 2);
        for m in homomorphisms(&s3, &s3) {
            let h = GroupHom::new(Arc::new(s3.clone()), Arc::new(s3.clone()), m);
            assert!(h.is_ok());
        }
        // |Hom(Z2×Z2, Z2×Z2)| = 16
        let v4 = FinGroup::direct_product(&z2, &z2);
        assert_eq!(homomorphisms(&v4, &v4).len(), 16);
    }

    #[test]
    fn isomorphism_detection() {
        let z2 = FinGroup::cyclic(2);
        let z3 = FinGroup::cyclic(3);
        assert!(is_isomorphic(&FinGroup::direct_product(&z2, &z3), &FinGroup::cyclic(6)));
        assert!(!is_isomorphic(&FinGroup::dihedral(4), &FinGroup::quaternion()));
        assert!(is_isomorphic(&FinGroup::dihedral(3), &FinGroup::symmetric(3)));
    }
}
