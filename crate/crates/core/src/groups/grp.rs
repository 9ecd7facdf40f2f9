//! The category of finite groups as an ambient: pullbacks, cartesian squares,
//! and a refuter for univalence against a finite catalog of test maps.

use std::sync::Arc;

use serde::Serialize;

use super::catalog::NamedGroup;
use super::hom::{homomorphisms, is_isomorphic, GroupHom};
use super::FinGroup;
use crate::error::{Error, Result};

/// `Y ×_G Z = {(y, z) : f(y) = g(z)}` with its projections.
#[derive(Debug, Clone)]
pub struct GrpPullback {
    pub group: FinGroup,
    pub pairs: Vec<(usize, usize)>,
    pub proj1: Vec<usize>,
    pub proj2: Vec<usize>,
}

pub fn grp_pullback(f: &GroupHom, g: &GroupHom) -> Result<GrpPullback> {
    if !(Arc::ptr_eq(&f.target, &g.target) || *f.target == *g.target) {
        return Err(Error::TargetMismatch);
    }
    let (y, z) = (&f.source, &g.source);
    let pairs: Vec<(usize, usize)> = (0..y.order())
        .flat_map(|a| (0..z.order()).map(move |b| (a, b)))
        .filter(|&(a, b)| f.apply(a) == g.apply(b))
        .collect();
    let pos = |p: (usize, usize)| pairs.binary_search(&p).expect("closed under products");
    let names = pairs.iter().map(|&(a, b)| format!("({},{})", y.name(a), z.name(b))).collect();
    let table = pairs
        .iter()
        .map(|&(a1, b1)| pairs.iter().map(|&(a2, b2)| pos((y.mul(a1, a2), z.mul(b1, b2)))).collect())
        .collect();
    let group = FinGroup::new(names, table)?;
    Ok(GrpPullback {
        group,
        proj1: pairs.iter().map(|p| p.0).collect(),
        proj2: pairs.iter().map(|p| p.1).collect(),
        pairs,
    })
}

/// Cartesian squares `(u: L → G, v: K → H)` from `q: K → L` into `p: H → G`,
/// given the candidate homomorphisms; stops after `limit` squares.
pub fn cart_squares_among(
    q: &GroupHom,
    p: &GroupHom,
    us: &[Vec<usize>],
    vs: &[Vec<usize>],
    limit: usize,
) -> Vec<(Vec<usize>, Vec<usize>)> {
    let (k, l) = (&q.source, &q.target);
    let g = &p.target;
    let kernel = p.kernel().len();
    let mut in_image = vec![false; g.order()];
    for &x in &p.map {
        in_image[x] = true;
    }
    let mut out = Vec::new();
    for u in us {
        let size = (0..l.order()).filter(|&x| in_image[u[x]]).count() * kernel;
        if size != k.order() {
            continue;
        }
        for v in vs {
            if (0..k.order()).any(|a| p.map[v[a]] != u[q.map[a]]) {
                continue;
            }
            // (q, v): K → L ×_G H is injective, hence bijective
            let mut seen = std::collections::HashSet::new();
            if (0..k.order()).all(|a| seen.insert((q.map[a], v[a]))) {
                out.push((u.clone(), v.clone()));
                if out.len() >= limit {
                    return out;
                }
            }
        }
    }
    out
}

pub fn cart_squares(q: &GroupHom, p: &GroupHom, limit: usize) -> Vec<(Vec<usize>, Vec<usize>)> {
    let us = homomorphisms(&q.target, &p.target);
    let vs = homomorphisms(&q.source, &p.source);
    cart_squares_among(q, p, &us, &vs, limit)
}

#[derive(Debug, Clone, Serialize)]
pub struct GrpWitness {
    pub q_source: String,
    pub q_target: String,
    pub q_map: Vec<String>,
    /// Two distinct squares, each as `(u, v)` element-name maps.
    pub squares: Vec<(Vec<String>, Vec<String>)>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RefuteVerdict {
    /// No map in the catalog has two cartesian squares into `p`.
    pub pass: bool,
    pub catalog_order: usize,
    pub maps_tested: usize,
    pub witness: Option<GrpWitness>,
}

/// Test groups with all homomorphisms between them, computed once.
pub struct HomCatalog {
    pub groups: Vec<NamedGroup>,
    homs: Vec<Vec<Vec<Vec<usize>>>>,
    pub catalog_order: usize,
}

impl HomCatalog {
    pub fn new(groups: Vec<NamedGroup>, catalog_order: usize) -> HomCatalog {
        let homs = groups
            .iter()
            .map(|a| groups.iter().map(|b| homomorphisms(&a.group, &b.group)).collect())
            .collect();
        HomCatalog { groups, homs, catalog_order }
    }

    pub fn homs(&self, i: usize, j: usize) -> &[Vec<usize>] {
        &self.homs[i][j]
    }

    pub fn num_maps(&self) -> usize {
        self.homs.iter().flatten().map(Vec::len).sum()
    }

    fn position(&self, g: &FinGroup) -> Option<usize> {
        self.groups.iter().position(|n| n.group.order() == g.order() && is_isomorphic(&n.group, g))
    }

    /// Refutes univalence of `p` by searching for a catalog map `q` with two
    /// cartesian squares into `p`. Pairs are tried smallest first.
    pub fn refute(&self, p: &GroupHom) -> RefuteVerdict {
        let mut pairs: Vec<(usize, usize)> = (0..self.groups.len())
            .flat_map(|i| (0..self.groups.len()).map(move |j| (i, j)))
            .collect();
        pairs.sort_by_key(|&(i, j)| (self.groups[i].group.order() + self.groups[j].group.order(), i, j));
        let hp = self.position(&p.source);
        let gp = self.position(&p.target);
        let mut tested = 0;
        for (i, j) in pairs {
            let (k, l) = (Arc::new(self.groups[i].group.clone()), Arc::new(self.groups[j].group.clone()));
            // reuse cached homs when p's groups are literally catalog groups
            let us_owned;
            let us: &[Vec<usize>] = match gp {
                Some(g) if self.groups[g].group == *p.target => self.homs(j, g),
                _ => {
                    us_owned = homomorphisms(&l, &p.target);
                    &us_owned
                }
            };
            let vs_owned;
            let vs: &[Vec<usize>] = match hp {
                Some(h) if self.groups[h].group == *p.source => self.homs(i, h),
                _ => {
                    vs_owned = homomorphisms(&k, &p.source);
                    &vs_owned
                }
            };
            for qm in self.homs(i, j) {
                tested += 1;
                let q = GroupHom { source: k.clone(), target: l.clone(), map: qm.clone() };
                let squares = cart_squares_among(&q, p, us, vs, 2);
                if squares.len() >= 2 {
                    let names = |g: &FinGroup, m: &[usize]| m.iter().map(|&x| g.name(x).to_string()).collect();
                    return RefuteVerdict {
                        pass: false,
                        catalog_order: self.catalog_order,
                        maps_tested: tested,
                        witness: Some(GrpWitness {
                            q_source: self.groups[i].name.clone(),
                            q_target: self.groups[j].name.clone(),
                            q_map: names(&l, qm),
                            squares: squares
                                .iter()
                                .map(|(u, v)| (names(&p.target, u), names(&p.source, v)))
                                .collect(),
                        }),
                    };
                }
            }
        }
        RefuteVerdict { pass: true, catalog_order: self.catalog_order, maps_tested: tested, witness: None }
    }
}

/// One-shot refutation against all homomorphisms among the given groups.
pub fn grp_univalence_refute(p: &GroupHom, catalog: Vec<NamedGroup>, catalog_order: usize) -> RefuteVerdict {
    HomCatalog::new(catalog, catalog_order).refute(p)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(g: FinGroup) -> Arc<FinGroup> {
        Arc::new(g)
    }

    #[test]
    fn pullback_over_trivial_is_product() {
        let one = arc(FinGroup::trivial());
        let z2 = arc(FinGroup::cyclic(2));
        let z3 = arc(FinGroup::cyclic(3));
        let pb = grp_pullback(&GroupHom::trivial(&z2, &one), &GroupHom::trivial(&z3, &one)).unwrap();
        assert_eq!(pb.group.order(), 6);
    }

    #[test]
    fn kernel_as_pullback() {
        let one = arc(FinGroup::trivial());
        let z4 = arc(FinGroup::cyclic(4));
        let z2 = arc(FinGroup::cyclic(2));
        let f = GroupHom::new(z4.clone(), z2.clone(), vec![0, 1, 0, 1]).unwrap();
        let e = GroupHom::trivial(&one, &z2);
        let pb = grp_pullback(&f, &e).unwrap();
        assert_eq!(pb.group.order(), 2);
    }

    #[test]
    fn identity_on_z2_has_two_squares_from_itself() {
        let z2 = arc(FinGroup::cyclic(2));
        let id = GroupHom::identity(&z2);
        assert_eq!(cart_squares(&id, &id, 10).len(), 2);
    }
}
