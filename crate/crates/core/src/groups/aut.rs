//! Automorphism groups, inner and outer automorphisms, complete groups, the
//! automorphism tower, and the self-equivalence groupoid of `BG`.

use std::collections::HashMap;

use super::hom::{is_isomorphic, visit_homomorphisms};
use super::FinGroup;
use crate::error::{Error, Result};

/// `Aut(G)` as a group, with the automorphism behind each element.
#[derive(Debug, Clone)]
pub struct Automorphisms {
    pub group: FinGroup,
    /// `maps[a]` is the element map of automorphism `a`.
    pub maps: Vec<Vec<usize>>,
    index: HashMap<Vec<usize>, usize>,
}

impl Automorphisms {
    pub fn index_of(&self, map: &[usize]) -> Option<usize> {
        self.index.get(map).copied()
    }
}

/// All automorphisms, with product `(φ·ψ)(x) = φ(ψ(x))`.
pub fn automorphisms(g: &FinGroup) -> Automorphisms {
    let mut maps = Vec::new();
    visit_homomorphisms(g, g, |m| {
        let mut seen = vec![false; g.order()];
        if m.iter().all(|&y| !std::mem::replace(&mut seen[y], true)) {
            maps.push(m.to_vec());
        }
        true
    });
    maps.sort();
    let index: HashMap<Vec<usize>, usize> =
        maps.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
    let names = (0..maps.len()).map(|i| format!("a{i}")).collect();
    let table = maps
        .iter()
        .map(|phi| {
            maps.iter()
                .map(|psi| {
                    let comp: Vec<usize> = psi.iter().map(|&y| phi[y]).collect();
                    index[&comp]
                })
                .collect()
        })
        .collect();
    let group = FinGroup::new(names, table).expect("automorphisms form a group");
    Automorphisms { group, maps, index }
}

/// `θ: G → Aut(G)`, `Inn(G)` as its image, and `Out(G) = Aut(G)/Inn(G)`.
#[derive(Debug, Clone)]
pub struct InnOut {
    pub aut: Automorphisms,
    /// `theta[g]` is the automorphism `h ↦ g h g⁻¹`.
    pub theta: Vec<usize>,
    pub inn: Vec<usize>,
    pub out: FinGroup,
    /// Projection `Aut(G) → Out(G)`.
    pub to_out: Vec<usize>,
}

pub fn inn_out(g: &FinGroup) -> InnOut {
    let aut = automorphisms(g);
    let theta: Vec<usize> = (0..g.order())
        .map(|x| {
            let c: Vec<usize> = (0..g.order()).map(|h| g.conjugate(x, h)).collect();
            aut.index_of(&c).expect("conjugation is an automorphism")
        })
        .collect();
    let mut inn = theta.clone();
    inn.sort_unstable();
    inn.dedup();
    let (out, to_out) = aut.group.quotient(&inn).expect("Inn(G) is normal in Aut(G)");
    assert_eq!(aut.group.order(), inn.len() * out.order());
    InnOut { aut, theta, inn, out, to_out }
}

/// Both routes to completeness, which must agree.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Completeness {
    pub center_order: usize,
    pub out_order: usize,
    pub theta_injective: bool,
    pub theta_surjective: bool,
    pub complete: bool,
}

pub fn is_complete(g: &FinGroup) -> Completeness {
    let io = inn_out(g);
    let center_order = g.center().len();
    let mut images = io.theta.clone();
    images.sort_unstable();
    images.dedup();
    let theta_injective = images.len() == g.order();
    let theta_surjective = images.len() == io.aut.group.order();
    let by_invariants = center_order == 1 && io.out.order() == 1;
    let by_theta = theta_injective && theta_surjective;
    assert_eq!(by_invariants, by_theta, "completeness routes disagree");
    Completeness {
        center_order,
        out_order: io.out.order(),
        theta_injective,
        theta_surjective,
        complete: by_theta,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TowerStage {
    pub order: usize,
    pub complete: bool,
}

/// `G → Aut(G) → Aut(Aut(G)) → …` until a complete group or `max_steps`.
/// Returns the stages and whether the tower stabilized.
pub fn automorphism_tower(g: &FinGroup, max_steps: usize, budget: usize) -> Result<(Vec<TowerStage>, bool)> {
    let mut stages = Vec::new();
    let mut cur = g.clone();
    for step in 0..=max_steps {
        if cur.order() > budget {
            return Err(Error::BudgetExceeded(format!(
                "stage {step} has order {} > {budget}",
                cur.order()
            )));
        }
        let complete = is_complete(&cur).complete;
        stages.push(TowerStage { order: cur.order(), complete });
        if complete {
            return Ok((stages, true));
        }
        if step == max_steps {
            break;
        }
        cur = automorphisms(&cur).group;
    }
    Ok((stages, false))
}

/// Invariants of the groupoid of self-equivalences of `BG`.
#[derive(Debug, Clone)]
pub struct EqBg {
    /// Components, as a group under composition of functors.
    pub pi0: FinGroup,
    /// Automorphisms of the identity functor.
    pub pi1: FinGroup,
}

/// Builds the groupoid directly: objects are automorphisms `φ` (functors
/// `BG → BG` that are equivalences), and morphisms `φ ⇒ ψ` are elements `h`
/// with `ψ(x) = h φ(x) h⁻¹` for all `x`.
pub fn eq_bg(g: &FinGroup) -> EqBg {
    let aut = automorphisms(g);
    let n = aut.maps.len();
    let natural = |phi: &[usize], psi: &[usize], h: usize| {
        (0..g.order()).all(|x| psi[x] == g.conjugate(h, phi[x]))
    };
    // connected components by union-find over natural isomorphisms
    let mut comp = vec![usize::MAX; n];
    let mut reps = Vec::new();
    for a in 0..n {
        if comp[a] != usize::MAX {
            continue;
        }
        for b in 0..n {
            if comp[b] == usize::MAX
                && (0..g.order()).any(|h| natural(&aut.maps[a], &aut.maps[b], h))
            {
                comp[b] = reps.len();
            }
        }
        reps.push(a);
    }
    let pi0_names = (0..reps.len()).map(|i| format!("[a{}]", reps[i])).collect();
    let pi0_table = reps
        .iter()
        .map(|&a| reps.iter().map(|&b| comp[aut.group.mul(a, b)]).collect())
        .collect();
    let pi0 = FinGroup::new(pi0_names, pi0_table).expect("components of Eq(BG) form a group");
    let id = aut.index_of(&(0..g.order()).collect::<Vec<_>>()).expect("identity automorphism");
    let loops: Vec<usize> =
        (0..g.order()).filter(|&h| natural(&aut.maps[id], &aut.maps[id], h)).collect();
    // vertical composition of natural transformations is multiplication in G
    let (pi1, _) = g.subgroup(&loops).expect("loops at the identity form a subgroup");
    EqBg { pi0, pi1 }
}

/// Checks `π₀ ≅ Out(G)` and `π₁ ≅ Z(G)`.
pub fn eq_bg_matches(g: &FinGroup) -> (bool, bool) {
    let e = eq_bg(g);
    let io = inn_out(g);
    let (center, _) = g.subgroup(&g.center()).expect("center is a subgroup");
    (is_isomorphic(&e.pi0, &io.out), is_isomorphic(&e.pi1, &center))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn automorphism_group_orders() {
        assert_eq!(automorphisms(&FinGroup::cyclic(2)).group.order(), 1);
        assert_eq!(automorphisms(&FinGroup::cyclic(3)).group.order(), 2);
        assert_eq!(automorphisms(&FinGroup::symmetric(3)).group.order(), 6);
        assert_eq!(automorphisms(&FinGroup::dihedral(4)).group.order(), 8);
        assert_eq!(automorphisms(&FinGroup::quaternion()).group.order(), 24);
        let v4 = FinGroup::direct_product(&FinGroup::cyclic(2), &FinGroup::cyclic(2));
        assert_eq!(automorphisms(&v4).group.order(), 6);
    }

    #[test]
    fn inner_and_outer() {
        let io = inn_out(&FinGroup::dihedral(4));
        assert_eq!(io.inn.len(), 4);
        assert_eq!(io.out.order(), 2);
        let io = inn_out(&FinGroup::symmetric(3));
        assert_eq!(io.out.order(), 1);
        let io = inn_out(&FinGroup::cyclic(5));
        assert_eq!(io.inn.len(), 1);
        assert_eq!(io.out.order(), 4);
    }

    #[test]
    fn completeness() {
        assert!(is_complete(&FinGroup::symmetric(3)).complete);
        assert!(is_complete(&FinGroup::symmetric(4)).complete);
        assert!(!is_complete(&FinGroup::cyclic(2)).complete);
        assert!(is_complete(&FinGroup::trivial()).complete);
    }

    #[test]
    fn towers() {
        let (stages, stable) = automorphism_tower(&FinGroup::cyclic(3), 5, 1000).unwrap();
        assert!(stable);
        assert_eq!(stages.iter().map(|s| s.order).collect::<Vec<_>>(), vec![3, 2, 1]);
        let (stages, stable) = automorphism_tower(&FinGroup::symmetric(3), 5, 1000).unwrap();
        assert!(stable);
        assert_eq!(stages.len(), 1);
        assert!(automorphism_tower(&FinGroup::symmetric(4), 3, 10).is_err());
    }

    #[test]
    fn eq_bg_examples() {
        let e = eq_bg(&FinGroup::symmetric(3));
        assert_eq!((e.pi0.order(), e.pi1.order()), (1, 1));
        let e = eq_bg(&FinGroup::cyclic(2));
        assert_eq!((e.pi0.order(), e.pi1.order()), (1, 2));
        let e = eq_bg(&FinGroup::cyclic(6));
        assert_eq!(e.pi1.order(), 6);
        assert_eq!(e.pi0.order(), 2);
        assert_eq!(eq_bg_matches(&FinGroup::dihedral(4)), (true, true));
    }
}
