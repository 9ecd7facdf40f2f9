//! Cartesian squares from `q: Y' → X'` into `p: E → B`.
//!
//! A square `(u: X' → B, v: Y' → E)` with `p v = u q` is cartesian exactly
//! when `v` restricts to a bijection `q⁻¹(x) → p⁻¹(u(x))` for every element
//! `x` (pullbacks are pointwise). The search picks `u` among maps whose fiber
//! sizes match, then `v` fiberwise-bijective over `u`.

use std::ops::ControlFlow;

use super::hom::HomSearch;
use super::limits::pullback;
use super::PresheafMap;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CartSquare {
    pub u: PresheafMap,
    pub v: PresheafMap,
}

impl CartSquare {
    /// Whether the square commutes and the comparison to the pullback is an
    /// isomorphism; used to certify search results independently.
    pub fn is_cartesian(&self, q: &PresheafMap, p: &PresheafMap) -> bool {
        if q.then(&self.u) != self.v.then(p) {
            return false;
        }
        let pb = pullback(&self.u, p).expect("u and p share a target");
        pb.factor(q, &self.v).is_iso()
    }
}

/// Visits cartesian squares from `q` to `p`; stops early when the visitor breaks.
pub fn visit_cart_squares(
    q: &PresheafMap,
    p: &PresheafMap,
    mut visit: impl FnMut(&[Vec<usize>], &[Vec<usize>]) -> ControlFlow<()>,
) {
    let q_sizes = q.fiber_sizes();
    let p_sizes = p.fiber_sizes();
    let x = &q.target;
    let b = &p.target;
    let us = HomSearch::new(x, b).allowed(|c, xi, bi| q_sizes[c][xi] == p_sizes[c][bi]);
    us.run(|u| {
        let keys = q.components.clone();
        let vs = HomSearch::new(&q.source, &p.source)
            .allowed(|c, y, e| p.apply(c, e) == u[c][q.apply(c, y)])
            .injective_within(keys);
        let mut flow = ControlFlow::Continue(());
        vs.run(|v| {
            flow = visit(u, v);
            flow
        });
        flow
    });
}

/// All cartesian squares from `q` to `p`.
pub fn enumerate_cart_squares(q: &PresheafMap, p: &PresheafMap) -> Vec<CartSquare> {
    let mut out = Vec::new();
    visit_cart_squares(q, p, |u, v| {
        out.push(CartSquare {
            u: PresheafMap::from_parts(q.target.clone(), p.target.clone(), u.to_vec()),
            v: PresheafMap::from_parts(q.source.clone(), p.source.clone(), v.to_vec()),
        });
        ControlFlow::Continue(())
    });
    out
}

/// Number of cartesian squares, stopping at `limit`.
pub fn count_cart_squares(q: &PresheafMap, p: &PresheafMap, limit: usize) -> usize {
    let mut n = 0;
    visit_cart_squares(q, p, |_, _| {
        n += 1;
        if n >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    n
}

/// Up to `limit` squares, for witnesses.
pub fn first_cart_squares(q: &PresheafMap, p: &PresheafMap, limit: usize) -> Vec<CartSquare> {
    let mut out = Vec::new();
    visit_cart_squares(q, p, |u, v| {
        out.push(CartSquare {
            u: PresheafMap::from_parts(q.target.clone(), p.target.clone(), u.to_vec()),
            v: PresheafMap::from_parts(q.source.clone(), p.source.clone(), v.to_vec()),
        });
        if out.len() >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::terminal_category;
    use crate::presheaf::hom::all_maps;
    use crate::presheaf::Presheaf;
    use std::sync::Arc;

    fn set(n: usize) -> Arc<Presheaf> {
        let base = Arc::new(terminal_category());
        Arc::new(Presheaf::constant(base, (0..n).map(|i| i.to_string()).collect()))
    }

    fn brute_force(q: &PresheafMap, p: &PresheafMap) -> usize {
        let mut n = 0;
        for u in all_maps(&q.target, &p.target) {
            for v in all_maps(&q.source, &p.source) {
                if (CartSquare { u: u.clone(), v }).is_cartesian(q, p) {
                    n += 1;
                }
            }
        }
        n
    }

    #[test]
    fn two_to_one_has_two_squares_into_itself() {
        let p = PresheafMap::new(set(2), set(1), vec![vec![0, 0]]).unwrap();
        let sq = enumerate_cart_squares(&p, &p);
        assert_eq!(sq.len(), 2);
        assert_eq!(brute_force(&p, &p), 2);
        for s in &sq {
            assert!(s.is_cartesian(&p, &p));
        }
    }

    #[test]
    fn empty_into_empty_over_point() {
        let q = PresheafMap::new(set(0), set(0), vec![vec![]]).unwrap();
        let p = PresheafMap::new(set(0), set(1), vec![vec![]]).unwrap();
        assert_eq!(enumerate_cart_squares(&q, &p).len(), 1);
    }

    #[test]
    fn matches_brute_force_on_small_sets() {
        for (a, b) in [(1, 2), (2, 2), (3, 2)] {
            for q in all_maps(&set(a), &set(b)) {
                for p in all_maps(&set(a.min(2)), &set(2)) {
                    assert_eq!(enumerate_cart_squares(&q, &p).len(), brute_force(&q, &p));
                }
            }
        }
    }
}
