//! Enumeration of natural transformations by backtracking with propagation.
//!
//! Choosing `α_d(x)` forces `α_c(X(f)x) = Y(f)α_d(x)` for every `f: c → d`.
//! Because the base category's composition table is complete, one step of
//! propagation over all morphisms into `d` reaches every forced element, so
//! every consistent full assignment is natural.

use std::collections::HashMap;
use std::ops::ControlFlow;
use std::sync::Arc;

use super::{Presheaf, PresheafMap};

type Allowed<'a> = Box<dyn Fn(usize, usize, usize) -> bool + Send + Sync + 'a>;

pub struct HomSearch<'a> {
    source: &'a Presheaf,
    target: &'a Presheaf,
    allowed: Option<Allowed<'a>>,
    // key per source element; α must be injective on elements sharing a key
    injective_keys: Option<Vec<Vec<usize>>>,
}

struct State {
    value: Vec<Vec<usize>>,
    trail: Vec<(usize, usize)>,
    used: HashMap<(usize, usize, usize), ()>,
    used_trail: Vec<(usize, usize, usize)>,
}

const UNSET: usize = usize::MAX;

impl<'a> HomSearch<'a> {
    pub fn new(source: &'a Presheaf, target: &'a Presheaf) -> Self {
        assert!(source.same_base(target), "presheaves over different bases");
        HomSearch { source, target, allowed: None, injective_keys: None }
    }

    /// Restricts `α_c(x)` to values `y` with `allowed(c, x, y)`.
    pub fn allowed(mut self, allowed: impl Fn(usize, usize, usize) -> bool + Send + Sync + 'a) -> Self {
        self.allowed = Some(Box::new(allowed));
        self
    }

    /// Requires each component to be injective.
    pub fn injective(self) -> Self {
        let keys = self.source.sizes().into_iter().map(|n| vec![0; n]).collect();
        self.injective_within(keys)
    }

    /// Requires `α_c` to be injective on every set of elements sharing a key.
    pub fn injective_within(mut self, keys: Vec<Vec<usize>>) -> Self {
        self.injective_keys = Some(keys);
        self
    }

    fn ok(&self, c: usize, x: usize, y: usize) -> bool {
        self.allowed.as_ref().is_none_or(|a| a(c, x, y))
    }

    fn set(&self, st: &mut State, c: usize, x: usize, y: usize) -> bool {
        let cur = st.value[c][x];
        if cur != UNSET {
            return cur == y;
        }
        if !self.ok(c, x, y) {
            return false;
        }
        if let Some(keys) = &self.injective_keys {
            let k = (c, keys[c][x], y);
            if st.used.insert(k, ()).is_some() {
                return false;
            }
            st.used_trail.push(k);
        }
        st.value[c][x] = y;
        st.trail.push((c, x));
        true
    }

    fn assign(&self, st: &mut State, d: usize, x: usize, y: usize) -> bool {
        if !self.set(st, d, x, y) {
            return false;
        }
        let cat = self.source.base();
        for &f in cat.arrows_into(d) {
            let c = cat.src(f);
            if !self.set(st, c, self.source.restrict(f, x), self.target.restrict(f, y)) {
                return false;
            }
        }
        true
    }

    fn undo(st: &mut State, trail_len: usize, used_len: usize) {
        while st.trail.len() > trail_len {
            let (c, x) = st.trail.pop().expect("non-empty trail");
            st.value[c][x] = UNSET;
        }
        while st.used_trail.len() > used_len {
            let k = st.used_trail.pop().expect("non-empty trail");
            st.used.remove(&k);
        }
    }

    /// Calls `visit` on every natural transformation in the search space.
    /// Returns `false` if `visit` stopped the search early.
    pub fn run(&self, mut visit: impl FnMut(&[Vec<usize>]) -> ControlFlow<()>) -> bool {
        let cat = self.source.base();
        let n = cat.num_objects();
        if (0..n).any(|c| self.source.size(c) > 0 && self.target.size(c) == 0) {
            return true;
        }
        // objects with many incoming morphisms determine the most elements
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&c| std::cmp::Reverse(cat.arrows_into(c).len()));
        let slots: Vec<(usize, usize)> =
            order.iter().flat_map(|&c| (0..self.source.size(c)).map(move |x| (c, x))).collect();
        let mut st = State {
            value: self.source.sizes().into_iter().map(|s| vec![UNSET; s]).collect(),
            trail: Vec::new(),
            used: HashMap::new(),
            used_trail: Vec::new(),
        };
        self.descend(&slots, 0, &mut st, &mut visit).is_continue()
    }

    fn descend(
        &self,
        slots: &[(usize, usize)],
        mut i: usize,
        st: &mut State,
        visit: &mut impl FnMut(&[Vec<usize>]) -> ControlFlow<()>,
    ) -> ControlFlow<()> {
        while i < slots.len() && st.value[slots[i].0][slots[i].1] != UNSET {
            i += 1;
        }
        if i == slots.len() {
            return visit(&st.value);
        }
        let (c, x) = slots[i];
        for y in 0..self.target.size(c) {
            let (t, u) = (st.trail.len(), st.used_trail.len());
            if self.assign(st, c, x, y) {
                let flow = self.descend(slots, i + 1, st, visit);
                Self::undo(st, t, u);
                flow?;
            } else {
                Self::undo(st, t, u);
            }
        }
        ControlFlow::Continue(())
    }

    pub fn collect(&self) -> Vec<Vec<Vec<usize>>> {
        let mut out = Vec::new();
        self.run(|v| {
            out.push(v.to_vec());
            ControlFlow::Continue(())
        });
        out
    }

    /// Counts solutions, stopping once `limit` is reached.
    pub fn count(&self, limit: usize) -> usize {
        let mut k = 0;
        self.run(|_| {
            k += 1;
            if k >= limit {
                ControlFlow::Break(())
            } else {
                ControlFlow::Continue(())
            }
        });
        k
    }

    pub fn first(&self) -> Option<Vec<Vec<usize>>> {
        let mut out = None;
        self.run(|v| {
            out = Some(v.to_vec());
            ControlFlow::Break(())
        });
        out
    }
}

/// All natural transformations `X → Y`.
pub fn all_maps(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Vec<PresheafMap> {
    HomSearch::new(x, y)
        .collect()
        .into_iter()
        .map(|c| PresheafMap::from_parts(x.clone(), y.clone(), c))
        .collect()
}

/// Some isomorphism `X ≅ Y`, if any.
pub fn find_iso(x: &Arc<Presheaf>, y: &Arc<Presheaf>) -> Option<PresheafMap> {
    if x.sizes() != y.sizes() {
        return None;
    }
    HomSearch::new(x, y)
        .injective()
        .first()
        .map(|c| PresheafMap::from_parts(x.clone(), y.clone(), c))
}

/// Some isomorphism `X ≅ Y` commuting with the given maps to a common base.
pub fn find_iso_over(f: &PresheafMap, g: &PresheafMap) -> Option<PresheafMap> {
    if f.source.sizes() != g.source.sizes() || f.fiber_sizes() != g.fiber_sizes() {
        return None;
    }
    HomSearch::new(&f.source, &g.source)
        .allowed(|c, x, y| f.apply(c, x) == g.apply(c, y))
        .injective()
        .first()
        .map(|c| PresheafMap::from_parts(f.source.clone(), g.source.clone(), c))
}
