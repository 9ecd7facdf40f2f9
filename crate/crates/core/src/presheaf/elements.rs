//! The category of elements `∫X`, the equivalence between maps into `X` and
//! presheaves on `∫X`, and the dependent exponential `⟨Y,Z⟩_X` computed
//! through it.

use std::sync::Arc;

use super::exponential::Exponential;
use super::limits::Pullback;
use super::{tuple_label, Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::fincat::{CatBuilder, FinCat};

/// `∫X`: objects `(c, x)` with `x ∈ X(c)`; a morphism `(k, x)` for
/// `k: c → d` and `x ∈ X(d)` goes from `(c, X(k)x)` to `(d, x)`.
#[derive(Debug, Clone)]
pub struct Elements {
    pub category: Arc<FinCat>,
    pub presheaf: Arc<Presheaf>,
    object_of: Vec<(usize, usize)>,
    object_offset: Vec<usize>,
    morphism_of: Vec<(usize, usize)>,
    morphism_offset: Vec<usize>,
}

impl Elements {
    pub fn new(x: &Arc<Presheaf>) -> Elements {
        let base = x.base();
        let mut b = CatBuilder::new();
        let mut object_of = Vec::new();
        let mut object_offset = Vec::new();
        for c in 0..base.num_objects() {
            object_offset.push(object_of.len());
            for xi in 0..x.size(c) {
                b.object(tuple_label(&[base.object_name(c), x.label(c, xi)]));
                object_of.push((c, xi));
            }
        }
        let mut morphism_of = Vec::new();
        let mut morphism_offset = Vec::new();
        for k in 0..base.num_morphisms() {
            morphism_offset.push(morphism_of.len());
            let (c, d) = (base.src(k), base.tgt(k));
            for xi in 0..x.size(d) {
                let src = object_offset[c] + x.restrict(k, xi);
                let tgt = object_offset[d] + xi;
                let id = b.morphism(tuple_label(&[base.morphism_name(k), x.label(d, xi)]), src, tgt);
                if base.is_identity(k) {
                    b.identity(tgt, id);
                }
                morphism_of.push((k, xi));
            }
        }
        let category = b
            .build_unchecked(|f, g| {
                let (k1, _) = morphism_of[f];
                let (k2, x2) = morphism_of[g];
                morphism_offset[base.compose(k1, k2)] + x2
            })
            .expect("every object of the category of elements has an identity");
        debug_assert!(category.law_violations().is_empty());
        Elements {
            category: Arc::new(category),
            presheaf: x.clone(),
            object_of,
            object_offset,
            morphism_of,
            morphism_offset,
        }
    }

    pub fn object(&self, c: usize, x: usize) -> usize {
        self.object_offset[c] + x
    }

    pub fn object_of(&self, o: usize) -> (usize, usize) {
        self.object_of[o]
    }

    pub fn morphism(&self, k: usize, x: usize) -> usize {
        self.morphism_offset[k] + x
    }

    pub fn morphism_of(&self, m: usize) -> (usize, usize) {
        self.morphism_of[m]
    }

    /// The presheaf on `∫X` corresponding to a map into `X`.
    pub fn slice_to_presheaf(&self, f: &PresheafMap) -> SliceTransport {
        SliceTransport::new(self, f)
    }

    /// The map into `X` corresponding to a presheaf on `∫X`. Elements over
    /// `x` are labelled `(x,p)`.
    pub fn presheaf_to_slice(&self, p: &Presheaf) -> (Arc<Presheaf>, PresheafMap, Vec<Vec<usize>>) {
        let x = &self.presheaf;
        let base = x.base();
        let n = base.num_objects();
        let mut offsets = vec![Vec::new(); n];
        let mut labels = vec![Vec::new(); n];
        let mut to_x = vec![Vec::new(); n];
        for c in 0..n {
            let mut off = 0;
            for xi in 0..x.size(c) {
                offsets[c].push(off);
                let o = self.object(c, xi);
                for pi in 0..p.size(o) {
                    labels[c].push(tuple_label(&[x.label(c, xi), p.label(o, pi)]));
                    to_x[c].push(xi);
                }
                off += p.size(o);
            }
        }
        let action = (0..base.num_morphisms())
            .map(|k| {
                let (c, d) = (base.src(k), base.tgt(k));
                let mut out = Vec::new();
                for xi in 0..x.size(d) {
                    let m = self.morphism(k, xi);
                    let xc = x.restrict(k, xi);
                    for pi in 0..p.size(self.object(d, xi)) {
                        out.push(offsets[c][xc] + p.restrict(m, pi));
                    }
                }
                out
            })
            .collect();
        let y = Arc::new(Presheaf::from_parts(base.clone(), labels, action));
        let map = PresheafMap::from_parts(y.clone(), x.clone(), to_x);
        (y, map, offsets)
    }
}

/// A map `f: Y → X` seen as a presheaf on `∫X`: the fiber over `(c, x)` is
/// `{y ∈ Y(c) : f(y) = x}`.
#[derive(Debug, Clone)]
pub struct SliceTransport {
    pub obj: Arc<Presheaf>,
    /// `fibers[o]` lists the elements of `Y(c)` over the object `o = (c, x)`.
    fibers: Vec<Vec<usize>>,
    /// `position[c][y]` is the index of `y` inside its fiber.
    position: Vec<Vec<usize>>,
}

impl SliceTransport {
    fn new(el: &Elements, f: &PresheafMap) -> SliceTransport {
        let y = &f.source;
        let base = y.base();
        let mut fibers = vec![Vec::new(); el.category.num_objects()];
        let mut position = vec![Vec::new(); base.num_objects()];
        for c in 0..base.num_objects() {
            for yi in 0..y.size(c) {
                let o = el.object(c, f.apply(c, yi));
                position[c].push(fibers[o].len());
                fibers[o].push(yi);
            }
        }
        let labels = fibers
            .iter()
            .enumerate()
            .map(|(o, ys)| ys.iter().map(|&yi| y.label(el.object_of(o).0, yi).to_string()).collect())
            .collect();
        let action = (0..el.category.num_morphisms())
            .map(|m| {
                let (k, xi) = el.morphism_of(m);
                let d = base.tgt(k);
                let o = el.object(d, xi);
                fibers[o].iter().map(|&yi| position[base.src(k)][y.restrict(k, yi)]).collect()
            })
            .collect();
        let obj = Arc::new(Presheaf::from_parts(el.category.clone(), labels, action));
        SliceTransport { obj, fibers, position }
    }

    pub fn fiber(&self, o: usize) -> &[usize] {
        &self.fibers[o]
    }

    pub fn position(&self, c: usize, y: usize) -> usize {
        self.position[c][y]
    }
}

/// `⟨Y,Z⟩_X` for `f: Y → X`, `g: Z → X`: the object over `X` whose fiber
/// over `x ∈ X(c)` is `Nat(y(c,x) × Ŷ, Ẑ)` on `∫X`, i.e. naturalized maps
/// from the fibers of `f` to the fibers of `g`.
#[derive(Debug, Clone)]
pub struct HomOverBase {
    pub obj: Arc<Presheaf>,
    pub to_base: PresheafMap,
    pub f: PresheafMap,
    pub g: PresheafMap,
    pub elements: Elements,
    ys: SliceTransport,
    zs: SliceTransport,
    exp: Exponential,
    offsets: Vec<Vec<usize>>,
    // (x, local index) for each element of obj(c)
    locate: Vec<Vec<(usize, usize)>>,
}

impl HomOverBase {
    pub fn new(f: &PresheafMap, g: &PresheafMap) -> Result<HomOverBase> {
        if !f.source.same_base(&g.source) {
            return Err(Error::BaseMismatch);
        }
        if !(Arc::ptr_eq(&f.target, &g.target) || *f.target == *g.target) {
            return Err(Error::TargetMismatch);
        }
        let elements = Elements::new(&f.target);
        let ys = elements.slice_to_presheaf(f);
        let zs = elements.slice_to_presheaf(g);
        let exp = Exponential::new(&ys.obj, &zs.obj)?;
        let (obj, to_base, offsets) = elements.presheaf_to_slice(&exp.obj);
        let locate = to_base
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| comp.iter().enumerate().map(|(h, &x)| (x, h - offsets[c][x])).collect())
            .collect();
        Ok(HomOverBase {
            obj,
            to_base,
            f: f.clone(),
            g: g.clone(),
            elements,
            ys,
            zs,
            exp,
            offsets,
            locate,
        })
    }

    pub fn base_object(&self) -> &Arc<Presheaf> {
        &self.f.target
    }

    /// `(x, local index)` of an element of `⟨Y,Z⟩_X(c)`.
    pub fn locate(&self, c: usize, h: usize) -> (usize, usize) {
        self.locate[c][h]
    }

    pub fn element(&self, c: usize, x: usize, local: usize) -> usize {
        self.offsets[c][x] + local
    }

    /// Number of elements over `x ∈ X(c)`.
    pub fn fiber_size(&self, c: usize, x: usize) -> usize {
        self.exp.obj.size(self.elements.object(c, x))
    }

    /// Evaluates `h` (over `x`) at `y ∈ Y(c)` with `f(y) = x`.
    pub fn apply(&self, c: usize, h: usize, y: usize) -> usize {
        let (x, local) = self.locate(c, h);
        debug_assert_eq!(self.f.apply(c, y), x);
        let o = self.elements.object(c, x);
        let z = self.exp.eval(o, local, self.ys.position(c, y));
        self.zs.fiber(o)[z]
    }

    /// The fiber map `Y_x → Z_x` of `h` at stage `c`, as pairs of indices.
    pub fn fiber_map(&self, c: usize, h: usize) -> Vec<(usize, usize)> {
        let (x, _) = self.locate(c, h);
        let o = self.elements.object(c, x);
        self.ys.fiber(o).iter().map(|&y| (y, self.apply(c, h, y))).collect()
    }

    /// The element over `x ∈ X(c)` whose value at stage `d`, along
    /// `k: d → c`, on `y ∈ Y(d)` is `value(d, k, y)`. `None` if the values
    /// are not natural.
    pub fn element_from(
        &self,
        c: usize,
        x: usize,
        mut value: impl FnMut(usize, usize, usize) -> usize,
    ) -> Option<usize> {
        let o = self.elements.object(c, x);
        let el = &self.elements;
        let local = self.exp.element_from(o, |o2, m, yhat| {
            let (k, _) = el.morphism_of(m);
            let (d, _) = el.object_of(o2);
            let y = self.ys.fiber(o2)[yhat];
            let z = value(d, k, y);
            self.zs.position(d, z)
        })?;
        Some(self.element(c, x, local))
    }

    /// The counit `⟨Y,Z⟩_X ×_X Y → Z` on the given pullback of
    /// `(to_base, f)`.
    pub fn evaluation(&self, pb: &Pullback) -> PresheafMap {
        let components = (0..self.obj.base().num_objects())
            .map(|c| pb.pairs(c).iter().map(|&(h, y)| self.apply(c, h, y)).collect())
            .collect();
        PresheafMap::from_parts(pb.obj.clone(), self.g.source.clone(), components)
    }

    /// Transpose of `m: W ×_X Y → Z` over `X`, where `pb` is the pullback of
    /// `(w, f)`.
    pub fn transpose(&self, w: &PresheafMap, pb: &Pullback, m: &PresheafMap) -> PresheafMap {
        let ws = &w.source;
        let components = (0..ws.base().num_objects())
            .map(|c| {
                (0..ws.size(c))
                    .map(|a| {
                        self.element_from(c, w.apply(c, a), |d, k, y| {
                            let i = pb.index_of(d, ws.restrict(k, a), y).expect("pair exists");
                            m.apply(d, i)
                        })
                        .expect("transpose of a natural map is natural")
                    })
                    .collect()
            })
            .collect();
        PresheafMap::from_parts(ws.clone(), self.obj.clone(), components)
    }

    /// Inverse of [`HomOverBase::transpose`].
    pub fn uncurry(&self, pb: &Pullback, t: &PresheafMap) -> PresheafMap {
        let components = (0..self.obj.base().num_objects())
            .map(|c| pb.pairs(c).iter().map(|&(a, y)| self.apply(c, t.apply(c, a), y)).collect())
            .collect();
        PresheafMap::from_parts(pb.obj.clone(), self.g.source.clone(), components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{one_object_category, terminal_category};
    use crate::presheaf::hom::find_iso_over;
    use crate::presheaf::limits::{pullback, terminal, to_terminal};

    fn set(n: usize) -> Arc<Presheaf> {
        let base = Arc::new(terminal_category());
        Arc::new(Presheaf::constant(base, (0..n).map(|i| i.to_string()).collect()))
    }

    #[test]
    fn elements_of_terminal_is_base() {
        let base = Arc::new(one_object_category(&["e".into(), "s".into()], |a, b| a ^ b).unwrap());
        let el = Elements::new(&terminal(&base));
        assert_eq!(el.category.num_objects(), 1);
        assert_eq!(el.category.num_morphisms(), 2);
    }

    #[test]
    fn slice_round_trip() {
        let (e, b) = (set(3), set(2));
        let p = PresheafMap::new(e.clone(), b.clone(), vec![vec![0, 1, 1]]).unwrap();
        let el = Elements::new(&b);
        let t = el.slice_to_presheaf(&p);
        assert_eq!(t.obj.sizes(), vec![1, 2]);
        let (y, map, _) = el.presheaf_to_slice(&t.obj);
        assert!(find_iso_over(&p, &map).is_some());
        assert_eq!(y.size(0), 3);
    }

    #[test]
    fn fiberwise_function_sets_in_finset() {
        let x = set(2);
        let y = set(3);
        let z = set(3);
        let f = PresheafMap::new(y.clone(), x.clone(), vec![vec![0, 1, 1]]).unwrap();
        let g = PresheafMap::new(z.clone(), x.clone(), vec![vec![0, 0, 1]]).unwrap();
        let h = HomOverBase::new(&f, &g).unwrap();
        // fiber over 0: 2^1, fiber over 1: 1^2
        assert_eq!(h.fiber_size(0, 0), 2);
        assert_eq!(h.fiber_size(0, 1), 1);
    }

    #[test]
    fn hom_over_terminal_is_exponential() {
        let (y, z) = (set(2), set(3));
        let one = terminal(y.base());
        let h = HomOverBase::new(&to_terminal(&y, &one), &to_terminal(&z, &one)).unwrap();
        assert_eq!(h.obj.sizes(), vec![9]);
        let pb = pullback(&h.to_base, &to_terminal(&y, &one)).unwrap();
        let ev = h.evaluation(&pb);
        // every function is recovered by evaluation
        let mut seen = std::collections::HashSet::new();
        for hh in 0..9 {
            let f: Vec<usize> = (0..2).map(|yy| ev.apply(0, pb.index_of(0, hh, yy).unwrap())).collect();
            seen.insert(f);
        }
        assert_eq!(seen.len(), 9);
    }
}
