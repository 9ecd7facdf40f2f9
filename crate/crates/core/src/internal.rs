//! The internal category `C(p) = (B, M, s, t, id, comp)` of a map `p: E → B`,
//! its object of isomorphisms, and the equivalent object built from three
//! dependent exponentials.
//!
//! `M = ⟨π₁*E, π₂*E⟩_{B×B}`: an element over `(b, b')` is a fiber map
//! `E_b → E_{b'}`, naturalized over `∫(B×B)`. Composable pairs are
//! `M ×_B M = {(α, β) : t α = s β}`, and `comp(α, β)` is "`β` after `α`".

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::presheaf::limits::{product, pullback, Pullback};
use crate::presheaf::{find_iso_over, HomOverBase, Presheaf, PresheafMap};

#[derive(Debug, Clone)]
pub struct InternalCat {
    pub p: PresheafMap,
    /// `B × B`, `E × B` and `B × E`.
    pub bb: Pullback,
    pub eb: Pullback,
    pub be: Pullback,
    /// `p × id: E × B → B × B` and `id × p: B × E → B × B`.
    pub p_id: PresheafMap,
    pub id_p: PresheafMap,
    pub hom: HomOverBase,
    pub m: Arc<Presheaf>,
    pub s: PresheafMap,
    pub t: PresheafMap,
    pub id_map: PresheafMap,
    /// Composable pairs `M ×_B M` along `(t, s)`.
    pub mm: Pullback,
    pub comp: PresheafMap,
}

/// An object over `B × B` with a section from `B` over the diagonal.
#[derive(Debug, Clone)]
pub struct EquivObject {
    pub carrier: Arc<Presheaf>,
    pub to_bb: PresheafMap,
    pub section: PresheafMap,
}

impl EquivObject {
    pub fn size(&self) -> usize {
        self.carrier.total_size()
    }
}

pub fn build_internal_cat(p: &PresheafMap) -> Result<InternalCat> {
    let e = &p.source;
    let b = &p.target;
    let bb = product(b, b)?;
    let eb = product(e, b)?;
    let be = product(b, e)?;
    let p_id = bb.factor(&eb.proj1.then(p), &eb.proj2);
    let id_p = bb.factor(&be.proj1, &be.proj2.then(p));
    let hom = HomOverBase::new(&p_id, &id_p).map_err(|e| Error::AmbientNotLcc(e.to_string()))?;
    let m = hom.obj.clone();
    let s = hom.to_base.then(&bb.proj1);
    let t = hom.to_base.then(&bb.proj2);

    // id classifies id_E: transpose of Δ*(E × B) → B × E, (b, (e, b)) ↦ (b, e)
    let diag = bb.factor(&PresheafMap::identity(b), &PresheafMap::identity(b));
    let over_diag = pullback(&diag, &p_id)?;
    let swap_in = PresheafMap::from_fn(&over_diag.obj, &be.obj, |c, i| {
        let (bi, y) = over_diag.pair(c, i);
        let (ei, _) = eb.pair(c, y);
        be.index_of(c, bi, ei).expect("(b, e) with p(e) = b")
    });
    let id_map = hom.transpose(&diag, &over_diag, &swap_in);

    let mm = pullback(&t, &s)?;
    let mut ic = InternalCat {
        p: p.clone(),
        comp: PresheafMap::identity(&m),
        bb,
        eb,
        be,
        p_id,
        id_p,
        hom,
        m,
        s,
        t,
        id_map,
        mm,
    };
    ic.comp = ic.comp_elementwise();
    Ok(ic)
}

impl InternalCat {
    pub fn b(&self) -> &Arc<Presheaf> {
        &self.p.target
    }

    pub fn e(&self) -> &Arc<Presheaf> {
        &self.p.source
    }

    /// `α(e)` for `α ∈ M(c)` over `(b, b')` and `e ∈ E_b`.
    pub fn eval(&self, c: usize, alpha: usize, e: usize) -> usize {
        let (x, _) = self.hom.locate(c, alpha);
        let (_, b2) = self.bb.pair(c, x);
        let y = self.eb.index_of(c, e, b2).expect("pair in E × B");
        let z = self.hom.apply(c, alpha, y);
        self.be.pair(c, z).1
    }

    /// Composition as literal composition of fiber maps.
    fn comp_elementwise(&self) -> PresheafMap {
        let mm = &self.mm;
        PresheafMap::from_fn(&mm.obj, &self.m, |c, i| {
            let (a, b) = mm.pair(c, i);
            let x = self.bb.index_of(c, self.s.apply(c, a), self.t.apply(c, b)).expect("pair in B × B");
            self.hom
                .element_from(c, x, |d, k, y| {
                    let (e, _) = self.eb.pair(d, y);
                    let (ad, bd) = (self.m.restrict(k, a), self.m.restrict(k, b));
                    let e2 = self.eval(d, bd, self.eval(d, ad, e));
                    let (b0, _) = self.bb.pair(d, self.bb.obj.restrict(k, x));
                    self.be.index_of(d, b0, e2).expect("pair in B × E")
                })
                .expect("composite of natural fiber maps is natural")
        })
    }

    /// Composition as the transpose of two evaluation steps over `B × B`:
    /// `(M ×_B M) ×_{B×B} (E × B) → M ×_{B×B} (E × B) → E`, twice, then
    /// pair with the source.
    pub fn comp_via_evaluation(&self) -> Result<PresheafMap> {
        let (mm, bb, eb, be) = (&self.mm, &self.bb, &self.eb, &self.be);
        let first = mm.proj1.clone();
        let second = mm.proj2.clone();
        let w = bb.factor(&first.then(&self.s), &second.then(&self.t));
        let src = pullback(&w, &self.p_id)?;
        let ev_domain = pullback(&self.hom.to_base, &self.p_id)?;
        let ev = self.hom.evaluation(&ev_domain);

        // first evaluation: ((α, β), (e, b'')) ↦ (α, (e, t α)) ↦ α(e)
        let alpha = src.proj1.then(&first);
        let e_in = src.proj2.then(&eb.proj1);
        let r1 = ev_domain.factor(&alpha, &eb.factor(&e_in, &alpha.then(&self.t)));
        let e1 = r1.then(&ev).then(&be.proj2);
        // second evaluation: ↦ (β, (α(e), t β)) ↦ β(α(e))
        let beta = src.proj1.then(&second);
        let r2 = ev_domain.factor(&beta, &eb.factor(&e1, &beta.then(&self.t)));
        let e2 = r2.then(&ev).then(&be.proj2);
        let out = be.factor(&alpha.then(&self.s), &e2);
        Ok(self.hom.transpose(&w, &src, &out))
    }

    /// `(s, t) ∘ id = Δ`, unit laws and associativity, as equalities of maps.
    pub fn law_failures(&self) -> Result<Vec<String>> {
        let mut bad = Vec::new();
        let b = self.b();
        let st = self.hom.to_base.clone();
        let diag = self.bb.factor(&PresheafMap::identity(b), &PresheafMap::identity(b));
        if self.id_map.then(&st) != diag {
            bad.push("(s,t)∘id ≠ Δ".to_string());
        }
        let id_m = PresheafMap::identity(&self.m);
        let left = self.mm.factor(&self.s.then(&self.id_map), &id_m).then(&self.comp);
        if left != id_m {
            bad.push("comp(id_s, α) ≠ α".to_string());
        }
        let right = self.mm.factor(&id_m, &self.t.then(&self.id_map)).then(&self.comp);
        if right != id_m {
            bad.push("comp(α, id_t) ≠ α".to_string());
        }
        let mmm = self.triples()?;
        let ab = mmm.proj1.then(&self.comp);
        let lhs = self.mm.factor(&ab, &mmm.proj2).then(&self.comp);
        let bc = self.mm.factor(&mmm.proj1.then(&self.mm.proj2), &mmm.proj2).then(&self.comp);
        let rhs = self.mm.factor(&mmm.proj1.then(&self.mm.proj1), &bc).then(&self.comp);
        if lhs != rhs {
            bad.push("comp is not associative".to_string());
        }
        if self.comp_via_evaluation()? != self.comp {
            bad.push("elementwise comp differs from the evaluation transpose".to_string());
        }
        Ok(bad)
    }

    /// Composable triples `(M ×_B M) ×_B M`.
    pub fn triples(&self) -> Result<Pullback> {
        pullback(&self.mm.proj2.then(&self.t), &self.s)
    }

    /// `M → B × B` is mono: at most one arrow between any two objects.
    pub fn is_internal_preorder(&self) -> bool {
        self.hom.to_base.is_mono()
    }

    /// The relation `{(s α, t α)}` at stage `c`.
    pub fn relation(&self, c: usize) -> Vec<(usize, usize)> {
        let mut r: Vec<(usize, usize)> =
            (0..self.m.size(c)).map(|a| (self.s.apply(c, a), self.t.apply(c, a))).collect();
        r.sort_unstable();
        r.dedup();
        r
    }
}

fn diagonal_of(ic: &InternalCat) -> PresheafMap {
    let id = PresheafMap::identity(ic.b());
    ic.bb.factor(&id, &id)
}

/// `(α, β, γ, (x, y))` coordinates of an element of an iso object.
type Coords = (usize, usize, usize, usize);

/// Pullback of `(α, β, γ) ↦ (βα, γβ)` against `(x, y) ↦ (id_x, id_y)`,
/// where `α: x → y`, `β: y → x`, `γ: x → y`. An element over `(x, y)` is an
/// arrow with a left and a right inverse.
pub fn iso_object(ic: &InternalCat) -> Result<EquivObject> {
    Ok(iso_object_with_coords(ic)?.0)
}

fn iso_object_with_coords(ic: &InternalCat) -> Result<(EquivObject, Vec<Vec<Coords>>)> {
    let bb = &ic.bb;
    let st = &ic.hom.to_base;
    let id_bb = PresheafMap::identity(&bb.obj);
    let sigma = bb.factor(&bb.proj2, &bb.proj1);
    // ((x, y), β) with β over (y, x)
    let twisted = pullback(&sigma, st)?;
    // (α, ((x, y), β)) with α over (x, y)
    let ab = pullback(st, &twisted.proj1)?;
    let ab_to_bb = ab.proj1.then(st);
    // ((α, ((x, y), β)), γ) with γ over (x, y)
    let tri = pullback(&ab_to_bb, st)?;

    // endomorphisms at x and at y, each paired with (x, y)
    let at_x = bb.factor(&bb.proj1, &bb.proj1);
    let at_y = bb.factor(&bb.proj2, &bb.proj2);
    let q1 = pullback(&at_x, st)?;
    let q2 = pullback(&at_y, st)?;
    let q = pullback(&q1.proj1, &q2.proj1)?;

    let alpha = tri.proj1.then(&ab.proj1);
    let beta = tri.proj1.then(&ab.proj2).then(&twisted.proj2);
    let gamma = tri.proj2.clone();
    let xy = tri.proj1.then(&ab_to_bb);
    let ba = ic.mm.factor(&alpha, &beta).then(&ic.comp);
    let gb = ic.mm.factor(&beta, &gamma).then(&ic.comp);
    let span_left = q.factor(&q1.factor(&xy, &ba), &q2.factor(&xy, &gb));
    let ids = q.factor(
        &q1.factor(&id_bb, &bb.proj1.then(&ic.id_map)),
        &q2.factor(&id_bb, &bb.proj2.then(&ic.id_map)),
    );
    let carrier = pullback(&span_left, &ids)?;
    let to_bb = carrier.proj2.clone();

    let diag = diagonal_of(ic);
    let idm = &ic.id_map;
    let tw = twisted.factor(&diag, idm);
    let a_elem = ab.factor(idm, &tw);
    let t_elem = tri.factor(&a_elem, idm);
    let section = carrier.factor(&t_elem, &diag);

    let coords = (0..bb.obj.base().num_objects())
        .map(|c| {
            carrier
                .pairs(c)
                .iter()
                .map(|&(ti, xy)| {
                    let (a, b, g) = (alpha.apply(c, ti), beta.apply(c, ti), gamma.apply(c, ti));
                    (a, b, g, xy)
                })
                .collect()
        })
        .collect();
    Ok((EquivObject { carrier: carrier.obj.clone(), to_bb, section }, coords))
}

/// The variant over the unfibered `M × M`: composable triples
/// `M ×_B M ×_B M → M × M`, `(α, β, γ) ↦ (βα, γβ)`, pulled back against
/// `id × id: B × B → M × M`. Returned with an isomorphism to
/// [`iso_object`] over `B × B`.
pub fn iso_object_alt(ic: &InternalCat) -> Result<(EquivObject, PresheafMap)> {
    let bb = &ic.bb;
    let mmm = ic.triples()?;
    let prod = product(&ic.m, &ic.m)?;
    let alpha = mmm.proj1.then(&ic.mm.proj1);
    let beta = mmm.proj1.then(&ic.mm.proj2);
    let gamma = mmm.proj2.clone();
    let ba = mmm.proj1.then(&ic.comp);
    let gb = ic.mm.factor(&beta, &gamma).then(&ic.comp);
    let left = prod.factor(&ba, &gb);
    let ids = prod.factor(&bb.proj1.then(&ic.id_map), &bb.proj2.then(&ic.id_map));
    let carrier = pullback(&left, &ids)?;
    let to_bb = carrier.proj2.clone();
    let diag = diagonal_of(ic);
    let idm = &ic.id_map;
    let section = carrier.factor(&mmm.factor(&ic.mm.factor(idm, idm), idm), &diag);
    let alt = EquivObject { carrier: carrier.obj.clone(), to_bb, section };

    // an element is determined by (α, β, γ, (x, y)) in both constructions
    let (main, coords) = iso_object_with_coords(ic)?;
    let lookup: Vec<HashMap<Coords, usize>> = coords
        .iter()
        .map(|cs| cs.iter().enumerate().map(|(i, &k)| (k, i)).collect())
        .collect();
    let mut components = Vec::new();
    for c in 0..bb.obj.base().num_objects() {
        let mut comp = Vec::with_capacity(carrier.obj.size(c));
        for (i, &(ti, xy)) in carrier.pairs(c).iter().enumerate() {
            let key = (alpha.apply(c, ti), beta.apply(c, ti), gamma.apply(c, ti), xy);
            match lookup[c].get(&key) {
                Some(&j) => comp.push(j),
                None => {
                    return Err(Error::IsoSearchFailed(format!(
                        "element {} of the unfibered iso object has no counterpart",
                        carrier.obj.label(c, i)
                    )))
                }
            }
        }
        components.push(comp);
    }
    let comparison = PresheafMap::new(alt.carrier.clone(), main.carrier.clone(), components)
        .map_err(|e| Error::IsoSearchFailed(e.to_string()))?;
    if !comparison.is_iso() || comparison.then(&main.to_bb) != alt.to_bb {
        return Err(Error::IsoSearchFailed("comparison is not an isomorphism over B × B".into()));
    }
    Ok((alt, comparison))
}

/// Composition `⟨Y₁,Y₂⟩_X ×_X ⟨Y₂,Y₃⟩_X → ⟨Y₁,Y₃⟩_X`, "second after
/// first", as the transpose of two evaluations. Returns the domain with the
/// map.
pub fn compose_over_base(
    first: &HomOverBase,
    second: &HomOverBase,
    target: &HomOverBase,
) -> Result<(Pullback, PresheafMap)> {
    let dom = pullback(&first.to_base, &second.to_base)?;
    let w = dom.proj1.then(&first.to_base);
    let src = pullback(&w, &first.f)?;
    let p1 = pullback(&first.to_base, &first.f)?;
    let y2 = p1.factor(&src.proj1.then(&dom.proj1), &src.proj2).then(&first.evaluation(&p1));
    let p2 = pullback(&second.to_base, &second.f)?;
    let y3 = p2.factor(&src.proj1.then(&dom.proj2), &y2).then(&second.evaluation(&p2));
    let map = target.transpose(&w, &src, &y3);
    Ok((dom, map))
}

/// The section `W → ⟨Y,Z⟩_X` along `w: W → X` transposed from
/// `W ×_X Y → Y → Z`; with `convert` the identity this is the identity map.
fn section_along(h: &HomOverBase, w: &PresheafMap, convert: &PresheafMap) -> Result<PresheafMap> {
    let pb = pullback(w, &h.f)?;
    Ok(h.transpose(w, &pb, &pb.proj2.then(convert)))
}

/// Triples `(h₁, h₂, h₃)` with `h₂: E_x → E_y` and `h₁, h₃: E_y → E_x`
/// whose composites `h₁h₂` and `h₂h₃` are identities.
pub fn vergura_object(p: &PresheafMap) -> Result<EquivObject> {
    let ic = build_internal_cat(p)?;
    let lcc = |r: Result<HomOverBase>| r.map_err(|e| Error::AmbientNotLcc(e.to_string()));
    let h1 = lcc(HomOverBase::new(&ic.id_p, &ic.p_id))?;
    let h2 = &ic.hom;
    let t1 = lcc(HomOverBase::new(&ic.p_id, &ic.p_id))?;
    let t2 = lcc(HomOverBase::new(&ic.id_p, &ic.id_p))?;
    // c(h₁, h₂) = h₁ ∘ h₂ and c'(h₂, h₃) = h₂ ∘ h₃
    let (d1, c) = compose_over_base(h2, &h1, &t1)?;
    let (d2, c2) = compose_over_base(&h1, h2, &t2)?;

    let h12 = pullback(&h1.to_base, &h2.to_base)?;
    let triple = pullback(&h12.proj2.then(&h2.to_base), &h1.to_base)?;
    let x1 = triple.proj1.then(&h12.proj1);
    let x2 = triple.proj1.then(&h12.proj2);
    let x3 = triple.proj2.clone();
    let left = d1.factor(&x2, &x1).then(&c);
    let right = d2.factor(&x3, &x2).then(&c2);
    let tt = pullback(&t1.to_base, &t2.to_base)?;
    let span_left = tt.factor(&left, &right);
    let id_bb = PresheafMap::identity(&ic.bb.obj);
    let id_eb = PresheafMap::identity(&ic.eb.obj);
    let id_be = PresheafMap::identity(&ic.be.obj);
    let ids = tt.factor(&section_along(&t1, &id_bb, &id_eb)?, &section_along(&t2, &id_bb, &id_be)?);
    let carrier = pullback(&span_left, &ids)?;
    let to_bb = carrier.proj2.clone();

    let diag = diagonal_of(&ic);
    // over the diagonal, (b, e) and (e, b) name the same fiber element
    let i1 = section_along(&h1, &diag, &ic.eb.factor(&ic.be.proj2, &ic.be.proj1))?;
    let i2 = section_along(h2, &diag, &ic.be.factor(&ic.eb.proj2, &ic.eb.proj1))?;
    let section = carrier.factor(&triple.factor(&h12.factor(&i1, &i2), &i1), &diag);
    Ok(EquivObject { carrier: carrier.obj.clone(), to_bb, section })
}

/// An isomorphism between two objects over `B × B`, found by search.
pub fn iso_over_bb(a: &EquivObject, b: &EquivObject) -> Option<PresheafMap> {
    find_iso_over(&a.to_bb, &b.to_bb)
}
