//! Topos-law suite shared by the `laws` and `acceptance` targets.
//!
//! Hom-set sizes are checked against a brute-force counter written here,
//! independent of the library's backtracking search.
#![allow(dead_code)]

use std::sync::Arc;

use rayon::prelude::*;
use strict_univalence::corpus::{finset, presheaves_up_to_iso, s3_corpus, z2_corpus};
use strict_univalence::fincat::{FinCat, Preorder};
use strict_univalence::presheaf::limits::{coproduct, equalizer, initial, product, pullback, terminal, to_terminal};
use strict_univalence::presheaf::omega::subpresheaves;
use strict_univalence::presheaf::{all_maps, representable, Exponential, HomOverBase, Presheaf, PresheafMap, SubobjectClassifier};

pub const SIZE_BOUND: usize = 12;

#[derive(Debug, Default)]
pub struct LawReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl LawReport {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok && self.failures.len() < 20 {
            self.failures.push(what());
        }
    }

    fn merge(mut self, other: LawReport) -> LawReport {
        self.checks += other.checks;
        self.failures.extend(other.failures);
        self
    }
}

/// A base category with its presheaf corpus.
pub struct Ambient {
    pub name: &'static str,
    pub base: Arc<FinCat>,
    /// Objects of total size at most [`SIZE_BOUND`].
    pub objects: Vec<Arc<Presheaf>>,
}

impl Ambient {
    /// Objects small enough to serve as test domains and factors.
    pub fn small(&self, max: usize) -> Vec<Arc<Presheaf>> {
        self.objects.iter().filter(|x| x.total_size() <= max).cloned().collect()
    }
}

fn poset(names: &[&str], pairs: &[(usize, usize)]) -> Arc<FinCat> {
    let carrier = names.iter().map(|s| s.to_string()).collect();
    Arc::new(Preorder::generated_by(carrier, pairs).to_category())
}

pub fn ambients() -> Vec<Ambient> {
    let z2 = z2_corpus();
    let s3 = s3_corpus();
    let arrow = poset(&["0", "1"], &[(0, 1)]);
    let cospan = poset(&["a", "b", "c"], &[(0, 2), (1, 2)]);
    vec![
        Ambient { name: "FinSet", objects: presheaves_up_to_iso(&finset(), SIZE_BOUND), base: finset() },
        Ambient { name: "Z/2-sets", objects: z2.objects(SIZE_BOUND), base: z2.base },
        Ambient { name: "S3-sets", objects: s3.objects(SIZE_BOUND), base: s3.base },
        Ambient { name: "arrow", objects: presheaves_up_to_iso(&arrow, 7), base: arrow },
        Ambient { name: "cospan", objects: presheaves_up_to_iso(&cospan, 5), base: cospan },
    ]
}

/// `|Hom(X, Y)|` by enumerating every family of functions and testing
/// naturality. `None` when there are too many families.
pub fn brute_hom_count(x: &Presheaf, y: &Presheaf) -> Option<usize> {
    let base = x.base();
    let n = base.num_objects();
    let mut space: f64 = 1.0;
    for c in 0..n {
        space *= (y.size(c) as f64).powi(x.size(c) as i32);
    }
    if space > 2e6 {
        return None;
    }
    let slots: Vec<(usize, usize)> = (0..n).flat_map(|c| (0..x.size(c)).map(move |i| (c, i))).collect();
    let mut comp: Vec<Vec<usize>> = (0..n).map(|c| vec![0; x.size(c)]).collect();
    let natural = |comp: &Vec<Vec<usize>>| {
        (0..base.num_morphisms()).all(|f| {
            let (c, d) = (base.src(f), base.tgt(f));
            (0..x.size(d)).all(|xd| comp[c][x.restrict(f, xd)] == y.restrict(f, comp[d][xd]))
        })
    };
    fn go(
        k: usize,
        slots: &[(usize, usize)],
        y: &Presheaf,
        comp: &mut Vec<Vec<usize>>,
        natural: &dyn Fn(&Vec<Vec<usize>>) -> bool,
    ) -> usize {
        if k == slots.len() {
            return natural(comp) as usize;
        }
        let (c, i) = slots[k];
        (0..y.size(c))
            .map(|v| {
                comp[c][i] = v;
                go(k + 1, slots, y, comp, natural)
            })
            .sum()
    }
    Some(go(0, &slots, y, &mut comp, &natural))
}

/// Closed subsets by brute force over all `2^|X|` membership vectors.
fn brute_sub_count(x: &Presheaf) -> usize {
    let base = x.base();
    let slots: Vec<(usize, usize)> = x.elements().collect();
    (0u64..(1 << slots.len()))
        .filter(|mask| {
            let member = |c: usize, i: usize| {
                let k = slots.iter().position(|&s| s == (c, i)).expect("slot");
                mask >> k & 1 == 1
            };
            (0..base.num_morphisms()).all(|f| {
                let (c, d) = (base.src(f), base.tgt(f));
                (0..x.size(d)).all(|xd| !member(d, xd) || member(c, x.restrict(f, xd)))
            })
        })
        .count()
}

fn hom_count(x: &Presheaf, y: &Arc<Presheaf>, maps: usize, r: &mut LawReport, what: &str) {
    if let Some(n) = brute_hom_count(x, y) {
        r.expect(n == maps, || format!("{what}: search finds {maps} maps, brute force {n}"));
    }
}

/// `Sub(X) ≅ Hom(X, Ω)`: the classifying map and the pullback of `true`
/// are mutually inverse.
pub fn subobject_law(a: &Ambient) -> LawReport {
    let omega = SubobjectClassifier::new(&a.base);
    a.objects
        .par_iter()
        .filter(|x| x.total_size() <= SIZE_BOUND)
        .map(|x| {
            let mut r = LawReport::default();
            let subs = subpresheaves(x);
            let chis = all_maps(x, &omega.omega);
            let name = format!("{} {:?}", a.name, x.sizes());
            r.expect(subs.len() == chis.len(), || format!("{name}: |Sub| = {} but |Hom(X,Ω)| = {}", subs.len(), chis.len()));
            if x.total_size() <= 12 {
                let brute = brute_sub_count(x);
                r.expect(brute == subs.len(), || format!("{name}: {} subpresheaves, brute force {brute}", subs.len()));
            }
            for chi in &chis {
                let m = omega.subobject_of(chi);
                r.expect(m.is_mono(), || format!("{name}: pullback of true is not mono"));
                r.expect(omega.classify(&m).ok().as_ref() == Some(chi), || format!("{name}: χ ↦ sub ↦ χ is not the identity"));
            }
            for flags in &subs {
                let m = omega.subobject_of(&omega.classify_subset(x, flags));
                let image: Vec<Vec<bool>> = (0..a.base.num_objects()).map(|c| m.image(c)).collect();
                r.expect(&image == flags, || format!("{name}: sub ↦ χ ↦ sub changes the subobject"));
            }
            r
        })
        .reduce(LawReport::default, LawReport::merge)
}

/// `Nat(y(c), X) ≅ X(c)` via evaluation at the identity.
pub fn yoneda_law(a: &Ambient) -> LawReport {
    a.objects
        .par_iter()
        .map(|x| {
            let mut r = LawReport::default();
            for c in 0..a.base.num_objects() {
                let yc = representable(&a.base, c);
                let maps = all_maps(&yc, x);
                let name = format!("{} {:?} at {}", a.name, x.sizes(), a.base.object_name(c));
                r.expect(maps.len() == x.size(c), || format!("{name}: {} maps from y(c), |X(c)| = {}", maps.len(), x.size(c)));
                hom_count(&yc, x, maps.len(), &mut r, &name);
                let id = yc.element_id(c, a.base.morphism_name(a.base.identity(c))).expect("identity element");
                let mut values: Vec<usize> = maps.iter().map(|m| m.apply(c, id)).collect();
                values.sort_unstable();
                values.dedup();
                r.expect(values.len() == maps.len(), || format!("{name}: evaluation at the identity is not injective"));
            }
            r
        })
        .reduce(LawReport::default, LawReport::merge)
}

/// Terminal, initial, products, coproducts, pullbacks and equalizers
/// represent the functors they should.
pub fn limit_laws(a: &Ambient) -> LawReport {
    let one = terminal(&a.base);
    let zero = initial(&a.base);
    let small = a.small(3);
    let mut r = LawReport::default();
    for x in &a.objects {
        r.expect(all_maps(x, &one).len() == 1, || format!("{}: Hom(X, 1) ≠ 1", a.name));
        r.expect(all_maps(&zero, x).len() == 1, || format!("{}: Hom(0, X) ≠ 1", a.name));
    }
    let pairs: Vec<(Arc<Presheaf>, Arc<Presheaf>)> =
        small.iter().flat_map(|x| small.iter().map(move |y| (x.clone(), y.clone()))).collect();
    let pair_reports = pairs
        .par_iter()
        .map(|(x, y)| {
            let mut r = LawReport::default();
            let name = format!("{} {:?},{:?}", a.name, x.sizes(), y.sizes());
            let p = product(x, y).expect("same base");
            let s = coproduct(x, y).expect("same base");
            for w in &small {
                let (wx, wy) = (all_maps(w, x), all_maps(w, y));
                let wp = all_maps(w, &p.obj);
                r.expect(wp.len() == wx.len() * wy.len(), || format!("{name}: Hom(W, X×Y) has {} maps", wp.len()));
                hom_count(w, &p.obj, wp.len(), &mut r, &name);
                for a1 in &wx {
                    for b1 in &wy {
                        let f = p.factor(a1, b1);
                        r.expect(f.then(&p.proj1) == *a1 && f.then(&p.proj2) == *b1, || format!("{name}: product factor"));
                    }
                }
                let (xw, yw) = (all_maps(x, w), all_maps(y, w));
                let sw = all_maps(&s.obj, w);
                r.expect(sw.len() == xw.len() * yw.len(), || format!("{name}: Hom(X+Y, W) has {} maps", sw.len()));
                for a1 in &xw {
                    for b1 in &yw {
                        let f = s.copair(a1, b1);
                        r.expect(s.inj1.then(&f) == *a1 && s.inj2.then(&f) == *b1, || format!("{name}: coproduct copair"));
                    }
                }
            }
            // pullbacks and equalizers of every cospan and parallel pair X → Y
            let xy = all_maps(x, y);
            for f in &xy {
                for g in &xy {
                    let (eq, incl) = equalizer(f, g).expect("parallel pair");
                    for w in &small {
                        let ok = all_maps(w, x).iter().filter(|h| h.then(f) == h.then(g)).count();
                        r.expect(all_maps(w, &eq).len() == ok, || format!("{name}: equalizer count"));
                    }
                    r.expect(incl.is_mono(), || format!("{name}: equalizer inclusion not mono"));
                }
            }
            for z in &small {
                for f in &all_maps(x, z) {
                    for g in &all_maps(y, z) {
                        let pb = pullback(f, g).expect("cospan");
                        for w in &small {
                            let wx = all_maps(w, x);
                            let wy = all_maps(w, y);
                            let cones = wx.iter().flat_map(|a1| wy.iter().map(move |b1| (a1, b1)))
                                .filter(|(a1, b1)| a1.then(f) == b1.then(g))
                                .count();
                            r.expect(all_maps(w, &pb.obj).len() == cones, || format!("{name}: pullback count"));
                        }
                    }
                }
            }
            r
        })
        .reduce(LawReport::default, LawReport::merge);
    r.merge(pair_reports)
}

/// `Hom(X × Y, Z) ≅ Hom(X, Z^Y)` through transpose and uncurry.
pub fn exponential_law(a: &Ambient) -> LawReport {
    let small = a.small(3);
    let triples: Vec<(usize, usize)> = (0..small.len()).flat_map(|i| (0..small.len()).map(move |j| (i, j))).collect();
    triples
        .par_iter()
        .map(|&(j, k)| {
            let mut r = LawReport::default();
            let (y, z) = (&small[j], &small[k]);
            let exp = Exponential::new(y, z).expect("same base");
            if exp.obj.total_size() > SIZE_BOUND {
                return r;
            }
            for x in &small {
                let name = format!("{} X={:?} Y={:?} Z={:?}", a.name, x.sizes(), y.sizes(), z.sizes());
                let prod = product(x, y).expect("same base");
                let curried = all_maps(&prod.obj, z);
                let transposed = all_maps(x, &exp.obj);
                r.expect(curried.len() == transposed.len(), || {
                    format!("{name}: {} maps X×Y→Z, {} maps X→Z^Y", curried.len(), transposed.len())
                });
                hom_count(&prod.obj, z, curried.len(), &mut r, &name);
                for m in &curried {
                    let t = exp.transpose(&prod, m);
                    r.expect(t.naturality_failure().is_none() && exp.uncurry(&prod, &t) == *m, || format!("{name}: uncurry ∘ transpose ≠ id"));
                }
                for t in &transposed {
                    r.expect(exp.transpose(&prod, &exp.uncurry(&prod, t)) == *t, || format!("{name}: transpose ∘ uncurry ≠ id"));
                }
            }
            r
        })
        .reduce(LawReport::default, LawReport::merge)
}

/// `Hom_B(W ×_B Y, Z) ≅ Hom_B(W, ⟨Y,Z⟩_B)`.
pub fn hom_over_base_law(a: &Ambient) -> LawReport {
    let small = a.small(3);
    let bases: Vec<Arc<Presheaf>> = a.small(2);
    bases
        .par_iter()
        .map(|b| {
            let mut r = LawReport::default();
            let over: Vec<PresheafMap> = small.iter().flat_map(|x| all_maps(x, b)).collect();
            for f in &over {
                for g in &over {
                    let h = HomOverBase::new(f, g).expect("common base");
                    if h.obj.total_size() > SIZE_BOUND {
                        continue;
                    }
                    for w in &over {
                        let name = format!("{} B={:?} Y={:?} Z={:?} W={:?}", a.name, b.sizes(), f.source.sizes(), g.source.sizes(), w.source.sizes());
                        let pb = pullback(w, f).expect("cospan");
                        let over_b = pb.proj1.then(w);
                        let left: Vec<PresheafMap> =
                            all_maps(&pb.obj, &g.source).into_iter().filter(|m| m.then(g) == over_b).collect();
                        let right: Vec<PresheafMap> =
                            all_maps(&w.source, &h.obj).into_iter().filter(|t| t.then(&h.to_base) == *w).collect();
                        r.expect(left.len() == right.len(), || format!("{name}: {} vs {} maps over B", left.len(), right.len()));
                        for m in &left {
                            let t = h.transpose(w, &pb, m);
                            r.expect(t.then(&h.to_base) == *w && h.uncurry(&pb, &t) == *m, || format!("{name}: uncurry ∘ transpose ≠ id"));
                        }
                        for t in &right {
                            r.expect(h.transpose(w, &pb, &h.uncurry(&pb, t)) == *t, || format!("{name}: transpose ∘ uncurry ≠ id"));
                        }
                    }
                }
            }
            r
        })
        .reduce(LawReport::default, LawReport::merge)
}

pub fn is_subterminal(x: &Arc<Presheaf>) -> bool {
    to_terminal(x, &terminal(x.base())).is_mono()
}

/// Every law on every ambient, named.
pub fn topos_law_suite() -> Vec<(String, LawReport)> {
    let mut out = Vec::new();
    for a in ambients() {
        out.push((format!("{}: Sub ≅ Hom(-, Ω)", a.name), subobject_law(&a)));
        out.push((format!("{}: Yoneda", a.name), yoneda_law(&a)));
        out.push((format!("{}: limits", a.name), limit_laws(&a)));
        out.push((format!("{}: exponential", a.name), exponential_law(&a)));
        out.push((format!("{}: hom over base", a.name), hom_over_base_law(&a)));
    }
    out
}
