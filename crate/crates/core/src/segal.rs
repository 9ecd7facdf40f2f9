//! Truncated simplicial objects in a presheaf topos: nerves of categories
//! and of maps, the Segal condition, completeness, and the quotient of a
//! Segal set by isomorphism ladders.
//!
//! A 1-simplex `f` has source `d₁ f` and target `d₀ f`; a 2-simplex with
//! spine `(f, g)` has `d₂ = f`, `d₀ = g` and `d₁ = g ∘ f`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::fincat::{terminal_category, FinCat};
use crate::internal::{build_internal_cat, InternalCat};
use crate::presheaf::limits::{product, pullback, Pullback};
use crate::presheaf::{tuple_label, Presheaf, PresheafMap};

/// Levels `W₀..W_n` (`n ≤ 3`) with faces and degeneracies.
#[derive(Debug, Clone)]
pub struct TruncSimpObject {
    pub levels: Vec<Arc<Presheaf>>,
    /// `faces[n][i] = dᵢ: Wₙ → Wₙ₋₁` for `n ≥ 1`; `faces[0]` is empty.
    pub faces: Vec<Vec<PresheafMap>>,
    /// `degens[n][i] = sᵢ: Wₙ → Wₙ₊₁` for `n < dim`.
    pub degens: Vec<Vec<PresheafMap>>,
}

impl TruncSimpObject {
    pub fn new(
        levels: Vec<Arc<Presheaf>>,
        faces: Vec<Vec<PresheafMap>>,
        degens: Vec<Vec<PresheafMap>>,
    ) -> Result<TruncSimpObject> {
        let dim = levels.len().checked_sub(1).ok_or_else(|| Error::InvalidSimplicial("no levels".into()))?;
        if dim > 3 {
            return Err(Error::InvalidSimplicial("levels above 3 are not represented".into()));
        }
        let shape_ok = faces.len() == dim + 1
            && degens.len() == dim
            && faces.iter().enumerate().all(|(n, fs)| fs.len() == if n == 0 { 0 } else { n + 1 })
            && degens.iter().enumerate().all(|(n, ss)| ss.len() == n + 1);
        if !shape_ok {
            return Err(Error::InvalidSimplicial("wrong number of faces or degeneracies".into()));
        }
        for (n, fs) in faces.iter().enumerate() {
            for f in fs {
                if *f.source != *levels[n] || *f.target != *levels[n - 1] {
                    return Err(Error::InvalidSimplicial(format!("face at level {n} has the wrong ends")));
                }
            }
        }
        for (n, ss) in degens.iter().enumerate() {
            for s in ss {
                if *s.source != *levels[n] || *s.target != *levels[n + 1] {
                    return Err(Error::InvalidSimplicial(format!("degeneracy at level {n} has the wrong ends")));
                }
            }
        }
        let w = TruncSimpObject { levels, faces, degens };
        if let Some(bad) = w.identity_failures().into_iter().next() {
            return Err(Error::InvalidSimplicial(bad));
        }
        Ok(w)
    }

    pub fn dim(&self) -> usize {
        self.levels.len() - 1
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.levels.iter().map(|l| l.total_size()).collect()
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.levels[0].base()
    }

    fn d(&self, n: usize, i: usize) -> &PresheafMap {
        &self.faces[n][i]
    }

    fn s(&self, n: usize, i: usize) -> &PresheafMap {
        &self.degens[n][i]
    }

    /// Every simplicial identity that fails, in the represented range.
    pub fn identity_failures(&self) -> Vec<String> {
        let dim = self.dim();
        let mut bad = Vec::new();
        // dᵢdⱼ = dⱼ₋₁dᵢ for i < j
        for n in 2..=dim {
            for j in 0..=n {
                for i in 0..j {
                    if self.d(n, j).then(self.d(n - 1, i)) != self.d(n, i).then(self.d(n - 1, j - 1)) {
                        bad.push(format!("d{i}d{j} ≠ d{}d{i} on level {n}", j - 1));
                    }
                }
            }
        }
        // sᵢsⱼ = sⱼ₊₁sᵢ for i ≤ j
        for n in 0..dim.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    if self.s(n, j).then(self.s(n + 1, i)) != self.s(n, i).then(self.s(n + 1, j + 1)) {
                        bad.push(format!("s{i}s{j} ≠ s{}s{i} on level {n}", j + 1));
                    }
                }
            }
        }
        // dᵢsⱼ
        for n in 0..dim {
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.s(n, j).then(self.d(n + 1, i));
                    let ok = if i == j || i == j + 1 {
                        lhs == PresheafMap::identity(&self.levels[n])
                    } else if i < j {
                        lhs == self.d(n, i).then(self.s(n - 1, j - 1))
                    } else {
                        lhs == self.d(n, i - 1).then(self.s(n - 1, j))
                    };
                    if !ok {
                        bad.push(format!("d{i}s{j} fails on level {n}"));
                    }
                }
            }
        }
        bad
    }

    /// Composable pairs `W₁ ×_{W₀} W₁` (target of the first = source of the second).
    fn spine2(&self) -> Result<Pullback> {
        pullback(self.d(1, 0), self.d(1, 1))
    }

    fn spine3(&self, sp2: &Pullback) -> Result<Pullback> {
        pullback(&sp2.proj2.then(self.d(1, 0)), self.d(1, 1))
    }

    /// `(d₂, d₀): W₂ → W₁ ×_{W₀} W₁`.
    pub fn segal_map2(&self) -> Result<(Pullback, PresheafMap)> {
        let sp2 = self.spine2()?;
        let m = sp2.factor(self.d(2, 2), self.d(2, 0));
        Ok((sp2, m))
    }

    /// `(d₂d₃, d₀d₃, d₀d₀): W₃ → W₁ ×_{W₀} W₁ ×_{W₀} W₁`.
    pub fn segal_map3(&self) -> Result<(Pullback, PresheafMap)> {
        let sp2 = self.spine2()?;
        let sp3 = self.spine3(&sp2)?;
        let d3 = self.d(3, 3);
        let first_two = sp2.factor(&d3.then(self.d(2, 2)), &d3.then(self.d(2, 0)));
        let last = self.d(3, 0).then(self.d(2, 0));
        Ok((sp3.clone(), sp3.factor(&first_two, &last)))
    }
}

/// An element of a spine object with the wrong number of preimages.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SpineWitness {
    pub level: usize,
    pub stage: String,
    pub spine: String,
    pub preimages: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SegalVerdict {
    pub pass: bool,
    pub level2: bool,
    /// `None` when level 3 is not represented.
    pub level3: Option<bool>,
    pub witness: Option<SpineWitness>,
    pub sizes: Vec<usize>,
}

fn bijectivity_witness(level: usize, m: &PresheafMap) -> Option<SpineWitness> {
    let base = m.source.base();
    for c in 0..base.num_objects() {
        let mut pre: Vec<Vec<usize>> = vec![Vec::new(); m.target.size(c)];
        for (x, &y) in m.components[c].iter().enumerate() {
            pre[y].push(x);
        }
        if let Some(y) = (0..pre.len()).find(|&y| pre[y].len() != 1) {
            return Some(SpineWitness {
                level,
                stage: base.object_name(c).to_string(),
                spine: m.target.label(c, y).to_string(),
                preimages: pre[y].iter().take(4).map(|&x| m.source.label(c, x).to_string()).collect(),
            });
        }
    }
    None
}

pub fn check_segal(w: &TruncSimpObject) -> Result<SegalVerdict> {
    let mut witness = None;
    let level2 = if w.dim() >= 2 {
        let (_, m) = w.segal_map2()?;
        witness = bijectivity_witness(2, &m);
        witness.is_none()
    } else {
        true
    };
    let level3 = if w.dim() >= 3 {
        let (_, m) = w.segal_map3()?;
        let wit = bijectivity_witness(3, &m);
        let ok = wit.is_none();
        if witness.is_none() {
            witness = wit;
        }
        Some(ok)
    } else {
        None
    };
    Ok(SegalVerdict {
        pass: level2 && level3 != Some(false),
        level2,
        level3,
        witness,
        sizes: w.sizes(),
    })
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletenessWitness {
    pub stage: String,
    /// An element of the computed pullback outside the image of `W₀`.
    pub element: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletenessVerdict {
    pub pass: bool,
    /// Total size of the pullback of `(d₁d₀, d₁d₃)` against `s₀ × s₀`.
    pub pullback_size: usize,
    pub level0_size: usize,
    pub witness: Option<CompletenessWitness>,
    pub sizes: Vec<usize>,
}

/// The pullback of `(d₁d₀, d₁d₃): W₃ → W₁ × W₁` against
/// `s₀ × s₀: W₀ × W₀ → W₁ × W₁`, with the comparison from `W₀`.
pub struct CompletenessSquare {
    pub pullback: Pullback,
    pub comparison: PresheafMap,
}

pub fn completeness_square(w: &TruncSimpObject) -> Result<CompletenessSquare> {
    if w.dim() < 3 {
        return Err(Error::InvalidSimplicial("completeness reads level 3".into()));
    }
    let w0 = &w.levels[0];
    let w1 = &w.levels[1];
    let w11 = product(w1, w1)?;
    let w00 = product(w0, w0)?;
    let top = w11.factor(&w.d(3, 0).then(w.d(2, 1)), &w.d(3, 3).then(w.d(2, 1)));
    let s0s0 = w11.factor(&w00.proj1.then(w.s(0, 0)), &w00.proj2.then(w.s(0, 0)));
    let pb = pullback(&top, &s0s0)?;
    let s000 = w.s(0, 0).then(w.s(1, 0)).then(w.s(2, 0));
    let id0 = PresheafMap::identity(w0);
    let comparison = pb.factor(&s000, &w00.factor(&id0, &id0));
    Ok(CompletenessSquare { pullback: pb, comparison })
}

pub fn check_complete(w: &TruncSimpObject) -> Result<CompletenessVerdict> {
    let segal = check_segal(w)?;
    if !segal.pass {
        return Err(Error::NotSegal(
            segal.witness.map(|x| format!("{} at level {}", x.spine, x.level)).unwrap_or_default(),
        ));
    }
    let sq = completeness_square(w)?;
    let cmp = &sq.comparison;
    let witness = if cmp.is_iso() {
        None
    } else {
        let base = w.base();
        (0..base.num_objects()).find_map(|c| {
            let img = cmp.image(c);
            img.iter().position(|&b| !b).map(|y| CompletenessWitness {
                stage: base.object_name(c).to_string(),
                element: sq.pullback.obj.label(c, y).to_string(),
            })
        })
    };
    Ok(CompletenessVerdict {
        pass: cmp.is_iso(),
        pullback_size: sq.pullback.obj.total_size(),
        level0_size: w.levels[0].total_size(),
        witness,
        sizes: w.sizes(),
    })
}

/// Chains of composable morphisms of a finite category, indexed by level.
struct Chains {
    /// Level 0: `[x]`; level `n ≥ 1`: `[f₁, …, fₙ]`.
    chains: Vec<Vec<Vec<usize>>>,
    index: Vec<HashMap<Vec<usize>, usize>>,
}

impl Chains {
    fn new(c: &FinCat, dim: usize) -> Chains {
        let mut chains = vec![(0..c.num_objects()).map(|x| vec![x]).collect::<Vec<_>>()];
        if dim >= 1 {
            chains.push((0..c.num_morphisms()).map(|f| vec![f]).collect());
        }
        for n in 2..=dim {
            let mut next = Vec::new();
            for ch in &chains[n - 1] {
                let last = *ch.last().expect("non-empty chain");
                for g in 0..c.num_morphisms() {
                    if c.src(g) == c.tgt(last) {
                        let mut ext = ch.clone();
                        ext.push(g);
                        next.push(ext);
                    }
                }
            }
            chains.push(next);
        }
        let index = chains
            .iter()
            .map(|lv| lv.iter().enumerate().map(|(i, ch)| (ch.clone(), i)).collect())
            .collect();
        Chains { chains, index }
    }

    fn face(&self, c: &FinCat, n: usize, i: usize, ch: &[usize]) -> Vec<usize> {
        if n == 1 {
            return vec![if i == 0 { c.tgt(ch[0]) } else { c.src(ch[0]) }];
        }
        let mut out = ch.to_vec();
        if i == 0 {
            out.remove(0);
        } else if i == n {
            out.pop();
        } else {
            let composite = c.compose(ch[i - 1], ch[i]);
            out.splice(i - 1..=i, [composite]);
        }
        out
    }

    fn degeneracy(&self, c: &FinCat, n: usize, i: usize, ch: &[usize]) -> Vec<usize> {
        if n == 0 {
            return vec![c.identity(ch[0])];
        }
        // node i of the chain
        let node = if i == 0 { c.src(ch[0]) } else { c.tgt(ch[i - 1]) };
        let mut out = ch.to_vec();
        out.insert(i, c.identity(node));
        out
    }
}

fn set_presheaf(base: &Arc<FinCat>, labels: Vec<String>) -> Arc<Presheaf> {
    Arc::new(Presheaf::constant(base.clone(), labels))
}

fn set_map(src: &Arc<Presheaf>, tgt: &Arc<Presheaf>, f: Vec<usize>) -> PresheafMap {
    PresheafMap::from_parts(src.clone(), tgt.clone(), vec![f])
}

/// The nerve of a finite category up to level `dim ≤ 3`, as sets.
pub fn nerve_of_category(c: &FinCat, dim: usize) -> Result<TruncSimpObject> {
    if dim > 3 {
        return Err(Error::InvalidSimplicial("levels above 3 are not represented".into()));
    }
    let base = Arc::new(terminal_category());
    let chains = Chains::new(c, dim);
    let levels: Vec<Arc<Presheaf>> = chains
        .chains
        .iter()
        .enumerate()
        .map(|(n, lv)| {
            let labels = lv
                .iter()
                .map(|ch| {
                    if n == 0 {
                        c.object_name(ch[0]).to_string()
                    } else {
                        tuple_label(&ch.iter().map(|&f| c.morphism_name(f)).collect::<Vec<_>>())
                    }
                })
                .collect();
            set_presheaf(&base, labels)
        })
        .collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=dim {
        let fs = (0..=n)
            .map(|i| {
                let f = chains.chains[n]
                    .iter()
                    .map(|ch| chains.index[n - 1][&chains.face(c, n, i, ch)])
                    .collect();
                set_map(&levels[n], &levels[n - 1], f)
            })
            .collect();
        faces.push(fs);
    }
    let degens = (0..dim)
        .map(|n| {
            (0..=n)
                .map(|i| {
                    let s = chains.chains[n]
                        .iter()
                        .map(|ch| chains.index[n + 1][&chains.degeneracy(c, n, i, ch)])
                        .collect();
                    set_map(&levels[n], &levels[n + 1], s)
                })
                .collect()
        })
        .collect();
    if cfg!(debug_assertions) {
        TruncSimpObject::new(levels, faces, degens)
    } else {
        Ok(TruncSimpObject { levels, faces, degens })
    }
}

/// `n(p)`: `B`, `M`, `M ×_B M`, `M ×_B M ×_B M` with faces from `s`, `t`,
/// `comp` and degeneracies from `id`.
pub fn nerve_of_internal(ic: &InternalCat) -> Result<TruncSimpObject> {
    let (b, m, mm) = (ic.b().clone(), ic.m.clone(), &ic.mm);
    let mmm = ic.triples()?;
    let id_m = PresheafMap::identity(&m);
    let (comp, idm) = (&ic.comp, &ic.id_map);

    let alpha = mmm.proj1.then(&mm.proj1);
    let beta = mmm.proj1.then(&mm.proj2);
    let gamma = mmm.proj2.clone();
    let bc = mm.factor(&beta, &gamma);
    let faces = vec![
        vec![],
        vec![ic.t.clone(), ic.s.clone()],
        vec![mm.proj2.clone(), comp.clone(), mm.proj1.clone()],
        vec![
            bc.clone(),
            mm.factor(&mmm.proj1.then(comp), &gamma),
            mm.factor(&alpha, &bc.then(comp)),
            mmm.proj1.clone(),
        ],
    ];
    let a2 = &mm.proj1;
    let b2 = &mm.proj2;
    let degens = vec![
        vec![idm.clone()],
        vec![mm.factor(&ic.s.then(idm), &id_m), mm.factor(&id_m, &ic.t.then(idm))],
        vec![
            mmm.factor(&mm.factor(&a2.then(&ic.s).then(idm), a2), b2),
            mmm.factor(&mm.factor(a2, &a2.then(&ic.t).then(idm)), b2),
            mmm.factor(&PresheafMap::identity(&mm.obj), &b2.then(&ic.t).then(idm)),
        ],
    ];
    let levels = vec![b, m, mm.obj.clone(), mmm.obj.clone()];
    TruncSimpObject::new(levels, faces, degens)
}

pub fn nerve_of_morphism(p: &PresheafMap) -> Result<TruncSimpObject> {
    nerve_of_internal(&build_internal_cat(p)?)
}

/// The category encoded by a Segal set: objects `W₀`, morphisms `W₁`,
/// composition through the inverse of the level-2 Segal map.
struct SegalCategory {
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    comp: HashMap<(usize, usize), usize>,
    /// Isomorphisms out of each object.
    isos_from: Vec<Vec<usize>>,
    inverse: HashMap<usize, usize>,
}

impl SegalCategory {
    fn new(w: &TruncSimpObject) -> Result<SegalCategory> {
        let d = |n: usize, i: usize| w.d(n, i).components[0].clone();
        let (src, tgt) = (d(1, 1), d(1, 0));
        let identity = w.s(0, 0).components[0].clone();
        let (sp2, seg) = w.segal_map2()?;
        let d1 = d(2, 1);
        let mut comp = HashMap::new();
        for (x, &y) in seg.components[0].iter().enumerate() {
            comp.insert(sp2.pair(0, y), d1[x]);
        }
        let n0 = w.levels[0].size(0);
        let mut isos_from = vec![Vec::new(); n0];
        let mut inverse = HashMap::new();
        for f in 0..src.len() {
            let g = (0..src.len()).find(|&g| {
                src[g] == tgt[f]
                    && tgt[g] == src[f]
                    && comp.get(&(f, g)) == Some(&identity[src[f]])
                    && comp.get(&(g, f)) == Some(&identity[tgt[f]])
            });
            if let Some(g) = g {
                isos_from[src[f]].push(f);
                inverse.insert(f, g);
            }
        }
        Ok(SegalCategory { src, tgt, identity, comp, isos_from, inverse })
    }

    fn compose(&self, f: usize, g: usize) -> usize {
        self.comp[&(f, g)]
    }

    fn has_nontrivial_isos(&self) -> bool {
        self.inverse.keys().any(|&f| self.identity[self.src[f]] != f)
    }
}

/// `H(S)` with the projection `S → H(S)` and the class of every simplex.
#[derive(Debug, Clone)]
pub struct HCompletion {
    pub quotient: TruncSimpObject,
    pub projection: Vec<PresheafMap>,
    pub class_of: Vec<Vec<usize>>,
}

fn find(parent: &mut [usize], mut x: usize) -> usize {
    while parent[x] != x {
        parent[x] = parent[parent[x]];
        x = parent[x];
    }
    x
}

/// Quotient of each level by isomorphism ladders; classes are labelled by
/// `label(level, representative)`.
pub fn h_completion_labelled(
    s: &TruncSimpObject,
    label: impl Fn(usize, usize) -> String,
) -> Result<HCompletion> {
    let base = s.base();
    if base.num_objects() != 1 || base.num_morphisms() != 1 {
        return Err(Error::NotSegalSet("the quotient is defined for simplicial sets".into()));
    }
    let verdict = check_segal(s)?;
    if !verdict.pass {
        return Err(Error::NotSegalSet("input does not satisfy the Segal condition".into()));
    }
    let cat = SegalCategory::new(s)?;
    let dim = s.dim();

    // spine of each simplex and the simplex of each spine
    let spines: Vec<Vec<Vec<usize>>> = (0..=dim).map(|n| spines_of(s, n)).collect();
    let by_spine: Vec<HashMap<Vec<usize>, usize>> = spines
        .iter()
        .map(|lv| lv.iter().enumerate().map(|(i, sp)| (sp.clone(), i)).collect())
        .collect();

    let mut class_of = Vec::with_capacity(dim + 1);
    for n in 0..=dim {
        let size = spines[n].len();
        let mut parent: Vec<usize> = (0..size).collect();
        for (x, sp) in spines[n].iter().enumerate() {
            for node in 0..=n {
                let obj = node_of(&cat, n, sp, node);
                for &phi in &cat.isos_from[obj] {
                    let moved = move_node(&cat, n, sp, node, phi);
                    let y = by_spine[n][&moved];
                    let (rx, ry) = (find(&mut parent, x), find(&mut parent, y));
                    if rx != ry {
                        parent[rx.max(ry)] = rx.min(ry);
                    }
                }
            }
        }
        let mut number = vec![usize::MAX; size];
        let mut classes = vec![0; size];
        let mut next = 0;
        for x in 0..size {
            let r = find(&mut parent, x);
            if number[r] == usize::MAX {
                number[r] = next;
                next += 1;
            }
            classes[x] = number[r];
        }
        class_of.push(classes);
    }

    let hbase = base.clone();
    let reps: Vec<Vec<usize>> = class_of
        .iter()
        .map(|cls| {
            let k = cls.iter().copied().max().map_or(0, |m| m + 1);
            let mut rep = vec![usize::MAX; k];
            for (x, &c) in cls.iter().enumerate() {
                if rep[c] == usize::MAX {
                    rep[c] = x;
                }
            }
            rep
        })
        .collect();
    let levels: Vec<Arc<Presheaf>> = reps
        .iter()
        .enumerate()
        .map(|(n, rep)| set_presheaf(&hbase, rep.iter().map(|&x| label(n, x)).collect()))
        .collect();
    let induced = |m: &PresheafMap, from: usize, to: usize| -> Result<PresheafMap> {
        let comp = &m.components[0];
        let mut out = vec![usize::MAX; reps[from].len()];
        for (x, &y) in comp.iter().enumerate() {
            let (cx, cy) = (class_of[from][x], class_of[to][y]);
            if out[cx] == usize::MAX {
                out[cx] = cy;
            } else if out[cx] != cy {
                return Err(Error::InvalidSimplicial(format!(
                    "induced map from level {from} to level {to} is not well defined"
                )));
            }
        }
        Ok(set_map(&levels[from], &levels[to], out))
    };
    let mut faces = vec![Vec::new()];
    for n in 1..=dim {
        faces.push((0..=n).map(|i| induced(s.d(n, i), n, n - 1)).collect::<Result<Vec<_>>>()?);
    }
    let degens = (0..dim)
        .map(|n| (0..=n).map(|i| induced(s.s(n, i), n, n + 1)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;
    let quotient = TruncSimpObject::new(levels.clone(), faces, degens)?;
    let projection = (0..=dim)
        .map(|n| set_map(&s.levels[n], &levels[n], class_of[n].clone()))
        .collect();
    Ok(HCompletion { quotient, projection, class_of })
}

pub fn h_completion(s: &TruncSimpObject) -> Result<HCompletion> {
    h_completion_labelled(s, |n, x| format!("[{}]", s.levels[n].label(0, x)))
}

/// Whether the category encoded by a Segal set has isomorphisms other than
/// identities.
pub fn has_nontrivial_isos(s: &TruncSimpObject) -> Result<bool> {
    Ok(SegalCategory::new(s)?.has_nontrivial_isos())
}

/// Level 0: `[x]`; level `n`: the `n` edges of the spine.
fn spines_of(s: &TruncSimpObject, n: usize) -> Vec<Vec<usize>> {
    let size = s.levels[n].size(0);
    let edge = |path: &[(usize, usize)], x: usize| {
        path.iter().fold(x, |y, &(lv, i)| s.d(lv, i).components[0][y])
    };
    (0..size)
        .map(|x| match n {
            0 => vec![x],
            1 => vec![x],
            2 => vec![edge(&[(2, 2)], x), edge(&[(2, 0)], x)],
            _ => vec![edge(&[(3, 3), (2, 2)], x), edge(&[(3, 3), (2, 0)], x), edge(&[(3, 0), (2, 0)], x)],
        })
        .collect()
}

fn node_of(cat: &SegalCategory, n: usize, sp: &[usize], node: usize) -> usize {
    if n == 0 {
        sp[0]
    } else if node == 0 {
        cat.src[sp[0]]
    } else {
        cat.tgt[sp[node - 1]]
    }
}

/// Replaces node `node` along the isomorphism `φ` out of it.
fn move_node(cat: &SegalCategory, n: usize, sp: &[usize], node: usize, phi: usize) -> Vec<usize> {
    if n == 0 {
        return vec![cat.tgt[phi]];
    }
    let inv = cat.inverse[&phi];
    let mut out = sp.to_vec();
    if node > 0 {
        // incoming edge f becomes φ ∘ f
        out[node - 1] = cat.compose(sp[node - 1], phi);
    }
    if node < n {
        // outgoing edge g becomes g ∘ φ⁻¹
        out[node] = cat.compose(inv, sp[node]);
    }
    out
}

/// The witness for the failure of the level-2 Segal map of `H(N FinSet≤4)`.
#[derive(Debug, Clone, Serialize)]
pub struct HackneyReport {
    pub class_alpha: String,
    pub class_alpha_prime: String,
    pub class_alpha_beta: String,
    pub class_alpha_prime_beta: String,
    pub same_level1_class: bool,
    pub distinct_composites: bool,
    pub segal: SegalVerdict,
    /// The two 2-chains `(β, α)` and `(β, α′)` with equal spine classes.
    pub chains: (String, String),
    pub sizes: Vec<usize>,
    pub quotient_sizes: Vec<usize>,
}

pub fn hackney_witness() -> Result<HackneyReport> {
    use crate::fincat::FinSetFragment;
    let frag = FinSetFragment::standard(4);
    let c = &frag.category;
    let nerve = nerve_of_category(c, 2)?;
    let h = h_completion_labelled(&nerve, |n, x| match n {
        0 => c.object_name(x).to_string(),
        1 => frag.fiber_equation(x),
        _ => nerve.levels[n].label(0, x).to_string(),
    })?;
    let obj = |name: &str| c.object_id(name);
    let (n2, n3, n4) = (obj("2")?, obj("3")?, obj("4")?);
    let mor = |s, t, f: &[usize]| {
        frag.morphism_for(s, t, f).ok_or_else(|| Error::UnknownMorphism(format!("{f:?}")))
    };
    // 0-based images of the printed maps
    let alpha = mor(n3, n2, &[0, 0, 1])?;
    let alpha_p = mor(n3, n2, &[0, 1, 1])?;
    let beta = mor(n4, n3, &[0, 1, 2, 2])?;
    let level1 = |f: usize| h.quotient.levels[1].label(0, h.class_of[1][f]).to_string();
    let ab = c.compose(beta, alpha);
    let apb = c.compose(beta, alpha_p);
    let segal = check_segal(&h.quotient)?;
    let label2 = |f: usize, g: usize| tuple_label(&[c.morphism_name(f), c.morphism_name(g)]);
    Ok(HackneyReport {
        class_alpha: level1(alpha),
        class_alpha_prime: level1(alpha_p),
        class_alpha_beta: level1(ab),
        class_alpha_prime_beta: level1(apb),
        same_level1_class: h.class_of[1][alpha] == h.class_of[1][alpha_p],
        distinct_composites: h.class_of[1][ab] != h.class_of[1][apb],
        segal,
        chains: (label2(beta, alpha), label2(beta, alpha_p)),
        sizes: nerve.sizes(),
        quotient_sizes: h.quotient.sizes(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::finset_fn;
    use crate::fincat::{one_object_category, Preorder};

    #[test]
    fn nerve_sizes() {
        let poset = Preorder::generated_by(vec!["0".into(), "1".into()], &[(0, 1)]).to_category();
        let n = nerve_of_category(&poset, 3).unwrap();
        assert_eq!(n.sizes(), vec![2, 3, 4, 5]);
        assert!(check_segal(&n).unwrap().pass);
        assert!(check_complete(&n).unwrap().pass);
        let t = nerve_of_category(&terminal_category(), 3).unwrap();
        assert_eq!(t.sizes(), vec![1, 1, 1, 1]);
    }

    #[test]
    fn bz2_is_incomplete() {
        let bz2 = one_object_category(&["e".into(), "s".into()], |a, b| a ^ b).unwrap();
        let n = nerve_of_category(&bz2, 3).unwrap();
        let v = check_complete(&n).unwrap();
        assert!(!v.pass);
        assert_eq!((v.pullback_size, v.level0_size), (2, 1));
        let h = h_completion(&n).unwrap();
        assert_eq!(h.quotient.sizes()[..2], [1, 1]);
        assert!(has_nontrivial_isos(&n).unwrap());
    }

    #[test]
    fn nerve_of_maps() {
        let n = nerve_of_morphism(&finset_fn(2, 1, &[0, 0])).unwrap();
        assert_eq!(n.sizes(), vec![1, 4, 16, 64]);
        assert!(check_segal(&n).unwrap().pass);
        assert!(!check_complete(&n).unwrap().pass);
        let n = nerve_of_morphism(&finset_fn(1, 2, &[1])).unwrap();
        assert!(check_complete(&n).unwrap().pass);
        // iso p: levels are powers of B
        let n = nerve_of_morphism(&finset_fn(2, 2, &[1, 0])).unwrap();
        assert_eq!(n.sizes(), vec![2, 4, 8, 16]);
    }

    #[test]
    fn hackney_quotient_is_not_segal() {
        let r = hackney_witness().unwrap();
        assert_eq!(r.sizes, vec![4, 494, 133300]);
        assert_eq!((r.class_alpha.as_str(), r.class_alpha_prime.as_str()), ("1+2=3", "1+2=3"));
        assert_eq!(r.class_alpha_beta, "2+2=4");
        assert_eq!(r.class_alpha_prime_beta, "1+3=4");
        assert!(r.same_level1_class && r.distinct_composites);
        assert!(!r.segal.pass);
    }

    #[test]
    fn projection_is_iso_without_isos() {
        let poset = Preorder::generated_by(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 2)])
            .to_category();
        let n = nerve_of_category(&poset, 3).unwrap();
        let h = h_completion(&n).unwrap();
        assert!(h.projection.iter().all(PresheafMap::is_iso));
    }
}
