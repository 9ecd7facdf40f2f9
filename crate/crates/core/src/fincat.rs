//! Finite categories stored as fully materialized composition tables.
//!
//! Objects and morphisms are addressed by dense indices after validation; the
//! original string ids are kept for I/O and display. Composition is written in
//! diagrammatic order: `compose(f, g)` is "g after f" and is defined exactly
//! when `tgt(f) == src(g)`.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::{Deserialize, Serialize};

use crate::error::{Error, LawViolation, Result, ValidationError};

pub const FINCAT_SCHEMA: &str = "fincat/v1";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMorphism {
    pub id: String,
    pub src: String,
    pub tgt: String,
}

/// One composition entry: `result = then ∘ first`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawComposite {
    pub first: String,
    pub then: String,
    pub result: String,
}

/// The `fincat/v1` file format.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawCategory {
    #[serde(default = "default_schema")]
    pub schema: String,
    pub objects: Vec<String>,
    pub morphisms: Vec<RawMorphism>,
    pub identities: BTreeMap<String, String>,
    pub composition: Vec<RawComposite>,
}

fn default_schema() -> String {
    FINCAT_SCHEMA.to_string()
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FinCat {
    objects: Vec<String>,
    morphisms: Vec<String>,
    src: Vec<usize>,
    tgt: Vec<usize>,
    identity: Vec<usize>,
    // comp[first * m + then]
    comp: Vec<Option<usize>>,
    into: Vec<Vec<usize>>,
    hom: Vec<Vec<usize>>,
    hom_pos: Vec<usize>,
    object_index: HashMap<String, usize>,
    morphism_index: HashMap<String, usize>,
}

impl FinCat {
    /// Validates raw tables, collecting every violated law.
    pub fn validate(raw: &RawCategory) -> std::result::Result<FinCat, ValidationError> {
        let mut violations = Vec::new();
        let mut object_index = HashMap::new();
        for (i, o) in raw.objects.iter().enumerate() {
            if object_index.insert(o.clone(), i).is_some() {
                violations.push(LawViolation::DuplicateObject(o.clone()));
            }
        }
        let mut morphism_index = HashMap::new();
        let mut src = Vec::with_capacity(raw.morphisms.len());
        let mut tgt = Vec::with_capacity(raw.morphisms.len());
        for (i, m) in raw.morphisms.iter().enumerate() {
            if morphism_index.insert(m.id.clone(), i).is_some() {
                violations.push(LawViolation::DuplicateMorphism(m.id.clone()));
            }
            for end in [&m.src, &m.tgt] {
                if !object_index.contains_key(end) {
                    violations.push(LawViolation::UnknownObject {
                        morphism: m.id.clone(),
                        object: end.clone(),
                    });
                }
            }
            src.push(object_index.get(&m.src).copied().unwrap_or(usize::MAX));
            tgt.push(object_index.get(&m.tgt).copied().unwrap_or(usize::MAX));
        }
        if !violations.is_empty() {
            return Err(ValidationError::new(violations).expect("non-empty"));
        }

        let mut identity = vec![usize::MAX; raw.objects.len()];
        for (o, &oi) in &object_index {
            match raw.identities.get(o) {
                None => violations.push(LawViolation::MissingIdentity(o.clone())),
                Some(id) => match morphism_index.get(id) {
                    None => violations.push(LawViolation::UnknownMorphism(id.clone())),
                    Some(&mi) if src[mi] != oi || tgt[mi] != oi => {
                        violations.push(LawViolation::IdentityNotEndomorphism {
                            object: o.clone(),
                            morphism: id.clone(),
                        })
                    }
                    Some(&mi) => identity[oi] = mi,
                },
            }
        }
        for o in raw.identities.keys() {
            if !object_index.contains_key(o) {
                violations.push(LawViolation::MissingIdentity(o.clone()));
            }
        }

        let m = raw.morphisms.len();
        let mut comp = vec![None; m * m];
        for entry in &raw.composition {
            let ids = [&entry.first, &entry.then, &entry.result].map(|s| morphism_index.get(s));
            let [Some(&f), Some(&g), Some(&r)] = ids else {
                for s in [&entry.first, &entry.then, &entry.result] {
                    if !morphism_index.contains_key(s) {
                        violations.push(LawViolation::UnknownMorphism(s.clone()));
                    }
                }
                continue;
            };
            if tgt[f] != src[g] {
                violations.push(LawViolation::NotComposable {
                    first: entry.first.clone(),
                    then: entry.then.clone(),
                });
                continue;
            }
            if src[r] != src[f] || tgt[r] != tgt[g] {
                violations.push(LawViolation::CompositeWrongEnds {
                    first: entry.first.clone(),
                    then: entry.then.clone(),
                    result: entry.result.clone(),
                });
                continue;
            }
            match comp[f * m + g] {
                Some(prev) if prev != r => violations.push(LawViolation::ConflictingComposite {
                    first: entry.first.clone(),
                    then: entry.then.clone(),
                }),
                _ => comp[f * m + g] = Some(r),
            }
        }
        if !violations.is_empty() {
            return Err(ValidationError::new(violations).expect("non-empty"));
        }
        for f in 0..m {
            for g in 0..m {
                if tgt[f] == src[g] && comp[f * m + g].is_none() {
                    violations.push(LawViolation::MissingComposite {
                        first: raw.morphisms[f].id.clone(),
                        then: raw.morphisms[g].id.clone(),
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(ValidationError::new(violations).expect("non-empty"));
        }

        let cat = FinCat::assemble(
            raw.objects.clone(),
            raw.morphisms.iter().map(|m| m.id.clone()).collect(),
            src,
            tgt,
            identity,
            comp,
        );
        let laws = cat.law_violations();
        match ValidationError::new(laws) {
            Some(err) => Err(err),
            None => Ok(cat),
        }
    }

    fn assemble(
        objects: Vec<String>,
        morphisms: Vec<String>,
        src: Vec<usize>,
        tgt: Vec<usize>,
        identity: Vec<usize>,
        comp: Vec<Option<usize>>,
    ) -> FinCat {
        let n = objects.len();
        let mut into = vec![Vec::new(); n];
        let mut hom = vec![Vec::new(); n * n];
        let mut hom_pos = vec![0; morphisms.len()];
        for f in 0..morphisms.len() {
            into[tgt[f]].push(f);
            let h: &mut Vec<usize> = &mut hom[src[f] * n + tgt[f]];
            hom_pos[f] = h.len();
            h.push(f);
        }
        let object_index = objects.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        let morphism_index = morphisms.iter().enumerate().map(|(i, o)| (o.clone(), i)).collect();
        FinCat {
            objects,
            morphisms,
            src,
            tgt,
            identity,
            comp,
            into,
            hom,
            hom_pos,
            object_index,
            morphism_index,
        }
    }

    /// Unit and associativity violations of an assembled table.
    pub fn law_violations(&self) -> Vec<LawViolation> {
        let mut out = Vec::new();
        for f in 0..self.num_morphisms() {
            if self.try_compose(self.identity[self.src[f]], f) != Some(f) {
                out.push(LawViolation::BrokenUnit {
                    morphism: self.morphisms[f].clone(),
                    side: "left",
                });
            }
            if self.try_compose(f, self.identity[self.tgt[f]]) != Some(f) {
                out.push(LawViolation::BrokenUnit {
                    morphism: self.morphisms[f].clone(),
                    side: "right",
                });
            }
        }
        for f in 0..self.num_morphisms() {
            for &g in self.out_of(self.tgt[f]).iter() {
                let fg = self.compose(f, g);
                for &h in self.out_of(self.tgt[g]).iter() {
                    if self.compose(fg, h) != self.compose(f, self.compose(g, h)) {
                        out.push(LawViolation::BrokenAssociativity {
                            f: self.morphisms[f].clone(),
                            g: self.morphisms[g].clone(),
                            h: self.morphisms[h].clone(),
                        });
                    }
                }
            }
        }
        out
    }

    fn out_of(&self, c: usize) -> Vec<usize> {
        (0..self.num_objects()).flat_map(|d| self.hom(c, d).iter().copied()).collect()
    }

    pub fn from_raw(raw: &RawCategory) -> Result<FinCat> {
        Ok(FinCat::validate(raw)?)
    }

    pub fn to_raw(&self) -> RawCategory {
        let m = self.num_morphisms();
        let mut composition = Vec::new();
        for f in 0..m {
            for g in 0..m {
                if let Some(r) = self.comp[f * m + g] {
                    composition.push(RawComposite {
                        first: self.morphisms[f].clone(),
                        then: self.morphisms[g].clone(),
                        result: self.morphisms[r].clone(),
                    });
                }
            }
        }
        RawCategory {
            schema: FINCAT_SCHEMA.to_string(),
            objects: self.objects.clone(),
            morphisms: (0..m)
                .map(|f| RawMorphism {
                    id: self.morphisms[f].clone(),
                    src: self.objects[self.src[f]].clone(),
                    tgt: self.objects[self.tgt[f]].clone(),
                })
                .collect(),
            identities: (0..self.num_objects())
                .map(|c| (self.objects[c].clone(), self.morphisms[self.identity[c]].clone()))
                .collect(),
            composition,
        }
    }

    pub fn num_objects(&self) -> usize {
        self.objects.len()
    }

    pub fn num_morphisms(&self) -> usize {
        self.morphisms.len()
    }

    pub fn object_name(&self, c: usize) -> &str {
        &self.objects[c]
    }

    pub fn morphism_name(&self, f: usize) -> &str {
        &self.morphisms[f]
    }

    pub fn object_id(&self, name: &str) -> Result<usize> {
        self.object_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownObject(name.to_string()))
    }

    pub fn morphism_id(&self, name: &str) -> Result<usize> {
        self.morphism_index
            .get(name)
            .copied()
            .ok_or_else(|| Error::UnknownMorphism(name.to_string()))
    }

    pub fn src(&self, f: usize) -> usize {
        self.src[f]
    }

    pub fn tgt(&self, f: usize) -> usize {
        self.tgt[f]
    }

    pub fn identity(&self, c: usize) -> usize {
        self.identity[c]
    }

    pub fn is_identity(&self, f: usize) -> bool {
        self.identity[self.src[f]] == f
    }

    /// "`then` after `first`", or `None` if the pair is not composable.
    pub fn try_compose(&self, first: usize, then: usize) -> Option<usize> {
        self.comp[first * self.num_morphisms() + then]
    }

    /// "`then` after `first`". Panics on a non-composable pair.
    pub fn compose(&self, first: usize, then: usize) -> usize {
        self.try_compose(first, then).unwrap_or_else(|| {
            panic!(
                "morphisms `{}` and `{}` are not composable",
                self.morphisms[first], self.morphisms[then]
            )
        })
    }

    /// Morphisms with the given target.
    pub fn arrows_into(&self, c: usize) -> &[usize] {
        &self.into[c]
    }

    pub fn hom(&self, a: usize, b: usize) -> &[usize] {
        &self.hom[a * self.num_objects() + b]
    }

    /// Position of `f` inside `hom(src f, tgt f)`.
    pub fn hom_position(&self, f: usize) -> usize {
        self.hom_pos[f]
    }

    pub fn inverse(&self, f: usize) -> Option<usize> {
        let (a, b) = (self.src[f], self.tgt[f]);
        self.hom(b, a).iter().copied().find(|&g| {
            self.compose(f, g) == self.identity[a] && self.compose(g, f) == self.identity[b]
        })
    }

    pub fn is_iso(&self, f: usize) -> bool {
        self.inverse(f).is_some()
    }

    pub fn is_iso_named(&self, name: &str) -> Result<bool> {
        Ok(self.is_iso(self.morphism_id(name)?))
    }

    /// Partition of the objects into isomorphism classes, each class sorted,
    /// classes ordered by their smallest member.
    pub fn iso_classes(&self) -> Vec<Vec<usize>> {
        let n = self.num_objects();
        let mut class = vec![usize::MAX; n];
        let mut classes: Vec<Vec<usize>> = Vec::new();
        for a in 0..n {
            if class[a] != usize::MAX {
                continue;
            }
            let id = classes.len();
            let members: Vec<usize> = (a..n)
                .filter(|&b| class[b] == usize::MAX && self.isomorphic_objects(a, b))
                .collect();
            for &b in &members {
                class[b] = id;
            }
            classes.push(members);
        }
        classes
    }

    pub fn isomorphic_objects(&self, a: usize, b: usize) -> bool {
        self.hom(a, b).iter().any(|&f| self.is_iso(f))
    }

    pub fn has_nontrivial_isos(&self) -> bool {
        (0..self.num_morphisms()).any(|f| !self.is_identity(f) && self.is_iso(f))
    }

    /// Every hom-set has at most one element.
    pub fn is_zero_category(&self) -> bool {
        self.hom.iter().all(|h| h.len() <= 1)
    }

    /// A zero-category whose "≤" relation is antisymmetric.
    pub fn is_poset(&self) -> bool {
        let n = self.num_objects();
        self.is_zero_category()
            && (0..n).all(|a| {
                (0..n).all(|b| a == b || self.hom(a, b).is_empty() || self.hom(b, a).is_empty())
            })
    }

    /// The relation "there is a morphism a → b".
    pub fn underlying_preorder(&self) -> Preorder {
        let n = self.num_objects();
        let relation = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| !self.hom(a, b).is_empty())
            .collect();
        Preorder { carrier: self.objects.clone(), relation }
    }

    /// Renames objects and morphisms by the given permutations
    /// (`new id of i = perm[i]`). Used to check invariance under relabelling.
    pub fn relabel(&self, object_perm: &[usize], morphism_perm: &[usize]) -> FinCat {
        let n = self.num_objects();
        let m = self.num_morphisms();
        let mut objects = vec![String::new(); n];
        for (i, &j) in object_perm.iter().enumerate() {
            objects[j] = self.objects[i].clone();
        }
        let mut morphisms = vec![String::new(); m];
        let mut src = vec![0; m];
        let mut tgt = vec![0; m];
        for (f, &j) in morphism_perm.iter().enumerate() {
            morphisms[j] = self.morphisms[f].clone();
            src[j] = object_perm[self.src[f]];
            tgt[j] = object_perm[self.tgt[f]];
        }
        let mut identity = vec![0; n];
        for c in 0..n {
            identity[object_perm[c]] = morphism_perm[self.identity[c]];
        }
        let mut comp = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if let Some(r) = self.comp[f * m + g] {
                    comp[morphism_perm[f] * m + morphism_perm[g]] = Some(morphism_perm[r]);
                }
            }
        }
        FinCat::assemble(objects, morphisms, src, tgt, identity, comp)
    }
}

/// Incremental construction of a category from a composition function.
pub struct CatBuilder {
    objects: Vec<String>,
    morphisms: Vec<(String, usize, usize)>,
    identity: Vec<Option<usize>>,
}

impl CatBuilder {
    pub fn new() -> Self {
        CatBuilder { objects: Vec::new(), morphisms: Vec::new(), identity: Vec::new() }
    }

    pub fn object(&mut self, name: impl Into<String>) -> usize {
        self.objects.push(name.into());
        self.identity.push(None);
        self.objects.len() - 1
    }

    pub fn morphism(&mut self, name: impl Into<String>, src: usize, tgt: usize) -> usize {
        self.morphisms.push((name.into(), src, tgt));
        self.morphisms.len() - 1
    }

    pub fn identity(&mut self, c: usize, f: usize) {
        self.identity[c] = Some(f);
    }

    /// Finishes the table with `compose(first, then)` for every composable
    /// pair, then checks the category laws.
    pub fn build(
        self,
        compose: impl FnMut(usize, usize) -> usize,
    ) -> std::result::Result<FinCat, ValidationError> {
        let cat = self.build_unchecked(compose)?;
        match ValidationError::new(cat.law_violations()) {
            Some(err) => Err(err),
            None => Ok(cat),
        }
    }

    /// Like [`CatBuilder::build`] but skips the unit/associativity scan, for
    /// constructions that are categories by construction.
    pub fn build_unchecked(
        self,
        mut compose: impl FnMut(usize, usize) -> usize,
    ) -> std::result::Result<FinCat, ValidationError> {
        let m = self.morphisms.len();
        let mut comp = vec![None; m * m];
        for f in 0..m {
            for g in 0..m {
                if self.morphisms[f].2 == self.morphisms[g].1 {
                    comp[f * m + g] = Some(compose(f, g));
                }
            }
        }
        let mut violations = Vec::new();
        let identity: Vec<usize> = self
            .identity
            .iter()
            .enumerate()
            .map(|(c, id)| {
                id.unwrap_or_else(|| {
                    violations.push(LawViolation::MissingIdentity(self.objects[c].clone()));
                    0
                })
            })
            .collect();
        if let Some(err) = ValidationError::new(violations) {
            return Err(err);
        }
        let (names, (src, tgt)): (Vec<String>, (Vec<usize>, Vec<usize>)) =
            self.morphisms.into_iter().map(|(n, s, t)| (n, (s, t))).unzip();
        Ok(FinCat::assemble(self.objects, names, src, tgt, identity, comp))
    }
}

impl Default for CatBuilder {
    fn default() -> Self {
        Self::new()
    }
}

/// The terminal category: one object `*`, one morphism `id`.
pub fn terminal_category() -> FinCat {
    let mut b = CatBuilder::new();
    let o = b.object("*");
    let id = b.morphism("id", o, o);
    b.identity(o, id);
    b.build(|_, _| id).expect("terminal category is valid")
}

pub fn discrete_category(names: &[&str]) -> FinCat {
    let mut b = CatBuilder::new();
    for name in names {
        let o = b.object(*name);
        let id = b.morphism(format!("id_{name}"), o, o);
        b.identity(o, id);
    }
    b.build(|f, _| f).expect("discrete category is valid")
}

/// The category with one object and the given endomorphism monoid, described
/// by a multiplication table `table[a][b] = b·a` ("b after a"). Element 0 must
/// be the unit.
pub fn one_object_category(
    names: &[String],
    then_after: impl Fn(usize, usize) -> usize,
) -> std::result::Result<FinCat, ValidationError> {
    let mut b = CatBuilder::new();
    let o = b.object("*");
    for name in names {
        b.morphism(name.clone(), o, o);
    }
    b.identity(o, 0);
    b.build(then_after)
}

/// A full subcategory of finite sets, with the function behind every morphism.
#[derive(Debug, Clone)]
pub struct FinSetFragment {
    pub category: FinCat,
    /// Element names of each object.
    pub sets: Vec<Vec<String>>,
    /// `functions[f][i]` is the index of the image of element `i` of `src(f)`.
    pub functions: Vec<Vec<usize>>,
}

impl FinSetFragment {
    /// Full subcategory of FinSet on the given named sets, all functions included.
    pub fn new(objects: Vec<(String, Vec<String>)>) -> FinSetFragment {
        let mut b = CatBuilder::new();
        let mut functions = Vec::new();
        let mut lookup: HashMap<(usize, usize, Vec<usize>), usize> = HashMap::new();
        let ids: Vec<usize> = objects.iter().map(|(name, _)| b.object(name.clone())).collect();
        for (a, (an, aset)) in objects.iter().enumerate() {
            for (t, (tn, tset)) in objects.iter().enumerate() {
                for func in all_functions(aset.len(), tset.len()) {
                    let images: Vec<&str> = func.iter().map(|&i| tset[i].as_str()).collect();
                    let name = format!("{an}->{tn}:[{}]", images.join(","));
                    let f = b.morphism(name, ids[a], ids[t]);
                    if a == t && func.iter().enumerate().all(|(i, &j)| i == j) {
                        b.identity(ids[a], f);
                    }
                    lookup.insert((a, t, func.clone()), f);
                    functions.push((a, t, func));
                }
            }
        }
        let funcs = functions.clone();
        let category = b
            .build(|f, g| {
                let (a, _, ff) = &funcs[f];
                let (_, t, gg) = &funcs[g];
                let composite: Vec<usize> = ff.iter().map(|&i| gg[i]).collect();
                lookup[&(*a, *t, composite)]
            })
            .expect("function composition is a category");
        FinSetFragment {
            category,
            sets: objects.into_iter().map(|(_, s)| s).collect(),
            functions: functions.into_iter().map(|(_, _, f)| f).collect(),
        }
    }

    /// The sets `{1}, {1,2}, …, {1..max}`, named `"1"`, `"2"`, ….
    pub fn standard(max: usize) -> FinSetFragment {
        FinSetFragment::new(
            (1..=max)
                .map(|n| (n.to_string(), (1..=n).map(|i| i.to_string()).collect()))
                .collect(),
        )
    }

    /// All subsets of `{1..n}` (including the empty set).
    pub fn subsets(n: usize) -> FinSetFragment {
        let objects = (0u32..(1 << n))
            .map(|mask| {
                let elems: Vec<String> =
                    (0..n).filter(|i| mask & (1 << i) != 0).map(|i| (i + 1).to_string()).collect();
                (format!("{{{}}}", elems.join(",")), elems)
            })
            .collect();
        FinSetFragment::new(objects)
    }

    pub fn morphism_for(&self, src: usize, tgt: usize, func: &[usize]) -> Option<usize> {
        self.category.hom(src, tgt).iter().copied().find(|&f| self.functions[f] == func)
    }

    /// Fiber-size equation of a function, e.g. `"1+2=3"`: the fiber sizes over
    /// the target points in ascending order, summing to the source size.
    pub fn fiber_equation(&self, f: usize) -> String {
        let t = self.category.tgt(f);
        let mut counts = vec![0usize; self.sets[t].len()];
        for &j in &self.functions[f] {
            counts[j] += 1;
        }
        counts.sort_unstable();
        let lhs: Vec<String> = counts.iter().map(|k| k.to_string()).collect();
        format!("{}={}", lhs.join("+"), self.functions[f].len())
    }
}

/// All functions `{0..m} → {0..n}` in lexicographic order.
pub fn all_functions(m: usize, n: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![Vec::new()];
    }
    if n == 0 {
        return Vec::new();
    }
    let mut out = Vec::new();
    let mut cur = vec![0usize; m];
    loop {
        out.push(cur.clone());
        let mut i = m;
        loop {
            if i == 0 {
                return out;
            }
            i -= 1;
            cur[i] += 1;
            if cur[i] < n {
                break;
            }
            cur[i] = 0;
        }
    }
}

/// A functor between finite categories, by object and morphism maps.
#[derive(Debug, Clone)]
pub struct FinFunctor<'a> {
    pub source: &'a FinCat,
    pub target: &'a FinCat,
    pub on_objects: Vec<usize>,
    pub on_morphisms: Vec<usize>,
}

impl<'a> FinFunctor<'a> {
    pub fn new(
        source: &'a FinCat,
        target: &'a FinCat,
        on_objects: Vec<usize>,
        on_morphisms: Vec<usize>,
    ) -> Result<Self> {
        let functor = FinFunctor { source, target, on_objects, on_morphisms };
        functor.check()?;
        Ok(functor)
    }

    fn check(&self) -> Result<()> {
        let bad = |msg: String| Err(Error::InvalidPresheaf(format!("functor: {msg}")));
        if self.on_objects.len() != self.source.num_objects()
            || self.on_morphisms.len() != self.source.num_morphisms()
        {
            return bad("map sizes do not match the source".into());
        }
        for f in 0..self.source.num_morphisms() {
            let ff = self.on_morphisms[f];
            if self.target.src(ff) != self.on_objects[self.source.src(f)]
                || self.target.tgt(ff) != self.on_objects[self.source.tgt(f)]
            {
                return bad(format!("`{}` lands on the wrong ends", self.source.morphism_name(f)));
            }
        }
        for c in 0..self.source.num_objects() {
            if self.on_morphisms[self.source.identity(c)]
                != self.target.identity(self.on_objects[c])
            {
                return bad(format!("identity of `{}` not preserved", self.source.object_name(c)));
            }
        }
        for f in 0..self.source.num_morphisms() {
            for g in 0..self.source.num_morphisms() {
                if let Some(fg) = self.source.try_compose(f, g) {
                    let lhs = self.on_morphisms[fg];
                    let rhs = self.target.compose(self.on_morphisms[f], self.on_morphisms[g]);
                    if lhs != rhs {
                        return bad(format!(
                            "composite of `{}`, `{}` not preserved",
                            self.source.morphism_name(f),
                            self.source.morphism_name(g)
                        ));
                    }
                }
            }
        }
        Ok(())
    }
}

/// A finite reflexive, transitive relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Preorder {
    carrier: Vec<String>,
    relation: BTreeSet<(usize, usize)>,
}

/// The associated poset of a preorder together with its quotient map.
#[derive(Debug, Clone)]
pub struct PosetQuotient {
    pub poset: Preorder,
    /// `class_of[x]` is the poset element that `x` is sent to.
    pub class_of: Vec<usize>,
}

impl Preorder {
    /// Builds the reflexive-transitive closure of the given pairs.
    pub fn generated_by(carrier: Vec<String>, pairs: &[(usize, usize)]) -> Preorder {
        let n = carrier.len();
        let mut rel = vec![vec![false; n]; n];
        for (i, row) in rel.iter_mut().enumerate() {
            row[i] = true;
        }
        for &(a, b) in pairs {
            rel[a][b] = true;
        }
        for k in 0..n {
            for i in 0..n {
                if rel[i][k] {
                    for j in 0..n {
                        if rel[k][j] {
                            rel[i][j] = true;
                        }
                    }
                }
            }
        }
        let relation = (0..n)
            .flat_map(|a| (0..n).map(move |b| (a, b)))
            .filter(|&(a, b)| rel[a][b])
            .collect();
        Preorder { carrier, relation }
    }

    /// Accepts an explicit relation, rejecting it unless it is reflexive and transitive.
    pub fn new(carrier: Vec<String>, relation: BTreeSet<(usize, usize)>) -> Result<Preorder> {
        let p = Preorder { carrier, relation };
        let n = p.len();
        if let Some(a) = (0..n).find(|&a| !p.leq(a, a)) {
            return Err(Error::Format(format!("relation is not reflexive at `{}`", p.carrier[a])));
        }
        for &(a, b) in &p.relation {
            if a >= n || b >= n {
                return Err(Error::Format("relation mentions elements outside the carrier".into()));
            }
            for c in 0..n {
                if p.leq(b, c) && !p.leq(a, c) {
                    return Err(Error::Format(format!(
                        "relation is not transitive on ({}, {}, {})",
                        p.carrier[a], p.carrier[b], p.carrier[c]
                    )));
                }
            }
        }
        Ok(p)
    }

    pub fn len(&self) -> usize {
        self.carrier.len()
    }

    pub fn is_empty(&self) -> bool {
        self.carrier.is_empty()
    }

    pub fn carrier(&self) -> &[String] {
        &self.carrier
    }

    pub fn relation(&self) -> &BTreeSet<(usize, usize)> {
        &self.relation
    }

    pub fn leq(&self, a: usize, b: usize) -> bool {
        self.relation.contains(&(a, b))
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.relation.iter().all(|&(a, b)| a == b || !self.leq(b, a))
    }

    /// The preorder as a thin category; morphisms are named `a<=b`.
    pub fn to_category(&self) -> FinCat {
        let mut b = CatBuilder::new();
        for c in &self.carrier {
            b.object(c.clone());
        }
        let mut lookup = HashMap::new();
        for &(x, y) in &self.relation {
            let f = b.morphism(format!("{}<={}", self.carrier[x], self.carrier[y]), x, y);
            if x == y {
                b.identity(x, f);
            }
            lookup.insert((x, y), f);
        }
        let by_index: HashMap<usize, (usize, usize)> =
            lookup.iter().map(|(&k, &v)| (v, k)).collect();
        b.build(|f, g| lookup[&(by_index[&f].0, by_index[&g].1)])
            .expect("a preorder is a thin category")
    }

    /// Quotient by `x ≤ y ∧ y ≤ x`. Classes are named `[a,b,…]` and ordered by
    /// their first member.
    pub fn to_poset(&self) -> PosetQuotient {
        let n = self.len();
        let mut class_of = vec![usize::MAX; n];
        let mut names = Vec::new();
        for a in 0..n {
            if class_of[a] != usize::MAX {
                continue;
            }
            let id = names.len();
            let members: Vec<usize> =
                (a..n).filter(|&b| self.leq(a, b) && self.leq(b, a)).collect();
            for &b in &members {
                class_of[b] = id;
            }
            let labels: Vec<&str> = members.iter().map(|&b| self.carrier[b].as_str()).collect();
            names.push(format!("[{}]", labels.join(",")));
        }
        let relation = self.relation.iter().map(|&(a, b)| (class_of[a], class_of[b])).collect();
        PosetQuotient { poset: Preorder { carrier: names, relation }, class_of }
    }

    /// Whether `map` (indices into `other`) is monotone from `self` to `other`.
    pub fn is_monotone(&self, map: &[usize], other: &Preorder) -> bool {
        self.relation.iter().all(|&(a, b)| other.leq(map[a], map[b]))
    }

    /// Order-isomorphism search by brute force over bijections.
    pub fn isomorphic(&self, other: &Preorder) -> bool {
        if self.len() != other.len() || self.relation.len() != other.relation.len() {
            return false;
        }
        permutations(self.len()).into_iter().any(|perm| {
            self.relation.iter().all(|&(a, b)| other.leq(perm[a], perm[b]))
        })
    }
}

pub fn preorder_to_poset(p: &Preorder) -> PosetQuotient {
    p.to_poset()
}

/// All permutations of `0..n` in lexicographic order.
pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..n).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..n).rev().find(|&i| cur[i - 1] < cur[i]) else {
            return out;
        };
        let j = (i..n).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn poset01() -> FinCat {
        Preorder::generated_by(vec!["0".into(), "1".into()], &[(0, 1)]).to_category()
    }

    #[test]
    fn terminal_is_valid() {
        let t = terminal_category();
        assert_eq!(t.num_objects(), 1);
        assert_eq!(t.num_morphisms(), 1);
        assert!(FinCat::validate(&t.to_raw()).is_ok());
    }

    #[test]
    fn missing_composite_is_reported() {
        let raw = RawCategory {
            schema: FINCAT_SCHEMA.into(),
            objects: vec!["a".into(), "b".into()],
            morphisms: vec![
                RawMorphism { id: "ida".into(), src: "a".into(), tgt: "a".into() },
                RawMorphism { id: "idb".into(), src: "b".into(), tgt: "b".into() },
                RawMorphism { id: "f".into(), src: "a".into(), tgt: "b".into() },
            ],
            identities: [("a".into(), "ida".into()), ("b".into(), "idb".into())].into(),
            composition: vec![
                RawComposite { first: "ida".into(), then: "ida".into(), result: "ida".into() },
                RawComposite { first: "idb".into(), then: "idb".into(), result: "idb".into() },
                RawComposite { first: "ida".into(), then: "f".into(), result: "f".into() },
            ],
        };
        let err = FinCat::validate(&raw).unwrap_err();
        assert_eq!(
            err.first,
            LawViolation::MissingComposite { first: "f".into(), then: "idb".into() }
        );
    }

    #[test]
    fn broken_unit_is_reported() {
        let mut raw = poset01().to_raw();
        // make the identity on 0 act as a constant: id0;(0<=1) := id0 is ill-typed,
        // so instead break it by declaring a second endomorphism as identity.
        raw.morphisms.push(RawMorphism { id: "e".into(), src: "0".into(), tgt: "0".into() });
        raw.composition.push(RawComposite { first: "e".into(), then: "e".into(), result: "e".into() });
        raw.composition.push(RawComposite { first: "0<=0".into(), then: "e".into(), result: "0<=0".into() });
        raw.composition.push(RawComposite { first: "e".into(), then: "0<=0".into(), result: "e".into() });
        raw.composition.push(RawComposite { first: "e".into(), then: "0<=1".into(), result: "0<=1".into() });
        let err = FinCat::validate(&raw).unwrap_err();
        assert!(matches!(err.first, LawViolation::BrokenUnit { .. }), "{err}");
    }

    #[test]
    fn duplicate_ids_rejected() {
        let mut raw = terminal_category().to_raw();
        raw.objects.push("*".into());
        let err = FinCat::validate(&raw).unwrap_err();
        assert_eq!(err.first, LawViolation::DuplicateObject("*".into()));
    }

    #[test]
    fn finset_fragment_morphism_count() {
        let frag = FinSetFragment::standard(4);
        let expected: usize =
            (1..=4u32).flat_map(|m| (1..=4u32).map(move |n| n.pow(m) as usize)).sum();
        assert_eq!(expected, 494);
        assert_eq!(frag.category.num_morphisms(), expected);
    }

    #[test]
    fn is_iso_examples() {
        let t = terminal_category();
        assert!(t.is_iso(0));
        let p = poset01();
        let f = p.morphism_id("0<=1").unwrap();
        assert!(!p.is_iso(f));

        // one-object category of all maps {1,2,3} → {1,2,3}
        let frag = FinSetFragment::new(vec![(
            "3".into(),
            vec!["1".into(), "2".into(), "3".into()],
        )]);
        let cycle = frag.morphism_for(0, 0, &[1, 2, 0]).unwrap();
        let inv = frag.category.inverse(cycle).unwrap();
        assert_eq!(frag.functions[inv], vec![2, 0, 1]);
        let constant = frag.morphism_for(0, 0, &[0, 0, 0]).unwrap();
        assert!(!frag.category.is_iso(constant));
    }

    #[test]
    fn iso_classes_examples() {
        let d = discrete_category(&["a", "b"]);
        assert_eq!(d.iso_classes(), vec![vec![0], vec![1]]);

        let subsets = FinSetFragment::subsets(3);
        let classes = subsets.category.iso_classes();
        assert_eq!(classes.len(), 4);
        for class in &classes {
            let sizes: BTreeSet<usize> = class.iter().map(|&c| subsets.sets[c].len()).collect();
            assert_eq!(sizes.len(), 1);
        }

        // a connected groupoid: all bijections of a 2-element set and a copy of it
        let g = FinSetFragment::new(vec![
            ("x".into(), vec!["a".into(), "b".into()]),
            ("y".into(), vec!["c".into(), "d".into()]),
        ]);
        assert_eq!(g.category.iso_classes().len(), 1);
    }

    #[test]
    fn zero_category_examples() {
        assert!(poset01().is_zero_category());
        let frag = FinSetFragment::new(vec![("2".into(), vec!["1".into(), "2".into()])]);
        // four endomorphisms of a two-element set
        assert!(!frag.category.is_zero_category());
        let twisted = one_object_category(&["e".into(), "s".into()], |a, b| a ^ b).unwrap();
        assert!(!twisted.is_zero_category());
    }

    #[test]
    fn preorder_to_poset_examples() {
        let chain = Preorder::generated_by(vec!["0".into(), "1".into(), "2".into()], &[(0, 1), (1, 2)]);
        let q = chain.to_poset();
        assert!(q.poset.isomorphic(&chain));

        let p = Preorder::generated_by(vec!["a".into(), "b".into(), "c".into()], &[(0, 1), (1, 0)]);
        let q = p.to_poset();
        assert_eq!(q.poset.carrier(), &["[a,b]".to_string(), "[c]".to_string()]);
        assert!(q.poset.is_antisymmetric());
        assert!(p.is_monotone(&q.class_of, &q.poset));

        let total = Preorder::generated_by(
            vec!["a".into(), "b".into(), "c".into()],
            &[(0, 1), (1, 2), (2, 0)],
        );
        assert_eq!(total.to_poset().poset.len(), 1);
    }

    #[test]
    fn preorder_new_rejects_non_transitive() {
        let rel: BTreeSet<(usize, usize)> = [(0, 0), (1, 1), (2, 2), (0, 1), (1, 2)].into();
        assert!(Preorder::new(vec!["a".into(), "b".into(), "c".into()], rel).is_err());
    }

    #[test]
    fn relabel_preserves_iso_classes() {
        let frag = FinSetFragment::subsets(2);
        let cat = &frag.category;
        let n = cat.num_objects();
        let m = cat.num_morphisms();
        let operm: Vec<usize> = (0..n).rev().collect();
        let mperm: Vec<usize> = (0..m).map(|f| (f + 7) % m).collect();
        let relabelled = cat.relabel(&operm, &mperm);
        assert!(relabelled.law_violations().is_empty());
        let sizes = |c: &FinCat| {
            let mut s: Vec<usize> = c.iso_classes().iter().map(|k| k.len()).collect();
            s.sort();
            s
        };
        assert_eq!(sizes(cat), sizes(&relabelled));
    }

    #[test]
    fn functor_checks() {
        let p = poset01();
        let t = terminal_category();
        let to_point = FinFunctor::new(&p, &t, vec![0, 0], vec![0; p.num_morphisms()]);
        assert!(to_point.is_ok());
        let bad = FinFunctor::new(&t, &p, vec![0], vec![p.morphism_id("0<=1").unwrap()]);
        assert!(bad.is_err());
    }
}
