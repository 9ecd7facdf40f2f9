//! JSON file formats.
//!
//! | schema    | content                                              |
//! |-----------|------------------------------------------------------|
//! | fincat/v1 | a finite category ([`RawCategory`])                  |
//! | grp/v1    | a finite group ([`RawGroup`])                        |
//! | psh/v1    | a presheaf: element lists and action maps            |
//! | pshmap/v1 | a natural transformation between two presheaves      |
//! | ic/v1     | the internal category of a map, all tables           |
//! | simp/v1   | a truncated simplicial object                        |
//! | grphom/v1 | a group homomorphism, by element names               |
//! | verdict/v1, uverdict/v1, report/v1 | command output envelopes    |
//!
//! Elements are referred to by label everywhere. A base category is given
//! inline, as `"finset"` for the terminal category, or as a path (relative
//! to the referring file) to a `fincat/v1` file or a `grp/v1` file, whose
//! group is read as its delooping.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fincat::{terminal_category, FinCat, RawCategory};
use crate::groups::hom::GroupHom;
use crate::groups::{FinGroup, RawGroup};
use crate::internal::InternalCat;
use crate::presheaf::gset::delooping;
use crate::presheaf::{LabelIndex, Presheaf, PresheafMap};
use crate::segal::TruncSimpObject;

pub const PSH_SCHEMA: &str = "psh/v1";
pub const PSHMAP_SCHEMA: &str = "pshmap/v1";
pub const IC_SCHEMA: &str = "ic/v1";
pub const SIMP_SCHEMA: &str = "simp/v1";
pub const VERDICT_SCHEMA: &str = "verdict/v1";
pub const UVERDICT_SCHEMA: &str = "uverdict/v1";
pub const REPORT_SCHEMA: &str = "report/v1";
pub const GRPHOM_SCHEMA: &str = "grphom/v1";

/// A base category, inline or by reference.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum BaseRef {
    Named(String),
    Inline(RawCategory),
}

/// Per-object lists, keyed by object name.
pub type PerObject = BTreeMap<String, Vec<String>>;

/// The `psh/v1` format. `action[f]` lists, for each element of `X(tgt f)`
/// in order, the label of its restriction in `X(src f)`; identities may be
/// omitted.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPresheaf {
    #[serde(default = "psh_schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub base: Option<BaseRef>,
    pub elements: PerObject,
    #[serde(default)]
    pub action: PerObject,
}

fn psh_schema() -> String {
    PSH_SCHEMA.into()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum PresheafRef {
    Path(String),
    Inline(Box<RawPresheaf>),
}

/// The `pshmap/v1` format. `components[c]` lists the image label of each
/// element of `source(c)` in order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawPresheafMap {
    #[serde(default = "pshmap_schema")]
    pub schema: String,
    pub source: PresheafRef,
    pub target: PresheafRef,
    pub components: PerObject,
}

fn pshmap_schema() -> String {
    PSHMAP_SCHEMA.into()
}

fn check_schema(found: &str, expected: &str) -> Result<()> {
    if found != expected {
        return Err(Error::Format(format!("expected schema `{expected}`, found `{found}`")));
    }
    Ok(())
}

fn read_json<T: for<'de> Deserialize<'de>>(path: &Path) -> Result<T> {
    let text = std::fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

fn dir_of(path: &Path) -> PathBuf {
    path.parent().map(Path::to_path_buf).unwrap_or_default()
}

/// The schema tag of a JSON file, if any.
pub fn schema_of(path: &Path) -> Result<Option<String>> {
    let v: serde_json::Value = read_json(path)?;
    Ok(v.get("schema").and_then(|s| s.as_str()).map(str::to_string))
}

/// A `fincat/v1` file, or a `grp/v1` file read as its delooping.
pub fn load_category(path: &Path) -> Result<Arc<FinCat>> {
    match schema_of(path)?.as_deref() {
        Some("grp/v1") => Ok(delooping(&load_group(path)?)),
        Some("fincat/v1") | None => Ok(Arc::new(FinCat::from_raw(&read_json(path)?)?)),
        Some(other) => Err(Error::Format(format!("`{}` holds `{other}`, not a category", path.display()))),
    }
}

pub fn load_group(path: &Path) -> Result<FinGroup> {
    let raw: RawGroup = read_json(path)?;
    check_schema(&raw.schema, crate::groups::GRP_SCHEMA)?;
    FinGroup::from_raw(&raw)
}

pub fn resolve_base(base: &BaseRef, dir: &Path) -> Result<Arc<FinCat>> {
    match base {
        BaseRef::Named(s) if s == "finset" => Ok(Arc::new(terminal_category())),
        BaseRef::Named(s) => load_category(&dir.join(s)),
        BaseRef::Inline(raw) => Ok(Arc::new(FinCat::from_raw(raw)?)),
    }
}

pub fn presheaf_to_raw(x: &Presheaf, base: Option<BaseRef>) -> RawPresheaf {
    let cat = x.base();
    let elements = (0..cat.num_objects())
        .map(|c| (cat.object_name(c).to_string(), x.labels(c).to_vec()))
        .collect();
    let action = (0..cat.num_morphisms())
        .filter(|&f| !cat.is_identity(f))
        .map(|f| {
            let c = cat.src(f);
            let labels = x.action(f).iter().map(|&y| x.label(c, y).to_string()).collect();
            (cat.morphism_name(f).to_string(), labels)
        })
        .collect();
    RawPresheaf { schema: PSH_SCHEMA.into(), base, elements, action }
}

/// The base reference written into standalone files: `"finset"` for the
/// terminal category, inline tables otherwise.
pub fn base_ref(cat: &FinCat) -> BaseRef {
    if *cat == terminal_category() {
        BaseRef::Named("finset".into())
    } else {
        BaseRef::Inline(cat.to_raw())
    }
}

pub fn presheaf_from_raw(raw: &RawPresheaf, base: Option<Arc<FinCat>>, dir: &Path) -> Result<Arc<Presheaf>> {
    check_schema(&raw.schema, PSH_SCHEMA)?;
    let base = match (base, &raw.base) {
        (_, Some(r)) => resolve_base(r, dir)?,
        (Some(b), None) => b,
        (None, None) => return Err(Error::Format("presheaf without a base category".into())),
    };
    let cat = &base;
    for name in raw.elements.keys() {
        cat.object_id(name)?;
    }
    let labels: Vec<Vec<String>> = (0..cat.num_objects())
        .map(|c| raw.elements.get(cat.object_name(c)).cloned().unwrap_or_default())
        .collect();
    let index: Vec<BTreeMap<&str, usize>> =
        labels.iter().map(|ls| ls.iter().enumerate().map(|(i, l)| (l.as_str(), i)).collect()).collect();
    for name in raw.action.keys() {
        cat.morphism_id(name)?;
    }
    let mut action = Vec::with_capacity(cat.num_morphisms());
    for f in 0..cat.num_morphisms() {
        let (c, d) = (cat.src(f), cat.tgt(f));
        match raw.action.get(cat.morphism_name(f)) {
            Some(images) => {
                if images.len() != labels[d].len() {
                    return Err(Error::InvalidPresheaf(format!(
                        "action of `{}` needs {} entries",
                        cat.morphism_name(f),
                        labels[d].len()
                    )));
                }
                let row = images
                    .iter()
                    .map(|l| index[c].get(l.as_str()).copied().ok_or_else(|| Error::UnknownElement(l.clone())))
                    .collect::<Result<Vec<_>>>()?;
                action.push(row);
            }
            None if cat.is_identity(f) => action.push((0..labels[c].len()).collect()),
            None => {
                return Err(Error::InvalidPresheaf(format!("missing action of `{}`", cat.morphism_name(f))));
            }
        }
    }
    Ok(Arc::new(Presheaf::new(base.clone(), labels, action)?))
}

pub fn load_presheaf(path: &Path) -> Result<Arc<Presheaf>> {
    presheaf_from_raw(&read_json(path)?, None, &dir_of(path))
}

fn components_to_raw(m: &PresheafMap) -> PerObject {
    let cat = m.source.base();
    (0..cat.num_objects())
        .map(|c| {
            let images = m.components[c].iter().map(|&y| m.target.label(c, y).to_string()).collect();
            (cat.object_name(c).to_string(), images)
        })
        .collect()
}

fn components_from_raw(raw: &PerObject, source: &Arc<Presheaf>, target: &Arc<Presheaf>) -> Result<PresheafMap> {
    let cat = source.base();
    for name in raw.keys() {
        cat.object_id(name)?;
    }
    let index = LabelIndex::new(target);
    let components = (0..cat.num_objects())
        .map(|c| {
            let images = raw.get(cat.object_name(c)).map(Vec::as_slice).unwrap_or_default();
            if images.len() != source.size(c) {
                return Err(Error::Format(format!(
                    "component at `{}` needs {} entries",
                    cat.object_name(c),
                    source.size(c)
                )));
            }
            images
                .iter()
                .map(|l| index.get(c, l).ok_or_else(|| Error::UnknownElement(l.clone())))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    PresheafMap::new(source.clone(), target.clone(), components)
}

pub fn map_to_raw(m: &PresheafMap) -> RawPresheafMap {
    let base = base_ref(m.source.base());
    RawPresheafMap {
        schema: PSHMAP_SCHEMA.into(),
        source: PresheafRef::Inline(Box::new(presheaf_to_raw(&m.source, Some(base.clone())))),
        target: PresheafRef::Inline(Box::new(presheaf_to_raw(&m.target, Some(base)))),
        components: components_to_raw(m),
    }
}

fn resolve_presheaf(r: &PresheafRef, dir: &Path) -> Result<Arc<Presheaf>> {
    match r {
        PresheafRef::Path(p) => load_presheaf(&dir.join(p)),
        PresheafRef::Inline(raw) => presheaf_from_raw(raw, None, dir),
    }
}

pub fn map_from_raw(raw: &RawPresheafMap, dir: &Path) -> Result<PresheafMap> {
    check_schema(&raw.schema, PSHMAP_SCHEMA)?;
    let source = resolve_presheaf(&raw.source, dir)?;
    let mut target = resolve_presheaf(&raw.target, dir)?;
    if !source.same_base(&target) {
        return Err(Error::BaseMismatch);
    }
    if !Arc::ptr_eq(source.base(), target.base()) {
        // share one base so that downstream constructions agree on it
        let cat = source.base();
        target = Arc::new(Presheaf::from_parts(
            cat.clone(),
            (0..cat.num_objects()).map(|c| target.labels(c).to_vec()).collect(),
            (0..cat.num_morphisms()).map(|f| target.action(f).to_vec()).collect(),
        ));
    }
    components_from_raw(&raw.components, &source, &target)
}

pub fn load_map(path: &Path) -> Result<PresheafMap> {
    map_from_raw(&read_json(path)?, &dir_of(path))
}

/// The `simp/v1` format: levels share the top-level base; `faces[n][i]` and
/// `degens[n][i]` are components in the sense of `pshmap/v1`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawSimp {
    #[serde(default = "simp_schema")]
    pub schema: String,
    pub base: BaseRef,
    pub levels: Vec<RawPresheaf>,
    pub faces: Vec<Vec<PerObject>>,
    pub degens: Vec<Vec<PerObject>>,
}

fn simp_schema() -> String {
    SIMP_SCHEMA.into()
}

pub fn simp_to_raw(w: &TruncSimpObject) -> RawSimp {
    RawSimp {
        schema: SIMP_SCHEMA.into(),
        base: base_ref(w.base()),
        levels: w.levels.iter().map(|l| presheaf_to_raw(l, None)).collect(),
        faces: w.faces.iter().map(|fs| fs.iter().map(components_to_raw).collect()).collect(),
        degens: w.degens.iter().map(|ss| ss.iter().map(components_to_raw).collect()).collect(),
    }
}

pub fn simp_from_raw(raw: &RawSimp, dir: &Path) -> Result<TruncSimpObject> {
    check_schema(&raw.schema, SIMP_SCHEMA)?;
    let base = resolve_base(&raw.base, dir)?;
    let levels = raw
        .levels
        .iter()
        .map(|l| presheaf_from_raw(l, Some(base.clone()), dir))
        .collect::<Result<Vec<_>>>()?;
    let level = |n: usize| levels.get(n).ok_or_else(|| Error::InvalidSimplicial(format!("no level {n}")));
    if raw.faces.first().is_some_and(|f| !f.is_empty()) {
        return Err(Error::InvalidSimplicial("level 0 has no faces".into()));
    }
    let mut faces = vec![Vec::new()];
    for (n, ms) in raw.faces.iter().enumerate().skip(1) {
        let (source, target) = (level(n)?, level(n - 1)?);
        faces.push(ms.iter().map(|m| components_from_raw(m, source, target)).collect::<Result<Vec<_>>>()?);
    }
    let degens = raw
        .degens
        .iter()
        .enumerate()
        .map(|(n, ms)| {
            let (source, target) = (level(n)?, level(n + 1)?);
            ms.iter().map(|m| components_from_raw(m, source, target)).collect()
        })
        .collect::<Result<Vec<_>>>()?;
    TruncSimpObject::new(levels, faces, degens)
}

pub fn load_simp(path: &Path) -> Result<TruncSimpObject> {
    simp_from_raw(&read_json(path)?, &dir_of(path))
}

/// The `ic/v1` format: every object and structure map of the internal
/// category `(B, M, s, t, id, comp)` of `p: E → B`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawInternalCat {
    pub schema: String,
    pub base: BaseRef,
    pub objects: BTreeMap<String, RawPresheaf>,
    pub maps: BTreeMap<String, RawMapEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawMapEntry {
    pub source: String,
    pub target: String,
    pub components: PerObject,
}

pub fn internal_to_raw(ic: &InternalCat, p: &PresheafMap) -> RawInternalCat {
    let objects: BTreeMap<String, RawPresheaf> = [
        ("B", ic.b()),
        ("E", ic.e()),
        ("M", &ic.m),
        ("MxM", &ic.mm.obj),
    ]
    .into_iter()
    .map(|(k, x)| (k.to_string(), presheaf_to_raw(x, None)))
    .collect();
    let entry = |m: &PresheafMap, s: &str, t: &str| RawMapEntry {
        source: s.into(),
        target: t.into(),
        components: components_to_raw(m),
    };
    let maps = [
        ("p", entry(p, "E", "B")),
        ("s", entry(&ic.s, "M", "B")),
        ("t", entry(&ic.t, "M", "B")),
        ("id", entry(&ic.id_map, "B", "M")),
        ("comp", entry(&ic.comp, "MxM", "M")),
    ]
    .into_iter()
    .map(|(k, v)| (k.to_string(), v))
    .collect();
    RawInternalCat { schema: IC_SCHEMA.into(), base: base_ref(ic.b().base()), objects, maps }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GroupRef {
    Path(String),
    Inline(RawGroup),
}

/// The `grphom/v1` format: `map` lists the image of each source element,
/// in source order, by name.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroupHom {
    #[serde(default = "grphom_schema")]
    pub schema: String,
    pub source: GroupRef,
    pub target: GroupRef,
    pub map: Vec<String>,
}

fn grphom_schema() -> String {
    GRPHOM_SCHEMA.into()
}

fn resolve_group(r: &GroupRef, dir: &Path) -> Result<FinGroup> {
    match r {
        GroupRef::Path(p) => load_group(&dir.join(p)),
        GroupRef::Inline(raw) => FinGroup::from_raw(raw),
    }
}

pub fn group_hom_from_raw(raw: &RawGroupHom, dir: &Path) -> Result<GroupHom> {
    check_schema(&raw.schema, GRPHOM_SCHEMA)?;
    let source = Arc::new(resolve_group(&raw.source, dir)?);
    let target = Arc::new(resolve_group(&raw.target, dir)?);
    if raw.map.len() != source.order() {
        return Err(Error::Format(format!("map needs {} entries", source.order())));
    }
    let map = raw.map.iter().map(|n| target.element(n)).collect::<Result<Vec<_>>>()?;
    GroupHom::new(source, target, map)
}

pub fn group_hom_to_raw(h: &GroupHom) -> RawGroupHom {
    RawGroupHom {
        schema: GRPHOM_SCHEMA.into(),
        source: GroupRef::Inline(h.source.to_raw()),
        target: GroupRef::Inline(h.target.to_raw()),
        map: h.map.iter().map(|&y| h.target.name(y).to_string()).collect(),
    }
}

pub fn load_group_hom(path: &Path) -> Result<GroupHom> {
    group_hom_from_raw(&read_json(path)?, &dir_of(path))
}

/// Output wrapper adding the schema tag to a serializable body.
#[derive(Debug, Clone, Serialize)]
pub struct Envelope<'a, T: Serialize> {
    pub schema: &'static str,
    #[serde(flatten)]
    pub body: &'a T,
}

pub fn envelope<T: Serialize>(schema: &'static str, body: &T) -> serde_json::Value {
    serde_json::to_value(Envelope { schema, body }).expect("output types serialize")
}

pub fn write_json<T: Serialize>(path: &Path, value: &T) -> Result<()> {
    let text = serde_json::to_string_pretty(value)?;
    std::fs::write(path, text + "\n")?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{finset_fn, z2_corpus};
    use crate::fincat::Preorder;
    use crate::internal::build_internal_cat;
    use crate::segal::nerve_of_category;

    #[test]
    fn map_round_trip() {
        let p = finset_fn(2, 3, &[0, 2]);
        let raw = map_to_raw(&p);
        let text = serde_json::to_string(&raw).unwrap();
        let back = map_from_raw(&serde_json::from_str(&text).unwrap(), Path::new(".")).unwrap();
        assert_eq!(back.components, p.components);
        assert_eq!(*back.source, *p.source);

        let z2 = z2_corpus();
        for q in z2.maps(4) {
            let back = map_from_raw(&map_to_raw(&q), Path::new(".")).unwrap();
            assert_eq!(back, q);
        }
    }

    #[test]
    fn simp_round_trip() {
        let c = Preorder::generated_by(vec!["0".into(), "1".into()], &[(0, 1)]).to_category();
        let w = nerve_of_category(&c, 3).unwrap();
        let raw = simp_to_raw(&w);
        let back = simp_from_raw(&raw, Path::new(".")).unwrap();
        assert_eq!(back.sizes(), w.sizes());
        assert_eq!(back.faces, w.faces);
    }

    #[test]
    fn bad_action_is_rejected() {
        let mut raw = map_to_raw(&z2_corpus().maps(2)[0]);
        if let PresheafRef::Inline(src) = &mut raw.source {
            src.elements.insert("*".into(), vec!["a".into(), "a".into()]);
        }
        assert!(map_from_raw(&raw, Path::new(".")).is_err());
    }

    #[test]
    fn group_hom_round_trip() {
        let z4 = Arc::new(FinGroup::cyclic(4));
        let z2 = Arc::new(FinGroup::cyclic(2));
        let h = GroupHom::new(z4, z2, vec![0, 1, 0, 1]).unwrap();
        let back = group_hom_from_raw(&group_hom_to_raw(&h), Path::new(".")).unwrap();
        assert_eq!(back.map, h.map);
    }

    #[test]
    fn internal_cat_tables() {
        let p = finset_fn(2, 1, &[0, 0]);
        let ic = build_internal_cat(&p).unwrap();
        let raw = internal_to_raw(&ic, &p);
        assert_eq!(raw.objects["M"].elements["*"].len(), 4);
        assert_eq!(raw.maps["comp"].components["*"].len(), 16);
    }
}
