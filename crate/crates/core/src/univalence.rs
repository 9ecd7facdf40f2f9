//! Deciding univalence of `p: E → B`: a brute-force refuter counting
//! cartesian squares, completeness of the nerve `n(p)`, and the subobject
//! classifier route for monos. Also the poset of univalent maps and the
//! pullback stability laws.
//!
//! The refuter only tests connected objects `X`. Squares from `u*p` over
//! `X = X₁ ⊔ X₂` are pairs of squares over the components, so a map over a
//! disconnected object has two squares exactly when one of its components
//! does.

use std::sync::Arc;

use rayon::prelude::*;
use serde::Serialize;

use crate::corpus::{finset_objects, maps_up_to_iso, presheaves_up_to_iso, GsetCorpus};
use crate::error::{Error, Result};
use crate::fincat::FinCat;
use crate::groups::FinGroup;
use crate::internal::{build_internal_cat, iso_object, InternalCat};
use crate::presheaf::cart::{count_cart_squares, first_cart_squares};
use crate::presheaf::exponential::representable;
use crate::presheaf::gset::{coset_space, subgroup_classes};
use crate::presheaf::hom::{all_maps, find_iso, HomSearch};
use crate::presheaf::limits::{product, pullback, subpresheaf, terminal, to_terminal};
use crate::presheaf::omega::{subobjects, SubobjectClassifier};
use crate::presheaf::{Presheaf, PresheafMap};
use crate::segal::{check_complete, nerve_of_internal};

pub const DEFAULT_FAMILY_BOUND: usize = 12;

/// Which checks to run.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    All,
    Brute,
    Complete,
    Omega,
}

impl std::str::FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Method> {
        match s {
            "all" => Ok(Method::All),
            "brute" => Ok(Method::Brute),
            "complete" => Ok(Method::Complete),
            "omega" => Ok(Method::Omega),
            _ => Err(Error::InvalidArgument(format!("unknown method `{s}`"))),
        }
    }
}

/// A cartesian square, as `element ↦ element` lists for `u` and `v`.
#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct SquareLabels {
    pub u: Vec<String>,
    pub v: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BruteWitness {
    /// The test object `X` and the map `u: X → B` whose pullback is `q`.
    pub test_object: String,
    pub q: String,
    pub squares: Vec<SquareLabels>,
}

#[derive(Debug, Clone, Serialize)]
pub struct BruteVerdict {
    /// No test map has two cartesian squares into `p`. Not a proof.
    pub pass: bool,
    pub family_bound: usize,
    pub objects_tested: usize,
    pub maps_tested: usize,
    pub witness: Option<BruteWitness>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CompletenessOutcome {
    pub pass: bool,
    pub pullback_size: usize,
    pub level0_size: usize,
    /// An element of the completeness pullback outside the image of `B`.
    pub witness: Option<String>,
    /// Whether the section `B → iso object` is an isomorphism.
    pub section_iso: bool,
    pub iso_object_size: usize,
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "status", rename_all = "kebab-case")]
pub enum OmegaOutcome {
    Pass,
    Fail { witness: String },
    NotApplicable { reason: String },
}

impl OmegaOutcome {
    pub fn verdict(&self) -> Option<bool> {
        match self {
            OmegaOutcome::Pass => Some(true),
            OmegaOutcome::Fail { .. } => Some(false),
            OmegaOutcome::NotApplicable { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct FiberCriterion {
    pub pass: bool,
    pub reason: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnivalenceVerdict {
    pub morphism: String,
    pub bruteforce: Option<BruteVerdict>,
    pub completeness: Option<CompletenessOutcome>,
    pub omega: Option<OmegaOutcome>,
    /// Only for finite sets.
    pub fiber_criterion: Option<FiberCriterion>,
    /// Checks that contradict each other.
    pub conflicts: Vec<String>,
    /// Completeness fails but the refuter found no witness within its bound.
    pub refuter_gaps: Vec<String>,
}

impl UnivalenceVerdict {
    /// The exact verdict, from completeness when it ran.
    pub fn univalent(&self) -> Option<bool> {
        self.completeness.as_ref().map(|c| c.pass)
    }
}

/// `x ↦ y` for every element, prefixed with the stage when there are several.
pub fn map_labels(m: &PresheafMap) -> Vec<String> {
    let base = m.source.base();
    let multi = base.num_objects() > 1;
    let mut out = Vec::new();
    for c in 0..base.num_objects() {
        for x in 0..m.source.size(c) {
            let s = format!("{}↦{}", m.source.label(c, x), m.target.label(c, m.apply(c, x)));
            out.push(if multi { format!("{}:{s}", base.object_name(c)) } else { s });
        }
    }
    out
}

/// Connected components of a presheaf, as subobjects.
pub fn components(x: &Arc<Presheaf>) -> Vec<Arc<Presheaf>> {
    let base = x.base();
    let offsets: Vec<usize> = (0..base.num_objects())
        .scan(0, |acc, c| {
            let o = *acc;
            *acc += x.size(c);
            Some(o)
        })
        .collect();
    let total = x.total_size();
    let mut parent: Vec<usize> = (0..total).collect();
    fn find(p: &mut [usize], mut a: usize) -> usize {
        while p[a] != a {
            p[a] = p[p[a]];
            a = p[a];
        }
        a
    }
    for f in 0..base.num_morphisms() {
        let (s, t) = (base.src(f), base.tgt(f));
        for y in 0..x.size(t) {
            let a = find(&mut parent, offsets[t] + y);
            let b = find(&mut parent, offsets[s] + x.restrict(f, y));
            parent[a.max(b)] = a.min(b);
        }
    }
    let roots: Vec<usize> = (0..total).map(|i| find(&mut parent, i)).collect();
    let mut distinct: Vec<usize> = roots.clone();
    distinct.sort_unstable();
    distinct.dedup();
    distinct
        .into_iter()
        .map(|r| {
            let keep: Vec<Vec<bool>> = (0..base.num_objects())
                .map(|c| (0..x.size(c)).map(|y| roots[offsets[c] + y] == r).collect())
                .collect();
            subpresheaf(x, &keep).0
        })
        .collect()
}

/// The group `G` when the base is a one-object groupoid `BG`, with group
/// elements named by the morphisms.
pub fn group_of_delooping(base: &FinCat) -> Option<FinGroup> {
    if base.num_objects() != 1 || !(0..base.num_morphisms()).all(|m| base.is_iso(m)) {
        return None;
    }
    let n = base.num_morphisms();
    let names = (0..n).map(|m| base.morphism_name(m).to_string()).collect();
    let table = (0..n).map(|a| (0..n).map(|b| base.compose(b, a)).collect()).collect();
    FinGroup::new(names, table).ok()
}

/// Connected presheaves of total size `≤ bound`, one per isomorphism class.
fn connected_presheaves(base: &Arc<FinCat>, bound: usize) -> Vec<Arc<Presheaf>> {
    if let Some(g) = group_of_delooping(base) {
        // transitive G-sets are the coset spaces
        let mut out: Vec<Arc<Presheaf>> = subgroup_classes(&g)
            .iter()
            .filter(|h| g.order() / h.len() <= bound)
            .map(|h| Arc::new(coset_space(base, &g, h)))
            .collect();
        out.sort_by_key(|x| x.total_size());
        return out;
    }
    presheaves_up_to_iso(base, bound)
        .into_iter()
        .filter(|x| x.total_size() > 0 && components(x).len() == 1)
        .collect()
}

fn push_unique(family: &mut Vec<Arc<Presheaf>>, x: Arc<Presheaf>) {
    let dup = family.iter().any(|y| y.sizes() == x.sizes() && find_iso(y, &x).is_some());
    if !dup {
        family.push(x);
    }
}

/// Connected components of representables, binary products of
/// representables, `E`, `B`, `M`, `B × B`, and all connected presheaves of
/// size `≤ bound`, deduplicated and smallest first.
pub fn default_family(p: &PresheafMap, ic: Option<&InternalCat>, bound: usize) -> Result<Vec<Arc<Presheaf>>> {
    let base = p.target.base().clone();
    let reps: Vec<Arc<Presheaf>> = (0..base.num_objects()).map(|c| representable(&base, c)).collect();
    let mut raw: Vec<Arc<Presheaf>> = reps.clone();
    for (i, a) in reps.iter().enumerate() {
        for b in &reps[i..] {
            raw.push(product(a, b)?.obj);
        }
    }
    raw.push(p.source.clone());
    raw.push(p.target.clone());
    if let Some(ic) = ic {
        raw.push(ic.m.clone());
        raw.push(ic.bb.obj.clone());
    }
    raw.extend(connected_presheaves(&base, bound));
    let mut family = Vec::new();
    let mut pieces: Vec<Arc<Presheaf>> = raw.iter().flat_map(components).collect();
    pieces.sort_by_key(|x| x.total_size());
    for x in pieces {
        push_unique(&mut family, x);
    }
    Ok(family)
}

fn object_summary(x: &Presheaf) -> String {
    let base = x.base();
    (0..base.num_objects())
        .map(|c| format!("{}:{{{}}}", base.object_name(c), x.labels(c).join(",")))
        .collect::<Vec<_>>()
        .join(" ")
}

/// Refutes univalence by pulling `p` back along every `u: X → B` for `X` in
/// the family and counting cartesian squares from `u*p` into `p`.
pub fn check_bruteforce(p: &PresheafMap, family: &[Arc<Presheaf>], family_bound: usize) -> Result<BruteVerdict> {
    let mut maps_tested = 0;
    for (k, x) in family.iter().enumerate() {
        for u in all_maps(x, &p.target) {
            maps_tested += 1;
            let q = pullback(&u, p)?.proj1;
            if count_cart_squares(&q, p, 2) >= 2 {
                let squares = first_cart_squares(&q, p, 2)
                    .iter()
                    .map(|s| SquareLabels { u: map_labels(&s.u), v: map_labels(&s.v) })
                    .collect();
                return Ok(BruteVerdict {
                    pass: false,
                    family_bound,
                    objects_tested: k + 1,
                    maps_tested,
                    witness: Some(BruteWitness {
                        test_object: object_summary(x),
                        q: format!("pullback along {}", map_labels(&u).join(", ")),
                        squares,
                    }),
                });
            }
        }
    }
    Ok(BruteVerdict { pass: true, family_bound, objects_tested: family.len(), maps_tested, witness: None })
}

pub fn check_completeness_of(ic: &InternalCat) -> Result<CompletenessOutcome> {
    let nerve = nerve_of_internal(ic)?;
    let v = check_complete(&nerve)?;
    let iso = iso_object(ic)?;
    Ok(CompletenessOutcome {
        pass: v.pass,
        pullback_size: v.pullback_size,
        level0_size: v.level0_size,
        witness: v.witness.map(|w| format!("{} at {}", w.element, w.stage)),
        section_iso: iso.section.is_iso(),
        iso_object_size: iso.size(),
    })
}

pub fn check_completeness(p: &PresheafMap) -> Result<CompletenessOutcome> {
    check_completeness_of(&build_internal_cat(p)?)
}

/// For a mono `p`: univalent iff its characteristic map `B → Ω` is mono.
pub fn check_omega(p: &PresheafMap) -> OmegaOutcome {
    if !p.is_mono() {
        return OmegaOutcome::NotApplicable { reason: "not mono".into() };
    }
    let omega = SubobjectClassifier::new(p.target.base());
    let chi = omega.classify(p).expect("p is mono");
    if chi.is_mono() {
        return OmegaOutcome::Pass;
    }
    let b = &p.target;
    let base = b.base();
    for c in 0..base.num_objects() {
        for x in 0..b.size(c) {
            for y in x + 1..b.size(c) {
                if chi.apply(c, x) == chi.apply(c, y) {
                    return OmegaOutcome::Fail {
                        witness: format!("χ identifies {} and {} at {}", b.label(c, x), b.label(c, y), base.object_name(c)),
                    };
                }
            }
        }
    }
    unreachable!("a non-mono map identifies two elements")
}

/// Finite sets only: every fiber is rigid (at most one point) and no two
/// points of `B` have fibers of the same size.
pub fn finset_fiber_criterion(p: &PresheafMap) -> Result<FiberCriterion> {
    let base = p.target.base();
    if base.num_objects() != 1 || base.num_morphisms() != 1 {
        return Err(Error::InvalidArgument("the fiber criterion is stated for finite sets".into()));
    }
    let sizes = &p.fiber_sizes()[0];
    let b = &p.target;
    if let Some(x) = sizes.iter().position(|&n| n >= 2) {
        return Ok(FiberCriterion {
            pass: false,
            reason: Some(format!("the fiber over {} has a non-trivial automorphism", b.label(0, x))),
        });
    }
    for x in 0..sizes.len() {
        if let Some(y) = (x + 1..sizes.len()).find(|&y| sizes[y] == sizes[x]) {
            return Ok(FiberCriterion {
                pass: false,
                reason: Some(format!("{} and {} have isomorphic fibers", b.label(0, x), b.label(0, y))),
            });
        }
    }
    Ok(FiberCriterion { pass: true, reason: None })
}

fn is_finset(base: &FinCat) -> bool {
    base.num_objects() == 1 && base.num_morphisms() == 1
}

/// Runs the requested checks and records every disagreement.
pub fn check(p: &PresheafMap, method: Method, family_bound: usize) -> Result<UnivalenceVerdict> {
    let run = |m: Method| method == Method::All || method == m;
    let ic = if run(Method::Brute) || run(Method::Complete) { Some(build_internal_cat(p)?) } else { None };
    let completeness = if run(Method::Complete) { Some(check_completeness_of(ic.as_ref().expect("built"))?) } else { None };
    let bruteforce = if run(Method::Brute) {
        let family = default_family(p, ic.as_ref(), family_bound)?;
        Some(check_bruteforce(p, &family, family_bound)?)
    } else {
        None
    };
    let omega = run(Method::Omega).then(|| check_omega(p));
    let fiber_criterion =
        if method == Method::All && is_finset(p.target.base()) { Some(finset_fiber_criterion(p)?) } else { None };

    let mut conflicts = Vec::new();
    let mut refuter_gaps = Vec::new();
    if let Some(c) = &completeness {
        if c.pass != c.section_iso {
            conflicts.push("completeness square and iso-object section disagree".into());
        }
        if let Some(b) = &bruteforce {
            if !b.pass && c.pass {
                conflicts.push("refuter found two squares but n(p) is complete".into());
            }
            if b.pass && !c.pass {
                refuter_gaps.push(format!("n(p) is incomplete; no witness within family bound {}", b.family_bound));
            }
        }
        if let Some(v) = omega.as_ref().and_then(OmegaOutcome::verdict) {
            if v != c.pass {
                conflicts.push("classifier check disagrees with completeness".into());
            }
        }
        if let Some(f) = &fiber_criterion {
            if f.pass != c.pass {
                conflicts.push("fiber criterion disagrees with completeness".into());
            }
        }
    }
    Ok(UnivalenceVerdict {
        morphism: map_name(p),
        bruteforce,
        completeness,
        omega,
        fiber_criterion,
        conflicts,
        refuter_gaps,
    })
}

/// `∅`, `1`, `{0,1}`, … for finite sets; orbit sizes such as `1+2` for
/// `G`-sets; the size vector otherwise.
pub fn object_name(x: &Arc<Presheaf>) -> String {
    let base = x.base();
    if x.total_size() == 0 {
        return "∅".into();
    }
    if is_finset(base) {
        return match x.size(0) {
            1 => "1".into(),
            n => format!("{{{}}}", (0..n).map(|i| i.to_string()).collect::<Vec<_>>().join(",")),
        };
    }
    if group_of_delooping(base).is_some() {
        let mut sizes: Vec<usize> = components(x).iter().map(|c| c.total_size()).collect();
        sizes.sort_unstable();
        return sizes.iter().map(|s| s.to_string()).collect::<Vec<_>>().join("+");
    }
    format!("{:?}", x.sizes())
}

pub fn map_name(p: &PresheafMap) -> String {
    format!("{}→{}", object_name(&p.source), object_name(&p.target))
}

/// The ambient category for enumeration.
#[derive(Debug, Clone)]
pub enum Ambient {
    FinSet,
    Gset { name: String, group: FinGroup },
    Presheaf(Arc<FinCat>),
}

impl Ambient {
    pub fn name(&self) -> String {
        match self {
            Ambient::FinSet => "finset".into(),
            Ambient::Gset { name, .. } => format!("gset:{name}"),
            Ambient::Presheaf(_) => "presheaf".into(),
        }
    }

    /// Objects with at most `bound` elements, one per isomorphism class.
    pub fn objects(&self, bound: usize) -> Vec<Arc<Presheaf>> {
        match self {
            Ambient::FinSet => finset_objects(bound),
            Ambient::Gset { name, group } => GsetCorpus::new(name.clone(), group.clone()).objects(bound),
            Ambient::Presheaf(base) => presheaves_up_to_iso(base, bound),
        }
    }

    pub fn maps(&self, bound: usize) -> Vec<PresheafMap> {
        maps_up_to_iso(&self.objects(bound), |_, _| true)
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct UnivElement {
    pub name: String,
    pub fibers: Vec<Vec<usize>>,
    #[serde(skip)]
    pub map: PresheafMap,
}

#[derive(Debug, Clone, Serialize, PartialEq, Eq)]
pub struct Join {
    pub a: usize,
    pub b: usize,
    /// `None` when `a` and `b` have a common upper bound but no least one.
    pub join: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct UnivPoset {
    pub ambient: String,
    pub bound: usize,
    pub candidates: usize,
    pub elements: Vec<UnivElement>,
    /// `(i, j)` with `i ≤ j`, including `i = j`.
    pub leq: Vec<(usize, usize)>,
    /// Covering relations.
    pub hasse: Vec<(usize, usize)>,
    pub joins: Vec<Join>,
    /// Broken poset laws, including pairs with two cartesian squares.
    pub violations: Vec<String>,
}

impl UnivPoset {
    pub fn le(&self, i: usize, j: usize) -> bool {
        self.leq.contains(&(i, j))
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.elements.iter().position(|e| e.name == name)
    }
}

/// All univalent maps between objects of size `≤ bound`, ordered by the
/// existence of a cartesian square.
pub fn enumerate_univ(ambient: &Ambient, bound: usize) -> Result<UnivPoset> {
    let maps = ambient.maps(bound);
    let verdicts: Vec<bool> = maps
        .par_iter()
        .map(|p| check_completeness(p).map(|c| c.pass))
        .collect::<Result<_>>()?;
    let mut univ: Vec<PresheafMap> = maps.iter().zip(&verdicts).filter(|(_, &v)| v).map(|(p, _)| p.clone()).collect();
    univ.sort_by_key(|p| (p.target.total_size(), p.source.total_size()));
    let n = univ.len();
    let counts: Vec<Vec<usize>> = (0..n)
        .into_par_iter()
        .map(|i| (0..n).map(|j| count_cart_squares(&univ[i], &univ[j], 2)).collect())
        .collect();
    let mut violations = Vec::new();
    let le = |i: usize, j: usize| counts[i][j] >= 1;
    for i in 0..n {
        for j in 0..n {
            if counts[i][j] >= 2 {
                violations.push(format!("{} has two cartesian squares into {}", map_name(&univ[i]), map_name(&univ[j])));
            }
            if i != j && le(i, j) && le(j, i) {
                violations.push(format!("{} and {} are mutually below each other", map_name(&univ[i]), map_name(&univ[j])));
            }
            for k in 0..n {
                if le(i, j) && le(j, k) && !le(i, k) {
                    violations.push(format!("transitivity fails at {i}, {j}, {k}"));
                }
            }
        }
        if !le(i, i) {
            violations.push(format!("{} is not below itself", map_name(&univ[i])));
        }
    }
    let leq: Vec<(usize, usize)> = (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).filter(|&(i, j)| le(i, j)).collect();
    let hasse = leq
        .iter()
        .copied()
        .filter(|&(i, j)| i != j && !(0..n).any(|k| k != i && k != j && le(i, k) && le(k, j)))
        .collect();
    let mut joins = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            let upper: Vec<usize> = (0..n).filter(|&k| le(a, k) && le(b, k)).collect();
            if upper.is_empty() {
                continue;
            }
            let join = upper.iter().copied().find(|&k| upper.iter().all(|&m| le(k, m)));
            joins.push(Join { a, b, join });
        }
    }
    let elements = univ
        .into_iter()
        .map(|p| {
            let mut fibers = p.fiber_sizes();
            fibers.iter_mut().for_each(|f| f.sort_unstable());
            UnivElement { name: map_name(&p), fibers, map: p }
        })
        .collect();
    Ok(UnivPoset { ambient: ambient.name(), bound, candidates: maps.len(), elements, leq, hasse, joins, violations })
}

/// Internal preorder (`M → B × B` mono) whose relation is antisymmetric at
/// every stage.
pub fn is_internal_poset(ic: &InternalCat) -> bool {
    ic.is_internal_preorder()
        && (0..ic.b().base().num_objects()).all(|c| {
            let r = ic.relation(c);
            r.iter().all(|&(x, y)| x == y || r.binary_search(&(y, x)).is_err())
        })
}

#[derive(Debug, Clone, Serialize, Default)]
pub struct StabilityReport {
    pub checks: usize,
    pub failures: Vec<String>,
}

impl StabilityReport {
    fn expect(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.checks += 1;
        if !ok {
            self.failures.push(what());
        }
    }
}

/// Pullback stability and truncation laws over the given maps, with test
/// maps into `B` drawn from `test_objects`:
/// pulling a univalent map back along a mono gives a univalent map below
/// it, pulling back along a non-mono does not, an identity is univalent
/// exactly when its object is subterminal, and for internal preorders
/// univalence is being an internal poset.
pub fn stability_suite(maps: &[PresheafMap], test_objects: &[Arc<Presheaf>]) -> Result<StabilityReport> {
    let reports: Vec<StabilityReport> = maps
        .par_iter()
        .map(|p| -> Result<StabilityReport> {
            let mut r = StabilityReport::default();
            let ic = build_internal_cat(p)?;
            let univalent = check_completeness_of(&ic)?.pass;
            if ic.is_internal_preorder() {
                r.expect(univalent == is_internal_poset(&ic), || {
                    format!("{}: internal preorder, poset ≠ univalent", map_name(p))
                });
            }
            if !univalent {
                return Ok(r);
            }
            for m in subobjects(&p.target) {
                let q = pullback(&m, p)?.proj1;
                r.expect(check_completeness(&q)?.pass, || {
                    format!("{} pulled back along a mono is not univalent", map_name(p))
                });
                r.expect(count_cart_squares(&q, p, 1) == 1, || format!("pullback of {} is not below it", map_name(p)));
            }
            for d in test_objects {
                for u in all_maps(d, &p.target).into_iter().filter(|u| !u.is_mono()) {
                    let q = pullback(&u, p)?.proj1;
                    r.expect(!check_completeness(&q)?.pass, || {
                        format!("{} pulled back along a non-mono from {} is univalent", map_name(p), object_name(d))
                    });
                }
            }
            Ok(r)
        })
        .collect::<Result<_>>()?;
    let mut out = StabilityReport::default();
    for r in reports {
        out.checks += r.checks;
        out.failures.extend(r.failures);
    }
    for b in test_objects {
        let id = PresheafMap::identity(b);
        let one = terminal(b.base());
        let subterminal = to_terminal(b, &one).is_mono();
        out.expect(check_completeness(&id)?.pass == subterminal, || {
            format!("identity on {} vs subterminality", object_name(b))
        });
    }
    Ok(out)
}

/// External automorphisms: equivariant bijections `S → S`.
pub fn external_automorphisms(x: &Arc<Presheaf>) -> usize {
    HomSearch::new(x, x).injective().count(usize::MAX)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::{finset_fn, z2_corpus};

    fn verdict(p: &PresheafMap) -> UnivalenceVerdict {
        check(p, Method::All, DEFAULT_FAMILY_BOUND).unwrap()
    }

    #[test]
    fn finset_examples() {
        let v = verdict(&finset_fn(0, 1, &[]));
        assert_eq!(v.univalent(), Some(true));
        assert!(v.bruteforce.as_ref().unwrap().pass);
        let v = verdict(&finset_fn(2, 1, &[0, 0]));
        assert_eq!(v.univalent(), Some(false));
        let w = v.bruteforce.unwrap().witness.unwrap();
        assert_eq!(w.squares.len(), 2);
        assert_eq!(w.squares[0].u, w.squares[1].u);
        let v = verdict(&finset_fn(2, 2, &[0, 1]));
        assert_eq!(v.univalent(), Some(false));
        assert!(!v.fiber_criterion.unwrap().pass);
        assert!(matches!(v.omega, Some(OmegaOutcome::Fail { .. })));
        let v = verdict(&finset_fn(1, 2, &[1]));
        assert_eq!(v.univalent(), Some(true));
        assert!(matches!(v.omega, Some(OmegaOutcome::Pass)));
        assert!(v.conflicts.is_empty() && v.refuter_gaps.is_empty());
    }

    #[test]
    fn mono_into_three_points_is_not_univalent() {
        let v = verdict(&finset_fn(1, 3, &[0]));
        assert_eq!(v.univalent(), Some(false));
        assert!(matches!(v.omega, Some(OmegaOutcome::Fail { .. })));
    }

    #[test]
    fn set_table() {
        let poset = enumerate_univ(&Ambient::FinSet, 3).unwrap();
        let names: Vec<&str> = poset.elements.iter().map(|e| e.name.as_str()).collect();
        assert_eq!(names, ["∅→∅", "∅→1", "1→1", "1→{0,1}"]);
        assert!(poset.violations.is_empty());
        assert_eq!(poset.hasse, [(0, 1), (0, 2), (1, 3), (2, 3)]);
        assert!(poset.joins.iter().all(|j| j.join.is_some()));
    }

    #[test]
    fn components_of_sums() {
        let z2 = z2_corpus();
        for x in z2.objects(5) {
            let parts = components(&x);
            assert_eq!(parts.iter().map(|c| c.total_size()).sum::<usize>(), x.total_size());
            assert!(parts.iter().all(|c| components(c).len() == 1));
        }
    }

    #[test]
    fn delooping_round_trip() {
        let z2 = z2_corpus();
        let g = group_of_delooping(&z2.base).unwrap();
        assert_eq!(g.order(), 2);
        assert!(group_of_delooping(&crate::fincat::Preorder::generated_by(vec!["a".into(), "b".into()], &[(0, 1)]).to_category()).is_none());
    }
}
