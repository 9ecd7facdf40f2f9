//! Finite presheaves on a [`FinCat`] and natural transformations between them.
//!
//! A presheaf stores, for every object `c`, a list of element labels and, for
//! every morphism `f: c → d`, the restriction function `X(d) → X(c)`.
//! Elements are addressed by their index inside `X(c)`.

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::fincat::FinCat;

pub mod cart;
pub mod elements;
pub mod exponential;
pub mod gset;
pub mod hom;
pub mod limits;
pub mod omega;

pub use cart::{count_cart_squares, enumerate_cart_squares, CartSquare};
pub use elements::{Elements, HomOverBase, SliceTransport};
pub use exponential::{representable, Exponential};
pub use hom::{all_maps, find_iso, find_iso_over, HomSearch};
pub use limits::{coproduct, equalizer, initial, product, pullback, terminal, Coproduct, Pullback};
pub use omega::SubobjectClassifier;

#[derive(Clone, PartialEq, Eq)]
pub struct Presheaf {
    base: Arc<FinCat>,
    labels: Vec<Vec<String>>,
    // action[f][x] for f: c → d and x ∈ X(d) is X(f)(x) ∈ X(c)
    action: Vec<Vec<usize>>,
}

impl fmt::Debug for Presheaf {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Presheaf").field("sizes", &self.sizes()).finish()
    }
}

impl Presheaf {
    /// Builds a presheaf, checking sizes and functoriality.
    pub fn new(base: Arc<FinCat>, labels: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Result<Self> {
        let x = Presheaf { base, labels, action };
        x.check()?;
        Ok(x)
    }

    /// Builds a presheaf whose laws hold by construction. Checked in debug builds.
    pub fn from_parts(base: Arc<FinCat>, labels: Vec<Vec<String>>, action: Vec<Vec<usize>>) -> Self {
        let x = Presheaf { base, labels, action };
        debug_assert!(x.check().is_ok(), "{:?}", x.check());
        x
    }

    fn check(&self) -> Result<()> {
        let cat = &self.base;
        let bad = |m: String| Err(Error::InvalidPresheaf(m));
        if self.labels.len() != cat.num_objects() {
            return bad("one element list per object required".into());
        }
        if self.action.len() != cat.num_morphisms() {
            return bad("one action per morphism required".into());
        }
        for (c, labels) in self.labels.iter().enumerate() {
            let mut seen = std::collections::HashSet::new();
            for l in labels {
                if !seen.insert(l) {
                    return bad(format!("duplicate element `{l}` at `{}`", cat.object_name(c)));
                }
            }
        }
        for f in 0..cat.num_morphisms() {
            let (c, d) = (cat.src(f), cat.tgt(f));
            let a = &self.action[f];
            if a.len() != self.size(d) || a.iter().any(|&x| x >= self.size(c)) {
                return bad(format!("action of `{}` has the wrong shape", cat.morphism_name(f)));
            }
        }
        for c in 0..cat.num_objects() {
            let id = cat.identity(c);
            if self.action[id].iter().enumerate().any(|(i, &j)| i != j) {
                return bad(format!("identity of `{}` does not act trivially", cat.object_name(c)));
            }
        }
        // X(then ∘ first) = X(first) ∘ X(then)
        for first in 0..cat.num_morphisms() {
            let d = cat.tgt(first);
            for e in 0..cat.num_objects() {
                for &then in cat.hom(d, e) {
                    let composite = cat.compose(first, then);
                    let lhs = &self.action[composite];
                    let ok = (0..self.size(e))
                        .all(|x| lhs[x] == self.action[first][self.action[then][x]]);
                    if !ok {
                        return bad(format!(
                            "functoriality fails on (`{}`, `{}`)",
                            cat.morphism_name(first),
                            cat.morphism_name(then)
                        ));
                    }
                }
            }
        }
        Ok(())
    }

    pub fn base(&self) -> &Arc<FinCat> {
        &self.base
    }

    pub fn size(&self, c: usize) -> usize {
        self.labels[c].len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.labels.iter().map(Vec::len).collect()
    }

    pub fn total_size(&self) -> usize {
        self.labels.iter().map(Vec::len).sum()
    }

    pub fn label(&self, c: usize, x: usize) -> &str {
        &self.labels[c][x]
    }

    pub fn labels(&self, c: usize) -> &[String] {
        &self.labels[c]
    }

    pub fn element_id(&self, c: usize, label: &str) -> Result<usize> {
        self.labels[c]
            .iter()
            .position(|l| l == label)
            .ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    /// `X(f)(x)` for `f: c → d`, `x ∈ X(d)`.
    pub fn restrict(&self, f: usize, x: usize) -> usize {
        self.action[f][x]
    }

    pub fn action(&self, f: usize) -> &[usize] {
        &self.action[f]
    }

    pub fn same_base(&self, other: &Presheaf) -> bool {
        Arc::ptr_eq(&self.base, &other.base) || *self.base == *other.base
    }

    pub fn relabelled(&self, labels: Vec<Vec<String>>) -> Presheaf {
        Presheaf::from_parts(self.base.clone(), labels, self.action.clone())
    }

    /// Constant presheaf on a set with identity actions.
    pub fn constant(base: Arc<FinCat>, labels: Vec<String>) -> Presheaf {
        let n = labels.len();
        let action = (0..base.num_morphisms()).map(|_| (0..n).collect()).collect();
        let labels = vec![labels; base.num_objects()];
        Presheaf::from_parts(base, labels, action)
    }

    /// The elements of a presheaf as `(object, element)` pairs.
    pub fn elements(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.labels.len()).flat_map(move |c| (0..self.size(c)).map(move |x| (c, x)))
    }
}

/// A natural transformation between presheaves on the same base.
#[derive(Clone, PartialEq, Eq)]
pub struct PresheafMap {
    pub source: Arc<Presheaf>,
    pub target: Arc<Presheaf>,
    pub components: Vec<Vec<usize>>,
}

impl fmt::Debug for PresheafMap {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("PresheafMap").field("components", &self.components).finish()
    }
}

impl PresheafMap {
    /// Builds a map, checking shapes and naturality.
    pub fn new(source: Arc<Presheaf>, target: Arc<Presheaf>, components: Vec<Vec<usize>>) -> Result<Self> {
        if !source.same_base(&target) {
            return Err(Error::BaseMismatch);
        }
        let m = PresheafMap { source, target, components };
        m.check()?;
        Ok(m)
    }

    /// Builds a map that is natural by construction. Checked in debug builds.
    pub fn from_parts(source: Arc<Presheaf>, target: Arc<Presheaf>, components: Vec<Vec<usize>>) -> Self {
        let m = PresheafMap { source, target, components };
        debug_assert!(m.check().is_ok(), "{:?}", m.check());
        m
    }

    fn check(&self) -> Result<()> {
        let cat = self.source.base();
        if self.components.len() != cat.num_objects() {
            return Err(Error::NotNatural("one component per object required".into()));
        }
        for c in 0..cat.num_objects() {
            let comp = &self.components[c];
            if comp.len() != self.source.size(c) || comp.iter().any(|&y| y >= self.target.size(c)) {
                return Err(Error::NotNatural(format!(
                    "component at `{}` has the wrong shape",
                    cat.object_name(c)
                )));
            }
        }
        if let Some((f, x)) = self.naturality_failure() {
            return Err(Error::NotNatural(format!(
                "square for `{}` fails at element `{}`",
                cat.morphism_name(f),
                self.source.label(cat.tgt(f), x)
            )));
        }
        Ok(())
    }

    /// First `(f, x)` with `α_c(X(f)x) ≠ Y(f)α_d(x)`.
    pub fn naturality_failure(&self) -> Option<(usize, usize)> {
        let cat = self.source.base();
        for f in 0..cat.num_morphisms() {
            let (c, d) = (cat.src(f), cat.tgt(f));
            for x in 0..self.source.size(d) {
                let lhs = self.components[c][self.source.restrict(f, x)];
                let rhs = self.target.restrict(f, self.components[d][x]);
                if lhs != rhs {
                    return Some((f, x));
                }
            }
        }
        None
    }

    pub fn identity(x: &Arc<Presheaf>) -> PresheafMap {
        let components = (0..x.base().num_objects()).map(|c| (0..x.size(c)).collect()).collect();
        PresheafMap { source: x.clone(), target: x.clone(), components }
    }

    /// The map `x ↦ value(c, x)`, which must be natural.
    pub fn from_fn(
        source: &Arc<Presheaf>,
        target: &Arc<Presheaf>,
        mut value: impl FnMut(usize, usize) -> usize,
    ) -> PresheafMap {
        let components = (0..source.base().num_objects())
            .map(|c| (0..source.size(c)).map(|x| value(c, x)).collect())
            .collect();
        PresheafMap::from_parts(source.clone(), target.clone(), components)
    }

    pub fn apply(&self, c: usize, x: usize) -> usize {
        self.components[c][x]
    }

    /// `then ∘ self`.
    pub fn then(&self, then: &PresheafMap) -> PresheafMap {
        debug_assert!(self.target.size_eq(&then.source));
        let components = self
            .components
            .iter()
            .enumerate()
            .map(|(c, comp)| comp.iter().map(|&y| then.components[c][y]).collect())
            .collect();
        PresheafMap { source: self.source.clone(), target: then.target.clone(), components }
    }

    pub fn is_mono(&self) -> bool {
        self.components.iter().enumerate().all(|(c, comp)| {
            let mut seen = vec![false; self.target.size(c)];
            comp.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
        })
    }

    pub fn is_epi(&self) -> bool {
        self.components.iter().enumerate().all(|(c, comp)| {
            let mut seen = vec![false; self.target.size(c)];
            for &y in comp {
                seen[y] = true;
            }
            seen.into_iter().all(|b| b)
        })
    }

    pub fn is_iso(&self) -> bool {
        self.is_mono() && self.is_epi()
    }

    pub fn inverse(&self) -> Option<PresheafMap> {
        if !self.is_iso() {
            return None;
        }
        let components = self
            .components
            .iter()
            .map(|comp| {
                let mut inv = vec![0; comp.len()];
                for (x, &y) in comp.iter().enumerate() {
                    inv[y] = x;
                }
                inv
            })
            .collect();
        Some(PresheafMap { source: self.target.clone(), target: self.source.clone(), components })
    }

    /// Image of the map at object `c` as a membership vector.
    pub fn image(&self, c: usize) -> Vec<bool> {
        let mut seen = vec![false; self.target.size(c)];
        for &y in &self.components[c] {
            seen[y] = true;
        }
        seen
    }

    /// Elements of the source over `y ∈ target(c)`.
    pub fn fiber(&self, c: usize, y: usize) -> Vec<usize> {
        (0..self.source.size(c)).filter(|&x| self.components[c][x] == y).collect()
    }

    /// Fiber sizes over every target element, indexed `[c][y]`.
    pub fn fiber_sizes(&self) -> Vec<Vec<usize>> {
        self.components
            .iter()
            .enumerate()
            .map(|(c, comp)| {
                let mut counts = vec![0; self.target.size(c)];
                for &y in comp {
                    counts[y] += 1;
                }
                counts
            })
            .collect()
    }
}

impl Presheaf {
    fn size_eq(&self, other: &Presheaf) -> bool {
        self.sizes() == other.sizes()
    }
}

/// Lookup from labels to indices, built once per presheaf when needed.
pub struct LabelIndex {
    maps: Vec<HashMap<String, usize>>,
}

impl LabelIndex {
    pub fn new(x: &Presheaf) -> Self {
        let maps = (0..x.base().num_objects())
            .map(|c| x.labels(c).iter().enumerate().map(|(i, l)| (l.clone(), i)).collect())
            .collect();
        LabelIndex { maps }
    }

    pub fn get(&self, c: usize, label: &str) -> Option<usize> {
        self.maps[c].get(label).copied()
    }
}

/// `(a,b,…)` label of a tuple of elements.
pub fn tuple_label<S: AsRef<str>>(parts: &[S]) -> String {
    let mut s = String::from("(");
    for (i, p) in parts.iter().enumerate() {
        if i > 0 {
            s.push(',');
        }
        s.push_str(p.as_ref());
    }
    s.push(')');
    s
}

/// Characterizations of truncation levels of a map.
pub mod truncation {
    use super::*;

    /// (-2)-truncated: an isomorphism.
    pub fn is_neg2_truncated(f: &PresheafMap) -> bool {
        f.is_iso()
    }

    /// (-1)-truncated via the diagonal: `X → X ×_Y X` is an isomorphism.
    pub fn diagonal_is_iso(f: &PresheafMap) -> bool {
        let kp = pullback(f, f).expect("a map shares its own codomain");
        let diag = kp.factor(&PresheafMap::identity(&f.source), &PresheafMap::identity(&f.source));
        diag.is_iso()
    }

    /// (-1)-truncated via the square with sides `Δ_X`, `Δ_Y`, `f`, `f×f`
    /// being a pullback.
    pub fn diagonal_square_is_pullback(f: &PresheafMap) -> bool {
        let x = &f.source;
        let y = &f.target;
        let xx = product(x, x).expect("same base");
        let yy = product(y, y).expect("same base");
        let id_y = PresheafMap::identity(y);
        let diag_y = yy.factor(&id_y, &id_y);
        let ff = yy.factor(&xx.proj1.then(f), &xx.proj2.then(f));
        let pb = pullback(&diag_y, &ff).expect("same target");
        let id_x = PresheafMap::identity(x);
        let diag_x = xx.factor(&id_x, &id_x);
        let comparison = pb.factor(f, &diag_x);
        comparison.is_iso()
    }

    pub fn is_neg1_truncated(f: &PresheafMap) -> bool {
        let pointwise = f.is_mono();
        let diagonal = diagonal_is_iso(f);
        let square = diagonal_square_is_pullback(f);
        assert!(
            pointwise == diagonal && diagonal == square,
            "mono characterizations disagree: pointwise={pointwise} diagonal={diagonal} square={square}"
        );
        pointwise
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::{terminal_category, Preorder};

    pub(crate) fn set(n: usize) -> Arc<Presheaf> {
        let base = Arc::new(terminal_category());
        Arc::new(Presheaf::constant(base, (0..n).map(|i| i.to_string()).collect()))
    }

    #[test]
    fn functoriality_is_checked() {
        let base = Arc::new(
            Preorder::generated_by(vec!["0".into(), "1".into()], &[(0, 1)]).to_category(),
        );
        // X(1) = {a}, X(0) = {} cannot restrict
        let labels = vec![vec![], vec!["a".to_string()]];
        let f = base.morphism_id("0<=1").unwrap();
        let mut action = vec![Vec::new(); base.num_morphisms()];
        action[base.identity(1)] = vec![0];
        action[f] = vec![0];
        assert!(Presheaf::new(base, labels, action).is_err());
    }

    #[test]
    fn truncation_examples() {
        let one = set(1);
        let two = set(2);
        let id = PresheafMap::identity(&two);
        assert!(truncation::is_neg2_truncated(&id));
        assert!(truncation::is_neg1_truncated(&id));
        let incl = PresheafMap::new(one.clone(), two.clone(), vec![vec![1]]).unwrap();
        assert!(truncation::is_neg1_truncated(&incl));
        assert!(!truncation::is_neg2_truncated(&incl));
        let fold = PresheafMap::new(two, one, vec![vec![0, 0]]).unwrap();
        assert!(!truncation::is_neg1_truncated(&fold));
    }

    #[test]
    fn naturality_is_checked() {
        let base = Arc::new(crate::fincat::one_object_category(
            &["e".into(), "s".into()],
            |a, b| a ^ b,
        ).unwrap());
        let swap = Presheaf::new(
            base.clone(),
            vec![vec!["x".into(), "y".into()]],
            vec![vec![0, 1], vec![1, 0]],
        )
        .unwrap();
        let fixed = Presheaf::new(
            base,
            vec![vec!["p".into(), "q".into()]],
            vec![vec![0, 1], vec![0, 1]],
        )
        .unwrap();
        let (swap, fixed) = (Arc::new(swap), Arc::new(fixed));
        assert!(PresheafMap::new(swap.clone(), fixed.clone(), vec![vec![0, 1]]).is_err());
        assert!(PresheafMap::new(swap, fixed, vec![vec![1, 1]]).is_ok());
    }
}
