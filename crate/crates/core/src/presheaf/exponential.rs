//! Representables and exponentials `Z^Y`, with `(Z^Y)(c) = Nat(y(c) × Y, Z)`.

use std::collections::HashMap;
use std::sync::Arc;

use super::hom::HomSearch;
use super::limits::{product, Pullback};
use super::{Presheaf, PresheafMap};
use crate::error::{Error, Result};
use crate::fincat::FinCat;

/// `y(c) = Hom(-, c)`; elements at `d` are the morphisms `d → c`, and
/// `g: d' → d` acts by precomposition.
pub fn representable(base: &Arc<FinCat>, c: usize) -> Arc<Presheaf> {
    let n = base.num_objects();
    let labels = (0..n)
        .map(|d| base.hom(d, c).iter().map(|&h| base.morphism_name(h).to_string()).collect())
        .collect();
    let action = (0..base.num_morphisms())
        .map(|g| {
            let d = base.tgt(g);
            base.hom(d, c).iter().map(|&h| base.hom_position(base.compose(g, h))).collect()
        })
        .collect();
    Arc::new(Presheaf::from_parts(base.clone(), labels, action))
}

/// `Z^Y` with its tables of natural transformations.
#[derive(Debug, Clone)]
pub struct Exponential {
    pub obj: Arc<Presheaf>,
    pub y: Arc<Presheaf>,
    pub z: Arc<Presheaf>,
    /// `prods[c]` is `y(c) × Y`.
    prods: Vec<Pullback>,
    tables: Vec<Vec<Vec<Vec<usize>>>>,
    index: Vec<HashMap<Vec<Vec<usize>>, usize>>,
}

fn table_label(table: &[Vec<usize>]) -> String {
    let parts: Vec<String> = table
        .iter()
        .map(|comp| comp.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("."))
        .collect();
    format!("<{}>", parts.join("|"))
}

impl Exponential {
    pub fn new(y: &Arc<Presheaf>, z: &Arc<Presheaf>) -> Result<Exponential> {
        if !y.same_base(z) {
            return Err(Error::BaseMismatch);
        }
        let base = y.base().clone();
        let n = base.num_objects();
        let mut prods = Vec::with_capacity(n);
        let mut tables = Vec::with_capacity(n);
        let mut index = Vec::with_capacity(n);
        for c in 0..n {
            let prod = product(&representable(&base, c), y)?;
            let ts = HomSearch::new(&prod.obj, z).collect();
            index.push(ts.iter().enumerate().map(|(i, t)| (t.clone(), i)).collect());
            tables.push(ts);
            prods.push(prod);
        }
        let mut exp = Exponential {
            obj: y.clone(),
            y: y.clone(),
            z: z.clone(),
            prods,
            tables,
            index,
        };
        let labels = exp.tables.iter().map(|ts| ts.iter().map(|t| table_label(t)).collect()).collect();
        let action = (0..base.num_morphisms())
            .map(|g| {
                let (c2, c) = (base.src(g), base.tgt(g));
                (0..exp.tables[c].len())
                    .map(|phi| {
                        exp.element_from(c2, |d, h, yy| {
                            let moved = base.compose(h, g);
                            let k = exp.prods[c].index_of(d, base.hom_position(moved), yy).expect("pair exists");
                            exp.tables[c][phi][d][k]
                        })
                        .expect("restriction of a natural transformation is natural")
                    })
                    .collect()
            })
            .collect();
        exp.obj = Arc::new(Presheaf::from_parts(base, labels, action));
        Ok(exp)
    }

    pub fn base(&self) -> &Arc<FinCat> {
        self.y.base()
    }

    /// The transformation behind `φ ∈ (Z^Y)(c)`, indexed `[d][pair]` over `y(c) × Y`.
    pub fn table(&self, c: usize, phi: usize) -> &[Vec<usize>] {
        &self.tables[c][phi]
    }

    pub fn product_with_representable(&self, c: usize) -> &Pullback {
        &self.prods[c]
    }

    /// The element of `(Z^Y)(c)` whose value on `(h: d → c, y ∈ Y(d))` is
    /// `value(d, h, y)`, or `None` if that assignment is not natural.
    pub fn element_from(&self, c: usize, mut value: impl FnMut(usize, usize, usize) -> usize) -> Option<usize> {
        let base = self.base();
        let prod = &self.prods[c];
        let table: Vec<Vec<usize>> = (0..base.num_objects())
            .map(|d| {
                prod.pairs(d)
                    .iter()
                    .map(|&(hi, yy)| value(d, base.hom(d, c)[hi], yy))
                    .collect()
            })
            .collect();
        self.index[c].get(&table).copied()
    }

    /// `ev(φ, y) = φ_c(id_c, y)`.
    pub fn eval(&self, c: usize, phi: usize, y: usize) -> usize {
        let id_pos = self.base().hom_position(self.base().identity(c));
        let k = self.prods[c].index_of(c, id_pos, y).expect("pair exists");
        self.tables[c][phi][c][k]
    }

    /// The counit `Z^Y × Y → Z` on the given product.
    pub fn evaluation(&self, prod: &Pullback) -> PresheafMap {
        let components = (0..self.base().num_objects())
            .map(|c| prod.pairs(c).iter().map(|&(phi, y)| self.eval(c, phi, y)).collect())
            .collect();
        PresheafMap::from_parts(prod.obj.clone(), self.z.clone(), components)
    }

    /// Transpose of `m: A × Y → Z` (with `prod` the product `A × Y`).
    pub fn transpose(&self, prod: &Pullback, m: &PresheafMap) -> PresheafMap {
        let a = &prod.proj1.target;
        let base = self.base();
        let components = (0..base.num_objects())
            .map(|c| {
                (0..a.size(c))
                    .map(|ai| {
                        self.element_from(c, |d, h, y| {
                            let k = prod.index_of(d, a.restrict(h, ai), y).expect("pair exists");
                            m.apply(d, k)
                        })
                        .expect("transpose of a natural map is natural")
                    })
                    .collect()
            })
            .collect();
        PresheafMap::from_parts(a.clone(), self.obj.clone(), components)
    }

    /// Inverse of [`Exponential::transpose`]: `(a, y) ↦ ev(k(a), y)`.
    pub fn uncurry(&self, prod: &Pullback, k: &PresheafMap) -> PresheafMap {
        let components = (0..self.base().num_objects())
            .map(|c| prod.pairs(c).iter().map(|&(a, y)| self.eval(c, k.apply(c, a), y)).collect())
            .collect();
        PresheafMap::from_parts(prod.obj.clone(), self.z.clone(), components)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fincat::terminal_category;
    use crate::presheaf::hom::all_maps;

    fn set(n: usize) -> Arc<Presheaf> {
        let base = Arc::new(terminal_category());
        Arc::new(Presheaf::constant(base, (0..n).map(|i| i.to_string()).collect()))
    }

    #[test]
    fn finset_exponential_sizes() {
        for (a, b) in [(0, 0), (0, 2), (2, 0), (2, 3), (3, 2)] {
            let e = Exponential::new(&set(a), &set(b)).unwrap();
            assert_eq!(e.obj.sizes(), vec![(b as u32).pow(a as u32) as usize]);
        }
    }

    #[test]
    fn transpose_is_a_bijection() {
        let (a, y, z) = (set(2), set(2), set(2));
        let exp = Exponential::new(&y, &z).unwrap();
        let prod = product(&a, &y).unwrap();
        let maps = all_maps(&prod.obj, &z);
        assert_eq!(maps.len(), 16);
        let mut seen = std::collections::HashSet::new();
        for m in &maps {
            let t = exp.transpose(&prod, m);
            assert_eq!(&exp.uncurry(&prod, &t), m);
            seen.insert(t.components.clone());
        }
        assert_eq!(seen.len(), 16);
    }
}
