//! Finite groups given by multiplication tables.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod aut;
pub mod catalog;
pub mod grp;
pub mod hom;

pub use aut::{
    automorphism_tower, automorphisms, eq_bg, inn_out, is_complete, Automorphisms, Completeness,
    EqBg, InnOut, TowerStage,
};
pub use catalog::{name_of, small_groups, NamedGroup};
pub use grp::{cart_squares, grp_pullback, grp_univalence_refute, GrpPullback, RefuteVerdict};
pub use hom::{find_isomorphism, homomorphisms, is_isomorphic, GroupHom};

pub const GRP_SCHEMA: &str = "grp/v1";

#[derive(Clone, PartialEq, Eq)]
pub struct FinGroup {
    names: Vec<String>,
    // table[a * n + b] = a·b
    table: Vec<usize>,
    identity: usize,
    inverse: Vec<usize>,
}

impl fmt::Debug for FinGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FinGroup(order {})", self.order())
    }
}

impl FinGroup {
    /// Validates a multiplication table `table[a][b] = a·b`.
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<FinGroup> {
        let n = names.len();
        let bad = |m: &str| Err(Error::InvalidGroup(m.to_string()));
        if n == 0 {
            return bad("a group has at least one element");
        }
        if table.len() != n || table.iter().any(|r| r.len() != n || r.iter().any(|&x| x >= n)) {
            return bad("table must be square and closed");
        }
        if names.iter().collect::<BTreeSet<_>>().len() != n {
            return bad("duplicate element names");
        }
        let flat: Vec<usize> = table.into_iter().flatten().collect();
        let mul = |a: usize, b: usize| flat[a * n + b];
        let Some(e) = (0..n).find(|&e| (0..n).all(|a| mul(e, a) == a && mul(a, e) == a)) else {
            return bad("no identity element");
        };
        let mut inverse = vec![0; n];
        for a in 0..n {
            match (0..n).find(|&b| mul(a, b) == e && mul(b, a) == e) {
                Some(b) => inverse[a] = b,
                None => return bad("an element has no inverse"),
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = mul(a, b);
                for c in 0..n {
                    if mul(ab, c) != mul(a, mul(b, c)) {
                        return Err(Error::InvalidGroup(format!(
                            "associativity fails on ({}, {}, {})",
                            names[a], names[b], names[c]
                        )));
                    }
                }
            }
        }
        Ok(FinGroup { names, table: flat, identity: e, inverse })
    }

    pub fn trivial() -> FinGroup {
        FinGroup::cyclic(1)
    }

    /// `Z/n` with elements `0..n-1`.
    pub fn cyclic(n: usize) -> FinGroup {
        let names = (0..n).map(|i| i.to_string()).collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        FinGroup::new(names, table).expect("cyclic group")
    }

    /// Dihedral group of order `2n`: rotations `r^i` and reflections `s r^i`.
    pub fn dihedral(n: usize) -> FinGroup {
        // element (f, i) = s^f r^i; r^i s = s r^{-i}
        let elems: Vec<(usize, usize)> = (0..2).flat_map(|f| (0..n).map(move |i| (f, i))).collect();
        let names = elems
            .iter()
            .map(|&(f, i)| if f == 0 { format!("r{i}") } else { format!("sr{i}") })
            .collect();
        let idx = |f: usize, i: usize| f * n + i;
        let table = elems
            .iter()
            .map(|&(f1, i1)| {
                elems
                    .iter()
                    .map(|&(f2, i2)| {
                        let i = if f2 == 0 { (i1 + i2) % n } else { (n - i1 % n + i2) % n };
                        idx((f1 + f2) % 2, i)
                    })
                    .collect()
            })
            .collect();
        FinGroup::new(names, table).expect("dihedral group")
    }

    /// Quaternion group `{±1, ±i, ±j, ±k}`.
    pub fn quaternion() -> FinGroup {
        // unit u ∈ {1,i,j,k} with sign; u1·u2 = sign · u3
        let units = ["1", "i", "j", "k"];
        let mult = |a: usize, b: usize| -> (bool, usize) {
            match (a, b) {
                (0, x) | (x, 0) => (false, x),
                (x, y) if x == y => (true, 0),
                (1, 2) => (false, 3),
                (2, 1) => (true, 3),
                (2, 3) => (false, 1),
                (3, 2) => (true, 1),
                (3, 1) => (false, 2),
                (1, 3) => (true, 2),
                _ => unreachable!(),
            }
        };
        let elems: Vec<(bool, usize)> = (0..4).flat_map(|u| [(false, u), (true, u)]).collect();
        let names = elems
            .iter()
            .map(|&(neg, u)| format!("{}{}", if neg { "-" } else { "" }, units[u]))
            .collect();
        let pos = |neg: bool, u: usize| 2 * u + usize::from(neg);
        let table = elems
            .iter()
            .map(|&(n1, u1)| {
                elems
                    .iter()
                    .map(|&(n2, u2)| {
                        let (n3, u3) = mult(u1, u2);
                        pos(n1 ^ n2 ^ n3, u3)
                    })
                    .collect()
            })
            .collect();
        FinGroup::new(names, table).expect("quaternion group")
    }

    /// Symmetric group on `{1..n}`.
    pub fn symmetric(n: usize) -> FinGroup {
        let perms: Vec<Vec<usize>> = crate::fincat::permutations(n);
        FinGroup::from_permutation_list(perms).expect("symmetric group")
    }

    /// The permutation group generated by the given permutations of
    /// `{0..degree-1}` (images listed 0-based).
    pub fn from_permutations(degree: usize, generators: &[Vec<usize>]) -> Result<FinGroup> {
        for g in generators {
            let mut sorted = g.clone();
            sorted.sort_unstable();
            if g.len() != degree || sorted != (0..degree).collect::<Vec<_>>() {
                return Err(Error::InvalidGroup("generator is not a permutation".into()));
            }
        }
        let id: Vec<usize> = (0..degree).collect();
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        while let Some(p) = queue.pop_front() {
            for g in generators {
                let q: Vec<usize> = (0..degree).map(|i| p[g[i]]).collect();
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        FinGroup::from_permutation_list(seen.into_iter().collect())
    }

    /// Group on a list of permutations closed under composition, with
    /// `(σ·τ)(i) = σ(τ(i))`. Names are 1-based image lists.
    pub fn from_permutation_list(perms: Vec<Vec<usize>>) -> Result<FinGroup> {
        let index: HashMap<Vec<usize>, usize> =
            perms.iter().enumerate().map(|(i, p)| (p.clone(), i)).collect();
        let names = perms
            .iter()
            .map(|p| {
                let imgs: Vec<String> = p.iter().map(|i| (i + 1).to_string()).collect();
                format!("[{}]", imgs.join(","))
            })
            .collect();
        let mut table = Vec::with_capacity(perms.len());
        for s in &perms {
            let mut row = Vec::with_capacity(perms.len());
            for t in &perms {
                let st: Vec<usize> = t.iter().map(|&i| s[i]).collect();
                match index.get(&st) {
                    Some(&k) => row.push(k),
                    None => return Err(Error::InvalidGroup("permutations not closed".into())),
                }
            }
            table.push(row);
        }
        FinGroup::new(names, table)
    }

    pub fn direct_product(a: &FinGroup, b: &FinGroup) -> FinGroup {
        let (n, m) = (a.order(), b.order());
        let names = (0..n * m)
            .map(|i| format!("({},{})", a.name(i / m), b.name(i % m)))
            .collect();
        let table = (0..n * m)
            .map(|x| {
                (0..n * m)
                    .map(|y| a.mul(x / m, y / m) * m + b.mul(x % m, y % m))
                    .collect()
            })
            .collect();
        FinGroup::new(names, table).expect("product of groups")
    }

    pub fn order(&self) -> usize {
        self.names.len()
    }

    pub fn name(&self, a: usize) -> &str {
        &self.names[a]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn element(&self, name: &str) -> Result<usize> {
        self.names
            .iter()
            .position(|n| n == name)
            .ok_or_else(|| Error::UnknownElement(name.to_string()))
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order() + b]
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn table(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.order()).map(<[usize]>::to_vec).collect()
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// `g h g⁻¹`.
    pub fn conjugate(&self, g: usize, h: usize) -> usize {
        self.mul(self.mul(g, h), self.inv(g))
    }

    /// Elements commuting with everything.
    pub fn center(&self) -> Vec<usize> {
        (0..self.order())
            .filter(|&a| (0..self.order()).all(|b| self.mul(a, b) == self.mul(b, a)))
            .collect()
    }

    /// The subgroup generated by the given elements, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[self.identity] = true;
        let mut queue = VecDeque::from([self.identity]);
        while let Some(x) = queue.pop_front() {
            for &g in gens {
                let y = self.mul(x, g);
                if !seen[y] {
                    seen[y] = true;
                    queue.push_back(y);
                }
            }
        }
        (0..self.order()).filter(|&a| seen[a]).collect()
    }

    /// A small generating set, chosen greedily by decreasing element order.
    pub fn generating_set(&self) -> Vec<usize> {
        let mut by_order: Vec<usize> = (0..self.order()).collect();
        by_order.sort_by_key(|&a| (std::cmp::Reverse(self.element_order(a)), a));
        let mut gens = Vec::new();
        let mut span = self.generated(&gens);
        for a in by_order {
            if span.len() == self.order() {
                break;
            }
            if span.binary_search(&a).is_err() {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }

    pub fn is_subgroup(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        set.contains(&self.identity)
            && set.iter().all(|&a| set.contains(&self.inv(a)))
            && set.iter().all(|&a| set.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    pub fn is_normal(&self, elems: &[usize]) -> bool {
        let set: BTreeSet<usize> = elems.iter().copied().collect();
        (0..self.order()).all(|g| set.iter().all(|&h| set.contains(&self.conjugate(g, h))))
    }

    /// A subgroup as a group in its own right, with the inclusion.
    pub fn subgroup(&self, elems: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        if !self.is_subgroup(elems) {
            return Err(Error::InvalidGroup("not a subgroup".into()));
        }
        let elems: Vec<usize> = elems.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        let pos: HashMap<usize, usize> = elems.iter().enumerate().map(|(i, &a)| (a, i)).collect();
        let names = elems.iter().map(|&a| self.names[a].clone()).collect();
        let table = elems
            .iter()
            .map(|&a| elems.iter().map(|&b| pos[&self.mul(a, b)]).collect())
            .collect();
        Ok((FinGroup::new(names, table)?, elems))
    }

    /// Quotient by a normal subgroup; elements are cosets named by their
    /// smallest representative. Returns the group and the projection.
    pub fn quotient(&self, normal: &[usize]) -> Result<(FinGroup, Vec<usize>)> {
        if !self.is_subgroup(normal) || !self.is_normal(normal) {
            return Err(Error::InvalidGroup("not a normal subgroup".into()));
        }
        let n = self.order();
        let mut coset_of = vec![usize::MAX; n];
        let mut reps = Vec::new();
        for a in 0..n {
            if coset_of[a] == usize::MAX {
                for &h in normal {
                    coset_of[self.mul(a, h)] = reps.len();
                }
                reps.push(a);
            }
        }
        let names = reps.iter().map(|&a| format!("{}N", self.names[a])).collect();
        let table = reps
            .iter()
            .map(|&a| reps.iter().map(|&b| coset_of[self.mul(a, b)]).collect())
            .collect();
        Ok((FinGroup::new(names, table)?, coset_of))
    }

    pub fn to_raw(&self) -> RawGroup {
        RawGroup {
            schema: GRP_SCHEMA.to_string(),
            elements: Some(self.names.clone()),
            table: Some(self.table()),
            degree: None,
            generators: None,
        }
    }

    pub fn from_raw(raw: &RawGroup) -> Result<FinGroup> {
        match (&raw.elements, &raw.table, raw.degree, &raw.generators) {
            (Some(names), Some(table), None, None) => FinGroup::new(names.clone(), table.clone()),
            (None, None, Some(degree), Some(gens)) => {
                // generators are given 1-based in files
                let zero: Vec<Vec<usize>> = gens
                    .iter()
                    .map(|g| g.iter().map(|&i| i.wrapping_sub(1)).collect())
                    .collect();
                FinGroup::from_permutations(degree, &zero)
            }
            _ => Err(Error::Format(
                "group needs either `elements` + `table` or `degree` + `generators`".into(),
            )),
        }
    }
}

/// The `grp/v1` file format: an element list with a table, or a permutation
/// group given by 1-based generator image lists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RawGroup {
    #[serde(default = "default_schema")]
    pub schema: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub elements: Option<Vec<String>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generators: Option<Vec<Vec<usize>>>,
}

fn default_schema() -> String {
    GRP_SCHEMA.to_string()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_groups_are_valid() {
        assert_eq!(FinGroup::cyclic(6).order(), 6);
        assert_eq!(FinGroup::dihedral(4).order(), 8);
        assert_eq!(FinGroup::quaternion().order(), 8);
        assert_eq!(FinGroup::symmetric(4).order(), 24);
        assert!(!FinGroup::dihedral(3).is_abelian());
    }

    #[test]
    fn centers() {
        assert_eq!(FinGroup::cyclic(5).center().len(), 5);
        assert_eq!(FinGroup::symmetric(3).center().len(), 1);
        assert_eq!(FinGroup::dihedral(4).center().len(), 2);
        assert_eq!(FinGroup::quaternion().center().len(), 2);
    }

    #[test]
    fn permutation_generators() {
        let s3 = FinGroup::from_permutations(3, &[vec![1, 0, 2], vec![1, 2, 0]]).unwrap();
        assert_eq!(s3.order(), 6);
        let z4 = FinGroup::from_permutations(4, &[vec![1, 2, 3, 0]]).unwrap();
        assert!(z4.is_abelian());
        assert_eq!(z4.order(), 4);
    }

    #[test]
    fn bad_tables_rejected() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(FinGroup::new(names.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(FinGroup::new(names, vec![vec![0, 1], vec![1, 0]]).is_ok());
    }

    #[test]
    fn quotient_of_d4_by_center() {
        let d4 = FinGroup::dihedral(4);
        let (q, _) = d4.quotient(&d4.center()).unwrap();
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
    }
}
