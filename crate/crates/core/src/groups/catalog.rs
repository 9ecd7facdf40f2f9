//! All groups of small order up to isomorphism, found by filling Cayley
//! tables with Latin-square and associativity propagation.

use super::hom::is_isomorphic;
use super::FinGroup;
use crate::error::{Error, Result};

const MAX_ORDER: usize = 8;

#[derive(Debug, Clone)]
pub struct NamedGroup {
    pub name: String,
    pub group: FinGroup,
}

struct Search {
    n: usize,
    cell: Vec<usize>,
    trail: Vec<usize>,
    found: Vec<Vec<usize>>,
}

const EMPTY: usize = usize::MAX;

impl Search {
    fn get(&self, a: usize, b: usize) -> usize {
        self.cell[a * self.n + b]
    }

    fn latin_ok(&self, a: usize, b: usize, v: usize) -> bool {
        (0..self.n).all(|k| (k == b || self.get(a, k) != v) && (k == a || self.get(k, b) != v))
    }

    /// Sets a cell and everything associativity forces; false on conflict.
    fn set(&mut self, a: usize, b: usize, v: usize) -> bool {
        let mut queue = vec![(a, b, v)];
        while let Some((a, b, v)) = queue.pop() {
            let cur = self.get(a, b);
            if cur != EMPTY {
                if cur != v {
                    return false;
                }
                continue;
            }
            if !self.latin_ok(a, b, v) {
                return false;
            }
            self.cell[a * self.n + b] = v;
            self.trail.push(a * self.n + b);
            // (a·b)·c = a·(b·c)
            for c in 0..self.n {
                let bc = self.get(b, c);
                let vc = self.get(v, c);
                if bc != EMPTY {
                    let abc = self.get(a, bc);
                    match (vc != EMPTY, abc != EMPTY) {
                        (true, true) if vc != abc => return false,
                        (true, false) => queue.push((a, bc, vc)),
                        (false, true) => queue.push((v, c, abc)),
                        _ => {}
                    }
                }
                // (c·a)·b = c·(a·b)
                let ca = self.get(c, a);
                let cv = self.get(c, v);
                if ca != EMPTY {
                    let cab = self.get(ca, b);
                    match (cab != EMPTY, cv != EMPTY) {
                        (true, true) if cab != cv => return false,
                        (true, false) => queue.push((c, v, cab)),
                        (false, true) => queue.push((ca, b, cv)),
                        _ => {}
                    }
                }
            }
        }
        true
    }

    fn undo(&mut self, len: usize) {
        while self.trail.len() > len {
            let i = self.trail.pop().expect("non-empty trail");
            self.cell[i] = EMPTY;
        }
    }

    fn fill(&mut self) {
        let Some(pos) = self.cell.iter().position(|&v| v == EMPTY) else {
            self.found.push(self.cell.clone());
            return;
        };
        let (a, b) = (pos / self.n, pos % self.n);
        for v in 0..self.n {
            let len = self.trail.len();
            if self.set(a, b, v) {
                self.fill();
            }
            self.undo(len);
        }
    }
}

/// Every group table of order `n` with identity `0` (many per iso class).
fn tables(n: usize) -> Vec<Vec<usize>> {
    let mut s = Search { n, cell: vec![EMPTY; n * n], trail: Vec::new(), found: Vec::new() };
    for a in 0..n {
        s.cell[a] = a;
        s.cell[a * n] = a;
    }
    s.fill();
    s.found
}

/// Reference groups used to name catalog entries.
fn references() -> Vec<(String, FinGroup)> {
    let z = FinGroup::cyclic;
    let v4 = FinGroup::direct_product(&z(2), &z(2));
    vec![
        ("1".into(), FinGroup::trivial()),
        ("Z/2".into(), z(2)),
        ("Z/3".into(), z(3)),
        ("Z/4".into(), z(4)),
        ("Z/2xZ/2".into(), v4.clone()),
        ("Z/5".into(), z(5)),
        ("Z/6".into(), z(6)),
        ("S3".into(), FinGroup::symmetric(3)),
        ("Z/7".into(), z(7)),
        ("Z/8".into(), z(8)),
        ("Z/2xZ/4".into(), FinGroup::direct_product(&z(2), &z(4))),
        ("Z/2xZ/2xZ/2".into(), FinGroup::direct_product(&v4, &z(2))),
        ("D4".into(), FinGroup::dihedral(4)),
        ("Q8".into(), FinGroup::quaternion()),
    ]
}

/// A name for a group isomorphic to one of the references, else `G<order>#k`.
pub fn name_of(g: &FinGroup) -> Option<String> {
    references()
        .into_iter()
        .find(|(_, r)| r.order() == g.order() && is_isomorphic(r, g))
        .map(|(n, _)| n)
}

/// All groups of order `≤ n` up to isomorphism, by order, then name.
pub fn small_groups(n: usize) -> Result<Vec<NamedGroup>> {
    if n > MAX_ORDER {
        return Err(Error::BudgetExceeded(format!(
            "table enumeration is limited to order {MAX_ORDER}"
        )));
    }
    let mut out = Vec::new();
    for order in 1..=n {
        let mut reps: Vec<FinGroup> = Vec::new();
        for t in tables(order) {
            let names = (0..order).map(|i| i.to_string()).collect();
            let table = t.chunks(order).map(<[usize]>::to_vec).collect();
            let g = FinGroup::new(names, table).expect("propagated tables are groups");
            if !reps.iter().any(|r| same_invariants(r, &g) && is_isomorphic(r, &g)) {
                reps.push(g);
            }
        }
        let mut named: Vec<NamedGroup> = reps
            .into_iter()
            .enumerate()
            .map(|(k, group)| NamedGroup {
                name: name_of(&group).unwrap_or_else(|| format!("G{order}#{k}")),
                group,
            })
            .collect();
        named.sort_by(|a, b| a.name.cmp(&b.name));
        out.extend(named);
    }
    Ok(out)
}

fn same_invariants(a: &FinGroup, b: &FinGroup) -> bool {
    let profile = |g: &FinGroup| {
        let mut v: Vec<usize> = (0..g.order()).map(|x| g.element_order(x)).collect();
        v.sort_unstable();
        (v, g.is_abelian(), g.center().len())
    };
    profile(a) == profile(b)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_up_to_order_six() {
        let groups = small_groups(6).unwrap();
        let count = |k: usize| groups.iter().filter(|g| g.group.order() == k).count();
        assert_eq!((1..=6).map(count).collect::<Vec<_>>(), vec![1, 1, 1, 2, 1, 2]);
        let names: Vec<&str> = groups.iter().map(|g| g.name.as_str()).collect();
        assert!(names.contains(&"Z/2xZ/2") && names.contains(&"S3"));
    }

    #[test]
    fn budget() {
        assert!(small_groups(9).is_err());
    }
}
