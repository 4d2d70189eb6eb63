//! Finite groups given by Cayley tables. Element `0` is always the identity.

mod catalog;
mod iso;
mod series;

use std::collections::BTreeMap;
use std::fmt;

use crate::error::FiniteGroupError;

pub use catalog::{make_catalog_group, CatalogKind, CATALOG_ORDER_LIMIT};
pub use iso::{iso_finite, iso_label, FiniteIsoLabel, ISO_SEARCH_LIMIT};
pub use series::{
    chief_series_between, composition_series_between, composition_series_finite,
    is_simple_finite, maximal_normal_below, FiniteSeries,
};

/// Orders above this are rejected by subgroup-lattice operations.
pub const SUBGROUP_ORDER_LIMIT: usize = 256;

#[derive(Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    table: Vec<u16>,
    inverse: Vec<u16>,
    name: Option<String>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order)
            .field("name", &self.name)
            .finish()
    }
}

/// Sorted element list of a subgroup.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Subgroup(Vec<usize>);

impl Subgroup {
    pub fn trivial() -> Self {
        Subgroup(vec![0])
    }

    pub fn whole(g: &FiniteGroup) -> Self {
        Subgroup((0..g.order()).collect())
    }

    pub fn from_sorted(mut v: Vec<usize>) -> Self {
        v.sort_unstable();
        v.dedup();
        Subgroup(v)
    }

    pub fn elements(&self) -> &[usize] {
        &self.0
    }

    pub fn order(&self) -> usize {
        self.0.len()
    }

    pub fn contains(&self, x: usize) -> bool {
        self.0.binary_search(&x).is_ok()
    }

    pub fn is_subset_of(&self, o: &Subgroup) -> bool {
        self.0.iter().all(|&x| o.contains(x))
    }
}

impl FiniteGroup {
    /// Validates a Cayley table exhaustively (closure, identity at 0,
    /// Latin-square inverses, associativity).
    pub fn from_table(rows: Vec<Vec<usize>>, name: Option<String>) -> Result<Self, FiniteGroupError> {
        let n = rows.len();
        if n == 0 {
            return Err(FiniteGroupError::InvalidTable("empty table".into()));
        }
        if n > SUBGROUP_ORDER_LIMIT {
            return Err(FiniteGroupError::TooLarge {
                order: n,
                limit: SUBGROUP_ORDER_LIMIT,
            });
        }
        if rows.iter().any(|r| r.len() != n) {
            return Err(FiniteGroupError::InvalidTable("table is not square".into()));
        }
        if rows.iter().flatten().any(|&x| x >= n) {
            return Err(FiniteGroupError::InvalidTable("entry out of range".into()));
        }
        #[allow(clippy::needless_range_loop)]
        for i in 0..n {
            if rows[0][i] != i || rows[i][0] != i {
                return Err(FiniteGroupError::InvalidTable(
                    "element 0 is not the identity".into(),
                ));
            }
        }
        let mut seen = vec![false; n];
        for i in 0..n {
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                if std::mem::replace(&mut seen[rows[i][j]], true) {
                    return Err(FiniteGroupError::InvalidTable(format!(
                        "row {i} repeats an element"
                    )));
                }
            }
            seen.iter_mut().for_each(|s| *s = false);
            for j in 0..n {
                if std::mem::replace(&mut seen[rows[j][i]], true) {
                    return Err(FiniteGroupError::InvalidTable(format!(
                        "column {i} repeats an element"
                    )));
                }
            }
        }
        for a in 0..n {
            for b in 0..n {
                let ab = rows[a][b];
                for c in 0..n {
                    if rows[ab][c] != rows[a][rows[b][c]] {
                        return Err(FiniteGroupError::InvalidTable(format!(
                            "not associative at ({a}, {b}, {c})"
                        )));
                    }
                }
            }
        }
        Ok(Self::from_table_unchecked(
            rows.into_iter()
                .flatten()
                .map(|x| x as u16)
                .collect(),
            n,
            name,
        ))
    }

    pub(crate) fn from_table_unchecked(table: Vec<u16>, order: usize, name: Option<String>) -> Self {
        let mut inverse = vec![0u16; order];
        for a in 0..order {
            for b in 0..order {
                if table[a * order + b] == 0 {
                    inverse[a] = b as u16;
                    break;
                }
            }
        }
        FiniteGroup {
            order,
            table,
            inverse,
            name,
        }
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    #[inline]
    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a] as usize
    }

    /// `g x g^{-1}`
    #[inline]
    pub fn conj(&self, g: usize, x: usize) -> usize {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn pow(&self, a: usize, n: u64) -> usize {
        let mut acc = 0;
        let mut base = a;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: usize) -> u64 {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn exponent(&self) -> u64 {
        (0..self.order).fold(1u64, |acc, a| {
            num_integer::lcm(acc, self.element_order(a))
        })
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Row-major table as nested vectors.
    pub fn table_rows(&self) -> Vec<Vec<usize>> {
        (0..self.order)
            .map(|i| (0..self.order).map(|j| self.mul(i, j)).collect())
            .collect()
    }

    /// Relabels elements by a permutation fixing 0: new element `perm[x]` is old `x`.
    pub fn relabel(&self, perm: &[usize]) -> Self {
        assert_eq!(perm[0], 0);
        let n = self.order;
        let mut inv = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inv[new] = old;
        }
        let mut table = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                table[a * n + b] = perm[self.mul(inv[a], inv[b])] as u16;
            }
        }
        Self::from_table_unchecked(table, n, self.name.clone())
    }

    pub fn direct_product(a: &FiniteGroup, b: &FiniteGroup) -> Self {
        let (m, n) = (a.order, b.order);
        let size = m * n;
        let mut table = vec![0u16; size * size];
        for x in 0..size {
            for y in 0..size {
                let (x1, x2) = (x / n, x % n);
                let (y1, y2) = (y / n, y % n);
                table[x * size + y] = (a.mul(x1, y1) * n + b.mul(x2, y2)) as u16;
            }
        }
        let name = match (&a.name, &b.name) {
            (Some(x), Some(y)) => Some(format!("{x}x{y}")),
            _ => None,
        };
        Self::from_table_unchecked(table, size, name)
    }

    /// Subgroup generated by `gens`.
    pub fn closure(&self, gens: &[usize]) -> Subgroup {
        let mut member = vec![false; self.order];
        member[0] = true;
        let mut elems = vec![0usize];
        let gens: Vec<usize> = gens.iter().copied().filter(|&g| g != 0).collect();
        let mut i = 0;
        while i < elems.len() {
            let x = elems[i];
            for &g in &gens {
                let y = self.mul(x, g);
                if !member[y] {
                    member[y] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        Subgroup::from_sorted(elems)
    }

    /// Smallest subgroup containing `base` and `extra` that is normalised by
    /// every element of `by`. `base` must be a subgroup normalised by `by`, and
    /// `by` must contain the result (true for the series constructions here).
    pub fn normal_closure_over(&self, base: &Subgroup, extra: &[usize], by: &Subgroup) -> Subgroup {
        let mut member = vec![false; self.order];
        for &x in base.elements() {
            member[x] = true;
        }
        let mut elems: Vec<usize> = base.elements().to_vec();
        let mut gens: Vec<usize> = Vec::new();
        let mut is_gen = vec![false; self.order];
        for &x in extra {
            if member[x] {
                continue;
            }
            for &g in by.elements() {
                let c = self.conj(g, x);
                if !member[c] && !std::mem::replace(&mut is_gen[c], true) {
                    gens.push(c);
                }
            }
            // base·<conjugates> is a subgroup; grow it by right multiplication.
            let mut i = 0;
            while i < elems.len() {
                let a = elems[i];
                for &c in &gens {
                    let y = self.mul(a, c);
                    if !member[y] {
                        member[y] = true;
                        elems.push(y);
                    }
                }
                i += 1;
            }
        }
        Subgroup::from_sorted(elems)
    }

    pub fn normal_closure(&self, extra: &[usize], by: &Subgroup) -> Subgroup {
        self.normal_closure_over(&Subgroup::trivial(), extra, by)
    }

    pub fn is_subgroup(&self, s: &Subgroup) -> bool {
        s.contains(0)
            && s.elements()
                .iter()
                .all(|&a| s.elements().iter().all(|&b| s.contains(self.mul(a, self.inv(b)))))
    }

    /// `sub` is normalised by every element of `by`.
    pub fn is_normalized_by(&self, sub: &Subgroup, by: &Subgroup) -> bool {
        by.elements()
            .iter()
            .all(|&g| sub.elements().iter().all(|&x| sub.contains(self.conj(g, x))))
    }

    /// Conjugacy class representatives of `within` acting on `within`.
    pub fn class_representatives(&self, within: &Subgroup) -> Vec<usize> {
        let mut seen = vec![false; self.order];
        let mut reps = Vec::new();
        for &x in within.elements() {
            if seen[x] {
                continue;
            }
            reps.push(x);
            for &g in within.elements() {
                seen[self.conj(g, x)] = true;
            }
        }
        reps
    }

    /// Quotient `upper / lower` as a standalone group (`lower` normal in `upper`).
    pub fn quotient(&self, upper: &Subgroup, lower: &Subgroup) -> FiniteGroup {
        let mut coset_of: BTreeMap<usize, usize> = BTreeMap::new();
        let mut reps: Vec<usize> = Vec::new();
        for &x in upper.elements() {
            if coset_of.contains_key(&x) {
                continue;
            }
            let idx = reps.len();
            reps.push(x);
            for &n in lower.elements() {
                coset_of.insert(self.mul(x, n), idx);
            }
        }
        let k = reps.len();
        let mut table = vec![0u16; k * k];
        for i in 0..k {
            for j in 0..k {
                table[i * k + j] = coset_of[&self.mul(reps[i], reps[j])] as u16;
            }
        }
        FiniteGroup::from_table_unchecked(table, k, None)
    }

    pub fn subgroup_as_group(&self, s: &Subgroup) -> FiniteGroup {
        self.quotient(s, &Subgroup::trivial())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn klein() -> FiniteGroup {
        make_catalog_group(CatalogKind::Dihedral(2)).unwrap()
    }

    #[test]
    fn table_validation_rejects_mutations() {
        let c4 = make_catalog_group(CatalogKind::Cyclic(4)).unwrap();
        let rows = c4.table_rows();
        assert!(FiniteGroup::from_table(rows.clone(), None).is_ok());
        for i in 1..4 {
            for j in 1..4 {
                for k in (j + 1)..4 {
                    let mut bad = rows.clone();
                    bad[i].swap(j, k);
                    assert!(FiniteGroup::from_table(bad, None).is_err());
                }
            }
        }
        assert!(FiniteGroup::from_table(vec![vec![0, 1], vec![1, 1]], None).is_err());
        assert!(FiniteGroup::from_table(vec![], None).is_err());
    }

    #[test]
    fn non_associative_latin_square_is_rejected() {
        // A loop of order 5 that is not a group.
        let rows = vec![
            vec![0, 1, 2, 3, 4],
            vec![1, 0, 3, 4, 2],
            vec![2, 4, 0, 1, 3],
            vec![3, 2, 4, 0, 1],
            vec![4, 3, 1, 2, 0],
        ];
        let err = FiniteGroup::from_table(rows, None).unwrap_err();
        assert!(err.to_string().contains("associative"), "{err}");
    }

    #[test]
    fn closures_and_quotients() {
        let c12 = make_catalog_group(CatalogKind::Cyclic(12)).unwrap();
        let h = c12.closure(&[4]);
        assert_eq!(h.order(), 3);
        let q = c12.quotient(&Subgroup::whole(&c12), &h);
        assert_eq!(q.order(), 4);
        assert!(q.is_abelian());
        let v = klein();
        assert_eq!(v.exponent(), 2);
    }

    #[test]
    fn normal_closure_in_s4() {
        let s4 = make_catalog_group(CatalogKind::Symmetric(4)).unwrap();
        let whole = Subgroup::whole(&s4);
        // a transposition generates all of S4 normally
        let t = (1..24).find(|&x| s4.element_order(x) == 2 && {
            let nc = s4.normal_closure(&[x], &whole);
            nc.order() == 24
        });
        assert!(t.is_some());
        // a double transposition closes to V4
        let dt = (1..24)
            .map(|x| s4.normal_closure(&[x], &whole).order())
            .filter(|&o| o == 4)
            .count();
        assert_eq!(dt, 3);
    }
}
