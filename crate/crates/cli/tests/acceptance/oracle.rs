//! Brute-force subgroup lattice of a small Cayley table. Deliberately naive:
//! every subgroup is found by closing generator sets, independent of the
//! library's normal-closure and series code.

use std::collections::{BTreeSet, HashSet};

pub struct Table {
    pub n: usize,
    pub mul: Vec<Vec<usize>>,
}

impl Table {
    pub fn identity(&self) -> usize {
        (0..self.n)
            .find(|&e| (0..self.n).all(|x| self.mul[e][x] == x))
            .expect("group has an identity")
    }

    fn inverse(&self, x: usize) -> usize {
        let e = self.identity();
        (0..self.n).find(|&y| self.mul[x][y] == e).expect("inverse")
    }

    /// Subgroup generated by `gens`, by repeated products until stable.
    pub fn generate(&self, gens: &[usize]) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity()]);
        set.extend(gens.iter().copied());
        loop {
            let cur: Vec<usize> = set.iter().copied().collect();
            let before = set.len();
            for &a in &cur {
                for &b in &cur {
                    set.insert(self.mul[a][b]);
                }
            }
            if set.len() == before {
                return set;
            }
        }
    }

    /// All subgroups: cyclic ones, then joins until no new subgroup appears.
    pub fn all_subgroups(&self) -> Vec<BTreeSet<usize>> {
        let mut found: HashSet<BTreeSet<usize>> = (0..self.n).map(|x| self.generate(&[x])).collect();
        loop {
            let cur: Vec<BTreeSet<usize>> = found.iter().cloned().collect();
            let before = found.len();
            for a in &cur {
                for b in &cur {
                    if a.is_subset(b) || b.is_subset(a) {
                        continue;
                    }
                    let gens: Vec<usize> = a.union(b).copied().collect();
                    found.insert(self.generate(&gens));
                }
            }
            if found.len() == before {
                let mut v: Vec<_> = found.into_iter().collect();
                v.sort_by_key(|s| (s.len(), s.iter().copied().collect::<Vec<_>>()));
                return v;
            }
        }
    }

    pub fn is_normal_in(&self, k: &BTreeSet<usize>, h: &BTreeSet<usize>) -> bool {
        h.iter().all(|&g| {
            let gi = self.inverse(g);
            k.iter().all(|&x| k.contains(&self.mul[self.mul[g][x]][gi]))
        })
    }

    /// Orders of the factors of one composition series, found by always
    /// descending to a largest proper normal subgroup.
    pub fn composition_factor_orders(&self) -> Vec<usize> {
        let subs = self.all_subgroups();
        let mut cur: BTreeSet<usize> = (0..self.n).collect();
        let mut out = Vec::new();
        while cur.len() > 1 {
            let next = subs
                .iter()
                .filter(|k| k.len() < cur.len() && k.is_subset(&cur) && self.is_normal_in(k, &cur))
                .filter(|k| {
                    !subs.iter().any(|m| {
                        m.len() > k.len()
                            && m.len() < cur.len()
                            && k.is_subset(m)
                            && m.is_subset(&cur)
                            && self.is_normal_in(m, &cur)
                    })
                })
                .max_by_key(|k| k.len())
                .expect("trivial subgroup is normal")
                .clone();
            out.push(cur.len() / next.len());
            cur = next;
        }
        out.sort_unstable();
        out
    }

    pub fn normal_subgroup_orders(&self) -> Vec<usize> {
        let whole: BTreeSet<usize> = (0..self.n).collect();
        self.all_subgroups()
            .iter()
            .filter(|k| self.is_normal_in(k, &whole))
            .map(BTreeSet::len)
            .collect()
    }
}
