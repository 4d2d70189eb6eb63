use std::collections::BTreeMap;
use std::fmt;
use std::sync::OnceLock;

use super::catalog::{all_permutations, is_even, perm_order};
use super::FiniteGroup;
use crate::error::FiniteGroupError;

/// Exhaustive isomorphism search is limited to groups up to this order.
pub const ISO_SEARCH_LIMIT: usize = 256;

/// Relabelling-invariant summary of a finite group. Equal labels are necessary
/// for isomorphism; for the simple groups in the catalog they are sufficient.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteIsoLabel {
    pub order: usize,
    pub abelian: bool,
    /// `element order -> number of elements of that order`.
    pub element_orders: BTreeMap<u64, usize>,
    pub name: Option<String>,
}

impl fmt::Display for FiniteIsoLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.name {
            Some(n) => f.write_str(n),
            None => write!(
                f,
                "group(order={}, {})",
                self.order,
                if self.abelian { "abelian" } else { "nonabelian" }
            ),
        }
    }
}

type Signature = (usize, bool, BTreeMap<u64, usize>);

fn signature_of_perms(perms: &[Vec<u8>]) -> Signature {
    let mut orders = BTreeMap::new();
    for p in perms {
        *orders.entry(perm_order(p)).or_insert(0) += 1;
    }
    let abelian = perms.len() <= 2 || {
        // S_n / A_n are abelian only for tiny n
        let n = perms.first().map_or(0, Vec::len);
        n <= 2 || (n == 3 && perms.len() == 3)
    };
    (perms.len(), abelian, orders)
}

fn dihedral_signature(n: usize) -> Signature {
    let mut orders = BTreeMap::new();
    for i in 0..n {
        let o = (n / num_integer::gcd(i, n)) as u64;
        *orders.entry(o).or_insert(0) += 1;
    }
    *orders.entry(2).or_insert(0) += n;
    (2 * n, n <= 2, orders)
}

fn named_signatures() -> &'static Vec<(String, Signature)> {
    static TABLE: OnceLock<Vec<(String, Signature)>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut out = Vec::new();
        for n in 3..=7usize {
            let perms = all_permutations(n);
            let even: Vec<Vec<u8>> = perms.iter().filter(|p| is_even(p)).cloned().collect();
            out.push((format!("A{n}"), signature_of_perms(&even)));
            out.push((format!("S{n}"), signature_of_perms(&perms)));
        }
        for n in 3..=64usize {
            out.push((format!("D{n}"), dihedral_signature(n)));
        }
        out
    })
}

fn catalog_name(order: usize, abelian: bool, orders: &BTreeMap<u64, usize>) -> Option<String> {
    if order == 1 {
        return Some("C1".into());
    }
    if abelian {
        if orders.contains_key(&(order as u64)) {
            return Some(format!("C{order}"));
        }
        // elementary abelian p^k
        let nontriv: Vec<u64> = orders.keys().copied().filter(|&o| o > 1).collect();
        if nontriv.len() == 1 && crate::padic::is_prime(nontriv[0]) {
            let p = nontriv[0] as usize;
            let mut k = 0;
            let mut m = order;
            while m.is_multiple_of(p) {
                m /= p;
                k += 1;
            }
            if m == 1 {
                return Some(format!("C{p}^{k}"));
            }
        }
        return None;
    }
    named_signatures()
        .iter()
        .find(|(_, (o, a, ords))| *o == order && *a == abelian && ords == orders)
        .map(|(n, _)| n.clone())
}

pub fn iso_label(g: &FiniteGroup) -> FiniteIsoLabel {
    let mut element_orders = BTreeMap::new();
    for a in 0..g.order() {
        *element_orders.entry(g.element_order(a)).or_insert(0) += 1;
    }
    let abelian = g.is_abelian();
    let name = catalog_name(g.order(), abelian, &element_orders);
    FiniteIsoLabel {
        order: g.order(),
        abelian,
        element_orders,
        name,
    }
}

/// Greedy generating set, preferring elements of large order.
fn generators(g: &FiniteGroup) -> Vec<usize> {
    let mut elems: Vec<usize> = (1..g.order()).collect();
    elems.sort_by_key(|&x| std::cmp::Reverse(g.element_order(x)));
    let mut gens = Vec::new();
    let mut current = g.closure(&[]);
    for x in elems {
        if current.order() == g.order() {
            break;
        }
        if !current.contains(x) {
            gens.push(x);
            current = g.closure(&gens);
        }
    }
    gens
}

/// Extends a generator assignment to a map on all of `g` by breadth-first
/// search over words; `None` on an inconsistency.
fn extend_map(g: &FiniteGroup, h: &FiniteGroup, gens: &[usize], images: &[usize]) -> Option<Vec<usize>> {
    let n = g.order();
    let mut map = vec![usize::MAX; n];
    map[0] = 0;
    let mut queue = vec![0usize];
    let mut i = 0;
    while i < queue.len() {
        let x = queue[i];
        for (k, &s) in gens.iter().enumerate() {
            let y = g.mul(x, s);
            let img = h.mul(map[x], images[k]);
            if map[y] == usize::MAX {
                map[y] = img;
                queue.push(y);
            } else if map[y] != img {
                return None;
            }
        }
        i += 1;
    }
    Some(map)
}

fn is_isomorphism(g: &FiniteGroup, h: &FiniteGroup, map: &[usize]) -> bool {
    let mut hit = vec![false; h.order()];
    for &y in map {
        if y == usize::MAX || std::mem::replace(&mut hit[y], true) {
            return false;
        }
    }
    (0..g.order()).all(|a| (0..g.order()).all(|b| map[g.mul(a, b)] == h.mul(map[a], map[b])))
}

/// Decides whether a Cayley-table isomorphism exists.
pub fn iso_finite(g: &FiniteGroup, h: &FiniteGroup) -> Result<bool, FiniteGroupError> {
    let (lg, lh) = (iso_label(g), iso_label(h));
    if (lg.order, lg.abelian, &lg.element_orders) != (lh.order, lh.abelian, &lh.element_orders) {
        return Ok(false);
    }
    if g.order() > ISO_SEARCH_LIMIT {
        return Err(FiniteGroupError::TooLarge {
            order: g.order(),
            limit: ISO_SEARCH_LIMIT,
        });
    }
    let gens = generators(g);
    let candidates: Vec<Vec<usize>> = gens
        .iter()
        .map(|&s| {
            let o = g.element_order(s);
            (0..h.order()).filter(|&y| h.element_order(y) == o).collect()
        })
        .collect();
    let mut choice = vec![0usize; gens.len()];
    let mut images = vec![0usize; gens.len()];
    fn search(
        depth: usize,
        g: &FiniteGroup,
        h: &FiniteGroup,
        gens: &[usize],
        cands: &[Vec<usize>],
        choice: &mut [usize],
        images: &mut [usize],
    ) -> bool {
        if depth == gens.len() {
            return extend_map(g, h, gens, images).is_some_and(|m| is_isomorphism(g, h, &m));
        }
        for idx in 0..cands[depth].len() {
            choice[depth] = idx;
            images[depth] = cands[depth][idx];
            // prune: partial generator set must already be consistent
            if extend_map(g, h, &gens[..=depth], &images[..=depth]).is_none() {
                continue;
            }
            if search(depth + 1, g, h, gens, cands, choice, images) {
                return true;
            }
        }
        false
    }
    Ok(search(0, g, h, &gens, &candidates, &mut choice, &mut images))
}
