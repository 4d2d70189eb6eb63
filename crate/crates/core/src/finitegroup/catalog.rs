use std::collections::HashMap;
use std::fmt;

use super::FiniteGroup;
use crate::error::FiniteGroupError;

/// Largest group order the catalog will tabulate.
pub const CATALOG_ORDER_LIMIT: usize = 5040;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum CatalogKind {
    Cyclic(usize),
    Symmetric(usize),
    Alternating(usize),
    /// Dihedral group of order `2n`.
    Dihedral(usize),
}

impl CatalogKind {
    pub fn order(&self) -> Option<usize> {
        match *self {
            CatalogKind::Cyclic(n) => Some(n),
            CatalogKind::Symmetric(n) => factorial(n),
            CatalogKind::Alternating(n) => factorial(n).map(|f| if n >= 2 { f / 2 } else { f }),
            CatalogKind::Dihedral(n) => n.checked_mul(2),
        }
    }
}

impl fmt::Display for CatalogKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CatalogKind::Cyclic(n) => write!(f, "C{n}"),
            CatalogKind::Symmetric(n) => write!(f, "S{n}"),
            CatalogKind::Alternating(n) => write!(f, "A{n}"),
            CatalogKind::Dihedral(n) => write!(f, "D{n}"),
        }
    }
}

impl std::str::FromStr for CatalogKind {
    type Err = FiniteGroupError;

    /// Parses `C<n>`, `S<n>`, `A<n>` or `D<n>`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FiniteGroupError::InvalidCatalog(format!("unknown group token {s:?}"));
        let mut chars = s.chars();
        let head = chars.next().ok_or_else(bad)?;
        let rest = chars.as_str();
        if rest.is_empty() || !rest.bytes().all(|b| b.is_ascii_digit()) {
            return Err(bad());
        }
        let n: usize = rest.parse().map_err(|_| bad())?;
        match head {
            'C' => Ok(CatalogKind::Cyclic(n)),
            'S' => Ok(CatalogKind::Symmetric(n)),
            'A' => Ok(CatalogKind::Alternating(n)),
            'D' => Ok(CatalogKind::Dihedral(n)),
            _ => Err(bad()),
        }
    }
}

fn factorial(n: usize) -> Option<usize> {
    (1..=n).try_fold(1usize, |acc, k| acc.checked_mul(k))
}

pub fn make_catalog_group(kind: CatalogKind) -> Result<FiniteGroup, FiniteGroupError> {
    let order = match kind.order() {
        Some(o) if o <= CATALOG_ORDER_LIMIT => o,
        o => {
            return Err(FiniteGroupError::TooLarge {
                order: o.unwrap_or(usize::MAX),
                limit: CATALOG_ORDER_LIMIT,
            })
        }
    };
    if order == 0 {
        return Err(FiniteGroupError::InvalidCatalog(format!(
            "{kind} has no elements"
        )));
    }
    let name = Some(kind.to_string());
    let g = match kind {
        CatalogKind::Cyclic(n) => {
            let table = (0..n * n).map(|k| ((k / n + k % n) % n) as u16).collect();
            FiniteGroup::from_table_unchecked(table, n, name)
        }
        CatalogKind::Dihedral(n) => {
            // element r^i s^e encoded as i + n e; s r s = r^{-1}
            let size = 2 * n;
            let mut table = vec![0u16; size * size];
            for a in 0..size {
                for b in 0..size {
                    let (i, e) = (a % n, a / n);
                    let (j, f) = (b % n, b / n);
                    let k = if e == 0 { (i + j) % n } else { (i + n - j) % n };
                    table[a * size + b] = (k + n * ((e + f) % 2)) as u16;
                }
            }
            FiniteGroup::from_table_unchecked(table, size, name)
        }
        CatalogKind::Symmetric(n) => permutation_group(all_permutations(n), name),
        CatalogKind::Alternating(n) => permutation_group(
            all_permutations(n)
                .into_iter()
                .filter(|p| is_even(p))
                .collect(),
            name,
        ),
    };
    Ok(g)
}

/// All permutations of `0..n` in lexicographic order (identity first).
pub(crate) fn all_permutations(n: usize) -> Vec<Vec<u8>> {
    let mut out = Vec::new();
    let mut cur: Vec<u8> = (0..n as u8).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (0..n.saturating_sub(1)).rev().find(|&i| cur[i] < cur[i + 1]) else {
            break;
        };
        let j = (i + 1..n).rev().find(|&j| cur[j] > cur[i]).unwrap();
        cur.swap(i, j);
        cur[i + 1..].reverse();
    }
    out
}

pub(crate) fn is_even(p: &[u8]) -> bool {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    inv.is_multiple_of(2)
}

pub(crate) fn perm_order(p: &[u8]) -> u64 {
    let n = p.len();
    let mut seen = vec![false; n];
    let mut ord = 1u64;
    for s in 0..n {
        if seen[s] {
            continue;
        }
        let mut len = 0u64;
        let mut x = s;
        while !seen[x] {
            seen[x] = true;
            x = p[x] as usize;
            len += 1;
        }
        ord = num_integer::lcm(ord, len);
    }
    ord
}

fn permutation_group(perms: Vec<Vec<u8>>, name: Option<String>) -> FiniteGroup {
    let k = perms.len();
    let index: HashMap<&[u8], usize> = perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
    let mut table = vec![0u16; k * k];
    let mut buf = vec![0u8; perms.first().map_or(0, Vec::len)];
    for (a, pa) in perms.iter().enumerate() {
        for (b, pb) in perms.iter().enumerate() {
            // (a·b)(x) = a(b(x))
            for (x, slot) in buf.iter_mut().enumerate() {
                *slot = pa[pb[x] as usize];
            }
            table[a * k + b] = index[buf.as_slice()] as u16;
        }
    }
    FiniteGroup::from_table_unchecked(table, k, name)
}
