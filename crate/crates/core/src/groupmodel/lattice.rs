use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::block::Block;
use super::element::Component;
use super::{ContractionGroup, GroupElement};
use crate::error::ModelError;
use crate::linalg::Matrix;
use crate::padic::valuation::{pow_p, pow_p_int, reduce_mod};
use crate::padic::{valuation, PAdicPoly, Valuation};

/// Level-`k` compact open subgroup in every block: `F^{k, k+1, ...}` for
/// shift blocks and the `p^k Z_p`-integral points elsewhere.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct StandardLattice {
    pub level: i64,
}

impl StandardLattice {
    pub fn new(level: i64) -> Self {
        StandardLattice { level }
    }

    /// Largest level containing the component; `None` for the identity.
    pub fn component_level(c: &Component, p: Option<u64>) -> Option<i64> {
        match c {
            Component::Shift(m) => m.keys().next().copied(),
            Component::Linear(v) => min_val(v.iter(), p.expect("linear block has a prime")),
            Component::Heisenberg(v) => min_val(v.iter(), p.expect("heisenberg block has a prime")),
        }
    }

    pub fn contains(&self, g: &ContractionGroup, x: &GroupElement) -> bool {
        g.blocks()
            .iter()
            .zip(x.components())
            .all(|(b, c)| Self::component_level(c, b.prime()).is_none_or(|l| l >= self.level))
    }

    /// Whether the level is a subgroup of every block. Heisenberg points need
    /// `level >= 0` because of the `x y'` term.
    pub fn is_subgroup(&self, g: &ContractionGroup) -> bool {
        self.level >= 0 || !g.blocks().iter().any(|b| matches!(b, Block::Heisenberg(_)))
    }

    /// `α(W_k) ⊆ W_k` in every block.
    pub fn is_alpha_invariant(&self, g: &ContractionGroup) -> bool {
        g.blocks().iter().all(|b| match b {
            Block::Shift(_) | Block::Heisenberg(_) => true,
            Block::Linear(l) => l.matrix().min_valuation(l.prime()) >= Valuation::Finite(0),
        })
    }
}

fn min_val<'a>(v: impl Iterator<Item = &'a num_rational::BigRational>, p: u64) -> Option<i64> {
    v.filter_map(|x| valuation(x, p).finite()).min()
}

/// Prime factorisation by trial division.
pub(crate) fn factor_small(mut n: u64) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    let mut q = 2;
    while q * q <= n {
        while n.is_multiple_of(q) {
            *out.entry(q).or_insert(0) += 1;
            n /= q;
        }
        q += 1;
    }
    if n > 1 {
        *out.entry(n).or_insert(0) += 1;
    }
    out
}

/// Closed form of `Δ(α⁻¹)` for one block, as prime exponents.
pub fn block_delta_factored(b: &Block) -> BTreeMap<u64, u32> {
    match b {
        Block::Shift(s) => factor_small(s.group().order() as u64),
        Block::Linear(l) => {
            let v = valuation(&l.matrix().det(), l.prime())
                .finite()
                .expect("invertible matrix");
            BTreeMap::from([(l.prime(), v as u32)])
        }
        Block::Heisenberg(h) => BTreeMap::from([(h.prime(), 2 * (h.a() + h.b()))]),
    }
}

pub fn block_delta(b: &Block) -> BigInt {
    from_factored(&block_delta_factored(b))
}

fn from_factored(f: &BTreeMap<u64, u32>) -> BigInt {
    f.iter()
        .fold(BigInt::one(), |acc, (&p, &e)| acc * pow_p_int(p, e))
}

pub fn module_delta_factored(g: &ContractionGroup) -> BTreeMap<u64, u32> {
    let mut out = BTreeMap::new();
    for b in g.blocks() {
        for (p, e) in block_delta_factored(b) {
            *out.entry(p).or_insert(0) += e;
        }
    }
    out
}

/// `Δ_G(α⁻¹)`; `1` for the trivial group.
pub fn module_delta(g: &ContractionGroup) -> BigInt {
    from_factored(&module_delta_factored(g))
}

/// `[α⁻¹(W) : W]` at level 0, computed from the lattice itself rather than
/// the closed form: coset count for shift blocks, local elementary divisors
/// of the coordinate map of `α⁻¹` otherwise.
pub fn lattice_index_oracle(b: &Block) -> BigInt {
    match b {
        Block::Shift(s) => {
            // W_{-1} / W_0 is the coordinate at -1; count distinct values there
            let g = s.group();
            let seen: std::collections::BTreeSet<Vec<usize>> = g.table_rows().into_iter().collect();
            BigInt::from(seen.len())
        }
        Block::Linear(l) => index_of_image(l.inverse_matrix(), l.prime()),
        Block::Heisenberg(h) => {
            let diag: Vec<_> = h
                .weights()
                .iter()
                .map(|&w| pow_p(h.prime(), -(w as i64)))
                .collect();
            index_of_image(&Matrix::diagonal(&diag), h.prime())
        }
    }
}

/// Haar index `[M Z_p^d : Z_p^d] = p^(-Σ e_i)` from the elementary divisors of `M`.
fn index_of_image(m: &Matrix, p: u64) -> BigInt {
    let ed = m
        .local_elementary_divisors(p)
        .expect("invertible matrix");
    let s: i64 = ed.iter().sum();
    assert!(s <= 0, "α⁻¹ must enlarge the lattice measure");
    pow_p_int(p, (-s) as u32)
}

/// Default power budget `d (1 + max |v_p(a_i)|) + 8` over the lower
/// coefficients of the characteristic polynomial.
pub fn default_k_max(charpoly: &PAdicPoly, p: u64) -> u32 {
    let d = charpoly.degree();
    let m = charpoly.coeffs()[..d]
        .iter()
        .filter_map(|c| valuation(c, p).finite())
        .map(i64::abs)
        .max()
        .unwrap_or(0);
    (d as i64 * (1 + m) + 8).min(u32::MAX as i64) as u32
}

fn nilpotent_mod_p(m: &Matrix, p: u64) -> bool {
    let d = m.rows();
    let pm = BigInt::from(p);
    let red: Vec<Vec<u64>> = (0..d)
        .map(|i| {
            (0..d)
                .map(|j| {
                    let r = reduce_mod(&m[(i, j)], p, &pm).expect("integral entry");
                    u64::try_from(r).expect("reduced residue")
                })
                .collect()
        })
        .collect();
    let mut pw = red.clone();
    for _ in 1..d {
        let mut next = vec![vec![0u64; d]; d];
        for i in 0..d {
            for k in 0..d {
                if pw[i][k] == 0 {
                    continue;
                }
                for j in 0..d {
                    next[i][j] = (next[i][j] + pw[i][k] * red[k][j]) % p;
                }
            }
        }
        pw = next;
    }
    pw.iter().flatten().all(|&x| x == 0)
}

/// Smallest `k <= k_max` with every entry of `A^k` of valuation at least 1.
pub fn contraction_power(a: &Matrix, p: u64, k_max: u32) -> Option<u32> {
    let mut pw = a.clone();
    for k in 1..=k_max {
        if pw.min_valuation(p) >= Valuation::Finite(1) {
            return Some(k);
        }
        pw = pw.mul(a);
    }
    None
}

/// Contractivity decided from powers of `A` alone. `true` once some power
/// has all entries in `p Z_p` (or is integral with nilpotent reduction);
/// `false` on a unit-or-worse determinant, trace of a power, or an integral
/// power with non-nilpotent reduction. Otherwise `Inconclusive`.
pub fn contractivity_oracle(a: &Matrix, p: u64, k_max: u32) -> Result<bool, ModelError> {
    if !a.is_square() || a.rows() == 0 {
        return Err(ModelError::NotSquare {
            rows: a.rows(),
            cols: a.cols(),
        });
    }
    let det = a.det();
    if det.is_zero() {
        return Err(ModelError::Singular);
    }
    if valuation(&det, p) <= Valuation::Finite(0) {
        return Ok(false);
    }
    let mut pw = a.clone();
    for _ in 1..=k_max {
        let mv = pw.min_valuation(p);
        if mv >= Valuation::Finite(1) {
            return Ok(true);
        }
        if valuation(&pw.trace(), p) <= Valuation::Finite(0) {
            return Ok(false);
        }
        if mv >= Valuation::Finite(0) {
            return Ok(nilpotent_mod_p(&pw, p));
        }
        pw = pw.mul(a);
    }
    Err(ModelError::Inconclusive { k_max })
}
