//! Seeded generators for groups, elements and polynomials used by tests,
//! benches and the verifier.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::finitegroup::CatalogKind;
use crate::groupmodel::{Block, Component, ContractionGroup, GroupElement};
use crate::linalg::Matrix;
use crate::padic::{factor_over_qp, PAdicContext, PAdicPoly};

pub const SMALL_PRIMES: [u64; 4] = [2, 3, 5, 7];

/// Catalog groups of order between 2 and 24.
pub fn small_catalog() -> Vec<CatalogKind> {
    let mut v: Vec<CatalogKind> = (2..=24).map(CatalogKind::Cyclic).collect();
    v.extend((3..=12).map(CatalogKind::Dihedral));
    v.extend([CatalogKind::Symmetric(3), CatalogKind::Symmetric(4), CatalogKind::Alternating(4)]);
    v
}

pub fn random_rational<R: Rng + ?Sized>(rng: &mut R, height: i64) -> BigRational {
    let n = rng.gen_range(-height..=height);
    let d = rng.gen_range(1..=height.max(1));
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Monic polynomial with `v_p(a_i) >= 1` below the top. Rejection keeps
/// only squarefree ones whose factorisation over `Q_p` is fully certified.
pub fn random_contractive_poly<R: Rng + ?Sized>(rng: &mut R, p: u64, degree: usize) -> PAdicPoly {
    loop {
        let pi = p as i64;
        let mut c: Vec<i64> = (0..degree)
            .map(|_| pi * rng.gen_range(-4..=4i64))
            .collect();
        if c[0] == 0 {
            c[0] = pi * if rng.gen_bool(0.5) { 1 } else { -1 };
        }
        c.push(1);
        let f = PAdicPoly::from_ints(&c);
        if !f.as_rat().is_squarefree() {
            continue;
        }
        let ctx = PAdicContext::with_default_precision(p).expect("prime");
        if factor_over_qp(&f, &ctx).is_ok_and(|fac| fac.is_fully_certified()) {
            return f;
        }
    }
}

/// Contractive linear block: companion matrix of a random contractive
/// polynomial, conjugated by a random unimodular-ish rational matrix.
pub fn random_linear_block<R: Rng + ?Sized>(rng: &mut R, p: u64, max_dim: usize) -> Block {
    let d = rng.gen_range(1..=max_dim);
    let f = random_contractive_poly(rng, p, d);
    if rng.gen_bool(0.5) {
        return Block::companion(p, f).expect("contractive polynomial");
    }
    let c = Matrix::companion(f.as_rat());
    loop {
        let s = Matrix::from_rows(
            (0..d)
                .map(|_| (0..d).map(|_| BigRational::from_integer(BigInt::from(rng.gen_range(-2..=2i64)))).collect())
                .collect(),
        );
        if let Some(si) = s.inverse() {
            return Block::linear(p, s.mul(&c).mul(&si)).expect("conjugate of contractive matrix");
        }
    }
}

pub fn random_block<R: Rng + ?Sized>(rng: &mut R) -> Block {
    let p = *SMALL_PRIMES.choose(rng).unwrap();
    match rng.gen_range(0..10) {
        0..=3 => {
            let kind = *small_catalog().choose(rng).unwrap();
            Block::catalog_shift(kind).expect("catalog group")
        }
        4..=7 => random_linear_block(rng, p, 4),
        _ => Block::heisenberg(p, rng.gen_range(1..=3), rng.gen_range(1..=3)).unwrap(),
    }
}

/// Between one and `max_blocks` random blocks.
pub fn random_group<R: Rng + ?Sized>(rng: &mut R, max_blocks: usize) -> ContractionGroup {
    let n = rng.gen_range(1..=max_blocks);
    ContractionGroup::new((0..n).map(|_| random_block(rng)).collect())
}

pub fn random_component<R: Rng + ?Sized>(rng: &mut R, b: &Block) -> Component {
    match b {
        Block::Shift(s) => {
            let k = rng.gen_range(0..=4);
            let mut m = BTreeMap::new();
            for _ in 0..k {
                let idx = rng.gen_range(-4..=4i64);
                let v = rng.gen_range(0..s.group().order());
                m.insert(idx, v);
            }
            Component::shift_from(m)
        }
        Block::Linear(l) => Component::Linear((0..l.dim()).map(|_| random_rational(rng, 20)).collect()),
        Block::Heisenberg(_) => Component::Heisenberg([0, 1, 2].map(|_| random_rational(rng, 20))),
    }
}

pub fn random_element<R: Rng + ?Sized>(rng: &mut R, g: &ContractionGroup) -> GroupElement {
    GroupElement::new(g.blocks().iter().map(|b| random_component(rng, b)).collect())
}

/// Random rational matrix with entries of height at most `height`.
pub fn random_matrix<R: Rng + ?Sized>(rng: &mut R, d: usize, height: i64) -> Matrix {
    Matrix::from_rows(
        (0..d)
            .map(|_| (0..d).map(|_| random_rational(rng, height)).collect())
            .collect(),
    )
}
