//! Contraction groups as finite products of shift, linear and Heisenberg
//! blocks, with α acting blockwise.

mod block;
mod element;
mod lattice;

use std::fmt;

pub use block::{Block, HeisenbergBlock, LinearBlock, ShiftBlock};
pub use element::{Component, GroupElement};
pub(crate) use lattice::factor_small;
pub use lattice::{
    block_delta, block_delta_factored, contraction_power, contractivity_oracle,
    default_k_max, lattice_index_oracle, module_delta, module_delta_factored,
    StandardLattice,
};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ContractionGroup {
    blocks: Vec<Block>,
}

impl ContractionGroup {
    pub fn new(blocks: Vec<Block>) -> Self {
        ContractionGroup { blocks }
    }

    pub fn trivial() -> Self {
        ContractionGroup { blocks: Vec::new() }
    }

    pub fn blocks(&self) -> &[Block] {
        &self.blocks
    }

    pub fn block(&self, i: usize) -> &Block {
        &self.blocks[i]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    pub fn is_trivial(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Sub-product on the given block indices, in that order.
    pub fn select(&self, indices: &[usize]) -> Self {
        ContractionGroup::new(indices.iter().map(|&i| self.blocks[i].clone()).collect())
    }

    pub fn identity(&self) -> GroupElement {
        GroupElement::new(self.blocks.iter().map(Block::identity_component).collect())
    }

    fn check(&self, x: &GroupElement) {
        assert!(
            self.accepts(x),
            "element {x} does not belong to a group with {} blocks",
            self.blocks.len()
        );
    }

    /// Whether `x` has one well-formed component per block.
    pub fn accepts(&self, x: &GroupElement) -> bool {
        x.components().len() == self.blocks.len()
            && self
                .blocks
                .iter()
                .zip(x.components())
                .all(|(b, c)| b.accepts(c))
    }

    pub fn multiply(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        self.check(x);
        self.check(y);
        GroupElement::new(
            self.blocks
                .iter()
                .zip(x.components().iter().zip(y.components()))
                .map(|(b, (u, v))| b.multiply(u, v))
                .collect(),
        )
    }

    pub fn inverse(&self, x: &GroupElement) -> GroupElement {
        self.check(x);
        GroupElement::new(
            self.blocks
                .iter()
                .zip(x.components())
                .map(|(b, u)| b.inverse(u))
                .collect(),
        )
    }

    /// `x^n` for any integer `n`.
    pub fn power(&self, x: &GroupElement, n: i64) -> GroupElement {
        self.check(x);
        GroupElement::new(
            self.blocks
                .iter()
                .zip(x.components())
                .map(|(b, u)| b.power(u, n))
                .collect(),
        )
    }

    pub fn apply_alpha(&self, x: &GroupElement) -> GroupElement {
        self.check(x);
        GroupElement::new(
            self.blocks
                .iter()
                .zip(x.components())
                .map(|(b, u)| b.apply_alpha(u))
                .collect(),
        )
    }

    pub fn apply_alpha_inverse(&self, x: &GroupElement) -> GroupElement {
        self.check(x);
        GroupElement::new(
            self.blocks
                .iter()
                .zip(x.components())
                .map(|(b, u)| b.apply_alpha_inverse(u))
                .collect(),
        )
    }

    /// `None` for elements of infinite order.
    pub fn element_order(&self, x: &GroupElement) -> Option<u64> {
        self.check(x);
        self.blocks
            .iter()
            .zip(x.components())
            .try_fold(1u64, |acc, (b, u)| {
                b.element_order(u).map(|o| num_integer::lcm(acc, o))
            })
    }

    pub fn is_torsion(&self, x: &GroupElement) -> bool {
        self.element_order(x).is_some()
    }

    /// Some `y` with `y^n = x`, chosen canonically in shift blocks.
    pub fn nth_root(&self, x: &GroupElement, n: u64) -> Result<GroupElement, crate::error::ModelError> {
        assert!(n >= 1, "root index must be positive");
        self.check(x);
        let comps = self
            .blocks
            .iter()
            .zip(x.components())
            .enumerate()
            .map(|(i, (b, u))| {
                b.nth_root(u, n)
                    .ok_or(crate::error::ModelError::NoRoot { block: i, n })
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(GroupElement::new(comps))
    }

    pub fn is_identity(&self, x: &GroupElement) -> bool {
        *x == self.identity()
    }

    /// Commutator `x y x^-1 y^-1`.
    pub fn commutator(&self, x: &GroupElement, y: &GroupElement) -> GroupElement {
        let xy = self.multiply(x, y);
        let xyx = self.multiply(&xy, &self.inverse(x));
        self.multiply(&xyx, &self.inverse(y))
    }

    /// Distinct primes of the non-shift blocks, ascending.
    pub fn primes(&self) -> Vec<u64> {
        let mut v: Vec<u64> = self.blocks.iter().filter_map(Block::prime).collect();
        v.sort_unstable();
        v.dedup();
        v
    }
}

impl fmt::Display for ContractionGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.blocks.is_empty() {
            return f.write_str("trivial");
        }
        for (i, b) in self.blocks.iter().enumerate() {
            if i > 0 {
                f.write_str(" * ")?;
            }
            write!(f, "{b}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegroup::CatalogKind;
    use crate::linalg::Matrix;
    use crate::padic::valuation::{rat, rat_frac};
    use crate::padic::PAdicPoly;
    use std::collections::BTreeMap;

    fn heis(x: i64, y: i64, z: i64) -> GroupElement {
        GroupElement::new(vec![Component::Heisenberg([rat(x), rat(y), rat(z)])])
    }

    #[test]
    fn shift_inverse_and_alpha() {
        let g = ContractionGroup::new(vec![Block::catalog_shift(CatalogKind::Cyclic(3)).unwrap()]);
        let x = GroupElement::new(vec![Component::shift_from([(0, 1)])]);
        assert_eq!(g.multiply(&x, &g.inverse(&x)), g.identity());
        let ax = g.apply_alpha(&x);
        assert_eq!(ax.component(0).as_shift().unwrap(), &BTreeMap::from([(1, 1)]));
        assert_eq!(g.apply_alpha_inverse(&ax), x);
        assert_eq!(g.element_order(&x), Some(3));
    }

    #[test]
    fn shift_order_and_roots() {
        let g = ContractionGroup::new(vec![Block::catalog_shift(CatalogKind::Cyclic(2)).unwrap()]);
        let x = GroupElement::new(vec![Component::shift_from([(0, 1), (3, 1)])]);
        assert_eq!(g.element_order(&x), Some(2));
        assert!(g.is_torsion(&x));
        let y = GroupElement::new(vec![Component::shift_from([(0, 1)])]);
        assert!(matches!(g.nth_root(&y, 2), Err(crate::error::ModelError::NoRoot { block: 0, n: 2 })));
        assert_eq!(g.nth_root(&y, 3).unwrap(), y);
        assert_eq!(g.element_order(&g.identity()), Some(1));
    }

    #[test]
    fn heisenberg_law() {
        let g = ContractionGroup::new(vec![Block::heisenberg(5, 1, 2).unwrap()]);
        assert_eq!(g.commutator(&heis(1, 0, 0), &heis(0, 1, 0)), heis(0, 0, 1));
        assert_eq!(g.apply_alpha(&heis(1, 1, 1)), heis(5, 25, 125));
        assert_eq!(g.element_order(&heis(1, 0, 0)), None);
        let r = g.nth_root(&heis(2, 2, 3), 2).unwrap();
        assert_eq!(r, heis(1, 1, 1));
        assert_eq!(g.multiply(&r, &r), heis(2, 2, 3));
        let x = GroupElement::new(vec![Component::Heisenberg([rat_frac(1, 3), rat(-2), rat(5)])]);
        let mut acc = g.identity();
        for n in 0..=20 {
            assert_eq!(g.power(&x, n), acc, "n = {n}");
            assert_eq!(g.power(&x, -n), g.inverse(&acc));
            acc = g.multiply(&acc, &x);
        }
    }

    #[test]
    fn linear_block() {
        let c = Block::companion(3, PAdicPoly::from_ints(&[3, 0, 1])).unwrap();
        let g = ContractionGroup::new(vec![c]);
        let e1 = GroupElement::new(vec![Component::Linear(vec![rat(1), rat(0)])]);
        let e2 = GroupElement::new(vec![Component::Linear(vec![rat(0), rat(1)])]);
        assert_eq!(g.apply_alpha(&e1), e2);
        assert_eq!(
            g.nth_root(&e2, 2).unwrap(),
            GroupElement::new(vec![Component::Linear(vec![rat(0), rat_frac(1, 2)])])
        );
        assert_eq!(g.to_string(), "companion(p=3, poly=X^2 + 3)");
    }

    #[test]
    fn validation_errors() {
        let m = Matrix::from_int_rows(&[&[1, 0], &[0, 3]]);
        let e = Block::linear(3, m).unwrap_err();
        assert_eq!(e.to_string(), "char poly X^2 - 4*X + 3 has root of valuation 0");
        assert!(matches!(Block::heisenberg(5, 0, 1), Err(crate::error::ModelError::BadWeight { name: "a", value: 0 })));
        assert!(matches!(Block::heisenberg(4, 1, 1), Err(crate::error::ModelError::NotPrime(4))));
        assert!(Block::linear(3, Matrix::from_int_rows(&[&[0, 0], &[0, 3]])).is_err());
        assert!(Block::catalog_shift(CatalogKind::Cyclic(1)).is_err());
        let printed = Block::linear(3, Matrix::from_int_rows(&[&[0, -3], &[1, 0]])).unwrap().to_string();
        assert_eq!(printed, "linear(p=3, matrix=[[0,-3],[1,0]])");
    }

    #[test]
    fn lattice_levels() {
        let g = ContractionGroup::new(vec![
            Block::catalog_shift(CatalogKind::Cyclic(2)).unwrap(),
            Block::heisenberg(3, 1, 1).unwrap(),
        ]);
        let x = GroupElement::new(vec![
            Component::shift_from([(-2, 1)]),
            Component::Heisenberg([rat_frac(1, 9), rat(1), rat(0)]),
        ]);
        let w = StandardLattice::new(3);
        assert!(!w.contains(&g, &x));
        let mut y = x.clone();
        let mut steps = 0;
        while !w.contains(&g, &y) {
            y = g.apply_alpha(&y);
            steps += 1;
        }
        assert_eq!(steps, 5);
        assert!(!StandardLattice::new(-1).is_subgroup(&g));
        assert!(StandardLattice::new(0).is_subgroup(&g));
    }
}
