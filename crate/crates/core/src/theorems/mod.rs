//! Classification of simple contraction groups and the torsion times
//! divisible decomposition.

mod structure;

use std::fmt;

use crate::error::TheoremError;
use crate::finitegroup::{iso_finite, iso_label, is_simple_finite};
use crate::groupmodel::{Block, ContractionGroup};
use crate::linalg::Matrix;
use crate::padic::{
    certify_irreducible, factor_over_qp, is_contractive_poly, valuation, Certification,
    IrreducibilityWitness, PAdicContext, PAdicPoly, Valuation, DEFAULT_PRECISION,
};
use crate::series::FactorClass;

pub use structure::{
    divisible_part, t_alpha, torsion_part, verify_structure, StructureOptions, StructureReport,
};

/// Isomorphism invariant of a simple contraction group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassificationLabel {
    pub class: FactorClass,
    /// Companion matrix of `f` for torsion-free labels.
    pub companion: Option<Matrix>,
}

impl ClassificationLabel {
    pub fn is_torsion(&self) -> bool {
        self.class.is_torsion()
    }

    pub fn is_torsion_free(&self) -> bool {
        self.class.is_torsion_free()
    }
}

impl fmt::Display for ClassificationLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.class)
    }
}

/// Companion matrix `e_j -> e_{j+1}`, last column `-a_0, ..., -a_{d-1}`.
pub fn rational_normal_form(f: &PAdicPoly) -> Matrix {
    Matrix::companion(f.as_rat())
}

/// Single shift block over a simple group, or a single linear block with
/// certified irreducible characteristic polynomial. Heisenberg blocks and
/// products are never simple: the centre, respectively a proper block
/// sub-product, is an α-stable closed normal subgroup.
pub fn is_simple_contraction(g: &ContractionGroup, precision: u32) -> Result<bool, TheoremError> {
    let [b] = g.blocks() else {
        return Ok(false);
    };
    match b {
        Block::Shift(s) => Ok(is_simple_finite(s.group())),
        Block::Heisenberg(_) => Ok(false),
        Block::Linear(l) => {
            let f = l.charpoly();
            if !f.as_rat().is_squarefree() {
                return Ok(false);
            }
            let ctx = PAdicContext::new(l.prime(), precision)?;
            match certify_irreducible(f, &ctx)? {
                Some(v) => Ok(v),
                None => Err(TheoremError::Uncertified(f.to_string())),
            }
        }
    }
}

/// Label of a simple group: `TorsionSimple(F)` or `PadicSimple(p, char A)`.
pub fn classify_simple(g: &ContractionGroup) -> Result<ClassificationLabel, TheoremError> {
    classify_simple_at(g, DEFAULT_PRECISION)
}

pub fn classify_simple_at(g: &ContractionGroup, precision: u32) -> Result<ClassificationLabel, TheoremError> {
    if !is_simple_contraction(g, precision)? {
        return Err(TheoremError::NotSimple);
    }
    match &g.blocks()[0] {
        Block::Shift(s) => Ok(ClassificationLabel {
            class: FactorClass::TorsionSimple(iso_label(s.group())),
            companion: None,
        }),
        Block::Linear(l) => {
            let f = l.charpoly().clone();
            debug_assert!(is_contractive_poly(&f, l.prime()));
            debug_assert!(valuation(&f.coeff(0), l.prime()) >= Valuation::Finite(1));
            let ctx = PAdicContext::new(l.prime(), precision)?;
            let witness = factor_over_qp(&f, &ctx)?.factors[0].irreducible;
            let companion = rational_normal_form(&f);
            Ok(ClassificationLabel {
                class: FactorClass::PadicSimple {
                    p: l.prime(),
                    f,
                    precision: None,
                    certification: Certification::RationalExact,
                    witness: witness.or(Some(IrreducibilityWitness::Linear)),
                },
                companion: Some(companion),
            })
        }
        Block::Heisenberg(_) => Err(TheoremError::NotSimple),
    }
}

/// Isomorphism of two simple groups via their labels.
pub fn iso_simple(g: &ContractionGroup, h: &ContractionGroup) -> Result<bool, TheoremError> {
    let a = classify_simple(g)?;
    let b = classify_simple(h)?;
    match (&g.blocks()[0], &h.blocks()[0]) {
        (Block::Shift(x), Block::Shift(y)) => Ok(iso_finite(x.group(), y.group())?),
        _ => match a.class.compare(&b.class, DEFAULT_PRECISION) {
            crate::series::MatchKind::Equal => Ok(true),
            crate::series::MatchKind::Different => Ok(false),
            crate::series::MatchKind::AgreeToPrecision => {
                Err(TheoremError::Uncertified(a.class.to_string()))
            }
        },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegroup::{make_catalog_group, CatalogKind};
    use crate::groupmodel::Block;

    fn one(b: Block) -> ContractionGroup {
        ContractionGroup::new(vec![b])
    }

    #[test]
    fn simplicity() {
        let c5 = one(Block::catalog_shift(CatalogKind::Cyclic(5)).unwrap());
        assert_eq!(is_simple_contraction(&c5, 32), Ok(true));
        let x2p3 = one(Block::companion(3, PAdicPoly::from_ints(&[3, 0, 1])).unwrap());
        assert_eq!(is_simple_contraction(&x2p3, 32), Ok(true));
        let h = one(Block::heisenberg(5, 1, 2).unwrap());
        assert_eq!(is_simple_contraction(&h, 32), Ok(false));
        let c4 = one(Block::catalog_shift(CatalogKind::Cyclic(4)).unwrap());
        assert_eq!(is_simple_contraction(&c4, 32), Ok(false));
        assert_eq!(classify_simple(&c4), Err(TheoremError::NotSimple));
        let split = one(Block::companion(3, PAdicPoly::from_ints(&[54, -12, 1])).unwrap());
        assert_eq!(is_simple_contraction(&split, 32), Ok(false));
    }

    #[test]
    fn labels() {
        let a5 = one(Block::catalog_shift(CatalogKind::Alternating(5)).unwrap());
        assert_eq!(classify_simple(&a5).unwrap().to_string(), "TorsionSimple(A5)");
        let m = Matrix::from_int_rows(&[&[0, -3], &[1, 0]]);
        let l = classify_simple(&one(Block::linear(3, m.clone()).unwrap())).unwrap();
        assert_eq!(l.to_string(), "PadicSimple(3, X^2 + 3)");
        assert_eq!(l.companion, Some(m));
        let c2 = classify_simple(&one(Block::catalog_shift(CatalogKind::Cyclic(2)).unwrap())).unwrap();
        assert_eq!(c2.to_string(), "TorsionSimple(C2)");
        assert!(c2.is_torsion() && !c2.is_torsion_free());
    }

    #[test]
    fn normal_forms() {
        let rnf = |c: &[i64]| rational_normal_form(&PAdicPoly::from_ints(c));
        assert_eq!(rnf(&[-3, 1]), Matrix::from_int_rows(&[&[3]]));
        assert_eq!(rnf(&[3, 0, 1]), Matrix::from_int_rows(&[&[0, -3], &[1, 0]]));
        assert_eq!(rnf(&[3, 3, 1]), Matrix::from_int_rows(&[&[0, -3], &[1, -3]]));
    }

    #[test]
    fn isomorphism() {
        let c5 = make_catalog_group(CatalogKind::Cyclic(5)).unwrap();
        let r = c5.relabel(&[0, 2, 4, 1, 3]);
        let a = one(Block::shift(c5).unwrap());
        let b = one(Block::shift(r).unwrap());
        assert_eq!(iso_simple(&a, &b), Ok(true));
        let x3 = one(Block::companion(3, PAdicPoly::from_ints(&[-3, 1])).unwrap());
        let x6 = one(Block::companion(3, PAdicPoly::from_ints(&[-6, 1])).unwrap());
        assert_eq!(iso_simple(&x3, &x6), Ok(false));
        assert_eq!(iso_simple(&x3, &x3), Ok(true));
        let c2 = one(Block::catalog_shift(CatalogKind::Cyclic(2)).unwrap());
        let x2 = one(Block::companion(2, PAdicPoly::from_ints(&[-2, 1])).unwrap());
        assert_eq!(iso_simple(&c2, &x2), Ok(false));
    }
}
