use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};

use super::poly::{PAdicPoly, RatPoly};
use super::valuation::valuation;

/// One edge of the lower convex hull. Its `length` roots all have p-adic
/// valuation `root_valuation` (the negated edge slope).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonSegment {
    pub start: (usize, i64),
    pub end: (usize, i64),
    pub root_valuation: BigRational,
    pub length: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NewtonPolygon {
    /// Hull vertices `(index, valuation)`, left to right.
    pub vertices: Vec<(usize, i64)>,
    /// Segments left to right, so root valuations decrease.
    pub segments: Vec<NewtonSegment>,
    /// Roots equal to zero (valuation `+inf`), i.e. the power of `X` dividing `f`.
    pub zero_roots: usize,
}

impl NewtonPolygon {
    /// Multiset of finite root valuations in ascending order, with multiplicity.
    pub fn root_valuations(&self) -> Vec<BigRational> {
        let mut out: Vec<BigRational> = self
            .segments
            .iter()
            .flat_map(|s| std::iter::repeat_n(s.root_valuation.clone(), s.length))
            .collect();
        out.sort();
        out
    }

    /// `(valuation, multiplicity)` grouped, ascending.
    pub fn slopes(&self) -> Vec<(BigRational, usize)> {
        let mut out: Vec<(BigRational, usize)> = self
            .segments
            .iter()
            .map(|s| (s.root_valuation.clone(), s.length))
            .collect();
        out.sort();
        out
    }

    pub fn total_multiplicity(&self) -> usize {
        self.zero_roots + self.segments.iter().map(|s| s.length).sum::<usize>()
    }

    pub fn min_root_valuation(&self) -> Option<BigRational> {
        self.segments.iter().map(|s| s.root_valuation.clone()).min()
    }

    pub fn is_pure(&self) -> bool {
        self.zero_roots == 0 && self.segments.len() == 1
    }
}

/// Lower convex hull of the points `(i, vals[i])`; `None` entries are skipped
/// (coefficient zero). At least the last entry must be finite.
pub fn newton_polygon_from_valuations(vals: &[Option<i64>]) -> NewtonPolygon {
    let pts: Vec<(usize, i64)> = vals
        .iter()
        .enumerate()
        .filter_map(|(i, v)| v.map(|v| (i, v)))
        .collect();
    assert!(
        pts.last().map(|p| p.0) == Some(vals.len() - 1),
        "leading coefficient must be nonzero"
    );
    let zero_roots = pts[0].0;

    // Andrew's monotone chain, lower hull only.
    let mut hull: Vec<(usize, i64)> = Vec::new();
    for &pt in &pts {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            let cross = (b.0 as i128 - a.0 as i128) * (pt.1 as i128 - a.1 as i128)
                - (b.1 as i128 - a.1 as i128) * (pt.0 as i128 - a.0 as i128);
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(pt);
    }

    let segments = hull
        .windows(2)
        .map(|w| {
            let (a, b) = (w[0], w[1]);
            let len = b.0 - a.0;
            NewtonSegment {
                start: a,
                end: b,
                root_valuation: BigRational::new(
                    BigInt::from(a.1 - b.1),
                    BigInt::from(len as i64),
                ),
                length: len,
            }
        })
        .collect();
    NewtonPolygon {
        vertices: hull,
        segments,
        zero_roots,
    }
}

pub fn newton_polygon_rat(f: &RatPoly, p: u64) -> NewtonPolygon {
    let vals: Vec<Option<i64>> = f.coeffs().iter().map(|c| valuation(c, p).finite()).collect();
    newton_polygon_from_valuations(&vals)
}

pub fn newton_polygon(f: &PAdicPoly, p: u64) -> NewtonPolygon {
    newton_polygon_rat(f.as_rat(), p)
}

/// All roots of `f` have absolute value `< 1`, read off the Newton polygon.
pub fn is_contractive_poly(f: &PAdicPoly, p: u64) -> bool {
    let np = newton_polygon(f, p);
    np.segments.iter().all(|s| s.root_valuation.is_positive())
}

/// Coefficient form of the same test: `v_p(a_i) >= 1` for every `i < d`.
pub fn is_contractive_by_coefficients(f: &PAdicPoly, p: u64) -> bool {
    let d = f.degree();
    f.coeffs()[..d].iter().all(|c| {
        c.is_zero()
            || valuation(c, p)
                .finite()
                .is_some_and(|v| v >= 1)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::valuation::{rat, rat_frac};

    fn roots(coeffs: &[i64], p: u64) -> Vec<BigRational> {
        newton_polygon(&PAdicPoly::from_ints(coeffs), p).root_valuations()
    }

    #[test]
    fn eisenstein_quadratic_has_half_slopes() {
        // X^2 + 3X + 3 over Q_3: hull (0,1),(1,1),(2,0) collapses to one edge.
        let np = newton_polygon(&PAdicPoly::from_ints(&[3, 3, 1]), 3);
        assert_eq!(np.vertices, vec![(0, 1), (2, 0)]);
        assert_eq!(np.root_valuations(), vec![rat_frac(1, 2), rat_frac(1, 2)]);
    }

    #[test]
    fn two_distinct_slopes() {
        // X^2 + X + 3 over Q_3: hull (0,1),(1,0),(2,0)
        assert_eq!(roots(&[3, 1, 1], 3), vec![rat(0), rat(1)]);
        assert_eq!(roots(&[-3, 1], 3), vec![rat(1)]);
        // X^2 - 12X + 27 = (X-3)(X-9)
        assert_eq!(roots(&[27, -12, 1], 3), vec![rat(1), rat(2)]);
    }

    #[test]
    fn zero_roots_counted() {
        let np = newton_polygon(&PAdicPoly::from_ints(&[0, 0, 3, 1]), 3);
        assert_eq!(np.zero_roots, 2);
        assert_eq!(np.total_multiplicity(), 3);
    }

    #[test]
    fn contractivity_examples() {
        assert!(is_contractive_poly(&PAdicPoly::from_ints(&[-3, 1]), 3));
        assert!(!is_contractive_poly(&PAdicPoly::from_ints(&[-1, 1]), 3));
        assert!(is_contractive_poly(&PAdicPoly::from_ints(&[2, 0, 1]), 2));
        assert!(!is_contractive_poly(&PAdicPoly::from_ints(&[3, 1, 1]), 3));
    }
}
