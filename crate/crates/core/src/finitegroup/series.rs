use super::iso::{iso_label, FiniteIsoLabel};
use super::{FiniteGroup, Subgroup, SUBGROUP_ORDER_LIMIT};
use crate::error::FiniteGroupError;
use crate::tiebreak::TieBreak;

/// Ascending chain `subgroups[0] = lower < ... < subgroups[n] = upper`
/// with the label of each quotient `subgroups[i+1] / subgroups[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSeries {
    pub subgroups: Vec<Subgroup>,
    pub factors: Vec<FiniteIsoLabel>,
}

impl FiniteSeries {
    pub fn len(&self) -> usize {
        self.factors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.factors.is_empty()
    }

    /// Factor labels in sorted order, for multiset comparison.
    pub fn factor_multiset(&self) -> Vec<FiniteIsoLabel> {
        let mut v = self.factors.clone();
        v.sort();
        v
    }
}

/// Representatives of the orbits of `by` acting by conjugation on `set`.
fn orbit_reps(g: &FiniteGroup, set: &[usize], by: &Subgroup) -> Vec<usize> {
    let mut seen = vec![false; g.order()];
    let mut reps = Vec::new();
    for &x in set {
        if seen[x] {
            continue;
        }
        reps.push(x);
        for &h in by.elements() {
            seen[g.conj(h, x)] = true;
        }
    }
    reps
}

/// A maximal subgroup `M` with `lower <= M < upper` that is normalised by
/// `by`. Requires `lower` and `upper` normalised by `by`, and `lower < upper`.
pub fn maximal_normal_below(
    g: &FiniteGroup,
    lower: &Subgroup,
    upper: &Subgroup,
    by: &Subgroup,
    tb: &mut TieBreak,
) -> Subgroup {
    debug_assert!(lower.order() < upper.order());
    let outside: Vec<usize> = upper
        .elements()
        .iter()
        .copied()
        .filter(|&x| !lower.contains(x))
        .collect();
    let mut cands = orbit_reps(g, &outside, by);
    tb.arrange(&mut cands);
    // One pass suffices: a candidate whose closure over a smaller base was
    // already everything stays everything over any larger base.
    let mut m = lower.clone();
    for x in cands {
        if m.contains(x) {
            continue;
        }
        let n = g.normal_closure_over(&m, &[x], by);
        if n.order() < upper.order() {
            m = n;
        }
    }
    m
}

fn check_budget(g: &FiniteGroup) -> Result<(), FiniteGroupError> {
    if g.order() > SUBGROUP_ORDER_LIMIT {
        return Err(FiniteGroupError::TooLarge {
            order: g.order(),
            limit: SUBGROUP_ORDER_LIMIT,
        });
    }
    Ok(())
}

fn build_between(
    g: &FiniteGroup,
    lower: &Subgroup,
    upper: &Subgroup,
    whole_by: bool,
    tb: &mut TieBreak,
) -> FiniteSeries {
    let all = Subgroup::whole(g);
    let mut top_down = vec![upper.clone()];
    let mut current = upper.clone();
    while current.order() > lower.order() {
        let by = if whole_by { all.clone() } else { current.clone() };
        let m = maximal_normal_below(g, lower, &current, &by, tb);
        top_down.push(m.clone());
        current = m;
    }
    top_down.reverse();
    let factors = top_down
        .windows(2)
        .map(|w| iso_label(&g.quotient(&w[1], &w[0])))
        .collect();
    FiniteSeries {
        subgroups: top_down,
        factors,
    }
}

/// Composition series of `upper / lower`: each step normal in the next with
/// simple quotient. `lower` must be normal in `upper`.
pub fn composition_series_between(
    g: &FiniteGroup,
    lower: &Subgroup,
    upper: &Subgroup,
    tb: &mut TieBreak,
) -> Result<FiniteSeries, FiniteGroupError> {
    check_budget(g)?;
    Ok(build_between(g, lower, upper, false, tb))
}

/// Chief series of `upper / lower`: every step normal in the whole group and
/// minimal with that property. `lower`, `upper` must be normal in `g`.
pub fn chief_series_between(
    g: &FiniteGroup,
    lower: &Subgroup,
    upper: &Subgroup,
    tb: &mut TieBreak,
) -> Result<FiniteSeries, FiniteGroupError> {
    check_budget(g)?;
    Ok(build_between(g, lower, upper, true, tb))
}

pub fn composition_series_finite(
    g: &FiniteGroup,
    tb: &mut TieBreak,
) -> Result<FiniteSeries, FiniteGroupError> {
    composition_series_between(g, &Subgroup::trivial(), &Subgroup::whole(g), tb)
}

/// True iff the only normal subgroups are `1` and `g`. The trivial group is
/// not simple.
pub fn is_simple_finite(g: &FiniteGroup) -> bool {
    if g.order() < 2 {
        return false;
    }
    let all = Subgroup::whole(g);
    g.class_representatives(&all)
        .into_iter()
        .filter(|&x| x != 0)
        .all(|x| g.normal_closure(&[x], &all).order() == g.order())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegroup::{make_catalog_group, CatalogKind};

    fn names(s: &FiniteSeries) -> Vec<String> {
        let mut v: Vec<String> = s.factors.iter().map(|l| l.to_string()).collect();
        v.sort();
        v
    }

    #[test]
    fn simple_catalog() {
        assert!(is_simple_finite(&make_catalog_group(CatalogKind::Alternating(5)).unwrap()));
        assert!(!is_simple_finite(&make_catalog_group(CatalogKind::Cyclic(4)).unwrap()));
        assert!(!is_simple_finite(&make_catalog_group(CatalogKind::Cyclic(1)).unwrap()));
        assert!(!is_simple_finite(&make_catalog_group(CatalogKind::Symmetric(5)).unwrap()));
        for p in (2..=97u64).filter(|&p| crate::padic::is_prime(p)) {
            let c = make_catalog_group(CatalogKind::Cyclic(p as usize)).unwrap();
            assert!(is_simple_finite(&c), "C{p}");
        }
    }

    #[test]
    fn composition_factors() {
        let c12 = make_catalog_group(CatalogKind::Cyclic(12)).unwrap();
        let s = composition_series_finite(&c12, &mut TieBreak::Canonical).unwrap();
        assert_eq!(names(&s), ["C2", "C2", "C3"]);
        let s4 = make_catalog_group(CatalogKind::Symmetric(4)).unwrap();
        let s = composition_series_finite(&s4, &mut TieBreak::Canonical).unwrap();
        assert_eq!(names(&s), ["C2", "C2", "C2", "C3"]);
        let orders: Vec<usize> = s.subgroups.iter().map(Subgroup::order).collect();
        assert_eq!(orders, [1, 2, 4, 12, 24]);
        let a5 = make_catalog_group(CatalogKind::Alternating(5)).unwrap();
        let s = composition_series_finite(&a5, &mut TieBreak::Canonical).unwrap();
        assert_eq!(names(&s), ["A5"]);
    }

    #[test]
    fn seeds_agree_on_factors() {
        for kind in [
            CatalogKind::Cyclic(24),
            CatalogKind::Dihedral(6),
            CatalogKind::Symmetric(4),
            CatalogKind::Dihedral(4),
        ] {
            let g = make_catalog_group(kind).unwrap();
            let base = composition_series_finite(&g, &mut TieBreak::Canonical)
                .unwrap()
                .factor_multiset();
            for seed in 0..10 {
                let s = composition_series_finite(&g, &mut TieBreak::seeded(seed)).unwrap();
                assert_eq!(s.factor_multiset(), base, "{kind} seed {seed}");
            }
        }
    }

    #[test]
    fn chief_series_of_s4() {
        let s4 = make_catalog_group(CatalogKind::Symmetric(4)).unwrap();
        let s = chief_series_between(&s4, &Subgroup::trivial(), &Subgroup::whole(&s4), &mut TieBreak::Canonical)
            .unwrap();
        assert_eq!(names(&s), ["C2", "C2^2", "C3"]);
        let all = Subgroup::whole(&s4);
        assert!(s.subgroups.iter().all(|n| s4.is_normalized_by(n, &all)));
    }

    #[test]
    fn budget() {
        let a6 = make_catalog_group(CatalogKind::Alternating(6)).unwrap();
        assert!(composition_series_finite(&a6, &mut TieBreak::Canonical).is_err());
        assert!(is_simple_finite(&a6));
    }
}
