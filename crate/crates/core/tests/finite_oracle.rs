//! Finite-group layer against exhaustive enumeration on small tables.

use std::collections::BTreeSet;

use contractio::finitegroup::{
    chief_series_between, composition_series_finite, iso_finite, iso_label, is_simple_finite,
    make_catalog_group, CatalogKind, FiniteGroup, Subgroup,
};
use contractio::random::small_catalog;
use contractio::tiebreak::TieBreak;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn identity(g: &FiniteGroup) -> usize {
    (0..g.order())
        .find(|&e| (0..g.order()).all(|x| g.mul(e, x) == x))
        .unwrap()
}

/// Every subset closed under multiplication, found from all generating pairs
/// (all groups below have 2-generated subgroups only).
fn subgroups(g: &FiniteGroup) -> Vec<BTreeSet<usize>> {
    let n = g.order();
    let e = identity(g);
    let mut out: BTreeSet<BTreeSet<usize>> = BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            let mut s: BTreeSet<usize> = [e, a, b].into();
            loop {
                let cur: Vec<usize> = s.iter().copied().collect();
                let before = s.len();
                for &x in &cur {
                    for &y in &cur {
                        s.insert(g.mul(x, y));
                    }
                }
                if s.len() == before {
                    break;
                }
            }
            out.insert(s);
        }
    }
    out.into_iter().collect()
}

fn is_normal(g: &FiniteGroup, k: &BTreeSet<usize>) -> bool {
    (0..g.order()).all(|x| k.iter().all(|&y| k.contains(&g.conj(x, y))))
}

fn brute_simple(g: &FiniteGroup) -> bool {
    g.order() > 1
        && subgroups(g)
            .iter()
            .filter(|k| is_normal(g, k))
            .all(|k| k.len() == 1 || k.len() == g.order())
}

fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while n > 1 {
        while n.is_multiple_of(d) {
            out.push(d);
            n /= d;
        }
        d += 1;
    }
    out
}

#[test]
fn simplicity_matches_enumeration() {
    let mut kinds = small_catalog();
    kinds.extend([CatalogKind::Alternating(5), CatalogKind::Cyclic(1)]);
    for k in kinds {
        let g = make_catalog_group(k).unwrap();
        assert_eq!(is_simple_finite(&g), brute_simple(&g), "{k}");
    }
}

#[test]
fn solvable_factor_orders_are_prime_factorizations() {
    // every catalog group of order <= 24 is solvable, so factors are C_p
    for k in small_catalog() {
        let g = make_catalog_group(k).unwrap();
        let s = composition_series_finite(&g, &mut TieBreak::Canonical).unwrap();
        let mut orders: Vec<usize> = s.factors.iter().map(|l| l.order).collect();
        orders.sort_unstable();
        assert_eq!(orders, prime_factors(g.order()), "{k}");
        for w in s.subgroups.windows(2) {
            assert!(w[0].is_subset_of(&w[1]));
            assert!(g.is_normalized_by(&w[0], &w[1]), "{k}");
        }
    }
}

#[test]
fn chief_factors_are_minimal_normal() {
    let g = make_catalog_group(CatalogKind::Symmetric(4)).unwrap();
    let all = subgroups(&g);
    let normal: Vec<&BTreeSet<usize>> = all.iter().filter(|k| is_normal(&g, k)).collect();
    let s = chief_series_between(&g, &Subgroup::trivial(), &Subgroup::whole(&g), &mut TieBreak::Canonical).unwrap();
    for w in s.subgroups.windows(2) {
        let lo: BTreeSet<usize> = w[0].elements().iter().copied().collect();
        let hi: BTreeSet<usize> = w[1].elements().iter().copied().collect();
        assert!(normal.contains(&&hi));
        // no normal subgroup of the whole group strictly between
        assert!(!normal
            .iter()
            .any(|m| lo.is_subset(m) && m.is_subset(&hi) && m.len() != lo.len() && m.len() != hi.len()));
    }
}

#[test]
fn labels_survive_relabelling() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for k in small_catalog() {
        let g = make_catalog_group(k).unwrap();
        let mut perm: Vec<usize> = (0..g.order()).collect();
        perm[1..].shuffle(&mut rng);
        let h = g.relabel(&perm);
        assert_eq!(iso_label(&g).order, iso_label(&h).order);
        assert_eq!(iso_label(&g).element_orders, iso_label(&h).element_orders);
        assert!(iso_finite(&g, &h).unwrap(), "{k}");
    }
    let c4 = make_catalog_group(CatalogKind::Cyclic(4)).unwrap();
    let v4 = FiniteGroup::from_table(
        vec![vec![0, 1, 2, 3], vec![1, 0, 3, 2], vec![2, 3, 0, 1], vec![3, 2, 1, 0]],
        None,
    )
    .unwrap();
    assert!(!iso_finite(&c4, &v4).unwrap());
}
