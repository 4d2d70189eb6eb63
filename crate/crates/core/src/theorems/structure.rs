use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::groupmodel::{module_delta, Block, ContractionGroup, GroupElement};
use crate::random::random_element;

/// Product of the shift blocks.
pub fn torsion_part(g: &ContractionGroup) -> ContractionGroup {
    g.select(&torsion_indices(g))
}

fn torsion_indices(g: &ContractionGroup) -> Vec<usize> {
    (0..g.len()).filter(|&i| g.block(i).is_torsion()).collect()
}

fn divisible_indices(g: &ContractionGroup) -> Vec<(u64, Vec<usize>)> {
    let mut by_prime: BTreeMap<u64, Vec<usize>> = BTreeMap::new();
    for (i, b) in g.blocks().iter().enumerate() {
        if let Some(p) = b.prime() {
            by_prime.entry(p).or_default().push(i);
        }
    }
    by_prime.into_iter().collect()
}

/// Non-shift blocks grouped by prime, primes ascending.
pub fn divisible_part(g: &ContractionGroup) -> Vec<(u64, ContractionGroup)> {
    divisible_indices(g)
        .into_iter()
        .map(|(p, idx)| (p, g.select(&idx)))
        .collect()
}

/// `Δ_T(α⁻¹)` for the torsion part `T`.
pub fn t_alpha(g: &ContractionGroup) -> BigInt {
    module_delta(&torsion_part(g))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StructureOptions {
    pub samples: usize,
    pub seed: u64,
    /// Roots are checked for `n = 1..=max_root`.
    pub max_root: u64,
}

impl Default for StructureOptions {
    fn default() -> Self {
        StructureOptions {
            samples: 100,
            seed: 0,
            max_root: 50,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StructureReport {
    pub torsion_blocks: Vec<usize>,
    /// `(p, block indices of G_p)`.
    pub divisible: Vec<(u64, Vec<usize>)>,
    pub t_alpha: BigInt,
    pub exponent: u64,
    pub samples: usize,
    pub max_root: u64,
    pub exponent_divides_t_alpha: bool,
    /// `x^{t_α}` has identity torsion components for every sample.
    pub torsion_killed: bool,
    /// Every sampled divisible component has an `n`-th root for all `n`.
    pub roots_exist: bool,
    /// `root(y^n) = y` for sampled `y` and all `n`.
    pub roots_unique: bool,
    /// Shift components are torsion and nonzero divisible ones are not.
    pub dichotomy: bool,
    /// Blocks of `T` and the `G_p` reassemble `G`, and `x = t d` samplewise.
    pub recombination: bool,
}

impl StructureReport {
    pub fn all_ok(&self) -> bool {
        self.exponent_divides_t_alpha
            && self.torsion_killed
            && self.roots_exist
            && self.roots_unique
            && self.dichotomy
            && self.recombination
    }
}

fn project(g: &ContractionGroup, x: &GroupElement, keep: &[usize]) -> GroupElement {
    let id = g.identity();
    GroupElement::new(
        (0..g.len())
            .map(|i| {
                if keep.contains(&i) {
                    x.component(i).clone()
                } else {
                    id.component(i).clone()
                }
            })
            .collect(),
    )
}

/// Samples elements with a fixed seed and checks the torsion/divisible
/// decomposition. Failures become `false` flags.
pub fn verify_structure(g: &ContractionGroup, opts: StructureOptions) -> StructureReport {
    let tor = torsion_indices(g);
    let div = divisible_indices(g);
    let div_flat: Vec<usize> = div.iter().flat_map(|(_, v)| v.iter().copied()).collect();
    let ta = t_alpha(g);
    let exponent = tor.iter().fold(1u64, |acc, &i| match g.block(i) {
        Block::Shift(s) => acc.lcm(&s.group().exponent()),
        _ => acc,
    });
    let exponent_divides_t_alpha = (&ta % BigInt::from(exponent)).is_zero();

    let mut sorted: Vec<usize> = tor.iter().chain(&div_flat).copied().collect();
    sorted.sort_unstable();
    let mut recombination = sorted == (0..g.len()).collect::<Vec<_>>()
        && div.windows(2).all(|w| w[0].0 < w[1].0)
        && tor.iter().all(|&i| g.block(i).is_torsion())
        && div.iter().all(|(p, idx)| idx.iter().all(|&i| g.block(i).prime() == Some(*p)));
    let mut rebuilt: Vec<Option<Block>> = vec![None; g.len()];
    for (k, &i) in tor.iter().enumerate() {
        rebuilt[i] = Some(torsion_part(g).block(k).clone());
    }
    for ((_, h), (_, idx)) in divisible_part(g).iter().zip(&div) {
        for (k, &i) in idx.iter().enumerate() {
            rebuilt[i] = Some(h.block(k).clone());
        }
    }
    recombination &= rebuilt
        .into_iter()
        .enumerate()
        .all(|(i, b)| b.as_ref() == Some(g.block(i)));

    // exponent for x^{t_α}: exact when it fits, else reduced modulo exp(T)
    let t_pow = ta.to_i64().unwrap_or_else(|| (&ta % BigInt::from(exponent)).to_i64().unwrap());

    let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
    let mut torsion_killed = true;
    let mut roots_exist = true;
    let mut roots_unique = true;
    let mut dichotomy = true;
    for _ in 0..opts.samples {
        let x = random_element(&mut rng, g);
        let xt = g.power(&x, t_pow);
        torsion_killed &= tor.iter().all(|&i| *xt.component(i) == g.identity().component(i).clone());

        let t = project(g, &x, &tor);
        let d = project(g, &x, &div_flat);
        recombination &= g.multiply(&t, &d) == x && g.multiply(&d, &t) == x;

        dichotomy &= g.is_torsion(&t);
        for &i in &div_flat {
            let single = project(g, &x, &[i]);
            dichotomy &= g.is_identity(&single) || !g.is_torsion(&single);
        }

        let y = project(g, &random_element(&mut rng, g), &div_flat);
        for n in 1..=opts.max_root {
            match g.nth_root(&d, n) {
                Ok(r) => roots_exist &= project(g, &r, &div_flat) == r && g.power(&r, n as i64) == d,
                Err(_) => roots_exist = false,
            }
            let yn = g.power(&y, n as i64);
            roots_unique &= g.nth_root(&yn, n).is_ok_and(|r| r == y);
        }
    }
    StructureReport {
        torsion_blocks: tor,
        divisible: div,
        t_alpha: ta,
        exponent,
        samples: opts.samples,
        max_root: opts.max_root,
        exponent_divides_t_alpha,
        torsion_killed,
        roots_exist,
        roots_unique,
        dichotomy,
        recombination,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::finitegroup::CatalogKind;
    use crate::linalg::Matrix;
    use crate::padic::valuation::rat;

    fn shift(n: usize) -> Block {
        Block::catalog_shift(CatalogKind::Cyclic(n)).unwrap()
    }

    #[test]
    fn decomposition() {
        let g = ContractionGroup::new(vec![
            shift(2),
            Block::linear(3, Matrix::diagonal(&[rat(3)])).unwrap(),
            Block::heisenberg(3, 1, 1).unwrap(),
        ]);
        assert_eq!(torsion_part(&g).to_string(), "shift(C2)");
        let d = divisible_part(&g);
        assert_eq!(d.len(), 1);
        assert_eq!(d[0].0, 3);
        assert_eq!(d[0].1.len(), 2);
        let r = verify_structure(&g, StructureOptions::default());
        assert!(r.all_ok(), "{r:?}");
        assert_eq!(r.t_alpha, BigInt::from(2));
    }

    #[test]
    fn t_alpha_examples() {
        let g = ContractionGroup::new(vec![shift(2), shift(3)]);
        assert_eq!(t_alpha(&g), BigInt::from(6));
        let r = verify_structure(&g, StructureOptions { samples: 20, ..Default::default() });
        assert_eq!(r.exponent, 6);
        assert!(r.all_ok());
        let g = ContractionGroup::new(vec![shift(2), shift(2)]);
        assert_eq!(t_alpha(&g), BigInt::from(4));
        assert_eq!(verify_structure(&g, StructureOptions { samples: 5, ..Default::default() }).exponent, 2);
        let g = ContractionGroup::new(vec![Block::heisenberg(5, 1, 2).unwrap()]);
        assert_eq!(t_alpha(&g), BigInt::from(1));
        assert!(torsion_part(&g).is_trivial());
        assert!(verify_structure(&g, StructureOptions { samples: 10, ..Default::default() }).all_ok());
        assert!(divisible_part(&ContractionGroup::new(vec![shift(5)])).is_empty());
    }

    #[test]
    fn deterministic_for_seed() {
        let g = ContractionGroup::new(vec![shift(4), Block::heisenberg(2, 1, 1).unwrap()]);
        let o = StructureOptions { samples: 10, seed: 7, max_root: 10 };
        assert_eq!(verify_structure(&g, o), verify_structure(&g, o));
    }
}
