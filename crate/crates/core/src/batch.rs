//! Whole-group property checks, fanned out over many groups.
//!
//! With the `parallel` feature the fan-out runs on the rayon pool; without it
//! the same code runs sequentially. Results are always in input order.

use num_bigint::BigInt;

use crate::error::SeriesError;
use crate::groupmodel::{module_delta, ContractionGroup};
use crate::series::{
    check_length_bound, check_module_multiplicativity, jordan_holder_verify, SeriesChain, SeriesEngine,
    SeriesMode,
};
use crate::theorems::{verify_structure, StructureOptions, StructureReport};
use crate::tiebreak::TieBreak;

/// Order-preserving map, parallel when the `parallel` feature is on.
#[cfg(feature = "parallel")]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    T: Sync,
    R: Send,
    F: Fn(&T) -> R + Sync + Send,
{
    use rayon::prelude::*;
    items.par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
pub fn par_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

/// Sequential reference for [`par_map`].
pub fn seq_map<T, R, F>(items: &[T], f: F) -> Vec<R>
where
    F: Fn(&T) -> R,
{
    items.iter().map(f).collect()
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CheckOptions {
    pub seed: u64,
    pub samples: usize,
    pub max_root: u64,
    pub precision: u32,
}

impl Default for CheckOptions {
    fn default() -> Self {
        CheckOptions {
            seed: 0,
            samples: 100,
            max_root: 50,
            precision: crate::padic::DEFAULT_PRECISION,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupChecks {
    pub delta: BigInt,
    pub length: usize,
    /// Two seeded series per mode have identical factor multisets.
    pub jordan_holder: bool,
    /// Every factor module is an integer `>= 2`.
    pub factor_modules: bool,
    pub multiplicativity: bool,
    pub length_bound: bool,
    /// The canonical series is special and its refinement is a composition series.
    pub canonical: bool,
    /// An `alpha-normal` series is also a valid `alpha` chain.
    pub mode_weakening: bool,
    pub structure: bool,
    pub structure_report: StructureReport,
    /// Some factor was only certified to working precision.
    pub uncertified: bool,
}

impl GroupChecks {
    pub fn all_ok(&self) -> bool {
        self.jordan_holder
            && self.factor_modules
            && self.multiplicativity
            && self.length_bound
            && self.canonical
            && self.mode_weakening
            && self.structure
    }
}

/// Keeps the partial chain of an uncertified result, flagging it.
fn lenient(r: Result<SeriesChain, SeriesError>, uncertified: &mut bool) -> Result<SeriesChain, SeriesError> {
    match r {
        Err(SeriesError::Uncertified { partial, .. }) => {
            *uncertified = true;
            Ok(*partial)
        }
        other => other,
    }
}

/// Runs the full property suite on one group.
pub fn check_group(g: &ContractionGroup, opts: CheckOptions) -> Result<GroupChecks, SeriesError> {
    let engine = SeriesEngine::with_precision(g, opts.precision)?;
    let mut jordan_holder = true;
    let mut factor_modules = true;
    let mut multiplicativity = true;
    let mut length_bound = true;
    let mut uncertified = false;
    let mut length = 0;
    let two = BigInt::from(2);
    for mode in [SeriesMode::Alpha, SeriesMode::AlphaNormal] {
        let a = lenient(engine.composition_series(mode, &mut TieBreak::seeded(opts.seed)), &mut uncertified)?;
        let b = lenient(
            engine.composition_series(mode, &mut TieBreak::seeded(opts.seed ^ 0x9e37_79b9_7f4a_7c15)),
            &mut uncertified,
        )?;
        let jh = jordan_holder_verify(&a, &b, opts.precision);
        jordan_holder &= jh.equal && a.sorted_factors() == b.sorted_factors();
        uncertified |= jh.approximate();
        for s in [&a, &b] {
            factor_modules &= s.steps.iter().all(|st| {
                st.factor.as_ref().is_some_and(|f| f.module() >= two)
            });
            multiplicativity &= check_module_multiplicativity(g, s);
            length_bound &= check_length_bound(g, s);
        }
        length = a.len();
    }

    let canon = engine.canonical_series();
    let canonical = engine.is_special(&canon)
        && lenient(engine.refine(&canon, &mut TieBreak::seeded(opts.seed)), &mut uncertified)
            .is_ok_and(|r| engine.is_composition_series(&r));

    let normal = lenient(
        engine.composition_series(SeriesMode::AlphaNormal, &mut TieBreak::Canonical),
        &mut uncertified,
    )?;
    let weakened = SeriesChain {
        mode: SeriesMode::Alpha,
        ..normal
    };
    let mode_weakening = engine.validate(&weakened).is_ok();

    let structure_report = verify_structure(
        g,
        StructureOptions {
            samples: opts.samples,
            seed: opts.seed,
            max_root: opts.max_root,
        },
    );

    Ok(GroupChecks {
        delta: module_delta(g),
        length,
        jordan_holder,
        factor_modules,
        multiplicativity,
        length_bound,
        canonical,
        mode_weakening,
        structure: structure_report.all_ok(),
        structure_report,
        uncertified,
    })
}

/// [`check_group`] over many groups; group `i` uses seed `opts.seed + i`.
pub fn check_batch(groups: &[ContractionGroup], opts: CheckOptions) -> Vec<Result<GroupChecks, SeriesError>> {
    let indexed: Vec<(usize, &ContractionGroup)> = groups.iter().enumerate().collect();
    par_map(&indexed, |&(i, g)| {
        check_group(
            g,
            CheckOptions {
                seed: opts.seed.wrapping_add(i as u64),
                ..opts
            },
        )
    })
}

/// Sequential [`check_batch`].
pub fn check_batch_sequential(
    groups: &[ContractionGroup],
    opts: CheckOptions,
) -> Vec<Result<GroupChecks, SeriesError>> {
    let indexed: Vec<(usize, &ContractionGroup)> = groups.iter().enumerate().collect();
    seq_map(&indexed, |&(i, g)| {
        check_group(
            g,
            CheckOptions {
                seed: opts.seed.wrapping_add(i as u64),
                ..opts
            },
        )
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::random::random_group;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn parallel_matches_sequential() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let groups: Vec<_> = (0..6).map(|_| random_group(&mut rng, 3)).collect();
        let opts = CheckOptions {
            samples: 5,
            max_root: 6,
            ..Default::default()
        };
        let a = check_batch(&groups, opts);
        let b = check_batch_sequential(&groups, opts);
        assert_eq!(a, b);
        for r in a {
            let r = r.unwrap();
            assert!(r.all_ok(), "{r:?}");
        }
    }

    #[test]
    fn par_map_keeps_order() {
        let v: Vec<u64> = (0..1000).collect();
        assert_eq!(par_map(&v, |x| x * x), seq_map(&v, |x| x * x));
    }
}
