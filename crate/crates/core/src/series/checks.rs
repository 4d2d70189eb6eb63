use std::collections::BTreeMap;

use crate::groupmodel::{module_delta_factored, ContractionGroup};

use super::{FactorClass, SeriesChain};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum MatchKind {
    Equal,
    /// Polynomials agree modulo `p^N` but at least one is approximate.
    AgreeToPrecision,
    Different,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JhReport {
    /// Factor multisets agree (exactly or to working precision).
    pub equal: bool,
    /// `(index in first, index in second, how they matched)`.
    pub matching: Vec<(usize, usize, MatchKind)>,
    pub unmatched_first: Vec<usize>,
    pub unmatched_second: Vec<usize>,
}

impl JhReport {
    /// Some pair only agrees to working precision.
    pub fn approximate(&self) -> bool {
        self.matching
            .iter()
            .any(|&(_, _, k)| k == MatchKind::AgreeToPrecision)
    }
}

/// Greedy bijection between the factor lists, exact matches first.
pub fn jordan_holder_verify(s1: &SeriesChain, s2: &SeriesChain, precision: u32) -> JhReport {
    let f1: Vec<Option<FactorClass>> = s1.steps.iter().map(|s| s.factor.clone()).collect();
    let f2: Vec<Option<FactorClass>> = s2.steps.iter().map(|s| s.factor.clone()).collect();
    let mut used = vec![false; f2.len()];
    let mut matching = Vec::new();
    let mut unmatched_first = Vec::new();
    for (i, a) in f1.iter().enumerate() {
        let Some(a) = a else {
            unmatched_first.push(i);
            continue;
        };
        let mut found: Option<(usize, MatchKind)> = None;
        for (j, b) in f2.iter().enumerate() {
            let Some(b) = b else { continue };
            if used[j] {
                continue;
            }
            match a.compare(b, precision) {
                MatchKind::Equal => {
                    found = Some((j, MatchKind::Equal));
                    break;
                }
                MatchKind::AgreeToPrecision if found.is_none() => {
                    found = Some((j, MatchKind::AgreeToPrecision))
                }
                _ => {}
            }
        }
        match found {
            Some((j, k)) => {
                used[j] = true;
                matching.push((i, j, k));
            }
            None => unmatched_first.push(i),
        }
    }
    let unmatched_second: Vec<usize> = (0..f2.len()).filter(|&j| !used[j]).collect();
    JhReport {
        equal: s1.mode == s2.mode && unmatched_first.is_empty() && unmatched_second.is_empty(),
        matching,
        unmatched_first,
        unmatched_second,
    }
}

/// Number of prime factors counted with multiplicity.
pub fn omega(factored: &BTreeMap<u64, u32>) -> u32 {
    factored.values().sum()
}

/// `length(chain) <= Ω(Δ_G(α⁻¹))`.
pub fn check_length_bound(g: &ContractionGroup, chain: &SeriesChain) -> bool {
    chain.len() as u32 <= omega(&module_delta_factored(g))
}

/// `Δ_G` equals the product of the step modules and, when every step has a
/// simple factor, the product of the factor modules.
pub fn check_module_multiplicativity(g: &ContractionGroup, chain: &SeriesChain) -> bool {
    let target = module_delta_factored(g);
    let mut from_steps: BTreeMap<u64, u32> = BTreeMap::new();
    for s in &chain.steps {
        for (&p, &e) in &s.module {
            *from_steps.entry(p).or_insert(0) += e;
        }
    }
    if from_steps != target {
        return false;
    }
    match chain.factors() {
        None => true,
        Some(fs) => {
            let mut from_factors: BTreeMap<u64, u32> = BTreeMap::new();
            for f in &fs {
                for (p, e) in f.module_factored() {
                    *from_factors.entry(p).or_insert(0) += e;
                }
            }
            from_factors.retain(|_, e| *e > 0);
            from_factors == target
        }
    }
}
