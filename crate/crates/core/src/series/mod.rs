//! α-stable subgroup chains over the block model: composition series in
//! both operator modes, refinement, Jordan-Hölder comparison, module
//! checks, the canonical series and stable hulls.

mod checks;
mod heisenberg;
mod linear;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::One;

use crate::error::SeriesError;
use crate::finitegroup::{
    chief_series_between, composition_series_between, is_simple_finite, FiniteIsoLabel, Subgroup,
};
use crate::groupmodel::{factor_small, Block, ContractionGroup};
use crate::padic::valuation::pow_p_int;
use crate::padic::{
    compare_at_precision, valuation, Certification, IrreducibilityWitness, PAdicPoly, PolyMatch,
    RatPoly, DEFAULT_PRECISION,
};
use crate::tiebreak::TieBreak;

pub use checks::{
    check_length_bound, check_module_multiplicativity, jordan_holder_verify, omega, JhReport,
    MatchKind,
};
pub use heisenberg::HeisSub;
pub use linear::{stable_hull, LinearAnalysis, LinearSub};

/// Operator set: `Alpha` asks each step to be normal in the next, while
/// `AlphaNormal` (inner automorphisms together with α) asks each step to be
/// normal in the whole group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SeriesMode {
    Alpha,
    AlphaNormal,
}

impl fmt::Display for SeriesMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SeriesMode::Alpha => "alpha",
            SeriesMode::AlphaNormal => "alpha-normal",
        })
    }
}

impl FromStr for SeriesMode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "alpha" => Ok(SeriesMode::Alpha),
            "alpha-normal" | "alpha_normal" => Ok(SeriesMode::AlphaNormal),
            _ => Err(format!("unknown mode {s:?} (expected alpha or alpha-normal)")),
        }
    }
}

/// Isomorphism type of a composition factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorClass {
    /// `F^(Z)` with the shift, `F` finite simple.
    TorsionSimple(FiniteIsoLabel),
    /// Chief factor of a shift block in `AlphaNormal` mode whose group is not simple.
    TorsionChief(FiniteIsoLabel),
    /// `Q_p[X]/(f)` with multiplication by `X`.
    PadicSimple {
        p: u64,
        f: PAdicPoly,
        /// Absolute precision of the coefficients of `f`; `None` when exact.
        precision: Option<u32>,
        certification: Certification,
        witness: Option<IrreducibilityWitness>,
    },
}

impl FactorClass {
    pub fn padic_exact(p: u64, f: PAdicPoly, witness: IrreducibilityWitness) -> Self {
        FactorClass::PadicSimple {
            p,
            f,
            precision: None,
            certification: Certification::RationalExact,
            witness: Some(witness),
        }
    }

    /// Prime exponents of the module of `α⁻¹` on the factor.
    pub fn module_factored(&self) -> BTreeMap<u64, u32> {
        match self {
            FactorClass::TorsionSimple(l) | FactorClass::TorsionChief(l) => {
                factor_small(l.order as u64).into_iter().collect()
            }
            FactorClass::PadicSimple { p, f, .. } => {
                let v = valuation(&f.coeff(0), *p).finite().expect("nonzero constant term");
                BTreeMap::from([(*p, v.max(0) as u32)])
            }
        }
    }

    pub fn module(&self) -> BigInt {
        self.module_factored()
            .iter()
            .fold(BigInt::one(), |acc, (&p, &e)| acc * pow_p_int(p, e))
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, FactorClass::TorsionSimple(_) | FactorClass::TorsionChief(_))
    }

    pub fn is_torsion_free(&self) -> bool {
        matches!(self, FactorClass::PadicSimple { .. })
    }

    /// Irreducibility (or simplicity) is certified.
    pub fn is_certified(&self) -> bool {
        match self {
            FactorClass::TorsionSimple(_) | FactorClass::TorsionChief(_) => true,
            FactorClass::PadicSimple {
                certification,
                witness,
                ..
            } => *certification != Certification::Uncertified && witness.is_some(),
        }
    }

    /// Comparison with polynomial equality decided modulo `p^n`.
    pub fn compare(&self, o: &FactorClass, n: u32) -> MatchKind {
        match (self, o) {
            (FactorClass::TorsionSimple(a), FactorClass::TorsionSimple(b))
            | (FactorClass::TorsionChief(a), FactorClass::TorsionChief(b)) => {
                if a == b {
                    MatchKind::Equal
                } else {
                    MatchKind::Different
                }
            }
            (
                FactorClass::PadicSimple {
                    p, f, precision, ..
                },
                FactorClass::PadicSimple {
                    p: q,
                    f: g,
                    precision: pg,
                    ..
                },
            ) if p == q => {
                let n = [Some(n), *precision, *pg].into_iter().flatten().min().unwrap();
                match compare_at_precision(f, precision.is_none(), g, pg.is_none(), *p, n) {
                    PolyMatch::Equal => MatchKind::Equal,
                    PolyMatch::AgreeToPrecision => MatchKind::AgreeToPrecision,
                    PolyMatch::Different => MatchKind::Different,
                }
            }
            _ => MatchKind::Different,
        }
    }

    /// Stable ordering key for printing multisets.
    pub fn sort_key(&self) -> (u8, u64, usize, String) {
        match self {
            FactorClass::TorsionSimple(l) => (0, 0, l.order, l.to_string()),
            FactorClass::TorsionChief(l) => (1, 0, l.order, l.to_string()),
            FactorClass::PadicSimple { p, f, .. } => (2, *p, f.degree(), f.to_string()),
        }
    }
}

impl fmt::Display for FactorClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FactorClass::TorsionSimple(l) => write!(f, "TorsionSimple({l})"),
            FactorClass::TorsionChief(l) => write!(f, "TorsionChief({l})"),
            FactorClass::PadicSimple {
                p, f: poly, precision, ..
            } => match precision {
                None => write!(f, "PadicSimple({p}, {poly})"),
                Some(n) => write!(f, "PadicSimple({p}, {poly} mod {p}^{n})"),
            },
        }
    }
}

/// One block's sub-object.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum BlockSub {
    /// `N^(Z)` for a subgroup `N` of the finite group.
    Shift(Subgroup),
    Linear(LinearSub),
    Heisenberg(HeisSub),
}

impl fmt::Display for BlockSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BlockSub::Shift(s) if s.order() == 1 => f.write_str("1"),
            BlockSub::Shift(s) => write!(f, "N{}", s.order()),
            BlockSub::Linear(v) => write!(f, "{v}"),
            BlockSub::Heisenberg(h) => write!(f, "{h}"),
        }
    }
}

/// Block-structured subgroup: one sub-object per block.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SubgroupDesc {
    pub parts: Vec<BlockSub>,
}

impl SubgroupDesc {
    pub fn with(&self, block: usize, sub: BlockSub) -> Self {
        let mut parts = self.parts.clone();
        parts[block] = sub;
        SubgroupDesc { parts }
    }
}

impl fmt::Display for SubgroupDesc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("1");
        }
        for (i, p) in self.parts.iter().enumerate() {
            if i > 0 {
                f.write_str(" x ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChainStep {
    /// The only block changed by this step, if there is exactly one.
    pub block: Option<usize>,
    /// Present when the step quotient is simple for the chain's operators.
    pub factor: Option<FactorClass>,
    /// Module of `α⁻¹` on the step quotient, from the sub-objects.
    pub module: BTreeMap<u64, u32>,
}

/// Ascending chain from the trivial subgroup to the whole group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeriesChain {
    pub mode: SeriesMode,
    pub terms: Vec<SubgroupDesc>,
    pub steps: Vec<ChainStep>,
}

impl SeriesChain {
    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Factors of a composition series, `None` if some step is not simple.
    pub fn factors(&self) -> Option<Vec<FactorClass>> {
        self.steps.iter().map(|s| s.factor.clone()).collect()
    }

    /// Factors sorted by [`FactorClass::sort_key`].
    pub fn sorted_factors(&self) -> Option<Vec<FactorClass>> {
        let mut v = self.factors()?;
        v.sort_by_key(FactorClass::sort_key);
        Some(v)
    }

    pub fn is_fully_certified(&self) -> bool {
        self.steps
            .iter()
            .all(|s| s.factor.as_ref().is_none_or(FactorClass::is_certified))
    }
}

#[derive(Clone, Debug)]
enum Analysis {
    Shift,
    Linear(LinearAnalysis),
    Heisenberg,
}

/// Per-group precomputation shared by every series operation.
#[derive(Clone, Debug)]
pub struct SeriesEngine<'g> {
    group: &'g ContractionGroup,
    precision: u32,
    analyses: Vec<Analysis>,
}

impl<'g> SeriesEngine<'g> {
    pub fn new(group: &'g ContractionGroup) -> Result<Self, SeriesError> {
        Self::with_precision(group, DEFAULT_PRECISION)
    }

    pub fn with_precision(group: &'g ContractionGroup, precision: u32) -> Result<Self, SeriesError> {
        let analyses = group
            .blocks()
            .iter()
            .map(|b| match b {
                Block::Shift(_) => Ok(Analysis::Shift),
                Block::Linear(l) => LinearAnalysis::new(l, precision).map(Analysis::Linear),
                Block::Heisenberg(_) => Ok(Analysis::Heisenberg),
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(SeriesEngine {
            group,
            precision,
            analyses,
        })
    }

    pub fn group(&self) -> &ContractionGroup {
        self.group
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }

    pub fn linear_analysis(&self, block: usize) -> Option<&LinearAnalysis> {
        match &self.analyses[block] {
            Analysis::Linear(a) => Some(a),
            _ => None,
        }
    }

    pub fn block_trivial(&self, i: usize) -> BlockSub {
        match self.group.block(i) {
            Block::Shift(_) => BlockSub::Shift(Subgroup::trivial()),
            Block::Linear(_) => BlockSub::Linear(LinearSub::zero()),
            Block::Heisenberg(_) => BlockSub::Heisenberg(HeisSub::Trivial),
        }
    }

    pub fn block_whole(&self, i: usize) -> BlockSub {
        match (self.group.block(i), &self.analyses[i]) {
            (Block::Shift(s), _) => BlockSub::Shift(Subgroup::whole(s.group())),
            (_, Analysis::Linear(a)) => BlockSub::Linear(a.whole()),
            _ => BlockSub::Heisenberg(HeisSub::Whole),
        }
    }

    pub fn trivial(&self) -> SubgroupDesc {
        SubgroupDesc {
            parts: (0..self.group.len()).map(|i| self.block_trivial(i)).collect(),
        }
    }

    pub fn whole(&self) -> SubgroupDesc {
        SubgroupDesc {
            parts: (0..self.group.len()).map(|i| self.block_whole(i)).collect(),
        }
    }

    /// Prime exponents of `Δ(α⁻¹)` on the subgroup.
    pub fn sub_delta(&self, s: &SubgroupDesc) -> BTreeMap<u64, u32> {
        let mut out = BTreeMap::new();
        for (i, part) in s.parts.iter().enumerate() {
            let (p, e) = match (self.group.block(i), part, &self.analyses[i]) {
                (Block::Shift(_), BlockSub::Shift(n), _) => {
                    for (q, e) in factor_small(n.order() as u64) {
                        *out.entry(q).or_insert(0) += e;
                    }
                    continue;
                }
                (Block::Linear(l), BlockSub::Linear(v), Analysis::Linear(a)) => {
                    (l.prime(), a.delta_exponent(v) as u32)
                }
                (Block::Heisenberg(h), BlockSub::Heisenberg(s), _) => {
                    (h.prime(), s.weight(h.a(), h.b()))
                }
                _ => panic!("sub-object does not match block {i}"),
            };
            if e > 0 {
                *out.entry(p).or_insert(0) += e;
            }
        }
        out
    }

    /// Exponent-wise `Δ(upper) / Δ(lower)`.
    pub fn step_module(&self, lower: &SubgroupDesc, upper: &SubgroupDesc) -> BTreeMap<u64, u32> {
        let lo = self.sub_delta(lower);
        let mut hi = self.sub_delta(upper);
        for (p, e) in lo {
            let v = hi.get_mut(&p).expect("lower is contained in upper");
            *v -= e;
        }
        hi.retain(|_, e| *e > 0);
        hi
    }

    fn check_shape(&self, s: &SubgroupDesc) -> Result<(), SeriesError> {
        if s.parts.len() != self.group.len() {
            return Err(SeriesError::InvalidChain(format!(
                "term has {} parts for {} blocks",
                s.parts.len(),
                self.group.len()
            )));
        }
        for (i, part) in s.parts.iter().enumerate() {
            let ok = match (self.group.block(i), part, &self.analyses[i]) {
                (Block::Shift(b), BlockSub::Shift(n), _) => {
                    n.elements().iter().all(|&x| x < b.group().order()) && b.group().is_subgroup(n)
                }
                (Block::Linear(_), BlockSub::Linear(v), Analysis::Linear(a)) => {
                    a.is_invariant(v) && v.rational().iter().all(|x| x.len() == a.dim())
                }
                (Block::Heisenberg(_), BlockSub::Heisenberg(_), _) => true,
                _ => false,
            };
            if !ok {
                return Err(SeriesError::InvalidChain(format!(
                    "block {i}: {part} is not an α-stable closed subgroup"
                )));
            }
        }
        Ok(())
    }

    pub fn is_contained(&self, lower: &SubgroupDesc, upper: &SubgroupDesc) -> bool {
        lower.parts.iter().zip(&upper.parts).enumerate().all(|(i, (l, u))| match (l, u) {
            (BlockSub::Shift(a), BlockSub::Shift(b)) => a.is_subset_of(b),
            (BlockSub::Linear(a), BlockSub::Linear(b)) => {
                let n = self.linear_analysis(i).expect("linear block").dim();
                a.is_subspace_of(b, n)
            }
            (BlockSub::Heisenberg(a), BlockSub::Heisenberg(b)) => a.is_subset_of(*b),
            _ => false,
        })
    }

    /// `lower` normal in `upper` (both already contained).
    pub fn is_normal_in(&self, lower: &SubgroupDesc, upper: &SubgroupDesc) -> bool {
        lower.parts.iter().zip(&upper.parts).enumerate().all(|(i, (l, u))| match (l, u) {
            (BlockSub::Shift(a), BlockSub::Shift(b)) => match self.group.block(i) {
                Block::Shift(s) => s.group().is_normalized_by(a, b),
                _ => false,
            },
            (BlockSub::Linear(_), BlockSub::Linear(_)) => true,
            (BlockSub::Heisenberg(a), BlockSub::Heisenberg(b)) => a.is_normal_in(*b),
            _ => false,
        })
    }

    pub fn is_normal_in_group(&self, s: &SubgroupDesc) -> bool {
        self.is_normal_in(s, &self.whole())
    }

    /// Checks shape, α-stability, containment without repetition, and the
    /// normality required by the mode.
    pub fn validate(&self, chain: &SeriesChain) -> Result<(), SeriesError> {
        let bad = |m: String| Err(SeriesError::InvalidChain(m));
        if chain.terms.is_empty() || chain.terms.len() != chain.steps.len() + 1 {
            return bad("term and step counts do not match".into());
        }
        if chain.terms[0] != self.trivial() {
            return bad("chain does not start at the trivial subgroup".into());
        }
        if *chain.terms.last().unwrap() != self.whole() {
            return bad("chain does not end at the whole group".into());
        }
        for t in &chain.terms {
            self.check_shape(t)?;
        }
        for (k, w) in chain.terms.windows(2).enumerate() {
            if w[0] == w[1] || !self.is_contained(&w[0], &w[1]) {
                return bad(format!("term {k} is not properly contained in term {}", k + 1));
            }
            let normal = match chain.mode {
                SeriesMode::Alpha => self.is_normal_in(&w[0], &w[1]),
                SeriesMode::AlphaNormal => self.is_normal_in_group(&w[0]),
            };
            if !normal {
                return bad(format!("term {k} is not normal as required by mode {}", chain.mode));
            }
        }
        Ok(())
    }

    /// Simple factor of a one-block step, if the step is simple.
    pub fn classify_step(
        &self,
        mode: SeriesMode,
        lower: &SubgroupDesc,
        upper: &SubgroupDesc,
    ) -> Option<(usize, FactorClass)> {
        let changed: Vec<usize> = (0..lower.parts.len())
            .filter(|&i| lower.parts[i] != upper.parts[i])
            .collect();
        let &[i] = changed.as_slice() else {
            return None;
        };
        let factor = match (self.group.block(i), &lower.parts[i], &upper.parts[i], &self.analyses[i]) {
            (Block::Shift(s), BlockSub::Shift(a), BlockSub::Shift(b), _) => {
                let g = s.group();
                let q = g.quotient(b, a);
                let label = crate::finitegroup::iso_label(&q);
                if is_simple_finite(&q) {
                    FactorClass::TorsionSimple(label)
                } else if mode == SeriesMode::AlphaNormal {
                    let all = Subgroup::whole(g);
                    let m = crate::finitegroup::maximal_normal_below(
                        g,
                        a,
                        b,
                        &all,
                        &mut TieBreak::Canonical,
                    );
                    if m == *a {
                        FactorClass::TorsionChief(label)
                    } else {
                        return None;
                    }
                } else {
                    return None;
                }
            }
            (Block::Linear(_), BlockSub::Linear(a), BlockSub::Linear(b), Analysis::Linear(an)) => {
                if !an.is_simple_step(a, b) {
                    return None;
                }
                an.chain_between(a, b, &mut TieBreak::Canonical).pop()?.1
            }
            (Block::Heisenberg(h), BlockSub::Heisenberg(a), BlockSub::Heisenberg(b), _) => {
                if b.dim() != a.dim() + 1 || !a.is_subset_of(*b) {
                    return None;
                }
                heis_factor(h.prime(), a.step_weight(*b, h.a(), h.b()))
            }
            _ => return None,
        };
        Some((i, factor))
    }

    /// Per-block composition steps between two sub-objects.
    fn block_steps(
        &self,
        i: usize,
        mode: SeriesMode,
        lower: &BlockSub,
        upper: &BlockSub,
        tb: &mut TieBreak,
    ) -> Result<Vec<(BlockSub, FactorClass)>, SeriesError> {
        Ok(match (self.group.block(i), lower, upper, &self.analyses[i]) {
            (Block::Shift(s), BlockSub::Shift(a), BlockSub::Shift(b), _) => {
                let g = s.group();
                let fs = match mode {
                    SeriesMode::Alpha => composition_series_between(g, a, b, tb)?,
                    SeriesMode::AlphaNormal => chief_series_between(g, a, b, tb)?,
                };
                fs.subgroups
                    .windows(2)
                    .zip(fs.factors)
                    .map(|(w, label)| {
                        let class = if mode == SeriesMode::Alpha || is_simple_finite(&g.quotient(&w[1], &w[0])) {
                            FactorClass::TorsionSimple(label)
                        } else {
                            FactorClass::TorsionChief(label)
                        };
                        (BlockSub::Shift(w[1].clone()), class)
                    })
                    .collect()
            }
            (Block::Linear(_), BlockSub::Linear(a), BlockSub::Linear(b), Analysis::Linear(an)) => an
                .chain_between(a, b, tb)
                .into_iter()
                .map(|(v, f)| (BlockSub::Linear(v), f))
                .collect(),
            (Block::Heisenberg(h), BlockSub::Heisenberg(a), BlockSub::Heisenberg(b), _) => {
                let chains = a.chains(*b, mode == SeriesMode::AlphaNormal);
                if chains.is_empty() {
                    return Err(SeriesError::InvalidChain(format!(
                        "no composition steps from {a} to {b}"
                    )));
                }
                let path = &chains[tb.pick(chains.len())];
                path.windows(2)
                    .map(|w| {
                        (
                            BlockSub::Heisenberg(w[1]),
                            heis_factor(h.prime(), w[0].step_weight(w[1], h.a(), h.b())),
                        )
                    })
                    .collect()
            }
            _ => {
                return Err(SeriesError::InvalidChain(format!(
                    "sub-object does not match block {i}"
                )))
            }
        })
    }

    /// Composition steps from `lower` to `upper`. Blocks are processed in
    /// `block_order` when given, else left to right under a canonical
    /// tie-break and in a random interleaving under a seeded one.
    fn interval(
        &self,
        mode: SeriesMode,
        lower: &SubgroupDesc,
        upper: &SubgroupDesc,
        block_order: Option<&[usize]>,
        tb: &mut TieBreak,
    ) -> Result<(Vec<SubgroupDesc>, Vec<ChainStep>), SeriesError> {
        let nb = self.group.len();
        let mut per_block = Vec::with_capacity(nb);
        for i in 0..nb {
            let steps = self.block_steps(i, mode, &lower.parts[i], &upper.parts[i], tb)?;
            per_block.push(steps.into_iter());
        }
        let counts: Vec<usize> = per_block.iter().map(|s| s.len()).collect();
        let mut order: Vec<usize> = Vec::new();
        let mut listed: Vec<usize> = block_order.map(<[usize]>::to_vec).unwrap_or_default();
        let rest: Vec<usize> = (0..nb).filter(|i| !listed.contains(i)).collect();
        listed.extend(rest);
        for &i in &listed {
            order.extend(std::iter::repeat_n(i, counts[i]));
        }
        if block_order.is_none() {
            tb.arrange(&mut order);
        }
        let mut terms = Vec::new();
        let mut steps = Vec::new();
        let mut cur = lower.clone();
        for i in order {
            let (sub, factor) = per_block[i].next().expect("step count");
            let next = cur.with(i, sub);
            steps.push(ChainStep {
                block: Some(i),
                factor: Some(factor),
                module: self.step_module(&cur, &next),
            });
            terms.push(next.clone());
            cur = next;
        }
        Ok((terms, steps))
    }

    fn finish(&self, chain: SeriesChain) -> Result<SeriesChain, SeriesError> {
        if chain.is_fully_certified() {
            Ok(chain)
        } else {
            Err(SeriesError::Uncertified {
                precision: self.precision,
                partial: Box::new(chain),
            })
        }
    }

    pub fn composition_series(&self, mode: SeriesMode, tb: &mut TieBreak) -> Result<SeriesChain, SeriesError> {
        self.composition_series_ordered(mode, None, tb)
    }

    /// As [`Self::composition_series`] with blocks completed in the given order.
    pub fn composition_series_ordered(
        &self,
        mode: SeriesMode,
        block_order: Option<&[usize]>,
        tb: &mut TieBreak,
    ) -> Result<SeriesChain, SeriesError> {
        let lower = self.trivial();
        let (mut terms, steps) = self.interval(mode, &lower, &self.whole(), block_order, tb)?;
        terms.insert(0, lower);
        self.finish(SeriesChain { mode, terms, steps })
    }

    /// Refines every step of a valid chain to composition steps.
    pub fn refine(&self, chain: &SeriesChain, tb: &mut TieBreak) -> Result<SeriesChain, SeriesError> {
        self.validate(chain)?;
        let mut terms = vec![chain.terms[0].clone()];
        let mut steps = Vec::new();
        for w in chain.terms.windows(2) {
            let (t, s) = self.interval(chain.mode, &w[0], &w[1], None, tb)?;
            terms.extend(t);
            steps.extend(s);
        }
        self.finish(SeriesChain {
            mode: chain.mode,
            terms,
            steps,
        })
    }

    /// Builds a chain from explicit terms, filling in step data.
    pub fn chain_from_terms(&self, mode: SeriesMode, terms: Vec<SubgroupDesc>) -> Result<SeriesChain, SeriesError> {
        let steps = terms
            .windows(2)
            .map(|w| {
                let cls = self.classify_step(mode, &w[0], &w[1]);
                let changed: Vec<usize> =
                    (0..w[0].parts.len()).filter(|&i| w[0].parts[i] != w[1].parts[i]).collect();
                ChainStep {
                    block: (changed.len() == 1).then(|| changed[0]),
                    factor: cls.map(|(_, f)| f),
                    module: if self.is_contained(&w[0], &w[1]) {
                        self.step_module(&w[0], &w[1])
                    } else {
                        BTreeMap::new()
                    },
                }
            })
            .collect();
        let chain = SeriesChain { mode, terms, steps };
        self.validate(&chain)?;
        Ok(chain)
    }

    /// Block-wise core of the level-0 lattice: whole shift and linear blocks,
    /// the centre of a Heisenberg block.
    pub fn canonical_core(&self) -> SubgroupDesc {
        SubgroupDesc {
            parts: (0..self.group.len())
                .map(|i| match self.group.block(i) {
                    Block::Heisenberg(_) => BlockSub::Heisenberg(HeisSub::Z),
                    _ => self.block_whole(i),
                })
                .collect(),
        }
    }

    /// `1 ◁ S ◁ G` with `S` the blockwise core, repetitions removed.
    pub fn canonical_series(&self) -> SeriesChain {
        let mut terms = vec![self.trivial()];
        for t in [self.canonical_core(), self.whole()] {
            if *terms.last().unwrap() != t {
                terms.push(t);
            }
        }
        self.chain_from_terms(SeriesMode::Alpha, terms)
            .expect("canonical series is a valid chain")
    }

    /// Every step quotient has a compact open subgroup normal in it.
    pub fn is_special(&self, chain: &SeriesChain) -> bool {
        chain.terms.windows(2).all(|w| {
            w[0].parts.iter().zip(&w[1].parts).all(|(l, u)| match (l, u) {
                (BlockSub::Heisenberg(a), BlockSub::Heisenberg(b)) => a.quotient_is_special(*b),
                _ => true,
            })
        })
    }

    /// Whether every step of the chain is simple for its mode.
    pub fn is_composition_series(&self, chain: &SeriesChain) -> bool {
        self.validate(chain).is_ok()
            && chain
                .terms
                .windows(2)
                .all(|w| self.classify_step(chain.mode, &w[0], &w[1]).is_some())
    }

    /// Human-readable sub-object with finite subgroups named by type.
    pub fn describe(&self, s: &SubgroupDesc) -> String {
        if s.parts.is_empty() {
            return "1".into();
        }
        s.parts
            .iter()
            .enumerate()
            .map(|(i, part)| match (self.group.block(i), part) {
                (Block::Shift(b), BlockSub::Shift(n)) => {
                    if n.order() == 1 {
                        "1".to_string()
                    } else if n.order() == b.group().order() {
                        "F".to_string()
                    } else {
                        let sub = b.group().subgroup_as_group(n);
                        format!("N{}:{}", n.order(), crate::finitegroup::iso_label(&sub))
                    }
                }
                (Block::Linear(_), BlockSub::Linear(v)) if *part == self.block_whole(i) && !v.is_zero() => {
                    "V".to_string()
                }
                _ => part.to_string(),
            })
            .collect::<Vec<_>>()
            .join(" x ")
    }
}

fn heis_factor(p: u64, w: u32) -> FactorClass {
    let c = num_rational::BigRational::from_integer(pow_p_int(p, w));
    FactorClass::padic_exact(
        p,
        PAdicPoly::from_any(&RatPoly::linear(c)).expect("monic"),
        IrreducibilityWitness::Linear,
    )
}

/// Composition series with a canonical tie-break at default precision.
pub fn composition_series(g: &ContractionGroup, mode: SeriesMode) -> Result<SeriesChain, SeriesError> {
    SeriesEngine::new(g)?.composition_series(mode, &mut TieBreak::Canonical)
}

pub fn refine(g: &ContractionGroup, chain: &SeriesChain, tb: &mut TieBreak) -> Result<SeriesChain, SeriesError> {
    SeriesEngine::new(g)?.refine(chain, tb)
}

pub fn canonical_series(g: &ContractionGroup) -> Result<SeriesChain, SeriesError> {
    Ok(SeriesEngine::new(g)?.canonical_series())
}
