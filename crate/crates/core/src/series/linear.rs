//! Invariant subspaces of a linear block, split along the primary
//! decomposition of the characteristic polynomial.

use std::fmt;

use num_rational::BigRational;

use crate::error::SeriesError;
use crate::groupmodel::LinearBlock;
use crate::linalg::{canonical_basis, in_span, restrict, span_contains, span_rank, Matrix, Vector};
use crate::padic::{
    factor_over_qp, valuation, Certification, IrreducibilityWitness, PAdicContext, PAdicPoly,
    PadicFactor, RatPoly,
};
use crate::tiebreak::TieBreak;

use super::FactorClass;

/// `A`-invariant subspace: an explicit rational part plus the kernels of
/// `Q_p`-factors `g(A)` that are only known modulo `p^N`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearSub {
    rational: Vec<Vector>,
    symbolic: Vec<PAdicPoly>,
}

impl LinearSub {
    pub fn zero() -> Self {
        LinearSub {
            rational: Vec::new(),
            symbolic: Vec::new(),
        }
    }

    /// Canonical (row-reduced) basis of the rational part.
    pub fn rational(&self) -> &[Vector] {
        &self.rational
    }

    /// Factors `g` whose kernel `ker g(A)` is included.
    pub fn symbolic(&self) -> &[PAdicPoly] {
        &self.symbolic
    }

    pub fn dim(&self) -> usize {
        self.rational.len() + self.symbolic.iter().map(PAdicPoly::degree).sum::<usize>()
    }

    pub fn is_zero(&self) -> bool {
        self.rational.is_empty() && self.symbolic.is_empty()
    }

    pub fn is_subspace_of(&self, o: &LinearSub, n: usize) -> bool {
        span_contains(&o.rational, &self.rational, n)
            && self.symbolic.iter().all(|g| o.symbolic.contains(g))
    }
}

impl fmt::Display for LinearSub {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut parts = Vec::new();
        if !self.rational.is_empty() {
            let vs: Vec<String> = self
                .rational
                .iter()
                .map(|v| {
                    let xs: Vec<String> = v.iter().map(ToString::to_string).collect();
                    format!("({})", xs.join(", "))
                })
                .collect();
            parts.push(format!("span[{}]", vs.join(", ")));
        }
        for g in &self.symbolic {
            parts.push(format!("ker({g})"));
        }
        f.write_str(&parts.join(" + "))
    }
}

#[derive(Clone, Debug)]
pub(crate) enum PartKind {
    /// `q = X - c`; any multiplicity.
    Eigen(BigRational),
    /// `q` irreducible over `Q_p` (certified or not), multiplicity one.
    Irreducible(PadicFactor),
    /// `q` splits over `Q_p` into these factors, multiplicity one.
    Symbolic(Vec<PadicFactor>),
}

#[derive(Clone, Debug)]
pub(crate) struct Part {
    pub kind: PartKind,
    /// Rational basis of `ker q(A)^m`.
    pub kernel: Vec<Vector>,
}

/// Primary decomposition of a linear block, computed once per series.
#[derive(Clone, Debug)]
pub struct LinearAnalysis {
    p: u64,
    n: usize,
    precision: u32,
    matrix: Matrix,
    pub(crate) parts: Vec<Part>,
}

fn multiplicity(f: &RatPoly, q: &RatPoly) -> u32 {
    let mut m = 0;
    let mut g = f.clone();
    loop {
        let (quo, rem) = g.div_rem(q);
        if !rem.is_zero() {
            return m;
        }
        m += 1;
        g = quo;
    }
}

impl LinearAnalysis {
    pub fn new(block: &LinearBlock, precision: u32) -> Result<Self, SeriesError> {
        let p = block.prime();
        let ctx = PAdicContext::new(p, precision)?;
        let a = block.matrix().clone();
        let n = block.dim();
        let f = block.charpoly().as_rat();
        let sqfree = f.div_rem(&f.gcd(&f.derivative())).0.monic();
        let fac = factor_over_qp(&PAdicPoly::from_any(&sqfree).expect("monic"), &ctx)?;
        let mut parts = Vec::new();
        for (idx, q) in fac.rational_factors.iter().enumerate() {
            let q = q.as_rat().clone();
            let m = multiplicity(f, &q);
            let pieces: Vec<PadicFactor> = fac
                .factors
                .iter()
                .filter(|pf| pf.rational_parent == idx)
                .cloned()
                .collect();
            let deg = q.degree().unwrap_or(0);
            let kind = if deg == 1 {
                PartKind::Eigen(-q.coeff(0))
            } else if m > 1 {
                return Err(SeriesError::NotSquarefree(block.charpoly().to_string()));
            } else if pieces.len() == 1 {
                PartKind::Irreducible(pieces.into_iter().next().unwrap())
            } else {
                PartKind::Symbolic(pieces)
            };
            let kernel = canonical_basis(&a.eval_poly(&q.pow(m)).kernel(), n);
            debug_assert_eq!(kernel.len(), deg * m as usize);
            parts.push(Part {
                kind,
                kernel,
            });
        }
        Ok(LinearAnalysis {
            p,
            n,
            precision,
            matrix: a,
            parts,
        })
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn whole(&self) -> LinearSub {
        let mut rational = Vec::new();
        let mut symbolic = Vec::new();
        for part in &self.parts {
            match &part.kind {
                PartKind::Symbolic(fs) => symbolic.extend(fs.iter().map(|f| f.poly.clone())),
                _ => rational.extend(part.kernel.iter().cloned()),
            }
        }
        self.make(rational, symbolic)
    }

    fn make(&self, rational: Vec<Vector>, mut symbolic: Vec<PAdicPoly>) -> LinearSub {
        symbolic.sort_by_key(|a| (a.degree(), a.to_string()));
        symbolic.dedup();
        LinearSub {
            rational: canonical_basis(&rational, self.n),
            symbolic,
        }
    }

    /// Subspace from rational spanning vectors (must span an invariant
    /// subspace). Components inside a split part are moved to the symbolic
    /// side, where they necessarily fill the whole part.
    pub fn from_rational(&self, vectors: &[Vector]) -> LinearSub {
        let basis = canonical_basis(vectors, self.n);
        let mut keep: Vec<Vector> = Vec::new();
        let mut symbolic = Vec::new();
        for part in &self.parts {
            let piece = intersect(&basis, &part.kernel, self.n);
            match &part.kind {
                PartKind::Symbolic(fs) if !piece.is_empty() => {
                    symbolic.extend(fs.iter().map(|f| f.poly.clone()))
                }
                _ => keep.extend(piece),
            }
        }
        self.make(keep, symbolic)
    }

    /// `A V ⊆ V` for the rational part (kernels of `g(A)` are invariant by construction).
    pub fn is_invariant(&self, v: &LinearSub) -> bool {
        v.rational
            .iter()
            .all(|x| in_span(&self.matrix.mul_vec(x), &v.rational, self.n))
    }

    /// Exponent of `p` in the module of `α⁻¹` restricted to `v`.
    pub fn delta_exponent(&self, v: &LinearSub) -> i64 {
        let rational = if v.rational.is_empty() {
            0
        } else {
            let r = restrict(&self.matrix, &v.rational).expect("invariant subspace");
            valuation(&r.det(), self.p).finite().expect("invertible")
        };
        rational
            + v.symbolic
                .iter()
                .map(|g| valuation(&g.coeff(0), self.p).finite().expect("nonzero constant"))
                .sum::<i64>()
    }

    /// Composition steps from `lower` up to `upper`, each adding one simple piece.
    pub fn chain_between(
        &self,
        lower: &LinearSub,
        upper: &LinearSub,
        tb: &mut TieBreak,
    ) -> Vec<(LinearSub, FactorClass)> {
        let mut out = Vec::new();
        let mut cur = lower.clone();
        while cur != *upper {
            let mut cands = self.candidates(&cur, upper);
            assert!(!cands.is_empty(), "no step from {cur} towards {upper}");
            tb.arrange(&mut cands);
            let (next, factor) = cands.swap_remove(0);
            out.push((next.clone(), factor));
            cur = next;
        }
        out
    }

    fn candidates(&self, cur: &LinearSub, upper: &LinearSub) -> Vec<(LinearSub, FactorClass)> {
        let n = self.n;
        let mut out = Vec::new();
        for part in &self.parts {
            match &part.kind {
                PartKind::Eigen(c) => {
                    // w in upper ∩ ker(A-c)^m with (A-c) w in cur, w not in cur
                    let shifted = self.matrix.sub(&Matrix::identity(n).scale(c));
                    let gen_kernel = intersect(&upper.rational, &part.kernel, n);
                    let ann = annihilator(&cur.rational, n);
                    let cond = ann.mul(&shifted);
                    let ok = solve_in_span(&gen_kernel, &cond, n);
                    for w in ok {
                        if !in_span(&w, &cur.rational, n) {
                            let mut r = cur.rational.clone();
                            r.push(w);
                            out.push((
                                self.make(r, cur.symbolic.clone()),
                                self.exact_factor(RatPoly::linear(c.clone()), IrreducibilityWitness::Linear),
                            ));
                        }
                    }
                }
                PartKind::Irreducible(pf) => {
                    if span_contains(&upper.rational, &part.kernel, n)
                        && !span_contains(&cur.rational, &part.kernel, n)
                    {
                        let mut r = cur.rational.clone();
                        r.extend(part.kernel.iter().cloned());
                        out.push((self.make(r, cur.symbolic.clone()), self.factor_of(pf)));
                    }
                }
                PartKind::Symbolic(fs) => {
                    for pf in fs {
                        if upper.symbolic.contains(&pf.poly) && !cur.symbolic.contains(&pf.poly) {
                            let mut s = cur.symbolic.clone();
                            s.push(pf.poly.clone());
                            out.push((self.make(cur.rational.clone(), s), self.factor_of(pf)));
                        }
                    }
                }
            }
        }
        out
    }

    fn exact_factor(&self, f: RatPoly, w: IrreducibilityWitness) -> FactorClass {
        FactorClass::PadicSimple {
            p: self.p,
            f: PAdicPoly::from_any(&f).expect("monic"),
            precision: None,
            certification: Certification::RationalExact,
            witness: Some(w),
        }
    }

    fn factor_of(&self, pf: &PadicFactor) -> FactorClass {
        FactorClass::PadicSimple {
            p: self.p,
            f: pf.poly.clone(),
            precision: pf.precision.map(|w| w.min(self.precision)),
            certification: pf.certification,
            witness: pf.irreducible,
        }
    }

    /// Whether `upper / lower` is a single simple piece.
    pub fn is_simple_step(&self, lower: &LinearSub, upper: &LinearSub) -> bool {
        if !lower.is_subspace_of(upper, self.n) || lower == upper {
            return false;
        }
        self.candidates(lower, upper).iter().any(|(next, _)| next == upper)
    }
}

/// Basis of `span(a) ∩ span(b)`.
pub(crate) fn intersect(a: &[Vector], b: &[Vector], n: usize) -> Vec<Vector> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    // vectors a y with a y in span(b): kernel of (annihilator of b) * a
    let ann = annihilator(b, n);
    solve_in_span(a, &ann, n)
}

/// Rows spanning the annihilator of `span(basis)`: `M v = 0` iff `v` in span.
pub(crate) fn annihilator(basis: &[Vector], n: usize) -> Matrix {
    if basis.is_empty() {
        return Matrix::identity(n);
    }
    let rows = Matrix::from_rows(basis.to_vec());
    let k = rows.kernel();
    if k.is_empty() {
        return Matrix::zeros(1, n);
    }
    Matrix::from_rows(k)
}

/// Basis of `{ s in span(spanning) : cond s = 0 }`.
fn solve_in_span(spanning: &[Vector], cond: &Matrix, n: usize) -> Vec<Vector> {
    if spanning.is_empty() {
        return Vec::new();
    }
    let b = Matrix::from_columns(spanning, n);
    let ys = cond.mul(&b).kernel();
    let vs: Vec<Vector> = ys.iter().map(|y| b.mul_vec(y)).collect();
    canonical_basis(&vs, n)
}

/// Smallest `A`-stable subspace containing `span(v)`, via
/// `V + A⁻¹V + A⁻²V + ...` until the dimension stops growing.
pub fn stable_hull(block: &LinearBlock, v: &[Vector]) -> Vec<Vector> {
    let n = block.dim();
    let inv = block.inverse_matrix();
    let mut cur = canonical_basis(v, n);
    loop {
        let mut next = cur.clone();
        next.extend(cur.iter().map(|x| inv.mul_vec(x)));
        let next = canonical_basis(&next, n);
        if span_rank(&next, n) == cur.len() {
            return cur;
        }
        cur = next;
    }
}

