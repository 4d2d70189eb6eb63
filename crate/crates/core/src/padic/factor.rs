//! Factorisation of rational polynomials over `Q_p`, with per-factor
//! certificates of how the factor was obtained and why it is irreducible.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use super::hensel::{hensel_lift_linear, IntPoly};
use super::modp::FpPoly;
use super::newton::{newton_polygon_from_valuations, NewtonPolygon};
use super::poly::{PAdicPoly, RatPoly};
use super::valuation::{is_prime, pow_p, pow_p_int, reduce_mod, valuation, Valuation};
use crate::error::PadicError;

pub const DEFAULT_PRECISION: u32 = 32;

/// Prime and working precision `N` (computations are modulo `p^N`).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PAdicContext {
    prime: u64,
    precision: u32,
}

impl PAdicContext {
    pub fn new(prime: u64, precision: u32) -> Result<Self, PadicError> {
        if !is_prime(prime) {
            return Err(PadicError::NotPrime(prime));
        }
        if precision == 0 {
            return Err(PadicError::ZeroPrecision);
        }
        Ok(PAdicContext { prime, precision })
    }

    pub fn with_default_precision(prime: u64) -> Result<Self, PadicError> {
        Self::new(prime, DEFAULT_PRECISION)
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn precision(&self) -> u32 {
        self.precision
    }
}

/// How a factor was separated from its neighbours.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Certification {
    /// Exact rational factor, never split further.
    RationalExact,
    /// Separated by distinct Newton slopes.
    NewtonSlope,
    /// Separated by a coprime factorisation modulo `p` lifted by Hensel.
    HenselCoprime,
    /// No irreducibility certificate could be produced at this precision.
    Uncertified,
}

impl fmt::Display for Certification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Certification::RationalExact => "rational-exact",
            Certification::NewtonSlope => "newton-slope",
            Certification::HenselCoprime => "hensel-coprime",
            Certification::Uncertified => "uncertified",
        })
    }
}

/// Why a factor is irreducible over `Q_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum IrreducibilityWitness {
    Linear,
    /// Single Newton edge whose slope has denominator equal to the degree.
    PureSlope,
    /// `p`-integral with irreducible reduction modulo `p`.
    IrreducibleModP,
}

impl fmt::Display for IrreducibilityWitness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IrreducibilityWitness::Linear => "linear",
            IrreducibilityWitness::PureSlope => "pure-slope",
            IrreducibilityWitness::IrreducibleModP => "irreducible-mod-p",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PadicFactor {
    pub poly: PAdicPoly,
    /// Absolute precision of the coefficients (`None` when exact).
    pub precision: Option<u32>,
    pub certification: Certification,
    pub irreducible: Option<IrreducibilityWitness>,
    /// Index into `CertifiedFactorization::rational_factors`.
    pub rational_parent: usize,
}

impl PadicFactor {
    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    pub fn is_certified(&self) -> bool {
        self.certification != Certification::Uncertified && self.irreducible.is_some()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CertifiedFactorization {
    pub context: PAdicContext,
    pub input: PAdicPoly,
    /// Factorisation over the rationals the `Q_p` factors refine.
    pub rational_factors: Vec<PAdicPoly>,
    pub factors: Vec<PadicFactor>,
}

impl CertifiedFactorization {
    pub fn is_fully_certified(&self) -> bool {
        self.factors.iter().all(PadicFactor::is_certified)
    }

    /// Product of the factors agrees with the input modulo `p^N`.
    pub fn product_matches(&self) -> bool {
        let prod = self
            .factors
            .iter()
            .fold(RatPoly::one(), |acc, f| acc.mul(f.poly.as_rat()));
        agree_mod(&prod, self.input.as_rat(), self.context.prime(), self.context.precision())
    }

    pub fn degree_sum(&self) -> usize {
        self.factors.iter().map(|f| f.poly.degree()).sum()
    }
}

/// Coefficientwise `v_p(a_i - b_i) >= n`.
pub fn agree_mod(a: &RatPoly, b: &RatPoly, p: u64, n: u32) -> bool {
    let len = a.coeffs().len().max(b.coeffs().len());
    (0..len).all(|i| valuation(&(a.coeff(i) - b.coeff(i)), p) >= Valuation::Finite(n as i64))
}

/// Outcome of comparing two polynomials that may only be known modulo `p^N`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PolyMatch {
    Equal,
    /// Coefficients agree to working precision but at least one side is approximate.
    AgreeToPrecision,
    Different,
}

pub fn compare_at_precision(
    a: &PAdicPoly,
    a_exact: bool,
    b: &PAdicPoly,
    b_exact: bool,
    p: u64,
    n: u32,
) -> PolyMatch {
    if a.degree() != b.degree() {
        return PolyMatch::Different;
    }
    if a_exact && b_exact {
        return if a == b {
            PolyMatch::Equal
        } else {
            PolyMatch::Different
        };
    }
    if a == b {
        return PolyMatch::AgreeToPrecision;
    }
    if agree_mod(a.as_rat(), b.as_rat(), p, n) {
        PolyMatch::AgreeToPrecision
    } else {
        PolyMatch::Different
    }
}

// ---------------------------------------------------------------------------
// Rational factorisation (brute force, complete up to degree 4).

fn small_factorization(n: &BigInt) -> Option<Vec<(BigInt, u32)>> {
    const TRIAL_LIMIT: u64 = 2_000_000;
    let mut m = n.abs();
    let mut out = Vec::new();
    if m.is_zero() {
        return None;
    }
    let mut d = 2u64;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > m {
            break;
        }
        let mut e = 0;
        while (&m % &bd).is_zero() {
            m /= &bd;
            e += 1;
        }
        if e > 0 {
            out.push((bd, e));
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if m > BigInt::one() {
        let lim = BigInt::from(TRIAL_LIMIT);
        if m > &lim * &lim {
            return None;
        }
        out.push((m, 1));
    }
    Some(out)
}

fn divisors(n: &BigInt) -> Option<Vec<BigInt>> {
    let fac = small_factorization(n)?;
    let mut divs = vec![BigInt::one()];
    for (q, e) in fac {
        let mut next = Vec::with_capacity(divs.len() * (e as usize + 1));
        for d in &divs {
            let mut pw = BigInt::one();
            for _ in 0..=e {
                next.push(d * &pw);
                pw *= &q;
            }
        }
        divs = next;
        if divs.len() > 200_000 {
            return None;
        }
    }
    divs.sort();
    Some(divs)
}

fn eval_int(f: &IntPoly, x: &BigInt) -> BigInt {
    f.coeffs
        .iter()
        .rev()
        .fold(BigInt::zero(), |acc, c| acc * x + c)
}

/// Factors a monic integer polynomial into monic integer factors. Linear
/// factors are found by divisor search on the constant term and quartics are
/// tried for a quadratic split; beyond that the remainder is returned whole.
fn factor_monic_integer(f: &IntPoly) -> Vec<IntPoly> {
    let mut out = Vec::new();
    let mut rest = f.clone();
    loop {
        let deg = rest.degree().unwrap_or(0);
        if deg <= 1 {
            break;
        }
        let c0 = rest.coeff(0);
        if c0.is_zero() {
            out.push(IntPoly::from_ints(&[0, 1]));
            rest = IntPoly::new(rest.coeffs[1..].to_vec());
            continue;
        }
        let Some(divs) = divisors(&c0) else { break };
        let root = divs
            .iter()
            .flat_map(|d| [d.clone(), -d.clone()])
            .find(|r| eval_int(&rest, r).is_zero());
        match root {
            Some(r) => {
                let lin = IntPoly::new(vec![-r, BigInt::one()]);
                out.push(lin.clone());
                rest = rest.div_rem_monic(&lin).0;
            }
            None => break,
        }
    }
    if rest.degree() == Some(4) {
        if let Some((a, b)) = quartic_quadratic_split(&rest) {
            out.push(a);
            out.push(b);
            return out;
        }
    }
    if rest.degree().unwrap_or(0) >= 1 {
        out.push(rest);
    }
    out
}

/// `X^4 + c3 X^3 + c2 X^2 + c1 X + c0 = (X^2 + a X + b)(X^2 + c X + d)` over `Z`.
fn quartic_quadratic_split(f: &IntPoly) -> Option<(IntPoly, IntPoly)> {
    let (c0, c1, c2, c3) = (f.coeff(0), f.coeff(1), f.coeff(2), f.coeff(3));
    let divs = divisors(&c0)?;
    for b in divs.iter().flat_map(|d| [d.clone(), -d.clone()]) {
        let d = &c0 / &b;
        let mut cands: Vec<BigInt> = Vec::new();
        if d != b {
            // a(d - b) = c1 - b c3
            let num = &c1 - &b * &c3;
            let den = &d - &b;
            if (&num % &den).is_zero() {
                cands.push(num / den);
            }
        } else {
            // a(c3 - a) = c2 - 2b  ->  a^2 - c3 a + (c2 - 2b) = 0
            let disc = &c3 * &c3 - BigInt::from(4) * (&c2 - BigInt::from(2) * &b);
            if !disc.is_negative() {
                let s = disc.sqrt();
                if &s * &s == disc {
                    for num in [&c3 + &s, &c3 - &s] {
                        if num.is_even() {
                            cands.push(num / 2);
                        }
                    }
                }
            }
        }
        for a in cands {
            let c = &c3 - &a;
            let g = IntPoly::new(vec![b.clone(), a.clone(), BigInt::one()]);
            let h = IntPoly::new(vec![d.clone(), c, BigInt::one()]);
            if g.mul(&h) == *f {
                return Some((g, h));
            }
        }
    }
    None
}

/// Factorisation of a monic rational polynomial over `Q` (complete for degree `<= 4`).
pub fn rational_factorization(f: &PAdicPoly) -> Vec<PAdicPoly> {
    let d = f.degree();
    let den = f.as_rat().denominator_lcm();
    let dr = BigRational::from_integer(den.clone());
    // g(y) = den^d f(y / den) is monic with integer coefficients.
    let g = f.as_rat().scale_var(&dr.recip()).scale(&num_traits::pow(dr.clone(), d));
    let gi = IntPoly::from_rat(&g).expect("integral after clearing denominators");
    let mut out: Vec<PAdicPoly> = factor_monic_integer(&gi)
        .into_iter()
        .map(|h| {
            let k = h.degree().unwrap();
            // back to X: den^{-k} h(den X)
            let back = h
                .to_rat()
                .scale_var(&dr)
                .scale(&num_traits::pow(dr.clone(), k).recip());
            PAdicPoly::new(back).expect("monic factor")
        })
        .collect();
    out.sort_by_key(|a| (a.degree(), a.to_string()));
    out
}

// ---------------------------------------------------------------------------
// p-adic splitting of a single rational factor.

/// Monic polynomial whose coefficients are known modulo `p^prec`.
#[derive(Clone, Debug)]
struct Approx {
    coeffs: Vec<BigRational>,
    prec: Option<i64>,
}

#[derive(Clone, Debug)]
struct Piece {
    poly: Approx,
    cert: Certification,
    witness: Option<IrreducibilityWitness>,
}

impl Approx {
    fn exact(f: &RatPoly) -> Self {
        Approx {
            coeffs: f.coeffs().to_vec(),
            prec: None,
        }
    }

    fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    fn valuations(&self, p: u64) -> Vec<Option<i64>> {
        self.coeffs
            .iter()
            .map(|c| match (valuation(c, p), self.prec) {
                (Valuation::Finite(v), Some(pr)) if v >= pr => None,
                (v, _) => v.finite(),
            })
            .collect()
    }

    /// `p^{-t d} f(p^t X)`: root valuations shift by `-t`.
    fn scale_roots(&self, p: u64, t: i64) -> Self {
        let d = self.degree() as i64;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .map(|(i, c)| c * pow_p(p, t * (i as i64 - d)))
            .collect();
        let shift = (0..d).map(|i| t * (i - d)).min().unwrap_or(0);
        Approx {
            coeffs,
            prec: self.prec.map(|pr| pr + shift),
        }
    }

    /// `f(X + c)` for an integer `c` (precision unchanged).
    fn shift(&self, c: &BigInt) -> Self {
        let r = RatPoly::new(self.coeffs.clone()).taylor_shift(&BigRational::from_integer(c.clone()));
        let mut coeffs = r.coeffs().to_vec();
        coeffs.resize(self.coeffs.len(), BigRational::zero());
        Approx {
            coeffs,
            prec: self.prec,
        }
    }

    /// Integer representatives modulo `p^k` of a `p`-integral polynomial.
    fn to_int(&self, p: u64, k: u32) -> Option<IntPoly> {
        let m = pow_p_int(p, k);
        self.coeffs
            .iter()
            .map(|c| reduce_mod(c, p, &m))
            .collect::<Option<Vec<_>>>()
            .map(IntPoly::new)
    }

    fn from_int(f: &IntPoly, prec: i64) -> Self {
        Approx {
            coeffs: f
                .coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
            prec: Some(prec),
        }
    }

    /// Canonical representatives: each coefficient `a / p^s` with `a` reduced
    /// into the balanced range modulo `p^{prec + s}`.
    fn normalized(&self, p: u64) -> Self {
        let Some(pr) = self.prec else {
            return self.clone();
        };
        let coeffs = self
            .coeffs
            .iter()
            .map(|c| {
                if c.is_one() {
                    return c.clone();
                }
                let s = valuation(&BigRational::from_integer(c.denom().clone()), p)
                    .finite()
                    .unwrap_or(0);
                let scaled = c * pow_p(p, s);
                let e = pr + s;
                if e <= 0 {
                    return BigRational::zero();
                }
                let m = pow_p_int(p, e as u32);
                let r = match reduce_mod(&scaled, p, &m) {
                    Some(r) => r,
                    None => return c.clone(),
                };
                let half: BigInt = &m / 2;
                let r = if r > half { r - &m } else { r };
                BigRational::from_integer(r) / pow_p(p, s)
            })
            .collect::<Vec<_>>();
        let mut out = Approx {
            coeffs,
            prec: self.prec,
        };
        let d = out.coeffs.len() - 1;
        out.coeffs[d] = BigRational::one();
        out
    }
}

struct Splitter {
    p: u64,
    work: u32,
}

const MAX_DEPTH: u32 = 16;

impl Splitter {
    fn uncertified(&self, f: Approx) -> Vec<Piece> {
        vec![Piece {
            poly: f,
            cert: Certification::Uncertified,
            witness: None,
        }]
    }

    fn hensel_target(&self, prec: Option<i64>) -> Option<u32> {
        let k = match prec {
            None => self.work as i64,
            Some(pr) => pr.min(self.work as i64),
        };
        (k >= 1).then_some(k as u32)
    }

    fn split(&self, f: Approx, cert: Certification, depth: u32) -> Vec<Piece> {
        let d = f.degree();
        if d == 1 {
            return vec![Piece {
                poly: f,
                cert,
                witness: Some(IrreducibilityWitness::Linear),
            }];
        }
        if depth > MAX_DEPTH {
            return self.uncertified(f);
        }
        let vals = f.valuations(self.p);
        let np: NewtonPolygon = newton_polygon_from_valuations(&vals);
        if np.zero_roots > 0 {
            if f.prec.is_some() {
                return self.uncertified(f);
            }
            // exact X^k factor
            let mut out = Vec::new();
            for _ in 0..np.zero_roots {
                out.push(Piece {
                    poly: Approx::exact(&RatPoly::from_ints(&[0, 1])),
                    cert,
                    witness: Some(IrreducibilityWitness::Linear),
                });
            }
            let rest = Approx {
                coeffs: f.coeffs[np.zero_roots..].to_vec(),
                prec: None,
            };
            if rest.degree() >= 1 {
                out.extend(self.split(rest, cert, depth + 1));
            }
            return out;
        }
        let slopes = np.slopes();
        if slopes.len() >= 2 {
            for w in slopes.windows(2) {
                let t = w[0].0.ceil();
                if t < w[1].0 {
                    let t = t.to_integer().to_i64().unwrap();
                    return self.threshold_split(f, t, depth);
                }
            }
            return self.uncertified(f);
        }
        let m = &slopes[0].0;
        if m.denom().to_usize() == Some(d) {
            return vec![Piece {
                poly: f,
                cert,
                witness: Some(IrreducibilityWitness::PureSlope),
            }];
        }
        if !m.is_integer() {
            return self.uncertified(f);
        }
        let t = m.to_integer().to_i64().unwrap();
        if t != 0 {
            let scaled = f.scale_roots(self.p, t);
            return self
                .split(scaled, cert, depth + 1)
                .into_iter()
                .map(|pc| Piece {
                    poly: pc.poly.scale_roots(self.p, -t),
                    ..pc
                })
                .collect();
        }
        self.unit_split(f, cert, depth)
    }

    /// Roots with valuation `> t` versus `<= t`.
    fn threshold_split(&self, f: Approx, t: i64, depth: u32) -> Vec<Piece> {
        let p = self.p;
        let scaled = f.scale_roots(p, t);
        let vmin = scaled
            .valuations(p)
            .into_iter()
            .flatten()
            .min()
            .unwrap_or(0);
        // primitive: multiply by p^{-vmin}
        let prim = Approx {
            coeffs: scaled
                .coeffs
                .iter()
                .map(|c| c * pow_p(p, -vmin))
                .collect(),
            prec: scaled.prec.map(|pr| pr - vmin),
        };
        let Some(k_target) = self.hensel_target(prim.prec) else {
            return self.uncertified(f);
        };
        let Some(pi) = prim.to_int(p, k_target) else {
            return self.uncertified(f);
        };
        let red = pi.to_fp(p);
        let k = red.coeffs().iter().position(|&c| c != 0).unwrap_or(0);
        let g0 = FpPoly::new(p, {
            let mut v = vec![0u64; k + 1];
            v[k] = 1;
            v
        });
        let h0 = FpPoly::new(p, red.coeffs()[k..].to_vec());
        let Ok((g, h)) = hensel_lift_linear(&pi, &g0, &h0, p, k_target) else {
            return self.uncertified(f);
        };
        let prec = k_target as i64;
        // g is monic; h carries the factor p^{-vmin} on its leading term.
        let g_a = Approx::from_int(&g, prec);
        let h_coeffs: Vec<BigRational> = (0..=scaled.degree() - k)
            .map(|i| BigRational::from_integer(h.coeff(i)) * pow_p(p, vmin))
            .collect();
        let mut h_a = Approx {
            coeffs: h_coeffs,
            prec: Some(prec + vmin),
        };
        let last = h_a.coeffs.len() - 1;
        h_a.coeffs[last] = BigRational::one();

        let mut out = Vec::new();
        for part in [g_a, h_a] {
            if part.degree() == 0 {
                continue;
            }
            let back = part.scale_roots(p, -t);
            out.extend(self.split(back, Certification::NewtonSlope, depth + 1));
        }
        out
    }

    /// All roots are units.
    fn unit_split(&self, f: Approx, cert: Certification, depth: u32) -> Vec<Piece> {
        let p = self.p;
        let Some(k_target) = self.hensel_target(f.prec) else {
            return self.uncertified(f);
        };
        let Some(fi) = f.to_int(p, k_target) else {
            return self.uncertified(f);
        };
        let fac = fi.to_fp(p).factor();
        if fac.len() == 1 {
            let (g, e) = &fac[0];
            if *e == 1 {
                return vec![Piece {
                    poly: f,
                    cert,
                    witness: Some(IrreducibilityWitness::IrreducibleModP),
                }];
            }
            if g.degree() == Some(1) {
                // f ≡ (X - c)^e: move the cluster to 0 and look at the slopes.
                let c = BigInt::from((p - g.coeff(0)) % p);
                let shifted = f.shift(&c);
                return self
                    .split(shifted, cert, depth + 1)
                    .into_iter()
                    .map(|pc| Piece {
                        poly: pc.poly.shift(&-c.clone()),
                        ..pc
                    })
                    .collect();
            }
            return self.uncertified(f);
        }
        // Peel off one coprime block at a time.
        let mut out = Vec::new();
        let mut rest = fi;
        let prec = k_target as i64;
        let blocks: Vec<FpPoly> = fac
            .iter()
            .map(|(g, e)| (0..*e).fold(FpPoly::one(p), |acc, _| acc.mul(g)))
            .collect();
        let modulus = pow_p_int(p, k_target);
        for (i, blk) in blocks.iter().enumerate() {
            if i + 1 == blocks.len() {
                out.extend(self.split(
                    Approx::from_int(&rest.reduce(&modulus), prec),
                    Certification::HenselCoprime,
                    depth + 1,
                ));
                break;
            }
            let cof = rest.to_fp(p).div_rem(blk).0;
            let Ok((g, h)) = hensel_lift_linear(&rest, blk, &cof, p, k_target) else {
                return self.uncertified(f);
            };
            out.extend(self.split(
                Approx::from_int(&g, prec),
                Certification::HenselCoprime,
                depth + 1,
            ));
            rest = h;
        }
        out
    }
}

/// Factorisation of a squarefree monic polynomial over `Q_p` modulo `p^N`.
///
/// Pipeline: exact rational factorisation, then Newton-slope separation, then
/// coprime splitting modulo `p` lifted by Hensel. Pieces that carry no
/// irreducibility certificate are reported as [`Certification::Uncertified`].
pub fn factor_over_qp(
    f: &PAdicPoly,
    ctx: &PAdicContext,
) -> Result<CertifiedFactorization, PadicError> {
    if !f.as_rat().is_squarefree() {
        return Err(PadicError::NotSquarefree(f.to_string()));
    }
    let p = ctx.prime();
    let n = ctx.precision();
    let rational = rational_factorization(f);
    let mut factors = Vec::new();
    for (idx, q) in rational.iter().enumerate() {
        let mut work = n + 16 + 4 * q.degree() as u32;
        let pieces = loop {
            let splitter = Splitter { p, work };
            let pieces = splitter.split(Approx::exact(q.as_rat()), Certification::RationalExact, 0);
            let worst = pieces.iter().filter_map(|pc| pc.poly.prec).min();
            if worst.is_none_or(|w| w >= n as i64) || work > 8 * n + 512 {
                break pieces;
            }
            work *= 2;
        };
        if pieces.len() == 1 {
            let pc = &pieces[0];
            factors.push(PadicFactor {
                poly: q.clone(),
                precision: None,
                certification: if pc.witness.is_some() {
                    Certification::RationalExact
                } else {
                    Certification::Uncertified
                },
                irreducible: pc.witness,
                rational_parent: idx,
            });
            continue;
        }
        for pc in pieces {
            let norm = pc.poly.normalized(p);
            let enough = norm.prec.is_none_or(|w| w >= n as i64);
            let cert = if pc.witness.is_some() && enough {
                pc.cert
            } else {
                Certification::Uncertified
            };
            let poly = PAdicPoly::new(RatPoly::new(norm.coeffs)).expect("monic piece");
            factors.push(PadicFactor {
                poly,
                precision: norm.prec.map(|w| w.clamp(0, u32::MAX as i64) as u32),
                certification: cert,
                irreducible: if enough { pc.witness } else { None },
                rational_parent: idx,
            });
        }
    }
    Ok(CertifiedFactorization {
        context: *ctx,
        input: f.clone(),
        rational_factors: rational,
        factors,
    })
}

/// Convenience: irreducibility over `Q_p` when it can be certified.
pub fn certify_irreducible(f: &PAdicPoly, ctx: &PAdicContext) -> Result<Option<bool>, PadicError> {
    let fac = factor_over_qp(f, ctx)?;
    if fac.factors.len() > 1 {
        return Ok(Some(false));
    }
    Ok(fac.factors[0].irreducible.map(|_| true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::newton::newton_polygon;
    use crate::padic::valuation::rat;

    fn ctx(p: u64) -> PAdicContext {
        PAdicContext::with_default_precision(p).unwrap()
    }

    #[test]
    fn context_validation() {
        assert_eq!(PAdicContext::new(4, 10), Err(PadicError::NotPrime(4)));
        assert_eq!(PAdicContext::new(3, 0), Err(PadicError::ZeroPrecision));
        assert_eq!(ctx(5).precision(), DEFAULT_PRECISION);
    }

    #[test]
    fn rational_roots_are_exact() {
        let f = PAdicPoly::from_ints(&[2, -3, 1]);
        let fac = factor_over_qp(&f, &ctx(5)).unwrap();
        let polys: Vec<String> = fac.factors.iter().map(|f| f.poly.to_string()).collect();
        assert_eq!(polys, vec!["X - 1", "X - 2"]);
        assert!(fac
            .factors
            .iter()
            .all(|f| f.certification == Certification::RationalExact && f.is_exact()));
    }

    #[test]
    fn newton_slopes_separate_factors() {
        // (X-3)(X-9) is caught by the rational step, so use an irrational
        // polynomial with the same slopes: X^2 - 12X + 54.
        let f = PAdicPoly::from_ints(&[54, -12, 1]);
        let fac = factor_over_qp(&f, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.product_matches());
        let mut vals: Vec<BigRational> = fac
            .factors
            .iter()
            .map(|f| newton_polygon(&f.poly, 3).root_valuations()[0].clone())
            .collect();
        vals.sort();
        assert_eq!(vals, vec![rat(1), rat(2)]);
        assert!(fac.is_fully_certified());
    }

    #[test]
    fn distinct_integer_slopes_split() {
        // X^2 - 12X + 27 = (X-3)(X-9): rational roots with valuations 1 and 2.
        let f = PAdicPoly::from_ints(&[27, -12, 1]);
        let fac = factor_over_qp(&f, &ctx(3)).unwrap();
        let mut vals: Vec<BigRational> = fac
            .factors
            .iter()
            .map(|f| newton_polygon(&f.poly, 3).root_valuations()[0].clone())
            .collect();
        vals.sort();
        assert_eq!(vals, vec![rat(1), rat(2)]);
        // X^3 - 3X^2 + ... with slopes 0 and 1 and no rational root: X^2 + X + 3.
        let g = PAdicPoly::from_ints(&[3, 1, 1]);
        let fac = factor_over_qp(&g, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.product_matches());
        assert!(fac
            .factors
            .iter()
            .all(|f| f.certification == Certification::NewtonSlope));
    }

    #[test]
    fn eisenstein_is_irreducible() {
        let f = PAdicPoly::from_ints(&[3, 0, 1]);
        let fac = factor_over_qp(&f, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].irreducible, Some(IrreducibilityWitness::PureSlope));
        assert_eq!(fac.factors[0].certification, Certification::RationalExact);
    }

    #[test]
    fn hensel_splits_unit_roots() {
        // X^2 - 7 over Q_3: 7 ≡ 1, splits into two non-rational linear factors.
        let f = PAdicPoly::from_ints(&[-7, 0, 1]);
        let fac = factor_over_qp(&f, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.product_matches());
        assert!(fac
            .factors
            .iter()
            .all(|f| f.certification == Certification::HenselCoprime && !f.is_exact()));
        // X^2 - 63 = 9(Y^2 - 7) with X = 3Y.
        let g = PAdicPoly::from_ints(&[-63, 0, 1]);
        let fac = factor_over_qp(&g, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.product_matches());
        assert!(fac.is_fully_certified());
    }

    #[test]
    fn irreducible_mod_p() {
        // X^2 + 1 over Q_3 is unramified quadratic.
        let f = PAdicPoly::from_ints(&[1, 0, 1]);
        let fac = factor_over_qp(&f, &ctx(3)).unwrap();
        assert_eq!(fac.factors[0].irreducible, Some(IrreducibilityWitness::IrreducibleModP));
    }

    #[test]
    fn repeated_cluster_is_shifted() {
        // X^2 - 2X - 8 = (X-4)(X+2): rational. Use X^2 - 2X - 5 over Q_3:
        // ≡ (X-1)^2 mod 3, discriminant 24 = 3·8, ramified -> pure slope 1/2 after shift.
        let f = PAdicPoly::from_ints(&[-5, -2, 1]);
        let fac = factor_over_qp(&f, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 1);
        assert_eq!(fac.factors[0].irreducible, Some(IrreducibilityWitness::PureSlope));
        // X^2 - 2X - 62: disc 4 + 248 = 252 = 9·28, 28 ≡ 1 mod 3 -> splits.
        let g = PAdicPoly::from_ints(&[-62, -2, 1]);
        let fac = factor_over_qp(&g, &ctx(3)).unwrap();
        assert_eq!(fac.factors.len(), 2);
        assert!(fac.product_matches());
    }

    #[test]
    fn not_squarefree_is_rejected() {
        let f = PAdicPoly::from_ints(&[9, -6, 1]);
        assert!(matches!(
            factor_over_qp(&f, &ctx(3)),
            Err(PadicError::NotSquarefree(_))
        ));
    }

    #[test]
    fn rational_quartic_split() {
        // (X^2 + 3)(X^2 - 3X + 6)
        let f = PAdicPoly::from_ints(&[3, 0, 1])
            .into_rat()
            .mul(&RatPoly::from_ints(&[6, -3, 1]));
        let f = PAdicPoly::new(f).unwrap();
        let rf = rational_factorization(&f);
        assert_eq!(rf.len(), 2);
        // denominators are cleared and restored
        let g = PAdicPoly::new(RatPoly::new(vec![
            crate::padic::valuation::rat_frac(1, 6),
            crate::padic::valuation::rat_frac(-5, 6),
            rat(1),
        ]))
        .unwrap(); // (X - 1/2)(X - 1/3)
        let rg = rational_factorization(&g);
        assert_eq!(rg.len(), 2);
        assert!(rg.iter().all(|h| h.degree() == 1));
    }

    #[test]
    fn compare_precision() {
        let a = PAdicPoly::from_ints(&[-3, 1]);
        let b = PAdicPoly::from_ints(&[-6, 1]);
        assert_eq!(compare_at_precision(&a, true, &b, true, 3, 32), PolyMatch::Different);
        assert_eq!(compare_at_precision(&a, true, &a, true, 3, 32), PolyMatch::Equal);
        assert_eq!(
            compare_at_precision(&a, false, &a, true, 3, 32),
            PolyMatch::AgreeToPrecision
        );
    }
}
