use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Exact rational scalar used for matrix entries, polynomial coefficients and
/// group coordinates. Reduced form with positive denominator is maintained by
/// `BigRational` itself.
pub type RationalScalar = BigRational;

/// A p-adic valuation: an integer or `+inf` (the valuation of zero).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Valuation {
    Finite(i64),
    Infinite,
}

impl Valuation {
    pub fn finite(self) -> Option<i64> {
        match self {
            Valuation::Finite(v) => Some(v),
            Valuation::Infinite => None,
        }
    }

    pub fn is_infinite(self) -> bool {
        matches!(self, Valuation::Infinite)
    }
}

impl PartialOrd for Valuation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Valuation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Valuation::Finite(a), Valuation::Finite(b)) => a.cmp(b),
            (Valuation::Finite(_), Valuation::Infinite) => Ordering::Less,
            (Valuation::Infinite, Valuation::Finite(_)) => Ordering::Greater,
            (Valuation::Infinite, Valuation::Infinite) => Ordering::Equal,
        }
    }
}

impl fmt::Display for Valuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Valuation::Finite(v) => write!(f, "{v}"),
            Valuation::Infinite => f.write_str("inf"),
        }
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n < 4 {
        return true;
    }
    if n.is_multiple_of(2) {
        return false;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// `v_p(n)` for a nonzero integer; `None` for zero.
pub fn int_valuation(n: &BigInt, p: u64) -> Option<i64> {
    if n.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut v = 0i64;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        n = q;
        v += 1;
    }
}

/// `v_p(q) = v_p(num) - v_p(den)`, with `v_p(0) = +inf`.
pub fn valuation(q: &BigRational, p: u64) -> Valuation {
    match int_valuation(q.numer(), p) {
        None => Valuation::Infinite,
        Some(vn) => {
            let vd = int_valuation(q.denom(), p).unwrap_or(0);
            Valuation::Finite(vn - vd)
        }
    }
}

/// `|q|_p = p^{-v}` as an exact rational (zero for `q = 0`).
pub fn abs_p(q: &BigRational, p: u64) -> BigRational {
    match valuation(q, p) {
        Valuation::Infinite => BigRational::zero(),
        Valuation::Finite(v) => pow_p(p, -v),
    }
}

/// `p^e` as a rational, for any integer exponent.
pub fn pow_p(p: u64, e: i64) -> BigRational {
    let base = BigInt::from(p);
    let mag = num_traits::pow(base, e.unsigned_abs() as usize);
    if e >= 0 {
        BigRational::from_integer(mag)
    } else {
        BigRational::new(BigInt::one(), mag)
    }
}

pub fn pow_p_int(p: u64, e: u32) -> BigInt {
    num_traits::pow(BigInt::from(p), e as usize)
}

pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

pub fn rat_frac(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// Reduce a p-integral rational into `[0, m)` where `m = p^k`.
/// Returns `None` when the denominator is divisible by `p`.
pub fn reduce_mod(q: &BigRational, p: u64, modulus: &BigInt) -> Option<BigInt> {
    let den = q.denom();
    if den.is_one() {
        return Some(q.numer().mod_floor(modulus));
    }
    if den.mod_floor(&BigInt::from(p)).is_zero() {
        return None;
    }
    let inv = mod_inverse(den, modulus)?;
    Some((q.numer() * inv).mod_floor(modulus))
}

pub fn mod_inverse(a: &BigInt, m: &BigInt) -> Option<BigInt> {
    let e = a.mod_floor(m).extended_gcd(m);
    if e.gcd.is_one() {
        Some(e.x.mod_floor(m))
    } else {
        None
    }
}
