//! Hensel lifting of coprime factorisations from `F_p` to `Z/p^k`.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

use super::modp::FpPoly;
use super::poly::RatPoly;
use super::valuation::pow_p_int;
use crate::error::PadicError;

/// Integer polynomial, constant term first, no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    pub coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(mut coeffs: Vec<BigInt>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        IntPoly { coeffs }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(c.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// `None` if some coefficient is not an integer.
    pub fn from_rat(f: &RatPoly) -> Option<Self> {
        f.coeffs()
            .iter()
            .map(|c| c.is_integer().then(|| c.numer().clone()))
            .collect::<Option<Vec<_>>>()
            .map(Self::new)
    }

    pub fn from_fp(f: &FpPoly) -> Self {
        Self::new(f.coeffs().iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn to_rat(&self) -> RatPoly {
        RatPoly::new(
            self.coeffs
                .iter()
                .map(|c| BigRational::from_integer(c.clone()))
                .collect(),
        )
    }

    pub fn to_fp(&self, p: u64) -> FpPoly {
        let pb = BigInt::from(p);
        FpPoly::new(
            p,
            self.coeffs
                .iter()
                .map(|c| c.mod_floor(&pb).to_u64().unwrap())
                .collect(),
        )
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> BigInt {
        self.coeffs.get(i).cloned().unwrap_or_else(BigInt::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + o.coeff(i)).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - o.coeff(i)).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        if self.coeffs.is_empty() || o.coeffs.is_empty() {
            return Self::new(vec![]);
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn reduce(&self, m: &BigInt) -> Self {
        Self::new(self.coeffs.iter().map(|c| c.mod_floor(m)).collect())
    }

    /// Reduction into the balanced range `(-m/2, m/2]`.
    pub fn reduce_balanced(&self, m: &BigInt) -> Self {
        let half: BigInt = m / 2;
        Self::new(
            self.coeffs
                .iter()
                .map(|c| {
                    let r = c.mod_floor(m);
                    if r > half {
                        r - m
                    } else {
                        r
                    }
                })
                .collect(),
        )
    }

    /// Division by a monic polynomial.
    pub fn div_rem_monic(&self, d: &Self) -> (Self, Self) {
        let dd = d.degree().expect("nonzero divisor");
        debug_assert!(d.coeffs[dd].is_one());
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::new(vec![]), self.clone());
        }
        let mut q = vec![BigInt::zero(); rem.len() - dd];
        for k in (0..q.len()).rev() {
            let c = rem[k + dd].clone();
            if !c.is_zero() {
                for (j, b) in d.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * b;
                }
            }
            q[k] = c;
        }
        rem.truncate(dd);
        (Self::new(q), Self::new(rem))
    }

    pub fn is_zero_mod(&self, m: &BigInt) -> bool {
        self.coeffs.iter().all(|c| c.mod_floor(m).is_zero())
    }
}

/// Quadratic Hensel lifting of `f ≡ g0·h0 (mod p)` to `f ≡ g·h (mod p^k)`.
///
/// `f` must be monic with integer coefficients; `g0`, `h0` monic over `F_p`
/// and coprime. The returned factors are monic, reduced into `[0, p^k)`.
pub fn hensel_lift(
    f: &IntPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    p: u64,
    k: u32,
) -> Result<(IntPoly, IntPoly), PadicError> {
    let df = f.degree().ok_or(PadicError::NotMonic)?;
    if !f.coeffs[df].is_one() {
        return Err(PadicError::NotMonic);
    }
    if g0.lead() != 1 || h0.lead() != 1 {
        return Err(PadicError::NotMonic);
    }
    if g0.mul(h0) != f.to_fp(p) {
        return Err(PadicError::BadSplit);
    }
    let (d, s0, t0) = g0.ext_gcd(h0);
    if d.degree() != Some(0) {
        return Err(PadicError::NotCoprime);
    }

    let mut g = IntPoly::from_fp(g0);
    let mut h = IntPoly::from_fp(h0);
    let mut s = IntPoly::from_fp(&s0);
    let mut t = IntPoly::from_fp(&t0);
    let target = pow_p_int(p, k.max(1));
    let mut m = BigInt::from(p);
    while m < target {
        let m2 = &m * &m;
        let e = f.sub(&g.mul(&h)).reduce(&m2);
        let (q, r) = s.mul(&e).reduce(&m2).div_rem_monic(&h);
        let g_new = g.add(&t.mul(&e)).add(&q.mul(&g)).reduce(&m2);
        let h_new = h.add(&r).reduce(&m2);
        let b = s
            .mul(&g_new)
            .add(&t.mul(&h_new))
            .sub(&IntPoly::from_ints(&[1]))
            .reduce(&m2);
        let (c, dd) = s.mul(&b).reduce(&m2).div_rem_monic(&h_new);
        s = s.sub(&dd).reduce(&m2);
        t = t.sub(&t.mul(&b)).sub(&c.mul(&g_new)).reduce(&m2);
        g = g_new;
        h = h_new;
        m = m2;
    }
    Ok((g.reduce(&target), h.reduce(&target)))
}

/// Linear Hensel lifting where only `g` is required to be monic:
/// `f ≡ g0·h0 (mod p)` with `deg g0 + deg f - deg g0` matching and `g0`, `h0`
/// coprime. `f` may have a leading coefficient divisible by `p`; `h` absorbs it.
/// Returns `(g, h)` with `f ≡ g·h (mod p^k)`, `deg g = deg g0`, `deg h <= deg f - deg g0`.
pub fn hensel_lift_linear(
    f: &IntPoly,
    g0: &FpPoly,
    h0: &FpPoly,
    p: u64,
    k: u32,
) -> Result<(IntPoly, IntPoly), PadicError> {
    if g0.lead() != 1 {
        return Err(PadicError::NotMonic);
    }
    if g0.mul(h0) != f.to_fp(p) {
        return Err(PadicError::BadSplit);
    }
    // a*g0 + b*h0 = 1
    let (d, _, b) = g0.ext_gcd(h0);
    if d.degree() != Some(0) {
        return Err(PadicError::NotCoprime);
    }
    let pb = BigInt::from(p);
    let mut g = IntPoly::from_fp(g0);
    let mut h = IntPoly::from_fp(h0);
    let mut m = pb.clone();
    for _ in 1..k.max(1) {
        let diff = f.sub(&g.mul(&h));
        debug_assert!(diff.is_zero_mod(&m));
        let e = IntPoly::new(diff.coeffs.iter().map(|c| c / &m).collect()).to_fp(p);
        // h0·δg + g0·δh ≡ e with deg δg < deg g0.
        let dg = b.mul(&e).rem(g0);
        let (dh, r) = e.sub(&h0.mul(&dg)).div_rem(g0);
        debug_assert!(r.is_zero());
        g = g.add(&IntPoly::from_fp(&dg).scale(&m));
        h = h.add(&IntPoly::from_fp(&dh).scale(&m));
        m *= &pb;
    }
    Ok((g.reduce(&m), h.reduce(&m)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_factorisation_is_its_own_lift() {
        let f = IntPoly::from_ints(&[-1, 0, 1]);
        let g0 = FpPoly::from_signed(3, &[-1, 1]);
        let h0 = FpPoly::from_signed(3, &[1, 1]);
        let (g, h) = hensel_lift(&f, &g0, &h0, 3, 4).unwrap();
        let m = BigInt::from(81);
        assert_eq!(g.reduce_balanced(&m), IntPoly::from_ints(&[-1, 1]));
        assert_eq!(h.reduce_balanced(&m), IntPoly::from_ints(&[1, 1]));
    }

    #[test]
    fn quadratic_lift_satisfies_congruence() {
        // X^2 + X + 3 ≡ X·(X+1) mod 3
        let f = IntPoly::from_ints(&[3, 1, 1]);
        let (g, h) = hensel_lift(
            &f,
            &FpPoly::from_signed(3, &[0, 1]),
            &FpPoly::from_signed(3, &[1, 1]),
            3,
            4,
        )
        .unwrap();
        assert!(f.sub(&g.mul(&h)).is_zero_mod(&BigInt::from(81)));
        assert_eq!(g.to_fp(3), FpPoly::from_signed(3, &[0, 1]));
        assert_eq!(h.to_fp(3), FpPoly::from_signed(3, &[1, 1]));
    }

    #[test]
    fn repeated_factor_is_rejected() {
        let f = IntPoly::from_ints(&[3, 0, 1]);
        let x = FpPoly::from_signed(3, &[0, 1]);
        assert_eq!(hensel_lift(&f, &x, &x, 3, 4), Err(PadicError::NotCoprime));
    }

    #[test]
    fn linear_lift_with_nonunit_leading_coefficient() {
        // F = 3y^2 + y + 3 ≡ y·(1) ... take g0 = y + 0? F mod 3 = y, so g0 = y, h0 = 1.
        let f = IntPoly::from_ints(&[3, 1, 3]);
        let g0 = FpPoly::from_signed(3, &[0, 1]);
        let h0 = FpPoly::from_signed(3, &[1]);
        let (g, h) = hensel_lift_linear(&f, &g0, &h0, 3, 20).unwrap();
        assert_eq!(g.degree(), Some(1));
        assert!(f.sub(&g.mul(&h)).is_zero_mod(&pow_p_int(3, 20)));
    }
}
