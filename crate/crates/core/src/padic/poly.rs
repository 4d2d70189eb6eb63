use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::valuation::rat;
use crate::error::ParseError;

/// Dense univariate polynomial over the rationals, coefficients stored from the
/// constant term upwards with no trailing zeros.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct RatPoly {
    coeffs: Vec<BigRational>,
}

impl RatPoly {
    pub fn new(mut coeffs: Vec<BigRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RatPoly { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| rat(c)).collect())
    }

    pub fn zero() -> Self {
        RatPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(BigRational::one())
    }

    pub fn constant(c: BigRational) -> Self {
        Self::new(vec![c])
    }

    /// `X - c`
    pub fn linear(c: BigRational) -> Self {
        Self::new(vec![-c, BigRational::one()])
    }

    pub fn monomial(c: BigRational, deg: usize) -> Self {
        let mut v = vec![BigRational::zero(); deg + 1];
        v[deg] = c;
        Self::new(v)
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.coeffs.get(i).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> BigRational {
        self.coeffs.last().cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn is_monic(&self) -> bool {
        self.coeffs.last().is_some_and(|c| c.is_one())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let l = self.lead();
        Self::new(self.coeffs.iter().map(|c| c / &l).collect())
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Self::new(self.coeffs.iter().map(|x| x * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) + other.coeff(i)).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        let n = self.coeffs.len().max(other.coeffs.len());
        Self::new((0..n).map(|i| self.coeff(i) - other.coeff(i)).collect())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        let mut out = vec![BigRational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("division by zero polynomial");
        let lead = divisor.lead();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![BigRational::zero(); rem.len() - dd];
        for k in (0..quot.len()).rev() {
            let c = &rem[k + dd] / &lead;
            if !c.is_zero() {
                for (j, d) in divisor.coeffs.iter().enumerate() {
                    rem[k + j] -= &c * d;
                }
            }
            quot[k] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    pub fn rem(&self, divisor: &Self) -> Self {
        self.div_rem(divisor).1
    }

    /// Monic gcd (zero if both inputs are zero).
    pub fn gcd(&self, other: &Self) -> Self {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn derivative(&self) -> Self {
        Self::new(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(i, c)| c * rat(i as i64))
                .collect(),
        )
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// `f(X + c)`.
    pub fn taylor_shift(&self, c: &BigRational) -> Self {
        let mut acc = Self::zero();
        let lin = Self::new(vec![c.clone(), BigRational::one()]);
        for coef in self.coeffs.iter().rev() {
            acc = acc.mul(&lin).add(&Self::constant(coef.clone()));
        }
        acc
    }

    /// `f(c X)`.
    pub fn scale_var(&self, c: &BigRational) -> Self {
        let mut pw = BigRational::one();
        let mut out = Vec::with_capacity(self.coeffs.len());
        for coef in &self.coeffs {
            out.push(coef * &pw);
            pw *= c;
        }
        Self::new(out)
    }

    /// Least common multiple of the coefficient denominators.
    pub fn denominator_lcm(&self) -> BigInt {
        use num_integer::Integer;
        self.coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()))
    }

    pub fn is_integral(&self) -> bool {
        self.coeffs.iter().all(|c| c.is_integer())
    }

    /// Squarefree test over the rationals: `gcd(f, f') = 1`.
    pub fn is_squarefree(&self) -> bool {
        match self.degree() {
            None => false,
            Some(0) => true,
            Some(_) => self.gcd(&self.derivative()).degree() == Some(0),
        }
    }

    /// Yun's squarefree decomposition: returns `(s_i, i)` with `f = lc * prod s_i^i`,
    /// every `s_i` monic, squarefree and pairwise coprime.
    pub fn squarefree_decomposition(&self) -> Vec<(RatPoly, u32)> {
        let mut out = Vec::new();
        if self.degree().unwrap_or(0) == 0 {
            return out;
        }
        let f = self.monic();
        let fp = f.derivative();
        let a0 = f.gcd(&fp);
        let mut b = f.div_rem(&a0).0;
        let mut c = fp.div_rem(&a0).0;
        let mut d = c.sub(&b.derivative());
        let mut i = 1u32;
        loop {
            let a = b.gcd(&d);
            if a.degree().unwrap_or(0) > 0 {
                out.push((a.clone(), i));
            }
            b = b.div_rem(&a).0;
            if b.degree().unwrap_or(0) == 0 {
                break;
            }
            c = d.div_rem(&a).0;
            d = c.sub(&b.derivative());
            i += 1;
        }
        out
    }
}

fn fmt_coeff_term(
    f: &mut fmt::Formatter<'_>,
    c: &BigRational,
    power: usize,
    first: bool,
) -> fmt::Result {
    let neg = c.is_negative();
    let mag = c.abs();
    if first {
        if neg {
            f.write_str("-")?;
        }
    } else if neg {
        f.write_str(" - ")?;
    } else {
        f.write_str(" + ")?;
    }
    let unit = mag.is_one();
    if power == 0 {
        return write!(f, "{mag}");
    }
    if !unit {
        write!(f, "{mag}*")?;
    }
    if power == 1 {
        f.write_str("X")
    } else {
        write!(f, "X^{power}")
    }
}

impl fmt::Display for RatPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            fmt_coeff_term(f, c, i, first)?;
            first = false;
        }
        Ok(())
    }
}

/// Parses `"X^2 + 3*X + 3"`, `"X - 1/3"`, `"2*X^3 - X"`; whitespace is ignored.
impl FromStr for RatPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let src: Vec<char> = s.chars().filter(|c| !c.is_whitespace()).collect();
        if src.is_empty() {
            return Err(ParseError::new(0, "empty polynomial"));
        }
        let mut pos = 0usize;
        let mut acc: Vec<BigRational> = Vec::new();
        let mut first = true;
        while pos < src.len() {
            let mut sign = 1i64;
            match src[pos] {
                '+' => pos += 1,
                '-' => {
                    sign = -1;
                    pos += 1
                }
                _ if first => {}
                _ => return Err(ParseError::new(pos, "expected '+' or '-'")),
            }
            first = false;
            let mut coeff: Option<BigRational> = None;
            if pos < src.len() && src[pos].is_ascii_digit() {
                let (c, np) = parse_rational(&src, pos)?;
                coeff = Some(c);
                pos = np;
                if pos < src.len() && src[pos] == '*' {
                    pos += 1;
                    if pos >= src.len() || src[pos] != 'X' {
                        return Err(ParseError::new(pos, "expected 'X' after '*'"));
                    }
                }
            }
            let mut power = 0usize;
            if pos < src.len() && src[pos] == 'X' {
                pos += 1;
                power = 1;
                if pos < src.len() && src[pos] == '^' {
                    pos += 1;
                    let start = pos;
                    while pos < src.len() && src[pos].is_ascii_digit() {
                        pos += 1;
                    }
                    if start == pos {
                        return Err(ParseError::new(pos, "expected exponent"));
                    }
                    let digits: String = src[start..pos].iter().collect();
                    power = digits
                        .parse()
                        .map_err(|_| ParseError::new(start, "exponent out of range"))?;
                    if power > 64 {
                        return Err(ParseError::new(start, "exponent out of range"));
                    }
                }
            } else if coeff.is_none() {
                return Err(ParseError::new(pos, "expected coefficient or 'X'"));
            }
            let c = coeff.unwrap_or_else(BigRational::one) * rat(sign);
            if acc.len() <= power {
                acc.resize(power + 1, BigRational::zero());
            }
            acc[power] += c;
        }
        Ok(RatPoly::new(acc))
    }
}

fn parse_rational(src: &[char], mut pos: usize) -> Result<(BigRational, usize), ParseError> {
    let start = pos;
    while pos < src.len() && src[pos].is_ascii_digit() {
        pos += 1;
    }
    let num: BigInt = src[start..pos]
        .iter()
        .collect::<String>()
        .parse()
        .map_err(|_| ParseError::new(start, "bad integer"))?;
    if pos < src.len() && src[pos] == '/' {
        pos += 1;
        let ds = pos;
        while pos < src.len() && src[pos].is_ascii_digit() {
            pos += 1;
        }
        let den: BigInt = src[ds..pos]
            .iter()
            .collect::<String>()
            .parse()
            .map_err(|_| ParseError::new(ds, "bad denominator"))?;
        if den.is_zero() {
            return Err(ParseError::new(ds, "zero denominator"));
        }
        return Ok((BigRational::new(num, den), pos));
    }
    Ok((BigRational::from_integer(num), pos))
}

/// Monic polynomial of degree at least one with rational coefficients,
/// read in `Q_p` for whichever prime the caller supplies.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PAdicPoly(RatPoly);

impl PAdicPoly {
    pub fn new(poly: RatPoly) -> Result<Self, ParseError> {
        match poly.degree() {
            Some(d) if d >= 1 && poly.is_monic() => Ok(PAdicPoly(poly)),
            Some(d) if d >= 1 => Err(ParseError::new(0, "polynomial is not monic")),
            _ => Err(ParseError::new(0, "polynomial must have degree >= 1")),
        }
    }

    /// Normalises by the leading coefficient.
    pub fn from_any(poly: &RatPoly) -> Option<Self> {
        match poly.degree() {
            Some(d) if d >= 1 => Some(PAdicPoly(poly.monic())),
            _ => None,
        }
    }

    /// `X - c`.
    pub fn linear(c: BigRational) -> Self {
        PAdicPoly(RatPoly::linear(c))
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(RatPoly::from_ints(coeffs)).expect("monic integer polynomial")
    }

    pub fn degree(&self) -> usize {
        self.0.degree().unwrap()
    }

    pub fn coeffs(&self) -> &[BigRational] {
        self.0.coeffs()
    }

    pub fn coeff(&self, i: usize) -> BigRational {
        self.0.coeff(i)
    }

    pub fn as_rat(&self) -> &RatPoly {
        &self.0
    }

    pub fn into_rat(self) -> RatPoly {
        self.0
    }
}

impl fmt::Display for PAdicPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for PAdicPoly {
    type Err = ParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PAdicPoly::new(s.parse()?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::valuation::rat_frac;

    #[test]
    fn display_format() {
        assert_eq!(RatPoly::from_ints(&[3, 3, 1]).to_string(), "X^2 + 3*X + 3");
        assert_eq!(RatPoly::from_ints(&[2, -3, 1]).to_string(), "X^2 - 3*X + 2");
        assert_eq!(RatPoly::from_ints(&[0, -1, 0, 1]).to_string(), "X^3 - X");
        assert_eq!(RatPoly::from_ints(&[-3, 1]).to_string(), "X - 3");
        assert_eq!(
            RatPoly::new(vec![rat_frac(-1, 3), rat(1)]).to_string(),
            "X - 1/3"
        );
    }

    #[test]
    fn parse_round_trip() {
        for s in ["X^2 + 3*X + 3", "X - 1/3", "X^4 - 12*X + 27", "X", "-2/5*X^2 + X"] {
            let p: RatPoly = s.parse().unwrap();
            assert_eq!(p.to_string(), s);
        }
        let p: RatPoly = "X^2+3".parse().unwrap();
        assert_eq!(p, RatPoly::from_ints(&[3, 0, 1]));
    }

    #[test]
    fn parse_errors() {
        assert!("".parse::<RatPoly>().is_err());
        assert!("X^".parse::<RatPoly>().is_err());
        assert!("3*".parse::<RatPoly>().is_err());
        assert!("2*X^2 + 1".parse::<PAdicPoly>().is_err());
        assert!("5".parse::<PAdicPoly>().is_err());
    }

    #[test]
    fn division_and_gcd() {
        let f = RatPoly::from_ints(&[2, -3, 1]); // (X-1)(X-2)
        let g = RatPoly::from_ints(&[-1, 1]);
        let (q, r) = f.div_rem(&g);
        assert_eq!(q, RatPoly::from_ints(&[-2, 1]));
        assert!(r.is_zero());
        let h = RatPoly::from_ints(&[-1, 0, 1]); // (X-1)(X+1)
        assert_eq!(f.gcd(&h), g);
    }

    #[test]
    fn squarefree_decomposition_recovers_powers() {
        // (X-3)^2 (X+1)
        let f = RatPoly::from_ints(&[-3, 1])
            .pow(2)
            .mul(&RatPoly::from_ints(&[1, 1]));
        assert!(!f.is_squarefree());
        let dec = f.squarefree_decomposition();
        assert_eq!(
            dec,
            vec![(RatPoly::from_ints(&[1, 1]), 1), (RatPoly::from_ints(&[-3, 1]), 2)]
        );
    }

    #[test]
    fn shifts_and_scaling() {
        let f = RatPoly::from_ints(&[3, 0, 1]);
        assert_eq!(f.taylor_shift(&rat(1)), RatPoly::from_ints(&[4, 2, 1]));
        assert_eq!(f.scale_var(&rat(3)), RatPoly::from_ints(&[3, 0, 9]));
    }
}
