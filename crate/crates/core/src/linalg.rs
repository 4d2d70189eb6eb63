//! Dense matrices over the rationals: elimination, kernels, characteristic
//! polynomials and local (Z_(p)) elementary divisors.

use std::fmt;

use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::padic::poly::RatPoly;
use crate::padic::valuation::{rat, valuation, Valuation};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigRational>,
}

pub type Vector = Vec<BigRational>;

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![BigRational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigRational::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigRational>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c), "ragged matrix");
        Matrix {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        }
    }

    pub fn from_int_rows(rows: &[&[i64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| rat(x)).collect())
                .collect(),
        )
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            for i in 0..rows {
                m[(i, j)] = c[i].clone();
            }
        }
        m
    }

    pub fn diagonal(entries: &[BigRational]) -> Self {
        let mut m = Self::zeros(entries.len(), entries.len());
        for (i, e) in entries.iter().enumerate() {
            m[(i, i)] = e.clone();
        }
        m
    }

    /// Companion matrix with `e_j -> e_{j+1}` and last column `-a_0, ..., -a_{d-1}`.
    pub fn companion(f: &RatPoly) -> Self {
        assert!(f.is_monic(), "companion of non-monic polynomial");
        let d = f.degree().unwrap();
        let mut m = Self::zeros(d, d);
        for j in 0..d.saturating_sub(1) {
            m[(j + 1, j)] = BigRational::one();
        }
        for i in 0..d {
            m[(i, d - 1)] = -f.coeff(i);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn row(&self, i: usize) -> &[BigRational] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn entries(&self) -> impl Iterator<Item = &BigRational> {
        self.data.iter()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigRational>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul(&self, o: &Self) -> Self {
        assert_eq!(self.cols, o.rows, "dimension mismatch");
        let mut out = Self::zeros(self.rows, o.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..o.cols {
                    let b = &o[(k, j)];
                    if !b.is_zero() {
                        out[(i, j)] += a * b;
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[BigRational]) -> Vector {
        assert_eq!(self.cols, v.len());
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
            })
            .collect()
    }

    pub fn add(&self, o: &Self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&o.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn scale(&self, c: &BigRational) -> Self {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|a| a * c).collect(),
        }
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = Self::identity(self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    pub fn trace(&self) -> BigRational {
        (0..self.rows.min(self.cols)).fold(BigRational::zero(), |acc, i| acc + &self[(i, i)])
    }

    /// Reduced row echelon form and the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(pr) = (r..m.rows).find(|&i| !m[(i, c)].is_zero()) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = m[(r, c)].recip();
            for j in c..m.cols {
                let v = &m[(r, j)] * &inv;
                m[(r, j)] = v;
            }
            for i in 0..m.rows {
                if i != r && !m[(i, c)].is_zero() {
                    let f = m[(i, c)].clone();
                    for j in c..m.cols {
                        let v = &m[(r, j)] * &f;
                        m[(i, j)] -= v;
                    }
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn det(&self) -> BigRational {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut det = BigRational::one();
        for c in 0..n {
            let Some(pr) = (c..n).find(|&i| !m[(i, c)].is_zero()) else {
                return BigRational::zero();
            };
            if pr != c {
                m.swap_rows(c, pr);
                det = -det;
            }
            let piv = m[(c, c)].clone();
            det *= &piv;
            for i in c + 1..n {
                if m[(i, c)].is_zero() {
                    continue;
                }
                let f = &m[(i, c)] / &piv;
                for j in c..n {
                    let v = &m[(c, j)] * &f;
                    m[(i, j)] -= v;
                }
            }
        }
        det
    }

    pub fn inverse(&self) -> Option<Self> {
        assert!(self.is_square());
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = BigRational::one();
        }
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    /// Basis of the right kernel `{v : M v = 0}`.
    pub fn kernel(&self) -> Vec<Vector> {
        let (r, pivots) = self.rref();
        let mut basis = Vec::new();
        for free in 0..self.cols {
            if pivots.contains(&free) {
                continue;
            }
            let mut v = vec![BigRational::zero(); self.cols];
            v[free] = BigRational::one();
            for (row, &pc) in pivots.iter().enumerate() {
                v[pc] = -r[(row, free)].clone();
            }
            basis.push(v);
        }
        basis
    }

    /// Characteristic polynomial `det(X I - A)` by Faddeev–LeVerrier.
    pub fn charpoly(&self) -> RatPoly {
        assert!(self.is_square());
        let n = self.rows;
        let mut coeffs = vec![BigRational::zero(); n + 1];
        coeffs[n] = BigRational::one();
        let mut m = Self::zeros(n, n);
        for k in 1..=n {
            let mut next = self.mul(&m);
            for i in 0..n {
                next[(i, i)] += &coeffs[n - k + 1];
            }
            let am = self.mul(&next);
            coeffs[n - k] = -am.trace() / rat(k as i64);
            m = next;
        }
        RatPoly::new(coeffs)
    }

    /// `f(A)` by Horner's rule.
    pub fn eval_poly(&self, f: &RatPoly) -> Self {
        let n = self.rows;
        let mut acc = Self::zeros(n, n);
        for c in f.coeffs().iter().rev() {
            acc = acc.mul(self);
            for i in 0..n {
                acc[(i, i)] += c;
            }
        }
        acc
    }

    /// Minimum `p`-adic valuation over all entries (`Infinite` for the zero matrix).
    pub fn min_valuation(&self, p: u64) -> Valuation {
        self.data
            .iter()
            .map(|x| valuation(x, p))
            .min()
            .unwrap_or(Valuation::Infinite)
    }

    /// Valuations of the elementary divisors over the local ring `Z_(p)`,
    /// by full pivoting on minimal valuation. `None` if singular.
    pub fn local_elementary_divisors(&self, p: u64) -> Option<Vec<i64>> {
        assert!(self.is_square());
        let n = self.rows;
        let mut m = self.clone();
        let mut out = Vec::with_capacity(n);
        for step in 0..n {
            let mut best: Option<(usize, usize, i64)> = None;
            for i in step..n {
                for j in step..n {
                    if let Valuation::Finite(v) = valuation(&m[(i, j)], p) {
                        if best.is_none_or(|b| v < b.2) {
                            best = Some((i, j, v));
                        }
                    }
                }
            }
            let (pi, pj, v) = best?;
            m.swap_rows(step, pi);
            for i in 0..n {
                m.data.swap(i * n + step, i * n + pj);
            }
            let piv = m[(step, step)].clone();
            for i in step + 1..n {
                if m[(i, step)].is_zero() {
                    continue;
                }
                let f = &m[(i, step)] / &piv;
                for j in step..n {
                    let val = &m[(step, j)] * &f;
                    m[(i, j)] -= val;
                }
            }
            for j in step + 1..n {
                m[(step, j)] = BigRational::zero();
            }
            out.push(v);
        }
        Some(out)
    }
}

impl std::ops::Index<(usize, usize)> for Matrix {
    type Output = BigRational;
    fn index(&self, (i, j): (usize, usize)) -> &BigRational {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigRational {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            f.write_str("[")?;
            for (j, x) in self.row(i).iter().enumerate() {
                if j > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

// ---------------------------------------------------------------------------
// Subspaces of Q^n given by spanning vectors.

/// Linearly independent subset spanning the same space (greedy, order-preserving).
pub fn independent_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    let mut out: Vec<Vector> = Vec::new();
    for v in vectors {
        let mut trial = out.clone();
        trial.push(v.clone());
        if Matrix::from_columns(&trial, dim).rank() == trial.len() {
            out = trial;
        }
    }
    out
}

pub fn span_rank(vectors: &[Vector], dim: usize) -> usize {
    if vectors.is_empty() {
        return 0;
    }
    Matrix::from_columns(vectors, dim).rank()
}

pub fn in_span(v: &[BigRational], basis: &[Vector], dim: usize) -> bool {
    let mut all = basis.to_vec();
    all.push(v.to_vec());
    span_rank(&all, dim) == span_rank(basis, dim)
}

pub fn span_contains(outer: &[Vector], inner: &[Vector], dim: usize) -> bool {
    inner.iter().all(|v| in_span(v, outer, dim))
}

/// Canonical form of a subspace: nonzero rows of the RREF of the spanning set.
pub fn canonical_basis(vectors: &[Vector], dim: usize) -> Vec<Vector> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Matrix::from_rows(vectors.to_vec());
    let (r, piv) = m.rref();
    debug_assert_eq!(r.cols(), dim);
    (0..piv.len()).map(|i| r.row(i).to_vec()).collect()
}

/// Coordinates of `v` in the (independent) `basis`, if `v` lies in its span.
pub fn coordinates(v: &[BigRational], basis: &[Vector], dim: usize) -> Option<Vector> {
    let k = basis.len();
    let mut aug = Matrix::zeros(dim, k + 1);
    for (j, b) in basis.iter().enumerate() {
        for i in 0..dim {
            aug[(i, j)] = b[i].clone();
        }
    }
    for i in 0..dim {
        aug[(i, k)] = v[i].clone();
    }
    let (r, piv) = aug.rref();
    if piv.contains(&k) {
        return None;
    }
    let mut x = vec![BigRational::zero(); k];
    for (row, &pc) in piv.iter().enumerate() {
        x[pc] = r[(row, k)].clone();
    }
    Some(x)
}

/// `A` restricted to an invariant subspace, in the coordinates of `basis`.
pub fn restrict(a: &Matrix, basis: &[Vector]) -> Option<Matrix> {
    let n = a.rows();
    let k = basis.len();
    let mut m = Matrix::zeros(k, k);
    for (j, b) in basis.iter().enumerate() {
        let img = a.mul_vec(b);
        let c = coordinates(&img, basis, n)?;
        for i in 0..k {
            m[(i, j)] = c[i].clone();
        }
    }
    Some(m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::padic::valuation::rat_frac;

    #[test]
    fn companion_layout() {
        let c = Matrix::companion(&RatPoly::from_ints(&[3, 0, 1]));
        assert_eq!(c, Matrix::from_int_rows(&[&[0, -3], &[1, 0]]));
        let c = Matrix::companion(&RatPoly::from_ints(&[3, 3, 1]));
        assert_eq!(c, Matrix::from_int_rows(&[&[0, -3], &[1, -3]]));
        assert_eq!(c.charpoly(), RatPoly::from_ints(&[3, 3, 1]));
    }

    #[test]
    fn charpoly_matches_det() {
        let a = Matrix::from_int_rows(&[&[2, 1, 0], &[0, 3, -1], &[4, 0, 1]]);
        let cp = a.charpoly();
        // det(A) = (-1)^n cp(0)
        assert_eq!(a.det(), -cp.coeff(0));
        // Cayley–Hamilton
        let z = a.eval_poly(&cp);
        assert!(z.entries().all(|x| x.is_zero()));
    }

    #[test]
    fn inverse_and_kernel() {
        let a = Matrix::from_int_rows(&[&[1, 2], &[3, 4]]);
        let inv = a.inverse().unwrap();
        assert_eq!(a.mul(&inv), Matrix::identity(2));
        let s = Matrix::from_int_rows(&[&[1, 2], &[2, 4]]);
        assert!(s.inverse().is_none());
        let k = s.kernel();
        assert_eq!(k, vec![vec![rat(-2), rat(1)]]);
    }

    #[test]
    fn local_divisors_sum_to_det_valuation() {
        let a = Matrix::from_rows(vec![
            vec![rat(3), rat_frac(1, 2)],
            vec![rat(9), rat(6)],
        ]);
        let divs = a.local_elementary_divisors(3).unwrap();
        let vd = valuation(&a.det(), 3).finite().unwrap();
        assert_eq!(divs.iter().sum::<i64>(), vd);
    }

    #[test]
    fn restriction_to_invariant_subspace() {
        let a = Matrix::from_int_rows(&[&[2, 1], &[0, 3]]);
        let basis = vec![vec![rat(1), rat(0)]];
        assert_eq!(restrict(&a, &basis).unwrap(), Matrix::from_int_rows(&[&[2]]));
        assert!(restrict(&a, &[vec![rat(0), rat(1)]]).is_none());
    }
}
