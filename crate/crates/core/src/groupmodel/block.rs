use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::element::Component;
use super::lattice::{contractivity_oracle, default_k_max};
use crate::error::ModelError;
use crate::finitegroup::{CatalogKind, FiniteGroup};
use crate::linalg::Matrix;
use crate::padic::newton::newton_polygon;
use crate::padic::valuation::pow_p;
use crate::padic::{is_contractive_poly, is_prime, PAdicPoly};

/// `F^(-N) x F^(N_0)` with the right shift.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftBlock {
    group: Arc<FiniteGroup>,
}

impl ShiftBlock {
    pub fn new(group: FiniteGroup) -> Result<Self, ModelError> {
        Self::from_arc(Arc::new(group))
    }

    pub fn from_arc(group: Arc<FiniteGroup>) -> Result<Self, ModelError> {
        if group.order() < 2 {
            return Err(ModelError::TrivialShift);
        }
        Ok(ShiftBlock { group })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn group_arc(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    /// Catalog token if the group carries one, otherwise a table literal.
    pub fn group_token(&self) -> String {
        match self.group.name() {
            Some(n) if n.parse::<CatalogKind>().is_ok() => n.to_string(),
            _ => table_literal(&self.group),
        }
    }
}

pub fn table_literal(g: &FiniteGroup) -> String {
    let rows: Vec<String> = g
        .table_rows()
        .iter()
        .map(|r| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(","))
        .collect();
    format!("table{{{}}}", rows.join(";"))
}

/// `Q_p^d` with `v -> A v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinearBlock {
    p: u64,
    matrix: Matrix,
    inverse: Matrix,
    charpoly: PAdicPoly,
    companion_of: Option<PAdicPoly>,
}

impl LinearBlock {
    /// Validates primality, invertibility and contractivity (Newton criterion on
    /// the characteristic polynomial, cross-checked by the power oracle).
    pub fn new(p: u64, matrix: Matrix) -> Result<Self, ModelError> {
        if !is_prime(p) {
            return Err(ModelError::NotPrime(p));
        }
        if !matrix.is_square() || matrix.rows() == 0 {
            return Err(ModelError::NotSquare {
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let inverse = matrix.inverse().ok_or(ModelError::Singular)?;
        let charpoly = PAdicPoly::from_any(&matrix.charpoly()).expect("char poly is monic");
        let newton = is_contractive_poly(&charpoly, p);
        let oracle = contractivity_oracle(&matrix, p, default_k_max(&charpoly, p));
        match oracle {
            Ok(o) if o != newton => return Err(ModelError::OracleDisagreement(matrix.to_string())),
            Ok(_) | Err(ModelError::Inconclusive { .. }) => {}
            Err(e) => return Err(e),
        }
        if !newton {
            let np = newton_polygon(&charpoly, p);
            let v = np
                .min_root_valuation()
                .map_or_else(|| "inf".to_string(), |v| v.to_string());
            return Err(ModelError::NotContractive {
                charpoly: charpoly.to_string(),
                valuation: v,
            });
        }
        Ok(LinearBlock {
            p,
            matrix,
            inverse,
            charpoly,
            companion_of: None,
        })
    }

    /// Companion matrix of `f`, remembered for printing.
    pub fn companion(p: u64, f: PAdicPoly) -> Result<Self, ModelError> {
        let mut b = Self::new(p, Matrix::companion(f.as_rat()))?;
        b.companion_of = Some(f);
        Ok(b)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn dim(&self) -> usize {
        self.matrix.rows()
    }

    pub fn matrix(&self) -> &Matrix {
        &self.matrix
    }

    pub fn inverse_matrix(&self) -> &Matrix {
        &self.inverse
    }

    pub fn charpoly(&self) -> &PAdicPoly {
        &self.charpoly
    }

    pub fn companion_of(&self) -> Option<&PAdicPoly> {
        self.companion_of.as_ref()
    }
}

/// Three-dimensional Heisenberg group over `Q_p` with
/// `α(x, y, z) = (p^a x, p^b y, p^(a+b) z)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct HeisenbergBlock {
    p: u64,
    a: u32,
    b: u32,
}

impl HeisenbergBlock {
    pub fn new(p: u64, a: i64, b: i64) -> Result<Self, ModelError> {
        if !is_prime(p) {
            return Err(ModelError::NotPrime(p));
        }
        for (name, value) in [("a", a), ("b", b)] {
            if !(1..=64).contains(&value) {
                return Err(ModelError::BadWeight { name, value });
            }
        }
        let h = HeisenbergBlock {
            p,
            a: a as u32,
            b: b as u32,
        };
        // α must respect the group law on a spanning set of pairs
        let one = BigRational::one();
        let zero = BigRational::zero();
        let basis = [
            [one.clone(), zero.clone(), zero.clone()],
            [zero.clone(), one.clone(), zero.clone()],
            [zero.clone(), zero.clone(), one.clone()],
        ];
        for u in &basis {
            for v in &basis {
                let lhs = h.alpha(&heis_mul(u, v));
                let rhs = heis_mul(&h.alpha(u), &h.alpha(v));
                assert_eq!(lhs, rhs, "weights do not define an automorphism");
            }
        }
        Ok(h)
    }

    pub fn prime(&self) -> u64 {
        self.p
    }

    pub fn a(&self) -> u32 {
        self.a
    }

    pub fn b(&self) -> u32 {
        self.b
    }

    /// Coordinate weights `(a, b, a + b)`.
    pub fn weights(&self) -> [u32; 3] {
        [self.a, self.b, self.a + self.b]
    }

    fn alpha(&self, v: &[BigRational; 3]) -> [BigRational; 3] {
        let w = self.weights();
        [0, 1, 2].map(|i| &v[i] * pow_p(self.p, w[i] as i64))
    }

    fn alpha_inv(&self, v: &[BigRational; 3]) -> [BigRational; 3] {
        let w = self.weights();
        [0, 1, 2].map(|i| &v[i] * pow_p(self.p, -(w[i] as i64)))
    }
}

pub(crate) fn heis_mul(u: &[BigRational; 3], v: &[BigRational; 3]) -> [BigRational; 3] {
    [&u[0] + &v[0], &u[1] + &v[1], &u[2] + &v[2] + &u[0] * &v[1]]
}

fn heis_inv(u: &[BigRational; 3]) -> [BigRational; 3] {
    [-&u[0], -&u[1], -&u[2] + &u[0] * &u[1]]
}

fn binom2(n: i64) -> BigRational {
    let n = BigInt::from(n);
    BigRational::from_integer(&n * (&n - 1) / 2)
}

/// `(x,y,z)^n = (n x, n y, n z + C(n,2) x y)`, valid for every integer `n`.
pub(crate) fn heis_pow(u: &[BigRational; 3], n: i64) -> [BigRational; 3] {
    let nn = BigRational::from_integer(BigInt::from(n));
    [
        &u[0] * &nn,
        &u[1] * &nn,
        &u[2] * &nn + binom2(n) * &u[0] * &u[1],
    ]
}

fn heis_root(u: &[BigRational; 3], n: u64) -> [BigRational; 3] {
    let nn = BigRational::from_integer(BigInt::from(n));
    let x = &u[0] / &nn;
    let y = &u[1] / &nn;
    let z = (&u[2] - binom2(n as i64) * &x * &y) / &nn;
    [x, y, z]
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Block {
    Shift(ShiftBlock),
    Linear(LinearBlock),
    Heisenberg(HeisenbergBlock),
}

impl Block {
    pub fn shift(group: FiniteGroup) -> Result<Self, ModelError> {
        ShiftBlock::new(group).map(Block::Shift)
    }

    pub fn catalog_shift(kind: CatalogKind) -> Result<Self, ModelError> {
        Self::shift(crate::finitegroup::make_catalog_group(kind)?)
    }

    pub fn linear(p: u64, matrix: Matrix) -> Result<Self, ModelError> {
        LinearBlock::new(p, matrix).map(Block::Linear)
    }

    pub fn companion(p: u64, f: PAdicPoly) -> Result<Self, ModelError> {
        LinearBlock::companion(p, f).map(Block::Linear)
    }

    pub fn heisenberg(p: u64, a: i64, b: i64) -> Result<Self, ModelError> {
        HeisenbergBlock::new(p, a, b).map(Block::Heisenberg)
    }

    /// `None` for shift blocks.
    pub fn prime(&self) -> Option<u64> {
        match self {
            Block::Shift(_) => None,
            Block::Linear(l) => Some(l.p),
            Block::Heisenberg(h) => Some(h.p),
        }
    }

    pub fn kind_name(&self) -> &'static str {
        match self {
            Block::Shift(_) => "shift",
            Block::Linear(_) => "linear",
            Block::Heisenberg(_) => "heisenberg",
        }
    }

    pub fn is_torsion(&self) -> bool {
        matches!(self, Block::Shift(_))
    }

    pub fn identity_component(&self) -> Component {
        match self {
            Block::Shift(_) => Component::Shift(Default::default()),
            Block::Linear(l) => Component::Linear(vec![BigRational::zero(); l.dim()]),
            Block::Heisenberg(_) => Component::Heisenberg([0, 0, 0].map(|_| BigRational::zero())),
        }
    }

    pub fn accepts(&self, c: &Component) -> bool {
        match (self, c) {
            (Block::Shift(s), Component::Shift(m)) => {
                m.values().all(|&v| v != 0 && v < s.group.order())
            }
            (Block::Linear(l), Component::Linear(v)) => v.len() == l.dim(),
            (Block::Heisenberg(_), Component::Heisenberg(_)) => true,
            _ => false,
        }
    }

    pub fn multiply(&self, u: &Component, v: &Component) -> Component {
        match (self, u, v) {
            (Block::Shift(s), Component::Shift(a), Component::Shift(b)) => {
                let mut out = a.clone();
                for (&k, &y) in b {
                    let x = a.get(&k).copied().unwrap_or(0);
                    let r = s.group.mul(x, y);
                    if r == 0 {
                        out.remove(&k);
                    } else {
                        out.insert(k, r);
                    }
                }
                Component::Shift(out)
            }
            (Block::Linear(_), Component::Linear(a), Component::Linear(b)) => {
                Component::Linear(a.iter().zip(b).map(|(x, y)| x + y).collect())
            }
            (Block::Heisenberg(_), Component::Heisenberg(a), Component::Heisenberg(b)) => {
                Component::Heisenberg(heis_mul(a, b))
            }
            _ => unreachable!("component shape checked by the group"),
        }
    }

    pub fn inverse(&self, u: &Component) -> Component {
        match (self, u) {
            (Block::Shift(s), Component::Shift(a)) => {
                Component::Shift(a.iter().map(|(&k, &x)| (k, s.group.inv(x))).collect())
            }
            (Block::Linear(_), Component::Linear(a)) => {
                Component::Linear(a.iter().map(|x| -x).collect())
            }
            (Block::Heisenberg(_), Component::Heisenberg(a)) => Component::Heisenberg(heis_inv(a)),
            _ => unreachable!("component shape checked by the group"),
        }
    }

    pub fn power(&self, u: &Component, n: i64) -> Component {
        match (self, u) {
            (Block::Shift(s), Component::Shift(a)) => Component::shift_from(a.iter().map(|(&k, &x)| {
                let o = s.group.element_order(x) as i64;
                (k, s.group.pow(x, n.rem_euclid(o) as u64))
            })),
            (Block::Linear(_), Component::Linear(a)) => {
                let nn = BigRational::from_integer(BigInt::from(n));
                Component::Linear(a.iter().map(|x| x * &nn).collect())
            }
            (Block::Heisenberg(_), Component::Heisenberg(a)) => Component::Heisenberg(heis_pow(a, n)),
            _ => unreachable!("component shape checked by the group"),
        }
    }

    pub fn apply_alpha(&self, u: &Component) -> Component {
        match (self, u) {
            (Block::Shift(_), Component::Shift(a)) => {
                Component::Shift(a.iter().map(|(&k, &x)| (k + 1, x)).collect())
            }
            (Block::Linear(l), Component::Linear(a)) => Component::Linear(l.matrix.mul_vec(a)),
            (Block::Heisenberg(h), Component::Heisenberg(a)) => Component::Heisenberg(h.alpha(a)),
            _ => unreachable!("component shape checked by the group"),
        }
    }

    pub fn apply_alpha_inverse(&self, u: &Component) -> Component {
        match (self, u) {
            (Block::Shift(_), Component::Shift(a)) => {
                Component::Shift(a.iter().map(|(&k, &x)| (k - 1, x)).collect())
            }
            (Block::Linear(l), Component::Linear(a)) => Component::Linear(l.inverse.mul_vec(a)),
            (Block::Heisenberg(h), Component::Heisenberg(a)) => {
                Component::Heisenberg(h.alpha_inv(a))
            }
            _ => unreachable!("component shape checked by the group"),
        }
    }

    pub fn element_order(&self, u: &Component) -> Option<u64> {
        match (self, u) {
            (Block::Shift(s), Component::Shift(a)) => Some(
                a.values()
                    .fold(1u64, |acc, &x| num_integer::lcm(acc, s.group.element_order(x))),
            ),
            (Block::Linear(_), Component::Linear(a)) => a.iter().all(Zero::is_zero).then_some(1),
            (Block::Heisenberg(_), Component::Heisenberg(a)) => {
                a.iter().all(Zero::is_zero).then_some(1)
            }
            _ => unreachable!("component shape checked by the group"),
        }
    }

    pub fn nth_root(&self, u: &Component, n: u64) -> Option<Component> {
        match (self, u) {
            (Block::Shift(s), Component::Shift(a)) => {
                let g = &s.group;
                let mut out = std::collections::BTreeMap::new();
                for (&k, &x) in a {
                    let y = (0..g.order()).find(|&y| g.pow(y, n) == x)?;
                    out.insert(k, y);
                }
                Some(Component::Shift(out))
            }
            (Block::Linear(_), Component::Linear(a)) => {
                let nn = BigRational::from_integer(BigInt::from(n));
                Some(Component::Linear(a.iter().map(|x| x / &nn).collect()))
            }
            (Block::Heisenberg(_), Component::Heisenberg(a)) => {
                Some(Component::Heisenberg(heis_root(a, n)))
            }
            _ => unreachable!("component shape checked by the group"),
        }
    }
}

fn write_matrix(f: &mut fmt::Formatter<'_>, m: &Matrix) -> fmt::Result {
    f.write_str("[")?;
    for i in 0..m.rows() {
        if i > 0 {
            f.write_str(",")?;
        }
        f.write_str("[")?;
        for (j, x) in m.row(i).iter().enumerate() {
            if j > 0 {
                f.write_str(",")?;
            }
            write!(f, "{x}")?;
        }
        f.write_str("]")?;
    }
    f.write_str("]")
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Block::Shift(s) => write!(f, "shift({})", s.group_token()),
            Block::Linear(l) => match &l.companion_of {
                Some(poly) => write!(f, "companion(p={}, poly={poly})", l.p),
                None => {
                    write!(f, "linear(p={}, matrix=", l.p)?;
                    write_matrix(f, &l.matrix)?;
                    f.write_str(")")
                }
            },
            Block::Heisenberg(h) => write!(f, "heisenberg(p={}, a={}, b={})", h.p, h.a, h.b),
        }
    }
}
