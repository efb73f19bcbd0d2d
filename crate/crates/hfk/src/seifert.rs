//! Seifert matrices over ℚ, Alexander polynomials, and the criteria for
//! homology cobordism and homological fibering.

use crate::witness::{LensSpace, SurfaceParams};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::collections::BTreeMap;
use thiserror::Error;

pub type Rational = BigRational;

/// A 2g×2g rational matrix S normalized so that S - Sᵀ = J, where J is the
/// block sum of g copies of [[0, -1], [1, 0]].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SeifertMatrix {
    genus: usize,
    entries: Vec<Vec<Rational>>,
}

/// Parameters (a, b, c, u1, u2, v1, v2) naming a genus-one surface in a
/// connected sum of two lens spaces.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct ConnSumSurfaceParams {
    pub a: BigInt,
    pub b: BigInt,
    pub c: BigInt,
    pub u1: BigInt,
    pub u2: BigInt,
    pub v1: BigInt,
    pub v2: BigInt,
}

impl ConnSumSurfaceParams {
    #[allow(clippy::too_many_arguments)]
    pub fn from_i64(a: i64, b: i64, c: i64, u1: i64, u2: i64, v1: i64, v2: i64) -> Self {
        Self {
            a: BigInt::from(a),
            b: BigInt::from(b),
            c: BigInt::from(c),
            u1: BigInt::from(u1),
            u2: BigInt::from(u2),
            v1: BigInt::from(v1),
            v2: BigInt::from(v2),
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SeifertError {
    #[error("matrix must be square of even dimension 2g with g ≥ 1, got {rows}x{cols}")]
    BadShape { rows: usize, cols: usize },
    #[error("entry ({i}, {j}) violates S - Sᵀ = J")]
    NotSkewNormalized { i: usize, j: usize },
    #[error("homology order must be positive, got {0}")]
    NonPositiveOrder(BigInt),
    #[error("coefficient of t^{exp} is {value}, not an integer")]
    NonIntegralResult { exp: i64, value: Rational },
}

impl SeifertMatrix {
    /// Validates the shape and the normalization S - Sᵀ = J.
    pub fn new(entries: Vec<Vec<Rational>>) -> Result<Self, SeifertError> {
        let n = entries.len();
        if n == 0 || !n.is_multiple_of(2) || entries.iter().any(|row| row.len() != n) {
            let cols = entries.first().map_or(0, |row| row.len());
            return Err(SeifertError::BadShape { rows: n, cols });
        }
        for (i, row) in entries.iter().enumerate() {
            for (j, entry) in row.iter().enumerate() {
                let expected = if i % 2 == 0 && j == i + 1 {
                    -Rational::one()
                } else if i % 2 == 1 && j + 1 == i {
                    Rational::one()
                } else {
                    Rational::zero()
                };
                if entry - &entries[j][i] != expected {
                    return Err(SeifertError::NotSkewNormalized { i, j });
                }
            }
        }
        Ok(Self { genus: n / 2, entries })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn size(&self) -> usize {
        2 * self.genus
    }

    pub fn entry(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<Rational>] {
        &self.entries
    }

    pub fn det(&self) -> Rational {
        let constant: Vec<Vec<PolyQ>> = self
            .entries
            .iter()
            .map(|row| row.iter().map(|e| PolyQ::constant(e.clone())).collect())
            .collect();
        det_poly(&constant).coeff(0)
    }
}

/// The Seifert matrix of the genus-one surface named by `params` in L(p, q).
pub fn seifert_matrix_lens(space: &LensSpace, params: &SurfaceParams) -> SeifertMatrix {
    let ratio = Rational::new(space.q().clone(), space.p().clone());
    let r = |n: &BigInt| Rational::from_integer(n.clone());
    let SurfaceParams { a, b, c, u, v } = params;
    let uv = &ratio * r(u) * r(v);
    let entries = vec![
        vec![r(a) + &ratio * r(u) * r(u), r(c) - &uv],
        vec![r(c) + Rational::one() - &uv, r(b) + &ratio * r(v) * r(v)],
    ];
    SeifertMatrix::new(entries).expect("normalized by construction")
}

/// The Seifert matrix of the genus-one surface named by `params` in
/// L(p1, q1) # L(p2, q2).
pub fn seifert_matrix_connsum(
    space1: &LensSpace,
    space2: &LensSpace,
    params: &ConnSumSurfaceParams,
) -> SeifertMatrix {
    let ratio1 = Rational::new(space1.q().clone(), space1.p().clone());
    let ratio2 = Rational::new(space2.q().clone(), space2.p().clone());
    let r = |n: &BigInt| Rational::from_integer(n.clone());
    let ConnSumSurfaceParams { a, b, c, u1, u2, v1, v2 } = params;
    let uv = &ratio1 * r(u1) * r(v1) + &ratio2 * r(u2) * r(v2);
    let entries = vec![
        vec![
            r(a) + &ratio1 * r(u1) * r(u1) + &ratio2 * r(u2) * r(u2),
            r(c) - &uv,
        ],
        vec![
            r(c) + Rational::one() - &uv,
            r(b) + &ratio1 * r(v1) * r(v1) + &ratio2 * r(v2) * r(v2),
        ],
    ];
    SeifertMatrix::new(entries).expect("normalized by construction")
}

/// Whether the complement of the surface with this Seifert matrix is a
/// homology cobordism: h1 · |det S| = 1 exactly.
pub fn is_homology_cobordism(
    matrix: &SeifertMatrix,
    h1_order: &BigInt,
) -> Result<bool, SeifertError> {
    if !h1_order.is_positive() {
        return Err(SeifertError::NonPositiveOrder(h1_order.clone()));
    }
    let scaled = Rational::from_integer(h1_order.clone()) * matrix.det().abs();
    Ok(scaled.is_one())
}

/// A Laurent polynomial in t with integer coefficients, stored sparsely.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPoly {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPoly {
    pub fn new(coeffs: BTreeMap<i64, BigInt>) -> Self {
        let coeffs = coeffs.into_iter().filter(|(_, c)| !c.is_zero()).collect();
        Self { coeffs }
    }

    pub fn from_pairs(pairs: &[(i64, i64)]) -> Self {
        Self::new(
            pairs
                .iter()
                .map(|&(e, c)| (e, BigInt::from(c)))
                .collect(),
        )
    }

    pub fn zero() -> Self {
        Self::default()
    }

    pub fn coeffs(&self) -> &BTreeMap<i64, BigInt> {
        &self.coeffs
    }

    pub fn coeff(&self, exp: i64) -> BigInt {
        self.coeffs.get(&exp).cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn min_exp(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exp(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    /// max_exp - min_exp, or 0 for the zero polynomial.
    pub fn breadth(&self) -> i64 {
        match (self.min_exp(), self.max_exp()) {
            (Some(lo), Some(hi)) => hi - lo,
            _ => 0,
        }
    }

    /// Coefficient of the highest power of t.
    pub fn top_coeff(&self) -> Option<&BigInt> {
        self.coeffs.values().next_back()
    }

    pub fn eval_at_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Whether the coefficient sequence reads the same in both directions
    /// across the support window.
    pub fn is_palindromic(&self) -> bool {
        let (Some(lo), Some(hi)) = (self.min_exp(), self.max_exp()) else {
            return true;
        };
        self.coeffs
            .iter()
            .all(|(e, c)| self.coeff(lo + hi - e) == *c)
    }
}

impl std::fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.coeffs.is_empty() {
            return write!(f, "0");
        }
        for (idx, (e, c)) in self.coeffs.iter().enumerate() {
            if idx == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let mag = c.abs();
            if *e == 0 {
                write!(f, "{mag}")?;
            } else {
                if !mag.is_one() {
                    write!(f, "{mag}")?;
                }
                if *e == 1 {
                    write!(f, "t")?;
                } else {
                    write!(f, "t^{e}")?;
                }
            }
        }
        Ok(())
    }
}

/// h1 · t^(-g) · det(tS - Sᵀ). Errors when any resulting coefficient is not
/// an integer (reported at the lowest offending exponent).
pub fn alexander(matrix: &SeifertMatrix, h1_order: &BigInt) -> Result<LaurentPoly, SeifertError> {
    if !h1_order.is_positive() {
        return Err(SeifertError::NonPositiveOrder(h1_order.clone()));
    }
    let n = matrix.size();
    let g = matrix.genus() as i64;
    // Entry (i, j) of tS - Sᵀ is t·s_ij - s_ji.
    let m: Vec<Vec<PolyQ>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| PolyQ::linear(-matrix.entry(j, i).clone(), matrix.entry(i, j).clone()))
                .collect()
        })
        .collect();
    let det = det_poly(&m);
    let h1 = Rational::from_integer(h1_order.clone());
    let mut coeffs = BTreeMap::new();
    for (deg, c) in det.0.iter().enumerate() {
        let scaled = c * &h1;
        if scaled.is_zero() {
            continue;
        }
        let exp = deg as i64 - g;
        if !scaled.is_integer() {
            return Err(SeifertError::NonIntegralResult { exp, value: scaled });
        }
        coeffs.insert(exp, scaled.to_integer());
    }
    Ok(LaurentPoly::new(coeffs))
}

/// A genus-g surface is homologically fibered exactly when its Alexander
/// polynomial is monic (top coefficient ±1) with breadth 2g.
pub fn is_homologically_fibered(poly: &LaurentPoly, genus: u64) -> bool {
    match poly.top_coeff() {
        Some(c) if c.abs().is_one() => poly.breadth() == 2 * genus as i64,
        _ => false,
    }
}

/// Dense univariate polynomial over ℚ, ascending degree.
#[derive(Debug, Clone)]
struct PolyQ(Vec<Rational>);

impl PolyQ {
    fn constant(c: Rational) -> Self {
        PolyQ(vec![c]).trimmed()
    }

    fn linear(c0: Rational, c1: Rational) -> Self {
        PolyQ(vec![c0, c1]).trimmed()
    }

    fn trimmed(mut self) -> Self {
        while self.0.last().is_some_and(|c| c.is_zero()) {
            self.0.pop();
        }
        self
    }

    fn coeff(&self, deg: usize) -> Rational {
        self.0.get(deg).cloned().unwrap_or_else(Rational::zero)
    }

    fn add(&self, rhs: &PolyQ) -> PolyQ {
        let len = self.0.len().max(rhs.0.len());
        PolyQ((0..len).map(|d| self.coeff(d) + rhs.coeff(d)).collect()).trimmed()
    }

    fn sub(&self, rhs: &PolyQ) -> PolyQ {
        let len = self.0.len().max(rhs.0.len());
        PolyQ((0..len).map(|d| self.coeff(d) - rhs.coeff(d)).collect()).trimmed()
    }

    fn mul(&self, rhs: &PolyQ) -> PolyQ {
        if self.0.is_empty() || rhs.0.is_empty() {
            return PolyQ(Vec::new());
        }
        let mut out = vec![Rational::zero(); self.0.len() + rhs.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            for (j, b) in rhs.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        PolyQ(out).trimmed()
    }
}

/// Laplace expansion along the first row; fine for the small matrices here.
fn det_poly(m: &[Vec<PolyQ>]) -> PolyQ {
    let n = m.len();
    if n == 0 {
        return PolyQ::constant(Rational::one());
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = PolyQ(Vec::new());
    for j in 0..n {
        let minor: Vec<Vec<PolyQ>> = m[1..]
            .iter()
            .map(|row| {
                row.iter()
                    .enumerate()
                    .filter(|&(k, _)| k != j)
                    .map(|(_, e)| e.clone())
                    .collect()
            })
            .collect();
        let term = m[0][j].mul(&det_poly(&minor));
        acc = if j % 2 == 0 { acc.add(&term) } else { acc.sub(&term) };
    }
    acc
}
