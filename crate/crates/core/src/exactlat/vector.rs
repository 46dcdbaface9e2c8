//! Integer and rational coordinate vectors, plus a small dense integer matrix.

use std::fmt;
use std::ops::{Add, Index, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};

use super::LatError;

/// A vector of arbitrary-precision integers.
///
/// The derived ordering is lexicographic, which is what every canonical
/// sort in this crate relies on.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug, Default)]
pub struct IntVector(Vec<BigInt>);

impl IntVector {
    pub fn new(coords: Vec<BigInt>) -> Self {
        IntVector(coords)
    }

    pub fn from_i64s(coords: &[i64]) -> Self {
        IntVector(coords.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zeros(dim: usize) -> Self {
        IntVector(vec![BigInt::zero(); dim])
    }

    /// The `i`-th standard basis vector of `ℤ^dim`.
    pub fn unit(dim: usize, i: usize) -> Self {
        let mut v = Self::zeros(dim);
        v.0[i] = BigInt::from(1);
        v
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigInt] {
        &self.0
    }

    pub fn into_coords(self) -> Vec<BigInt> {
        self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    pub fn dot(&self, other: &IntVector) -> BigInt {
        debug_assert_eq!(self.dim(), other.dim());
        self.0.iter().zip(&other.0).fold(BigInt::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn scale(&self, k: &BigInt) -> IntVector {
        IntVector(self.0.iter().map(|c| c * k).collect())
    }

    /// `self * a + other * b`
    pub fn combine(&self, a: &BigInt, other: &IntVector, b: &BigInt) -> IntVector {
        IntVector(self.0.iter().zip(&other.0).map(|(x, y)| x * a + y * b).collect())
    }

    pub fn l1_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).sum()
    }

    pub fn linf_norm(&self) -> BigInt {
        self.0.iter().map(|c| c.abs()).max().unwrap_or_default()
    }

    /// Gcd of the coordinates (zero for the zero vector).
    pub fn content(&self) -> BigInt {
        self.0.iter().fold(BigInt::zero(), |g, c| g.gcd(c))
    }

    pub fn to_i64s(&self) -> Option<Vec<i64>> {
        self.0.iter().map(|c| c.to_i64()).collect()
    }

    pub fn to_rational(&self) -> RatVector {
        RatVector(self.0.iter().map(|c| BigRational::from_integer(c.clone())).collect())
    }

    pub fn concat(parts: &[&IntVector]) -> IntVector {
        IntVector(parts.iter().flat_map(|p| p.0.iter().cloned()).collect())
    }
}

impl From<Vec<i64>> for IntVector {
    fn from(v: Vec<i64>) -> Self {
        IntVector::from_i64s(&v)
    }
}

impl From<&[i64]> for IntVector {
    fn from(v: &[i64]) -> Self {
        IntVector::from_i64s(v)
    }
}

impl Index<usize> for IntVector {
    type Output = BigInt;
    fn index(&self, i: usize) -> &BigInt {
        &self.0[i]
    }
}

impl Add for &IntVector {
    type Output = IntVector;
    fn add(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a + b).collect())
    }
}

impl Sub for &IntVector {
    type Output = IntVector;
    fn sub(self, rhs: &IntVector) -> IntVector {
        debug_assert_eq!(self.dim(), rhs.dim());
        IntVector(self.0.iter().zip(&rhs.0).map(|(a, b)| a - b).collect())
    }
}

impl Neg for &IntVector {
    type Output = IntVector;
    fn neg(self) -> IntVector {
        IntVector(self.0.iter().map(|a| -a).collect())
    }
}

impl fmt::Display for IntVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Shorthand for building an [`IntVector`] from integer literals.
#[macro_export]
macro_rules! ivec {
    ($($x:expr),* $(,)?) => {
        $crate::exactlat::IntVector::from_i64s(&[$($x as i64),*])
    };
}

/// Divide `v` by the gcd of its coordinates, keeping the sign.
pub fn primitive_vector(v: &IntVector) -> Result<IntVector, LatError> {
    let g = v.content();
    if g.is_zero() {
        return Err(LatError::ZeroVector);
    }
    Ok(IntVector(v.0.iter().map(|c| c / &g).collect()))
}

/// A vector of exact rationals. `BigRational` keeps every entry in lowest
/// terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RatVector(Vec<BigRational>);

impl RatVector {
    pub fn new(coords: Vec<BigRational>) -> Self {
        RatVector(coords)
    }

    pub fn zeros(dim: usize) -> Self {
        RatVector(vec![BigRational::zero(); dim])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[BigRational] {
        &self.0
    }

    pub fn dot_int(&self, v: &IntVector) -> BigRational {
        debug_assert_eq!(self.dim(), v.dim());
        self.0.iter().zip(v.coords()).fold(BigRational::zero(), |acc, (a, b)| acc + a * b)
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Zero::is_zero)
    }

    /// Clear denominators and divide out the content; `None` for the zero vector.
    pub fn to_primitive_int(&self) -> Option<IntVector> {
        if self.is_zero() {
            return None;
        }
        let lcm = self.0.iter().fold(BigInt::from(1), |l, c| l.lcm(c.denom()));
        let ints =
            IntVector(self.0.iter().map(|c| (c * BigRational::from_integer(lcm.clone())).to_integer()).collect());
        primitive_vector(&ints).ok()
    }
}

impl Index<usize> for RatVector {
    type Output = BigRational;
    fn index(&self, i: usize) -> &BigRational {
        &self.0[i]
    }
}

impl fmt::Display for RatVector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, c) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, ")")
    }
}

/// Dense row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    /// Build a matrix whose columns are the given vectors (all of length `rows`).
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Result<Self, LatError> {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            if c.dim() != rows {
                return Err(LatError::ShapeMismatch { expected: rows, found: c.dim() });
            }
            for i in 0..rows {
                m.data[i * m.cols + j] = c[i].clone();
            }
        }
        Ok(m)
    }

    pub fn from_rows(cols: usize, rows: &[IntVector]) -> Result<Self, LatError> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.dim() != cols {
                return Err(LatError::ShapeMismatch { expected: cols, found: r.dim() });
            }
            data.extend(r.coords().iter().cloned());
        }
        Ok(IntMatrix { rows: rows.len(), cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    pub fn column(&self, j: usize) -> IntVector {
        IntVector((0..self.rows).map(|i| self.get(i, j).clone()).collect())
    }

    pub fn row(&self, i: usize) -> IntVector {
        IntVector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    /// `A·x`
    pub fn mul_vec(&self, x: &IntVector) -> IntVector {
        debug_assert_eq!(x.dim(), self.cols);
        IntVector(
            (0..self.rows)
                .map(|i| (0..self.cols).fold(BigInt::zero(), |acc, j| acc + self.get(i, j) * &x[j]))
                .collect(),
        )
    }

    /// `yᵀ·A` for a rational row functional `y`.
    pub fn left_mul_rat(&self, y: &RatVector) -> RatVector {
        debug_assert_eq!(y.dim(), self.rows);
        RatVector(
            (0..self.cols)
                .map(|j| {
                    (0..self.rows).fold(BigRational::zero(), |acc, i| {
                        acc + &y[i] * BigRational::from_integer(self.get(i, j).clone())
                    })
                })
                .collect(),
        )
    }
}
