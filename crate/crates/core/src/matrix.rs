//! Dense matrices over the nonnegative big integers.

use std::fmt;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, Zero};

/// Dense row-major matrix with nonnegative arbitrary-precision entries.
///
/// Zero-sized dimensions are not representable; every matrix in this crate
/// maps between level vectors of length at least one.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<BigUint>,
}

impl Matrix {
    /// Builds a matrix from its rows. Returns `None` for an empty or ragged input.
    pub fn from_rows(rows: Vec<Vec<BigUint>>) -> Option<Self> {
        let r = rows.len();
        let c = rows.first()?.len();
        if c == 0 || rows.iter().any(|row| row.len() != c) {
            return None;
        }
        Some(Self {
            rows: r,
            cols: c,
            data: rows.into_iter().flatten().collect(),
        })
    }

    /// Convenience constructor for small literal matrices. Panics on ragged input.
    pub fn small(rows: &[&[u64]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| r.iter().map(|&x| BigUint::from(x)).collect())
                .collect(),
        )
        .expect("non-empty rectangular literal")
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        assert!(rows > 0 && cols > 0);
        Self {
            rows,
            cols,
            data: vec![BigUint::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigUint::one();
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn cells(&self) -> usize {
        self.rows * self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigUint {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigUint) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigUint] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigUint> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigUint>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigUint] {
        &self.data
    }

    pub fn entries_mut(&mut self) -> &mut [BigUint] {
        &mut self.data
    }

    /// Matrix product `self · rhs`, or `None` when the inner dimensions differ.
    pub fn checked_mul(&self, rhs: &Matrix) -> Option<Matrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut out = Matrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        out.data[i * rhs.cols + j] += a * b;
                    }
                }
            }
        }
        Some(out)
    }

    /// Matrix product; panics on a dimension mismatch.
    pub fn mul(&self, rhs: &Matrix) -> Matrix {
        self.checked_mul(rhs).unwrap_or_else(|| {
            panic!(
                "dimension mismatch: {}x{} times {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )
        })
    }

    pub fn mul_vec(&self, v: &[BigUint]) -> Vec<BigUint> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum())
            .collect()
    }

    pub fn mul_signed(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                self.row(i)
                    .iter()
                    .zip(v)
                    .map(|(a, b)| BigInt::from(a.clone()) * b)
                    .sum()
            })
            .collect()
    }

    pub fn scaled(&self, k: &BigUint) -> Matrix {
        Matrix {
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().map(|x| x * k).collect(),
        }
    }

    /// Index of the first all-zero column, if any.
    pub fn zero_column(&self) -> Option<usize> {
        (0..self.cols).find(|&j| (0..self.rows).all(|i| self.get(i, j).is_zero()))
    }

    /// Every column has a nonzero entry.
    pub fn is_embedding(&self) -> bool {
        self.zero_column().is_none()
    }

    pub fn max_entry(&self) -> BigUint {
        self.data.iter().max().cloned().unwrap_or_default()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }
}

impl serde::Serialize for Matrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        crate::num::ser_uint_rows(&self.to_rows(), s)
    }
}

impl<'de> serde::Deserialize<'de> for Matrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let rows = crate::num::de_uint_rows(d)?;
        Matrix::from_rows(rows).ok_or_else(|| serde::de::Error::custom("matrix must be non-empty and rectangular"))
    }
}

impl fmt::Display for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(", ")?;
            }
            write_vec(f, self.row(i))?;
        }
        f.write_str("]")
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

pub(crate) fn write_vec<T: fmt::Display>(f: &mut fmt::Formatter<'_>, v: &[T]) -> fmt::Result {
    f.write_str("[")?;
    for (i, x) in v.iter().enumerate() {
        if i > 0 {
            f.write_str(", ")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("]")
}

/// `a ≤ b` componentwise.
pub fn vec_le(a: &[BigUint], b: &[BigUint]) -> bool {
    a.len() == b.len() && a.iter().zip(b).all(|(x, y)| x <= y)
}

/// Divides a signed vector by the gcd of its entries. The zero vector is returned unchanged.
pub(crate) fn primitive(v: &[BigInt]) -> Vec<BigInt> {
    use num_integer::Integer;
    let g = v.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    if g.is_zero() || g.is_one() {
        return v.to_vec();
    }
    v.iter().map(|x| x / &g).collect()
}

pub(crate) fn to_signed(v: &[BigUint]) -> Vec<BigInt> {
    v.iter().map(|x| BigInt::from(x.clone())).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_of_section_two_matrices() {
        let e1 = Matrix::small(&[&[2], &[1]]);
        let e2 = Matrix::small(&[&[0], &[2]]);
        let e3 = Matrix::small(&[&[1, 2]]);
        assert_eq!(e3.mul(&e1), Matrix::small(&[&[4]]));
        assert_eq!(e3.mul(&e2), Matrix::small(&[&[4]]));
        assert_ne!(e1, e2);
    }

    #[test]
    fn embedding_detects_zero_column() {
        let m = Matrix::small(&[&[1, 0, 2], &[0, 0, 1]]);
        assert_eq!(m.zero_column(), Some(1));
        assert!(!m.is_embedding());
        assert!(Matrix::identity(3).is_embedding());
    }

    #[test]
    fn ragged_rows_rejected() {
        let rows = vec![vec![BigUint::one()], vec![BigUint::one(), BigUint::one()]];
        assert!(Matrix::from_rows(rows).is_none());
        assert!(Matrix::from_rows(vec![]).is_none());
    }

    #[test]
    fn primitive_keeps_sign() {
        let v = vec![BigInt::from(-4), BigInt::from(6)];
        assert_eq!(primitive(&v), vec![BigInt::from(-2), BigInt::from(3)]);
        let z = vec![BigInt::zero(); 2];
        assert_eq!(primitive(&z), z);
    }

    #[test]
    fn display_is_row_major() {
        assert_eq!(Matrix::small(&[&[2], &[1]]).to_string(), "[[2], [1]]");
    }
}
