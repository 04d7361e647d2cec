//! Dense matrices over arbitrary-precision integers.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Row-major integer matrix.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension { context: "matrix data length" });
        }
        Ok(Self { rows, cols, data })
    }

    /// Builds a matrix from rows of equal length.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension { context: "ragged rows" });
        }
        let data = rows.iter().flat_map(|r| r.iter().cloned().map(Into::into)).collect();
        Ok(Self { rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vec<BigInt>]) -> Result<Self> {
        let rows = columns.first().map_or(0, Vec::len);
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::Dimension { context: "ragged columns" });
        }
        let mut m = Self::zeros(rows, columns.len());
        for (j, col) in columns.iter().enumerate() {
            for (i, v) in col.iter().enumerate() {
                m.data[i * m.cols + j] = v.clone();
            }
        }
        Ok(m)
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

    /// Side length; errors unless square.
    pub fn order(&self) -> Result<usize> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(Error::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: BigInt) {
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub(crate) fn get_mut(&mut self, i: usize, j: usize) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<Vec<BigInt>> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn row_vecs(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn entries(&self) -> &[BigInt] {
        &self.data
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.data[j * self.rows + i] = self.get(i, j).clone();
            }
        }
        t
    }

    pub fn checked_mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows {
            return Err(Error::Dimension { context: "matrix product" });
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for l in 0..self.cols {
                let a = self.get(i, l);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(l, j);
                    if !b.is_zero() {
                        *out.get_mut(i, j) += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[BigInt]) -> Result<Vec<BigInt>> {
        if v.len() != self.cols {
            return Err(Error::Dimension { context: "matrix-vector product" });
        }
        Ok((0..self.rows).map(|i| self.row(i).iter().zip(v).map(|(a, b)| a * b).sum()).collect())
    }

    fn zip_with(&self, rhs: &Self, f: impl Fn(&BigInt, &BigInt) -> BigInt) -> Result<Self> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(Error::Dimension { context: "entrywise operation" });
        }
        let data = self.data.iter().zip(&rhs.data).map(|(a, b)| f(a, b)).collect();
        Ok(Self { rows: self.rows, cols: self.cols, data })
    }

    pub fn checked_add(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a + b)
    }

    pub fn checked_sub(&self, rhs: &Self) -> Result<Self> {
        self.zip_with(rhs, |a, b| a - b)
    }

    pub fn map(&self, f: impl Fn(&BigInt) -> BigInt) -> Self {
        Self { rows: self.rows, cols: self.cols, data: self.data.iter().map(f).collect() }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        self.map(|x| x * s)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|i| {
                (0..self.cols).all(|j| {
                    let v = self.get(i, j);
                    if i == j {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    /// `[A]_+`: entrywise `max(a, 0)`.
    pub fn bracket_plus(&self) -> Self {
        self.map(|x| if x.is_positive() { x.clone() } else { BigInt::zero() })
    }

    /// `A^{k.}`: keeps only row `k`.
    pub fn row_trunc(&self, k: usize) -> Result<Self> {
        if k >= self.rows {
            return Err(Error::IndexOutOfRange { index: k, len: self.rows });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for j in 0..self.cols {
            out.set(k, j, self.get(k, j).clone());
        }
        Ok(out)
    }

    /// `A^{.k}`: keeps only column `k`.
    pub fn col_trunc(&self, k: usize) -> Result<Self> {
        if k >= self.cols {
            return Err(Error::IndexOutOfRange { index: k, len: self.cols });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            out.set(i, k, self.get(i, k).clone());
        }
        Ok(out)
    }

    /// `J_k`: the identity with its `k`-th diagonal entry replaced by -1.
    pub fn j_matrix(n: usize, k: usize) -> Result<Self> {
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        let mut m = Self::identity(n);
        m.set(k, k, -BigInt::one());
        Ok(m)
    }

    /// Determinant by fraction-free Bareiss elimination.
    pub fn det(&self) -> Result<BigInt> {
        let n = self.order()?;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut a: Vec<Vec<BigInt>> = self.row_vecs();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[k][k].is_zero() {
                match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                    Some(r) => {
                        a.swap(k, r);
                        sign = -sign;
                    }
                    None => return Ok(BigInt::zero()),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                    a[i][j] = v.div_floor(&prev);
                }
            }
            prev = a[k][k].clone();
        }
        Ok(sign * &a[n - 1][n - 1])
    }

    /// `(m_{sigma(i) sigma(j)})` for a permutation given in one-line form.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.order()?;
        if sigma.len() != n {
            return Err(Error::Dimension { context: "permutation length" });
        }
        let mut out = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                out.set(i, j, self.get(sigma[i], sigma[j]).clone());
            }
        }
        Ok(out)
    }

    /// `(m_{i sigma(j)})`: columns rearranged by `sigma`.
    pub fn columns_permuted(&self, sigma: &[usize]) -> Result<Self> {
        if sigma.len() != self.cols {
            return Err(Error::Dimension { context: "permutation length" });
        }
        let mut out = Self::zeros(self.rows, self.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(i, j, self.get(i, sigma[j]).clone());
            }
        }
        Ok(out)
    }

    /// True iff every row and every column has a single nonzero entry equal to 1.
    pub fn is_permutation_matrix(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        let n = self.rows;
        let ok_entries = self.data.iter().all(|x| x.is_zero() || x.is_one());
        let rows_ok = (0..n).all(|i| self.row(i).iter().filter(|x| x.is_one()).count() == 1);
        let cols_ok = (0..n).all(|j| (0..n).filter(|&i| self.get(i, j).is_one()).count() == 1);
        ok_entries && rows_ok && cols_ok
    }

    /// Columns sorted lexicographically; a column-permutation invariant key.
    pub fn sorted_columns(&self) -> Vec<Vec<BigInt>> {
        let mut cols = self.columns();
        cols.sort();
        cols
    }

    /// Largest entry magnitude; used to bound exponent conversions.
    pub fn max_abs(&self) -> BigInt {
        self.data.iter().map(|x| x.abs()).max().unwrap_or_default()
    }
}

/// Sign of a nonzero sign-coherent vector: `Some(1)` if all entries are >= 0, `Some(-1)` if all
/// are <= 0, `None` if the vector is zero or has mixed signs.
pub fn coherent_sign<'a>(entries: impl IntoIterator<Item = &'a BigInt>) -> Option<i8> {
    let (mut pos, mut neg) = (false, false);
    for x in entries {
        pos |= x.is_positive();
        neg |= x.is_negative();
    }
    match (pos, neg) {
        (true, false) => Some(1),
        (false, true) => Some(-1),
        _ => None,
    }
}

/// `[a]_+`.
#[inline]
pub fn pos_part(a: &BigInt) -> BigInt {
    if a.is_positive() {
        a.clone()
    } else {
        BigInt::zero()
    }
}

/// Standard basis vector `e_j` of length `n`, optionally negated.
pub fn unit_vector(n: usize, j: usize, sign: i8) -> Vec<BigInt> {
    let mut v = vec![BigInt::zero(); n];
    v[j] = BigInt::from(sign);
    v
}

/// Returns `Some(j)` if `v = +e_j` or `v = -e_j`.
pub fn as_signed_unit(v: &[BigInt]) -> Option<usize> {
    let mut found = None;
    for (i, x) in v.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        if found.is_some() || x.abs() != BigInt::one() {
            return None;
        }
        found = Some(i);
    }
    found
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for i in 0..self.rows {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("[")?;
            for j in 0..self.cols {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{}", self.get(i, j))?;
            }
            f.write_str("]")?;
        }
        f.write_str("]")
    }
}

impl<'a> Mul<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    /// Panics on incompatible shapes; use [`IntMatrix::checked_mul`] for untrusted input.
    fn mul(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_mul(rhs).expect("matrix product shape")
    }
}

impl<'a> Add<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn add(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_add(rhs).expect("matrix sum shape")
    }
}

impl<'a> Sub<&'a IntMatrix> for &'a IntMatrix {
    type Output = IntMatrix;

    fn sub(self, rhs: &'a IntMatrix) -> IntMatrix {
        self.checked_sub(rhs).expect("matrix difference shape")
    }
}

impl Neg for &IntMatrix {
    type Output = IntMatrix;

    fn neg(self) -> IntMatrix {
        self.map(|x| -x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn bracket_and_truncations() {
        assert_eq!(m(&[&[0, -3], &[2, 0]]).bracket_plus(), m(&[&[0, 0], &[2, 0]]));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).row_trunc(0).unwrap(), m(&[&[1, 2], &[0, 0]]));
        assert_eq!(m(&[&[1, 2], &[3, 4]]).col_trunc(1).unwrap(), m(&[&[0, 2], &[0, 4]]));
        let j = IntMatrix::j_matrix(2, 0).unwrap();
        assert!((&j * &j).is_identity());
        assert!(IntMatrix::j_matrix(2, 2).is_err());
        assert!(m(&[&[1]]).row_trunc(1).is_err());
    }

    #[test]
    fn determinant() {
        assert_eq!(m(&[&[2, 0, 1], &[1, 3, 2], &[1, 1, 2]]).det().unwrap(), BigInt::from(6));
        assert_eq!(m(&[&[0, 1], &[1, 0]]).det().unwrap(), BigInt::from(-1));
        assert_eq!(m(&[&[1, 2], &[2, 4]]).det().unwrap(), BigInt::zero());
        assert_eq!(m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).det().unwrap(), BigInt::from(-1));
        assert!(m(&[&[1, 2]]).det().is_err());
    }

    #[test]
    fn product_and_permutation() {
        let a = m(&[&[1, 2], &[3, 4]]);
        let b = m(&[&[0, 1], &[1, 0]]);
        assert_eq!(&a * &b, m(&[&[2, 1], &[4, 3]]));
        assert!(b.is_permutation_matrix());
        assert!(!a.is_permutation_matrix());
        assert_eq!(a.permuted(&[1, 0]).unwrap(), m(&[&[4, 3], &[2, 1]]));
        assert!(a.checked_mul(&m(&[&[1, 2, 3]])).is_err());
    }

    #[test]
    fn sign_helpers() {
        let v = [BigInt::from(0), BigInt::from(-2)];
        assert_eq!(coherent_sign(&v), Some(-1));
        assert_eq!(coherent_sign(&[BigInt::zero()]), None);
        assert_eq!(coherent_sign(&[BigInt::from(1), BigInt::from(-1)]), None);
        assert_eq!(as_signed_unit(&[BigInt::zero(), BigInt::from(-1)]), Some(1));
        assert_eq!(as_signed_unit(&[BigInt::from(2), BigInt::zero()]), None);
    }
}
