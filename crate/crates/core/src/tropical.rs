//! Elements of a tropical semifield `trop(z_1, .., z_m)` stored as exponent vectors.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::error::{Error, Result};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TropicalElement(Vec<BigInt>);

impl TropicalElement {
    pub fn new(exponents: Vec<BigInt>) -> Self {
        Self(exponents)
    }

    /// The multiplicative identity `1 = z^0`.
    pub fn one(m: usize) -> Self {
        Self(vec![BigInt::zero(); m])
    }

    /// The generator `z_i`.
    pub fn generator(m: usize, i: usize) -> Self {
        let mut e = vec![BigInt::zero(); m];
        e[i] = BigInt::from(1);
        Self(e)
    }

    pub fn exponents(&self) -> &[BigInt] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.0.len() == other.0.len() {
            Ok(())
        } else {
            Err(Error::Dimension { context: "tropical generators" })
        }
    }

    /// Semifield addition: componentwise minimum of exponents.
    pub fn oplus(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a.min(b).clone()).collect()))
    }

    /// Semifield multiplication: sum of exponents.
    pub fn times(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(Self(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect()))
    }

    pub fn inverse(&self) -> Self {
        Self(self.0.iter().map(|a| -a).collect())
    }

    pub fn pow(&self, e: &BigInt) -> Self {
        Self(self.0.iter().map(|a| a * e).collect())
    }

    /// `y ⊕ 1`: componentwise `min(a, 0)`.
    pub fn oplus_one(&self) -> Self {
        Self(self.0.iter().map(|a| if a.is_negative() { a.clone() } else { BigInt::zero() }).collect())
    }

    /// Exponents of `y / (y ⊕ 1)`, i.e. `[a]_+`.
    pub fn positive_part(&self) -> Self {
        Self(self.0.iter().map(|a| if a.is_positive() { a.clone() } else { BigInt::zero() }).collect())
    }

    /// Exponents of `1 / (y ⊕ 1)`, i.e. `[-a]_+`.
    pub fn negative_part(&self) -> Self {
        self.inverse().positive_part()
    }
}

impl fmt::Debug for TropicalElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter().map(|x| alloc::format!("{x}"))).finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(v: &[i64]) -> TropicalElement {
        TropicalElement::new(v.iter().map(|&x| BigInt::from(x)).collect())
    }

    #[test]
    fn semifield_operations() {
        assert_eq!(t(&[1, -2, 0]).oplus(&t(&[0, 3, -1])).unwrap(), t(&[0, -2, -1]));
        assert_eq!(t(&[1, -2]).times(&t(&[2, 2])).unwrap(), t(&[3, 0]));
        assert_eq!(t(&[1, -2]).oplus_one(), t(&[0, -2]));
        assert_eq!(t(&[1, -2]).positive_part(), t(&[1, 0]));
        assert_eq!(t(&[1, -2]).negative_part(), t(&[0, 2]));
        assert!(t(&[1]).oplus(&t(&[1, 2])).is_err());
        // y/(y⊕1) * (y⊕1) = y
        let y = t(&[3, -1, 0]);
        assert_eq!(y.positive_part().times(&y.oplus_one()).unwrap(), y);
    }
}
