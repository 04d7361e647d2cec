//! Sparse multivariate Laurent polynomials with arbitrary-precision integer coefficients.
//!
//! Terms are kept in a `BTreeMap` keyed by exponent vector, so iteration order is the
//! lexicographic normal form used for serialization and hashing.

use alloc::collections::BTreeMap;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::{self, Write as _};
use core::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

/// Ordered variable names shared between polynomials of one ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Vars(Arc<[String]>);

impl Vars {
    pub fn new(names: Vec<String>) -> Self {
        Self(names.into())
    }

    /// `x1..xn` followed by `y1..ym`.
    pub fn cluster(n: usize, m: usize) -> Self {
        let mut names = Vec::with_capacity(n + m);
        names.extend((1..=n).map(|i| alloc::format!("x{i}")));
        names.extend((1..=m).map(|i| alloc::format!("y{i}")));
        Self::new(names)
    }

    /// `y1..ym`.
    pub fn coefficients(m: usize) -> Self {
        Self::new((1..=m).map(|i| alloc::format!("y{i}")).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.0
    }

    fn same(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || self.0 == other.0
    }
}

impl fmt::Debug for Vars {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.0.iter()).finish()
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct LaurentPoly {
    vars: Vars,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPoly {
    pub fn zero(vars: &Vars) -> Self {
        Self { vars: vars.clone(), terms: BTreeMap::new() }
    }

    pub fn one(vars: &Vars) -> Self {
        Self::monomial(vars, vec![0; vars.len()], BigInt::one())
    }

    pub fn constant(vars: &Vars, c: BigInt) -> Self {
        Self::monomial(vars, vec![0; vars.len()], c)
    }

    pub fn monomial(vars: &Vars, exp: Exponent, coef: BigInt) -> Self {
        assert_eq!(exp.len(), vars.len(), "exponent length");
        let mut terms = BTreeMap::new();
        if !coef.is_zero() {
            terms.insert(exp, coef);
        }
        Self { vars: vars.clone(), terms }
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        let mut exp = vec![0; vars.len()];
        exp[i] = 1;
        Self::monomial(vars, exp, BigInt::one())
    }

    /// Builds from raw terms, merging duplicates and dropping zeros.
    pub fn from_terms(vars: &Vars, terms: impl IntoIterator<Item = (Exponent, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(vars);
        for (e, c) in terms {
            if e.len() != vars.len() {
                return Err(Error::Dimension { context: "exponent length" });
            }
            p.add_term(e, c);
        }
        Ok(p)
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn nvars(&self) -> usize {
        self.vars.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.terms.len() == 1 && self.terms.iter().all(|(e, c)| c.is_one() && e.iter().all(|&x| x == 0))
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Exponent, &BigInt)> + ExactSizeIterator {
        self.terms.iter()
    }

    pub fn coefficient(&self, exp: &[i64]) -> BigInt {
        self.terms.get(exp).cloned().unwrap_or_default()
    }

    pub fn constant_term(&self) -> BigInt {
        self.coefficient(&vec![0; self.nvars()])
    }

    /// Lexicographically largest term.
    pub fn leading_term(&self) -> Option<(&Exponent, &BigInt)> {
        self.terms.iter().next_back()
    }

    pub fn is_polynomial(&self) -> bool {
        self.terms.keys().all(|e| e.iter().all(|&x| x >= 0))
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn all_coefficients_positive(&self) -> bool {
        self.terms.values().all(Signed::is_positive)
    }

    pub fn max_degree(&self, v: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[v]).max()
    }

    pub fn min_degree(&self, v: usize) -> Option<i64> {
        self.terms.keys().map(|e| e[v]).min()
    }

    pub fn mentions(&self, v: usize) -> bool {
        self.terms.keys().any(|e| e[v] != 0)
    }

    pub(crate) fn add_term(&mut self, exp: Exponent, coef: BigInt) {
        if coef.is_zero() {
            return;
        }
        match self.terms.entry(exp) {
            alloc::collections::btree_map::Entry::Vacant(v) => {
                v.insert(coef);
            }
            alloc::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += coef;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    fn check_vars(&self, other: &Self) -> Result<()> {
        if self.vars.same(&other.vars) {
            Ok(())
        } else {
            Err(Error::VariableMismatch)
        }
    }

    pub fn try_add(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        Ok(out)
    }

    pub fn try_sub(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), -c);
        }
        Ok(out)
    }

    pub fn try_mul(&self, other: &Self) -> Result<Self> {
        self.check_vars(other)?;
        let mut out = Self::zero(&self.vars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Exponent = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                out.add_term(e, ca * cb);
            }
        }
        Ok(out)
    }

    /// Multiplies by the monomial `coef * vars^exp`.
    pub fn mul_term(&self, exp: &[i64], coef: &BigInt) -> Self {
        if coef.is_zero() {
            return Self::zero(&self.vars);
        }
        let terms =
            self.terms.iter().map(|(e, c)| (e.iter().zip(exp).map(|(a, b)| a + b).collect(), c * coef)).collect();
        Self { vars: self.vars.clone(), terms }
    }

    pub fn scale(&self, s: &BigInt) -> Self {
        self.mul_term(&vec![0; self.nvars()], s)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut result = Self::one(&self.vars);
        let mut base = self.clone();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Exact quotient `self / divisor` in the Laurent ring.
    ///
    /// Uses leading-term division in lexicographic order. Every quotient exponent must lie in the
    /// box forced by the per-variable degree ranges of dividend and divisor, which bounds the loop;
    /// leaving the box, a non-integral coefficient ratio, or a nonzero remainder is reported as
    /// [`Error::NotLaurent`].
    pub fn exact_div(&self, divisor: &Self) -> Result<Self> {
        self.check_vars(divisor)?;
        if divisor.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        let mut quotient = Self::zero(&self.vars);
        if self.is_zero() {
            return Ok(quotient);
        }
        if divisor.is_monomial() {
            let (de, dc) = divisor.leading_term().expect("nonzero");
            let mut terms = BTreeMap::new();
            for (e, c) in &self.terms {
                let (q, r) = c.div_rem(dc);
                if !r.is_zero() {
                    return Err(Error::NotLaurent);
                }
                terms.insert(e.iter().zip(de).map(|(a, b)| a - b).collect(), q);
            }
            return Ok(Self { vars: self.vars.clone(), terms });
        }
        let n = self.nvars();
        let lo: Vec<i64> = (0..n).map(|v| self.min_degree(v).unwrap() - divisor.min_degree(v).unwrap()).collect();
        let hi: Vec<i64> = (0..n).map(|v| self.max_degree(v).unwrap() - divisor.max_degree(v).unwrap()).collect();
        if lo.iter().zip(&hi).any(|(l, h)| l > h) {
            return Err(Error::NotLaurent);
        }
        let (de, dc) = {
            let (e, c) = divisor.leading_term().expect("nonzero");
            (e.clone(), c.clone())
        };
        let mut rem = self.clone();
        while let Some((re, rc)) = rem.leading_term() {
            let qe: Exponent = re.iter().zip(&de).map(|(a, b)| a - b).collect();
            if qe.iter().zip(lo.iter().zip(&hi)).any(|(q, (l, h))| q < l || q > h) {
                return Err(Error::NotLaurent);
            }
            let (qc, r) = rc.div_rem(&dc);
            if !r.is_zero() {
                return Err(Error::NotLaurent);
            }
            let negq = -&qc;
            for (e, c) in &divisor.terms {
                let shifted: Exponent = e.iter().zip(&qe).map(|(a, b)| a + b).collect();
                rem.add_term(shifted, c * &negq);
            }
            quotient.add_term(qe, qc);
        }
        Ok(quotient)
    }

    /// Sets the listed variables to 1.
    pub fn specialize_to_one(&self, indices: &[usize]) -> Self {
        let mut out = Self::zero(&self.vars);
        for (e, c) in &self.terms {
            let mut e = e.clone();
            for &i in indices {
                e[i] = 0;
            }
            out.add_term(e, c.clone());
        }
        out
    }

    /// Re-expresses over `target`, mapping variable `i` of `self` to `map[i]` in `target`.
    /// Variables that map to `None` must have exponent 0 in every term.
    pub fn remap(&self, target: &Vars, map: &[Option<usize>]) -> Result<Self> {
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut ne = vec![0; target.len()];
            for (i, &x) in e.iter().enumerate() {
                match map[i] {
                    Some(t) => ne[t] += x,
                    None if x != 0 => return Err(Error::Dimension { context: "dropped variable in use" }),
                    None => {}
                }
            }
            out.add_term(ne, c.clone());
        }
        Ok(out)
    }

    /// Substitutes each variable by a polynomial over a common target ring.
    /// Negative exponents require monomial images.
    pub fn substitute(&self, images: &[LaurentPoly], target: &Vars) -> Result<Self> {
        if images.len() != self.nvars() {
            return Err(Error::Dimension { context: "substitution arity" });
        }
        let mut out = Self::zero(target);
        for (e, c) in &self.terms {
            let mut term = Self::constant(target, c.clone());
            for (i, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                let img = &images[i];
                if x > 0 {
                    term = term.try_mul(&img.pow(exp_u32(x)?))?;
                } else {
                    let inv = img.monomial_inverse().ok_or(Error::NotLaurent)?;
                    term = term.try_mul(&inv.pow(exp_u32(-x)?))?;
                }
            }
            out = out.try_add(&term)?;
        }
        Ok(out)
    }

    /// Inverse of a unit monomial `+-x^e`.
    pub fn monomial_inverse(&self) -> Option<Self> {
        let (e, c) = self.leading_term()?;
        if self.terms.len() != 1 || !c.abs().is_one() {
            return None;
        }
        Some(Self::monomial(&self.vars, e.iter().map(|x| -x).collect(), c.clone()))
    }

    /// Deterministic text form: terms in lex order as `coef*[e1,e2,..]` joined by `+`.
    pub fn canonical_string(&self) -> String {
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            if i > 0 {
                s.push('+');
            }
            let _ = write!(s, "{c}*[");
            for (j, x) in e.iter().enumerate() {
                if j > 0 {
                    s.push(',');
                }
                let _ = write!(s, "{x}");
            }
            s.push(']');
        }
        if s.is_empty() {
            s.push('0');
        }
        s
    }

    pub fn integer_content(&self) -> BigInt {
        self.terms.values().fold(BigInt::zero(), |acc, c| acc.gcd(c))
    }
}

pub(crate) fn exp_u32(x: i64) -> Result<u32> {
    u32::try_from(x).map_err(|_| Error::ExponentOverflow(alloc::format!("{x}")))
}

pub(crate) fn exp_i64(x: &BigInt) -> Result<i64> {
    i64::try_from(x).map_err(|_| Error::ExponentOverflow(alloc::format!("{x}")))
}

impl fmt::Display for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return f.write_str("0");
        }
        for (i, (e, c)) in self.terms.iter().rev().enumerate() {
            let is_const = e.iter().all(|&x| x == 0);
            if i > 0 {
                f.write_str(if c.is_negative() { " - " } else { " + " })?;
            } else if c.is_negative() {
                f.write_str("-")?;
            }
            let a = c.abs();
            if !a.is_one() || is_const {
                write!(f, "{a}")?;
            }
            let mut first = a.is_one();
            for (v, &x) in e.iter().enumerate() {
                if x == 0 {
                    continue;
                }
                if !first {
                    f.write_str("*")?;
                }
                first = false;
                f.write_str(&self.vars.names()[v])?;
                if x != 1 {
                    write!(f, "^{x}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for LaurentPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl<'a> Add<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn add(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_add(rhs).expect("same variables")
    }
}

impl<'a> Sub<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn sub(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_sub(rhs).expect("same variables")
    }
}

impl<'a> Mul<&'a LaurentPoly> for &'a LaurentPoly {
    type Output = LaurentPoly;

    fn mul(self, rhs: &'a LaurentPoly) -> LaurentPoly {
        self.try_mul(rhs).expect("same variables")
    }
}

impl Neg for &LaurentPoly {
    type Output = LaurentPoly;

    fn neg(self) -> LaurentPoly {
        self.scale(&-BigInt::one())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn xy() -> Vars {
        Vars::cluster(2, 2)
    }

    fn term(v: &Vars, e: [i64; 4], c: i64) -> LaurentPoly {
        LaurentPoly::monomial(v, e.to_vec(), BigInt::from(c))
    }

    #[test]
    fn arithmetic_and_display() {
        let v = xy();
        let p = &term(&v, [0, 0, 1, 0], 1) + &term(&v, [0, 1, 0, 0], 1);
        let q = &p * &term(&v, [-1, 0, 0, 0], 1);
        assert_eq!(q.to_string(), "x1^-1*x2 + x1^-1*y1");
        assert_eq!((&p - &p).to_string(), "0");
        assert_eq!(p.pow(2).len(), 3);
        assert!(LaurentPoly::one(&v).is_one());
    }

    #[test]
    fn exact_division_roundtrip() {
        let v = xy();
        let a = &(&term(&v, [1, 0, 1, 1], 1) + &term(&v, [0, 0, 1, 0], 1)) + &term(&v, [0, 1, 0, 0], 1);
        let b = &term(&v, [-1, 2, 0, 0], 3) + &term(&v, [0, 0, 0, 2], -2);
        let prod = &a * &b;
        assert_eq!(prod.exact_div(&b).unwrap(), a);
        assert_eq!(prod.exact_div(&a).unwrap(), b);
        let not_divisible = &a + &LaurentPoly::one(&v);
        assert_eq!(prod.exact_div(&not_divisible), Err(Error::NotLaurent));
        assert_eq!(a.exact_div(&LaurentPoly::zero(&v)), Err(Error::ZeroDenominator));
    }

    #[test]
    fn specialization_and_substitution() {
        let v = xy();
        let p = &term(&v, [-1, 0, 1, 0], 1) + &term(&v, [-1, 1, 0, 0], 1);
        let f = p.specialize_to_one(&[0, 1]);
        assert_eq!(f.to_string(), "y1 + 1");
        let images: Vec<_> = (0..4).map(|i| LaurentPoly::var(&v, i)).collect();
        assert_eq!(p.substitute(&images, &v).unwrap(), p);
    }

    #[test]
    fn canonical_string_is_lex() {
        let v = xy();
        let p = &term(&v, [0, 1, 0, 0], 2) + &term(&v, [0, 0, 1, 0], 1);
        assert_eq!(p.canonical_string(), "1*[0,0,1,0]+2*[0,1,0,0]");
        assert_eq!(LaurentPoly::zero(&v).canonical_string(), "0");
    }
}
