//! Polynomial GCD over the integers and reduced rational functions.
//!
//! GCDs use the recursive primitive polynomial remainder sequence: the smallest variable present
//! is the main variable and contents are taken over the remaining ones.

use alloc::collections::BTreeMap;
use alloc::vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};

use crate::error::{Error, Result};
use crate::laurent::{Exponent, LaurentPoly, Vars};

fn main_variable(a: &LaurentPoly, b: &LaurentPoly) -> Option<usize> {
    (0..a.nvars()).find(|&v| a.mentions(v) || b.mentions(v))
}

/// Coefficients of `p` viewed as a univariate polynomial in `v`.
fn coefficients_in(p: &LaurentPoly, v: usize) -> BTreeMap<i64, LaurentPoly> {
    let mut out: BTreeMap<i64, LaurentPoly> = BTreeMap::new();
    for (e, c) in p.terms() {
        let mut rest = e.clone();
        let d = core::mem::replace(&mut rest[v], 0);
        out.entry(d).or_insert_with(|| LaurentPoly::zero(p.vars())).add_term(rest, c.clone());
    }
    out
}

fn degree_in(p: &LaurentPoly, v: usize) -> i64 {
    p.max_degree(v).unwrap_or(0)
}

fn leading_coefficient_in(p: &LaurentPoly, v: usize) -> LaurentPoly {
    coefficients_in(p, v).into_iter().next_back().map(|(_, c)| c).unwrap_or_else(|| LaurentPoly::zero(p.vars()))
}

/// Content of `p` with respect to `v`: the GCD of its coefficients in `v`.
fn content_in(p: &LaurentPoly, v: usize) -> Result<LaurentPoly> {
    let mut g = LaurentPoly::zero(p.vars());
    for c in coefficients_in(p, v).into_values() {
        g = gcd(&g, &c)?;
        if g.is_one() {
            break;
        }
    }
    Ok(g)
}

fn primitive_part_in(p: &LaurentPoly, v: usize) -> Result<LaurentPoly> {
    if p.is_zero() {
        return Ok(p.clone());
    }
    p.exact_div(&content_in(p, v)?)
}

/// Pseudo-remainder of `a` by `b` in the variable `v`.
fn pseudo_remainder(a: &LaurentPoly, b: &LaurentPoly, v: usize) -> Result<LaurentPoly> {
    let db = degree_in(b, v);
    let lb = leading_coefficient_in(b, v);
    let mut r = a.clone();
    while !r.is_zero() && degree_in(&r, v) >= db {
        let dr = degree_in(&r, v);
        let lr = leading_coefficient_in(&r, v);
        let mut shift = vec![0; b.nvars()];
        shift[v] = dr - db;
        let sub = lr.try_mul(&b.mul_term(&shift, &BigInt::one()))?;
        r = lb.try_mul(&r)?.try_sub(&sub)?;
    }
    Ok(r)
}

/// Makes the lexicographically leading coefficient positive.
fn normalize_sign(p: LaurentPoly) -> LaurentPoly {
    match p.leading_term() {
        Some((_, c)) if c.is_negative() => -&p,
        _ => p,
    }
}

/// GCD of two polynomials (nonnegative exponents) over the integers, with positive leading
/// coefficient. `gcd(0, 0) = 0`.
pub fn gcd(a: &LaurentPoly, b: &LaurentPoly) -> Result<LaurentPoly> {
    if !a.is_polynomial() || !b.is_polynomial() {
        return Err(Error::Precondition("gcd requires polynomials"));
    }
    if a.is_zero() {
        return Ok(normalize_sign(b.clone()));
    }
    if b.is_zero() {
        return Ok(normalize_sign(a.clone()));
    }
    let Some(v) = main_variable(a, b) else {
        let g = a.constant_term().gcd(&b.constant_term());
        return Ok(LaurentPoly::constant(a.vars(), g));
    };
    if !a.mentions(v) {
        return gcd(a, &content_in(b, v)?);
    }
    if !b.mentions(v) {
        return gcd(&content_in(a, v)?, b);
    }
    let (ca, cb) = (content_in(a, v)?, content_in(b, v)?);
    let content = gcd(&ca, &cb)?;
    let mut p = a.exact_div(&ca)?;
    let mut q = b.exact_div(&cb)?;
    if degree_in(&p, v) < degree_in(&q, v) {
        core::mem::swap(&mut p, &mut q);
    }
    let g = loop {
        let r = pseudo_remainder(&p, &q, v)?;
        if r.is_zero() {
            break q;
        }
        if !r.mentions(v) {
            break LaurentPoly::one(a.vars());
        }
        p = q;
        q = primitive_part_in(&r, v)?;
    };
    Ok(normalize_sign(content.try_mul(&primitive_part_in(&g, v)?)?))
}

/// A reduced quotient of polynomials.
///
/// Invariants: `num` and `den` are polynomials with no common factor (including common monomials
/// and integer content), and the lexicographically leading coefficient of `den` is positive.
#[derive(Clone, PartialEq, Eq)]
pub struct RatFunc {
    num: LaurentPoly,
    den: LaurentPoly,
}

impl RatFunc {
    pub fn new(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::reduce(num, den)
    }

    pub fn from_poly(p: LaurentPoly) -> Result<Self> {
        let one = LaurentPoly::one(p.vars());
        Self::reduce(p, one)
    }

    pub fn var(vars: &Vars, i: usize) -> Self {
        Self { num: LaurentPoly::var(vars, i), den: LaurentPoly::one(vars) }
    }

    pub fn one(vars: &Vars) -> Self {
        Self { num: LaurentPoly::one(vars), den: LaurentPoly::one(vars) }
    }

    pub fn numerator(&self) -> &LaurentPoly {
        &self.num
    }

    pub fn denominator(&self) -> &LaurentPoly {
        &self.den
    }

    fn reduce(num: LaurentPoly, den: LaurentPoly) -> Result<Self> {
        if num.is_zero() {
            return Ok(Self { den: LaurentPoly::one(num.vars()), num });
        }
        // clear monomial parts so that both sides are coprime to every variable
        let n = num.nvars();
        let shift: Exponent = (0..n).map(|v| -(num.min_degree(v).unwrap().min(den.min_degree(v).unwrap()))).collect();
        let mut num = num.mul_term(&shift, &BigInt::one());
        let mut den = den.mul_term(&shift, &BigInt::one());
        let g = gcd(&num, &den)?;
        if !g.is_one() {
            num = num.exact_div(&g)?;
            den = den.exact_div(&g)?;
        }
        if den.leading_term().is_some_and(|(_, c)| c.is_negative()) {
            num = -&num;
            den = -&den;
        }
        Ok(Self { num, den })
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        Self::reduce(self.num.try_mul(&other.num)?, self.den.try_mul(&other.den)?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        let num = self.num.try_mul(&other.den)?.try_add(&other.num.try_mul(&self.den)?)?;
        Self::reduce(num, self.den.try_mul(&other.den)?)
    }

    pub fn inv(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Self::reduce(self.den.clone(), self.num.clone())
    }

    pub fn powi(&self, e: i64) -> Result<Self> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let e = crate::laurent::exp_u32(e.abs())?;
        Ok(Self { num: base.num.pow(e), den: base.den.pow(e) })
    }

    pub fn powi_big(&self, e: &BigInt) -> Result<Self> {
        self.powi(crate::laurent::exp_i64(e)?)
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn vars() -> Vars {
        Vars::coefficients(3)
    }

    fn p(v: &Vars, terms: &[([i64; 3], i64)]) -> LaurentPoly {
        LaurentPoly::from_terms(v, terms.iter().map(|(e, c)| (e.to_vec(), BigInt::from(*c)))).unwrap()
    }

    #[test]
    fn gcd_of_products() {
        let v = vars();
        let f = p(&v, &[([1, 0, 0], 1), ([0, 1, 1], 2), ([0, 0, 0], 1)]);
        let g = p(&v, &[([0, 2, 0], 1), ([1, 0, 0], -3)]);
        let h = p(&v, &[([0, 0, 1], 1), ([1, 1, 0], 1)]);
        let a = &f * &g;
        let b = &f * &h;
        assert_eq!(gcd(&a, &b).unwrap(), f);
        let scaled = a.scale(&BigInt::from(6));
        let other = b.scale(&BigInt::from(-4));
        assert_eq!(gcd(&scaled, &other).unwrap(), f.scale(&BigInt::from(2)));
        assert!(gcd(&g, &h).unwrap().is_one());
    }

    #[test]
    fn rational_functions_reduce() {
        let v = vars();
        let y1 = RatFunc::var(&v, 0);
        let one = RatFunc::one(&v);
        let s = y1.add(&one).unwrap(); // y1 + 1
        let q = s.mul(&s.inv().unwrap()).unwrap();
        assert_eq!(q, one);
        let r = RatFunc::new(p(&v, &[([2, 0, 0], 1), ([0, 0, 0], -1)]), p(&v, &[([1, 0, 0], -1), ([0, 0, 0], -1)]))
            .unwrap();
        // (y1^2 - 1) / (-(y1 + 1)) = 1 - y1
        assert_eq!(r, RatFunc::from_poly(p(&v, &[([1, 0, 0], -1), ([0, 0, 0], 1)])).unwrap());
        assert_eq!(y1.powi(-2).unwrap().inv().unwrap(), y1.powi(2).unwrap());
        assert!(RatFunc::new(LaurentPoly::one(&v), LaurentPoly::zero(&v)).is_err());
    }
}
