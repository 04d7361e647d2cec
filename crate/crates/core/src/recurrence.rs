//! F-polynomials, C-matrices and G-matrices advanced by their entrywise recurrences, without
//! computing cluster variables.

use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::mutate_matrix;
use crate::laurent::{exp_i64, exp_u32, LaurentPoly, Vars};
use crate::matrix::{pos_part, IntMatrix};
use crate::path::MutationPath;
use crate::walk::walk_path;

/// `(F_t, C_t, G_t, B_t)` at one vertex, relative to a fixed initial matrix.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RecurrenceState {
    pub f: Vec<LaurentPoly>,
    pub c: IntMatrix,
    pub g: IntMatrix,
    pub b: IntMatrix,
}

impl RecurrenceState {
    pub fn initial(b0: &IntMatrix) -> Result<Self> {
        let n = b0.order()?;
        let vars = Vars::coefficients(n);
        Ok(Self {
            f: (0..n).map(|_| LaurentPoly::one(&vars)).collect(),
            c: IntMatrix::identity(n),
            g: IntMatrix::identity(n),
            b: b0.clone(),
        })
    }

    pub fn step(&self, b0: &IntMatrix, k: usize) -> Result<Self> {
        let (f, c, g) = recurrence_step(&self.f, &self.c, &self.g, &self.b, b0, k)?;
        Ok(Self { f, c, g, b: mutate_matrix(&self.b, k)? })
    }

    pub fn along(b0: &IntMatrix, path: &MutationPath) -> Result<Self> {
        walk_path(Self::initial(b0)?, path, |s, k, _| s.step(b0, k))
    }
}

fn y_monomial(vars: &Vars, exps: impl Iterator<Item = BigInt>) -> Result<LaurentPoly> {
    let e = exps.map(|a| exp_i64(&a)).collect::<Result<Vec<_>>>()?;
    Ok(LaurentPoly::monomial(vars, e, BigInt::one()))
}

fn f_product(f: &[LaurentPoly], vars: &Vars, exps: impl Iterator<Item = BigInt>) -> Result<LaurentPoly> {
    let mut acc = LaurentPoly::one(vars);
    for (fi, a) in f.iter().zip(exps) {
        if !a.is_zero() {
            acc = acc.try_mul(&fi.pow(exp_u32(exp_i64(&a)?)?))?;
        }
    }
    Ok(acc)
}

/// One mutation step at `k` of `(F, C, G)` at a vertex with exchange matrix `b`, where `b0` is
/// the initial exchange matrix.
///
/// * `F'_k = (y^[c_k]_+ prod F_i^[b_ik]_+ + y^[-c_k]_+ prod F_i^[-b_ik]_+) / F_k`
/// * `c'_ij = -c_ij` if `j = k`, else `c_ij + sign(c_ik) [c_ik b_kj]_+`
/// * `g'_k = -g_k + sum_i [b_ik]_+ g_i - sum_j [c_jk]_+ b0_j`, where `b0_j` is column `j` of `b0`
pub fn recurrence_step(
    f: &[LaurentPoly],
    c: &IntMatrix,
    g: &IntMatrix,
    b: &IntMatrix,
    b0: &IntMatrix,
    k: usize,
) -> Result<(Vec<LaurentPoly>, IntMatrix, IntMatrix)> {
    let n = b.order()?;
    if f.len() != n || c.rows() != n || c.cols() != n || g.rows() != n || g.cols() != n || b0.order()? != n {
        return Err(Error::Dimension { context: "recurrence inputs" });
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let vars = f[0].vars().clone();
    if vars.len() != n || f.iter().any(|p| p.vars() != &vars) {
        return Err(Error::VariableMismatch);
    }

    let ck = c.column(k);
    let bk = b.column(k);
    let plus = y_monomial(&vars, ck.iter().map(pos_part))?.try_mul(&f_product(f, &vars, bk.iter().map(pos_part))?)?;
    let minus = y_monomial(&vars, ck.iter().map(|a| pos_part(&-a)))?.try_mul(&f_product(
        f,
        &vars,
        bk.iter().map(|a| pos_part(&-a)),
    )?)?;
    let mut f_new = f.to_vec();
    f_new[k] = plus.try_add(&minus)?.exact_div(&f[k])?;

    let mut c_new = c.clone();
    for i in 0..n {
        let cik = c.get(i, k);
        for j in 0..n {
            if j == k {
                c_new.set(i, j, -cik);
            } else {
                let t = pos_part(&(cik * b.get(k, j)));
                if !t.is_zero() {
                    let v = if cik.is_negative() { c.get(i, j) - t } else { c.get(i, j) + t };
                    c_new.set(i, j, v);
                }
            }
        }
    }

    let mut g_new = g.clone();
    for r in 0..n {
        let mut v = -g.get(r, k);
        for i in 0..n {
            let bik = pos_part(b.get(i, k));
            if !bik.is_zero() {
                v += bik * g.get(r, i);
            }
            let cik = pos_part(c.get(i, k));
            if !cik.is_zero() {
                v -= cik * b0.get(r, i);
            }
        }
        g_new.set(r, k, v);
    }
    Ok((f_new, c_new, g_new))
}
