//! Seeds over a tropical semifield with cluster variables expanded as Laurent polynomials in the
//! initial cluster.

use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::{is_sign_skew_symmetric, mutate_matrix, ExchangeMatrix};
use crate::laurent::{exp_i64, exp_u32, Exponent, LaurentPoly, Vars};
use crate::matrix::IntMatrix;
use crate::path::MutationPath;
use crate::tropical::TropicalElement;
use crate::walk::walk_path;

/// A labeled seed `(x, y, B)`.
///
/// Cluster variables live in `Z[z_1..z_m][x_1^±1..x_n^±1]` where `x_i` are the initial cluster
/// variables and `z_j` the tropical generators. For principal coefficients `m = n`, `z_j = y_j`
/// and the initial exchange matrix is kept for the `Z^n`-grading.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Seed {
    vars: Vars,
    cluster: Vec<LaurentPoly>,
    coeffs: Vec<TropicalElement>,
    b: IntMatrix,
    principal_b0: Option<IntMatrix>,
}

impl Seed {
    /// Initial seed with principal coefficients `y_i = z_i`.
    pub fn principal(b: &ExchangeMatrix) -> Self {
        let n = b.rank();
        let coeffs = (0..n).map(|i| TropicalElement::generator(n, i)).collect();
        let mut s = Self::with_coefficients(b, coeffs).expect("principal coefficients have n entries");
        s.principal_b0 = Some(b.matrix().clone());
        s
    }

    /// Initial seed with arbitrary tropical coefficients over `m` generators.
    pub fn with_coefficients(b: &ExchangeMatrix, coeffs: Vec<TropicalElement>) -> Result<Self> {
        let n = b.rank();
        if coeffs.len() != n {
            return Err(Error::Dimension { context: "coefficient tuple length" });
        }
        let m = coeffs.first().map_or(0, TropicalElement::len);
        if coeffs.iter().any(|c| c.len() != m) {
            return Err(Error::Dimension { context: "tropical generator count" });
        }
        let vars = Vars::cluster(n, m);
        let cluster = (0..n).map(|i| LaurentPoly::var(&vars, i)).collect();
        Ok(Self { vars, cluster, coeffs, b: b.matrix().clone(), principal_b0: None })
    }

    /// Assembles a seed from parts (used when reloading serialized data).
    pub fn from_parts(
        vars: Vars,
        cluster: Vec<LaurentPoly>,
        coeffs: Vec<TropicalElement>,
        b: IntMatrix,
        principal_b0: Option<IntMatrix>,
    ) -> Result<Self> {
        let n = b.order()?;
        if cluster.len() != n || coeffs.len() != n {
            return Err(Error::Dimension { context: "seed parts" });
        }
        if cluster.iter().any(|x| x.vars() != &vars) {
            return Err(Error::VariableMismatch);
        }
        Ok(Self { vars, cluster, coeffs, b, principal_b0 })
    }

    pub fn rank(&self) -> usize {
        self.cluster.len()
    }

    pub fn vars(&self) -> &Vars {
        &self.vars
    }

    pub fn cluster(&self) -> &[LaurentPoly] {
        &self.cluster
    }

    pub fn coefficients(&self) -> &[TropicalElement] {
        &self.coeffs
    }

    pub fn exchange_matrix(&self) -> &IntMatrix {
        &self.b
    }

    pub fn initial_matrix(&self) -> Option<&IntMatrix> {
        self.principal_b0.as_ref()
    }

    pub fn is_principal(&self) -> bool {
        self.principal_b0.is_some()
    }

    /// The matrix whose `j`-th column is the exponent vector of `y_j` (the C-matrix under
    /// principal coefficients).
    pub fn coefficient_matrix(&self) -> IntMatrix {
        let cols: Vec<Vec<BigInt>> = self.coeffs.iter().map(|c| c.exponents().to_vec()).collect();
        IntMatrix::from_columns(&cols).expect("uniform coefficient length")
    }

    fn coefficient_monomial(&self, exps: &TropicalElement) -> Result<LaurentPoly> {
        let n = self.rank();
        let mut e: Exponent = vec![0; self.vars.len()];
        for (j, a) in exps.exponents().iter().enumerate() {
            e[n + j] = exp_i64(a)?;
        }
        Ok(LaurentPoly::monomial(&self.vars, e, BigInt::one()))
    }

    fn cluster_monomial(&self, exps: impl Iterator<Item = BigInt>) -> Result<LaurentPoly> {
        let mut acc = LaurentPoly::one(&self.vars);
        for (i, a) in exps.enumerate() {
            if a.is_zero() {
                continue;
            }
            acc = acc.try_mul(&self.cluster[i].pow(exp_u32(exp_i64(&a)?)?))?;
        }
        Ok(acc)
    }

    /// Seed mutation at `k`.
    ///
    /// The new variable is obtained by exact division in the Laurent ring; a remainder would
    /// contradict the Laurent phenomenon and is reported as [`Error::NotLaurent`].
    pub fn mutate(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        if !is_sign_skew_symmetric(&self.b)? {
            return Err(Error::NotSignSkewSymmetric);
        }
        let yk = &self.coeffs[k];
        let col = self.b.column(k);
        let plus = self.coefficient_monomial(&yk.positive_part())?.try_mul(
            &self.cluster_monomial(col.iter().map(|b| if b.is_positive() { b.clone() } else { BigInt::zero() }))?,
        )?;
        let minus = self
            .coefficient_monomial(&yk.negative_part())?
            .try_mul(&self.cluster_monomial(col.iter().map(|b| if b.is_negative() { -b } else { BigInt::zero() }))?)?;
        let new_var = plus.try_add(&minus)?.exact_div(&self.cluster[k])?;

        let mut cluster = self.cluster.clone();
        cluster[k] = new_var;

        let mut coeffs = Vec::with_capacity(n);
        for i in 0..n {
            if i == k {
                coeffs.push(yk.inverse());
                continue;
            }
            // y_i * y_k^[b_ki]_+ * (y_k ⊕ 1)^(-b_ki)
            let bki = self.b.get(k, i);
            let bracket = if bki.is_positive() { bki.clone() } else { BigInt::zero() };
            let c = self.coeffs[i].times(&yk.pow(&bracket))?.times(&yk.oplus_one().pow(&-bki))?;
            coeffs.push(c);
        }

        Ok(Self {
            vars: self.vars.clone(),
            cluster,
            coeffs,
            b: mutate_matrix(&self.b, k)?,
            principal_b0: self.principal_b0.clone(),
        })
    }

    pub fn mutate_along(&self, path: &MutationPath) -> Result<Self> {
        walk_path(self.clone(), path, |s, k, _| s.mutate(k))
    }

    /// `F_i = x_i |_{x_1 = .. = x_n = 1}`, as a polynomial in `y_1..y_n`.
    pub fn f_polynomial(&self, i: usize) -> Result<LaurentPoly> {
        if !self.is_principal() {
            return Err(Error::UnsupportedCoefficients);
        }
        let n = self.rank();
        let x = self.cluster.get(i).ok_or(Error::IndexOutOfRange { index: i, len: n })?;
        let target = Vars::coefficients(n);
        let map: Vec<Option<usize>> = (0..2 * n).map(|v| v.checked_sub(n)).collect();
        x.specialize_to_one(&(0..n).collect::<Vec<_>>()).remap(&target, &map)
    }

    pub fn f_polynomials(&self) -> Result<Vec<LaurentPoly>> {
        (0..self.rank()).map(|i| self.f_polynomial(i)).collect()
    }

    /// Degree of cluster variable `i` under `deg x_j = e_j`, `deg y_j = -b_j` (columns of the
    /// initial matrix).
    pub fn g_vector_from_grading(&self, i: usize) -> Result<Vec<BigInt>> {
        let b0 = self.principal_b0.as_ref().ok_or(Error::UnsupportedCoefficients)?;
        let n = self.rank();
        let x = self.cluster.get(i).ok_or(Error::IndexOutOfRange { index: i, len: n })?;
        let mut degree: Option<Vec<BigInt>> = None;
        for (e, _) in x.terms() {
            let mut d: Vec<BigInt> = e[..n].iter().map(|&a| BigInt::from(a)).collect();
            for j in 0..n {
                let yj = e[n + j];
                if yj == 0 {
                    continue;
                }
                for (r, dr) in d.iter_mut().enumerate() {
                    *dr -= b0.get(r, j) * yj;
                }
            }
            match &degree {
                None => degree = Some(d),
                Some(prev) if *prev != d => return Err(Error::Inhomogeneous { index: i }),
                Some(_) => {}
            }
        }
        degree.ok_or(Error::Inhomogeneous { index: i })
    }

    /// G-matrix read off the grading, one column per cluster variable.
    pub fn g_matrix_from_grading(&self) -> Result<IntMatrix> {
        let cols = (0..self.rank()).map(|i| self.g_vector_from_grading(i)).collect::<Result<Vec<_>>>()?;
        IntMatrix::from_columns(&cols)
    }

    /// Relabels by `sigma`: the result has `x'_i = x_{sigma(i)}`, `y'_i = y_{sigma(i)}` and
    /// `b'_ij = b_{sigma(i) sigma(j)}`.
    pub fn permuted(&self, sigma: &[usize]) -> Result<Self> {
        let n = self.rank();
        if sigma.len() != n {
            return Err(Error::Dimension { context: "permutation length" });
        }
        Ok(Self {
            vars: self.vars.clone(),
            cluster: sigma.iter().map(|&s| self.cluster[s].clone()).collect(),
            coeffs: sigma.iter().map(|&s| self.coeffs[s].clone()).collect(),
            b: self.b.permuted(sigma)?,
            principal_b0: self.principal_b0.clone(),
        })
    }
}

/// True iff every coefficient of every cluster variable is positive.
pub fn check_positivity(s: &Seed) -> bool {
    s.cluster().iter().all(LaurentPoly::all_coefficients_positive)
}

/// True iff the constant term is exactly 1.
pub fn check_constant_term_one(f: &LaurentPoly) -> bool {
    f.constant_term().is_one()
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn a2_first_mutations() {
        let s0 = Seed::principal(&a2());
        let s1 = s0.mutate(0).unwrap();
        // (y1 + x2) / x1
        assert_eq!(s1.cluster()[0].to_string(), "x1^-1*x2 + x1^-1*y1");
        assert_eq!(s1.f_polynomial(0).unwrap().to_string(), "y1 + 1");
        assert_eq!(s1.g_vector_from_grading(0).unwrap(), ints(&[-1, 1]));
        let s2 = s1.mutate(1).unwrap();
        // (y1 y2 x1 + y1 + x2) / (x1 x2)
        assert_eq!(s2.cluster()[1].to_string(), "x2^-1*y1*y2 + x1^-1 + x1^-1*x2^-1*y1");
        assert_eq!(s2.f_polynomial(1).unwrap().to_string(), "y1*y2 + y1 + 1");
        assert_eq!(s2.g_vector_from_grading(1).unwrap(), ints(&[-1, 0]));
    }

    #[test]
    fn initial_seed_data() {
        let s0 = Seed::principal(&a2());
        for i in 0..2 {
            assert!(s0.f_polynomial(i).unwrap().is_one());
            let mut e = ints(&[0, 0]);
            e[i] = BigInt::one();
            assert_eq!(s0.g_vector_from_grading(i).unwrap(), e);
        }
        assert!(check_positivity(&s0));
        assert!(s0.coefficient_matrix().is_identity());
    }

    #[test]
    fn mutation_is_involutive() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-2, -1, 0]]).unwrap();
        let s = Seed::principal(&b).mutate(0).unwrap().mutate(2).unwrap();
        for k in 0..3 {
            assert_eq!(s.mutate(k).unwrap().mutate(k).unwrap(), s);
        }
        assert!(s.mutate(3).is_err());
    }

    #[test]
    fn non_principal_rejects_grading() {
        let coeffs = vec![TropicalElement::one(1), TropicalElement::generator(1, 0)];
        let s = Seed::with_coefficients(&a2(), coeffs).unwrap();
        assert_eq!(s.f_polynomial(0), Err(Error::UnsupportedCoefficients));
        assert_eq!(s.g_vector_from_grading(0), Err(Error::UnsupportedCoefficients));
        let s1 = s.mutate(0).unwrap();
        // y1 = 1 in trop(z): x1' = (1 + x2)/x1 after dividing by 1 ⊕ 1 = 1
        assert_eq!(s1.cluster()[0].to_string(), "x1^-1*x2 + x1^-1");
    }

    #[test]
    fn constant_term_checks() {
        let v = Vars::coefficients(2);
        let one = LaurentPoly::one(&v);
        let y1 = LaurentPoly::var(&v, 0);
        let y2 = LaurentPoly::var(&v, 1);
        assert!(check_constant_term_one(&(&one + &y1)));
        assert!(check_constant_term_one(&one));
        assert!(!check_constant_term_one(&(&y1 + &y2)));
    }
}
