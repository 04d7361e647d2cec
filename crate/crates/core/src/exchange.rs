//! Exchange matrices: sign-skew-symmetry, acyclicity, skew-symmetrizability and mutation.

use alloc::collections::VecDeque;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::matrix::IntMatrix;
use crate::path::MutationPath;
use crate::walk::walk_levels;

/// A square sign-skew-symmetric integer matrix.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExchangeMatrix(IntMatrix);

impl ExchangeMatrix {
    pub fn new(m: IntMatrix) -> Result<Self> {
        if !is_sign_skew_symmetric(&m)? {
            return Err(Error::NotSignSkewSymmetric);
        }
        Ok(Self(m))
    }

    pub fn from_rows(rows: &[Vec<i64>]) -> Result<Self> {
        Self::new(IntMatrix::from_rows(rows)?)
    }

    pub fn rank(&self) -> usize {
        self.0.rows()
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> IntMatrix {
        self.0
    }

    /// `mu_k`, re-validated; errors if the result loses sign-skew-symmetry.
    pub fn mutate(&self, k: usize) -> Result<Self> {
        Self::new(mutate_matrix(&self.0, k)?)
    }

    /// `-B^T`, which is sign-skew-symmetric whenever `B` is.
    pub fn neg_transpose(&self) -> Self {
        Self(-&self.0.transpose())
    }

    pub fn transpose(&self) -> Self {
        Self(self.0.transpose())
    }

    pub fn negated(&self) -> Self {
        Self(-&self.0)
    }

    pub fn is_acyclic(&self) -> bool {
        is_acyclic(&self.0)
    }
}

impl AsRef<IntMatrix> for ExchangeMatrix {
    fn as_ref(&self) -> &IntMatrix {
        &self.0
    }
}

/// `b_ij b_ji <= 0`, with equality only when both entries vanish.
pub fn is_sign_skew_symmetric(m: &IntMatrix) -> Result<bool> {
    let n = m.order()?;
    for i in 0..n {
        for j in i..n {
            let (a, b) = (m.get(i, j), m.get(j, i));
            let ok = if a.is_zero() || b.is_zero() {
                a.is_zero() && b.is_zero()
            } else {
                a.is_positive() != b.is_positive()
            };
            if !ok {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

pub fn is_skew_symmetric(m: &IntMatrix) -> bool {
    m.is_square() && (0..m.rows()).all(|i| (0..m.cols()).all(|j| *m.get(i, j) == -m.get(j, i)))
}

/// True iff the digraph with an arc `i -> j` whenever `b_ij > 0` has no directed cycle.
pub fn is_acyclic(m: &IntMatrix) -> bool {
    let n = m.rows();
    let mut indegree = vec![0usize; n];
    for i in 0..n {
        for j in 0..n {
            if m.get(i, j).is_positive() {
                indegree[j] += 1;
            }
        }
    }
    let mut queue: VecDeque<usize> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut removed = 0;
    while let Some(v) = queue.pop_front() {
        removed += 1;
        for j in 0..n {
            if m.get(v, j).is_positive() {
                indegree[j] -= 1;
                if indegree[j] == 0 {
                    queue.push_back(j);
                }
            }
        }
    }
    removed == n
}

/// True iff the undirected graph with an edge wherever `b_ij != 0` is connected.
pub fn is_indecomposable(m: &IntMatrix) -> bool {
    let n = m.rows();
    if n == 0 {
        return false;
    }
    let mut seen = vec![false; n];
    let mut stack = vec![0usize];
    seen[0] = true;
    while let Some(v) = stack.pop() {
        for w in 0..n {
            if !seen[w] && (!m.get(v, w).is_zero() || !m.get(w, v).is_zero()) {
                seen[w] = true;
                stack.push(w);
            }
        }
    }
    seen.into_iter().all(|s| s)
}

/// Matrix mutation at `k`.
///
/// The result is not re-checked for sign-skew-symmetry.
pub fn mutate_matrix(m: &IntMatrix, k: usize) -> Result<IntMatrix> {
    let n = m.order()?;
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let mut out = m.clone();
    for i in 0..n {
        for j in 0..n {
            if i == k || j == k {
                out.set(i, j, -m.get(i, j));
                continue;
            }
            let (bik, bkj) = (m.get(i, k), m.get(k, j));
            let prod = bik * bkj;
            if prod.is_positive() {
                if bik.is_positive() {
                    *out.get_mut(i, j) += prod;
                } else {
                    *out.get_mut(i, j) -= prod;
                }
            }
        }
    }
    Ok(out)
}

/// Positive integer diagonal `D` with `d_i b_ij = -d_j b_ji`, if one exists.
///
/// Ratios are propagated along a spanning forest of the nonzero pattern and checked on every
/// remaining edge; the result is scaled to coprime integers per component.
pub fn skew_symmetrizer(m: &IntMatrix) -> Result<Option<Vec<BigInt>>> {
    let n = m.order()?;
    if !is_sign_skew_symmetric(m)? {
        return Ok(None);
    }
    let mut d: Vec<Option<BigRational>> = vec![None; n];
    let mut component = vec![usize::MAX; n];
    for root in 0..n {
        if d[root].is_some() {
            continue;
        }
        d[root] = Some(BigRational::one());
        component[root] = root;
        let mut stack = vec![root];
        while let Some(i) = stack.pop() {
            let di = d[i].clone().expect("assigned");
            for j in 0..n {
                let (bij, bji) = (m.get(i, j), m.get(j, i));
                if bij.is_zero() {
                    continue;
                }
                // d_j = d_i * b_ij / (-b_ji)
                let dj = &di * BigRational::new(bij.clone(), -bji);
                match &d[j] {
                    None => {
                        d[j] = Some(dj);
                        component[j] = root;
                        stack.push(j);
                    }
                    Some(existing) if *existing != dj => return Ok(None),
                    Some(_) => {}
                }
            }
        }
    }
    let mut out = vec![BigInt::zero(); n];
    for root in 0..n {
        let members: Vec<usize> = (0..n).filter(|&v| component[v] == root).collect();
        if members.is_empty() {
            continue;
        }
        let lcm = members.iter().fold(BigInt::one(), |acc, &v| acc.lcm(d[v].as_ref().expect("assigned").denom()));
        let scaled: Vec<BigInt> = members
            .iter()
            .map(|&v| {
                let r = d[v].as_ref().expect("assigned");
                r.numer() * (&lcm / r.denom())
            })
            .collect();
        let g = scaled.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
        for (&v, s) in members.iter().zip(scaled) {
            out[v] = s / &g;
        }
    }
    Ok(Some(out))
}

/// Outcome of a bounded search for a mutation sequence that breaks sign-skew-symmetry.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SssReport {
    pub verified_depth: usize,
    pub failure_path: Option<MutationPath>,
    pub failing_matrix: Option<IntMatrix>,
}

impl SssReport {
    pub fn passed(&self) -> bool {
        self.failure_path.is_none()
    }
}

/// Breadth-first search over all reduced mutation sequences of length at most `depth`.
pub fn verify_totally_sss(b: &IntMatrix, depth: usize) -> Result<SssReport> {
    let n = b.order()?;
    if !is_sign_skew_symmetric(b)? {
        return Ok(SssReport {
            verified_depth: 0,
            failure_path: Some(MutationPath::empty()),
            failing_matrix: Some(b.clone()),
        });
    }
    let outcome = walk_levels(
        b.clone(),
        n,
        depth,
        |m, k, _| mutate_matrix(m, k).map_err(Err),
        |m, path| match is_sign_skew_symmetric(m) {
            Ok(true) => Ok(()),
            Ok(false) => Err(Ok((path.clone(), m.clone()))),
            Err(e) => Err(Err(e)),
        },
    );
    match outcome {
        Ok(()) => Ok(SssReport { verified_depth: depth, failure_path: None, failing_matrix: None }),
        Err(Ok((path, m))) => {
            Ok(SssReport { verified_depth: path.len() - 1, failure_path: Some(path), failing_matrix: Some(m) })
        }
        Err(Err(e)) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn sign_skew_symmetry_examples() {
        assert!(is_sign_skew_symmetric(&m(&[&[0, 1], &[-1, 0]])).unwrap());
        assert!(!is_sign_skew_symmetric(&m(&[&[0, 1], &[1, 0]])).unwrap());
        assert!(is_sign_skew_symmetric(&m(&[&[0, 2], &[-1, 0]])).unwrap());
        assert!(!is_sign_skew_symmetric(&m(&[&[0, 1], &[0, 0]])).unwrap());
        assert!(!is_sign_skew_symmetric(&m(&[&[1]])).unwrap());
        assert_eq!(is_sign_skew_symmetric(&m(&[&[0, 1, 2]])), Err(Error::NotSquare { rows: 1, cols: 3 }));
    }

    #[test]
    fn acyclicity_examples() {
        assert!(is_acyclic(&m(&[&[0, 1], &[-1, 0]])));
        assert!(!is_acyclic(&m(&[&[0, 2, -2], &[-2, 0, 2], &[2, -2, 0]])));
        assert!(is_acyclic(&m(&[&[0, 1, 1], &[-1, 0, 1], &[-1, -1, 0]])));
    }

    #[test]
    fn mutation_examples() {
        assert_eq!(mutate_matrix(&m(&[&[0, 1], &[-1, 0]]), 0).unwrap(), m(&[&[0, -1], &[1, 0]]));
        let b = m(&[&[0, 1, 1], &[-1, 0, 1], &[-1, -1, 0]]);
        assert_eq!(mutate_matrix(&b, 1).unwrap(), m(&[&[0, -1, 2], &[1, 0, -1], &[-2, 1, 0]]));
        assert!(mutate_matrix(&b, 3).is_err());
    }

    #[test]
    fn symmetrizer() {
        let b = m(&[&[0, 1, 0], &[-2, 0, 1], &[0, -1, 0]]);
        let d = skew_symmetrizer(&b).unwrap().unwrap();
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(1), BigInt::from(1)]);
        let ns = m(&[&[0, 1, 1], &[-1, 0, 1], &[-2, -1, 0]]);
        assert_eq!(skew_symmetrizer(&ns).unwrap(), None);
        let decomposable = m(&[&[0, 3, 0, 0], &[-1, 0, 0, 0], &[0, 0, 0, 1], &[0, 0, -1, 0]]);
        let d = skew_symmetrizer(&decomposable).unwrap().unwrap();
        assert_eq!(d, vec![BigInt::from(1), BigInt::from(3), BigInt::from(1), BigInt::from(1)]);
    }

    #[test]
    fn totally_sss_search() {
        let r = verify_totally_sss(&m(&[&[0, 1], &[-1, 0]]), 10).unwrap();
        assert!(r.passed());
        assert_eq!(r.verified_depth, 10);
        let r = verify_totally_sss(&m(&[&[0, 1, 1], &[-1, 0, 1], &[-1, -1, 0]]), 6).unwrap();
        assert!(r.passed());
        // cyclic and not skew-symmetrizable: fails right after the first mutation
        let r = verify_totally_sss(&m(&[&[0, 1, -1], &[-1, 0, 1], &[2, -1, 0]]), 4).unwrap();
        assert_eq!(r.failure_path.as_ref().map(MutationPath::len), Some(1));
        assert_eq!(r.verified_depth, 0);
        assert!(r.failing_matrix.is_some());
    }

    #[test]
    fn indecomposable() {
        assert!(is_indecomposable(&m(&[&[0, 1, 0], &[-1, 0, 1], &[0, -1, 0]])));
        assert!(!is_indecomposable(&m(&[&[0, 1, 0], &[-1, 0, 0], &[0, 0, 0]])));
    }
}
