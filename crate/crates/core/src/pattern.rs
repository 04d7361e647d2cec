//! The matrix pattern `(B_t, C_t, G_t)` and checks of its tropical dualities.

use alloc::collections::BTreeSet;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::{mutate_matrix, ExchangeMatrix};
use crate::matrix::{as_signed_unit, coherent_sign, pos_part, IntMatrix};
use crate::path::MutationPath;
use crate::walk::{walk_levels, walk_path, Stop};

/// One vertex of the matrix pattern, with the path that reached it from the root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternNode {
    pub b: IntMatrix,
    pub c: IntMatrix,
    pub g: IntMatrix,
    pub path: MutationPath,
}

/// Sign of column `k` of `c`, if it is nonzero and sign-coherent.
pub fn column_sign(c: &IntMatrix, k: usize) -> Option<i8> {
    coherent_sign(c.column(k).iter())
}

/// Sign of row `k` of `g`, if it is nonzero and sign-coherent.
pub fn row_sign(g: &IntMatrix, k: usize) -> Option<i8> {
    coherent_sign(g.row(k))
}

fn signed(x: &BigInt, s: i8) -> BigInt {
    if s < 0 {
        -x
    } else {
        x.clone()
    }
}

impl PatternNode {
    /// The root: `C = G = I`.
    pub fn initial(b: &IntMatrix) -> Result<Self> {
        let n = b.order()?;
        Ok(Self { b: b.clone(), c: IntMatrix::identity(n), g: IntMatrix::identity(n), path: MutationPath::empty() })
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    /// `C' = C(J_k + [eB]_+^{k.})`, `G' = G(J_k + [-eB]_+^{.k})` with `e` the sign of column `k`
    /// of `C`.
    pub fn step(&self, k: usize) -> Result<Self> {
        let n = self.rank();
        if k >= n {
            return Err(Error::IndexOutOfRange { index: k, len: n });
        }
        let path = self.path.pushed(k);
        let eps = column_sign(&self.c, k).ok_or_else(|| Error::SignUndefined { index: k, path: path.clone() })?;

        let mut c = self.c.clone();
        for j in 0..n {
            if j == k {
                continue;
            }
            let t = pos_part(&signed(self.b.get(k, j), eps));
            if t.is_zero() {
                continue;
            }
            for i in 0..n {
                let cik = self.c.get(i, k);
                if !cik.is_zero() {
                    *c.get_mut(i, j) += cik * &t;
                }
            }
        }
        for i in 0..n {
            let v = -self.c.get(i, k);
            c.set(i, k, v);
        }

        let mut g = self.g.clone();
        for i in 0..n {
            let mut v = -self.g.get(i, k);
            for l in 0..n {
                let t = pos_part(&signed(self.b.get(l, k), -eps));
                if !t.is_zero() {
                    v += self.g.get(i, l) * t;
                }
            }
            g.set(i, k, v);
        }

        Ok(Self { b: mutate_matrix(&self.b, k)?, c, g, path })
    }

    pub fn along(b: &IntMatrix, path: &MutationPath) -> Result<Self> {
        walk_path(Self::initial(b)?, path, |s, k, _| s.step(k))
    }

    /// Every column of `C` is nonzero and sign-coherent.
    pub fn columns_coherent(&self) -> bool {
        (0..self.rank()).all(|k| column_sign(&self.c, k).is_some())
    }

    /// Every row of `G` is nonzero and sign-coherent.
    pub fn rows_coherent(&self) -> bool {
        (0..self.rank()).all(|k| row_sign(&self.g, k).is_some())
    }
}

/// `G B_t = B_0 C`.
pub fn check_first_duality(node: &PatternNode, b0: &IntMatrix) -> bool {
    match (node.g.checked_mul(&node.b), b0.checked_mul(&node.c)) {
        (Ok(l), Ok(r)) => l == r,
        _ => false,
    }
}

/// `det G = det C` and both are `±1`.
pub fn check_determinants(node: &PatternNode) -> bool {
    match (node.g.det(), node.c.det()) {
        (Ok(dg), Ok(dc)) => dg == dc && dg.abs().is_one(),
        _ => false,
    }
}

/// Patterns of `B` and `-B^T` advanced along the same path, each with its own column signs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LockstepPair {
    pub plus: PatternNode,
    pub minus: PatternNode,
}

impl LockstepPair {
    pub fn initial(b: &IntMatrix) -> Result<Self> {
        let minus = -&b.transpose();
        Ok(Self { plus: PatternNode::initial(b)?, minus: PatternNode::initial(&minus)? })
    }

    pub fn step(&self, k: usize) -> Result<Self> {
        Ok(Self { plus: self.plus.step(k)?, minus: self.minus.step(k)? })
    }

    /// First `k` with `e_k(C) != e_k(C~)`.
    pub fn sign_mismatch(&self) -> Result<Option<usize>> {
        for k in 0..self.plus.rank() {
            let undefined = |_| Error::SignUndefined { index: k, path: self.plus.path.clone() };
            let a = column_sign(&self.plus.c, k).ok_or(()).map_err(undefined)?;
            let b = column_sign(&self.minus.c, k).ok_or(()).map_err(undefined)?;
            if a != b {
                return Ok(Some(k));
            }
        }
        Ok(None)
    }
}

/// `G^T C~ = I`.
pub fn check_second_duality(pair: &LockstepPair) -> bool {
    pair.plus.g.transpose().checked_mul(&pair.minus.c).is_ok_and(|m| m.is_identity())
}

/// A failing vertex, located by the path to the root it was checked from and the path from
/// that root.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedFailure {
    pub root_matrix: IntMatrix,
    pub root_path: MutationPath,
    pub path: MutationPath,
    pub index: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AssumptionReport {
    pub depth: usize,
    pub verified_depth: usize,
    pub roots_checked: usize,
    pub nodes_checked: usize,
    pub second_duality_checked: usize,
    pub failure: Option<RootedFailure>,
    pub second_duality_failure: Option<RootedFailure>,
}

impl AssumptionReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.second_duality_failure.is_none()
    }
}

/// Distinct exchange matrices within `depth` of `b`, each with the first (shortest, then
/// lexicographically least) path reaching it.
pub fn explored_matrices(b: &IntMatrix, depth: usize) -> Result<Vec<(IntMatrix, MutationPath)>> {
    let n = b.order()?;
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    walk_levels(
        b.clone(),
        n,
        depth,
        |m, k, _| mutate_matrix(m, k),
        |m, p| {
            if seen.insert(m.clone()) {
                out.push((m.clone(), p.clone()));
            }
            Ok::<(), Error>(())
        },
    )?;
    Ok(out)
}

/// Lockstep walk from a single root: returns the first sign mismatch and the first second
/// duality failure, plus the number of vertices visited.
fn lockstep_from_root(
    root: &IntMatrix,
    depth: usize,
) -> Result<(usize, Option<(MutationPath, usize)>, Option<MutationPath>)> {
    let mut visited = 0usize;
    let mut duality = None;
    let walked = walk_levels(
        LockstepPair::initial(root)?,
        root.rows(),
        depth,
        |p, k, _| Ok(p.step(k)?),
        |p, path| {
            visited += 1;
            if let Some(k) = p.sign_mismatch()? {
                return Err(Stop::Found((path.clone(), k)));
            }
            if duality.is_none() && !check_second_duality(p) {
                duality = Some(path.clone());
            }
            Ok(())
        },
    );
    match walked {
        Ok(()) => Ok((visited, None, duality)),
        Err(Stop::Found(f)) => Ok((visited, Some(f), duality)),
        Err(Stop::Failed(e)) => Err(e),
    }
}

/// Compares column signs of `C` and `C~` at every vertex within `depth` of every root, where the
/// roots are all exchange matrices within `depth` of `B` and of `-B`. Second duality is checked
/// at the same vertices.
pub fn check_assumption(b: &ExchangeMatrix, depth: usize) -> Result<AssumptionReport> {
    let mut roots = Vec::new();
    for (m, p) in explored_matrices(b.matrix(), depth)? {
        roots.push((-&m, p.clone()));
        roots.push((m, p));
    }
    let mut seen = BTreeSet::new();
    roots.retain(|(m, _)| seen.insert(m.clone()));
    check_assumption_at_roots(&roots, depth)
}

/// As [`check_assumption`], over an explicit root list.
pub fn check_assumption_at_roots(roots: &[(IntMatrix, MutationPath)], depth: usize) -> Result<AssumptionReport> {
    let mut report = AssumptionReport {
        depth,
        verified_depth: depth,
        roots_checked: 0,
        nodes_checked: 0,
        second_duality_checked: 0,
        failure: None,
        second_duality_failure: None,
    };
    for (m, root_path) in roots {
        let (visited, mismatch, duality) = lockstep_from_root(m, depth)?;
        report.roots_checked += 1;
        report.nodes_checked += visited;
        report.second_duality_checked += visited;
        if let (None, Some(path)) = (&report.second_duality_failure, duality) {
            report.second_duality_failure =
                Some(RootedFailure { root_matrix: m.clone(), root_path: root_path.clone(), path, index: 0 });
        }
        if let Some((path, index)) = mismatch {
            report.verified_depth = path.len().saturating_sub(1);
            report.failure = Some(RootedFailure { root_matrix: m.clone(), root_path: root_path.clone(), path, index });
            break;
        }
    }
    Ok(report)
}

/// Which statement of the dual-mutation package failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum DualPart {
    /// `C_t = (Gbar_{t0}^t)^T`, `G_t = (Cbar_{t0}^t)^T` for the `B^T` pattern.
    Transpose,
    /// Row sign coherence of `G`.
    RowSign,
    /// Change of initial vertex across the edge `t0 -k- t1`.
    InitialChange,
    /// `C` and `C~` have the same `±e_j` columns.
    UnitColumns,
    /// `G` and `G~` have the same row signs and `±e_j` rows.
    Rows,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DualMutationReport {
    pub k: usize,
    pub depth: usize,
    pub nodes_checked: usize,
    /// First failing path per part, in the order the parts were first seen to fail.
    pub failures: Vec<(DualPart, MutationPath)>,
}

impl DualMutationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn failure(&self, part: DualPart) -> Option<&MutationPath> {
        self.failures.iter().find(|(p, _)| *p == part).map(|(_, path)| path)
    }

    fn record(&mut self, part: DualPart, path: &MutationPath) {
        if self.failure(part).is_none() {
            self.failures.push((part, path.clone()));
        }
    }
}

/// `J_k + [s B]_+^{k.}`.
pub fn row_factor(b: &IntMatrix, k: usize, s: i8) -> Result<IntMatrix> {
    let mut m = IntMatrix::j_matrix(b.order()?, k)?;
    for j in 0..b.cols() {
        if j != k {
            m.set(k, j, pos_part(&signed(b.get(k, j), s)));
        }
    }
    Ok(m)
}

/// `J_k + [s B]_+^{.k}`.
pub fn column_factor(b: &IntMatrix, k: usize, s: i8) -> Result<IntMatrix> {
    let mut m = IntMatrix::j_matrix(b.order()?, k)?;
    for i in 0..b.rows() {
        if i != k {
            m.set(i, k, pos_part(&signed(b.get(i, k), s)));
        }
    }
    Ok(m)
}

/// Checks the dual-mutation statements at every vertex within `depth`, against patterns
/// recomputed from scratch at the relevant roots:
///
/// * the `B^T` pattern rooted at `t`, walked back to `t0`;
/// * the pattern rooted at `t1 = mu_k(t0)`;
/// * the `-B^T` pattern rooted at `t0`.
pub fn check_dual_mutation(b: &ExchangeMatrix, k: usize, depth: usize) -> Result<DualMutationReport> {
    let n = b.rank();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let b0 = b.matrix().clone();
    let b1 = mutate_matrix(&b0, k)?;
    let mut report = DualMutationReport { k, depth, nodes_checked: 0, failures: Vec::new() };

    walk_levels(
        LockstepPair::initial(&b0)?,
        n,
        depth,
        |p, j, _| p.step(j),
        |pair, path| {
            report.nodes_checked += 1;
            let node = &pair.plus;
            let tilde = &pair.minus;

            let bar = PatternNode::along(&node.b.transpose(), &path.reversed())?;
            if node.c != bar.g.transpose() || node.g != bar.c.transpose() {
                report.record(DualPart::Transpose, path);
            }

            if !node.rows_coherent() || !tilde.rows_coherent() {
                report.record(DualPart::RowSign, path);
            }

            match row_sign(&node.g, k) {
                Some(eps) => {
                    let rerooted = PatternNode::along(&b1, &path.prepended(k))?;
                    let c1 = row_factor(&b0, k, -eps)?.checked_mul(&node.c)?;
                    let g1 = column_factor(&b0, k, eps)?.checked_mul(&node.g)?;
                    if rerooted.c != c1 || rerooted.g != g1 {
                        report.record(DualPart::InitialChange, path);
                    }
                }
                None => report.record(DualPart::InitialChange, path),
            }

            let units_agree = (0..n).all(|i| as_signed_unit(&node.c.column(i)) == as_signed_unit(&tilde.c.column(i)));
            if !units_agree {
                report.record(DualPart::UnitColumns, path);
            }

            let rows_agree = (0..n).all(|i| {
                row_sign(&node.g, i) == row_sign(&tilde.g, i)
                    && as_signed_unit(node.g.row(i)) == as_signed_unit(tilde.g.row(i))
            });
            if !rows_agree {
                report.record(DualPart::Rows, path);
            }
            Ok::<(), Error>(())
        },
    )?;
    Ok(report)
}

/// g-vector coordinates after moving the initial vertex across the edge labeled `k`:
/// `g'_k = -g_k`, `g'_j = g_j + [b_jk]_+ g_k - b_jk min(g_k, 0)`.
pub fn change_initial_gvector(b0: &ExchangeMatrix, k: usize, g: &[BigInt]) -> Result<Vec<BigInt>> {
    let n = b0.rank();
    if g.len() != n {
        return Err(Error::Dimension { context: "g-vector length" });
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let gk = &g[k];
    let neg_part = if gk.is_negative() { gk.clone() } else { BigInt::zero() };
    Ok((0..n)
        .map(|j| {
            if j == k {
                return -gk;
            }
            let bjk = b0.matrix().get(j, k);
            &g[j] + pos_part(bjk) * gk - bjk * &neg_part
        })
        .collect())
}

/// Per-vertex checks of the pattern rooted at `b`: column sign coherence, first duality and the
/// determinant invariant.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternReport {
    pub depth: usize,
    pub nodes_checked: usize,
    pub sign_coherence: Option<MutationPath>,
    pub first_duality: Option<MutationPath>,
    pub determinants: Option<MutationPath>,
}

impl PatternReport {
    pub fn passed(&self) -> bool {
        self.sign_coherence.is_none() && self.first_duality.is_none() && self.determinants.is_none()
    }

    /// Length of the longest prefix of levels with no failure.
    pub fn verified_depth(&self) -> usize {
        [&self.sign_coherence, &self.first_duality, &self.determinants]
            .iter()
            .filter_map(|f| f.as_ref().map(|p| p.len().saturating_sub(1)))
            .min()
            .unwrap_or(self.depth)
    }
}

pub fn verify_pattern(b: &ExchangeMatrix, depth: usize) -> Result<PatternReport> {
    let b0 = b.matrix().clone();
    let mut report =
        PatternReport { depth, nodes_checked: 0, sign_coherence: None, first_duality: None, determinants: None };
    let walked = walk_levels(
        PatternNode::initial(&b0)?,
        b.rank(),
        depth,
        |s, k, _| s.step(k),
        |s, p| {
            report.nodes_checked += 1;
            if report.sign_coherence.is_none() && !s.columns_coherent() {
                report.sign_coherence = Some(p.clone());
            }
            if report.first_duality.is_none() && !check_first_duality(s, &b0) {
                report.first_duality = Some(p.clone());
            }
            if report.determinants.is_none() && !check_determinants(s) {
                report.determinants = Some(p.clone());
            }
            Ok(())
        },
    );
    match walked {
        Ok(()) => Ok(report),
        Err(Error::SignUndefined { path, .. }) => {
            report.sign_coherence.get_or_insert(path);
            Ok(report)
        }
        Err(e) => Err(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::recurrence::RecurrenceState;
    use alloc::string::ToString;
    use alloc::vec;
    use proptest::prelude::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    fn a2() -> ExchangeMatrix {
        ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn a2_steps() {
        let b0 = a2().into_matrix();
        let t1 = PatternNode::initial(&b0).unwrap().step(0).unwrap();
        assert_eq!(t1.c, m(&[vec![-1, 1], vec![0, 1]]));
        assert_eq!(t1.g, m(&[vec![-1, 0], vec![1, 1]]));
        assert_eq!(t1.path.to_string(), "(1)");
        assert_eq!(t1.g.checked_mul(&t1.b).unwrap(), m(&[vec![0, 1], vec![1, -1]]));
        assert!(check_first_duality(&t1, &b0));
        assert_eq!(t1.c.det().unwrap(), BigInt::from(-1));
        assert!(check_determinants(&t1));
        let t2 = t1.step(1).unwrap();
        assert_eq!(t2.g, m(&[vec![-1, -1], vec![1, 0]]));
        let back = t1.step(0).unwrap();
        assert_eq!((back.b, back.c, back.g), (b0.clone(), IntMatrix::identity(2), IntMatrix::identity(2)));
    }

    #[test]
    fn zero_column_is_an_error() {
        let mut node = PatternNode::initial(&a2().into_matrix()).unwrap();
        node.c = IntMatrix::zeros(2, 2);
        assert!(matches!(node.step(1), Err(Error::SignUndefined { index: 1, .. })));
    }

    #[test]
    fn second_duality_a2() {
        let pair = LockstepPair::initial(a2().matrix()).unwrap();
        assert!(check_second_duality(&pair));
        let p1 = pair.step(0).unwrap();
        assert_eq!(p1.minus.c, m(&[vec![-1, 1], vec![0, 1]]));
        assert!(check_second_duality(&p1));
        assert_eq!(p1.minus.b, -&p1.plus.b.transpose());
    }

    #[test]
    fn assumption_small() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-1, -1, 0]]).unwrap();
        let r = check_assumption(&b, 3).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.verified_depth, 3);
        let r2 = check_assumption(&ExchangeMatrix::from_rows(&[vec![0, 3], vec![-1, 0]]).unwrap(), 8).unwrap();
        assert!(r2.passed());
    }

    #[test]
    fn dual_mutation_a2_and_b2() {
        for rows in [vec![vec![0, 1], vec![-1, 0]], vec![vec![0, 1], vec![-2, 0]]] {
            let b = ExchangeMatrix::from_rows(&rows).unwrap();
            for k in 0..2 {
                let r = check_dual_mutation(&b, k, 4).unwrap();
                assert!(r.passed(), "{r:?}");
                assert_eq!(r.nodes_checked, 9);
            }
        }
    }

    #[test]
    fn initial_change_at_root() {
        let b0 = ExchangeMatrix::from_rows(&[vec![0, 1, 0], vec![-2, 0, 1], vec![0, -1, 0]]).unwrap();
        let t0_from_t1 =
            PatternNode::along(&mutate_matrix(b0.matrix(), 1).unwrap(), &MutationPath::from_zero_based(vec![1]))
                .unwrap();
        assert_eq!(t0_from_t1.c, row_factor(b0.matrix(), 1, -1).unwrap());
        assert_eq!(t0_from_t1.g, column_factor(b0.matrix(), 1, 1).unwrap());
    }

    #[test]
    fn gvector_change_examples() {
        let b = a2();
        assert_eq!(change_initial_gvector(&b, 0, &ints(&[-1, 1])).unwrap(), ints(&[1, 0]));
        // g = e_k picks up [b_jk]_+
        assert_eq!(change_initial_gvector(&b, 1, &ints(&[0, 1])).unwrap(), ints(&[1, -1]));
        assert_eq!(change_initial_gvector(&b, 0, &ints(&[0, 5])).unwrap(), ints(&[0, 5]));
    }

    #[test]
    fn gvector_change_matches_rerooted_pattern() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1, 1], vec![-1, 0, 1], vec![-2, -1, 0]]).unwrap();
        let b1 = mutate_matrix(b.matrix(), 2).unwrap();
        walk_levels(
            PatternNode::initial(b.matrix()).unwrap(),
            3,
            4,
            |s, k, _| s.step(k),
            |s, p| {
                let other = PatternNode::along(&b1, &p.prepended(2)).unwrap();
                for i in 0..3 {
                    let moved = change_initial_gvector(&b, 2, &s.g.column(i)).unwrap();
                    assert_eq!(moved, other.g.column(i), "path {p}");
                }
                let sum: Vec<BigInt> = (0..3).map(|r| s.g.get(r, 0) * 2 + s.g.get(r, 2)).collect();
                let sum1: Vec<BigInt> = (0..3).map(|r| other.g.get(r, 0) * 2 + other.g.get(r, 2)).collect();
                assert_eq!(change_initial_gvector(&b, 2, &sum).unwrap(), sum1);
                Ok::<(), Error>(())
            },
        )
        .unwrap();
    }

    #[test]
    fn closed_form_agrees_with_recurrence() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 2, 0], vec![-1, 0, 1], vec![0, -3, 0]]).unwrap();
        let b0 = b.matrix().clone();
        let root = (PatternNode::initial(&b0).unwrap(), RecurrenceState::initial(&b0).unwrap());
        walk_levels(
            root,
            3,
            5,
            |(p, r), k, _| Ok::<_, Error>((p.step(k)?, r.step(&b0, k)?)),
            |(p, r), _| {
                assert_eq!(p.c, r.c);
                assert_eq!(p.g, r.g);
                Ok(())
            },
        )
        .unwrap();
    }

    fn small_sss() -> impl Strategy<Value = IntMatrix> {
        (2usize..=4).prop_flat_map(|n| {
            proptest::collection::vec((0i64..=3, 0i64..=3, any::<bool>()), n * (n - 1) / 2).prop_map(move |v| {
                let mut b = IntMatrix::zeros(n, n);
                let mut it = v.into_iter();
                for i in 0..n {
                    for j in i + 1..n {
                        let (a, c, up) = it.next().unwrap();
                        let (a, c) = if a == 0 || c == 0 { (0, 0) } else { (a, c) };
                        let s = if up { 1 } else { -1 };
                        b.set(i, j, BigInt::from(s * a));
                        b.set(j, i, BigInt::from(-s * c));
                    }
                }
                b
            })
        })
    }

    proptest! {
        #[test]
        fn factor_identities(b in small_sss(), k in 0usize..4, pos in any::<bool>()) {
            let n = b.rows();
            let k = k % n;
            let s = if pos { 1 } else { -1 };
            let r = row_factor(&b, k, s).unwrap();
            let c = column_factor(&b, k, s).unwrap();
            prop_assert!((&r * &r).is_identity());
            prop_assert!((&c * &c).is_identity());
            prop_assert_eq!(r.det().unwrap(), BigInt::from(-1));
            // (J_k + [sB]_+^{k.})(J_k + [-sB]_+^{k.}) = I + s B^{k.}
            let expected = &IntMatrix::identity(n) + &b.row_trunc(k).unwrap().scale(&BigInt::from(s));
            prop_assert_eq!(&r * &row_factor(&b, k, -s).unwrap(), expected);
        }

        #[test]
        fn step_is_involutive(b in small_sss(), path in proptest::collection::vec(0usize..4, 0..5), k in 0usize..4) {
            let n = b.rows();
            let path = MutationPath::from_zero_based(path.into_iter().map(|x| x % n).collect());
            let k = k % n;
            let stays_sss = ExchangeMatrix::new(b.clone())
                .and_then(|e| walk_path(e, &path.pushed(k), |m, j, _| m.mutate(j)))
                .is_ok();
            prop_assume!(stays_sss);
            if let Ok(node) = PatternNode::along(&b, &path) {
                if let Ok(once) = node.step(k) {
                    if let Ok(twice) = once.step(k) {
                        prop_assert_eq!((twice.b, twice.c, twice.g), (node.b, node.c, node.g));
                    }
                }
            }
        }
    }
}
