//! Finite quivers with a group acting on their vertices: admissibility, orbit mutation, folding
//! and framing.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::{is_skew_symmetric, mutate_matrix};
use crate::matrix::IntMatrix;
use crate::path::MutationPath;
use crate::walk::{walk_levels, Stop};

/// Default cap on the number of group elements produced by closing the generators.
pub const DEFAULT_GROUP_BOUND: usize = 10_000;

/// A skew-symmetric matrix with frozen vertices and a group given by permutation generators.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ActedQuiver {
    matrix: IntMatrix,
    frozen: BTreeSet<usize>,
    generators: Vec<Vec<usize>>,
}

impl ActedQuiver {
    /// Validates shape, skew-symmetry, frozen indices and that each generator is a permutation.
    /// Compatibility of the action with the frozen set is left to [`check_admissible`].
    pub fn new(matrix: IntMatrix, frozen: BTreeSet<usize>, generators: Vec<Vec<usize>>) -> Result<Self> {
        let n = matrix.order()?;
        if !is_skew_symmetric(&matrix) {
            return Err(Error::Precondition("quiver matrix must be skew-symmetric"));
        }
        if let Some(&f) = frozen.iter().find(|&&f| f >= n) {
            return Err(Error::IndexOutOfRange { index: f, len: n });
        }
        for (idx, g) in generators.iter().enumerate() {
            let distinct: BTreeSet<usize> = g.iter().copied().collect();
            if g.len() != n || distinct.len() != n || g.iter().any(|&x| x >= n) {
                return Err(Error::InvalidPermutation(format!(
                    "generator {} is not a permutation of {n} vertices",
                    idx + 1
                )));
            }
        }
        Ok(Self { matrix, frozen, generators })
    }

    /// A quiver with the trivial action and no frozen vertices.
    pub fn trivial(matrix: IntMatrix) -> Result<Self> {
        Self::new(matrix, BTreeSet::new(), Vec::new())
    }

    pub fn matrix(&self) -> &IntMatrix {
        &self.matrix
    }

    pub fn frozen(&self) -> &BTreeSet<usize> {
        &self.frozen
    }

    pub fn generators(&self) -> &[Vec<usize>] {
        &self.generators
    }

    pub fn vertex_count(&self) -> usize {
        self.matrix.rows()
    }

    pub fn is_mutable(&self, i: usize) -> bool {
        i < self.vertex_count() && !self.frozen.contains(&i)
    }

    /// Orbits of the generated group, each sorted, listed by smallest element.
    pub fn orbits(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut label = vec![usize::MAX; n];
        let mut out = Vec::new();
        for start in 0..n {
            if label[start] != usize::MAX {
                continue;
            }
            let id = out.len();
            let mut orbit = vec![start];
            label[start] = id;
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for g in &self.generators {
                    let w = g[v];
                    if label[w] == usize::MAX {
                        label[w] = id;
                        orbit.push(w);
                        queue.push_back(w);
                    }
                }
            }
            orbit.sort_unstable();
            out.push(orbit);
        }
        out
    }

    pub fn orbit_of(&self, k: usize) -> Vec<usize> {
        self.orbits().into_iter().find(|o| o.contains(&k)).unwrap_or_default()
    }

    /// Orbits made of mutable vertices.
    pub fn mutable_orbits(&self) -> Vec<Vec<usize>> {
        self.orbits().into_iter().filter(|o| self.is_mutable(o[0])).collect()
    }

    fn with_matrix(&self, matrix: IntMatrix) -> Self {
        Self { matrix, frozen: self.frozen.clone(), generators: self.generators.clone() }
    }
}

/// Group elements with a generator word producing each.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Group {
    pub elements: Vec<(Vec<usize>, Vec<usize>)>,
}

/// Closes the generators of `q` under composition, failing once more than `bound` elements
/// appear.
pub fn close_group(q: &ActedQuiver, bound: usize) -> Result<Group> {
    let n = q.vertex_count();
    let identity: Vec<usize> = (0..n).collect();
    let mut seen = BTreeSet::from([identity.clone()]);
    let mut elements = vec![(identity, Vec::new())];
    let mut cursor = 0;
    while cursor < elements.len() {
        let (perm, word) = elements[cursor].clone();
        cursor += 1;
        for (gi, g) in q.generators.iter().enumerate() {
            let next: Vec<usize> = perm.iter().map(|&v| g[v]).collect();
            if seen.insert(next.clone()) {
                if elements.len() >= bound {
                    return Err(Error::GroupTooLarge { bound });
                }
                let mut w = word.clone();
                w.push(gi);
                elements.push((next, w));
            }
        }
    }
    Ok(Group { elements })
}

/// Which admissibility condition failed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Condition {
    /// `g` maps mutable vertices to mutable vertices and frozen to frozen.
    MutablePreserved,
    /// `b_ij = b_{g(i) g(j)}`.
    Invariant,
    /// `b_{i g(i)} = 0` for mutable `i`.
    NoArrowWithinOrbit,
    /// `b_ij b_{g(i) j} >= 0` for mutable `j`.
    SameSign,
}

impl Condition {
    pub fn roman(self) -> &'static str {
        match self {
            Condition::MutablePreserved => "i",
            Condition::Invariant => "ii",
            Condition::NoArrowWithinOrbit => "iii",
            Condition::SameSign => "iv",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Witness {
    pub vertices: Vec<usize>,
    /// Generator indices whose composition (first applied first) gives the group element.
    pub word: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AdmissibilityResult {
    pub admissible: bool,
    /// The first failing condition in the order (i)-(iv).
    pub violated: Option<Condition>,
    pub witness: Option<Witness>,
    /// Every failing condition.
    pub all_violated: Vec<Condition>,
}

impl AdmissibilityResult {
    fn ok() -> Self {
        Self { admissible: true, violated: None, witness: None, all_violated: Vec::new() }
    }
}

fn first_violation(q: &ActedQuiver, group: &Group, c: Condition) -> Option<Witness> {
    let n = q.vertex_count();
    let b = &q.matrix;
    let witness = |vertices: Vec<usize>, word: &[usize]| Some(Witness { vertices, word: word.to_vec() });
    for (g, word) in &group.elements {
        match c {
            Condition::MutablePreserved => {
                if let Some(i) = (0..n).find(|&i| q.is_mutable(i) != q.is_mutable(g[i])) {
                    return witness(vec![i], word);
                }
            }
            Condition::Invariant => {
                for i in 0..n {
                    if let Some(j) = (0..n).find(|&j| b.get(i, j) != b.get(g[i], g[j])) {
                        return witness(vec![i, j], word);
                    }
                }
            }
            Condition::NoArrowWithinOrbit => {
                if let Some(i) = (0..n).find(|&i| q.is_mutable(i) && !b.get(i, g[i]).is_zero()) {
                    return witness(vec![i], word);
                }
            }
            Condition::SameSign => {
                for i in 0..n {
                    if let Some(j) = (0..n).find(|&j| q.is_mutable(j) && (b.get(i, j) * b.get(g[i], j)).is_negative()) {
                        return witness(vec![i, j], word);
                    }
                }
            }
        }
    }
    None
}

/// Checks conditions (i)-(iv) against every group element. The witness belongs to the first
/// failing condition.
pub fn check_admissible_in(q: &ActedQuiver, group: &Group) -> AdmissibilityResult {
    let mut result = AdmissibilityResult::ok();
    for c in [Condition::MutablePreserved, Condition::Invariant, Condition::NoArrowWithinOrbit, Condition::SameSign] {
        if let Some(w) = first_violation(q, group, c) {
            if result.admissible {
                result.admissible = false;
                result.violated = Some(c);
                result.witness = Some(w);
            }
            result.all_violated.push(c);
        }
    }
    result
}

pub fn check_admissible(q: &ActedQuiver, bound: usize) -> Result<AdmissibilityResult> {
    Ok(check_admissible_in(q, &close_group(q, bound)?))
}

/// The closed-form orbit mutation rule, without checking admissibility.
pub fn orbit_mutate_unchecked(q: &ActedQuiver, k: usize) -> Result<ActedQuiver> {
    let n = q.vertex_count();
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    if !q.is_mutable(k) {
        return Err(Error::FrozenVertex(k));
    }
    let orbit = q.orbit_of(k);
    let in_orbit = |v: usize| orbit.binary_search(&v).is_ok();
    let b = &q.matrix;
    let two = BigInt::from(2);
    let mut out = b.clone();
    for i in 0..n {
        for j in 0..n {
            if in_orbit(i) || in_orbit(j) {
                out.set(i, j, -b.get(i, j));
                continue;
            }
            let mut s = BigInt::zero();
            for &p in &orbit {
                let (bip, bpj) = (b.get(i, p), b.get(p, j));
                s += bip.abs() * bpj + bip * bpj.abs();
            }
            if !s.is_zero() {
                out.set(i, j, b.get(i, j) + s / &two);
            }
        }
    }
    Ok(q.with_matrix(out))
}

/// Orbit mutation at `[k]`; the quiver must be admissible.
pub fn orbit_mutate(q: &ActedQuiver, k: usize, bound: usize) -> Result<ActedQuiver> {
    if !check_admissible(q, bound)?.admissible {
        return Err(Error::NotAdmissible);
    }
    orbit_mutate_unchecked(q, k)
}

/// The product of single mutations over `[k]`, in increasing vertex order.
pub fn composed_mutation(q: &ActedQuiver, k: usize) -> Result<ActedQuiver> {
    let mut m = q.matrix.clone();
    for j in q.orbit_of(k) {
        m = mutate_matrix(&m, j)?;
    }
    Ok(q.with_matrix(m))
}

/// The folded matrix `b_{[i][j]} = sum_{i' in [i]} b_{i' j}`, indexed by orbits in the order of
/// [`ActedQuiver::orbits`]. The quiver must be admissible.
pub fn fold_matrix(q: &ActedQuiver, bound: usize) -> Result<(IntMatrix, Vec<Vec<usize>>)> {
    if !check_admissible(q, bound)?.admissible {
        return Err(Error::NotAdmissible);
    }
    Ok(fold_unchecked(q))
}

fn fold_unchecked(q: &ActedQuiver) -> (IntMatrix, Vec<Vec<usize>>) {
    let orbits = q.orbits();
    let m = orbits.len();
    let mut out = IntMatrix::zeros(m, m);
    for (a, oa) in orbits.iter().enumerate() {
        for (c, oc) in orbits.iter().enumerate() {
            let j = oc[0];
            let s: BigInt = oa.iter().map(|&i| q.matrix.get(i, j)).sum();
            out.set(a, c, s);
        }
    }
    (out, orbits)
}

/// Adds a frozen vertex `i' = n + i` with an arrow `i' -> i` for each vertex, extending each
/// generator by `g(i') = g(i)'`.
pub fn frame(q: &ActedQuiver) -> Result<ActedQuiver> {
    if !q.frozen.is_empty() {
        return Err(Error::Precondition("framing requires a quiver without frozen vertices"));
    }
    let n = q.vertex_count();
    let mut m = IntMatrix::zeros(2 * n, 2 * n);
    for i in 0..n {
        for j in 0..n {
            m.set(i, j, q.matrix.get(i, j).clone());
        }
        m.set(n + i, i, BigInt::one());
        m.set(i, n + i, -BigInt::one());
    }
    let generators = q.generators.iter().map(|g| g.iter().copied().chain(g.iter().map(|&v| n + v)).collect()).collect();
    ActedQuiver::new(m, (n..2 * n).collect(), generators)
}

/// Walk over orbit-mutation sequences, labeled by the smallest vertex of each orbit.
fn orbit_walk<E>(
    q: &ActedQuiver,
    depth: usize,
    mut visit: impl FnMut(&ActedQuiver, &MutationPath) -> core::result::Result<(), Stop<E>>,
) -> core::result::Result<(), Stop<E>> {
    let reps: Vec<usize> = q.mutable_orbits().iter().map(|o| o[0]).collect();
    walk_levels(
        q.clone(),
        reps.len(),
        depth,
        |s, idx, _| Ok(orbit_mutate_unchecked(s, reps[idx])?),
        |s, p| visit(s, &MutationPath::from_zero_based(p.steps().iter().map(|&i| reps[i]).collect())),
    )
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FoldabilityReport {
    pub depth: usize,
    pub nodes_checked: usize,
    /// First node that is not admissible, with the condition it breaks.
    pub failure: Option<(MutationPath, AdmissibilityResult)>,
    /// First node where folding does not commute with mutation.
    pub fold_failure: Option<MutationPath>,
    /// First node where orbit mutation differs from the composed single mutations.
    pub composition_failure: Option<MutationPath>,
}

impl FoldabilityReport {
    pub fn passed(&self) -> bool {
        self.failure.is_none() && self.fold_failure.is_none() && self.composition_failure.is_none()
    }

    pub fn verified_depth(&self) -> usize {
        self.failure.as_ref().map_or(self.depth, |(p, _)| p.len().saturating_sub(1))
    }
}

/// Checks admissibility at every orbit-mutation sequence of length at most `depth`, together
/// with `fold(mu_[k] Q) = mu_[k](fold Q)` and agreement with composed single mutations.
pub fn verify_globally_foldable(q: &ActedQuiver, depth: usize, bound: usize) -> Result<FoldabilityReport> {
    let group = close_group(q, bound)?;
    let mut report =
        FoldabilityReport { depth, nodes_checked: 0, failure: None, fold_failure: None, composition_failure: None };
    let walked = orbit_walk::<()>(q, depth, |s, path| {
        report.nodes_checked += 1;
        let adm = check_admissible_in(s, &group);
        if !adm.admissible {
            report.failure = Some((path.clone(), adm));
            return Err(Stop::Found(()));
        }
        let (folded, orbits) = fold_unchecked(s);
        for (idx, orbit) in orbits.iter().enumerate() {
            if !s.is_mutable(orbit[0]) {
                continue;
            }
            let k = orbit[0];
            let mutated = orbit_mutate_unchecked(s, k)?;
            if report.composition_failure.is_none() && mutated != composed_mutation(s, k)? {
                report.composition_failure = Some(path.pushed(k));
            }
            if report.fold_failure.is_none() && fold_unchecked(&mutated).0 != mutate_matrix(&folded, idx)? {
                report.fold_failure = Some(path.pushed(k));
            }
        }
        Ok(())
    });
    match walked {
        Ok(()) | Err(Stop::Found(())) => Ok(report),
        Err(Stop::Failed(e)) => Err(e),
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FramedReport {
    pub depth: usize,
    pub nodes_checked: usize,
    pub admissibility_failure: Option<MutationPath>,
    /// First node with arrows `i' -> k -> j'` between frozen vertices through a mutable one,
    /// with `(i', k, j')`.
    pub frozen_path_failure: Option<(MutationPath, [usize; 3])>,
    /// First node where `c_{g(i') g(j)} != c_{i' j}` for some group element.
    pub equivariance_failure: Option<MutationPath>,
    /// First node where some column of the frozen-to-mutable block is not sign-coherent.
    pub sign_coherence_failure: Option<MutationPath>,
}

impl FramedReport {
    pub fn passed(&self) -> bool {
        self.admissibility_failure.is_none()
            && self.frozen_path_failure.is_none()
            && self.equivariance_failure.is_none()
            && self.sign_coherence_failure.is_none()
    }
}

/// Frames `q` and walks orbit mutations of the framed quiver.
pub fn verify_framed(q: &ActedQuiver, depth: usize, bound: usize) -> Result<FramedReport> {
    let n = q.vertex_count();
    let framed = frame(q)?;
    let group = close_group(&framed, bound)?;
    let mut report = FramedReport {
        depth,
        nodes_checked: 0,
        admissibility_failure: None,
        frozen_path_failure: None,
        equivariance_failure: None,
        sign_coherence_failure: None,
    };
    let walked = orbit_walk::<()>(&framed, depth, |s, path| {
        report.nodes_checked += 1;
        let b = s.matrix();
        if report.admissibility_failure.is_none() && !check_admissible_in(s, &group).admissible {
            report.admissibility_failure = Some(path.clone());
        }
        if report.frozen_path_failure.is_none() {
            'scan: for k in 0..n {
                for i in n..2 * n {
                    if !b.get(i, k).is_positive() {
                        continue;
                    }
                    for j in n..2 * n {
                        if b.get(k, j).is_positive() {
                            report.frozen_path_failure = Some((path.clone(), [i, k, j]));
                            break 'scan;
                        }
                    }
                }
            }
        }
        if report.equivariance_failure.is_none() {
            let broken = group
                .elements
                .iter()
                .any(|(g, _)| (n..2 * n).any(|i| (0..n).any(|j| b.get(g[i], g[j]) != b.get(i, j))));
            if broken {
                report.equivariance_failure = Some(path.clone());
            }
        }
        if report.sign_coherence_failure.is_none() {
            let coherent = (0..n).all(|j| crate::matrix::coherent_sign((n..2 * n).map(|i| b.get(i, j))).is_some());
            if !coherent {
                report.sign_coherence_failure = Some(path.clone());
            }
        }
        Ok(())
    });
    match walked {
        Ok(()) | Err(Stop::Found(())) => Ok(report),
        Err(Stop::Failed(e)) => Err(e),
    }
}

/// Orbit index of every vertex, for callers mapping vertices to rows of the folded matrix.
pub fn orbit_index(q: &ActedQuiver) -> BTreeMap<usize, usize> {
    q.orbits().iter().enumerate().flat_map(|(idx, o)| o.iter().map(move |&v| (v, idx))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[Vec<i64>]) -> IntMatrix {
        IntMatrix::from_rows(rows).unwrap()
    }

    /// 1 -> 2 <- 3 with the swap (1 3).
    fn a3_swap() -> ActedQuiver {
        ActedQuiver::new(m(&[vec![0, 1, 0], vec![-1, 0, -1], vec![0, 1, 0]]), BTreeSet::new(), vec![vec![2, 1, 0]])
            .unwrap()
    }

    #[test]
    fn rejects_bad_input() {
        assert!(ActedQuiver::new(m(&[vec![0, 1], vec![-2, 0]]), BTreeSet::new(), vec![]).is_err());
        assert!(ActedQuiver::new(m(&[vec![0, 1], vec![-1, 0]]), BTreeSet::new(), vec![vec![0, 0]]).is_err());
        assert!(ActedQuiver::new(m(&[vec![0, 1], vec![-1, 0]]), BTreeSet::from([2]), vec![]).is_err());
    }

    #[test]
    fn admissibility_examples() {
        let r = check_admissible(&a3_swap(), DEFAULT_GROUP_BOUND).unwrap();
        assert!(r.admissible && r.witness.is_none());
        let edge = ActedQuiver::new(m(&[vec![0, 1], vec![-1, 0]]), BTreeSet::new(), vec![vec![1, 0]]).unwrap();
        let r = check_admissible(&edge, DEFAULT_GROUP_BOUND).unwrap();
        // the swap does not preserve b_12 either, so (ii) is reported first
        assert_eq!(r.violated, Some(Condition::Invariant));
        assert_eq!(r.all_violated, vec![Condition::Invariant, Condition::NoArrowWithinOrbit]);
        let sym = ActedQuiver::new(m(&[vec![0, 1], vec![-1, 0]]), BTreeSet::new(), vec![vec![0, 1]]).unwrap();
        assert!(check_admissible(&sym, DEFAULT_GROUP_BOUND).unwrap().admissible);
        let frozen_swap =
            ActedQuiver::new(m(&[vec![0, 0], vec![0, 0]]), BTreeSet::from([1]), vec![vec![1, 0]]).unwrap();
        let r = check_admissible(&frozen_swap, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(r.violated, Some(Condition::MutablePreserved));
    }

    #[test]
    fn condition_iii_alone() {
        // 1 -> 2 -> 3 -> 1 with rotation: invariant, but b_{1 g(1)} != 0
        let q = ActedQuiver::new(
            m(&[vec![0, 1, -1], vec![-1, 0, 1], vec![1, -1, 0]]),
            BTreeSet::new(),
            vec![vec![1, 2, 0]],
        )
        .unwrap();
        let r = check_admissible(&q, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(r.violated, Some(Condition::NoArrowWithinOrbit));
        assert_eq!(r.witness.unwrap().vertices, vec![0]);
    }

    #[test]
    fn group_bound() {
        let q =
            ActedQuiver::new(IntMatrix::zeros(5, 5), BTreeSet::new(), vec![vec![1, 0, 2, 3, 4], vec![1, 2, 3, 4, 0]])
                .unwrap();
        assert_eq!(close_group(&q, 200).unwrap().elements.len(), 120);
        assert_eq!(close_group(&q, 100), Err(Error::GroupTooLarge { bound: 100 }));
    }

    #[test]
    fn orbit_mutation_examples() {
        let q = a3_swap();
        let q1 = orbit_mutate(&q, 0, DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(q1.matrix(), &m(&[vec![0, -1, 0], vec![1, 0, 1], vec![0, -1, 0]]));
        assert_eq!(q1, composed_mutation(&q, 2).unwrap());
        assert_eq!(orbit_mutate(&q1, 2, DEFAULT_GROUP_BOUND).unwrap(), q);
        let plain = ActedQuiver::trivial(m(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]])).unwrap();
        assert_eq!(
            orbit_mutate(&plain, 1, DEFAULT_GROUP_BOUND).unwrap().matrix(),
            &mutate_matrix(plain.matrix(), 1).unwrap()
        );
    }

    #[test]
    fn folding() {
        let (f, orbits) = fold_matrix(&a3_swap(), DEFAULT_GROUP_BOUND).unwrap();
        assert_eq!(f, m(&[vec![0, 2], vec![-1, 0]]));
        assert_eq!(orbits, vec![vec![0, 2], vec![1]]);
        let plain = ActedQuiver::trivial(m(&[vec![0, 1], vec![-1, 0]])).unwrap();
        assert_eq!(&fold_matrix(&plain, 10).unwrap().0, plain.matrix());
    }

    #[test]
    fn framing() {
        let single = frame(&ActedQuiver::trivial(IntMatrix::zeros(1, 1)).unwrap()).unwrap();
        assert_eq!(single.matrix(), &m(&[vec![0, -1], vec![1, 0]]));
        assert_eq!(single.frozen(), &BTreeSet::from([1]));
        let f = frame(&a3_swap()).unwrap();
        assert_eq!(f.generators(), &[vec![2, 1, 0, 5, 4, 3]]);
        assert!(check_admissible(&f, DEFAULT_GROUP_BOUND).unwrap().admissible);
        assert!(frame(&f).is_err());
    }

    #[test]
    fn walks() {
        let r = verify_globally_foldable(&a3_swap(), 6, DEFAULT_GROUP_BOUND).unwrap();
        assert!(r.passed(), "{r:?}");
        assert_eq!(r.nodes_checked, 13);
        let f = verify_framed(&a3_swap(), 5, DEFAULT_GROUP_BOUND).unwrap();
        assert!(f.passed(), "{f:?}");
    }

    #[test]
    fn actions_agreeing_on_mutable_vertices() {
        // A3 with swap (1 3) and two frozen vertices both pointing at 2
        let b = m(&[
            vec![0, 1, 0, 0, 0],
            vec![-1, 0, -1, -1, -1],
            vec![0, 1, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
            vec![0, 1, 0, 0, 0],
        ]);
        let frozen = BTreeSet::from([3, 4]);
        let fixing = ActedQuiver::new(b.clone(), frozen.clone(), vec![vec![2, 1, 0, 3, 4]]).unwrap();
        let moving = ActedQuiver::new(b, frozen, vec![vec![2, 1, 0, 4, 3]]).unwrap();
        for k in [0, 1] {
            let a = orbit_mutate(&fixing, k, 100).unwrap();
            let c = orbit_mutate(&moving, k, 100).unwrap();
            assert_eq!(a.matrix(), c.matrix());
        }
    }
}
