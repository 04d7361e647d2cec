//! G-cones, the piecewise-linear maps `eta`, and exact fan checks.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::exchange::{mutate_matrix, ExchangeMatrix};
use crate::matrix::{pos_part, IntMatrix};
use crate::path::MutationPath;
use crate::pattern::PatternNode;
use crate::walk::{walk_levels, Stop};

pub type RatVec = Vec<BigRational>;

pub fn to_rational(v: &[BigInt]) -> RatVec {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// `eta_{t0}^{t1}` for the edge labeled `k`: `(J_k + [B0]_+^{.k}) w` if `w_k >= 0`, otherwise
/// `(J_k + [-B0]_+^{.k}) w`.
pub fn eta_map(b0: &IntMatrix, k: usize, w: &[BigRational]) -> Result<RatVec> {
    let n = b0.order()?;
    if w.len() != n {
        return Err(Error::Dimension { context: "eta argument length" });
    }
    if k >= n {
        return Err(Error::IndexOutOfRange { index: k, len: n });
    }
    let wk = &w[k];
    let nonneg = !wk.is_negative();
    Ok((0..n)
        .map(|j| {
            if j == k {
                return -wk;
            }
            let b = b0.get(j, k);
            let coef = if nonneg { pos_part(b) } else { pos_part(&-b) };
            if coef.is_zero() {
                w[j].clone()
            } else {
                &w[j] + wk * BigRational::from_integer(coef)
            }
        })
        .collect())
}

/// `eta_{t1}^{t0}(eta_{t0}^{t1}(w)) = w`, the inverse using `mu_k(B0)`.
pub fn eta_inverse_check(b0: &IntMatrix, k: usize, w: &[BigRational]) -> Result<bool> {
    let b1 = mutate_matrix(b0, k)?;
    Ok(eta_map(&b1, k, &eta_map(b0, k, w)?)? == w)
}

/// `eta_{t0}^{t}` along `path`, with the exchange matrix updated at each edge.
pub fn eta_along(b0: &IntMatrix, path: &MutationPath, w: &[BigRational]) -> Result<RatVec> {
    let mut b = b0.clone();
    let mut v = w.to_vec();
    for &k in path.steps() {
        v = eta_map(&b, k, &v)?;
        b = mutate_matrix(&b, k)?;
    }
    Ok(v)
}

fn sign_vector(v: &[BigRational]) -> Vec<i8> {
    v.iter()
        .map(|x| {
            if x.is_positive() {
                1
            } else if x.is_negative() {
                -1
            } else {
                0
            }
        })
        .collect()
}

/// True iff `sign(eta^t(w)) = sign(eta^t(w'))` at every vertex `t` within `depth`.
pub fn sign_equivalent(b: &ExchangeMatrix, w: &[BigRational], w2: &[BigRational], depth: usize) -> Result<bool> {
    let root = (b.matrix().clone(), w.to_vec(), w2.to_vec());
    let walked = walk_levels(
        root,
        b.rank(),
        depth,
        |(m, v, v2), k, _| Ok((mutate_matrix(m, k)?, eta_map(m, k, v)?, eta_map(m, k, v2)?)),
        |(_, v, v2), _| if sign_vector(v) == sign_vector(v2) { Ok(()) } else { Err(Stop::Found(())) },
    );
    match walked {
        Ok(()) => Ok(true),
        Err(Stop::Found(())) => Ok(false),
        Err(Stop::Failed(e)) => Err(e),
    }
}

/// Generalized cross product: a vector orthogonal to the `n - 1` rows given, nonzero iff they are
/// linearly independent.
fn cross(rows: &[&[BigInt]], n: usize) -> Result<Vec<BigInt>> {
    let mut out = Vec::with_capacity(n);
    for j in 0..n {
        let mut data = Vec::with_capacity((n - 1) * (n - 1));
        for r in rows {
            for (c, x) in r.iter().enumerate() {
                if c != j {
                    data.push(x.clone());
                }
            }
        }
        let d = IntMatrix::from_vec(n - 1, n - 1, data)?.det()?;
        out.push(if j % 2 == 0 { d } else { -d });
    }
    Ok(out)
}

fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn dot_rat(a: &[BigInt], b: &[BigRational]) -> BigRational {
    a.iter().zip(b).map(|(x, y)| y * BigRational::from_integer(x.clone())).sum()
}

/// The cone spanned by the columns of a nonsingular integer matrix.
///
/// Stores the facet normals `N = sign(det) adj(G)`, so that `x` lies in the cone iff `N x >= 0`
/// and its coordinates are `N x / |det G|`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialCone {
    gens: IntMatrix,
    normals: IntMatrix,
    det_abs: BigInt,
}

impl SimplicialCone {
    pub fn new(gens: IntMatrix) -> Result<Self> {
        let n = gens.order()?;
        let det = gens.det()?;
        if det.is_zero() {
            return Err(Error::Singular);
        }
        let mut normals = IntMatrix::zeros(n, n);
        if n == 1 {
            normals.set(0, 0, BigInt::one());
        } else {
            for i in 0..n {
                for j in 0..n {
                    // adj(G)_{ij} = (-1)^{i+j} det(G without row j and column i)
                    let mut data = Vec::with_capacity((n - 1) * (n - 1));
                    for r in (0..n).filter(|&r| r != j) {
                        for c in (0..n).filter(|&c| c != i) {
                            data.push(gens.get(r, c).clone());
                        }
                    }
                    let minor = IntMatrix::from_vec(n - 1, n - 1, data)?.det()?;
                    let v = if (i + j) % 2 == 0 { minor } else { -minor };
                    normals.set(i, j, if det.is_negative() { -v } else { v });
                }
            }
        }
        Ok(Self { gens, normals, det_abs: det.abs() })
    }

    pub fn dim(&self) -> usize {
        self.gens.rows()
    }

    pub fn generators(&self) -> &IntMatrix {
        &self.gens
    }

    pub fn generator(&self, i: usize) -> Vec<BigInt> {
        self.gens.column(i)
    }

    pub fn is_unimodular(&self) -> bool {
        self.det_abs.is_one()
    }

    /// Scaled coordinates `|det| G^{-1} v` of an integer vector.
    fn scaled_coordinates(&self, v: &[BigInt]) -> Vec<BigInt> {
        (0..self.dim()).map(|i| dot(self.normals.row(i), v)).collect()
    }

    /// Coordinates of `v` in the generator basis.
    pub fn coordinates(&self, v: &[BigRational]) -> RatVec {
        let d = BigRational::from_integer(self.det_abs.clone());
        (0..self.dim()).map(|i| dot_rat(self.normals.row(i), v) / &d).collect()
    }

    pub fn contains(&self, v: &[BigRational]) -> bool {
        (0..self.dim()).all(|i| !dot_rat(self.normals.row(i), v).is_negative())
    }

    pub fn interior_contains(&self, v: &[BigRational]) -> bool {
        (0..self.dim()).all(|i| dot_rat(self.normals.row(i), v).is_positive())
    }

    fn contains_int(&self, v: &[BigInt]) -> bool {
        self.scaled_coordinates(v).iter().all(|x| !x.is_negative())
    }

    /// `v` lies in the face spanned by the generators in `face`.
    fn in_face(&self, v: &[BigInt], face: &BTreeSet<usize>) -> bool {
        self.scaled_coordinates(v)
            .iter()
            .enumerate()
            .all(|(i, x)| !x.is_negative() && (face.contains(&i) || x.is_zero()))
    }
}

/// The G-cone of a G-matrix; requires `|det G| = 1`.
pub fn cone_of(g: &IntMatrix) -> Result<SimplicialCone> {
    let cone = SimplicialCone::new(g.clone())?;
    if !cone.is_unimodular() {
        return Err(Error::Precondition("G-matrix is not unimodular"));
    }
    Ok(cone)
}

/// Extreme rays of `a ∩ b`, from the tight subsets of their `2n` facet inequalities.
fn intersection_rays(a: &SimplicialCone, b: &SimplicialCone) -> Result<Vec<Vec<BigInt>>> {
    let n = a.dim();
    let rows: Vec<&[BigInt]> = (0..n).map(|i| a.normals.row(i)).chain((0..n).map(|i| b.normals.row(i))).collect();
    let mut rays = BTreeSet::new();
    if n == 1 {
        for s in [1i64, -1] {
            let r = vec![BigInt::from(s)];
            if a.contains_int(&r) && b.contains_int(&r) {
                rays.insert(r);
            }
        }
        return Ok(rays.into_iter().collect());
    }
    let mut subset: Vec<usize> = (0..n - 1).collect();
    loop {
        let chosen: Vec<&[BigInt]> = subset.iter().map(|&i| rows[i]).collect();
        let r = cross(&chosen, n)?;
        if r.iter().any(|x| !x.is_zero()) {
            for cand in [r.clone(), r.iter().map(|x| -x).collect::<Vec<_>>()] {
                if a.contains_int(&cand) && b.contains_int(&cand) {
                    rays.insert(cand);
                }
            }
        }
        // next (n-1)-subset of 0..2n in lexicographic order
        let m = rows.len();
        let mut i = subset.len();
        loop {
            if i == 0 {
                return Ok(rays.into_iter().collect());
            }
            i -= 1;
            if subset[i] < m - (subset.len() - i) {
                break;
            }
        }
        subset[i] += 1;
        for j in i + 1..subset.len() {
            subset[j] = subset[j - 1] + 1;
        }
    }
}

/// Whether `a ∩ b` is a common face of `a` and `b`.
pub fn intersects_in_common_face(a: &SimplicialCone, b: &SimplicialCone) -> Result<bool> {
    if a.dim() != b.dim() {
        return Err(Error::Dimension { context: "cone dimensions" });
    }
    let n = a.dim();
    let s1: BTreeSet<usize> = (0..n).filter(|&i| b.contains_int(&a.generator(i))).collect();
    let s2: BTreeSet<usize> = (0..n).filter(|&j| a.contains_int(&b.generator(j))).collect();
    // cone(S1) = cone(S2)
    if !s1.iter().all(|&i| b.in_face(&a.generator(i), &s2)) || !s2.iter().all(|&j| a.in_face(&b.generator(j), &s1)) {
        return Ok(false);
    }
    // a ∩ b ⊆ cone(S1)
    Ok(intersection_rays(a, b)?.iter().all(|r| a.in_face(r, &s1)))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FanReport {
    pub cone_count: usize,
    pub face_check_failures: Vec<(usize, usize)>,
    /// Walls (cones on `n - 1` generators) lying in exactly one maximal cone.
    pub boundary_walls: usize,
    /// Walls lying in more than two maximal cones.
    pub overfull_walls: usize,
    /// Every wall is shared by exactly two cones, so the cones cover the whole space.
    pub complete: bool,
}

impl FanReport {
    pub fn is_fan(&self) -> bool {
        self.face_check_failures.is_empty() && self.overfull_walls == 0
    }
}

/// Pairwise face check for full-dimensional simplicial cones, plus the wall count that decides
/// whether they cover the ambient space.
pub fn check_fan(cones: &[SimplicialCone]) -> Result<FanReport> {
    let mut failures = Vec::new();
    for i in 0..cones.len() {
        for j in i + 1..cones.len() {
            if !intersects_in_common_face(&cones[i], &cones[j])? {
                failures.push((i, j));
            }
        }
    }
    let mut walls: BTreeMap<Vec<Vec<BigInt>>, usize> = BTreeMap::new();
    for c in cones {
        let n = c.dim();
        for skip in 0..n {
            let mut wall: Vec<Vec<BigInt>> = (0..n).filter(|&i| i != skip).map(|i| c.generator(i)).collect();
            wall.sort();
            *walls.entry(wall).or_default() += 1;
        }
    }
    let boundary_walls = walls.values().filter(|&&v| v == 1).count();
    let overfull_walls = walls.values().filter(|&&v| v > 2).count();
    Ok(FanReport {
        cone_count: cones.len(),
        face_check_failures: failures,
        boundary_walls,
        overfull_walls,
        complete: !cones.is_empty() && boundary_walls == 0 && overfull_walls == 0,
    })
}

/// Number of cones containing `v` in their closure and in their interior.
pub fn locate_point(cones: &[SimplicialCone], v: &[BigRational]) -> (usize, usize) {
    let closed = cones.iter().filter(|c| c.contains(v)).count();
    let open = cones.iter().filter(|c| c.interior_contains(v)).count();
    (closed, open)
}

/// Maximal G-cones reached by breadth-first search over the exchange graph of G-matrices.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GFan {
    /// G-matrix and shortest path of each distinct cone, in discovery order.
    pub cones: Vec<(IntMatrix, MutationPath)>,
    /// No unexplored neighbor remains (finite type).
    pub closed: bool,
}

impl GFan {
    pub fn simplicial_cones(&self) -> Result<Vec<SimplicialCone>> {
        self.cones.iter().map(|(g, _)| cone_of(g)).collect()
    }
}

fn cone_key(g: &IntMatrix) -> Vec<Vec<BigInt>> {
    g.sorted_columns()
}

/// Enumerates G-cones up to `max_depth` mutations from the positive orthant, stopping early after
/// `max_cones` distinct cones.
pub fn enumerate_g_fan(b: &ExchangeMatrix, max_depth: usize, max_cones: usize) -> Result<GFan> {
    let n = b.rank();
    let root = PatternNode::initial(b.matrix())?;
    let mut seen = BTreeSet::new();
    seen.insert(cone_key(&root.g));
    let mut cones = vec![(root.g.clone(), root.path.clone())];
    let mut queue = VecDeque::from([root]);
    let mut closed = true;
    while let Some(node) = queue.pop_front() {
        for k in 0..n {
            if node.path.last() == Some(k) {
                continue;
            }
            let next = node.step(k)?;
            if seen.contains(&cone_key(&next.g)) {
                continue;
            }
            if next.path.len() > max_depth || cones.len() >= max_cones {
                closed = false;
                continue;
            }
            seen.insert(cone_key(&next.g));
            cones.push((next.g.clone(), next.path.clone()));
            queue.push_back(next);
        }
    }
    Ok(GFan { cones, closed })
}

/// Number of cones reachable from the first cone by crossing walls (shared sets of `n - 1`
/// generators).
pub fn wall_connected_count(cones: &[SimplicialCone]) -> usize {
    if cones.is_empty() {
        return 0;
    }
    let n = cones[0].dim();
    let mut by_wall: BTreeMap<Vec<Vec<BigInt>>, Vec<usize>> = BTreeMap::new();
    for (idx, c) in cones.iter().enumerate() {
        for skip in 0..n {
            let mut wall: Vec<Vec<BigInt>> = (0..n).filter(|&i| i != skip).map(|i| c.generator(i)).collect();
            wall.sort();
            by_wall.entry(wall).or_default().push(idx);
        }
    }
    let mut reached = vec![false; cones.len()];
    reached[0] = true;
    let mut queue = VecDeque::from([0usize]);
    while let Some(i) = queue.pop_front() {
        let c = &cones[i];
        for skip in 0..n {
            let mut wall: Vec<Vec<BigInt>> = (0..n).filter(|&j| j != skip).map(|j| c.generator(j)).collect();
            wall.sort();
            for &other in &by_wall[&wall] {
                if !reached[other] {
                    reached[other] = true;
                    queue.push_back(other);
                }
            }
        }
    }
    reached.iter().filter(|&&r| r).count()
}
