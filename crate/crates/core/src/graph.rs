//! Exchange graphs of principal-coefficient seeds, and checks of the statements relating
//! clusters, coefficients, exchange matrices, C-matrices and g-vectors on them.

use alloc::collections::{BTreeMap, BTreeSet, VecDeque};
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exchange::{is_indecomposable, ExchangeMatrix};
use crate::matrix::IntMatrix;
use crate::path::MutationPath;
use crate::pattern::PatternNode;
use crate::seed::Seed;

pub const DEFAULT_MAX_NODES: usize = 100_000;
pub const DEFAULT_MAX_DEPTH: usize = 12;

/// Sorted canonical serializations of a cluster, plus the sorting permutation:
/// `sorted[j]` is the serialization of cluster variable `permutation[j]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSeedKey {
    pub sorted: Vec<String>,
    pub permutation: Vec<usize>,
}

impl CanonicalSeedKey {
    /// Two equal serializations in one cluster; the order between them is then arbitrary.
    pub fn has_tie(&self) -> bool {
        self.sorted.windows(2).any(|w| w[0] == w[1])
    }
}

pub fn canonical_key(s: &Seed) -> CanonicalSeedKey {
    let strings: Vec<String> = s.cluster().iter().map(|x| x.canonical_string()).collect();
    let mut permutation: Vec<usize> = (0..strings.len()).collect();
    permutation.sort_by(|&a, &b| strings[a].cmp(&strings[b]));
    CanonicalSeedKey { sorted: permutation.iter().map(|&i| strings[i].clone()).collect(), permutation }
}

/// `sigma` with `a.x_i = b.x_{sigma(i)}`, when `a` and `b` have the same sorted cluster.
pub fn relabeling(a: &CanonicalSeedKey, b: &CanonicalSeedKey) -> Option<Vec<usize>> {
    if a.sorted != b.sorted {
        return None;
    }
    let mut sigma = vec![0; a.permutation.len()];
    for (j, &i) in a.permutation.iter().enumerate() {
        sigma[i] = b.permutation[j];
    }
    Some(sigma)
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphNode {
    pub seed: Seed,
    pub pattern: PatternNode,
    pub key: CanonicalSeedKey,
    /// Node reached by mutating this node's labeled seed in each direction, if it is in the graph.
    pub neighbors: Vec<Option<usize>>,
}

impl GraphNode {
    pub fn path(&self) -> &MutationPath {
        &self.pattern.path
    }

    /// Every neighbor is present in the graph.
    pub fn is_complete(&self) -> bool {
        self.neighbors.iter().all(Option::is_some)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExchangeGraph {
    pub b0: IntMatrix,
    pub nodes: Vec<GraphNode>,
    pub truncated: bool,
    pub anomalies: Vec<String>,
}

/// An edge with the mutation direction at each endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct Edge {
    pub a: usize,
    pub b: usize,
    pub label_a: usize,
    pub label_b: Option<usize>,
}

impl ExchangeGraph {
    pub fn rank(&self) -> usize {
        self.b0.rows()
    }

    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Unordered edges, each listed once from its smaller endpoint.
    pub fn edges(&self) -> Vec<Edge> {
        let mut out = BTreeSet::new();
        for (a, node) in self.nodes.iter().enumerate() {
            for (k, nb) in node.neighbors.iter().enumerate() {
                let Some(b) = *nb else { continue };
                if a < b {
                    let label_b = self.nodes[b].neighbors.iter().position(|&x| x == Some(a));
                    out.insert(Edge { a, b, label_a: k, label_b });
                }
            }
        }
        out.into_iter().collect()
    }

    pub fn edge_count(&self) -> usize {
        self.edges().len()
    }

    pub fn degree(&self, v: usize) -> usize {
        self.nodes[v].neighbors.iter().flatten().collect::<BTreeSet<_>>().len()
    }

    pub fn adjacent(&self, a: usize, b: usize) -> bool {
        self.nodes[a].neighbors.contains(&Some(b)) || self.nodes[b].neighbors.contains(&Some(a))
    }

    fn index_of(&self) -> BTreeMap<Vec<String>, usize> {
        self.nodes.iter().enumerate().map(|(i, n)| (n.key.sorted.clone(), i)).collect()
    }

    /// Rebuilds a graph from stored nodes, recomputing keys and neighbor links.
    pub fn from_parts(b0: IntMatrix, seeds: Vec<(Seed, PatternNode)>, truncated: bool) -> Result<Self> {
        let mut graph = Self { b0, nodes: Vec::with_capacity(seeds.len()), truncated, anomalies: Vec::new() };
        for (seed, pattern) in seeds {
            let key = canonical_key(&seed);
            let n = seed.rank();
            graph.nodes.push(GraphNode { seed, pattern, key, neighbors: vec![None; n] });
        }
        let index = graph.index_of();
        if index.len() != graph.nodes.len() {
            return Err(Error::Precondition("duplicate seeds in stored graph"));
        }
        for v in 0..graph.nodes.len() {
            for k in 0..graph.rank() {
                let next = graph.nodes[v].seed.mutate(k)?;
                graph.nodes[v].neighbors[k] = index.get(&canonical_key(&next).sorted).copied();
            }
        }
        Ok(graph)
    }
}

/// Breadth-first enumeration of unlabeled seeds with principal coefficients, deduplicated by
/// canonical key. Nodes at `max_depth` are linked to known neighbors but not extended; the graph
/// is marked truncated whenever a neighbor was left out.
pub fn explore(b: &ExchangeMatrix, max_nodes: usize, max_depth: usize) -> Result<ExchangeGraph> {
    let n = b.rank();
    let root_seed = Seed::principal(b);
    let root_key = canonical_key(&root_seed);
    let mut graph =
        ExchangeGraph { b0: b.matrix().clone(), nodes: Vec::new(), truncated: false, anomalies: Vec::new() };
    let mut index: BTreeMap<Vec<String>, usize> = BTreeMap::new();
    index.insert(root_key.sorted.clone(), 0);
    graph.nodes.push(GraphNode {
        seed: root_seed,
        pattern: PatternNode::initial(b.matrix())?,
        key: root_key,
        neighbors: vec![None; n],
    });
    let mut queue = VecDeque::from([0usize]);
    while let Some(u) = queue.pop_front() {
        let depth = graph.nodes[u].path().len();
        for k in 0..n {
            let seed = graph.nodes[u].seed.mutate(k)?;
            let key = canonical_key(&seed);
            if key.has_tie() {
                graph.anomalies.push(format!("repeated cluster variable at {}", graph.nodes[u].path().pushed(k)));
            }
            if let Some(&v) = index.get(&key.sorted) {
                graph.nodes[u].neighbors[k] = Some(v);
                continue;
            }
            if depth >= max_depth || graph.nodes.len() >= max_nodes {
                graph.truncated = true;
                continue;
            }
            let pattern = graph.nodes[u].pattern.step(k)?;
            let v = graph.nodes.len();
            index.insert(key.sorted.clone(), v);
            graph.nodes.push(GraphNode { seed, pattern, key, neighbors: vec![None; n] });
            graph.nodes[u].neighbors[k] = Some(v);
            queue.push_back(v);
        }
        let targets: Vec<usize> = graph.nodes[u].neighbors.iter().flatten().copied().collect();
        if targets.iter().collect::<BTreeSet<_>>().len() != targets.len() {
            graph.anomalies.push(format!("two directions lead to the same seed at {}", graph.nodes[u].path()));
        }
    }
    Ok(graph)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CheckStatus {
    Pass,
    Fail,
    /// No violation found, but the graph is truncated so the statement is not fully checked.
    Partial,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Violation {
    pub path: MutationPath,
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CheckReport {
    pub name: &'static str,
    pub status: CheckStatus,
    pub checked: usize,
    pub violations: Vec<Violation>,
}

impl CheckReport {
    fn new(name: &'static str) -> Self {
        Self { name, status: CheckStatus::Pass, checked: 0, violations: Vec::new() }
    }

    fn violate(&mut self, path: MutationPath, detail: String) {
        self.status = CheckStatus::Fail;
        self.violations.push(Violation { path, detail });
    }

    fn finish(mut self, partial: bool) -> Self {
        if partial && self.status == CheckStatus::Pass {
            self.status = CheckStatus::Partial;
        }
        self
    }

    pub fn passed(&self) -> bool {
        self.status == CheckStatus::Pass
    }
}

/// A labeled seed adjacent to a node: the representative it belongs to, the seed, its pattern
/// node and the relabeling `sigma` onto the representative.
type Arrival = (usize, Seed, PatternNode, Vec<usize>);

fn arrivals(g: &ExchangeGraph) -> Result<Vec<Arrival>> {
    let mut out = Vec::new();
    for node in &g.nodes {
        for (k, nb) in node.neighbors.iter().enumerate() {
            let Some(v) = *nb else { continue };
            let seed = node.seed.mutate(k)?;
            let pattern = node.pattern.step(k)?;
            let key = canonical_key(&seed);
            if let Some(sigma) = relabeling(&g.nodes[v].key, &key) {
                out.push((v, seed, pattern, sigma));
            }
        }
    }
    Ok(out)
}

fn seed_consistency(g: &ExchangeGraph, report: &mut CheckReport) -> Result<Vec<Arrival>> {
    let all = arrivals(g)?;
    for (v, seed, pattern, sigma) in &all {
        report.checked += 1;
        let rep = &g.nodes[*v];
        let relabeled = seed.permuted(sigma)?;
        if relabeled != rep.seed {
            report.violate(
                pattern.path.clone(),
                format!("coefficients or exchange matrix differ from node {}", rep.path()),
            );
        }
        if pattern.c.columns_permuted(sigma)? != rep.pattern.c || pattern.g.columns_permuted(sigma)? != rep.pattern.g {
            report.violate(pattern.path.clone(), format!("C or G matrix differ from node {}", rep.path()));
        }
    }
    Ok(all)
}

/// Whenever a labeled seed has the cluster of a stored node up to a permutation, its coefficients
/// and exchange matrix agree with the node's under that permutation.
pub fn verify_cluster_determines_seed(g: &ExchangeGraph) -> Result<CheckReport> {
    let mut report = CheckReport::new("cluster");
    seed_consistency(g, &mut report)?;
    Ok(report.finish(g.truncated))
}

fn common_variables(a: &GraphNode, b: &GraphNode) -> usize {
    let sa: BTreeSet<&String> = a.key.sorted.iter().collect();
    b.key.sorted.iter().filter(|s| sa.contains(s)).count()
}

/// Adjacent nodes share exactly `n - 1` cluster variables, and nodes sharing `n - 1` are adjacent.
/// On truncated graphs the second direction is reported as partial.
pub fn verify_adjacency_common_variables(g: &ExchangeGraph) -> Result<CheckReport> {
    let n = g.rank();
    let mut report = CheckReport::new("adjacency");
    for a in 0..g.nodes.len() {
        for b in a + 1..g.nodes.len() {
            report.checked += 1;
            let common = common_variables(&g.nodes[a], &g.nodes[b]);
            let adjacent = g.adjacent(a, b);
            if adjacent && common + 1 != n {
                report.violate(
                    g.nodes[b].path().clone(),
                    format!("adjacent to {} but shares {common} variables", g.nodes[a].path()),
                );
            }
            if !adjacent && common + 1 == n {
                report.violate(
                    g.nodes[b].path().clone(),
                    format!("shares {common} variables with {} but is not adjacent", g.nodes[a].path()),
                );
            }
        }
    }
    Ok(report.finish(g.truncated))
}

/// Distinct nodes have distinct C-matrices (and distinct G-matrices), up to the order of columns;
/// g-vectors and cluster variables correspond bijectively across all nodes.
pub fn verify_cmatrix_determines_seed(g: &ExchangeGraph) -> Result<CheckReport> {
    let mut report = CheckReport::new("cmatrix");
    let mut by_c: BTreeMap<Vec<Vec<BigInt>>, usize> = BTreeMap::new();
    let mut by_g: BTreeMap<Vec<Vec<BigInt>>, usize> = BTreeMap::new();
    let mut g_to_var: BTreeMap<Vec<BigInt>, String> = BTreeMap::new();
    let mut var_to_g: BTreeMap<String, Vec<BigInt>> = BTreeMap::new();
    for (i, node) in g.nodes.iter().enumerate() {
        report.checked += 1;
        if node.seed.coefficient_matrix() != node.pattern.c {
            report.violate(node.path().clone(), String::from("tropical coefficients differ from the C-matrix"));
        }
        if let Some(&j) = by_c.get(&node.pattern.c.sorted_columns()) {
            report.violate(node.path().clone(), format!("same C-matrix as {}", g.nodes[j].path()));
        }
        by_c.insert(node.pattern.c.sorted_columns(), i);
        let c_unique = by_c.len();
        if let Some(&j) = by_g.get(&node.pattern.g.sorted_columns()) {
            report.violate(node.path().clone(), format!("same G-matrix as {}", g.nodes[j].path()));
        }
        by_g.insert(node.pattern.g.sorted_columns(), i);
        if by_g.len() != c_unique {
            report.violate(node.path().clone(), String::from("C-matrix and G-matrix injectivity disagree"));
        }
        for (v, x) in node.seed.cluster().iter().enumerate() {
            let gv = node.pattern.g.column(v);
            let s = x.canonical_string();
            match g_to_var.get(&gv) {
                Some(prev) if *prev != s => report.violate(
                    node.path().clone(),
                    format!("g-vector of variable {} is shared by another variable", v + 1),
                ),
                _ => {}
            }
            match var_to_g.get(&s) {
                Some(prev) if *prev != gv => {
                    report.violate(node.path().clone(), format!("variable {} has two g-vectors", v + 1))
                }
                _ => {}
            }
            g_to_var.insert(gv.clone(), s.clone());
            var_to_g.insert(s, gv);
        }
    }
    Ok(report.finish(false))
}

/// For odd rank and indecomposable `B`: the seed checks of [`verify_cluster_determines_seed`], and
/// at every return to the initial cluster, `G` and `C` are the same permutation matrix (never
/// `C = -P`).
pub fn verify_odd_rank_theorem(g: &ExchangeGraph) -> Result<CheckReport> {
    let n = g.rank();
    if n % 2 == 0 {
        return Err(Error::Precondition("odd rank required"));
    }
    if !is_indecomposable(&g.b0) {
        return Err(Error::Precondition("indecomposable exchange matrix required"));
    }
    let mut report = CheckReport::new("oddrank");
    let arrived = seed_consistency(g, &mut report)?;
    for (v, _, pattern, _) in &arrived {
        if *v != 0 {
            continue;
        }
        let (c, gm) = (&pattern.c, &pattern.g);
        if !gm.is_permutation_matrix() {
            report.violate(pattern.path.clone(), String::from("G is not a permutation matrix at the initial cluster"));
        }
        if &(-c) == gm {
            report.violate(pattern.path.clone(), String::from("C = -G at the initial cluster"));
        }
        if c != gm || c.det()? != gm.det()? {
            report.violate(pattern.path.clone(), String::from("C and G differ at the initial cluster"));
        }
    }
    Ok(report.finish(g.truncated))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn em(rows: &[Vec<i64>]) -> ExchangeMatrix {
        ExchangeMatrix::from_rows(rows).unwrap()
    }

    #[test]
    fn key_is_permutation_invariant() {
        let s = Seed::principal(&em(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]])).mutate(1).unwrap();
        let k = canonical_key(&s);
        let p = s.permuted(&[2, 0, 1]).unwrap();
        let kp = canonical_key(&p);
        assert_eq!(k.sorted, kp.sorted);
        let sigma = relabeling(&kp, &k).unwrap();
        assert_eq!(s.permuted(&sigma).unwrap(), p);
    }

    #[test]
    fn a2_pentagon() {
        let b = em(&[vec![0, 1], vec![-1, 0]]);
        let g = explore(&b, DEFAULT_MAX_NODES, DEFAULT_MAX_DEPTH).unwrap();
        assert!(!g.truncated);
        assert_eq!(g.node_count(), 5);
        assert_eq!(g.edge_count(), 5);
        let s = Seed::principal(&b);
        let p1 = s.mutate_along(&MutationPath::from_zero_based(vec![0, 1, 0, 1, 0])).unwrap();
        let p2 = s.mutate_along(&MutationPath::from_zero_based(vec![1, 0, 1, 0, 1])).unwrap();
        assert_eq!(canonical_key(&p1).sorted, canonical_key(&p2).sorted);
        for r in [
            verify_cluster_determines_seed(&g).unwrap(),
            verify_adjacency_common_variables(&g).unwrap(),
            verify_cmatrix_determines_seed(&g).unwrap(),
        ] {
            assert!(r.passed(), "{r:?}");
        }
        assert!(verify_odd_rank_theorem(&g).is_err());
    }

    #[test]
    fn rank_one() {
        let g = explore(&em(&[vec![0]]), 10, 10).unwrap();
        assert_eq!((g.node_count(), g.edge_count()), (2, 1));
        assert!(verify_adjacency_common_variables(&g).unwrap().passed());
        assert!(verify_odd_rank_theorem(&g).unwrap().passed());
    }

    #[test]
    fn a3_associahedron() {
        let g = explore(&em(&[vec![0, 1, 0], vec![-1, 0, 1], vec![0, -1, 0]]), DEFAULT_MAX_NODES, DEFAULT_MAX_DEPTH)
            .unwrap();
        assert!(!g.truncated);
        assert_eq!(g.node_count(), 14);
        assert!((0..14).all(|v| g.degree(v) == 3));
        assert!(verify_odd_rank_theorem(&g).unwrap().passed());
        assert!(verify_cmatrix_determines_seed(&g).unwrap().passed());
    }

    #[test]
    fn truncation_is_reported() {
        let g = explore(&em(&[vec![0, 2], vec![-2, 0]]), 1000, 3).unwrap();
        assert!(g.truncated);
        assert_eq!(verify_adjacency_common_variables(&g).unwrap().status, CheckStatus::Partial);
        let small = explore(&em(&[vec![0, 1], vec![-1, 0]]), 3, 12).unwrap();
        assert!(small.truncated);
        assert_eq!(small.node_count(), 3);
    }

    #[test]
    fn decomposable_rejected() {
        let g = explore(&em(&[vec![0, 1, 0], vec![-1, 0, 0], vec![0, 0, 0]]), 100, 4).unwrap();
        assert!(verify_odd_rank_theorem(&g).is_err());
    }

    #[test]
    fn rebuild_from_parts() {
        let g = explore(&em(&[vec![0, 1], vec![-2, 0]]), 100, 12).unwrap();
        assert_eq!(g.node_count(), 6);
        let parts = g.nodes.iter().map(|n| (n.seed.clone(), n.pattern.clone())).collect();
        let h = ExchangeGraph::from_parts(g.b0.clone(), parts, g.truncated).unwrap();
        assert_eq!(h.nodes, g.nodes);
    }
}
