//! JSON and DOT formats. Vertex indices, mutation paths and node ids are 1-based on disk.

use std::fmt::Write as _;
use std::path::Path;

use clusterlab_core::graph::ExchangeGraph;
use clusterlab_core::{IntMatrix, LaurentPoly, MutationPath, PatternNode, Seed, TropicalElement, Vars};
use num_bigint::BigInt;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("cannot read {path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("JSON error at line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("invalid field `{field}`: {message}")]
    Invalid { field: String, message: String },
}

impl From<serde_json::Error> for FormatError {
    fn from(e: serde_json::Error) -> Self {
        Self::Json { line: e.line(), column: e.column(), message: e.to_string() }
    }
}

fn invalid(field: impl Into<String>, message: impl Into<String>) -> FormatError {
    FormatError::Invalid { field: field.into(), message: message.into() }
}

/// An integer written as a JSON number when it fits in `i64`, and as a decimal string otherwise.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum IntValue {
    Small(i64),
    Big(String),
}

impl IntValue {
    pub fn from_bigint(v: &BigInt) -> Self {
        i64::try_from(v).map(Self::Small).unwrap_or_else(|_| Self::Big(v.to_string()))
    }

    pub fn to_bigint(&self, field: &str) -> Result<BigInt, FormatError> {
        match self {
            Self::Small(v) => Ok(BigInt::from(*v)),
            Self::Big(s) => s.parse().map_err(|_| invalid(field, format!("`{s}` is not an integer"))),
        }
    }
}

pub type Rows = Vec<Vec<IntValue>>;

pub fn rows_of(m: &IntMatrix) -> Rows {
    m.row_vecs().iter().map(|r| r.iter().map(IntValue::from_bigint).collect()).collect()
}

pub fn matrix_from_rows(rows: &Rows, n: usize, field: &str) -> Result<IntMatrix, FormatError> {
    if rows.len() != n {
        return Err(invalid(field, format!("expected {n} rows, found {}", rows.len())));
    }
    let mut data = Vec::with_capacity(n * n);
    for (i, row) in rows.iter().enumerate() {
        if row.len() != n {
            return Err(invalid(format!("{field}[{}]", i + 1), format!("expected {n} entries, found {}", row.len())));
        }
        for v in row {
            data.push(v.to_bigint(field)?);
        }
    }
    IntMatrix::from_vec(n, n, data).map_err(|e| invalid(field, e.to_string()))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatrixJson {
    pub n: usize,
    pub rows: Rows,
}

impl MatrixJson {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        Self { n: m.rows(), rows: rows_of(m) }
    }

    pub fn to_matrix(&self) -> Result<IntMatrix, FormatError> {
        matrix_from_rows(&self.rows, self.n, "rows")
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coef: IntValue,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LaurentJson {
    pub vars: Vec<String>,
    pub terms: Vec<TermJson>,
}

impl LaurentJson {
    pub fn from_poly(p: &LaurentPoly) -> Self {
        Self {
            vars: p.vars().names().to_vec(),
            terms: p.terms().map(|(e, c)| TermJson { exp: e.clone(), coef: IntValue::from_bigint(c) }).collect(),
        }
    }

    pub fn to_poly(&self, vars: &Vars) -> Result<LaurentPoly, FormatError> {
        if self.vars != vars.names() {
            return Err(invalid("vars", "variable names differ from the expected ring"));
        }
        let mut terms = Vec::with_capacity(self.terms.len());
        for t in &self.terms {
            if t.exp.len() != vars.len() {
                return Err(invalid("terms.exp", format!("expected {} exponents", vars.len())));
            }
            terms.push((t.exp.clone(), t.coef.to_bigint("terms.coef")?));
        }
        LaurentPoly::from_terms(vars, terms).map_err(|e| invalid("terms", e.to_string()))
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct QuiverJson {
    pub n: usize,
    pub matrix: Rows,
    #[serde(default)]
    pub frozen: Vec<usize>,
    #[serde(default)]
    pub action_generators: Vec<Vec<usize>>,
}

impl QuiverJson {
    pub fn from_quiver(q: &clusterlab_core::folding::ActedQuiver) -> Self {
        Self {
            n: q.vertex_count(),
            matrix: rows_of(q.matrix()),
            frozen: q.frozen().iter().map(|&i| i + 1).collect(),
            action_generators: q.generators().iter().map(|g| g.iter().map(|&i| i + 1).collect()).collect(),
        }
    }

    pub fn to_quiver(&self) -> Result<clusterlab_core::folding::ActedQuiver, FormatError> {
        let m = matrix_from_rows(&self.matrix, self.n, "matrix")?;
        let frozen = self.frozen.iter().map(|&i| zero_based(i, self.n, "frozen")).collect::<Result<_, _>>()?;
        let mut gens = Vec::with_capacity(self.action_generators.len());
        for g in &self.action_generators {
            gens.push(g.iter().map(|&i| zero_based(i, self.n, "action_generators")).collect::<Result<Vec<_>, _>>()?);
        }
        clusterlab_core::folding::ActedQuiver::new(m, frozen, gens).map_err(|e| invalid("matrix", e.to_string()))
    }
}

fn zero_based(i: usize, n: usize, field: &str) -> Result<usize, FormatError> {
    if i == 0 || i > n {
        return Err(invalid(field, format!("index {i} outside 1..={n}")));
    }
    Ok(i - 1)
}

pub fn path_from_one_based(steps: &[usize], n: usize, field: &str) -> Result<MutationPath, FormatError> {
    let zero = steps.iter().map(|&k| zero_based(k, n, field)).collect::<Result<Vec<_>, _>>()?;
    Ok(MutationPath::from_zero_based(zero))
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct NodeJson {
    pub id: usize,
    pub path: Vec<usize>,
    pub cluster: Vec<LaurentJson>,
    pub c: Rows,
    pub g: Rows,
    pub b: Rows,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeJson {
    pub source: usize,
    pub target: usize,
    /// Mutation direction at the source.
    pub label: usize,
    /// Mutation direction at the target, in the target's labeling.
    pub target_label: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphJson {
    pub matrix: MatrixJson,
    pub truncated: bool,
    #[serde(default)]
    pub anomalies: Vec<String>,
    pub nodes: Vec<NodeJson>,
    pub edges: Vec<EdgeJson>,
}

impl GraphJson {
    pub fn from_graph(g: &ExchangeGraph) -> Self {
        let nodes = g
            .nodes
            .iter()
            .enumerate()
            .map(|(i, node)| NodeJson {
                id: i + 1,
                path: node.path().one_based(),
                cluster: node.seed.cluster().iter().map(LaurentJson::from_poly).collect(),
                c: rows_of(&node.pattern.c),
                g: rows_of(&node.pattern.g),
                b: rows_of(&node.pattern.b),
            })
            .collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeJson {
                source: e.a + 1,
                target: e.b + 1,
                label: e.label_a + 1,
                target_label: e.label_b.map(|k| k + 1),
            })
            .collect();
        Self {
            matrix: MatrixJson::from_matrix(&g.b0),
            truncated: g.truncated,
            anomalies: g.anomalies.clone(),
            nodes,
            edges,
        }
    }

    /// Rebuilds seeds and pattern nodes; edges are recomputed from the seeds rather than trusted.
    pub fn to_graph(&self) -> Result<ExchangeGraph, FormatError> {
        let b0 = self.matrix.to_matrix()?;
        let n = self.matrix.n;
        let vars = Vars::cluster(n, n);
        let mut parts = Vec::with_capacity(self.nodes.len());
        for (i, node) in self.nodes.iter().enumerate() {
            let field = |f: &str| format!("nodes[{}].{f}", i + 1);
            if node.id != i + 1 {
                return Err(invalid(field("id"), format!("expected {}", i + 1)));
            }
            if node.cluster.len() != n {
                return Err(invalid(field("cluster"), format!("expected {n} variables")));
            }
            let cluster = node.cluster.iter().map(|x| x.to_poly(&vars)).collect::<Result<Vec<_>, _>>()?;
            let c = matrix_from_rows(&node.c, n, &field("c"))?;
            let g = matrix_from_rows(&node.g, n, &field("g"))?;
            let b = matrix_from_rows(&node.b, n, &field("b"))?;
            let coeffs = c.columns().into_iter().map(TropicalElement::new).collect();
            let seed = Seed::from_parts(vars.clone(), cluster, coeffs, b.clone(), Some(b0.clone()))
                .map_err(|e| invalid(field("cluster"), e.to_string()))?;
            let path = path_from_one_based(&node.path, n, &field("path"))?;
            parts.push((seed, PatternNode { b, c, g, path }));
        }
        let mut graph =
            ExchangeGraph::from_parts(b0, parts, self.truncated).map_err(|e| invalid("nodes", e.to_string()))?;
        graph.anomalies = self.anomalies.clone();
        Ok(graph)
    }
}

pub fn to_dot(g: &GraphJson) -> String {
    let mut out = String::from("graph exchange {\n");
    for node in &g.nodes {
        let label = if node.path.is_empty() {
            String::from("()")
        } else {
            node.path.iter().map(|k| k.to_string()).collect::<Vec<_>>().join(",")
        };
        let _ = writeln!(out, "  n{} [label=\"{label}\"];", node.id);
    }
    for e in &g.edges {
        let label = match e.target_label {
            Some(t) if t != e.label => format!("{}/{}", e.label, t),
            _ => e.label.to_string(),
        };
        let _ = writeln!(out, "  n{} -- n{} [label=\"{label}\"];", e.source, e.target);
    }
    out.push_str("}\n");
    out
}

/// Reads `arg` as inline JSON when it starts with `{`, and as a file path otherwise.
pub fn read_json<T: DeserializeOwned>(arg: &str) -> Result<T, FormatError> {
    let text = if arg.trim_start().starts_with('{') {
        arg.to_string()
    } else {
        std::fs::read_to_string(Path::new(arg)).map_err(|source| FormatError::Io { path: arg.to_string(), source })?
    };
    Ok(serde_json::from_str(&text)?)
}

pub fn read_matrix(arg: &str) -> Result<IntMatrix, FormatError> {
    read_json::<MatrixJson>(arg)?.to_matrix()
}

#[cfg(test)]
mod tests {
    use super::*;
    use clusterlab_core::graph::explore;
    use clusterlab_core::ExchangeMatrix;

    #[test]
    fn matrix_round_trip_with_big_entries() {
        let mut m = IntMatrix::from_rows(&[vec![0i64, 1], vec![-1, 0]]).unwrap();
        m.set(0, 1, BigInt::from(1u8) << 80);
        let json = serde_json::to_string(&MatrixJson::from_matrix(&m)).unwrap();
        assert!(json.contains("\"1208925819614629174706176\""));
        let back: MatrixJson = serde_json::from_str(&json).unwrap();
        assert_eq!(back.to_matrix().unwrap(), m);
    }

    #[test]
    fn malformed_matrix_reports_position() {
        let err = read_matrix("{\"n\": 2, \"rows\": [[0, 1], [-1]]}").unwrap_err();
        assert!(err.to_string().contains("rows[2]"), "{err}");
        let err = read_matrix("{\"n\": 2,\n \"rowz\": []}").unwrap_err();
        assert!(matches!(err, FormatError::Json { line: 2, .. }), "{err}");
    }

    #[test]
    fn quiver_indices_are_one_based() {
        let q: QuiverJson =
            serde_json::from_str(r#"{"n":3,"matrix":[[0,1,0],[-1,0,-1],[0,1,0]],"action_generators":[[3,2,1]]}"#)
                .unwrap();
        let acted = q.to_quiver().unwrap();
        assert_eq!(acted.generators(), &[vec![2, 1, 0]]);
        assert_eq!(QuiverJson::from_quiver(&acted), q);
        let bad: QuiverJson = serde_json::from_str(r#"{"n":2,"matrix":[[0,1],[-1,0]],"frozen":[0]}"#).unwrap();
        assert!(bad.to_quiver().is_err());
    }

    #[test]
    fn graph_round_trip() {
        let b = ExchangeMatrix::from_rows(&[vec![0, 1], vec![-1, 0]]).unwrap();
        let g = explore(&b, 100, 12).unwrap();
        let json = GraphJson::from_graph(&g);
        let text = serde_json::to_string(&json).unwrap();
        let back: GraphJson = serde_json::from_str(&text).unwrap();
        assert_eq!(back.to_graph().unwrap().nodes, g.nodes);
        let dot = to_dot(&json);
        assert_eq!(dot.matches(" -- ").count(), 5);
        assert!(dot.contains("n1 [label=\"()\"]"));
    }
}
