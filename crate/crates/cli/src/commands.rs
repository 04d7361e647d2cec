//! Command execution. Every command returns its stdout text and exit code.

use std::collections::VecDeque;
use std::path::Path;
use std::sync::Mutex;
use std::time::Instant;

use clusterlab_core::exchange::{
    is_indecomposable, is_sign_skew_symmetric, is_skew_symmetric, skew_symmetrizer, verify_totally_sss,
};
use clusterlab_core::fan::{check_fan, enumerate_g_fan, locate_point, wall_connected_count, SimplicialCone};
use clusterlab_core::folding::{self, ActedQuiver, AdmissibilityResult, DEFAULT_GROUP_BOUND};
use clusterlab_core::graph::{self, CheckReport, CheckStatus};
use clusterlab_core::pattern::{self, DualPart, RootedFailure};
use clusterlab_core::{yhat, ExchangeMatrix, IntMatrix, MutationPath, PatternNode, Seed};
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::args::*;
use crate::formats::{self, FormatError, GraphJson, LaurentJson, MatrixJson, QuiverJson};
use crate::report::{CheckEntry, Report};

pub const GROUP_BOUND_VAR: &str = "CLUSTERLAB_MAX_GROUP";

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error("{0}")]
    Usage(String),
    #[error("computation failed: {0}")]
    Compute(#[from] clusterlab_core::Error),
    #[error("cannot write {path}: {source}")]
    Write { path: String, source: std::io::Error },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Format(_) | Self::Usage(_) => 2,
            Self::Compute(_) | Self::Write { .. } => 1,
        }
    }
}

pub struct Output {
    pub code: i32,
    pub stdout: String,
}

impl Output {
    fn data(value: Value, text: Option<String>, format: Format) -> Self {
        let stdout = match (format, text) {
            (Format::Text, Some(t)) => t,
            _ => pretty(&value),
        };
        Self { code: 0, stdout }
    }

    fn report(r: &Report, format: Format) -> Self {
        let stdout = match format {
            Format::Json => pretty(r),
            Format::Text => r.to_text(),
        };
        Self { code: r.exit_code(), stdout }
    }
}

fn pretty<T: serde::Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("serializable");
    s.push('\n');
    s
}

struct Ctx {
    format: Format,
    seed: u64,
    jobs: usize,
}

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let jobs = cli.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    if jobs == 0 {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    let ctx = Ctx { format: cli.format, seed: cli.seed, jobs };
    match &cli.command {
        Command::Matrix(cmd) => matrix_cmd(&ctx, cmd),
        Command::Seed(cmd) => seed_cmd(&ctx, cmd),
        Command::Verify(cmd) => verify_cmd(&ctx, cmd),
        Command::Fan(args) => fan_cmd(&ctx, args),
        Command::Fold(cmd) => fold_cmd(&ctx, cmd),
        Command::Graph(cmd) => graph_cmd(&ctx, cmd),
    }
}

fn exchange_matrix(arg: &MatrixArg) -> Result<ExchangeMatrix, CliError> {
    let m = formats::read_matrix(&arg.matrix)?;
    ExchangeMatrix::new(m).map_err(|e| CliError::Usage(format!("--matrix: {e}")))
}

fn parse_path(arg: &PathArg, n: usize) -> Result<MutationPath, CliError> {
    let mut steps = Vec::new();
    for s in arg.path.iter().map(|s| s.trim()).filter(|s| !s.is_empty()) {
        steps.push(s.parse::<usize>().map_err(|_| CliError::Usage(format!("--path: `{s}` is not a direction")))?);
    }
    Ok(formats::path_from_one_based(&steps, n, "--path")?)
}

fn group_bound() -> Result<usize, CliError> {
    match std::env::var(GROUP_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse::<usize>()
            .ok()
            .filter(|&b| b > 0)
            .ok_or_else(|| CliError::Usage(format!("{GROUP_BOUND_VAR}: `{v}` is not a positive integer"))),
        Err(_) => Ok(DEFAULT_GROUP_BOUND),
    }
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    std::fs::write(path, contents).map_err(|source| CliError::Write { path: path.display().to_string(), source })
}

fn matrix_text(m: &IntMatrix) -> String {
    m.row_vecs()
        .iter()
        .map(|r| r.iter().map(BigInt::to_string).collect::<Vec<_>>().join(" "))
        .collect::<Vec<_>>()
        .join("\n")
        + "\n"
}

fn vec_json(v: &[BigInt]) -> Value {
    serde_json::to_value(v.iter().map(formats::IntValue::from_bigint).collect::<Vec<_>>()).expect("serializable")
}

// ---- matrix ----

fn matrix_cmd(ctx: &Ctx, cmd: &MatrixCmd) -> Result<Output, CliError> {
    match cmd {
        MatrixCmd::Check(arg) => {
            let m = formats::read_matrix(&arg.matrix)?;
            let mut r = Report::new("matrix check");
            let sss = is_sign_skew_symmetric(&m)?;
            r.check(
                "sign_skew_symmetric",
                if sss { CheckEntry::pass(1) } else { CheckEntry::fail(1, None, "b_ij b_ji > 0 or one-sided zero") },
            );
            r.property("skew_symmetric", is_skew_symmetric(&m));
            let d = skew_symmetrizer(&m)?;
            r.property("skew_symmetrizable", d.is_some());
            if let Some(d) = d {
                r.property("symmetrizer", vec_json(&d));
            }
            r.property("acyclic", clusterlab_core::exchange::is_acyclic(&m));
            r.property("indecomposable", is_indecomposable(&m));
            Ok(Output::report(&r, ctx.format))
        }
        MatrixCmd::Mutate { matrix, path } => {
            let b = exchange_matrix(matrix)?;
            let p = parse_path(path, b.rank())?;
            let mut cur = b;
            for &k in p.steps() {
                cur = cur.mutate(k)?;
            }
            Ok(Output::data(
                serde_json::to_value(MatrixJson::from_matrix(cur.matrix())).unwrap(),
                Some(matrix_text(cur.matrix())),
                ctx.format,
            ))
        }
        MatrixCmd::VerifyTotal { matrix, depth } => {
            let m = formats::read_matrix(&matrix.matrix)?;
            let started = Instant::now();
            let rep = verify_totally_sss(&m, *depth)?;
            let mut r = Report::new("matrix verify-total");
            r.verified_depth = Some(rep.verified_depth);
            let entry = match (&rep.failure_path, &rep.failing_matrix) {
                (Some(p), Some(bad)) => {
                    CheckEntry::fail(1, Some(p), format!("not sign-skew-symmetric: {:?}", formats::rows_of(bad)))
                }
                (Some(p), None) => CheckEntry::fail(1, Some(p), "not sign-skew-symmetric"),
                _ => CheckEntry::pass(1),
            };
            r.check("totally_sss", entry);
            r.timing("walk", started);
            Ok(Output::report(&r, ctx.format))
        }
    }
}

// ---- seed ----

fn seed_cmd(ctx: &Ctx, cmd: &SeedCmd) -> Result<Output, CliError> {
    let (matrix, path) = match cmd {
        SeedCmd::Mutate { matrix, path } | SeedCmd::Fpoly { matrix, path } | SeedCmd::Gvec { matrix, path } => {
            (matrix, path)
        }
    };
    let b = exchange_matrix(matrix)?;
    let p = parse_path(path, b.rank())?;
    let seed = Seed::principal(&b).mutate_along(&p)?;
    let path_json = json!(p.one_based());
    match cmd {
        SeedCmd::Mutate { .. } => {
            let c = seed.coefficient_matrix();
            let value = json!({
                "path": path_json,
                "cluster": seed.cluster().iter().map(LaurentJson::from_poly).collect::<Vec<_>>(),
                "c_vectors": c.columns().iter().map(|v| vec_json(v)).collect::<Vec<_>>(),
                "matrix": MatrixJson::from_matrix(seed.exchange_matrix()),
            });
            let mut text = String::new();
            for (i, x) in seed.cluster().iter().enumerate() {
                text += &format!("x{} = {x}\n", i + 1);
            }
            for (j, v) in c.columns().iter().enumerate() {
                text += &format!("c{} = {:?}\n", j + 1, v.iter().map(BigInt::to_string).collect::<Vec<_>>());
            }
            text += &matrix_text(seed.exchange_matrix());
            Ok(Output::data(value, Some(text), ctx.format))
        }
        SeedCmd::Fpoly { .. } => {
            let fs = seed.f_polynomials()?;
            let value =
                json!({"path": path_json, "f_polynomials": fs.iter().map(LaurentJson::from_poly).collect::<Vec<_>>()});
            let text = fs.iter().enumerate().map(|(i, f)| format!("F{} = {f}\n", i + 1)).collect();
            Ok(Output::data(value, Some(text), ctx.format))
        }
        SeedCmd::Gvec { .. } => {
            let g = seed.g_matrix_from_grading()?;
            let node = PatternNode::along(b.matrix(), &p)?;
            if node.g != g {
                return Err(CliError::Compute(clusterlab_core::Error::Precondition(
                    "g-vectors from the grading and from the pattern differ",
                )));
            }
            let cols = g.columns();
            let value = json!({"path": path_json, "g_vectors": cols.iter().map(|v| vec_json(v)).collect::<Vec<_>>()});
            let text = cols
                .iter()
                .enumerate()
                .map(|(i, v)| format!("g{} = {:?}\n", i + 1, v.iter().map(BigInt::to_string).collect::<Vec<_>>()))
                .collect();
            Ok(Output::data(value, Some(text), ctx.format))
        }
    }
}

// ---- verify ----

#[derive(Default)]
struct Section {
    checks: Vec<(String, CheckEntry)>,
    verified_depth: Option<usize>,
    properties: Vec<(String, Value)>,
    timing: Option<(String, Instant)>,
}

impl Section {
    fn merge_into(self, r: &mut Report) {
        for (name, c) in self.checks {
            r.check(&name, c);
        }
        if let Some(d) = self.verified_depth {
            r.verified_depth = Some(r.verified_depth.map_or(d, |x| x.min(d)));
        }
        for (name, v) in self.properties {
            r.property(&name, v);
        }
        if let Some((name, started)) = self.timing {
            r.timing(&name, started);
        }
    }
}

type Task<'a> = Box<dyn FnOnce() -> Result<Section, CliError> + Send + 'a>;

/// Runs independent tasks on up to `jobs` threads; results keep task order.
fn run_tasks(jobs: usize, tasks: Vec<Task<'_>>) -> Vec<Result<Section, CliError>> {
    if jobs <= 1 || tasks.len() <= 1 {
        return tasks.into_iter().map(|t| t()).collect();
    }
    let n = tasks.len();
    let queue = Mutex::new(tasks.into_iter().enumerate().collect::<VecDeque<_>>());
    let results = Mutex::new((0..n).map(|_| None).collect::<Vec<_>>());
    std::thread::scope(|s| {
        for _ in 0..jobs.min(n) {
            s.spawn(|| loop {
                let next = queue.lock().expect("queue").pop_front();
                let Some((i, task)) = next else { break };
                let out = task();
                results.lock().expect("results")[i] = Some(out);
            });
        }
    });
    results.into_inner().expect("results").into_iter().map(|r| r.expect("every task ran")).collect()
}

fn rooted_detail(f: &RootedFailure) -> String {
    format!(
        "column {} at path {} from root {} (matrix {:?})",
        f.index + 1,
        f.path,
        f.root_path,
        formats::rows_of(&f.root_matrix)
    )
}

fn pattern_section(b: &ExchangeMatrix, depth: usize) -> Result<Section, CliError> {
    let started = Instant::now();
    let rep = pattern::verify_pattern(b, depth)?;
    let n = rep.nodes_checked;
    Ok(Section {
        checks: vec![
            (
                "sign_coherence".into(),
                CheckEntry::outcome(n, rep.sign_coherence.as_ref(), "C has a column with mixed signs"),
            ),
            ("first_duality".into(), CheckEntry::outcome(n, rep.first_duality.as_ref(), "G B differs from B0 C")),
            (
                "determinants".into(),
                CheckEntry::outcome(n, rep.determinants.as_ref(), "det G or det C is not ±1, or they differ"),
            ),
        ],
        verified_depth: Some(rep.verified_depth()),
        properties: vec![("nodes_checked".into(), json!(n))],
        timing: Some(("pattern".into(), started)),
    })
}

fn assumption_section(b: &ExchangeMatrix, depth: usize) -> Result<Section, CliError> {
    let started = Instant::now();
    let rep = pattern::check_assumption(b, depth)?;
    let entry = |checked, f: &Option<RootedFailure>, what: &str| match f {
        None => CheckEntry::pass(checked),
        Some(f) => CheckEntry::fail(checked, Some(&f.path), format!("{what}: {}", rooted_detail(f))),
    };
    Ok(Section {
        checks: vec![
            ("assumption".into(), entry(rep.nodes_checked, &rep.failure, "column signs of C and C~ differ")),
            (
                "second_duality".into(),
                entry(rep.second_duality_checked, &rep.second_duality_failure, "G^T C~ is not I"),
            ),
        ],
        verified_depth: Some(rep.verified_depth),
        properties: vec![("assumption_roots".into(), json!(rep.roots_checked))],
        timing: Some(("assumption".into(), started)),
    })
}

fn dual_mutation_section(b: &ExchangeMatrix, k: usize, depth: usize) -> Result<Section, CliError> {
    let started = Instant::now();
    let rep = pattern::check_dual_mutation(b, k, depth)?;
    let parts = [
        (DualPart::Transpose, "dual_mutation.transpose", "C_t is not the transposed G of the reversed B^T walk"),
        (DualPart::RowSign, "dual_mutation.row_sign", "G has a row with mixed signs"),
        (DualPart::InitialChange, "dual_mutation.initial_change", "closed-form change of initial vertex disagrees"),
        (DualPart::UnitColumns, "dual_mutation.unit_columns", "C and C~ disagree on ±e_j columns"),
        (DualPart::Rows, "dual_mutation.rows", "G and G~ disagree on row signs or ±e_j rows"),
    ];
    Ok(Section {
        checks: parts
            .iter()
            .map(|(part, name, what)| {
                (name.to_string(), CheckEntry::outcome(rep.nodes_checked, rep.failure(*part), what))
            })
            .collect(),
        verified_depth: None,
        properties: vec![],
        timing: Some(("dual_mutation".into(), started)),
    })
}

fn verify_cmd(ctx: &Ctx, cmd: &VerifyCmd) -> Result<Output, CliError> {
    match cmd {
        VerifyCmd::Dualities { matrix, depth, assumption, dual_mutation } => {
            let b = exchange_matrix(matrix)?;
            let k = match *dual_mutation {
                Some(k) if k == 0 || k > b.rank() => {
                    return Err(CliError::Usage(format!("--dual-mutation: {k} outside 1..={}", b.rank())))
                }
                other => other.map(|k| k - 1),
            };
            let depth = *depth;
            let b = &b;
            let mut tasks: Vec<Task<'_>> = vec![Box::new(move || pattern_section(b, depth))];
            if *assumption {
                tasks.push(Box::new(move || assumption_section(b, depth)));
            }
            if let Some(k) = k {
                tasks.push(Box::new(move || dual_mutation_section(b, k, depth)));
            }
            let mut r = Report::new("verify dualities");
            for section in run_tasks(ctx.jobs, tasks) {
                section?.merge_into(&mut r);
            }
            Ok(Output::report(&r, ctx.format))
        }
        VerifyCmd::Assumption { matrix, depth } => {
            let b = exchange_matrix(matrix)?;
            let mut r = Report::new("verify assumption");
            assumption_section(&b, *depth)?.merge_into(&mut r);
            Ok(Output::report(&r, ctx.format))
        }
        VerifyCmd::Yhat { matrix, depth } => {
            let b = exchange_matrix(matrix)?;
            let started = Instant::now();
            let failure = yhat::verify_yhat_to_depth(&b, *depth)?;
            let mut r = Report::new("verify yhat");
            let checked = clusterlab_core::walk::tree_vertex_count(b.rank(), *depth);
            r.check("yhat", CheckEntry::outcome(checked, failure.as_ref(), "direct y-mutation differs from Y^c F^B"));
            r.verified_depth = Some(failure.as_ref().map_or(*depth, |p| p.len().saturating_sub(1)));
            r.timing("yhat", started);
            Ok(Output::report(&r, ctx.format))
        }
    }
}

// ---- fan ----

fn random_point(rng: &mut StdRng, n: usize) -> Vec<BigRational> {
    (0..n)
        .map(|_| {
            let num: i64 = rng.gen_range(-1_000_000..=1_000_000);
            let den: i64 = rng.gen_range(1..=1_000_000);
            BigRational::new(num.into(), den.into())
        })
        .collect()
}

/// Samples points and counts those not covered and those in the interior of two cones.
pub fn sample_coverage(cones: &[SimplicialCone], n: usize, samples: usize, seed: u64) -> (usize, usize) {
    let mut rng = StdRng::seed_from_u64(seed);
    let (mut uncovered, mut overlapping) = (0, 0);
    for _ in 0..samples {
        let (closed, open) = locate_point(cones, &random_point(&mut rng, n));
        if closed == 0 {
            uncovered += 1;
        }
        if open > 1 {
            overlapping += 1;
        }
    }
    (uncovered, overlapping)
}

fn fan_cmd(ctx: &Ctx, args: &FanArgs) -> Result<Output, CliError> {
    let b = exchange_matrix(&args.matrix)?;
    let started = Instant::now();
    let fan = enumerate_g_fan(&b, args.depth, args.max_cones)?;
    let mut r = Report::new("fan");
    r.timing("enumerate", started);
    r.property("cones", fan.cones.len());
    r.check(
        "closed",
        if fan.closed {
            CheckEntry::pass(fan.cones.len())
        } else {
            CheckEntry::partial(fan.cones.len(), "cone limit or depth reached")
        },
    );
    if let Some(out) = &args.out {
        let cones: Vec<Value> = fan
            .cones
            .iter()
            .map(|(g, p)| json!({"path": p.one_based(), "generators": g.columns().iter().map(|v| vec_json(v)).collect::<Vec<_>>()}))
            .collect();
        write_file(
            out,
            &pretty(&json!({"matrix": MatrixJson::from_matrix(b.matrix()), "closed": fan.closed, "cones": cones})),
        )?;
    }
    if args.check {
        let started = Instant::now();
        let cones = fan.simplicial_cones()?;
        let rep = check_fan(&cones)?;
        let pairs = cones.len() * cones.len().saturating_sub(1) / 2;
        r.check(
            "fan",
            match rep.face_check_failures.first() {
                None if rep.overfull_walls == 0 => CheckEntry::pass(pairs),
                None => {
                    CheckEntry::fail(pairs, None, format!("{} walls lie in more than two cones", rep.overfull_walls))
                }
                Some(&(i, j)) => CheckEntry::fail(
                    pairs,
                    Some(&fan.cones[i].1),
                    format!("intersection with the cone at {} is not a common face", fan.cones[j].1),
                ),
            },
        );
        r.property("wall_connected", wall_connected_count(&cones) == cones.len());
        let n = b.rank();
        if fan.closed {
            r.check(
                "complete",
                if rep.complete {
                    CheckEntry::pass(cones.len())
                } else {
                    CheckEntry::fail(cones.len(), None, format!("{} boundary walls", rep.boundary_walls))
                },
            );
            let (uncovered, overlapping) = sample_coverage(&cones, n, args.samples, ctx.seed);
            r.check(
                "points",
                if uncovered + overlapping == 0 {
                    CheckEntry::pass(args.samples)
                } else {
                    CheckEntry::fail(
                        args.samples,
                        None,
                        format!("{uncovered} points uncovered, {overlapping} in two interiors"),
                    )
                },
            );
        } else {
            r.check("complete", CheckEntry::partial(cones.len(), "enumeration not closed"));
        }
        r.timing("check", started);
    }
    Ok(Output::report(&r, ctx.format))
}

// ---- fold ----

fn admissibility_entry(res: &AdmissibilityResult, path: Option<&MutationPath>) -> CheckEntry {
    if res.admissible {
        return CheckEntry::pass(1);
    }
    let conds: Vec<_> = res.all_violated.iter().map(|c| format!("({})", c.roman())).collect();
    let mut detail = format!("violates {}", conds.join(", "));
    if let Some(w) = &res.witness {
        detail += &format!(" at vertices {:?}", w.vertices.iter().map(|v| v + 1).collect::<Vec<_>>());
    }
    CheckEntry::fail(1, path, detail)
}

fn quiver_value(q: &ActedQuiver) -> Value {
    serde_json::to_value(QuiverJson::from_quiver(q)).expect("serializable")
}

fn one_based_orbits(orbits: &[Vec<usize>]) -> Value {
    json!(orbits.iter().map(|o| o.iter().map(|v| v + 1).collect::<Vec<_>>()).collect::<Vec<_>>())
}

fn fold_cmd(ctx: &Ctx, cmd: &FoldCmd) -> Result<Output, CliError> {
    let bound = group_bound()?;
    match cmd {
        FoldCmd::Check(arg) => {
            let q = formats::read_json::<QuiverJson>(&arg.quiver)?.to_quiver()?;
            let res = folding::check_admissible(&q, bound)?;
            let mut r = Report::new("fold check");
            r.check("admissible", admissibility_entry(&res, None));
            r.property("orbits", one_based_orbits(&q.orbits()));
            if let Some(c) = res.violated {
                r.property("violated", c.roman());
            }
            Ok(Output::report(&r, ctx.format))
        }
        FoldCmd::Mutate { quiver, vertex } => {
            let q = formats::read_json::<QuiverJson>(&quiver.quiver)?.to_quiver()?;
            if *vertex == 0 || *vertex > q.vertex_count() {
                return Err(CliError::Usage(format!("--vertex: {vertex} outside 1..={}", q.vertex_count())));
            }
            let m = folding::orbit_mutate(&q, vertex - 1, bound)?;
            Ok(Output::data(quiver_value(&m), Some(matrix_text(m.matrix())), ctx.format))
        }
        FoldCmd::FoldMatrix(arg) => {
            let q = formats::read_json::<QuiverJson>(&arg.quiver)?.to_quiver()?;
            let (m, orbits) = folding::fold_matrix(&q, bound)?;
            let value = json!({"matrix": MatrixJson::from_matrix(&m), "orbits": one_based_orbits(&orbits)});
            Ok(Output::data(value, Some(matrix_text(&m)), ctx.format))
        }
        FoldCmd::Frame(arg) => {
            let q = formats::read_json::<QuiverJson>(&arg.quiver)?.to_quiver()?;
            let f = folding::frame(&q)?;
            Ok(Output::data(quiver_value(&f), Some(matrix_text(f.matrix())), ctx.format))
        }
        FoldCmd::Verify { quiver, depth } => {
            let q = formats::read_json::<QuiverJson>(&quiver.quiver)?.to_quiver()?;
            let mut r = Report::new("fold verify");
            let started = Instant::now();
            let rep = folding::verify_globally_foldable(&q, *depth, bound)?;
            let n = rep.nodes_checked;
            r.check(
                "admissible",
                match &rep.failure {
                    None => CheckEntry::pass(n),
                    Some((p, res)) => {
                        let mut e = admissibility_entry(res, Some(p));
                        e.checked = n;
                        e
                    }
                },
            );
            r.check(
                "fold_commutes",
                CheckEntry::outcome(n, rep.fold_failure.as_ref(), "folding does not commute with orbit mutation"),
            );
            r.check(
                "composition",
                CheckEntry::outcome(
                    n,
                    rep.composition_failure.as_ref(),
                    "orbit mutation differs from composed single mutations",
                ),
            );
            r.verified_depth = Some(rep.verified_depth());
            r.timing("foldable", started);
            let started = Instant::now();
            let fr = folding::verify_framed(&q, *depth, bound)?;
            let n = fr.nodes_checked;
            r.check(
                "framed.admissible",
                CheckEntry::outcome(n, fr.admissibility_failure.as_ref(), "framed quiver not admissible"),
            );
            r.check(
                "framed.frozen_paths",
                match &fr.frozen_path_failure {
                    None => CheckEntry::pass(n),
                    Some((p, [i, k, j])) => {
                        CheckEntry::fail(n, Some(p), format!("path {}' -> {} -> {}'", i + 1, k + 1, j + 1))
                    }
                },
            );
            r.check(
                "framed.equivariance",
                CheckEntry::outcome(n, fr.equivariance_failure.as_ref(), "C-block is not equivariant"),
            );
            r.check(
                "framed.sign_coherence",
                CheckEntry::outcome(n, fr.sign_coherence_failure.as_ref(), "C-block column with mixed signs"),
            );
            r.timing("framed", started);
            Ok(Output::report(&r, ctx.format))
        }
    }
}

// ---- graph ----

fn graph_entry(rep: &CheckReport) -> CheckEntry {
    match rep.status {
        CheckStatus::Pass => CheckEntry::pass(rep.checked),
        CheckStatus::Partial => CheckEntry::partial(rep.checked, "graph truncated"),
        CheckStatus::Fail => {
            let v = &rep.violations[0];
            let mut e = CheckEntry::fail(rep.checked, Some(&v.path), v.detail.clone());
            if rep.violations.len() > 1 {
                e.detail = Some(format!("{} ({} violations)", v.detail, rep.violations.len()));
            }
            e
        }
    }
}

fn graph_cmd(ctx: &Ctx, cmd: &GraphCmd) -> Result<Output, CliError> {
    match cmd {
        GraphCmd::Explore { matrix, max_nodes, max_depth, out } => {
            if *max_nodes == 0 {
                return Err(CliError::Usage("--max-nodes must be positive".into()));
            }
            let b = exchange_matrix(matrix)?;
            let started = Instant::now();
            let g = graph::explore(&b, *max_nodes, *max_depth)?;
            let json = GraphJson::from_graph(&g);
            let mut r = Report::new("graph explore");
            r.timing("explore", started);
            r.property("nodes", g.node_count());
            r.property("edges", json.edges.len());
            r.property("truncated", g.truncated);
            if !g.anomalies.is_empty() {
                r.property("anomalies", json!(g.anomalies));
            }
            r.check(
                "closed",
                if g.truncated {
                    CheckEntry::partial(g.node_count(), "node or depth limit reached")
                } else {
                    CheckEntry::pass(g.node_count())
                },
            );
            match out {
                Some(path) => {
                    write_file(path, &pretty(&json))?;
                    Ok(Output::report(&r, ctx.format))
                }
                None => Ok(Output { code: r.exit_code(), stdout: pretty(&json) }),
            }
        }
        GraphCmd::ExportDot { graph, out } => {
            let json: GraphJson = formats::read_json(graph)?;
            let dot = formats::to_dot(&json);
            match out {
                Some(path) => {
                    write_file(path, &dot)?;
                    Ok(Output { code: 0, stdout: String::new() })
                }
                None => Ok(Output { code: 0, stdout: dot }),
            }
        }
        GraphCmd::Verify { graph, checks } => {
            let json: GraphJson = formats::read_json(graph)?;
            let g = json.to_graph()?;
            let mut wanted = checks.clone();
            wanted.sort();
            wanted.dedup();
            let g = &g;
            let tasks: Vec<Task<'_>> =
                wanted.iter().map(|&c| -> Task<'_> { Box::new(move || graph_check(g, c)) }).collect();
            let mut r = Report::new("graph verify");
            r.property("nodes", g.node_count());
            r.property("truncated", g.truncated);
            for section in run_tasks(ctx.jobs, tasks) {
                section?.merge_into(&mut r);
            }
            Ok(Output::report(&r, ctx.format))
        }
    }
}

fn graph_check(g: &graph::ExchangeGraph, check: GraphCheck) -> Result<Section, CliError> {
    let started = Instant::now();
    let (name, entry) = match check {
        GraphCheck::Cluster => ("cluster", graph_entry(&graph::verify_cluster_determines_seed(g)?)),
        GraphCheck::Adjacency => ("adjacency", graph_entry(&graph::verify_adjacency_common_variables(g)?)),
        GraphCheck::Cmatrix => ("cmatrix", graph_entry(&graph::verify_cmatrix_determines_seed(g)?)),
        GraphCheck::Oddrank => match graph::verify_odd_rank_theorem(g) {
            Ok(rep) => ("oddrank", graph_entry(&rep)),
            Err(clusterlab_core::Error::Precondition(why)) => ("oddrank", CheckEntry::skipped(why)),
            Err(e) => return Err(e.into()),
        },
    };
    Ok(Section { checks: vec![(name.into(), entry)], timing: Some((name.into(), started)), ..Section::default() })
}
