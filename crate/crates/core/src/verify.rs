//! Self-check suites over a test set of graphs, at two budget tiers.
//!
//! The report is deterministic: it carries no timings, and every random
//! choice comes from a fixed seed. Timings are kept beside it.

use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::budget::Budget;
use crate::catalog::{build_matrices, enumerate_catalog, enumerate_catalog_by_vertex_count, verify_rank};
use crate::convergence::{
    contribution_bound, dependency_graph, direction_cumulants, fmn_bound, radius, sequence_report,
    spanning_tree_cumulant_check, tail_majorant, taylor_model, Cell, EdgeIndicator, SequenceConfig,
};
use crate::counting::{hom_count, i_profile, ind_count, inj_count, log_t_density, weighted_hom_exact, WeightedTarget};
use crate::cumulant::{cgf_value, coordinate_cumulant, kappa_gj, target_from_lambda, ColorPattern, Coordinate, LambdaVector, Route};
use crate::error::{Error, Result};
use crate::graph::{generate, EdgeLabeledMultigraph, Family, FamilyKind, SimpleGraph};
use crate::scalar::{format_ratio, ratio_to_f64};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Tier {
    Smoke,
    Full,
}

impl FromStr for Tier {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "smoke" => Ok(Tier::Smoke),
            "full" => Ok(Tier::Full),
            _ => Err(Error::InvalidParameter(format!("unknown tier {s:?} (expected smoke or full)"))),
        }
    }
}

impl fmt::Display for Tier {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Tier::Smoke => "smoke",
            Tier::Full => "full",
        })
    }
}

pub const CHECK_NAMES: [&str; 11] = [
    "catalog",
    "matrices",
    "bridge",
    "decomposition",
    "derivatives",
    "dependency",
    "fmn",
    "spanning_tree",
    "taylor",
    "cycle_constancy",
    "counting",
];

#[derive(Debug, Clone)]
pub struct VerifyOptions {
    pub tier: Tier,
    /// Replaces the default test graphs for every graph-based suite.
    pub test_set: Option<Vec<(String, SimpleGraph)>>,
    /// Name of a suite whose first oracle value is deliberately corrupted.
    pub corrupt: Option<String>,
    pub budget: Budget,
}

impl VerifyOptions {
    pub fn new(tier: Tier) -> Self {
        VerifyOptions { tier, test_set: None, corrupt: None, budget: Budget::default() }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct CheckResult {
    pub name: String,
    pub passed: bool,
    pub cases: usize,
    /// The first few failing cases.
    pub failures: Vec<String>,
    pub failure_count: usize,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub tier: Tier,
    pub test_set: Vec<String>,
    pub checks: Vec<CheckResult>,
    pub passed: bool,
    #[serde(skip)]
    pub timings: Vec<(String, f64)>,
}

impl VerifyReport {
    /// 0 when every check passed, 2 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed {
            0
        } else {
            2
        }
    }

    pub fn failed_checks(&self) -> Vec<&str> {
        self.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

const MAX_LISTED: usize = 5;

struct Ctx {
    corrupt: bool,
    cases: usize,
    failures: Vec<String>,
    failure_count: usize,
}

impl Ctx {
    fn q(&mut self, x: BigRational) -> BigRational {
        if std::mem::take(&mut self.corrupt) {
            x + BigRational::from_integer(1.into())
        } else {
            x
        }
    }

    fn f(&mut self, x: f64) -> f64 {
        if std::mem::take(&mut self.corrupt) {
            x + 1.0
        } else {
            x
        }
    }

    fn n(&mut self, x: usize) -> usize {
        if std::mem::take(&mut self.corrupt) {
            x + 1
        } else {
            x
        }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.failure_count += 1;
            if self.failures.len() < MAX_LISTED {
                self.failures.push(describe());
            }
        }
    }

    fn error(&mut self, what: &str, e: Error) {
        self.case(false, || format!("{what}: {e}"));
    }
}

pub fn default_test_set() -> Vec<(String, SimpleGraph)> {
    [
        Family::Cycle(4),
        Family::Cycle(5),
        Family::Cycle(6),
        Family::Path(5),
        Family::Complete(4),
        Family::Torus(3, 3),
    ]
    .iter()
    .map(|f| (f.to_string(), generate(f).expect("fixed test graphs generate")))
    .collect()
}

struct Plan {
    bridge_samples: usize,
    decomposition: (usize, Vec<usize>),
    matrix_len: usize,
    derivative_vertices: usize,
    fmn: (usize, usize),
    tree_len: usize,
    taylor: (usize, usize),
    cycles: (usize, usize, usize),
    catalog_len: usize,
}

impl Plan {
    fn for_tier(tier: Tier) -> Self {
        match tier {
            Tier::Smoke => Plan {
                bridge_samples: 10,
                decomposition: (2, vec![2, 3]),
                matrix_len: 2,
                derivative_vertices: 5,
                fmn: (4, 5),
                tree_len: 3,
                taylor: (6, 5),
                cycles: (16, 2, 2),
                catalog_len: 3,
            },
            Tier::Full => Plan {
                bridge_samples: 100,
                decomposition: (3, vec![2, 3, 4]),
                matrix_len: 3,
                derivative_vertices: 8,
                fmn: (6, 20),
                tree_len: 4,
                taylor: (8, 20),
                cycles: (40, 3, 3),
                catalog_len: 4,
            },
        }
    }
}

pub fn verify_all(options: &VerifyOptions) -> VerifyReport {
    let plan = Plan::for_tier(options.tier);
    let graphs = options.test_set.clone().unwrap_or_else(default_test_set);
    let budget = &options.budget;
    let mut checks = Vec::new();
    let mut timings = Vec::new();
    for name in CHECK_NAMES {
        let mut ctx = Ctx {
            corrupt: options.corrupt.as_deref() == Some(name),
            cases: 0,
            failures: Vec::new(),
            failure_count: 0,
        };
        let start = Instant::now();
        match name {
            "catalog" => check_catalog(&mut ctx, plan.catalog_len),
            "matrices" => check_matrices(&mut ctx, &graphs, plan.matrix_len, budget),
            "bridge" => check_bridge(&mut ctx, &graphs, plan.bridge_samples, budget),
            "decomposition" => check_decomposition(&mut ctx, &graphs, &plan.decomposition, budget),
            "derivatives" => check_derivatives(&mut ctx, &graphs, plan.derivative_vertices, budget),
            "dependency" => check_dependency(&mut ctx, &graphs),
            "fmn" => check_fmn(&mut ctx, &graphs, plan.fmn, budget),
            "spanning_tree" => check_spanning_tree(&mut ctx, &graphs, plan.tree_len),
            "taylor" => check_taylor(&mut ctx, &graphs, plan.taylor, budget),
            "cycle_constancy" => check_cycles(&mut ctx, plan.cycles, budget),
            "counting" => check_counting(&mut ctx, &graphs, budget),
            _ => unreachable!("every check name is dispatched"),
        }
        timings.push((name.to_string(), start.elapsed().as_secs_f64()));
        checks.push(CheckResult {
            name: name.to_string(),
            passed: ctx.failure_count == 0,
            cases: ctx.cases,
            failures: ctx.failures,
            failure_count: ctx.failure_count,
        });
    }
    let passed = checks.iter().all(|c| c.passed);
    VerifyReport {
        tier: options.tier,
        test_set: graphs.into_iter().map(|(n, _)| n).collect(),
        checks,
        passed,
        timings,
    }
}

fn check_catalog(ctx: &mut Ctx, max_len: usize) {
    const SIZES: [(usize, usize); 4] = [(1, 1), (3, 2), (16, 9), (139, 78)];
    for l in 1..=max_len {
        let (a, b) = match (enumerate_catalog(l), enumerate_catalog_by_vertex_count(l)) {
            (Ok(a), Ok(b)) => (a, b),
            (Err(e), _) | (_, Err(e)) => return ctx.error("catalog", e),
        };
        ctx.case(a.codes() == b.codes(), || format!("l = {l}: enumeration strategies disagree"));
        let expected = SIZES[l - 1];
        let expected = (ctx.n(expected.0), expected.1);
        let got = (a.len(), a.connected_indices().len());
        ctx.case(got == expected, || format!("l = {l}: sizes {got:?}, expected {expected:?}"));
    }
}

fn check_matrices(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], max_len: usize, budget: &Budget) {
    let samples: Vec<(String, SimpleGraph)> = graphs.iter().filter(|(_, g)| g.vertex_count() <= 6).cloned().collect();
    for l in 1..=max_len {
        let m = match build_matrices(l, 2 * l, budget) {
            Ok(m) => m,
            Err(e) => return ctx.error(&format!("l = {l}"), e),
        };
        let report = match verify_rank(&m, &samples, budget) {
            Ok(r) => r,
            Err(e) => return ctx.error(&format!("l = {l}"), e),
        };
        for f in &report.findings {
            ctx.case(f.passed, || format!("l = {l}: {} ({})", f.name, f.detail));
        }
        let want = ctx.n(report.connected_size);
        ctx.case(report.rank_k == want, || format!("l = {l}: rank K = {}, expected {want}", report.rank_k));
    }
}

fn check_bridge(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], samples: usize, budget: &Budget) {
    for (gi, (name, g)) in graphs.iter().enumerate() {
        if g.vertex_count() == 0 || g.vertex_count() > 10 {
            continue;
        }
        for k in [2, 3] {
            let mut rng = ChaCha8Rng::seed_from_u64(1000 + 10 * gi as u64 + k as u64);
            for s in 0..samples {
                let lambda = LambdaVector::random(k, 0.25, &mut rng);
                let v = g.vertex_count() as f64;
                match (cgf_value(g, &lambda, budget), log_t_density(g, &target_from_lambda(&lambda), budget)) {
                    (Ok(f), Ok(lt)) => {
                        let oracle = ctx.f(lt / v);
                        ctx.case((f - oracle).abs() <= 1e-12, || {
                            format!("{name}, k = {k}, sample {s}: f = {f:e}, log t / v = {oracle:e}")
                        });
                    }
                    (Err(e), _) | (_, Err(e)) => ctx.error(name, e),
                }
            }
        }
    }
}

/// Every sequence of `l` unordered color pairs over `[k]`.
pub fn pair_sequences(k: usize, l: usize) -> Vec<Vec<(usize, usize)>> {
    let pairs: Vec<(usize, usize)> = (0..k).flat_map(|i| (i..k).map(move |j| (i, j))).collect();
    let mut out = vec![Vec::new()];
    for _ in 0..l {
        out = out
            .into_iter()
            .flat_map(|seq| {
                pairs.iter().map(move |&p| {
                    let mut s = seq.clone();
                    s.push(p);
                    s
                })
            })
            .collect();
    }
    out
}

fn check_decomposition(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], plan: &(usize, Vec<usize>), budget: &Budget) {
    let (max_len, ks) = plan;
    for (name, g) in graphs.iter().filter(|(_, g)| g.vertex_count() <= 6) {
        for &k in ks {
            for l in 1..=*max_len {
                for pairs in pair_sequences(k, l) {
                    let j = ColorPattern::from_pairs(&pairs);
                    let direct = kappa_gj(g, &j, k, Route::Direct, budget);
                    let decomposed = kappa_gj(g, &j, k, Route::Decomposition, budget);
                    match (direct, decomposed) {
                        (Ok(a), Ok(b)) => {
                            let b = ctx.q(b);
                            ctx.case(a == b, || {
                                format!("{name}, k = {k}, J = {pairs:?}: {} vs {}", format_ratio(&a), format_ratio(&b))
                            });
                        }
                        (Err(e), _) | (_, Err(e)) => ctx.error(name, e),
                    }
                }
            }
        }
    }
}

/// Central differences of `f` against `kappa / v` for first and second
/// order edge coordinates, `k = 2`, `h = 1e-4`.
pub fn derivative_errors(g: &SimpleGraph, budget: &Budget) -> Result<Vec<(Vec<Coordinate>, f64, f64)>> {
    let k = 2;
    let h = 1e-4;
    let v = g.vertex_count() as f64;
    let f = |shifts: &[(Coordinate, f64)]| -> Result<f64> {
        let mut lambda = LambdaVector::zeros(k);
        for &(c, d) in shifts {
            lambda.set(c, lambda.get(c) + d);
        }
        cgf_value(g, &lambda, budget)
    };
    let coords = Coordinate::edges(k);
    let mut out = Vec::new();
    for &a in &coords {
        let fd = (f(&[(a, h)])? - f(&[(a, -h)])?) / (2.0 * h);
        let exact = ratio_to_f64(&coordinate_cumulant(g, k, &[a], budget)?) / v;
        out.push((vec![a], fd, exact));
    }
    for (ia, &a) in coords.iter().enumerate() {
        for &b in &coords[ia..] {
            let fd = if a == b {
                (f(&[(a, h)])? - 2.0 * f(&[])? + f(&[(a, -h)])?) / (h * h)
            } else {
                (f(&[(a, h), (b, h)])? - f(&[(a, h), (b, -h)])? - f(&[(a, -h), (b, h)])? + f(&[(a, -h), (b, -h)])?)
                    / (4.0 * h * h)
            };
            let exact = ratio_to_f64(&coordinate_cumulant(g, k, &[a, b], budget)?) / v;
            out.push((vec![a, b], fd, exact));
        }
    }
    Ok(out)
}

fn check_derivatives(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], max_vertices: usize, budget: &Budget) {
    for (name, g) in graphs.iter().filter(|(_, g)| g.vertex_count() <= max_vertices && g.vertex_count() > 0) {
        match derivative_errors(g, budget) {
            Ok(rows) => {
                for (coords, fd, exact) in rows {
                    let exact = ctx.f(exact);
                    let err = if exact == 0.0 { fd.abs() } else { ((fd - exact) / exact).abs() };
                    ctx.case(err <= 1e-6, || format!("{name}, {coords:?}: difference {fd:e} vs {exact:e}"));
                }
            }
            Err(e) => ctx.error(name, e),
        }
    }
}

fn check_dependency(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)]) {
    for (name, g) in graphs {
        let l = dependency_graph(g);
        // An edge node sees its 2 endpoints and the deg(u) + deg(v) - 2 edges at them.
        let by_formula = g
            .edges()
            .iter()
            .map(|&(u, v)| g.degree(u) + g.degree(v))
            .chain(std::iter::once(g.max_degree()))
            .max()
            .unwrap_or(0);
        let by_formula = ctx.n(by_formula);
        ctx.case(l.max_degree() == by_formula, || format!("{name}: Delta = {}, expected {by_formula}", l.max_degree()));
        ctx.case(l.max_degree() <= 2 * g.max_degree(), || format!("{name}: Delta = {} > 2D", l.max_degree()));
    }
}

fn check_fmn(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], (r_max, directions): (usize, usize), budget: &Budget) {
    for (gi, (name, g)) in graphs.iter().enumerate().filter(|(_, (_, g))| g.vertex_count() <= 9) {
        let mut rng = ChaCha8Rng::seed_from_u64(2000 + gi as u64);
        let mut dirs = vec![LambdaVector::new(2, vec![1.0; 2], vec![vec![1.0; 2]; 2]).expect("k = 2 shape")];
        dirs.extend((0..directions).map(|_| LambdaVector::random_signs(2, &mut rng)));
        for (di, dir) in dirs.iter().enumerate() {
            match direction_cumulants(g, dir, r_max, budget) {
                Ok(d) => {
                    let a = contribution_bound(dir);
                    for (r, kappa) in d.kappas.iter().enumerate() {
                        let bound = if std::mem::take(&mut ctx.corrupt) { 0.0 } else { fmn_bound(r + 1, d.w, d.delta, a) };
                        let value = ratio_to_f64(&kappa.abs());
                        ctx.case(value < bound, || {
                            format!("{name}, direction {di}, r = {}: |kappa| = {value} >= {bound}", r + 1)
                        });
                    }
                }
                Err(e) => ctx.error(name, e),
            }
        }
    }
}

fn edge_subsets(m: usize, max_len: usize) -> Vec<Vec<usize>> {
    (1u32..1 << m)
        .filter(|s| s.count_ones() as usize <= max_len)
        .map(|s| (0..m).filter(|&e| s >> e & 1 == 1).collect())
        .collect()
}

fn check_spanning_tree(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], max_len: usize) {
    let assignments: [&[(usize, usize)]; 3] = [&[(0, 0)], &[(0, 1)], &[(0, 0), (0, 1), (1, 1), (0, 1)]];
    for (name, g) in graphs.iter().filter(|(_, g)| g.edge_count() <= 10) {
        for subset in edge_subsets(g.edge_count(), max_len) {
            for pattern in assignments {
                let family: Vec<EdgeIndicator> = subset
                    .iter()
                    .enumerate()
                    .map(|(p, &edge)| EdgeIndicator { edge, pair: pattern[p % pattern.len()] })
                    .collect();
                match spanning_tree_cumulant_check(g, 2, &family) {
                    Ok(t) => {
                        let bound = if ctx.corrupt {
                            ctx.corrupt = false;
                            BigUint::zero()
                        } else {
                            t.bound.clone()
                        };
                        let ok = if t.trees.is_zero() {
                            t.kappa.is_zero()
                        } else {
                            t.kappa.abs() <= BigRational::from_integer(bound.into())
                        };
                        ctx.case(ok, || format!("{name}, edges {subset:?}: kappa = {}", format_ratio(&t.kappa)));
                    }
                    Err(e) => ctx.error(name, e),
                }
            }
        }
    }
}

fn check_taylor(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], (max_vertices, samples): (usize, usize), budget: &Budget) {
    for (gi, (name, g)) in graphs.iter().enumerate() {
        let d = g.effective_degree_bound();
        if g.vertex_count() > max_vertices || d == 0 {
            continue;
        }
        let model = match taylor_model(g, 2, 6, budget) {
            Ok(m) => m,
            Err(e) => return ctx.error(name, e),
        };
        let z = 0.65 * radius(d);
        let w = g.vertex_count() + g.edge_count();
        let mut rng = ChaCha8Rng::seed_from_u64(3000 + gi as u64);
        for s in 0..samples {
            let lambda = LambdaVector::random_with_norm(2, z, &mut rng);
            let f = match cgf_value(g, &lambda, budget) {
                Ok(f) => ctx.f(f),
                Err(e) => return ctx.error(name, e),
            };
            let errs: Vec<f64> = [2, 4, 6].iter().map(|&o| (model.eval_to_order(&lambda, o) - f).abs()).collect();
            ctx.case(errs[0] > errs[1] && errs[1] > errs[2], || {
                format!("{name}, sample {s}: errors {errs:?} not strictly decreasing")
            });
            for (e, o) in errs.iter().zip([2, 4, 6]) {
                let bound = tail_majorant(g.vertex_count(), w, 2 * d, 1.0, z, o);
                ctx.case(*e <= bound, || format!("{name}, sample {s}, order {o}: error {e:e} > majorant {bound:e}"));
            }
        }
    }
}

fn check_cycles(ctx: &mut Ctx, (max_n, max_len, ball_radius): (usize, usize, usize), budget: &Budget) {
    let config = SequenceConfig {
        family: FamilyKind::Cycle,
        ns: (10..=max_n).collect(),
        k: 2,
        lambdas: vec![],
        max_len,
        ball_radius,
    };
    let report = match sequence_report(&config, budget) {
        Ok(r) => r,
        Err(e) => return ctx.error("cycles", e),
    };
    ctx.case(report.skipped.is_empty(), || format!("{} rows skipped", report.skipped.len()));
    let Some(first) = report.rows.first() else {
        return;
    };
    let mut reference = first.cells.clone();
    if let Some(Cell::Exact(x)) = reference.first_mut() {
        *x = ctx.q(x.clone());
    }
    for (c, name) in report.columns.iter().enumerate() {
        if name.starts_with("ball_tv") {
            let ok = report.rows.iter().skip(1).all(|r| matches!(&r.cells[c], Cell::Exact(x) if x.is_zero()));
            ctx.case(ok, || format!("{name} nonzero"));
        } else {
            let ok = report.rows.iter().all(|r| r.cells[c] == reference[c]);
            ctx.case(ok, || format!("column {name} not constant"));
        }
    }
}

fn check_counting(ctx: &mut Ctx, graphs: &[(String, SimpleGraph)], budget: &Budget) {
    let k2 = generate(&Family::Complete(2)).expect("K2");
    let p3 = generate(&Family::Path(3)).expect("P3");
    let edge = EdgeLabeledMultigraph::new(2, vec![(0, 1)]).expect("edge");
    let two_path = EdgeLabeledMultigraph::new(3, vec![(0, 1), (1, 2)]).expect("2-path");
    let small: Vec<&(String, SimpleGraph)> = graphs.iter().filter(|(_, g)| g.vertex_count() <= 6).collect();
    for (name, g) in graphs {
        let inj = inj_count(&k2, g);
        let expected = BigUint::from(2 * g.edge_count());
        let expected = if ctx.corrupt {
            ctx.corrupt = false;
            expected + 1u32
        } else {
            expected
        };
        ctx.case(inj == expected, || format!("{name}: inj(K2) = {inj}"));
        match (i_profile(g, 1, budget), i_profile(g, 2, budget)) {
            (Ok(p1), Ok(p2)) => {
                ctx.case(BigUint::from(p1.count(&edge)) * 2u32 == inj, || format!("{name}: i(edge) != inj(K2)/2"));
                let i2 = BigUint::from(p2.count(&two_path));
                let inj_p3 = inj_count(&p3, g);
                ctx.case(i2 == inj_p3, || format!("{name}: i(2-path) = {i2}, inj(P3) = {inj_p3}"));
            }
            (Err(e), _) | (_, Err(e)) => ctx.error(name, e),
        }
    }
    for (fname, f) in &small {
        for (gname, g) in &small {
            let (ind, inj, hom) = (ind_count(f, g), inj_count(f, g), hom_count(f, g));
            ctx.case(ind <= inj && inj <= hom, || format!("{fname} -> {gname}: ind {ind}, inj {inj}, hom {hom}"));
            let target: WeightedTarget<BigRational> = WeightedTarget::from_simple(g);
            match weighted_hom_exact(f, &target, budget) {
                Ok(w) => ctx.case(w == BigRational::from_integer(hom.clone().into()), || {
                    format!("{fname} -> {gname}: weighted {} vs hom {hom}", format_ratio(&w))
                }),
                Err(e) => ctx.error(fname, e),
            }
        }
    }
}
