//! Acceptance gate: one PASS/FAIL line per criterion.
//! Run with `cargo test -p graphlim --test acceptance -- --nocapture` to see the lines on success.

use std::time::{Duration, Instant};

use num_bigint::BigUint;
use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive, Zero};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use graphlim::catalog::{build_matrices, enumerate_catalog, verify_rank};
use graphlim::convergence::{
    contribution_bound, direction_cumulants, fmn_bound, spanning_tree_cumulant_check, tail_majorant, taylor_model,
    EdgeIndicator,
};
use graphlim::counting::{
    ball_distribution, hom_count, i_profile, ind_count, inj_count, log_t_density, weighted_hom_exact, WeightedTarget,
};
use graphlim::cumulant::{cgf_value, kappa_gj, target_from_lambda, ColorPattern, LambdaVector, Route};
use graphlim::graph::{generate, Family, SimpleGraph};
use graphlim::scalar::ratio_to_f64;
use graphlim::verify::{default_test_set, derivative_errors, pair_sequences, verify_all, Tier, VerifyOptions};
use graphlim::Budget;

struct Outcome {
    passed: bool,
    cases: usize,
    detail: String,
}

impl Outcome {
    fn new() -> Self {
        Outcome { passed: true, cases: 0, detail: String::new() }
    }

    fn case(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok && self.passed {
            self.passed = false;
            self.detail = describe();
        }
    }
}

fn g(family: Family) -> (String, SimpleGraph) {
    (family.to_string(), generate(&family).unwrap())
}

fn c1_bridge(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let graphs = [
        g(Family::Cycle(4)),
        g(Family::Cycle(6)),
        g(Family::Path(5)),
        g(Family::Complete(4)),
        g(Family::Torus(3, 3)),
    ];
    for (gi, (name, graph)) in graphs.iter().enumerate() {
        assert!(graph.vertex_count() <= 10);
        for k in [2, 3] {
            let mut rng = ChaCha8Rng::seed_from_u64(100 * gi as u64 + k as u64);
            for s in 0..100 {
                let lambda = LambdaVector::random(k, 0.25, &mut rng);
                let f = cgf_value(graph, &lambda, budget).unwrap();
                let bridge = log_t_density(graph, &target_from_lambda(&lambda), budget).unwrap() / graph.vertex_count() as f64;
                let diff = (f - bridge).abs();
                out.case(diff <= 1e-12, || format!("{name}, k = {k}, sample {s}: |diff| = {diff:e}"));
            }
        }
    }
    out
}

fn c2_decomposition(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let graphs = [g(Family::Cycle(4)), g(Family::Cycle(5)), g(Family::Path(5)), g(Family::Complete(4))];
    for l in 1..=3 {
        for k in 2..=4 {
            for pairs in pair_sequences(k, l) {
                let j = ColorPattern::from_pairs(&pairs);
                for (name, graph) in &graphs {
                    let direct = kappa_gj(graph, &j, k, Route::Direct, budget).unwrap();
                    let decomposed = kappa_gj(graph, &j, k, Route::Decomposition, budget).unwrap();
                    out.case(direct == decomposed, || {
                        format!("{name}, k = {k}, J = {pairs:?}: direct {direct} vs decomposition {decomposed}")
                    });
                }
            }
        }
    }
    out
}

fn c3_matrices(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let samples = vec![g(Family::Cycle(5)), g(Family::Path(4)), g(Family::Complete(4))];
    for l in 1..=3 {
        let m = build_matrices(l, 2 * l, budget).unwrap();
        let report = verify_rank(&m, &samples, budget).unwrap();
        for f in &report.findings {
            out.case(f.passed, || format!("l = {l}: {} ({})", f.name, f.detail));
        }
        let connected = m.catalog.connected_indices().len();
        out.case(report.rank_k == connected, || format!("l = {l}: rank K = {} != {connected}", report.rank_k));
    }
    out
}

fn c4_derivatives(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    for (name, graph) in [g(Family::Cycle(4)), g(Family::Cycle(6))] {
        for (coords, fd, exact) in derivative_errors(&graph, budget).unwrap() {
            assert!(exact != 0.0, "{name} {coords:?}");
            let rel = ((fd - exact) / exact).abs();
            out.case(rel <= 1e-6, || format!("{name}, {coords:?}: relative error {rel:e}"));
        }
    }
    out
}

fn fmn_graphs() -> Vec<(String, SimpleGraph)> {
    let mut graphs: Vec<_> = (3..=8).map(|n| g(Family::Cycle(n))).collect();
    graphs.extend((2..=7).map(|n| g(Family::Path(n))));
    graphs.push(g(Family::Complete(4)));
    graphs
}

fn c5_fmn(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let mut rigorous_failures = 0;
    let mut violated_orders = std::collections::BTreeSet::new();
    for (gi, (name, graph)) in fmn_graphs().into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(500 + gi as u64);
        let mut dirs = vec![LambdaVector::new(2, vec![1.0; 2], vec![vec![1.0; 2]; 2]).unwrap()];
        dirs.extend((0..20).map(|_| LambdaVector::random_signs(2, &mut rng)));
        for (di, dir) in dirs.iter().enumerate() {
            let d = direction_cumulants(&graph, dir, 6, budget).unwrap();
            let a = contribution_bound(dir);
            for (r, kappa) in (1..).zip(&d.kappas) {
                let value = ratio_to_f64(&kappa.abs());
                let bound = fmn_bound(r, d.w, d.delta, 1.0);
                if value >= bound {
                    violated_orders.insert(r);
                }
                out.case(value < bound, || {
                    format!("{name}, direction {di}, r = {r}: |kappa| = {value} >= {bound} (A = 1)")
                });
                if value >= fmn_bound(r, d.w, d.delta, a) {
                    rigorous_failures += 1;
                }
            }
        }
    }
    println!(
        "      info: A = 1 violated at orders {violated_orders:?}; with A = max|Y_w| there are {rigorous_failures} violations"
    );
    out
}

fn c6_spanning_tree() -> Outcome {
    let mut out = Outcome::new();
    let pairs = [(0, 0), (0, 1), (1, 1)];
    for (name, graph) in [g(Family::Complete(4)), g(Family::Cycle(5))] {
        let m = graph.edge_count();
        for subset in 1u32..1 << m {
            let edges: Vec<usize> = (0..m).filter(|&e| subset >> e & 1 == 1).collect();
            let r = edges.len();
            if r > 4 {
                continue;
            }
            for code in 0..3usize.pow(r as u32) {
                let family: Vec<EdgeIndicator> = edges
                    .iter()
                    .enumerate()
                    .map(|(p, &edge)| EdgeIndicator { edge, pair: pairs[code / 3usize.pow(p as u32) % 3] })
                    .collect();
                let t = spanning_tree_cumulant_check(&graph, 2, &family).unwrap();
                let expected_bound = BigUint::from(1u32 << (r - 1)) * &t.trees;
                out.case(t.bound == expected_bound, || format!("{name}, {family:?}: bound {}", t.bound));
                if t.trees.is_zero() {
                    out.case(t.kappa.is_zero(), || format!("{name}, {family:?}: disconnected but kappa = {}", t.kappa));
                } else {
                    let bound = BigRational::from_integer(t.bound.clone().into());
                    out.case(t.kappa.abs() <= bound, || format!("{name}, {family:?}: |{}| > {}", t.kappa, t.bound));
                }
            }
        }
    }
    out
}

fn c7_taylor(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let (_, c6) = g(Family::Cycle(6));
    let model = taylor_model(&c6, 2, 6, budget).unwrap();
    let d = model.degree_bound();
    out.case(d == 2 && (model.radius() - 0.045985).abs() < 1e-6, || format!("radius {}", model.radius()));
    let v = c6.vertex_count();
    let w = v + c6.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for s in 0..20 {
        let lambda = LambdaVector::random_with_norm(2, 0.03, &mut rng);
        let z = lambda.sup_norm();
        out.case(z == 0.03, || format!("sample {s}: norm {z}"));
        let f = cgf_value(&c6, &lambda, budget).unwrap();
        let errors: Vec<f64> = [2, 4, 6].iter().map(|&m| (model.eval_to_order(&lambda, m) - f).abs()).collect();
        out.case(errors[0] > errors[1] && errors[1] > errors[2], || format!("sample {s}: errors {errors:?}"));
        for (e, m) in errors.iter().zip([2, 4, 6]) {
            let majorant = tail_majorant(v, w, 2 * d, 1.0, z, m);
            out.case(majorant.is_finite() && *e <= majorant, || {
                format!("sample {s}, order {m}: error {e:e} vs majorant {majorant:e}")
            });
        }
    }
    out
}

fn c8_cycles(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let reference = generate(&Family::Cycle(10)).unwrap();
    let catalogs: Vec<_> = (1..=3).map(|l| enumerate_catalog(l).unwrap()).collect();
    let base: Vec<_> = (1..=3).map(|l| i_profile(&reference, l, budget).unwrap()).collect();
    let balls: Vec<_> = (0..=3).map(|r| ball_distribution(&reference, r)).collect();
    for n in 10..=40u64 {
        let cycle = generate(&Family::Cycle(n as usize)).unwrap();
        for (l, catalog) in (1..).zip(&catalogs) {
            let profile = i_profile(&cycle, l, budget).unwrap();
            for f in catalog.connected_patterns() {
                let lhs = BigRational::new(profile.count(f).into(), n.into());
                let rhs = BigRational::new(base[l - 1].count(f).into(), 10u64.into());
                out.case(lhs == rhs, || format!("C_{n}, {f}: {lhs} vs {rhs}"));
            }
        }
        for (r, reference) in balls.iter().enumerate() {
            let same = ball_distribution(&cycle, r).same_distribution(reference);
            out.case(same, || format!("C_{n}, r = {r}: ball distribution differs"));
        }
    }
    out
}

fn c9_counting(budget: &Budget) -> Outcome {
    let mut out = Outcome::new();
    let small: Vec<_> = default_test_set().into_iter().filter(|(_, g)| g.vertex_count() <= 6).collect();
    let k2 = SimpleGraph::new(2, [(0, 1)]).unwrap();
    let p3 = SimpleGraph::new(3, [(0, 1), (1, 2)]).unwrap();
    for (name, graph) in &small {
        let m = BigUint::from(graph.edge_count());
        let inj_k2 = inj_count(&k2, graph);
        out.case(inj_k2 == BigUint::from(2u32) * &m, || format!("{name}: inj(K2) = {inj_k2}"));
        let p1 = i_profile(graph, 1, budget).unwrap();
        let p2 = i_profile(graph, 2, budget).unwrap();
        for entry in p1.connected() {
            out.case(BigUint::from(entry.count) * 2u32 == inj_k2, || format!("{name}: i(edge) = {}", entry.count));
        }
        for entry in p2.connected() {
            let pattern = &entry.pattern;
            let expected = if pattern.has_parallel_edges() {
                inj_count(&pattern.simple_reduction(), graph) / 2u32
            } else {
                inj_count(&pattern.simple_reduction(), graph)
            };
            out.case(BigUint::from(entry.count) == expected, || {
                format!("{name}, {pattern}: i = {} vs inj = {expected}", entry.count)
            });
        }
        let inj_p3 = inj_count(&p3, graph);
        out.case(p2.count(&graphlim::graph::EdgeLabeledMultigraph::new(3, vec![(0, 1), (1, 2)]).unwrap()).to_u64()
            == inj_p3.to_u64(), || format!("{name}: i(2-path) vs inj(P3) = {inj_p3}"));
    }
    for (fname, f) in &small {
        for (gname, graph) in &small {
            let (hom, inj, ind) = (hom_count(f, graph), inj_count(f, graph), ind_count(f, graph));
            out.case(ind <= inj && inj <= hom, || format!("{fname} -> {gname}: ind {ind}, inj {inj}, hom {hom}"));
            let h = WeightedTarget::<BigRational>::from_simple(graph);
            let weighted = weighted_hom_exact(f, &h, budget).unwrap();
            out.case(weighted == BigRational::from_integer(hom.clone().into()), || {
                format!("{fname} -> {gname}: weighted {weighted} vs hom {hom}")
            });
        }
    }
    out
}

fn c10_determinism() -> Outcome {
    let mut out = Outcome::new();
    let options = VerifyOptions::new(Tier::Smoke);
    let first = verify_all(&options);
    let second = verify_all(&options);
    out.case(first.passed, || format!("smoke tier failed: {:?}", first.failed_checks()));
    out.case(first.to_json() == second.to_json(), || "reports differ".into());
    out
}

#[test]
fn acceptance() {
    let budget = Budget::default();
    let criteria: Vec<(&str, Duration, Box<dyn Fn() -> Outcome>)> = vec![
        ("bridge identity", Duration::from_secs(60), Box::new(|| c1_bridge(&budget))),
        ("decomposition identity", Duration::from_secs(300), Box::new(|| c2_decomposition(&budget))),
        ("matrix suite", Duration::from_secs(300), Box::new(|| c3_matrices(&budget))),
        ("derivative consistency", Duration::from_secs(60), Box::new(|| c4_derivatives(&budget))),
        ("FMN bound (A = 1)", Duration::from_secs(120), Box::new(|| c5_fmn(&budget))),
        ("spanning-tree lemma", Duration::from_secs(120), Box::new(c6_spanning_tree)),
        ("Taylor convergence", Duration::from_secs(180), Box::new(|| c7_taylor(&budget))),
        ("cycle constancy", Duration::from_secs(120), Box::new(|| c8_cycles(&budget))),
        ("counting cross-checks", Duration::from_secs(120), Box::new(|| c9_counting(&budget))),
        ("determinism", Duration::from_secs(60), Box::new(c10_determinism)),
    ];
    let mut failed = Vec::new();
    for (i, (name, limit, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        outcome.case(elapsed <= *limit, || format!("took {elapsed:?}, limit {limit:?}"));
        let status = if outcome.passed { "PASS" } else { "FAIL" };
        print!("{status} {:>2} {name}: {} cases, {:.2} s", i + 1, outcome.cases, elapsed.as_secs_f64());
        if outcome.passed {
            println!();
        } else {
            println!(" -- first failure: {}", outcome.detail);
            failed.push(i + 1);
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
