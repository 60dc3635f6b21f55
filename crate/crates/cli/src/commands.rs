use num_bigint::BigUint;
use num_traits::ToPrimitive;
use serde_json::{json, Value};

use graphlim::catalog::{build_matrices, enumerate_catalog, verify_rank};
use graphlim::convergence::{
    contribution_bound, radius, sequence_report, tail_majorant, taylor_eval, taylor_model, SequenceConfig,
};
use graphlim::counting::{
    hom_count, i_profile, ind_count, inj_count, log_t_density, t_density, t_density_exact, LoadedTarget,
};
use graphlim::cumulant::{cgf_value, embed_pattern, kappa_gj, target_from_lambda, ColorPattern, LambdaVector, Route};
use graphlim::graph::{generate, parse_graph, serialize_graph, Family, FamilyKind, SimpleGraph};
use graphlim::scalar::format_ratio;
use graphlim::verify::{verify_all, Tier, VerifyOptions};
use graphlim::{Budget, Error};

use crate::input::{graph_from_spec, load_graph, load_lambdas, parse_multigraph, parse_pairs, parse_sizes, read};
use crate::{Command, Failure, Format, Outcome};

fn input_err(e: Error) -> (Failure, Option<String>) {
    (Failure::Input(e.to_string()), None)
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialize");
    s.push('\n');
    s
}

fn big(n: &BigUint) -> Value {
    match n.to_u64() {
        Some(x) => json!(x),
        None => json!(n.to_string()),
    }
}

fn real(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::Null
    }
}

fn lambda_json(l: &LambdaVector) -> Value {
    serde_json::to_value(l).expect("lambda serializes")
}

pub fn dispatch(command: &Command, budget: &Budget) -> Outcome {
    match command {
        Command::Gen { family } => gen(family),
        Command::Count { graph, pattern, target, pattern_l } => {
            let (name, g) = load_graph(graph).map_err(input_err)?;
            count(&name, &g, pattern.as_deref(), target.as_deref(), *pattern_l, budget).map_err(input_err)
        }
        Command::Cgf { graph, k, lambda } => {
            let (name, g) = load_graph(graph).map_err(input_err)?;
            let lambdas = load_lambdas(lambda, *k).map_err(input_err)?;
            cgf(&name, &g, &lambdas, budget).map_err(input_err)
        }
        Command::Cumulant { graph, k, pairs, pattern } => {
            let (name, g) = load_graph(graph).map_err(input_err)?;
            cumulant(&name, &g, *k, pairs.as_deref(), pattern.as_deref(), budget)
        }
        Command::Catalog { l, k, verify, samples } => catalog(*l, *k, *verify, samples, budget),
        Command::Taylor { graph, k, order, lambda } => {
            let (name, g) = load_graph(graph).map_err(input_err)?;
            let lambdas = load_lambdas(lambda, Some(*k)).map_err(input_err)?;
            if lambda.random_seed.is_some() {
                if let Some(d) = g.degree_bound() {
                    if lambda.cap >= radius(d.max(1)) {
                        return Err(input_err(Error::InvalidParameter(format!(
                            "--cap {} is not below the radius 1/(4eD) = {} for the declared D = {d}",
                            lambda.cap,
                            radius(d.max(1))
                        ))));
                    }
                }
            }
            taylor(&name, &g, *k, *order, &lambdas, budget).map_err(input_err)
        }
        Command::Diagnose { family, n, k, max_len, ball_radius, lambda, format } => {
            let kind: FamilyKind = family.parse().map_err(input_err)?;
            let ns = parse_sizes(n).map_err(input_err)?;
            let lambdas = load_lambdas(lambda, Some(*k)).map_err(input_err)?;
            let config = SequenceConfig {
                family: kind,
                ns,
                k: *k,
                lambdas,
                max_len: *max_len,
                ball_radius: *ball_radius,
            };
            let report = sequence_report(&config, budget).map_err(input_err)?;
            for s in &report.skipped {
                eprintln!("skipped n = {}: {}", s.n, s.reason);
            }
            for note in &report.notes {
                eprintln!("note: {note}");
            }
            Ok(match format {
                Format::Csv => report.to_csv(),
                Format::Json => pretty(&serde_json::to_value(&report).expect("report serializes")),
            })
        }
        Command::Verify { tier, empty_test_set, test_graph, corrupt } => {
            let tier: Tier = tier.parse().map_err(input_err)?;
            let mut options = VerifyOptions::new(tier);
            options.budget = *budget;
            if *empty_test_set {
                options.test_set = Some(Vec::new());
            } else if !test_graph.is_empty() {
                let graphs = test_graph.iter().map(|s| graph_from_spec(s)).collect::<Result<Vec<_>, _>>();
                options.test_set = Some(graphs.map_err(input_err)?);
            }
            if let Some(name) = corrupt {
                if !graphlim::verify::CHECK_NAMES.contains(&name.as_str()) {
                    return Err(input_err(Error::InvalidParameter(format!(
                        "unknown check {name:?}; known checks: {}",
                        graphlim::verify::CHECK_NAMES.join(", ")
                    ))));
                }
                options.corrupt = Some(name.clone());
            }
            let report = verify_all(&options);
            for (name, secs) in &report.timings {
                eprintln!("{name:>16}  {secs:8.3} s");
            }
            let doc = report.to_json() + "\n";
            if report.passed {
                Ok(doc)
            } else {
                let msg = format!("failed checks: {}", report.failed_checks().join(", "));
                Err((Failure::Violation(msg), Some(doc)))
            }
        }
    }
}

fn gen(spec: &str) -> Outcome {
    let family: Family = spec.parse().map_err(input_err)?;
    let g = generate(&family).map_err(input_err)?;
    Ok(serialize_graph(&g))
}

fn count(
    name: &str,
    g: &SimpleGraph,
    pattern: Option<&std::path::Path>,
    target: Option<&std::path::Path>,
    pattern_l: Option<usize>,
    budget: &Budget,
) -> graphlim::Result<String> {
    if pattern.is_none() && target.is_none() && pattern_l.is_none() {
        return Err(Error::InvalidParameter("nothing to count: give --pattern, --target or --pattern-l".into()));
    }
    let mut doc = json!({
        "graph": { "name": name, "vertices": g.vertex_count(), "edges": g.edge_count() },
    });
    if let Some(path) = pattern {
        let f = parse_graph(&read(path)?)?;
        doc["pattern"] = json!({
            "vertices": f.vertex_count(),
            "edges": f.edge_count(),
            "hom": big(&hom_count(&f, g)),
            "inj": big(&inj_count(&f, g)),
            "ind": big(&ind_count(&f, g)),
        });
    }
    if let Some(path) = target {
        let h = LoadedTarget::from_json(&read(path)?)?;
        let mut t = json!({
            "k": h.real.k(),
            "soft_core": h.real.is_soft_core(),
            "t": real(t_density(g, &h.real, budget)?),
        });
        t["log_t"] = match log_t_density(g, &h.real, budget) {
            Ok(x) => real(x),
            Err(Error::HardCoreZero) => Value::Null,
            Err(e) => return Err(e),
        };
        if let Some(exact) = &h.exact {
            t["t_exact"] = json!(format_ratio(&t_density_exact(g, exact, budget)?));
        }
        doc["target"] = t;
    }
    if let Some(max_l) = pattern_l {
        let mut profiles = Vec::new();
        for l in 1..=max_l {
            let profile = i_profile(g, l, budget)?;
            let catalog = enumerate_catalog(l)?;
            let patterns: Vec<Value> = catalog
                .entries()
                .iter()
                .map(|e| json!({ "pattern": e.pattern.to_string(), "connected": e.connected, "count": profile.count(&e.pattern) }))
                .collect();
            profiles.push(json!({ "l": l, "total": profile.total(), "patterns": patterns }));
        }
        doc["profiles"] = Value::Array(profiles);
    }
    Ok(pretty(&doc))
}

fn cgf(name: &str, g: &SimpleGraph, lambdas: &[LambdaVector], budget: &Budget) -> graphlim::Result<String> {
    if lambdas.is_empty() {
        return Err(Error::InvalidParameter("give --lambda FILE or --random-seed S".into()));
    }
    let v = g.vertex_count() as f64;
    let mut values = Vec::new();
    for l in lambdas {
        let f = cgf_value(g, l, budget)?;
        let bridged = log_t_density(g, &target_from_lambda(l), budget)? / v;
        values.push(json!({ "lambda": lambda_json(l), "f": real(f), "log_t_over_v": real(bridged) }));
    }
    Ok(pretty(&json!({
        "graph": { "name": name, "vertices": g.vertex_count(), "edges": g.edge_count() },
        "values": values,
    })))
}

fn cumulant(
    name: &str,
    g: &SimpleGraph,
    k: usize,
    pairs: Option<&str>,
    pattern: Option<&str>,
    budget: &Budget,
) -> Outcome {
    let j = match (pairs, pattern) {
        (Some(p), _) => ColorPattern::from_pairs(&parse_pairs(p).map_err(input_err)?),
        (None, Some(p)) => embed_pattern(&parse_multigraph(p).map_err(input_err)?, k).map_err(input_err)?,
        (None, None) => return Err(input_err(Error::InvalidParameter("give --pairs or --pattern".into()))),
    };
    if j.edge_count() == 0 {
        return Err(input_err(Error::InvalidParameter("J needs at least one edge".into())));
    }
    let direct = kappa_gj(g, &j, k, Route::Direct, budget).map_err(input_err)?;
    let decomposed = kappa_gj(g, &j, k, Route::Decomposition, budget).map_err(input_err)?;
    let agree = direct == decomposed;
    let doc = pretty(&json!({
        "graph": { "name": name, "vertices": g.vertex_count(), "edges": g.edge_count() },
        "k": k,
        "pairs": j.pairs(),
        "direct": format_ratio(&direct),
        "decomposition": format_ratio(&decomposed),
        "agree": agree,
    }));
    if agree {
        Ok(doc)
    } else {
        Err((Failure::Violation("direct and decomposition routes disagree".into()), Some(doc)))
    }
}

fn catalog(l: usize, k: Option<usize>, verify: bool, samples: &[String], budget: &Budget) -> Outcome {
    let cat = enumerate_catalog(l).map_err(input_err)?;
    let patterns: Vec<Value> = cat
        .entries()
        .iter()
        .map(|e| {
            json!({
                "pattern": e.pattern.to_string(),
                "vertices": e.pattern.vertex_count(),
                "edges": e.pattern.edges(),
                "connected": e.connected,
            })
        })
        .collect();
    let mut doc = json!({
        "l": l,
        "size": cat.len(),
        "connected_size": cat.connected_indices().len(),
        "patterns": patterns,
    });
    let k = match (k, verify) {
        (Some(k), _) => Some(k),
        (None, true) => Some(2 * l),
        (None, false) => None,
    };
    let Some(k) = k else {
        return Ok(pretty(&doc));
    };
    let m = build_matrices(l, k, budget).map_err(input_err)?;
    doc["matrices"] = serde_json::to_value(&m).expect("matrices serialize");
    if !verify {
        return Ok(pretty(&doc));
    }
    let specs: Vec<String> = if samples.is_empty() { vec!["cycle:5".into()] } else { samples.to_vec() };
    let graphs = specs.iter().map(|s| graph_from_spec(s)).collect::<Result<Vec<_>, _>>().map_err(input_err)?;
    let report = verify_rank(&m, &graphs, budget).map_err(input_err)?;
    let find = |name: &str| report.findings.iter().find(|f| f.name == name).is_some_and(|f| f.passed);
    let summary = format!(
        "E triangular: {}; P|F_l = I: {}; rank K = {}",
        find("E zero above diagonal") && find("E diagonal nonzero"),
        find("P restricted to connected rows is I"),
        report.rank_k
    );
    eprintln!("{summary}");
    doc["summary"] = json!(summary);
    doc["report"] = serde_json::to_value(&report).expect("report serializes");
    let text = pretty(&doc);
    if report.passed() {
        Ok(text)
    } else {
        let failed: Vec<&str> = report.findings.iter().filter(|f| !f.passed).map(|f| f.name.as_str()).collect();
        Err((Failure::Violation(format!("failed: {}", failed.join(", "))), Some(text)))
    }
}

fn taylor(
    name: &str,
    g: &SimpleGraph,
    k: usize,
    order: usize,
    lambdas: &[LambdaVector],
    budget: &Budget,
) -> graphlim::Result<String> {
    let model = taylor_model(g, k, order, budget)?;
    let d = model.degree_bound();
    let v = g.vertex_count();
    let w = v + g.edge_count();
    let coefficients: Vec<Value> = model
        .terms()
        .into_iter()
        .map(|(monomial, value)| json!({ "monomial": monomial, "value": value }))
        .collect();
    let mut evaluations = Vec::new();
    for lambda in lambdas {
        let value = taylor_eval(&model, lambda);
        if value.outside_radius {
            eprintln!(
                "warning: |lambda|_inf = {} is not below 1/(4eD) = {}",
                lambda.sup_norm(),
                model.radius()
            );
        }
        let f = cgf_value(g, lambda, budget)?;
        let z = lambda.sup_norm();
        let a = if z > 0.0 { contribution_bound(&lambda.scaled(1.0 / z)) } else { 1.0 };
        let orders: Vec<Value> = (1..=order)
            .map(|m| {
                let t = model.eval_to_order(lambda, m);
                json!({
                    "order": m,
                    "value": real(t),
                    "error": real((t - f).abs()),
                    "majorant": real(tail_majorant(v, w, 2 * d, 1.0, z, m)),
                    "majorant_sharp_a": real(tail_majorant(v, w, 2 * d, a, z, m)),
                })
            })
            .collect();
        evaluations.push(json!({
            "lambda": lambda_json(lambda),
            "sup_norm": real(z),
            "outside_radius": value.outside_radius,
            "taylor": real(value.value),
            "f": real(f),
            "orders": orders,
        }));
    }
    Ok(pretty(&json!({
        "graph": { "name": name, "vertices": v, "edges": g.edge_count() },
        "k": k,
        "order": order,
        "degree_bound": d,
        "radius": real(model.radius()),
        "coefficients": coefficients,
        "evaluations": evaluations,
    })))
}
