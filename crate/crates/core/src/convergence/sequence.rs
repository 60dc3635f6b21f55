use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use super::taylor::radius;
use crate::budget::Budget;
use crate::catalog::enumerate_catalog;
use crate::counting::{ball_distribution, i_profile, ind_count, inj_count, BallDistribution};
use crate::cumulant::{cgf_value, LambdaVector};
use crate::error::{Error, Result};
use crate::graph::{generate, CanonicalCode, EdgeLabeledMultigraph, FamilyKind, SimpleGraph};
use crate::scalar::{format_ratio, ratio_to_f64};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Exact(BigRational),
    Real(f64),
    Missing,
}

impl Cell {
    fn minus(&self, prev: &Cell) -> Cell {
        match (self, prev) {
            (Cell::Exact(a), Cell::Exact(b)) => Cell::Exact(a - b),
            (Cell::Real(a), Cell::Real(b)) => Cell::Real(a - b),
            _ => Cell::Missing,
        }
    }

    fn abs_f64(&self) -> Option<f64> {
        match self {
            Cell::Exact(a) => Some(ratio_to_f64(&a.abs())),
            Cell::Real(a) => Some(a.abs()),
            Cell::Missing => None,
        }
    }

    fn text(&self) -> String {
        match self {
            Cell::Exact(a) => format_ratio(a),
            Cell::Real(a) => format!("{a:?}"),
            Cell::Missing => String::new(),
        }
    }
}

impl Serialize for Cell {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self {
            Cell::Exact(a) => s.serialize_str(&format_ratio(a)),
            Cell::Real(a) => s.serialize_f64(*a),
            Cell::Missing => s.serialize_none(),
        }
    }
}

struct Cells<'a>(&'a [Cell]);

impl Serialize for Cells<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut seq = s.serialize_seq(Some(self.0.len()))?;
        for c in self.0 {
            seq.serialize_element(c)?;
        }
        seq.end()
    }
}

fn serialize_cells<S: Serializer>(cells: &[Cell], s: S) -> std::result::Result<S::Ok, S::Error> {
    Cells(cells).serialize(s)
}

#[derive(Debug, Clone, Serialize)]
pub struct SequenceRow {
    pub n: usize,
    pub vertex_count: usize,
    #[serde(serialize_with = "serialize_cells")]
    pub cells: Vec<Cell>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SkippedRow {
    pub n: usize,
    pub reason: String,
}

#[derive(Debug, Clone)]
pub struct SequenceConfig {
    pub family: FamilyKind,
    pub ns: Vec<usize>,
    pub k: usize,
    pub lambdas: Vec<LambdaVector>,
    /// Largest pattern length `L`.
    pub max_len: usize,
    /// Ball distributions are summarized for radii `1..=ball_radius`.
    pub ball_radius: usize,
}

/// Finite-prefix evidence for left and right convergence along a family.
///
/// Columns, in order: `i(F)/v` for every `F` in `F_l`, `l <= L`; `ind(F)/v`
/// and `inj(F)/v` for every connected simple `F` with at most `L` edges;
/// `f(lambda_s)` per sample; per radius the number of ball types and the total
/// variation distance to the previous row's ball distribution.
#[derive(Debug, Clone, Serialize)]
pub struct SequenceReport {
    pub family: String,
    pub k: usize,
    pub columns: Vec<String>,
    pub rows: Vec<SequenceRow>,
    /// `differences[i]` is row `i + 1` minus row `i`.
    pub differences: Vec<SequenceRow>,
    /// Least-squares slope of `|difference|` against `1/n`, per column.
    pub slopes: Vec<Option<f64>>,
    pub skipped: Vec<SkippedRow>,
    pub notes: Vec<String>,
}

impl SequenceReport {
    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }

    pub fn to_csv(&self) -> String {
        let mut out = String::from("n,v");
        for c in &self.columns {
            out.push(',');
            out.push_str(&csv_field(c));
        }
        out.push('\n');
        for row in &self.rows {
            write!(out, "{},{}", row.n, row.vertex_count).unwrap();
            for c in &row.cells {
                out.push(',');
                out.push_str(&c.text());
            }
            out.push('\n');
        }
        out
    }
}

fn csv_field(s: &str) -> String {
    if s.contains([',', '"']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

fn simple_patterns(max_len: usize) -> Result<(Vec<EdgeLabeledMultigraph>, Vec<(String, SimpleGraph)>)> {
    let mut labeled = Vec::new();
    let mut simple: BTreeMap<CanonicalCode, (String, SimpleGraph)> = BTreeMap::new();
    for l in 1..=max_len {
        let catalog = enumerate_catalog(l)?;
        for f in catalog.connected_patterns() {
            labeled.push(f.clone());
            if !f.has_parallel_edges() {
                let s = f.simple_reduction();
                simple.entry(s.canonical_code()).or_insert_with(|| (f.to_string(), s));
            }
        }
    }
    let mut simple: Vec<(String, SimpleGraph)> = simple.into_values().collect();
    simple.sort_by_key(|(_, s)| (s.edge_count(), s.vertex_count()));
    Ok((labeled, simple))
}

fn total_variation(a: &BallDistribution, b: &BallDistribution) -> BigRational {
    let fa = a.frequencies();
    let fb = b.frequencies();
    let mut sum = BigRational::zero();
    for code in fa.keys().chain(fb.keys().filter(|c| !fa.contains_key(*c))) {
        let x = fa.get(code).cloned().unwrap_or_else(BigRational::zero);
        let y = fb.get(code).cloned().unwrap_or_else(BigRational::zero);
        sum += (x - y).abs();
    }
    sum / BigRational::from_integer(BigInt::from(2))
}

pub fn sequence_report(config: &SequenceConfig, budget: &Budget) -> Result<SequenceReport> {
    if config.max_len == 0 {
        return Err(Error::InvalidParameter("pattern length L must be at least 1".into()));
    }
    if let Some(l) = config.lambdas.iter().find(|l| l.k != config.k) {
        return Err(Error::InvalidParameter(format!("lambda has k = {} but k = {} was requested", l.k, config.k)));
    }
    let (labeled, simple) = simple_patterns(config.max_len)?;
    let mut columns: Vec<String> = labeled.iter().map(|f| format!("i({f})/v")).collect();
    for (name, _) in &simple {
        columns.push(format!("ind({name})/v"));
    }
    for (name, _) in &simple {
        columns.push(format!("inj({name})/v"));
    }
    for s in 0..config.lambdas.len() {
        columns.push(format!("f(lambda_{s})"));
    }
    for r in 1..=config.ball_radius {
        columns.push(format!("ball_types(r={r})"));
        columns.push(format!("ball_tv(r={r})"));
    }

    let mut ns = config.ns.clone();
    ns.sort_unstable();
    ns.dedup();
    let mut rows = Vec::new();
    let mut skipped = Vec::new();
    let mut notes = Vec::new();
    let mut prev_balls: Option<Vec<BallDistribution>> = None;
    for n in ns {
        let g = match generate(&config.family.instance(n)) {
            Ok(g) => g,
            Err(e) => {
                skipped.push(SkippedRow { n, reason: e.to_string() });
                continue;
            }
        };
        let v = g.vertex_count();
        let d = g.effective_degree_bound().max(1);
        if let Some(s) = config.lambdas.iter().position(|l| l.sup_norm() >= radius(d)) {
            return Err(Error::InvalidParameter(format!(
                "lambda_{s} has sup norm {} >= 1/(4eD) = {} for D = {d}",
                config.lambdas[s].sup_norm(),
                radius(d)
            )));
        }
        let per_v = |x: BigRational| Cell::Exact(x / BigRational::from_integer(BigInt::from(v)));
        let mut cells = Vec::with_capacity(columns.len());
        let mut failed = None;
        for l in 1..=config.max_len {
            match i_profile(&g, l, budget) {
                Ok(profile) => {
                    for f in labeled.iter().filter(|f| f.edge_count() == l) {
                        cells.push(per_v(BigRational::from_integer(profile.count(f).into())));
                    }
                }
                Err(e) => {
                    failed = Some(e);
                    break;
                }
            }
        }
        if let Some(e) = failed {
            skipped.push(SkippedRow { n, reason: e.to_string() });
            continue;
        }
        for (_, f) in &simple {
            cells.push(per_v(BigRational::from_integer(BigInt::from(ind_count(f, &g)))));
        }
        for (_, f) in &simple {
            cells.push(per_v(BigRational::from_integer(BigInt::from(inj_count(f, &g)))));
        }
        for (s, lambda) in config.lambdas.iter().enumerate() {
            match cgf_value(&g, lambda, budget) {
                Ok(f) => cells.push(Cell::Real(f)),
                Err(e) => {
                    notes.push(format!("n = {n}: f(lambda_{s}) not computed: {e}"));
                    cells.push(Cell::Missing);
                }
            }
        }
        let balls: Vec<BallDistribution> = (1..=config.ball_radius).map(|r| ball_distribution(&g, r)).collect();
        for (r, b) in balls.iter().enumerate() {
            cells.push(Cell::Exact(BigRational::from_integer(BigInt::from(b.type_count()))));
            cells.push(match &prev_balls {
                Some(prev) => Cell::Exact(total_variation(&prev[r], b)),
                None => Cell::Missing,
            });
        }
        prev_balls = Some(balls);
        rows.push(SequenceRow { n, vertex_count: v, cells });
    }

    let differences: Vec<SequenceRow> = rows
        .windows(2)
        .map(|w| SequenceRow {
            n: w[1].n,
            vertex_count: w[1].vertex_count,
            cells: w[1].cells.iter().zip(&w[0].cells).map(|(a, b)| a.minus(b)).collect(),
        })
        .collect();
    let slopes = (0..columns.len())
        .map(|c| {
            let pts: Vec<(f64, f64)> = differences
                .iter()
                .filter_map(|d| d.cells[c].abs_f64().map(|y| (1.0 / d.n as f64, y)))
                .collect();
            least_squares_slope(&pts)
        })
        .collect();

    Ok(SequenceReport {
        family: config.family.to_string(),
        k: config.k,
        columns,
        rows,
        differences,
        slopes,
        skipped,
        notes,
    })
}

fn least_squares_slope(pts: &[(f64, f64)]) -> Option<f64> {
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}
