use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::enumerate::{enumerate_catalog, Catalog};
use crate::budget::Budget;
use crate::counting::i_profile;
use crate::cumulant::{embed_pattern, enumerate_partitions, f_pi, kappa_fj, kappa_gj, x_value, ColorPattern, Route};
use crate::error::{Error, Result};
use crate::graph::SimpleGraph;
use crate::linalg::{mat_mul, mat_vec, rational_rank};
use crate::scalar::{format_ratio, ratio_matrix};

/// `E`, `P` and `K = EP` over a catalog, rows and columns in catalog order.
#[derive(Debug, Clone, Serialize)]
pub struct CoefficientMatrices {
    pub l: usize,
    pub k: usize,
    #[serde(skip)]
    pub catalog: Catalog,
    #[serde(with = "ratio_matrix")]
    pub e: Vec<Vec<BigRational>>,
    #[serde(with = "ratio_matrix")]
    pub p: Vec<Vec<BigRational>>,
    #[serde(with = "ratio_matrix")]
    pub k_matrix: Vec<Vec<BigRational>>,
    /// `kappa(F, J)` evaluated entrywise from its partition formula.
    #[serde(with = "ratio_matrix")]
    pub k_direct: Vec<Vec<BigRational>>,
}

impl CoefficientMatrices {
    /// The embedded row patterns `J`, in catalog order.
    pub fn rows(&self) -> Result<Vec<ColorPattern>> {
        self.catalog.patterns().map(|j| embed_pattern(j, self.k)).collect()
    }
}

pub fn build_matrices(l: usize, k: usize, budget: &Budget) -> Result<CoefficientMatrices> {
    if k < 2 * l {
        return Err(Error::InvalidParameter(format!("matrices need k >= 2l = {}, got k = {k}", 2 * l)));
    }
    if l > budget.max_pattern_len {
        return Err(Error::BudgetExceeded {
            what: "pattern length",
            required: l.to_string(),
            limit: budget.max_pattern_len.to_string(),
        });
    }
    let catalog = enumerate_catalog(l)?;
    let rows: Vec<Vec<(usize, usize)>> = catalog
        .patterns()
        .map(|j| embed_pattern(j, k).map(|c| c.pairs()))
        .collect::<Result<_>>()?;

    let e = rows
        .iter()
        .map(|pairs| catalog.patterns().map(|f| x_value(f, pairs, k)).collect::<Result<Vec<_>>>())
        .collect::<Result<Vec<_>>>()?;

    let cols = catalog.connected_indices();
    let mut p = vec![vec![BigRational::zero(); cols.len()]; catalog.len()];
    let partitions = enumerate_partitions(l)?;
    for (c, &fi) in cols.iter().enumerate() {
        let f = &catalog.entries()[fi].pattern;
        for pi in &partitions {
            let row = catalog
                .position(&f_pi(f, pi))
                .expect("F_pi has l labeled edges and no isolated vertices");
            p[row][c] += BigRational::from_integer(pi.mobius_weight().into());
        }
    }

    let k_matrix = mat_mul(&e, &p);
    let k_direct = rows
        .iter()
        .map(|pairs| {
            cols.iter()
                .map(|&fi| kappa_fj(&catalog.entries()[fi].pattern, pairs, k))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(CoefficientMatrices { l, k, catalog, e, p, k_matrix, k_direct })
}

/// One checked claim about the matrices.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct RankReport {
    pub l: usize,
    pub k: usize,
    pub catalog_size: usize,
    pub connected_size: usize,
    pub rank_e: usize,
    pub rank_p: usize,
    pub rank_k: usize,
    pub findings: Vec<Finding>,
}

impl RankReport {
    pub fn passed(&self) -> bool {
        self.findings.iter().all(|f| f.passed)
    }
}

fn finding(findings: &mut Vec<Finding>, name: &str, passed: bool, detail: String) {
    findings.push(Finding { name: name.to_string(), passed, detail });
}

/// Checks the structural claims: `E` triangular and invertible, `P` the
/// identity on connected rows, `K = EP` against the entrywise values, full
/// column rank of `K`, vanishing of `kappa(F, J)` for disconnected `F`, and
/// `u = K w` on each sample graph.
pub fn verify_rank(m: &CoefficientMatrices, samples: &[(String, SimpleGraph)], budget: &Budget) -> Result<RankReport> {
    let n = m.catalog.len();
    let cols = m.catalog.connected_indices();
    let mut findings = Vec::new();

    let above: Vec<(usize, usize)> = (0..n)
        .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
        .filter(|&(r, c)| !m.e[r][c].is_zero())
        .collect();
    finding(
        &mut findings,
        "E zero above diagonal",
        above.is_empty(),
        format!("{} nonzero entries above the diagonal", above.len()),
    );
    let zero_diag = (0..n).filter(|&i| m.e[i][i].is_zero()).count();
    finding(
        &mut findings,
        "E diagonal nonzero",
        zero_diag == 0,
        format!("{zero_diag} zero diagonal entries"),
    );
    // Triangularity in terms of vertex counts, independent of the order.
    let mut vertex_violations = 0;
    for (r, j) in m.catalog.patterns().enumerate() {
        for (c, f) in m.catalog.patterns().enumerate() {
            if j.non_isolated_count() > f.non_isolated_count() && !m.e[r][c].is_zero() {
                vertex_violations += 1;
            }
        }
    }
    finding(
        &mut findings,
        "x(F,J) = 0 when J has more vertices",
        vertex_violations == 0,
        format!("{vertex_violations} violations"),
    );

    let rank_e = rational_rank(&m.e);
    let rank_p = rational_rank(&m.p);
    let rank_k = rational_rank(&m.k_matrix);
    finding(&mut findings, "E invertible", rank_e == n, format!("rank {rank_e} of {n}"));
    finding(&mut findings, "P full column rank", rank_p == cols.len(), format!("rank {rank_p} of {}", cols.len()));
    finding(&mut findings, "K full column rank", rank_k == cols.len(), format!("rank {rank_k} of {}", cols.len()));

    let mut identity = true;
    for (r, &row) in cols.iter().enumerate() {
        for c in 0..cols.len() {
            let want = if r == c { BigRational::one() } else { BigRational::zero() };
            identity &= m.p[row][c] == want;
        }
    }
    finding(&mut findings, "P restricted to connected rows is I", identity, String::new());

    let mismatches = (0..n)
        .flat_map(|r| (0..cols.len()).map(move |c| (r, c)))
        .filter(|&(r, c)| m.k_matrix[r][c] != m.k_direct[r][c])
        .count();
    finding(
        &mut findings,
        "K = EP matches kappa(F,J)",
        mismatches == 0,
        format!("{mismatches} mismatched entries"),
    );

    let rows = m.rows()?;
    let mut nonzero_disconnected = 0;
    for f in m.catalog.patterns().filter(|f| !f.is_connected()) {
        for j in &rows {
            if !kappa_fj(f, &j.pairs(), m.k)?.is_zero() {
                nonzero_disconnected += 1;
            }
        }
    }
    finding(
        &mut findings,
        "kappa(F,J) = 0 for disconnected F",
        nonzero_disconnected == 0,
        format!("{nonzero_disconnected} nonzero entries"),
    );

    for (name, g) in samples {
        let profile = i_profile(g, m.l, budget)?;
        let w: Vec<BigRational> = m
            .catalog
            .connected_patterns()
            .map(|f| BigRational::from_integer(profile.count(f).into()))
            .collect();
        let kw = mat_vec(&m.k_matrix, &w);
        let u = rows
            .iter()
            .map(|j| kappa_gj(g, j, m.k, Route::Direct, budget))
            .collect::<Result<Vec<_>>>()?;
        let bad = u.iter().zip(&kw).filter(|(a, b)| a != b).count();
        let detail = if bad == 0 {
            format!("u = [{}]", u.iter().map(format_ratio).collect::<Vec<_>>().join(", "))
        } else {
            format!("{bad} mismatched entries")
        };
        finding(&mut findings, &format!("u = Kw on {name}"), bad == 0, detail);
    }

    Ok(RankReport {
        l: m.l,
        k: m.k,
        catalog_size: n,
        connected_size: cols.len(),
        rank_e,
        rank_p,
        rank_k,
        findings,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, Family};
    use crate::scalar::rational;

    #[test]
    fn single_edge() {
        let m = build_matrices(1, 2, &Budget::default()).unwrap();
        assert_eq!(m.e, vec![vec![rational(1, 2)]]);
        assert_eq!(m.p, vec![vec![rational(1, 1)]]);
        assert_eq!(m.k_matrix, vec![vec![rational(1, 2)]]);
        let r = verify_rank(&m, &[], &Budget::default()).unwrap();
        assert_eq!(r.rank_k, 1);
        assert!(r.passed());
    }

    #[test]
    fn two_edges() {
        let m = build_matrices(2, 4, &Budget::default()).unwrap();
        let c5 = generate(&Family::Cycle(5)).unwrap();
        let r = verify_rank(&m, &[("C5".into(), c5)], &Budget::default()).unwrap();
        assert_eq!((r.rank_e, r.rank_k), (3, 2));
        assert!(r.passed(), "{:#?}", r.findings);
    }

    #[test]
    fn three_edges() {
        let m = build_matrices(3, 6, &Budget::default()).unwrap();
        let r = verify_rank(&m, &[], &Budget::default()).unwrap();
        assert!(r.passed(), "{:#?}", r.findings);
        assert_eq!(r.rank_k, r.connected_size);
    }

    #[test]
    fn preconditions() {
        assert!(build_matrices(2, 3, &Budget::default()).is_err());
        let tight = Budget { max_pattern_len: 2, ..Budget::default() };
        assert!(matches!(build_matrices(3, 6, &tight), Err(Error::BudgetExceeded { .. })));
    }
}
