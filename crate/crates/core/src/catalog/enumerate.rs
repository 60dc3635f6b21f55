use std::collections::{BTreeMap, BTreeSet, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{CanonicalCode, EdgeLabeledMultigraph};

/// Largest `l` accepted by [`enumerate_catalog`].
pub const MAX_CATALOG_LEN: usize = 4;

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub pattern: EdgeLabeledMultigraph,
    pub code: CanonicalCode,
    pub connected: bool,
}

/// `F*_l` with its connected sublist `F_l`.
///
/// Members are sorted by non-isolated vertex count, largest first, then by
/// canonical code. With this order `x(F, J)` vanishes above the diagonal.
#[derive(Debug, Clone, Serialize)]
pub struct Catalog {
    l: usize,
    entries: Vec<CatalogEntry>,
    connected: Vec<usize>,
    #[serde(skip)]
    index: HashMap<CanonicalCode, usize>,
}

impl Catalog {
    fn from_codes(l: usize, found: BTreeMap<CanonicalCode, EdgeLabeledMultigraph>) -> Self {
        let mut entries: Vec<CatalogEntry> = found
            .into_iter()
            .map(|(code, pattern)| CatalogEntry { connected: pattern.is_connected(), pattern, code })
            .collect();
        entries.sort_by(|a, b| {
            b.pattern
                .non_isolated_count()
                .cmp(&a.pattern.non_isolated_count())
                .then_with(|| a.code.cmp(&b.code))
        });
        let index = entries.iter().enumerate().map(|(i, e)| (e.code.clone(), i)).collect();
        let connected = (0..entries.len()).filter(|&i| entries[i].connected).collect();
        Catalog { l, entries, connected, index }
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn entries(&self) -> &[CatalogEntry] {
        &self.entries
    }

    pub fn patterns(&self) -> impl Iterator<Item = &EdgeLabeledMultigraph> {
        self.entries.iter().map(|e| &e.pattern)
    }

    /// Positions in [`Catalog::entries`] of the connected members.
    pub fn connected_indices(&self) -> &[usize] {
        &self.connected
    }

    pub fn connected_patterns(&self) -> impl Iterator<Item = &EdgeLabeledMultigraph> {
        self.connected.iter().map(|&i| &self.entries[i].pattern)
    }

    pub fn position(&self, f: &EdgeLabeledMultigraph) -> Option<usize> {
        self.position_by_code(&f.canonical_code())
    }

    pub fn position_by_code(&self, code: &CanonicalCode) -> Option<usize> {
        self.index.get(code).copied()
    }

    /// Position of `F` within the connected sublist.
    pub fn connected_position(&self, f: &EdgeLabeledMultigraph) -> Option<usize> {
        let i = self.position(f)?;
        self.connected.binary_search(&i).ok()
    }

    pub fn codes(&self) -> BTreeSet<CanonicalCode> {
        self.entries.iter().map(|e| e.code.clone()).collect()
    }
}

fn check_len(l: usize) -> Result<()> {
    if l == 0 || l > MAX_CATALOG_LEN {
        return Err(Error::InvalidParameter(format!(
            "catalog length must be in 1..={MAX_CATALOG_LEN}, got {l}"
        )));
    }
    Ok(())
}

fn insert(found: &mut BTreeMap<CanonicalCode, EdgeLabeledMultigraph>, vertices: usize, edges: &[(usize, usize)]) {
    let f = EdgeLabeledMultigraph::new(vertices, edges.to_vec()).expect("generated edges are loop-free");
    let c = f.canonical();
    found.entry(c.canonical_code()).or_insert(c);
}

/// Builds `F*_l` by placing edges one label at a time, each endpoint either an
/// existing vertex or the next fresh one.
pub fn enumerate_catalog(l: usize) -> Result<Catalog> {
    check_len(l)?;
    let mut found = BTreeMap::new();
    let mut edges = Vec::with_capacity(l);
    grow(l, 0, &mut edges, &mut found);
    Ok(Catalog::from_codes(l, found))
}

fn grow(
    l: usize,
    used: usize,
    edges: &mut Vec<(usize, usize)>,
    found: &mut BTreeMap<CanonicalCode, EdgeLabeledMultigraph>,
) {
    if edges.len() == l {
        insert(found, used, edges);
        return;
    }
    for u in 0..=used {
        let after_u = used.max(u + 1);
        for v in 0..=after_u {
            if v == u {
                continue;
            }
            edges.push((u, v));
            grow(l, after_u.max(v + 1), edges, found);
            edges.pop();
        }
    }
}

/// Builds `F*_l` a second way: for every vertex count `m <= 2l`, all maps of
/// the `l` labels to unordered pairs of `[m]` that leave no vertex isolated.
pub fn enumerate_catalog_by_vertex_count(l: usize) -> Result<Catalog> {
    check_len(l)?;
    let mut found = BTreeMap::new();
    for m in 2..=2 * l {
        let pairs: Vec<(usize, usize)> = (0..m).flat_map(|u| (u + 1..m).map(move |v| (u, v))).collect();
        let mut choice = vec![0usize; l];
        loop {
            let edges: Vec<(usize, usize)> = choice.iter().map(|&c| pairs[c]).collect();
            let mut covered = vec![false; m];
            for &(u, v) in &edges {
                covered[u] = true;
                covered[v] = true;
            }
            if covered.iter().all(|&c| c) {
                insert(&mut found, m, &edges);
            }
            let mut pos = 0;
            while pos < l {
                choice[pos] += 1;
                if choice[pos] < pairs.len() {
                    break;
                }
                choice[pos] = 0;
                pos += 1;
            }
            if pos == l {
                break;
            }
        }
    }
    Ok(Catalog::from_codes(l, found))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_sizes() {
        let c1 = enumerate_catalog(1).unwrap();
        assert_eq!((c1.len(), c1.connected_indices().len()), (1, 1));
        let c2 = enumerate_catalog(2).unwrap();
        assert_eq!((c2.len(), c2.connected_indices().len()), (3, 2));
        let shapes: Vec<String> = c2.patterns().map(|p| p.to_string()).collect();
        assert_eq!(shapes, ["4:0-1,2-3", "3:0-1,1-2", "2:0-1,0-1"]);
    }

    #[test]
    fn strategies_agree() {
        for l in 1..=4 {
            let a = enumerate_catalog(l).unwrap();
            let b = enumerate_catalog_by_vertex_count(l).unwrap();
            assert_eq!(a.codes(), b.codes(), "l = {l}");
        }
    }

    #[test]
    fn frozen_sizes() {
        let sizes: Vec<(usize, usize)> = (1..=4)
            .map(|l| {
                let c = enumerate_catalog(l).unwrap();
                (c.len(), c.connected_indices().len())
            })
            .collect();
        assert_eq!(sizes, FROZEN);
    }

    const FROZEN: [(usize, usize); 4] = [(1, 1), (3, 2), (16, 9), (139, 78)];

    #[test]
    fn members_well_formed() {
        for l in 1..=3 {
            let c = enumerate_catalog(l).unwrap();
            for (i, e) in c.entries().iter().enumerate() {
                assert_eq!(e.pattern.edge_count(), l);
                assert!(!e.pattern.has_isolated_vertices());
                assert_eq!(e.pattern.canonical(), e.pattern);
                assert_eq!(c.position(&e.pattern), Some(i));
                assert_eq!(e.connected, e.pattern.is_connected());
            }
            for w in c.entries().windows(2) {
                assert!(w[0].pattern.non_isolated_count() >= w[1].pattern.non_isolated_count());
            }
        }
    }

    #[test]
    fn out_of_range() {
        assert!(enumerate_catalog(0).is_err());
        assert!(enumerate_catalog(5).is_err());
    }
}
