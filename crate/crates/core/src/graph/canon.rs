use std::fmt;

use serde::{Serialize, Serializer};

/// Opaque canonical byte string: equal codes exactly when the encoded objects
/// are isomorphic.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct CanonicalCode(Vec<u8>);

impl CanonicalCode {
    pub(crate) fn from_words(words: impl IntoIterator<Item = usize>) -> Self {
        let mut bytes = Vec::new();
        for w in words {
            let w = u16::try_from(w).expect("canonical code word exceeds u16");
            bytes.extend_from_slice(&w.to_be_bytes());
        }
        CanonicalCode(bytes)
    }

    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        self.0.iter().map(|b| format!("{b:02x}")).collect()
    }
}

impl fmt::Display for CanonicalCode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl Serialize for CanonicalCode {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

/// Canonical code of a vertex-colored simple graph, invariant under any
/// color-preserving relabeling.
///
/// Individualization-refinement: equitable color refinement, then branching
/// on every vertex of the first non-singleton cell, keeping the smallest leaf
/// certificate. No automorphism pruning; intended for graphs of a few dozen
/// vertices at most.
pub fn canonical_colored(adj: &[Vec<usize>], colors: &[usize]) -> CanonicalCode {
    let n = adj.len();
    assert_eq!(colors.len(), n);
    let initial = rank(colors.iter().map(|&c| (c, Vec::new())).collect());
    let mut best: Option<Vec<usize>> = None;
    search(adj, colors, initial, &mut best);
    CanonicalCode::from_words(best.unwrap_or_else(|| vec![0]))
}

fn rank(keys: Vec<(usize, Vec<usize>)>) -> Vec<usize> {
    let mut sorted = keys.clone();
    sorted.sort();
    sorted.dedup();
    keys.iter()
        .map(|k| sorted.binary_search(k).unwrap())
        .collect()
}

fn refine(adj: &[Vec<usize>], mut cells: Vec<usize>) -> Vec<usize> {
    let mut count = distinct(&cells);
    loop {
        let keys = (0..adj.len())
            .map(|v| {
                let mut nb: Vec<usize> = adj[v].iter().map(|&w| cells[w]).collect();
                nb.sort_unstable();
                (cells[v], nb)
            })
            .collect();
        let next = rank(keys);
        let next_count = distinct(&next);
        cells = next;
        if next_count == count {
            return cells;
        }
        count = next_count;
    }
}

fn distinct(cells: &[usize]) -> usize {
    cells.iter().max().map_or(0, |m| m + 1)
}

fn search(adj: &[Vec<usize>], colors: &[usize], cells: Vec<usize>, best: &mut Option<Vec<usize>>) {
    let n = adj.len();
    let cells = refine(adj, cells);
    if distinct(&cells) == n {
        let cert = certificate(adj, colors, &cells);
        if best.as_ref().is_none_or(|b| cert < *b) {
            *best = Some(cert);
        }
        return;
    }
    let mut size = vec![0usize; n];
    for &c in &cells {
        size[c] += 1;
    }
    let target = (0..n).find(|&c| size[c] > 1).unwrap();
    for v in (0..n).filter(|&v| cells[v] == target) {
        let split = (0..n)
            .map(|u| (2 * cells[u] + usize::from(u != v), Vec::new()))
            .collect();
        search(adj, colors, rank(split), best);
    }
}

fn certificate(adj: &[Vec<usize>], colors: &[usize], labels: &[usize]) -> Vec<usize> {
    let n = adj.len();
    let mut by_label = vec![0; n];
    for v in 0..n {
        by_label[labels[v]] = v;
    }
    let mut edges = Vec::new();
    for u in 0..n {
        for &w in &adj[u] {
            if u < w {
                let (a, b) = (labels[u], labels[w]);
                edges.push((a.min(b), a.max(b)));
            }
        }
    }
    edges.sort_unstable();
    let mut cert = vec![n, edges.len()];
    cert.extend(by_label.iter().map(|&v| colors[v]));
    for (a, b) in edges {
        cert.push(a);
        cert.push(b);
    }
    cert
}
