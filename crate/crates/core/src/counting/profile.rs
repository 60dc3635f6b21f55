use std::collections::BTreeMap;

use crate::budget::Budget;
use crate::error::Result;
use crate::graph::{induced_pattern, CanonicalCode, EdgeLabeledMultigraph, SimpleGraph};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProfileEntry {
    /// Canonical representative of the pattern.
    pub pattern: EdgeLabeledMultigraph,
    pub count: u64,
}

/// The values `i(F, G)` for every labeled pattern `F` realized by an ordered
/// `l`-tuple of edges of `G`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternProfile {
    l: usize,
    entries: BTreeMap<CanonicalCode, ProfileEntry>,
}

impl PatternProfile {
    pub fn l(&self) -> usize {
        self.l
    }

    pub fn entries(&self) -> &BTreeMap<CanonicalCode, ProfileEntry> {
        &self.entries
    }

    /// `i(F, G)`, zero for patterns not realized.
    pub fn count(&self, f: &EdgeLabeledMultigraph) -> u64 {
        self.count_by_code(&f.canonical_code())
    }

    pub fn count_by_code(&self, code: &CanonicalCode) -> u64 {
        self.entries.get(code).map_or(0, |e| e.count)
    }

    pub fn total(&self) -> u64 {
        self.entries.values().map(|e| e.count).sum()
    }

    /// Entries whose pattern is connected.
    pub fn connected(&self) -> impl Iterator<Item = &ProfileEntry> {
        self.entries.values().filter(|e| e.pattern.is_connected())
    }
}

/// Enumerates all `m^l` ordered edge tuples of `g`, canonicalizes each induced
/// pattern and tallies them.
pub fn i_profile(g: &SimpleGraph, l: usize, budget: &Budget) -> Result<PatternProfile> {
    budget.check_tuples(g.edge_count(), l)?;
    let m = g.edge_count();
    let mut entries: BTreeMap<CanonicalCode, ProfileEntry> = BTreeMap::new();
    if m == 0 {
        return Ok(PatternProfile { l, entries });
    }
    let mut tuple = vec![0usize; l];
    loop {
        let pattern = induced_pattern(g, &tuple)?;
        let canonical = pattern.canonical();
        let code = pattern.canonical_code();
        entries
            .entry(code)
            .or_insert(ProfileEntry {
                pattern: canonical,
                count: 0,
            })
            .count += 1;
        // Odometer increment, last position fastest.
        let mut i = l;
        loop {
            if i == 0 {
                return Ok(PatternProfile { l, entries });
            }
            i -= 1;
            tuple[i] += 1;
            if tuple[i] < m {
                break;
            }
            tuple[i] = 0;
        }
    }
}
