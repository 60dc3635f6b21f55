use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;

use crate::graph::{CanonicalCode, RootedBall, SimpleGraph};

/// Frequencies of the isomorphism types of radius-`r` balls over all roots.
#[derive(Debug, Clone, PartialEq)]
pub struct BallDistribution {
    pub radius: usize,
    pub counts: BTreeMap<CanonicalCode, usize>,
    pub vertex_count: usize,
}

impl BallDistribution {
    pub fn frequency(&self, code: &CanonicalCode) -> BigRational {
        let c = self.counts.get(code).copied().unwrap_or(0);
        BigRational::new(BigInt::from(c), BigInt::from(self.vertex_count.max(1)))
    }

    pub fn frequencies(&self) -> BTreeMap<CanonicalCode, BigRational> {
        self.counts.keys().map(|c| (c.clone(), self.frequency(c))).collect()
    }

    pub fn type_count(&self) -> usize {
        self.counts.len()
    }

    /// Same types with the same frequencies.
    pub fn same_distribution(&self, other: &BallDistribution) -> bool {
        self.frequencies() == other.frequencies()
    }
}

pub fn ball_distribution(g: &SimpleGraph, radius: usize) -> BallDistribution {
    let mut counts = BTreeMap::new();
    for v in 0..g.vertex_count() {
        let code = RootedBall::around(g, v, radius).canonical_code();
        *counts.entry(code).or_insert(0) += 1;
    }
    BallDistribution {
        radius,
        counts,
        vertex_count: g.vertex_count(),
    }
}
