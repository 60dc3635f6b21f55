use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::SimpleGraph;
use crate::error::{Error, Result};

pub const MAX_REGULAR_RETRIES: usize = 1000;

/// A concrete bounded-degree test graph.
///
/// Textual form: `cycle:N`, `path:N`, `torus:AxB`, `complete:N`,
/// `regular:N:D:SEED`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Family {
    Cycle(usize),
    Path(usize),
    Torus(usize, usize),
    Complete(usize),
    RandomRegular { n: usize, d: usize, seed: u64 },
}

/// A family with its size parameter left open, used for graph sequences.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FamilyKind {
    Cycle,
    Path,
    /// Square `n x n` torus.
    Torus,
    Complete,
    RandomRegular { d: usize, seed: u64 },
}

impl FamilyKind {
    pub fn instance(self, n: usize) -> Family {
        match self {
            FamilyKind::Cycle => Family::Cycle(n),
            FamilyKind::Path => Family::Path(n),
            FamilyKind::Torus => Family::Torus(n, n),
            FamilyKind::Complete => Family::Complete(n),
            FamilyKind::RandomRegular { d, seed } => Family::RandomRegular { n, d, seed },
        }
    }
}

impl FromStr for FamilyKind {
    type Err = Error;

    /// `cycle`, `path`, `torus`, `complete`, `regular:D:SEED`.
    fn from_str(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.trim().split(':').collect();
        let bad = || Error::InvalidParameter(format!("unknown family kind {s:?}"));
        match parts.as_slice() {
            ["cycle"] => Ok(FamilyKind::Cycle),
            ["path"] => Ok(FamilyKind::Path),
            ["torus"] => Ok(FamilyKind::Torus),
            ["complete"] => Ok(FamilyKind::Complete),
            ["regular", d, seed] => Ok(FamilyKind::RandomRegular {
                d: d.parse().map_err(|_| bad())?,
                seed: seed.parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for FamilyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FamilyKind::Cycle => f.write_str("cycle"),
            FamilyKind::Path => f.write_str("path"),
            FamilyKind::Torus => f.write_str("torus"),
            FamilyKind::Complete => f.write_str("complete"),
            FamilyKind::RandomRegular { d, seed } => write!(f, "regular:{d}:{seed}"),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let bad = || Error::InvalidParameter(format!("cannot parse graph family {s:?}"));
        let num = |x: &str| x.trim().parse::<usize>().map_err(|_| bad());
        let parts: Vec<&str> = s.trim().split(':').collect();
        match parts.as_slice() {
            ["cycle", n] => Ok(Family::Cycle(num(n)?)),
            ["path", n] => Ok(Family::Path(num(n)?)),
            ["complete", n] => Ok(Family::Complete(num(n)?)),
            ["torus", dims] => {
                let (a, b) = dims.split_once('x').ok_or_else(bad)?;
                Ok(Family::Torus(num(a)?, num(b)?))
            }
            ["regular", n, d, seed] => Ok(Family::RandomRegular {
                n: num(n)?,
                d: num(d)?,
                seed: seed.trim().parse().map_err(|_| bad())?,
            }),
            _ => Err(bad()),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Torus(a, b) => write!(f, "torus:{a}x{b}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::RandomRegular { n, d, seed } => write!(f, "regular:{n}:{d}:{seed}"),
        }
    }
}

/// Builds the requested graph with its degree bound declared. Deterministic
/// for fixed parameters (and seed).
pub fn generate(family: &Family) -> Result<SimpleGraph> {
    let invalid = |msg: String| Err(Error::InvalidParameter(msg));
    match *family {
        Family::Cycle(n) => {
            if n < 3 {
                return invalid(format!("cycle needs n >= 3, got {n}"));
            }
            SimpleGraph::new(n, (0..n).map(|i| (i, (i + 1) % n)))?.with_degree_bound(2)
        }
        Family::Path(n) => {
            if n == 0 {
                return invalid("path needs n >= 1".into());
            }
            SimpleGraph::new(n, (1..n).map(|i| (i - 1, i)))?.with_degree_bound(2)
        }
        Family::Torus(a, b) => {
            if a < 3 || b < 3 {
                return invalid(format!("torus needs both sides >= 3, got {a}x{b}"));
            }
            let id = |i: usize, j: usize| (i % a) * b + (j % b);
            let edges = (0..a).flat_map(|i| (0..b).flat_map(move |j| [(id(i, j), id(i + 1, j)), (id(i, j), id(i, j + 1))]));
            SimpleGraph::new(a * b, edges)?.with_degree_bound(4)
        }
        Family::Complete(n) => {
            if n == 0 {
                return invalid("complete graph needs n >= 1".into());
            }
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            SimpleGraph::new(n, edges)?.with_degree_bound((n - 1).max(1))
        }
        Family::RandomRegular { n, d, seed } => random_regular(n, d, seed),
    }
}

/// Configuration model: pair up `n*d` half-edges uniformly at random and
/// reject pairings with loops or multi-edges.
fn random_regular(n: usize, d: usize, seed: u64) -> Result<SimpleGraph> {
    if d >= n || (n * d) % 2 != 0 {
        return Err(Error::InvalidParameter(format!(
            "random regular graph needs d < n and n*d even, got n={n}, d={d}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    for _ in 0..MAX_REGULAR_RETRIES {
        points.shuffle(&mut rng);
        let mut edges: Vec<(usize, usize)> = points
            .chunks_exact(2)
            .map(|c| (c[0].min(c[1]), c[0].max(c[1])))
            .collect();
        if edges.iter().any(|&(u, v)| u == v) {
            continue;
        }
        edges.sort_unstable();
        if edges.windows(2).any(|w| w[0] == w[1]) {
            continue;
        }
        return SimpleGraph::new(n, edges)?.with_degree_bound(d.max(1));
    }
    Err(Error::GenerationFailed {
        retries: MAX_REGULAR_RETRIES,
    })
}
