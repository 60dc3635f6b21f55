use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One coordinate of `R^{k+k^2}`: a color `i` or an ordered color pair `(i, j)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Coordinate {
    Vertex(usize),
    Edge(usize, usize),
}

/// The statistic a coordinate reads: `X_{ij}` and `X_{ji}` are the same
/// random variable, so edge coordinates collapse to unordered pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub enum Statistic {
    /// Number of vertices of color `i`.
    Vertex(usize),
    /// Number of edges with endpoint colors `{i, j}`, `i <= j`.
    Pair(usize, usize),
}

impl Coordinate {
    pub fn statistic(self) -> Statistic {
        match self {
            Coordinate::Vertex(i) => Statistic::Vertex(i),
            Coordinate::Edge(i, j) => Statistic::Pair(i.min(j), i.max(j)),
        }
    }

    /// Position in the flat `k + k^2` layout (vertex part first, then the
    /// edge part row by row).
    pub fn index(self, k: usize) -> usize {
        match self {
            Coordinate::Vertex(i) => i,
            Coordinate::Edge(i, j) => k + i * k + j,
        }
    }

    pub fn all(k: usize) -> Vec<Coordinate> {
        (0..k)
            .map(Coordinate::Vertex)
            .chain((0..k).flat_map(|i| (0..k).map(move |j| Coordinate::Edge(i, j))))
            .collect()
    }

    pub fn edges(k: usize) -> Vec<Coordinate> {
        (0..k).flat_map(|i| (0..k).map(move |j| Coordinate::Edge(i, j))).collect()
    }
}

impl Statistic {
    /// Index into the statistic vector of length `k + k(k+1)/2`.
    pub fn index(self, k: usize) -> usize {
        match self {
            Statistic::Vertex(i) => i,
            Statistic::Pair(i, j) => k + i * k - i * i.saturating_sub(1) / 2 + (j - i),
        }
    }

    pub fn all(k: usize) -> Vec<Statistic> {
        (0..k)
            .map(Statistic::Vertex)
            .chain((0..k).flat_map(|i| (i..k).map(move |j| Statistic::Pair(i, j))))
            .collect()
    }

    pub fn count(k: usize) -> usize {
        k + k * (k + 1) / 2
    }
}

/// A point `lambda` in `R^{k+k^2}`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LambdaVector {
    pub k: usize,
    pub vertex: Vec<f64>,
    pub edge: Vec<Vec<f64>>,
}

impl LambdaVector {
    pub fn new(k: usize, vertex: Vec<f64>, edge: Vec<Vec<f64>>) -> Result<Self> {
        let v = LambdaVector { k, vertex, edge };
        v.validate()?;
        Ok(v)
    }

    pub fn zeros(k: usize) -> Self {
        LambdaVector {
            k,
            vertex: vec![0.0; k],
            edge: vec![vec![0.0; k]; k],
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let v: LambdaVector = serde_json::from_str(text)?;
        v.validate()?;
        Ok(v)
    }

    fn validate(&self) -> Result<()> {
        if self.k == 0 {
            return Err(Error::InvalidParameter("lambda needs k >= 1".into()));
        }
        if self.vertex.len() != self.k || self.edge.len() != self.k || self.edge.iter().any(|r| r.len() != self.k) {
            return Err(Error::InvalidParameter(format!(
                "lambda must have {} vertex entries and a {}x{} edge matrix",
                self.k, self.k, self.k
            )));
        }
        if self.iter().any(|x| !x.is_finite()) {
            return Err(Error::InvalidParameter("lambda entries must be finite".into()));
        }
        Ok(())
    }

    pub fn get(&self, c: Coordinate) -> f64 {
        match c {
            Coordinate::Vertex(i) => self.vertex[i],
            Coordinate::Edge(i, j) => self.edge[i][j],
        }
    }

    pub fn set(&mut self, c: Coordinate, value: f64) {
        match c {
            Coordinate::Vertex(i) => self.vertex[i] = value,
            Coordinate::Edge(i, j) => self.edge[i][j] = value,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = f64> + '_ {
        self.vertex.iter().chain(self.edge.iter().flatten()).copied()
    }

    pub fn sup_norm(&self) -> f64 {
        self.iter().fold(0.0, |m, x| m.max(x.abs()))
    }

    pub fn scaled(&self, s: f64) -> LambdaVector {
        LambdaVector {
            k: self.k,
            vertex: self.vertex.iter().map(|x| x * s).collect(),
            edge: self.edge.iter().map(|r| r.iter().map(|x| x * s).collect()).collect(),
        }
    }

    /// The exponent weight carried by each statistic: `lambda_i` for vertex
    /// counts, `lambda_ij + lambda_ji` for cross pairs and `lambda_ii` for
    /// same-color pairs.
    pub fn statistic_weights(&self) -> Vec<f64> {
        Statistic::all(self.k)
            .into_iter()
            .map(|s| match s {
                Statistic::Vertex(i) => self.vertex[i],
                Statistic::Pair(i, j) if i == j => self.edge[i][i],
                Statistic::Pair(i, j) => self.edge[i][j] + self.edge[j][i],
            })
            .collect()
    }

    /// Uniform in `[-cap, cap]^{k+k^2}`.
    pub fn random<R: Rng>(k: usize, cap: f64, rng: &mut R) -> Self {
        let mut v = LambdaVector::zeros(k);
        for c in Coordinate::all(k) {
            v.set(c, rng.gen_range(-cap..=cap));
        }
        v
    }

    /// Uniform in the cube, then one random coordinate pushed to `+-norm`,
    /// so the sup norm is exactly `norm`.
    pub fn random_with_norm<R: Rng>(k: usize, norm: f64, rng: &mut R) -> Self {
        let mut v = LambdaVector::random(k, norm, rng);
        let coords = Coordinate::all(k);
        let c = coords[rng.gen_range(0..coords.len())];
        v.set(c, if rng.gen_bool(0.5) { norm } else { -norm });
        v
    }

    /// Random `+-1` entries.
    pub fn random_signs<R: Rng>(k: usize, rng: &mut R) -> Self {
        let mut v = LambdaVector::zeros(k);
        for c in Coordinate::all(k) {
            v.set(c, if rng.gen_bool(0.5) { 1.0 } else { -1.0 });
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn statistic_indices_are_dense() {
        for k in 1..6 {
            let idx: Vec<usize> = Statistic::all(k).iter().map(|s| s.index(k)).collect();
            assert_eq!(idx, (0..Statistic::count(k)).collect::<Vec<_>>());
        }
        let idx: Vec<usize> = Coordinate::all(3).iter().map(|c| c.index(3)).collect();
        assert_eq!(idx, (0..12).collect::<Vec<_>>());
    }

    #[test]
    fn norms_and_json() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let v = LambdaVector::random_with_norm(3, 0.03, &mut rng);
        assert_eq!(v.sup_norm(), 0.03);
        let parsed = LambdaVector::from_json(r#"{"k":2,"vertex":[0,0],"edge":[[1,0],[0,0]]}"#).unwrap();
        assert_eq!(parsed.get(Coordinate::Edge(0, 0)), 1.0);
        assert!(LambdaVector::from_json(r#"{"k":2,"vertex":[0],"edge":[[1,0],[0,0]]}"#).is_err());
    }

    #[test]
    fn weights_symmetrize() {
        let mut v = LambdaVector::zeros(2);
        v.set(Coordinate::Edge(0, 1), 0.25);
        v.set(Coordinate::Edge(1, 0), 0.5);
        v.set(Coordinate::Edge(1, 1), 2.0);
        assert_eq!(v.statistic_weights(), vec![0.0, 0.0, 0.0, 0.75, 2.0]);
    }
}
