//! Hard enumeration caps. Exceeding one is an error, never a silent
//! truncation.

use crate::error::{Error, Result};

pub const BUDGET_ENV: &str = "GRAPHLIM_BUDGET";

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Budget {
    /// Cap on `log2(k^n)` for exhaustive coloring enumeration.
    pub coloring_bits: f64,
    /// Cap on `m^l` ordered edge tuples.
    pub max_tuples: u64,
    /// Largest supported tuple length `l`.
    pub max_pattern_len: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            coloring_bits: 24.0,
            max_tuples: 1 << 24,
            max_pattern_len: 4,
        }
    }
}

impl Budget {
    /// Defaults overridden by `GRAPHLIM_BUDGET`, e.g.
    /// `coloring_bits=26,tuples=100000000,pattern_len=4`.
    pub fn from_env() -> Result<Self> {
        match std::env::var(BUDGET_ENV) {
            Ok(spec) => Budget::default().with_overrides(&spec),
            Err(_) => Ok(Budget::default()),
        }
    }

    pub fn with_overrides(mut self, spec: &str) -> Result<Self> {
        for item in spec.split(',').map(str::trim).filter(|s| !s.is_empty()) {
            let bad = || Error::InvalidParameter(format!("bad {BUDGET_ENV} entry {item:?}"));
            let (key, value) = item.split_once('=').ok_or_else(bad)?;
            match key.trim() {
                "coloring_bits" => self.coloring_bits = value.trim().parse().map_err(|_| bad())?,
                "tuples" => self.max_tuples = value.trim().parse().map_err(|_| bad())?,
                "pattern_len" => self.max_pattern_len = value.trim().parse().map_err(|_| bad())?,
                _ => return Err(bad()),
            }
        }
        if !(self.coloring_bits > 0.0) || self.max_tuples == 0 || self.max_pattern_len == 0 {
            return Err(Error::InvalidParameter("budgets must be positive".into()));
        }
        Ok(self)
    }

    pub fn check_colorings(&self, vertices: usize, k: usize) -> Result<()> {
        let bits = vertices as f64 * (k.max(1) as f64).log2();
        if bits > self.coloring_bits + 1e-9 {
            return Err(Error::BudgetExceeded {
                what: "coloring",
                required: format!("{k}^{vertices} ({bits:.1} bits)"),
                limit: format!("{} bits", self.coloring_bits),
            });
        }
        Ok(())
    }

    pub fn check_tuples(&self, edges: usize, l: usize) -> Result<u64> {
        if l == 0 || l > self.max_pattern_len {
            return Err(Error::InvalidParameter(format!(
                "tuple length l must be in 1..={}, got {l}",
                self.max_pattern_len
            )));
        }
        let total = (edges as u64).checked_pow(l as u32).filter(|&t| t <= self.max_tuples);
        total.ok_or_else(|| Error::BudgetExceeded {
            what: "edge-tuple",
            required: format!("{edges}^{l}"),
            limit: self.max_tuples.to_string(),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn overrides_parse() {
        let b = Budget::default().with_overrides("coloring_bits=30, tuples=5").unwrap();
        assert_eq!(b.coloring_bits, 30.0);
        assert_eq!(b.max_tuples, 5);
        assert!(Budget::default().with_overrides("nope=1").is_err());
        assert!(Budget::default().with_overrides("tuples=0").is_err());
    }

    #[test]
    fn caps_enforced() {
        let b = Budget::default();
        assert!(b.check_colorings(24, 2).is_ok());
        assert!(b.check_colorings(25, 2).is_err());
        assert!(b.check_colorings(12, 4).is_ok());
        assert_eq!(b.check_tuples(10, 3).unwrap(), 1000);
        assert!(b.check_tuples(10, 0).is_err());
        assert!(b.check_tuples(10, 5).is_err());
        assert!(b.check_tuples(1 << 13, 2).is_err());
    }
}
