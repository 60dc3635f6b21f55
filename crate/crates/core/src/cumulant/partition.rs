use crate::error::{Error, Result};

pub const MAX_PARTITION_SIZE: usize = 8;

/// A set partition of `{0, .., l-1}`. Blocks are sorted, and ordered by their
/// smallest element.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SetPartition {
    blocks: Vec<Vec<usize>>,
}

impl SetPartition {
    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// The partition-lattice Mobius weight `(|pi|-1)! (-1)^{|pi|-1}`.
    pub fn mobius_weight(&self) -> i64 {
        let b = self.blocks.len() as i64;
        let fact: i64 = (1..b).product();
        if b % 2 == 1 {
            fact
        } else {
            -fact
        }
    }

    fn from_growth_string(rgs: &[usize]) -> Self {
        let count = rgs.iter().max().map_or(0, |m| m + 1);
        let mut blocks = vec![Vec::new(); count];
        for (i, &b) in rgs.iter().enumerate() {
            blocks[b].push(i);
        }
        SetPartition { blocks }
    }
}

/// All `Bell(l)` partitions of `{0, .., l-1}`, in lexicographic order of their
/// restricted growth strings.
pub fn enumerate_partitions(l: usize) -> Result<Vec<SetPartition>> {
    if l > MAX_PARTITION_SIZE {
        return Err(Error::InvalidParameter(format!(
            "partitions enumerated for l <= {MAX_PARTITION_SIZE}, got {l}"
        )));
    }
    let mut out = Vec::new();
    let mut rgs = vec![0usize; l];
    if l == 0 {
        out.push(SetPartition { blocks: Vec::new() });
        return Ok(out);
    }
    fn grow(rgs: &mut Vec<usize>, i: usize, max: usize, out: &mut Vec<SetPartition>) {
        if i == rgs.len() {
            out.push(SetPartition::from_growth_string(rgs));
            return;
        }
        for b in 0..=max + 1 {
            rgs[i] = b;
            grow(rgs, i + 1, max.max(b), out);
        }
    }
    grow(&mut rgs, 1, 0, &mut out);
    Ok(out)
}

pub fn bell_number(l: usize) -> u64 {
    // Bell triangle.
    let mut row = vec![1u64];
    for _ in 0..l {
        let mut next = vec![*row.last().unwrap()];
        for &x in &row {
            let last = *next.last().unwrap();
            next.push(last + x);
        }
        row = next;
    }
    row[0]
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::collections::HashSet;

    #[test]
    fn bell_counts() {
        let expected = [1, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (l, &b) in expected.iter().enumerate() {
            assert_eq!(bell_number(l), b);
            assert_eq!(enumerate_partitions(l).unwrap().len() as u64, b);
        }
        assert!(enumerate_partitions(9).is_err());
    }

    #[test]
    fn partitions_are_distinct_exact_covers() {
        for l in 1..=6 {
            let all = enumerate_partitions(l).unwrap();
            let unique: HashSet<_> = all.iter().cloned().collect();
            assert_eq!(unique.len(), all.len());
            for p in &all {
                let mut elems: Vec<usize> = p.blocks().concat();
                elems.sort_unstable();
                assert_eq!(elems, (0..l).collect::<Vec<_>>());
                assert!(p.blocks().iter().all(|b| !b.is_empty()));
            }
        }
    }

    #[test]
    fn weights() {
        let all = enumerate_partitions(3).unwrap();
        let w: Vec<i64> = all.iter().map(SetPartition::mobius_weight).collect();
        // {012}, {01|2}, {02|1}, {0|12}, {0|1|2}
        assert_eq!(w, vec![1, -1, -1, -1, 2]);
        // The weights sum to zero for l >= 2 (cumulant of a constant vanishes).
        for l in 2..=7 {
            let s: i64 = enumerate_partitions(l).unwrap().iter().map(|p| p.mobius_weight()).sum();
            assert_eq!(s, 0);
        }
    }
}
