use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::combin::{binomial, Subsets};
use crate::family::{is_design, BlockFamily};
use crate::{Error, Result};

/// Most block types [`find_design`] accepts.
pub const MAX_DESIGN_BLOCK_TYPES: u64 = 40;

fn pair_index(a: u32, b: u32, v: u32) -> usize {
    // a < b, 1-based, lexicographic
    let (a, b, v) = (a as usize, b as usize, v as usize);
    (a - 1) * (2 * v - a) / 2 + (b - a - 1)
}

struct DesignSearch {
    v: u32,
    blocks: Vec<Vec<u32>>,
    /// Pair indices of each block.
    block_pairs: Vec<Vec<usize>>,
    /// Blocks through each pair.
    pair_blocks: Vec<Vec<usize>>,
    deficit: Vec<u64>,
    counts: Vec<u64>,
    nodes: u64,
    budget: u64,
}

impl DesignSearch {
    /// Covers the lexicographically first deficient pair; when that pair was
    /// also covered one level up, block indices must not decrease.
    fn dfs(&mut self, prev: Option<(usize, usize)>) -> core::result::Result<bool, ()> {
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let Some(pair) = self.deficit.iter().position(|&d| d > 0) else {
            return Ok(true);
        };
        let start = match prev {
            Some((p, i)) if p == pair => i,
            _ => 0,
        };
        for bi in self.pair_blocks[pair].clone() {
            if bi < start || self.block_pairs[bi].iter().any(|&q| self.deficit[q] == 0) {
                continue;
            }
            for &q in &self.block_pairs[bi] {
                self.deficit[q] -= 1;
            }
            self.counts[bi] += 1;
            if self.dfs(Some((pair, bi)))? {
                return Ok(true);
            }
            self.counts[bi] -= 1;
            for &q in &self.block_pairs[bi] {
                self.deficit[q] += 1;
            }
        }
        Ok(false)
    }
}

/// Searches for an `S_λ(2, k, v)`: a family of `k`-subsets covering every pair
/// exactly `λ` times. `Ok(None)` means none exists.
pub fn find_design(v: u32, k: u32, lambda: u64, budget: u64) -> Result<Option<BlockFamily>> {
    if !(v > k && k >= 2) {
        return Err(Error::param(format!("need v > k >= 2, got v={v}, k={k}")));
    }
    let nb = binomial(v.into(), k.into()).unwrap_or(u64::MAX);
    if nb > MAX_DESIGN_BLOCK_TYPES {
        return Err(Error::param(format!(
            "C({v},{k}) = {nb} block types beyond the search scale"
        )));
    }
    let (v64, k64) = (u64::from(v), u64::from(k));
    // replication and block-count divisibility
    if !(lambda * (v64 - 1)).is_multiple_of(k64 - 1)
        || !(lambda * v64 * (v64 - 1)).is_multiple_of(k64 * (k64 - 1))
    {
        return Ok(None);
    }
    let blocks: Vec<Vec<u32>> = Subsets::new(v, k as usize).collect();
    let npairs = (v as usize) * (v as usize - 1) / 2;
    let mut pair_blocks = vec![Vec::new(); npairs];
    let block_pairs: Vec<Vec<usize>> = blocks
        .iter()
        .enumerate()
        .map(|(bi, b)| {
            let mut ps = Vec::new();
            for i in 0..b.len() {
                for j in i + 1..b.len() {
                    let p = pair_index(b[i], b[j], v);
                    pair_blocks[p].push(bi);
                    ps.push(p);
                }
            }
            ps
        })
        .collect();
    let mut search = DesignSearch {
        v,
        deficit: vec![lambda; npairs],
        counts: vec![0; blocks.len()],
        blocks,
        block_pairs,
        pair_blocks,
        nodes: 0,
        budget,
    };
    match search.dfs(None) {
        Err(()) => Err(Error::BudgetExhausted {
            nodes: search.nodes,
            lower: 0,
            best_known: None,
        }),
        Ok(false) => Ok(None),
        Ok(true) => {
            let mut f = BlockFamily::new(search.v, k)?;
            for (b, &m) in search.blocks.iter().zip(&search.counts) {
                f.add_points(b, m)?;
            }
            if is_design(&f, 2)? != Some(lambda) {
                return Err(Error::Internal(
                    "design search returned a non-design".into(),
                ));
            }
            Ok(Some(f))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_indices_are_lexicographic() {
        let mut i = 0;
        for a in 1..=6 {
            for b in a + 1..=6 {
                assert_eq!(pair_index(a, b, 6), i);
                i += 1;
            }
        }
    }

    #[test]
    fn fano() {
        let f = find_design(7, 3, 1, 100_000).unwrap().unwrap();
        assert_eq!(f.total_blocks().unwrap(), 7);
        assert_eq!(is_design(&f, 2).unwrap(), Some(1));
    }

    #[test]
    fn small_cases() {
        let f = find_design(4, 3, 2, 1000).unwrap().unwrap();
        assert_eq!(f.distinct_blocks(), 4);
        assert!(f.iter().all(|(_, m)| m == 1));
        assert_eq!(find_design(4, 3, 1, 1000).unwrap(), None);
        // 2-(6,3,2) exists (10 blocks)
        let g = find_design(6, 3, 2, 1_000_000).unwrap().unwrap();
        assert_eq!(g.total_blocks().unwrap(), 10);
        // 2-(6,3,1) fails divisibility: r = 5/2
        assert_eq!(find_design(6, 3, 1, 1000).unwrap(), None);
        assert!(matches!(
            find_design(7, 3, 1, 2),
            Err(Error::BudgetExhausted { .. })
        ));
        assert!(find_design(9, 3, 1, 10).is_err());
    }

    #[test]
    fn complete_index_always_found() {
        for (v, k) in [
            (4u32, 2u32),
            (5, 2),
            (5, 3),
            (6, 3),
            (5, 4),
            (6, 5),
            (7, 6),
            (6, 2),
        ] {
            let lam = binomial(u64::from(v) - 2, u64::from(k) - 2).unwrap();
            let f = find_design(v, k, lam, 10_000_000).unwrap();
            assert!(f.is_some(), "v={v} k={k}");
        }
    }
}
