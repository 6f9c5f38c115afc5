//! Block families and the frequency verifier.
//!
//! Everything in the crate funnels through [`BlockFamily`]: constructions
//! emit one, and [`frequencies`](BlockFamily::frequencies) is the single
//! place where the t-subset frequencies are computed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::combin::{self, Pascal, Subsets};
use crate::{Error, Result};

/// Frequency tables larger than this are refused.
pub const MAX_TABLE_LEN: u64 = 1 << 26;

/// A ground set of `v` points labelled `1..=v`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet(u32);

impl GroundSet {
    /// `v` must be at least 1.
    pub fn new(v: u32) -> Result<Self> {
        if v == 0 {
            return Err(Error::param("ground set must have at least one point"));
        }
        Ok(GroundSet(v))
    }

    /// Number of points.
    pub fn size(self) -> u32 {
        self.0
    }
}

/// A set of points, stored ascending.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Block(Vec<u32>);

impl Block {
    /// Validates that `points` is strictly increasing inside `[1, v]`.
    pub fn new(points: Vec<u32>, v: u32) -> Result<Self> {
        if points.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::param(format!(
                "block points must be strictly increasing: {points:?}"
            )));
        }
        if let (Some(&lo), Some(&hi)) = (points.first(), points.last()) {
            if lo == 0 || hi > v {
                return Err(Error::param(format!("block {points:?} leaves [1, {v}]")));
            }
        }
        Ok(Block(points))
    }

    /// Sorts and validates.
    pub fn from_unsorted(mut points: Vec<u32>, v: u32) -> Result<Self> {
        points.sort_unstable();
        Block::new(points, v)
    }

    /// The points, ascending.
    pub fn points(&self) -> &[u32] {
        &self.0
    }

    /// Block size.
    pub fn len(&self) -> usize {
        self.0.len()
    }

    /// True for the empty block.
    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// True if every point of `subset` (ascending) lies in the block.
    pub fn contains_all(&self, subset: &[u32]) -> bool {
        let mut it = self.0.iter();
        subset.iter().all(|p| it.any(|q| q == p))
    }
}

impl fmt::Display for Block {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

/// A multiset of `k`-subsets of `[1, v]`, kept canonical: sorted keys and no
/// zero multiplicities.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BlockFamily {
    v: u32,
    k: u32,
    entries: BTreeMap<Block, u64>,
}

impl BlockFamily {
    /// The empty family of `k`-subsets of `[1, v]`.
    pub fn new(v: u32, k: u32) -> Result<Self> {
        GroundSet::new(v)?;
        if k > v {
            return Err(Error::param(format!("block size {k} exceeds v = {v}")));
        }
        Ok(BlockFamily {
            v,
            k,
            entries: BTreeMap::new(),
        })
    }

    /// Number of points.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// Block size.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Adds `mult` copies of `block`.
    pub fn add(&mut self, block: Block, mult: u64) -> Result<()> {
        if block.len() != self.k as usize {
            return Err(Error::param(format!(
                "block {block} has size {}, expected {}",
                block.len(),
                self.k
            )));
        }
        if block.points().last().is_some_and(|&p| p > self.v) {
            return Err(Error::param(format!(
                "block {block} leaves [1, {}]",
                self.v
            )));
        }
        if mult == 0 {
            return Ok(());
        }
        let slot = self.entries.entry(block).or_insert(0);
        *slot = slot
            .checked_add(mult)
            .ok_or(Error::Overflow("block multiplicity"))?;
        Ok(())
    }

    /// Adds `mult` copies of the block with the given (unsorted) points.
    pub fn add_points(&mut self, points: &[u32], mult: u64) -> Result<()> {
        self.add(Block::from_unsorted(points.to_vec(), self.v)?, mult)
    }

    /// Multiplicity of `block` (zero if absent).
    pub fn multiplicity(&self, block: &Block) -> u64 {
        self.entries.get(block).copied().unwrap_or(0)
    }

    /// Block types with their multiplicities, ascending.
    pub fn iter(&self) -> impl Iterator<Item = (&Block, u64)> + '_ {
        self.entries.iter().map(|(b, &m)| (b, m))
    }

    /// Number of distinct block types.
    pub fn distinct_blocks(&self) -> usize {
        self.entries.len()
    }

    /// True when no block is present.
    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Total number of blocks `b`, counted with multiplicity.
    pub fn total_blocks(&self) -> Result<u64> {
        self.entries.values().try_fold(0u64, |acc, &m| {
            acc.checked_add(m)
                .ok_or(Error::Overflow("total block count"))
        })
    }

    /// Every multiplicity multiplied by `c`.
    pub fn scaled(&self, c: u64) -> Result<Self> {
        let mut out = BlockFamily::new(self.v, self.k)?;
        for (b, m) in self.iter() {
            let m = m
                .checked_mul(c)
                .ok_or(Error::Overflow("scaled multiplicity"))?;
            out.add(b.clone(), m)?;
        }
        Ok(out)
    }

    /// Adds every block of `other` (same `k`, points must fit in `[1, v]`), each `times` times.
    pub fn absorb(&mut self, other: &BlockFamily, times: u64) -> Result<()> {
        for (b, m) in other.iter() {
            let m = m
                .checked_mul(times)
                .ok_or(Error::Overflow("absorbed multiplicity"))?;
            self.add(b.clone(), m)?;
        }
        Ok(())
    }

    /// Maps point `x` to `labels[x - 1]` and places the result on `new_v` points.
    pub fn relabel(&self, labels: &[u32], new_v: u32) -> Result<Self> {
        if labels.len() != self.v as usize {
            return Err(Error::param("relabelling must name every point"));
        }
        let mut out = BlockFamily::new(new_v, self.k)?;
        for (b, m) in self.iter() {
            let pts: Vec<u32> = b.points().iter().map(|&p| labels[p as usize - 1]).collect();
            out.add(Block::from_unsorted(pts, new_v)?, m)?;
        }
        Ok(out)
    }

    /// Frequency of every `t`-subset, in lexicographic order of the subsets.
    pub fn frequencies(&self, t: u32) -> Result<FrequencyTable> {
        if t > self.k {
            return Err(Error::param(format!("t = {t} exceeds k = {}", self.k)));
        }
        let len = combin::binomial(self.v.into(), t.into())
            .filter(|&n| n <= MAX_TABLE_LEN)
            .ok_or_else(|| Error::SizeExceeded(format!("C({}, {t}) t-subsets", self.v)))?;
        let pascal = Pascal::new(self.v as usize + 1, t as usize + 1);
        let mut freqs = alloc::vec![0u64; len as usize];
        for (block, m) in self.iter() {
            let mut overflow = false;
            combin::for_each_subset(block.points(), t as usize, |sub| {
                let slot = &mut freqs[combin::lex_rank(sub, self.v, &pascal)];
                match slot.checked_add(m) {
                    Some(x) => *slot = x,
                    None => overflow = true,
                }
            });
            if overflow {
                return Err(Error::Overflow("t-subset frequency"));
            }
        }
        Ok(FrequencyTable {
            v: self.v,
            t,
            freqs,
        })
    }
}

/// Frequencies of all `t`-subsets of `[1, v]`, stored in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyTable {
    v: u32,
    t: u32,
    freqs: Vec<u64>,
}

impl FrequencyTable {
    /// Number of points.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// Subset size.
    pub fn t(&self) -> u32 {
        self.t
    }

    /// Frequencies in lexicographic subset order.
    pub fn values(&self) -> &[u64] {
        &self.freqs
    }

    /// Frequency of the ascending `t`-subset `subset`.
    pub fn get(&self, subset: &[u32]) -> Option<u64> {
        if subset.len() != self.t as usize
            || subset.windows(2).any(|w| w[0] >= w[1])
            || subset.first().is_some_and(|&p| p == 0)
            || subset.last().is_some_and(|&p| p > self.v)
        {
            return None;
        }
        let pascal = Pascal::new(self.v as usize + 1, self.t as usize + 1);
        Some(self.freqs[combin::lex_rank(subset, self.v, &pascal)])
    }

    /// `(subset, frequency)` pairs in lexicographic order.
    pub fn iter(&self) -> impl Iterator<Item = (Vec<u32>, u64)> + '_ {
        Subsets::new(self.v, self.t as usize).zip(self.freqs.iter().copied())
    }

    /// Largest frequency (zero for an empty table).
    pub fn max(&self) -> u64 {
        self.freqs.iter().copied().max().unwrap_or(0)
    }

    /// Lexicographically least pair of subsets sharing a frequency, as indices.
    fn least_collision(&self) -> Option<(usize, usize)> {
        let mut order: Vec<usize> = (0..self.freqs.len()).collect();
        order.sort_unstable_by_key(|&i| (self.freqs[i], i));
        order
            .windows(2)
            .filter(|w| self.freqs[w[0]] == self.freqs[w[1]])
            .map(|w| (w[0], w[1]))
            .min()
    }

    /// Adesign verdict for this table.
    pub fn verdict(&self) -> Verdict {
        match self.least_collision() {
            None => Verdict::Adesign {
                max_frequency: self.max(),
            },
            Some((i, j)) => {
                let nth = |n: usize| Subsets::new(self.v, self.t as usize).nth(n).unwrap();
                Verdict::Collision {
                    first: nth(i),
                    second: nth(j),
                    frequency: self.freqs[i],
                }
            }
        }
    }

    /// Common frequency if the table is constant.
    pub fn design_index(&self) -> Option<u64> {
        let first = *self.freqs.first()?;
        self.freqs.iter().all(|&f| f == first).then_some(first)
    }
}

/// Outcome of the adesign test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Verdict {
    /// All frequencies distinct.
    Adesign {
        /// Largest frequency.
        max_frequency: u64,
    },
    /// Lexicographically least pair of t-subsets with equal frequency.
    Collision {
        /// Smaller subset.
        first: Vec<u32>,
        /// Larger subset.
        second: Vec<u32>,
        /// The shared frequency.
        frequency: u64,
    },
}

impl Verdict {
    /// Max frequency when the verdict is affirmative.
    pub fn max_frequency(&self) -> Option<u64> {
        match self {
            Verdict::Adesign { max_frequency } => Some(*max_frequency),
            Verdict::Collision { .. } => None,
        }
    }

    /// True for [`Verdict::Adesign`].
    pub fn is_adesign(&self) -> bool {
        matches!(self, Verdict::Adesign { .. })
    }
}

/// Checks that every `t`-subset has a distinct frequency.
pub fn is_adesign(family: &BlockFamily, t: u32) -> Result<Verdict> {
    Ok(family.frequencies(t)?.verdict())
}

/// Returns the index `λ` if every `t`-subset has frequency `λ`.
pub fn is_design(family: &BlockFamily, t: u32) -> Result<Option<u64>> {
    Ok(family.frequencies(t)?.design_index())
}

/// The `i`-th `k`-subset in lexicographic order gets multiplicity `2^i`.
pub fn powers_of_two_family(v: u32, k: u32) -> Result<BlockFamily> {
    if !(v > k && k >= 1) {
        return Err(Error::param(format!("need v > k >= 1, got v={v}, k={k}")));
    }
    let count = combin::binomial(v.into(), k.into()).unwrap_or(u64::MAX);
    if count > 63 {
        return Err(Error::param(format!(
            "C({v}, {k}) = {count} block types exceed the 63 available powers of two"
        )));
    }
    let mut family = BlockFamily::new(v, k)?;
    for (i, pts) in Subsets::new(v, k as usize).enumerate() {
        family.add(Block(pts), 1u64 << i)?;
    }
    Ok(family)
}
