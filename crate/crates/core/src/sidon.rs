//! Sidon (B_r) sequences: verification, greedy and Bose–Chowla generators,
//! and an exact backtracking oracle for the largest B_r subset of `[1, n]`.
//!
//! Sums are taken over r-multisets, i.e. with repetition allowed.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::combin;
use crate::field::{self, Field};
use crate::{Error, Result};

/// Upper bound on the number of r-multisets `is_bsequence` will enumerate.
pub const MAX_MULTISETS: u64 = 10_000_000;

/// A verified B_r set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SidonSet {
    elements: Vec<u64>,
    order: u32,
    modulus: Option<u64>,
}

impl SidonSet {
    /// Verifies and wraps `elements`.
    pub fn new(elements: Vec<u64>, order: u32, modulus: Option<u64>) -> Result<Self> {
        match is_bsequence(&elements, order, modulus)? {
            BVerdict::Yes => Ok(SidonSet {
                elements,
                order,
                modulus,
            }),
            BVerdict::No { sum, .. } => Err(Error::param(format!(
                "not a B_{order} set: two multisets share the sum {sum}"
            ))),
        }
    }

    /// Elements, ascending.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    /// Order `r`.
    pub fn order(&self) -> u32 {
        self.order
    }

    /// Modulus when the property holds modulo `n`.
    pub fn modulus(&self) -> Option<u64> {
        self.modulus
    }

    /// Number of elements.
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    /// True for the empty set.
    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    /// The `n` smallest elements. Subsets of a B_r set are B_r sets.
    pub fn truncated(&self, n: usize) -> SidonSet {
        SidonSet {
            elements: self.elements[..n.min(self.len())].to_vec(),
            order: self.order,
            modulus: self.modulus,
        }
    }
}

/// Result of the B_r test.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum BVerdict {
    /// All r-multiset sums are distinct.
    Yes,
    /// The lexicographically least pair of r-multisets with equal sums.
    No {
        /// Smaller multiset (as nondecreasing elements).
        first: Vec<u64>,
        /// Larger multiset.
        second: Vec<u64>,
        /// The shared sum, reduced by the modulus when one is given.
        sum: u64,
    },
}

/// Calls `f` on every r-multiset of `elements` in lexicographic order.
fn for_each_multiset(elements: &[u64], r: usize, mut f: impl FnMut(&[usize])) {
    let n = elements.len();
    if n == 0 {
        return;
    }
    let mut idx = vec![0usize; r];
    loop {
        f(&idx);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] + 1 < n {
                idx[i] += 1;
                let x = idx[i];
                idx[i + 1..].iter_mut().for_each(|s| *s = x);
                break;
            }
        }
    }
}

/// Tests the B_r property: all sums of `r` elements (with repetition) distinct,
/// modulo `modulus` when given.
pub fn is_bsequence(elements: &[u64], r: u32, modulus: Option<u64>) -> Result<BVerdict> {
    if r < 2 {
        return Err(Error::param("order r must be at least 2"));
    }
    if elements.windows(2).any(|w| w[0] >= w[1]) || elements.first() == Some(&0) {
        return Err(Error::param(
            "elements must be strictly increasing positive integers",
        ));
    }
    if modulus == Some(0) {
        return Err(Error::param("modulus must be positive"));
    }
    let n = elements.len() as u64;
    let count = combin::binomial(n + u64::from(r) - 1, r.into()).unwrap_or(u64::MAX);
    if count > MAX_MULTISETS {
        return Err(Error::TooLarge(format!(
            "{count} multisets of size {r} exceed the enumeration bound"
        )));
    }
    let max = elements.last().copied().unwrap_or(0);
    let sum_of = |idx: &[usize]| -> u64 {
        let s = idx
            .iter()
            .fold(0u128, |acc, &i| acc + u128::from(elements[i]));
        match modulus {
            Some(m) => (s % u128::from(m)) as u64,
            None => s as u64,
        }
    };
    if max.checked_mul(r.into()).is_none() {
        return Err(Error::Overflow("r-fold sum"));
    }
    let range = modulus.unwrap_or(max * u64::from(r) + 1);

    // pass 1: count sums
    let mut dense = (range <= 1 << 24).then(|| vec![0u8; range as usize]);
    let mut sparse: BTreeMap<u64, u8> = BTreeMap::new();
    let mut collided = false;
    for_each_multiset(elements, r as usize, |idx| {
        let s = sum_of(idx);
        let slot = match dense.as_mut() {
            Some(d) => &mut d[s as usize],
            None => sparse.entry(s).or_insert(0),
        };
        *slot = slot.saturating_add(1);
        collided |= *slot > 1;
    });
    if !collided {
        return Ok(BVerdict::Yes);
    }
    let shared = |s: u64| match dense.as_ref() {
        Some(d) => d[s as usize] > 1,
        None => sparse.get(&s).is_some_and(|&c| c > 1),
    };

    // pass 2: least multiset with a shared sum, then its least partner
    let mut first: Option<(Vec<usize>, u64)> = None;
    let mut second: Option<Vec<usize>> = None;
    for_each_multiset(elements, r as usize, |idx| {
        if second.is_some() {
            return;
        }
        let s = sum_of(idx);
        match &first {
            None if shared(s) => first = Some((idx.to_vec(), s)),
            Some((_, fs)) if *fs == s => second = Some(idx.to_vec()),
            _ => {}
        }
    });
    let (a, sum) = first.ok_or_else(|| Error::Internal("collision vanished".into()))?;
    let b = second.ok_or_else(|| Error::Internal("collision partner vanished".into()))?;
    let pick = |idx: Vec<usize>| idx.into_iter().map(|i| elements[i]).collect();
    Ok(BVerdict::No {
        first: pick(a),
        second: pick(b),
        sum,
    })
}

/// Bitset of h-fold sums for h = 0..=r, used to extend a B_r set incrementally.
#[derive(Debug, Clone)]
struct SumSets {
    r: usize,
    words: usize,
    /// `levels[h]` holds all sums of h-multisets.
    levels: Vec<Vec<u64>>,
}

impl SumSets {
    fn new(r: usize, max_sum: u64) -> Self {
        let words = (max_sum as usize + 64) / 64;
        let mut levels = vec![vec![0u64; words]; r + 1];
        levels[0][0] = 1;
        SumSets { r, words, levels }
    }

    fn get(level: &[u64], i: u64) -> bool {
        level[(i / 64) as usize] >> (i % 64) & 1 == 1
    }

    fn set(level: &mut [u64], i: u64) {
        level[(i / 64) as usize] |= 1 << (i % 64);
    }

    /// Adds `c` if the set stays B_r; returns whether it was added.
    fn try_add(&mut self, c: u64) -> bool {
        let bits = self.words as u64 * 64;
        // new r-sums: j copies of c plus an (r-j)-sum of the old set
        let mut fresh = vec![0u64; self.words];
        for j in 1..=self.r {
            let base = c * j as u64;
            for s in 0..bits {
                if Self::get(&self.levels[self.r - j], s) {
                    let t = s + base;
                    if t >= bits || Self::get(&self.levels[self.r], t) || Self::get(&fresh, t) {
                        return false;
                    }
                    Self::set(&mut fresh, t);
                }
            }
        }
        for h in (1..=self.r).rev() {
            let mut next = self.levels[h].clone();
            for j in 1..=h {
                let base = c * j as u64;
                for s in 0..bits {
                    if Self::get(&self.levels[h - j], s) && s + base < bits {
                        Self::set(&mut next, s + base);
                    }
                }
            }
            self.levels[h] = next;
        }
        true
    }
}

/// Greedy B_r sequence: start at 1 and keep appending the least integer that
/// preserves the property.
pub fn greedy_bsequence(r: u32, count: usize) -> Result<SidonSet> {
    if r < 2 || count == 0 {
        return Err(Error::param("need r >= 2 and count >= 1"));
    }
    let mut elements: Vec<u64> = Vec::with_capacity(count);
    // sums stay below r * (largest element); grow the bitset when needed
    let mut cap = 64u64;
    let mut sums = SumSets::new(r as usize, cap * u64::from(r));
    let mut c = 1u64;
    while elements.len() < count {
        if c * u64::from(r) >= cap * u64::from(r) {
            cap *= 2;
            sums = SumSets::new(r as usize, cap * u64::from(r));
            for &e in &elements {
                if !sums.try_add(e) {
                    return Err(Error::Internal(
                        "greedy prefix lost the B_r property".into(),
                    ));
                }
            }
        }
        if sums.try_add(c) {
            elements.push(c);
        }
        c += 1;
    }
    SidonSet::new(elements, r, None)
}

/// Bose–Chowla: `{ a in [1, q^r - 1] : θ^a - θ ∈ GF(q) }` in GF(q^r); a B_r set
/// of size `q` modulo `q^r - 1`.
pub fn bose_chowla(q: u64, r: u32) -> Result<SidonSet> {
    if r < 2 {
        return Err(Error::param("order r must be at least 2"));
    }
    let (p, e) = field::prime_power(q).ok_or(Error::NotPrimePower(q))?;
    let m = e
        .checked_mul(r)
        .ok_or(Error::Overflow("extension degree"))?;
    if q.checked_pow(r).is_none_or(|n| n > field::MAX_ORDER) {
        return Err(Error::SizeExceeded(format!("{q}^{r} exceeds 2^20")));
    }
    let gf = Field::new(p, m)?;
    let theta = gf.primitive();
    let group = gf.order() - 1;
    let mut elements = Vec::with_capacity(q as usize);
    for a in 1..=group {
        if gf.in_subfield(gf.sub(gf.theta_pow(a), theta), q)? {
            elements.push(a);
        }
    }
    if elements.len() as u64 != q {
        return Err(Error::Internal(format!(
            "Bose–Chowla produced {} elements, expected {q}",
            elements.len()
        )));
    }
    SidonSet::new(elements, r, Some(group))
}

/// Exact `F_r(n)`: the size of a largest B_r subset of `[1, n]`, with a witness.
///
/// Backtracking in increasing element order. A set whose remaining elements
/// lie in an interval of length `L` can gain at most `F_r(L)` more, so the
/// values for shorter intervals are computed first and used as bounds.
pub fn max_bsequence_size_exact(n: u64, r: u32) -> Result<(usize, SidonSet)> {
    let limit = match r {
        2 => 60,
        3 => 30,
        _ => {
            return Err(Error::TooLarge(format!(
                "exact search supports r = 2, 3 (got {r})"
            )))
        }
    };
    if n == 0 || n > limit {
        return Err(Error::TooLarge(format!(
            "exact B_{r} search supports 1 <= n <= {limit}"
        )));
    }
    // best[len] = F_r(len) for intervals of len integers; all sums stay below 128
    let mut best = vec![0usize; n as usize + 1];
    let mut witness = Vec::new();
    for len in 1..=n {
        let mut search = Exact {
            n: len,
            r: r as usize,
            bound: &best,
            best: best[len as usize - 1],
            best_set: Vec::new(),
            current: Vec::new(),
        };
        // translation invariance: some optimum contains 1
        let mut levels = [0u128; 4];
        levels[0] = 1;
        let levels = Exact::try_add(&levels, r as usize, 1).unwrap();
        search.current.push(1);
        search.extend(2, &levels);
        let (size, found) = (search.best, search.best_set);
        if !found.is_empty() {
            witness = found;
        }
        best[len as usize] = size;
    }
    let size = best[n as usize];
    Ok((size, SidonSet::new(witness, r, None)?))
}

struct Exact<'a> {
    n: u64,
    r: usize,
    bound: &'a [usize],
    best: usize,
    best_set: Vec<u64>,
    current: Vec<u64>,
}

impl Exact<'_> {
    /// `levels[h]` is the bitset of h-fold sums; returns the updated sets if
    /// `c` keeps the B_r property.
    fn try_add(levels: &[u128; 4], r: usize, c: u64) -> Option<[u128; 4]> {
        let mut fresh = 0u128;
        for j in 1..=r {
            let shifted = levels[r - j] << (j as u64 * c);
            if shifted & (fresh | levels[r]) != 0 {
                return None;
            }
            fresh |= shifted;
        }
        let mut next = *levels;
        for h in 1..=r {
            for j in 1..=h {
                next[h] |= levels[h - j] << (j as u64 * c);
            }
        }
        Some(next)
    }

    fn extend(&mut self, from: u64, levels: &[u128; 4]) {
        if self.current.len() > self.best {
            self.best = self.current.len();
            self.best_set = self.current.clone();
        }
        for c in from..=self.n {
            // elements left live in [c, n]
            if self.current.len() + self.bound[(self.n - c + 1) as usize] <= self.best {
                return;
            }
            if let Some(next) = Self::try_add(levels, self.r, c) {
                self.current.push(c);
                self.extend(c + 1, &next);
                self.current.pop();
            }
        }
    }
}
