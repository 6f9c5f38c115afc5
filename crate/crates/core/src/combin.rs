//! Binomial coefficients and lexicographic subset enumeration.

use alloc::vec;
use alloc::vec::Vec;

/// `C(n, r)`, or `None` if it does not fit in a `u64`.
pub fn binomial(n: u64, r: u64) -> Option<u64> {
    if r > n {
        return Some(0);
    }
    let r = r.min(n - r);
    let mut acc: u128 = 1;
    for i in 0..r {
        // exact at every step: acc * (n - i) is divisible by (i + 1)
        acc = acc * u128::from(n - i) / u128::from(i + 1);
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// `C(n, r)` as a float, for the asymptotic formulas.
pub fn binomial_f64(n: u64, r: u64) -> f64 {
    if r > n {
        return 0.0;
    }
    let r = r.min(n - r);
    (0..r).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

/// Pascal triangle rows `0..=n`, columns `0..=r`, saturating at `u64::MAX`.
#[derive(Debug, Clone)]
pub struct Pascal {
    cols: usize,
    table: Vec<u64>,
}

impl Pascal {
    /// Builds the table.
    pub fn new(n: usize, r: usize) -> Self {
        let cols = r + 1;
        let mut table = vec![0u64; (n + 1) * cols];
        for i in 0..=n {
            table[i * cols] = 1;
            for j in 1..=r.min(i) {
                let a = table[(i - 1) * cols + j - 1];
                let b = if j < i { table[(i - 1) * cols + j] } else { 0 };
                table[i * cols + j] = a.saturating_add(b);
            }
        }
        Pascal { cols, table }
    }

    /// `C(n, r)`; zero when `r > n`.
    #[inline]
    pub fn get(&self, n: usize, r: usize) -> u64 {
        if r >= self.cols {
            return 0;
        }
        self.table[n * self.cols + r]
    }
}

/// Rank of a `t`-subset of `[1, v]` (ascending points) in lexicographic order.
///
/// Uses the hockey-stick identity: the subsets skipped while the `i`-th point
/// runs from `a[i-1] + 1` to `a[i] - 1` number `C(v - a[i-1], s) - C(v - a[i] + 1, s)`,
/// with `s` the count of points still to place.
pub fn lex_rank(points: &[u32], v: u32, pascal: &Pascal) -> usize {
    let t = points.len();
    let mut rank = 0u64;
    let mut prev = 0u32;
    for (i, &a) in points.iter().enumerate() {
        let s = t - i;
        rank += pascal.get((v - prev) as usize, s) - pascal.get((v - a + 1) as usize, s);
        prev = a;
    }
    rank as usize
}

/// Lexicographic iterator over the `r`-subsets of `[1, n]`.
#[derive(Debug, Clone)]
pub struct Subsets {
    n: u32,
    cur: Vec<u32>,
    done: bool,
}

impl Subsets {
    /// All `r`-subsets of `[1, n]`, smallest first.
    pub fn new(n: u32, r: usize) -> Self {
        Subsets {
            n,
            cur: (1..=r as u32).collect(),
            done: r as u64 > u64::from(n),
        }
    }
}

impl Iterator for Subsets {
    type Item = Vec<u32>;

    fn next(&mut self) -> Option<Vec<u32>> {
        if self.done {
            return None;
        }
        let out = self.cur.clone();
        let r = self.cur.len();
        let mut i = r;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.cur[i] < self.n - (r - 1 - i) as u32 {
                self.cur[i] += 1;
                for j in i + 1..r {
                    self.cur[j] = self.cur[j - 1] + 1;
                }
                break;
            }
        }
        Some(out)
    }
}

/// Calls `f` on every `r`-subset of `items` (as a slice of chosen elements), lexicographically.
pub fn for_each_subset<T: Copy>(items: &[T], r: usize, mut f: impl FnMut(&[T])) {
    if r > items.len() {
        return;
    }
    let mut idx: Vec<usize> = (0..r).collect();
    let mut buf: Vec<T> = idx.iter().map(|&i| items[i]).collect();
    let n = items.len();
    loop {
        f(&buf);
        let mut i = r;
        loop {
            if i == 0 {
                return;
            }
            i -= 1;
            if idx[i] < n - (r - i) {
                idx[i] += 1;
                buf[i] = items[idx[i]];
                for j in i + 1..r {
                    idx[j] = idx[j - 1] + 1;
                    buf[j] = items[idx[j]];
                }
                break;
            }
        }
    }
}
