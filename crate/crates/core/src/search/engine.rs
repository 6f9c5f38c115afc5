//! Backtracking search for nonnegative integer variables such that given
//! sums of them are pairwise distinct and at most `cap`.
//!
//! Both μ(t,k,v) (variables: block multiplicities, sums: t-subset
//! frequencies) and the anti-magic cube (variables: cells, sums: lines) are
//! instances. Pruning:
//! * a partial sum never exceeds `cap`;
//! * a completed sum must be unused;
//! * the still-open sums must be injectively assignable to unused values in
//!   their feasible intervals (checked by a sweep with a min-heap of deadlines);
//! * optional symmetry-breaking: one sum pinned to `cap`, and ordering
//!   constraints `sum(a) > sum(b)`.

use alloc::collections::BinaryHeap;
use alloc::vec;
use alloc::vec::Vec;
use core::cmp::Reverse;

/// Problem description.
#[derive(Debug, Clone)]
pub struct DistinctSums {
    vars: usize,
    sums: Vec<Vec<usize>>,
    /// Sums containing each variable.
    var_sums: Vec<Vec<usize>>,
    /// Sums whose last variable is this one.
    closes: Vec<Vec<usize>>,
    pinned: Option<usize>,
    greater: Vec<(usize, usize)>,
}

/// How a bounded search ended.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    /// Variable values meeting every constraint.
    Found(Vec<u64>),
    /// Exhaustive search found nothing.
    Infeasible,
    /// Node budget ran out.
    Exhausted,
}

impl DistinctSums {
    /// `sums[j]` lists the variables (indices below `vars`) in sum `j`.
    pub fn new(vars: usize, sums: Vec<Vec<usize>>) -> Self {
        let mut var_sums = vec![Vec::new(); vars];
        let mut closes = vec![Vec::new(); vars];
        for (j, s) in sums.iter().enumerate() {
            for &x in s {
                var_sums[x].push(j);
            }
            if let Some(&last) = s.iter().max() {
                closes[last].push(j);
            }
        }
        DistinctSums {
            vars,
            sums,
            var_sums,
            closes,
            pinned: None,
            greater: Vec::new(),
        }
    }

    /// Requires sum `j` to equal the cap.
    pub fn pin_to_cap(mut self, j: usize) -> Self {
        self.pinned = Some(j);
        self
    }

    /// Requires `sum(a) > sum(b)`.
    pub fn require_greater(mut self, a: usize, b: usize) -> Self {
        self.greater.push((a, b));
        self
    }

    /// Number of sums.
    pub fn sum_count(&self) -> usize {
        self.sums.len()
    }

    /// Searches for an assignment with all sums distinct and `≤ cap`, spending
    /// at most `budget` nodes. `nodes` is incremented by the nodes used.
    pub fn solve(&self, cap: u64, budget: u64, nodes: &mut u64) -> Outcome {
        if self.sums.iter().any(|s| s.is_empty()) {
            // an empty sum is 0 from the start; only one may exist
            let empties = self.sums.iter().filter(|s| s.is_empty()).count();
            if empties > 1
                || self
                    .pinned
                    .is_some_and(|j| self.sums[j].is_empty() && cap != 0)
            {
                return Outcome::Infeasible;
            }
        }
        let mut state = State {
            partial: vec![0; self.sums.len()],
            done: self.sums.iter().map(|s| s.is_empty()).collect(),
            used: vec![false; cap as usize + 1],
            values: vec![0; self.vars],
            nodes: 0,
            budget,
            cap,
            exhausted: false,
        };
        if let Some(j) = self.pinned {
            state.used[cap as usize] = true;
            if state.done[j] && cap != 0 {
                return Outcome::Infeasible;
            }
        }
        for j in 0..self.sums.len() {
            if state.done[j] && Some(j) != self.pinned {
                if state.used[0] {
                    return Outcome::Infeasible;
                }
                state.used[0] = true;
            }
        }
        let found = self.dfs(0, &mut state);
        *nodes += state.nodes;
        if found {
            Outcome::Found(state.values)
        } else if state.exhausted {
            Outcome::Exhausted
        } else {
            Outcome::Infeasible
        }
    }

    fn dfs(&self, var: usize, st: &mut State) -> bool {
        st.nodes += 1;
        if st.nodes > st.budget {
            st.exhausted = true;
            return false;
        }
        if var == self.vars {
            return true;
        }
        let headroom = self.var_sums[var]
            .iter()
            .map(|&j| st.cap - st.partial[j])
            .min()
            .unwrap_or(0);
        for value in 0..=headroom {
            st.values[var] = value;
            for &j in &self.var_sums[var] {
                st.partial[j] += value;
            }
            let mut ok = true;
            let mut closed = 0;
            for &j in &self.closes[var] {
                if !self.close(j, st) {
                    ok = false;
                    break;
                }
                closed += 1;
            }
            if ok && self.feasible(st) && self.dfs(var + 1, st) {
                return true;
            }
            for &j in self.closes[var][..closed].iter().rev() {
                self.reopen(j, st);
            }
            for &j in &self.var_sums[var] {
                st.partial[j] -= value;
            }
            if st.exhausted {
                return false;
            }
        }
        st.values[var] = 0;
        false
    }

    fn close(&self, j: usize, st: &mut State) -> bool {
        let s = st.partial[j];
        if Some(j) == self.pinned {
            if s != st.cap {
                return false;
            }
        } else if st.used[s as usize] {
            return false;
        }
        for &(a, b) in &self.greater {
            if a == j && st.done[b] && st.partial[b] >= s {
                return false;
            }
            if b == j && st.done[a] && st.partial[a] <= s {
                return false;
            }
        }
        st.done[j] = true;
        if Some(j) != self.pinned {
            st.used[s as usize] = true;
        }
        true
    }

    fn reopen(&self, j: usize, st: &mut State) {
        st.done[j] = false;
        if Some(j) != self.pinned {
            st.used[st.partial[j] as usize] = false;
        }
    }

    /// Can every open sum still receive its own unused value?
    fn feasible(&self, st: &State) -> bool {
        let cap = st.cap;
        let mut upper: Vec<u64> = vec![cap; self.sums.len()];
        for &(a, b) in &self.greater {
            if st.done[a] && !st.done[b] {
                if st.partial[a] == 0 {
                    return false;
                }
                upper[b] = upper[b].min(st.partial[a] - 1);
            }
        }
        let mut open: Vec<(u64, u64)> = (0..self.sums.len())
            .filter(|&j| !st.done[j] && Some(j) != self.pinned)
            .map(|j| (st.partial[j], upper[j]))
            .collect();
        if open.iter().any(|&(lo, hi)| lo > hi) {
            return false;
        }
        open.sort_unstable();
        let mut heap: BinaryHeap<Reverse<u64>> = BinaryHeap::new();
        let mut next = 0;
        for value in 0..=cap {
            while next < open.len() && open[next].0 <= value {
                heap.push(Reverse(open[next].1));
                next += 1;
            }
            if let Some(&Reverse(hi)) = heap.peek() {
                if hi < value {
                    return false;
                }
            }
            if !st.used[value as usize] {
                heap.pop();
            }
            if heap.is_empty() && next == open.len() {
                return true;
            }
        }
        heap.is_empty() && next == open.len()
    }
}

struct State {
    partial: Vec<u64>,
    done: Vec<bool>,
    used: Vec<bool>,
    values: Vec<u64>,
    nodes: u64,
    budget: u64,
    cap: u64,
    exhausted: bool,
}
