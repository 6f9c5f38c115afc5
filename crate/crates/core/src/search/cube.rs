use alloc::format;
use alloc::vec::Vec;

use rand::Rng;

use super::engine::{DistinctSums, Outcome};
use crate::{seed, Error, Result};

/// Search mode for [`antimagic_cube`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CubeMode {
    /// Iterative deepening on the largest line sum; the result is optimal.
    Exact,
    /// Seeded min-conflicts local search at increasing caps; valid, not proved optimal.
    Heuristic,
}

/// Nonnegative integers in the cells of `[n]^3` whose `3n^2` axis-parallel line sums are distinct.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CubeAssignment {
    n: usize,
    cells: Vec<u64>,
    line_sums: Vec<u64>,
}

impl CubeAssignment {
    /// Validates distinctness of the line sums.
    pub fn new(n: usize, cells: Vec<u64>) -> Result<Self> {
        if n == 0 || cells.len() != n * n * n {
            return Err(Error::param(format!("expected {} cells", n * n * n)));
        }
        let line_sums = lines(n)
            .iter()
            .map(|l| l.iter().map(|&c| cells[c]).sum())
            .collect::<Vec<u64>>();
        let mut sorted = line_sums.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::param("line sums are not distinct"));
        }
        Ok(CubeAssignment {
            n,
            cells,
            line_sums,
        })
    }

    /// Side length.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Cell `(i, j, l)` is at `i n^2 + j n + l`.
    pub fn cells(&self) -> &[u64] {
        &self.cells
    }

    /// Sums along axis 0, then 1, then 2.
    pub fn line_sums(&self) -> &[u64] {
        &self.line_sums
    }

    /// Largest line sum.
    pub fn max_sum(&self) -> u64 {
        self.line_sums.iter().copied().max().unwrap_or(0)
    }
}

/// Cell indices of every line: the varying coordinate is axis 0, 1, then 2.
fn lines(n: usize) -> Vec<Vec<usize>> {
    let at = |i: usize, j: usize, l: usize| i * n * n + j * n + l;
    let mut out = Vec::with_capacity(3 * n * n);
    for a in 0..n {
        for b in 0..n {
            out.push((0..n).map(|x| at(x, a, b)).collect());
        }
    }
    for a in 0..n {
        for b in 0..n {
            out.push((0..n).map(|x| at(a, x, b)).collect());
        }
    }
    for a in 0..n {
        for b in 0..n {
            out.push((0..n).map(|x| at(a, b, x)).collect());
        }
    }
    out
}

/// Local-search moves tried at each cap before raising it.
const HEURISTIC_LEVEL_MOVES: u64 = 20_000;

/// Anti-magic cube with the smallest largest line sum the mode can reach.
///
/// Distinct nonnegative line sums force a maximum of at least `3n^2 - 1`, so
/// both modes start there. Exact mode deepens one cap at a time with the
/// first line pinned to the cap (the cube's symmetry group is transitive on
/// lines). `budget` counts search nodes (exact) or local-search moves (heuristic).
pub fn antimagic_cube(n: usize, mode: CubeMode, budget: u64) -> Result<CubeAssignment> {
    let limit = match mode {
        CubeMode::Exact => 2,
        CubeMode::Heuristic => 3,
    };
    if n == 0 || n > limit {
        return Err(Error::param(format!(
            "{mode:?} mode supports 1 <= n <= {limit}"
        )));
    }
    match mode {
        CubeMode::Exact => exact(n, budget),
        CubeMode::Heuristic => local_search(n, budget),
    }
}

fn exact(n: usize, budget: u64) -> Result<CubeAssignment> {
    let problem = DistinctSums::new(n * n * n, lines(n)).pin_to_cap(0);
    let mut cap = 3 * (n * n) as u64 - 1;
    let mut nodes = 0u64;
    loop {
        match problem.solve(cap, budget.saturating_sub(nodes), &mut nodes) {
            Outcome::Found(cells) => return CubeAssignment::new(n, cells),
            Outcome::Infeasible => cap += 1,
            Outcome::Exhausted => {
                return Err(Error::BudgetExhausted {
                    nodes,
                    lower: cap,
                    best_known: None,
                })
            }
        }
    }
}

/// Min-conflicts: repeatedly take a line that collides with another line and
/// reset one of its cells to the value minimising the number of colliding
/// line pairs, keeping every line at most `cap`.
fn local_search(n: usize, budget: u64) -> Result<CubeAssignment> {
    let all = lines(n);
    let mut cell_lines = alloc::vec![Vec::new(); n * n * n];
    for (li, l) in all.iter().enumerate() {
        for &c in l {
            cell_lines[c].push(li);
        }
    }
    let mut rng = seed::rng(0);
    let mut cap = 3 * (n * n) as u64 - 1;
    let mut moves = 0u64;
    while moves < budget {
        let mut cells = alloc::vec![0u64; n * n * n];
        let mut sums = alloc::vec![0u64; all.len()];
        let mut count = alloc::vec![0u32; cap as usize + 1];
        count[0] = all.len() as u32;
        let level_end = moves.saturating_add(HEURISTIC_LEVEL_MOVES).min(budget);
        while moves < level_end {
            let clashing: Vec<usize> = (0..all.len())
                .filter(|&l| count[sums[l] as usize] > 1)
                .collect();
            if clashing.is_empty() {
                return CubeAssignment::new(n, cells);
            }
            moves += 1;
            let line = clashing[rng.random_range(0..clashing.len())];
            let cell = all[line][rng.random_range(0..n)];
            let through = &cell_lines[cell];
            let old = cells[cell];
            for &l in through {
                count[sums[l] as usize] -= 1;
                sums[l] -= old;
            }
            // room left in the fullest line through this cell
            let room = cap - through.iter().map(|&l| sums[l]).max().unwrap_or(0);
            let mut best_cost = u32::MAX;
            let mut best: Vec<u64> = Vec::new();
            for value in 0..=room {
                let mut cost = 0;
                for (i, &l) in through.iter().enumerate() {
                    let s = (sums[l] + value) as usize;
                    cost += count[s];
                    // lines through one cell may land on the same new sum
                    cost += through[..i]
                        .iter()
                        .filter(|&&m| sums[m] + value == s as u64)
                        .count() as u32;
                }
                if cost < best_cost {
                    best_cost = cost;
                    best.clear();
                }
                if cost == best_cost {
                    best.push(value);
                }
            }
            let value = best[rng.random_range(0..best.len())];
            cells[cell] = value;
            for &l in through {
                sums[l] += value;
                count[sums[l] as usize] += 1;
            }
        }
        cap += 1;
    }
    Err(Error::BudgetExhausted {
        nodes: moves,
        lower: 0,
        best_known: None,
    })
}
