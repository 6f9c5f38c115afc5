use alloc::format;
use alloc::vec::Vec;

use super::engine::{DistinctSums, Outcome};
use crate::combin::{binomial, lex_rank, Pascal, Subsets};
use crate::construct::{construct_t1, cosingleton_family};
use crate::family::{is_adesign, powers_of_two_family, Block, BlockFamily, Verdict};
use crate::sidon::greedy_bsequence;
use crate::{Error, Result};

/// Most block types the exact search accepts.
pub const MAX_BLOCK_TYPES: u64 = 40;
/// Most t-subsets the exact search accepts.
pub const MAX_SUBSETS: u64 = 20;

/// An adesign attaining `mu`, optimal when every smaller maximum was refuted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MuCertificate {
    /// Subset size.
    pub t: u32,
    /// Block size.
    pub k: u32,
    /// Points.
    pub v: u32,
    /// Maximum frequency of `family`.
    pub mu: u64,
    /// The witness.
    pub family: BlockFamily,
    /// True when no family with maximum `mu - 1` exists.
    pub optimal: bool,
    /// Search nodes spent.
    pub nodes: u64,
}

struct Instance {
    blocks: Vec<Vec<u32>>,
    problem: DistinctSums,
}

fn instance(t: u32, k: u32, v: u32) -> Result<Instance> {
    if !(v > k && k >= t && t >= 1) {
        return Err(Error::param(format!(
            "need v > k >= t >= 1, got t={t}, k={k}, v={v}"
        )));
    }
    let nb = binomial(v.into(), k.into()).unwrap_or(u64::MAX);
    let ns = binomial(v.into(), t.into()).unwrap_or(u64::MAX);
    if nb > MAX_BLOCK_TYPES || ns > MAX_SUBSETS {
        return Err(Error::param(format!(
            "C({v},{k}) = {nb} block types / C({v},{t}) = {ns} subsets beyond the exact-search scale"
        )));
    }
    let blocks: Vec<Vec<u32>> = Subsets::new(v, k as usize).collect();
    let sums: Vec<Vec<usize>> = Subsets::new(v, t as usize)
        .map(|s| {
            let b = Block::new(s, v).unwrap();
            (0..blocks.len())
                .filter(|&i| {
                    Block::new(blocks[i].clone(), v)
                        .unwrap()
                        .contains_all(b.points())
                })
                .collect()
        })
        .collect();
    let pascal = Pascal::new(v as usize + 1, t as usize + 1);
    let idx = |s: &[u32]| lex_rank(s, v, &pascal);
    // Symmetry breaking under point permutations: the lexicographically first
    // t-subset carries the maximum, then further orbits are ordered.
    let mut problem = DistinctSums::new(blocks.len(), sums).pin_to_cap(0);
    match t {
        1 => {
            for x in 2..v {
                problem = problem.require_greater(idx(&[x]), idx(&[x + 1]));
            }
        }
        2 => {
            let top = idx(&[1, 3]);
            for a in 1..=2 {
                for j in 3..=v {
                    if (a, j) != (1, 3) {
                        problem = problem.require_greater(top, idx(&[a, j]));
                    }
                }
            }
            for j in 4..v {
                problem = problem.require_greater(idx(&[1, j]), idx(&[1, j + 1]));
            }
        }
        _ => {}
    }
    Ok(Instance { blocks, problem })
}

fn family_from(blocks: &[Vec<u32>], values: &[u64], v: u32, k: u32) -> Result<BlockFamily> {
    let mut f = BlockFamily::new(v, k)?;
    for (b, &m) in blocks.iter().zip(values) {
        f.add_points(b, m)?;
    }
    Ok(f)
}

/// Decides whether some t-adesign has maximum frequency at most `cap`.
///
/// Returns a witness, `None` when exhaustively refuted, or `BudgetExhausted`.
pub fn decide_mu_at_most(
    t: u32,
    k: u32,
    v: u32,
    cap: u64,
    budget: u64,
) -> Result<Option<BlockFamily>> {
    let lower = binomial(v.into(), t.into()).unwrap_or(u64::MAX) - 1;
    let inst = instance(t, k, v)?;
    let mut nodes = 0;
    // some family attains its maximum exactly; try each exact maximum up to cap
    for m in lower..=cap {
        match inst
            .problem
            .solve(m, budget.saturating_sub(nodes), &mut nodes)
        {
            Outcome::Found(values) => return Ok(Some(family_from(&inst.blocks, &values, v, k)?)),
            Outcome::Infeasible => {}
            Outcome::Exhausted => {
                return Err(Error::BudgetExhausted {
                    nodes,
                    lower: m,
                    best_known: None,
                })
            }
        }
    }
    Ok(None)
}

/// Best maximum frequency among the constructions that apply.
/// Smallest maximum frequency among this crate's direct constructions for `(t, k, v)`.
pub fn best_constructive(t: u32, k: u32, v: u32) -> Option<u64> {
    let mut best: Option<u64> = None;
    let mut offer = |x: u64| best = Some(best.map_or(x, |b| b.min(x)));
    if t == 1 {
        if let Ok(f) = construct_t1(v, k) {
            if let Ok(Verdict::Adesign { max_frequency }) = is_adesign(&f, 1) {
                offer(max_frequency);
            }
        }
    }
    if t >= 2 && k + 1 == v {
        if let Ok((_, m)) = greedy_bsequence(t, v as usize).and_then(|s| cosingleton_family(&s)) {
            offer(m);
        }
    }
    if let Ok(f) = powers_of_two_family(v, k) {
        if let Ok(Verdict::Adesign { max_frequency }) = is_adesign(&f, t) {
            offer(max_frequency);
        }
    }
    best
}

/// μ(t, k, v) by iterative deepening from `C(v, t) - 1`; the first feasible
/// maximum is optimal. Spends at most `budget` search nodes in total.
pub fn mu_exact(t: u32, k: u32, v: u32, budget: u64) -> Result<MuCertificate> {
    let inst = instance(t, k, v)?;
    let mut m = inst.problem.sum_count() as u64 - 1;
    let mut nodes = 0u64;
    loop {
        match inst
            .problem
            .solve(m, budget.saturating_sub(nodes), &mut nodes)
        {
            Outcome::Found(values) => {
                let family = family_from(&inst.blocks, &values, v, k)?;
                return match is_adesign(&family, t)? {
                    Verdict::Adesign { max_frequency } if max_frequency == m => Ok(MuCertificate {
                        t,
                        k,
                        v,
                        mu: m,
                        family,
                        optimal: true,
                        nodes,
                    }),
                    other => Err(Error::Internal(format!(
                        "search witness failed verification at {m}: {other:?}"
                    ))),
                };
            }
            Outcome::Infeasible => m += 1,
            Outcome::Exhausted => {
                return Err(Error::BudgetExhausted {
                    nodes,
                    lower: m,
                    best_known: best_constructive(t, k, v),
                })
            }
        }
    }
}
