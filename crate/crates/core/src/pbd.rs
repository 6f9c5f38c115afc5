//! Pairwise balanced designs and the composition that places small adesigns
//! and designs on PBD blocks to build a 2-adesign on the whole point set.

use alloc::collections::BTreeMap;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use crate::combin::{binomial, Subsets};
use crate::construct::{construct_cosingleton, SidonGenerator};
use crate::family::{is_adesign, is_design, BlockFamily, Verdict};
use crate::field::{Field, FieldElement};
use crate::search::mu_exact;
use crate::{Error, Result};

/// Points `1..=v` and blocks (ascending, size at least 2) meant to cover every pair once.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PbdInstance {
    v: u32,
    blocks: Vec<Vec<u32>>,
}

impl PbdInstance {
    /// Checks shape only (points in range, sorted, sizes ≥ 2); see [`verify_pbd`] for coverage.
    pub fn new(v: u32, blocks: Vec<Vec<u32>>) -> Result<Self> {
        if v == 0 {
            return Err(Error::param("PBD needs at least one point"));
        }
        for b in &blocks {
            if b.len() < 2 {
                return Err(Error::param(format!(
                    "PBD block {b:?} has fewer than 2 points"
                )));
            }
            if b.windows(2).any(|w| w[0] >= w[1]) || b[0] == 0 || *b.last().unwrap() > v {
                return Err(Error::param(format!(
                    "PBD block {b:?} is not an ascending subset of [1, {v}]"
                )));
            }
        }
        Ok(PbdInstance { v, blocks })
    }

    /// Number of points.
    pub fn v(&self) -> u32 {
        self.v
    }

    /// Blocks in their given order.
    pub fn blocks(&self) -> &[Vec<u32>] {
        &self.blocks
    }

    /// Distinct block sizes.
    pub fn block_sizes(&self) -> Vec<usize> {
        let mut s: Vec<usize> = self.blocks.iter().map(Vec::len).collect();
        s.sort_unstable();
        s.dedup();
        s
    }
}

/// Result of [`verify_pbd`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PbdVerdict {
    /// Every pair lies in exactly one block.
    Valid,
    /// Lexicographically least pair not covered exactly once.
    BadPair {
        /// The pair.
        pair: (u32, u32),
        /// How many blocks contain it.
        count: u64,
    },
}

/// Checks that every pair of distinct points lies in exactly one block.
pub fn verify_pbd(pbd: &PbdInstance) -> PbdVerdict {
    let v = pbd.v as usize;
    let mut count = vec![0u64; v * v];
    for b in &pbd.blocks {
        for (i, &x) in b.iter().enumerate() {
            for &y in &b[i + 1..] {
                count[(x as usize - 1) * v + y as usize - 1] += 1;
            }
        }
    }
    for x in 1..=pbd.v {
        for y in x + 1..=pbd.v {
            let c = count[(x as usize - 1) * v + y as usize - 1];
            if c != 1 {
                return PbdVerdict::BadPair {
                    pair: (x, y),
                    count: c,
                };
            }
        }
    }
    PbdVerdict::Valid
}

fn checked_order(q: u64) -> Result<Field> {
    if q > 16 {
        return Err(Error::param(format!("plane order {q} above 16")));
    }
    Field::with_order(q)
}

/// PG(2, q): `q^2 + q + 1` points and as many lines of size `q + 1`.
pub fn projective_plane(q: u64) -> Result<PbdInstance> {
    let f = checked_order(q)?;
    let els: Vec<FieldElement> = f.elements().collect();
    let (zero, one) = (FieldElement::ZERO, FieldElement::ONE);
    // normalised representatives: first nonzero coordinate is 1
    let mut points: Vec<[FieldElement; 3]> = vec![[zero, zero, one]];
    points.extend(els.iter().map(|&a| [zero, one, a]));
    for &a in &els {
        for &b in &els {
            points.push([one, a, b]);
        }
    }
    let dot = |x: &[FieldElement; 3], u: &[FieldElement; 3]| {
        (0..3).fold(zero, |acc, i| f.add(acc, f.mul(x[i], u[i])))
    };
    let blocks = points
        .iter()
        .map(|u| {
            points
                .iter()
                .enumerate()
                .filter(|(_, x)| dot(x, u) == zero)
                .map(|(i, _)| i as u32 + 1)
                .collect()
        })
        .collect();
    PbdInstance::new(points.len() as u32, blocks)
}

/// AG(2, q): `q^2` points and `q^2 + q` lines of size `q`.
pub fn affine_plane(q: u64) -> Result<PbdInstance> {
    let f = checked_order(q)?;
    let els: Vec<FieldElement> = f.elements().collect();
    let label = |x: FieldElement, y: FieldElement| x.index() * q as u32 + y.index() + 1;
    let mut blocks: Vec<Vec<u32>> = Vec::new();
    for &m in &els {
        for &c in &els {
            let mut b: Vec<u32> = els
                .iter()
                .map(|&x| label(x, f.add(f.mul(m, x), c)))
                .collect();
            b.sort_unstable();
            blocks.push(b);
        }
    }
    for &c in &els {
        blocks.push(els.iter().map(|&y| label(c, y)).collect());
    }
    PbdInstance::new((q * q) as u32, blocks)
}

/// One block holding all `v ≥ 2` points.
pub fn single_block(v: u32) -> Result<PbdInstance> {
    if v < 2 {
        return Err(Error::param("single-block PBD needs v >= 2"));
    }
    PbdInstance::new(v, vec![(1..=v).collect()])
}

/// Index `C(u-2, k-2)` of the complete design of `k`-subsets of `u` points.
pub fn lambda_complete(u: u32, k: u32) -> Result<u64> {
    if !(u > k && k >= 2) {
        return Err(Error::param(format!("need u > k >= 2, got u={u}, k={k}")));
    }
    binomial(u64::from(u) - 2, u64::from(k) - 2).ok_or(Error::Overflow("complete design index"))
}

/// All `k`-subsets of `[1, u]` once.
pub fn complete_design(u: u32, k: u32) -> Result<BlockFamily> {
    let mut f = BlockFamily::new(u, k)?;
    for b in Subsets::new(u, k as usize) {
        f.add_points(&b, 1)?;
    }
    Ok(f)
}

/// Adesign supplier used when the caller has none: the exact-search
/// certificate for `u ≤ k + 4` when it fits the budget, else co-singleton for `u = k + 1`.
pub fn default_adesign(u: u32, k: u32, budget: u64) -> Result<BlockFamily> {
    if u <= k {
        return Err(Error::BlockTooSmall(u as usize));
    }
    let exact = if u <= k + 4 {
        mu_exact(2, k, u, budget).map(|c| c.family)
    } else {
        Err(Error::TooLarge(String::new()))
    };
    match exact {
        Ok(f) => Ok(f),
        Err(_) if u == k + 1 => Ok(construct_cosingleton(u, 2, SidonGenerator::Greedy)?.0),
        Err(e) if u <= k + 4 => Err(e),
        Err(_) => Err(Error::param(format!(
            "no default adesign supplier for u={u}, k={k}"
        ))),
    }
}

/// Design supplier used when the caller has none: the complete design.
pub fn default_design(u: u32, k: u32) -> Result<(u64, BlockFamily)> {
    Ok((lambda_complete(u, k)?, complete_design(u, k)?))
}

/// What happened on one PBD block during [`compose`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ComposeStep {
    /// Block size `u_i`.
    pub u: u32,
    /// Index `λ_i` of the design placed on the block.
    pub lambda: u64,
    /// Maximum frequency `μ_i` of the adesign placed on the block.
    pub mu: u64,
    /// `M_i = λ_i + μ_i + 1`.
    pub m: u64,
}

/// Per-block record of [`compose`]; pair frequencies inside block `i` lie in
/// `[λ_i, λ_i + μ_i]`.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ComposeTrace {
    /// Steps in block order.
    pub steps: Vec<ComposeStep>,
}

impl ComposeTrace {
    /// `M_b`, or 0 for an empty PBD.
    pub fn bound(&self) -> u64 {
        self.steps.last().map_or(0, |s| s.m)
    }

    /// Whether the frequency intervals `[λ_i, λ_i + μ_i]` are pairwise disjoint.
    pub fn intervals_disjoint(&self) -> bool {
        let mut iv: Vec<(u64, u64)> = self
            .steps
            .iter()
            .map(|s| (s.lambda, s.lambda + s.mu))
            .collect();
        iv.sort_unstable();
        iv.windows(2).all(|w| w[0].1 < w[1].0)
    }
}

/// Places on block `i` of `pbd` a copy of an adesign on `u_i` points plus
/// `λ_i / λ_unit` copies of a design, where `λ_i` is the least available index
/// `≥ M_{i-1}` and `M_i = λ_i + μ_i + 1`.
///
/// Suppliers are called once per block size. Each supplied adesign must be a
/// 2-adesign with block size `k`, each design an `S_λ(2, k, u)` with the stated `λ ≥ 1`.
pub fn compose(
    pbd: &PbdInstance,
    k: u32,
    mut adesign_supplier: impl FnMut(u32) -> Result<BlockFamily>,
    mut design_supplier: impl FnMut(u32) -> Result<(u64, BlockFamily)>,
) -> Result<(BlockFamily, ComposeTrace)> {
    let mut parts: BTreeMap<u32, (BlockFamily, u64, u64, BlockFamily)> = BTreeMap::new();
    for u in pbd.block_sizes() {
        let u = u as u32;
        if u <= k {
            return Err(Error::BlockTooSmall(u as usize));
        }
        let adesign = adesign_supplier(u)?;
        if adesign.v() != u || adesign.k() != k {
            return Err(Error::param(format!(
                "supplied adesign for u={u} has the wrong shape"
            )));
        }
        let mu = match is_adesign(&adesign, 2)? {
            Verdict::Adesign { max_frequency } => max_frequency,
            Verdict::Collision { .. } => {
                return Err(Error::param(format!(
                    "supplied family for u={u} is not a 2-adesign"
                )))
            }
        };
        let (unit, design) = design_supplier(u)?;
        if unit == 0 || design.v() != u || design.k() != k || is_design(&design, 2)? != Some(unit) {
            return Err(Error::param(format!(
                "supplied design for u={u} is not an S_{unit}(2,{k},{u})"
            )));
        }
        parts.insert(u, (adesign, mu, unit, design));
    }

    let mut out = BlockFamily::new(pbd.v, k)?;
    let mut trace = ComposeTrace::default();
    let mut prev = 0u64;
    for block in &pbd.blocks {
        let u = block.len() as u32;
        let (adesign, mu, unit, design) = &parts[&u];
        let copies = prev.div_ceil(*unit);
        let lambda = copies * unit;
        out.absorb(&design.relabel(block, pbd.v)?, copies)?;
        out.absorb(&adesign.relabel(block, pbd.v)?, 1)?;
        let m = lambda
            .checked_add(*mu)
            .and_then(|x| x.checked_add(1))
            .ok_or(Error::Overflow("composition bound"))?;
        trace.steps.push(ComposeStep {
            u,
            lambda,
            mu: *mu,
            m,
        });
        prev = m;
    }
    match is_adesign(&out, 2)? {
        Verdict::Adesign { max_frequency }
            if pbd.blocks.is_empty() || max_frequency < trace.bound() =>
        {
            Ok((out, trace))
        }
        other => Err(Error::Internal(format!(
            "composition failed verification: {other:?}"
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn verification() {
        assert_eq!(verify_pbd(&single_block(5).unwrap()), PbdVerdict::Valid);
        let twice = PbdInstance::new(3, vec![vec![1, 2, 3], vec![1, 2, 3]]).unwrap();
        assert_eq!(
            verify_pbd(&twice),
            PbdVerdict::BadPair {
                pair: (1, 2),
                count: 2
            }
        );
        let gap = PbdInstance::new(4, vec![vec![1, 2, 3]]).unwrap();
        assert_eq!(
            verify_pbd(&gap),
            PbdVerdict::BadPair {
                pair: (1, 4),
                count: 0
            }
        );
        let fano = PbdInstance::new(
            7,
            vec![
                vec![1, 2, 3],
                vec![1, 4, 5],
                vec![1, 6, 7],
                vec![2, 4, 6],
                vec![2, 5, 7],
                vec![3, 4, 7],
                vec![3, 5, 6],
            ],
        )
        .unwrap();
        assert_eq!(verify_pbd(&fano), PbdVerdict::Valid);
        assert!(PbdInstance::new(3, vec![vec![1]]).is_err());
        assert!(PbdInstance::new(3, vec![vec![1, 4]]).is_err());
    }

    #[test]
    fn planes() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16] {
            let p = projective_plane(q).unwrap();
            assert_eq!(u64::from(p.v()), q * q + q + 1);
            assert_eq!(p.blocks().len() as u64, q * q + q + 1);
            assert!(p.blocks().iter().all(|b| b.len() as u64 == q + 1));
            assert_eq!(verify_pbd(&p), PbdVerdict::Valid);
            let a = affine_plane(q).unwrap();
            assert_eq!(u64::from(a.v()), q * q);
            assert_eq!(a.blocks().len() as u64, q * q + q);
            assert!(a.blocks().iter().all(|b| b.len() as u64 == q));
            assert_eq!(verify_pbd(&a), PbdVerdict::Valid);
        }
        assert_eq!(projective_plane(6).unwrap_err(), Error::NotPrimePower(6));
        assert!(affine_plane(17).is_err());
        assert_eq!(single_block(5).unwrap().blocks(), &[vec![1, 2, 3, 4, 5]]);
    }

    #[test]
    fn block_count_bound() {
        let mut all = vec![single_block(6).unwrap()];
        for q in [2u64, 3, 4, 5, 7, 8, 9] {
            all.push(projective_plane(q).unwrap());
            all.push(affine_plane(q).unwrap());
        }
        for p in all {
            let smallest = p.block_sizes()[0] as u64;
            let pairs = u64::from(p.v()) * u64::from(p.v() - 1) / 2;
            assert!(p.blocks().len() as u64 * (smallest * (smallest - 1) / 2) <= pairs);
        }
    }

    #[test]
    fn lambda_values() {
        assert_eq!(lambda_complete(4, 3).unwrap(), 2);
        assert_eq!(lambda_complete(7, 3).unwrap(), 5);
        for k in 2..12 {
            assert_eq!(lambda_complete(k + 1, k).unwrap(), u64::from(k - 1));
        }
        assert!(lambda_complete(3, 3).is_err());
    }

    #[test]
    fn compose_single_block_is_the_adesign() {
        let pbd = single_block(5).unwrap();
        let ad = default_adesign(5, 3, 1_000_000).unwrap();
        let (f, trace) = compose(&pbd, 3, |_| Ok(ad.clone()), |u| default_design(u, 3)).unwrap();
        assert_eq!(f, ad);
        assert_eq!(trace.steps[0].lambda, 0);
    }

    #[test]
    fn compose_planes() {
        for pbd in [
            projective_plane(2).unwrap(),
            projective_plane(3).unwrap(),
            affine_plane(3).unwrap(),
        ] {
            let (f, trace) = compose(
                &pbd,
                2,
                |u| default_adesign(u, 2, 1_000_000),
                |u| default_design(u, 2),
            )
            .unwrap();
            assert!(trace.intervals_disjoint());
            assert!(is_adesign(&f, 2).unwrap().max_frequency().unwrap() < trace.bound());
        }
        let (f, trace) = compose(
            &projective_plane(3).unwrap(),
            3,
            |u| default_adesign(u, 3, 1_000_000),
            |u| default_design(u, 3),
        )
        .unwrap();
        assert_eq!(f.v(), 13);
        assert_eq!(
            trace.steps[0],
            ComposeStep {
                u: 4,
                lambda: 0,
                mu: 6,
                m: 7
            }
        );
        assert_eq!(
            trace.steps[1],
            ComposeStep {
                u: 4,
                lambda: 8,
                mu: 6,
                m: 15
            }
        );
        assert!(trace.intervals_disjoint());
        assert_eq!(trace.steps.len(), 13);
        assert!(trace.steps.windows(2).all(|w| w[0].m <= w[1].m));
    }

    #[test]
    fn compose_rejects_small_blocks() {
        let fano = projective_plane(2).unwrap();
        let r = compose(
            &fano,
            3,
            |u| default_adesign(u, 3, 10),
            |u| default_design(u, 3),
        );
        assert_eq!(r.unwrap_err(), Error::BlockTooSmall(3));
    }
}
