use alloc::format;
use alloc::vec::Vec;

use crate::combin::Subsets;
use crate::family::{is_adesign, BlockFamily, Verdict};
use crate::field;
use crate::sidon::{self, SidonSet};
use crate::{Error, Result};

/// Source of the B_t set behind the Sidon-weighted constructions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SidonGenerator {
    /// [`sidon::greedy_bsequence`].
    Greedy,
    /// [`sidon::bose_chowla`] at the least prime power `q ≥ v`, truncated to `v` elements.
    BoseChowla,
}

impl SidonGenerator {
    /// A B_t set of `v` elements.
    pub fn generate(self, v: u32, t: u32) -> Result<SidonSet> {
        match self {
            SidonGenerator::Greedy => sidon::greedy_bsequence(t, v as usize),
            SidonGenerator::BoseChowla => {
                let q = field::next_prime_power(v.into());
                Ok(sidon::bose_chowla(q, t)?.truncated(v as usize))
            }
        }
    }
}

/// Block `V \ {x}` with multiplicity equal to the `x`-th element of `weights`.
///
/// The frequency of a t-subset `T` is the sum of the weights outside `T`, so the
/// family is a t-adesign whenever `weights` is a B_t set. Returns the family and
/// its maximum frequency.
pub fn cosingleton_family(weights: &SidonSet) -> Result<(BlockFamily, u64)> {
    let v = weights.len() as u32;
    let t = weights.order();
    if v <= t {
        return Err(Error::param(format!("need v > t, got v={v}, t={t}")));
    }
    let mut family = BlockFamily::new(v, v - 1)?;
    for (x, &w) in (1..=v).zip(weights.elements()) {
        let block: Vec<u32> = (1..=v).filter(|&y| y != x).collect();
        family.add_points(&block, w)?;
    }
    match is_adesign(&family, t)? {
        Verdict::Adesign { max_frequency } => Ok((family, max_frequency)),
        Verdict::Collision { .. } => Err(Error::Internal(
            "co-singleton family with B_t weights is not an adesign".into(),
        )),
    }
}

/// Co-singleton t-adesign on `v` points (`k = v - 1`) using the chosen generator.
pub fn construct_cosingleton(
    v: u32,
    t: u32,
    generator: SidonGenerator,
) -> Result<(BlockFamily, u64)> {
    if !(t >= 2 && v > t) {
        return Err(Error::param(format!("need v > t >= 2, got v={v}, t={t}")));
    }
    cosingleton_family(&generator.generate(v, t)?)
}

/// Every `k`-subset `K` of `[1, v]`, `v = |weights|`, with multiplicity
/// `Σ_{x ∉ K} weights[x]`.
pub fn base_family(weights: &SidonSet, k: u32) -> Result<BlockFamily> {
    let v = weights.len() as u32;
    if !(v > k && k >= 1) {
        return Err(Error::param(format!("need v > k >= 1, got v={v}, k={k}")));
    }
    let total = weights
        .elements()
        .iter()
        .try_fold(0u64, |a, &w| a.checked_add(w))
        .ok_or_else(|| Error::SizeExceeded("weight sum overflows".into()))?;
    let w = weights.elements();
    let mut family = BlockFamily::new(v, k)?;
    for block in Subsets::new(v, k as usize) {
        let inside: u64 = block.iter().map(|&x| w[x as usize - 1]).sum();
        family
            .add_points(&block, total - inside)
            .map_err(|e| match e {
                Error::Overflow(what) => Error::SizeExceeded(format!("base family: {what}")),
                other => other,
            })?;
    }
    family
        .total_blocks()
        .map_err(|_| Error::SizeExceeded("base family block count".into()))?;
    Ok(family)
}
