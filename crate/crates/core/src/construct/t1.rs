use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::family::{is_adesign, BlockFamily};
use crate::{Error, Result};

fn check(v: u32, k: u32) -> Result<()> {
    if v > k && k >= 1 {
        Ok(())
    } else {
        Err(Error::param(format!("need v > k >= 1, got v={v}, k={k}")))
    }
}

fn pairs(v: u32) -> u64 {
    u64::from(v) * u64::from(v - 1) / 2
}

/// Least possible maximum point frequency of a 1-adesign with blocks of size `k` on `v` points.
pub fn mu1(v: u32, k: u32) -> Result<u64> {
    check(v, k)?;
    let (v64, k64) = (u64::from(v), u64::from(k));
    let c = pairs(v);
    Ok(if 2 * k <= v {
        if c.is_multiple_of(k64) {
            v64 - 1
        } else {
            v64
        }
    } else {
        c.div_ceil(v64 - k64)
    })
}

/// Distinct point frequencies `f(1) < ... < f(v)` together with the block count `b`
/// and block size `k` they are meant to fill.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FrequencyPrescription {
    values: Vec<u64>,
    blocks: u64,
    k: u32,
}

impl FrequencyPrescription {
    /// Validates `Σ values = b k`, `max ≤ b` and strict increase.
    pub fn new(values: Vec<u64>, blocks: u64, k: u32) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::Prescription("no points".into()));
        }
        if values.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Prescription(format!(
                "frequencies must be strictly increasing: {values:?}"
            )));
        }
        if values.len() < k as usize {
            return Err(Error::Prescription(format!(
                "block size {k} exceeds {} points",
                values.len()
            )));
        }
        let sum = values
            .iter()
            .try_fold(0u64, |a, &x| a.checked_add(x))
            .ok_or(Error::Overflow("frequency sum"))?;
        if Some(sum) != blocks.checked_mul(k.into()) {
            return Err(Error::Prescription(format!(
                "frequency sum {sum} differs from b*k = {blocks}*{k}"
            )));
        }
        let max = *values.last().unwrap();
        if max > blocks {
            return Err(Error::Prescription(format!(
                "largest frequency {max} exceeds the {blocks} blocks"
            )));
        }
        Ok(FrequencyPrescription { values, blocks, k })
    }

    /// Point frequencies.
    pub fn values(&self) -> &[u64] {
        &self.values
    }

    /// Number of blocks `b`.
    pub fn blocks(&self) -> u64 {
        self.blocks
    }

    /// Block size.
    pub fn k(&self) -> u32 {
        self.k
    }

    /// Number of points.
    pub fn v(&self) -> u32 {
        self.values.len() as u32
    }
}

/// The prescription used by [`construct_t1`].
pub fn t1_prescription(v: u32, k: u32) -> Result<FrequencyPrescription> {
    let mu = mu1(v, k)?;
    let (v64, k64) = (u64::from(v), u64::from(k));
    let c = pairs(v);
    let (values, blocks): (Vec<u64>, u64) = if 2 * k <= v {
        if c.is_multiple_of(k64) {
            ((0..v64).collect(), c / k64)
        } else {
            let b = c.div_ceil(k64);
            let r = b * k64 - c;
            ((0..=v64).filter(|&x| x != v64 - r).collect(), b)
        }
    } else {
        // v + 1 consecutive values ending at mu, minus the one that fixes the sum
        let total = mu * v64 - c;
        let b = total / k64;
        let r = total - b * k64;
        let skip = mu - v64 + r;
        ((mu - v64..=mu).filter(|&x| x != skip).collect(), b)
    };
    FrequencyPrescription::new(values, blocks, k)
}

/// Places point `x` in `f(x)` consecutive slots of a `b × k` grid read
/// column by column, so block `i` receives every `x` with
/// `Σ_{y<x} f(y) < b q + i ≤ Σ_{y≤x} f(y)` for some `q < k`.
pub fn fill_blocks(prescription: &FrequencyPrescription) -> Result<BlockFamily> {
    let v = prescription.v();
    let k = prescription.k();
    let b = prescription.blocks();
    let mut family = BlockFamily::new(v, k)?;
    if b == 0 {
        return Ok(family);
    }
    let mut blocks: Vec<Vec<u32>> = vec![Vec::with_capacity(k as usize); b as usize];
    let mut pos = 0u64;
    for (x, &f) in (1..=v).zip(prescription.values()) {
        for _ in 0..f {
            let block = &mut blocks[(pos % b) as usize];
            if block.last() == Some(&x) {
                return Err(Error::Internal(format!(
                    "point {x} placed twice in one block"
                )));
            }
            block.push(x);
            pos += 1;
        }
    }
    for block in blocks {
        if block.len() != k as usize {
            return Err(Error::Internal(format!(
                "filled block has size {}",
                block.len()
            )));
        }
        family.add_points(&block, 1)?;
    }
    Ok(family)
}

/// A 1-adesign on `v` points with blocks of size `k` and maximum frequency `mu1(v, k)`.
pub fn construct_t1(v: u32, k: u32) -> Result<BlockFamily> {
    let family = fill_blocks(&t1_prescription(v, k)?)?;
    let expect = mu1(v, k)?;
    match is_adesign(&family, 1)?.max_frequency() {
        Some(m) if m == expect => Ok(family),
        other => Err(Error::Internal(format!(
            "t=1 construction for v={v}, k={k} gave {other:?}, expected {expect}"
        ))),
    }
}
