use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use rand_distr::{Binomial, Distribution};

use super::cosingleton::base_family;
use super::SidonGenerator;
use crate::combin::binomial_f64;
use crate::family::{is_adesign, BlockFamily, Verdict};
use crate::{seed, Error, Result};

/// `p = 16 v^{t+1} ln C(v,t) / C(v-t-1, k-t)`, accepted only when `k > 2t + 2` and `p < 1`.
pub fn thinning_probability(v: u32, k: u32, t: u32) -> Result<f64> {
    if !(v > k && k >= t && t >= 2) {
        return Err(Error::param(format!(
            "need v > k >= t >= 2, got v={v}, k={k}, t={t}"
        )));
    }
    let (v64, k64, t64) = (u64::from(v), u64::from(k), u64::from(t));
    let numer = 16.0 * libm::pow(v as f64, (t + 1) as f64) * libm::log(binomial_f64(v64, t64));
    let raw = numer / binomial_f64(v64 - t64 - 1, k64 - t64);
    if k <= 2 * t + 2 || raw.is_nan() || raw >= 1.0 {
        return Err(Error::Regime { raw_p: raw });
    }
    Ok(raw)
}

/// Thinning probability with the failure budget `ε = 1/C(v,t)` and the slack
/// `σ(T) = 2 √(p f(T) ln C(v,t))`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ThinningParameters {
    p: f64,
    subsets: f64,
}

impl ThinningParameters {
    /// `p` in `(0, 1]`, at least two t-subsets.
    pub fn new(p: f64, v: u32, t: u32) -> Result<Self> {
        if !(p > 0.0 && p <= 1.0) {
            return Err(Error::param(format!("probability {p} outside (0, 1]")));
        }
        let subsets = binomial_f64(v.into(), t.into());
        if subsets.is_nan() || subsets < 2.0 {
            return Err(Error::param("need at least two t-subsets"));
        }
        Ok(ThinningParameters { p, subsets })
    }

    /// Selection probability.
    pub fn p(&self) -> f64 {
        self.p
    }

    /// Failure budget `1 / C(v, t)`.
    pub fn epsilon(&self) -> f64 {
        1.0 / self.subsets
    }

    /// Slack for a t-subset whose base frequency is `base_frequency`.
    pub fn sigma(&self, base_frequency: u64) -> f64 {
        2.0 * libm::sqrt(self.p * base_frequency as f64 * libm::log(self.subsets))
    }
}

/// Each block type of multiplicity `M` keeps `Binomial(M, p)` copies.
pub fn thin(base: &BlockFamily, p: f64, seed: u64) -> Result<BlockFamily> {
    if !(p > 0.0 && p <= 1.0) {
        return Err(Error::param(format!("probability {p} outside (0, 1]")));
    }
    if p == 1.0 {
        return Ok(base.clone());
    }
    let mut rng = seed::rng(seed);
    let mut out = BlockFamily::new(base.v(), base.k())?;
    for (block, m) in base.iter() {
        let draw = Binomial::new(m, p)
            .map_err(|e| Error::Internal(format!("binomial({m}, {p}): {e}")))?
            .sample(&mut rng);
        out.add(block.clone(), draw)?;
    }
    Ok(out)
}

/// One t-subset's deviation from its expected thinned frequency.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationRow {
    /// The t-subset.
    pub subset: Vec<u32>,
    /// Frequency in the thinned family.
    pub observed: u64,
    /// `p f(T)`.
    pub expected: f64,
    /// `σ(T)`.
    pub sigma: f64,
    /// `|observed - expected| < σ(T)`; a zero deviation always counts as inside.
    pub holds: bool,
}

/// Per-t-subset concentration margins of a thinned family.
#[derive(Debug, Clone, PartialEq)]
pub struct ConcentrationReport {
    /// Rows in lexicographic subset order.
    pub rows: Vec<ConcentrationRow>,
    /// Rows where the bound fails.
    pub violations: usize,
    /// Whether the base family's frequencies are pairwise distinct; if not,
    /// no amount of concentration makes the thinned family an adesign.
    pub base_distinct: bool,
}

/// Compares the thinned frequencies of `thinned` with `p` times those of `base`.
pub fn concentration_report(
    base: &BlockFamily,
    thinned: &BlockFamily,
    p: f64,
    t: u32,
) -> Result<ConcentrationReport> {
    if base.v() != thinned.v() || base.k() != thinned.k() {
        return Err(Error::param(
            "base and thinned families have different shapes",
        ));
    }
    if let Some((b, _)) = thinned.iter().find(|(b, m)| *m > base.multiplicity(b)) {
        return Err(Error::param(format!(
            "block {b} is not a thinning of the base family"
        )));
    }
    let params = ThinningParameters::new(p, base.v(), t)?;
    let base_table = base.frequencies(t)?;
    let thin_table = thinned.frequencies(t)?;
    let rows: Vec<ConcentrationRow> = base_table
        .iter()
        .zip(thin_table.values())
        .map(|((subset, f), &observed)| {
            let expected = p * f as f64;
            let sigma = params.sigma(f);
            let dev = libm::fabs(observed as f64 - expected);
            ConcentrationRow {
                subset,
                observed,
                expected,
                sigma,
                holds: dev == 0.0 || dev < sigma,
            }
        })
        .collect();
    Ok(ConcentrationReport {
        violations: rows.iter().filter(|r| !r.holds).count(),
        rows,
        base_distinct: base_table.verdict().is_adesign(),
    })
}

/// Bookkeeping for [`randomized_adesign`].
#[derive(Debug, Clone, PartialEq)]
pub struct AttemptStats {
    /// Attempts used, counting the successful one.
    pub attempts: u32,
    /// Thinning probability.
    pub p: f64,
    /// Maximum frequency of the returned family.
    pub max_frequency: u64,
    /// Maximum frequency of the un-thinned base family.
    pub base_max_frequency: u64,
    /// Master seed.
    pub seed: u64,
    /// Seed of the successful attempt, see [`seed::derive`].
    pub attempt_seed: u64,
}

impl fmt::Display for AttemptStats {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "attempts={} p={} max_frequency={} seed={}",
            self.attempts, self.p, self.max_frequency, self.seed
        )
    }
}

/// Output of [`randomized_adesign`].
#[derive(Debug, Clone, PartialEq)]
pub struct RandomizedAdesign {
    /// The verified adesign.
    pub family: BlockFamily,
    /// The family it was thinned from.
    pub base: BlockFamily,
    /// Attempt statistics.
    pub stats: AttemptStats,
}

/// Base family on a truncated Bose–Chowla B_t set, thinned with probability
/// `p` (default [`thinning_probability`]) until the result is a t-adesign.
///
/// Attempt `i` uses `seed::derive(seed, i)`; the first success is returned.
pub fn randomized_adesign(
    v: u32,
    k: u32,
    t: u32,
    p: Option<f64>,
    seed: u64,
    max_retries: u32,
) -> Result<RandomizedAdesign> {
    if !(v > k && k >= t && t >= 2) {
        return Err(Error::param(format!(
            "need v > k >= t >= 2, got v={v}, k={k}, t={t}"
        )));
    }
    let p = match p {
        Some(p) => p,
        None => thinning_probability(v, k, t)?,
    };
    ThinningParameters::new(p, v, t)?;
    let weights = SidonGenerator::BoseChowla.generate(v, t)?;
    let base = base_family(&weights, k)?;
    let base_max = base.frequencies(t)?.max();
    for attempt in 0..max_retries {
        let attempt_seed = seed::derive(seed, attempt.into());
        let family = thin(&base, p, attempt_seed)?;
        if let Verdict::Adesign { max_frequency } = is_adesign(&family, t)? {
            return Ok(RandomizedAdesign {
                family,
                base,
                stats: AttemptStats {
                    attempts: attempt + 1,
                    p,
                    max_frequency,
                    base_max_frequency: base_max,
                    seed,
                    attempt_seed,
                },
            });
        }
    }
    Err(Error::RetriesExhausted {
        attempts: max_retries,
    })
}
