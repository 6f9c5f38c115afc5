//! Side-by-side bounds on μ(t, k, v) for a range of `v`.

use std::fmt::Write as _;
use std::ops::RangeInclusive;

use adesign_core::bounds::{mu_bounds, UpperBound};
use adesign_core::combin::binomial;
use adesign_core::construct::mu1;
use adesign_core::search::{best_constructive, mu_exact};
use adesign_core::{Error, Result};

/// One row of [`bounds_table`].
#[derive(Debug, Clone, PartialEq)]
pub struct BoundsRow {
    /// Points.
    pub v: u32,
    /// `C(v, t) - 1`.
    pub lower: u64,
    /// Closed form for `t = 1`.
    pub t1_exact: Option<u64>,
    /// Probabilistic bound, when `k > 2t + 2`.
    pub numeric: Option<f64>,
    /// Best maximum frequency reached by the constructions.
    pub constructive: Option<u64>,
    /// Proved value: exact search when it finishes in budget, else the closed form.
    pub exact: Option<u64>,
}

/// Rows for `v` in `vs`, skipping values with `v ≤ k`.
pub fn bounds_rows(t: u32, k: u32, vs: RangeInclusive<u32>, budget: u64) -> Result<Vec<BoundsRow>> {
    if t == 0 || k < t {
        return Err(Error::Parameter(format!(
            "need k >= t >= 1, got t={t}, k={k}"
        )));
    }
    let mut rows = Vec::new();
    for v in vs.filter(|&v| v > k) {
        let bounds = mu_bounds(t, k, v)?;
        let lower = binomial(v.into(), t.into()).ok_or(Error::Overflow("C(v, t)"))? - 1;
        let t1_exact = if t == 1 { Some(mu1(v, k)?) } else { None };
        let numeric = bounds.uppers.iter().find_map(|(u, _)| match u {
            UpperBound::Numeric(x) => Some(*x),
            _ => None,
        });
        let searched = mu_exact(t, k, v, budget)
            .ok()
            .filter(|c| c.optimal)
            .map(|c| c.mu);
        rows.push(BoundsRow {
            v,
            lower,
            t1_exact,
            numeric,
            constructive: best_constructive(t, k, v),
            exact: searched.or(t1_exact),
        });
    }
    Ok(rows)
}

fn cell<T: ToString>(x: Option<T>) -> String {
    x.map_or_else(|| "-".to_string(), |x| x.to_string())
}

/// Text table with columns `v lower t1_exact numeric constructive exact`.
pub fn bounds_table(t: u32, k: u32, vs: RangeInclusive<u32>, budget: u64) -> Result<String> {
    let mut out = format!("# t={t} k={k}\n");
    writeln!(
        out,
        "{:>4} {:>12} {:>9} {:>12} {:>13} {:>8}",
        "v", "lower", "t1_exact", "numeric", "constructive", "exact"
    )
    .unwrap();
    for r in bounds_rows(t, k, vs, budget)? {
        writeln!(
            out,
            "{:>4} {:>12} {:>9} {:>12} {:>13} {:>8}",
            r.v,
            r.lower,
            cell(r.t1_exact),
            cell(r.numeric.map(|x| format!("{x:.3e}"))),
            cell(r.constructive),
            cell(r.exact)
        )
        .unwrap();
    }
    Ok(out)
}
