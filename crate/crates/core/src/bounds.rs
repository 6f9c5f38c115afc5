//! Known bounds on μ(t, k, v), the least maximum frequency of a t-adesign.

use alloc::format;
use alloc::vec::Vec;
use core::fmt;

use crate::combin::binomial;
use crate::construct::mu1;
use crate::{Error, Result};

/// One upper bound on μ.
#[derive(Debug, Clone, PartialEq)]
pub enum UpperBound {
    /// The exact value.
    Exact(u64),
    /// μ < 2^exponent.
    PowerOfTwo {
        /// `C(v, k)`.
        exponent: u64,
    },
    /// A numeric bound.
    Numeric(f64),
    /// A bound with an unspecified constant.
    Symbolic(&'static str),
}

impl fmt::Display for UpperBound {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            UpperBound::Exact(x) => write!(f, "= {x}"),
            UpperBound::PowerOfTwo { exponent } => write!(f, "< 2^{exponent}"),
            UpperBound::Numeric(x) => write!(f, "<= {x:.6e}"),
            UpperBound::Symbolic(s) => write!(f, "<= {s}"),
        }
    }
}

/// Lower bound and tagged upper bounds on μ(t, k, v).
#[derive(Debug, Clone, PartialEq)]
pub struct MuBounds {
    /// Subset size.
    pub t: u32,
    /// Block size.
    pub k: u32,
    /// Points.
    pub v: u32,
    /// `C(v, t) - 1`, or the exact value when it is known.
    pub lower: u64,
    /// Upper bounds with their source.
    pub uppers: Vec<(UpperBound, &'static str)>,
}

impl MuBounds {
    /// The exact value, when one of the bounds is exact.
    pub fn exact(&self) -> Option<u64> {
        self.uppers.iter().find_map(|(u, _)| match u {
            UpperBound::Exact(x) => Some(*x),
            _ => None,
        })
    }
}

/// Collects the bounds that apply to `(t, k, v)`.
pub fn mu_bounds(t: u32, k: u32, v: u32) -> Result<MuBounds> {
    if !(v > k && k >= t && t >= 1) {
        return Err(Error::param(format!(
            "need v > k >= t >= 1, got t={t}, k={k}, v={v}"
        )));
    }
    let subsets = binomial(v.into(), t.into()).ok_or(Error::Overflow("C(v, t)"))?;
    let mut lower = subsets - 1;
    let mut uppers = Vec::new();
    if t == 1 {
        let exact = mu1(v, k)?;
        lower = exact;
        uppers.push((UpperBound::Exact(exact), "exact value for t = 1"));
    }
    if let Some(exponent) = binomial(v.into(), k.into()) {
        uppers.push((
            UpperBound::PowerOfTwo { exponent },
            "distinct powers of two on all k-subsets",
        ));
    }
    if t >= 2 && k > 2 * t + 2 {
        let vf = v as f64;
        let bound = 16.0 * t as f64 * libm::pow(vf, (2 * t + 2) as f64) * libm::log(vf);
        uppers.push((
            UpperBound::Numeric(bound),
            "probabilistic bound 16 t v^(2t+2) ln v (large v only)",
        ));
    }
    if t == 2 {
        uppers.push((UpperBound::Symbolic("C(k) v^2"), "PBD closure"));
    }
    Ok(MuBounds {
        t,
        k,
        v,
        lower,
        uppers,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        let b = mu_bounds(1, 3, 7).unwrap();
        assert_eq!(b.exact(), Some(6));
        assert_eq!(b.lower, 6);
        let b = mu_bounds(2, 3, 4).unwrap();
        assert_eq!(b.lower, 5);
        assert!(b.uppers.contains(&(
            UpperBound::PowerOfTwo { exponent: 4 },
            "distinct powers of two on all k-subsets"
        )));
        let b = mu_bounds(2, 7, 100).unwrap();
        let numeric = b
            .uppers
            .iter()
            .find_map(|(u, _)| match u {
                UpperBound::Numeric(x) => Some(*x),
                _ => None,
            })
            .unwrap();
        let expect = 16.0 * 2.0 * 1e12 * libm::log(100.0);
        assert!((numeric - expect).abs() < 1e-9 * expect);
        assert!(mu_bounds(2, 6, 100)
            .unwrap()
            .uppers
            .iter()
            .all(|(u, _)| !matches!(u, UpperBound::Numeric(_))));
        assert!(mu_bounds(3, 2, 5).is_err());
        assert!(mu_bounds(1, 4, 4).is_err());
    }
}
