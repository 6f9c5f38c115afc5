//! Construction, verification and exact search for t-adesigns.
//!
//! A t-adesign on `v` points is a multiset of `k`-subsets in which every
//! `t`-subset of points is contained in a different number of blocks. This
//! crate holds the pure algorithmic core: the frequency verifier, finite
//! field arithmetic, Sidon (B_r) sequences, the adesign constructions,
//! pairwise balanced design composition and the exact searches. It is
//! `no_std` and only needs `alloc`; file formats and the command-line tool
//! live in the `adesign` crate.
#![no_std]
#![deny(missing_docs)]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod bounds;
pub mod combin;
pub mod construct;
mod error;
pub mod family;
pub mod field;
pub mod pbd;
pub mod search;
pub mod seed;
pub mod sidon;

pub use bounds::{mu_bounds, MuBounds, UpperBound};
pub use error::{Error, Result};
pub use family::{
    is_adesign, is_design, powers_of_two_family, Block, BlockFamily, FrequencyTable, GroundSet,
    Verdict,
};
