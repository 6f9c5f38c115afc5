//! Exact searches: μ(t,k,v) by iterative deepening, small 2-designs by
//! backtracking over pair deficits, and anti-magic cubes.
//!
//! All searches are sequential and visit nodes in a fixed order, so equal
//! inputs and budgets give equal results.

mod cube;
mod design;
pub mod engine;
mod mu;

pub use cube::{antimagic_cube, CubeAssignment, CubeMode};
pub use design::find_design;
pub use mu::{
    best_constructive, decide_mu_at_most, mu_exact, MuCertificate, MAX_BLOCK_TYPES, MAX_SUBSETS,
};
