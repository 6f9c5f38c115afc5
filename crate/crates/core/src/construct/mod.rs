//! Adesign constructions.
//!
//! * [`construct_t1`]: the exact t = 1 construction with the optimal maximum
//!   frequency [`mu1`], built by filling a frequency prescription round-robin
//!   into blocks.
//! * [`construct_cosingleton`]: blocks `V \ {x}` weighted by a B_t set.
//! * [`base_family`] and [`randomized_adesign`]: all k-subsets weighted by
//!   complement sums of a B_t set, then thinned binomially.

mod cosingleton;
mod t1;
mod thinning;

pub use cosingleton::{base_family, construct_cosingleton, cosingleton_family, SidonGenerator};
pub use t1::{construct_t1, fill_blocks, mu1, t1_prescription, FrequencyPrescription};
pub use thinning::{
    concentration_report, randomized_adesign, thin, thinning_probability, AttemptStats,
    ConcentrationReport, ConcentrationRow, RandomizedAdesign, ThinningParameters,
};
