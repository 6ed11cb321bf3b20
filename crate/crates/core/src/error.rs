//! Error type shared across the crate.

use crate::partition::Partition;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,

    #[error("pole at the evaluation point {point}")]
    PoleAtPoint { point: String },

    #[error("retry budget exhausted while sampling away from poles ({attempts} attempts)")]
    RetryBudgetExhausted { attempts: u32 },

    #[error("degenerate parameter: {detail}")]
    DegenerateParameter { detail: String },

    #[error("partitions {larger} / {smaller} are not a one-box cover")]
    NotOneBoxCover { larger: Partition, smaller: Partition },

    #[error("degree {degree} exceeds the cap {cap}")]
    DegreeCapExceeded { degree: u32, cap: u32 },

    #[error("resonant parameter: recursion denominator vanishes at {partition}")]
    ResonantParameter { partition: Partition },

    #[error("vanishing denominator in the instanton sum at tuple {tuple}")]
    VanishingDenominator { tuple: String },

    #[error("input polynomial is not symmetric")]
    NonSymmetricInput,

    #[error("cache: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
