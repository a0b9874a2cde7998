//! Error type shared by all modules.

use thiserror::Error;

use crate::root_systems::Family;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("family {family} requires rank >= {min}, got {rank}")]
    UnsupportedRank {
        family: Family,
        rank: usize,
        min: usize,
    },
    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("empty list of vectors")]
    EmptyVectorList,
    #[error("form scale must be positive")]
    NonPositiveScale,
    #[error("parabolic index {0} out of range (rank {1})")]
    ParabolicIndexOutOfRange(usize, usize),
    #[error("parabolic set equals the full simple system; the quotient would be a point")]
    ParabolicIsFullSimpleSet,
    #[error("vector lies outside the weight space")]
    NotInWeightSpace,
    #[error("pairing with delta_m is not constant on a T-root class: {0} vs {1}")]
    InconsistentClassPairing(String, String),
    #[error("operation is only defined for full flags (empty parabolic set)")]
    NotFullFlag,
    #[error("simple-root index {0} out of range (rank {1})")]
    SimpleIndexOutOfRange(usize, usize),
    #[error("empty product of flag manifolds")]
    EmptyProduct,
    #[error("metric parameter does not lie in the center of the isotropy algebra")]
    NotInCenter,
    #[error("metric parameter outside the Weyl chamber: root {root} pairs to {value} <= 0")]
    OutsideChamber { root: String, value: String },
    #[error("invalid scan range: need 0 < s_min < s_max and n_samples >= 2")]
    InvalidScanRange,
    #[error("curve parameter must be positive and finite")]
    NonPositiveCurveParameter,
    #[error("optimizer failed to locate an interior maximum in [{0}, {1}]")]
    BracketFailure(f64, f64),
    #[error("internal consistency failure: {0}")]
    Internal(String),
}
