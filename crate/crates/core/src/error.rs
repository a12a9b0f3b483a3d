use alloc::string::String;

use crate::oracle::DeviationReport;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("valuations: the list is empty")]
    EmptyValuations,
    #[error("valuations[{index}]: value is negative")]
    NegativeValuation { index: usize },
    #[error("valuations: every value is zero")]
    AllZeroValuations,
    #[error("periods: must be at least 1")]
    ZeroPeriods,
    #[error("{what}: index {index} outside 1..={max}")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        max: usize,
    },
    #[error("threat price is undefined in the final period {period}")]
    FinalPeriodThreat { period: usize },
    #[error("instance with N = {n}, T = {t} exceeds the exhaustive-search limit N <= {max_n}, T <= {max_t}")]
    SizeGuard {
        n: usize,
        t: usize,
        max_n: usize,
        max_t: usize,
    },
    #[error("solution shape does not match instance: {0}")]
    DimensionMismatch(String),
    #[error("two-period profile analysis requires T = 2, got T = {periods}")]
    NotTwoPeriods { periods: usize },
    #[error("profile has {got} thresholds for {expected} consumers")]
    ThresholdCount { expected: usize, got: usize },
    #[error("lemma hypothesis fails: static price of suffix {consumer} differs from its top value")]
    PacmanHypothesis { consumer: usize },
    #[error("beta must be at least 2, got {0}")]
    InvalidBeta(usize),
    #[error("profile is not an equilibrium ({} profitable deviations)", .0.deviations.len())]
    NotAnEquilibrium(DeviationReport),
    #[error("profile already satisfies skimming: no swap pair")]
    NoSwapPair,
    #[error("tight example needs 1 <= k < n and v_H > 0 (got n = {n}, k = {k})")]
    InvalidTightParams { n: usize, k: usize },
    #[error("cannot parse {0:?} as a rational (expected p or p/q)")]
    ParseRational(String),
}

pub type Result<T> = core::result::Result<T, Error>;
